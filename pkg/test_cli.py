"""Command line: exit codes and catalog records"""
import json

import numpy as np
import pytest

import main
from catalog import CatalogService
from models import CocycleFile, group_document
from rotabaxter.cohomology import Cocycle4, coefficient_module
from rotabaxter.errors import EXIT_BOUND, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION
from rotabaxter.groups import quaternion


@pytest.fixture(autouse=True)
def catalog_env(monkeypatch, workspace_config):
    # main() reloads the configuration, keep its catalog under tmp_path
    monkeypatch.delenv("ROTABAXTER_CONFIG", raising=False)
    monkeypatch.setenv("ROTABAXTER_CATALOG", workspace_config.catalog_path)
    monkeypatch.setattr(main, "CONFIG_PATH", None)


@pytest.fixture
def catalog(workspace_config):
    return CatalogService(workspace_config.catalog_path)


def run(*argv) -> int:
    return main.main([str(a) for a in argv])


def test_verify_samples(samples):
    files = [samples / f for f in ("s3.json", "z4.json", "v4.json", "trivial_z2.json", "z2_over_trivial.json")]
    assert run("--no-catalog", "verify", *files) == EXIT_OK


def test_verify_malformed_table(samples):
    assert run("--no-catalog", "verify", samples / "malformed_table.json") == EXIT_PARSE


def test_verify_missing_file(tmp_path):
    assert run("--no-catalog", "verify", tmp_path / "absent.json") == EXIT_PARSE


def test_verify_json_syntax_error(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"name": "Z2",\n "order": 2,\n "table": [[0, 1], [1, 0]\n}', encoding="utf-8")
    assert run("--no-catalog", "verify", broken) == EXIT_PARSE


def test_verify_bad_action(samples):
    assert run("--no-catalog", "verify", samples / "bad_phi.json") == EXIT_VALIDATION


def test_verify_written_group(tmp_path):
    target = tmp_path / "q8.json"
    target.write_text(group_document(quaternion()).model_dump_json(indent=2), encoding="utf-8")
    assert run("--no-catalog", "verify", target) == EXIT_OK


def test_verify_rejects_future_schema(samples, tmp_path):
    target = tmp_path / "z2.json"
    target.write_text((samples / "z2.json").read_text(encoding="utf-8").replace('"schema_version": 1', '"schema_version": 2'),
                      encoding="utf-8")
    assert run("--no-catalog", "verify", target) == EXIT_PARSE


@pytest.mark.parametrize("kind", ["rrb", "group", "slb"])
def test_h2_with_oracle(samples, kind):
    assert run("--no-catalog", "h2", samples / "trivial_z2.json", "--kind", kind, "--oracle") == EXIT_OK


def test_h2_records_factors(samples, catalog):
    assert run("h2", samples / "trivial_v4.json", "--kind", "group") == EXIT_OK
    (record,) = catalog.records("h2")
    assert record.result["factors"] == [2, 2, 2]
    assert record.digests.keys() == {"rrb"}


def test_h2_with_module_file(samples, catalog):
    assert run("h2", samples / "trivial_z2.json", "--module", samples / "z2_pair.json") == EXIT_OK
    (record,) = catalog.records("h2")
    assert record.result["order"] == 4
    assert set(record.digests) == {"rrb", "module"}


def test_h2_classify(samples, tmp_path, catalog):
    tau = np.zeros((2, 2, 1), dtype=np.int64)
    tau[1, 1, 0] = 1
    c = Cocycle4(tau, tau.copy(), np.zeros((2, 2, 1), dtype=np.int64), np.zeros((2, 1), dtype=np.int64))
    cocycle = tmp_path / "cyclic.json"
    cocycle.write_text(CocycleFile.from_cocycle(c, coefficient_module(2)).model_dump_json(), encoding="utf-8")
    assert run("h2", samples / "trivial_z2.json", "--classify", cocycle) == EXIT_OK
    (record,) = catalog.records("h2")
    assert any(record.result["class"])


def test_h2_classify_rejects_bad_shape(samples, tmp_path):
    cocycle = tmp_path / "short.json"
    cocycle.write_text(json.dumps({"K": [2], "L": [2], "tau1": [0], "tau2": [0], "rho": [0], "chi": [0]}),
                       encoding="utf-8")
    assert run("--no-catalog", "h2", samples / "trivial_z2.json", "--classify", cocycle) == EXIT_VALIDATION


def test_multiplier_with_oracle(samples, catalog):
    assert run("multiplier", samples / "trivial_z2.json", "--oracle") == EXIT_OK
    (record,) = catalog.records("multiplier")
    assert record.result["factors"] == [2]
    assert record.result["oracle_order"] == 2


def test_cover(samples):
    assert run("--no-catalog", "cover", samples / "trivial_z2.json") == EXIT_OK
    assert run("--no-catalog", "cover", samples / "z2_over_trivial.json") == EXIT_OK


@pytest.mark.parametrize("mode", ["strict", "weak"])
def test_isoclinic(samples, mode):
    assert run("--no-catalog", "isoclinic", samples / "trivial_z2.json", samples / "trivial_z4.json",
               "--mode", mode, "--invariants") == EXIT_OK


def test_isoclinic_unrelated_pair_is_still_a_success(samples, catalog):
    assert run("isoclinic", samples / "trivial_z4.json", samples / "trivial_s3.json") == EXIT_OK
    (record,) = catalog.records("isoclinic")
    assert record.result["status"] == "not_isoclinic"


def test_isoclinic_bound(samples, tmp_path):
    config = tmp_path / "tight.json"
    config.write_text(json.dumps({"isoclinism_search_bound": 2}), encoding="utf-8")
    assert run("--no-catalog", "--config", config, "isoclinic",
               samples / "trivial_s3.json", samples / "trivial_s3.json") == EXIT_BOUND


def test_bad_config(samples, tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"parallelism": 0}), encoding="utf-8")
    assert run("--no-catalog", "--config", config, "verify", samples / "z2.json") == EXIT_PARSE


def test_ybe(samples):
    assert run("--no-catalog", "ybe", samples / "trivial_s3.json") == EXIT_OK


def test_survey(catalog):
    assert run("survey", "--max-product", 4) == EXIT_OK
    (record,) = catalog.records("survey")
    assert record.result["count"] == 11
    assert record.result["failures"] == 0


def test_survey_restricted_to_named_groups(catalog):
    assert run("survey", "--max-product", 4, "--group", "Z2", "--group", "1") == EXIT_OK
    (record,) = catalog.records("survey")
    assert record.result["count"] == 5
    assert record.parameters["groups"] == ["Z2", "1"]


def test_survey_unknown_group():
    assert run("--no-catalog", "survey", "--group", "A5") == EXIT_PARSE


def test_json_output(samples, capsys):
    assert run("--no-catalog", "--json", "ybe", samples / "trivial_z2.json") == EXIT_OK
    assert '"involutive"' in capsys.readouterr().out
