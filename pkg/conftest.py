"""
conftest.py - Shared fixtures
=============================

Hypothesis profiles (seeded from ROTABAXTER_SEED), a fresh configuration
per test with the catalog in a temporary directory, and the small groups
and RRB groups most tests start from.
"""
import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from rotabaxter.config import WorkspaceConfig, set_config
from rotabaxter.groups import cyclic, klein_four, symmetric
from rotabaxter.rrb import trivial_rrb

SAMPLES = Path(__file__).parent / "samples"

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=300, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def workspace_config(tmp_path):
    """Default bounds, catalog under tmp_path"""
    config = WorkspaceConfig(
        catalog_path=str(tmp_path / "catalog.jsonl"),
        seed=int(os.getenv("ROTABAXTER_SEED", "20240601")),
    )
    set_config(config)
    yield config
    set_config(WorkspaceConfig())


@pytest.fixture
def samples() -> Path:
    return SAMPLES


@pytest.fixture
def z2():
    return cyclic(2)


@pytest.fixture
def z3():
    return cyclic(3)


@pytest.fixture
def v4():
    return klein_four()


@pytest.fixture
def s3():
    return symmetric(3)


@pytest.fixture
def trivial_z2(z2):
    """(Z2, Z2, trivial, identity)"""
    return trivial_rrb(z2)


@pytest.fixture
def z2_over_trivial(z2):
    """(Z2, 1, trivial, trivial): the identity on a group as an RRB group with trivial G"""
    from rotabaxter.groups import trivial_group
    return trivial_rrb(z2, trivial_group())
