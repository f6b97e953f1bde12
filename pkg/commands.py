"""
commands.py - Subcommand bodies
===============================

One cmd_* function per CLI subcommand. Each takes the parsed argparse
namespace and returns a CommandResult; main.py renders it, appends it to
the catalog and maps it to an exit code. Library errors propagate.
"""
import argparse
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from catalog import CatalogService, file_digest, payload_digest
from models import CatalogRecord, load_cocycle, load_group, load_module, load_rrb, read_json
from rotabaxter import __version__
from rotabaxter.braces import induced_brace, verify_ybe, ybe_map
from rotabaxter.cohomology import (
    TrivialRRBModule,
    brute_force_h2_group_order,
    brute_force_h2_rrb_order,
    brute_force_h2_slb_order,
    brute_force_multiplier_order,
    coefficient_module,
    h2_group,
    h2_rrb,
    h2_slb,
)
from rotabaxter.config import get_config
from rotabaxter.errors import EXIT_BOUND, EXIT_OK, EXIT_THEOREM, AlgebraError, ParseError, TheoremViolation
from rotabaxter.isoclinism import (
    UNKNOWN,
    are_isoclinic,
    are_weakly_isoclinic,
    indiso_report,
    transport_to_braces,
)
from rotabaxter.groups import FiniteGroup
from rotabaxter.library import group_by_name, rrb_catalog
from rotabaxter.rrb import RRBGroup
from rotabaxter.schur import build_schur_cover, covers_of, schur_multiplier

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    operation: str
    payload: Dict[str, Any]
    exit_code: int = EXIT_OK
    digests: Dict[str, str] = field(default_factory=dict)
    parameters: Dict[str, Any] = field(default_factory=dict)

    def to_record(self) -> CatalogRecord:
        return CatalogRecord(
            operation=self.operation,
            digests=self.digests,
            parameters=self.parameters,
            result=self.payload,
            tool_version=__version__,
            seed=get_config().seed,
        )


def _parameters(args: argparse.Namespace) -> Dict[str, Any]:
    """Namespace without callables; paths as strings"""
    params = {}
    for key, value in vars(args).items():
        if callable(value) or key in ("verbose", "no_catalog"):
            continue
        params[key] = [str(v) for v in value] if isinstance(value, list) else (str(value) if isinstance(value, Path) else value)
    return params


def _digests(**files: Optional[str]) -> Dict[str, str]:
    return {name: file_digest(path) for name, path in files.items() if path}


def _module(args: argparse.Namespace) -> TrivialRRBModule:
    if getattr(args, "module", None):
        return load_module(args.module)
    return coefficient_module(args.coefficients)


def _oracle_check(what: str, computed: int, oracle: int) -> Dict[str, int]:
    if computed != oracle:
        raise TheoremViolation(f"{what}: computed order {computed}, oracle {oracle}", {"computed": computed, "oracle": oracle})
    logger.info(f"✅ Oracolo concorde per {what}: {oracle}")
    return {"oracle_order": oracle}


# ===== VERIFY =====

def cmd_verify(args: argparse.Namespace) -> CommandResult:
    """Validate group or RRB files; stops at the first failure"""
    checked = []
    for path in args.files:
        doc = read_json(path)
        if isinstance(doc, dict) and "phi" in doc:
            rrb = load_rrb(path)
            checked.append({"file": Path(path).name, "kind": "rrb", "H": rrb.H.order, "G": rrb.G.order,
                            "bijective": rrb.is_bijective})
        else:
            group = load_group(path)
            checked.append({"file": Path(path).name, "kind": "group", "order": group.order,
                            "abelian": group.is_abelian})
        logger.info(f"✅ {path} valido")
    return CommandResult("verify", {"files": checked}, digests={f"file{i}": file_digest(p) for i, p in enumerate(args.files)},
                         parameters=_parameters(args))


# ===== COHOMOLOGY =====

def cmd_h2(args: argparse.Namespace) -> CommandResult:
    rrb = load_rrb(args.rrb)
    module = _module(args)
    payload: Dict[str, Any] = {"rrb": rrb.name, "kind": args.kind, "module": module.name}
    if args.kind == "rrb":
        h2 = h2_rrb(rrb, module)
        oracle = partial(brute_force_h2_rrb_order, rrb, module)
    elif args.kind == "group":
        h2 = h2_group(rrb.H, module.K)
        oracle = partial(brute_force_h2_group_order, rrb.H, module.K)
    else:
        brace = induced_brace(rrb)
        h2 = h2_slb(brace, module.K)
        oracle = partial(brute_force_h2_slb_order, brace, module.K)
    payload.update({"factors": list(h2.structure.factors), "order": h2.order, "describe": h2.structure.describe()})
    if args.oracle:
        payload.update(_oracle_check(f"H2 {args.kind} of {rrb.name}", h2.order, oracle()))
    if args.classify:
        if args.kind != "rrb":
            raise ParseError("--classify needs --kind rrb", {"field": "classify"})
        payload["class"] = list(h2.classify(load_cocycle(args.classify, rrb, module)).coords)
    return CommandResult("h2", payload, digests=_digests(rrb=args.rrb, module=args.module, cocycle=args.classify),
                         parameters=_parameters(args))


def cmd_multiplier(args: argparse.Namespace) -> CommandResult:
    rrb = load_rrb(args.rrb)
    M = schur_multiplier(rrb)
    payload = M.as_dict()
    payload["describe"] = M.structure.describe()
    if args.oracle:
        payload.update(_oracle_check(f"M({rrb.name})", M.order, brute_force_multiplier_order(rrb)))
    return CommandResult("multiplier", payload, digests=_digests(rrb=args.rrb), parameters=_parameters(args))


def cmd_cover(args: argparse.Namespace) -> CommandResult:
    rrb = load_rrb(args.rrb)
    covers = covers_of(rrb) if args.alternative else [build_schur_cover(rrb)]
    payload = {"covers": [c.as_dict() for c in covers]}
    exit_code = EXIT_OK if all(c.is_cover for c in covers) else EXIT_THEOREM
    if len(covers) == 2:
        weak = are_weakly_isoclinic(covers[0].ext.total, covers[1].ext.total)
        payload["weakly_isoclinic"] = weak.status
        if weak.status != UNKNOWN and not weak:
            exit_code = EXIT_THEOREM
    return CommandResult("cover", payload, exit_code, _digests(rrb=args.rrb), _parameters(args))


# ===== ISOCLINISM =====

def cmd_isoclinic(args: argparse.Namespace) -> CommandResult:
    r1, r2 = load_rrb(args.first), load_rrb(args.second)
    search = are_weakly_isoclinic if args.mode == "weak" else are_isoclinic
    result = search(r1, r2)
    payload: Dict[str, Any] = {"first": r1.name, "second": r2.name, "mode": args.mode, **result.as_dict()}
    if result.witness is not None:
        brace = transport_to_braces(r1, r2, result.witness)
        payload["brace_witness"] = {"xi1": list(brace.xi1), "xi2": {str(k): v for k, v in sorted(brace.xi2.items())}}
        if args.invariants:
            payload["invariants"] = indiso_report(r1, r2).as_dict()
    exit_code = EXIT_BOUND if result.status == UNKNOWN else EXIT_OK
    return CommandResult("isoclinic", payload, exit_code, _digests(first=args.first, second=args.second),
                         _parameters(args))


def cmd_ybe(args: argparse.Namespace) -> CommandResult:
    rrb = load_rrb(args.rrb)
    brace = induced_brace(rrb)
    r = ybe_map(brace)
    verify_ybe(r)
    payload = {"rrb": rrb.name, "n": r.n, "triples": r.n ** 3, "involutive": r.is_involutive,
               "trivial_brace": brace.is_trivial}
    return CommandResult("ybe", payload, digests=_digests(rrb=args.rrb), parameters=_parameters(args))


# ===== SURVEY =====

def survey_one(rrb: RRBGroup) -> Dict[str, Any]:
    """Exponent law and stabilization re-check for one catalog entry"""
    N = rrb.H.order * rrb.G.order
    row: Dict[str, Any] = {"rrb": rrb.name, "N": N}
    try:
        M = schur_multiplier(rrb)
        doubled = schur_multiplier(rrb, enlargement=2 * N)
        row.update({
            "factors": list(M.factors),
            "exponent_divides": M.exponent_divides,
            "stable": list(doubled.factors) == list(M.factors),
        })
    except AlgebraError as e:
        row.update({"error": type(e).__name__, "message": e.message})
    return row


def _named_groups(names: List[str]) -> List[FiniteGroup]:
    groups = []
    for name in names:
        group = group_by_name(name)
        if group is None:
            raise ParseError(f"unknown group {name}", {"group": name})
        groups.append(group)
    return groups


def cmd_survey(args: argparse.Namespace) -> CommandResult:
    if args.groups:
        groups = _named_groups(args.groups)
        catalog = [r for r in rrb_catalog(args.max_product) if r.H in groups and r.G in groups][:args.limit]
    else:
        catalog = rrb_catalog(args.max_product, limit=args.limit)
    workers = args.workers or get_config().parallelism
    logger.info(f"🔄 Survey su {len(catalog)} gruppi RRB con {workers} worker")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(survey_one, catalog))
    else:
        rows = [survey_one(rrb) for rrb in catalog]
    failures = [r for r in rows if "error" in r or not r.get("exponent_divides") or not r.get("stable")]
    payload = {"count": len(rows), "failures": len(failures), "rows": rows}
    logger.info(f"📊 Survey: {len(rows)} gruppi, {len(failures)} violazioni")
    return CommandResult("survey", payload, EXIT_THEOREM if failures else EXIT_OK, parameters=_parameters(args))


# ===== REPORT =====

REPLAYABLE: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "verify": cmd_verify,
    "h2": cmd_h2,
    "multiplier": cmd_multiplier,
    "cover": cmd_cover,
    "isoclinic": cmd_isoclinic,
    "ybe": cmd_ybe,
}

FILE_PARAMETERS = ("rrb", "module", "classify", "first", "second")


def reverify(record: CatalogRecord) -> Optional[str]:
    """Recompute one record; returns a mismatch description or None"""
    command = REPLAYABLE.get(record.operation)
    if command is None:
        return None
    params = dict(record.parameters)
    for key in FILE_PARAMETERS:
        if params.get(key) and not Path(params[key]).exists():
            return f"{params[key]} is missing"
    fresh = command(argparse.Namespace(**params))
    if fresh.digests != record.digests:
        return "input files changed since the record was written"
    if payload_digest(fresh.payload) != payload_digest(record.result):
        return "payload differs on recomputation"
    return None


def cmd_report(args: argparse.Namespace) -> CommandResult:
    service = CatalogService(args.catalog or get_config().catalog_path)
    df = service.dataframe()
    payload: Dict[str, Any] = {
        "catalog": str(service.path),
        "records": int(len(df)),
        "operations": {str(k): int(v) for k, v in df["operation"].value_counts().items()} if len(df) else {},
    }
    if args.export:
        payload["exported"] = str(service.export(args.export))
    exit_code = EXIT_OK
    if args.reverify:
        mismatches: List[Dict[str, Any]] = []
        for i, record in enumerate(service):
            problem = reverify(record)
            if problem:
                mismatches.append({"record": i, "operation": record.operation, "problem": problem})
        payload["mismatches"] = mismatches
        if mismatches:
            exit_code = EXIT_THEOREM
            logger.error(f"❌ {len(mismatches)} record non riproducibili")
        else:
            logger.info("✅ Tutti i record riverificati")
    return CommandResult("report", payload, exit_code, parameters=_parameters(args))


COMMANDS: Dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    **REPLAYABLE,
    "survey": cmd_survey,
    "report": cmd_report,
}
