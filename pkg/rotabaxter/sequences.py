"""
sequences.py - Inflation, restriction, transgression
====================================================

For a central extension K -> H -> A and a trivial module M the sequence

    0 -> Hom(A, M) -> Hom(H, M) -> Hom(K, M) -> H²(A, M) -> H²(H, M)

is exact. Hom sets are enumerated, H² classes are coordinates; the maps
are tabulated and every position of the sequence is checked.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .cohomology import Cocycle4, H2Classes, TrivialRRBModule, decode, encode, h2_rrb
from .config import get_config
from .errors import SearchBoundExceeded, TheoremViolation
from .extensions import ExtensionData, Section, cocycle_from_extension, random_section
from .groups import GroupHom
from .linalg import AbElement
from .rrb import RRBGroup, RRBHom, hom_rrb

logger = logging.getLogger(__name__)

HomKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


def push_cocycle(c: Cocycle4, source: TrivialRRBModule, target: TrivialRRBModule, f: RRBHom) -> Cocycle4:
    """(g1 τ1, g2 τ2, g1 ρ, g2 χ) for f = (g1, g2): source -> target"""

    def push(table, image, src, dst):
        idx = encode(np.asarray(table, dtype=np.int64), src)
        return decode(np.asarray(image, dtype=np.int64)[idx], dst)

    psi, eta = f.psi.image, f.eta.image
    return Cocycle4(
        push(c.tau1, psi, source.K, target.K),
        push(c.tau2, eta, source.L, target.L),
        push(c.rho, psi, source.K, target.K),
        push(c.chi, eta, source.L, target.L),
    )


def pull_cocycle(c: Cocycle4, proj: RRBHom) -> Cocycle4:
    """(τ1(π1 x π1), τ2(π2 x π2), ρ(π1 x π2), χ π1)"""
    pH = np.asarray(proj.psi.image, dtype=np.int64)
    pG = np.asarray(proj.eta.image, dtype=np.int64)
    tau1, tau2 = np.asarray(c.tau1), np.asarray(c.tau2)
    rho, chi = np.asarray(c.rho), np.asarray(c.chi)
    return Cocycle4(
        tau1[pH[:, None], pH[None, :]],
        tau2[pG[:, None], pG[None, :]],
        rho[pH[:, None], pG[None, :]],
        chi[pH],
    )


def hom_sum(f: RRBHom, g: RRBHom, module: TrivialRRBModule) -> RRBHom:
    """Pointwise sum of two homomorphisms into an abelian module"""
    K, L = module.K_group, module.L_group
    psi = [K.mul(x, y) for x, y in zip(f.psi.image, g.psi.image)]
    eta = [L.mul(x, y) for x, y in zip(f.eta.image, g.eta.image)]
    return RRBHom(f.source, f.target, GroupHom(f.psi.domain, K, psi), GroupHom(f.eta.domain, L, eta))


def is_zero_hom(f: RRBHom) -> bool:
    return not any(f.psi.image) and not any(f.eta.image)


def _generator_images(orders: Sequence[int], target: Sequence[int]) -> List[np.ndarray]:
    """For each factor Z_q of the source, the target coordinate vectors killed by q"""
    moduli = np.array(target, dtype=np.int64)
    elements = decode(np.arange(int(np.prod(moduli, dtype=np.int64))), target)
    return [elements[np.all((q * elements) % moduli == 0, axis=1)] for q in orders]


def _as_matrix(rows, d_source: int, d_target: int) -> np.ndarray:
    return np.array(rows, dtype=np.int64).reshape(d_source, d_target)


def module_homs(source: TrivialRRBModule, target: TrivialRRBModule, bound: Optional[int] = None,
                rrbs: Optional[Tuple[RRBGroup, RRBGroup]] = None) -> List[RRBHom]:
    """
    Hom(source, target) between trivial modules, read off generator images.

    A pair (psi, eta) is fixed by the images of the cyclic generators; the
    only condition left is eta∘S = S'∘psi on the generators of K. Same
    result and order as hom_rrb on the modules' RRB groups.

    Raises:
        SearchBoundExceeded: more generator assignments than bound
    """
    bound = get_config().oracle_candidate_bound if bound is None else bound
    X, Y = rrbs if rrbs is not None else (source.as_rrb(), target.as_rrb())
    psi_choices = _generator_images(source.K, target.K)
    eta_choices = _generator_images(source.L, target.L)
    candidates = math.prod(len(c) for c in psi_choices + eta_choices)
    if candidates > bound:
        raise SearchBoundExceeded(
            f"{candidates} generator assignments for Hom({source.name}, {target.name})",
            {"candidates": candidates, "bound": bound},
        )

    L_mod = np.array(target.L, dtype=np.int64)
    S_src = np.asarray(source.S, dtype=np.int64)
    S_tgt = np.asarray(target.S, dtype=np.int64)
    K_coords = decode(np.arange(source.order_K), source.K)
    L_coords = decode(np.arange(source.order_L), source.L)
    results = []
    for eta_rows in itertools.product(*eta_choices):
        E = _as_matrix(eta_rows, source.dL, target.dL)
        pushed = (S_src.T @ E) % L_mod
        for psi_rows in itertools.product(*psi_choices):
            P = _as_matrix(psi_rows, source.dK, target.dK)
            if not np.array_equal(pushed, (P @ S_tgt.T) % L_mod):
                continue
            psi = GroupHom(X.H, Y.H, encode(K_coords @ P, target.K).tolist())
            eta = GroupHom(X.G, Y.G, encode(L_coords @ E, target.L).tolist())
            results.append(RRBHom(X, Y, psi, eta))
    results.sort(key=lambda f: f.key)
    logger.debug(f"📊 |Hom({source.name}, {target.name})| = {len(results)} su {candidates} assegnazioni")
    return results


class FiveTermMaps:
    """Inf, Res, Tra and Inf on H² for one extension and one coefficient module"""

    def __init__(self, ext: ExtensionData, M: TrivialRRBModule, bound: Optional[int] = None):
        self.ext = ext
        self.M = M
        self.bound = bound
        self.M_rrb = M.as_rrb()
        self.K_rrb = ext.module.as_rrb()
        self.cocycle = ext.cocycle if ext.cocycle is not None else cocycle_from_extension(ext)

    @cached_property
    def hom_A(self) -> List[RRBHom]:
        return hom_rrb(self.ext.base, self.M_rrb, self.bound)

    @cached_property
    def hom_H(self) -> List[RRBHom]:
        return hom_rrb(self.ext.total, self.M_rrb, self.bound)

    @cached_property
    def hom_K(self) -> List[RRBHom]:
        return module_homs(self.ext.module, self.M, rrbs=(self.K_rrb, self.M_rrb))

    @cached_property
    def h2_base(self) -> H2Classes:
        return h2_rrb(self.ext.base, self.M, self.bound)

    @cached_property
    def h2_total(self) -> H2Classes:
        return h2_rrb(self.ext.total, self.M, self.bound)

    def inf(self, f: RRBHom) -> RRBHom:
        return f.compose(self.ext.proj)

    def res(self, f: RRBHom) -> RRBHom:
        return f.compose(self.ext.inj)

    def tra(self, g: RRBHom, section: Optional[Section] = None) -> AbElement:
        c = self.cocycle if section is None else cocycle_from_extension(self.ext, section)
        return self.h2_base.classify(push_cocycle(c, self.ext.module, self.M, g))

    def inf2(self, x: AbElement) -> AbElement:
        return self.h2_total.classify(pull_cocycle(self.h2_base.lift(x), self.ext.proj))


def inf_res_tra(ext: ExtensionData, M: TrivialRRBModule, bound: Optional[int] = None) -> FiveTermMaps:
    return FiveTermMaps(ext, M, bound)


# ===== EXACTNESS =====

@dataclass
class ExactnessCheck:
    position: str
    image: int
    kernel: int
    holds: bool


@dataclass
class ExactnessReport:
    checks: List[ExactnessCheck] = field(default_factory=list)
    sizes: Dict[str, int] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.holds for c in self.checks) and not self.notes

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "sizes": dict(self.sizes),
            "checks": [c.__dict__ for c in self.checks],
            "notes": list(self.notes),
        }


def _sample_pairs(items: Sequence[RRBHom], limit: int = 64) -> List[Tuple[RRBHom, RRBHom]]:
    return list(itertools.islice(itertools.combinations_with_replacement(items, 2), limit))


def five_term_exactness(ext: ExtensionData, M: TrivialRRBModule, bound: Optional[int] = None,
                        seed: Optional[int] = None, strict: bool = True) -> ExactnessReport:
    """
    im = ker at Hom(A,M) (as injectivity of Inf), Hom(H,M), Hom(K,M) and
    H²(A,M); Tra is also recomputed through a random section.

    Raises:
        TheoremViolation: some position fails and strict is set
    """
    maps = inf_res_tra(ext, M, bound)
    report = ExactnessReport()
    report.sizes = {
        "hom_A": len(maps.hom_A),
        "hom_H": len(maps.hom_H),
        "hom_K": len(maps.hom_K),
        "h2_A": maps.h2_base.order,
    }
    logger.info(f"🔄 Successione a cinque termini per {ext.base.name} con coefficienti {M.name}")

    inflated = {f.key: maps.inf(f) for f in maps.hom_A}
    ker_inf = sum(1 for g in inflated.values() if is_zero_hom(g))
    report.checks.append(ExactnessCheck("Hom(A,M)", len(inflated), ker_inf, ker_inf == 1))

    im_inf: Set[HomKey] = {g.key for g in inflated.values()}
    ker_res: Set[HomKey] = {f.key for f in maps.hom_H if is_zero_hom(maps.res(f))}
    report.checks.append(ExactnessCheck("Hom(H,M)", len(im_inf), len(ker_res), im_inf == ker_res))

    restricted: Set[HomKey] = {maps.res(f).key for f in maps.hom_H}
    tra_values: Dict[HomKey, AbElement] = {g.key: maps.tra(g) for g in maps.hom_K}
    ker_tra = {k for k, x in tra_values.items() if x.is_zero}
    report.checks.append(ExactnessCheck("Hom(K,M)", len(restricted), len(ker_tra), restricted == ker_tra))

    im_tra = set(tra_values.values())
    ker_inf2 = {x for x in maps.h2_base.elements() if maps.inf2(x).is_zero}
    report.checks.append(ExactnessCheck("H2(A,M)", len(im_tra), len(ker_inf2), im_tra == ker_inf2))

    section = random_section(ext, seed)
    moved = [g.key for g in maps.hom_K if maps.tra(g, section) != tra_values[g.key]]
    if moved:
        report.notes.append(f"Tra depends on the section at {moved[0]}")

    for f, g in _sample_pairs(maps.hom_K):
        if maps.tra(hom_sum(f, g, M)) != maps.tra(f) + maps.tra(g):
            report.notes.append(f"Tra is not additive at {f.key}, {g.key}")
            break
    for f, g in _sample_pairs(maps.hom_H):
        if maps.res(hom_sum(f, g, M)).key != hom_sum(maps.res(f), maps.res(g), M).key:
            report.notes.append(f"Res is not additive at {f.key}, {g.key}")
            break
    if any(not is_zero_hom(maps.res(g)) for g in inflated.values()):
        report.notes.append("Res after Inf is not trivial")

    for check in report.checks:
        logger.debug(f"📊 {check.position}: |im| = {check.image}, |ker| = {check.kernel}, {check.holds}")
    if strict and not report.ok:
        failing = [c.position for c in report.checks if not c.holds]
        raise TheoremViolation("five-term sequence is not exact", {"positions": failing, "notes": report.notes})
    logger.info(f"✅ Successione esatta in tutte le posizioni ({report.sizes})")
    return report


def transgression_table(ext: ExtensionData, M: TrivialRRBModule, bound: Optional[int] = None) -> Dict[HomKey, AbElement]:
    """Tra on every element of Hom(K, M)"""
    maps = inf_res_tra(ext, M, bound)
    return {g.key: maps.tra(g) for g in maps.hom_K}
