"""
schur.py - Schur multipliers and Schur covers
=============================================

C^x never appears: the multiplier is the image of H²(A, C_N) in
H²(A, C_NE) under x -> E·x, with N = E = |A||B|. Every class of order n
has a representative valued in the order-n subgroup (root extraction), and
any class trivial over C^x is already trivial over C_NE because the maps
trivializing an N-torsion cocycle are homomorphisms modulo 1/N whose values
are killed by N·|A| and N·|B|.

Covers are assembled from per-factor representatives over
(⊕ Z_d_i, ⊕ Z_d_i, trivial, id) and checked against both definitions:
K inside the commutator of the cover, and the transgression an isomorphism.
"""
import logging
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

import numpy as np

from .cohomology import (
    Cocycle4,
    H2Classes,
    TrivialRRBModule,
    coefficient_module,
    h2_group,
    h2_rrb,
    product_module,
    trivial_module,
)
from .comparison import join_cocycles
from .errors import (
    CompatibilityFails,
    HypothesisFails,
    ModuleMismatch,
    NoSolution,
    NotInSubgroup,
    TheoremViolation,
)
from .extensions import ExtensionData, extension_from_cocycle
from .groups import FiniteGroup, GroupHom, center_of, enumerate_homs, quotient_group
from .linalg import AbElement, lcm, presentation_from_orders, solve_mod, subgroup_structure
from .rrb import RRBGroup, RRBHom, RRBSubgroup, coefficient_rrb, hom_rrb, rrb_center, rrb_commutator, verify_rrb_hom
from .sequences import FiveTermMaps

logger = logging.getLogger(__name__)


def _scaled(h2: H2Classes, cochain, factor: int):
    return h2.theory.wrap({k: np.asarray(v, dtype=np.int64) * factor for k, v in cochain.tables().items()})


# ===== STABILIZED IMAGE =====

class StabilizedImage:
    """
    im(H²(X, Z_N) -> H²(X, Z_NE)), x -> E·x, for any of the cohomology theories.

    structure/solver describe the image inside the large H²; the columns of
    iota_matrix are the images of the small basis.
    """

    def __init__(self, small: H2Classes, large: H2Classes, N: int, E: int):
        self.small = small
        self.large = large
        self.N = N
        self.E = E
        self.modulus = N * E
        images = [large.classify(_scaled(large, b, E)) for b in small.basis]
        self.iota_matrix = np.zeros((large.structure.rank, len(images)), dtype=object)
        for j, x in enumerate(images):
            self.iota_matrix[:, j] = list(x.coords)
        self.structure, self.solver = subgroup_structure([x.coords for x in images], large.structure.factors)

    @property
    def order(self) -> int:
        return self.structure.order

    @property
    def factors(self) -> List[int]:
        return list(self.structure.factors)

    def iota(self, small_cochain) -> AbElement:
        return self.large.classify(_scaled(self.large, small_cochain, self.E))

    def from_large(self, x: AbElement) -> AbElement:
        """
        Raises:
            NotInSubgroup: x is not in the image
        """
        return self.solver.coordinates(list(x.coords))

    def classify(self, small_cochain) -> AbElement:
        """Multiplier coordinates of an N-valued cocycle"""
        return self.from_large(self.iota(small_cochain))

    def large_class(self, element: AbElement) -> AbElement:
        return self.large.structure.element(self.solver.lift(element))

    def small_preimage(self, element: AbElement) -> AbElement:
        target = list(self.large_class(element).coords)
        if not self.small.structure.rank or not self.large.structure.rank:
            return self.small.structure.zero()
        x = solve_mod(self.iota_matrix, target, self.large.structure.factors)
        return self.small.structure.element([int(v) for v in x])

    def representative(self, element: AbElement):
        """An N-valued cocycle in the class"""
        return self.small.lift(self.small_preimage(element))

    @property
    def generators(self) -> List:
        return [self.representative(self.structure.unit(i)) for i in range(self.structure.rank)]

    @property
    def exponent_divides(self) -> bool:
        return self.N % self.structure.exponent == 0


class SchurMultiplier(StabilizedImage):
    def __init__(self, A: RRBGroup, enlargement: Optional[int] = None, bound: Optional[int] = None):
        N = A.H.order * A.G.order
        E = enlargement or N
        self.A = A
        super().__init__(
            h2_rrb(A, coefficient_module(N), bound),
            h2_rrb(A, coefficient_module(N * E), bound),
            N, E,
        )

    def as_dict(self) -> dict:
        return {
            "rrb": self.A.name,
            "factors": self.factors,
            "order": self.order,
            "moduli": [self.N, self.E],
        }


@lru_cache(maxsize=64)
def schur_multiplier(A: RRBGroup, enlargement: Optional[int] = None, bound: Optional[int] = None) -> SchurMultiplier:
    """
    M_RRB(A) as a stabilized image.

    Raises:
        SearchBoundExceeded: the cochain systems are too large
        TheoremViolation: the exponent does not divide |A||B|
    """
    logger.info(f"🔄 Moltiplicatore di Schur di {A.name}")
    M = SchurMultiplier(A, enlargement, bound)
    if not M.exponent_divides:
        raise TheoremViolation(
            "multiplier exponent does not divide |A||B|", {"factors": M.factors, "N": M.N}
        )
    logger.info(f"📊 M({A.name}) = {M.structure.describe()}")
    return M


def group_schur_multiplier(G: FiniteGroup, bound: Optional[int] = None) -> StabilizedImage:
    """Ordinary Schur multiplier by the same stabilized image over Z_|G| and Z_|G|²"""
    N = G.order
    return StabilizedImage(h2_group(G, N, bound), h2_group(G, N * N, bound), N, N)


def multiplier_class(M: StabilizedImage, cochain) -> AbElement:
    """
    Raises:
        NotInZ2: cochain is not an N-valued cocycle
    """
    return M.classify(cochain)


def minimize_representative(M: StabilizedImage, cls: AbElement):
    """
    Representative over Z_NE with every value in the order-n subgroup,
    n the order of cls: solve B·θ = -c0 modulo NE/n.

    Raises:
        TheoremViolation: no such representative
    """
    n = cls.order
    q, r = divmod(M.modulus, n)
    if r:
        raise TheoremViolation(f"class order {n} does not divide {M.modulus}", {"order": n})
    target = M.large_class(cls)
    c0 = M.large.lift(target)
    theory = M.large.theory
    vector = theory.vector(c0)
    if not vector:
        return c0
    B = M.large.coboundary_matrix
    try:
        theta = solve_mod(B, [-v for v in vector], [q] * len(vector))
    except NoSolution as e:
        raise TheoremViolation(f"no representative of order {n} values: {e.message}", {"order": n, **e.witness})
    adjusted = np.array(vector, dtype=object) + (B.dot(theta) if B.shape[1] else 0)
    rep_vector = [int(v) % M.modulus for v in adjusted]
    if any(v % q for v in rep_vector):
        raise TheoremViolation("adjusted representative leaves the order-n subgroup", {"order": n})
    rep = theory.wrap(theory.layout.unflatten(rep_vector))
    if M.large.classify(rep) != target:
        raise TheoremViolation("adjusted representative changed class", {"order": n})
    return rep


def reduce_representative(rep, q: int, n: int):
    """Divide a representative valued in qZ/qnZ down to Z_n"""
    return type(rep).from_tables({k: (np.asarray(v, dtype=np.int64) // q) % n for k, v in rep.tables().items()})


def alternative_generators(M: StabilizedImage) -> Optional[List[AbElement]]:
    """
    Another generating system with the same orders: a factor of order > 2 is
    negated, otherwise the last generator is sheared by the first. None when
    the multiplier has at most one generator of order <= 2.
    """
    units = [M.structure.unit(i) for i in range(M.structure.rank)]
    for i, d in enumerate(M.structure.factors):
        if d > 2:
            units[i] = -units[i]
            return units
    if len(units) >= 2:
        units[-1] = units[-1] + units[0]
        return units
    return None


# ===== COVERS =====

@dataclass
class CoverChecks:
    centrality: bool
    containment: bool
    transgression: bool

    @property
    def ok(self) -> bool:
        return self.centrality and self.containment and self.transgression


@dataclass
class CoverResult:
    ext: ExtensionData
    checks: CoverChecks
    multiplier: SchurMultiplier
    tra: Dict[tuple, AbElement] = field(default_factory=dict)

    @property
    def is_cover(self) -> bool:
        return self.checks.ok

    def as_dict(self) -> dict:
        return {
            "base": self.ext.base.name,
            "multiplier": self.multiplier.factors,
            "H_order": self.ext.total.H.order,
            "G_order": self.ext.total.G.order,
            "checks": asdict(self.checks),
            "is_cover": self.is_cover,
        }


def _module_for(factors: Sequence[int]) -> TrivialRRBModule:
    if not factors:
        return trivial_module()
    return product_module([coefficient_module(d) for d in factors])


def _zero_cocycle(A: RRBGroup, module: TrivialRRBModule) -> Cocycle4:
    m, n = A.H.order, A.G.order
    return Cocycle4(
        np.zeros((m, m, module.dK), dtype=np.int64),
        np.zeros((n, n, module.dL), dtype=np.int64),
        np.zeros((m, n, module.dK), dtype=np.int64),
        np.zeros((m, module.dL), dtype=np.int64),
    )


def transgression_values(ext: ExtensionData, M: SchurMultiplier) -> Dict[tuple, AbElement]:
    """Tra: Hom(K, C_NE) -> M_RRB(A) on every character"""
    maps = FiveTermMaps(ext, coefficient_module(M.modulus))
    values = {}
    for g in maps.hom_K:
        try:
            values[g.key] = M.from_large(maps.tra(g))
        except NotInSubgroup as e:
            raise TheoremViolation("transgression leaves the multiplier", {"character": list(g.psi.image), **e.witness})
    return values


def is_schur_cover(ext: ExtensionData, multiplier: Optional[SchurMultiplier] = None) -> CoverResult:
    """
    Raises:
        ModuleMismatch: K or L is not isomorphic to M_RRB(A)
        TheoremViolation: for bijective A, containment and Tra disagree
    """
    M = multiplier or schur_multiplier(ext.base)
    module = ext.module
    for part, orders in (("K", module.K), ("L", module.L)):
        if presentation_from_orders(list(orders)).factors != M.structure.factors:
            raise ModuleMismatch(
                f"{part} is not isomorphic to the multiplier",
                {"part": part, "factors": list(orders), "multiplier": M.factors},
            )
    total = ext.total
    centre = rrb_center(total)
    central_G = set(center_of(total.G).elements) & set(centre.L.elements)
    centrality = set(ext.K_image) <= set(centre.K.elements) and set(ext.L_image) <= central_G
    containment = set(ext.K_image) <= set(rrb_commutator(total).K.elements)
    tra = transgression_values(ext, M)
    bijective = len(tra) == M.order and len(set(tra.values())) == M.order
    checks = CoverChecks(centrality, containment, bijective)
    if ext.base.is_bijective and containment != bijective:
        raise TheoremViolation(
            "K ⊆ H' and Tra bijective disagree on a bijective base", {"containment": containment, "transgression": bijective}
        )
    status = "✅" if checks.ok else "❌"
    logger.info(f"{status} Verifica copertura di {ext.base.name}: {asdict(checks)}")
    return CoverResult(ext, checks, M, tra)


def build_schur_cover(A: RRBGroup, generators: Optional[Sequence[AbElement]] = None,
                      bound: Optional[int] = None) -> CoverResult:
    """
    Central extension of A by (⊕ Z_d_i, ⊕ Z_d_i, trivial, id) from minimized
    representatives of a generating system of M_RRB(A).

    Raises:
        ModuleMismatch: the generators do not form a basis of the multiplier
    """
    M = schur_multiplier(A, bound=bound)
    gens = list(generators) if generators is not None else [M.structure.unit(i) for i in range(M.structure.rank)]
    orders = [g.order for g in gens]
    span, _ = subgroup_structure([g.coords for g in gens], M.structure.factors)
    if span.order != M.order or int(np.prod(orders, dtype=np.int64)) != M.order:
        raise ModuleMismatch("generators do not form a basis of the multiplier", {"orders": orders})

    parts = []
    for g, d in zip(gens, orders):
        rep = minimize_representative(M, g)
        parts.append(reduce_representative(rep, M.modulus // d, d))
    module = _module_for(orders)
    cocycle = join_cocycles(parts) if parts else _zero_cocycle(A, module)
    ext = extension_from_cocycle(A, module, cocycle)
    logger.info(f"🔄 Copertura di {A.name}: |H| = {ext.total.H.order}, |G| = {ext.total.G.order}")
    return is_schur_cover(ext, M)


# ===== CHARACTERS =====

def _character_modulus(A: RRBGroup) -> int:
    return lcm(A.H.exponent, A.G.exponent)


def restricts_trivially(A: RRBGroup, sub: RRBSubgroup, bound: Optional[int] = None) -> bool:
    """
    Every RRB character of A (into C_Q, Q the exponent lcm) is trivial on sub.

    Raises:
        HypothesisFails: R(K) != L
        TheoremViolation: for bijective A, the verdict disagrees with sub ⊆ A'
    """
    if {A.r(k) for k in sub.K} != set(sub.L.elements):
        raise HypothesisFails("R does not map K onto L", {"K": list(sub.K.elements), "L": list(sub.L.elements)})
    characters = hom_rrb(A, coefficient_rrb(_character_modulus(A)), bound)
    verdict = all(
        not any(f.psi(k) for k in sub.K) and not any(f.eta(l) for l in sub.L) for f in characters
    )
    if A.is_bijective:
        inside = set(sub.K.elements) <= set(rrb_commutator(A).K.elements)
        if inside != verdict:
            raise TheoremViolation("character test and commutator containment disagree", {"inside": inside})
    return verdict


def converse_character(A: RRBGroup, sub: RRBSubgroup, bound: Optional[int] = None) -> Optional[RRBHom]:
    """
    A character nontrivial on sub, from a character of H/H^φ taking a
    primitive value on the coset of an element of K outside H^φ; η = ψ∘R^-1.
    None when K ⊆ H^φ.

    Raises:
        HypothesisFails: A is not bijective
    """
    if not A.is_bijective:
        raise HypothesisFails("converse character needs a bijective operator")
    commutator = rrb_commutator(A).K
    outside = [k for k in sub.K if k not in commutator]
    if not outside:
        return None
    k = outside[0]
    C = coefficient_rrb(_character_modulus(A))
    Q, proj = quotient_group(A.H, commutator)
    R_inv = [0] * A.G.order
    for h in A.H.elements():
        R_inv[A.r(h)] = h
    for chi in enumerate_homs(Q, C.H, bound=bound):
        if chi(proj(k)) == 0:
            continue
        psi = chi.compose(proj)
        eta = GroupHom(A.G, C.G, [psi(R_inv[g]) for g in A.G.elements()])
        try:
            return verify_rrb_hom(A, C, psi, eta)
        except CompatibilityFails:
            continue
    raise TheoremViolation("no character separates an element outside the commutator", {"element": k})


def covers_of(A: RRBGroup, bound: Optional[int] = None) -> List[CoverResult]:
    """The default cover and, when one exists, the cover of the alternative generating system"""
    M = schur_multiplier(A, bound=bound)
    results = [build_schur_cover(A, bound=bound)]
    alt = alternative_generators(M)
    if alt is not None:
        results.append(build_schur_cover(A, alt, bound=bound))
    return results

