"""
braces.py - Skew left braces and Yang-Baxter maps
=================================================

Braces induced by RRB groups, annihilator, commutator, quotient by the
annihilator, brace isoclinism and the set-theoretic solution of the
Yang-Baxter equation attached to a brace.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .errors import (
    AlgebraError,
    BraidFails,
    CompatibilityFails,
    ConsistencyError,
    DegenerateComponent,
    NotIdeal,
    SearchBoundExceeded,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    build_group,
    commutator_subgroup,
    coset_representatives,
    enumerate_homs,
    quotient_group,
    subgroup_generated,
)
from .rrb import RRBGroup

logger = logging.getLogger(__name__)


def brace_identity_failure(dot: FiniteGroup, circle: FiniteGroup) -> Optional[Tuple[int, int, int]]:
    """First (a, b, c) with a∘(b·c) != (a∘b)·a^-1·(a∘c), or None"""
    D, C, inv = dot.table, circle.table, dot.inv_array
    n = dot.order
    a = np.arange(n)
    for start in range(0, n, 8):
        block = a[start:start + 8]
        lhs = C[block[:, None, None], D[None, :, :]]
        left = D[C[block, :], inv[block][:, None]]
        rhs = D[left[:, :, None], C[block, :][:, None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, b, c = (int(v) for v in bad[0])
            return int(block[i]), b, c
    return None


class SkewBrace:
    """(H, ·, ∘) on one carrier; both groups share the identity 0"""

    def __init__(self, dot: FiniteGroup, circle: FiniteGroup, name: str = "brace"):
        self.dot = dot
        self.circle = circle
        self.name = name

    def __repr__(self) -> str:
        return f"SkewBrace({self.name}, n={self.order})"

    @property
    def order(self) -> int:
        return self.dot.order

    @property
    def is_trivial(self) -> bool:
        return np.array_equal(self.dot.table, self.circle.table)

    @cached_property
    def lam(self) -> np.ndarray:
        """lam[a][b] = a^-1 · (a∘b)"""
        return self.dot.table[self.dot.inv_array[:, None], self.circle.table]

    @cached_property
    def annihilator(self) -> Subgroup:
        return brace_annihilator(self)

    @cached_property
    def commutator(self) -> Subgroup:
        return brace_commutator(self)

    @cached_property
    def central_quotient(self) -> Tuple["SkewBrace", GroupHom]:
        return brace_quotient(self, self.annihilator)


def build_brace(dot: FiniteGroup, circle: FiniteGroup, name: str = "brace") -> SkewBrace:
    """
    Raises:
        CompatibilityFails: brace identity broken at a triple
    """
    if dot.order != circle.order:
        raise CompatibilityFails("dot and circle live on different carriers", {"dot": dot.order, "circle": circle.order})
    bad = brace_identity_failure(dot, circle)
    if bad is not None:
        raise CompatibilityFails(f"brace identity fails at {bad}", {"triple": list(bad)})
    return SkewBrace(dot, circle, name)


def trivial_brace(group: FiniteGroup) -> SkewBrace:
    return SkewBrace(group, group, f"triv({group.name})")


def induced_brace(rrb: RRBGroup) -> SkewBrace:
    """(H, ·, ∘_R) of a relative Rota-Baxter group"""
    circle, _ = rrb.descendent
    bad = brace_identity_failure(rrb.H, circle)
    if bad is not None:
        raise ConsistencyError(f"induced brace of {rrb.name} breaks the brace identity", {"triple": list(bad)})
    return SkewBrace(rrb.H, circle, f"brace{rrb.name}")


def brace_annihilator(brace: SkewBrace) -> Subgroup:
    """{a : b∘a = a∘b = b·a = a·b for every b}"""
    D, C = brace.dot.table, brace.circle.table
    mask = np.all((C.T == C) & (C.T == D) & (D.T == D), axis=0)
    return Subgroup(brace.dot, np.flatnonzero(mask).tolist())


def brace_commutator(brace: SkewBrace) -> Subgroup:
    """Dot-closure of the commutators [a,b] and every a^-1·(a∘b)·b^-1"""
    D, inv = brace.dot.table, brace.dot.inv_array
    gens = set(commutator_subgroup(brace.dot).elements)
    gens |= set(np.unique(D[brace.lam, inv[None, :]]).tolist())
    return subgroup_generated(brace.dot, gens)


def brace_quotient(brace: SkewBrace, ideal: Subgroup) -> Tuple[SkewBrace, GroupHom]:
    """
    Quotient by an ideal; cosets are dot cosets, the circle table is read
    off representatives and checked for well-definedness.

    Raises:
        NotIdeal: the circle product does not descend
    """
    Q, proj = quotient_group(brace.dot, ideal)
    reps = coset_representatives(proj)
    p = np.array(proj.image, dtype=np.int64)
    circ = p[brace.circle.table[np.ix_(reps, reps)]]
    bad = np.argwhere(p[brace.circle.table] != circ[p[:, None], p[None, :]])
    if len(bad):
        x, y = (int(v) for v in bad[0])
        raise NotIdeal("circle product does not descend to the quotient", {"pair": [x, y]})
    try:
        circle = build_group(circ, f"{brace.circle.name}/{ideal.order}")
    except AlgebraError as e:
        raise ConsistencyError(f"quotient circle table is not a group: {e.message}", e.witness)
    return SkewBrace(Q, circle, f"{brace.name}/{ideal.order}"), proj


def brace_hom_check(b1: SkewBrace, b2: SkewBrace, image: Sequence[int]) -> bool:
    """True iff image preserves both products"""
    f = np.array(image, dtype=np.int64)
    return bool(
        np.array_equal(f[b1.dot.table], b2.dot.table[f[:, None], f[None, :]])
        and np.array_equal(f[b1.circle.table], b2.circle.table[f[:, None], f[None, :]])
    )


# ===== YANG-BAXTER =====

@dataclass
class YBMap:
    """r(x, y) = (sigma[x][y], tau[x][y]) on ordered pairs"""

    n: int
    sigma: np.ndarray
    tau: np.ndarray

    def __call__(self, x: int, y: int) -> Tuple[int, int]:
        return int(self.sigma[x, y]), int(self.tau[x, y])

    @property
    def is_involutive(self) -> bool:
        s, t = self.sigma, self.tau
        return bool(np.all(s[s, t] == np.arange(self.n)[:, None]) and np.all(t[s, t] == np.arange(self.n)[None, :]))


def ybe_map(brace: SkewBrace) -> YBMap:
    """
    sigma_x(y) = x^-1·(x∘y), tau_y(x) = sigma_x(y)^{∘-1} ∘ x ∘ y, checked
    for bijectivity, non-degeneracy and the braid relation on all triples.
    """
    C = brace.circle.table
    sigma = brace.lam
    tau = C[C[brace.circle.inv_array[sigma], np.arange(brace.order)[:, None]], np.arange(brace.order)[None, :]]
    r = YBMap(brace.order, sigma, tau)
    verify_ybe(r)
    return r


def verify_ybe(r: YBMap) -> None:
    """
    Raises:
        DegenerateComponent: r, some sigma_x or some tau_y is not bijective
        BraidFails: (r×id)(id×r)(r×id) != (id×r)(r×id)(id×r) at a triple
    """
    n, s, t = r.n, r.sigma, r.tau
    if len(np.unique(s * n + t)) != n * n:
        raise DegenerateComponent("r is not a bijection of X×X")
    for x in range(n):
        if len(np.unique(s[x])) != n:
            raise DegenerateComponent(f"sigma_{x} is not bijective", {"x": x})
    for y in range(n):
        if len(np.unique(t[:, y])) != n:
            raise DegenerateComponent(f"tau_{y} is not bijective", {"y": y})

    X, Y, Z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    # left: r12 r23 r12
    x1, y1, z1 = s[X, Y], t[X, Y], Z
    y2, z2 = s[y1, z1], t[y1, z1]
    lx, ly, lz = s[x1, y2], t[x1, y2], z2
    # right: r23 r12 r23
    y1, z1 = s[Y, Z], t[Y, Z]
    x2, y2 = s[X, y1], t[X, y1]
    rx, ry, rz = x2, s[y2, z1], t[y2, z1]
    bad = np.argwhere((lx != rx) | (ly != ry) | (lz != rz))
    if len(bad):
        x, y, z = (int(v) for v in bad[0])
        raise BraidFails(f"braid relation fails at ({x}, {y}, {z})", {"triple": [x, y, z]})
    logger.debug(f"✅ Relazione di treccia verificata su {n ** 3} triple")


# ===== ISOCLINISM =====

def theta_tables(brace: SkewBrace) -> Tuple[np.ndarray, np.ndarray]:
    """theta and theta* over annihilator-coset representatives"""
    _, proj = brace.central_quotient
    reps = np.array(coset_representatives(proj), dtype=np.int64)
    D, inv = brace.dot.table, brace.dot.inv_array
    a, b = reps[:, None], reps[None, :]
    theta = D[D[a, b], D[inv[a], inv[b]]]
    theta_star = D[brace.lam[a, b], inv[b]]
    return theta, theta_star


@dataclass
class BraceIsoclinism:
    status: str
    xi1: Tuple[int, ...] = ()
    xi2: Dict[int, int] = field(default_factory=dict)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.status == "isoclinic"


def verify_brace_isoclinism(b1: SkewBrace, b2: SkewBrace, xi1: Sequence[int], xi2: Dict[int, int]) -> None:
    """
    xi1 on annihilator-quotient indices, xi2 on commutator elements.

    Raises:
        CompatibilityFails: naming the broken condition
    """
    Q1, _ = b1.central_quotient
    Q2, _ = b2.central_quotient
    C1, C2 = b1.commutator, b2.commutator
    if len(xi1) != Q1.order or len(set(xi1)) != Q2.order or Q1.order != Q2.order:
        raise CompatibilityFails("xi1 is not a bijection of the annihilator quotients")
    if not brace_hom_check(Q1, Q2, xi1):
        raise CompatibilityFails("xi1 is not a brace homomorphism")
    if set(xi2) != set(C1.elements) or sorted(xi2.values()) != list(C2.elements):
        raise CompatibilityFails("xi2 is not a bijection of the commutators")
    D1, D2 = b1.dot.rows, b2.dot.rows
    O1, O2 = b1.circle.rows, b2.circle.rows
    for x in C1:
        for y in C1:
            if xi2[D1[x][y]] != D2[xi2[x]][xi2[y]] or xi2[O1[x][y]] != O2[xi2[x]][xi2[y]]:
                raise CompatibilityFails("xi2 is not a brace homomorphism", {"pair": [x, y]})
    t1, s1 = theta_tables(b1)
    t2, s2 = theta_tables(b2)
    f = np.array(xi1, dtype=np.int64)
    for name, m1, m2 in (("theta", t1, t2), ("theta*", s1, s2)):
        image = np.vectorize(xi2.__getitem__, otypes=[np.int64])(m1)
        bad = np.argwhere(image != m2[f[:, None], f[None, :]])
        if len(bad):
            i, j = (int(v) for v in bad[0])
            raise CompatibilityFails(f"{name} square does not commute", {"pair": [i, j]})


def brace_isoclinic(b1: SkewBrace, b2: SkewBrace, bound: Optional[int] = None) -> BraceIsoclinism:
    """
    Search xi1 over brace isomorphisms of the annihilator quotients; xi2 is
    then forced on theta and theta* values and extended over the commutator.

    Raises:
        SearchBoundExceeded: quotient or commutator above the bound
    """
    bound = bound or get_config().isoclinism_search_bound
    Q1, _ = b1.central_quotient
    Q2, _ = b2.central_quotient
    C1, C2 = b1.commutator, b2.commutator
    if Q1.order != Q2.order:
        return BraceIsoclinism("not_isoclinic", reason=f"annihilator quotients of order {Q1.order} and {Q2.order}")
    if C1.order != C2.order:
        return BraceIsoclinism("not_isoclinic", reason=f"commutators of order {C1.order} and {C2.order}")
    if max(Q1.order, C1.order) > bound:
        raise SearchBoundExceeded(
            "brace isoclinism search beyond bound", {"quotient": Q1.order, "commutator": C1.order, "bound": bound}
        )
    G1, emb1 = C1.to_group()
    G2, emb2 = C2.to_group()
    t1, s1 = theta_tables(b1)
    t2, s2 = theta_tables(b2)

    for xi1 in enumerate_homs(Q1.dot, Q2.dot, bijective=True, bound=bound):
        if not brace_hom_check(Q1, Q2, xi1.image):
            continue
        f = np.array(xi1.image, dtype=np.int64)
        fixed: Dict[int, int] = {}
        consistent = True
        for m1, m2 in ((t1, t2), (s1, s2)):
            target = m2[f[:, None], f[None, :]]
            for x, y in zip(m1.ravel().tolist(), target.ravel().tolist()):
                key, value = C1.index_of(x), C2.index_of(y)
                if fixed.setdefault(key, value) != value:
                    consistent = False
                    break
            if not consistent:
                break
        if not consistent:
            continue
        for xi2 in enumerate_homs(G1, G2, fixed=fixed, bijective=True, bound=bound):
            mapping = {emb1(i): emb2(xi2(i)) for i in G1.elements()}
            try:
                verify_brace_isoclinism(b1, b2, xi1.image, mapping)
            except CompatibilityFails:
                continue
            return BraceIsoclinism("isoclinic", xi1.image, mapping)
    return BraceIsoclinism("not_isoclinic", reason="search exhausted")
