"""
rrb.py - Relative Rota-Baxter groups
====================================

The quadruple (H, G, phi, R): phi stored as one automorphism table per
element of G, R as an index array. Axiom checks, descendent group, centre,
commutator, ideals, quotients, homomorphisms, the I(.) truncation and the
operator enumerator used to build test corpora.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .errors import (
    AlgebraError,
    CompatibilityFails,
    ConsistencyError,
    IndexOutOfRange,
    NotIdeal,
    NotSubgroup,
    PhiNotAction,
    PhiNotAutomorphism,
    RBIdentityFails,
    SearchBoundExceeded,
    ShapeMismatch,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    build_group,
    center_of,
    commutator_subgroup,
    coset_representatives,
    cyclic,
    direct_product,
    enumerate_homs,
    frozen,
    quotient_group,
    subgroup_generated,
)

logger = logging.getLogger(__name__)


class RRBGroup:
    """
    Relative Rota-Baxter group (H, G, phi, R).

    phi[g][h] = phi_g(h); R[h] in G. Build through verify_rrb() unless the
    data is valid by construction.
    """

    def __init__(self, H: FiniteGroup, G: FiniteGroup, phi, R, name: str = ""):
        self.H = H
        self.G = G
        self.phi = frozen(phi)
        self.R = frozen(R)
        self.name = name or f"({H.name},{G.name})"
        self.phi_rows: List[List[int]] = self.phi.tolist()
        self.R_list: List[int] = self.R.tolist()

    def __repr__(self) -> str:
        return f"RRBGroup({self.name}, |H|={self.H.order}, |G|={self.G.order}, R={self.R_list})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RRBGroup) and self.H == other.H and self.G == other.G and \
            np.array_equal(self.phi, other.phi) and np.array_equal(self.R, other.R)

    def __hash__(self) -> int:
        return hash((hash(self.H), hash(self.G), self.phi.tobytes(), self.R.tobytes()))

    def act(self, g: int, h: int) -> int:
        return self.phi_rows[g][h]

    def r(self, h: int) -> int:
        return self.R_list[h]

    @property
    def is_bijective(self) -> bool:
        return len(set(self.R_list)) == self.H.order == self.G.order

    @cached_property
    def descendent(self) -> Tuple[FiniteGroup, GroupHom]:
        return descendent_group(self)

    def circle(self, h1: int, h2: int) -> int:
        """h1 ∘_R h2 = h1 phi_{R(h1)}(h2)"""
        return self.H.rows[h1][self.phi_rows[self.R_list[h1]][h2]]


def verify_rrb(H: FiniteGroup, G: FiniteGroup, phi, R, name: str = "") -> RRBGroup:
    """
    Check every axiom and return the validated RRB group.

    Raises:
        ShapeMismatch, IndexOutOfRange: malformed components
        PhiNotAutomorphism: some phi_g is not an automorphism of H
        PhiNotAction: phi is not a homomorphism G -> Aut(H)
        RBIdentityFails: R(h1)R(h2) != R(h1 phi_{R(h1)}(h2)) at (h1, h2)
    """
    n, m = H.order, G.order
    phi = np.array(phi, dtype=np.int64)
    R = np.array(R, dtype=np.int64)
    if phi.shape != (m, n):
        raise ShapeMismatch(f"phi must be {m} x {n}", {"shape": list(phi.shape)})
    if R.shape != (n,):
        raise ShapeMismatch(f"R must have {n} entries", {"shape": list(R.shape)})
    if phi.min() < 0 or phi.max() >= n:
        g, h = (int(v) for v in np.argwhere((phi < 0) | (phi >= n))[0])
        raise IndexOutOfRange(f"phi[{g}][{h}] outside H", {"g": g, "h": h})
    if R.min() < 0 or R.max() >= m:
        h = int(np.argwhere((R < 0) | (R >= m))[0][0])
        raise IndexOutOfRange(f"R[{h}] outside G", {"h": h})

    table = H.table
    for g in range(m):
        row = phi[g]
        if len(np.unique(row)) != n:
            raise PhiNotAutomorphism(f"phi_{g} is not a bijection of H", {"g": g})
        bad = np.argwhere(row[table] != table[row[:, None], row[None, :]])
        if len(bad):
            x, y = (int(v) for v in bad[0])
            raise PhiNotAutomorphism(
                f"phi_{g}({x}*{y}) != phi_{g}({x})*phi_{g}({y})", {"g": g, "pair": [x, y]}
            )

    ident = np.arange(n)
    if not np.array_equal(phi[0], ident):
        h = int(np.argmax(phi[0] != ident))
        raise PhiNotAction("phi_1 is not the identity", {"g1": 0, "g2": 0, "h": h})
    lhs = phi[G.table]
    rhs = phi[np.arange(m)[:, None, None], phi[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g1, g2, h = (int(v) for v in bad[0])
        raise PhiNotAction(
            f"phi_({g1}*{g2})({h}) != phi_{g1}(phi_{g2}({h}))", {"g1": g1, "g2": g2, "h": h}
        )

    lhs = G.table[R[:, None], R[None, :]]
    rhs = R[table[ident[:, None], phi[R]]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        h1, h2 = (int(v) for v in bad[0])
        raise RBIdentityFails(
            f"R({h1})R({h2}) = {int(lhs[h1, h2])} but R({h1} phi_R({h1})({h2})) = {int(rhs[h1, h2])}",
            {"h1": h1, "h2": h2},
        )
    return RRBGroup(H, G, phi, R, name)


def descendent_group(rrb: RRBGroup) -> Tuple[FiniteGroup, GroupHom]:
    """H with h1 ∘ h2 = h1 phi_{R(h1)}(h2), and R as a homomorphism into G"""
    H = rrb.H
    table = H.table[np.arange(H.order)[:, None], rrb.phi[rrb.R]]
    try:
        circle = build_group(table, f"{H.name}∘")
        hom = GroupHom(circle, rrb.G, rrb.R_list).verify()
    except AlgebraError as e:
        raise ConsistencyError(f"descendent group of a valid RRB group failed: {e.message}", e.witness)
    return circle, hom


# ===== SUBGROUPS AND IDEALS =====

class RRBSubgroup:
    """(K, L) with phi_l(K) ⊆ K for l in L and R(K) ⊆ L"""

    def __init__(self, parent: RRBGroup, K: Subgroup, L: Subgroup):
        if K.parent != parent.H or L.parent != parent.G:
            raise NotSubgroup("subgroups belong to other groups")
        for l in L:
            row = parent.phi_rows[l]
            for k in K:
                if row[k] not in K:
                    raise NotSubgroup(f"phi_{l}({k}) leaves K", {"l": l, "k": k})
        for k in K:
            if parent.R_list[k] not in L:
                raise NotSubgroup(f"R({k}) not in L", {"k": k})
        self.parent = parent
        self.K = K
        self.L = L

    @classmethod
    def from_elements(cls, parent: RRBGroup, K: Sequence[int], L: Sequence[int]) -> "RRBSubgroup":
        return cls(parent, Subgroup.checked(parent.H, K), Subgroup.checked(parent.G, L))

    def __repr__(self) -> str:
        return f"RRBSubgroup(K={list(self.K.elements)}, L={list(self.L.elements)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RRBSubgroup) and self.K == other.K and self.L == other.L

    def __hash__(self) -> int:
        return hash((self.K, self.L))

    @cached_property
    def relabeled(self) -> Tuple[RRBGroup, GroupHom, GroupHom]:
        Kc, emb_K = self.K.to_group()
        Lc, emb_L = self.L.to_group()
        phi = [[self.K.index_of(self.parent.phi_rows[l][k]) for k in self.K] for l in self.L]
        R = [self.L.index_of(self.parent.R_list[k]) for k in self.K]
        return RRBGroup(Kc, Lc, phi, R, f"{self.parent.name}|sub"), emb_K, emb_L

    def to_rrb(self) -> Tuple[RRBGroup, GroupHom, GroupHom]:
        """Standalone RRB group on relabeled carriers with both embeddings"""
        return self.relabeled


def whole(rrb: RRBGroup) -> RRBSubgroup:
    return RRBSubgroup(rrb, Subgroup(rrb.H, rrb.H.elements()), Subgroup(rrb.G, rrb.G.elements()))


def rrb_center(rrb: RRBGroup) -> RRBSubgroup:
    """(Z(H) ∩ ker(phi R) ∩ Fix(phi), ker phi)"""
    ident = np.arange(rrb.H.order)
    trivial_on = np.all(rrb.phi == ident[None, :], axis=1)
    kills = trivial_on[rrb.R]
    fixed = np.all(rrb.phi == ident[None, :], axis=0)
    K = [h for h in center_of(rrb.H) if kills[h] and fixed[h]]
    L = np.flatnonzero(trivial_on).tolist()
    return RRBSubgroup(rrb, Subgroup(rrb.H, K), Subgroup(rrb.G, L))


def displacements(rrb: RRBGroup, gs: Optional[Sequence[int]] = None) -> List[int]:
    """All phi_g(h) h^-1 for g in gs (default: all of G)"""
    phi = rrb.phi if gs is None else rrb.phi[list(gs)]
    values = rrb.H.table[phi, rrb.H.inv_array[None, :]]
    return np.unique(values).tolist()


def rrb_commutator(rrb: RRBGroup) -> RRBSubgroup:
    """(H^phi, G): H^phi generated by H' and every phi_g(h) h^-1"""
    gens = set(commutator_subgroup(rrb.H).elements) | set(displacements(rrb))
    K = subgroup_generated(rrb.H, gens)
    return RRBSubgroup(rrb, K, Subgroup(rrb.G, rrb.G.elements()))


@dataclass
class IdealCheck:
    ok: bool
    condition: Optional[str] = None
    witness: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def is_ideal(rrb: RRBGroup, sub: RRBSubgroup) -> IdealCheck:
    """
    Conditions: I0 K ⊴ H and L ⊴ G; I1 phi_g(K) ⊆ K for all g;
    I2 phi_l(h) h^-1 in K for all h in H, l in L.
    """
    if sub.parent is not rrb and sub.parent != rrb:
        raise NotSubgroup("subgroup of another RRB group")
    w = sub.K.normality_witness()
    if w is not None:
        return IdealCheck(False, "I0", {"part": "K", "g": w[0], "n": w[1]})
    w = sub.L.normality_witness()
    if w is not None:
        return IdealCheck(False, "I0", {"part": "L", "g": w[0], "n": w[1]})
    for g in rrb.G.elements():
        row = rrb.phi_rows[g]
        for k in sub.K:
            if row[k] not in sub.K:
                return IdealCheck(False, "I1", {"g": g, "k": k})
    H = rrb.H
    for l in sub.L:
        row = rrb.phi_rows[l]
        for h in H.elements():
            if H.rows[row[h]][H.inv[h]] not in sub.K:
                return IdealCheck(False, "I2", {"l": l, "h": h})
    return IdealCheck(True)


# ===== HOMOMORPHISMS =====

class RRBHom:
    """Pair (psi: H1 -> H2, eta: G1 -> G2) of compatible group homomorphisms"""

    def __init__(self, source: RRBGroup, target: RRBGroup, psi: GroupHom, eta: GroupHom):
        self.source = source
        self.target = target
        self.psi = psi
        self.eta = eta

    def __repr__(self) -> str:
        return f"RRBHom(psi={list(self.psi.image)}, eta={list(self.eta.image)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, RRBHom) and self.psi.image == other.psi.image and self.eta.image == other.eta.image

    def __hash__(self) -> int:
        return hash((self.psi.image, self.eta.image))

    @property
    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.psi.image, self.eta.image

    @classmethod
    def identity(cls, rrb: RRBGroup) -> "RRBHom":
        return cls(rrb, rrb, GroupHom.identity(rrb.H), GroupHom.identity(rrb.G))

    def compose(self, first: "RRBHom") -> "RRBHom":
        """self after first"""
        return verify_rrb_hom(first.source, self.target, self.psi.compose(first.psi), self.eta.compose(first.eta))

    @property
    def is_bijective(self) -> bool:
        return self.psi.is_bijective and self.eta.is_bijective


def compatibility_failure(rrb1: RRBGroup, rrb2: RRBGroup, psi: Sequence[int], eta: Sequence[int]) -> Optional[Tuple[str, Dict[str, int]]]:
    psi_arr = np.array(psi, dtype=np.int64)
    eta_arr = np.array(eta, dtype=np.int64)
    bad = np.flatnonzero(eta_arr[rrb1.R] != rrb2.R[psi_arr])
    if len(bad):
        return "eta∘R = S∘psi", {"h": int(bad[0])}
    lhs = psi_arr[rrb1.phi]
    rhs = rrb2.phi[eta_arr[:, None], psi_arr[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g, h = (int(v) for v in bad[0])
        return "psi∘phi_g = phi'_eta(g)∘psi", {"g": g, "h": h}
    return None


def verify_rrb_hom(rrb1: RRBGroup, rrb2: RRBGroup, psi: GroupHom, eta: GroupHom) -> RRBHom:
    """
    Raises:
        CompatibilityFails: naming the failing equation and its witness
    """
    psi.verify()
    eta.verify()
    failure = compatibility_failure(rrb1, rrb2, psi.image, eta.image)
    if failure is not None:
        which, witness = failure
        raise CompatibilityFails(f"{which} fails at {witness}", {"equation": which, **witness})
    return RRBHom(rrb1, rrb2, psi, eta)


def hom_kernel(f: RRBHom) -> RRBSubgroup:
    sub = RRBSubgroup(f.source, f.psi.kernel(), f.eta.kernel())
    check = is_ideal(f.source, sub)
    if not check:
        raise ConsistencyError(f"kernel is not an ideal ({check.condition})", check.witness)
    return sub


def hom_image(f: RRBHom) -> RRBSubgroup:
    try:
        return RRBSubgroup(f.target, f.psi.image_subgroup(), f.eta.image_subgroup())
    except NotSubgroup as e:
        raise ConsistencyError(f"image is not an RRB subgroup: {e.message}", e.witness)


def hom_rrb(X: RRBGroup, Y: RRBGroup, bound: Optional[int] = None) -> List[RRBHom]:
    """All RRB homomorphisms X -> Y; eta is pinned on R(H) by eta∘R = S∘psi"""
    results = []
    for psi in enumerate_homs(X.H, Y.H, bound=bound):
        fixed: Dict[int, int] = {}
        consistent = True
        for h in X.H.elements():
            key, value = X.R_list[h], Y.R_list[psi(h)]
            if fixed.setdefault(key, value) != value:
                consistent = False
                break
        if not consistent:
            continue
        for eta in enumerate_homs(X.G, Y.G, fixed=fixed, bound=bound):
            if compatibility_failure(X, Y, psi.image, eta.image) is None:
                results.append(RRBHom(X, Y, psi, eta))
    results.sort(key=lambda f: f.key)
    return results


# ===== QUOTIENTS AND TRUNCATION =====

def rrb_quotient(rrb: RRBGroup, ideal: RRBSubgroup) -> Tuple[RRBGroup, RRBHom]:
    """
    (H/K, G/L, phi-bar, R-bar) on minimal coset representatives.

    Raises:
        NotIdeal: with the failing condition and witness
    """
    check = is_ideal(rrb, ideal)
    if not check:
        raise NotIdeal(f"not an ideal: condition {check.condition} fails", {"condition": check.condition, **check.witness})
    Hq, pH = quotient_group(rrb.H, ideal.K)
    Gq, pG = quotient_group(rrb.G, ideal.L)
    reps_H = coset_representatives(pH)
    reps_G = coset_representatives(pG)
    phi_q = [[pH(rrb.phi_rows[g][h]) for h in reps_H] for g in reps_G]
    R_q = [pG(rrb.R_list[h]) for h in reps_H]

    for g in rrb.G.elements():
        for h in rrb.H.elements():
            if pH(rrb.phi_rows[g][h]) != phi_q[pG(g)][pH(h)]:
                raise ConsistencyError("induced action not well defined", {"g": g, "h": h})
    for h in rrb.H.elements():
        if pG(rrb.R_list[h]) != R_q[pH(h)]:
            raise ConsistencyError("induced operator not well defined", {"h": h})

    try:
        quotient = verify_rrb(Hq, Gq, phi_q, R_q, f"{rrb.name}/ideal")
        projection = verify_rrb_hom(rrb, quotient, pH, pG)
    except AlgebraError as e:
        raise ConsistencyError(f"quotient by an ideal failed validation: {e.message}", e.witness)
    return quotient, projection


def iota_subgroup(rrb: RRBGroup) -> RRBSubgroup:
    image = Subgroup.checked(rrb.G, set(rrb.R_list))
    return RRBSubgroup(rrb, Subgroup(rrb.H, rrb.H.elements()), image)


def iota(rrb: RRBGroup) -> RRBGroup:
    """I(H, G, phi, R) = (H, R(H), phi|, R|)"""
    truncated, _, _ = iota_subgroup(rrb).to_rrb()
    truncated.name = f"I{rrb.name}"
    return truncated


def enumerate_relative_rb_operators(H: FiniteGroup, G: FiniteGroup, phi, bound: Optional[int] = None) -> List[RRBGroup]:
    """
    Every R: H -> G with R(1) = 1 satisfying the defining identity.

    Each assignment forces R(h1 ∘ h2) = R(h1)R(h2) for assigned pairs, so the
    search branches only on elements no earlier choice determines.
    """
    bound = bound or get_config().operator_search_bound
    if max(H.order, G.order) > bound:
        raise SearchBoundExceeded(
            f"operator search needs |H|, |G| <= {bound}", {"H": H.order, "G": G.order, "bound": bound}
        )
    base = verify_rrb(H, G, phi, [0] * H.order)
    n = H.order
    Hrows, Grows, phi_rows = H.rows, G.rows, base.phi_rows

    def propagate(R: List[int], queue: List[int]) -> bool:
        while queue:
            x = queue.pop()
            for y in range(n):
                if R[y] < 0:
                    continue
                for a, b in ((x, y), (y, x)):
                    p = Hrows[a][phi_rows[R[a]][b]]
                    v = Grows[R[a]][R[b]]
                    if R[p] < 0:
                        R[p] = v
                        queue.append(p)
                    elif R[p] != v:
                        return False
        return True

    found: List[List[int]] = []

    def search(R: List[int]) -> None:
        if -1 not in R:
            found.append(R)
            return
        h = R.index(-1)
        for g in range(G.order):
            nxt = R[:]
            nxt[h] = g
            if propagate(nxt, [h]):
                search(nxt)

    start = [-1] * n
    start[0] = 0
    if propagate(start, [0]):
        search(start)
    found.sort()
    logger.debug(f"📊 Operatori su ({H.name}, {G.name}): {len(found)}")
    return [RRBGroup(H, G, base.phi, R, f"({H.name},{G.name},R={R})") for R in found]


# ===== BUILDERS =====

def trivial_action(H: FiniteGroup, G: FiniteGroup) -> np.ndarray:
    return np.tile(np.arange(H.order), (G.order, 1))


def conjugation_action(G: FiniteGroup) -> np.ndarray:
    """phi[g][h] = g h g^-1"""
    return G.table[G.table, G.inv_array[:, None]]


def trivial_rrb(H: FiniteGroup, G: Optional[FiniteGroup] = None, R: Optional[Sequence[int]] = None) -> RRBGroup:
    """phi trivial; R the identity when G is omitted, else constant 1 unless given"""
    if G is None:
        G = H
        R = list(range(H.order)) if R is None else R
    elif R is None:
        R = [0] * H.order
    return verify_rrb(H, G, trivial_action(H, G), R, f"triv({H.name},{G.name})")


def rota_baxter_group(G: FiniteGroup, R: Sequence[int]) -> RRBGroup:
    """Rota-Baxter operator on G: the conjugation action of G on itself"""
    return verify_rrb(G, G, conjugation_action(G), R, f"RB({G.name})")


def coefficient_rrb(Q: int) -> RRBGroup:
    """C_Q = (Z_Q, Z_Q, trivial, identity): the truncated C^x pair"""
    Z = cyclic(Q)
    return RRBGroup(Z, Z, trivial_action(Z, Z), list(range(Q)), f"C{Q}")


def rrb_direct_product(r1: RRBGroup, r2: RRBGroup) -> RRBGroup:
    n2, m2 = r2.H.order, r2.G.order
    H = direct_product(r1.H, r2.H)
    G = direct_product(r1.G, r2.G)
    phi = (r1.phi[:, None, :, None] * n2 + r2.phi[None, :, None, :]).reshape(G.order, H.order)
    R = (r1.R[:, None] * m2 + r2.R[None, :]).reshape(-1)
    return RRBGroup(H, G, phi, R, f"{r1.name}x{r2.name}")
