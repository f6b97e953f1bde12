"""
isoclinism.py - Isoclinism of relative Rota-Baxter groups
=========================================================

Two RRB groups are isoclinic when their quotients by the centre and their
commutators (H^phi, G) are isomorphic through maps that carry the two
commutator tables

    omega(h1, h2)     = h1 h2 h1^-1 h2^-1
    omega_phi(h1, h2) = phi_{R(h1)}(h2) h2^-1

onto each other. In the weak variant the second pair only has to be an RRB
homomorphism of the truncations I(H^phi, G) whose H-part is bijective.

The search runs psi1 over isomorphisms of the central quotients; psi2 is
then pinned on every omega value and extended by backtracking.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Optional, Tuple

import numpy as np

from .braces import BraceIsoclinism, induced_brace, verify_brace_isoclinism
from .config import get_config
from .errors import CompatibilityFails, ConsistencyError, TheoremViolation
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    coset_representatives,
    enumerate_homs,
    is_isomorphic,
    quotient_group,
    subgroup_generated,
)
from .rrb import (
    RRBGroup,
    RRBHom,
    RRBSubgroup,
    compatibility_failure,
    displacements,
    iota,
    iota_subgroup,
    rrb_center,
    rrb_commutator,
    rrb_quotient,
)

logger = logging.getLogger(__name__)

ISOCLINIC = "isoclinic"
NOT_ISOCLINIC = "not_isoclinic"
UNKNOWN = "unknown"


# ===== OMEGA TABLES =====

@dataclass
class OmegaTables:
    """omega and omega_phi over central-quotient representatives, values in H"""

    quotient: RRBGroup
    projection: RRBHom
    reps: Tuple[int, ...]
    omega: np.ndarray
    omega_phi: np.ndarray


def omega_tables(rrb: RRBGroup) -> OmegaTables:
    """
    Raises:
        ConsistencyError: a table depends on the choice of representatives
    """
    quotient, projection = rrb_quotient(rrb, rrb_center(rrb))
    reps = coset_representatives(projection.psi)
    D, inv = rrb.H.table, rrb.H.inv_array
    n = rrb.H.order
    h1, h2 = np.arange(n)[:, None], np.arange(n)[None, :]
    full = D[D[D[h1, h2], inv[h1]], inv[h2]]
    full_phi = D[rrb.phi[rrb.R][:, :], inv[None, :]]

    p = np.array(projection.psi.image, dtype=np.int64)
    r = np.array(reps, dtype=np.int64)
    tables = []
    for name, values in (("omega", full), ("omega_phi", full_phi)):
        table = values[np.ix_(r, r)]
        bad = np.argwhere(values != table[p[:, None], p[None, :]])
        if len(bad):
            x, y = (int(v) for v in bad[0])
            raise ConsistencyError(f"{name} is not defined on the central quotient", {"pair": [x, y]})
        tables.append(table)
    return OmegaTables(quotient, projection, tuple(reps), tables[0], tables[1])


@dataclass
class _Profile:
    rrb: RRBGroup
    tables: OmegaTables
    comm: RRBSubgroup
    comm_rrb: RRBGroup
    icomm: RRBGroup
    icomm_L: GroupHom
    W: np.ndarray
    V: np.ndarray

    @property
    def quotient(self) -> RRBGroup:
        return self.tables.quotient

    def comm_element(self, i: int) -> int:
        return self.comm.K.elements[i]

    def icomm_element(self, j: int) -> int:
        """G element behind an index of the truncated commutator"""
        return self.comm.L.elements[self.icomm_L(j)]

    def icomm_index(self, g: int) -> int:
        return self.icomm_L.image.index(self.comm.L.index_of(g))


@lru_cache(maxsize=64)
def _profile(rrb: RRBGroup) -> _Profile:
    tables = omega_tables(rrb)
    comm = rrb_commutator(rrb)
    comm_rrb, _, _ = comm.to_rrb()
    icomm, _, icomm_L = iota_subgroup(comm_rrb).to_rrb()
    index = np.vectorize(comm.K.index_of, otypes=[np.int64])
    return _Profile(rrb, tables, comm, comm_rrb, icomm, icomm_L, index(tables.omega), index(tables.omega_phi))


# ===== WITNESSES =====

@dataclass
class IsoclinismWitness:
    """
    psi1/eta1 on central-quotient indices; psi2 on commutator indices
    (positions in H^phi). eta2 on G (strict) or on R(H^phi) positions (weak).
    """

    psi1: Tuple[int, ...]
    eta1: Tuple[int, ...]
    psi2: Tuple[int, ...]
    eta2: Tuple[int, ...]
    weak: bool = False

    def as_dict(self) -> dict:
        return {
            "psi1": list(self.psi1),
            "eta1": list(self.eta1),
            "psi2": list(self.psi2),
            "eta2": list(self.eta2),
            "weak": self.weak,
        }


@dataclass
class IsoclinismResult:
    status: str
    witness: Optional[IsoclinismWitness] = None
    reason: str = ""
    checked: Dict[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == ISOCLINIC

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "reason": self.reason,
            "witness": self.witness.as_dict() if self.witness else None,
            "checked": dict(self.checked),
        }


def _second_pair(p: _Profile, weak: bool) -> RRBGroup:
    return p.icomm if weak else p.comm_rrb


def verify_isoclinism_witness(r1: RRBGroup, r2: RRBGroup, witness: IsoclinismWitness) -> None:
    """
    Raises:
        CompatibilityFails: a map is not an RRB hom, not bijective, or a
            square does not commute (witness pair on quotient indices)
    """
    p1, p2 = _profile(r1), _profile(r2)
    Q1, Q2 = p1.quotient, p2.quotient
    if len(witness.psi1) != Q1.H.order or len(witness.eta1) != Q1.G.order:
        raise CompatibilityFails("psi1/eta1 do not cover the central quotient")
    psi1 = GroupHom(Q1.H, Q2.H, witness.psi1).verify()
    eta1 = GroupHom(Q1.G, Q2.G, witness.eta1).verify()
    if not (psi1.is_bijective and eta1.is_bijective):
        raise CompatibilityFails("central quotients are not matched bijectively")
    failure = compatibility_failure(Q1, Q2, psi1.image, eta1.image)
    if failure is not None:
        raise CompatibilityFails(f"central quotient map: {failure[0]} fails", failure[1])

    X1, X2 = _second_pair(p1, witness.weak), _second_pair(p2, witness.weak)
    if len(witness.psi2) != X1.H.order or len(witness.eta2) != X1.G.order:
        raise CompatibilityFails("psi2/eta2 do not cover the commutator")
    psi2 = GroupHom(X1.H, X2.H, witness.psi2).verify()
    eta2 = GroupHom(X1.G, X2.G, witness.eta2).verify()
    if not psi2.is_bijective or (not witness.weak and not eta2.is_bijective):
        raise CompatibilityFails("commutators are not matched bijectively")
    failure = compatibility_failure(X1, X2, psi2.image, eta2.image)
    if failure is not None:
        raise CompatibilityFails(f"commutator map: {failure[0]} fails", failure[1])

    f = np.array(witness.psi1, dtype=np.int64)
    g = np.array(witness.psi2, dtype=np.int64)
    for name, m1, m2 in (("omega", p1.W, p2.W), ("omega_phi", p1.V, p2.V)):
        bad = np.argwhere(g[m1] != m2[f[:, None], f[None, :]])
        if len(bad):
            i, j = (int(v) for v in bad[0])
            raise CompatibilityFails(f"{name} square does not commute", {"pair": [i, j]})


# ===== SEARCH =====

def _forced_eta(X: RRBGroup, Y: RRBGroup, psi: GroupHom, bijective: bool,
                bound: Optional[int]) -> Optional[GroupHom]:
    """First eta with (psi, eta) an RRB hom X -> Y, eta pinned by eta∘R = S∘psi"""
    fixed: Dict[int, int] = {}
    for h in X.H.elements():
        key, value = X.R_list[h], Y.R_list[psi(h)]
        if fixed.setdefault(key, value) != value:
            return None
    for eta in enumerate_homs(X.G, Y.G, fixed=fixed, bijective=bijective, bound=bound):
        if compatibility_failure(X, Y, psi.image, eta.image) is None:
            return eta
    return None


def _forced_psi2(p1: _Profile, p2: _Profile, f: np.ndarray) -> Optional[Dict[int, int]]:
    fixed: Dict[int, int] = {}
    for m1, m2 in ((p1.W, p2.W), (p1.V, p2.V)):
        target = m2[f[:, None], f[None, :]]
        for x, y in zip(m1.ravel().tolist(), target.ravel().tolist()):
            if fixed.setdefault(x, y) != y:
                return None
    return fixed


def _obstruction(p1: _Profile, p2: _Profile, weak: bool) -> Optional[str]:
    Q1, Q2 = p1.quotient, p2.quotient
    if (Q1.H.order, Q1.G.order) != (Q2.H.order, Q2.G.order):
        return f"central quotients of orders {(Q1.H.order, Q1.G.order)} and {(Q2.H.order, Q2.G.order)}"
    if sorted(Q1.H.element_orders) != sorted(Q2.H.element_orders):
        return "central quotients have different element orders"
    if p1.comm.K.order != p2.comm.K.order:
        return f"commutators of orders {p1.comm.K.order} and {p2.comm.K.order}"
    if sorted(p1.comm_rrb.H.element_orders) != sorted(p2.comm_rrb.H.element_orders):
        return "commutators have different element orders"
    if not weak and p1.rrb.G.order != p2.rrb.G.order:
        return f"acting groups of orders {p1.rrb.G.order} and {p2.rrb.G.order}"
    return None


def _search(r1: RRBGroup, r2: RRBGroup, weak: bool, bound: Optional[int]) -> IsoclinismResult:
    bound = bound or get_config().isoclinism_search_bound
    p1, p2 = _profile(r1), _profile(r2)
    sizes = {
        "quotient_H": p1.quotient.H.order,
        "quotient_G": p1.quotient.G.order,
        "commutator": p1.comm.K.order,
    }
    reason = _obstruction(p1, p2, weak)
    if reason is not None:
        logger.debug(f"📊 Ostruzione: {reason}")
        return IsoclinismResult(NOT_ISOCLINIC, reason=reason, checked=sizes)
    largest = max(max(sizes.values()), p1.comm_rrb.G.order if not weak else p1.icomm.G.order)
    if largest > bound:
        logger.warning(f"⚠️ Ricerca di isoclinismo oltre il limite {bound} (ordine {largest})")
        return IsoclinismResult(UNKNOWN, reason=f"order {largest} exceeds the isoclinism bound {bound}", checked=sizes)

    Q1, Q2 = p1.quotient, p2.quotient
    X1, X2 = _second_pair(p1, weak), _second_pair(p2, weak)
    tried = 0
    for psi1 in enumerate_homs(Q1.H, Q2.H, bijective=True, bound=bound):
        tried += 1
        f = np.array(psi1.image, dtype=np.int64)
        fixed = _forced_psi2(p1, p2, f)
        if fixed is None:
            continue
        eta1 = _forced_eta(Q1, Q2, psi1, True, bound)
        if eta1 is None:
            continue
        for psi2 in enumerate_homs(X1.H, X2.H, fixed=fixed, bijective=True, bound=bound):
            eta2 = _forced_eta(X1, X2, psi2, not weak, bound)
            if eta2 is not None:
                witness = IsoclinismWitness(psi1.image, eta1.image, psi2.image, eta2.image, weak)
                logger.info(f"✅ {r1.name} e {r2.name} {'debolmente ' if weak else ''}isoclini")
                return IsoclinismResult(ISOCLINIC, witness, checked={**sizes, "psi1_tried": tried})
    return IsoclinismResult(
        NOT_ISOCLINIC,
        reason="no quotient isomorphism extends to the commutators",
        checked={**sizes, "psi1_tried": tried},
    )


def are_isoclinic(r1: RRBGroup, r2: RRBGroup, bound: Optional[int] = None) -> IsoclinismResult:
    """
    Returns:
        IsoclinismResult with status isoclinic (and a verified witness),
        not_isoclinic (with the obstruction) or unknown (beyond the bound)
    """
    result = _search(r1, r2, False, bound)
    if result.witness is not None:
        verify_isoclinism_witness(r1, r2, result.witness)
    return result


def are_weakly_isoclinic(r1: RRBGroup, r2: RRBGroup, bound: Optional[int] = None) -> IsoclinismResult:
    result = _search(r1, r2, True, bound)
    if result.witness is not None:
        verify_isoclinism_witness(r1, r2, result.witness)
    return result


# ===== TRANSPORT =====

def _as_weak(p1: _Profile, p2: _Profile, w: IsoclinismWitness) -> Tuple[int, ...]:
    """eta2 restricted to R(H^phi) positions"""
    if w.weak:
        return w.eta2
    values = []
    for j in range(p1.icomm.G.order):
        g = p1.icomm_element(j)
        values.append(p2.icomm_index(p2.comm.L.elements[w.eta2[p1.comm.L.index_of(g)]]))
    return tuple(values)


def _induced_classes(source: Dict[int, int], key_proj, value_proj, what: str) -> Tuple[int, ...]:
    """Collect a class map key_proj(x) -> value_proj(source[x]); checks well-definedness"""
    table: Dict[int, int] = {}
    for x, y in source.items():
        k, v = key_proj(x), value_proj(y)
        if table.setdefault(k, v) != v:
            raise TheoremViolation(f"{what} is not well defined", {"element": x})
    return tuple(table[k] for k in sorted(table))


def _h_lift(p1: _Profile, p2: _Profile, w: IsoclinismWitness) -> Dict[int, int]:
    """h -> a representative of psi1(class of h)"""
    proj = p1.tables.projection.psi
    return {h: p2.tables.reps[w.psi1[proj(h)]] for h in p1.rrb.H.elements()}


def transport_to_iota(r1: RRBGroup, r2: RRBGroup, witness: IsoclinismWitness) -> IsoclinismWitness:
    """
    Weak isoclinism of (r1, r2) induces one of (I r1, I r2): psi1 descends
    to the larger centre of the truncation, psi2 restricts to its commutator.

    Raises:
        TheoremViolation: an induced map is ill defined or fails verification
    """
    verify_isoclinism_witness(r1, r2, witness)
    p1, p2 = _profile(r1), _profile(r2)
    i1, i2 = iota(r1), iota(r2)
    q1, q2 = _profile(i1), _profile(i2)
    lift = _h_lift(p1, p2, witness)

    psi1 = _induced_classes(lift, q1.tables.projection.psi, q2.tables.projection.psi, "induced psi1")
    eta1 = _induced_classes(
        {i1.R_list[h]: i2.R_list[lift[h]] for h in i1.H.elements()},
        q1.tables.projection.eta,
        q2.tables.projection.eta,
        "induced eta1",
    )

    psi2 = []
    for x in q1.comm.K.elements:
        y = p2.comm_element(witness.psi2[p1.comm.K.index_of(x)])
        if y not in q2.comm.K:
            raise TheoremViolation("psi2 does not carry truncated commutators onto each other", {"element": x})
        psi2.append(q2.comm.K.index_of(y))

    # truncated G carriers are positions in R(H); map through the originals
    R1H = iota_subgroup(r1).L
    R2H = iota_subgroup(r2).L
    weak_eta2 = _as_weak(p1, p2, witness)
    eta2 = []
    for j in range(q1.icomm.G.order):
        g = R1H.elements[q1.icomm_element(j)]
        image = p2.icomm_element(weak_eta2[p1.icomm_index(g)])
        eta2.append(q2.icomm_index(R2H.index_of(image)))

    transported = IsoclinismWitness(psi1, eta1, tuple(psi2), tuple(eta2), weak=True)
    try:
        verify_isoclinism_witness(i1, i2, transported)
    except CompatibilityFails as e:
        raise TheoremViolation(f"transported witness fails: {e.message}", e.witness)
    logger.debug(f"✅ Isoclinismo trasportato a {i1.name}, {i2.name}")
    return transported


def transport_to_braces(r1: RRBGroup, r2: RRBGroup, witness: IsoclinismWitness) -> BraceIsoclinism:
    """
    xi1 is psi1 read on annihilator classes, xi2 is psi2 on the brace
    commutator; the result is checked with verify_brace_isoclinism.

    Raises:
        TheoremViolation: the induced maps are ill defined or not an isoclinism
    """
    verify_isoclinism_witness(r1, r2, witness)
    p1, p2 = _profile(r1), _profile(r2)
    b1, b2 = induced_brace(r1), induced_brace(r2)
    _, bproj1 = b1.central_quotient
    _, bproj2 = b2.central_quotient
    xi1 = _induced_classes(_h_lift(p1, p2, witness), bproj1, bproj2, "xi1")

    xi2: Dict[int, int] = {}
    for x in b1.commutator:
        if x not in p1.comm.K:
            raise TheoremViolation("brace commutator escapes H^phi", {"element": x})
        xi2[x] = p2.comm_element(witness.psi2[p1.comm.K.index_of(x)])
    try:
        verify_brace_isoclinism(b1, b2, xi1, xi2)
    except CompatibilityFails as e:
        raise TheoremViolation(f"induced braces are not isoclinic: {e.message}", e.witness)
    return BraceIsoclinism(ISOCLINIC, xi1, xi2)


# ===== INVARIANTS =====

def _image_mod_kernel(rrb: RRBGroup) -> FiniteGroup:
    """im(R) / (im(R) ∩ ker phi)"""
    image = iota_subgroup(rrb).L
    trivial = [g for g in image if list(rrb.phi_rows[g]) == list(range(rrb.H.order))]
    carrier, _ = image.to_group()
    Q, _ = quotient_group(carrier, Subgroup(carrier, [image.index_of(g) for g in trivial]))
    return Q


def _displacement_group(rrb: RRBGroup) -> FiniteGroup:
    """⟨phi_{R(h1)}(h2) h2^-1⟩"""
    sub = subgroup_generated(rrb.H, displacements(rrb, sorted(set(rrb.R_list))))
    carrier, _ = sub.to_group()
    return carrier


def _truncated_central_quotient(rrb: RRBGroup) -> FiniteGroup:
    truncated = iota(rrb)
    Q, _ = quotient_group(truncated.H, rrb_center(truncated).K)
    return Q


@dataclass
class InvariantReport:
    image_mod_kernel: bool
    displacements: bool
    truncated_quotient: bool
    truncations: IsoclinismResult

    @property
    def ok(self) -> bool:
        return self.image_mod_kernel and self.displacements and self.truncated_quotient and bool(self.truncations)

    def as_dict(self) -> dict:
        return {
            "image_mod_kernel": self.image_mod_kernel,
            "displacements": self.displacements,
            "truncated_quotient": self.truncated_quotient,
            "truncations": self.truncations.as_dict(),
        }


def indiso_report(r1: RRBGroup, r2: RRBGroup, bound: Optional[int] = None, strict: bool = True) -> InvariantReport:
    """
    Invariants shared by weakly isoclinic RRB groups: im R / (im R ∩ ker phi),
    the displacement subgroup, H over the centre of I(.), and weak isoclinism
    of the truncations.

    Raises:
        TheoremViolation: the pair is weakly isoclinic but an invariant differs (strict)
    """
    report = InvariantReport(
        is_isomorphic(_image_mod_kernel(r1), _image_mod_kernel(r2)),
        is_isomorphic(_displacement_group(r1), _displacement_group(r2)),
        is_isomorphic(_truncated_central_quotient(r1), _truncated_central_quotient(r2)),
        are_weakly_isoclinic(iota(r1), iota(r2), bound),
    )
    if strict and not report.ok and report.truncations.status != UNKNOWN:
        if are_weakly_isoclinic(r1, r2, bound):
            raise TheoremViolation("weakly isoclinic pair with different invariants", report.as_dict())
    return report
