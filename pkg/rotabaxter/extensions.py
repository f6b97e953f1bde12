"""
extensions.py - Central extensions of RRB groups
================================================

Cocycle -> extension and back through a section, the elementwise centre
description, the generators of the commutator of a total group, and the
brute-force equivalence search used to count extension classes.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .cohomology import (
    Cocycle4,
    RRBCocycleTheory,
    TrivialRRBModule,
    decode,
    encode,
    twisted_rrb_tables,
)
from .config import get_config
from .errors import AlgebraError, ConsistencyError, NotInZ2, SearchBoundExceeded, SectionInvalid
from .groups import GroupHom, Subgroup, build_group, center_of
from .rrb import (
    RRBGroup,
    RRBHom,
    RRBSubgroup,
    compatibility_failure,
    hom_image,
    hom_kernel,
    rrb_center,
    verify_rrb,
    verify_rrb_hom,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Section:
    """Set maps A -> H and B -> G splitting the projections, identity to identity"""

    sH: Tuple[int, ...]
    sG: Tuple[int, ...]


@dataclass
class ExtensionData:
    total: RRBGroup
    module: TrivialRRBModule
    inj: RRBHom
    proj: RRBHom
    base: RRBGroup
    canonical_section: Section
    cocycle: Optional[Cocycle4] = field(default=None, compare=False)

    @property
    def K_image(self) -> Tuple[int, ...]:
        return self.inj.psi.image

    @property
    def L_image(self) -> Tuple[int, ...]:
        return self.inj.eta.image


def extension_from_cocycle(A: RRBGroup, module: TrivialRRBModule, c: Cocycle4) -> ExtensionData:
    """
    (A ×_τ1 K, B ×_τ2 L, φ, R) with (a, k) at index a·|K| + k.

    Raises:
        NotInZ2: c breaks a cocycle condition
        ConsistencyError: the construction fails although c is a cocycle
    """
    theory = RRBCocycleTheory(A, module)
    label = theory.failure(c)
    if label is not None:
        raise NotInZ2(f"not a cocycle: {label[0]} fails at {label[1:-1]}", {"condition": label[0], "at": list(label[1:])})
    qK, qL = module.order_K, module.order_L
    H_tab, G_tab, phi, R = twisted_rrb_tables(A, module, c)
    try:
        H = build_group(H_tab, f"{A.H.name}x~{module.K_group.name}")
        G = build_group(G_tab, f"{A.G.name}x~{module.L_group.name}")
        total = verify_rrb(H, G, phi, R, f"E{A.name}")
        K_rrb = module.as_rrb()
        inj = verify_rrb_hom(K_rrb, total, GroupHom(K_rrb.H, H, range(qK)), GroupHom(K_rrb.G, G, range(qL)))
        proj = verify_rrb_hom(
            total, A,
            GroupHom(H, A.H, (np.arange(H.order) // qK).tolist()),
            GroupHom(G, A.G, (np.arange(G.order) // qL).tolist()),
        )
    except AlgebraError as e:
        raise ConsistencyError(f"extension of a cocycle failed validation: {e.message}", e.witness)
    if hom_kernel(proj) != hom_image(inj):
        raise ConsistencyError("the module is not the kernel of the projection")

    centre = rrb_center(total)
    if not set(range(qK)) <= set(centre.K):
        raise ConsistencyError("K is not central in the extension")
    central_G = set(center_of(G).elements) & set(centre.L)
    if not set(range(qL)) <= central_G:
        raise ConsistencyError("L is not central in the extension")
    section = Section(tuple(a * qK for a in range(A.H.order)), tuple(b * qL for b in range(A.G.order)))
    return ExtensionData(total, module, inj, proj, A, section, c)


def _check_section(ext: ExtensionData, section: Section) -> None:
    pH, pG = ext.proj.psi, ext.proj.eta
    if len(section.sH) != ext.base.H.order or len(section.sG) != ext.base.G.order:
        raise SectionInvalid("section has the wrong length")
    if section.sH[0] != 0 or section.sG[0] != 0:
        raise SectionInvalid("section must send the identity to the identity")
    for a, x in enumerate(section.sH):
        if not 0 <= x < ext.total.H.order or pH(x) != a:
            raise SectionInvalid(f"sH({a}) does not lie over {a}", {"a": a})
    for b, y in enumerate(section.sG):
        if not 0 <= y < ext.total.G.order or pG(y) != b:
            raise SectionInvalid(f"sG({b}) does not lie over {b}", {"b": b})


def cocycle_from_extension(ext: ExtensionData, section: Optional[Section] = None) -> Cocycle4:
    """
    τ1(a1,a2) = s(a1a2)^-1 s(a1) s(a2), ρ(a,b) = sH(β_b a)^-1 φ_{sG(b)}(sH a),
    χ(a) = sG(Ta)^-1 R(sH a); values read back through the injections.

    Raises:
        SectionInvalid: section does not split the projections
    """
    section = section or ext.canonical_section
    _check_section(ext, section)
    A, module, total = ext.base, ext.module, ext.total
    H, G = total.H, total.G
    inv_K = {x: k for k, x in enumerate(ext.K_image)}
    inv_L = {y: l for l, y in enumerate(ext.L_image)}
    sH, sG = section.sH, section.sG
    m, n = A.H.order, A.G.order

    def k_coords(x: int) -> np.ndarray:
        if x not in inv_K:
            raise SectionInvalid(f"{x} is not in the image of K", {"element": x})
        return decode(inv_K[x], module.K)

    def l_coords(y: int) -> np.ndarray:
        if y not in inv_L:
            raise SectionInvalid(f"{y} is not in the image of L", {"element": y})
        return decode(inv_L[y], module.L)

    tau1 = np.zeros((m, m, module.dK), dtype=np.int64)
    tau2 = np.zeros((n, n, module.dL), dtype=np.int64)
    rho = np.zeros((m, n, module.dK), dtype=np.int64)
    chi = np.zeros((m, module.dL), dtype=np.int64)
    for a1, a2 in itertools.product(range(m), repeat=2):
        tau1[a1, a2] = k_coords(H.product(H.inverse(sH[A.H.rows[a1][a2]]), sH[a1], sH[a2]))
    for b1, b2 in itertools.product(range(n), repeat=2):
        tau2[b1, b2] = l_coords(G.product(G.inverse(sG[A.G.rows[b1][b2]]), sG[b1], sG[b2]))
    for a, b in itertools.product(range(m), range(n)):
        rho[a, b] = k_coords(H.mul(H.inverse(sH[A.act(b, a)]), total.act(sG[b], sH[a])))
    for a in range(m):
        chi[a] = l_coords(G.mul(G.inverse(sG[A.r(a)]), total.r(sH[a])))

    c = Cocycle4(tau1, tau2, rho, chi)
    label = RRBCocycleTheory(A, module).failure(c)
    if label is not None:
        raise ConsistencyError("cocycle read off an extension breaks a cocycle condition", {"condition": list(label)})
    return c


def random_section(ext: ExtensionData, seed: Optional[int] = None) -> Section:
    """Uniformly random section over each fibre, identities fixed"""
    rng = np.random.default_rng(get_config().seed if seed is None else seed)
    pH, pG = np.array(ext.proj.psi.image), np.array(ext.proj.eta.image)
    sH = [0] + [int(rng.choice(np.flatnonzero(pH == a))) for a in range(1, ext.base.H.order)]
    sG = [0] + [int(rng.choice(np.flatnonzero(pG == b))) for b in range(1, ext.base.G.order)]
    return Section(tuple(sH), tuple(sG))


# ===== CENTRE AND COMMUTATOR =====

def centre_formula(A: RRBGroup, module: TrivialRRBModule, c: Cocycle4) -> RRBSubgroup:
    """
    Centre of the extension read off the cocycle:
    (a, k) with a ∈ Z(A), τ1(a,x) = τ1(x,a), β_{T(a)} = id, ρ(x, T(a)) = 0,
    β_b(a) = a, ρ(a, b) = 0; (b, l) with β_b = id and ρ(·, b) = 0.
    """
    ext = extension_from_cocycle(A, module, c)
    qK, qL = module.order_K, module.order_L
    ident = np.arange(A.H.order)
    tau1, rho = np.asarray(c.tau1), np.asarray(c.rho)
    trivial_on = np.all(A.phi == ident[None, :], axis=1)
    rho_dead = ~np.any(rho, axis=(0, 2))
    K = []
    for a in center_of(A.H):
        t = A.r(a)
        if (np.array_equal(tau1[a], tau1[:, a]) and trivial_on[t] and rho_dead[t]
                and np.all(A.phi[:, a] == a) and not rho[a].any()):
            K.extend(a * qK + k for k in range(qK))
    L = [b * qL + l for b in range(A.G.order) if trivial_on[b] and rho_dead[b] for l in range(qL)]
    return RRBSubgroup(ext.total, Subgroup(ext.total.H, K), Subgroup(ext.total.G, L))


class CommutatorGenerators(NamedTuple):
    H_generators: Tuple[int, ...]
    G_generators: Tuple[int, ...]


def commutator_generators(A: RRBGroup, module: TrivialRRBModule, c: Cocycle4) -> CommutatorGenerators:
    """
    Generators of H^φ and G' of the extension, as explicit pairs:
      (a1a2a1^-1a2^-1, τ1(a1,a2) - τ1(a1,a1^-1) + τ1(a1a2,a1^-1) - τ1(a2,a2^-1) + τ1(a1a2a1^-1,a2^-1))
      (β_b(a)a^-1, ρ(a,b) - τ1(a,a^-1) + τ1(β_b(a),a^-1))
    and the first family for τ2 over B.
    """

    def family(group, tau, moduli, q):
        rows, inv = group.rows, group.inv
        out = set()
        for a1, a2 in itertools.product(range(group.order), repeat=2):
            p = rows[a1][a2]
            x = rows[p][inv[a1]]
            value = tau[a1, a2] - tau[a1, inv[a1]] + tau[p, inv[a1]] - tau[a2, inv[a2]] + tau[x, inv[a2]]
            out.add(int(rows[x][inv[a2]]) * q + int(encode(value, moduli)))
        return out

    qK, qL = module.order_K, module.order_L
    tau1, tau2, rho = np.asarray(c.tau1), np.asarray(c.tau2), np.asarray(c.rho)
    H_gens = family(A.H, tau1, module.K, qK)
    inv = A.H.inv
    for a in range(A.H.order):
        for b in range(A.G.order):
            moved = A.act(b, a)
            value = rho[a, b] - tau1[a, inv[a]] + tau1[moved, inv[a]]
            H_gens.add(A.H.rows[moved][inv[a]] * qK + int(encode(value, module.K)))
    G_gens = family(A.G, tau2, module.L, qL)
    return CommutatorGenerators(tuple(sorted(H_gens)), tuple(sorted(G_gens)))


# ===== EQUIVALENCE =====

def _shift(order: int, q: int, moduli: Sequence[int], theta: np.ndarray) -> List[int]:
    """(a, k) -> (a, k + θ(a)) on indices a·q + k"""
    kc = decode(np.arange(q), moduli)
    shifted = encode(kc[None, :, :] + theta[:, None, :], moduli)
    return (np.arange(order)[:, None] * q + shifted).reshape(-1).tolist()


def extensions_equivalent(e1: ExtensionData, e2: ExtensionData, bound: Optional[int] = None) -> Optional[RRBHom]:
    """
    An RRB isomorphism total1 -> total2 commuting with injections and
    projections, or None. Such maps are exactly the shifts (a,k) -> (a, k + θ1(a)),
    (b,l) -> (b, l + θ2(b)); all normalized θ are tried.
    """
    if e1.base != e2.base or e1.module != e2.module:
        return None
    bound = bound or get_config().oracle_candidate_bound
    A, module = e1.base, e1.module
    m, n = A.H.order, A.G.order
    qK, qL = module.order_K, module.order_L
    candidates = qK ** (m - 1) * qL ** (n - 1)
    if candidates > bound:
        raise SearchBoundExceeded("equivalence search beyond the oracle bound", {"candidates": candidates, "bound": bound})
    t1, t2 = e1.total, e2.total
    for th1 in itertools.product(range(qK), repeat=m - 1):
        theta1 = decode(np.array((0,) + th1), module.K)
        psi = _shift(m, qK, module.K, theta1)
        if not np.array_equal(np.array(psi)[t1.H.table], t2.H.table[np.ix_(psi, psi)]):
            continue
        for th2 in itertools.product(range(qL), repeat=n - 1):
            theta2 = decode(np.array((0,) + th2), module.L)
            eta = _shift(n, qL, module.L, theta2)
            if not np.array_equal(np.array(eta)[t1.G.table], t2.G.table[np.ix_(eta, eta)]):
                continue
            if compatibility_failure(t1, t2, psi, eta) is None:
                return RRBHom(t1, t2, GroupHom(t1.H, t2.H, psi), GroupHom(t1.G, t2.G, eta))
    return None


def count_extension_classes(A: RRBGroup, module: TrivialRRBModule, bound: Optional[int] = None) -> int:
    """Equivalence classes among the extensions of every cocycle table"""
    bound = bound or get_config().oracle_candidate_bound
    theory = RRBCocycleTheory(A, module)
    total = int(np.prod(theory.layout.moduli, dtype=object)) if theory.layout.moduli else 1
    if total > bound:
        raise SearchBoundExceeded("extension census beyond the oracle bound", {"candidates": total, "bound": bound})
    representatives: List[ExtensionData] = []
    for vector in itertools.product(*(range(q) for q in theory.layout.moduli)):
        tables = theory.layout.unflatten(list(vector))
        if not theory.oracle(tables):
            continue
        ext = extension_from_cocycle(A, module, Cocycle4.from_tables(tables))
        if not any(extensions_equivalent(rep, ext, bound) for rep in representatives):
            representatives.append(ext)
    logger.info(f"📊 Classi di estensioni centrali di {A.name}: {len(representatives)}")
    return len(representatives)
