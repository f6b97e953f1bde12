"""
cohomology.py - Second cohomology
=================================

Trivial coefficient modules, normalized 2-cochains and the three theories
built on them: groups, skew left braces and relative Rota-Baxter groups.
Each theory flattens its cochains into one vector over cyclic moduli, so
Z² is the kernel of a congruence system and B² the span of coboundaries of
unit maps; H² = Z²/B² comes out of the Smith normal form pipeline.

Every linear cocycle check has an oracle: the twisted tables the cochain
defines are rebuilt and validated as groups, braces or RRB groups.
"""
import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .braces import SkewBrace, build_brace
from .config import get_config
from .errors import (
    AlgebraError,
    ConsistencyError,
    ModuleMismatch,
    NotInZ2,
    NotNormalized,
    SearchBoundExceeded,
    ShapeMismatch,
)
from .groups import FiniteGroup, GroupHom, build_group, cyclic, direct_product, frozen, trivial_group
from .linalg import AbElement, kernel_mod, subquotient_structure
from .rrb import RRBGroup, verify_rrb

logger = logging.getLogger(__name__)

Tables = Dict[str, np.ndarray]


# ===== COEFFICIENT MODULES =====

def encode(coords, moduli: Sequence[int]) -> np.ndarray:
    """Mixed-radix index of coordinate vectors (last axis), C order"""
    coords = np.asarray(coords, dtype=np.int64)
    if not len(moduli):
        return np.zeros(coords.shape[:-1], dtype=np.int64)
    reduced = coords % np.array(moduli, dtype=np.int64)
    return np.ravel_multi_index(tuple(np.moveaxis(reduced, -1, 0)), tuple(moduli)).astype(np.int64)


def decode(index, moduli: Sequence[int]) -> np.ndarray:
    index = np.asarray(index, dtype=np.int64)
    if not len(moduli):
        return np.zeros(index.shape + (0,), dtype=np.int64)
    return np.stack(np.unravel_index(index, tuple(moduli)), axis=-1).astype(np.int64)


def cyclic_product(moduli: Sequence[int], name: str = "") -> FiniteGroup:
    if not moduli:
        return trivial_group()
    group = reduce(direct_product, [cyclic(q) for q in moduli])
    group.name = name or "x".join(f"Z{q}" for q in moduli)
    return group


class TrivialRRBModule:
    """
    (K, L, trivial action, S) with K = ⊕ Z/K_i and L = ⊕ Z/L_j.

    S is a dL x dK integer matrix acting on coordinates; elements of K are
    indexed by the mixed radix of their coordinates, matching direct_product.
    """

    def __init__(self, K: Sequence[int], L: Sequence[int], S, name: str = ""):
        self.K = tuple(int(q) for q in K)
        self.L = tuple(int(q) for q in L)
        if any(q < 1 for q in self.K + self.L):
            raise ModuleMismatch("cyclic factors must be positive", {"K": list(self.K), "L": list(self.L)})
        S = np.array(S, dtype=np.int64).reshape(len(self.L), len(self.K))
        for j, lj in enumerate(self.L):
            for i, ki in enumerate(self.K):
                if (S[j, i] * ki) % lj:
                    raise ModuleMismatch(f"S[{j}][{i}] is not defined on Z{ki} -> Z{lj}", {"row": j, "col": i})
        self.S = frozen(S % np.array(self.L, dtype=np.int64)[:, None]) if self.L else frozen(S)
        self.name = name or f"({'x'.join(map(str, self.K)) or '1'},{'x'.join(map(str, self.L)) or '1'})"

    def __repr__(self) -> str:
        return f"TrivialRRBModule(K={self.K}, L={self.L}, S={self.S.tolist()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, TrivialRRBModule) and self.K == other.K and self.L == other.L and \
            np.array_equal(self.S, other.S)

    def __hash__(self) -> int:
        return hash((self.K, self.L, self.S.tobytes()))

    @property
    def dK(self) -> int:
        return len(self.K)

    @property
    def dL(self) -> int:
        return len(self.L)

    @property
    def order_K(self) -> int:
        return int(np.prod(self.K, dtype=np.int64))

    @property
    def order_L(self) -> int:
        return int(np.prod(self.L, dtype=np.int64))

    @cached_property
    def K_group(self) -> FiniteGroup:
        return cyclic_product(self.K)

    @cached_property
    def L_group(self) -> FiniteGroup:
        return cyclic_product(self.L)

    def apply_S(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64)
        if not self.dL:
            return np.zeros(coords.shape[:-1] + (0,), dtype=np.int64)
        return (coords @ self.S.T) % np.array(self.L, dtype=np.int64)

    @cached_property
    def S_hom(self) -> GroupHom:
        images = encode(self.apply_S(decode(np.arange(self.order_K), self.K)), self.L)
        return GroupHom(self.K_group, self.L_group, images.tolist())

    def as_rrb(self) -> RRBGroup:
        """The module itself as an RRB group with trivial action"""
        phi = np.tile(np.arange(self.order_K), (self.order_L, 1))
        return RRBGroup(self.K_group, self.L_group, phi, self.S_hom.image, f"mod{self.name}")


def coefficient_module(n: int) -> TrivialRRBModule:
    """(Z_n, Z_n, trivial, identity)"""
    return TrivialRRBModule((n,), (n,), [[1]], f"C{n}")


def trivial_module() -> TrivialRRBModule:
    return TrivialRRBModule((), (), np.zeros((0, 0), dtype=np.int64), "0")


def product_module(modules: Sequence[TrivialRRBModule]) -> TrivialRRBModule:
    """Coordinates concatenated, S block diagonal"""
    K = sum((m.K for m in modules), ())
    L = sum((m.L for m in modules), ())
    S = np.zeros((len(L), len(K)), dtype=np.int64)
    i = j = 0
    for m in modules:
        S[j:j + m.dL, i:i + m.dK] = m.S
        i += m.dK
        j += m.dL
    return TrivialRRBModule(K, L, S, "x".join(m.name for m in modules) or "0")


# ===== COCHAINS =====

class _Cochain:
    FIELDS: Tuple[str, ...] = ()

    def tables(self) -> Tables:
        return {name: getattr(self, name) for name in self.FIELDS}

    @classmethod
    def from_tables(cls, tables: Tables):
        return cls(**{name: np.asarray(tables[name], dtype=np.int64) for name in cls.FIELDS})

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and all(
            np.array_equal(getattr(self, f), getattr(other, f)) for f in self.FIELDS
        )


@dataclass(eq=False)
class GroupCocycle(_Cochain):
    tau: np.ndarray
    FIELDS = ("tau",)


@dataclass(eq=False)
class SLBCocycle(_Cochain):
    tau: np.ndarray
    tau_tilde: np.ndarray
    FIELDS = ("tau", "tau_tilde")


@dataclass(eq=False)
class Cocycle4(_Cochain):
    """
    (tau1, tau2, rho, chi) as full coordinate arrays:
    tau1 (m, m, dK), tau2 (n, n, dL), rho (m, n, dK), chi (m, dL).
    Entries at an identity index are zero.
    """

    tau1: np.ndarray
    tau2: np.ndarray
    rho: np.ndarray
    chi: np.ndarray
    FIELDS = ("tau1", "tau2", "rho", "chi")


@dataclass
class Block:
    name: str
    shape: Tuple[int, ...]
    moduli: Tuple[int, ...]
    offset: int

    @property
    def width(self) -> int:
        return len(self.moduli)

    @property
    def inner_shape(self) -> Tuple[int, ...]:
        return tuple(max(s - 1, 0) for s in self.shape)

    @property
    def size(self) -> int:
        return int(np.prod(self.inner_shape, dtype=np.int64)) * self.width


class CochainLayout:
    """One coordinate per (non-identity index tuple, cyclic factor) of each block"""

    def __init__(self, specs: Sequence[Tuple[str, Tuple[int, ...], Tuple[int, ...]]]):
        self.blocks: Dict[str, Block] = {}
        offset = 0
        self.moduli: List[int] = []
        for name, shape, moduli in specs:
            block = Block(name, tuple(shape), tuple(moduli), offset)
            self.blocks[name] = block
            offset += block.size
            self.moduli.extend(list(moduli) * (block.size // max(block.width, 1)))
        self.size = offset

    def var(self, name: str, idx: Tuple[int, ...]) -> Optional[int]:
        """Variable of coordinate 0 at idx, None on degenerate tuples"""
        if any(i == 0 for i in idx):
            return None
        block = self.blocks[name]
        if not block.width:
            return None
        pos = int(np.ravel_multi_index(tuple(i - 1 for i in idx), block.inner_shape))
        return block.offset + pos * block.width

    def flatten(self, tables: Tables) -> List[int]:
        """
        Raises:
            ShapeMismatch: wrong table shape
            NotNormalized: nonzero entry at an identity index
        """
        vector: List[int] = []
        for block in self.blocks.values():
            if block.name not in tables:
                raise ShapeMismatch(f"missing table {block.name}")
            arr = np.asarray(tables[block.name], dtype=np.int64)
            expected = block.shape + (block.width,)
            if arr.shape != expected:
                raise ShapeMismatch(
                    f"{block.name} must have shape {expected}", {"table": block.name, "shape": list(arr.shape)}
                )
            arr = arr % np.array(block.moduli, dtype=np.int64)
            inner = tuple(slice(1, None) for _ in block.shape)
            rest = arr.copy()
            rest[inner] = 0
            if rest.any():
                where = [int(v) for v in np.argwhere(rest)[0]]
                raise NotNormalized(f"{block.name} is nonzero at an identity index", {"table": block.name, "index": where})
            vector.extend(arr[inner].reshape(-1).tolist())
        return vector

    def unflatten(self, vector: Sequence[int]) -> Tables:
        if len(vector) != self.size:
            raise ShapeMismatch(f"expected {self.size} coordinates", {"length": len(vector)})
        tables: Tables = {}
        for block in self.blocks.values():
            arr = np.zeros(block.shape + (block.width,), dtype=np.int64)
            chunk = np.array(vector[block.offset:block.offset + block.size], dtype=np.int64)
            arr[tuple(slice(1, None) for _ in block.shape)] = chunk.reshape(block.inner_shape + (block.width,))
            tables[block.name] = arr % np.array(block.moduli, dtype=np.int64)
        return tables

    def zero(self) -> Tables:
        return self.unflatten([0] * self.size)

    def units(self) -> Iterator[Tables]:
        for v in range(self.size):
            vector = [0] * self.size
            vector[v] = 1
            yield self.unflatten(vector)


class Equation:
    """One vector-valued linear condition; each target coordinate becomes a row"""

    def __init__(self, layout: CochainLayout, moduli: Sequence[int], label: Tuple[Any, ...]):
        self.layout = layout
        self.moduli = list(moduli)
        self.label = label
        self.terms = [defaultdict(int) for _ in self.moduli]

    def add(self, name: str, idx: Tuple[int, ...], coeff: int = 1, through=None) -> "Equation":
        base = self.layout.var(name, idx)
        if base is None:
            return self
        width = self.layout.blocks[name].width
        for j in range(len(self.moduli)):
            for i in range(width):
                c = coeff * (int(through[j][i]) if through is not None else int(i == j))
                if c:
                    self.terms[j][base + i] += c
        return self


class ConstraintSystem:
    def __init__(self):
        self.rows: List[Dict[int, int]] = []
        self.moduli: List[int] = []
        self.labels: List[Tuple[Any, ...]] = []
        self._seen = set()

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, equation: Equation) -> None:
        for j, (terms, m) in enumerate(zip(equation.terms, equation.moduli)):
            row = {v: c % m for v, c in terms.items() if c % m}
            if not row:
                continue
            key = (m, frozenset(row.items()))
            if key in self._seen:
                continue
            self._seen.add(key)
            self.rows.append(row)
            self.moduli.append(m)
            self.labels.append(equation.label + (j,))

    def first_failure(self, vector: Sequence[int]) -> Optional[Tuple[Any, ...]]:
        for row, m, label in zip(self.rows, self.moduli, self.labels):
            if sum(c * vector[v] for v, c in row.items()) % m:
                return label
        return None


# ===== TWISTED TABLES =====

def twisted_table(group: FiniteGroup, moduli: Sequence[int], tau) -> np.ndarray:
    """(a1,k1)(a2,k2) = (a1 a2, k1 + k2 + tau(a1,a2)) at index a*|K| + k"""
    q = int(np.prod(moduli, dtype=np.int64))
    kc = decode(np.arange(q), moduli)
    tau = np.asarray(tau, dtype=np.int64)
    coords = tau[:, None, :, None, :] + kc[None, :, None, None, :] + kc[None, None, None, :, :]
    k = encode(coords, moduli)
    a = group.table[:, None, :, None]
    n = group.order
    return (a * q + k).reshape(n * q, n * q)


def twisted_rrb_tables(A: RRBGroup, module: TrivialRRBModule, c: Cocycle4) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Tables of the extension of A by module along c:
    phi_(b,l)(a,k) = (beta_b(a), rho(a,b) + k), R(a,k) = (T(a), chi(a) + S(k)).
    """
    m, n = A.H.order, A.G.order
    qK, qL = module.order_K, module.order_L
    H = twisted_table(A.H, module.K, c.tau1)
    G = twisted_table(A.G, module.L, c.tau2)
    kc = decode(np.arange(qK), module.K)
    rho_t = np.asarray(c.rho, dtype=np.int64).transpose(1, 0, 2)
    k_part = encode(rho_t[:, :, None, :] + kc[None, None, :, :], module.K)
    phi = A.phi[:, :, None] * qK + k_part
    phi = np.broadcast_to(phi[:, None, :, :], (n, qL, m, qK)).reshape(n * qL, m * qK)
    l_part = encode(np.asarray(c.chi, dtype=np.int64)[:, None, :] + module.apply_S(kc)[None, :, :], module.L)
    R = (A.R[:, None] * qL + l_part).reshape(-1)
    return H, G, np.ascontiguousarray(phi), R


# ===== THEORIES =====

class CochainTheory:
    """Normalized 2-cochains of one kind, their cocycle conditions and coboundaries"""

    kind = "abstract"
    cochain_type = _Cochain

    def __init__(self):
        self.layout = CochainLayout(self.cochain_blocks())
        self.theta_layout = CochainLayout(self.theta_blocks())

    def cochain_blocks(self):
        raise NotImplementedError

    def theta_blocks(self):
        raise NotImplementedError

    def equations(self) -> Iterator[Equation]:
        raise NotImplementedError

    def coboundary_tables(self, theta: Tables) -> Tables:
        raise NotImplementedError

    def oracle(self, tables: Tables) -> bool:
        raise NotImplementedError

    @cached_property
    def system(self) -> ConstraintSystem:
        system = ConstraintSystem()
        for eq in self.equations():
            system.add(eq)
        logger.debug(f"📊 {self.kind}: {self.layout.size} variabili, {len(system)} vincoli")
        return system

    def wrap(self, tables: Tables):
        return self.cochain_type.from_tables(tables)

    def vector(self, cochain) -> List[int]:
        return self.layout.flatten(cochain.tables())

    def failure(self, cochain) -> Optional[Tuple[Any, ...]]:
        return self.system.first_failure(self.vector(cochain))

    def coboundary_generators(self) -> np.ndarray:
        columns = [self.layout.flatten(self.coboundary_tables(theta)) for theta in self.theta_layout.units()]
        B = np.zeros((self.layout.size, len(columns)), dtype=object)
        for j, col in enumerate(columns):
            B[:, j] = col
        return B

    def coboundary(self, theta: Tables):
        return self.wrap(self.coboundary_tables(theta))


def _coboundary_of(group: FiniteGroup, theta: np.ndarray, moduli: Sequence[int]) -> np.ndarray:
    """tau(a1,a2) = theta(a2) - theta(a1 a2) + theta(a1)"""
    theta = np.asarray(theta, dtype=np.int64)
    tau = theta[None, :, :] - theta[group.table] + theta[:, None, :]
    return tau % np.array(moduli, dtype=np.int64)


def _cocycle_equations(layout: CochainLayout, group: FiniteGroup, block: str, moduli, tag: str) -> Iterator[Equation]:
    rows = group.rows
    for a1, a2, a3 in itertools.product(range(1, group.order), repeat=3):
        yield (Equation(layout, moduli, (tag, a1, a2, a3))
               .add(block, (a2, a3)).add(block, (rows[a1][a2], a3), -1)
               .add(block, (a1, rows[a2][a3])).add(block, (a1, a2), -1))


def _as_moduli(K: Union[int, Sequence[int], TrivialRRBModule]) -> Tuple[int, ...]:
    if isinstance(K, TrivialRRBModule):
        return K.K
    if isinstance(K, int):
        return (K,)
    return tuple(int(q) for q in K)


class GroupCocycleTheory(CochainTheory):
    kind = "group"
    cochain_type = GroupCocycle

    def __init__(self, G: FiniteGroup, moduli: Sequence[int]):
        self.G = G
        self.moduli = tuple(moduli)
        super().__init__()

    def cochain_blocks(self):
        return [("tau", (self.G.order, self.G.order), self.moduli)]

    def theta_blocks(self):
        return [("theta", (self.G.order,), self.moduli)]

    def equations(self):
        yield from _cocycle_equations(self.layout, self.G, "tau", self.moduli, "cocycle")

    def coboundary_tables(self, theta):
        return {"tau": _coboundary_of(self.G, theta["theta"], self.moduli)}

    def oracle(self, tables):
        try:
            build_group(twisted_table(self.G, self.moduli, tables["tau"]))
        except AlgebraError:
            return False
        return True


class SLBCocycleTheory(CochainTheory):
    """Pairs (tau, tau~) over (·, ∘) tied by the brace compatibility condition"""

    kind = "slb"
    cochain_type = SLBCocycle

    def __init__(self, brace: SkewBrace, moduli: Sequence[int]):
        self.brace = brace
        self.moduli = tuple(moduli)
        super().__init__()

    def cochain_blocks(self):
        n = self.brace.order
        return [("tau", (n, n), self.moduli), ("tau_tilde", (n, n), self.moduli)]

    def theta_blocks(self):
        return [("theta", (self.brace.order,), self.moduli)]

    def equations(self):
        dot, circ = self.brace.dot, self.brace.circle
        yield from _cocycle_equations(self.layout, dot, "tau", self.moduli, "dot")
        yield from _cocycle_equations(self.layout, circ, "tau_tilde", self.moduli, "circle")
        D, C, inv = dot.rows, circ.rows, dot.inv
        for m1, m2, m3 in itertools.product(range(1, dot.order), repeat=3):
            x = C[m1][m2]
            yield (Equation(self.layout, self.moduli, ("compatibility", m1, m2, m3))
                   .add("tau", (m2, m3)).add("tau_tilde", (m1, D[m2][m3])).add("tau", (m1, inv[m1]))
                   .add("tau_tilde", (m1, m2), -1).add("tau", (x, inv[m1]), -1)
                   .add("tau_tilde", (m1, m3), -1).add("tau", (D[x][inv[m1]], C[m1][m3]), -1))

    def coboundary_tables(self, theta):
        th = theta["theta"]
        return {
            "tau": _coboundary_of(self.brace.dot, th, self.moduli),
            "tau_tilde": _coboundary_of(self.brace.circle, th, self.moduli),
        }

    def oracle(self, tables):
        try:
            dot = build_group(twisted_table(self.brace.dot, self.moduli, tables["tau"]))
            circle = build_group(twisted_table(self.brace.circle, self.moduli, tables["tau_tilde"]))
            build_brace(dot, circle)
        except AlgebraError:
            return False
        return True


class RRBCocycleTheory(CochainTheory):
    """
    Quadruples (tau1, tau2, rho, chi) over A = (A, B, beta, T):
      RRBC1  rho(a, b1 b2) = rho(beta_b2(a), b1) + rho(a, b2)
      RRBC2  rho(a1 a2, b) + tau1(a1, a2) = rho(a1, b) + rho(a2, b) + tau1(beta_b(a1), beta_b(a2))
      RRBC3  S(rho(a2, T a1) + tau1(a1, beta_Ta1(a2))) = tau2(T a1, T a2) + chi(a2) - chi(a1 ∘ a2) + chi(a1)
    """

    kind = "rrb"
    cochain_type = Cocycle4

    def __init__(self, A: RRBGroup, module: TrivialRRBModule):
        self.A = A
        self.module = module
        super().__init__()

    def cochain_blocks(self):
        m, n = self.A.H.order, self.A.G.order
        K, L = self.module.K, self.module.L
        return [("tau1", (m, m), K), ("tau2", (n, n), L), ("rho", (m, n), K), ("chi", (m,), L)]

    def theta_blocks(self):
        return [("theta1", (self.A.H.order,), self.module.K), ("theta2", (self.A.G.order,), self.module.L)]

    def equations(self):
        A, lay = self.A, self.layout
        K, L, S = self.module.K, self.module.L, self.module.S.tolist()
        Hr, Gr, beta, T = A.H.rows, A.G.rows, A.phi_rows, A.R_list
        m, n = A.H.order, A.G.order
        yield from _cocycle_equations(lay, A.H, "tau1", K, "tau1")
        yield from _cocycle_equations(lay, A.G, "tau2", L, "tau2")
        for a in range(1, m):
            for b1, b2 in itertools.product(range(1, n), repeat=2):
                yield (Equation(lay, K, ("RRBC1", a, b1, b2))
                       .add("rho", (a, Gr[b1][b2])).add("rho", (beta[b2][a], b1), -1).add("rho", (a, b2), -1))
        for a1, a2 in itertools.product(range(1, m), repeat=2):
            for b in range(1, n):
                yield (Equation(lay, K, ("RRBC2", a1, a2, b))
                       .add("rho", (Hr[a1][a2], b)).add("rho", (a1, b), -1).add("rho", (a2, b), -1)
                       .add("tau1", (a1, a2)).add("tau1", (beta[b][a1], beta[b][a2]), -1))
        for a1, a2 in itertools.product(range(1, m), repeat=2):
            t1 = T[a1]
            moved = beta[t1][a2]
            yield (Equation(lay, L, ("RRBC3", a1, a2))
                   .add("rho", (a2, t1), through=S).add("tau1", (a1, moved), through=S)
                   .add("tau2", (t1, T[a2]), -1)
                   .add("chi", (a2,), -1).add("chi", (Hr[a1][moved],), 1).add("chi", (a1,), -1))

    def coboundary_tables(self, theta):
        A, mod = self.A, self.module
        th1 = np.asarray(theta["theta1"], dtype=np.int64)
        th2 = np.asarray(theta["theta2"], dtype=np.int64)
        K = np.array(mod.K, dtype=np.int64)
        L = np.array(mod.L, dtype=np.int64)
        return {
            "tau1": _coboundary_of(A.H, th1, mod.K),
            "tau2": _coboundary_of(A.G, th2, mod.L),
            "rho": (th1[:, None, :] - th1[A.phi.T]) % K,
            "chi": (mod.apply_S(th1) - th2[A.R]) % L,
        }

    def oracle(self, tables):
        try:
            H, G, phi, R = twisted_rrb_tables(self.A, self.module, Cocycle4.from_tables(tables))
            verify_rrb(build_group(H), build_group(G), phi, R)
        except AlgebraError:
            return False
        return True


# ===== H² =====

class H2Classes:
    """
    Z²/B² for one theory: structure, basis cocycles, coordinate solver.

    Raises:
        SearchBoundExceeded: more cochain coordinates than cocycle_variable_bound
    """

    def __init__(self, theory: CochainTheory, bound: Optional[int] = None):
        bound = bound or get_config().cocycle_variable_bound
        if theory.layout.size > bound:
            raise SearchBoundExceeded(
                f"{theory.layout.size} cochain coordinates exceed the bound {bound}",
                {"variables": theory.layout.size, "bound": bound},
            )
        self.theory = theory
        system = theory.system
        moduli = theory.layout.moduli
        Z = kernel_mod(system.rows, system.moduli, moduli)
        self.coboundary_matrix = theory.coboundary_generators()
        self.structure, self.solver = subquotient_structure(Z, self.coboundary_matrix, moduli)
        self.basis = [self.lift(self.structure.unit(i)) for i in range(self.structure.rank)]
        logger.debug(f"📊 H² ({theory.kind}): {self.structure.describe()}")

    @property
    def order(self) -> int:
        return self.structure.order

    @property
    def moduli(self) -> List[int]:
        return self.theory.layout.moduli

    def is_cocycle(self, cochain) -> bool:
        return self.theory.failure(cochain) is None

    def classify(self, cochain) -> AbElement:
        """
        Raises:
            NotInZ2: cochain breaks a cocycle condition (named in the witness)
        """
        vector = self.theory.vector(cochain)
        label = self.theory.system.first_failure(vector)
        if label is not None:
            raise NotInZ2(f"not a cocycle: {label[0]} fails at {label[1:-1]}", {"condition": label[0], "at": list(label[1:])})
        return self.solver.coordinates(vector)

    def lift(self, element: AbElement):
        return self.theory.wrap(self.theory.layout.unflatten(self.solver.lift(element)))

    def zero(self):
        return self.theory.wrap(self.theory.layout.zero())

    def elements(self) -> Iterator[AbElement]:
        return self.structure.elements()

    def cohomologous(self, c1, c2) -> bool:
        return self.classify(c1) == self.classify(c2)


def h2_group(G: FiniteGroup, K, bound: Optional[int] = None) -> H2Classes:
    """H²_Gp(G, K) for K a modulus, a tuple of moduli or a module (its K part)"""
    return _h2_group(G, _as_moduli(K), bound)


@lru_cache(maxsize=128)
def _h2_group(G: FiniteGroup, moduli: Tuple[int, ...], bound: Optional[int]) -> H2Classes:
    return H2Classes(GroupCocycleTheory(G, moduli), bound)


def h2_slb(brace: SkewBrace, K, bound: Optional[int] = None) -> H2Classes:
    return _h2_slb(brace, _as_moduli(K), bound)


@lru_cache(maxsize=128)
def _h2_slb(brace: SkewBrace, moduli: Tuple[int, ...], bound: Optional[int]) -> H2Classes:
    return H2Classes(SLBCocycleTheory(brace, moduli), bound)


@lru_cache(maxsize=128)
def h2_rrb(A: RRBGroup, module: TrivialRRBModule, bound: Optional[int] = None) -> H2Classes:
    """H²_RRB(A, module) through the congruence kernel and the coboundary span"""
    logger.info(f"🔄 H²_RRB di {A.name} a coefficienti {module.name}")
    return H2Classes(RRBCocycleTheory(A, module), bound)


# ===== COCYCLE CHECKS =====

def rrbc_failure(A: RRBGroup, module: TrivialRRBModule, c: Cocycle4) -> Optional[Tuple[Any, ...]]:
    """First broken linear condition as (name, indices..., coordinate), or None"""
    return RRBCocycleTheory(A, module).failure(c)


def is_rrb_cocycle(A: RRBGroup, module: TrivialRRBModule, c: Cocycle4) -> bool:
    """
    Linear RRBC verdict, cross-checked against building the extension.

    Raises:
        ShapeMismatch, NotNormalized: malformed tables
        ConsistencyError: the two verdicts disagree
    """
    theory = RRBCocycleTheory(A, module)
    vector = theory.vector(c)
    label = theory.system.first_failure(vector)
    oracle = theory.oracle(theory.layout.unflatten(vector))
    if (label is None) != oracle:
        raise ConsistencyError(
            "linear cocycle conditions and the extension oracle disagree",
            {"linear": label is None, "oracle": oracle, "condition": list(label) if label else None},
        )
    return label is None


def is_slb_cocycle(brace: SkewBrace, K, c: SLBCocycle) -> bool:
    theory = SLBCocycleTheory(brace, _as_moduli(K))
    vector = theory.vector(c)
    label = theory.system.first_failure(vector)
    oracle = theory.oracle(theory.layout.unflatten(vector))
    if (label is None) != oracle:
        raise ConsistencyError(
            "linear compatibility conditions and the brace oracle disagree",
            {"linear": label is None, "oracle": oracle},
        )
    return label is None


def _theta_array(theta, order: int, width: int) -> np.ndarray:
    arr = np.asarray(theta, dtype=np.int64).reshape(order, width)
    if arr[0].any():
        raise NotNormalized("theta must vanish at the identity", {"value": arr[0].tolist()})
    return arr


def rrb_coboundary(A: RRBGroup, module: TrivialRRBModule, theta1, theta2) -> Cocycle4:
    """
    (∂θ1, ∂θ2, θ1(a) - θ1(β_b a), Sθ1(a) - θ2(T a)).

    Raises:
        NotNormalized: θ1(1) or θ2(1) nonzero
    """
    theory = RRBCocycleTheory(A, module)
    theta = {
        "theta1": _theta_array(theta1, A.H.order, module.dK),
        "theta2": _theta_array(theta2, A.G.order, module.dL),
    }
    c = theory.coboundary(theta)
    label = theory.failure(c)
    if label is not None:
        raise ConsistencyError("coboundary breaks a cocycle condition", {"condition": list(label)})
    return c


# ===== BRUTE-FORCE ORACLES =====

def _all_vectors(moduli: Sequence[int], bound: int) -> Iterator[Tuple[int, ...]]:
    total = int(np.prod(moduli, dtype=object)) if moduli else 1
    if total > bound:
        raise SearchBoundExceeded(f"{total} candidate tables exceed the oracle bound {bound}", {"candidates": total, "bound": bound})
    return itertools.product(*(range(q) for q in moduli))


def _coboundary_vectors(theory: CochainTheory, bound: int) -> set:
    return {
        tuple(theory.layout.flatten(theory.coboundary_tables(theory.theta_layout.unflatten(list(t)))))
        for t in _all_vectors(theory.theta_layout.moduli, bound)
    }


def brute_force_h2_order(theory: CochainTheory, bound: Optional[int] = None) -> int:
    """|Z|/|B| with Z counted by rebuilding every candidate's tables"""
    bound = bound or get_config().oracle_candidate_bound
    cocycles = sum(1 for v in _all_vectors(theory.layout.moduli, bound) if theory.oracle(theory.layout.unflatten(list(v))))
    boundaries = _coboundary_vectors(theory, bound)
    if cocycles % len(boundaries):
        raise ConsistencyError("coboundaries do not divide cocycles", {"Z": cocycles, "B": len(boundaries)})
    return cocycles // len(boundaries)


def brute_force_h2_group_order(G: FiniteGroup, K, bound: Optional[int] = None) -> int:
    return brute_force_h2_order(GroupCocycleTheory(G, _as_moduli(K)), bound)


def brute_force_h2_slb_order(brace: SkewBrace, K, bound: Optional[int] = None) -> int:
    return brute_force_h2_order(SLBCocycleTheory(brace, _as_moduli(K)), bound)


def brute_force_h2_rrb_order(A: RRBGroup, module: TrivialRRBModule, bound: Optional[int] = None) -> int:
    return brute_force_h2_order(RRBCocycleTheory(A, module), bound)


def _brute_force_image_order(small: CochainTheory, large: CochainTheory, factor: int, bound: int) -> int:
    """|factor·Z_small + B_large| / |B_large|, all sets enumerated"""
    moduli = large.layout.moduli
    cocycles = [v for v in _all_vectors(small.layout.moduli, bound) if small.oracle(small.layout.unflatten(list(v)))]
    scaled = {tuple((factor * x) % q for x, q in zip(v, moduli)) for v in cocycles}
    boundaries = _coboundary_vectors(large, bound)
    sums = {tuple((x + y) % q for x, y, q in zip(s, b, moduli)) for s in scaled for b in boundaries}
    return len(sums) // len(boundaries)


def brute_force_multiplier_order(A: RRBGroup, bound: Optional[int] = None) -> int:
    bound = bound or get_config().oracle_candidate_bound
    N = A.H.order * A.G.order
    return _brute_force_image_order(
        RRBCocycleTheory(A, coefficient_module(N)), RRBCocycleTheory(A, coefficient_module(N * N)), N, bound
    )


def brute_force_group_multiplier_order(G: FiniteGroup, bound: Optional[int] = None) -> int:
    bound = bound or get_config().oracle_candidate_bound
    N = G.order
    return _brute_force_image_order(GroupCocycleTheory(G, (N,)), GroupCocycleTheory(G, (N * N,)), N, bound)
