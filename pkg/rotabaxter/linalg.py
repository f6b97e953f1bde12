"""
linalg.py - Integer linear algebra for finite abelian groups
============================================================

Smith normal form with tracked transforms, congruence solving, solution
lattices of congruence systems and subquotient structure Z/B. All matrices
are numpy object arrays of Python integers so intermediate entries never
overflow.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from sympy import factorint

from .config import get_config
from .errors import ConsistencyError, DimensionMismatch, NoSolution, NotInSubgroup

logger = logging.getLogger(__name__)

IntMatrix = np.ndarray  # dtype=object, Python ints


def int_matrix(values, rows: Optional[int] = None, cols: Optional[int] = None) -> IntMatrix:
    """Object-dtype integer matrix; empty inputs need an explicit shape"""
    if rows is not None and cols is not None and (rows == 0 or cols == 0):
        return np.zeros((rows, cols), dtype=object)
    arr = np.array(values, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(rows if rows is not None else 1, -1)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = int(v)
    return out


def identity_matrix(n: int) -> IntMatrix:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0"""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lcm(*values: int) -> int:
    return reduce(lambda x, y: x * y // gcd(x, y) if x and y else 0, values, 1)


# ===== SMITH NORMAL FORM =====

class SmithForm(NamedTuple):
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> List[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith_normal_form(M, check: Optional[bool] = None) -> SmithForm:
    """
    U*M*V = D with U, V unimodular and D diagonal, d1 | d2 | ... , zeros last.

    Args:
        M: integer matrix (any shape)
        check: verify the postcondition; defaults to the configured debug flag

    Returns:
        SmithForm(U, D, V, U_inv, V_inv)
    """
    D = np.array(M, dtype=object)
    if D.ndim != 2:
        raise DimensionMismatch("smith_normal_form expects a matrix", {"ndim": int(D.ndim)})
    D = D.copy()
    m, n = D.shape
    U, U_inv = identity_matrix(m), identity_matrix(m)
    V, V_inv = identity_matrix(n), identity_matrix(n)

    def swap_rows(a: int, b: int) -> None:
        if a != b:
            D[[a, b]] = D[[b, a]]
            U[[a, b]] = U[[b, a]]
            U_inv[:, [a, b]] = U_inv[:, [b, a]]

    def swap_cols(a: int, b: int) -> None:
        if a != b:
            D[:, [a, b]] = D[:, [b, a]]
            V[:, [a, b]] = V[:, [b, a]]
            V_inv[[a, b]] = V_inv[[b, a]]

    for t in range(min(m, n)):
        sub = D[t:, t:]
        nz = np.argwhere(sub != 0)
        if len(nz) == 0:
            break
        k = min(range(len(nz)), key=lambda i: abs(sub[nz[i][0], nz[i][1]]))
        swap_rows(t, t + int(nz[k][0]))
        swap_cols(t, t + int(nz[k][1]))

        while True:
            p = D[t, t]
            if t + 1 < m:
                q = D[t + 1:, t] // p
                if np.any(q != 0):
                    D[t + 1:, :] -= np.outer(q, D[t, :])
                    U[t + 1:, :] -= np.outer(q, U[t, :])
                    U_inv[:, t] += U_inv[:, t + 1:].dot(q)
            if t + 1 < n:
                q = D[t, t + 1:] // p
                if np.any(q != 0):
                    D[:, t + 1:] -= np.outer(D[:, t], q)
                    V[:, t + 1:] -= np.outer(V[:, t], q)
                    V_inv[t, :] += q.dot(V_inv[t + 1:, :])
            col_left = [i for i in range(t + 1, m) if D[i, t] != 0]
            row_left = [j for j in range(t + 1, n) if D[t, j] != 0]
            if not col_left and not row_left:
                break
            # remainders are smaller than the pivot: move the smallest one in
            best_col = min(col_left, key=lambda i: abs(D[i, t]), default=None)
            best_row = min(row_left, key=lambda j: abs(D[t, j]), default=None)
            if best_row is None or (best_col is not None and abs(D[best_col, t]) <= abs(D[t, best_row])):
                swap_rows(t, best_col)
            else:
                swap_cols(t, best_row)

    k = min(m, n)
    for t in range(k):
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
            U_inv[:, t] = -U_inv[:, t]

    nonzero = [t for t in range(k) if D[t, t] != 0]
    for i in nonzero:
        for j in nonzero:
            if j <= i:
                continue
            a, b = D[i, i], D[j, j]
            if b % a == 0:
                continue
            g, s, t = xgcd(a, b)
            a1, b1 = a // g, b // g
            ri, rj = D[i, :].copy(), D[j, :].copy()
            D[i, :], D[j, :] = s * ri + t * rj, -b1 * ri + a1 * rj
            ri, rj = U[i, :].copy(), U[j, :].copy()
            U[i, :], U[j, :] = s * ri + t * rj, -b1 * ri + a1 * rj
            ci, cj = U_inv[:, i].copy(), U_inv[:, j].copy()
            U_inv[:, i], U_inv[:, j] = a1 * ci + b1 * cj, -t * ci + s * cj
            ci, cj = D[:, i].copy(), D[:, j].copy()
            D[:, i], D[:, j] = ci + cj, -t * b1 * ci + s * a1 * cj
            ci, cj = V[:, i].copy(), V[:, j].copy()
            V[:, i], V[:, j] = ci + cj, -t * b1 * ci + s * a1 * cj
            ri, rj = V_inv[i, :].copy(), V_inv[j, :].copy()
            V_inv[i, :], V_inv[j, :] = s * a1 * ri + t * b1 * rj, -ri + rj

    form = SmithForm(U, D, V, U_inv, V_inv)
    if check if check is not None else get_config().debug:
        _check_smith(np.array(M, dtype=object), form)
    return form


def _check_smith(M: IntMatrix, form: SmithForm) -> None:
    U, D, V, U_inv, V_inv = form
    m, n = D.shape
    if not np.array_equal(U.dot(M).dot(V), D):
        raise ConsistencyError("SNF: U*M*V != D")
    if not (np.array_equal(U.dot(U_inv), identity_matrix(m)) and np.array_equal(V.dot(V_inv), identity_matrix(n))):
        raise ConsistencyError("SNF: transforms are not unimodular")
    off = D.copy()
    for i in range(min(m, n)):
        off[i, i] = 0
    if np.any(off != 0):
        raise ConsistencyError("SNF: D is not diagonal")
    diag = form.diagonal
    for a, b in zip(diag, diag[1:]):
        if (a == 0 and b != 0) or (a != 0 and b % a != 0):
            raise ConsistencyError("SNF: divisibility chain broken", {"diagonal": diag})


# ===== CONGRUENCE SYSTEMS =====

def solve_mod(M, b: Sequence[int], moduli: Sequence[int]) -> IntMatrix:
    """
    One integer solution x of M*x = b, row i taken modulo moduli[i] (0 = exact).

    Raises:
        DimensionMismatch: inconsistent shapes
        NoSolution: with the transformed row that cannot be met
    """
    M = np.array(M, dtype=object)
    if M.ndim != 2 or M.shape[0] != len(b) or len(b) != len(moduli):
        raise DimensionMismatch(
            "solve_mod: M, b and moduli disagree",
            {"M": list(np.shape(M)), "b": len(b), "moduli": len(moduli)},
        )
    r, c = M.shape
    extra = [i for i, q in enumerate(moduli) if q]
    A = np.zeros((r, c + len(extra)), dtype=object)
    A[:, :c] = M
    for k, i in enumerate(extra):
        A[i, c + k] = int(moduli[i])
    form = smith_normal_form(A)
    y = form.U.dot(np.array([int(v) for v in b], dtype=object))
    diag = form.diagonal
    w = np.zeros(A.shape[1], dtype=object)
    for i in range(r):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if y[i] != 0:
                raise NoSolution(f"row {i} of the reduced system reads 0 = {y[i]}", {"row": i, "value": int(y[i])})
        elif y[i] % d:
            raise NoSolution(
                f"row {i} of the reduced system needs {d} | {y[i]}",
                {"row": i, "value": int(y[i]), "divisor": d},
            )
        else:
            w[i] = y[i] // d
    x = form.V.dot(w)[:c]
    residual = M.dot(x) - np.array([int(v) for v in b], dtype=object)
    for i, q in enumerate(moduli):
        if (residual[i] % q if q else residual[i]) != 0:
            raise ConsistencyError("solve_mod: substitution check failed", {"row": i})
    return x


def _scalar_multiplier(vp: int, vj: int, m: int) -> Optional[int]:
    """c with vj - c*vp = 0 (mod m), if one exists"""
    g = gcd(vp, m)
    if vj % g:
        return None
    m1 = m // g
    if m1 == 1:
        return 0
    return (vj // g) * pow(vp // g, -1, m1) % m1


def kernel_mod(
    rows: Sequence[Dict[int, int]],
    row_moduli: Sequence[int],
    var_moduli: Sequence[int],
) -> IntMatrix:
    """
    Generators of {x in ⊕ Z/q_v : sum_v row[v]*x_v = 0 mod m for every row}.

    The lattice of moduli vectors q_v*e_v stays implicit; each constraint is
    absorbed by combining generators with extended-gcd steps until a single
    generator carries a nonzero value, which is then scaled into the kernel.

    Returns:
        V x t object matrix whose columns generate the solution group
    """
    q = np.array([int(v) for v in var_moduli], dtype=object)
    nvars = len(q)
    gens = identity_matrix(nvars) % np.array([max(v, 1) for v in q], dtype=object)[None, :]
    if len(rows) != len(row_moduli):
        raise DimensionMismatch("kernel_mod: one modulus per row required")

    for row, m in zip(rows, row_moduli):
        m = int(m)
        if m == 1 or not row:
            continue
        terms = [(int(v), int(c) % m) for v, c in row.items()]
        if any(c * q[v] % m for v, c in terms):
            raise DimensionMismatch("kernel_mod: row not defined modulo the variable moduli", {"row": dict(row)})
        terms = [(v, c) for v, c in terms if c]
        if not terms:
            continue
        idx = [v for v, _ in terms]
        coef = np.array([c for _, c in terms], dtype=object)
        values = gens[:, idx].dot(coef) % m
        nz = [j for j, v in enumerate(values) if v]
        if not nz:
            continue
        p = min(nz, key=lambda j: (gcd(int(values[j]), m), j))
        vp = int(values[p])
        for j in nz:
            if j == p:
                continue
            vj = int(values[j])
            c = _scalar_multiplier(vp, vj, m)
            if c is not None:
                gens[j] = (gens[j] - c * gens[p]) % q
            else:
                g, s, t = xgcd(vp, vj)
                gp = (s * gens[p] + t * gens[j]) % q
                gj = (-(vj // g) * gens[p] + (vp // g) * gens[j]) % q
                gens[p], gens[j] = gp, gj
                vp = g % m
        gens[p] = (gens[p] * (m // gcd(vp, m))) % q
        gens = gens[np.array([any(r) for r in gens.tolist()], dtype=bool)]
        if len(gens) > 1:
            # object arrays have no np.unique(axis=0)
            gens = int_matrix(sorted({tuple(r) for r in gens.tolist()}))

    logger.debug(f"📊 kernel_mod: {len(rows)} vincoli, {len(gens)} generatori")
    return int_matrix(gens.T, rows=nvars, cols=len(gens))


# ===== FINITE ABELIAN GROUPS =====

@dataclass(frozen=True)
class AbElement:
    """Element of ⊕ Z/d_i in normal-form coordinates"""

    factors: Tuple[int, ...]
    coords: Tuple[int, ...]

    def __post_init__(self):
        reduced = tuple(int(c) % d if d else int(c) for c, d in zip(self.coords, self.factors))
        object.__setattr__(self, "coords", reduced)

    def __add__(self, other: "AbElement") -> "AbElement":
        return AbElement(self.factors, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AbElement":
        return AbElement(self.factors, tuple(-a for a in self.coords))

    def __sub__(self, other: "AbElement") -> "AbElement":
        return self + (-other)

    def __mul__(self, k: int) -> "AbElement":
        return AbElement(self.factors, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def order(self) -> int:
        return lcm(*(d // gcd(c, d) for c, d in zip(self.coords, self.factors)))


@dataclass(frozen=True)
class FinAbPresentation:
    """
    Finite abelian group ⊕ Z/d_i with d_1 | d_2 | ... (trivial factors pruned).

    transform keeps the change-of-basis data of the computation that produced
    it; it is None for presentations built directly from factors.
    """

    factors: Tuple[int, ...]
    transform: Optional[dict] = None

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.factors, 1)

    @property
    def exponent(self) -> int:
        return lcm(*self.factors)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def zero(self) -> AbElement:
        return AbElement(self.factors, (0,) * self.rank)

    def unit(self, i: int) -> AbElement:
        return AbElement(self.factors, tuple(int(j == i) for j in range(self.rank)))

    def element(self, coords: Sequence[int]) -> AbElement:
        if len(coords) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates", {"coords": list(coords)})
        return AbElement(self.factors, tuple(coords))

    def elements(self) -> Iterator[AbElement]:
        for coords in itertools.product(*(range(d) for d in self.factors)):
            yield AbElement(self.factors, coords)

    def elementary_divisors(self) -> List[int]:
        divisors = []
        for d in self.factors:
            divisors.extend(p ** e for p, e in factorint(d).items())
        return sorted(divisors)

    def describe(self) -> str:
        return " x ".join(f"Z{d}" for d in self.factors) if self.factors else "1"

    def direct_sum(self, other: "FinAbPresentation") -> "FinAbPresentation":
        return presentation_from_orders(list(self.factors) + list(other.factors))


def presentation_from_orders(orders: Sequence[int]) -> FinAbPresentation:
    """Invariant factors of ⊕ Z/n_i"""
    if not orders:
        return FinAbPresentation(())
    diag = smith_normal_form(np.diag(np.array([int(n) for n in orders], dtype=object))).diagonal
    return FinAbPresentation(tuple(d for d in diag if d != 1))


class CoordinateSolver:
    """Raw vectors of Z  <->  normal-form coordinates of Z/B"""

    def __init__(self, presentation: FinAbPresentation, moduli: Sequence[int], U, d, basis, P, P_inv, kept):
        self.presentation = presentation
        self.moduli = [int(v) for v in moduli]
        self._U = U
        self._d = d
        self._basis = basis
        self._P_kept = P[kept, :] if len(kept) else np.zeros((0, P.shape[1]), dtype=object)
        self._P_inv_kept = P_inv[:, kept] if len(kept) else np.zeros((P_inv.shape[0], 0), dtype=object)

    def lattice_coordinates(self, x: Sequence[int]) -> IntMatrix:
        y = self._U.dot(np.array([int(v) for v in x], dtype=object))
        r = len(self._d)
        for i, yi in enumerate(y):
            if i < r:
                if yi % self._d[i]:
                    raise NotInSubgroup("vector outside the subgroup Z", {"component": i})
            elif yi != 0:
                raise NotInSubgroup("vector outside the subgroup Z", {"component": i})
        return np.array([y[i] // self._d[i] for i in range(r)], dtype=object)

    def coordinates(self, x: Sequence[int]) -> AbElement:
        if len(x) != len(self.moduli):
            raise DimensionMismatch(f"expected a vector of length {len(self.moduli)}")
        c = self.lattice_coordinates(x)
        return AbElement(self.presentation.factors, tuple(int(v) for v in self._P_kept.dot(c)))

    def lift(self, element: AbElement) -> List[int]:
        if len(element.coords) != self.presentation.rank:
            raise DimensionMismatch(f"expected {self.presentation.rank} coordinates")
        c = self._P_inv_kept.dot(np.array(element.coords, dtype=object))
        x = self._basis.dot(c) if len(c) else np.zeros(len(self.moduli), dtype=object)
        return [int(v) % q if q else int(v) for v, q in zip(x, self.moduli)]


def subquotient_structure(Z_gens, B_gens, moduli: Sequence[int]) -> Tuple[FinAbPresentation, CoordinateSolver]:
    """
    Structure of Z/B inside ⊕ Z/q_v (q_v = 0 meaning Z).

    Args:
        Z_gens: V x s matrix, columns generate Z (moduli vectors added here)
        B_gens: V x t matrix, columns generate B ⊆ Z
        moduli: per-coordinate moduli q_v

    Returns:
        (presentation, solver)

    Raises:
        NotInSubgroup: a column of B_gens does not lie in Z
    """
    nvars = len(moduli)
    Z = np.array(Z_gens, dtype=object).reshape(nvars, -1)
    B = np.array(B_gens, dtype=object).reshape(nvars, -1)
    mod_cols = [v for v, q in enumerate(moduli) if q]
    full = np.zeros((nvars, Z.shape[1] + len(mod_cols)), dtype=object)
    full[:, :Z.shape[1]] = Z
    for k, v in enumerate(mod_cols):
        full[v, Z.shape[1] + k] = int(moduli[v])

    outer = smith_normal_form(full)
    d = [x for x in outer.diagonal if x != 0]
    r = len(d)
    basis = outer.U_inv[:, :r] * np.array(d, dtype=object)[None, :] if r else np.zeros((nvars, 0), dtype=object)

    outer_solver = CoordinateSolver(FinAbPresentation(()), moduli, outer.U, d, basis,
                                    identity_matrix(r), identity_matrix(r), [])
    relations = [outer_solver.lattice_coordinates(B[:, j]) for j in range(B.shape[1])]
    for v in mod_cols:
        e = [0] * nvars
        e[v] = int(moduli[v])
        relations.append(outer_solver.lattice_coordinates(e))
    rel = np.zeros((r, len(relations)), dtype=object)
    for j, col in enumerate(relations):
        rel[:, j] = col

    inner = smith_normal_form(rel)
    diag = inner.diagonal
    invariants = [diag[i] if i < len(diag) else 0 for i in range(r)]
    kept = [i for i in range(r) if invariants[i] != 1]
    presentation = FinAbPresentation(
        tuple(invariants[i] for i in kept),
        {"lattice_diagonal": d, "relation_invariants": invariants},
    )
    solver = CoordinateSolver(presentation, moduli, outer.U, d, basis, inner.U, inner.U_inv, kept)
    logger.debug(f"📊 Sottoquoziente: {presentation.describe()}")
    return presentation, solver


def subgroup_structure(gens: Sequence[Sequence[int]], factors: Sequence[int]) -> Tuple[FinAbPresentation, CoordinateSolver]:
    """Structure of the subgroup generated by coordinate vectors inside ⊕ Z/factors"""
    k = len(factors)
    Z = np.zeros((k, len(gens)), dtype=object)
    for j, g in enumerate(gens):
        Z[:, j] = [int(v) for v in g]
    return subquotient_structure(Z, np.zeros((k, 0), dtype=object), factors)
