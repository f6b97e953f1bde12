"""
groups.py - Finite groups on Cayley tables
==========================================

Group arithmetic on explicit multiplication tables with the identity always
at index 0: validation, subgroups, centers, commutators, quotients and
backtracking enumeration of homomorphisms.
"""
import itertools
import logging
from functools import cached_property, reduce
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .errors import (
    IndexOutOfRange,
    MissingInverse,
    NoIdentityAtZero,
    NotAssociative,
    NotHomomorphism,
    NotNormal,
    NotSubgroup,
    SearchBoundExceeded,
    ShapeMismatch,
)

logger = logging.getLogger(__name__)


def frozen(values, dtype=np.int64) -> np.ndarray:
    """Copy into a read-only numpy array"""
    array = np.array(values, dtype=dtype)
    array.flags.writeable = False
    return array


class FiniteGroup:
    """
    Finite group given by its Cayley table.

    table[i][j] is the index of i*j; index 0 is the identity. Instances are
    immutable; use build_group() to validate untrusted tables.
    """

    def __init__(self, table: Sequence[Sequence[int]], inv: Sequence[int], name: str = "G"):
        self.table = frozen(table)
        self.inv: Tuple[int, ...] = tuple(int(x) for x in inv)
        self.name = name
        self.order = int(self.table.shape[0])
        self.rows: List[List[int]] = self.table.tolist()

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, order={self.order})"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.order, self.table.tobytes()))

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def product(self, *elements: int) -> int:
        result = 0
        for x in elements:
            result = self.rows[result][x]
        return result

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        result = 0
        for _ in range(k):
            result = self.rows[result][a]
        return result

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.rows[self.rows[g][x]][self.inv[g]]

    def commutator(self, x: int, y: int) -> int:
        """x y x^-1 y^-1"""
        return self.rows[self.rows[x][y]][self.rows[self.inv[x]][self.inv[y]]]

    @cached_property
    def inv_array(self) -> np.ndarray:
        return frozen(self.inv)

    @cached_property
    def element_orders(self) -> Tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.rows[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def exponent(self) -> int:
        return reduce(lambda x, y: x * y // gcd(x, y), self.element_orders, 1)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """Greedy generating set: each step adds the element enlarging the span most"""
        gens: List[int] = []
        current = {0}
        while len(current) < self.order:
            best, best_span = -1, set()
            for x in range(self.order):
                if x in current:
                    continue
                span = _closure(self.rows, gens + [x])
                if len(span) > len(best_span):
                    best, best_span = x, span
            gens.append(best)
            current = best_span
        return tuple(gens)


def _closure(rows: List[List[int]], gens: Iterable[int]) -> set:
    gens = list(gens)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = rows[x]
            for g in gens:
                y = row[g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def build_group(table: Sequence[Sequence[int]], name: str = "G") -> FiniteGroup:
    """
    Validate a Cayley table and return the group.

    Args:
        table: square matrix of indices in [0, n)
        name: label carried through reports

    Returns:
        FiniteGroup with computed inverses

    Raises:
        ShapeMismatch, IndexOutOfRange, NoIdentityAtZero, MissingInverse,
        NotAssociative: each naming the first offending element(s)
    """
    try:
        arr = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as e:
        raise ShapeMismatch(f"{name}: table is not a rectangular integer matrix ({e})")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ShapeMismatch(f"{name}: table must be a non-empty square matrix", {"shape": list(arr.shape)})
    n = arr.shape[0]

    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        i, j = (int(v) for v in bad[0])
        raise IndexOutOfRange(
            f"{name}: entry table[{i}][{j}] = {int(arr[i, j])} outside [0, {n})",
            {"row": i, "col": j, "value": int(arr[i, j])},
        )

    ids = np.arange(n)
    for j in range(n):
        if arr[0, j] != j or arr[j, 0] != j:
            raise NoIdentityAtZero(f"{name}: index 0 is not an identity (fails at {j})", {"element": j})

    zero = arr == 0
    both = zero & zero.T
    has_inverse = both.any(axis=1)
    if not has_inverse.all():
        x = int(np.argmin(has_inverse))
        raise MissingInverse(f"{name}: element {x} has no two-sided inverse", {"element": x})
    inv = both.argmax(axis=1)

    # (i*j)*k against i*(j*k), one slab of first factors at a time
    for i in range(n):
        left = arr[arr[i]]
        right = arr[i][arr]
        diff = np.argwhere(left != right)
        if len(diff):
            j, k = (int(v) for v in diff[0])
            raise NotAssociative(
                f"{name}: ({i}*{j})*{k} != {i}*({j}*{k})", {"triple": [i, j, k]}
            )

    logger.debug(f"✅ Gruppo {name} di ordine {n} validato")
    return FiniteGroup(arr, inv, name)


class GroupHom:
    """Map between finite groups stored as an image array"""

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, image: Sequence[int]):
        self.domain = domain
        self.codomain = codomain
        self.image: Tuple[int, ...] = tuple(int(x) for x in image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __repr__(self) -> str:
        return f"GroupHom({self.domain.name} -> {self.codomain.name}, {list(self.image)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupHom) and self.image == other.image and \
            self.domain == other.domain and self.codomain == other.codomain

    def __hash__(self) -> int:
        return hash(self.image)

    @classmethod
    def identity(cls, group: FiniteGroup) -> "GroupHom":
        return cls(group, group, range(group.order))

    @classmethod
    def trivial(cls, domain: FiniteGroup, codomain: FiniteGroup) -> "GroupHom":
        return cls(domain, codomain, [0] * domain.order)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self after first"""
        return GroupHom(first.domain, self.codomain, [self.image[x] for x in first.image])

    def kernel(self) -> "Subgroup":
        return Subgroup(self.domain, [x for x, y in enumerate(self.image) if y == 0])

    def image_subgroup(self) -> "Subgroup":
        return Subgroup(self.codomain, set(self.image))

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == self.domain.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.codomain.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def inverse(self) -> "GroupHom":
        if not self.is_bijective:
            raise NotHomomorphism(f"{self!r} is not invertible")
        inv = [0] * self.codomain.order
        for x, y in enumerate(self.image):
            inv[y] = x
        return GroupHom(self.codomain, self.domain, inv)

    def verify(self) -> "GroupHom":
        """Raise NotHomomorphism on the first pair (x, y) breaking f(xy) = f(x)f(y)"""
        if len(self.image) != self.domain.order:
            raise NotHomomorphism("image array has wrong length", {"length": len(self.image)})
        img = np.array(self.image, dtype=np.int64)
        if len(img) and (img.min() < 0 or img.max() >= self.codomain.order):
            raise NotHomomorphism("image outside the codomain")
        lhs = img[self.domain.table]
        rhs = self.codomain.table[img[:, None], img[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y = (int(v) for v in bad[0])
            raise NotHomomorphism(f"f({x}*{y}) != f({x})*f({y})", {"pair": [x, y]})
        return self


class Subgroup:
    """Subgroup handle: parent group plus sorted element indices"""

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]):
        self.parent = parent
        self.elements: Tuple[int, ...] = tuple(sorted({int(e) for e in elements}))
        self._set = frozenset(self.elements)

    @classmethod
    def checked(cls, parent: FiniteGroup, elements: Iterable[int]) -> "Subgroup":
        sub = cls(parent, elements)
        for e in sub.elements:
            if not 0 <= e < parent.order:
                raise IndexOutOfRange(f"{e} is not an element of {parent.name}", {"element": e})
        if 0 not in sub:
            raise NotSubgroup("identity missing", {"element": 0})
        for x in sub.elements:
            if parent.inv[x] not in sub:
                raise NotSubgroup(f"inverse of {x} missing", {"element": x})
            for y in sub.elements:
                if parent.rows[x][y] not in sub:
                    raise NotSubgroup(f"product {x}*{y} escapes", {"pair": [x, y]})
        return sub

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, Subgroup) and self._set == other._set and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"Subgroup({self.parent.name}, {list(self.elements)})"

    def issubset(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self._set & other._set)

    def normality_witness(self) -> Optional[Tuple[int, int]]:
        """First (g, n) with g n g^-1 outside the subgroup, or None"""
        table = self.parent.table
        members = np.zeros(self.parent.order, dtype=bool)
        members[list(self.elements)] = True
        els = np.array(self.elements, dtype=np.int64)
        conj = table[table[:, els], self.parent.inv_array[:, None]]
        bad = np.argwhere(~members[conj])
        if len(bad):
            g, k = (int(v) for v in bad[0])
            return g, int(els[k])
        return None

    def is_normal(self) -> bool:
        return self.normality_witness() is None

    @cached_property
    def positions(self) -> Dict[int, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index_of(self, x: int) -> int:
        return self.positions[x]

    @cached_property
    def carrier(self) -> Tuple[FiniteGroup, GroupHom]:
        els = np.array(self.elements, dtype=np.int64)
        relabel = np.full(self.parent.order, -1, dtype=np.int64)
        relabel[els] = np.arange(len(els))
        table = relabel[self.parent.table[np.ix_(els, els)]]
        inv = relabel[self.parent.inv_array[els]]
        group = FiniteGroup(table, inv, f"{self.parent.name}[{len(els)}]")
        return group, GroupHom(group, self.parent, self.elements)

    def to_group(self) -> Tuple[FiniteGroup, GroupHom]:
        """Relabel as a standalone group (sorted elements, identity first) with its embedding"""
        return self.carrier


# ===== SUBGROUP CONSTRUCTIONS =====

def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if not 0 <= g < group.order:
            raise IndexOutOfRange(f"{g} is not an element of {group.name}", {"element": g})
    return Subgroup(group, _closure(group.rows, gens))


def center_of(group: FiniteGroup) -> Subgroup:
    table = group.table
    central = np.all(table == table.T, axis=1)
    return Subgroup(group, np.flatnonzero(central).tolist())


def commutator_subgroup(group: FiniteGroup) -> Subgroup:
    table, inv = group.table, group.inv_array
    comms = table[table, table[inv[:, None], inv[None, :]]]
    return subgroup_generated(group, np.unique(comms).tolist())


def quotient_group(group: FiniteGroup, normal: Subgroup) -> Tuple[FiniteGroup, GroupHom]:
    """
    Coset group G/N; each coset is represented by its smallest element.

    Raises:
        NotNormal: with a conjugation witness (g, n)
    """
    witness = normal.normality_witness()
    if witness is not None:
        g, n = witness
        raise NotNormal(
            f"{g}*{n}*{g}^-1 not in the subgroup of {group.name}", {"g": g, "n": n}
        )
    els = np.array(normal.elements, dtype=np.int64)
    reps = group.table[:, els].min(axis=1)
    unique = np.unique(reps)
    index = np.full(group.order, -1, dtype=np.int64)
    index[unique] = np.arange(len(unique))
    proj = index[reps]
    table = proj[group.table[np.ix_(unique, unique)]]
    inv = proj[group.inv_array[unique]]
    quotient = FiniteGroup(table, inv, f"{group.name}/{normal.order}")
    return quotient, GroupHom(group, quotient, proj)


def coset_representatives(projection: GroupHom) -> Tuple[int, ...]:
    """Smallest preimage of each quotient element"""
    reps = [-1] * projection.codomain.order
    for x, q in enumerate(projection.image):
        if reps[q] < 0:
            reps[q] = x
    return tuple(reps)


# ===== HOMOMORPHISM SEARCH =====

def _propagate(rows1, rows2, mapping: List[int], active: List[int], queue: List[int]) -> bool:
    while queue:
        x = queue.pop()
        row1 = rows1[x]
        row2 = rows2[mapping[x]]
        for g in active:
            y = row1[g]
            v = row2[mapping[g]]
            if mapping[y] < 0:
                mapping[y] = v
                queue.append(y)
            elif mapping[y] != v:
                return False
    return True


def enumerate_homs(
    G1: FiniteGroup,
    G2: FiniteGroup,
    *,
    fixed: Optional[Dict[int, int]] = None,
    bijective: bool = False,
    limit: Optional[int] = None,
    bound: Optional[int] = None,
) -> List[GroupHom]:
    """
    All homomorphisms G1 -> G2 by backtracking on generator images.

    Args:
        fixed: prescribed values x -> f(x); only extensions are returned
        bijective: keep isomorphisms only
        limit: stop after this many results
        bound: largest accepted |G1| (config hom_search_bound by default)

    Returns:
        homomorphisms sorted lexicographically on their image arrays
    """
    bound = bound or get_config().hom_search_bound
    if G1.order > bound:
        raise SearchBoundExceeded(
            f"|{G1.name}| = {G1.order} exceeds the hom search bound {bound}",
            {"order": G1.order, "bound": bound},
        )
    if bijective and G1.order != G2.order:
        return []
    n1, n2 = G1.order, G2.order
    rows1, rows2 = G1.rows, G2.rows
    orders1, orders2 = G1.element_orders, G2.element_orders

    mapping = [-1] * n1
    mapping[0] = 0
    active: List[int] = []
    for x, y in (fixed or {}).items():
        if not (0 <= x < n1 and 0 <= y < n2):
            raise IndexOutOfRange(f"fixed value {x} -> {y} out of range", {"pair": [x, y]})
        if mapping[x] not in (-1, y):
            return []
        mapping[x] = y
        if x not in active:
            active.append(x)
    if not _propagate(rows1, rows2, mapping, active, [x for x in range(n1) if mapping[x] >= 0]):
        return []

    def candidates(g: int) -> List[int]:
        if bijective:
            return [y for y in range(n2) if orders2[y] == orders1[g]]
        return [y for y in range(n2) if orders1[g] % orders2[y] == 0]

    gens = list(G1.generators)
    results: List[GroupHom] = []

    def search(k: int, current: List[int], act: List[int]) -> None:
        if limit is not None and len(results) >= limit:
            return
        if k == len(gens):
            if bijective and len(set(current)) != n1:
                return
            results.append(GroupHom(G1, G2, current))
            return
        g = gens[k]
        options = [current[g]] if current[g] >= 0 else candidates(g)
        for y in options:
            nxt = current[:]
            nxt[g] = y
            nact = act if g in act else act + [g]
            if _propagate(rows1, rows2, nxt, nact, [x for x in range(n1) if nxt[x] >= 0]):
                search(k + 1, nxt, nact)

    search(0, mapping, active)
    results.sort(key=lambda h: h.image)
    logger.debug(f"📊 Hom({G1.name}, {G2.name}): {len(results)} trovati")
    return results


def automorphisms(group: FiniteGroup, bound: Optional[int] = None) -> List[GroupHom]:
    return enumerate_homs(group, group, bijective=True, bound=bound)


def automorphism_group(group: FiniteGroup, bound: Optional[int] = None) -> Tuple[FiniteGroup, List[GroupHom]]:
    """Aut(G) as a Cayley table under composition; index 0 is the identity map"""
    auts = automorphisms(group, bound=bound)
    index = {a.image: i for i, a in enumerate(auts)}
    table = [[index[a.compose(b).image] for b in auts] for a in auts]
    inv = [index[a.inverse().image] for a in auts]
    return FiniteGroup(table, inv, f"Aut({group.name})"), auts


def find_isomorphism(G1: FiniteGroup, G2: FiniteGroup, bound: Optional[int] = None) -> Optional[GroupHom]:
    if G1.order != G2.order or sorted(G1.element_orders) != sorted(G2.element_orders):
        return None
    found = enumerate_homs(G1, G2, bijective=True, limit=1, bound=bound)
    return found[0] if found else None


def is_isomorphic(G1: FiniteGroup, G2: FiniteGroup, bound: Optional[int] = None) -> bool:
    return find_isomorphism(G1, G2, bound=bound) is not None


# ===== CANONICAL BUILDERS =====

def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], [0], "1")


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, (-idx) % n, f"Z{n}")


def direct_product(G1: FiniteGroup, G2: FiniteGroup) -> FiniteGroup:
    """Pairs (a, b) stored at index a*|G2| + b"""
    n2 = G2.order
    t1, t2 = G1.table, G2.table
    table = t1[:, None, :, None] * n2 + t2[None, :, None, :]
    table = table.reshape(G1.order * n2, G1.order * n2)
    inv = (G1.inv_array[:, None] * n2 + G2.inv_array[None, :]).reshape(-1)
    return FiniteGroup(table, inv, f"{G1.name}x{G2.name}")


def klein_four() -> FiniteGroup:
    group = direct_product(cyclic(2), cyclic(2))
    group.name = "V4"
    return group


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon (order 2n): r^k s^e at index k + n*e"""
    table = []
    for e1 in range(2):
        for k1 in range(n):
            row = []
            for e2 in range(2):
                for k2 in range(n):
                    k = (k1 + (k2 if e1 == 0 else -k2)) % n
                    row.append(k + n * (e1 ^ e2))
            table.append(row)
    return build_group(table, f"D{2 * n}")


def symmetric(k: int) -> FiniteGroup:
    """S_k on lexicographically sorted permutations; (p*q)(i) = p(q(i))"""
    perms = sorted(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]
    return build_group(table, f"S{k}")


# units 1, i, j, k: UNIT_PRODUCTS[u][v] = (sign, w)
UNIT_PRODUCTS = [
    [(1, 0), (1, 1), (1, 2), (1, 3)],
    [(1, 1), (-1, 0), (1, 3), (-1, 2)],
    [(1, 2), (-1, 3), (-1, 0), (1, 1)],
    [(1, 3), (1, 2), (-1, 1), (-1, 0)],
]


def quaternion() -> FiniteGroup:
    """Q8 with +u at index 2u and -u at index 2u+1"""
    table = []
    for x in range(8):
        u, su = divmod(x, 2)
        row = []
        for y in range(8):
            v, sv = divmod(y, 2)
            sign, w = UNIT_PRODUCTS[u][v]
            negative = (sign < 0) ^ bool(su) ^ bool(sv)
            row.append(2 * w + int(negative))
        table.append(row)
    return build_group(table, "Q8")
