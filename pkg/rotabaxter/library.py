"""
library.py - Small groups and the RRB catalog
=============================================

Canonical groups up to order 8, every action G -> Aut(H) between two of
them, and the deterministic catalog of relative Rota-Baxter groups used by
survey runs and the slow test sweeps.
"""
import logging
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple

import numpy as np

from .config import get_config
from .groups import (
    FiniteGroup,
    cyclic,
    dihedral,
    direct_product,
    enumerate_homs,
    automorphism_group,
    klein_four,
    quaternion,
    symmetric,
    trivial_group,
)
from .rrb import RRBGroup, enumerate_relative_rb_operators

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def small_groups(max_order: int = 8) -> Tuple[FiniteGroup, ...]:
    """One group per isomorphism type of order <= max_order (<= 8), sorted by order"""
    z2 = cyclic(2)
    builders = [
        trivial_group,
        lambda: cyclic(2),
        lambda: cyclic(3),
        lambda: cyclic(4),
        klein_four,
        lambda: cyclic(5),
        lambda: cyclic(6),
        lambda: symmetric(3),
        lambda: cyclic(7),
        lambda: cyclic(8),
        lambda: direct_product(z2, cyclic(4)),
        lambda: direct_product(z2, klein_four()),
        lambda: dihedral(4),
        quaternion,
    ]
    groups = [g for g in (build() for build in builders) if g.order <= max_order]
    return tuple(sorted(groups, key=lambda g: g.order))


def group_by_name(name: str) -> Optional[FiniteGroup]:
    for group in small_groups():
        if group.name == name:
            return group
    return None


def actions(H: FiniteGroup, G: FiniteGroup, bound: Optional[int] = None) -> List[np.ndarray]:
    """
    Every homomorphism G -> Aut(H) as a phi table (|G| rows of |H| indices).

    The trivial action comes first; the rest follow the lexicographic order
    of the homomorphisms into Aut(H).
    """
    aut, maps = automorphism_group(H, bound=bound)
    tables = []
    for f in enumerate_homs(G, aut, bound=bound):
        tables.append(np.array([maps[f(g)].image for g in G.elements()], dtype=np.int64))
    return tables


def _operators(H: FiniteGroup, G: FiniteGroup, bound: Optional[int]) -> Iterator[RRBGroup]:
    for k, phi in enumerate(actions(H, G)):
        for rrb in enumerate_relative_rb_operators(H, G, phi, bound=bound):
            rrb.name = f"({H.name},{G.name},phi{k},R={list(rrb.R_list)})"
            yield rrb


def rrb_catalog(max_product: int = 16, limit: Optional[int] = None, bound: Optional[int] = None) -> List[RRBGroup]:
    """
    Every RRB group (H, G, phi, R) over small_groups() with |H|·|G| <= max_product.

    Ordering is deterministic: H by order then position in small_groups(),
    G likewise, then action index, then R lexicographically.

    Args:
        limit: stop after this many entries
        bound: operator search bound (config operator_search_bound by default)
    """
    bound = bound or get_config().operator_search_bound
    catalog: List[RRBGroup] = []
    groups = [g for g in small_groups() if g.order <= bound]
    for H in groups:
        for G in groups:
            if H.order * G.order > max_product:
                continue
            for rrb in _operators(H, G, bound):
                catalog.append(rrb)
                if limit is not None and len(catalog) >= limit:
                    logger.info(f"📊 Catalogo troncato a {limit} gruppi RRB")
                    return catalog
    logger.info(f"📊 Catalogo: {len(catalog)} gruppi RRB con |H|·|G| <= {max_product}")
    return catalog


def bijective_catalog(max_order: int = 6, bound: Optional[int] = None) -> List[RRBGroup]:
    """RRB groups with bijective R and |H| = |G| <= max_order, trivial groups skipped"""
    bound = bound or get_config().operator_search_bound
    found: List[RRBGroup] = []
    groups = [g for g in small_groups(max_order) if 1 < g.order <= bound]
    for H in groups:
        for G in groups:
            if H.order != G.order:
                continue
            found.extend(r for r in _operators(H, G, bound) if r.is_bijective)
    logger.debug(f"📊 Catalogo biiettivo: {len(found)} gruppi fino all'ordine {max_order}")
    return found
