"""
rotabaxter - Relative Rota-Baxter groups, their cohomology and covers
=====================================================================

Finite groups as Cayley tables, relative Rota-Baxter groups (H, G, phi, R),
their induced skew braces and Yang-Baxter maps, second cohomology with
trivial coefficients, Schur multipliers and covers, and isoclinism.
"""
from .braces import SkewBrace, induced_brace, verify_brace_isoclinism, verify_ybe, ybe_map
from .cohomology import (
    Cocycle4,
    TrivialRRBModule,
    coefficient_module,
    h2_group,
    h2_rrb,
    h2_slb,
    is_rrb_cocycle,
    product_module,
)
from .comparison import in_kernel_pi1, in_kernel_pi2, pi_maps, product_coeff_iso
from .config import WorkspaceConfig, get_config, load_config, set_config
from .errors import AlgebraError
from .extensions import ExtensionData, extension_from_cocycle
from .groups import FiniteGroup, GroupHom, Subgroup, build_group, enumerate_homs
from .isoclinism import are_isoclinic, are_weakly_isoclinic, omega_tables
from .library import bijective_catalog, rrb_catalog, small_groups
from .linalg import FinAbPresentation, smith_normal_form, solve_mod
from .rrb import RRBGroup, RRBHom, iota, rrb_center, rrb_commutator, rrb_quotient, verify_rrb
from .schur import build_schur_cover, is_schur_cover, schur_multiplier
from .sequences import five_term_exactness, inf_res_tra, module_homs

__version__ = "0.3.0"

__all__ = [
    "AlgebraError",
    "Cocycle4",
    "ExtensionData",
    "FinAbPresentation",
    "FiniteGroup",
    "GroupHom",
    "RRBGroup",
    "RRBHom",
    "SkewBrace",
    "Subgroup",
    "TrivialRRBModule",
    "WorkspaceConfig",
    "are_isoclinic",
    "are_weakly_isoclinic",
    "bijective_catalog",
    "build_group",
    "build_schur_cover",
    "coefficient_module",
    "enumerate_homs",
    "extension_from_cocycle",
    "five_term_exactness",
    "get_config",
    "h2_group",
    "h2_rrb",
    "h2_slb",
    "in_kernel_pi1",
    "in_kernel_pi2",
    "induced_brace",
    "inf_res_tra",
    "iota",
    "is_rrb_cocycle",
    "is_schur_cover",
    "load_config",
    "module_homs",
    "omega_tables",
    "pi_maps",
    "product_coeff_iso",
    "product_module",
    "rrb_catalog",
    "rrb_center",
    "rrb_commutator",
    "rrb_quotient",
    "schur_multiplier",
    "set_config",
    "small_groups",
    "smith_normal_form",
    "solve_mod",
    "verify_brace_isoclinism",
    "verify_rrb",
    "verify_ybe",
    "ybe_map",
]
