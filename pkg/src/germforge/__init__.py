"""Exact invariants of function germs relative to an ideal.

Polynomial data with rational coefficients, local (at the origin) and global
standard-basis engines, tangent modules of ideal-preserving vector fields,
relative codimensions, determinacy and versality, jet-space Morse numbers,
Koszul homology, and a seeded exact deformation oracle.
"""

from .errors import GermforgeError, ParseError
from .polyring import GLOBAL_DP, LOCAL_DS, Order, Poly, Ring, format_poly, parse_poly
from .stdbasis import (
    INFINITE,
    Ideal,
    QuotientDim,
    Submodule,
    artin_rees_check,
    hilbert_samuel,
    ideal_intersection,
    ideal_quotient,
    module_intersection,
    module_syzygies,
    normal_form,
    power_ideal,
    quotient_dimension,
    relative_quotient_dimension,
    saturation,
    std_basis,
    zero_dim_radical,
)
from .tangent import (
    PrimitiveIdeal,
    VectorFieldModule,
    field_apply,
    lie_bracket,
    m_theta,
    primitive_ideal,
    tangent_ideal,
    theta_preserving,
    theta_vanishing,
)
from .invariants import (
    DdkClass,
    InvariantReport,
    Unfolding,
    build_versal_unfolding,
    classify_Ddk,
    determinacy_bound,
    extended_codim,
    invariant_report,
    make_unfolding,
    plain_codim,
    positive_codim_locus,
    tau_extended,
    validate_unfolding,
    versality_check,
)
from .jetmorse import (
    JetContext,
    LiftedGerm,
    MorseComponent,
    intersection_multiplicity,
    jet_context,
    jet_pullback,
    lift_germ,
    morse_component,
    morse_component_ideal,
    morse_number,
)
from .koszul import (
    KoszulInstance,
    homology_dimension,
    koszul_euler,
    koszul_euler_from_one,
    koszul_homology_dims,
)
from .oracle import (
    CriticalReport,
    SplittingReport,
    XorShift64,
    conservation_check,
    corrected_extended_codim,
    critical_points_outside,
    empirical_splitting,
    local_extended_codim,
    locate_rational_points,
    oracle_morse_number,
    random_deformation,
)

__all__ = [
    "GermforgeError",
    "ParseError",
    "GLOBAL_DP",
    "LOCAL_DS",
    "Order",
    "Poly",
    "Ring",
    "format_poly",
    "parse_poly",
    "INFINITE",
    "Ideal",
    "QuotientDim",
    "Submodule",
    "artin_rees_check",
    "hilbert_samuel",
    "ideal_intersection",
    "ideal_quotient",
    "module_intersection",
    "module_syzygies",
    "normal_form",
    "power_ideal",
    "quotient_dimension",
    "relative_quotient_dimension",
    "saturation",
    "std_basis",
    "zero_dim_radical",
    "PrimitiveIdeal",
    "VectorFieldModule",
    "field_apply",
    "lie_bracket",
    "m_theta",
    "primitive_ideal",
    "tangent_ideal",
    "theta_preserving",
    "theta_vanishing",
    "DdkClass",
    "InvariantReport",
    "Unfolding",
    "build_versal_unfolding",
    "classify_Ddk",
    "determinacy_bound",
    "extended_codim",
    "invariant_report",
    "make_unfolding",
    "plain_codim",
    "positive_codim_locus",
    "tau_extended",
    "validate_unfolding",
    "versality_check",
    "JetContext",
    "LiftedGerm",
    "MorseComponent",
    "intersection_multiplicity",
    "jet_context",
    "jet_pullback",
    "lift_germ",
    "morse_component",
    "morse_component_ideal",
    "morse_number",
    "KoszulInstance",
    "homology_dimension",
    "koszul_euler",
    "koszul_euler_from_one",
    "koszul_homology_dims",
    "CriticalReport",
    "SplittingReport",
    "XorShift64",
    "conservation_check",
    "corrected_extended_codim",
    "critical_points_outside",
    "empirical_splitting",
    "local_extended_codim",
    "locate_rational_points",
    "oracle_morse_number",
    "random_deformation",
]
