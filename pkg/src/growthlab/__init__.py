"""Exact product sets, word balls and translate covers in finitely generated
virtually nilpotent groups."""

from .asymptotics import (
    ApproxProfile,
    InverseBoundCert,
    PaddingCert,
    SemigroupCert,
    Status,
    approx_profile,
    criterion_cover,
    inner_ball_check,
    inverse_bound,
    padding_cert,
    positive_length,
    semigroup_certificate,
)
from .counterexample import find_witness, heis_product, member_Ah, slope_inequality
from .covering import CoverResult, ExactLimit, min_cover, polynomial_growth_cover, ruzsa_cover, verify_cover
from .fmsets import SemigroupDesc, Verdict, fm_power_check, lift_cover_fm, normalizes, thicken_check, truncate_semigroup
from .functorial import FiniteKernel, Hom, lift_cover, push_cover
from .groups import (
    HEISENBERG,
    CyclicFinite,
    Element,
    FiniteTable,
    FreeAbelian,
    GroupSpec,
    Heisenberg3,
    ProductWithFinite,
    Unitriangular,
    identity,
    inv,
    mul,
)
from .products import (
    BudgetExceeded,
    ElementSet,
    GrowthEstimate,
    GrowthRecord,
    ball,
    bass_guivarch_degree,
    estimate_degree,
    growth_sequence,
    power,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxProfile",
    "BudgetExceeded",
    "CoverResult",
    "CyclicFinite",
    "Element",
    "ElementSet",
    "ExactLimit",
    "FiniteKernel",
    "FiniteTable",
    "FreeAbelian",
    "GroupSpec",
    "GrowthEstimate",
    "GrowthRecord",
    "HEISENBERG",
    "Heisenberg3",
    "Hom",
    "InverseBoundCert",
    "PaddingCert",
    "ProductWithFinite",
    "SemigroupCert",
    "SemigroupDesc",
    "Status",
    "Unitriangular",
    "Verdict",
    "approx_profile",
    "ball",
    "bass_guivarch_degree",
    "criterion_cover",
    "estimate_degree",
    "find_witness",
    "fm_power_check",
    "growth_sequence",
    "heis_product",
    "identity",
    "inner_ball_check",
    "inv",
    "inverse_bound",
    "lift_cover",
    "lift_cover_fm",
    "member_Ah",
    "min_cover",
    "mul",
    "normalizes",
    "padding_cert",
    "polynomial_growth_cover",
    "positive_length",
    "power",
    "push_cover",
    "ruzsa_cover",
    "semigroup_certificate",
    "slope_inequality",
    "thicken_check",
    "truncate_semigroup",
    "verify_cover",
]
