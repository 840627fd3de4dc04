"""Point counting on Dwork hypersurfaces with McCarthy's p-adic hypergeometric function."""
from .dwork import (
    CountReport,
    DworkInstance,
    brute_count_affine,
    conjecture_count,
    curve_count,
    projective_count,
    theorem_count,
    verify_corollary,
    verify_theorem,
)
from .field import FieldDesc, FqElem, build_field
from .gauss import PiGraded, a_sum, gauss_sum, pi_mul
from .gfunc import GSpec, ValuedZq, dwork_G, evaluate_G, g_term
from .padic import PadicApprox, ZqApprox, frac_floor, gamma_p, gamma_sweep, teichmuller

__all__ = [
    "CountReport", "DworkInstance", "FieldDesc", "FqElem", "GSpec", "PadicApprox",
    "PiGraded", "ValuedZq", "ZqApprox", "a_sum", "brute_count_affine", "build_field",
    "conjecture_count", "curve_count", "dwork_G", "evaluate_G", "frac_floor", "g_term",
    "gamma_p", "gamma_sweep", "gauss_sum", "pi_mul", "projective_count", "teichmuller",
    "theorem_count", "verify_corollary", "verify_theorem",
]
