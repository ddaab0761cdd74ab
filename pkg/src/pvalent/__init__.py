"""Numerical toolkit for the p-valent class M_p(alpha, beta).

Certify membership from coefficient inequalities, falsify it by sampling
the defining inequality on the unit disk, and build the Hadamard-product
operator from Gauss hypergeometric and generalized Bessel series.
"""

from .classify import (
    Certificate,
    ClassParams,
    ConicShape,
    Grid,
    SampleReport,
    certify_T22,
    certify_T23,
    check_T21_necessary,
    conic_boundary,
    conic_shape,
    paper_example,
    paper_example_tail,
    sample_membership,
    slack,
)
from .errors import InvariantError, NearZeroError, PreconditionError
from .operator import OperatorParams, certify_operator, hadamard_build, operator_coefficients
from .series import (
    NO_TAIL,
    EvalResult,
    MuForm,
    PowerSeries,
    TailModel,
    a_coefficients,
    differentiate,
    evaluate,
    geometric,
    hadamard,
    log_derivative_F,
    multiply,
    power,
    real_power,
    to_mu_form,
)
from .special import (
    BesselParams,
    HypergeometricParams,
    bessel_U,
    bessel_U_series,
    bessel_w,
    gamma_real,
    gauss_2f1,
    gauss_2f1_at_one,
    gauss_2f1_series,
    pochhammer,
)

__version__ = "0.1.0"
