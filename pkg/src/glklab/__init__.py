"""Numerical laboratory for the Glaisher-Kinkelin constant and the Binet function."""

from .quadrature import (IntegralEstimate, Integrand, QuadratureConfig,
                         QuadratureError, Status, integrate_finite,
                         integrate_semi_infinite)
from .specialfn import (CONSTANTS, ConstantsTable, PrecisionWarning,
                        arctan_chain, binet_kernel, digamma, dirichlet_beta_2,
                        lemniscate_constant, lerch_sum_check, lerch_target,
                        log_gamma, stieltjes_gamma)
from .binet import (MuMethod, NuVariant, inner_arctan_integral, mu,
                    mu_derivative_identity_residual, nu)
from .glaisher import (ComparisonReport, RepresentationId, RepresentationResult,
                       barnes_g_special, barnes_limit_log_a, eval_representation,
                       prime_product_log_a, reference_log_a, verify_all)

__version__ = "0.1.0"
