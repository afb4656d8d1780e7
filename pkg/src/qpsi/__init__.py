"""Bilateral basic hypergeometric series and Jackson integrals in binary64."""

from .errors import (ConvergenceError, DivisionError, DomainError, PoleError, QPsiError,
                     QuadratureError)
from .policy import DEFAULT_POLICY, SeriesValue, SumPolicy
from .qcore import log_gamma_real, qpoch_fin, qpoch_inf, qpoch_multi, theta
from .series import PsiParams, VWP6Params, product_1psi1, sum_rpsir, vwp6_lhs, vwp6_rhs
from .jackson1d import (AskeyParams, BC1Params, askey_I_product, askey_I_sum, bc1_J_product,
                        bc1_J_sum, bc1_shift_residual, j6phi5_product, jackson_bilateral,
                        jackson_unilateral, nabla_residual, q_beta, recurrence_residual_I)
from .multidim import (ATypeParams, BCTypeParams, aomoto_product, atype_sum, bctype_sum,
                       mg_product)
from .classical import (DAParams, SelbergParams, beta_integral, da_product, selberg_product)

__version__ = "0.1.0"
