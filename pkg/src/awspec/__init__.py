"""awspec: basic hypergeometric series, continuous q-Jacobi polynomials,
the Askey-Wilson divided-difference operator, and the spectral machinery
of its right-inverse integral operator.

Scalar series/product primitives run on a compiled core when available
(``awspec.backend.BACKEND`` reports which); everything layered on top is
pure Python + numpy.
"""
from .backend import BACKEND
from .exceptions import (DomainError, NonConvergenceError, PoleError,
                         QSeriesError)
from .qcore import (HypergeometricSpec, QContext, exp_itheta, h_product,
                    phi, qpoch, qpoch_inf, qpoch_multi, rphis, w8w7)
from .qpolys import (AWParams, ConnectionTriple, JacobiLevel, Normalization,
                     aw_norm, aw_poly, connection_down, cqjacobi,
                     cqjacobi_seq, dual_expansion, dual_expansion_aw,
                     hermite_h, kappa_aw, norm_h, weight_w)
from .awop import (CoeffVector, QuadratureRule, dq_coeffs, dq_pointwise,
                   eval_coeffvector, kernel_eval, make_rule, t_coeffs,
                   t_factor, t_quadrature, xi_factor)
from .spectral import (EigenResult, bn_explicit, bn_recurrence, eigenvalue_equation,
                       eigenfunction, eigenvalues, f_eval, markov_ratio,
                       markov_stieltjes, matrix_oracle, q_coulomb,
                       recurrence_a_coeffs, s_poly, x_nu)
from .qexp import (am_coeff, eq_exp, expansion_residual, hermite_identity_residual,
                   hermite_series, jm_quadrature)
from .framework import (LadderFamily, MonicSystem, cf_minimal_ratio,
                        large_param_limit_check, monicize, qjacobi_family,
                        shift_invariance_check, telescope_residual,
                        ultraspherical_family)

__version__ = "0.1.0"
