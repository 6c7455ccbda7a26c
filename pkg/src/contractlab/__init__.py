"""Numerical laboratory for contractive inequalities between Dirichlet,
Hardy, and Bergman spaces, with extensions to the polytorus, Dirichlet
series, and the analytic projection on the circle."""

from .coeff import (DivisorSequence, WeightSequence, binom_coeff, binom_coeffs,
                    ratio_Ak, ratio_Ak_seq, zeta_power_coeffs)
from .dirichlet import (BohrLift, DirichletPolynomial, besicovitch_probe,
                        bohr_lift, dirichlet_series_rhs, hardy_norm_torus,
                        helson_check, verify_coro_dirichlet)
from .extremal import (ExtremalResult, InclusionVerdict, OptimizerConfig,
                       contractive_inclusion_gate, estimate_cpn,
                       key_property_chain, verify_kulikov)
from .funcspace import (AnalyticSampler, MultiPolynomial, Polynomial,
                        TrigPolynomial, kernel_sampler, riesz_test_function)
from .norms import (NormReport, QuadratureSpec, bergman2_coeff_norm,
                    bergman_norm, dirichlet_norm, hardy_norm,
                    hardy_stein_residual, mean_p)
from .riesz import (analyze, contraction_check, epsilon_scan, hv_bound_probe,
                    lp_circle_norm, project)

__version__ = "0.1.0"
