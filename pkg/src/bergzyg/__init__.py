"""Numerical toolkit for weighted Bergman-Zygmund spaces on the unit disc.

Radial doubling weights, admissible scale functions, Carleson-square and
pseudohyperbolic-disc masses, embedding characteristics and their boundary
sweeps, the integration operator T_g, and a scenario harness with CSV
reports.
"""

from .carleson import (CarlesonContext, characteristic, characteristic_disc,
                       embedding_lower_ratio, embedding_norm_estimate, sweep,
                       test_function)
from .config import DEFAULT, ToolConfig
from .errors import (ConfigError, DegenerateInputError, EnvelopeError,
                     IntegrabilityError, NotInClassError, ParameterError,
                     QuadratureError, ToolkitError, TruncationError)
from .funcspace import (AnalyticFunction, evaluate, growth_check, integral_mean,
                        quasi_triangle_check, quasinorm)
from .geometry import PseudoDisc, pseudo_disc, pseudo_distance, square_contains
from .measures import AreaComponent, DiscMeasure, mass_on_disc, mass_on_square
from .operators import (OperatorContext, apply_tg, cauchy_symbol,
                        lacunary_polynomial, littlewood_paley_ratio, log_symbol,
                        tg_characteristic, tg_characteristic_disc, tg_sweep)
from .scale import (ScaleFunction, check_essential_monotone,
                    check_square_doubling, growth_envelope,
                    ratio_properties_check, theta_monotone_check)
from .sweeping import SweepEntry, SweepReport
from .weights import (DoublingReport, RadialWeight, check_dcheck, check_dhat,
                      kernel_integral_check, power_shift, psi_tail_compare,
                      zygmund_transform)

__version__ = "0.1.0"
