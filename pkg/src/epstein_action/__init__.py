"""Schwarzian action of circle diffeomorphisms and the geometry of Epstein curves."""

from .observables import (DecoratedPoint, IdealTriangulation, bilocal, decorate, farey_triangulation,
                      lambda_observable, observables_from_diffeo, reconstruct_from_observables,
                      renormalized_length, renormalized_length_formula)
from .boundary import (TWO_PI, BoundaryMetric, CircleDiffeo, QuadratureGrid, diffeo_from_metric,
                       nfold_cover, pushforward_metric, random_fourier_diffeo)
from .descriptors import Scenario, load_descriptor, load_scenario
from .distortion import (AnalyticCircleMap, area_distortion, area_distortion_rate, distortion_integral,
                         distortion_limit)
from .epstein import (EpsteinCurve, dual_quantities, epstein_curve, epstein_curve_of_cover, excess_limit,
                      find_non_immersed, isoperimetric_excess, isoperimetric_profile, scaling_laws_check)
from .errors import *  # noqa: F401,F403
from .hyperbolic import Horocycle, MoebiusDisk, circulation, hyperbolic_distance
from .piecewise import (PiecewiseMoebiusDiffeo, build_piecewise, completed_epstein, distributional_action,
                        scaled_completed_epstein)
from .schwarzian import (action_direct, action_inverse_form, action_kstar_form, action_nfold, all_routes,
                         schwarzian_on_circle)

__version__ = "0.1.0"
