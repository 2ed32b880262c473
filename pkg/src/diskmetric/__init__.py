"""Direction-integrated metric on the open unit disk.

``D(p, q)`` integrates ``|f(p . u) - f(q . u)|`` over unit directions ``u``
with ``f(t) = t / (1 - |t|)``.  The package evaluates it in closed form and
by adaptive quadrature, follows its geodesics to the boundary circle, and
compares it with the hyperbolic and Hilbert metrics.
"""

from .comparison import (
    NOT_ISOMETRIC,
    UNIT_DISK,
    Ellipse,
    HyperbolicModel,
    Polygon,
    d_metric_height,
    hilbert_distance,
    hyperbolic_height,
    kappa_obstruction,
    poincare_distance,
)
from .exceptions import DiskMetricError, DomainError, NonConvergence
from .geodesics import (
    BoundaryPoint,
    Chord,
    GeodesicRay,
    are_asymptotic,
    chord_through,
    d_length_along,
    divergence_profile_chord,
    divergence_profile_ray,
    hausdorff_distance_rays,
    point_at_d_length,
    ray_gap_dtheta,
    ray_gap_profile,
)
from .metric import (
    ORIGIN,
    STANDARD,
    DiskPoint,
    Generator,
    directional_distance,
    distance,
    distance_closed_form,
    distance_numeric,
    power_generator,
    validate_generator,
)
from .quadrature import IntegrandSpec, QuadratureResult, integrate

__version__ = "0.1.0"
