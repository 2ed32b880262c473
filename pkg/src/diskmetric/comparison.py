"""Hyperbolic and Hilbert metrics, and the height obstruction to an isometry.

The disk metric is compared against the Poincare-disk metrics ``d_kappa``
through the heights of right isosceles triangles.  A distance-preserving map
fixing the origin would send the height of the ideal triangle with vertices
``O, (1, 0), (0, 1)`` to the hyperbolic height ``log(1 + sqrt 2)``, which
fixes the scale ``kappa``; the finite triangle with legs of Euclidean length
``sqrt(2)/2`` then demands a different scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .exceptions import DegenerateBoundary, DomainError, OutsideDomain
from .metric import ORIGIN, PointLike, as_point, distance_closed_form, rotate

SQRT2 = math.sqrt(2.0)
HALF_SQRT2 = 0.5 * SQRT2
IDEAL_HEIGHT = math.log1p(SQRT2)
NOT_ISOMETRIC = "not isometric to any H²₋κ²"
INTERSECTION_RESIDUAL = 1e-9


# --------------------------------------------------------------------------
# Poincare disk
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperbolicModel:
    """Poincare disk with every length multiplied by ``kappa``."""

    kappa: float = 1.0

    def __post_init__(self):
        if not (self.kappa > 0 and math.isfinite(self.kappa)):
            raise DomainError("kappa must be a positive finite number")

    def distance(self, p: PointLike, q: PointLike) -> float:
        return poincare_distance(self, p, q)


def poincare_distance(model: HyperbolicModel, p: PointLike, q: PointLike) -> float:
    p, q = as_point(p), as_point(q)
    if p == q:
        return 0.0
    gap = math.hypot(p.x - q.x, p.y - q.y)
    conformal = (1.0 - p.norm ** 2) * (1.0 - q.norm ** 2)
    return model.kappa * 2.0 * math.atanh(gap / math.sqrt(gap * gap + conformal))


def ideal_triangle_foot() -> tuple[float, float]:
    """Foot of the height from ``O`` in the ideal triangle ``O, (1, 0), (0, 1)``.

    The hypotenuse is the circle of radius 1 centred at ``(1, 1)``.
    """
    c = 1.0 - HALF_SQRT2
    return c, c


def hyperbolic_height(b: float) -> float:
    """Height of the right isosceles triangle of leg ``b`` in the curvature -1 plane.

    ``b = math.inf`` selects the ideal triangle and returns ``log(1 + sqrt 2)``
    exactly.
    """
    if b == math.inf:
        return IDEAL_HEIGHT
    if not (b >= 0):
        raise DomainError("leg length must be non-negative")
    # cos(pi/4) = tanh(h) / tanh(b)
    return math.atanh(HALF_SQRT2 * math.tanh(b))


def d_metric_height(x: float) -> float:
    """Disk-metric height of the right triangle with vertices ``O, (x, 0), (0, x)``."""
    if not (0.0 <= x <= 1.0):
        raise DomainError("x must lie in [0, 1]")
    return distance_closed_form(ORIGIN, (HALF_SQRT2 * x, 0.0))


@dataclass(frozen=True)
class ObstructionReport:
    kappa0: float
    rho: float
    kappa0_exceeds_3: bool
    rho_below_3: bool
    ideal_height: float
    d_height_ideal: float
    d_height_half: float
    hyperbolic_height_of_leg: float
    verdict: str

    @property
    def consistent(self) -> bool:
        return self.verdict != NOT_ISOMETRIC


def kappa_obstruction() -> ObstructionReport:
    """Scale forced by the ideal triangle versus the scale forced by a finite one."""
    d_ideal = d_metric_height(1.0)
    d_half = d_metric_height(HALF_SQRT2)
    h_leg = hyperbolic_height(d_ideal)
    kappa0 = d_ideal / IDEAL_HEIGHT
    rho = d_half / h_leg
    exceeds, below = kappa0 > 3.0, rho < 3.0
    verdict = NOT_ISOMETRIC if (exceeds and below) else "inconclusive"
    return ObstructionReport(kappa0, rho, exceeds, below, IDEAL_HEIGHT, d_ideal, d_half, h_leg, verdict)


# --------------------------------------------------------------------------
# Hilbert metric on convex domains
# --------------------------------------------------------------------------

def _stable_quadratic(a, b, c):
    """Real roots of ``a t^2 + b t + c`` in increasing order, or ``None``."""
    disc = b * b - 4.0 * a * c
    if disc < 0:
        return None
    root = math.sqrt(disc)
    big = -0.5 * (b + math.copysign(root, b))
    if big == 0.0:
        return 0.0, 0.0
    t1, t2 = big / a, c / big
    return min(t1, t2), max(t1, t2)


@dataclass(frozen=True)
class Ellipse:
    """Axis-aligned ellipse with semi-axes ``a`` and ``b``."""

    a: float = 1.0
    b: float = 1.0
    center: tuple = (0.0, 0.0)

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise DomainError("semi-axes must be positive")
        object.__setattr__(self, "center", (float(self.center[0]), float(self.center[1])))

    @property
    def is_unit_circle(self) -> bool:
        return self.a == 1.0 and self.b == 1.0 and self.center == (0.0, 0.0)

    def _level(self, x, y):
        cx, cy = self.center
        return ((x - cx) / self.a) ** 2 + ((y - cy) / self.b) ** 2

    def contains(self, p) -> bool:
        return self._level(p[0], p[1]) < 1.0

    def line_hits(self, p, d) -> tuple[float, float]:
        cx, cy = self.center
        ux, uy = (p[0] - cx) / self.a, (p[1] - cy) / self.b
        vx, vy = d[0] / self.a, d[1] / self.b
        roots = _stable_quadratic(vx * vx + vy * vy, 2.0 * (ux * vx + uy * vy), ux * ux + uy * uy - 1.0)
        if roots is None:
            raise DegenerateBoundary("line misses the ellipse")
        for t in roots:
            if abs(self._level(p[0] + t * d[0], p[1] + t * d[1]) - 1.0) > INTERSECTION_RESIDUAL:
                raise DegenerateBoundary("ellipse intersection residual above tolerance")
        return roots

    def bounding_box(self):
        cx, cy = self.center
        return cx - self.a, cx + self.a, cy - self.b, cy + self.b


@dataclass(frozen=True)
class Polygon:
    """Strictly convex polygon with counterclockwise vertices."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise DomainError("a polygon needs at least three vertices")
        n = len(verts)
        for i in range(n):
            (x0, y0), (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            if (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1) <= 0:
                raise DomainError("vertices must be strictly convex and counterclockwise")
        object.__setattr__(self, "vertices", verts)

    @property
    def is_unit_circle(self) -> bool:
        return False

    def _edges(self):
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def contains(self, p) -> bool:
        return all((x1 - x0) * (p[1] - y0) - (y1 - y0) * (p[0] - x0) > 0 for (x0, y0), (x1, y1) in self._edges())

    def line_hits(self, p, d) -> tuple[float, float]:
        hits = []
        for (x0, y0), (x1, y1) in self._edges():
            ex, ey = x1 - x0, y1 - y0
            denom = d[0] * ey - d[1] * ex
            if denom == 0.0:
                continue
            wx, wy = x0 - p[0], y0 - p[1]
            t = (wx * ey - wy * ex) / denom
            s = (wx * d[1] - wy * d[0]) / denom
            if -INTERSECTION_RESIDUAL <= s <= 1.0 + INTERSECTION_RESIDUAL:
                hits.append(t)
        if len(hits) < 2:
            raise DegenerateBoundary("line does not cross the polygon boundary twice")
        return min(hits), max(hits)

    def bounding_box(self):
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return min(xs), max(xs), min(ys), max(ys)


ConvexDomain = Union[Ellipse, Polygon]
UNIT_DISK = Ellipse()


def hilbert_distance(domain: ConvexDomain, p: Sequence[float], q: Sequence[float]) -> float:
    """Half the log cross-ratio of ``p, q`` with the chord's boundary points.

    With the line through ``p`` (at 0) and ``q`` (at arc length ``L``) meeting
    the boundary at ``s_a < 0`` and ``s_b > L`` the value is
    ``(log1p(L / -s_a) + log1p(L / (s_b - L))) / 2``.
    """
    p = (float(p[0]), float(p[1]))
    q = (float(q[0]), float(q[1]))
    for pt in (p, q):
        if not domain.contains(pt):
            raise OutsideDomain(f"{pt!r} is not inside the domain")
    if p == q:
        return 0.0
    gap = math.hypot(q[0] - p[0], q[1] - p[1])
    # unit direction keeps the intersection solve well scaled for tiny gaps
    u = ((q[0] - p[0]) / gap, (q[1] - p[1]) / gap)
    s_a, s_b = domain.line_hits(p, u)
    if not (s_a < 0.0 and s_b > gap):
        raise DegenerateBoundary("boundary hits do not bracket the segment")
    return 0.5 * (math.log1p(gap / -s_a) + math.log1p(gap / (s_b - gap)))


def _sample_inside(domain: ConvexDomain, rng: np.random.Generator, shrink: float = 0.95):
    x0, x1, y0, y1 = domain.bounding_box()
    while True:
        p = (rng.uniform(x0, x1), rng.uniform(y0, y1))
        c = ((x0 + x1) / 2, (y0 + y1) / 2)
        # Stay away from the boundary so intersections remain well posed.
        pulled = (c[0] + (p[0] - c[0]) / shrink, c[1] + (p[1] - c[1]) / shrink)
        if domain.contains(pulled):
            return p


@dataclass
class PropertyReport:
    samples: int
    min_triangle_slack: float
    max_additivity_error: float
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def hilbert_metric_properties(domain: ConvexDomain, samples: int = 100, seed: int = 0) -> PropertyReport:
    """Sampled metric checks for ``d_H``, plus the radial comparison on the unit circle.

    On the unit circle ``d_H`` is half the Poincare distance, and the ratio
    of the disk metric to ``d_H`` along a radius differs between ``r = 0.5``
    and ``r = sqrt(2)/2``, so no single rescaling of ``d_H`` reproduces the
    disk metric.
    """
    if samples < 10:
        raise DomainError("need at least 10 samples")
    rng = np.random.default_rng(seed)
    min_slack = math.inf
    max_add = 0.0
    for _ in range(samples):
        a, b, c = (_sample_inside(domain, rng) for _ in range(3))
        slack = hilbert_distance(domain, a, b) + hilbert_distance(domain, b, c) - hilbert_distance(domain, a, c)
        min_slack = min(min_slack, slack)
        t = rng.uniform(0.05, 0.95)
        m = (a[0] + t * (c[0] - a[0]), a[1] + t * (c[1] - a[1]))
        err = abs(hilbert_distance(domain, a, m) + hilbert_distance(domain, m, c) - hilbert_distance(domain, a, c))
        max_add = max(max_add, err)
    checks = {"triangle_inequality": min_slack >= -1e-12, "chord_additivity": max_add <= 1e-9}
    report = PropertyReport(samples, min_slack, max_add, checks)

    if domain.is_unit_circle:
        hyp = HyperbolicModel(1.0)
        radial_err = max(abs(hilbert_distance(domain, (0.0, 0.0), (r, 0.0))
                             - 0.5 * hyp.distance(ORIGIN, (r, 0.0))) for r in (0.1, 0.5, 0.9))
        ratios = [distance_closed_form(ORIGIN, (r, 0.0)) / hilbert_distance(domain, (0.0, 0.0), (r, 0.0))
                  for r in (0.5, HALF_SQRT2)]
        report.checks["radial_half_poincare"] = radial_err <= 1e-12
        report.checks["no_single_scaling"] = abs(ratios[1] - ratios[0]) > 0.1
        report.details.update(radial_error=radial_err, ratios=ratios)
    return report


def hilbert_rotation_error(samples: int = 100, seed: int = 0) -> float:
    """Largest change of ``d_H`` on the unit circle under random rotations about ``O``."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        p, q = _sample_inside(UNIT_DISK, rng), _sample_inside(UNIT_DISK, rng)
        phi = rng.uniform(0, 2 * math.pi)
        rp, rq = rotate(p, phi), rotate(q, phi)
        worst = max(worst, abs(hilbert_distance(UNIT_DISK, p, q) - hilbert_distance(UNIT_DISK, tuple(rp), tuple(rq))))
    return worst
