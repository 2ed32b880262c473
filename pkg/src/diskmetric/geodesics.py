"""Chords, rays, ideal points and boundary behaviour of the disk metric.

Geodesics of the metric are Euclidean chords, so most constructions here are
plain plane geometry.  The metric only enters through distance evaluation:
lengths along chords, divergence of angular integrals as a point moves to the
unit circle, and Hausdorff distances between ray images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .exceptions import DegenerateInput, DomainError, NonConvergence, OffChord
from .metric import (
    TWO_PI,
    DiskPoint,
    PointLike,
    as_point,
    distance_closed_form,
    kink_angles,
)
from .quadrature import IntegrandSpec, QuadratureResult, integrate_excluding

OFF_CHORD_TOL = 1e-10
DEFAULT_CUTOFF = 1.0 - 1e-6


def canonical_angle(angle: float) -> float:
    a = float(angle) % TWO_PI
    return 0.0 if a >= TWO_PI else a


@dataclass(frozen=True)
class BoundaryPoint:
    """Ideal point ``(cos angle, sin angle)`` on the unit circle."""

    angle: float

    def __post_init__(self):
        if not math.isfinite(float(self.angle)):
            raise DomainError("boundary angle must be finite")
        object.__setattr__(self, "angle", canonical_angle(self.angle))

    @property
    def xy(self) -> tuple[float, float]:
        return math.cos(self.angle), math.sin(self.angle)


def _unit_circle_exit(origin: tuple[float, float], direction: tuple[float, float]) -> float:
    """Positive root ``s`` of ``|origin + s * direction| = 1`` for a unit ``direction``.

    ``origin`` is inside the disk so the constant term is negative and the
    roots have opposite signs; the branch is picked to avoid cancellation.
    """
    ox, oy = origin
    dx, dy = direction
    b = ox * dx + oy * dy
    c = (ox * ox + oy * oy) - 1.0
    root = math.sqrt(b * b - c)
    if b > 0:
        return -c / (b + root)
    return root - b


def _chord_roots(origin, direction) -> tuple[float, float]:
    """Both roots (negative, positive) of the unit-circle quadratic, stable form."""
    ox, oy = origin
    dx, dy = direction
    b = ox * dx + oy * dy
    c = (ox * ox + oy * oy) - 1.0
    root = math.sqrt(b * b - c)
    big = -(b + math.copysign(root, b))
    small = c / big
    return min(big, small), max(big, small)


@dataclass(frozen=True)
class Chord:
    """A Euclidean chord of the unit circle, i.e. a complete geodesic line.

    ``point(t)`` for ``t`` in ``(0, 1)`` walks from ``start`` to ``end``.
    """

    start: BoundaryPoint
    end: BoundaryPoint

    def __post_init__(self):
        if self.start.angle == self.end.angle:
            raise DegenerateInput("chord endpoints must be distinct")

    def point(self, t: float) -> DiskPoint:
        if not (0.0 < t < 1.0):
            raise DomainError("chord parameter must lie in (0, 1)")
        (x0, y0), (x1, y1) = self.start.xy, self.end.xy
        return DiskPoint(x0 + t * (x1 - x0), y0 + t * (y1 - y0))

    def transverse_deviation(self, p: PointLike) -> float:
        p = as_point(p)
        (x0, y0), (x1, y1) = self.start.xy, self.end.xy
        ex, ey = x1 - x0, y1 - y0
        return abs(ex * (p.y - y0) - ey * (p.x - x0)) / math.hypot(ex, ey)

    def contains(self, p: PointLike, tol: float = OFF_CHORD_TOL) -> bool:
        return self.transverse_deviation(p) <= tol


def chord_through(p: PointLike, q: PointLike) -> Chord:
    """The chord containing ``p`` and ``q``, oriented from behind ``p`` to beyond ``q``."""
    p, q = as_point(p), as_point(q)
    if p == q:
        raise DegenerateInput("a chord needs two distinct points")
    length = math.hypot(q.x - p.x, q.y - p.y)
    d = ((q.x - p.x) / length, (q.y - p.y) / length)
    s_back, s_fwd = _chord_roots((p.x, p.y), d)
    start = (p.x + s_back * d[0], p.y + s_back * d[1])
    end = (p.x + s_fwd * d[0], p.y + s_fwd * d[1])
    return Chord(BoundaryPoint(math.atan2(start[1], start[0])),
                 BoundaryPoint(math.atan2(end[1], end[0])))


def d_length_along(chord: Chord, a: PointLike, b: PointLike) -> float:
    """Metric length of the chord segment between ``a`` and ``b``."""
    a, b = as_point(a), as_point(b)
    for pt in (a, b):
        dev = chord.transverse_deviation(pt)
        if dev > OFF_CHORD_TOL:
            raise OffChord(f"({pt.x!r}, {pt.y!r}) is {dev:.3e} away from the chord")
    return distance_closed_form(a, b)


@dataclass(frozen=True)
class GeodesicRay:
    """Euclidean ray from ``origin`` to the ideal point ``ideal_end``.

    ``point(t)`` uses the Euclidean distance ``t`` travelled from the origin,
    ``0 <= t < t_max``.
    """

    origin: DiskPoint
    ideal_end: BoundaryPoint

    def __post_init__(self):
        object.__setattr__(self, "origin", as_point(self.origin))
        if not isinstance(self.ideal_end, BoundaryPoint):
            object.__setattr__(self, "ideal_end", BoundaryPoint(self.ideal_end))

    @classmethod
    def from_direction(cls, origin: PointLike, angle: float) -> "GeodesicRay":
        origin = as_point(origin)
        d = (math.cos(angle), math.sin(angle))
        s = _unit_circle_exit((origin.x, origin.y), d)
        end = (origin.x + s * d[0], origin.y + s * d[1])
        return cls(origin, BoundaryPoint(math.atan2(end[1], end[0])))

    @property
    def t_max(self) -> float:
        ex, ey = self.ideal_end.xy
        return math.hypot(ex - self.origin.x, ey - self.origin.y)

    @property
    def direction(self) -> tuple[float, float]:
        ex, ey = self.ideal_end.xy
        n = self.t_max
        return (ex - self.origin.x) / n, (ey - self.origin.y) / n

    def point(self, t: float) -> DiskPoint:
        if not (0.0 <= t < self.t_max):
            raise DomainError(f"ray parameter {t!r} outside [0, {self.t_max!r})")
        dx, dy = self.direction
        return DiskPoint(self.origin.x + t * dx, self.origin.y + t * dy)

    # Depth is the gap 1 - <p, xi> between a ray point and its ideal end;
    # it decreases linearly in t and vanishes at the ideal point.

    def _depth_rate(self) -> float:
        ex, ey = self.ideal_end.xy
        dx, dy = self.direction
        return dx * ex + dy * ey

    def origin_depth(self) -> float:
        ex, ey = self.ideal_end.xy
        return 1.0 - (self.origin.x * ex + self.origin.y * ey)

    def point_at_depth(self, depth: float) -> DiskPoint:
        t = (self.origin_depth() - depth) / self._depth_rate()
        if t <= 0.0:
            return self.origin
        return self.point(t)


def point_at_d_length(ray: GeodesicRay, s: float, tol: float = 1e-10, max_iter: int = 200) -> DiskPoint:
    """The point of ``ray`` at metric distance ``s`` from its origin.

    The metric length grows strictly and without bound along the ray, so a
    bracketing root finder in the log of the remaining Euclidean length
    ``t_max - t`` locates it.
    """
    if s < 0:
        raise DomainError("s must be non-negative")
    if s == 0:
        return ray.origin
    t_max = ray.t_max
    o = ray.origin

    def point(u):
        return ray.point(max(t_max - math.exp(u), 0.0))

    def g(u):
        return distance_closed_form(o, point(u)) - s

    u_hi = math.log(t_max)
    u_lo = u_hi
    while True:
        u_lo -= math.log(10.0)
        try:
            if g(u_lo) >= 0:
                break
        except DomainError:
            raise NonConvergence(f"distance {s!r} is not reached inside the admissible disk") from None
    try:
        u = brentq(g, u_lo, u_hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=max_iter)
    except RuntimeError as exc:
        raise NonConvergence(str(exc)) from exc
    p = point(u)
    if abs(distance_closed_form(o, p) - s) > tol:
        raise NonConvergence(f"could not reach distance {s!r} within {tol!r}")
    return p


# --------------------------------------------------------------------------
# divergence at the boundary
# --------------------------------------------------------------------------

def _one_minus_abs_cos(u):
    """``1 - |cos u|`` without cancellation near ``cos u = +-1``."""
    half = 0.5 * u
    return np.where(np.cos(u) >= 0, 2.0 * np.sin(half) ** 2, 2.0 * np.cos(half) ** 2)


def _f_of_cos(u):
    """Standard generator applied to ``cos u`` (signed, stable near the poles)."""
    return np.cos(u) / _one_minus_abs_cos(u)


def _periodic_windows(centers, epsilon):
    windows = []
    for c in centers:
        c = c % math.pi
        for shift in (-math.pi, 0.0, math.pi):
            windows.append((c + shift - epsilon, c + shift + epsilon))
    return windows


def _check_epsilon(epsilon):
    if not (0.0 < epsilon < 0.25 * math.pi):
        raise DomainError("epsilon must lie in (0, pi/4)")


def divergence_profile_ray(xi: BoundaryPoint, epsilon: float, abs_tol: float = 1e-10,
                           rel_tol: float = 1e-11) -> QuadratureResult:
    """Angular integral of the origin-to-``xi`` gap with an ``epsilon`` window cut out.

    The integrand ``1 / (1 - |cos(theta - angle)|) - 1`` is singular where the
    direction is parallel to ``xi``; the window (taken modulo ``pi``) around
    that angle is excluded.
    """
    _check_epsilon(epsilon)
    if not isinstance(xi, BoundaryPoint):
        xi = BoundaryPoint(xi)
    a = xi.angle

    def integrand(theta):
        return 1.0 / _one_minus_abs_cos(theta - a) - 1.0

    spec = IntegrandSpec(integrand, kink_angles([xi.xy]))
    return integrate_excluding(spec, 0.0, math.pi, _periodic_windows([a], epsilon), abs_tol, rel_tol)


def divergence_profile_chord(xi: BoundaryPoint, eta: BoundaryPoint, epsilon: float,
                             abs_tol: float = 1e-10, rel_tol: float = 1e-11) -> QuadratureResult:
    """Angular integral of the gap between two ideal points, singular angles excised."""
    _check_epsilon(epsilon)
    if not isinstance(xi, BoundaryPoint):
        xi = BoundaryPoint(xi)
    if not isinstance(eta, BoundaryPoint):
        eta = BoundaryPoint(eta)
    if xi.angle == eta.angle:
        raise DegenerateInput("boundary points must be distinct")
    a, b = xi.angle, eta.angle

    def integrand(theta):
        return np.abs(_f_of_cos(theta - a) - _f_of_cos(theta - b))

    (xa, ya), (xb, yb) = xi.xy, eta.xy
    spec = IntegrandSpec(integrand, kink_angles([(xa, ya), (xb, yb), (xa - xb, ya - yb)]))
    return integrate_excluding(spec, 0.0, math.pi, _periodic_windows([a, b], epsilon), abs_tol, rel_tol)


def ray_profile_exact(epsilon: float) -> float:
    """Closed form of :func:`divergence_profile_ray`: ``2 cot(eps/2) - 2 - pi + 2 eps``."""
    return 2.0 / math.tan(0.5 * epsilon) - 2.0 - math.pi + 2.0 * epsilon


# --------------------------------------------------------------------------
# rays sharing the ideal point (1, 0)
# --------------------------------------------------------------------------

def _ray_gap_frame(lam: float, x: float):
    if not (0.0 < x < 1.0):
        raise DomainError("x must lie in (0, 1)")
    if lam < 1.0:
        raise DomainError("lambda must be at least 1")
    height = lam * (1.0 - x)
    if x * x + height * height >= 1.0:
        raise DomainError("A = (x, lambda (1 - x)) lies outside the disk")
    r = math.hypot(x, height)
    return height, math.atan2(height, x), x / r


def ray_gap_dtheta(lam: float, x: float, theta: float) -> float:
    """Directional gap between ``A = (x, lam (1 - x))`` and ``B = (x, 0)``.

    Three branches by the signs of the projections: both non-negative on
    ``[0, pi/2]``, opposite on ``[pi/2, pi/2 + theta_x]`` and both
    non-positive on ``[pi/2 + theta_x, pi]``, with ``theta_x`` the polar
    angle of ``A``.
    """
    if not (0.0 <= theta <= math.pi):
        raise DomainError("theta must lie in [0, pi]")
    height, theta_x, _ = _ray_gap_frame(lam, x)
    c, s = math.cos(theta), math.sin(theta)
    a_proj = x * c + height * s
    b_proj = x * c
    if theta <= 0.5 * math.pi:
        return 1.0 / (1.0 - a_proj) - 1.0 / (1.0 - b_proj)
    if theta <= 0.5 * math.pi + theta_x:
        # f(|A|) + f(|B|); each term carries a -1.
        return 1.0 / (1.0 - a_proj) + 1.0 / (1.0 + b_proj) - 2.0
    return -1.0 / (1.0 + a_proj) + 1.0 / (1.0 + b_proj)


def ray_gap_simplified(lam: float, x: float, theta: float) -> float:
    """Single-fraction form of the gap on ``[0, pi/2]``."""
    height, _, _ = _ray_gap_frame(lam, x)
    c, s = math.cos(theta), math.sin(theta)
    return height * s / ((1.0 - x * c) * (1.0 - x * c - height * s))


def ray_gap_phi(lam: float, x: float, theta: float) -> float:
    height, _, _ = _ray_gap_frame(lam, x)
    return math.sin(theta) / (1.0 - x * math.cos(theta) - height * math.sin(theta))


def ray_gap_profile(lam: float, x: float) -> tuple[float, float]:
    """``(max Phi, argmax)`` where ``Phi' = 0`` exactly at ``cos theta = x``."""
    _ray_gap_frame(lam, x)
    omega_x = math.acos(x)
    return ray_gap_phi(lam, x, omega_x), omega_x


# --------------------------------------------------------------------------
# Hausdorff distance of ray images
# --------------------------------------------------------------------------

def are_asymptotic(r1: GeodesicRay, r2: GeodesicRay) -> bool:
    """Rays are asymptotic exactly when they share their ideal point."""
    return r1.ideal_end.angle == r2.ideal_end.angle


class _TruncatedRay:
    """A ray cut where its depth reaches ``1 - cutoff``, sampled in log depth.

    ``v`` in ``[0, 1]`` maps to depth ``d0 * (dc / d0) ** v``, which puts
    samples evenly on the scale at which the metric changes near the circle.
    """

    def __init__(self, ray: GeodesicRay, cutoff: float):
        self.ray = ray
        self.d0 = ray.origin_depth()
        self.dc = 1.0 - cutoff
        if not (0.0 < self.dc < self.d0):
            raise DomainError("cutoff must lie beyond the ray origin and below 1")
        self._log_ratio = math.log(self.dc / self.d0)

    def point(self, v: float) -> DiskPoint:
        if v <= 0.0:
            return self.ray.origin
        v = min(v, 1.0)
        return self.ray.point_at_depth(self.d0 * math.exp(v * self._log_ratio))


def _point_to_ray(p: DiskPoint, target: _TruncatedRay, grid: np.ndarray) -> float:
    values = np.array([distance_closed_form(p, target.point(v)) for v in grid])
    i = int(np.argmin(values))
    best = float(values[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    if best == 0.0 or hi <= lo:
        return best
    res = minimize_scalar(lambda v: distance_closed_form(p, target.point(v)),
                          bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    if not res.success:
        raise NonConvergence(f"point-to-ray minimisation failed: {res.message}")
    return min(best, float(res.fun))


def _one_sided(source: _TruncatedRay, target: _TruncatedRay, grid: np.ndarray) -> float:
    values = np.array([_point_to_ray(source.point(v), target, grid) for v in grid])
    i = int(np.argmax(values))
    best = float(values[i])
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    if best == 0.0 or hi <= lo:
        return best
    res = minimize_scalar(lambda v: -_point_to_ray(source.point(v), target, grid),
                          bounds=(lo, hi), method="bounded", options={"xatol": 1e-8})
    return max(best, -float(res.fun))


@dataclass(frozen=True)
class HausdorffEstimate:
    value: float
    forward: float
    backward: float
    cutoff: float
    grid: int
    resolution: float

    def __float__(self):
        return self.value


def hausdorff_distance_rays(r1: GeodesicRay, r2: GeodesicRay, grid: int = 64,
                            cutoff: float = DEFAULT_CUTOFF) -> HausdorffEstimate:
    """Estimate the Hausdorff distance between the images of two rays.

    Each ray is cut where ``<p, ideal point> = cutoff``.  One-sided terms
    take the best of ``grid`` samples of the source ray, each measured
    against the target by grid bracketing plus bounded local minimisation,
    and the best sample is refined locally.  ``resolution`` is the grid step
    in the log-depth parameter.
    """
    if grid < 16:
        raise DomainError("grid must be at least 16")
    t1, t2 = _TruncatedRay(r1, cutoff), _TruncatedRay(r2, cutoff)
    v = np.linspace(0.0, 1.0, grid)
    if r1 == r2:
        forward = backward = 0.0
    else:
        forward = _one_sided(t1, t2, v)
        backward = _one_sided(t2, t1, v)
    return HausdorffEstimate(max(forward, backward), forward, backward, cutoff, grid, 1.0 / (grid - 1))
