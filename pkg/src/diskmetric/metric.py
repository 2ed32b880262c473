"""The direction-integrated metric on the open unit disk.

For two points ``p`` and ``q`` of the disk, project both onto the diameter
at angle ``theta`` and measure the gap with the interval metric
``|g(s) - g(t)|`` induced by a strictly increasing generator ``g``.  The
distance is the integral of that gap over ``theta`` in ``[0, pi]``.  The
standard generator is ``t / (1 - |t|)``.

Two evaluators are provided.  :func:`distance_numeric` runs adaptive
quadrature and works with any generator; :func:`distance_closed_form`
integrates the standard generator exactly piece by piece with the arctan
antiderivative of ``1 / (1 - rho cos u)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

import numpy as np

from .exceptions import DomainError
from .quadrature import IntegrandSpec, QuadratureResult, integrate

ADMISSIBILITY_MARGIN = 1e-12
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DiskPoint:
    """A point strictly inside the unit disk.

    Points with Euclidean norm ``>= 1 - 1e-12`` are rejected so that every
    finite operation stays well conditioned.
    """

    x: float
    y: float

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DomainError(f"coordinates must be finite, got ({x!r}, {y!r})")
        if math.hypot(x, y) >= 1.0 - ADMISSIBILITY_MARGIN:
            raise DomainError(f"({x!r}, {y!r}) is not inside the open unit disk")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    @property
    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y])

    def __iter__(self):
        yield self.x
        yield self.y


ORIGIN = DiskPoint(0.0, 0.0)

PointLike = Union[DiskPoint, Sequence[float]]


def as_point(p: PointLike) -> DiskPoint:
    """Coerce a ``DiskPoint`` or an ``(x, y)`` pair to a validated ``DiskPoint``."""
    if isinstance(p, DiskPoint):
        return p
    try:
        x, y = p
    except (TypeError, ValueError):
        raise DomainError(f"expected a point (x, y), got {p!r}") from None
    return DiskPoint(x, y)


def rotate(p: PointLike, phi: float) -> DiskPoint:
    p = as_point(p)
    c, s = math.cos(phi), math.sin(phi)
    return DiskPoint(c * p.x - s * p.y, s * p.x + c * p.y)


def reflect(p: PointLike, phi: float) -> DiskPoint:
    """Reflect across the line through the origin at angle ``phi``."""
    p = as_point(p)
    c, s = math.cos(2 * phi), math.sin(2 * phi)
    return DiskPoint(c * p.x + s * p.y, s * p.x - c * p.y)


# --------------------------------------------------------------------------
# generators and the interval metric
# --------------------------------------------------------------------------

def _standard(t):
    return t / (1.0 - np.abs(t))


@dataclass(frozen=True)
class Generator:
    """A strictly increasing function on ``(-1, 1)`` inducing an interval metric.

    ``kind`` is ``"standard"`` for ``t / (1 - |t|)`` and ``"custom"`` for
    anything else.  Custom functions should accept numpy arrays; pass
    ``vectorized=False`` for scalar-only callables.
    """

    kind: str
    func: Callable
    description: str = ""
    vectorized: bool = True

    def __post_init__(self):
        if self.kind not in ("standard", "custom"):
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @classmethod
    def custom(cls, func: Callable, description: str = "", vectorized: bool = True) -> "Generator":
        return cls("custom", func, description or getattr(func, "__name__", "custom"), vectorized)

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(np.abs(arr) >= 1.0) or np.any(np.isnan(arr)):
            raise DomainError("generator argument must lie in (-1, 1)")
        if self.vectorized:
            out = np.asarray(self.func(arr), dtype=float)
        else:
            out = np.array([float(self.func(v)) for v in arr.ravel()]).reshape(arr.shape)
        return float(out) if out.ndim == 0 else out


STANDARD = Generator("standard", _standard, "t / (1 - |t|)")


def power_generator(alpha: float) -> Generator:
    """``sign(t) * ((1 - |t|)^(-alpha) - 1)``; ``alpha = 1`` recovers the standard generator."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")

    def g(t):
        return np.sign(t) * ((1.0 - np.abs(t)) ** (-alpha) - 1.0)

    return Generator.custom(g, f"power(alpha={alpha!r})")


def generator_eval(g: Generator, t):
    return g(t)


def interval_distance(g: Generator, s, t):
    """``|g(s) - g(t)|`` for ``s, t`` in ``(-1, 1)``."""
    return np.abs(g(s) - g(t)) if np.ndim(s) or np.ndim(t) else abs(g(s) - g(t))


@dataclass(frozen=True)
class DirectionalProjection:
    theta: float
    value: float


def project(p: PointLike, theta: float) -> DirectionalProjection:
    """Signed coordinate of ``p`` along the unit direction ``(cos theta, sin theta)``."""
    p = as_point(p)
    theta = float(theta) % TWO_PI
    return DirectionalProjection(theta, p.x * math.cos(theta) + p.y * math.sin(theta))


def directional_distance(p: PointLike, q: PointLike, theta, generator: Generator = STANDARD):
    """Interval distance between the projections of ``p`` and ``q`` at angle ``theta``.

    ``theta`` may be an array, in which case an array is returned.
    """
    p, q = as_point(p), as_point(q)
    c, s = np.cos(theta), np.sin(theta)
    a = p.x * c + p.y * s
    b = q.x * c + q.y * s
    return interval_distance(generator, a, b)


def kink_angles(points: Iterable[PointLike]) -> list[float]:
    """Angles in ``[0, pi)`` where ``v . (cos theta, sin theta)`` vanishes, one per nonzero ``v``."""
    angles = set()
    for v in points:
        x, y = v
        if x == 0.0 and y == 0.0:
            continue
        angles.add((math.atan2(y, x) + 0.5 * math.pi) % math.pi)
    return sorted(angles)


def _pair_kinks(p: DiskPoint, q: DiskPoint) -> list[float]:
    return kink_angles([(p.x, p.y), (q.x, q.y), (p.x - q.x, p.y - q.y)])


# --------------------------------------------------------------------------
# distance evaluators
# --------------------------------------------------------------------------

def distance_numeric(
    p: PointLike,
    q: PointLike,
    generator: Generator = STANDARD,
    tol: float = 1e-10,
    **kwargs,
) -> QuadratureResult:
    """Distance by adaptive quadrature of the directional distance over ``[0, pi]``.

    The integrand is split at the kink angles of ``p``, ``q`` and ``p - q``.
    Extra keyword arguments go to :func:`diskmetric.quadrature.integrate`.
    """
    p, q = as_point(p), as_point(q)
    if tol <= 0:
        raise DomainError("tol must be positive")
    if p == q:
        return QuadratureResult(0.0, 0.0, 0, True, tol)
    px, py, qx, qy = p.x, p.y, q.x, q.y
    func = generator.func

    if generator.vectorized:
        def integrand(theta):
            c, s = np.cos(theta), np.sin(theta)
            return np.abs(func(px * c + py * s) - func(qx * c + qy * s))
        spec = IntegrandSpec(integrand, _pair_kinks(p, q))
    else:
        def integrand(theta):
            c, s = math.cos(theta), math.sin(theta)
            return abs(func(px * c + py * s) - func(qx * c + qy * s))
        spec = IntegrandSpec(integrand, _pair_kinks(p, q), vectorized=False)
    return integrate(spec, 0.0, math.pi, tol, tol, **kwargs)


def _secant_antiderivative(theta: float, rho: float, phi: float) -> float:
    """Continuous antiderivative of ``1 / (1 - rho cos(theta - phi))``.

    The principal arctan form jumps by ``-2 pi / sqrt(1 - rho^2)`` each time
    ``theta - phi`` crosses an odd multiple of ``pi``; the jump is added back
    analytically.
    """
    w = theta - phi
    n = math.floor((w + math.pi) / TWO_PI)
    w -= TWO_PI * n
    root = math.sqrt((1.0 - rho) * (1.0 + rho))
    k = math.sqrt((1.0 + rho) / (1.0 - rho))
    return (2.0 / root) * (math.atan(k * math.tan(0.5 * w)) + math.pi * n)


def distance_closed_form(p: PointLike, q: PointLike) -> float:
    """Exact distance for the standard generator.

    The full circle ``[0, 2 pi)`` is cut at the (at most six) angles where
    ``p``, ``q`` or ``p - q`` is perpendicular to the direction.  On each
    piece the signs of both projections and of their difference are fixed,
    so the integrand is a signed sum of ``1 / (1 - rho cos(theta - phi))``
    terms and constants.  Half the full-circle integral is returned.

    The pieces are differences of O(1) antiderivative values, so the error is
    absolute, a few ulps of ``pi``, even when ``p`` and ``q`` nearly coincide.
    """
    p, q = as_point(p), as_point(q)
    if p == q:
        return 0.0
    # Canonical order makes the result exactly symmetric.
    if (q.x, q.y) < (p.x, p.y):
        p, q = q, p

    cuts = set()
    for k in _pair_kinks(p, q):
        cuts.add(k)
        cuts.add(k + math.pi)
    edges = [0.0, *sorted(c for c in cuts if 0.0 < c < TWO_PI), TWO_PI]

    rp, phi_p = p.norm, p.angle
    rq, phi_q = q.norm, q.angle
    terms = []
    for lo, hi in zip(edges, edges[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        c, s = math.cos(mid), math.sin(mid)
        a = p.x * c + p.y * s
        b = q.x * c + q.y * s
        sign_ab = math.copysign(1.0, a - b)
        length = hi - lo
        for sign_pt, rho, phi, weight in (
            (_sign(a), rp, phi_p, sign_ab),
            (_sign(b), rq, phi_q, -sign_ab),
        ):
            if sign_pt == 0.0:
                continue
            # f(t) = sign * (1 / (1 - sign * t) - 1) on this piece.
            shift = phi if sign_pt > 0 else phi + math.pi
            integral = _secant_antiderivative(hi, rho, shift) - _secant_antiderivative(lo, rho, shift)
            terms.append(weight * sign_pt * integral)
            terms.append(-weight * sign_pt * length)
    return 0.5 * math.fsum(terms)


def _sign(v: float) -> float:
    if v > 0:
        return 1.0
    if v < 0:
        return -1.0
    return 0.0


def radial_distance(r: float) -> float:
    """Closed form of the distance from the origin to a point at Euclidean radius ``r``."""
    r = abs(float(r))
    if r >= 1.0:
        raise DomainError("radius must be below 1")
    if r == 0.0:
        return 0.0
    return 4.0 / math.sqrt((1.0 - r) * (1.0 + r)) * math.atan(math.sqrt((1.0 + r) / (1.0 - r))) - math.pi


def distance(p: PointLike, q: PointLike, generator: Generator = STANDARD, tol: float = 1e-10) -> float:
    """Closed form for the standard generator, quadrature otherwise."""
    if generator.kind == "standard":
        return distance_closed_form(p, q)
    return distance_numeric(p, q, generator, tol).value


def distance_origin_bound(p: PointLike) -> float:
    """Upper bound ``pi |p| / (1 - |p|)`` for the distance from the origin to ``p``."""
    r = as_point(p).norm
    return math.pi * r / (1.0 - r)


# --------------------------------------------------------------------------
# generator validation
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    monotone: bool
    divergent: bool
    t_values: tuple
    integrals: tuple
    min_increment: float

    @property
    def admissible(self) -> bool:
        return self.monotone and self.divergent


def validate_generator(g: Generator, samples: int = 1001) -> ValidationReport:
    """Check strict monotonicity on a grid and probe the boundary divergence condition.

    The divergence probe evaluates ``I(t) = int_0^{2pi} |g(t cos theta)| dtheta``
    at ``t = 1 - 10^-k`` for ``k = 2..6``.  The sequence counts as unbounded
    when it is strictly increasing and its increments are not shrinking
    (last increment at least 0.9 times the one before).  This is a heuristic
    read of a limit statement, not a proof.
    """
    if samples < 2:
        raise DomainError("need at least two samples")
    grid = np.linspace(-1.0, 1.0, samples + 2)[1:-1]
    try:
        values = np.asarray(g(grid), dtype=float)
    except DomainError:
        raise
    except Exception as exc:
        raise DomainError(f"generator cannot be evaluated on (-1, 1): {exc}") from exc
    if not np.all(np.isfinite(values)):
        raise DomainError("generator is not finite on (-1, 1)")
    diffs = np.diff(values)
    monotone = bool(np.all(diffs > 0))

    t_values = tuple(1.0 - 10.0 ** -k for k in range(2, 7))
    integrals = []
    for t in t_values:
        if g.vectorized:
            spec = IntegrandSpec(lambda th, t=t: np.abs(g.func(t * np.cos(th))),
                                 [0.5 * math.pi, math.pi, 1.5 * math.pi])
        else:
            spec = IntegrandSpec(lambda th, t=t: abs(g.func(t * math.cos(th))),
                                 [0.5 * math.pi, math.pi, 1.5 * math.pi], vectorized=False)
        integrals.append(integrate(spec, 0.0, TWO_PI, 1e-10, 1e-10).value)
    increments = np.diff(integrals)
    divergent = bool(np.all(increments > 0) and increments[-1] >= 0.9 * increments[-2])
    return ValidationReport(monotone, divergent, t_values, tuple(integrals),
                            float(diffs.min()) if diffs.size else 0.0)
