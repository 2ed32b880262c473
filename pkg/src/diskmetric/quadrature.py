"""Adaptive Gauss-Kronrod integration over angle intervals.

The integrator is globally adaptive: every breakpoint-delimited piece of
``[a, b]`` starts as its own panel, and the panel with the largest error
estimate is bisected until the summed estimate meets the tolerance.  Each
panel uses the 15-point Kronrod rule with the embedded 7-point Gauss rule as
its error estimate.

Integrands are called with numpy arrays of angles; a callable that only
handles scalars can be wrapped by setting ``vectorized=False``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .exceptions import DomainError, InvalidInterval, NonConvergence, WindowCoversInterval

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-10
DEFAULT_MAX_DEPTH = 60
DEFAULT_MAX_PANELS = 20000

# Kronrod abscissae on [-1, 1] (non-negative half, descending) and weights.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights for the nodes _XGK[1], _XGK[3], _XGK[5], _XGK[7].
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
GAUSS_WEIGHTS[7] = _WG[3]


@dataclass(frozen=True)
class IntegrandSpec:
    """An integrand together with the angles where it is not smooth.

    ``eval`` maps an array of angles (radians) to an array of values.
    ``breakpoints`` must be strictly increasing; those that fall strictly
    inside the integration interval become panel boundaries.
    """

    eval: Callable
    breakpoints: Sequence[float] = ()
    vectorized: bool = True

    def __post_init__(self):
        bps = tuple(float(b) for b in self.breakpoints)
        if any(not math.isfinite(b) for b in bps):
            raise DomainError("breakpoints must be finite")
        if any(b1 >= b2 for b1, b2 in zip(bps, bps[1:])):
            raise DomainError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)

    def __call__(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if self.vectorized:
            values = np.asarray(self.eval(theta), dtype=float)
            values = np.broadcast_to(values, theta.shape)
        else:
            values = np.array([float(self.eval(t)) for t in theta.ravel()]).reshape(theta.shape)
        return values


@dataclass
class QuadratureResult:
    value: float
    abs_error_estimate: float
    subintervals_used: int
    converged: bool
    tolerance: float = field(default=0.0, repr=False)

    def __float__(self):
        return self.value

    def __add__(self, other: "QuadratureResult") -> "QuadratureResult":
        return QuadratureResult(
            self.value + other.value,
            self.abs_error_estimate + other.abs_error_estimate,
            self.subintervals_used + other.subintervals_used,
            self.converged and other.converged,
            self.tolerance + other.tolerance,
        )


def _gk15(spec: IntegrandSpec, lo: np.ndarray, hi: np.ndarray):
    """Apply the 15-point rule to a batch of panels ``[lo[i], hi[i]]``."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    theta = center[:, None] + half[:, None] * NODES[None, :]
    values = spec(theta)
    if not np.all(np.isfinite(values)):
        bad = theta[~np.isfinite(values)][0]
        raise DomainError(f"integrand is not finite at angle {bad!r}")
    kronrod = half * (values @ KRONROD_WEIGHTS)
    gauss = half * (values @ GAUSS_WEIGHTS)
    return kronrod, np.abs(kronrod - gauss)


def _panel_edges(spec: IntegrandSpec, a: float, b: float) -> list[float]:
    inner = [t for t in spec.breakpoints if a < t < b]
    return [a, *inner, b]


def integrate(
    spec: IntegrandSpec,
    a: float,
    b: float,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_panels: int = DEFAULT_MAX_PANELS,
    strict: bool = True,
) -> QuadratureResult:
    """Integrate ``spec`` over ``[a, b]``.

    The tolerance target is ``max(abs_tol, rel_tol * |value|)`` applied to
    the summed error estimate of all panels.  With ``strict=True`` (the
    default) a run that cannot meet it raises :class:`NonConvergence`
    carrying the partial result; otherwise the result is returned with
    ``converged=False``.
    """
    if not (a < b):
        raise InvalidInterval(f"need a < b, got a={a!r}, b={b!r}")
    if abs_tol <= 0 or rel_tol <= 0:
        raise DomainError("tolerances must be positive")

    edges = np.array(_panel_edges(spec, float(a), float(b)))
    values, errors = _gk15(spec, edges[:-1], edges[1:])

    heap = []
    settled_value = []
    settled_error = []
    for i in range(len(edges) - 1):
        heap.append((-errors[i], i, edges[i], edges[i + 1], values[i], errors[i], 0))
    heapq.heapify(heap)
    counter = len(heap)
    total_value = float(np.sum(values))
    total_error = float(np.sum(errors))

    converged = False
    while True:
        tol = max(abs_tol, rel_tol * abs(total_value))
        if total_error <= tol:
            converged = True
            break
        if not heap or counter >= max_panels:
            break
        _, _, lo, hi, val, err, depth = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if depth >= max_depth or not (lo < mid < hi):
            # Cannot refine further; keep its contribution and move on.
            settled_value.append(val)
            settled_error.append(err)
            continue
        child_values, child_errors = _gk15(spec, np.array([lo, mid]), np.array([mid, hi]))
        total_value += float(child_values[0] + child_values[1] - val)
        total_error += float(child_errors[0] + child_errors[1] - err)
        for (clo, chi), cv, ce in zip(((lo, mid), (mid, hi)), child_values, child_errors):
            heapq.heappush(heap, (-ce, counter, clo, chi, cv, ce, depth + 1))
            counter += 1

    all_values = [item[4] for item in heap] + settled_value
    all_errors = [item[5] for item in heap] + settled_error
    value = math.fsum(all_values)
    error = math.fsum(all_errors)
    tol = max(abs_tol, rel_tol * abs(value))
    result = QuadratureResult(value, error, len(all_values), converged and error <= tol, tol)
    if strict and not result.converged:
        raise NonConvergence(
            f"error estimate {error:.3e} above tolerance {tol:.3e} "
            f"after {len(all_values)} panels",
            result,
        )
    return result


def retained_intervals(a: float, b: float, windows: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Return the parts of ``[a, b]`` not covered by any open ``window``."""
    pieces = [(a, b)]
    for lo, hi in sorted(windows):
        nxt = []
        for pa, pb in pieces:
            if hi <= pa or lo >= pb:
                nxt.append((pa, pb))
                continue
            if lo > pa:
                nxt.append((pa, lo))
            if hi < pb:
                nxt.append((hi, pb))
        pieces = nxt
    return [(pa, pb) for pa, pb in pieces if pb > pa]


def integrate_excluding(
    spec: IntegrandSpec,
    a: float,
    b: float,
    windows: Sequence[tuple[float, float]],
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    **kwargs,
) -> QuadratureResult:
    """Integrate over ``[a, b]`` with the open ``windows`` removed."""
    if not (a < b):
        raise InvalidInterval(f"need a < b, got a={a!r}, b={b!r}")
    pieces = retained_intervals(float(a), float(b), windows)
    if not pieces:
        raise WindowCoversInterval(f"excluded windows cover [{a!r}, {b!r}]")
    total = None
    for lo, hi in pieces:
        # Each piece gets its share of the absolute budget.
        share = abs_tol * (hi - lo) / (b - a)
        part = integrate(spec, lo, hi, share, rel_tol, **kwargs)
        total = part if total is None else total + part
    return total


def integrate_truncated_singular(
    spec: IntegrandSpec,
    a: float,
    b: float,
    cut_center: float,
    epsilon: float,
    abs_tol: float = DEFAULT_ABS_TOL,
    rel_tol: float = DEFAULT_REL_TOL,
    **kwargs,
) -> QuadratureResult:
    """Integrate over ``[a, b]`` minus ``(cut_center - epsilon, cut_center + epsilon)``."""
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    window = (cut_center - epsilon, cut_center + epsilon)
    return integrate_excluding(spec, a, b, [window], abs_tol, rel_tol, **kwargs)
