"""Seeded property suites over random samples of the disk.

Each suite returns a list of :class:`PropertyResult`, one per property, with
the worst observed violation and the threshold it was held to.  The same
suites back ``diskmetric check`` and the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .comparison import UNIT_DISK, Polygon, hilbert_metric_properties, hilbert_rotation_error
from .metric import (
    ORIGIN,
    DiskPoint,
    distance_closed_form,
    distance_numeric,
    distance_origin_bound,
    reflect,
    rotate,
)

SAMPLE_RADIUS = 0.95
# Off-chord triples closer than this to the segment are skipped by the
# strictness check; the gap shrinks quadratically with the offset.
STRICTNESS_OFFSET = 1e-3


@dataclass(frozen=True)
class PropertyResult:
    name: str
    worst: float
    threshold: float
    passed: bool
    samples: int

    def as_dict(self):
        return asdict(self)


def random_points(rng: np.random.Generator, n: int, radius: float = SAMPLE_RADIUS) -> list[DiskPoint]:
    """``n`` points uniform by area in the disk of the given radius."""
    r = radius * np.sqrt(rng.random(n))
    t = rng.uniform(0.0, 2.0 * math.pi, n)
    return [DiskPoint(float(a), float(b)) for a, b in zip(r * np.cos(t), r * np.sin(t))]


def _segment_offset(y: DiskPoint, x: DiskPoint, z: DiskPoint) -> float:
    dx, dy = z.x - x.x, z.y - x.y
    t = ((y.x - x.x) * dx + (y.y - x.y) * dy) / (dx * dx + dy * dy)
    t = min(max(t, 0.0), 1.0)
    return math.hypot(y.x - x.x - t * dx, y.y - x.y - t * dy)


def metric_axioms(samples: int, seed: int) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    pts = random_points(rng, 3 * samples)
    min_pos = math.inf
    max_self = 0.0
    max_asym = 0.0
    min_slack = math.inf
    for i in range(samples):
        p, q, r = pts[3 * i: 3 * i + 3]
        dpq, dqr, dpr = distance_closed_form(p, q), distance_closed_form(q, r), distance_closed_form(p, r)
        min_pos = min(min_pos, dpq, dqr, dpr)
        max_self = max(max_self, distance_closed_form(p, p))
        max_asym = max(max_asym, abs(dpq - distance_closed_form(q, p)))
        min_slack = min(min_slack, dpq + dqr - dpr)
    return [
        PropertyResult("positivity", min_pos, 1e-12, min_pos > 1e-12, samples),
        PropertyResult("identity", max_self, 0.0, max_self == 0.0, samples),
        PropertyResult("symmetry", max_asym, 0.0, max_asym == 0.0, samples),
        PropertyResult("triangle_inequality", min_slack, -1e-9, min_slack >= -1e-9, samples),
    ]


def additivity(samples: int, seed: int) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    pts = random_points(rng, 3 * samples)
    ts = rng.uniform(0.0, 1.0, samples)
    max_err = 0.0
    min_gap = math.inf
    strict_count = 0
    for i in range(samples):
        x, y, z = pts[3 * i: 3 * i + 3]
        m = DiskPoint(x.x + ts[i] * (z.x - x.x), x.y + ts[i] * (z.y - x.y))
        dxz = distance_closed_form(x, z)
        max_err = max(max_err, abs(distance_closed_form(x, m) + distance_closed_form(m, z) - dxz))
        if _segment_offset(y, x, z) >= STRICTNESS_OFFSET:
            strict_count += 1
            min_gap = min(min_gap, distance_closed_form(x, y) + distance_closed_form(y, z) - dxz)
    return [
        PropertyResult("collinear_additivity", max_err, 1e-8, max_err <= 1e-8, samples),
        PropertyResult("off_chord_strictness", min_gap, 1e-9, min_gap > 1e-9, strict_count),
    ]


def isometries(samples: int, seed: int) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    pts = random_points(rng, 2 * samples)
    phis = rng.uniform(0.0, 2.0 * math.pi, (samples, 2))
    rot_err = 0.0
    ref_err = 0.0
    for i in range(samples):
        p, q = pts[2 * i], pts[2 * i + 1]
        d = distance_closed_form(p, q)
        rot_err = max(rot_err, abs(distance_closed_form(rotate(p, phis[i, 0]), rotate(q, phis[i, 0])) - d))
        ref_err = max(ref_err, abs(distance_closed_form(reflect(p, phis[i, 1]), reflect(q, phis[i, 1])) - d))
    return [
        PropertyResult("rotation_invariance", rot_err, 1e-9, rot_err <= 1e-9, samples),
        PropertyResult("reflection_invariance", ref_err, 1e-9, ref_err <= 1e-9, samples),
    ]


def oracle(samples: int, seed: int, tol: float = 1e-10) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    pts = random_points(rng, 2 * samples)
    worst = 0.0
    for i in range(samples):
        p, q = pts[2 * i], pts[2 * i + 1]
        worst = max(worst, abs(distance_numeric(p, q, tol=tol).value - distance_closed_form(p, q)))
    return [PropertyResult("closed_form_vs_quadrature", worst, 1e-8, worst <= 1e-8, samples)]


def origin_bound(samples: int, seed: int) -> list[PropertyResult]:
    rng = np.random.default_rng(seed)
    violations = 0
    min_margin = math.inf
    for p in random_points(rng, samples):
        margin = distance_origin_bound(p) - distance_closed_form(ORIGIN, p)
        min_margin = min(min_margin, margin)
        if margin < 0:
            violations += 1
    return [
        PropertyResult("origin_bound_violations", float(violations), 0.0, violations == 0, samples),
        PropertyResult("origin_bound_min_margin", min_margin, 0.0, min_margin >= 0.0, samples),
    ]


def hilbert(samples: int, seed: int) -> list[PropertyResult]:
    square = Polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)])
    out = []
    for label, domain in (("circle", UNIT_DISK), ("square", square)):
        rep = hilbert_metric_properties(domain, max(samples, 10), seed)
        out.append(PropertyResult(f"{label}_triangle_inequality", rep.min_triangle_slack, -1e-12,
                                  rep.checks["triangle_inequality"], rep.samples))
        out.append(PropertyResult(f"{label}_chord_additivity", rep.max_additivity_error, 1e-9,
                                  rep.checks["chord_additivity"], rep.samples))
        if "radial_error" in rep.details:
            out.append(PropertyResult("circle_radial_half_poincare", rep.details["radial_error"], 1e-12,
                                      rep.checks["radial_half_poincare"], 3))
            r0, r1 = rep.details["ratios"]
            out.append(PropertyResult("circle_two_radius_ratio_gap", abs(r1 - r0), 0.1,
                                      rep.checks["no_single_scaling"], 2))
    rot = hilbert_rotation_error(max(samples, 10), seed)
    out.append(PropertyResult("circle_rotation_invariance", rot, 1e-12, rot <= 1e-12, max(samples, 10)))
    return out


SUITES: dict[str, Callable[[int, int], list[PropertyResult]]] = {
    "metric-axioms": metric_axioms,
    "additivity": additivity,
    "isometries": isometries,
    "oracle": oracle,
    "origin-bound": origin_bound,
    "hilbert": hilbert,
}


def run_suite(name: str, samples: int, seed: int) -> list[PropertyResult]:
    try:
        suite = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    return suite(samples, seed)
