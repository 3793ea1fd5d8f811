"""Transport of Green evaluators along proper polynomial maps.

The central identity family bounds the target extremal function composed
with the map between scalar multiples of the preimage extremal function;
when the two scalars coincide the composition becomes an exact functional
equation, which is how the closed-form examples are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (EmptyFiberError, InconsistentDesignError, NoChartError,
                     SpecError, UnsupportedError, BallTooSmallError)
from .exponents import (COMMON_DIRECTION, SEPARATED, Schedule, default_schedule,
                        exact_exponents_variety, growth_exponent,
                        lojasiewicz_exponent, cone_common_direction_check)
from .extremal import (FUNCTIONAL_EQUATION, GreenEstimate, closed_form_estimate)
from .polynomial import NEG_INF, MultiPoly
from .variety import Chart, CompactSetSpec, VarietySpec

CHART_UNIVARIATE = "chart_univariate"
EXPLICIT = "explicit"


def map_eval_many(f: Sequence[MultiPoly], points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    return np.stack([comp.eval_many(pts) for comp in f], axis=1)


# ---------------------------------------------------------------------------
# fibers


@dataclass(eq=False)
class FiberSolver:
    """Resolves ``f^{-1}(w)`` on the source variety.

    ``chart_univariate`` pulls each component equation back through a
    one-parameter chart, solves it by companion-matrix roots, and keeps the
    candidates that satisfy every component within tolerance.  ``explicit``
    wraps user-supplied inverse branches.
    """

    source: VarietySpec
    f: Tuple[MultiPoly, ...]
    strategy: str = CHART_UNIVARIATE
    tolerance: float = 1e-8
    branches: Optional[Callable[[Sequence[complex]], Sequence[Sequence[complex]]]] = None

    def __post_init__(self):
        self.f = tuple(self.f)
        if self.strategy not in (CHART_UNIVARIATE, EXPLICIT):
            raise SpecError(f"unknown fiber strategy {self.strategy!r}")
        if self.strategy == EXPLICIT and self.branches is None:
            raise SpecError("explicit strategy needs inverse branches")

    def fiber(self, w: Sequence[complex]) -> np.ndarray:
        """Fiber points as an array; raises ``EmptyFiberError`` with the best
        residual found when nothing validates."""
        w = tuple(complex(c) for c in w)
        if len(w) != len(self.f):
            raise SpecError("target point dimension differs from map")
        if self.strategy == EXPLICIT:
            candidates = [tuple(z) for z in self.branches(w)]
            pts = np.asarray(candidates, dtype=complex)
        else:
            pts = self._chart_candidates(w)
        if len(pts) == 0:
            raise EmptyFiberError("no fiber candidates produced",
                                  best_residual=float("inf"))
        scale = self.tolerance * (1.0 + np.linalg.norm(np.asarray(w)))
        residuals = np.linalg.norm(map_eval_many(self.f, pts)
                                   - np.asarray(w)[None, :], axis=1)
        good = pts[residuals <= scale]
        if len(good) == 0:
            raise EmptyFiberError(
                "no candidate satisfies the map equations; target may lie "
                "outside the image", best_residual=float(np.min(residuals)))
        return _dedupe(good, 1e-8)

    def _chart_candidates(self, w: Tuple[complex, ...]) -> np.ndarray:
        out: List[np.ndarray] = []
        any_chart = False
        for chart in self.source.charts:
            if chart.param_dim != 1:
                continue
            any_chart = True
            roots = self._roots_on_chart(chart, w)
            if roots is not None and len(roots):
                out.append(chart.eval_many(roots.reshape(-1, 1)))
        if not any_chart:
            raise NoChartError("fiber solve needs a one-parameter chart")
        if not out:
            return np.empty((0, self.source.ambient_dim), dtype=complex)
        return np.concatenate(out, axis=0)

    def _roots_on_chart(self, chart: Chart, w) -> Optional[np.ndarray]:
        for comp, target in zip(self.f, w):
            pulled = comp.compose(list(chart.components))
            diff = pulled - MultiPoly.constant(1, target, pulled.laurent)
            if diff.is_zero():
                continue
            exps = sorted(e[0] for e in diff.terms)
            if exps[-1] == exps[0] == 0:
                continue  # constant, no information
            roots = _laurent_roots(diff)
            if chart.domain == "punctured":
                roots = roots[np.abs(roots) > 1e-12]
            return roots
        return None


def _laurent_roots(q: MultiPoly) -> np.ndarray:
    """Roots of a univariate (Laurent) polynomial via the companion matrix."""
    exps = [e[0] for e in q.terms]
    bot, top = min(exps), max(exps)
    shift = -min(bot, 0)
    coeffs = np.zeros(top + shift + 1, dtype=complex)
    for (e,), c in q.terms.items():
        coeffs[top - e] = c  # highest degree first
    roots = np.roots(coeffs)
    if shift > 0:
        roots = roots[np.abs(roots) > 1e-12]
    return roots


def _dedupe(points: np.ndarray, tol: float) -> np.ndarray:
    kept: List[np.ndarray] = []
    for z in points:
        scale = 1.0 + np.linalg.norm(z)
        if all(np.linalg.norm(z - u) > tol * scale for u in kept):
            kept.append(z)
    return np.asarray(kept)


def pushforward_psh(u: Callable[[Sequence[complex]], float],
                    f: Sequence[MultiPoly], fibers: FiberSolver,
                    w: Sequence[complex]) -> float:
    """Largest value of ``u`` over the fiber of ``w``."""
    pts = fibers.fiber(w)
    return max(float(u(tuple(z))) for z in pts)


def pushforward_estimate(u: GreenEstimate, f: Sequence[MultiPoly],
                         fibers: FiberSolver, scale: float = 1.0,
                         name: str = "pushforward") -> GreenEstimate:
    """Green evaluator on the image: ``w -> scale * max u(fiber(w))``."""

    def evaluator(w: Sequence[complex]) -> float:
        pts = fibers.fiber(w)
        return scale * float(np.max(u.eval_many(pts)))

    def vector(points: np.ndarray) -> np.ndarray:
        return np.array([evaluator(tuple(w)) for w in points])

    meta = {"name": name, "vector_evaluator": vector,
            "slack": scale * u.slack}
    return GreenEstimate(FUNCTIONAL_EQUATION, max(u.degree, 1), u.design, 0,
                         evaluator, meta)


# ---------------------------------------------------------------------------
# sandwich verification


@dataclass(eq=False)
class TransformReport:
    """Pointwise check of ``k * G_pre <= G_target o f <= l * G_pre``."""

    points: np.ndarray
    lower: np.ndarray
    mid: np.ndarray
    upper: np.ndarray
    k: float
    l: float
    tau: float

    @property
    def lower_margins(self) -> np.ndarray:
        return self.lower - self.mid

    @property
    def upper_margins(self) -> np.ndarray:
        return self.mid - self.upper

    @property
    def violations(self) -> np.ndarray:
        return np.flatnonzero((self.lower_margins > self.tau)
                              | (self.upper_margins > self.tau))

    @property
    def holds(self) -> bool:
        return len(self.violations) == 0

    @property
    def verdict(self) -> str:
        return "HOLDS" if self.holds else "FAILS"

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "worst_lower_margin": float(np.max(self.lower_margins)),
            "worst_upper_margin": float(np.max(self.upper_margins)),
            "k": self.k,
            "l": self.l,
            "tau": self.tau,
            "violations": [int(i) for i in self.violations],
        }

    def to_csv(self) -> str:
        n = self.points.shape[1]
        header = ",".join(f"re{i},im{i}" for i in range(n))
        lines = [header + ",lower,mid,upper,lower_margin,upper_margin"]
        for z, lo, mi, up in zip(self.points, self.lower, self.mid, self.upper):
            coords = ",".join(f"{c.real!r},{c.imag!r}" for c in z)
            lines.append(f"{coords},{lo!r},{mi!r},{up!r},{lo - mi!r},{mi - up!r}")
        return "\n".join(lines) + "\n"


def verify_sandwich(f: Sequence[MultiPoly], source: VarietySpec,
                    compact: CompactSetSpec, green_target: GreenEstimate,
                    green_preimage: GreenEstimate, k: float, l: float,
                    testpoints: np.ndarray,
                    tau: Optional[float] = None) -> TransformReport:
    """Check the two-sided transport inequality at the test points.

    The tolerance aggregates the declared slack of both estimates, the
    preimage slack amplified by the larger constant, plus ``0.05 max(k, l)``
    for discretization of the compact sets.
    """
    pts = np.asarray(testpoints, dtype=complex)
    if pts.ndim == 1:
        pts = pts.reshape(1, -1)
    if k <= 0 or l <= 0 or k > l + 1e-12:
        raise SpecError("need 0 < k <= l")
    _cross_validate(f, compact, green_preimage)
    fz = map_eval_many(f, pts)
    pre = green_preimage.eval_many(pts)
    mid = green_target.eval_many(fz)
    lower = k * pre
    upper = l * pre
    if tau is None:
        tau = (0.05 * max(k, l) + green_target.slack
               + max(k, l) * green_preimage.slack)
    return TransformReport(pts, lower, mid, upper, float(k), float(l), float(tau))


def _cross_validate(f: Sequence[MultiPoly], compact: CompactSetSpec,
                    green_preimage: GreenEstimate) -> None:
    design = green_preimage.design
    if design is None or compact.kind == "param_region":
        return
    images = map_eval_many(f, design.points)
    ok = compact.contains_many(images, tol=1e-6)
    if not np.all(ok):
        raise InconsistentDesignError(
            "preimage design does not map into the target compact "
            f"({int(np.sum(~ok))} of {len(ok)} points escape)")


# ---------------------------------------------------------------------------
# equality detection and the functional equation


def equality_mode(f: Sequence[MultiPoly], variety: VarietySpec,
                  schedule: Optional[Schedule] = None
                  ) -> Tuple[bool, Optional[Union[Fraction, float]]]:
    """Decide whether growth and Łojasiewicz exponents coincide.

    One-parameter charts give an exact rational answer.  On the ambient
    space the decision goes through component degrees and the separation of
    their top-part zero sets.  Everything else falls back to comparing the
    two numeric estimates.
    """
    charts = variety.charts
    if charts and all(c.param_dim == 1 for c in charts):
        ce = exact_exponents_variety(f, variety)
        if ce.limit_exists:
            return True, ce.growth
        return False, None
    if variety.is_ambient_space():
        degs = [p.total_degree() for p in f]
        if NEG_INF in degs:
            return False, None
        if variety.ambient_dim == 1:
            d = Fraction(int(max(degs)))
            return True, d
        schedule = schedule or default_schedule()
        verdict = cone_common_direction_check(f, variety, schedule)
        if len(set(degs)) == 1 and verdict == SEPARATED:
            return True, Fraction(int(degs[0]))
        if verdict == COMMON_DIRECTION or len(set(degs)) > 1:
            return False, None
    schedule = schedule or default_schedule()
    g = float(growth_exponent(f, variety, schedule).value)
    lo = float(lojasiewicz_exponent(f, variety, schedule).value)
    if math.isfinite(g) and math.isfinite(lo) and abs(g - lo) <= 0.02:
        return True, 0.5 * (g + lo)
    return False, None


def green_from_functional_equation(f: Sequence[MultiPoly], d: float,
                                   green_target: GreenEstimate,
                                   name: str = "functional_equation") -> GreenEstimate:
    """Evaluator ``z -> (1/d) G_target(f(z))`` on the source variety.

    Valid when the map's growth and Łojasiewicz exponents share the value
    ``d``; composable through chains of maps.
    """
    if d <= 0:
        raise SpecError("functional equation needs d > 0")
    f = tuple(f)

    def vector(points: np.ndarray) -> np.ndarray:
        return green_target.eval_many(map_eval_many(f, points)) / float(d)

    def evaluator(z: Sequence[complex]) -> float:
        return float(vector(np.asarray([z], dtype=complex))[0])

    meta = {"name": name, "vector_evaluator": vector,
            "slack": green_target.slack / float(d), "d": float(d)}
    return GreenEstimate(FUNCTIONAL_EQUATION, max(green_target.degree, 1),
                         green_target.design, green_target.basis_rank,
                         evaluator, meta)


# ---------------------------------------------------------------------------
# ball bounds from a coordinate split


def ball_green_bounds(variety: VarietySpec, a: Sequence[complex],
                      rho: float) -> Tuple[GreenEstimate, GreenEstimate, float]:
    """Two-sided closed-form bounds for the extremal function of a ball trace.

    Requires a linear (c = 1) coordinate split; the inner radius solves
    ``r + C (1 + r) = rho`` so the split-bounded slab fits inside the ball.
    Both evaluators carry restricted-to-the-variety semantics.
    """
    split = variety.sadullaev
    if split is None:
        raise UnsupportedError("variety carries no coordinate split")
    if split.c != 1:
        raise UnsupportedError(
            "only the linear split bound is implemented; nonlinear splits "
            "change the inner-radius arithmetic")
    if rho <= split.C:
        raise BallTooSmallError(
            f"ball radius {rho} does not exceed the split constant {split.C}")
    r = (rho - split.C) / (1.0 + split.C)
    center = np.asarray(a, dtype=complex)

    def make(scale: float, label: str) -> GreenEstimate:
        def vector(points: np.ndarray) -> np.ndarray:
            dist = np.linalg.norm(np.asarray(points, dtype=complex)
                                  - center[None, :], axis=1)
            with np.errstate(divide="ignore"):
                return np.maximum(np.log(np.maximum(dist, 1e-300) / scale), 0.0)

        def evaluator(z: Sequence[complex]) -> float:
            return float(vector(np.asarray([z], dtype=complex))[0])

        return GreenEstimate("closed_form", 1, None, 0, evaluator,
                             {"name": label, "vector_evaluator": vector,
                              "slack": 0.0})

    lower = make(rho, f"log+ ||z-a||/{rho}")
    upper = make(r, f"log+ ||z-a||/{r}")
    return lower, upper, r
