"""Growth, Łojasiewicz and inverse-order exponents of polynomial maps.

Exact values come from one-parameter charts, where univariate Laurent
degrees settle both tails.  Numeric estimates drive escape samples through a
radius schedule; the liminf-type searches additionally refine shell minima by
damped Gauss-Newton steps in chart parameters, because adversarial descent
directions occupy vanishing measure.

Per-radius ratio statistics carry an additive ``O(1/log r)`` bias from
multiplicative constants; the reported value removes it with the fitted
intercept before taking the plateau median over the top half of the radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import BoundedMapError, NoChartError, SpecError, UnsupportedError
from .polynomial import NEG_INF, MultiPoly
from .variety import Chart, VarietySpec, sample_escape

GROWTH = "growth"
LOJASIEWICZ = "lojasiewicz"
ORDER = "order"

PROPER = "PROPER"
NOT_PROPER = "NOT_PROPER"
INCONCLUSIVE = "INCONCLUSIVE"
SEPARATED = "SEPARATED"
COMMON_DIRECTION = "COMMON_DIRECTION"

_SHELL = 1.05


@dataclass(frozen=True)
class Schedule:
    """Radius ladder and search effort for exponent estimates."""

    radii: Tuple[float, ...]
    per_radius: int = 64
    seed: int = 7
    multistarts: int = 16
    descent_steps: int = 50

    def __post_init__(self):
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        if len(self.radii) < 2:
            raise SpecError("schedule needs at least two radii")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise SpecError("schedule radii must increase")


def default_schedule(seed: int = 7) -> Schedule:
    return Schedule(tuple(np.geomspace(1e2, 1e6, 8)), 64, seed)


@dataclass(eq=False)
class FitResult:
    slope: float
    intercept: float
    residual: float

    def to_json_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept,
                "residual": self.residual}


@dataclass(eq=False)
class ExponentEstimate:
    """A single exponent with its per-radius evidence.

    ``exact`` estimates carry a rational ``value`` and no radius evidence.
    """

    kind: str
    value: Union[float, Fraction]
    exact: bool
    per_radius: Tuple[Tuple[float, float], ...] = ()
    fit: Optional[FitResult] = None

    def __float__(self) -> float:
        return float(self.value)

    def to_json_dict(self) -> dict:
        if self.exact:
            value = str(Fraction(self.value))
            value_float = float(self.value)
        elif math.isinf(float(self.value)):
            value = "-inf" if float(self.value) < 0 else "inf"
            value_float = None
        else:
            value = float(self.value)
            value_float = float(self.value)
        return {
            "kind": self.kind,
            "value": value,
            "value_float": value_float,
            "exact": self.exact,
            "per_radius": [[r, s] for r, s in self.per_radius],
            "fit": self.fit.to_json_dict() if self.fit else None,
        }


# ---------------------------------------------------------------------------
# exact chart route


@dataclass(frozen=True)
class ChartExponents:
    growth: Fraction
    loja_along_chart: Fraction
    limit_exists: bool


def _laurent_span(p: MultiPoly) -> Tuple[Optional[int], Optional[int]]:
    """(max exponent, min exponent) of a univariate Laurent polynomial."""
    if p.is_zero():
        return None, None
    exps = [e[0] for e in p.terms]
    return max(exps), min(exps)


def exact_exponents_chart(f: Sequence[MultiPoly], chart: Chart) -> ChartExponents:
    """Exact growth and along-chart liminf exponents from chart pullbacks.

    For a one-parameter chart the two tails (parameter to infinity, and to
    zero when poles are present) carry all escapes, so the values are exact
    rationals.  Identity charts reduce to plain degrees.  Multi-parameter
    non-identity charts are rejected.
    """
    if chart.is_identity():
        degs = [p.total_degree() for p in f]
        top = max(degs)
        if top == NEG_INF:
            raise SpecError("zero map has no finite exponents")
        d = Fraction(int(top))
        return ChartExponents(d, d, True)
    if chart.param_dim != 1:
        raise NoChartError("exact exponents need a one-parameter or identity chart")
    pulls = [comp.compose(list(chart.components)) for comp in f]
    if all(q.is_zero() for q in pulls):
        raise SpecError("map vanishes identically on the chart")
    chart_tops = [_laurent_span(c) for c in chart.components]
    top_gamma = max((t for t, _ in chart_tops if t is not None), default=0)
    bot_gamma = min((b for _, b in chart_tops if b is not None), default=0)
    end_values: List[Fraction] = []
    if top_gamma > 0:
        tops = [_laurent_span(q)[0] for q in pulls]
        top_f = max(t for t in tops if t is not None) if any(
            t is not None for t in tops) else None
        if top_f is not None:
            end_values.append(Fraction(top_f, top_gamma))
    if bot_gamma < 0:
        bots = [_laurent_span(q)[1] for q in pulls]
        bot_f = min(b for b in bots if b is not None) if any(
            b is not None for b in bots) else None
        if bot_f is not None:
            end_values.append(Fraction(bot_f, bot_gamma))
    if not end_values:
        raise NoChartError("chart has no unbounded end")
    growth = max(end_values)
    loja = min(end_values)
    return ChartExponents(growth, loja, growth == loja)


def exact_exponents_variety(f: Sequence[MultiPoly],
                            variety: VarietySpec) -> ChartExponents:
    """Aggregate chart exponents over every chart of the variety."""
    charts = variety.require_charts()
    growth: Optional[Fraction] = None
    loja: Optional[Fraction] = None
    for chart in charts:
        ce = exact_exponents_chart(f, chart)
        growth = ce.growth if growth is None else max(growth, ce.growth)
        loja = ce.loja_along_chart if loja is None else min(loja, ce.loja_along_chart)
    return ChartExponents(growth, loja, growth == loja)


# ---------------------------------------------------------------------------
# shared numeric machinery


class _MapOnChart:
    """A polynomial map composed with a chart, with its Jacobian."""

    def __init__(self, f: Sequence[MultiPoly], chart: Chart):
        self.chart = chart
        self.f = list(f)
        self._df = [[comp.partial(i) for i in range(comp.num_vars)] for comp in f]
        self._dgamma = [[g.partial(l) for l in range(chart.param_dim)]
                        for g in chart.components]

    def points(self, params: np.ndarray) -> np.ndarray:
        return self.chart.eval_many(params)

    def values(self, params: np.ndarray) -> np.ndarray:
        pts = self.chart.eval_many(params)
        return np.stack([comp.eval_many(pts) for comp in self.f], axis=1)

    def norms(self, params: np.ndarray) -> np.ndarray:
        return np.linalg.norm(self.values(params), axis=1)

    def jacobian(self, params: np.ndarray) -> np.ndarray:
        """Batched Jacobian of f(chart(t)) with respect to t: (m, M, k)."""
        pts = self.chart.eval_many(params)
        m = len(params)
        M, N, k = len(self.f), self.chart.ambient_dim, self.chart.param_dim
        Jf = np.empty((m, M, N), dtype=complex)
        for j in range(M):
            for i in range(N):
                Jf[:, j, i] = self._df[j][i].eval_many(pts)
        Jg = np.empty((m, N, k), dtype=complex)
        for i in range(N):
            for l in range(k):
                Jg[:, i, l] = self._dgamma[i][l].eval_many(params)
        return Jf @ Jg


def _project_band(chart: Chart, params: np.ndarray, lo: float, hi: float,
                  norm_fn: Callable[[np.ndarray], np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    """Rescale parameter rows so ``norm_fn`` lands in ``[lo, hi]``.

    Newton iteration on the local log-log scaling exponent, with a clamped
    step.  Returns the rescaled rows and a success mask.
    """
    params = np.array(params, dtype=complex)
    target = math.sqrt(lo * hi)
    m = len(params)
    ok = np.zeros(m, dtype=bool)
    s = np.ones(m)
    for _ in range(40):
        g = norm_fn(params * s[:, None])
        ok = (g >= lo) & (g <= hi)
        if np.all(ok):
            break
        g_eps = norm_fn(params * (s * 1.01)[:, None])
        with np.errstate(divide="ignore", invalid="ignore"):
            p = np.log(g_eps / g) / math.log(1.01)
            step = np.log(target / g) / p
        step = np.where(np.isfinite(step), step, 0.3)
        step = np.clip(step, -1.0, 1.0)
        s = np.where(ok, s, s * np.exp(step))
    return params * s[:, None], ok


def _regression(log_r: np.ndarray, log_v: np.ndarray) -> FitResult:
    finite = np.isfinite(log_v)
    if np.sum(finite) < 2:
        return FitResult(float("nan"), float("nan"), float("inf"))
    x, y = log_r[finite], log_v[finite]
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return FitResult(float(slope), float(intercept), residual)


def _plateau_value(radii: Sequence[float], log_extreme: np.ndarray,
                   stats: np.ndarray) -> Tuple[float, FitResult]:
    """De-biased plateau: fit over the top half, subtract the intercept from
    each ratio statistic, then take the median."""
    k = len(radii) // 2
    top_r = np.log(np.asarray(radii[k:]))
    top_v = log_extreme[k:]
    fit = _regression(top_r, top_v)
    if not math.isfinite(fit.intercept):
        finite = stats[np.isfinite(stats)]
        value = float(np.median(finite)) if len(finite) else NEG_INF
        return value, fit
    adjusted = stats[k:] - fit.intercept / top_r
    adjusted = adjusted[np.isfinite(adjusted)]
    value = float(np.median(adjusted)) if len(adjusted) else NEG_INF
    return value, fit


def _escape_params(variety: VarietySpec, schedule: Schedule) -> Dict[float, List[Tuple[Chart, np.ndarray]]]:
    """Escape samples kept in parameter space, grouped by radius and chart."""
    charts = variety.require_charts()
    children = np.random.SeedSequence(schedule.seed).spawn(len(schedule.radii))
    from .variety import _split_count, band_params
    out: Dict[float, List[Tuple[Chart, np.ndarray]]] = {}
    for idx, r in enumerate(schedule.radii):
        rng = np.random.default_rng(children[idx])
        lanes = []
        for chart in charts:
            lanes.append((chart, +1))
            if chart.pole_degree > 0:
                lanes.append((chart, -1))
        counts = _split_count(schedule.per_radius, len(lanes))
        group: List[Tuple[Chart, np.ndarray]] = []
        for (chart, end), cnt in zip(lanes, counts):
            if cnt == 0:
                continue
            params = band_params(chart, rng, cnt, r, _SHELL * r, end)
            group.append((chart, params))
        out[r] = group
    return out


def _ratio_stats(points: np.ndarray, fvals: np.ndarray) -> np.ndarray:
    nz = np.linalg.norm(points, axis=1)
    nf = np.linalg.norm(fvals, axis=1)
    with np.errstate(divide="ignore"):
        return np.log(nf) / np.log(nz)


# ---------------------------------------------------------------------------
# numeric exponents


def _check_map(f: Sequence[MultiPoly], variety: VarietySpec) -> List[MultiPoly]:
    f = list(f)
    if not f:
        raise SpecError("empty map")
    for comp in f:
        if comp.num_vars != variety.ambient_dim:
            raise SpecError("map components must use the ambient variables")
    return f


def growth_exponent(f: Sequence[MultiPoly], variety: VarietySpec,
                    schedule: Schedule) -> ExponentEstimate:
    """Numeric limsup of ``log ||f|| / log ||z||`` along escape samples."""
    f = _check_map(f, variety)
    if all(p.is_zero() for p in f):
        return ExponentEstimate(GROWTH, NEG_INF, False)
    escapes = sample_escape(variety, schedule.radii, schedule.per_radius,
                            schedule.seed)
    stats, extremes = [], []
    for r in schedule.radii:
        pts = escapes[r]
        fv = np.stack([p.eval_many(pts) for p in f], axis=1)
        ratios = _ratio_stats(pts, fv)
        stats.append(float(np.max(ratios)))
        with np.errstate(divide="ignore"):
            extremes.append(float(np.log(np.max(np.linalg.norm(fv, axis=1)))))
    value, fit = _plateau_value(schedule.radii, np.asarray(extremes),
                                np.asarray(stats))
    per_radius = tuple(zip(schedule.radii, stats))
    return ExponentEstimate(GROWTH, value, False, per_radius, fit)


def _descend_min(mapping: _MapOnChart, starts: np.ndarray, lo: float, hi: float,
                 steps: int, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """Damped Gauss-Newton minimization of ``||f||`` on a norm shell.

    Projection back onto the shell happens after every accepted step.
    Returns final parameters and ``||f||`` values.
    """
    shell = lambda p: np.linalg.norm(mapping.points(p), axis=1)
    params = np.array(starts, dtype=complex)
    best = mapping.norms(params)
    lambdas = (1.0, 0.5, 0.25, 0.1, 0.03)
    for step in range(steps):
        J = mapping.jacobian(params)
        F = mapping.values(params)
        delta = np.empty_like(params)
        for i in range(len(params)):
            delta[i], *_ = np.linalg.lstsq(J[i], -F[i], rcond=None)
        improved = np.zeros(len(params), dtype=bool)
        for lam in lambdas:
            trial = params + lam * delta
            trial, ok = _project_band(mapping.chart, trial, lo, hi, shell)
            val = mapping.norms(trial)
            take = ~improved & ok & (val < best)
            params[take] = trial[take]
            best[take] = val[take]
            improved |= take
            if np.all(improved):
                break
        if not np.all(improved) and step % 3 == 2:
            # multiplicative kick for rows stuck outside the basin
            stuck = ~improved
            noise = 1.0 + 0.5 * (rng.standard_normal(params.shape)
                                 + 1j * rng.standard_normal(params.shape))
            trial = np.where(stuck[:, None], params * noise, params)
            trial, ok = _project_band(mapping.chart, trial, lo, hi, shell)
            val = mapping.norms(trial)
            take = stuck & ok & (val < best)
            params[take] = trial[take]
            best[take] = val[take]
    return params, best


def lojasiewicz_exponent(f: Sequence[MultiPoly], variety: VarietySpec,
                         schedule: Schedule) -> ExponentEstimate:
    """Numeric liminf of ``log ||f|| / log ||z||``.

    Shell minima are refined by multistart Gauss-Newton descent in chart
    parameters; plain sampling misses measure-thin descent directions.
    """
    f = _check_map(f, variety)
    if all(p.is_zero() for p in f):
        return ExponentEstimate(LOJASIEWICZ, NEG_INF, False)
    groups = _escape_params(variety, schedule)
    ss = np.random.SeedSequence(schedule.seed + 0x5EED)
    children = ss.spawn(len(schedule.radii))
    stats, extremes = [], []
    for idx, r in enumerate(schedule.radii):
        rng = np.random.default_rng(children[idx])
        best_stat = math.inf
        best_norm = math.inf
        for chart, params in groups[r]:
            mapping = _MapOnChart(f, chart)
            norms = mapping.norms(params)
            order = np.argsort(norms)
            starts = params[order[:max(1, schedule.multistarts)]]
            refined, fmin = _descend_min(mapping, starts, r, _SHELL * r,
                                         schedule.descent_steps, rng)
            pts = mapping.points(refined)
            fv = mapping.values(refined)
            ratios = _ratio_stats(pts, fv)
            candidates = np.concatenate([ratios, _ratio_stats(
                mapping.points(params), mapping.values(params))])
            best_stat = min(best_stat, float(np.min(candidates)))
            best_norm = min(best_norm, float(np.min(fmin)), float(np.min(norms)))
        stats.append(best_stat)
        with np.errstate(divide="ignore"):
            extremes.append(float(np.log(best_norm)) if best_norm > 0 else NEG_INF)
    value, fit = _plateau_value(schedule.radii, np.asarray(extremes),
                                np.asarray(stats))
    per_radius = tuple(zip(schedule.radii, stats))
    return ExponentEstimate(LOJASIEWICZ, value, False, per_radius, fit)


def order_of_map(f: Sequence[MultiPoly], variety: VarietySpec,
                 schedule: Schedule) -> ExponentEstimate:
    """Numeric limsup of ``log ||z|| / log ||f(z)||`` over image-norm bands.

    The schedule radii are reinterpreted as ``||f||`` band targets; within a
    band, ``||z||`` is pushed up by an adaptive multiplicative pattern search.
    """
    f = _check_map(f, variety)
    charts = variety.require_charts()
    probe = sample_escape(variety, (schedule.radii[0], schedule.radii[-1]),
                          max(8, schedule.per_radius // 4), schedule.seed)
    f_lo = max(np.max(np.linalg.norm(
        np.stack([p.eval_many(probe[r]) for p in f], axis=1), axis=1))
        for r in (schedule.radii[0],))
    f_hi = max(np.max(np.linalg.norm(
        np.stack([p.eval_many(probe[r]) for p in f], axis=1), axis=1))
        for r in (schedule.radii[-1],))
    if not (f_hi > 10.0 * f_lo or f_hi > 1e3):
        raise BoundedMapError("map norm fails to grow across the schedule")
    ss = np.random.SeedSequence(schedule.seed + 0x0DE)
    children = ss.spawn(len(schedule.radii))
    from .variety import _random_directions
    stats, extremes = [], []
    for idx, s_target in enumerate(schedule.radii):
        rng = np.random.default_rng(children[idx])
        best_stat = -math.inf
        best_norm = 0.0
        for chart in charts:
            mapping = _MapOnChart(f, chart)
            fnorm = lambda p: mapping.norms(p)
            lanes = [+1] + ([-1] if chart.pole_degree > 0 else [])
            for end in lanes:
                cnt = max(4, schedule.multistarts)
                dirs = _random_directions(rng, cnt, chart.param_dim)
                d_pos = max(chart.positive_degree, 1)
                start = (s_target ** (1.0 / d_pos) if end > 0
                         else s_target ** (-1.0 / max(chart.pole_degree, 1)))
                params, ok = _project_band(chart, dirs * start, s_target,
                                           _SHELL * s_target, fnorm)
                params = params[ok]
                if len(params) == 0:
                    continue
                params = _ascend_z(mapping, params, s_target, _SHELL * s_target,
                                   schedule.descent_steps, rng)
                pts = mapping.points(params)
                fv = mapping.values(params)
                nz = np.linalg.norm(pts, axis=1)
                nf = np.linalg.norm(fv, axis=1)
                with np.errstate(divide="ignore"):
                    ratios = np.log(nz) / np.log(nf)
                best_stat = max(best_stat, float(np.max(ratios)))
                best_norm = max(best_norm, float(np.max(nz)))
        stats.append(best_stat)
        with np.errstate(divide="ignore"):
            extremes.append(float(np.log(best_norm)) if best_norm > 0 else NEG_INF)
    value, fit = _plateau_value(schedule.radii, np.asarray(extremes),
                                np.asarray(stats))
    per_radius = tuple(zip(schedule.radii, stats))
    return ExponentEstimate(ORDER, value, False, per_radius, fit)


def _ascend_z(mapping: _MapOnChart, params: np.ndarray, lo: float, hi: float,
              steps: int, rng: np.random.Generator) -> np.ndarray:
    fnorm = lambda p: mapping.norms(p)
    best = np.linalg.norm(mapping.points(params), axis=1)
    sigma = np.full(len(params), 0.5)
    for _ in range(steps):
        noise = 1.0 + sigma[:, None] * (rng.standard_normal(params.shape)
                                        + 1j * rng.standard_normal(params.shape))
        trial, ok = _project_band(mapping.chart, params * noise, lo, hi, fnorm)
        val = np.linalg.norm(mapping.points(trial), axis=1)
        take = ok & (val > best)
        params[take] = trial[take]
        best[take] = val[take]
        sigma = np.where(take, np.minimum(sigma * 1.6, 4.0),
                         np.maximum(sigma * 0.7, 1e-3))
    return params


# ---------------------------------------------------------------------------
# verdicts


def properness_check(f: Sequence[MultiPoly], variety: VarietySpec,
                     schedule: Schedule) -> str:
    """Dichotomy from the sign of the Łojasiewicz estimate, with a band of
    honest indecision and a bounded-minima override."""
    est = lojasiewicz_exponent(f, variety, schedule)
    value = float(est.value)
    if value >= 0.1:
        return PROPER
    if value <= -0.1:
        return NOT_PROPER
    if est.fit is not None and math.isfinite(est.fit.slope) and est.fit.slope < 0.05:
        return NOT_PROPER
    return INCONCLUSIVE


def _sphere_minimize(polys: Sequence[MultiPoly], n: int, samples: int,
                     descents: int, seed: int) -> Tuple[float, float]:
    """(sample minimum, descent minimum) of ``max_j |p_j|`` on the unit sphere."""
    rng = np.random.default_rng(seed)
    best_overall = math.inf
    pts = rng.standard_normal((samples, n)) + 1j * rng.standard_normal((samples, n))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    vals = np.max(np.stack([np.abs(p.eval_many(pts)) for p in polys], axis=1), axis=1)
    sample_min = float(np.min(vals))
    order = np.argsort(vals)
    starts = pts[order[:descents]]
    cur = starts.copy()
    cur_val = vals[order[:descents]].copy()
    sigma = np.full(len(cur), 0.3)
    for _ in range(300):
        noise = cur + sigma[:, None] * (rng.standard_normal(cur.shape)
                                        + 1j * rng.standard_normal(cur.shape))
        noise /= np.linalg.norm(noise, axis=1)[:, None]
        val = np.max(np.stack([np.abs(p.eval_many(noise)) for p in polys],
                              axis=1), axis=1)
        take = val < cur_val
        cur[take] = noise[take]
        cur_val[take] = val[take]
        sigma = np.where(take, sigma * 1.3, sigma * 0.6)
        sigma = np.clip(sigma, 1e-13, 1.0)
    # Coordinate-zeroing polish: directions at infinity often sit on
    # coordinate subspaces, where the pattern search converges only linearly.
    polished = cur.copy()
    small = np.abs(polished) < 0.05
    polished[small] = 0.0
    norms = np.linalg.norm(polished, axis=1)
    keep = norms > 0.5
    if np.any(keep):
        polished = polished[keep] / norms[keep, None]
        val = np.max(np.stack([np.abs(p.eval_many(polished)) for p in polys],
                              axis=1), axis=1)
        cur_val = np.concatenate([cur_val, val])
    best_overall = float(np.min(cur_val))
    return sample_min, min(sample_min, best_overall)


def cone_common_direction_check(f: Sequence[MultiPoly], variety: VarietySpec,
                                schedule: Schedule) -> str:
    """Do the components' zero sets share a direction at infinity?

    On the ambient space the test is exact through top homogeneous parts
    minimized over the unit sphere.  On charted varieties the test clusters
    normalized far points of each zero set and is deliberately conservative.
    """
    f = _check_map(f, variety)
    if variety.is_ambient_space():
        tops = []
        for p in f:
            d = p.total_degree()
            if d == NEG_INF:
                return INCONCLUSIVE
            tops.append(p.homogeneous_part(int(d)))
        sample_min, best = _sphere_minimize(tops, variety.ambient_dim,
                                            10 ** 5, 100, schedule.seed)
        if best < 1e-10:
            return COMMON_DIRECTION
        if best > 1e-4:
            return SEPARATED
        return INCONCLUSIVE
    return _cone_check_numeric(f, variety, schedule)


def _cone_check_numeric(f: Sequence[MultiPoly], variety: VarietySpec,
                        schedule: Schedule) -> str:
    charts = variety.require_charts()
    radii = schedule.radii[-3:]
    directions: List[np.ndarray] = []
    for j, comp in enumerate(f):
        found: List[np.ndarray] = []
        deg = max(float(comp.total_degree()), 0.0)
        for idx, r in enumerate(radii):
            rng = np.random.default_rng(
                np.random.SeedSequence((schedule.seed, 77, j, idx)))
            for chart in charts:
                mapping = _MapOnChart([comp], chart)
                shell = lambda p: np.linalg.norm(mapping.points(p), axis=1)
                from .variety import _random_directions
                dirs = _random_directions(rng, schedule.multistarts,
                                          chart.param_dim)
                d_pos = max(chart.positive_degree, 1)
                params, ok = _project_band(chart, dirs * r ** (1.0 / d_pos),
                                           r, _SHELL * r, shell)
                params = params[ok]
                if len(params) == 0:
                    continue
                refined, fmin = _descend_min(mapping, params, r, _SHELL * r,
                                             schedule.descent_steps, rng)
                pts = mapping.points(refined)
                near = fmin <= 1e-6 * (1.0 + r) ** deg
                for z in pts[near]:
                    found.append(z / np.linalg.norm(z))
        if not found:
            return SEPARATED
        directions.append(np.asarray(found))
    common = directions[0]
    for dirs in directions[1:]:
        keep = []
        for u in common:
            dist = np.sqrt(np.maximum(
                0.0, 1.0 - np.abs(dirs @ u.conj()) ** 2
                / (np.linalg.norm(dirs, axis=1) ** 2)))
            if np.any(dist <= 1e-3):
                keep.append(u)
        common = np.asarray(keep) if keep else np.empty((0, variety.ambient_dim))
        if len(common) == 0:
            break
    if len(common) > 0:
        return COMMON_DIRECTION
    return INCONCLUSIVE
