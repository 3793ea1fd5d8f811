"""Algebraic sets: implicit systems, polynomial charts, compacts, samplers.

A variety is described by implicit equations and/or (Laurent-)polynomial
charts.  Compact subsets are balls, polynomial polyhedra, parameter regions
of a chart, or explicit point lists.  Samplers are deterministic for a fixed
seed; the sampling measure is the pushforward of a simple parameter-space
measure and is documented as non-canonical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (BracketingFailedError, DimensionMismatchError,
                     InvalidSplitError, RejectionStarvedError, SpecError,
                     UnsupportedError)
from .polynomial import MultiPoly

FULL = "full"
PUNCTURED = "punctured"

_VALIDATION_SEED = 20260810
_VALIDATION_DRAWS = 1000


@dataclass(frozen=True)
class Chart:
    """Polynomial map from C^k (or (C*)^k when punctured) into the ambient space."""

    param_dim: int
    components: Tuple[MultiPoly, ...]
    domain: str = FULL

    def __post_init__(self):
        if self.param_dim < 1:
            raise SpecError("chart param_dim must be positive")
        object.__setattr__(self, "components", tuple(self.components))
        if self.domain not in (FULL, PUNCTURED):
            raise SpecError(f"unknown chart domain {self.domain!r}")
        for comp in self.components:
            if comp.num_vars != self.param_dim:
                raise DimensionMismatchError(
                    "chart component variable count differs from param_dim")
            if comp.laurent and self.domain != PUNCTURED:
                raise SpecError("Laurent chart components require a punctured domain")

    @property
    def ambient_dim(self) -> int:
        return len(self.components)

    @property
    def positive_degree(self) -> int:
        """Largest positive-part degree among components."""
        degs = [c.total_degree() for c in self.components if not c.is_zero()]
        return int(max(degs)) if degs else 0

    @property
    def pole_degree(self) -> int:
        return max((c.pole_degree() for c in self.components), default=0)

    def is_identity(self) -> bool:
        if self.param_dim != self.ambient_dim:
            return False
        for i, comp in enumerate(self.components):
            exp = tuple(1 if j == i else 0 for j in range(self.param_dim))
            if comp.terms != {exp: 1.0 + 0.0j}:
                return False
        return True

    def eval_many(self, params: np.ndarray) -> np.ndarray:
        """Map an ``(m, param_dim)`` parameter array to ``(m, ambient_dim)``."""
        params = np.asarray(params, dtype=complex)
        if params.ndim == 1:
            params = params.reshape(-1, self.param_dim)
        cols = [comp.eval_many(params) for comp in self.components]
        return np.stack(cols, axis=1)

    def eval_point(self, t: Sequence[complex]) -> Tuple[complex, ...]:
        return tuple(comp.eval(t) for comp in self.components)


def identity_chart(n: int) -> Chart:
    return Chart(n, tuple(MultiPoly.variable(n, i) for i in range(n)), FULL)


@dataclass(frozen=True)
class SadullaevSplit:
    """Coordinate split with ``||z_x|| <= C (1 + ||z_y||^c)`` on the variety.

    Index sets refer to coordinates after applying the optional unitary
    change of variables ``unitary @ z``.
    """

    x_indices: Tuple[int, ...]
    y_indices: Tuple[int, ...]
    C: float
    c: float
    unitary: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "x_indices", tuple(self.x_indices))
        object.__setattr__(self, "y_indices", tuple(self.y_indices))
        if self.C < 0 or self.c <= 0:
            raise SpecError("split constants must satisfy C >= 0, c > 0")
        if set(self.x_indices) & set(self.y_indices):
            raise SpecError("split index sets overlap")

    def split_norms(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        pts = np.asarray(points, dtype=complex)
        if self.unitary is not None:
            pts = pts @ np.asarray(self.unitary, dtype=complex).T
        nx = (np.linalg.norm(pts[:, list(self.x_indices)], axis=1)
              if self.x_indices else np.zeros(pts.shape[0]))
        ny = (np.linalg.norm(pts[:, list(self.y_indices)], axis=1)
              if self.y_indices else np.zeros(pts.shape[0]))
        return nx, ny


@dataclass(frozen=True)
class VarietySpec:
    """An algebraic set with at least one description (implicit or chart)."""

    ambient_dim: int
    implicit: Tuple[MultiPoly, ...] = ()
    charts: Tuple[Chart, ...] = ()
    sadullaev: Optional[SadullaevSplit] = None
    irreducible_asserted: bool = False
    locally_irreducible_asserted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "implicit", tuple(self.implicit))
        object.__setattr__(self, "charts", tuple(self.charts))
        if self.ambient_dim < 1:
            raise SpecError("ambient_dim must be positive")
        if not self.implicit and not self.charts:
            raise SpecError("variety needs implicit equations or a chart")
        for p in self.implicit:
            if p.num_vars != self.ambient_dim:
                raise DimensionMismatchError(
                    "implicit equation variable count differs from ambient_dim")
            if p.laurent:
                raise SpecError("implicit equations must be ordinary polynomials")
        for chart in self.charts:
            if chart.ambient_dim != self.ambient_dim:
                raise DimensionMismatchError(
                    "chart component count differs from ambient_dim")
        self._validate_charts()
        self._validate_split()

    def _validation_params(self, chart: Chart, rng: np.random.Generator,
                           count: int, spread: float = 1.5) -> np.ndarray:
        mags = np.exp(rng.uniform(-spread, spread, size=(count, chart.param_dim)))
        phases = rng.uniform(0.0, 2.0 * np.pi, size=(count, chart.param_dim))
        return mags * np.exp(1j * phases)

    def _validate_charts(self):
        if not self.implicit:
            return
        rng = np.random.default_rng(_VALIDATION_SEED)
        degs = [max(int(p.total_degree()), 0) for p in self.implicit]
        for chart in self.charts:
            params = self._validation_params(chart, rng, _VALIDATION_DRAWS)
            pts = chart.eval_many(params)
            norms = np.linalg.norm(pts, axis=1)
            for p, d in zip(self.implicit, degs):
                residual = np.abs(p.eval_many(pts))
                allowed = 1e-8 * (1.0 + norms) ** d
                worst = np.max(residual - allowed)
                if worst > 0:
                    raise SpecError(
                        "chart image violates an implicit equation "
                        f"(worst excess {worst:.3e})")

    def _validate_split(self):
        if self.sadullaev is None or not self.charts:
            return
        rng = np.random.default_rng(_VALIDATION_SEED + 1)
        split = self.sadullaev
        for chart in self.charts:
            params = self._validation_params(chart, rng, _VALIDATION_DRAWS,
                                             spread=4.0)
            pts = chart.eval_many(params)
            nx, ny = split.split_norms(pts)
            bound = split.C * (1.0 + ny ** split.c) + 1e-6
            worst = np.max(nx - bound)
            if worst > 0:
                raise InvalidSplitError(
                    f"split bound fails on sampled points (excess {worst:.3e})")

    # -- helpers -----------------------------------------------------------

    def is_ambient_space(self) -> bool:
        return not self.implicit and any(c.is_identity() for c in self.charts)

    def require_charts(self) -> Tuple[Chart, ...]:
        if not self.charts:
            raise UnsupportedError("operation needs at least one chart")
        return self.charts


def ambient_space(n: int) -> VarietySpec:
    """C^n with its identity chart."""
    return VarietySpec(n, (), (identity_chart(n),),
                       irreducible_asserted=True, locally_irreducible_asserted=True)


def membership(variety: VarietySpec, z: Sequence[complex], tol: float) -> bool:
    """Residual test ``|p_i(z)| <= tol (1 + ||z||)^(deg p_i)`` for all i.

    The relative scaling keeps far-away points of the set from being
    rejected through floating-point growth of the residuals.
    """
    if len(z) != variety.ambient_dim:
        raise DimensionMismatchError("point dimension differs from ambient_dim")
    if not variety.implicit:
        if variety.is_ambient_space():
            return True
        raise UnsupportedError("membership needs an implicit description")
    zv = np.asarray(z, dtype=complex)
    nz = float(np.linalg.norm(zv))
    for p in variety.implicit:
        d = max(int(p.total_degree()), 0)
        if abs(p.eval(tuple(zv))) > tol * (1.0 + nz) ** d:
            return False
    return True


def membership_many(variety: VarietySpec, points: np.ndarray, tol: float) -> np.ndarray:
    if not variety.implicit:
        if variety.is_ambient_space():
            return np.ones(len(points), dtype=bool)
        raise UnsupportedError("membership needs an implicit description")
    pts = np.asarray(points, dtype=complex)
    norms = np.linalg.norm(pts, axis=1)
    ok = np.ones(len(pts), dtype=bool)
    for p in variety.implicit:
        d = max(int(p.total_degree()), 0)
        ok &= np.abs(p.eval_many(pts)) <= tol * (1.0 + norms) ** d
    return ok


# ---------------------------------------------------------------------------
# compact subsets


@dataclass(frozen=True)
class CompactSetSpec:
    """One of: ball, polynomial polyhedron, chart parameter region, point list."""

    kind: str
    center: Optional[Tuple[complex, ...]] = None
    radius: Optional[float] = None
    constraints: Tuple[Tuple[MultiPoly, float], ...] = ()
    chart_index: int = 0
    region_center: Optional[Tuple[complex, ...]] = None
    rmin: Optional[float] = None
    rmax: Optional[float] = None
    points: Optional[Tuple[Tuple[complex, ...], ...]] = None

    @classmethod
    def ball(cls, center: Sequence[complex], radius: float) -> "CompactSetSpec":
        if radius <= 0:
            raise SpecError("ball radius must be positive")
        return cls("ball", center=tuple(complex(c) for c in center),
                   radius=float(radius))

    @classmethod
    def polyhedron(cls, constraints: Sequence[Tuple[MultiPoly, float]]) -> "CompactSetSpec":
        for _, bound in constraints:
            if bound <= 0:
                raise SpecError("polyhedron bounds must be positive")
        return cls("polyhedron",
                   constraints=tuple((p, float(b)) for p, b in constraints))

    @classmethod
    def param_region(cls, chart_index: int, center: Sequence[complex],
                     rmin: float, rmax: float) -> "CompactSetSpec":
        if rmax <= 0 or rmin < 0 or rmin > rmax:
            raise SpecError("need 0 <= rmin <= rmax, rmax > 0")
        return cls("param_region", chart_index=int(chart_index),
                   region_center=tuple(complex(c) for c in center),
                   rmin=float(rmin), rmax=float(rmax))

    @classmethod
    def point_list(cls, points: Sequence[Sequence[complex]]) -> "CompactSetSpec":
        pts = tuple(tuple(complex(c) for c in z) for z in points)
        if not pts:
            raise SpecError("point list may not be empty")
        return cls("points", points=pts)

    def contains_many(self, points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
        """Defining-inequality test for ball and polyhedron variants."""
        pts = np.asarray(points, dtype=complex)
        if self.kind == "ball":
            center = np.asarray(self.center, dtype=complex)
            return np.linalg.norm(pts - center, axis=1) <= self.radius + tol
        if self.kind == "polyhedron":
            ok = np.ones(len(pts), dtype=bool)
            for p, bound in self.constraints:
                ok &= np.abs(p.eval_many(pts)) <= bound + tol
            return ok
        if self.kind == "points":
            listed = np.asarray(self.points, dtype=complex)
            out = np.zeros(len(pts), dtype=bool)
            for i, z in enumerate(pts):
                out[i] = bool(np.any(np.linalg.norm(listed - z, axis=1) <= tol))
            return out
        raise UnsupportedError(
            "parameter regions have no direct ambient membership test")


@dataclass(eq=False)
class SampleDesign:
    """A finite point cloud on the variety together with its provenance."""

    points: np.ndarray
    origin: CompactSetSpec
    seed: int

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=complex)
        if self.points.ndim != 2 or len(self.points) == 0:
            raise SpecError("design needs a nonempty (m, N) point array")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def ambient_dim(self) -> int:
        return self.points.shape[1]

    def to_csv(self) -> str:
        """RFC-4180 CSV with 2N columns, re/im interleaved."""
        n = self.ambient_dim
        header = ",".join(f"re{i},im{i}" for i in range(n))
        lines = [header]
        for z in self.points:
            lines.append(",".join(f"{c.real!r},{c.imag!r}" for c in z))
        return "\n".join(lines) + "\n"


def design_from_points(points: Sequence[Sequence[complex]], seed: int = 0) -> SampleDesign:
    spec = CompactSetSpec.point_list(points)
    return SampleDesign(np.asarray(spec.points, dtype=complex), spec, seed)


# ---------------------------------------------------------------------------
# samplers


def sample_compact(variety: VarietySpec, compact: CompactSetSpec, count: int,
                   seed: int) -> SampleDesign:
    """Draw ``count`` points of the variety inside the compact set.

    Ball and polyhedron variants sample chart parameters and reject; the
    acceptance test is the compact set's own inequalities at tolerance 1e-9.
    Parameter regions sample the named chart directly; point lists pass
    through unchanged.
    """
    if count < 1:
        raise SpecError("count must be positive")
    if compact.kind == "points":
        pts = np.asarray(compact.points, dtype=complex)
        if len(pts) < count:
            raise SpecError(f"point list has {len(pts)} < {count} points")
        design = SampleDesign(pts, compact, seed)
    elif compact.kind == "param_region":
        charts = variety.require_charts()
        if compact.chart_index >= len(charts):
            raise SpecError("compact references a missing chart")
        chart = charts[compact.chart_index]
        rng = np.random.default_rng(np.random.SeedSequence(seed))
        params = _draw_region(rng, chart.param_dim, compact, count)
        design = SampleDesign(chart.eval_many(params), compact, seed)
    elif compact.kind in ("ball", "polyhedron"):
        design = _rejection_sample(variety, compact, count, seed)
    else:
        raise SpecError(f"unknown compact kind {compact.kind!r}")
    if variety.implicit:
        ok = membership_many(variety, design.points, 1e-6)
        if not np.all(ok):
            raise SpecError("sampled design left the variety")
    return design


def _draw_region(rng: np.random.Generator, k: int, compact: CompactSetSpec,
                 count: int) -> np.ndarray:
    center = np.asarray(compact.region_center, dtype=complex)
    if center.shape != (k,):
        raise SpecError("region center dimension differs from chart param_dim")
    lo, hi = compact.rmin, compact.rmax
    # Area-uniform radius per coordinate, uniform phase.
    u = rng.uniform(0.0, 1.0, size=(count, k))
    radii = np.sqrt(lo * lo + u * (hi * hi - lo * lo))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(count, k))
    return center + radii * np.exp(1j * phases)


def _proposal_magnitude_bounds(chart: Chart, compact: CompactSetSpec) -> Tuple[float, float]:
    if compact.kind == "ball":
        reach = float(np.linalg.norm(np.asarray(compact.center))) + compact.radius
    else:
        reach = 4.0 + sum(b for _, b in compact.constraints)
    d_pos = max(chart.positive_degree, 1)
    hi = 3.0 * (1.0 + reach) ** (1.0 / d_pos)
    if chart.pole_degree > 0:
        lo = 1.0 / hi
    else:
        lo = 1e-3 if chart.domain == PUNCTURED else 0.0
    return lo, hi


def _rejection_sample(variety: VarietySpec, compact: CompactSetSpec, count: int,
                      seed: int) -> SampleDesign:
    charts = variety.require_charts()
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    accepted: List[np.ndarray] = []
    total = 0
    n_acc = 0
    batch = max(4 * count, 256)
    while n_acc < count:
        chart = charts[int(rng.integers(len(charts)))]
        lo, hi = _proposal_magnitude_bounds(chart, compact)
        if lo > 0.0:
            mags = np.exp(rng.uniform(np.log(lo), np.log(hi),
                                      size=(batch, chart.param_dim)))
        else:
            mags = hi * np.sqrt(rng.uniform(0.0, 1.0, size=(batch, chart.param_dim)))
        phases = rng.uniform(0.0, 2.0 * np.pi, size=(batch, chart.param_dim))
        params = mags * np.exp(1j * phases)
        pts = chart.eval_many(params)
        keep = compact.contains_many(pts, tol=1e-9)
        total += batch
        n_new = int(np.sum(keep))
        if n_new:
            accepted.append(pts[keep])
            n_acc += n_new
        if total >= 10 ** 6 and n_acc < 1e-4 * total:
            raise RejectionStarvedError(
                f"acceptance rate {n_acc}/{total} below 1e-4")
    points = np.concatenate(accepted, axis=0)[:count]
    return SampleDesign(points, compact, seed)


# ---------------------------------------------------------------------------
# escape-to-infinity sampling

_SHELL_WIDTH = 1.05


def scale_to_band(chart: Chart, params: np.ndarray, lo: float, hi: float,
                  norm_fn=None, max_steps: int = 200,
                  return_mask: bool = False):
    """Rescale each parameter row by s > 0 until the mapped norm lands in
    ``[lo, hi]``.

    ``norm_fn(points) -> norms`` defaults to the Euclidean norm of the chart
    image.  Scans a log-spaced grid of scalings for a bracket, then bisects.
    With ``return_mask`` the result is ``(params, ok)``; otherwise rows with
    no attainable band raise :class:`BracketingFailedError`.
    """
    if norm_fn is None:
        norm_fn = lambda pts: np.linalg.norm(pts, axis=1)
    params = np.asarray(params, dtype=complex)
    m = len(params)
    target = np.sqrt(lo * hi)
    scales = 2.0 ** np.linspace(-52.0, 52.0, 105)
    stacked = params[:, None, :] * scales[None, :, None]
    flat = stacked.reshape(m * len(scales), params.shape[1])
    with np.errstate(over="ignore", invalid="ignore"):
        norms = norm_fn(chart.eval_many(flat)).reshape(m, len(scales))
    s_lo = np.ones(m)
    s_hi = np.ones(m)
    bracketed = np.zeros(m, dtype=bool)
    for i in range(m):
        nr = norms[i]
        idx = None
        for j in range(len(scales) - 1):
            a, b = nr[j], nr[j + 1]
            if not (np.isfinite(a) and np.isfinite(b)):
                continue
            if (a <= target <= b) or (a >= target >= b):
                idx = j
                break
        if idx is not None:
            s_lo[i], s_hi[i] = scales[idx], scales[idx + 1]
            bracketed[i] = True
    done = np.zeros(m, dtype=bool)
    result = params.copy()
    for _ in range(max_steps):
        active = bracketed & ~done
        if not np.any(active):
            break
        mid = np.sqrt(s_lo * s_hi)
        val = norm_fn(chart.eval_many(params * mid[:, None]))
        hit = active & (val >= lo) & (val <= hi)
        result[hit] = params[hit] * mid[hit, None]
        done |= hit
        lo_nr = norm_fn(chart.eval_many(params * s_lo[:, None]))
        increasing = lo_nr <= val
        go_up = np.where(increasing, val < target, val > target)
        move = bracketed & ~done
        s_lo = np.where(move & go_up, mid, s_lo)
        s_hi = np.where(move & ~go_up, mid, s_hi)
    if return_mask:
        return result, done
    if not np.all(done):
        raise BracketingFailedError(
            f"no scaling reaches the norm band [{lo:.3g}, {hi:.3g}] "
            f"for {int(np.sum(~done))} sampled directions")
    return result


def band_params(chart: Chart, rng: np.random.Generator, count: int,
                lo: float, hi: float, end: int,
                norm_fn=None, max_rounds: int = 25) -> np.ndarray:
    """Draw ``count`` chart parameters whose mapped norm lies in ``[lo, hi]``.

    Directions failing the bracket are redrawn; persistent failure raises
    :class:`BracketingFailedError`.
    """
    d_pos = max(chart.positive_degree, 1)
    start = lo ** (1.0 / d_pos) if end > 0 else lo ** (-1.0 / max(chart.pole_degree, 1))
    collected: List[np.ndarray] = []
    have = 0
    for _ in range(max_rounds):
        need = count - have
        if need <= 0:
            break
        dirs = _random_directions(rng, max(need, 4), chart.param_dim)
        params, ok = scale_to_band(chart, dirs * start, lo, hi,
                                   norm_fn=norm_fn, return_mask=True)
        good = params[ok][:need]
        if len(good):
            collected.append(good)
            have += len(good)
    if have < count:
        raise BracketingFailedError(
            f"could not place {count} points in the norm band "
            f"[{lo:.3g}, {hi:.3g}] after {max_rounds} direction draws")
    return np.concatenate(collected, axis=0)


def _random_directions(rng: np.random.Generator, count: int, k: int) -> np.ndarray:
    mags = np.exp(rng.uniform(-0.7, 0.7, size=(count, k)))
    phases = rng.uniform(0.0, 2.0 * np.pi, size=(count, k))
    return mags * np.exp(1j * phases)


def sample_escape(variety: VarietySpec, radii: Sequence[float], per_radius: int,
                  seed: int) -> Dict[float, np.ndarray]:
    """Points of the variety with norms in ``[r, 1.05 r]`` for each radius.

    Directions are drawn in chart parameter space and rescaled by bisection.
    Laurent charts contribute points from both ends (parameters near infinity
    and near the coordinate hyperplanes).  The seed is split deterministically
    per radius index, so per-radius work may run in parallel without changing
    the output.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise SpecError("radii must be strictly increasing")
    if radii and radii[0] < 1.0:
        raise SpecError("escape radii must be >= 1")
    charts = variety.require_charts()
    children = np.random.SeedSequence(seed).spawn(len(radii))
    out: Dict[float, np.ndarray] = {}
    for idx, r in enumerate(radii):
        rng = np.random.default_rng(children[idx])
        chunks: List[np.ndarray] = []
        lanes = []
        for chart in charts:
            lanes.append((chart, +1))
            if chart.pole_degree > 0:
                lanes.append((chart, -1))
        counts = _split_count(per_radius, len(lanes))
        for (chart, end), cnt in zip(lanes, counts):
            if cnt == 0:
                continue
            params = band_params(chart, rng, cnt, r, _SHELL_WIDTH * r, end)
            chunks.append(chart.eval_many(params))
        pts = np.concatenate(chunks, axis=0)
        norms = np.linalg.norm(pts, axis=1)
        if np.any((norms < r) | (norms > _SHELL_WIDTH * r)):
            raise BracketingFailedError("escape point left the radius band")
        out[r] = pts
    return out


def _split_count(total: int, lanes: int) -> List[int]:
    base = total // lanes
    counts = [base] * lanes
    for i in range(total - base * lanes):
        counts[i] += 1
    return counts


# ---------------------------------------------------------------------------
# JSON interchange


def chart_to_json(chart: Chart) -> dict:
    return {
        "param_dim": chart.param_dim,
        "components": [c.to_json_dict() for c in chart.components],
        "domain": chart.domain,
    }


def chart_from_json(data: dict) -> Chart:
    return Chart(int(data["param_dim"]),
                 tuple(MultiPoly.from_json_dict(c) for c in data["components"]),
                 data.get("domain", FULL))


def variety_to_json(variety: VarietySpec) -> dict:
    split = variety.sadullaev
    return {
        "ambient_dim": variety.ambient_dim,
        "implicit": [p.to_json_dict() for p in variety.implicit],
        "charts": [chart_to_json(c) for c in variety.charts],
        "sadullaev": None if split is None else {
            "x_indices": list(split.x_indices),
            "y_indices": list(split.y_indices),
            "C": split.C,
            "c": split.c,
        },
        "irreducible": variety.irreducible_asserted,
        "locally_irreducible": variety.locally_irreducible_asserted,
    }


def variety_from_json(data: dict) -> VarietySpec:
    split = None
    if data.get("sadullaev"):
        s = data["sadullaev"]
        split = SadullaevSplit(tuple(s["x_indices"]), tuple(s["y_indices"]),
                               float(s["C"]), float(s["c"]))
    return VarietySpec(
        int(data["ambient_dim"]),
        tuple(MultiPoly.from_json_dict(p) for p in data.get("implicit", [])),
        tuple(chart_from_json(c) for c in data.get("charts", [])),
        split,
        bool(data.get("irreducible", False)),
        bool(data.get("locally_irreducible", False)),
    )


def _complex_list(values: Sequence[complex]) -> list:
    return [[z.real, z.imag] for z in values]


def _from_complex_list(values) -> Tuple[complex, ...]:
    return tuple(complex(re, im) for re, im in values)


def compact_to_json(compact: CompactSetSpec) -> dict:
    if compact.kind == "ball":
        return {"kind": "ball", "center": _complex_list(compact.center),
                "radius": compact.radius}
    if compact.kind == "polyhedron":
        return {"kind": "polyhedron",
                "constraints": [{"poly": p.to_json_dict(), "bound": b}
                                for p, b in compact.constraints]}
    if compact.kind == "param_region":
        return {"kind": "param_region", "chart": compact.chart_index,
                "center": _complex_list(compact.region_center),
                "rmin": compact.rmin, "rmax": compact.rmax}
    if compact.kind == "points":
        return {"kind": "points",
                "points": [_complex_list(z) for z in compact.points]}
    raise SpecError(f"unknown compact kind {compact.kind!r}")


def compact_from_json(data: dict) -> CompactSetSpec:
    kind = data["kind"]
    if kind == "ball":
        return CompactSetSpec.ball(_from_complex_list(data["center"]),
                                   float(data["radius"]))
    if kind == "polyhedron":
        return CompactSetSpec.polyhedron(
            [(MultiPoly.from_json_dict(c["poly"]), float(c["bound"]))
             for c in data["constraints"]])
    if kind == "param_region":
        return CompactSetSpec.param_region(int(data["chart"]),
                                           _from_complex_list(data["center"]),
                                           float(data["rmin"]), float(data["rmax"]))
    if kind == "points":
        return CompactSetSpec.point_list(
            [_from_complex_list(z) for z in data["points"]])
    raise SpecError(f"unknown compact kind {kind!r}")


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        from .errors import SpecIOError
        raise SpecIOError(f"cannot read {path}: {exc}") from exc
