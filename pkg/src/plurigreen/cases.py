"""Registry of worked examples with machine-checkable closed-form oracles.

Each record bundles a variety, the polynomial maps acting on it, compact
subsets, closed-form Green evaluators, and exact exponent rationals.  The
records back the acceptance suite: every numeric route in the package is
compared against these oracles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import SpecError
from .extremal import GreenEstimate, closed_form_estimate
from .parsing import parse_poly
from .polynomial import MultiPoly
from .transforms import (FiberSolver, green_from_functional_equation,
                         map_eval_many, pushforward_estimate)
from .variety import (Chart, CompactSetSpec, PUNCTURED, SadullaevSplit,
                      VarietySpec, ambient_space)


@dataclass(eq=False)
class VerifySetup:
    """How to drive the sandwich verifier for a case.

    Names refer to the owning record's maps, compacts and oracles; the map
    runs from ``source`` (its domain) into ``target`` carrying the compact.
    """

    map_name: str
    target: VarietySpec
    target_compact: str
    preimage_compact: str
    target_green: str
    preimage_green: str


@dataclass(eq=False)
class CaseRecord:
    """One worked example: geometry, maps, compacts, and ground truth."""

    name: str
    variety: VarietySpec
    var_names: Tuple[str, ...]
    maps: Dict[str, Tuple[MultiPoly, ...]]
    map_domains: Dict[str, VarietySpec]
    compacts: Dict[str, CompactSetSpec]
    green_oracles: Dict[str, GreenEstimate]
    exact_exponents: Dict[str, Fraction]
    provenance: str
    pipeline: Optional[Callable[[], GreenEstimate]] = None
    default_compact: str = ""
    default_map: str = ""
    verify: Optional[VerifySetup] = None

    def pipeline_green(self) -> Optional[GreenEstimate]:
        """Green evaluator reconstructed through the functional equation."""
        return self.pipeline() if self.pipeline else None


def _log_plus(x: np.ndarray) -> np.ndarray:
    return np.maximum(np.log(np.maximum(x, 1e-300)), 0.0)


def interval_green(x: np.ndarray, a: float = 0.0, b: float = 2.0) -> np.ndarray:
    """Green function of a real segment, largest-modulus branch.

    The two branch values multiply to one, so picking the branch with
    modulus >= 1 keeps the value nonnegative and growing like ``log|x|``.
    """
    x = np.asarray(x, dtype=complex)
    xi = (2.0 * x - a - b) / (b - a)
    s = np.sqrt(xi * xi - 1.0)
    mod = np.maximum(np.abs(xi + s), np.abs(xi - s))
    return np.maximum(np.log(np.maximum(mod, 1e-300)), 0.0)


def _green_from_vector(fn: Callable[[np.ndarray], np.ndarray],
                       name: str) -> GreenEstimate:
    def evaluator(z: Sequence[complex]) -> float:
        return float(fn(np.asarray([z], dtype=complex))[0])

    return GreenEstimate("closed_form", 1, None, 0, evaluator,
                         {"name": name, "vector_evaluator": fn, "slack": 0.0})


# ---------------------------------------------------------------------------
# individual cases


def _cusp_case() -> CaseRecord:
    names = ("w", "z")
    eq = parse_poly("w^3 - z^2", names)
    chart = Chart(1, (MultiPoly.monomial(1, (2,)), MultiPoly.monomial(1, (3,))))
    variety = VarietySpec(2, (eq,), (chart,), irreducible_asserted=True,
                          locally_irreducible_asserted=True)
    line = ambient_space(1)
    covering = (MultiPoly.monomial(1, (2,)), MultiPoly.monomial(1, (3,)))
    window = CompactSetSpec.polyhedron([(MultiPoly.variable(2, 0), 1.0),
                                        (MultiPoly.variable(2, 1), 1.0)])
    preimage = CompactSetSpec.ball((0.0,), 1.0)

    window_green = _green_from_vector(
        lambda pts: _log_plus(np.abs(pts[:, 1])), "log+|z| on the cusp")
    window_alt = _green_from_vector(
        lambda pts: 1.5 * _log_plus(np.abs(pts[:, 0])), "(3/2) log+|w|")
    disc_green = _green_from_vector(
        lambda pts: _log_plus(np.abs(pts[:, 0])), "log+ of the unit disc")

    def pipeline() -> GreenEstimate:
        solver = FiberSolver(line, covering, tolerance=1e-8)
        return pushforward_estimate(disc_green, covering, solver, scale=3.0,
                                    name="cusp window via covering, d=3")

    return CaseRecord(
        name="cusp",
        variety=variety,
        var_names=names,
        maps={"covering": covering},
        map_domains={"covering": line},
        compacts={"window": window, "preimage_disc": preimage},
        green_oracles={"window": window_green, "window_alt": window_alt,
                       "preimage_disc": disc_green},
        exact_exponents={"covering_growth": Fraction(3),
                         "covering_loja": Fraction(3)},
        provenance=("cuspidal curve w^3 = z^2 parametrized by (t^2, t^3); the "
                    "degree-3 covering turns the unit-disc Green function into "
                    "log+|z| on the window {|w|<=1, |z|<=1}"),
        pipeline=pipeline,
        default_compact="window",
        default_map="covering",
        verify=VerifySetup("covering", variety, "window", "preimage_disc",
                           "window", "preimage_disc"),
    )


def _cross_case() -> CaseRecord:
    names = ("w", "z")
    eq = parse_poly("wz", names)
    zero = MultiPoly.zero(1)
    t = MultiPoly.variable(1, 0)
    variety = VarietySpec(2, (eq,), (Chart(1, (t, zero)), Chart(1, (zero, t))),
                          irreducible_asserted=False,
                          locally_irreducible_asserted=False)
    fold = (parse_poly("w^2 + z^2", names),)
    window = CompactSetSpec.polyhedron([(MultiPoly.variable(2, 0), 1.0),
                                        (MultiPoly.variable(2, 1), 1.0)])
    disc = CompactSetSpec.ball((0.0,), 1.0)

    fold_green = _green_from_vector(
        lambda pts: 0.5 * _log_plus(np.abs(pts[:, 0] ** 2 + pts[:, 1] ** 2)),
        "(1/2) log+|w^2+z^2| on the cross")
    target_green = _green_from_vector(
        lambda pts: _log_plus(np.abs(pts[:, 0])), "log+ of the unit disc")

    def pipeline() -> GreenEstimate:
        return green_from_functional_equation(
            fold, 2.0, target_green, name="cross window via fold, d=2")

    return CaseRecord(
        name="cross",
        variety=variety,
        var_names=names,
        maps={"fold": fold},
        map_domains={"fold": variety},
        compacts={"window": window, "target_disc": disc},
        green_oracles={"window": fold_green, "target_disc": target_green},
        exact_exponents={"fold_growth": Fraction(2), "fold_loja": Fraction(2)},
        provenance=("two crossing lines wz = 0; the fold w^2 + z^2 restricts "
                    "to t^2 on each line, so the window Green function is "
                    "(1/d) log+ of the fold with d = 2"),
        pipeline=pipeline,
        default_compact="window",
        default_map="fold",
        verify=VerifySetup("fold", ambient_space(1), "target_disc", "window",
                           "target_disc", "window"),
    )


def _sphere_chart() -> Chart:
    # (s, c) -> ((s + (1 - c^2)/s)/2, (s - (1 - c^2)/s)/(2i), c)
    x = MultiPoly(2, {(1, 0): 0.5, (-1, 0): 0.5, (-1, 2): -0.5}, laurent=True)
    y = MultiPoly(2, {(1, 0): -0.5j, (-1, 0): 0.5j, (-1, 2): -0.5j}, laurent=True)
    c = MultiPoly.monomial(2, (0, 1), laurent=True)
    return Chart(2, (x, y, c), PUNCTURED)


def _sphere_case() -> CaseRecord:
    names = ("x", "y", "z")
    eq = parse_poly("x^2+y^2+z^2-1", names)
    split = SadullaevSplit((2,), (0, 1), C=1.0, c=1.0)
    variety = VarietySpec(3, (eq,), (_sphere_chart(),), split,
                          irreducible_asserted=True,
                          locally_irreducible_asserted=True)
    f1 = parse_poly("x^2 + y", names)
    f2 = parse_poly("y^2 - x", names)
    window = CompactSetSpec.polyhedron([(f1, 1.0), (f2, 1.0)])

    def oracle(pts: np.ndarray) -> np.ndarray:
        v1 = _log_plus(np.abs(f1.eval_many(pts)))
        v2 = _log_plus(np.abs(f2.eval_many(pts)))
        return 0.5 * np.maximum(v1, v2)

    window_green = _green_from_vector(
        oracle, "(1/2) max(log+|x^2+y|, log+|y^2-x|)")
    bidisc = _green_from_vector(
        lambda pts: np.maximum(_log_plus(np.abs(pts[:, 0])),
                               _log_plus(np.abs(pts[:, 1]))),
        "bidisc Green function")
    bidisc_compact = CompactSetSpec.polyhedron([(MultiPoly.variable(2, 0), 1.0),
                                                (MultiPoly.variable(2, 1), 1.0)])

    def pipeline() -> GreenEstimate:
        return green_from_functional_equation(
            (f1, f2), 2.0, bidisc, name="sphere polyhedron via (f1, f2), d=2")

    return CaseRecord(
        name="sphere_polyhedron",
        variety=variety,
        var_names=names,
        maps={"polyhedron_map": (f1, f2)},
        map_domains={"polyhedron_map": variety},
        compacts={"window": window, "bidisc": bidisc_compact},
        green_oracles={"window": window_green, "bidisc": bidisc},
        exact_exponents={"polyhedron_map_growth": Fraction(2),
                         "polyhedron_map_loja": Fraction(2)},
        provenance=("complex sphere x^2+y^2+z^2 = 1; the planar map "
                    "(x^2+y, y^2-x) has separated top parts (x^2, y^2), so "
                    "the polynomial polyhedron it cuts out has Green function "
                    "(1/deg) max of the component log-moduli"),
        pipeline=pipeline,
        default_compact="window",
        default_map="polyhedron_map",
        verify=VerifySetup("polyhedron_map", ambient_space(2), "bidisc",
                           "window", "bidisc", "window"),
    )


def _viviani_chart() -> Chart:
    # s -> (1 + (s^2 + s^-2)/2, (s^2 - s^-2)/(2i), i (s - s^-1))
    x = MultiPoly(1, {(0,): 1.0, (2,): 0.5, (-2,): 0.5}, laurent=True)
    y = MultiPoly(1, {(2,): -0.5j, (-2,): 0.5j}, laurent=True)
    z = MultiPoly(1, {(1,): 1j, (-1,): -1j}, laurent=True)
    return Chart(1, (x, y, z), PUNCTURED)


def _viviani_case() -> CaseRecord:
    names = ("x", "y", "z")
    eq1 = parse_poly("z^2 + 2x - 4", names)
    eq2 = parse_poly("y^2 - 2x + x^2", names)
    variety = VarietySpec(3, (eq1, eq2), (_viviani_chart(),),
                          irreducible_asserted=True,
                          locally_irreducible_asserted=True)
    # target: the image curve of t -> (t, 2t - t^2, 4 - 2t)
    tnames = ("u", "v", "s")
    beq1 = parse_poly("u^2 + v + s - 4", tnames)
    beq2 = parse_poly("u^2 + v - 2u", tnames)
    t = MultiPoly.variable(1, 0)
    cover = (t, parse_poly("2t - t^2", ("t",)), parse_poly("4 - 2t", ("t",)))
    target = VarietySpec(3, (beq1, beq2), (Chart(1, cover),),
                         irreducible_asserted=True,
                         locally_irreducible_asserted=True)
    fold = (parse_poly("x", names), parse_poly("y^2", names),
            parse_poly("z^2", names))
    line = ambient_space(1)

    window = CompactSetSpec.param_region(0, (0.0,), 1.0, 1.0)
    cheb = 1.0 + np.cos(np.pi * (np.arange(256) + 0.5) / 256)
    interval = CompactSetSpec.point_list([(complex(v),) for v in cheb])
    target_arc = CompactSetSpec.point_list(
        [tuple(p) for p in map_eval_many(cover, cheb.reshape(-1, 1).astype(complex))])

    window_green = _green_from_vector(
        lambda pts: interval_green(pts[:, 0]),
        "log|x - 1 + sqrt(x^2 - 2x)|, branch of modulus >= 1")
    interval_oracle = _green_from_vector(
        lambda pts: interval_green(pts[:, 0]), "segment [0, 2] Green function")
    arc_green = _green_from_vector(
        lambda pts: 2.0 * interval_green(pts[:, 0]),
        "arc Green function on the target curve")

    def pipeline() -> GreenEstimate:
        solver = FiberSolver(line, cover, tolerance=1e-8)
        on_target = pushforward_estimate(interval_oracle, cover, solver,
                                         scale=2.0, name="arc on target, d=2")
        return green_from_functional_equation(
            fold, 2.0, on_target, name="window via fold then covering")

    return CaseRecord(
        name="viviani",
        variety=variety,
        var_names=names,
        maps={"fold": fold, "interval_cover": cover},
        map_domains={"fold": variety, "interval_cover": line},
        compacts={"window": window, "interval": interval,
                  "target_arc": target_arc},
        green_oracles={"window": window_green, "interval": interval_oracle,
                       "target_arc": arc_green},
        exact_exponents={"fold_growth": Fraction(2), "fold_loja": Fraction(2),
                         "interval_cover_growth": Fraction(2),
                         "interval_cover_loja": Fraction(2)},
        provenance=("the window curve on the sphere-cylinder intersection "
                    "z^2 = 4 - 2x, y^2 = 2x - x^2; the fold (x, y^2, z^2) onto "
                    "the parametrized target curve composes with the degree-2 "
                    "interval covering, leaving the segment Green function in "
                    "the x coordinate"),
        pipeline=pipeline,
        default_compact="window",
        default_map="fold",
    )


def _parabola_case() -> CaseRecord:
    names = ("w", "z")
    eq = parse_poly("w - z^2", names)
    chart = Chart(1, (MultiPoly.monomial(1, (2,)), MultiPoly.monomial(1, (1,))))
    variety = VarietySpec(2, (eq,), (chart,), irreducible_asserted=True,
                          locally_irreducible_asserted=True)
    sample_map = (parse_poly("z^2", names), parse_poly("wz", names))
    window = CompactSetSpec.polyhedron([(MultiPoly.variable(2, 0), 1.0),
                                        (MultiPoly.variable(2, 1), 1.0)])
    window_green = _green_from_vector(
        lambda pts: _log_plus(np.abs(pts[:, 0])), "log+|w| on the parabola")
    return CaseRecord(
        name="parabola_exponent",
        variety=variety,
        var_names=names,
        maps={"sample_map": sample_map},
        map_domains={"sample_map": variety},
        compacts={"window": window},
        green_oracles={"window": window_green},
        exact_exponents={"sample_map_growth": Fraction(3, 2),
                         "sample_map_loja": Fraction(3, 2)},
        provenance=("parabola w = z^2 with chart (t^2, t); the map (z^2, wz) "
                    "pulls back to (t^2, t^3), giving the non-integer growth "
                    "exponent 3/2"),
        default_compact="window",
        default_map="sample_map",
    )


def _negative_loja_case() -> CaseRecord:
    names = ("w", "z")
    variety = ambient_space(2)
    nonproper = (parse_poly("w", names), parse_poly("wz - 1", names))
    window = CompactSetSpec.ball((0.0, 0.0), 1.0)
    return CaseRecord(
        name="negative_loja",
        variety=variety,
        var_names=names,
        maps={"nonproper": nonproper},
        map_domains={"nonproper": variety},
        compacts={"window": window},
        green_oracles={},
        exact_exponents={"nonproper_growth": Fraction(2),
                         "nonproper_loja": Fraction(-1)},
        provenance=("the plane map (w, wz - 1): along w ~ 1/z the image norm "
                    "decays like 1/||z||, so the Łojasiewicz exponent at "
                    "infinity is -1 and the map is not proper"),
        default_compact="window",
        default_map="nonproper",
    )


def _circle_case() -> CaseRecord:
    names = ("x", "y")
    eq = parse_poly("x^2 + y^2 - 1", names)
    half = MultiPoly(1, {(1,): 0.5, (-1,): 0.5}, laurent=True)
    half_i = MultiPoly(1, {(1,): -0.5j, (-1,): 0.5j}, laurent=True)
    variety = VarietySpec(2, (eq,), (Chart(1, (half, half_i), PUNCTURED),),
                          irreducible_asserted=True,
                          locally_irreducible_asserted=True)
    p = parse_poly("x^3 + x^2y + xy^2 + y^3", names)
    torus = CompactSetSpec.param_region(0, (0.0,), 1.0, 1.0)

    def oracle(pts: np.ndarray) -> np.ndarray:
        u = pts[:, 0] + 1j * pts[:, 1]
        return np.abs(np.log(np.maximum(np.abs(u), 1e-300)))

    torus_green = _green_from_vector(oracle, "|log|x + iy|| on the circle")
    pair = (parse_poly("x + y", names),)  # restriction class of p

    def pipeline() -> GreenEstimate:
        plus = (parse_poly("x + iy", names), parse_poly("x - iy", names))
        both = _green_from_vector(
            lambda pts: np.maximum(_log_plus(np.abs(pts[:, 0])),
                                   _log_plus(np.abs(pts[:, 1]))),
            "bidisc Green function")
        return green_from_functional_equation(
            plus, 1.0, both, name="torus via (x+iy, x-iy), d=1")

    return CaseRecord(
        name="circle_bw",
        variety=variety,
        var_names=names,
        maps={"bw_poly": (p,), "restriction": pair},
        map_domains={"bw_poly": variety, "restriction": variety},
        compacts={"torus": torus},
        green_oracles={"torus": torus_green},
        exact_exponents={"bw_poly_growth": Fraction(1),
                         "bw_poly_loja": Fraction(1)},
        provenance=("complex circle x^2 + y^2 = 1; the cubic "
                    "x^3 + x^2y + xy^2 + y^3 factors as (x+y)(x^2+y^2) and "
                    "restricts to the linear x + y, so its growth exponent on "
                    "the curve is 1 rather than 3"),
        pipeline=pipeline,
        default_compact="torus",
        default_map="bw_poly",
    )


_BUILDERS = (_cusp_case, _cross_case, _sphere_case, _viviani_case,
             _parabola_case, _negative_loja_case, _circle_case)

_REGISTRY: Optional[Tuple[CaseRecord, ...]] = None


def registry() -> Tuple[CaseRecord, ...]:
    """All registered cases, built once, deterministic order."""
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = tuple(build() for build in _BUILDERS)
    return _REGISTRY


def get_case(name: str) -> CaseRecord:
    for case in registry():
        if case.name == name:
            return case
    known = ", ".join(c.name for c in registry())
    raise SpecError(f"unknown case {name!r} (known: {known})")
