"""Sparse multivariate complex polynomials and Laurent polynomials.

A polynomial is a finite map from integer exponent tuples to nonzero complex
coefficients.  The ``laurent`` flag permits negative exponents.  Values are
immutable after construction; every operation returns a new instance.  Terms
are always iterated in graded-lexicographic order, which fixes determinism of
evaluation and serialization.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .errors import CompositionError, DimensionMismatchError, LaurentDomainError

Exponent = Tuple[int, ...]

#: Degree marker for the zero polynomial.
NEG_INF = float("-inf")


def _grlex_key(exp: Exponent):
    # Ascending total degree; within a degree the lexicographically larger
    # tuple comes first (1, z1, z2, z1^2, z1 z2, z2^2, ...).
    return (sum(exp), tuple(-e for e in exp))


class MultiPoly:
    """Sparse polynomial in ``num_vars`` complex variables.

    ``terms`` maps exponent tuples of length ``num_vars`` to nonzero complex
    coefficients.  Zero coefficients are purged at exact equality, never with
    an epsilon, so degree queries remain trustworthy.
    """

    __slots__ = ("num_vars", "laurent", "terms")

    def __init__(self, num_vars: int, terms: Dict[Exponent, complex] | None = None,
                 laurent: bool = False):
        if num_vars < 1:
            raise DimensionMismatchError("num_vars must be positive")
        clean: Dict[Exponent, complex] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != num_vars:
                raise DimensionMismatchError(
                    f"exponent {exp} has length {len(exp)}, expected {num_vars}")
            if not laurent and any(e < 0 for e in exp):
                raise LaurentDomainError(
                    f"negative exponent {exp} requires the laurent flag")
            c = complex(coeff)
            if c != 0:
                clean[exp] = clean.get(exp, 0) + c
                if clean[exp] == 0:
                    del clean[exp]
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "laurent", bool(laurent))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int, laurent: bool = False) -> "MultiPoly":
        return cls(num_vars, {}, laurent)

    @classmethod
    def constant(cls, num_vars: int, value: complex, laurent: bool = False) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: value}, laurent)

    @classmethod
    def monomial(cls, num_vars: int, exp: Sequence[int], coeff: complex = 1.0,
                 laurent: bool = False) -> "MultiPoly":
        return cls(num_vars, {tuple(exp): coeff}, laurent)

    @classmethod
    def variable(cls, num_vars: int, index: int, laurent: bool = False) -> "MultiPoly":
        exp = [0] * num_vars
        exp[index] = 1
        return cls(num_vars, {tuple(exp): 1.0}, laurent)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> List[Tuple[Exponent, complex]]:
        """Terms in graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def total_degree(self) -> float:
        """Max over terms of the sum of positive exponent parts.

        Returns ``NEG_INF`` for the zero polynomial.
        """
        if not self.terms:
            return NEG_INF
        return max(sum(max(e, 0) for e in exp) for exp in self.terms)

    def pole_degree(self) -> int:
        """Max over terms of the sum of negative exponent parts (>= 0)."""
        if not self.terms:
            return 0
        return max(sum(max(-e, 0) for e in exp) for exp in self.terms)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        """Sum of the terms of total degree exactly ``d``."""
        if self.laurent:
            raise LaurentDomainError("homogeneous_part rejects Laurent input")
        if d < 0:
            raise DimensionMismatchError("degree must be nonnegative")
        kept = {exp: c for exp, c in self.terms.items() if sum(exp) == d}
        return MultiPoly(self.num_vars, kept)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other.num_vars != self.num_vars:
            raise DimensionMismatchError("mismatched variable counts in add")
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, 0) + c
        return MultiPoly(self.num_vars, terms, self.laurent or other.laurent)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()}, self.laurent)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other.num_vars != self.num_vars:
            raise DimensionMismatchError("mismatched variable counts in mul")
        terms: Dict[Exponent, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                terms[exp] = terms.get(exp, 0) + c1 * c2
        return MultiPoly(self.num_vars, terms, self.laurent or other.laurent)

    __rmul__ = __mul__

    def scale(self, factor: complex) -> "MultiPoly":
        if factor == 0:
            return MultiPoly.zero(self.num_vars, self.laurent)
        return MultiPoly(self.num_vars,
                         {e: c * factor for e, c in self.terms.items()}, self.laurent)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            if len(self.terms) == 1:
                return self._invert() ** (-k)
            raise LaurentDomainError("negative power of a non-monomial")
        result = MultiPoly.constant(self.num_vars, 1.0, self.laurent)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _invert(self) -> "MultiPoly":
        """Inverse of a single-term Laurent polynomial."""
        if len(self.terms) != 1:
            raise LaurentDomainError("only monomials are invertible")
        (exp, coeff), = self.terms.items()
        return MultiPoly(self.num_vars, {tuple(-e for e in exp): 1.0 / coeff}, True)

    def partial(self, index: int) -> "MultiPoly":
        """Formal partial derivative with respect to variable ``index``."""
        terms: Dict[Exponent, complex] = {}
        for exp, c in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            new = list(exp)
            new[index] = e - 1
            terms[tuple(new)] = terms.get(tuple(new), 0) + c * e
        return MultiPoly(self.num_vars, terms, self.laurent)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            return MultiPoly.constant(self.num_vars, other, self.laurent)
        raise TypeError(f"cannot combine MultiPoly with {type(other)!r}")

    # -- evaluation --------------------------------------------------------

    def eval(self, z: Sequence[complex]) -> complex:
        """Evaluate at a point, iterating terms in graded-lex order."""
        if len(z) != self.num_vars:
            raise DimensionMismatchError(
                f"point has {len(z)} coordinates, expected {self.num_vars}")
        total = 0.0 + 0.0j
        for exp, coeff in self.sorted_terms():
            prod = coeff
            for zi, e in zip(z, exp):
                if e == 0:
                    continue
                if e < 0 and zi == 0:
                    raise LaurentDomainError(
                        "zero coordinate under a negative exponent")
                prod *= zi ** e
            total += prod
        return total

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at an ``(m, num_vars)`` complex array."""
        pts = np.asarray(points, dtype=complex)
        if pts.ndim == 1:
            pts = pts.reshape(1, -1)
        if pts.shape[1] != self.num_vars:
            raise DimensionMismatchError(
                f"points have {pts.shape[1]} coordinates, expected {self.num_vars}")
        out = np.zeros(pts.shape[0], dtype=complex)
        for exp, coeff in self.sorted_terms():
            prod = np.full(pts.shape[0], coeff, dtype=complex)
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                col = pts[:, i]
                if e < 0 and np.any(col == 0):
                    raise LaurentDomainError(
                        "zero coordinate under a negative exponent")
                prod = prod * col ** e
            out += prod
        return out

    def compose(self, substitutions: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute one polynomial per variable.

        When this polynomial has negative exponents, every substituted value
        appearing with a negative exponent must be a monomial (a unit in the
        Laurent ring); anything else raises :class:`CompositionError`.
        """
        if len(substitutions) != self.num_vars:
            raise CompositionError(
                f"{len(substitutions)} substitutions for {self.num_vars} variables")
        if not substitutions:
            raise CompositionError("empty substitution list")
        inner_vars = substitutions[0].num_vars
        laurent_out = any(s.laurent for s in substitutions)
        for s in substitutions:
            if s.num_vars != inner_vars:
                raise CompositionError("substitutions disagree on variable count")
        result = MultiPoly.zero(inner_vars, laurent_out)
        for exp, coeff in self.sorted_terms():
            factor = MultiPoly.constant(inner_vars, coeff, laurent_out)
            for sub, e in zip(substitutions, exp):
                if e == 0:
                    continue
                if e < 0:
                    if len(sub.terms) != 1:
                        raise CompositionError(
                            "negative exponent composed with a non-monomial")
                    factor = factor * (sub._invert() ** (-e))
                else:
                    factor = factor * (sub ** e)
            result = result + factor
        return result

    # -- serialization and display ----------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "num_vars": self.num_vars,
            "laurent": self.laurent,
            "terms": [
                {"exp": list(exp), "re": c.real, "im": c.imag}
                for exp, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MultiPoly":
        terms = {
            tuple(t["exp"]): complex(t["re"], t["im"]) for t in data.get("terms", [])
        }
        return cls(int(data["num_vars"]), terms, bool(data.get("laurent", False)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiPoly)
                and self.num_vars == other.num_vars
                and self.laurent == other.laurent
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, self.laurent,
                     tuple(self.sorted_terms().__repr__())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"z{i}" + (f"^{e}" if e != 1 else "")
                for i, e in enumerate(exp) if e != 0)
            if c == 1 and mono:
                parts.append(mono)
            else:
                cs = f"{c.real:g}" if c.imag == 0 else f"({c:g})"
                parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)


def monomial_basis(num_vars: int, max_degree: int) -> List[MultiPoly]:
    """All monomials of total degree <= ``max_degree``, graded-lex ordered.

    The count is C(num_vars + max_degree, num_vars).
    """
    if num_vars < 1 or max_degree < 0:
        raise DimensionMismatchError("need num_vars >= 1 and max_degree >= 0")
    exps = list(_exponents_up_to(num_vars, max_degree))
    exps.sort(key=_grlex_key)
    return [MultiPoly.monomial(num_vars, e) for e in exps]


def monomial_exponents(num_vars: int, max_degree: int) -> List[Exponent]:
    """Exponent tuples of :func:`monomial_basis`, in the same order."""
    exps = list(_exponents_up_to(num_vars, max_degree))
    exps.sort(key=_grlex_key)
    return exps


def _exponents_up_to(num_vars: int, max_degree: int) -> Iterable[Exponent]:
    if num_vars == 1:
        for d in range(max_degree + 1):
            yield (d,)
        return
    for d in range(max_degree + 1):
        for rest in _exponents_up_to(num_vars - 1, max_degree - d):
            yield (d,) + rest


def basis_size(num_vars: int, max_degree: int) -> int:
    return math.comb(num_vars + max_degree, num_vars)


# Spec-facing functional aliases; the methods above are the implementation.

def eval_poly(p: MultiPoly, z: Sequence[complex]) -> complex:
    return p.eval(z)


def total_degree(p: MultiPoly) -> float:
    return p.total_degree()


def laurent_pole_degree(p: MultiPoly) -> int:
    return p.pole_degree()


def homogeneous_part(p: MultiPoly, d: int) -> MultiPoly:
    return p.homogeneous_part(d)


def add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def scale(p: MultiPoly, factor: complex) -> MultiPoly:
    return p.scale(factor)


def compose(p: MultiPoly, substitutions: Sequence[MultiPoly]) -> MultiPoly:
    return p.compose(substitutions)
