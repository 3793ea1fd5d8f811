"""Tiny text format for polynomials, e.g. ``x^3+x^2y+xy^2+y^3`` or ``2wz-1``.

Grammar: a sum of terms; each term is a product of an optional numeric
coefficient (float, or ``1.5i`` for imaginary) and variable powers written as
``name`` or ``name^k``.  ``*`` between factors is optional.  Exponents may be
negative for Laurent polynomials.
"""

from __future__ import annotations

import re
from typing import Dict, List, Sequence

from .errors import SpecError
from .polynomial import MultiPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?)(?P<imag>i)?"
                    r"|(?P<i_unit>i)"
                    r"|(?P<name>[a-hj-zA-HJ-Z][a-zA-Z0-9_]*)"
                    r"|(?P<op>[\^+*-]))")
# A name may not START with 'i' (reserved for the imaginary unit) but may
# contain it.  Runs of known single-letter variables like 'xy' are split.


def parse_poly(text: str, var_names: Sequence[str], laurent: bool = False) -> MultiPoly:
    """Parse ``text`` into a :class:`MultiPoly` over ``var_names``."""
    names = list(var_names)
    index: Dict[str, int] = {n: i for i, n in enumerate(names)}
    n = len(names)
    tokens = _tokenize(text, set(names))
    terms: Dict[tuple, complex] = {}
    pos = 0
    sign = 1.0
    first = True
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in ("+", "-"):
            sign = -1.0 if tok == "-" else 1.0
            pos += 1
            first = False
            continue
        if not first and tokens[pos - 1] not in ("+", "-"):
            raise SpecError(f"missing operator before {tok!r} in {text!r}")
        coeff = complex(sign)
        exp = [0] * n
        while pos < len(tokens) and tokens[pos] not in ("+", "-"):
            tok = tokens[pos]
            if tok == "*":
                pos += 1
                continue
            if isinstance(tok, complex):
                coeff *= tok
                pos += 1
                continue
            if tok in index:
                power = 1
                if pos + 2 < len(tokens) + 1 and pos + 1 < len(tokens) and tokens[pos + 1] == "^":
                    if pos + 2 >= len(tokens) or not isinstance(tokens[pos + 2], complex):
                        raise SpecError(f"bad exponent after {tok!r} in {text!r}")
                    pval = tokens[pos + 2]
                    if pval.imag != 0 or pval.real != int(pval.real):
                        raise SpecError(f"exponent must be an integer in {text!r}")
                    power = int(pval.real)
                    pos += 2
                exp[index[tok]] += power
                pos += 1
                continue
            raise SpecError(f"unknown symbol {tok!r} in {text!r} "
                            f"(variables: {', '.join(names)})")
        key = tuple(exp)
        terms[key] = terms.get(key, 0) + coeff
        sign = 1.0
        first = False
    is_laurent = laurent or any(e < 0 for key in terms for e in key)
    return MultiPoly(n, terms, is_laurent)


def _tokenize(text: str, names: set) -> List:
    out: List = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            # allow a negative integer right after '^'
            if stripped[pos] == "(" or stripped[pos] == ")":
                raise SpecError(f"parentheses are not supported: {text!r}")
            raise SpecError(f"cannot read {stripped[pos:]!r} in {text!r}")
        if m.group("num") is not None:
            val = complex(float(m.group("num")), 0.0)
            if m.group("imag"):
                val = val * 1j
            out.append(val)
        elif m.group("i_unit"):
            out.append(1j)
        elif m.group("name"):
            name = m.group("name")
            if name in names:
                out.append(name)
            else:
                # split a concatenated run like 'xy' into known single letters
                parts = _split_run(name, names)
                if parts is None:
                    raise SpecError(f"unknown variable {name!r} in {text!r}")
                out.extend(parts)
        else:
            op = m.group("op")
            if op == "^" and pos + m.end() - m.start() < len(stripped):
                rest = stripped[m.end():]
                neg = re.match(r"\s*-\s*(\d+)", rest)
                if neg:
                    out.append("^")
                    out.append(complex(-int(neg.group(1)), 0))
                    pos = m.end() + neg.end()
                    continue
            out.append(op)
        pos = m.end()
    return out


def _split_run(run: str, names: set):
    if not run:
        return []
    for length in range(len(run), 0, -1):
        head = run[:length]
        if head in names:
            tail = _split_run(run[length:], names)
            if tail is not None:
                return [head] + tail
    return None


def parse_poly_list(text: str, var_names: Sequence[str]) -> List[MultiPoly]:
    """Parse ``[p1, p2, ...]`` (brackets optional) into a list of polynomials."""
    body = text.strip()
    if body.startswith("["):
        if not body.endswith("]"):
            raise SpecError(f"unbalanced brackets in {text!r}")
        body = body[1:-1]
    parts = [p for p in body.split(",") if p.strip()]
    if not parts:
        raise SpecError(f"no polynomials in {text!r}")
    return [parse_poly(p, var_names) for p in parts]
