"""The bar complex of an algebra with an associative product.

A bar element is a dict ``{(a_1, ..., a_l): coeff}`` whose keys are tuples
of algebra basis keys, ``l >= 1``.  The degree of ``[a_1|...|a_l]`` is
``sum(|a_j| - 1)``.  The product used by ``d_1`` is the action of ``(12)``.
"""

from __future__ import annotations

import itertools
import re
from typing import Mapping, Sequence

from .freealg import add_into, clean, parse_algebra_terms
from .operad import OperadElement, format_sum

PRODUCT = OperadElement({(1, 2): 1})

__all__ = [
    "BarElement",
    "bar_degree",
    "bar_differential",
    "d0",
    "d1",
    "tensor",
    "bar_basis",
    "format_bar",
    "parse_bar",
    "term_sort_key",
]


def bar_degree(alg, term: Sequence) -> int:
    return sum(alg.degree(a) - 1 for a in term)


def tensor(alg, entries: Sequence[Mapping]) -> dict:
    """Expand ``[a_1|...|a_l]`` for algebra elements given as dicts."""
    out: dict = {}
    for combo in itertools.product(*(list(e.items()) for e in entries)):
        c = 1
        for _, v in combo:
            c *= v
        add_into(out, {tuple(k for k, _ in combo): c}, 1, alg.modulus)
    return out


def d0(alg, b: Mapping) -> dict:
    out: dict = {}
    for term, c in b.items():
        running = 0
        for j, a in enumerate(term):
            da = alg.d(a)
            if da:
                sign = -1 if running & 1 else 1
                for a2, c2 in da.items():
                    new = term[:j] + (a2,) + term[j + 1:]
                    add_into(out, {new: sign * c * c2}, 1, alg.modulus)
            running += alg.degree(a) - 1
    return out


def d1(alg, b: Mapping) -> dict:
    out: dict = {}
    for term, c in b.items():
        running = 0
        for j in range(len(term) - 1):
            running += alg.degree(term[j]) - 1
            prod = alg.act(PRODUCT, [{term[j]: 1}, {term[j + 1]: 1}])
            sign = -1 if running & 1 else 1
            for a2, c2 in prod.items():
                new = term[:j] + (a2,) + term[j + 2:]
                add_into(out, {new: sign * c * c2}, 1, alg.modulus)
    return out


def bar_differential(alg, b: Mapping) -> dict:
    out = d0(alg, b)
    return add_into(out, d1(alg, b), 1, alg.modulus)


def term_sort_key(alg, term: Sequence) -> tuple:
    return (-len(term), tuple(alg.sort_key(a) for a in term))


def format_bar(alg, b: Mapping) -> str:
    items = sorted(b.items(), key=lambda kv: term_sort_key(alg, kv[0]))
    return format_sum(
        items,
        lambda t: "[" + "|".join(alg.format_key(a) for a in t) + "]",
        alg.modulus,
    )


def parse_bar(alg, text: str) -> dict:
    """Parse ``[x|y] + 2*[(121)(x,y)]``-style text."""
    text = text.strip()
    pos = 0
    out: dict = {}
    pat = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?\[([^\[\]]*)\]")
    while pos < len(text):
        m = pat.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse bar element {text!r} at {pos}")
        coeff = (-1 if m.group(1) == "-" else 1) * (int(m.group(2)) if m.group(2) else 1)
        body = m.group(3)
        parts = _split_top(body, "|")
        if not body.strip() or any(not p.strip() for p in parts):
            raise ValueError("bar tensors need length >= 1 and nonempty entries")
        entries = [parse_algebra_terms(alg, p) for p in parts]
        add_into(out, tensor(alg, entries), coeff, alg.modulus)
        pos = m.end()
    return out


def _split_top(text: str, sep: str) -> list[str]:
    depth = 0
    parts, cur = [], []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def bar_basis(alg, degree: int) -> list:
    """Basis of ``B^degree A``; needs ``alg.basis`` and entries of degree >= 2."""
    out = []

    def rec(remaining, prefix):
        if remaining == 0 and prefix:
            out.append(tuple(prefix))
            return
        for dd in range(1, remaining + 1):
            for key in alg.basis(dd + 1):
                prefix.append(key)
                rec(remaining - dd, prefix)
                prefix.pop()

    if degree >= 1:
        rec(degree, [])
    return sorted(out, key=lambda t: term_sort_key(alg, t))


class BarElement:
    """Thin wrapper pairing a bar dict with its algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms: Mapping):
        self.alg = alg
        self.terms = clean(terms, alg.modulus)

    @classmethod
    def parse(cls, alg, text: str) -> "BarElement":
        return cls(alg, parse_bar(alg, text))

    def d(self) -> "BarElement":
        return BarElement(self.alg, bar_differential(self.alg, self.terms))

    def __add__(self, other):
        return BarElement(self.alg, add_into(dict(self.terms), other.terms, 1, self.alg.modulus))

    def __sub__(self, other):
        return BarElement(self.alg, add_into(dict(self.terms), other.terms, -1, self.alg.modulus))

    def __neg__(self):
        return BarElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, n: int):
        return BarElement(self.alg, {k: n * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, BarElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return format_bar(self.alg, self.terms)

    __repr__ = __str__
