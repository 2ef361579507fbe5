"""A diagonal ``E -> E (x) E`` and the induced structure on tensor products.

``Delta(f)`` sums ``(-1)^delta f_{S_1} (x) f_{S_2}`` over the 2-piece
valuewise overlapping partitions of ``f`` in which both pieces hit every
value.  The tensor square is an operad with the Koszul rule
``(a (x) b) o_i (a' (x) b') = (-1)^{|b||a'|} (a o_i a') (x) (b o_i b')``.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .freealg import add_into, clean
from .indexing import fibers, restrict_seq
from .operad import (
    OperadElement,
    boundary,
    compose,
    format_seq,
    format_sum,
    seq_degree,
    sigma_action,
)

__all__ = ["TensorOperadElement", "diagonal", "delta_sign", "tensor_act", "coassociativity_defect"]


class TensorOperadElement:
    """Formal sum of pairs of surjections of equal arity."""

    __slots__ = ("arity", "terms", "modulus")

    def __init__(self, terms: Mapping, arity: int, modulus: int | None = None):
        self.arity = arity
        self.modulus = modulus
        self.terms = clean(terms, modulus)

    @classmethod
    def from_pair(cls, a: OperadElement, b: OperadElement) -> "TensorOperadElement":
        out: dict = {}
        for s1, c1 in a.terms.items():
            for s2, c2 in b.terms.items():
                add_into(out, {(s1, s2): c1 * c2}, 1, a.modulus)
        return cls(out, a.arity, a.modulus)

    def __add__(self, other):
        return TensorOperadElement(add_into(dict(self.terms), other.terms, 1, self.modulus),
                                   self.arity, self.modulus)

    def __neg__(self):
        return TensorOperadElement({k: -c for k, c in self.terms.items()}, self.arity, self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n: int):
        return TensorOperadElement({k: n * c for k, c in self.terms.items()}, self.arity, self.modulus)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, TensorOperadElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0]))
        return format_sum(items, lambda p: format_seq(p[0]) + "⊗" + format_seq(p[1]), self.modulus)

    __repr__ = __str__

    def boundary(self) -> "TensorOperadElement":
        out: dict = {}
        for (a, b), c in self.terms.items():
            ea = OperadElement._raw({a: 1}, self.arity, None)
            eb = OperadElement._raw({b: 1}, self.arity, None)
            for a2, c2 in boundary(ea).terms.items():
                add_into(out, {(a2, b): c * c2}, 1, self.modulus)
            sign = -1 if seq_degree(a) & 1 else 1
            for b2, c2 in boundary(eb).terms.items():
                add_into(out, {(a, b2): sign * c * c2}, 1, self.modulus)
        return TensorOperadElement(out, self.arity, self.modulus)

    def compose(self, i: int, other: "TensorOperadElement") -> "TensorOperadElement":
        out: dict = {}
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                sign = -1 if seq_degree(b) * seq_degree(a2) & 1 else 1
                left = compose(OperadElement._raw({a: 1}, self.arity, None), i,
                               OperadElement._raw({a2: 1}, other.arity, None))
                right = compose(OperadElement._raw({b: 1}, self.arity, None), i,
                                OperadElement._raw({b2: 1}, other.arity, None))
                for h1, d1 in left.terms.items():
                    for h2, d2 in right.terms.items():
                        add_into(out, {(h1, h2): sign * c * c2 * d1 * d2}, 1, self.modulus)
        return TensorOperadElement(out, self.arity + other.arity - 1, self.modulus)

    def act_sigma(self, sigma: Sequence[int]) -> "TensorOperadElement":
        out: dict = {}
        for (a, b), c in self.terms.items():
            left = sigma_action(OperadElement._raw({a: 1}, self.arity, None), sigma)
            right = sigma_action(OperadElement._raw({b: 1}, self.arity, None), sigma)
            (h1, s1), = left.terms.items()
            (h2, s2), = right.terms.items()
            add_into(out, {(h1, h2): s1 * s2 * c}, 1, self.modulus)
        return TensorOperadElement(out, self.arity, self.modulus)


def delta_sign(f: Sequence[int], S1, S2) -> int:
    k = max(f)
    n1 = [0] * k
    n2 = [0] * k
    for q in S1:
        n1[f[q - 1] - 1] += 1
    for q in S2:
        n2[f[q - 1] - 1] += 1
    n1 = [max(c - 1, 0) for c in n1]
    n2 = [max(c - 1, 0) for c in n2]
    return sum(n1[i] * n2[ip] for i in range(k) for ip in range(i))


def _diagonal_seq(f: tuple) -> dict:
    fib = fibers(f)
    k = max(f)
    out: dict = {}
    for cuts in itertools.product(*(range(len(fib[i])) for i in range(1, k + 1))):
        S1, S2 = set(), set()
        for i, c in zip(range(1, k + 1), cuts):
            S1.update(fib[i][: c + 1])
            S2.update(fib[i][c:])
        a = restrict_seq(f, S1)
        b = restrict_seq(f, S2)
        if a is None or b is None:
            continue
        sign = -1 if delta_sign(f, S1, S2) & 1 else 1
        out[(a, b)] = out.get((a, b), 0) + sign
    return out


def diagonal(x: OperadElement) -> TensorOperadElement:
    out: dict = {}
    for f, c in x.terms.items():
        add_into(out, _diagonal_seq(f), c, x.modulus)
    return TensorOperadElement(out, x.arity, x.modulus)


def coassociativity_defect(x: OperadElement) -> dict:
    """``(Delta (x) 1) Delta x - (1 (x) Delta) Delta x`` as ``{(a, b, c): coeff}``."""
    out: dict = {}
    for (a, b), c in diagonal(x).terms.items():
        for (a1, a2), c1 in _diagonal_seq(a).items():
            add_into(out, {(a1, a2, b): c * c1}, 1, x.modulus)
        for (b1, b2), c2 in _diagonal_seq(b).items():
            add_into(out, {(a, b1, b2): c * c2}, -1, x.modulus)
    return out


def tensor_act(g: OperadElement, alg_a, alg_b, pairs: Sequence[Mapping]) -> dict:
    """Act by ``g`` on elements of ``A (x) B`` given as ``{(key_a, key_b): c}`` dicts."""
    if len(pairs) != g.arity:
        raise ValueError(f"operation of arity {g.arity} applied to {len(pairs)} inputs")
    modulus = alg_a.modulus
    out: dict = {}
    dg = diagonal(g.reduce(None))
    for combo in itertools.product(*(list(p.items()) for p in pairs)):
        coeff = 1
        for _, c in combo:
            coeff *= c
        a_keys = [ka for (ka, _), _ in combo]
        b_keys = [kb for (_, kb), _ in combo]
        a_deg = [alg_a.degree(k) for k in a_keys]
        b_deg = [alg_b.degree(k) for k in b_keys]
        # a_1 b_1 a_2 b_2 ... -> a_1 a_2 ... b_1 b_2 ...
        shuffle = sum(b_deg[i] * a_deg[j] for i in range(len(combo)) for j in range(i + 1, len(combo)))
        for (sa, sb), c in dg.terms.items():
            sign = shuffle + seq_degree(sb) * sum(a_deg)
            left = alg_a.act(OperadElement._raw({sa: 1}, g.arity, None), [{k: 1} for k in a_keys])
            right = alg_b.act(OperadElement._raw({sb: 1}, g.arity, None), [{k: 1} for k in b_keys])
            for ka, ca in left.items():
                for kb, cb in right.items():
                    add_into(out, {(ka, kb): (-1 if sign & 1 else 1) * c * coeff * ca * cb}, 1, modulus)
    return out
