"""Free algebras over the sequence operad (without arity 0).

A basis element is a pair ``(seq, gens)``: a surjection of arity ``r`` and an
ordered tuple of ``r`` generator names.  It stands for ``seq(g_1, ..., g_r)``
and is kept in canonical form, with ``gens`` sorted by ``(degree, name)`` and
the reordering absorbed into ``seq`` through the symmetric group action and a
Koszul sign.

Degrees are cohomological: ``|seq(g_1, ..., g_r)| = sum |g_i| - (m - r)``.

Elements are plain dicts ``{key: coefficient}``; :class:`AlgebraElement`
wraps one together with its algebra for printing and arithmetic.  The same
duck-typed interface (``degree``, ``d``, ``act``, ``format_key``,
``sort_key``, ``modulus``) is implemented by the cochain algebras in
:mod:`seqop.cochains`, which is all the bar complex and Phi need.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .operad import (
    OperadElement,
    boundary,
    format_seq,
    format_sum,
    full_compose,
    parse_surjection,
    seq_degree,
    sigma_action,
)

Key = tuple  # (seq, gens)


class TorsionError(ValueError):
    """Raised when an integral element would be 2-torsion in the free algebra."""


def add_into(out: dict, terms: Mapping, scale: int = 1, modulus: int | None = None) -> dict:
    for k, c in terms.items():
        v = out.get(k, 0) + scale * c
        if modulus:
            v %= modulus
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def clean(terms: Mapping, modulus: int | None) -> dict:
    if modulus:
        return {k: c % modulus for k, c in terms.items() if c % modulus}
    return {k: c for k, c in terms.items() if c}


def koszul_parity(degrees: Sequence[int], perm: Sequence[int]) -> int:
    """Sign of reordering ``(y_1..y_r)`` into ``(y_{perm(1)}, ..., y_{perm(r)})``."""
    s = 0
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b] and degrees[perm[a] - 1] & 1 and degrees[perm[b] - 1] & 1:
                s += 1
    return s & 1


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


class FreeAlgebra:
    """Free algebra on formal graded generators with formal differentials.

    ``max_word`` truncates to the quotient by all words of more than
    ``max_word`` generators.  That subspace is an ideal closed under the
    differential, so the quotient is again an algebra; ``max_word=1`` gives
    the square-zero algebra on the generators.
    """

    def __init__(self, modulus: int | None = None, max_word: int | None = None,
                 allow_low_degree: bool = False):
        self.modulus = modulus
        self.max_word = max_word
        self.allow_low_degree = allow_low_degree
        self.generators: dict[str, Generator] = {}
        self._diff: dict[str, dict] = {}
        self._d_cache: dict = {}

    # -- generators
    def add_generator(self, name: str, degree: int, differential=None) -> "AlgebraElement":
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
            raise ValueError(f"bad generator name {name!r}")
        if name in self.generators:
            raise ValueError(f"generator {name} already declared")
        if degree < 2 and not self.allow_low_degree:
            raise ValueError("generators must have degree >= 2 (pass allow_low_degree=True to lift this)")
        self.generators[name] = Generator(name, degree)
        diff = {}
        if differential is not None:
            diff = differential.terms if isinstance(differential, AlgebraElement) else dict(differential)
        for key in diff:
            if self.degree(key) != degree + 1:
                del self.generators[name]
                raise ValueError(f"differential of {name} must have degree {degree + 1}")
        self._diff[name] = clean(diff, self.modulus)
        self._d_cache.clear()
        dd = self.d_element(self._diff[name])
        if dd:
            del self.generators[name]
            del self._diff[name]
            raise ValueError(f"d(d({name})) != 0")
        return self.gen(name)

    def gen(self, name: str) -> "AlgebraElement":
        return AlgebraElement(self, {((1,), (name,)): 1})

    def gen_order(self, name: str) -> tuple:
        g = self.generators[name]
        return (g.degree, g.name)

    # -- interface used by the bar complex
    def degree(self, key: Key) -> int:
        seq, gens = key
        return sum(self.generators[g].degree for g in gens) - seq_degree(seq)

    def sort_key(self, key: Key) -> tuple:
        seq, gens = key
        return (tuple(self.gen_order(g) for g in gens), len(seq), seq)

    def format_key(self, key: Key) -> str:
        seq, gens = key
        if seq == (1,):
            return gens[0]
        return format_seq(seq) + "(" + ",".join(gens) + ")"

    def canonical(self, seq: Sequence[int], gens: Sequence[str], coeff: int = 1) -> dict:
        """Canonical form of ``coeff * seq(gens)``."""
        seq, gens = tuple(seq), tuple(gens)
        if self.max_word is not None and len(gens) > self.max_word:
            return {}
        r = len(gens)
        degs = [self.generators[g].degree for g in gens]
        pi = tuple(sorted(range(1, r + 1), key=lambda j: (self.gen_order(gens[j - 1]), j)))
        sorted_gens = tuple(gens[j - 1] for j in pi)
        base = OperadElement._raw({seq: coeff}, r, None)
        moved = sigma_action(base, pi)
        if koszul_parity(degs, pi):
            moved = -moved
        # absorb the stabilizer of sorted_gens
        sdegs = [self.generators[g].degree for g in sorted_gens]
        stab = list(self._stabilizer(sorted_gens))
        out: dict = {}
        for h, c in moved.terms.items():
            orbit = {}
            single = OperadElement._raw({h: 1}, r, None)
            for tau in stab:
                img = sigma_action(single, tau)
                (h2, s2), = img.terms.items()
                if koszul_parity(sdegs, tau):
                    s2 = -s2
                orbit.setdefault(h2, set()).add(s2)
            rep = min(orbit)
            signs = orbit[rep]
            if len(signs) == 2:
                if self.modulus == 2:
                    signs = {1}
                elif self.modulus:
                    continue
                else:
                    raise TorsionError(f"{format_seq(h)}({','.join(sorted_gens)}) is 2-torsion")
            # seq(y) = s * rep(y) where rep = h <> tau with sign s
            s = signs.pop()
            add_into(out, {(rep, sorted_gens): s * c}, 1, self.modulus)
        return out

    @staticmethod
    def _stabilizer(gens: tuple):
        r = len(gens)
        groups: dict[str, list[int]] = {}
        for j, g in enumerate(gens, start=1):
            groups.setdefault(g, []).append(j)
        blocks = [v for v in groups.values() if len(v) > 1]
        if not blocks:
            yield tuple(range(1, r + 1))
            return
        for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
            perm = list(range(1, r + 1))
            for b, img in zip(blocks, choice):
                for src, dst in zip(b, img):
                    perm[src - 1] = dst
            yield tuple(perm)

    def act(self, op: OperadElement, elems: Sequence[Mapping]) -> dict:
        """``op(a_1, ..., a_k)`` for elements given as dicts."""
        if len(elems) != op.arity:
            raise ValueError(f"operation of arity {op.arity} applied to {len(elems)} inputs")
        out: dict = {}
        for combo in itertools.product(*(list(e.items()) for e in elems)):
            coeff = 1
            seqs = []
            gens: tuple = ()
            sign = 0
            running = 0
            for (seq, g), c in combo:
                coeff *= c
                sign += seq_degree(seq) * running
                running += sum(self.generators[x].degree for x in g)
                seqs.append(OperadElement._raw({seq: 1}, len(g), None))
                gens += g
            if not coeff:
                continue
            composite = full_compose(op.reduce(None), seqs)
            for h, c in composite.terms.items():
                total = c * coeff * (-1 if sign & 1 else 1)
                add_into(out, self.canonical(h, gens, total), 1, self.modulus)
        return out

    def d(self, key: Key) -> dict:
        if key in self._d_cache:
            return self._d_cache[key]
        seq, gens = key
        r = len(gens)
        out: dict = {}
        df = boundary(OperadElement._raw({seq: 1}, r, None))
        for h, c in df.terms.items():
            add_into(out, self.canonical(h, gens, c), 1, self.modulus)
        op = OperadElement._raw({seq: 1}, r, None)
        running = seq_degree(seq)
        for i, g in enumerate(gens):
            dg = self._diff.get(g)
            if dg:
                elems = [{((1,), (x,)): 1} for x in gens]
                elems[i] = dg
                add_into(out, self.act(op, elems), -1 if running & 1 else 1, self.modulus)
            running += self.generators[g].degree
        self._d_cache[key] = out
        return out

    def d_element(self, terms: Mapping) -> dict:
        out: dict = {}
        for k, c in terms.items():
            add_into(out, self.d(k), c, self.modulus)
        return out

    def basis(self, degree: int) -> list:
        """Basis of a degree; only finite for the square-zero truncation."""
        if self.max_word != 1:
            raise ValueError("degree slices of the free algebra are infinite; use max_word=1")
        return sorted(
            (((1,), (g.name,)) for g in self.generators.values() if g.degree == degree),
            key=self.sort_key,
        )

    # -- convenience
    def element(self, terms: Mapping) -> "AlgebraElement":
        return AlgebraElement(self, dict(terms))

    def parse(self, text: str) -> "AlgebraElement":
        return AlgebraElement(self, parse_algebra_terms(self, text))


_ALG_TERM = re.compile(
    r"\s*([+-]?)\s*(?:(\d+)\s*\*\s*)?(?:(\([0-9 ]+\))\s*\(([^()]*)\)|([A-Za-z_][A-Za-z0-9_]*))"
)


def parse_algebra_terms(alg, text: str) -> dict:
    """Parse ``x``, ``(121)(x,y)`` and signed sums of such terms."""
    text = text.strip()
    if text == "0":
        return {}
    pos = 0
    out: dict = {}
    while pos < len(text):
        m = _ALG_TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse algebra element {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = sign * (int(m.group(2)) if m.group(2) else 1)
        if m.group(3):
            seq = parse_surjection(m.group(3))
            names = tuple(n.strip() for n in m.group(4).split(","))
        else:
            seq, names = (1,), (m.group(5),)
        for n in names:
            if n not in alg.generators:
                raise ValueError(f"unknown generator {n!r}")
        if len(names) != max(seq):
            raise ValueError(f"{m.group(0).strip()}: arity mismatch")
        add_into(out, alg.canonical(seq, names, coeff), 1, alg.modulus)
        pos = m.end()
    return out


class AlgebraElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms: Mapping):
        self.alg = alg
        self.terms = clean(terms, alg.modulus)

    def __add__(self, other):
        return AlgebraElement(self.alg, add_into(dict(self.terms), other.terms, 1, self.alg.modulus))

    def __sub__(self, other):
        return AlgebraElement(self.alg, add_into(dict(self.terms), other.terms, -1, self.alg.modulus))

    def __neg__(self):
        return AlgebraElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __rmul__(self, n: int):
        return AlgebraElement(self.alg, {k: n * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def d(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, self.alg.d_element(self.terms))

    def __str__(self):
        items = sorted(self.terms.items(), key=lambda kv: self.alg.sort_key(kv[0]))
        return format_sum(items, self.alg.format_key, self.alg.modulus)

    __repr__ = __str__


def act(op: OperadElement, *args: AlgebraElement) -> AlgebraElement:
    """``op(a_1, ..., a_k)`` on :class:`AlgebraElement` inputs."""
    if not args:
        raise ValueError("need at least one input")
    alg = args[0].alg
    return AlgebraElement(alg, alg.act(op, [a.terms for a in args]))


def differential(a: AlgebraElement) -> AlgebraElement:
    return a.d()
