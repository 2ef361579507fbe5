"""The sequence (surjection) operad.

A basis element of arity ``k`` is a non-degenerate surjection ``f: m -> k``
stored as the tuple ``(f(1), ..., f(m))``.  Its homological degree is
``m - k``.  Formal sums live in :class:`OperadElement`, over the integers
(``modulus=None``) or over ``Z/p``.

Sign conventions
----------------
Every sign in this module comes from a single bookkeeping device.  The
*units* of a sequence are the occurrences of each value other than its first
one, listed value by value (value-major) and by position inside a value.
There are exactly ``m - k`` of them.

* ``d f = sum_q (-1)^{tau'(q)} d_q f`` with
  ``tau'(q) = sum_{i < f(q)} (|f^{-1}(i)| - 1) + #{q' < q : f(q') = f(q)}``.
* ``f <> sigma`` relabels value ``i`` as ``sigma^{-1}(i)`` and carries the
  Koszul sign of permuting the unit blocks.
* ``f o_i g`` cuts ``g`` into overlapping pieces, one per occurrence of
  ``i``; each cut duplicates one entry of ``g``.  The later copy of a
  duplicated entry is identified with the matching unit of the ``i``-block
  of ``f``, and the sign is the parity of the permutation taking
  ``(units of f, units of g)`` to the units of the result.

These choices pass the Leibniz rule, associativity and equivariance suites
over the integers (see ``tests/test_operad.py``).
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

Seq = tuple

__all__ = [
    "OperadElement",
    "is_nondegenerate",
    "is_surjection",
    "surjections",
    "seq_arity",
    "seq_degree",
    "fiber_norms",
    "boundary",
    "compose",
    "full_compose",
    "sigma_action",
    "r_a",
    "iota_a",
    "s_a",
    "contracting_homotopy",
    "complexity",
    "identity",
    "parse_surjection",
    "parse_element",
    "format_seq",
    "perm_inverse",
    "perm_compose",
    "perm_parity",
]


# ---------------------------------------------------------------------------
# basis helpers


def is_nondegenerate(seq: Sequence[int]) -> bool:
    return all(a != b for a, b in zip(seq, seq[1:]))


def seq_arity(seq: Sequence[int]) -> int:
    return max(seq) if seq else 0


def is_surjection(seq: Sequence[int], arity: int | None = None) -> bool:
    k = seq_arity(seq) if arity is None else arity
    return set(seq) == set(range(1, k + 1))


def seq_degree(seq: Sequence[int]) -> int:
    """Homological degree ``m - k``."""
    return len(seq) - seq_arity(seq)


def fiber_norms(seq: Sequence[int], arity: int | None = None) -> list[int]:
    """``[||f^{-1}(1)||, ..., ||f^{-1}(k)||]`` with ``||S|| = |S| - 1``."""
    k = seq_arity(seq) if arity is None else arity
    counts = [0] * k
    for v in seq:
        counts[v - 1] += 1
    return [max(c - 1, 0) for c in counts]


def surjections(m: int, k: int) -> Iterator[Seq]:
    """All non-degenerate surjections ``m -> k`` in lexicographic order."""
    if k == 0:
        if m == 0:
            yield ()
        return

    def rec(prefix):
        if len(prefix) == m:
            if len(set(prefix)) == k:
                yield tuple(prefix)
            return
        missing = k - len(set(prefix))
        if missing > m - len(prefix):
            return
        for v in range(1, k + 1):
            if prefix and prefix[-1] == v:
                continue
            prefix.append(v)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def format_seq(seq: Sequence[int]) -> str:
    if seq_arity(seq) <= 9:
        return "(" + "".join(map(str, seq)) + ")"
    return "(" + " ".join(map(str, seq)) + ")"


def identity(k: int, modulus: int | None = None) -> "OperadElement":
    return OperadElement({tuple(range(1, k + 1)): 1}, arity=k, modulus=modulus)


# ---------------------------------------------------------------------------
# permutations, one-line form (sigma(1), ..., sigma(k))


def perm_inverse(sigma: Sequence[int]) -> tuple:
    inv = [0] * len(sigma)
    for i, v in enumerate(sigma):
        inv[v - 1] = i + 1
    return tuple(inv)


def perm_compose(sigma: Sequence[int], tau: Sequence[int]) -> tuple:
    """``sigma o tau``."""
    return tuple(sigma[t - 1] for t in tau)


def perm_parity(seq: Sequence[int]) -> int:
    seq = list(seq)
    inv = 0
    for a in range(len(seq)):
        sa = seq[a]
        for b in range(a + 1, len(seq)):
            if sa > seq[b]:
                inv += 1
    return inv & 1


# ---------------------------------------------------------------------------
# element class


def _normalize(coeff: int, modulus: int | None) -> int:
    return coeff % modulus if modulus else coeff


class OperadElement:
    """Finite formal sum of surjections of a single arity."""

    __slots__ = ("arity", "terms", "modulus")

    def __init__(
        self,
        terms: Mapping[Sequence[int], int] | None = None,
        arity: int | None = None,
        modulus: int | None = None,
    ):
        clean: dict[Seq, int] = {}
        for seq, c in (terms or {}).items():
            seq = tuple(seq)
            if arity is None:
                arity = seq_arity(seq)
            if not is_surjection(seq, arity):
                raise ValueError(f"{seq} is not a surjection onto {arity} values")
            if not is_nondegenerate(seq):
                continue
            c = _normalize(clean.get(seq, 0) + c, modulus)
            if c:
                clean[seq] = c
            else:
                clean.pop(seq, None)
        self.arity = 0 if arity is None else arity
        self.terms = clean
        self.modulus = modulus

    @classmethod
    def _raw(cls, terms: dict, arity: int, modulus: int | None) -> "OperadElement":
        obj = cls.__new__(cls)
        obj.arity = arity
        obj.modulus = modulus
        if modulus:
            terms = {s: c % modulus for s, c in terms.items() if c % modulus}
        else:
            terms = {s: c for s, c in terms.items() if c}
        obj.terms = terms
        return obj

    @classmethod
    def basis(cls, seq: Sequence[int], coeff: int = 1, modulus: int | None = None):
        return cls({tuple(seq): coeff}, modulus=modulus)

    @classmethod
    def zero(cls, arity: int, modulus: int | None = None) -> "OperadElement":
        return cls._raw({}, arity, modulus)

    # -- container protocol
    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0])))

    def items(self):
        return list(iter(self))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, seq):
        return self.terms.get(tuple(seq), 0)

    def degrees(self) -> set[int]:
        return {seq_degree(s) for s in self.terms}

    @property
    def degree(self) -> int:
        """Homological degree of a homogeneous element."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError("element is not homogeneous")
        return degs.pop() if degs else 0

    # -- arithmetic
    def _check(self, other: "OperadElement"):
        if self.arity != other.arity and self.terms and other.terms:
            raise ValueError("arity mismatch")
        if self.modulus != other.modulus:
            raise ValueError("coefficient rings differ")

    def __add__(self, other: "OperadElement") -> "OperadElement":
        self._check(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, 0) + c
        return OperadElement._raw(out, self.arity if self.terms else other.arity, self.modulus)

    def __neg__(self) -> "OperadElement":
        return OperadElement._raw({s: -c for s, c in self.terms.items()}, self.arity, self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int) -> "OperadElement":
        return OperadElement._raw({s: scalar * c for s, c in self.terms.items()}, self.arity, self.modulus)

    __mul__ = __rmul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, OperadElement):
            return NotImplemented
        return self.terms == other.terms and (self.arity == other.arity or not self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def reduce(self, modulus: int | None) -> "OperadElement":
        return OperadElement._raw(dict(self.terms), self.arity, modulus)

    def __repr__(self):
        return f"OperadElement({self})"

    def __str__(self):
        return format_sum(self.items(), format_seq, self.modulus)

    # -- structure maps, as methods for convenience
    def boundary(self):
        return boundary(self)

    def __matmul__(self, sigma):
        return sigma_action(self, sigma)


def format_sum(items, fmt, modulus=None) -> str:
    """Render ``[(key, coeff), ...]`` as ``c1*k1 + c2*k2`` style text."""
    if not items:
        return "0"
    parts = []
    for key, c in items:
        if modulus == 2:
            c = 1
        elif modulus and c > modulus // 2:
            c -= modulus
        body = fmt(key)
        if c == 1:
            parts.append(("+", body))
        elif c == -1:
            parts.append(("-", body))
        elif c < 0:
            parts.append(("-", f"{-c}*{body}"))
        else:
            parts.append(("+", f"{c}*{body}"))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


# ---------------------------------------------------------------------------
# differential


@lru_cache(maxsize=None)
def _boundary_seq(f: Seq) -> tuple:
    norms = fiber_norms(f)
    base = [0] * (len(norms) + 1)
    for v in range(len(norms)):
        base[v + 1] = base[v] + norms[v]
    seen = [0] * (len(norms) + 1)
    out = []
    for q, v in enumerate(f):
        rank = seen[v]
        seen[v] += 1
        if norms[v - 1] == 0:
            continue
        g = f[:q] + f[q + 1:]
        if not is_nondegenerate(g):
            continue
        out.append((g, -1 if (base[v - 1] + rank) & 1 else 1))
    return tuple(out)


def boundary(x: OperadElement) -> OperadElement:
    out: dict[Seq, int] = {}
    for f, c in x.terms.items():
        for g, s in _boundary_seq(f):
            out[g] = out.get(g, 0) + s * c
    return OperadElement._raw(out, x.arity, x.modulus)


# ---------------------------------------------------------------------------
# symmetric group action


@lru_cache(maxsize=None)
def _sigma_seq(f: Seq, sigma: tuple) -> tuple:
    inv = perm_inverse(sigma)
    norms = fiber_norms(f, len(sigma))
    h = tuple(inv[v - 1] for v in f)
    k = len(sigma)
    s = 0
    for i in range(k):
        if not norms[i]:
            continue
        for j in range(i + 1, k):
            if inv[i] > inv[j]:
                s += norms[i] * norms[j]
    return h, (-1 if s & 1 else 1)


def sigma_action(x: OperadElement, sigma: Sequence[int]) -> OperadElement:
    """Right action ``x <> sigma``; ``sigma`` in one-line form."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, x.arity + 1)):
        raise ValueError(f"{sigma} is not a permutation of {x.arity} letters")
    out: dict[Seq, int] = {}
    for f, c in x.terms.items():
        h, s = _sigma_seq(f, sigma)
        out[h] = out.get(h, 0) + s * c
    return OperadElement._raw(out, x.arity, x.modulus)


# ---------------------------------------------------------------------------
# composition


def _units(seq: Seq) -> list[int]:
    k = seq_arity(seq)
    seen = set()
    by_value: list[list[int]] = [[] for _ in range(k + 1)]
    for q, v in enumerate(seq):
        if v in seen:
            by_value[v].append(q)
        seen.add(v)
    return [q for v in range(1, k + 1) for q in by_value[v]]


@lru_cache(maxsize=None)
def _compose_seq(f: Seq, i: int, g: Seq) -> tuple:
    r = seq_arity(g)
    n = len(g)
    s = f.count(i)
    f_units = _units(f)
    g_units = _units(g)

    # labels of the source units: f's in order, with the i-block renamed as cuts
    src = []
    cut = 0
    for q in f_units:
        if f[q] == i:
            src.append(("c", cut))
            cut += 1
        else:
            src.append(("f", q))
    src.extend(("g", c) for c in g_units)
    src_index = {lab: j for j, lab in enumerate(src)}

    out = []
    for cuts in itertools.combinations_with_replacement(range(n), s - 1):
        bounds = (0,) + cuts + (n - 1,)
        h = []
        prov = []
        t = 0
        for q, v in enumerate(f):
            if v == i:
                lo, hi = bounds[t], bounds[t + 1]
                for c in range(lo, hi + 1):
                    h.append(g[c] + i - 1)
                    # the copy in the earliest piece holding c is the original
                    first_holder = cuts.index(c) if c in cuts else t
                    if c in cuts and first_holder < t:
                        prov.append(("c", t - 1))
                    else:
                        prov.append(("g", c))
                t += 1
            else:
                h.append(v if v < i else v + r - 1)
                prov.append(("f", q))
        h = tuple(h)
        if not is_nondegenerate(h):
            continue
        perm = [src_index[prov[q]] for q in _units(h)]
        out.append((h, -1 if perm_parity(perm) else 1))
    return tuple(out)


def compose(x: OperadElement, i: int, y: OperadElement) -> OperadElement:
    """Partial composition ``x o_i y``."""
    if not 1 <= i <= x.arity:
        raise ValueError(f"position {i} out of range for arity {x.arity}")
    if x.modulus != y.modulus:
        raise ValueError("coefficient rings differ")
    out: dict[Seq, int] = {}
    for f, a in x.terms.items():
        for g, b in y.terms.items():
            for h, s in _compose_seq(f, i, g):
                out[h] = out.get(h, 0) + s * a * b
    return OperadElement._raw(out, x.arity + y.arity - 1, x.modulus)


def full_compose(x: OperadElement, ys: Sequence[OperadElement]) -> OperadElement:
    """``gamma(x; y_1, ..., y_k)``, evaluated left to right as partial compositions."""
    if len(ys) != x.arity:
        raise ValueError(f"expected {x.arity} inputs, got {len(ys)}")
    out = x
    pos = 1
    for y in ys:
        out = compose(out, pos, y)
        pos += y.arity
    return out


# ---------------------------------------------------------------------------
# the maps r_a, iota_a, s_a and the contracting homotopy


def _check_a(a: int, k: int):
    if not 1 <= a <= k:
        raise ValueError(f"a={a} out of range 1..{k}")


def r_a(x: OperadElement, a: int) -> OperadElement:
    """Delete a value occurring once and close the gap.

    Carries an overall sign ``-1`` so that
    ``d s_a + s_a d = id + iota_a r_a`` holds on the nose.
    """
    _check_a(a, x.arity)
    out: dict[Seq, int] = {}
    for f, c in x.terms.items():
        if f.count(a) != 1:
            continue
        h = tuple(v - 1 if v > a else v for v in f if v != a)
        if not is_nondegenerate(h):
            continue
        out[h] = out.get(h, 0) - c
    return OperadElement._raw(out, x.arity - 1, x.modulus)


def iota_a(x: OperadElement, a: int) -> OperadElement:
    _check_a(a, x.arity + 1)
    out: dict[Seq, int] = {}
    for f, c in x.terms.items():
        h = (a,) + tuple(v + 1 if v >= a else v for v in f)
        if is_nondegenerate(h):
            out[h] = out.get(h, 0) + c
    return OperadElement._raw(out, x.arity + 1, x.modulus)


def s_a(x: OperadElement, a: int) -> OperadElement:
    _check_a(a, x.arity)
    out: dict[Seq, int] = {}
    for f, c in x.terms.items():
        if f and f[0] == a:
            continue
        norms = fiber_norms(f, x.arity)
        sign = -1 if sum(norms[: a - 1]) & 1 else 1
        h = (a,) + f
        out[h] = out.get(h, 0) + sign * c
    return OperadElement._raw(out, x.arity, x.modulus)


def contracting_homotopy(x: OperadElement) -> OperadElement:
    """``H = sum_k (-1)^k iota_1^k s_1 r_1^k`` on ``E(p)``.

    ``dH + Hd = id - eps`` where ``eps`` sends every degree-0 sequence to
    the identity.
    """
    total = OperadElement.zero(x.arity, x.modulus)
    y = x
    k = 0
    while y and y.arity >= 1:
        z = s_a(y, 1)
        for _ in range(k):
            z = iota_a(z, 1)
        total = total + ((-1) ** k) * z
        y = r_a(y, 1)
        k += 1
    return total


# ---------------------------------------------------------------------------
# complexity filtration


def complexity(f: Sequence[int]) -> int:
    """Largest number of alternations of ``f`` restricted to a pair of values."""
    k = seq_arity(f)
    best = 0
    for i, j in itertools.combinations(range(1, k + 1), 2):
        sub = [v for v in f if v == i or v == j]
        changes = sum(1 for a, b in zip(sub, sub[1:]) if a != b)
        best = max(best, changes)
    return best


# ---------------------------------------------------------------------------
# text format


_SEQ_RE = re.compile(r"\(\s*([0-9][0-9\s]*)\)")


def parse_surjection(text: str) -> Seq:
    """``"(1 2 1 3 1)"`` or compact ``"(12131)"``."""
    m = _SEQ_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse surjection {text!r}")
    body = m.group(1).strip()
    if " " in body:
        seq = tuple(int(t) for t in body.split())
    else:
        seq = tuple(int(ch) for ch in body)
    if not is_surjection(seq):
        raise ValueError(f"{text!r} is not a surjection")
    return seq


_TERM_RE = re.compile(r"\s*([+-]?)\s*(?:(\d+)\s*\*?\s*)?(\([0-9\s]*\))")


def parse_element(text: str, modulus: int | None = None) -> OperadElement:
    """Parse formal sums such as ``"-(12131) + 2*(13121)"``."""
    pos = 0
    terms: dict[Seq, int] = {}
    text = text.strip()
    arity = None
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse operad element {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        seq = parse_surjection(m.group(3))
        arity = seq_arity(seq) if arity is None else arity
        terms[seq] = terms.get(seq, 0) + sign * coeff
        pos = m.end()
    return OperadElement(terms, arity=arity, modulus=modulus)


def elements(seqs: Iterable[Sequence[int]], modulus: int | None = None):
    return [OperadElement.basis(s, modulus=modulus) for s in seqs]
