"""Indices for the coefficient recursion and for Phi.

Elements of the tagged union ``p^1 + ... + p^k`` are pairs ``(i, t)`` with a
tag ``1 <= i <= k`` and a position ``1 <= t <= p^i``, ordered tag-major.
Positions of a surjection are 1-based, as are its values.

An l-index ``alpha = (E_1, ..., E_l; S_1, ..., S_l)`` pairs an elementary
decomposition of the tagged union with a valuewise overlapping partition of
``f`` such that ``f(S_j)`` is exactly the set of tags occurring in ``E_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .operad import OperadElement, is_nondegenerate

Tagged = tuple  # (tag, t)


@dataclass(frozen=True)
class LIndex:
    E: tuple  # l blocks, each a sorted tuple of (tag, t)
    S: tuple  # l frozensets of 1-based positions of f

    @property
    def length(self) -> int:
        return len(self.E)

    def e_counts(self, j: int, k: int) -> list[int]:
        """``[e^1(E_j), ..., e^k(E_j)]`` for a 0-based block index ``j``."""
        out = [0] * k
        for i, _ in self.E[j]:
            out[i - 1] += 1
        return out

    def tags(self, j: int) -> list[int]:
        return sorted({i for i, _ in self.E[j]})


def compositions(n: int, parts: int) -> Iterator[tuple]:
    """Ordered ways to write ``n`` as ``parts`` positive integers."""
    if parts == 0:
        if n == 0:
            yield ()
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def fibers(f: Sequence[int]) -> dict[int, list[int]]:
    k = max(f) if f else 0
    out: dict[int, list[int]] = {i: [] for i in range(1, k + 1)}
    for q, v in enumerate(f, start=1):
        out[v].append(q)
    return out


def restrict_seq(f: Sequence[int], S) -> tuple | None:
    """``f_S`` as a tuple, or ``None`` when it is degenerate or ``S`` is empty."""
    if not S:
        return None
    sub = [f[q - 1] for q in sorted(S)]
    rel = {v: n for n, v in enumerate(sorted(set(sub)), start=1)}
    h = tuple(rel[v] for v in sub)
    return h if is_nondegenerate(h) else None


def restrict(f: Sequence[int], S, modulus: int | None = None) -> OperadElement:
    """``f_S`` as an operad element (zero when degenerate)."""
    sub = [f[q - 1] for q in sorted(S)]
    k = len(set(sub))
    h = restrict_seq(f, S)
    if h is None:
        return OperadElement.zero(k, modulus)
    return OperadElement({h: 1}, arity=k, modulus=modulus)


@lru_cache(maxsize=None)
def _enumerate(f: tuple, p: tuple, l: int) -> tuple:
    k = len(p)
    fib = fibers(f)
    blocks = range(l)
    subsets = [c for r in range(1, l + 1) for c in itertools.combinations(blocks, r)]
    out = []
    for Js in itertools.product(subsets, repeat=k):
        if set().union(*Js) != set(blocks):
            continue
        e_opts = [list(compositions(p[i], len(Js[i]))) for i in range(k)]
        if any(not opt for opt in e_opts):
            continue
        s_opts = [
            list(itertools.combinations_with_replacement(range(len(fib[i + 1])), len(Js[i]) - 1))
            for i in range(k)
        ]
        for e_choice in itertools.product(*e_opts):
            E: list[list] = [[] for _ in blocks]
            for i in range(k):
                t = 1
                for j, size in zip(Js[i], e_choice[i]):
                    E[j].extend((i + 1, t + u) for u in range(size))
                    t += size
            E_t = tuple(tuple(sorted(b)) for b in E)
            for s_choice in itertools.product(*s_opts):
                S: list[set] = [set() for _ in blocks]
                for i in range(k):
                    fi = fib[i + 1]
                    bounds = (0,) + s_choice[i] + (len(fi) - 1,)
                    for n, j in enumerate(Js[i]):
                        S[j].update(fi[bounds[n]: bounds[n + 1] + 1])
                out.append(LIndex(E_t, tuple(frozenset(s) for s in S)))
    out.sort(key=lambda a: (a.E, tuple(tuple(sorted(s)) for s in a.S)))
    return tuple(out)


def enumerate_indices(f: Sequence[int], p: Sequence[int], l: int) -> list[LIndex]:
    """All l-indices of ``(f; p^1, ..., p^k)`` in a fixed deterministic order."""
    f, p = tuple(f), tuple(p)
    if len(p) != (max(f) if f else 0):
        raise ValueError("need one p^i per value of f")
    if any(x < 1 for x in p):
        raise ValueError("p^i must be positive")
    if l < 1 or l > sum(p):
        return []
    return list(_enumerate(f, p, l))


# ---------------------------------------------------------------------------
# validators


def is_overlapping_partition(pieces: Sequence[Sequence[int]], whole: Sequence[int]) -> bool:
    """Consecutive nonempty intervals of ``whole`` sharing their boundary element."""
    whole = list(whole)
    if not pieces or any(not p for p in pieces):
        return False
    pos = {v: n for n, v in enumerate(whole)}
    start = 0
    for n, piece in enumerate(pieces):
        piece = sorted(piece)
        if any(v not in pos for v in piece):
            return False
        idx = [pos[v] for v in piece]
        if idx != list(range(idx[0], idx[-1] + 1)) or idx[0] != start:
            return False
        start = idx[-1]
    return start == len(whole) - 1


def is_elementary_decomposition(E: Sequence[Sequence[Tagged]], p: Sequence[int]) -> bool:
    everything = sorted(x for b in E for x in b)
    if everything != [(i + 1, t) for i in range(len(p)) for t in range(1, p[i] + 1)]:
        return False
    if any(not b for b in E):
        return False
    last = {}
    for b in E:
        for i in sorted({i for i, _ in b}):
            ts = sorted(t for ii, t in b if ii == i)
            if last.get(i, 0) >= ts[0]:
                return False
            last[i] = ts[-1]
    return True


def is_valuewise_overlapping_partition(f: Sequence[int], S: Sequence) -> bool:
    if any(not s for s in S):
        return False
    m = len(f)
    if any(q < 1 or q > m for s in S for q in s):
        return False
    for i, fi in fibers(f).items():
        pieces = [sorted(set(s) & set(fi)) for s in S]
        pieces = [pc for pc in pieces if pc]
        if not is_overlapping_partition(pieces, fi):
            return False
    return True


def is_index(f: Sequence[int], p: Sequence[int], alpha: LIndex) -> bool:
    if len(alpha.E) != len(alpha.S):
        return False
    if not is_elementary_decomposition(alpha.E, p):
        return False
    if not is_valuewise_overlapping_partition(f, alpha.S):
        return False
    return all(
        {f[q - 1] for q in alpha.S[j]} == {i for i, _ in alpha.E[j]}
        for j in range(len(alpha.E))
    )


# ---------------------------------------------------------------------------
# shuffles and substitution


def sigma_alpha(E: Sequence[Sequence[Tagged]], e: Sequence[int]) -> tuple:
    """``mu o phi^{-1}`` in one-line form.

    ``phi`` embeds the tagged union tag-major; ``mu`` numbers the elements
    block by block.
    """
    mu = {x: n for n, x in enumerate((x for b in E for x in b), start=1)}
    return tuple(mu[(i + 1, t)] for i in range(len(e)) for t in range(1, e[i] + 1))


def sub_e(alpha: LIndex, j: int, k: int) -> tuple:
    """The e-vector of ``C(f_{S_j}; E_j)``: tag counts over the tags of ``E_j``."""
    counts = alpha.e_counts(j, k)
    return tuple(c for c in counts if c)


def substitution(block: Sequence[Tagged], xs: Sequence[Sequence]) -> tuple:
    """``E_j x``: the entries ``x^i_t`` for ``(i, t)`` in the block, in block order."""
    return tuple(xs[i - 1][t - 1] for i, t in sorted(block))
