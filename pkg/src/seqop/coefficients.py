"""Coefficient elements ``C(f; e^1, ..., e^k)``.

``C`` is defined by induction on ``(k, m, e^1, ..., e^k)`` in lexicographic
order:

    C((1); 1) = (1),
    C(f; e) = s_a(X1 + X2),   a = 1 + sum_{i < f(1)} e^i,

with ``X1 = C(df; e)`` and ``X2`` a signed sum over 2-indices of products of
smaller coefficients.  ``X3`` only enters the identity ``dC = X1 + X2 + X3``.
Everything is computed over the integers and cached; reduction mod p is done
on the way out.
"""

from __future__ import annotations

import threading
from typing import Sequence

from . import indexing
from .indexing import LIndex, enumerate_indices, restrict_seq, sigma_alpha, sub_e
from .operad import (
    OperadElement,
    boundary,
    complexity,
    full_compose,
    identity,
    perm_inverse,
    s_a,
    seq_arity,
    seq_degree,
    sigma_action,
)

__all__ = [
    "coefficient",
    "coefficient_of",
    "X1",
    "X2",
    "X3",
    "theta",
    "lam",
    "xi",
    "block_permutation",
    "equivariance_transport",
    "structural_check",
    "key_order",
    "cache_clear",
    "computed_keys",
]

_PRODUCT = OperadElement({(1, 2): 1})
_UNIT = OperadElement({(1,): 1})
_lock = threading.Lock()


def key_order(f: Sequence[int], e: Sequence[int]) -> tuple:
    """Position of ``(f; e)`` in the well-order used by the recursion."""
    return (seq_arity(f), len(f)) + tuple(e)


def _check_key(f: tuple, e: tuple):
    if not f or not all(a != b for a, b in zip(f, f[1:])):
        raise ValueError(f"{f} is not a non-degenerate sequence")
    if len(e) != seq_arity(f) or set(f) != set(range(1, len(e) + 1)):
        raise ValueError("need exactly one e^i per value of f")
    if any(x < 1 for x in e):
        raise ValueError("e^i must be positive")


def _restricted(f: tuple, alpha: LIndex, j: int, k: int):
    h = restrict_seq(f, alpha.S[j])
    if h is None:
        return None, None
    return h, sub_e(alpha, j, k)


def theta(f: tuple, alpha: LIndex) -> int:
    """Sign exponent of a 2-index in ``X2``."""
    k = seq_arity(f)
    h1 = restrict_seq(f, alpha.S[0])
    h2 = restrict_seq(f, alpha.S[1])
    e1 = alpha.e_counts(0, k)
    e2 = alpha.e_counts(1, k)
    n1 = _fiber_norms_in(f, alpha.S[0], k)
    n2 = _fiber_norms_in(f, alpha.S[1], k)
    t = 1 + seq_degree(h1) + sum(e1) * (seq_degree(h2) + sum(e2) - 1)
    t += sum(e1[i] * e2[ip] for i in range(k) for ip in range(i))
    t += sum(n1[i] * n2[ip] for i in range(k) for ip in range(i))
    return t


def _fiber_norms_in(f: tuple, S, k: int) -> list[int]:
    counts = [0] * k
    for q in S:
        counts[f[q - 1] - 1] += 1
    return [max(c - 1, 0) for c in counts]


def lam(f: Sequence[int], i: int, t: int, e: Sequence[int]) -> int:
    """Sign exponent in ``X3``; ``i`` is 1-based."""
    return 1 + t + seq_degree(f) + sum(e[i - 1:])


# (f, e) -> C(f; e) over the integers.  Lookups take no lock; insertions do,
# and two threads may compute the same key (the values agree).
_MEMO: dict[tuple, OperadElement] = {}


def _C(f: tuple, e: tuple) -> OperadElement:
    got = _MEMO.get((f, e))
    if got is not None:
        return got
    if f == (1,):
        val = identity(1) if e == (1,) else OperadElement.zero(e[0])
    else:
        a = sum(e[: f[0] - 1]) + 1
        val = s_a(_X1(f, e) + _X2(f, e), a)
    with _lock:
        return _MEMO.setdefault((f, e), val)


def _C_linear(x: OperadElement, e: tuple) -> OperadElement:
    out = OperadElement.zero(sum(e))
    for f, c in x.terms.items():
        out = out + c * _C(f, e)
    return out


def _X1(f: tuple, e: tuple) -> OperadElement:
    df = boundary(OperadElement({f: 1}))
    return _C_linear(df, e)


def _X2(f: tuple, e: tuple) -> OperadElement:
    k = len(e)
    here = key_order(f, e)
    total = OperadElement.zero(sum(e))
    for alpha in enumerate_indices(f, e, 2):
        h1, e1 = _restricted(f, alpha, 0, k)
        if h1 is None:
            continue
        h2, e2 = _restricted(f, alpha, 1, k)
        if h2 is None:
            continue
        assert key_order(h1, e1) < here and key_order(h2, e2) < here
        c1 = _C(h1, e1)
        if not c1:
            continue
        c2 = _C(h2, e2)
        if not c2:
            continue
        prod = full_compose(_PRODUCT, [c1, c2])
        term = sigma_action(prod, sigma_alpha(alpha.E, e))
        total = total + (-1) ** theta(f, alpha) * term
    return total


def _X3(f: tuple, e: tuple) -> OperadElement:
    total = OperadElement.zero(sum(e))
    n = sum(e)
    for i in range(1, len(e) + 1):
        for t in range(1, e[i - 1]):
            e2 = list(e)
            e2[i - 1] -= 1
            c = _C(f, tuple(e2))
            if not c:
                continue
            slot = sum(e[: i - 1]) + t
            ys = [_UNIT] * (n - 1)
            ys[slot - 1] = _PRODUCT
            total = total + (-1) ** lam(f, i, t, e) * full_compose(c, ys)
    return total


def _out(x: OperadElement, modulus):
    return x.reduce(modulus) if modulus else x


def coefficient(f: Sequence[int], e: Sequence[int], modulus: int | None = None) -> OperadElement:
    """``C(f; e^1, ..., e^k)`` for a single non-degenerate sequence ``f``."""
    f, e = tuple(f), tuple(e)
    _check_key(f, e)
    return _out(_C(f, e), modulus)


def coefficient_of(x: OperadElement, e: Sequence[int]) -> OperadElement:
    """``C`` extended linearly to an operad element."""
    e = tuple(e)
    out = OperadElement.zero(sum(e), x.modulus)
    for f, c in x.terms.items():
        out = out + c * coefficient(f, e, x.modulus)
    return out


def X1(f, e, modulus=None):
    f, e = tuple(f), tuple(e)
    _check_key(f, e)
    return _out(_X1(f, e), modulus)


def X2(f, e, modulus=None):
    f, e = tuple(f), tuple(e)
    _check_key(f, e)
    return _out(_X2(f, e), modulus)


def X3(f, e, modulus=None):
    f, e = tuple(f), tuple(e)
    _check_key(f, e)
    return _out(_X3(f, e), modulus)


def computed_keys() -> list[tuple]:
    """Every ``(f, e)`` whose coefficient has been computed so far."""
    with _lock:
        return list(_MEMO)


def cache_clear():
    with _lock:
        _MEMO.clear()
    indexing._enumerate.cache_clear()


# ---------------------------------------------------------------------------
# equivariance


def xi(sigma: Sequence[int], e: Sequence[int]) -> int:
    k = len(sigma)
    return sum(
        e[i] * e[j] for i in range(k) for j in range(i + 1, k) if sigma[i] > sigma[j]
    )


def block_permutation(sigma: Sequence[int], sizes: Sequence[int]) -> tuple:
    """Permute blocks of the given sizes as ``sigma`` permutes letters.

    Block ``i`` (of size ``sizes[i-1]``) is sent to the place of block
    ``sigma(i)`` in the target arrangement.
    """
    k = len(sigma)
    inv = perm_inverse(sigma)
    target_sizes = [sizes[inv[j] - 1] for j in range(k)]
    target_start = [0] * (k + 1)
    for j in range(k):
        target_start[j + 1] = target_start[j] + target_sizes[j]
    out = []
    for i in range(k):
        base = target_start[sigma[i] - 1]
        out.extend(base + r for r in range(1, sizes[i] + 1))
    return tuple(out)


def equivariance_transport(f: Sequence[int], sigma: Sequence[int], e: Sequence[int],
                           modulus: int | None = None) -> OperadElement:
    """``C(f <> sigma; e)`` computed from the coefficient of ``f`` itself."""
    f, sigma, e = tuple(f), tuple(sigma), tuple(e)
    inv = perm_inverse(sigma)
    e_pulled = tuple(e[inv[i] - 1] for i in range(len(e)))
    c = coefficient(f, e_pulled)
    out = (-1) ** xi(sigma, e) * sigma_action(c, block_permutation(sigma, e))
    return _out(out, modulus)


# ---------------------------------------------------------------------------
# structural conditions


def structural_check(g: Sequence[int], f: Sequence[int], e: Sequence[int]) -> dict:
    """Check a support term ``g`` of ``C(f; e)`` against the structural conditions.

    Returns a dict of named boolean results plus ``ok``.
    """
    g, f, e = tuple(g), tuple(f), tuple(e)
    k = len(e)
    report = {}
    counts = {}
    for v in g:
        counts[v] = counts.get(v, 0) + 1
    if k >= 2:
        report["endpoints_repeat"] = counts[g[0]] >= 2 and counts[g[-1]] >= 2
        flanked = True
        for q, v in enumerate(g):
            if counts[v] == 1:
                if q == 0 or q == len(g) - 1 or g[q - 1] != g[q + 1]:
                    flanked = False
        report["singletons_flanked"] = flanked
    starts = [sum(e[:i]) for i in range(k + 1)]

    def block_of(v):
        for i in range(k):
            if starts[i] < v <= starts[i + 1]:
                return i
        raise ValueError(v)

    monotone = True
    for i in range(k):
        sub = [v for v in g if block_of(v) == i]
        if any(a > b for a, b in zip(sub, sub[1:])):
            monotone = False
    report["blocks_order_preserving"] = monotone
    bounded = True
    for i1 in range(k):
        for i2 in range(i1 + 1, k):
            sub_g = [v for v in g if block_of(v) in (i1, i2)]
            sub_f = [v for v in f if v - 1 in (i1, i2)]
            if _cx(sub_g) > _cx(sub_f) + 1:
                bounded = False
    report["complexity_bound"] = bounded
    report["ok"] = all(report.values())
    return report


def _cx(seq: list[int]) -> int:
    """Complexity of an arbitrary (possibly degenerate) sequence after collapsing repeats."""
    if not seq:
        return 0
    collapsed = [seq[0]]
    for v in seq[1:]:
        if v != collapsed[-1]:
            collapsed.append(v)
    vals = sorted(set(collapsed))
    rel = {v: n for n, v in enumerate(vals, start=1)}
    return complexity(tuple(rel[v] for v in collapsed))
