"""The chain map ``Phi_k : E(k) (x) BA^{(x)k} -> BA``.

For a surjection ``f`` and bar tensors ``x^1, ..., x^k`` of lengths
``p^1, ..., p^k``,

    f(x^1, ..., x^k) = sum_l sum_alpha (-1)^kappa
        [C(f_{S_1}; E_1)(E_1 x) | ... | C(f_{S_l}; E_l)(E_l x)]

with ``alpha`` running over the l-indices of ``(f; p^1, ..., p^k)``.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from .bar import PRODUCT, bar_degree, tensor
from .coefficients import coefficient, coefficient_of
from .freealg import add_into
from .indexing import LIndex, enumerate_indices, restrict_seq, sigma_alpha, sub_e, substitution
from .operad import OperadElement, full_compose, seq_degree, sigma_action

__all__ = ["phi", "phi_basis", "kappa", "substitution", "product", "varpi",
           "composition_expansion", "associativity_check"]


def kappa(f: Sequence[int], alpha: LIndex, norms: Sequence[Sequence[int]]) -> int:
    """Sign exponent of the term of ``alpha``.

    ``norms[i-1][t-1]`` is ``||x^i_t|| = |x^i_t| - 1``.
    """
    k = len(norms)
    l = alpha.length
    fn = []  # fn[j][i] = ||f_{S_j}^{-1}(i)||
    xn = []  # xn[j][i] = ||E_j x^i||
    xtot = []
    for j in range(l):
        counts = [0] * k
        for q in alpha.S[j]:
            counts[f[q - 1] - 1] += 1
        fn.append([max(c - 1, 0) for c in counts])
        row = [0] * k
        for i, t in alpha.E[j]:
            row[i - 1] += norms[i - 1][t - 1]
        xn.append(row)
        xtot.append(sum(row))
    s = 0
    for j in range(l):
        for jp in range(j + 1, l):
            for i in range(k):
                for ip in range(i):
                    s += fn[j][i] * fn[jp][ip] + xn[j][i] * xn[jp][ip]
    for j in range(l):
        h = restrict_seq(f, alpha.S[j])
        dj = seq_degree(h)
        s += dj * sum(xtot[:j])
    for j in range(l):
        counts = alpha.e_counts(j, k)
        for i in range(k):
            for ip in range(i, k):
                s += counts[ip] * xn[j][i]
        pos = {}
        for i, t in alpha.E[j]:
            pos[i] = pos.get(i, 0) + 1
            s += pos[i] * norms[i - 1][t - 1]
    return s


def phi_basis(alg, f: tuple, xs: Sequence[tuple]) -> dict:
    """``f(x^1, ..., x^k)`` for a surjection and basis bar tensors."""
    k = max(f)
    if len(xs) != k:
        raise ValueError(f"expected {k} bar inputs, got {len(xs)}")
    if any(len(x) == 0 for x in xs):
        raise ValueError("bar inputs must have length >= 1")
    p = tuple(len(x) for x in xs)
    norms = [[alg.degree(a) - 1 for a in x] for x in xs]
    out: dict = {}
    for l in range(1, sum(p) + 1):
        for alpha in enumerate_indices(f, p, l):
            entries = []
            for j in range(l):
                h = restrict_seq(f, alpha.S[j])
                if h is None:
                    break
                c = coefficient(h, sub_e(alpha, j, k), alg.modulus)
                if not c:
                    break
                args = [{a: 1} for a in substitution(alpha.E[j], xs)]
                val = alg.act(c, args)
                if not val:
                    break
                entries.append(val)
            else:
                sign = -1 if kappa(f, alpha, norms) & 1 else 1
                add_into(out, tensor(alg, entries), sign, alg.modulus)
    return out


def phi(alg, g: OperadElement, xs: Sequence[Mapping]) -> dict:
    """``Phi_k(g, x^1, ..., x^k)``, multilinear in all arguments."""
    if len(xs) != g.arity:
        raise ValueError(f"expected {g.arity} bar inputs, got {len(xs)}")
    out: dict = {}
    for f, c in g.terms.items():
        for combo in itertools.product(*(list(x.items()) for x in xs)):
            coeff = c
            for _, v in combo:
                coeff *= v
            if not coeff:
                continue
            add_into(out, phi_basis(alg, f, tuple(t for t, _ in combo)), coeff, alg.modulus)
    return out


def product(alg, x: Mapping, y: Mapping) -> dict:
    """The product ``Phi((12), x, y)`` on the bar complex."""
    return phi(alg, PRODUCT.reduce(alg.modulus), [x, y])


# ---------------------------------------------------------------------------
# partial associativity


def varpi(g: Sequence[int], alpha: LIndex, P: int, Q: int) -> int:
    """Sign exponent of the ``alpha`` term in the expansion of ``C(f.g; p, q)``.

    ``P`` and ``Q`` are the totals of the p- and q-vectors.
    """
    r = max(g)
    l = alpha.length
    fn, ec = [], []
    for j in range(l):
        counts = [0] * r
        for q in alpha.S[j]:
            counts[g[q - 1] - 1] += 1
        fn.append([max(c - 1, 0) for c in counts])
        ec.append(alpha.e_counts(j, r))
    s = 0
    for j in range(l):
        for jp in range(j + 1, l):
            for i in range(r):
                for ip in range(i):
                    s += fn[j][i] * fn[jp][ip]
    for j in range(l):
        for jp in range(j):
            for i in range(r):
                for ip in range(i + 1):
                    s += ec[j][i] * ec[jp][ip]
    for j in range(l):
        dj = seq_degree(restrict_seq(g, alpha.S[j]))
        s += (l - j - 1) * sum(ec[j]) + dj * (j + 1 + sum(sum(ec[i]) for i in range(j)))
    dg = seq_degree(g)
    return s + (l + P) * dg + P * (Q - l)


def composition_expansion(f: Sequence[int], p: Sequence[int], g: Sequence[int],
                          q: Sequence[int]) -> OperadElement:
    """Right side of the expansion of ``C(f.g; p, q)`` for a permutation ``f``.

    Sum over l-indices of ``g`` of ``+-C_l(C(f;p), C(g_{S_j};E_j), ...)`` acted on by
    the shuffle of the blocks.
    """
    if sorted(f) != list(range(1, len(f) + 1)):
        raise ValueError(f"{f} is not a permutation")
    r = max(g)
    P, Q = sum(p), sum(q)
    Cf = coefficient(tuple(f), tuple(p))
    total = OperadElement.zero(P + Q)
    if not Cf:
        return total
    for l in range(1, Q + 1):
        Cl = coefficient((1, 2), (1, l))
        for alpha in enumerate_indices(tuple(g), tuple(q), l):
            parts = []
            for j in range(l):
                h = restrict_seq(g, alpha.S[j])
                c = coefficient(h, sub_e(alpha, j, r)) if h is not None else None
                if not c:
                    break
                parts.append(c)
            else:
                x = full_compose(Cl, [Cf] + parts)
                shuffle = tuple(range(1, P + 1)) + tuple(P + v for v in sigma_alpha(alpha.E, q))
                x = sigma_action(x, shuffle)
                total = total + (-x if varpi(g, alpha, P, Q) & 1 else x)
    return total


def associativity_check(f: Sequence[int], g: Sequence[int], p: Sequence[int],
                        q: Sequence[int], alg=None, inputs: Sequence[Mapping] | None = None) -> dict:
    """Compare both sides of the partial associativity identities for ``f.g``.

    Always checks the coefficient expansion. With ``alg`` and ``inputs`` (bar
    tensors of lengths ``p + q``), also checks the product splitting
    ``Phi(f.g, x) = +-Phi(f, x') . Phi(g, x'')``.
    """
    F, G = OperadElement({tuple(f): 1}), OperadElement({tuple(g): 1})
    fg = full_compose(PRODUCT, [F, G])
    lhs = coefficient_of(fg, tuple(p) + tuple(q))
    rhs = composition_expansion(f, p, g, q)
    report = {"f": tuple(f), "g": tuple(g), "p": tuple(p), "q": tuple(q),
              "expansion_ok": lhs == rhs}
    if alg is not None and inputs is not None:
        k = max(f)
        if [len(next(iter(x))) for x in inputs] != list(p) + list(q):
            raise ValueError("input lengths must match p + q")
        a = phi(alg, F, inputs[:k])
        b = phi(alg, G, inputs[k:])
        deg = sum(bar_degree(alg, next(iter(x))) for x in inputs[:k])
        split = product(alg, a, b)
        if seq_degree(g) * deg & 1:
            split = {key: -c for key, c in split.items()}
        report["splitting_ok"] = phi(alg, fg.reduce(alg.modulus), inputs) == {
            key: c for key, c in split.items() if c}
    return report
