"""Steenrod operations from an equivariant map ``W -> E(p)``.

``W`` is the standard free resolution of the trivial module over the cyclic
group of order ``p`` generated by ``t``: cells ``e_i`` with

    d e_{2i+1} = (t - 1) e_{2i},    d e_{2i+2} = (1 + t + ... + t^{p-1}) e_{2i+1}.

``phi(e_0)`` is the identity surjection and ``phi(e_{i+1})`` is the
contracting homotopy applied to ``phi(d e_{i+1})``.  A cyclic element acts on
the left of ``E(p)`` by ``sigma . f = f <> sigma^{-1}``.

Given a complex with a structure map ``E(p) (x) B^{(x)p} -> B`` the
operations ``D_i(x) = structure(phi(e_i), x, ..., x)`` are assembled into
``Sq^s = D_{|x|-s}`` at ``p = 2`` and, at odd ``p``,

    P^s = (-1)^s nu(q) D_{(q-2s)(p-1)},   beta P^s = (-1)^s nu(q) D_{(q-2s)(p-1)-1}

with ``q = |x|`` and ``nu(q) = (-1)^{j(q^2+q)/2} (j!)^q``, ``j = (p-1)/2``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from .bar import bar_basis, bar_differential, format_bar, term_sort_key
from .freealg import add_into
from .linalg import CohomologyGroup, Complex, cohomology
from .operad import (
    OperadElement,
    boundary,
    contracting_homotopy,
    identity,
    perm_inverse,
    sigma_action,
)
from .phi import phi

__all__ = [
    "w_boundary",
    "cyclic_generator",
    "act_cyclic",
    "build_phi",
    "phi_of",
    "check_phi",
    "StructuredComplex",
    "bar_structure",
    "cochain_structure",
    "CohomologyClass",
    "homology",
    "D",
    "steenrod_P",
    "beta_P",
    "Sq",
    "nu",
    "operation_table",
    "CutoffError",
]


class CutoffError(ValueError):
    """The requested operation needs degrees beyond the truncation cutoff."""


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


# ---------------------------------------------------------------------------
# W and phi


def w_boundary(x: Mapping, p: int) -> dict:
    """Differential of ``W``; elements are dicts ``{(i, g): c}`` meaning ``c t^g e_i``."""
    out: dict = {}
    for (i, g), c in x.items():
        if i == 0:
            continue
        if i % 2:
            add_into(out, {(i - 1, (g + 1) % p): c, (i - 1, g): -c})
        else:
            add_into(out, {(i - 1, (g + h) % p): c for h in range(p)})
    return out


def cyclic_generator(p: int) -> tuple:
    return tuple(range(2, p + 1)) + (1,)


def _cyclic_power(p: int, g: int) -> tuple:
    return tuple((v + g - 1) % p + 1 for v in range(1, p + 1))


def act_cyclic(x: OperadElement, g: int) -> OperadElement:
    """``t^g . x = x <> t^{-g}``."""
    p = x.arity
    g %= p
    if not g:
        return x
    return sigma_action(x, perm_inverse(_cyclic_power(p, g)))


_PHI_CACHE: dict[int, list[OperadElement]] = {}
_PHI_LOCK = threading.Lock()


def phi_of(table: Sequence[OperadElement], x: Mapping, p: int) -> OperadElement:
    """Equivariant extension of a table ``i -> phi(e_i)`` to ``W``."""
    total = OperadElement.zero(p)
    for (i, g), c in x.items():
        total = total + c * act_cyclic(table[i], g)
    return total


def build_phi(p: int, max_degree: int) -> list[OperadElement]:
    """``[phi(e_0), ..., phi(e_max_degree)]`` over the integers."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    with _PHI_LOCK:
        table = _PHI_CACHE.setdefault(p, [identity(p)])
        while len(table) <= max_degree:
            i = len(table)
            table.append(contracting_homotopy(phi_of(table, w_boundary({(i, 0): 1}, p), p)))
        return list(table[: max_degree + 1])


def check_phi(p: int, max_degree: int) -> list[tuple[int, int]]:
    """Cells ``t^g e_i`` on which ``d phi = phi d`` fails (empty when all is well)."""
    table = build_phi(p, max_degree)
    bad = []
    for i in range(max_degree + 1):
        for g in range(p):
            cell = {(i, g): 1}
            lhs = boundary(phi_of(table, cell, p))
            rhs = phi_of(table, w_boundary(cell, p), p)
            if lhs != rhs:
                bad.append((i, g))
    return bad


# ---------------------------------------------------------------------------
# complexes with a structure map


@dataclass
class StructuredComplex:
    """A cochain complex over ``F_p`` with a structure map from ``E(p)``.

    ``structure(op, xs)`` evaluates an operad element on a list of vectors.
    """

    name: str
    p: int
    basis: Callable[[int], list]
    d: Callable[[object], Mapping]
    sort_key: Callable[[object], tuple]
    structure: Callable[[OperadElement, Sequence[Mapping]], dict]
    format_vec: Callable[[Mapping], str]
    max_degree: int

    def __post_init__(self):
        self._basis_cache: dict[int, list] = {}
        self._h: dict[int, CohomologyGroup] = {}
        self._lock = threading.Lock()

    def basis_cached(self, n: int) -> list:
        if n not in self._basis_cache:
            self._basis_cache[n] = list(self.basis(n)) if n >= 0 else []
        return self._basis_cache[n]

    def complex(self) -> Complex:
        return Complex(self.basis_cached, self.d, self.sort_key, self.p)

    def cohomology(self, n: int) -> CohomologyGroup:
        with self._lock:
            if n not in self._h:
                self._h[n] = cohomology(self.complex(), n)
            return self._h[n]


def bar_structure(alg, max_degree: int, name: str = "B") -> StructuredComplex:
    """The bar complex of ``alg`` with ``Phi`` as structure map."""
    if alg.modulus is None or not _is_prime(alg.modulus):
        raise ValueError("the algebra must be defined over a prime field")
    cache: dict = {}

    def d(key):
        if key not in cache:
            cache[key] = bar_differential(alg, {key: 1})
        return cache[key]

    return StructuredComplex(
        name=name,
        p=alg.modulus,
        basis=lambda n: bar_basis(alg, n),
        d=d,
        sort_key=lambda t: term_sort_key(alg, t),
        structure=lambda op, xs: phi(alg, op.reduce(alg.modulus), xs),
        format_vec=lambda v: format_bar(alg, v),
        max_degree=max_degree,
    )


def cochain_structure(alg, max_degree: int | None = None, name: str = "N") -> StructuredComplex:
    """A cochain-type algebra (``basis``, ``d``, ``act``) acting on itself."""
    if alg.modulus is None or not _is_prime(alg.modulus):
        raise ValueError("the algebra must be defined over a prime field")
    from .operad import format_sum

    def fmt(v):
        items = sorted(v.items(), key=lambda kv: alg.sort_key(kv[0]))
        return format_sum(items, alg.format_key, alg.modulus)

    if max_degree is None:
        max_degree = getattr(getattr(alg, "X", None), "max_dim", 0) + 1
    return StructuredComplex(
        name=name,
        p=alg.modulus,
        basis=alg.basis,
        d=alg.d,
        sort_key=alg.sort_key,
        structure=lambda op, xs: alg.act(op.reduce(alg.modulus), xs),
        format_vec=fmt,
        max_degree=max_degree,
    )


# ---------------------------------------------------------------------------
# classes and operations


@dataclass
class CohomologyClass:
    degree: int
    representative: dict
    complex: StructuredComplex

    def __post_init__(self):
        p = self.complex.p
        self.representative = {k: c % p for k, c in self.representative.items() if c % p}
        if self.complex.complex().d_vec(self.representative):
            raise ValueError("representative is not a cocycle")

    def coordinates(self) -> list[int]:
        return self.complex.cohomology(self.degree).coordinates(self.representative)

    def is_zero(self) -> bool:
        return not any(self.coordinates())

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return CohomologyClass(self.degree,
                               add_into(dict(self.representative), other.representative, 1, self.complex.p),
                               self.complex)

    def __rmul__(self, n: int) -> "CohomologyClass":
        return CohomologyClass(self.degree, {k: n * c for k, c in self.representative.items()},
                               self.complex)

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.degree == other.degree and self.coordinates() == other.coordinates()

    def __str__(self):
        return self.complex.format_vec(self.representative) if self.representative else "0"


def homology(C: StructuredComplex, n: int) -> list[CohomologyClass]:
    """Basis of ``H^n`` as classes with deterministic representatives."""
    return [CohomologyClass(n, r, C) for r in C.cohomology(n).representatives]


def _check_cutoff(c: CohomologyClass):
    p = c.complex.p
    if p * c.degree + 1 > c.complex.max_degree:
        raise CutoffError(
            f"a class of degree {c.degree} needs cutoff >= {p * c.degree + 1}, "
            f"got {c.complex.max_degree}")


def D(i: int, c: CohomologyClass) -> CohomologyClass:
    """``D_i(c) = structure(phi(e_i), c, ..., c)``, of degree ``p|c| - i``."""
    p = c.complex.p
    target = p * c.degree - i
    if i < 0 or not c.representative:
        return CohomologyClass(target, {}, c.complex)
    op = build_phi(p, i)[i]
    val = c.complex.structure(op, [c.representative] * p)
    return CohomologyClass(target, val, c.complex)


def nu(q: int, p: int) -> int:
    j = (p - 1) // 2
    sign = -1 if (j * (q * q + q) // 2) % 2 else 1
    return sign * math.factorial(j) ** q % p


def Sq(s: int, c: CohomologyClass) -> CohomologyClass:
    if c.complex.p != 2:
        raise ValueError("Sq is the p = 2 operation; use steenrod_P")
    _check_cutoff(c)
    return D(c.degree - s, c)


def steenrod_P(s: int, c: CohomologyClass) -> CohomologyClass:
    """``P^s`` (``Sq^s`` when ``p = 2``)."""
    p = c.complex.p
    if p == 2:
        return Sq(s, c)
    _check_cutoff(c)
    q = c.degree
    res = D((q - 2 * s) * (p - 1), c)
    return ((-1) ** s * nu(q, p)) * res


def beta_P(s: int, c: CohomologyClass) -> CohomologyClass:
    """``beta P^s`` at odd ``p``; at ``p = 2`` this is ``Sq^{2s+1}``."""
    p = c.complex.p
    if p == 2:
        return Sq(2 * s + 1, c)
    _check_cutoff(c)
    q = c.degree
    i = (q - 2 * s) * (p - 1) - 1
    res = D(i, c)
    return ((-1) ** s * nu(q, p)) * res


def operation_table(C: StructuredComplex, degrees: Sequence[int] | None = None) -> list[dict]:
    """Every operation on every basis class whose degree fits under the cutoff.

    Rows are dicts ``{"class", "degree", "operation", "result", "coordinates"}``.
    """
    p = C.p
    rows = []
    if degrees is None:
        degrees = [q for q in range(1, C.max_degree + 1) if p * q + 1 <= C.max_degree]
    for q in degrees:
        for j, c in enumerate(homology(C, q)):
            label = f"x{q}_{j}"
            ops: list[tuple[str, Callable[[], CohomologyClass]]] = []
            if p == 2:
                for s in range(0, q + 1):
                    ops.append((f"Sq{s}", lambda s=s, c=c: Sq(s, c)))
            else:
                for s in range(0, q // 2 + 1):
                    ops.append((f"P{s}", lambda s=s, c=c: steenrod_P(s, c)))
                    if (q - 2 * s) * (p - 1) - 1 >= 0:
                        ops.append((f"bP{s}", lambda s=s, c=c: beta_P(s, c)))
            for name, fn in ops:
                r = fn()
                rows.append({
                    "class": label,
                    "degree": q,
                    "representative": str(c),
                    "operation": name,
                    "result_degree": r.degree,
                    "result": str(r),
                    "coordinates": r.coordinates(),
                })
    return rows
