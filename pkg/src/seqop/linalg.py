"""Sparse linear algebra over Z/p and cohomology of finite cochain complexes.

Vectors are dicts ``{key: coeff}``; every complex supplies a ``sort_key`` so
pivots (and hence representatives) are chosen deterministically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Mapping, Sequence

__all__ = ["Echelon", "Complex", "CohomologyGroup", "cohomology", "NotAComplexError"]


class NotAComplexError(ValueError):
    """Raised when ``d o d`` is nonzero on a basis element."""


def _inv(a: int, p: int) -> int:
    return pow(a, p - 2, p)


def _axpy(out: dict, vec: Mapping, scale: int, p: int) -> None:
    for k, c in vec.items():
        v = (out.get(k, 0) + scale * c) % p
        if v:
            out[k] = v
        else:
            out.pop(k, None)


class Echelon:
    """Incrementally built echelon basis of a subspace of ``F_p^keys``.

    Each stored vector has coefficient 1 at its pivot, and no other stored
    vector involves that pivot.  Optionally tracks, for every stored vector,
    the combination of inserted vectors ("tags") that produced it.
    """

    def __init__(self, p: int, sort_key: Callable[[Hashable], tuple]):
        self.p = p
        self.sort_key = sort_key
        self.rows: dict = {}  # pivot -> (vector, tag combination)

    def __len__(self):
        return len(self.rows)

    def _pivot(self, vec: Mapping):
        return min(vec, key=self.sort_key)

    def reduce(self, vec: Mapping, tag: Mapping | None = None) -> tuple[dict, dict]:
        """Return ``(residual, tag combination)`` after clearing known pivots."""
        p = self.p
        v = {k: c % p for k, c in vec.items() if c % p}
        t = {k: c % p for k, c in (tag or {}).items() if c % p}
        for piv, (row, rtag) in self.rows.items():
            c = v.get(piv)
            if c:
                _axpy(v, row, -c, p)
                _axpy(t, rtag, -c, p)
        return v, t

    def insert(self, vec: Mapping, tag: Mapping | None = None) -> tuple[dict, dict]:
        """Insert ``vec``; returns the residual and its tag (empty residual = dependent)."""
        v, t = self.reduce(vec, tag)
        if not v:
            return v, t
        p = self.p
        piv = self._pivot(v)
        inv = _inv(v[piv], p)
        v = {k: c * inv % p for k, c in v.items()}
        t = {k: c * inv % p for k, c in t.items()}
        for other, (row, rtag) in self.rows.items():
            c = row.get(piv)
            if c:
                _axpy(row, v, -c, p)
                _axpy(rtag, t, -c, p)
        self.rows[piv] = (v, t)
        return v, t

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]


@dataclass
class Complex:
    """A finite-type cochain complex: ``basis(n)`` lists keys, ``d(key)`` is a dict.

    ``d`` raises degree by one.  ``p`` is the prime of the ground field.
    """

    basis: Callable[[int], Sequence]
    d: Callable[[Hashable], Mapping]
    sort_key: Callable[[Hashable], tuple]
    p: int
    degree: Callable[[Hashable], int] | None = None

    def d_vec(self, vec: Mapping) -> dict:
        out: dict = {}
        for k, c in vec.items():
            _axpy(out, self.d(k), c, self.p)
        return out

    def check_d_squared(self, n: int) -> None:
        for b in self.basis(n):
            if self.d_vec(self.d_vec({b: 1})):
                raise NotAComplexError(f"d^2 != 0 on {b!r} in degree {n}")


@dataclass
class CohomologyGroup:
    degree: int
    p: int
    representatives: list
    images: Echelon
    reps: Echelon = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, cocycle: Mapping) -> list[int]:
        """Coordinates of the class of ``cocycle`` in the representative basis."""
        v, _ = self.images.reduce(cocycle)
        res, tag = self.reps.reduce(v, {})
        if res:
            raise ValueError("not a cocycle of this complex")
        # reps were inserted with tags ``{i: 1}``; the tag of the residual is
        # minus the combination used to cancel ``v``
        coords = [0] * self.dim
        for i, c in tag.items():
            coords[i] = (-c) % self.p
        return coords

    def is_zero(self, cocycle: Mapping) -> bool:
        return not any(self.coordinates(cocycle))


def cohomology(C: Complex, n: int, check: bool = True) -> CohomologyGroup:
    """``H^n`` with deterministic representatives.

    Representatives are the kernel vectors left over after reducing the
    kernel of ``d_n`` modulo the image of ``d_{n-1}``.
    """
    p = C.p
    if check:
        C.check_d_squared(n - 1)
        C.check_d_squared(n)
    images = Echelon(p, C.sort_key)
    for b in C.basis(n - 1):
        images.insert(C.d_vec({b: 1}))
    # kernel of d_n via tagged elimination of the image vectors
    basis_n = list(C.basis(n))
    order = {b: i for i, b in enumerate(basis_n)}
    target_keys: dict = {}

    def tkey(k):
        return target_keys.setdefault(k, (len(target_keys),))

    elim = Echelon(p, lambda k: tkey(k))
    kernel = []
    for b in basis_n:
        v, t = elim.insert(C.d_vec({b: 1}), {b: 1})
        if not v:
            kernel.append(t)
    reps_list = []
    reps = Echelon(p, C.sort_key)
    # a copy of the image echelon extended by kernel vectors
    work = Echelon(p, C.sort_key)
    for piv, (row, tag) in images.rows.items():
        work.rows[piv] = (dict(row), dict(tag))
    for z in sorted(kernel, key=lambda t: sorted(order[k] for k in t)):
        v, _ = work.reduce(z)
        if v:
            work.insert(v)
            rep = dict(sorted(v.items(), key=lambda kv: C.sort_key(kv[0])))
            reps.insert(images.reduce(rep)[0], {len(reps_list): 1})
            reps_list.append(rep)
    return CohomologyGroup(n, p, reps_list, images, reps)
