"""Finite simplicial sets, normalized cochains and the surjection action on them.

A simplex is a pair ``(name, eta)``: a nondegenerate simplex ``name`` of
dimension ``r`` and a monotone surjection ``eta: [n] -> [r]`` written as a
tuple of length ``n + 1``.  ``eta`` is the identity for nondegenerate
simplices.  Face tables store ``d_i`` of every nondegenerate simplex in this
form, so degeneracies never have to be listed.

Cochains are dicts ``{name: coeff}`` on nondegenerate simplices (normalized
cochains vanish on degenerate ones).  The coboundary is ``(dz)(x) = z(sum_i
(-1)^i d_i x)``.  A surjection ``f: m -> k`` acts by the interval-cut formula:
an ``n``-simplex is cut at ``0 = n_0 <= n_1 <= ... <= n_m = n`` and ``z_i`` is
evaluated on the face spanned by the intervals ``[n_{q-1}, n_q]`` with
``f(q) = i``.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from typing import Mapping, Sequence

from .freealg import add_into
from .operad import OperadElement, seq_degree

__all__ = [
    "SimplicialSet",
    "CochainAlgebra",
    "sphere",
    "projective_space",
    "standard_simplex",
    "thick_sphere",
    "load_simplicial_set",
    "interval_sign",
    "loop_cohomology",
]


def _is_identity(eta: Sequence[int]) -> bool:
    return tuple(eta) == tuple(range(len(eta)))


def _factor(theta: Sequence[int]) -> tuple[tuple, tuple]:
    """Split a monotone map into (surjection onto its image, injection of the image)."""
    image = sorted(set(theta))
    pos = {v: n for n, v in enumerate(image)}
    return tuple(pos[v] for v in theta), tuple(image)


class SimplicialSet:
    def __init__(self, simplices: Mapping[int, Sequence[str]], faces: Mapping[str, Sequence],
                 basepoint: str | None = None, name: str = "X"):
        self.name = name
        self.simplices = {int(n): list(v) for n, v in simplices.items()}
        self.dim = {s: n for n, names in self.simplices.items() for s in names}
        if len(self.dim) != sum(len(v) for v in self.simplices.values()):
            raise ValueError("simplex names must be unique")
        self.faces: dict[str, list] = {}
        for s, fl in faces.items():
            if s not in self.dim:
                raise ValueError(f"faces given for unknown simplex {s!r}")
            self.faces[s] = [self._as_simplex(x, self.dim[s] - 1) for x in fl]
        for s, n in self.dim.items():
            if n > 0 and len(self.faces.get(s, [])) != n + 1:
                raise ValueError(f"simplex {s!r} of dimension {n} needs {n + 1} faces")
        if basepoint is not None and self.dim.get(basepoint) != 0:
            raise ValueError("basepoint must be a 0-simplex")
        self.basepoint = basepoint
        self.check_identities()

    def _as_simplex(self, x, n: int) -> tuple:
        if isinstance(x, str):
            name, eta = x, None
        else:
            name, eta = x[0], x[1]
        if name not in self.dim:
            raise ValueError(f"unknown face {name!r}")
        r = self.dim[name]
        eta = tuple(range(r + 1)) if eta is None else tuple(eta)
        if len(eta) != n + 1 or sorted(set(eta)) != list(range(r + 1)) or list(eta) != sorted(eta):
            raise ValueError(f"bad degeneracy {eta} for face {name!r}")
        return (name, eta)

    @property
    def max_dim(self) -> int:
        return max(self.simplices) if self.simplices else -1

    def face(self, x: tuple, i: int) -> tuple:
        n = len(x[1]) - 1
        theta = tuple(v for v in range(n + 1) if v != i)
        return self.apply(x, theta)

    def apply(self, x: tuple, theta: Sequence[int]) -> tuple:
        """``theta^* x`` for a monotone ``theta: [d] -> [n]``."""
        name, eta = x
        composite = tuple(eta[v] for v in theta)
        surj, image = _factor(composite)
        y = self._inject(name, image)
        return (y[0], tuple(y[1][v] for v in surj))

    def _inject(self, name: str, image: tuple) -> tuple:
        r = self.dim[name]
        if len(image) == r + 1:
            return (name, tuple(range(r + 1)))
        missing = max(v for v in range(r + 1) if v not in image)
        face = self.faces[name][missing]
        rest = tuple(v if v < missing else v - 1 for v in image)
        return self.apply(face, rest)

    def check_identities(self):
        for s, n in self.dim.items():
            if n < 2:
                continue
            x = (s, tuple(range(n + 1)))
            for j in range(n + 1):
                for i in range(j):
                    a = self.face(self.face(x, j), i)
                    b = self.face(self.face(x, i), j - 1)
                    if a != b:
                        raise ValueError(f"simplicial identity fails on {s!r} (i={i}, j={j})")

    def has_nondegenerate_edges(self) -> bool:
        return bool(self.simplices.get(1))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "dimensions": {str(n): v for n, v in sorted(self.simplices.items())},
            "faces": {s: [[nm, list(eta)] for nm, eta in fl] for s, fl in self.faces.items()},
            "basepoint": self.basepoint,
        }


def load_simplicial_set(path: str) -> SimplicialSet:
    with open(path) as fh:
        data = json.load(fh)
    return SimplicialSet(data["dimensions"], data.get("faces", {}), data.get("basepoint"),
                         data.get("name", "X"))


# ---------------------------------------------------------------------------
# built-in examples


def sphere(n: int) -> SimplicialSet:
    """``Delta^n / boundary``: one vertex and one ``n``-simplex."""
    if n < 1:
        raise ValueError("n >= 1")
    faces = {"s": [["*", [0] * n] for _ in range(n + 1)]}
    return SimplicialSet({0: ["*"], n: ["s"]}, faces, "*", name=f"S{n}")


def standard_simplex(n: int) -> SimplicialSet:
    """``Delta^n`` with vertices 0..n; simplices are named by their vertex strings."""
    simplices: dict[int, list[str]] = {}
    faces: dict[str, list] = {}
    for d in range(n + 1):
        for vs in itertools.combinations(range(n + 1), d + 1):
            nm = "".join(map(str, vs))
            simplices.setdefault(d, []).append(nm)
            if d:
                faces[nm] = ["".join(map(str, vs[:i] + vs[i + 1:])) for i in range(d + 1)]
    return SimplicialSet(simplices, faces, "0", name=f"Delta{n}")


def projective_space(n: int) -> SimplicialSet:
    """The ``n``-skeleton of the nerve of ``Z/2``: one nondegenerate simplex per dimension."""
    simplices = {d: [f"e{d}"] for d in range(n + 1)}
    faces = {}
    for d in range(1, n + 1):
        fl = []
        for i in range(d + 1):
            if i in (0, d):
                fl.append([f"e{d - 1}", list(range(d))])
            else:
                # the i-th face multiplies two generators: s_{i-1} e_{d-2}
                fl.append([f"e{d - 2}", [v if v < i else v - 1 for v in range(d)]])
        faces[f"e{d}"] = fl
    return SimplicialSet(simplices, faces, "e0", name=f"RP{n}")


def thick_sphere() -> SimplicialSet:
    """Two 2-cells ``a``, ``b`` and a 3-cell ``c`` with ``d_0 c = a``, ``d_1 c = b``.

    Its reduced cochains have a nonzero differential but the cohomology of a
    2-sphere, which makes it a handy test bed for coboundary perturbations.
    """
    pt2 = ["*", [0, 0, 0]]
    faces = {
        "a": [["*", [0, 0]]] * 3,
        "b": [["*", [0, 0]]] * 3,
        "c": [["a", [0, 1, 2]], ["b", [0, 1, 2]], pt2, pt2],
    }
    return SimplicialSet({0: ["*"], 2: ["a", "b"], 3: ["c"]}, faces, "*", name="S2thick")


# ---------------------------------------------------------------------------
# the action


@lru_cache(maxsize=None)
def _cuts(n: int, m: int) -> tuple:
    return tuple(
        (0,) + c + (n,) for c in itertools.combinations_with_replacement(range(n + 1), m - 1)
    )


def interval_sign(f: Sequence[int], cuts: Sequence[int]) -> int:
    """Parity attached to one interval cut of a simplex.

    The cut is read as an iterated Alexander-Whitney diagonal followed by
    joining, for each value, its intervals into one face.  With interval
    ``q`` of degree ``L_q = n_q - n_{q-1}`` the sign collects

    * the Koszul sign of sorting the intervals stably by value,
    * the joins of value ``i`` (degree ``c - 1`` for ``c`` intervals)
      passing the intervals of smaller values,
    * ``sum_t (c - t) L_t`` over the intervals ``t = 1..c`` of each value, and
    * ``|f|(|f|-1)/2``, which makes ``(12)`` the plain Alexander-Whitney cup
      and the coboundary plain precomposition with the boundary.
    """
    m = len(f)
    k = max(f)
    L = [cuts[q + 1] - cuts[q] for q in range(m)]
    s = 0
    for a in range(m):
        for b in range(a + 1, m):
            if f[a] > f[b]:
                s += L[a] * L[b]
    below = 0
    for i in range(1, k + 1):
        qs = [q for q in range(m) if f[q] == i]
        c = len(qs)
        s += (c - 1) * below
        s += sum((c - 1 - t) * L[q] for t, q in enumerate(qs))
        below += sum(L[q] for q in qs)
    fd = m - k
    s += fd * (fd - 1) // 2
    return s & 1


class CochainAlgebra:
    """Normalized (optionally reduced) cochains of a finite simplicial set."""

    def __init__(self, X: SimplicialSet, modulus: int | None = None, reduced: bool = False):
        if reduced and X.basepoint is None:
            raise ValueError("reduced cochains need a basepoint")
        self.X = X
        self.modulus = modulus
        self.reduced = reduced
        self._order = {}
        for n in sorted(X.simplices):
            for s in X.simplices[n]:
                if reduced and s == X.basepoint:
                    continue
                self._order[s] = (n, len(self._order))
        self._cob = self._coboundaries()

    # -- interface shared with the free algebra
    def degree(self, key: str) -> int:
        return self.X.dim[key]

    def sort_key(self, key: str) -> tuple:
        return self._order[key]

    def format_key(self, key: str) -> str:
        return key

    def basis(self, degree: int) -> list:
        return [s for s in self.X.simplices.get(degree, []) if s in self._order]

    def d(self, key: str) -> dict:
        return self._cob.get(key, {})

    def d_element(self, z: Mapping) -> dict:
        out: dict = {}
        for k, c in z.items():
            add_into(out, self.d(k), c, self.modulus)
        return out

    def _coboundaries(self) -> dict:
        out: dict = {}
        X = self.X
        for s, n in X.dim.items():
            if n == 0 or s not in self._order:
                continue
            for i in range(n + 1):
                name, eta = X.face((s, tuple(range(n + 1))), i)
                if not _is_identity(eta) or name not in self._order:
                    continue
                row = out.setdefault(name, {})
                add_into(row, {s: -1 if i & 1 else 1}, 1, self.modulus)
        return out

    def evaluate(self, op: OperadElement, elems: Sequence[Mapping], simplex: str) -> int:
        X = self.X
        n = X.dim[simplex]
        top = (simplex, tuple(range(n + 1)))
        total = 0
        degs = []
        for z in elems:
            ds = {X.dim[k] for k in z}
            if len(ds) > 1:
                raise ValueError("cochain arguments must be homogeneous")
            degs.append(ds.pop() if ds else None)
        if any(d is None for d in degs):
            return 0
        for f, c in op.terms.items():
            m = len(f)
            k = op.arity
            for cuts in _cuts(n, m):
                verts: list[list[int]] = [[] for _ in range(k)]
                for q, v in enumerate(f):
                    verts[v - 1].extend(range(cuts[q], cuts[q + 1] + 1))
                if any(len(verts[i]) != degs[i] + 1 for i in range(k)):
                    continue
                val = c
                for i in range(k):
                    vs = verts[i]
                    if any(a >= b for a, b in zip(vs, vs[1:])):
                        val = 0
                        break
                    name, eta = X.apply(top, vs)
                    if not _is_identity(eta):
                        val = 0
                        break
                    val *= elems[i].get(name, 0)
                    if not val:
                        break
                if val:
                    total += -val if interval_sign(f, cuts) else val
        return total

    def act(self, op: OperadElement, elems: Sequence[Mapping]) -> dict:
        if len(elems) != op.arity:
            raise ValueError(f"operation of arity {op.arity} applied to {len(elems)} inputs")
        degs = []
        for z in elems:
            ds = {self.X.dim[k] for k in z}
            if not ds:
                return {}
            degs.append(ds)
        out: dict = {}
        for combo in itertools.product(*(sorted(ds) for ds in degs)):
            parts = [{k: v for k, v in z.items() if self.X.dim[k] == d} for z, d in zip(elems, combo)]
            for fdeg in op.degrees():
                target = sum(combo) - fdeg
                piece = OperadElement._raw({f: c for f, c in op.terms.items() if seq_degree(f) == fdeg},
                                           op.arity, None)
                for s in self.basis(target):
                    v = self.evaluate(piece, parts, s)
                    if v:
                        add_into(out, {s: v}, 1, self.modulus)
        return out

    def cup(self, a: Mapping, b: Mapping) -> dict:
        return self.act(OperadElement({(1, 2): 1}), [a, b])


# ---------------------------------------------------------------------------
# loop space cohomology


def loop_cohomology(X: SimplicialSet, p: int, max_degree: int, augmented: bool = True,
                    operations: bool = True) -> dict:
    """Dimensions of ``H^n`` of the bar complex of reduced cochains, ``n <= max_degree``.

    The bar complex has no length-0 summand, so ``H^0`` is zero unless
    ``augmented`` is set, in which case the ground field is added back in
    degree 0.  With ``operations`` the table of Steenrod operations on every
    basis class whose degree fits under the cutoff is included.
    """
    from .steenrod import bar_structure, operation_table

    if X.has_nondegenerate_edges():
        raise ValueError("the space has nondegenerate 1-simplices; bar degrees would be unbounded")
    if len(X.simplices.get(0, [])) != 1:
        raise ValueError("the space must have a single vertex")
    if X.basepoint is None:
        raise ValueError("the space needs a basepoint")
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    alg = CochainAlgebra(X, modulus=p, reduced=True)
    C = bar_structure(alg, max_degree, name=f"B{X.name}")
    dims = []
    for n in range(max_degree + 1):
        dims.append(C.cohomology(n).dim + (1 if augmented and n == 0 else 0))
    out = {"space": X.name, "prime": p, "max_degree": max_degree, "augmented": augmented,
           "dimensions": dims}
    if operations:
        out["operations"] = operation_table(C)
    return out
