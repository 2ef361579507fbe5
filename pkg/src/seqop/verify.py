"""Verification suites: exhaustive or seeded checks of the algebraic identities.

Each suite returns a :class:`Report`.  A check is a top-level function that
takes one case and returns ``None`` or a short description of the failure, so
cases can be farmed out to worker processes.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .bar import bar_degree, bar_differential
from .coefficients import (
    X1,
    X2,
    X3,
    coefficient,
    equivariance_transport,
    structural_check,
)
from .diagonal import coassociativity_defect, diagonal
from .freealg import FreeAlgebra, add_into, koszul_parity
from .operad import (
    OperadElement,
    boundary,
    compose,
    contracting_homotopy,
    identity,
    iota_a,
    perm_inverse,
    r_a,
    s_a,
    seq_degree,
    sigma_action,
    surjections,
)
from .phi import phi

__all__ = ["Check", "Report", "SUITES", "run_suite", "sample_algebra"]

MAX_SHOWN = 5


@dataclass
class Check:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    # informational checks are reported but never fail a suite
    informational: bool = False

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": len(self.failures),
            "counterexamples": self.failures[:MAX_SHOWN],
            "ok": self.ok,
            "informational": self.informational,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class Report:
    suite: str
    params: dict
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks if not c.informational)

    @property
    def seconds(self) -> float:
        return sum(c.seconds for c in self.checks)

    def to_dict(self, timings: bool = False) -> dict:
        checks = [c.to_dict() for c in self.checks]
        if not timings:
            for c in checks:
                c.pop("seconds")
        return {"suite": self.suite, "params": self.params, "ok": self.ok, "checks": checks}


def _run(name: str, fn: Callable, cases: Iterable, jobs: int = 1) -> Check:
    cases = list(cases)
    start = time.perf_counter()
    if jobs > 1 and len(cases) > 50:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(fn, cases, chunksize=max(1, len(cases) // (4 * jobs))))
    else:
        results = [fn(c) for c in cases]
    fails = [r for r in results if r is not None]
    return Check(name, len(cases), fails, time.perf_counter() - start)


def _all_surjections(max_entries: int, max_arity: int | None = None) -> list[tuple]:
    out = []
    for m in range(1, max_entries + 1):
        for k in range(1, (max_arity or m) + 1):
            if k <= m:
                out.extend(surjections(m, k))
    return out


def _el(f: Sequence[int]) -> OperadElement:
    return OperadElement({tuple(f): 1})


# ---------------------------------------------------------------------------
# operad


def _case_d_squared(f):
    x = boundary(boundary(_el(f)))
    return None if not x else f"d^2{f} = {x}"


def _case_homotopy(case):
    f, a = case
    x = _el(f)
    lhs = boundary(s_a(x, a)) + s_a(boundary(x), a)
    rhs = x + iota_a(r_a(x, a), a)
    return None if lhs == rhs else f"f={f} a={a}: {lhs} != {rhs}"


def _case_leibniz(case):
    f, i, g = case
    x, y = _el(f), _el(g)
    lhs = boundary(compose(x, i, y))
    rhs = compose(boundary(x), i, y) + (-1) ** seq_degree(f) * compose(x, i, boundary(y))
    return None if lhs == rhs else f"{f} o_{i} {g}"


def _case_sigma_d(case):
    f, sigma = case
    lhs = boundary(sigma_action(_el(f), sigma))
    rhs = sigma_action(boundary(_el(f)), sigma)
    return None if lhs == rhs else f"f={f} sigma={sigma}"


def _case_contraction(f):
    x = _el(f)
    k = x.arity
    lhs = boundary(contracting_homotopy(x)) + contracting_homotopy(boundary(x))
    eps = identity(k) if seq_degree(f) == 0 else OperadElement.zero(k)
    return None if lhs == x - eps else f"f={f}"


def suite_operad(max_entries: int = 7, seed: int = 0, samples: int = 300, jobs: int = 1, **_) -> Report:
    rep = Report("operad", {"max_entries": max_entries, "seed": seed, "samples": samples})
    seqs = _all_surjections(max_entries)
    rep.checks.append(_run("d_squared_zero", _case_d_squared, seqs, jobs))
    rep.checks.append(_run("homotopy_identity",
                           _case_homotopy, [(f, a) for f in seqs for a in range(1, max(f) + 1)], jobs))
    rng = random.Random(seed)
    small = _all_surjections(min(max_entries, 5))
    pairs = []
    for _ in range(samples):
        f = rng.choice(small)
        g = rng.choice(small)
        pairs.append((f, rng.randint(1, max(f)), g))
    rep.checks.append(_run("leibniz_composition", _case_leibniz, pairs, jobs))
    sig = []
    for _ in range(samples):
        f = rng.choice(small)
        s = list(range(1, max(f) + 1))
        rng.shuffle(s)
        sig.append((f, tuple(s)))
    rep.checks.append(_run("boundary_equivariant", _case_sigma_d, sig, jobs))
    rep.checks.append(_run("contracting_homotopy",
                           _case_contraction, _all_surjections(min(max_entries, 6)), jobs))
    return rep


# ---------------------------------------------------------------------------
# coefficients


def coefficient_keys(max_arity: int = 3, max_entries: int = 5, max_total: int = 5) -> list:
    keys = []
    for f in _all_surjections(max_entries, max_arity):
        k = max(f)
        for e in itertools.product(range(1, max_total + 1), repeat=k):
            if sum(e) <= max_total:
                keys.append((f, e))
    return keys


def _case_dC(case):
    f, e = case
    lhs = boundary(coefficient(f, e))
    rhs = X1(f, e) + X2(f, e) + X3(f, e)
    return None if lhs == rhs else f"f={f} e={e}"


def _case_structural(case):
    f, e = case
    for g in coefficient(f, e).terms:
        r = structural_check(g, f, e)
        if not r["ok"]:
            bad = [k for k, v in r.items() if not v and k != "ok"]
            return f"f={f} e={e} term={g} fails {bad}"
    return None


def _case_transport(case):
    f, e, sigma = case
    g = sigma_action(_el(f), sigma)
    (h, c), = g.terms.items()
    direct = c * coefficient(h, e)
    other = equivariance_transport(f, sigma, e)
    return None if direct == other else f"f={f} sigma={sigma} e={e}"


def suite_coefficients(max_arity: int = 3, max_entries: int = 5, max_total: int = 5,
                       jobs: int = 1, **_) -> Report:
    rep = Report("coefficients",
                 {"max_arity": max_arity, "max_entries": max_entries, "max_total": max_total})
    keys = coefficient_keys(max_arity, max_entries, max_total)
    rep.checks.append(_run("dC_equals_X1_X2_X3", _case_dC, keys, jobs))
    rep.checks.append(_run("structural_conditions", _case_structural, keys, jobs))
    cases = [(f, e, s) for f, e in keys
             for s in itertools.permutations(range(1, max(f) + 1))]
    rep.checks.append(_run("equivariance_transport", _case_transport, cases, jobs))
    return rep


# ---------------------------------------------------------------------------
# Phi on a free algebra

_ALG = None
GENERATORS = ["a", "b", "c", "v", "s", "t", "u", "w"]


def sample_algebra() -> FreeAlgebra:
    """Free algebra over the integers with a few generators, two of them non-closed."""
    global _ALG
    if _ALG is None:
        A = FreeAlgebra()
        A.add_generator("u", 2)
        A.add_generator("w", 3)
        A.add_generator("a", 2)
        A.add_generator("b", 3)
        A.add_generator("c", 4)
        A.add_generator("v", 3)
        A.add_generator("s", 4, A.parse("(12)(u,w)"))
        A.add_generator("t", 5, A.parse("(12)(a,c)"))
        _ALG = A
    return _ALG


def _bar_inputs(rng: random.Random, p: Sequence[int]) -> list[dict]:
    names = rng.sample(GENERATORS, sum(p))
    it = iter(names)
    return [{tuple(((1,), (next(it),)) for _ in range(pi)): 1} for pi in p]


def phi_cases(max_arity: int, max_entries: int, max_bar_length: int, seed: int,
              trials: int = 2) -> list:
    rng = random.Random(seed)
    cases = []
    for f in _all_surjections(max_entries, max_arity):
        k = max(f)
        for p in itertools.product(range(1, max_bar_length + 1), repeat=k):
            if sum(p) > max_bar_length:
                continue
            for _ in range(trials):
                cases.append((f, _bar_inputs(rng, p)))
    return cases


def _case_phi_chain(case):
    f, xs = case
    A = sample_algebra()
    g = _el(f)
    lhs = bar_differential(A, phi(A, g, xs))
    dg = boundary(g)
    rhs = dict(phi(A, dg, xs)) if dg else {}
    running = seq_degree(f)
    for i, x in enumerate(xs):
        dx = bar_differential(A, x)
        if dx:
            ys = list(xs)
            ys[i] = dx
            add_into(rhs, phi(A, g, ys), -1 if running & 1 else 1)
        running += bar_degree(A, next(iter(x)))
    return None if lhs == rhs else f"f={f} x={[list(x) for x in xs]}"


def _case_phi_coinvariance(case):
    f, xs = case
    A = sample_algebra()
    k = max(f)
    degs = [bar_degree(A, next(iter(x))) for x in xs]
    for sigma in itertools.permutations(range(1, k + 1)):
        lhs = phi(A, sigma_action(_el(f), sigma), xs)
        inv = perm_inverse(sigma)
        rhs = phi(A, _el(f), [xs[inv[i] - 1] for i in range(k)])
        if koszul_parity(degs, inv):
            rhs = {key: -c for key, c in rhs.items()}
        if lhs != rhs:
            return f"f={f} sigma={sigma}"
    return None


def suite_phi(max_arity: int = 3, max_entries: int = 5, max_bar_length: int = 4, seed: int = 0,
              jobs: int = 1, **_) -> Report:
    rep = Report("phi", {"max_arity": max_arity, "max_entries": max_entries,
                         "max_bar_length": max_bar_length, "seed": seed})
    cases = phi_cases(max_arity, max_entries, max_bar_length, seed, trials=1)
    rep.checks.append(_run("chain_map", _case_phi_chain, cases, jobs))
    rep.checks.append(_run("coinvariance", _case_phi_coinvariance, cases, jobs))
    return rep


# ---------------------------------------------------------------------------
# diagonal


def _case_diag_d(f):
    x = _el(f)
    return None if diagonal(boundary(x)) == diagonal(x).boundary() else f"f={f}"


def _case_diag_sigma(case):
    f, sigma = case
    lhs = diagonal(sigma_action(_el(f), sigma))
    rhs = diagonal(_el(f)).act_sigma(sigma)
    return None if lhs == rhs else f"f={f} sigma={sigma}"


def _case_diag_compose(case):
    f, i, g = case
    lhs = diagonal(compose(_el(f), i, _el(g)))
    rhs = diagonal(_el(f)).compose(i, diagonal(_el(g)))
    return None if lhs == rhs else f"f={f} i={i} g={g}"


def _case_diag_coassoc(f):
    return None if not coassociativity_defect(_el(f)) else f"f={f}"


def suite_diagonal(max_entries: int = 7, seed: int = 0, samples: int = 200, jobs: int = 1, **_) -> Report:
    rep = Report("diagonal", {"max_entries": max_entries, "seed": seed, "samples": samples})
    seqs = _all_surjections(max_entries)
    rep.checks.append(_run("commutes_with_d", _case_diag_d, seqs, jobs))
    rng = random.Random(seed)
    small = _all_surjections(min(max_entries, 4))
    cases = []
    for _ in range(samples):
        f = rng.choice(small)
        s = list(range(1, max(f) + 1))
        rng.shuffle(s)
        cases.append((f, tuple(s)))
    rep.checks.append(_run("equivariant", _case_diag_sigma, cases, jobs))
    comp = []
    for _ in range(samples):
        f, g = rng.choice(small), rng.choice(small)
        comp.append((f, rng.randint(1, max(f)), g))
    rep.checks.append(_run("commutes_with_composition", _case_diag_compose, comp, jobs))
    coassoc = _run("coassociative", _case_diag_coassoc, _all_surjections(min(max_entries, 5)), jobs)
    coassoc.informational = True
    rep.checks.append(coassoc)
    return rep


# ---------------------------------------------------------------------------
# steenrod


def _case_phi_table(case):
    from .steenrod import check_phi

    p, n = case
    bad = check_phi(p, n)
    return None if not bad else f"p={p} cells {bad}"


def _case_loop_sphere(case):
    from .cochains import loop_cohomology, sphere

    p, n = case
    dims = loop_cohomology(sphere(2), p, n, operations=False)["dimensions"]
    return None if dims == [1] * (n + 1) else f"p={p} dims={dims}"


def _case_sq_properties(case):
    from .cochains import CochainAlgebra, projective_space, sphere, thick_sphere
    from .steenrod import Sq, bar_structure, cochain_structure, homology

    name, D = case
    if name == "S2":
        C = bar_structure(CochainAlgebra(sphere(2), modulus=2, reduced=True), D)
    elif name == "S2thick":
        C = bar_structure(CochainAlgebra(thick_sphere(), modulus=2, reduced=True), D)
    else:
        C = cochain_structure(CochainAlgebra(projective_space(D), modulus=2))
    perturbed = 0
    for q in range(1, D + 1):
        if 2 * q + 1 > C.max_degree:
            break
        for c in homology(C, q):
            for s in range(q + 1, q + 3):
                if not Sq(s, c).is_zero():
                    return f"{name}: Sq^{s} nonzero on degree {q}"
            if Sq(q, c).coordinates() != D_cup(C, c).coordinates():
                return f"{name}: Sq^{q} c != c cup c in degree {q}"
            for b in C.basis_cached(q - 1):
                db = C.complex().d_vec({b: 1})
                if not db:
                    continue
                perturbed += 1
                pert = type(c)(q, add_into(dict(c.representative), db, 1, 2), C)
                for s in range(0, q + 1):
                    if Sq(s, pert).coordinates() != Sq(s, c).coordinates():
                        return f"{name}: Sq^{s} depends on the representative in degree {q}"
    if name == "S2thick" and not perturbed:
        return "S2thick: no coboundary to perturb by"
    return None


def D_cup(C, c):
    from .steenrod import CohomologyClass

    prod = C.structure(OperadElement({(1, 2): 1}), [c.representative, c.representative])
    return CohomologyClass(2 * c.degree, prod, C)


def suite_steenrod(max_degree: int = 6, primes: Sequence[int] = (2, 3), cutoff: int = 5,
                   jobs: int = 1, **_) -> Report:
    rep = Report("steenrod", {"max_degree": max_degree, "primes": list(primes), "cutoff": cutoff})
    rep.checks.append(_run("phi_equivariant_chain_map", _case_phi_table,
                           [(p, max_degree) for p in primes], 1))
    rep.checks.append(_run("loop_cohomology_S2", _case_loop_sphere, [(p, cutoff) for p in primes], 1))
    rep.checks.append(_run("square_properties", _case_sq_properties, [("S2", cutoff), ("S2thick", cutoff), ("RP", cutoff)], 1))
    return rep


SUITES: dict[str, Callable[..., Report]] = {
    "operad": suite_operad,
    "coefficients": suite_coefficients,
    "phi": suite_phi,
    "diagonal": suite_diagonal,
    "steenrod": suite_steenrod,
}


def run_suite(name: str, **params) -> list[Report]:
    if name == "all":
        return [fn(**params) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](**params)]
