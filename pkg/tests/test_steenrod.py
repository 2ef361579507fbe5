import pytest

from seqop.cochains import CochainAlgebra, projective_space, sphere, thick_sphere
from seqop.operad import boundary
from seqop.steenrod import (
    CohomologyClass,
    CutoffError,
    Sq,
    act_cyclic,
    bar_structure,
    beta_P,
    build_phi,
    check_phi,
    cochain_structure,
    homology,
    nu,
    operation_table,
    steenrod_P,
    w_boundary,
)


def test_resolution_squares_to_zero():
    for p in (2, 3, 5):
        for i in range(2, 8):
            assert not w_boundary(w_boundary({(i, 0): 1}, p), p)


def test_phi_low_cells():
    table = build_phi(2, 2)
    assert str(table[0]) == "(12)"
    assert str(table[1]) == "(121)"
    assert str(table[2]) == "(1212)"
    assert str(boundary(table[1])) == "-(12)+(21)"
    assert str(act_cyclic(table[0], 1)) == "(21)"


@pytest.mark.parametrize("p", [2, 3])
def test_phi_is_an_equivariant_chain_map(p):
    assert check_phi(p, 6) == []
    for i, x in enumerate(build_phi(p, 6)):
        assert x.degrees() == {i}


def test_build_phi_errors():
    with pytest.raises(ValueError):
        build_phi(4, 2)
    with pytest.raises(ValueError):
        build_phi(2, -1)


def test_nu():
    assert nu(1, 3) == 2  # -1 mod 3
    assert nu(2, 3) == 2
    assert nu(4, 5) == 1


@pytest.fixture(scope="module")
def s2_bar():
    return bar_structure(CochainAlgebra(sphere(2), modulus=2, reduced=True), 5)


def test_bar_cohomology_of_s2(s2_bar):
    assert [s2_bar.cohomology(n).dim for n in range(1, 5)] == [1, 1, 1, 1]


def test_squares_on_s2_bar(s2_bar):
    # Omega S^2 ~ S^1 x Omega S^3: only Sq^0 survives in low degrees
    (c,) = homology(s2_bar, 1)
    assert Sq(0, c) == c
    assert Sq(1, c).is_zero()
    assert Sq(1, c) == CohomologyClass(2, s2_bar.structure(build_phi(2, 0)[0], [c.representative] * 2),
                                        s2_bar)
    (c2,) = homology(s2_bar, 2)
    assert Sq(0, c2) == c2
    assert Sq(1, c2).is_zero() and Sq(2, c2).is_zero()
    (c3,) = homology(s2_bar, 3)
    with pytest.raises(CutoffError):
        Sq(0, c3)


def test_square_vanishes_above_degree(s2_bar):
    for q in (1, 2):
        (c,) = homology(s2_bar, q)
        assert Sq(q + 1, c).is_zero() and Sq(q + 2, c).is_zero()


def test_class_validation():
    C = bar_structure(CochainAlgebra(thick_sphere(), modulus=2, reduced=True), 5)
    (a,) = [b for b in C.basis_cached(1) if "a" in str(b)]
    with pytest.raises(ValueError):
        CohomologyClass(1, {a: 1}, C)
    (c,) = homology(C, 1)
    with pytest.raises(ValueError):
        c + homology(C, 2)[0]
    assert (2 * c).is_zero()


def test_squares_on_rp_cochains():
    C = cochain_structure(CochainAlgebra(projective_space(4), modulus=2))
    (x,) = homology(C, 1)
    assert Sq(0, x) == x
    assert not Sq(1, x).is_zero()
    (y,) = homology(C, 2)
    # Sq^1 of the square of the generator is zero, Sq^2 is its square
    assert Sq(1, y).is_zero()
    assert not Sq(2, y).is_zero()


def test_coboundary_perturbation():
    C = bar_structure(CochainAlgebra(thick_sphere(), modulus=2, reduced=True), 5)
    (a,) = [b for b in C.basis_cached(1) if "a" in str(b)]
    db = C.complex().d_vec({a: 1})
    assert db  # d[a] = [c]
    for c in homology(C, 2):
        c2 = c + CohomologyClass(2, db, C)
        assert c2 == c and c2.representative != c.representative
        for s in range(0, 3):
            assert Sq(s, c2) == Sq(s, c)


def test_odd_prime_operations():
    C = bar_structure(CochainAlgebra(sphere(3), modulus=3, reduced=True), 7)
    (c,) = homology(C, 2)
    assert steenrod_P(0, c) == c
    assert beta_P(0, c).degree == 3
    assert steenrod_P(1, c).degree == 6
    with pytest.raises(ValueError):
        Sq(0, c)


def test_operation_table(s2_bar):
    rows = operation_table(s2_bar)
    assert [(r["class"], r["operation"]) for r in rows] == [
        ("x1_0", "Sq0"), ("x1_0", "Sq1"), ("x2_0", "Sq0"), ("x2_0", "Sq1"), ("x2_0", "Sq2")]
    assert rows[0]["coordinates"] == [1] and rows[1]["result_degree"] == 2
    assert rows[2]["representative"] == "[s|s]"
