import pytest

from seqop.linalg import Complex, Echelon, NotAComplexError, cohomology


def complex_from(table, p):
    """``table[n]`` maps each degree-n key to its coboundary."""
    degree = {k: n for n, row in table.items() for k in row}
    return Complex(lambda n: list(table.get(n, {})), lambda k: table[degree[k]][k],
                   lambda k: (degree[k], str(k)), p)


def test_zero_differential():
    C = complex_from({0: {"a": {}}, 1: {"b": {}, "c": {}}}, 3)
    assert cohomology(C, 0).dim == 1
    assert cohomology(C, 1).dim == 2
    assert cohomology(C, 2).dim == 0


def test_simple_complex_mod_p():
    # a -> b + c, so H^0 = 0 and H^1 is spanned by either of b, c
    table = {0: {"a": {"b": 1, "c": 1}}, 1: {"b": {}, "c": {}}}
    for p in (2, 3, 5):
        C = complex_from(table, p)
        assert cohomology(C, 0).dim == 0
        H = cohomology(C, 1)
        assert H.dim == 1
        assert H.is_zero({"b": 1, "c": 1})
        assert H.coordinates({"b": 1}) == [1]
        assert H.coordinates({"c": 1}) == [p - 1]


def test_characteristic_matters():
    # a -> 2b is an isomorphism mod 3 but zero mod 2
    table = {0: {"a": {"b": 2}}, 1: {"b": {}}}
    assert cohomology(complex_from(table, 3), 1).dim == 0
    assert cohomology(complex_from(table, 2), 1).dim == 1


def test_d_squared_is_checked():
    table = {0: {"a": {"b": 1}}, 1: {"b": {"c": 1}}, 2: {"c": {}}}
    C = complex_from(table, 2)
    with pytest.raises(NotAComplexError):
        cohomology(C, 1)


def test_non_cocycle_has_no_coordinates():
    table = {0: {"a": {}}, 1: {"b": {"c": 1}}, 2: {"c": {}}}
    H = cohomology(complex_from(table, 2), 1)
    with pytest.raises(ValueError):
        H.coordinates({"b": 1})


def test_echelon():
    ech = Echelon(5, lambda k: (k,))
    ech.insert({1: 1, 2: 3})
    assert ech.contains({1: 2, 2: 1})
    assert not ech.contains({2: 1})
    res, _ = ech.reduce({1: 1})
    assert res == {2: 2}
