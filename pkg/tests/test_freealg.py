import pytest
from hypothesis import given, settings, strategies as st

from seqop.freealg import AlgebraElement, FreeAlgebra, act, differential
from seqop.operad import OperadElement, boundary, seq_degree

from .strategies import surjection


@pytest.fixture
def alg():
    A = FreeAlgebra()
    A.add_generator("x", 2)
    A.add_generator("y", 3)
    A.add_generator("z", 2)
    A.add_generator("s", 4, A.parse("(12)(x,y)"))
    return A


def E(f):
    return OperadElement({f: 1})


def test_unit(alg):
    x = alg.gen("x")
    assert act(E((1,)), x) == x


def test_reordering_sign(alg):
    x, y, z = alg.gen("x"), alg.gen("y"), alg.gen("z")
    # order is (degree, name): x < z < y
    assert str(act(E((1, 2)), y, x)) == "(21)(x,y)"
    assert str(act(E((1, 2)), y, y)) == "(12)(y,y)"
    assert str(act(E((1, 2)), z, x)) == "(21)(x,z)"


def test_repeated_generators():
    A = FreeAlgebra()
    A.add_generator("y", 3)
    y = A.gen("y")
    # swapping two odd inputs costs a sign
    assert act(E((2, 1)), y, y) == -act(E((1, 2)), y, y)
    assert str(act(E((1, 2, 1)), y, y)) == "(121)(y,y)"
    assert act(E((2, 1, 2)), y, y) == -act(E((1, 2, 1)), y, y)
    B = FreeAlgebra(modulus=2)
    B.add_generator("y", 3)
    assert act(E((2, 1, 2)), B.gen("y"), B.gen("y")) == act(E((1, 2, 1)), B.gen("y"), B.gen("y"))


def test_differential_examples():
    A = FreeAlgebra(modulus=2)
    A.add_generator("x", 2)
    A.add_generator("y", 2)
    x, y = A.gen("x"), A.gen("y")
    assert not differential(x)
    assert differential(act(E((1, 2, 1)), x, y)) == act(E((1, 2)) + E((2, 1)), x, y)


def test_generator_validation():
    A = FreeAlgebra()
    with pytest.raises(ValueError):
        A.add_generator("x", 1)
    A.add_generator("x", 2)
    with pytest.raises(ValueError):
        A.add_generator("x", 2)
    with pytest.raises(ValueError):
        A.add_generator("w", 4, A.parse("x"))  # wrong degree
    B = FreeAlgebra(allow_low_degree=True)
    B.add_generator("t", 1)


def test_d_squared_on_generator_check():
    A = FreeAlgebra()
    A.add_generator("u", 2)
    A.add_generator("w", 3)
    A.add_generator("s", 4, A.parse("(12)(u,w)"))
    # d(s) = (12)(u,w) is closed, but (12)(u,s) is not closed, so it cannot be a differential
    with pytest.raises(ValueError):
        A.add_generator("q", 6, A.parse("(12)(u,s)"))


def test_parse_and_print(alg):
    a = alg.parse("(121)(x,y) - 2*x")
    assert str(a) == "-2*x+(121)(x,y)"
    with pytest.raises(ValueError):
        alg.parse("(12)(x)")
    with pytest.raises(ValueError):
        alg.parse("q")


def test_square_zero_truncation():
    A = FreeAlgebra(modulus=2, max_word=1)
    A.add_generator("u", 2)
    u = A.gen("u")
    assert not act(E((1, 2)), u, u)
    assert A.basis(2) == [((1,), ("u",))]
    with pytest.raises(ValueError):
        FreeAlgebra().basis(2)


@given(surjection(max_entries=5, max_arity=3), st.lists(st.sampled_from("xyzs"), min_size=3, max_size=3))
@settings(max_examples=80, deadline=None)
def test_derivation_and_d_squared(f, names):
    A = FreeAlgebra()
    A.add_generator("x", 2)
    A.add_generator("y", 3)
    A.add_generator("z", 2)
    A.add_generator("s", 4, A.parse("(12)(x,y)"))
    k = max(f)
    args = [A.gen(n) for n in names[:k]]
    val = act(E(f), *args)
    assert not differential(differential(val))
    # Leibniz: d(f(a)) = (df)(a) + sum (-1)^{|f| + earlier degrees} f(.., da_i, ..)
    rhs = act(boundary(E(f)), *args) if boundary(E(f)) else AlgebraElement(A, {})
    running = seq_degree(f)
    for i, a in enumerate(args):
        da = differential(a)
        if da:
            bs = list(args)
            bs[i] = da
            term = act(E(f), *bs)
            rhs = rhs + term if running % 2 == 0 else rhs - term
        running += A.generators[names[i]].degree
    assert differential(val) == rhs


@given(surjection(max_entries=4, max_arity=3), st.permutations(["x", "y", "z"]))
@settings(max_examples=60, deadline=None)
def test_canonical_form_is_invariant(f, names):
    A = FreeAlgebra()
    for n, d in (("x", 2), ("y", 3), ("z", 4)):
        A.add_generator(n, d)
    k = max(f)
    gens = tuple(names[:k])
    once = A.canonical(f, gens)
    for key, c in once.items():
        assert A.canonical(*key, c) == {key: c}
