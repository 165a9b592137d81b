import random

from superdirac.diffalg import DiffAlgebra, random_diffpoly


def make():
    return DiffAlgebra([(0, "u", 0), (1, "v", 1)], kind="even", params=("k",))


def test_odd_square_vanishes():
    A = make()
    v = A.gen("v")
    assert (v * v).is_zero()


def test_leibniz_for_derivation():
    A = make()
    u, v = A.gen("u"), A.gen("v")
    assert (u * v).d() == u * v.d() + u.d() * v


def test_supercommutativity():
    A = make()
    u, v = A.gen("u"), A.gen("v")
    w = A.var(1, 1)
    assert v * w == -(w * v)
    assert u * v == v * u


def test_partial_derivative():
    A = make()
    u = A.gen("u")
    assert (u * u).partial((0, 0)) == u.scale(2)


def test_odd_derivation_squares_to_even_one():
    B = DiffAlgebra([(0, "w", 1)], kind="odd")
    w = B.gen("w")
    assert w.derive().derive() == B.var(0, 2)
    assert (w * w.derive()).derive() == w.derive() * w.derive() - w * w.derive().derive()


def test_random_elements_are_homogeneous():
    A = make()
    rng = random.Random(5)
    for _ in range(20):
        x = random_diffpoly(A, rng, parity=1)
        assert x.is_zero() or x.parity() == 1
