from superdirac.diffalg import DiffAlgebra
from superdirac.series import Series, adjoint_series, compose, lam_shift


def setup():
    A = DiffAlgebra([(0, "u", 0)], kind="even")
    return A, A.gen("u")


def test_lambda_shift():
    A, u = setup()
    S = Series.monomial(A, ("l",), {"l": 2}, u)
    want = Series.monomial(A, ("l",), {"l": 3}, u) + Series.monomial(A, ("l",), {"l": 2}, u.d())
    assert lam_shift(S, 1) == want


def test_adjoint_is_involution():
    A, u = setup()
    S = Series.monomial(A, ("l",), {"l": 2}, u) + Series.monomial(A, ("l",), {"l": 1}, u * u.d())
    assert adjoint_series(adjoint_series(S)) == S


def test_compose_polynomial():
    A, u = setup()
    S = Series.monomial(A, ("l",), {"l": 1}, u)
    want = Series.monomial(A, ("l",), {"l": 2}, u * u) + Series.monomial(A, ("l",), {"l": 1}, u * u.d())
    assert compose(S, S) == want


def test_inverse_power_of_lambda_is_truncated():
    A, u = setup()
    inv = Series.monomial(A, ("l",), {"l": -1}, A.one())
    lam = Series.monomial(A, ("l",), {"l": 1}, A.one())
    prod = compose(inv, lam, floor=-8)
    assert prod.restrict() == Series.const(A.one(), ("l",)).restrict()


def test_text_roundtrip():
    from superdirac.textio import parse_series
    A, u = setup()
    S = Series.monomial(A, ("l",), {"l": 2}, u.scale(3)) - Series.monomial(A, ("l",), {"l": 0}, u.d())
    assert parse_series(S.to_text(), A) == S
