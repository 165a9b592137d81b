import pytest

from superdirac.golden import preset
from superdirac.pvsa import make_affine_pvsa
from superdirac.susy import make_affine_susy
from superdirac.textio import ParseError, parse_diffpoly, parse_lines, parse_series, render


@pytest.fixture(scope="module")
def alg():
    return make_affine_pvsa(preset("sl2")).alg


def test_roundtrip_polynomial(alg):
    x = parse_diffpoly("(3/2)*k*d^2(E)*H - F + 4", alg)
    assert parse_diffpoly(x.to_text(), alg) == x


def test_roundtrip_series_with_order(alg):
    S = parse_series("-(1/2)*k^3*L^3 + 2*k*L*F + L^-2*E + O(L^-9)", alg)
    assert not S.is_exact()
    assert parse_series(S.to_text(), alg) == S


def test_susy_series_roundtrip():
    alg = make_affine_susy(preset("osp12")).alg
    S = parse_series("-(1/2)*k^5*L^2*X - (1/2)*k^2*X*D(F) - k^2*D^2(F)", alg)
    assert parse_series(S.to_text(), alg) == S


def test_error_position(alg):
    with pytest.raises(ParseError) as err:
        parse_lines("E\n  H + * F\n", alg)
    assert err.value.line == 2
    assert err.value.col == 7


def test_unknown_generator(alg):
    with pytest.raises(ParseError):
        parse_diffpoly("d(Q)", alg)


def test_wrong_derivation(alg):
    with pytest.raises(ParseError):
        parse_diffpoly("D(E)", alg)


def test_comments_and_blank_lines(alg):
    xs = parse_lines("# constraints\nE - 1\n\nH  # Cartan\n", alg)
    assert [x.to_text() for x in xs] == ["E - 1", "H"]


def test_latex_render(alg):
    S = parse_series("-(3/2)*k*L^2*d(E) + k^2*d^3(F)*H + O(L^-9)", alg)
    assert render(S, "latex") == r"-\frac{3}{2} k \lambda^{2} \partial E + k^{2} H \partial^{3} F + O(\lambda^{-9})"
