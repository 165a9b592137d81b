import pytest

from superdirac.golden import preset
from superdirac.lie import InvalidAlgebra
from superdirac.pvsa import all_pass
from superdirac.textio import parse_series
from superdirac.wstructure import (ModifiedDirac, WData, chain_sum_bracket, closed_form_inverse,
                                   entry_lemma_checks, run_w_suite, w_bracket_oracle)


@pytest.fixture(scope="module")
def w_osp():
    return WData(preset("osp12"), susy=False)


@pytest.fixture(scope="module")
def w_osp_susy():
    return WData(preset("osp12"), susy=True)


@pytest.mark.parametrize("name,susy", [("sl2", False), ("osp12", False), ("osp12", True)])
def test_full_suite(name, susy):
    assert all_pass(run_w_suite(WData(preset(name), susy=susy)))


def test_sl2_has_no_susy_reduction():
    with pytest.raises(InvalidAlgebra):
        WData(preset("sl2"), susy=True)


def test_quotient_generators(w_osp, w_osp_susy):
    assert [g.name for g in w_osp.quot.gens] == ["F", "f"]
    assert [g.name for g in w_osp_susy.quot.gens] == ["F"]


def test_osp_brackets(w_osp):
    red = ModifiedDirac(w_osp)
    F, f = w_osp.gen("F"), w_osp.gen("f")
    assert red.bracket(f, f) == parse_series("2*k^2*L^2 - 2*F", w_osp.quot)
    assert red.bracket(F, F) == parse_series("-(1/2)*k^3*L^3 + 2*k*L*F + k*d(F)", w_osp.quot)


def test_closed_form_inverse_matches(w_osp_susy):
    assert ModifiedDirac(w_osp_susy).Cinv == closed_form_inverse(w_osp_susy)


def test_entry_lemma(w_osp):
    assert all_pass(entry_lemma_checks(w_osp))


def test_flip_last_sign_differs_in_susy(w_osp_susy):
    right = w_bracket_oracle(w_osp_susy, "F", "F")
    flipped = w_bracket_oracle(w_osp_susy, "F", "F", flip_last_sign=True)
    assert right == chain_sum_bracket(w_osp_susy, "F", "F")
    assert flipped != right
