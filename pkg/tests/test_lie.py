import json

import pytest

from superdirac.golden import preset
from superdirac.lie import DualBasisData, InvalidAlgebra, check_triple, load_algebra
from superdirac.rational import Fraction


@pytest.mark.parametrize("name", ["sl2", "osp12"])
def test_presets_valid(name):
    g = preset(name)
    assert all(ok for _, ok, _ in g.validate())
    assert check_triple(g) == []


def test_osp_subalgebra_triple():
    assert check_triple(preset("osp12"), susy=True) == []


def test_sl2_has_no_odd_triple():
    assert check_triple(preset("sl2"), susy=True)


def test_json_roundtrip():
    g = preset("osp12")
    h = load_algebra(json.loads(json.dumps(g.to_json())))
    assert h.names == g.names
    for i in range(g.dim):
        for j in range(g.dim):
            assert g.bracket(g.basis_vector(i), g.basis_vector(j)) == h.bracket(h.basis_vector(i), h.basis_vector(j))


def test_broken_jacobi_detected():
    data = preset("sl2").to_json()
    data["brackets"][0][2][0]["coeff"] = "3"
    g = load_algebra(data)
    assert not all(ok for _, ok, _ in g.validate())


def test_bad_index_rejected():
    data = preset("sl2").to_json()
    data["brackets"][0][0] = 17
    with pytest.raises(InvalidAlgebra):
        load_algebra(data)


def test_conformal_weights():
    b = DualBasisData(preset("osp12"), False)
    assert b.labels == ["F", "f"]
    assert [b.conformal_weight(x) for x in b.labels] == [Fraction(2), Fraction(3, 2)]
