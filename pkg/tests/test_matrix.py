import random

import pytest

from superdirac.matrix import (NotInClass, ShapeError, SuperMatrixOperator, invert_neumann, op_adjoint,
                               op_multiply, parity_conjugate, random_operator, verify_inverse)
from superdirac.series import Series


def unipotent(ctx, rng, par):
    """Id plus a strictly upper triangular random even operator."""
    A = random_operator(ctx.alg, rng, par, susy=ctx.susy, max_lambda=1, max_degree=1)
    ent = {(r, c): v for (r, c), v in A.entries.items() if r < c}
    I = SuperMatrixOperator.identity(ctx.alg, par, ctx.susy)
    return I + A.like(par, par, ent)


@pytest.mark.parametrize("which", ["osp_ctx", "osp_susy_ctx"])
def test_associativity(which, request):
    ctx = request.getfixturevalue(which)
    rng = random.Random(11)
    for _ in range(5):
        par = [rng.randint(0, 1) for _ in range(2)]
        A, B, C = (random_operator(ctx.alg, rng, par, susy=ctx.susy, max_lambda=1, max_degree=1) for _ in range(3))
        assert op_multiply(op_multiply(A, B), C) == op_multiply(A, op_multiply(B, C))


@pytest.mark.parametrize("which", ["osp_ctx", "osp_susy_ctx"])
def test_adjoint_of_product(which, request):
    ctx = request.getfixturevalue(which)
    rng = random.Random(12)
    for _ in range(5):
        par = [rng.randint(0, 1) for _ in range(2)]
        A, B = (random_operator(ctx.alg, rng, par, susy=ctx.susy, max_lambda=1, max_degree=1) for _ in range(2))
        assert op_adjoint(op_multiply(A, B)) == op_multiply(op_adjoint(B), op_adjoint(A))


@pytest.mark.parametrize("which", ["osp_ctx", "osp_susy_ctx"])
def test_adjoint_twice_is_parity_conjugation(which, request):
    ctx = request.getfixturevalue(which)
    rng = random.Random(13)
    for _ in range(5):
        par = [rng.randint(0, 1) for _ in range(3)]
        A = random_operator(ctx.alg, rng, par, susy=ctx.susy)
        assert op_adjoint(op_adjoint(A)) == parity_conjugate(A)


@pytest.mark.parametrize("which", ["osp_ctx", "osp_susy_ctx"])
def test_neumann_inverse(which, request):
    ctx = request.getfixturevalue(which)
    rng = random.Random(14)
    for _ in range(5):
        par = [rng.randint(0, 1) for _ in range(3)]
        A = unipotent(ctx, rng, par)
        assert verify_inverse(A, invert_neumann(A))


def test_monomial_inverse(osp_ctx):
    alg = osp_ctx.alg
    lam = Series.monomial(alg, ("l",), {"l": 1}, alg.one())
    A = SuperMatrixOperator(alg, [0, 0], [0, 0], {(0, 1): lam, (1, 0): -lam})
    B = invert_neumann(A)
    assert verify_inverse(A, B)


def test_zero_row_not_in_class(osp_ctx):
    alg = osp_ctx.alg
    A = SuperMatrixOperator(alg, [0, 0], [0, 0], {(0, 0): Series.const(alg.one(), ("l",))})
    with pytest.raises(NotInClass):
        invert_neumann(A)


def test_shape_mismatch(osp_ctx):
    I2 = SuperMatrixOperator.identity(osp_ctx.alg, [0, 0])
    I3 = SuperMatrixOperator.identity(osp_ctx.alg, [0, 0, 0])
    with pytest.raises(ShapeError):
        op_multiply(I2, I3)
