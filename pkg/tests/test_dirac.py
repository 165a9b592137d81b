import random

import pytest

from conftest import canonical_pair, local_system, susy_system
from superdirac.dirac import (DiracReduction, FiniteDirac, inverse_bracket_identity_check,
                              quotient_descend)
from superdirac.golden import preset
from superdirac.matrix import NotInClass
from superdirac.pvsa import FinitePoisson, all_pass, run_axiom_suite, sample_elements


def test_constraints_are_central():
    ctx, th = local_system()
    red = DiracReduction(ctx, th)
    rng = random.Random(1)
    for a in sample_elements(ctx, rng, 6, max_degree=2, max_order=1):
        for t in th:
            assert red.bracket(a, t).is_zero()
            assert red.bracket(t, a).is_zero()


def test_susy_constraints_are_central():
    ctx = susy_system()
    g = ctx.alg.gen
    u = g("u")
    th = [g("a") + u * u.derive().derive(), g("b")]
    red = DiracReduction(ctx, th)
    rng = random.Random(2)
    for a in sample_elements(ctx, rng, 6, max_degree=2, max_order=1):
        for t in th:
            assert red.bracket(a, t).is_zero()


def test_generating_constraints_give_zero_bracket():
    ctx, th = canonical_pair()
    red = DiracReduction(ctx, th)
    rng = random.Random(3)
    xs = sample_elements(ctx, rng, 6, max_degree=2, max_order=1)
    assert all(red.bracket(a, b).is_zero() for a in xs for b in xs)


def test_empty_constraints_change_nothing(sl2_ctx):
    E, H = sl2_ctx.alg.gen("E"), sl2_ctx.alg.gen("H")
    red = DiracReduction(sl2_ctx, [])
    assert red.bracket(E, H * E) == sl2_ctx.bracket(E, H * E)


def test_inverse_identities():
    ctx, th = local_system()
    red = DiracReduction(ctx, th)
    for name in ("u", "s"):
        assert all_pass(inverse_bracket_identity_check(ctx, th, ctx.alg.gen(name), red))


def test_quotient_keeps_remaining_brackets():
    ctx, _ = local_system()
    g = ctx.alg.gen
    red = DiracReduction(ctx, [g("q") - ctx.alg.one(), g("p") - ctx.alg.one().scale(2)])
    qctx, q = quotient_descend(red)
    assert [x.name for x in qctx.alg.gens] == ["u", "s", "t"]
    u = qctx.alg.gen("u")
    assert qctx.bracket(u, u) == q.series(ctx.bracket(g("u"), g("u")))
    assert all_pass(run_axiom_suite(qctx, seed=0, random_count=3, max_degree=2))


def test_first_class_constraint_refused(sl2_ctx):
    with pytest.raises(NotInClass):
        DiracReduction(sl2_ctx, [sl2_ctx.alg.gen("E") - sl2_ctx.alg.one()])


def test_finite_dirac_centrality():
    P = FinitePoisson([("p", 0), ("q", 0), ("x", 0), ("y", 0)],
                      {("q", "p"): lambda a: a.one(), ("p", "q"): lambda a: -a.one(),
                       ("x", "y"): lambda a: a.gen("x"), ("y", "x"): lambda a: -a.gen("x")})
    p, q, x, y = (P.var(n) for n in "pqxy")
    red = FiniteDirac(P, [q + x * x, p])
    for a in (x, y, x * y, y * y, p * x):
        for t in red.thetas:
            assert red(a, t).is_zero()
    assert red(x, y) == P(x, y)


def test_finite_first_class_refused():
    P = FinitePoisson.lie_poisson(preset("sl2"))
    with pytest.raises(NotInClass):
        FiniteDirac(P, [P.var("E") - P.alg.one(), P.var("H")])
