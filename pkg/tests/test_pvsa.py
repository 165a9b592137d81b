import random

from superdirac.pvsa import (FinitePoisson, all_pass, check_finite_poisson, check_jacobi,
                             check_master_vs_oracle, check_sesquilinearity, check_skewsymmetry,
                             generator_elements, run_axiom_suite, sample_elements)
from superdirac.golden import preset


def test_generator_brackets_sl2(sl2_ctx):
    E, H, F = (sl2_ctx.alg.gen(n) for n in "EHF")
    assert sl2_ctx.bracket(E, F).to_text() == "k*L + H"
    assert sl2_ctx.bracket(H, H).to_text() == "2*k*L"


def test_small_suite_sl2(sl2_ctx):
    assert all_pass(run_axiom_suite(sl2_ctx, seed=3, random_count=5, max_degree=2))


def test_small_suite_osp(osp_ctx):
    assert all_pass(run_axiom_suite(osp_ctx, seed=4, random_count=5, max_degree=2))


def test_master_formula_matches_oracle(osp_ctx):
    rng = random.Random(7)
    xs = sample_elements(osp_ctx, rng, 8, max_degree=2, max_order=1)
    assert all_pass(check_master_vs_oracle(osp_ctx, list(zip(xs[::2], xs[1::2]))))


def test_finite_lie_poisson():
    P = FinitePoisson.lie_poisson(preset("osp12"))
    x = [P.var(n) for n in P.alg.pos]
    triples = [(a, b, c) for a in x for b in x for c in x[:2]]
    assert all_pass(check_finite_poisson(P, triples))


def test_corrupted_table_fails_jacobi(osp_ctx):
    from superdirac.pvsa import PVSAContext
    table = dict(osp_ctx.table)
    i = osp_ctx.alg.pos["E"]
    j = osp_ctx.alg.pos["F"]
    table[(i, j)] = table[(i, j)].scale(3)
    bad = PVSAContext(osp_ctx.alg, table)
    gens = generator_elements(bad)
    recs = check_jacobi(bad, [(a, b, c) for a in gens for b in gens for c in gens])
    recs += check_skewsymmetry(bad, [(a, b) for a in gens for b in gens])
    assert not all_pass(recs)
