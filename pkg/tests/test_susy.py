from superdirac.pvsa import all_pass, run_axiom_suite
from superdirac.susy import (check_embedding, check_functor_compatibility, chi_coefficient_functor,
                             make_affine_pvsa)


def test_small_susy_suite(osp_susy_ctx):
    assert all_pass(run_axiom_suite(osp_susy_ctx, seed=2, random_count=4, max_degree=2))


def test_chi_functor_is_pvsa(osp_susy_ctx):
    fun = chi_coefficient_functor(osp_susy_ctx)
    assert all_pass(run_axiom_suite(fun.ctx, seed=1, random_count=3, max_degree=2))


def test_functor_compatibility(osp_susy_ctx):
    fun = chi_coefficient_functor(osp_susy_ctx)
    gens = [osp_susy_ctx.alg.gen(x.name) for x in osp_susy_ctx.alg.gens]
    assert all_pass(check_functor_compatibility(fun, [(a, b) for a in gens for b in gens]))


def test_embedding_reproduces_affine_table(osp_susy_ctx, osp12):
    fun = chi_coefficient_functor(osp_susy_ctx)
    assert all_pass(check_embedding(fun, osp12, seed=0, count=5))
