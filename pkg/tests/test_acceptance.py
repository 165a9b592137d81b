"""Acceptance criteria, one test each, at exact tolerance.

Each test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run this file directly to print only the lines."""

import random

import pytest

from conftest import canonical_pair, local_system, susy_system
from superdirac.dirac import DiracReduction
from superdirac.golden import (OSP_C, OSP_CINV, OSP_FF, OSP_SUSY_C, OSP_SUSY_CINV, OSP_SUSY_FF,
                               matrix_from_text, matrix_matches, nonlocal_checks, preset)
from superdirac.matrix import (NotInClass, SuperMatrixOperator, invert_neumann, op_adjoint, op_multiply,
                               parity_conjugate, random_operator, verify_inverse)
from superdirac.pvsa import all_pass, make_affine_pvsa, run_axiom_suite, sample_elements
from superdirac.susy import (check_embedding, check_functor_compatibility, chi_coefficient_functor,
                             make_affine_susy)
from superdirac.textio import parse_series
from superdirac.wstructure import (ModifiedDirac, WData, build_projected_C, build_unprojected_C,
                                   conformal_weight_audit, generator_pairs, isomorphism_check)

RESULTS = []

# (algebra, susy) pairs that admit the W-reduction; sl2 has no odd triple
W_CASES = [("sl2", False), ("osp12", False), ("osp12", True)]


def report(n, title, ok, detail=""):
    line = "%s criterion %2d: %s%s" % ("PASS" if ok else "FAIL", n, title, (" (%s)" % detail) if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def failures(recs):
    bad = [r for r in recs if r["status"] != "pass"]
    return "%d/%d records fail, first: %s" % (len(bad), len(recs), bad[0]) if bad else "%d records" % len(recs)


def test_criterion_01_osp_example():
    W = WData(preset("osp12"), susy=False)
    C = build_projected_C(W)
    Cinv = invert_neumann(C, W.floor)
    got = ModifiedDirac(W).bracket(W.gen("F"), W.gen("f"))
    ok = (matrix_matches(C, matrix_from_text(W.quot, OSP_C, False))
          and matrix_matches(Cinv, matrix_from_text(W.quot, OSP_CINV, False))
          and got == parse_series(OSP_FF, W.quot))
    report(1, "osp(1|2) projected C, its inverse and pi{F L f}", ok, got.to_text())


def test_criterion_02_osp_susy_example():
    W = WData(preset("osp12"), susy=True)
    C = build_projected_C(W)
    Cinv = invert_neumann(C, W.floor)
    got = ModifiedDirac(W).bracket(W.gen("F"), W.gen("F"))
    ok = (matrix_matches(C, matrix_from_text(W.quot, OSP_SUSY_C, True))
          and matrix_matches(Cinv, matrix_from_text(W.quot, OSP_SUSY_CINV, True))
          and got == parse_series(OSP_SUSY_FF, W.quot))
    report(2, "SUSY osp(1|2) C, its inverse and pi{F L F}", ok, got.to_text())


def test_criterion_03_sl2_unprojected_refused():
    W = WData(preset("sl2"), susy=False)
    U = build_unprojected_C(W)
    try:
        invert_neumann(U, W.floor)
        ok, why = False, "an inverse was returned"
    except NotInClass as exc:
        ok, why = True, str(exc)
    report(3, "sl2 unprojected C is outside the invertible class", ok, why)


def test_criterion_04_axiom_suites():
    recs = []
    for name in ("sl2", "osp12"):
        g = preset(name)
        recs += run_axiom_suite(make_affine_pvsa(g), seed=0, random_count=50, max_degree=3)
        recs += run_axiom_suite(make_affine_susy(g), seed=0, random_count=50, max_degree=3)
    report(4, "axiom suites on sl2 and osp(1|2), both modes, 50 random triples", all_pass(recs), failures(recs))


def _centrality(ctx, thetas, seed, count=30):
    red = DiracReduction(ctx, thetas)
    rng = random.Random(seed)
    bad = 0
    total = 0
    for t in thetas:
        for a in sample_elements(ctx, rng, count, max_degree=3, max_order=2):
            total += 2
            bad += not red.bracket(a, t).is_zero()
            bad += not red.bracket(t, a).is_zero()
    return bad, total


def _triviality(ctx, thetas, seed, count=15):
    red = DiracReduction(ctx, thetas)
    rng = random.Random(seed)
    xs = sample_elements(ctx, rng, 2 * count, max_degree=3, max_order=2)
    bad = sum(not red.bracket(a, b).is_zero() for a, b in zip(xs[::2], xs[1::2]))
    return bad, count


def test_criterion_05_dirac_properties():
    ctx, th = local_system()
    sctx = susy_system()
    g = sctx.alg.gen
    u = g("u")
    sth = [g("a") + u * u.derive().derive(), g("b")]
    pctx, pth = canonical_pair()
    fctx = susy_system(with_u=False)
    checks = [_centrality(ctx, th, 1), _centrality(sctx, sth, 2),
              _triviality(pctx, pth, 3), _triviality(fctx, [fctx.alg.gen("a"), fctx.alg.gen("b")], 4)]
    bad = sum(b for b, _ in checks)
    total = sum(t for _, t in checks)
    report(5, "centrality of constraints and triviality, both modes", bad == 0, "%d/%d nonzero" % (bad, total))


def test_criterion_06_two_paths():
    recs = []
    for name, susy in W_CASES:
        recs += [r for r in isomorphism_check(WData(preset(name), susy)) if r["axiom"] == "two-path"]
    report(6, "chain sum equals matrix inversion on every generator pair", all_pass(recs), failures(recs))


def test_criterion_07_w_formula():
    recs = []
    for name, susy in W_CASES:
        recs += [r for r in isomorphism_check(WData(preset(name), susy)) if r["axiom"] == "w-formula"]
    report(7, "W-algebra bracket formula equals both reduction paths", all_pass(recs), failures(recs))


def test_criterion_08_functor():
    g = preset("osp12")
    sctx = make_affine_susy(g)
    fun = chi_coefficient_functor(sctx)
    gens = [sctx.alg.gen(x.name) for x in sctx.alg.gens]
    recs = run_axiom_suite(fun.ctx, seed=0, random_count=20, max_degree=3)
    recs += check_functor_compatibility(fun, [(a, b) for a in gens for b in gens])
    recs += check_embedding(fun, g, seed=0)
    report(8, "chi-coefficient functor and the embedding a -> D(a)", all_pass(recs), failures(recs))


def _operator_instances(seed, count=100):
    """Seeded (context, parities, rng) triples alternating the two modes."""
    g = preset("osp12")
    ctxs = [make_affine_pvsa(g), make_affine_susy(g)]
    rng = random.Random(seed)
    for i in range(count):
        yield ctxs[i % 2], [rng.randint(0, 1) for _ in range(rng.randint(1, 3))], rng


def test_criterion_09_operator_algebra():
    bad = {"associativity": 0, "adjoint-product": 0, "inverse": 0, "involution": 0}
    for ctx, par, rng in _operator_instances(9):
        A, B, C = (random_operator(ctx.alg, rng, par, susy=ctx.susy, max_lambda=1, max_degree=1) for _ in range(3))
        bad["associativity"] += op_multiply(op_multiply(A, B), C) != op_multiply(A, op_multiply(B, C))
        bad["adjoint-product"] += op_adjoint(op_multiply(A, B)) != op_multiply(op_adjoint(B), op_adjoint(A))
        bad["involution"] += op_adjoint(op_adjoint(A)) != parity_conjugate(A)
        # an operator in the invertible class: constant times (Id + strictly upper triangular)
        T = A.like(par, par, {k: v for k, v in A.entries.items() if k[0] < k[1]})
        M = (SuperMatrixOperator.identity(ctx.alg, par, ctx.susy) + T).scale(rng.choice([1, -2, 3]))
        bad["inverse"] += not verify_inverse(M, invert_neumann(M))
    report(9, "operator associativity, adjoint of products, inverses, adjoint involution (100 each)",
           not any(bad.values()), ", ".join("%s %d" % kv for kv in bad.items()))


def test_criterion_10_nonlocal():
    recs = nonlocal_checks(False, floor=-8) + nonlocal_checks(True, floor=-8)
    certified = all("certificate" in r for r in recs if r["axiom"] in ("jacobi", "skewsymmetry"))
    truncated = [r["certificate"]["floors"] for r in recs if r["axiom"] == "jacobi" and not r["certificate"]["exact"]]
    report(10, "non-local brackets pass skewsymmetry and Jacobi at floor -8", all_pass(recs) and certified,
           "%s; truncated checks certified down to %s" % (failures(recs), truncated[0] if truncated else "none"))


def test_criterion_11_conformal_weights():
    recs = []
    for name, susy in W_CASES:
        W = WData(preset(name), susy)
        red = ModifiedDirac(W)
        recs += conformal_weight_audit(W, [((a, b), red.bracket(W.gen(a), W.gen(b))) for a, b in generator_pairs(W)])
    report(11, "every W-bracket term has the predicted conformal weight", all_pass(recs), failures(recs))


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
