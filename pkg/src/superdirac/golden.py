"""Worked examples with their expected values, run by the `examples`
command and the acceptance tests."""

import json
from importlib import resources

from .dirac import DiracReduction
from .lie import load_algebra
from .matrix import NotInClass, invert_neumann, verify_inverse
from .pvsa import PVSAContext, free_pvsa, check_skewsymmetry, check_jacobi, all_pass
from .scalars import Scalar
from .series import Series, DEFAULT_FLOOR
from .susy import SusyContext
from .textio import parse_series, parse_diffpoly
from .wstructure import WData, build_projected_C, build_unprojected_C, ModifiedDirac


def preset(name):
    """Load a bundled algebra: 'sl2' or 'osp12'."""
    with resources.files("superdirac.presets").joinpath(name + ".json").open() as fh:
        return load_algebra(json.load(fh))


def nonlocal_context(susy=False, floor=DEFAULT_FLOOR):
    """C[u^(n)] with {u L u} = L^-1, or the SUSY version {u L u} = L^-1 X."""
    vars_ = ("l", "x") if susy else ("l",)
    key = (-1, 1) if susy else (-1,)

    def br(alg):
        return Series(alg, vars_, {key: alg.one()})

    alg, table = free_pvsa([("u", 0)], {("u", "u"): br}, floor, kind="odd" if susy else "even")
    return (SusyContext if susy else PVSAContext)(alg, table, floor, name="non-local")


def nonlocal_checks(susy=False, floor=DEFAULT_FLOOR):
    ctx = nonlocal_context(susy, floor)
    u = ctx.alg.gen("u")
    du = u.derive()
    elems = [u, du, u * u, u * du]
    pairs = [(a, b) for a in elems[:3] for b in elems[:3]]
    triples = [(a, b, c) for a in elems[:2] for b in elems[:2] for c in elems[:2]] + [(u * u, u, du)]
    return check_skewsymmetry(ctx, pairs) + check_jacobi(ctx, triples)


def matrix_from_text(alg, rows, susy):
    vars_ = ("l", "x") if susy else ("l",)
    return [[parse_series(c, alg, vars_) for c in row] for row in rows]


def matrix_matches(M, rows):
    n, m = M.shape
    if n != len(rows) or any(len(r) != m for r in rows):
        return False
    return all(M.entry(r, c) == rows[r][c] for r in range(n) for c in range(m))


OSP_C = [["1", "k*L", "0"], ["0", "1", "0"], ["0", "0", "1"]]
OSP_CINV = [["1", "-k*L", "0"], ["0", "1", "0"], ["0", "0", "1"]]
OSP_FF = "(3/2)*k*L*f + k*d(f)"
OSP_SUSY_C = [["0", "0", "0", "-1"],
              ["0", "0", "1", "-k*X"],
              ["0", "-1", "k*X", "0"],
              ["1", "-k*X", "0", "F"]]
OSP_SUSY_CINV = [["-k^3*L*X - F", "-k^2*L", "k*X", "1"],
                 ["k^2*L", "-k*X", "-1", "0"],
                 ["k*X", "1", "0", "0"],
                 ["-1", "0", "0", "0"]]
OSP_SUSY_FF = "-(1/2)*k^5*L^2*X - (3/2)*k^2*L*F - (1/2)*k^2*X*D(F) - k^2*D^2(F)"
# the sl2 matrix with rows indexed by theta and columns by theta'
SL2_THETA_ROWS = [["E", "0"], ["k*L", "E"]]


def _result(name, ok, detail=""):
    return {"axiom": "example", "instance": name, "status": "pass" if ok else "fail", "residual": detail}


def example_osp_nonsusy():
    W = WData(preset("osp12"), susy=False)
    C = build_projected_C(W)
    red = ModifiedDirac(W)
    out = [_result("osp12 C", matrix_matches(C, matrix_from_text(W.quot, OSP_C, False)), C.render()),
           _result("osp12 C^-1", matrix_matches(red.Cinv, matrix_from_text(W.quot, OSP_CINV, False)), red.Cinv.render())]
    got = red.bracket(W.gen("F"), W.gen("f"))
    out.append(_result("osp12 pi{F L f}^D", got == parse_series(OSP_FF, W.quot), got.to_text()))
    return out


def example_osp_susy():
    W = WData(preset("osp12"), susy=True)
    C = build_projected_C(W)
    red = ModifiedDirac(W)
    out = [_result("osp12 SUSY C", matrix_matches(C, matrix_from_text(W.quot, OSP_SUSY_C, True)), C.render()),
           _result("osp12 SUSY C^-1", matrix_matches(red.Cinv, matrix_from_text(W.quot, OSP_SUSY_CINV, True)),
                   red.Cinv.render())]
    got = red.bracket(W.gen("F"), W.gen("F"))
    out.append(_result("osp12 SUSY pi{F L F}^D", got == parse_series(OSP_SUSY_FF, W.quot), got.to_text()))
    return out


def example_sl2_unprojected():
    """The unprojected C for sl2 is the transpose of the theta-by-theta' layout and
    lies outside the invertible class."""
    W = WData(preset("sl2"), susy=False)
    U = build_unprojected_C(W)
    disp = matrix_from_text(W.alg, SL2_THETA_ROWS, False)
    transposed = [[disp[c][r] for c in range(2)] for r in range(2)]
    try:
        invert_neumann(U, W.floor)
        refused = False
    except NotInClass:
        refused = True
    return [_result("sl2 unprojected C (transposed display)", matrix_matches(U, transposed), U.render()),
            _result("sl2 unprojected C not invertible", refused, "" if refused else "an inverse was returned")]


def example_trivial():
    """Empty constraint set leaves the bracket unchanged; constraints generating
    the whole algebra give the zero bracket."""
    g = preset("sl2")
    from .pvsa import make_affine_pvsa
    ctx = make_affine_pvsa(g)
    E, H = ctx.alg.gen("E"), ctx.alg.gen("H")
    red = DiracReduction(ctx, [])
    same = red.bracket(E, H * E) == ctx.bracket(E, H * E)
    k = Scalar.param("k")
    alg, tab = free_pvsa([("p", 0), ("q", 0)], {
        ("q", "p"): lambda a: Series(a, ("l",), {(0,): a.one()}),
        ("p", "q"): lambda a: Series(a, ("l",), {(0,): -a.one()}),
        ("p", "p"): lambda a: Series(a, ("l",), {(1,): a.const(k)}),
        ("q", "q"): lambda a: Series.zero(a)})
    fctx = PVSAContext(alg, tab)
    p, q = alg.gen("p"), alg.gen("q")
    triv = DiracReduction(fctx, [p, q])
    zero = all(triv.bracket(a, b).is_zero() for a in (p, q) for b in (p, q))
    return [_result("empty constraint set", same), _result("constraints generating the algebra", zero)]


def example_nonlocal():
    out = []
    for susy in (False, True):
        recs = nonlocal_checks(susy)
        out.append(_result("non-local {u L u} %s" % ("SUSY" if susy else "PVSA"), all_pass(recs),
                           "" if all_pass(recs) else str([r for r in recs if r["status"] != "pass"][:1])))
    return out


EXAMPLES = [example_osp_nonsusy, example_osp_susy, example_sl2_unprojected, example_trivial, example_nonlocal]


def run_examples():
    out = []
    for ex in EXAMPLES:
        out += ex()
    return out
