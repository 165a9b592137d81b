"""Command-line interface: check, reduce, wbracket, examples, expand."""

import json
import os
import sys

import click

from .dirac import DiracReduction
from .lie import InvalidAlgebra, load_algebra
from .matrix import NotInClass
from .pvsa import make_affine_pvsa, run_axiom_suite, summarize, all_pass
from .series import DEFAULT_FLOOR
from .susy import make_affine_susy, chi_coefficient_functor, check_embedding, check_functor_compatibility
from .textio import ParseError, parse_diffpoly, parse_lines, render
from .golden import preset, run_examples
from .pvsa import _record
from .wstructure import (WData, ModifiedDirac, chain_sum_bracket, w_bracket_oracle,
                         conformal_weight_audit)


class UsageFailure(click.ClickException):
    exit_code = 2


def _floor(trunc):
    return -abs(trunc) if trunc is not None else DEFAULT_FLOOR


def load_algebra_arg(path):
    """A JSON file, or the name of a bundled preset (sl2, osp12)."""
    if not os.path.exists(path) and path in ("sl2", "osp12"):
        return preset(path)
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageFailure("cannot read %s: %s" % (path, exc.strerror))
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageFailure("%s: line %d, column %d: %s" % (path, exc.lineno, exc.colno, exc.msg))
    try:
        return load_algebra(data)
    except InvalidAlgebra as exc:
        raise UsageFailure("%s: %s" % (path, exc))


def make_context(g, susy, trunc):
    return make_affine_susy(g, _floor(trunc)) if susy else make_affine_pvsa(g, _floor(trunc))


def emit(records, fmt, extra=None):
    """Print a report and return the exit code."""
    ok = all(r["status"] == "pass" for r in records)
    if fmt == "json":
        doc = {"status": "pass" if ok else "fail", "summary": summarize(records), "records": records}
        if extra:
            doc.update(extra)
        click.echo(json.dumps(doc, indent=1, sort_keys=True, default=str))
    else:
        if extra:
            for k in sorted(extra):
                v = extra[k]
                if isinstance(v, dict):
                    for kk in sorted(v):
                        click.echo("%s %s: %s" % (k, kk, v[kk]))
                else:
                    click.echo("%s:\n%s" % (k, v) if "\n" in str(v) else "%s: %s" % (k, v))
        for r in records:
            if r["status"] != "pass" or fmt == "text-verbose":
                click.echo("%s %s [%s] %s" % (r["status"].upper(), r["axiom"], r["instance"], r.get("residual", "")))
        for ax, s in summarize(records).items():
            click.echo("%-24s pass %d  fail %d  inconclusive %d" % (ax, s["pass"], s["fail"], s["inconclusive"]))
        click.echo("RESULT: %s" % ("PASS" if ok else "FAIL"))
    return 0 if ok else 1


def _fmt_opt(f):
    return click.option("--format", "fmt", type=click.Choice(["text", "json", "latex"]), default="text",
                        help="Report format.")(f)


def _common(f):
    f = click.option("--susy", is_flag=True, help="Use the N=1 SUSY affine algebra.")(f)
    f = click.option("--trunc", type=int, default=None, help="Truncation floor N (keep powers >= -N).")(f)
    f = click.option("--seed", type=int, default=0, show_default=True, help="Seed for random samples.")(f)
    return _fmt_opt(f)


@click.group()
def main():
    """Dirac reduction of Poisson vertex superalgebras and W-algebra brackets."""


@main.command()
@click.argument("algebra")
@_common
@click.option("--random", "random_count", type=int, default=50, show_default=True)
@click.option("--max-degree", type=int, default=3, show_default=True)
def check(algebra, susy, trunc, seed, fmt, random_count, max_degree):
    """Validate a Lie superalgebra file and run the axiom suite on its affine algebra."""
    g = load_algebra_arg(algebra)
    recs = [{"axiom": "lie-" + name, "instance": g.name, "status": "pass" if ok else "fail",
             "residual": "" if ok else str(w)} for name, ok, w in g.validate()]
    if all_pass(recs):
        ctx = make_context(g, susy, trunc)
        recs += run_axiom_suite(ctx, seed, random_count, max_degree)
        if susy:
            fun = chi_coefficient_functor(ctx)
            gens = [ctx.alg.gen(x.name) for x in ctx.alg.gens]
            recs += check_functor_compatibility(fun, [(a, b) for a in gens for b in gens])
            recs += check_embedding(fun, g, seed)
    sys.exit(emit(recs, fmt, {"algebra": g.name, "mode": "susy" if susy else "pvsa"}))


def _pairs_opt(f):
    return click.option("--pair", "pairs", multiple=True, help="Pair a,b of generators (repeatable).")(f)


def _parse_pair(s):
    parts = [x.strip() for x in s.split(",")]
    if len(parts) != 2 or not all(parts):
        raise UsageFailure("--pair expects 'a,b', got %r" % s)
    return parts


def do_reduce(algebra, constraints, susy, trunc, seed, fmt, pairs, show_matrix):
    g = load_algebra_arg(algebra)
    ctx = make_context(g, susy, trunc)
    try:
        with open(constraints) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageFailure("cannot read %s: %s" % (constraints, exc.strerror))
    try:
        thetas = parse_lines(text, ctx.alg)
    except ParseError as exc:
        raise UsageFailure("%s: %s" % (constraints, exc))
    bad = [t for t in thetas if len(t.parity_parts()) > 1]
    if bad:
        raise UsageFailure("constraint %s is not homogeneous" % bad[0])
    try:
        red = DiracReduction(ctx, thetas)
    except NotInClass as exc:
        click.echo("constraint matrix is outside the invertible class: %s" % exc, err=True)
        click.echo("for W-algebra constraints use the modified reduction (wbracket)", err=True)
        sys.exit(1)
    names = [x.name for x in ctx.alg.gens]
    todo = [_parse_pair(p) for p in pairs] or [(a, b) for a in names for b in names]
    extra = {"brackets": {}}
    recs = []
    for a, b in todo:
        if a not in ctx.alg.pos or b not in ctx.alg.pos:
            raise UsageFailure("unknown generator in pair %s,%s" % (a, b))
        extra["brackets"]["{%s L %s}^D" % (a, b)] = render(red.bracket(ctx.alg.gen(a), ctx.alg.gen(b)), fmt)
    for n in names:
        x = ctx.alg.gen(n)
        for i, t in enumerate(thetas):
            recs.append(_record("centrality", "%s , theta%d" % (n, i), red.bracket(x, t)))
            recs.append(_record("centrality", "theta%d , %s" % (i, n), red.bracket(t, x)))
    if show_matrix:
        extra["C"] = red.C.render("latex" if fmt == "latex" else "text")
        extra["C^-1"] = red.Cinv.render("latex" if fmt == "latex" else "text")
    sys.exit(emit(recs, fmt, extra))


@main.command()
@click.argument("algebra")
@click.option("--constraints", required=True, help="File with one constraint per line.")
@_common
@_pairs_opt
@click.option("--show-matrix", is_flag=True)
def reduce(algebra, constraints, susy, trunc, seed, fmt, pairs, show_matrix):
    """Dirac reduced brackets of the affine algebra by a constraint file."""
    do_reduce(algebra, constraints, susy, trunc, seed, fmt, pairs, show_matrix)


@main.group()
def dirac():
    """Dirac reduction commands."""


@dirac.command("reduce")
@click.argument("algebra")
@click.option("--constraints", required=True)
@_common
@_pairs_opt
@click.option("--show-matrix", is_flag=True)
def dirac_reduce(algebra, constraints, susy, trunc, seed, fmt, pairs, show_matrix):
    """Same as the top-level reduce command."""
    do_reduce(algebra, constraints, susy, trunc, seed, fmt, pairs, show_matrix)


@main.command()
@click.argument("algebra")
@_common
@_pairs_opt
@click.option("--show-matrix", is_flag=True)
def wbracket(algebra, susy, trunc, seed, fmt, pairs, show_matrix):
    """Modified Dirac reduced brackets of W-algebra generators, checked
    against the chain-sum formula and the W-algebra bracket formula."""
    g = load_algebra_arg(algebra)
    try:
        W = WData(g, susy, _floor(trunc))
    except InvalidAlgebra as exc:
        raise UsageFailure(str(exc))
    red = ModifiedDirac(W)
    labels = W.basis.labels
    todo = [_parse_pair(p) for p in pairs] or [(a, b) for a in labels for b in labels]
    extra = {"brackets": {}}
    recs = []
    results = []
    for a, b in todo:
        if a not in labels or b not in labels:
            raise UsageFailure("generators of the quotient are %s" % ", ".join(labels))
        got = red.bracket(W.gen(a), W.gen(b))
        results.append(((a, b), got))
        extra["brackets"]["pi{%s L %s}^D" % (a, b)] = render(got, fmt)
        recs.append(_record("two-path", "%s,%s" % (a, b), got - chain_sum_bracket(W, a, b)))
        recs.append(_record("w-formula", "%s,%s" % (a, b), got - w_bracket_oracle(W, a, b)))
    recs += conformal_weight_audit(W, results)
    if show_matrix:
        extra["C"] = red.C.render("latex" if fmt == "latex" else "text")
        extra["C^-1"] = red.Cinv.render("latex" if fmt == "latex" else "text")
    sys.exit(emit(recs, fmt, extra))


@main.command()
@_fmt_opt
def examples(fmt):
    """Run the worked examples against their expected values."""
    recs = run_examples()
    if fmt != "json":
        for r in recs:
            click.echo("%s %s" % (r["status"].upper(), r["instance"]))
    sys.exit(emit(recs, fmt) if fmt == "json" else (0 if all_pass(recs) else 1))


@main.command()
@click.argument("algebra")
@click.argument("a")
@click.argument("b")
@_common
def expand(algebra, a, b, susy, trunc, seed, fmt):
    """Evaluate {a L b} in the affine algebra by the master formula."""
    g = load_algebra_arg(algebra)
    ctx = make_context(g, susy, trunc)
    try:
        x = parse_diffpoly(a, ctx.alg)
        y = parse_diffpoly(b, ctx.alg)
    except ParseError as exc:
        raise UsageFailure(str(exc))
    out = ctx.bracket(x, y)
    if fmt == "json":
        click.echo(json.dumps({"a": x.to_text(), "b": y.to_text(), "bracket": out.to_text()}, sort_keys=True))
    else:
        click.echo(render(out, fmt))


if __name__ == "__main__":
    main()
