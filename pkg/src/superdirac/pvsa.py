"""Lambda-brackets on free differential superalgebras (non-local PVSAs):
master formula, affine PVSA, axiom checks, finite Poisson superalgebras.
"""

import random

from .diffalg import DiffAlgebra, DiffPoly, random_diffpoly
from .oracle import RecursiveBracket, MissingBracket
from .scalars import Scalar
from .series import (Series, lam_shift, compose, adjoint_series, substitute_sum,
                     admissibility_check, DEFAULT_FLOOR, TruncationError)


def sgn(e):
    return -1 if e % 2 else 1


class BracketContext:
    """Common part of the PVSA and SUSY PVA contexts."""

    susy = False

    def __init__(self, alg, table, floor=DEFAULT_FLOOR, name=""):
        self.alg = alg
        self.floor = floor
        self.name = name
        self.vars = ("l", "x") if self.susy else ("l",)
        self.table = {}
        for key, val in table.items():
            if not isinstance(val, Series):
                val = Series.const(val, self.vars) if isinstance(val, DiffPoly) else val
            self.table[key] = val
        self.local = all(v.is_exact() and all(k[0] >= 0 for k in v.terms) for v in self.table.values())
        self.oracle = RecursiveBracket(alg, self.table, self.susy, floor)
        self._check_table_parity()

    def _check_table_parity(self):
        for (i, j), v in self.table.items():
            if v.is_zero():
                continue
            want = (self.alg.gpar[i] + self.alg.gpar[j] + (1 if self.susy else 0)) % 2
            if v.parity() != want:
                raise ValueError("bracket of %s and %s has the wrong parity" % (self.alg.gens[i].name, self.alg.gens[j].name))

    def zero(self):
        return Series.zero(self.alg, self.vars)

    def gen_bracket(self, i, j):
        if (i, j) not in self.table:
            raise MissingBracket("no bracket for generators %s, %s" % (self.alg.gens[i].name, self.alg.gens[j].name))
        return self.table[(i, j)]

    def bracket(self, f, g):
        total = self.zero()
        for pf, fp in f.parity_parts().items():
            for pg, gp in g.parity_parts().items():
                total = total + self._master(fp, pf, gp, pg)
        return total

    __call__ = bracket


class PVSAContext(BracketContext):
    """Free differential superalgebra with a lambda-bracket table on generators."""

    susy = False

    def _master(self, f, pf, g, pg):
        """Master formula with left partial derivatives."""
        alg = self.alg
        out = self.zero()
        tails = []
        for vi in sorted(f.variables()):
            i, m = vi
            tail = lam_shift(Series.const(f.partial(vi), self.vars), m, self.floor)
            tails.append((i, -tail if m % 2 else tail))
        for vj in sorted(g.variables()):
            j, n = vj
            uj = alg.gpar[j]
            inner = self.zero()
            for i, tail in tails:
                br = self.table.get((i, j))
                if br is None:
                    raise MissingBracket("no bracket for generators %s, %s" % (alg.gens[i].name, alg.gens[j].name))
                if br.is_zero() and not br.lo:
                    continue
                sign = sgn(pf * pg + alg.gpar[i] * uj + pg * uj + uj)
                inner = inner + compose(br, tail, self.floor).scale(sign)
            if inner.is_zero() and not inner.lo:
                continue
            out = out + lam_shift(inner, n, self.floor).lmul(g.partial(vj))
        return out


# ----------------------------------------------------------------------
# constructions

def table_from_lie(g, alg, susy=False):
    """{a L b} = [a,b] + k l (a|b), or the SUSY version (-1)^a([a,b] + k x (a|b))."""
    vars_ = ("l", "x") if susy else ("l",)
    k = Scalar.param("k")
    table = {}
    for i in range(g.dim):
        for j in range(g.dim):
            br = g.bracket(g.basis_vector(i), g.basis_vector(j))
            c0 = alg.zero()
            for t, c in enumerate(br):
                if c:
                    c0 = c0 + alg.gen(alg.gens[t].name).scale(c)
            terms = {}
            if c0:
                terms[(0, 0) if susy else (0,)] = c0
            fv = g.form(g.basis_vector(i), g.basis_vector(j))
            if fv:
                terms[(0, 1) if susy else (1,)] = alg.const(k * fv)
            s = Series(alg, vars_, terms)
            if susy and g.parities[i]:
                s = -s
            table[(i, j)] = s
    return table


def affine_algebra(g, susy=False, suffix=""):
    gens = [(i, g.names[i] + suffix, (g.parities[i] + (1 if susy else 0)) % 2) for i in range(g.dim)]
    return DiffAlgebra(gens, kind="odd" if susy else "even", params=g.params, name=g.name)


def make_affine_pvsa(g, floor=DEFAULT_FLOOR):
    rep = g.validate()
    bad = [r for r in rep if not r[1]]
    if bad:
        raise ValueError("invalid algebra: %s fails (witness %s)" % (bad[0][0], bad[0][2]))
    alg = affine_algebra(g)
    return PVSAContext(alg, table_from_lie(g, alg), floor, name="V^k(%s)" % g.name)


def free_pvsa(names_parities, table_spec, floor=DEFAULT_FLOOR, kind="even"):
    """Convenience constructor: generators [(name, parity)], table_spec maps
    (name, name) -> Series builder f(alg) or Series."""
    alg = DiffAlgebra([(i, n, p) for i, (n, p) in enumerate(names_parities)], kind=kind)
    table = {}
    for (a, b), val in table_spec.items():
        table[(alg.pos[a], alg.pos[b])] = val(alg) if callable(val) else val
    return alg, table


# ----------------------------------------------------------------------
# two-variable brackets for the Jacobi identity

def two_vars(susy):
    return ("l", "m", "x", "g") if susy else ("l", "m")


def _rename_to_second(S, susy):
    return S.rename({"l": "m", "x": "g"} if susy else {"l": "m"})


def _rename_to_sum(S, susy):
    return S.rename({"l": "n", "x": "z"} if susy else {"l": "n"})


def _balanced_sum(pieces, cut, inherited, vars_, alg):
    """Sum pieces (exponent of `cut`, series).  A piece whose floors sit high
    only matters where `cut` is large, so terms with small exponent are
    dropped behind a floor on `cut` chosen to keep the known window widest."""
    if all(s.is_exact() for _, s in pieces):
        out = Series.zero(alg, vars_)
        for _, s in pieces:
            out = out + s
        return out.with_lo(inherited) if inherited else out
    base = inherited.get(cut)
    cands = sorted({p for p, _ in pieces} | ({base} if base is not None else set()))
    best = None
    for L in cands:
        if base is not None and L < base:
            continue
        lo = dict(inherited)
        lo[cut] = L
        for p, s in pieces:
            if p >= L:
                for k, v in s.lo.items():
                    lo[k] = max(lo.get(k, v), v)
        score = (max(lo.values()), sum(lo.values()))
        if best is None or score < best[0]:
            best = (score, L, lo)
    _, L, lo = best
    out = Series.zero(alg, vars_)
    for p, s in pieces:
        if p >= L:
            out = out + Series(alg, vars_, s.terms)
    return out.with_lo(lo)


def bracket_left_into(br, a, S, susy):
    """{a L S(G)} for S a series in the second set of indeterminates."""
    pa = a.parity()
    vars2 = two_vars(susy)
    pieces = []
    for key, c in S.terms.items():
        d = dict(zip(S.vars, key))
        sign = sgn(d.get("g", 0) * (pa + 1)) if susy else 1
        inner = br(a, c).extend(vars2)
        pieces.append((d["m"], Series.monomial(a.alg, vars2, d).mul(inner).scale(sign)))
    return _balanced_sum(pieces, "m", S.lo, vars2, a.alg)


def bracket_right_into(br, b, S, susy):
    """{b G S(L)} for S a series in the first set of indeterminates."""
    pb = b.parity()
    vars2 = two_vars(susy)
    pieces = []
    for key, c in S.terms.items():
        d = dict(zip(S.vars, key))
        sign = sgn(d.get("x", 0) * (pb + 1)) if susy else 1
        inner = _rename_to_second(br(b, c), susy).extend(vars2)
        pieces.append((d["l"], Series.monomial(b.alg, vars2, d).mul(inner).scale(sign)))
    return _balanced_sum(pieces, "l", S.lo, vars2, b.alg)


def bracket_sum_into(br, S, c, susy, floor=DEFAULT_FLOOR):
    """{S(L) L+G c} for S a series in the first set of indeterminates."""
    vars3 = ("l", "n", "x", "z") if susy else ("l", "n")
    pieces = []
    for key, x in S.terms.items():
        d = dict(zip(S.vars, key))
        sign = sgn(d.get("x", 0)) if susy else 1
        inner = _rename_to_sum(br(x, c), susy).extend(vars3)
        pieces.append((d["l"], Series.monomial(c.alg, vars3, d).mul(inner).scale(sign)))
    out = _balanced_sum(pieces, "l", S.lo, vars3, c.alg)
    return substitute_sum(out, floor)


def jacobi_terms(br, a, b, c, susy, floor=DEFAULT_FLOOR):
    """Return (lhs, rhs) of the Jacobi identity as two-variable series.

    non-SUSY: {a L {b M c}}  and  {{a L b} L+M c} + (-1)^{ab} {b M {a L c}}
    SUSY:     {a L {b G c}} + (-1)^a {{a L b} L+G c}  and  (-1)^{(a+1)(b+1)} {b G {a L c}}
    """
    pa, pb = a.parity(), b.parity()
    t1 = bracket_left_into(br, a, _rename_to_second(br(b, c), susy), susy)
    t2 = bracket_sum_into(br, br(a, b), c, susy, floor)
    t3 = bracket_right_into(br, b, br(a, c), susy)
    if susy:
        return t1 + t2.scale(sgn(pa)), t3.scale(sgn((pa + 1) * (pb + 1)))
    return t1, t2 + t3.scale(sgn(pa * pb))


# ----------------------------------------------------------------------
# axiom checks; each returns a list of records

def _record(axiom, instance, residual, certificate=None):
    if residual is None:
        status = "inconclusive"
    else:
        status = "pass" if residual.restrict().is_zero() else "fail"
    rec = {"axiom": axiom, "instance": instance, "status": status,
           "residual": "" if residual is None or status == "pass" else residual.restrict().to_text()}
    if certificate is not None:
        rec["certificate"] = certificate
    return rec


def _certificate(*series):
    lo = {}
    for s in series:
        for k, v in s.lo.items():
            lo[k] = max(lo.get(k, v), v)
    return {"exact": not lo, "floors": dict(sorted(lo.items()))}


def _inst(*xs):
    return " , ".join(x.to_text() for x in xs)


def check_sesquilinearity(ctx, pairs):
    out = []
    br = ctx.bracket
    for a, b in pairs:
        base = br(a, b)
        if ctx.susy:
            lhs1 = br(a.derive(), b)
            rhs1 = base.lmul_outer({"x": 1})
            from .series import chi_d
            lhs2 = br(a, b.derive())
            rhs2 = chi_d(base).scale(-sgn(a.parity()))
        else:
            lhs1 = br(a.d(), b)
            rhs1 = base.lmul_outer({"l": 1}, -1)
            lhs2 = br(a, b.d())
            rhs2 = lam_shift(base, 1, ctx.floor)
        out.append(_record("sesquilinearity-first", _inst(a, b), lhs1 - rhs1))
        out.append(_record("sesquilinearity-second", _inst(a, b), lhs2 - rhs2))
    return out


def check_skewsymmetry(ctx, pairs):
    out = []
    for a, b in pairs:
        lhs = ctx.bracket(b, a)
        adj = adjoint_series(ctx.bracket(a, b), ctx.floor)
        if ctx.susy:
            rhs = adj.scale(sgn(a.parity() * b.parity()))
        else:
            rhs = adj.scale(-sgn(a.parity() * b.parity()))
        res = lhs - rhs
        out.append(_record("skewsymmetry", _inst(a, b), res, _certificate(res)))
    return out


def check_leibniz(ctx, triples):
    out = []
    br = ctx.bracket
    for a, b, c in triples:
        pa, pb, pc = a.parity(), b.parity(), c.parity()
        lhs = br(a, b * c)
        s = sgn((pa + 1) * pb) if ctx.susy else sgn(pa * pb)
        rhs = br(a, b).rmul(c) + br(a, c).lmul(b).scale(s)
        out.append(_record("leibniz-left", _inst(a, b, c), lhs - rhs))
        if not ctx.susy:
            lhs = br(a * b, c)
            rhs = compose(br(a, c), Series.const(b, ctx.vars), ctx.floor).scale(sgn(pb * pc)) \
                + compose(br(b, c), Series.const(a, ctx.vars), ctx.floor).scale(sgn(pa * (pb + pc)))
            out.append(_record("leibniz-right", _inst(a, b, c), lhs - rhs))
    return out


def check_jacobi(ctx, triples, admissibility_order=None):
    out = []
    for a, b, c in triples:
        lhs, rhs = jacobi_terms(ctx.bracket, a, b, c, ctx.susy, ctx.floor)
        res = lhs - rhs
        cert = _certificate(lhs, rhs)
        if admissibility_order and not cert["exact"]:
            cert["admissible"] = {
                "lhs": admissibility_check(lhs, admissibility_order).status,
                "rhs": admissibility_check(rhs, admissibility_order).status,
            }
        out.append(_record("jacobi", _inst(a, b, c), res, cert))
    return out


def check_master_vs_oracle(ctx, pairs):
    """Master formula against the recursive axiom-based evaluation."""
    out = []
    for a, b in pairs:
        res = ctx.bracket(a, b) - ctx.oracle(a, b)
        out.append(_record("master-formula", _inst(a, b), res))
    return out


def sample_elements(ctx, rng, count, max_degree=3, max_order=2):
    alg = ctx.alg
    return [random_diffpoly(alg, rng, max_degree=max_degree, max_order=max_order,
                            nterms=rng.randint(1, 3), parity=rng.randint(0, 1) if _has_odd(alg) else 0)
            for _ in range(count)]


def _has_odd(alg):
    return alg.odd or any(alg.gpar)


def generator_elements(ctx):
    return [ctx.alg.gen(g.name) for g in ctx.alg.gens]


def default_samples(ctx, seed=0, random_count=50, max_degree=3):
    """All generator triples plus seeded random triples of degree <= max_degree."""
    rng = random.Random(seed)
    gens = generator_elements(ctx)
    triples = [(a, b, c) for a in gens for b in gens for c in gens]
    rand = []
    for _ in range(random_count):
        rand.append(tuple(sample_elements(ctx, rng, 3, max_degree=max_degree)))
    return triples, rand


def run_axiom_suite(ctx, seed=0, random_count=50, max_degree=3, jacobi_random=None):
    """Sesquilinearity, skewsymmetry, Leibniz, Jacobi and master-vs-oracle."""
    gen_triples, rand_triples = default_samples(ctx, seed, random_count, max_degree)
    gens = generator_elements(ctx)
    pairs = [(a, b) for a in gens for b in gens] + [(t[0], t[1]) for t in rand_triples]
    recs = []
    recs += check_sesquilinearity(ctx, pairs)
    recs += check_skewsymmetry(ctx, pairs)
    recs += check_leibniz(ctx, gen_triples + rand_triples)
    jr = rand_triples if jacobi_random is None else rand_triples[:jacobi_random]
    recs += check_jacobi(ctx, gen_triples + jr)
    recs += check_master_vs_oracle(ctx, pairs)
    return recs


def summarize(records):
    out = {}
    for r in records:
        s = out.setdefault(r["axiom"], {"pass": 0, "fail": 0, "inconclusive": 0})
        s[r["status"]] += 1
    return out


def all_pass(records):
    return all(r["status"] == "pass" for r in records)


# ----------------------------------------------------------------------
# finite Poisson superalgebras

class FinitePoisson:
    """Polynomial superalgebra C[x_1..x_n] with {x_i, x_j} given by a table
    of polynomials, extended by the Leibniz rules."""

    def __init__(self, names_parities, table, params=("k",)):
        self.alg = DiffAlgebra([(i, n, p) for i, (n, p) in enumerate(names_parities)], kind="even", params=params)
        self.table = {}
        for (a, b), v in table.items():
            ia = self.alg.pos[a] if isinstance(a, str) else a
            ib = self.alg.pos[b] if isinstance(b, str) else b
            self.table[(ia, ib)] = v(self.alg) if callable(v) else v

    def var(self, name):
        return self.alg.gen(name)

    def bracket(self, f, g):
        """sum (right d f / d x_i) {x_i, x_j} (left d g / d x_j)."""
        alg = self.alg
        out = alg.zero()
        for vi in sorted(f.variables()):
            fi = f.rpartial(vi)
            for vj in sorted(g.variables()):
                if vi[1] or vj[1]:
                    raise ValueError("finite Poisson elements carry no derivatives")
                t = self.table.get((vi[0], vj[0]))
                if t is None or t.is_zero():
                    continue
                out = out + fi * t * g.partial(vj)
        return out

    __call__ = bracket

    @classmethod
    def lie_poisson(cls, g):
        """Lie-Poisson structure on S(g): {a, b} = [a, b]."""
        table = {}
        np_ = [(g.names[i], g.parities[i]) for i in range(g.dim)]
        obj = cls(np_, {})
        for i in range(g.dim):
            for j in range(g.dim):
                v = g.bracket(g.basis_vector(i), g.basis_vector(j))
                p = obj.alg.zero()
                for t, c in enumerate(v):
                    if c:
                        p = p + obj.alg.gen(g.names[t]).scale(c)
                table[(i, j)] = p
        obj.table = table
        return obj


def check_finite_poisson(P, triples):
    out = []
    for a, b, c in triples:
        pa, pb, pc = a.parity(), b.parity(), c.parity()
        res = P(a, b * c) - (P(a, b) * c + (b * P(a, c)).scale(sgn(pa * pb)))
        out.append({"axiom": "leibniz", "instance": _inst(a, b, c), "status": "pass" if res.is_zero() else "fail", "residual": res.to_text()})
        res = P(b, a) + P(a, b).scale(sgn(pa * pb))
        out.append({"axiom": "skewsymmetry", "instance": _inst(a, b), "status": "pass" if res.is_zero() else "fail", "residual": res.to_text()})
        res = P(a, P(b, c)) - P(P(a, b), c) - P(b, P(a, c)).scale(sgn(pa * pb))
        out.append({"axiom": "jacobi", "instance": _inst(a, b, c), "status": "pass" if res.is_zero() else "fail", "residual": res.to_text()})
    return out
