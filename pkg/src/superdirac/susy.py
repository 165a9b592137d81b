"""N=1 SUSY PVAs: the Lambda-bracket master formula, the affine SUSY PVA,
and the functor to PVSAs given by the chi-coefficients."""

import random

from .diffalg import DiffAlgebra, DiffPoly
from .oracle import MissingBracket
from .pvsa import (BracketContext, PVSAContext, sgn, table_from_lie, affine_algebra,
                   run_axiom_suite, make_affine_pvsa, _record, _inst, sample_elements)
from .series import Series, compose, chi_d_power, DEFAULT_FLOOR


class SusyContext(BracketContext):
    """Free D-differential superalgebra with a Lambda-bracket table."""

    susy = True

    def __init__(self, alg, table, floor=DEFAULT_FLOOR, name=""):
        if not alg.odd:
            raise ValueError("a SUSY context needs an algebra with odd derivation")
        super().__init__(alg, table, floor, name)

    def _master(self, a, pa, b, pb):
        alg = self.alg
        out = self.zero()
        tails = []
        for vi in sorted(a.variables()):
            i, m = vi
            tails.append((i, m, chi_d_power(Series.const(a.partial(vi), self.vars), m)))
        for vj in sorted(b.variables()):
            j, n = vj
            uj = alg.gpar[j]
            bjn = pb + uj + n
            ujn = uj + n
            inner = self.zero()
            for i, m, tail in tails:
                br = self.table.get((i, j))
                if br is None:
                    raise MissingBracket("no bracket for generators %s, %s" % (alg.gens[i].name, alg.gens[j].name))
                if br.is_zero() and not br.lo:
                    continue
                ui = alg.gpar[i]
                aim = pa + ui + m
                e = bjn + bjn * (ujn + pa) + aim * ujn
                e += n * (ui + m + 1) + m * (ui + uj + 1) + m * (m - 1) // 2
                inner = inner + compose(br, tail, self.floor).scale(sgn(e))
            if inner.is_zero() and not inner.lo:
                continue
            out = out + chi_d_power(inner, n).lmul(b.partial(vj))
        return out


def make_affine_susy(g, floor=DEFAULT_FLOOR):
    """Affine SUSY PVA on the parity reversed space: generators keep the
    names of the basis of g and have parity p(a) + 1."""
    rep = g.validate()
    bad = [r for r in rep if not r[1]]
    if bad:
        raise ValueError("invalid algebra: %s fails (witness %s)" % (bad[0][0], bad[0][2]))
    alg = affine_algebra(g, susy=True)
    return SusyContext(alg, table_from_lie(g, alg, susy=True), floor, name="V^k(bar %s)" % g.name)


def chi_part(S):
    """Coefficients of chi in a (l, x) series, as a series in l."""
    terms = {(k[0],): c for k, c in S.terms.items() if k[1] == 1}
    lo = {"l": S.lo["l"]} if "l" in S.lo else {}
    return Series(S.alg, ("l",), terms, lo)


class ChiFunctor:
    """The PVSA underlying a SUSY PVA: {a l b} = chi-coefficient of {a L b}.

    The SUSY algebra C[u_i^[n]] is identified with the d-differential
    algebra on the generators u_i and Du_i (named 'D' + name):
    u^[2m] <-> d^m u and u^[2m+1] <-> d^m Du.
    """

    def __init__(self, sctx):
        self.sctx = sctx
        salg = sctx.alg
        gens = []
        for i, g in enumerate(salg.gens):
            gens.append((2 * i, g.name, g.parity))
            gens.append((2 * i + 1, "D" + g.name, (g.parity + 1) % 2))
        self.alg = DiffAlgebra(gens, kind="even", params=salg.params, name=salg.name)
        table = {}
        for i in range(len(salg.gens)):
            for s in (0, 1):
                for j in range(len(salg.gens)):
                    for t in (0, 1):
                        a = salg.var(i, s)
                        b = salg.var(j, t)
                        br = chi_part(sctx.bracket(a, b))
                        table[(2 * i + s, 2 * j + t)] = br.map_coeffs(self.to_even, self.alg)
        self.ctx = PVSAContext(self.alg, table, sctx.floor, name="pvsa(%s)" % sctx.name)

    def _map(self, x, target, fn):
        out = target.zero()
        for (vm, pm), c in x.terms.items():
            term = DiffPoly(target, {((), pm): c})
            for v in vm:
                term = term * target.var(*fn(v))
            out = out + term
        return out

    def to_even(self, x):
        return self._map(x, self.alg, lambda v: (2 * v[0] + v[1] % 2, v[1] // 2))

    def to_susy(self, x):
        return self._map(x, self.sctx.alg, lambda v: (v[0] // 2, 2 * v[1] + v[0] % 2))

    def bracket(self, a, b):
        """PVSA bracket of two SUSY elements, computed from the Lambda-bracket."""
        return chi_part(self.sctx.bracket(a, b)).map_coeffs(self.to_even, self.alg)

    def embedding(self, source_alg):
        """The map a -> D(bar a) from the non-SUSY affine algebra on g: the
        generator named n goes to the generator 'D' + n."""
        def emb(x):
            return self._map(x, self.alg, lambda v: (self.alg.pos["D" + source_alg.gens[v[0]].name], v[1]))
        return emb


def chi_coefficient_functor(sctx):
    return ChiFunctor(sctx)


def check_functor_compatibility(functor, pairs):
    """{a l b} through the extracted table equals the chi-part of {a L b}."""
    out = []
    for a, b in pairs:
        lhs = functor.ctx.bracket(functor.to_even(a), functor.to_even(b))
        rhs = functor.bracket(a, b)
        out.append(_record("functor", _inst(a, b), lhs - rhs))
    return out


def check_embedding(functor, g, seed=0, count=20):
    """a -> D(bar a) is a PVSA homomorphism from the affine PVSA of g."""
    actx = make_affine_pvsa(g, functor.ctx.floor)
    emb = functor.embedding(actx.alg)
    gens = [actx.alg.gen(x.name) for x in actx.alg.gens]
    rng = random.Random(seed)
    pairs = [(a, b) for a in gens for b in gens]
    rnd = sample_elements(actx, rng, 2 * count, max_degree=2, max_order=1)
    pairs += list(zip(rnd[::2], rnd[1::2]))
    out = []
    for a, b in pairs:
        lhs = functor.ctx.bracket(emb(a), emb(b))
        rhs = actx.bracket(a, b).map_coeffs(emb, functor.alg)
        out.append(_record("embedding", _inst(a, b), lhs - rhs))
    return out


def run_susy_suite(sctx, seed=0, random_count=50, max_degree=3):
    return run_axiom_suite(sctx, seed, random_count, max_degree)
