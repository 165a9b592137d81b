"""Recursive evaluation of a (SUSY) lambda-bracket from its generator table.

This path uses only the axioms (Leibniz rule on the second slot,
sesquilinearity, skewsymmetry) and never the master formula, so it serves
as an independent oracle for the master-formula engines.
"""

from .diffalg import DiffPoly
from .scalars import Scalar
from .series import Series, lam_shift, chi_d, adjoint_series, DEFAULT_FLOOR


class MissingBracket(KeyError):
    pass


class RecursiveBracket:
    """Bracket on monomials, memoized; table maps (gen pos, gen pos) -> Series."""

    def __init__(self, alg, table, susy=False, floor=DEFAULT_FLOOR):
        self.alg = alg
        self.table = table
        self.susy = susy
        self.floor = floor
        self.vars = ("l", "x") if susy else ("l",)
        self._memo = {}

    def zero(self):
        return Series.zero(self.alg, self.vars)

    def mono(self, vm):
        return DiffPoly(self.alg, {(vm, ()): 1}) if vm else self.alg.one()

    def __call__(self, f, g):
        out = self.zero()
        for (va, pa), ca in f.terms.items():
            for (vb, pb), cb in g.terms.items():
                br = self.mono_bracket(va, vb)
                if br.is_zero() and not br.lo:
                    continue
                s = Scalar({pa: ca}) * Scalar({pb: cb})
                out = out + br.scale(s)
        return out

    def mono_bracket(self, va, vb):
        key = (va, vb)
        if key not in self._memo:
            self._memo[key] = self._compute(va, vb)
        return self._memo[key]

    def _compute(self, va, vb):
        alg = self.alg
        if not va or not vb:
            return self.zero()
        pa = alg.mono_parity(va)
        if len(vb) >= 2:
            v, rest = vb[:1], vb[1:]
            pv = alg.mono_parity(v)
            first = self.mono_bracket(va, v).rmul(self.mono(rest))
            second = self.mono_bracket(va, rest).lmul(self.mono(v))
            if self.susy:
                s = -1 if ((pa + 1) * pv) % 2 else 1
            else:
                s = -1 if (pa * pv) % 2 else 1
            return first + second.scale(s)
        (gb, ob), = vb
        if ob > 0:
            inner = self.mono_bracket(va, ((gb, ob - 1),))
            if self.susy:
                out = chi_d(inner)
                return out if pa % 2 else -out
            return lam_shift(inner, 1, self.floor)
        pb = alg.mono_parity(vb)
        if len(va) >= 2:
            other = self.mono_bracket(vb, va)
            adj = adjoint_series(other, self.floor)
            s = -1 if (pa * pb) % 2 else 1
            return adj.scale(s) if self.susy else adj.scale(-s)
        (ga, oa), = va
        if oa > 0:
            inner = self.mono_bracket(((ga, oa - 1),), vb)
            if self.susy:
                return inner.lmul_outer({"x": 1})
            return inner.lmul_outer({"l": 1}, -1)
        if (ga, gb) not in self.table:
            raise MissingBracket("no bracket for generators %s, %s" % (alg.gens[ga].name, alg.gens[gb].name))
        return self.table[(ga, gb)]
