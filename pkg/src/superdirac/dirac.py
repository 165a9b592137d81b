"""Dirac reduction of (SUSY) lambda-brackets by a set of constraints, the
finite Poisson version, quotient descent and the inverse-operator
identities."""

from .diffalg import DiffAlgebra
from .matrix import SuperMatrixOperator, invert_neumann, NotInClass, verify_inverse
from .pvsa import (PVSAContext, sgn, bracket_left_into, bracket_sum_into, two_vars, _record, _inst)
from .rational import Fraction
from .series import Series, compose, adjoint_series, binom, DEFAULT_FLOOR

import sympy


class ConstraintSet:
    """Homogeneous constraints theta_i with C(L) = sum e_ij (x) {theta_j L theta_i}."""

    def __init__(self, ctx, thetas, names=None):
        self.ctx = ctx
        self.thetas = list(thetas)
        self.parities = [t.parity() for t in self.thetas]
        self.names = names or ["theta%d" % i for i in range(len(self.thetas))]

    def matrix(self):
        ent = {}
        for i, ti in enumerate(self.thetas):
            for j, tj in enumerate(self.thetas):
                ent[(i, j)] = self.ctx.bracket(tj, ti)
        return SuperMatrixOperator(self.ctx.alg, self.parities, self.parities, ent, self.ctx.susy)


class DiracReduction:
    """Reduced bracket {a L b}^D for a context and constraints; C is inverted once."""

    def __init__(self, ctx, thetas, Cinv=None):
        self.ctx = ctx
        self.cons = thetas if isinstance(thetas, ConstraintSet) else ConstraintSet(ctx, thetas)
        self.C = self.cons.matrix()
        self.Cinv = Cinv if Cinv is not None else invert_neumann(self.C, ctx.floor)

    def correction(self, a, b):
        ctx = self.ctx
        th = self.cons.thetas
        par = self.cons.parities
        pa, pb = a.parity(), b.parity()
        left = [ctx.bracket(a, t) for t in th]
        out = ctx.zero()
        for (x, y), cinv in self.Cinv.entries.items():
            if left[y].is_zero() and not left[y].lo:
                continue
            right = ctx.bracket(th[x], b)
            if right.is_zero() and not right.lo:
                continue
            e = (pa + par[x]) * (pb + par[y])
            if not ctx.susy:
                e += par[x] + par[y]
            term = compose(right, compose(cinv, left[y], ctx.floor), ctx.floor)
            out = out + term.scale(sgn(e))
        return out

    def bracket(self, a, b):
        out = self.ctx.zero()
        for pa, ap in a.parity_parts().items():
            for pb, bp in b.parity_parts().items():
                out = out + self.ctx.bracket(ap, bp) - self.correction(ap, bp)
        return out

    __call__ = bracket


def dirac_bracket(ctx, thetas, a, b):
    return DiracReduction(ctx, thetas).bracket(a, b)


def susy_dirac_bracket(ctx, thetas, a, b):
    if not ctx.susy:
        raise ValueError("expected a SUSY context")
    return DiracReduction(ctx, thetas).bracket(a, b)


# ----------------------------------------------------------------------
# finite Poisson superalgebras

def _poly_matmul(alg, A, B, par):
    """Product of matrices with polynomial entries in the convention
    (e_ij (x) a)(e_jk (x) b) = (-1)^{p(a)(p_j + p_k)} e_ik (x) ab."""
    n = len(par)
    out = [[alg.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            a = A[i][j]
            if a.is_zero():
                continue
            for k in range(n):
                b = B[j][k]
                if b.is_zero():
                    continue
                for p, ap in a.parity_parts().items():
                    out[i][k] = out[i][k] + (ap * b).scale(sgn(p * (par[j] + par[k])))
    return out


def finite_inverse(alg, C, par):
    """Inverse of C = K (Id + T), K rational and T nilpotent."""
    n = len(par)
    if n == 0:
        return []
    K = [[C[i][j].terms.get(((), ()), Fraction(0)) for j in range(n)] for i in range(n)]
    Ks = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in K])
    if Ks.det() == 0:
        raise NotInClass("constant part of the constraint matrix is singular")
    Ki = Ks.inv()
    Kinv = [[alg.const(Fraction(int(sympy.Rational(Ki[i, j]).p), int(sympy.Rational(Ki[i, j]).q))) for j in range(n)] for i in range(n)]
    N = [[C[i][j] - alg.const(K[i][j]) for j in range(n)] for i in range(n)]
    T = _poly_matmul(alg, Kinv, N, par)
    ident = [[alg.one() if i == j else alg.zero() for j in range(n)] for i in range(n)]
    S = ident
    P = ident
    for step in range(1, n + 1):
        P = _poly_matmul(alg, P, T, par)
        if all(x.is_zero() for row in P for x in row):
            break
        S = [[S[i][j] + (P[i][j] if step % 2 == 0 else -P[i][j]) for j in range(n)] for i in range(n)]
    else:
        raise NotInClass("constraint matrix is not constant plus nilpotent")
    inv = _poly_matmul(alg, S, Kinv, par)
    prod = _poly_matmul(alg, C, inv, par)
    if any(prod[i][j] != (alg.one() if i == j else alg.zero()) for i in range(n) for j in range(n)):
        raise NotInClass("inverse verification failed")
    return inv


class FiniteDirac:
    """{a,b}^D = {a,b} - sum (-1)^{p_i p_j + p_j} {a,theta_i} (C^-1)_ij {theta_j,b}."""

    def __init__(self, P, thetas):
        self.P = P
        self.thetas = list(thetas)
        self.par = [t.parity() for t in self.thetas]
        n = len(self.thetas)
        self.C = [[P(self.thetas[i], self.thetas[j]) for j in range(n)] for i in range(n)]
        self.Cinv = finite_inverse(P.alg, self.C, self.par)

    def bracket(self, a, b):
        out = self.P(a, b)
        n = len(self.thetas)
        for i in range(n):
            left = self.P(a, self.thetas[i])
            if left.is_zero():
                continue
            for j in range(n):
                c = self.Cinv[i][j]
                if c.is_zero():
                    continue
                right = self.P(self.thetas[j], b)
                s = sgn(self.par[i] * self.par[j] + self.par[j])
                out = out - (left * c * right).scale(s)
        return out

    __call__ = bracket


def finite_dirac_bracket(P, thetas, a, b):
    return FiniteDirac(P, thetas).bracket(a, b)


# ----------------------------------------------------------------------
# quotient by constraints of the form generator - scalar

def _shift_constraints(alg, thetas):
    """Return {generator position: scalar} for thetas of the form u - c."""
    fixed = {}
    for t in thetas:
        lin = [(k, c) for k, c in t.terms.items() if k[0]]
        const = alg.zero()
        for k, c in t.terms.items():
            if not k[0]:
                const = const + type(t)(alg, {k: c})
        if len(lin) != 1 or len(lin[0][0][0]) != 1 or lin[0][0][0][0][1] != 0 or lin[0][0][1] != ():
            raise ValueError("constraint %s is not of the form generator - scalar" % t)
        (vm, _), c = lin[0]
        g = vm[0][0]
        fixed[g] = (-const).scale(1 / c)
    return fixed


class Quotient:
    """Projection P -> P/<theta> for shift constraints, onto the free algebra
    on the remaining generators."""

    def __init__(self, alg, thetas, params=None):
        self.src = alg
        self.fixed = _shift_constraints(alg, thetas)
        keep = [(t, g.name, g.parity) for t, g in enumerate(g for i, g in enumerate(alg.gens) if i not in self.fixed)]
        self.alg = DiffAlgebra(keep, kind=alg.kind, params=params or alg.params, name=alg.name)
        self.keep = {i: self.alg.pos[g.name] for i, g in enumerate(alg.gens) if i not in self.fixed}

    def __call__(self, x):
        out = self.alg.zero()
        for (vm, pm), c in x.terms.items():
            term = type(x)(self.alg, {((), pm): c})
            for (g, o) in vm:
                if g in self.fixed:
                    if o:
                        term = self.alg.zero()
                        break
                    term = term * self.fixed[g].constant_scalar()
                else:
                    term = term * self.alg.var(self.keep[g], o)
            out = out + term
        return out

    def series(self, S):
        return S.map_coeffs(self, self.alg)

    def lift(self, x):
        """Right inverse of the projection: the free algebra on the remaining
        generators inside the source."""
        inv = {v: k for k, v in self.keep.items()}
        out = self.src.zero()
        for (vm, pm), c in x.terms.items():
            term = type(x)(self.src, {((), pm): c})
            for (g, o) in vm:
                term = term * self.src.var(inv[g], o)
            out = out + term
        return out


def quotient_descend(red, name=""):
    """Bracket table on P/<theta> induced by a Dirac reduction with shift constraints."""
    ctx = red.ctx
    q = Quotient(ctx.alg, red.cons.thetas)
    table = {}
    for i, gi in enumerate(q.alg.gens):
        for j, gj in enumerate(q.alg.gens):
            a = ctx.alg.gen(gi.name)
            b = ctx.alg.gen(gj.name)
            table[(i, j)] = q.series(red.bracket(a, b))
    cls = type(ctx)
    return cls(q.alg, table, ctx.floor, name=name or "reduced"), q


# ----------------------------------------------------------------------
# inverse operator identities

def _derive_series(S):
    return S.map_coeffs(lambda c: c.d())


def shift_sum2(S, p):
    """(l + m + d)^p applied to a (l, m) series, p >= 0."""
    vars2 = S.vars
    out = Series.zero(S.alg, vars2)
    cur = S
    for s in range(p + 1):
        e = p - s
        lm = Series(S.alg, vars2, {tuple(j if v == "l" else (e - j if v == "m" else 0) for v in vars2): S.alg.const(binom(e, j)) for j in range(e + 1)})
        out = out + lm.mul(cur).scale(binom(p, s))
        cur = _derive_series(cur)
    return out


def shift_var2(S, var, p):
    """(var + d)^p applied to a two-variable series, p >= 0."""
    out = Series.zero(S.alg, S.vars)
    cur = S
    for s in range(p + 1):
        mono = Series.monomial(S.alg, S.vars, {var: p - s})
        out = out + mono.mul(cur).scale(binom(p, s))
        cur = _derive_series(cur)
    return out


def _left_op(H, S, shift):
    """H(shift + d) applied to S: each term l^p h of H gives h (shift + d)^p S."""
    out = Series.zero(S.alg, S.vars)
    for (p,), h in H.terms.items():
        if p < 0:
            raise ValueError("identity check needs polynomial operators")
        T = shift(S, p)
        out = out + T.lmul(h)
    return out


def _as_var(S, var, vars2):
    """Embed a series in l as a two-variable series in `var`."""
    return S.rename({"l": var}).extend(vars2) if var != "l" else S.extend(vars2)


def inverse_bracket_identity_check(ctx, thetas, a, red=None):
    """Evaluate both sides of the two identities for {a L (C^-1)_ij(M)} and
    {(C^-1)_ij(L) L+M a}; non-SUSY local case."""
    if ctx.susy:
        raise ValueError("the identity check is implemented for the non-SUSY case")
    red = red or DiracReduction(ctx, thetas)
    C, Ci = red.C, red.Cinv
    if not (C.is_exact() and Ci.is_exact()):
        raise ValueError("identity check needs local constraint brackets")
    par = red.cons.parities
    n = len(par)
    pa = a.parity()
    vars2 = two_vars(False)
    br = ctx.bracket
    out = []
    for i in range(n):
        for j in range(n):
            # first identity
            lhs = bracket_left_into(br, a, _as_var(Ci.entry(i, j), "m", ("m",)), False) \
                if Ci.entry(i, j).terms else Series.zero(a.alg, vars2)
            rhs = Series.zero(a.alg, vars2)
            for r in range(n):
                for t in range(n):
                    e = pa * (par[i] + par[r]) + (par[i] + par[t]) * (par[j] + par[r]) + par[r] + par[t]
                    G = _as_var(Ci.entry(t, j), "m", vars2)
                    inner = Series.zero(a.alg, vars2)
                    for (nn,), c in C.entry(r, t).terms.items():
                        Bn = br(a, c).extend(vars2)
                        inner = inner + Bn.mul(shift_var2(G, "m", nn))
                    rhs = rhs + _left_op(Ci.entry(i, r), inner, shift_sum2).scale(-sgn(e))
            out.append(_record("inverse-identity-1", "(%d,%d) a=%s" % (i, j, a), lhs - rhs))
            # second identity
            lhs = bracket_sum_into(br, Ci.entry(i, j), a, False, ctx.floor)
            rhs = Series.zero(a.alg, vars2)
            for r in range(n):
                for t in range(n):
                    e = pa * (par[i] + par[j] + par[r] + par[t]) + (par[r] + par[t]) * (par[j] + par[t])
                    prod = _as_var(Ci.entry(t, j), "l", vars2).mul(
                        _as_var(adjoint_series(Ci.entry(i, r), ctx.floor), "m", vars2))
                    for (nn,), c in C.entry(r, t).terms.items():
                        Y = shift_var2(prod, "l", nn)
                        W = br(c, a)
                        rhs = rhs + _left_op(W, Y, shift_sum2).scale(-sgn(e))
            out.append(_record("inverse-identity-2", "(%d,%d) a=%s" % (i, j, a), lhs - rhs))
    return out
