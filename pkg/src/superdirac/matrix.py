"""Matrix operators: Mat_(r|s) tensored with series in l (or l, x), with the
twisted product (a (x) F) o (b (x) G) = (-1)^{p(b) p(F)} ab (x) F(L+nabla) G(L),
the adjoint, and inversion for the class K (Id + T) with K a rational
constant matrix and T nilpotent under o.
"""

import random

import sympy

from .rational import Fraction
from .scalars import Scalar
from .series import Series, compose, adjoint_series, DEFAULT_FLOOR, ODD_VARS


class NotInClass(ArithmeticError):
    """The operator is outside the supported invertibility class."""


class ShapeError(ValueError):
    pass


def _sgn(e):
    return -1 if e % 2 else 1


class SuperMatrixOperator:
    """rows/cols: lists of index parities; entries: dict (r, c) -> Series."""

    def __init__(self, alg, rows, cols, entries=None, susy=False, row_labels=None, col_labels=None):
        self.alg = alg
        self.rows = [p % 2 for p in rows]
        self.cols = [p % 2 for p in cols]
        self.susy = susy
        self.vars = ("l", "x") if susy else ("l",)
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < len(self.rows) and 0 <= c < len(self.cols)):
                raise ShapeError("entry (%d, %d) outside the shape" % (r, c))
            if v.vars != self.vars:
                raise ValueError("entry over %s, expected %s" % (v.vars, self.vars))
            if not v.is_zero() or v.lo:
                self.entries[(r, c)] = v
        self.row_labels = row_labels
        self.col_labels = col_labels

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))

    def entry(self, r, c):
        return self.entries.get((r, c), Series.zero(self.alg, self.vars))

    def like(self, rows, cols, entries):
        return SuperMatrixOperator(self.alg, rows, cols, entries, self.susy)

    @classmethod
    def identity(cls, alg, parities, susy=False):
        vars_ = ("l", "x") if susy else ("l",)
        return cls(alg, parities, parities, {(i, i): Series.const(alg.one(), vars_) for i in range(len(parities))}, susy)

    @classmethod
    def from_rows(cls, alg, rows_data, row_par, col_par, susy=False):
        ent = {}
        for r, row in enumerate(rows_data):
            for c, v in enumerate(row):
                ent[(r, c)] = v
        return cls(alg, row_par, col_par, ent, susy)

    def is_exact(self):
        return all(v.is_exact() for v in self.entries.values())

    def parity(self):
        """Parity of a homogeneous operator: p(e_rc) + p(entry)."""
        ps = set()
        for (r, c), v in self.entries.items():
            for p in v.parity_parts():
                ps.add((self.rows[r] + self.cols[c] + p) % 2)
        if len(ps) > 1:
            raise ValueError("operator is not homogeneous")
        return ps.pop() if ps else 0

    def __add__(self, other):
        self._same_shape(other)
        ent = dict(self.entries)
        for k, v in other.entries.items():
            ent[k] = ent[k] + v if k in ent else v
        return self.like(self.rows, self.cols, ent)

    def __neg__(self):
        return self.like(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return self.like(self.rows, self.cols, {k: v.scale(s) for k, v in self.entries.items()})

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError("operators of different shapes")

    def __eq__(self, other):
        if not isinstance(other, SuperMatrixOperator):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        d = self - other
        return all(v.is_zero() and not v.lo for v in d.entries.values())

    def __hash__(self):
        return hash((tuple(self.rows), tuple(self.cols)))

    def agrees(self, other):
        d = self - other
        return all(v.restrict().is_zero() for v in d.entries.values())

    def is_identity(self):
        return self.rows == self.cols and self == SuperMatrixOperator.identity(self.alg, self.rows, self.susy)

    def map_entries(self, f):
        return self.like(self.rows, self.cols, {k: f(v) for k, v in self.entries.items()})

    def transpose_shape(self):
        return self.cols, self.rows

    # rendering
    def render(self, fmt="text"):
        n, m = self.shape
        cells = [[self.entry(r, c).to_text(fmt) for c in range(m)] for r in range(n)]
        if fmt == "latex":
            body = " \\\\\n".join(" & ".join(row) for row in cells)
            return "\\begin{pmatrix}\n" + body + "\n\\end{pmatrix}"
        width = [max((len(cells[r][c]) for r in range(n)), default=1) for c in range(m)]
        lines = []
        for r in range(n):
            lines.append("[ " + "  ".join(cells[r][c].rjust(width[c]) for c in range(m)) + " ]")
        return "\n".join(lines)

    def __str__(self):
        return self.render()

    __repr__ = __str__


def op_multiply(A, B, floor=DEFAULT_FLOOR):
    """(A o B)_ik = sum_j sum_f (-1)^{(p_j + p_k) p(f)} f(L+nabla) B_jk over
    the homogeneous parts f of A_ij."""
    if A.cols != B.rows:
        raise ShapeError("inner signatures differ: %s vs %s" % (A.cols, B.rows))
    if A.susy != B.susy or A.alg is not B.alg:
        raise ShapeError("operators over different contexts")
    ent = {}
    bycol = {}
    for (j, k), v in B.entries.items():
        bycol.setdefault(j, []).append((k, v))
    for (i, j), a in A.entries.items():
        parts = a.parity_parts() if a.terms else {0: a}
        for k, b in bycol.get(j, []):
            e = A.cols[j] + B.cols[k]
            for p, f in parts.items():
                term = compose(f, b, floor)
                if e % 2 and p:
                    term = -term
                ent[(i, k)] = ent[(i, k)] + term if (i, k) in ent else term
    return SuperMatrixOperator(A.alg, A.rows, B.cols, ent, A.susy)


def op_power(A, n, floor=DEFAULT_FLOOR):
    out = SuperMatrixOperator.identity(A.alg, A.rows, A.susy)
    for _ in range(n):
        out = op_multiply(out, A, floor)
    return out


def op_adjoint(A, floor=DEFAULT_FLOOR):
    """A* = sum (-1)^{p_i p_j + p_j} e_ji (x) (A_ij)* for an even operator A."""
    if A.parity() != 0:
        raise ValueError("the adjoint is defined here for even operators only")
    ent = {}
    for (i, j), v in A.entries.items():
        s = _sgn(A.rows[i] * A.cols[j] + A.cols[j])
        ent[(j, i)] = adjoint_series(v, floor).scale(s)
    return SuperMatrixOperator(A.alg, A.cols, A.rows, ent, A.susy)


def parity_conjugate(A):
    """Pi A Pi with Pi = diag((-1)^{p_i}); equals A** for an even operator A."""
    ent = {(r, c): v.scale(_sgn(A.rows[r] + A.cols[c])) for (r, c), v in A.entries.items()}
    return A.like(A.rows, A.cols, ent)


def constant_part(A):
    """Rational matrix of the L^0 X^0 parameter-free constant coefficients."""
    n, m = A.shape
    zero_key = (0,) * len(A.vars)
    M = [[Fraction(0)] * m for _ in range(n)]
    for (r, c), v in A.entries.items():
        coeff = v.terms.get(zero_key)
        if coeff is None:
            continue
        val = coeff.terms.get(((), ()))
        if val:
            M[r][c] = val
    return M


def _const_operator(A_like, M, rows, cols):
    ent = {}
    for r, row in enumerate(M):
        for c, x in enumerate(row):
            if x:
                ent[(r, c)] = Series.const(A_like.alg.const(x), A_like.vars)
    return SuperMatrixOperator(A_like.alg, rows, cols, ent, A_like.susy)


def verify_inverse(A, B, floor=DEFAULT_FLOOR):
    """Both A o B and B o A equal Id (x) 1 exactly."""
    if A.cols != B.rows or B.cols != A.rows:
        return False
    return op_multiply(A, B, floor).is_identity() and op_multiply(B, A, floor).is_identity()


def invert_neumann(A, floor=DEFAULT_FLOOR):
    """Inverse of A = K (Id + T), K rational constant, T nilpotent; falls back
    to monomial matrices whose entries are single scalar terms c L^n X^i."""
    n, m = A.shape
    if n != m:
        raise NotInClass("operator is not square")
    if A.rows != A.cols:
        raise NotInClass("row and column signatures differ")
    K = constant_part(A)
    Ks = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row] for row in K]) if n else sympy.zeros(0, 0)
    if n and Ks.det() != 0:
        Kinv = Ks.inv()
        Kinv_q = [[Fraction(int(sympy.Rational(Kinv[r, c]).p), int(sympy.Rational(Kinv[r, c]).q)) for c in range(n)] for r in range(n)]
        Kop = _const_operator(A, K, A.rows, A.cols)
        Kinv_op = _const_operator(A, Kinv_q, A.rows, A.cols)
        T = op_multiply(Kinv_op, A - Kop, floor)
        # nilpotency witness: T^n = 0
        powers = [SuperMatrixOperator.identity(A.alg, A.rows, A.susy)]
        cur = powers[0]
        for step in range(1, n + 1):
            cur = op_multiply(cur, T, floor)
            if all(v.is_zero() and not v.lo for v in cur.entries.values()):
                break
            powers.append(cur)
        else:
            raise NotInClass("K^-1 A - Id is not nilpotent within %d steps" % n)
        S = None
        for k, P in enumerate(powers):
            P = P if k % 2 == 0 else -P
            S = P if S is None else S + P
        inv = op_multiply(S, Kinv_op, floor)
    else:
        inv = _invert_monomial(A, floor)
    if not verify_inverse(A, inv, floor):
        raise NotInClass("computed inverse failed verification")
    return inv


def _invert_monomial(A, floor):
    n = A.shape[0]
    rowpos = {}
    colseen = set()
    for (r, c), v in A.entries.items():
        if r in rowpos or c in colseen:
            raise NotInClass("constant part is singular and the operator is not a monomial matrix")
        rowpos[r] = c
        colseen.add(c)
    if len(rowpos) != n:
        raise NotInClass("operator has a zero row")
    ent = {}
    for r, c in rowpos.items():
        v = A.entries[(r, c)]
        if not v.is_exact() or len(v.terms) != 1:
            raise NotInClass("entry (%d, %d) is not a single term" % (r, c))
        (key, coeff), = v.terms.items()
        if not coeff.is_constant() or len(coeff.terms) != 1:
            raise NotInClass("entry (%d, %d) is not a scalar monomial" % (r, c))
        s = coeff.constant_scalar().inverse()
        if A.susy:
            e, i = key
            # (c L^e X^i)^-1 = c^-1 (-1)^i L^{-e-i} X^i
            inv = Series(A.alg, A.vars, {(-e - i, i): A.alg.const(s).scale(_sgn(i))})
        else:
            inv = Series(A.alg, A.vars, {(-key[0],): A.alg.const(s)})
        ent[(c, r)] = inv
    B = SuperMatrixOperator(A.alg, A.cols, A.rows, ent, A.susy)
    # fix Koszul signs entry by entry from the diagonal of B o A
    P = op_multiply(B, A, floor)
    fixed = {}
    for (c, r), v in B.entries.items():
        d = P.entry(c, c)
        fixed[(c, r)] = -v if d.terms.get((0,) * len(A.vars)) is not None and d.terms[(0,) * len(A.vars)] == -A.alg.one() else v
    return SuperMatrixOperator(A.alg, A.cols, A.rows, fixed, A.susy)


def random_operator(alg, rng, parities, susy=False, max_lambda=2, even=True, max_degree=2):
    """Seeded random operator with polynomial entries; even if requested."""
    from .diffalg import random_diffpoly
    vars_ = ("l", "x") if susy else ("l",)
    ent = {}
    n = len(parities)
    for r in range(n):
        for c in range(n):
            if rng.random() < 0.3:
                continue
            want = (parities[r] + parities[c]) % 2
            terms = {}
            for _ in range(rng.randint(1, 2)):
                e = rng.randint(0, max_lambda)
                i = rng.randint(0, 1) if susy else 0
                p = (want + i) % 2 if even else rng.randint(0, 1)
                if p and not _has_odd(alg):
                    continue
                if rng.random() < 0.3 and p == 0:
                    coeff = alg.const(Scalar.coerce(rng.choice([1, -1, 2, "k"])))
                else:
                    coeff = random_diffpoly(alg, rng, max_degree=max_degree, max_order=1, nterms=2, parity=p)
                key = (e, i) if susy else (e,)
                terms[key] = terms[key] + coeff if key in terms else coeff
            s = Series(alg, vars_, terms)
            if s.terms:
                ent[(r, c)] = s
    return SuperMatrixOperator(alg, parities, parities, ent, susy)


def _has_odd(alg):
    return alg.odd or any(alg.gpar)
