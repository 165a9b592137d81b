"""Formal series in outer indeterminates with DiffPoly coefficients.

Outer indeterminates: even l (lambda), m (mu), n (nu); odd x (chi),
g (gamma), z (zeta), with x^2 = -l, g^2 = -m, z^2 = -n.  A term is stored
as  l^a m^b n^c x^i g^j z^k * coeff  with the indeterminates to the LEFT
of the coefficient and the odd ones in the order x, g, z.

Laurent tails are handled by truncation.  Each series carries floors in
`lo`: for an even variable v, coefficients with exponent of v below
lo[v] are unknown; lo['deg'] bounds the sum of the even exponents the
same way.  A series with empty `lo` is exact.  Reading an unknown
coefficient raises TruncationError.
"""

from .rational import Fraction

from .diffalg import DiffPoly, AlgebraMismatch, latexify
from .scalars import Scalar, term_str, pmono_str

VAR_ORDER = ("l", "m", "n", "x", "g", "z")
ODD_VARS = {"x": "l", "g": "m", "z": "n"}
DISPLAY = {"l": "L", "m": "M", "n": "N", "x": "X", "g": "G", "z": "Z"}
LATEX = {"l": r"\lambda", "m": r"\mu", "n": r"\nu", "x": r"\chi", "g": r"\gamma", "z": r"\zeta"}

DEFAULT_FLOOR = -8


class TruncationError(ArithmeticError):
    """A coefficient below the truncation floor was needed."""


def binom(n, r):
    """Generalized binomial coefficient C(n, r) for integer n, r >= 0."""
    out = Fraction(1)
    for t in range(r):
        out = out * (n - t) / (t + 1)
    return out


def _norm_vars(vs):
    vs = tuple(vs)
    for v in vs:
        if v not in VAR_ORDER:
            raise ValueError("unknown outer variable %r" % v)
    if tuple(sorted(vs, key=VAR_ORDER.index)) != vs:
        raise ValueError("outer variables must follow the order %s" % (VAR_ORDER,))
    for v in vs:
        if v in ODD_VARS and ODD_VARS[v] not in vs:
            raise ValueError("odd variable %r needs its partner %r" % (v, ODD_VARS[v]))
    return vs


def _odd_count(vars_, key):
    return sum(e for v, e in zip(vars_, key) if v in ODD_VARS)


def mono_mul(vars_, a, b):
    """Multiply two outer monomials: returns (sign, key)."""
    idx = {v: i for i, v in enumerate(vars_)}
    e = [x + y for x, y in zip(a, b)]
    sign = 1
    odd = [v for v in vars_ if v in ODD_VARS]
    # move each odd letter of b left past the odd letters of a standing after it
    for j, v in enumerate(odd):
        if b[idx[v]]:
            for w in odd[j + 1:]:
                if a[idx[w]]:
                    sign = -sign
    for v in odd:
        i = idx[v]
        if e[i] == 2:
            e[i] = 0
            e[idx[ODD_VARS[v]]] += 1
            sign = -sign
    return sign, tuple(e)


class Series:
    """Immutable series sum_M M * coeff(M)."""

    __slots__ = ("alg", "vars", "terms", "lo")

    def __init__(self, alg, vars_, terms=None, lo=None):
        self.alg = alg
        self.vars = _norm_vars(vars_)
        t = {}
        if terms:
            for k, c in terms.items():
                if c.alg is not alg:
                    raise AlgebraMismatch("coefficient from another algebra")
                if c.terms:
                    t[tuple(k)] = c
        self.terms = t
        self.lo = {k: v for k, v in (lo or {}).items() if v is not None}

    # constructors
    @classmethod
    def zero(cls, alg, vars_=("l",)):
        return cls(alg, vars_)

    @classmethod
    def const(cls, c, vars_=("l",)):
        vars_ = _norm_vars(vars_)
        return cls(c.alg, vars_, {(0,) * len(vars_): c})

    @classmethod
    def monomial(cls, alg, vars_, exps, coeff=None):
        """Single term; exps is a dict var -> exponent (odd exponents 0 or 1)."""
        vars_ = _norm_vars(vars_)
        for v, e in exps.items():
            if v not in vars_:
                raise ValueError("variable %r not in %s" % (v, vars_))
            if v in ODD_VARS and e not in (0, 1):
                raise ValueError("odd exponents must be 0 or 1")
        key = tuple(exps.get(v, 0) for v in vars_)
        c = alg.one() if coeff is None else coeff
        if not isinstance(c, DiffPoly):
            c = alg.const(c)
        return cls(alg, vars_, {key: c})

    # structure
    def is_exact(self):
        return not self.lo

    def is_zero(self):
        return not self.terms

    def _same(self, other):
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if other.alg is not self.alg:
            raise AlgebraMismatch("series over different algebras")
        if other.vars != self.vars:
            raise ValueError("series over different indeterminates %s vs %s" % (self.vars, other.vars))

    def known(self, key):
        for v, e in zip(self.vars, key):
            if v in self.lo and e < self.lo[v]:
                return False
        if "deg" in self.lo:
            d = sum(e for v, e in zip(self.vars, key) if v not in ODD_VARS)
            if d < self.lo["deg"]:
                return False
        return True

    def coeff(self, exps):
        """Coefficient of a monomial given as dict or tuple."""
        if isinstance(exps, dict):
            exps = tuple(exps.get(v, 0) for v in self.vars)
        if not self.known(exps):
            raise TruncationError("coefficient %s lies below the truncation floor %s" % (exps, self.lo))
        return self.terms.get(tuple(exps), self.alg.zero())

    def restrict(self):
        """Drop terms in the unknown region."""
        return Series(self.alg, self.vars, {k: c for k, c in self.terms.items() if self.known(k)}, self.lo)

    def with_lo(self, lo):
        merged = dict(self.lo)
        for k, v in lo.items():
            if v is None:
                continue
            merged[k] = max(merged.get(k, v), v)
        return Series(self.alg, self.vars, self.terms, merged).restrict()

    def max_exp(self, var):
        i = self.vars.index(var)
        vals = [k[i] for k in self.terms]
        if var in self.lo:
            vals.append(self.lo[var] - 1)
        return max(vals) if vals else None

    def parity_parts(self):
        parts = {}
        for k, c in self.terms.items():
            oc = _odd_count(self.vars, k) & 1
            for p, cp in c.parity_parts().items():
                parts.setdefault((p + oc) & 1, {})[k] = cp
        return {p: Series(self.alg, self.vars, t, self.lo) for p, t in parts.items()}

    def parity(self):
        ps = list(self.parity_parts())
        if len(ps) > 1:
            raise ValueError("series is not homogeneous")
        return ps[0] if ps else 0

    # linear structure
    @staticmethod
    def _merge_lo(a, b):
        out = dict(a)
        for k, v in b.items():
            out[k] = max(out.get(k, v), v)
        return out

    def __add__(self, other):
        self._same(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k)
            v = c if v is None else v + c
            if v.terms:
                t[k] = v
            else:
                t.pop(k, None)
        out = Series(self.alg, self.vars, t, self._merge_lo(self.lo, other.lo))
        return out.restrict() if out.lo else out

    def __neg__(self):
        return Series(self.alg, self.vars, {k: -c for k, c in self.terms.items()}, self.lo)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return Series(self.alg, self.vars, {k: c.scale(s) for k, c in self.terms.items()}, self.lo)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.alg is other.alg and self.vars == other.vars and self.terms == other.terms and self.lo == other.lo

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def agrees(self, other):
        """True iff the two series coincide wherever both are known."""
        return (self - other).restrict().is_zero()

    # products
    def mul(self, other):
        """Series product; coefficients are moved past odd indeterminates."""
        self._same(other)
        vars_ = self.vars
        t = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                sign, k = mono_mul(vars_, k1, k2)
                a = c1.twist() if _odd_count(vars_, k2) & 1 else c1
                prod = (a * c2).scale(sign)
                v = t.get(k)
                v = prod if v is None else v + prod
                if v.terms:
                    t[k] = v
                else:
                    t.pop(k, None)
        if not (self.lo or other.lo):
            return Series(self.alg, vars_, t)
        # an unknown part of one factor spreads up to the top degree of the other
        lo = {}
        for v in set(self.lo) | set(other.lo):
            cands = []
            for x, y in ((self, other), (other, self)):
                if v in x.lo:
                    top = y._top(v)
                    if top is not None:
                        cands.append(x.lo[v] + top)
            if cands:
                lo[v] = max(cands)
        return Series(self.alg, vars_, t, lo).restrict()

    def _top(self, v):
        """Largest exponent (or even degree) that can occur, for floor bookkeeping."""
        if v == "deg":
            vals = [sum(e for w, e in zip(self.vars, k) if w not in ODD_VARS) + 1 for k in self.terms]
            if "deg" in self.lo:
                vals.append(self.lo["deg"])
            return max(vals) if vals else None
        if v not in self.vars:
            return 0
        i = self.vars.index(v)
        vals = [k[i] + 1 for k in self.terms]
        if v in self.lo:
            vals.append(self.lo[v])
        return max(vals) if vals else None

    def lmul(self, c):
        """c * self for a DiffPoly c (sign from moving c past odd indeterminates)."""
        if c.alg is not self.alg:
            raise AlgebraMismatch("coefficient from another algebra")
        tw = None
        t = {}
        for k, x in self.terms.items():
            if _odd_count(self.vars, k) & 1:
                if tw is None:
                    tw = c.twist()
                y = tw * x
            else:
                y = c * x
            if y.terms:
                t[k] = y
        return Series(self.alg, self.vars, t, self.lo)

    def rmul(self, c):
        if c.alg is not self.alg:
            raise AlgebraMismatch("coefficient from another algebra")
        return Series(self.alg, self.vars, {k: x * c for k, x in self.terms.items()}, self.lo)

    def lmul_outer(self, exps, sign=1):
        """Multiply on the left by an outer monomial given as dict var->exp."""
        m = Series.monomial(self.alg, self.vars, exps)
        out = m.mul(self)
        return out.scale(sign) if sign != 1 else out

    def twist(self):
        """(-1)^parity on each homogeneous term."""
        t = {}
        for k, c in self.terms.items():
            ct = c.twist()
            t[k] = -ct if _odd_count(self.vars, k) & 1 else ct
        return Series(self.alg, self.vars, t, self.lo)

    def map_coeffs(self, f, alg=None):
        alg = alg or self.alg
        return Series(alg, self.vars, {k: f(c) for k, c in self.terms.items()}, self.lo)

    def extend(self, vars_):
        """Embed into a series over a larger set of indeterminates."""
        vars_ = _norm_vars(vars_)
        for v in self.vars:
            if v not in vars_:
                raise ValueError("cannot drop variable %r" % v)
        t = {}
        for k, c in self.terms.items():
            d = dict(zip(self.vars, k))
            t[tuple(d.get(v, 0) for v in vars_)] = c
        return Series(self.alg, vars_, t, self.lo)

    def rename(self, mapping):
        """Rename indeterminates (e.g. l->m, x->g); the odd order must be kept."""
        new = tuple(mapping.get(v, v) for v in self.vars)
        order = sorted(range(len(new)), key=lambda i: VAR_ORDER.index(new[i]))
        vars_ = tuple(new[i] for i in order)
        t = {tuple(k[i] for i in order): c for k, c in self.terms.items()}
        lo = {mapping.get(k, k): v for k, v in self.lo.items()}
        return Series(self.alg, vars_, t, lo)

    def drop_vars(self):
        """Return the constant coefficient as a DiffPoly if no indeterminate occurs."""
        if any(any(k) for k in self.terms):
            raise ValueError("series still depends on its indeterminates")
        return self.coeff(tuple(0 for _ in self.vars))

    # printing
    def sorted_keys(self):
        def wt(k):
            return -sum((1 if v in ODD_VARS else 2) * e for v, e in zip(self.vars, k))
        return sorted(self.terms, key=lambda k: (wt(k), tuple(-e for e in k)))

    def to_text(self, fmt="text"):
        if not self.terms:
            body = "0"
        else:
            parts = []
            for k in self.sorted_keys():
                parts.extend(_term_texts(self.alg, self.vars, k, self.terms[k], fmt))
            body = " + ".join(parts).replace("+ -", "- ")
        names = LATEX if fmt == "latex" else DISPLAY
        if self.lo:
            body += " + O(%s)" % ", ".join("%s^%d" % (names.get(v, v), e - 1) for v, e in sorted(self.lo.items()))
        return latexify(body) if fmt == "latex" else body

    def __str__(self):
        return self.to_text()

    __repr__ = __str__


def _outer_str(vars_, k, fmt):
    parts = []
    for v, e in zip(vars_, k):
        if not e:
            continue
        name = LATEX[v] if fmt == "latex" else DISPLAY[v]
        if e == 1:
            parts.append(name)
        else:
            parts.append(("%s^{%d}" if fmt == "latex" else "%s^%d") % (name, e))
    return parts


def _term_texts(alg, vars_, k, c, fmt):
    outer = _outer_str(vars_, k, fmt)
    out = []
    from .diffalg import _term_key
    for (vm, pm) in sorted(c.terms, key=_term_key):
        coef = c.terms[(vm, pm)]
        parts = []
        if pm:
            parts.append(pmono_str(pm))
        parts.extend(outer)
        parts.extend(alg.var_name(v) for v in vm)
        out.append(term_str(coef, "*".join(parts)))
    return out


# ----------------------------------------------------------------------
# one-variable operators: series in (l) or (l, x)

def _check_one_var(S):
    if S.vars not in (("l",), ("l", "x")):
        raise ValueError("operator calculus needs a series in (l) or (l, x), got %s" % (S.vars,))


def lam_shift(S, n, floor=DEFAULT_FLOOR):
    """Apply (l + d)^n with d acting on the coefficients."""
    _check_one_var(S)
    t = {}
    truncated = False
    for key, g in S.terms.items():
        m = key[0]
        rest = key[1:]
        r = 0
        cur = g
        while cur.terms:
            if n >= 0 and r > n:
                break
            e = m + n - r
            if n < 0 and e < floor:
                truncated = True
                break
            c = cur.scale(binom(n, r))
            k2 = (e,) + rest
            v = t.get(k2)
            v = c if v is None else v + c
            if v.terms:
                t[k2] = v
            else:
                t.pop(k2, None)
            r += 1
            cur = cur.d()
    lo = {}
    if "l" in S.lo:
        lo["l"] = S.lo["l"] + n
    if truncated:
        lo["l"] = max(lo.get("l", floor), floor)
    return Series(S.alg, S.vars, t, lo).restrict() if lo else Series(S.alg, S.vars, t)


def chi_d(S):
    """Apply (x + D) on the left, using D x = -x D + 2 l."""
    if S.vars != ("l", "x"):
        raise ValueError("chi_d needs a series in (l, x)")
    t = {}

    def add(k, c):
        v = t.get(k)
        v = c if v is None else v + c
        if v.terms:
            t[k] = v
        else:
            t.pop(k, None)

    for (m, i), c in S.terms.items():
        if i == 0:
            add((m, 1), c)
            add((m, 0), c.derive())
        else:
            add((m + 1, 0), c)
            add((m, 1), -c.derive())
    lo = {"l": S.lo["l"] + 1} if "l" in S.lo else {}
    return Series(S.alg, S.vars, t, lo).restrict() if lo else Series(S.alg, S.vars, t)


def chi_d_power(S, n):
    for _ in range(n):
        S = chi_d(S)
    return S


def compose(F, G, floor=DEFAULT_FLOOR):
    """F(L + nabla) G(L): each term L^n x^i f of F acts as
    (-1)^{i p(f)} f (l+d)^n (x+D)^i on G."""
    _check_one_var(F)
    F._same(G)
    susy = F.vars == ("l", "x")
    out = Series.zero(F.alg, F.vars)
    for key, f in F.terms.items():
        n = key[0]
        i = key[1] if susy else 0
        H = chi_d(G) if i else G
        H = lam_shift(H, n, floor)
        out = out + H.lmul(f.twist() if i else f)
    if "l" in F.lo:
        top = G.max_exp("l")
        if top is not None:
            out = out.with_lo({"l": F.lo["l"] + top + 1 + (1 if susy else 0)})
    return out


def compose_chain(factors, floor=DEFAULT_FLOOR):
    """F1(L+nabla) F2(L+nabla) ... Fr(L), evaluated right to left."""
    out = factors[-1]
    for F in reversed(factors[:-1]):
        out = compose(F, out, floor)
    return out


def apply_operator(F, target, floor=DEFAULT_FLOOR):
    """F(L + nabla) applied to a DiffPoly target, returned as a series."""
    return compose(F, Series.const(target, F.vars), floor)


def substitute_arrow(F, target, floor=DEFAULT_FLOOR):
    """Evaluate {.. L+nabla ..}_-> target; a series, or a DiffPoly when no L is left."""
    out = apply_operator(F, target, floor)
    if out.is_exact() and all(not any(k) for k in out.terms):
        return out.coeff(tuple(0 for _ in out.vars))
    return out


def adjoint_series(S, floor=DEFAULT_FLOOR):
    """Substitute L -> -L - nabla with nabla acting on the coefficients."""
    _check_one_var(S)
    susy = S.vars == ("l", "x")
    out = Series.zero(S.alg, S.vars)
    for key, c in S.terms.items():
        n = key[0]
        i = key[1] if susy else 0
        T = Series.const(c, S.vars)
        if i:
            T = -chi_d(T)
        T = lam_shift(T, n, floor)
        if n % 2:
            T = -T
        out = out + T
    if "l" in S.lo:
        out = out.with_lo({"l": S.lo["l"] + (1 if susy else 0)})
    return out


substitute_left = adjoint_series


def iota_expand(m, order, alg, floor=None):
    """Expansion of (l + m)^power in the domain |mu| > |lambda|, up to
    lambda^order.  Positive powers are exact."""
    power = m
    vars_ = ("l", "m")
    t = {}
    if power >= 0:
        for j in range(power + 1):
            t[(j, power - j)] = alg.const(Scalar.coerce(binom(power, j)))
        return Series(alg, vars_, t)
    for j in range(order + 1):
        t[(j, power - j)] = alg.const(Scalar.coerce(binom(power, j)))
    return Series(alg, vars_, t, {"m": power - order})


def substitute_sum(S, floor=DEFAULT_FLOOR):
    """Replace n -> l + m (iota_{mu,lambda} expansion) and z -> x + g."""
    if "n" not in S.vars:
        raise ValueError("series has no variable n")
    susy = "z" in S.vars
    new_vars = tuple(v for v in S.vars if v not in ("n", "z"))
    for v in ("l", "m"):
        if v not in new_vars:
            new_vars = tuple(sorted(new_vars + (v,), key=VAR_ORDER.index))
    if susy:
        for v in ("x", "g"):
            if v not in new_vars:
                new_vars = tuple(sorted(new_vars + (v,), key=VAR_ORDER.index))
    alg = S.alg
    out = Series.zero(alg, new_vars)
    truncated = False
    pmax = S.max_exp("n")
    for key, c in S.terms.items():
        d = dict(zip(S.vars, key))
        p = d.pop("n")
        q = d.pop("z", 0)
        # the coefficient sits to the right, so expand the monomial part first
        head = Series.monomial(alg, new_vars, d)
        if p >= 0:
            nu = Series(alg, new_vars, {tuple(j if v == "l" else (p - j if v == "m" else 0) for v in new_vars): alg.const(binom(p, j)) for j in range(p + 1)})
        else:
            jmax = p - floor
            if jmax < 0:
                truncated = True
                continue
            nu = Series(alg, new_vars, {tuple(j if v == "l" else (p - j if v == "m" else 0) for v in new_vars): alg.const(binom(p, j)) for j in range(jmax + 1)})
            truncated = True
        expr = head.mul(nu)
        if q:
            zeta = Series(alg, new_vars, {tuple(1 if v == w else 0 for v in new_vars): alg.one() for w in ("x", "g")})
            expr = expr.mul(zeta)
        out = out + expr.rmul(c)
    lo = {}
    if truncated:
        lo["m"] = floor
    if "n" in S.lo:
        lo["m"] = max(lo.get("m", S.lo["n"]), S.lo["n"])
    if "l" in S.lo and pmax is not None:
        lo["deg"] = S.lo["l"] + pmax + 2
    if "m" in S.lo and pmax is not None:
        lo["m"] = max(lo.get("m", S.lo["m"] + pmax), S.lo["m"] + max(pmax, 0))
    if "deg" in S.lo:
        lo["deg"] = max(lo.get("deg", S.lo["deg"] + 1), S.lo["deg"] + 1)
    return out.with_lo(lo) if lo else out


class AdmissibilityResult:
    def __init__(self, status, order, detail=""):
        self.status = status
        self.order = order
        self.detail = detail

    def __bool__(self):
        return self.status == "true"

    def __repr__(self):
        return "AdmissibilityResult(%s at order %d%s)" % (self.status, self.order, ", " + self.detail if self.detail else "")


def admissibility_check(S, order):
    """Test whether a (l, m) series, read as an iota_{mu,lambda} expansion,
    is compatible with an element of R[[l^-1, m^-1, (l+m)^-1]][l, m].

    For each total degree d the homogeneous part is a series in t = l/m.
    It must be annihilated, in the known window, by (1 + t)^r for some
    r <= order (tails of geometric type (l+m)^-r).  Exact Laurent
    polynomials are always admissible.  Otherwise the result is 'true'
    when every degree passes and 'inconclusive' when some degree cannot be
    confirmed inside the known window; a truncated series is never
    reported as inadmissible."""
    if "l" not in S.vars or "m" not in S.vars:
        raise ValueError("admissibility needs a series in l and m")
    restricted = S.restrict()
    if S.is_exact():
        return AdmissibilityResult("true", order, "exact Laurent polynomial")
    il, im = S.vars.index("l"), S.vars.index("m")
    by_deg = {}
    for k, c in restricted.terms.items():
        rest = tuple(e for j, e in enumerate(k) if j not in (il, im))
        by_deg.setdefault((k[il] + k[im], rest), {})[k[il]] = (k, c)
    lo_l = S.lo.get("l")
    lo_m = S.lo.get("m")
    lo_deg = S.lo.get("deg")
    inconclusive = False
    for (d, rest), coeffs in sorted(by_deg.items()):
        if lo_deg is not None and d < lo_deg:
            continue
        top = d - lo_m if lo_m is not None else max(coeffs)
        low = lo_l if lo_l is not None else min(coeffs)
        if top - low + 1 < 2 * order + 1:
            inconclusive = True
            continue
        ok = False
        for r in range(order + 1):
            # coefficients of (1+t)^r h(t) on the top `order` known positions
            bad = False
            for pos in range(top - order + 1, top + 1):
                acc = None
                for s in range(r + 1):
                    j = pos - s
                    if j < low:
                        continue
                    if j in coeffs:
                        c = coeffs[j][1].scale(binom(r, s))
                        acc = c if acc is None else acc + c
                if acc is not None and acc.terms:
                    bad = True
                    break
            if not bad:
                ok = True
                break
        if not ok:
            # a finite window cannot refute admissibility: the numerator
            # degree may exceed what is visible
            inconclusive = True
    if inconclusive:
        return AdmissibilityResult("inconclusive", order, "known window too short")
    return AdmissibilityResult("true", order)
