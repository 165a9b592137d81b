"""Parser for the ASCII expression grammar used in reports and golden files,
e.g. (3/2)*k*d^2(u_1)*u_2, D^3(t_1), or series such as
-(1/2)*k^3*L^3 + 2*k*L*F + k*d(F) + O(L^-9)."""

import re

from .diffalg import DiffPoly
from .rational import Fraction
from .scalars import Scalar
from .series import Series, DISPLAY, ODD_VARS, VAR_ORDER

OUTER = {v: k for k, v in DISPLAY.items()}


class ParseError(ValueError):
    def __init__(self, msg, line=1, col=1):
        super().__init__("line %d, column %d: %s" % (line, col, msg))
        self.msg = msg
        self.line = line
        self.col = col


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")


def _tokens(text, line):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            while text[pos].isspace():
                pos += 1
            raise ParseError("unexpected character %r" % text[pos], line, pos + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text, alg, vars_, line):
        self.toks = _tokens(text, line)
        self.i = 0
        self.alg = alg
        self.vars = vars_
        self.line = line

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            raise ParseError("expected %r, found %r" % (val, t[1] or "end of input"), self.line, t[2])
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def integer(self):
        neg = False
        if self.peek()[1] == "-":
            self.take()
            neg = True
        t = self.take()
        if t[0] != "num":
            self.error("expected an integer", t)
        return -int(t[1]) if neg else int(t[1])

    def parse(self):
        terms = []
        lo = {}
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            if self.peek()[1] == "O" and self.peek(1)[1] == "(" and self.vars:
                lo = self.order_term()
            else:
                terms.append((sign, self.term()))
            t = self.peek()
            if t[0] == "end":
                break
            if t[1] not in ("+", "-"):
                self.error("expected '+', '-' or end of input")
            sign = -1 if self.take()[1] == "-" else 1
        return terms, lo

    def order_term(self):
        self.take()
        self.expect("(")
        lo = {}
        while True:
            t = self.take()
            if t[1] not in OUTER or OUTER[t[1]] not in self.vars:
                self.error("unknown indeterminate in O(...)", t)
            e = 1
            if self.peek()[1] == "^":
                self.take()
                e = self.integer()
            lo[OUTER[t[1]]] = e + 1
            if self.peek()[1] == ",":
                self.take()
                continue
            self.expect(")")
            return lo

    def term(self):
        coef = Fraction(1)
        scal = Scalar.coerce(1)
        outer = {}
        odd_seen = []
        factors = []
        parity = 0
        sign = 1
        while True:
            t = self.peek()
            if t[0] == "num":
                coef *= int(self.take()[1])
            elif t[1] == "(":
                self.take()
                num = self.integer()
                self.expect("/")
                den = self.integer()
                self.expect(")")
                if den == 0:
                    self.error("zero denominator", t)
                coef *= Fraction(num, den)
            elif t[0] == "name":
                name = self.take()[1]
                if name in ("d", "D") and self.peek()[1] in ("(", "^") and name not in self.alg.pos:
                    order = 1
                    if self.peek()[1] == "^":
                        self.take()
                        order = self.integer()
                    if (name == "D") != self.alg.odd:
                        self.error("derivation %s does not match the algebra" % name, t)
                    self.expect("(")
                    g = self.take()
                    if g[1] not in self.alg.pos:
                        self.error("unknown generator %r" % g[1], g)
                    self.expect(")")
                    factors.append((self.alg.pos[g[1]], order))
                    parity += self.alg.vpar((self.alg.pos[g[1]], order))
                elif name in self.alg.pos:
                    factors.append((self.alg.pos[name], 0))
                    parity += self.alg.vpar((self.alg.pos[name], 0))
                elif name in self.alg.params:
                    e = 1
                    if self.peek()[1] == "^":
                        self.take()
                        e = self.integer()
                        if e < 0:
                            self.error("negative power of a parameter", t)
                    scal = scal * Scalar.param(name, e)
                elif name in OUTER and OUTER[name] in self.vars:
                    v = OUTER[name]
                    e = 1
                    if self.peek()[1] == "^":
                        self.take()
                        e = self.integer()
                    if v in ODD_VARS:
                        if e not in (0, 1):
                            self.error("odd indeterminate with exponent %d" % e, t)
                        if e:
                            later = sum(1 for w in odd_seen if VAR_ORDER.index(w) > VAR_ORDER.index(v))
                            if (parity + later) % 2:
                                sign = -sign
                            odd_seen.append(v)
                    outer[v] = outer.get(v, 0) + e
                else:
                    self.error("unknown symbol %r" % name, t)
            else:
                self.error("expected a factor")
            if self.peek()[1] != "*":
                return sign * coef, scal, outer, factors
            self.take()


def _build(parsed, alg):
    coef, scal, outer, factors = parsed
    x = alg.const(scal * coef)
    for v in factors:
        x = x * alg.var(*v)
    return x


def parse_diffpoly(text, alg, line=1):
    p = _Parser(text, alg, (), line)
    terms, _ = p.parse()
    out = alg.zero()
    for sign, t in terms:
        if t[2]:
            raise ParseError("indeterminate in a differential polynomial", line, 1)
        x = _build(t, alg)
        out = out + (x if sign > 0 else -x)
    return out


def parse_series(text, alg, vars_=None, line=1):
    vars_ = tuple(vars_ or (("l", "x") if alg.odd else ("l",)))
    p = _Parser(text, alg, vars_, line)
    terms, lo = p.parse()
    out = Series.zero(alg, vars_)
    for sign, t in terms:
        x = _build(t, alg)
        key = {v: e for v, e in t[2].items()}
        S = Series.monomial(alg, vars_, key, x)
        out = out + (S if sign > 0 else -S)
    return out.with_lo(lo) if lo else out


def parse_lines(text, alg):
    """One differential polynomial per non-empty line; '#' starts a comment."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        out.append(parse_diffpoly(body, alg, line=n))
    return out


def render(x, fmt="text"):
    if isinstance(x, (DiffPoly, Series)):
        return x.to_text("latex" if fmt == "latex" else "text")
    return str(x)
