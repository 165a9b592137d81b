"""Free differential superalgebras C[u_i^(m)] (even derivation) and
C[u_i^[n]] (odd derivation D, with d = D^2), over the scalar ring of
scalars.py.

A derivative variable is a pair (g, order) where g is the position of the
generator in the algebra.  A variable monomial is a sorted tuple of
variables; odd variables appear at most once.  A DiffPoly maps
(variable monomial, parameter monomial) to a Fraction.
"""

import re
from collections import namedtuple

from .rational import Fraction

from .scalars import Scalar, pmono_mul, pmono_str, term_str, to_fraction


class AlgebraMismatch(ValueError):
    pass


Generator = namedtuple("Generator", "index name parity")


class DiffAlgebra:
    """Context for a free differential superalgebra.

    generators: list of (index, name, parity) or Generator; kind is 'even'
    for a derivation d of even parity, 'odd' for an odd derivation D.
    """

    def __init__(self, generators, kind="even", params=("k",), name=""):
        gens = [g if isinstance(g, Generator) else Generator(*g) for g in generators]
        gens.sort(key=lambda g: g.index)
        ids = [g.index for g in gens]
        if len(set(ids)) != len(ids):
            raise ValueError("generator indices must be unique")
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        if kind not in ("even", "odd"):
            raise ValueError("kind must be 'even' or 'odd'")
        self.gens = tuple(Generator(g.index, g.name, g.parity % 2) for g in gens)
        self.kind = kind
        self.odd = kind == "odd"
        self.params = tuple(params)
        self.name = name
        self.gpar = tuple(g.parity for g in self.gens)
        self.pos = {g.name: i for i, g in enumerate(self.gens)}

    def __repr__(self):
        return "DiffAlgebra(%s, %s)" % (self.name or [g.name for g in self.gens], self.kind)

    # variables
    def vpar(self, v):
        g, o = v
        if self.odd:
            return (self.gpar[g] + o) & 1
        return self.gpar[g]

    def mono_parity(self, mono):
        p = 0
        for v in mono:
            p ^= self.vpar(v)
        return p

    def canon(self, vs):
        """Sort a list of variables; return (sign, monomial) or (0, None)."""
        vs = list(vs)
        sign = 1
        for i in range(1, len(vs)):
            j = i
            while j > 0 and vs[j - 1] > vs[j]:
                if self.vpar(vs[j - 1]) and self.vpar(vs[j]):
                    sign = -sign
                vs[j - 1], vs[j] = vs[j], vs[j - 1]
                j -= 1
        for i in range(len(vs) - 1):
            if vs[i] == vs[i + 1] and self.vpar(vs[i]):
                return 0, None
        return sign, tuple(vs)

    def merge(self, v1, v2):
        """Product of two sorted monomials: (sign, monomial) or (0, None)."""
        vpar = self.vpar
        out = []
        sign = 1
        i = j = 0
        n1, n2 = len(v1), len(v2)
        # odd letters of v1 not yet placed
        odd_left = sum(1 for v in v1 if vpar(v))
        while i < n1 and j < n2:
            a, b = v1[i], v2[j]
            if a <= b:
                if a == b and vpar(a):
                    return 0, None
                out.append(a)
                if vpar(a):
                    odd_left -= 1
                i += 1
            else:
                if odd_left & 1 and vpar(b):
                    sign = -sign
                out.append(b)
                j += 1
        out.extend(v1[i:])
        out.extend(v2[j:])
        return sign, tuple(out)

    def bump(self, vm, idx):
        """Raise the order of vm[idx] by one and re-sort: (sign, monomial)."""
        g, o = vm[idx]
        w = (g, o + 1)
        rest = vm[:idx] + vm[idx + 1:]
        pos = idx
        n = len(rest)
        while pos < n and rest[pos] < w:
            pos += 1
        if pos < n and rest[pos] == w and self.vpar(w):
            return 0, None
        sign = 1
        if self.vpar(w):
            passed = 0
            for v in rest[idx:pos]:
                if self.vpar(v):
                    passed ^= 1
            if passed:
                sign = -1
        return sign, rest[:pos] + (w,) + rest[pos:]

    # constructors
    def zero(self):
        return DiffPoly(self, {})

    def one(self):
        return DiffPoly(self, {((), ()): Fraction(1)})

    def const(self, c):
        c = Scalar.coerce(c)
        return DiffPoly(self, {((), m): v for m, v in c.terms.items()})

    def var(self, g, order=0):
        if isinstance(g, str):
            g = self.pos[g]
        return DiffPoly(self, {(((g, order),), ()): Fraction(1)})

    def gen(self, name):
        return self.var(name, 0)

    def generator_by_name(self, name):
        return self.gens[self.pos[name]]

    def var_name(self, v):
        g, o = v
        n = self.gens[g].name
        if o == 0:
            return n
        letter = "D" if self.odd else "d"
        if o == 1:
            return "%s(%s)" % (letter, n)
        return "%s^%d(%s)" % (letter, o, n)


class DiffPoly:
    """Element of a free differential superalgebra. Immutable."""

    __slots__ = ("alg", "terms", "_deriv")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = terms
        self._deriv = None

    # basic queries
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if other.alg is not self.alg:
            raise AlgebraMismatch("operands belong to different algebra contexts")

    def _lift(self, x):
        if isinstance(x, DiffPoly):
            self._check(x)
            return x
        return self.alg.const(x)

    def parity(self):
        """Parity of a homogeneous element (0 for zero); raises otherwise."""
        ps = {self.alg.mono_parity(vm) for vm, _ in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def parity_parts(self):
        """Return {parity: part} for the nonzero homogeneous parts."""
        parts = {}
        for key, c in self.terms.items():
            p = self.alg.mono_parity(key[0])
            parts.setdefault(p, {})[key] = c
        return {p: DiffPoly(self.alg, t) for p, t in parts.items()}

    def twist(self):
        """Sum of (-1)^parity * term."""
        am = self.alg.mono_parity
        return DiffPoly(self.alg, {k: (-c if am(k[0]) else c) for k, c in self.terms.items()})

    def is_constant(self):
        return all(k[0] == () for k in self.terms)

    def constant_scalar(self):
        return Scalar({k[1]: c for k, c in self.terms.items() if k[0] == ()})

    def variables(self):
        return {v for k in self.terms for v in k[0]}

    def coefficients(self):
        """Map variable monomial -> Scalar."""
        out = {}
        for (vm, pm), c in self.terms.items():
            out.setdefault(vm, {})[pm] = c
        return {vm: Scalar(t) for vm, t in out.items()}

    def max_order(self):
        return max((o for _, o in self.variables()), default=-1)

    # ring structure
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for k, c in other.terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return DiffPoly(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, s):
        if isinstance(s, (int, Fraction)):
            if not s:
                return self.alg.zero()
            return DiffPoly(self.alg, {k: c * s for k, c in self.terms.items()})
        s = Scalar.coerce(s)
        t = {}
        for (vm, pm), c in self.terms.items():
            for m2, c2 in s.terms.items():
                key = (vm, pmono_mul(pm, m2))
                v = t.get(key, 0) + c * c2
                if v:
                    t[key] = v
                else:
                    t.pop(key, None)
        return DiffPoly(self.alg, t)

    def __mul__(self, other):
        if not isinstance(other, DiffPoly):
            return self.scale(other if isinstance(other, (int, Fraction)) else Scalar.coerce(other))
        self._check(other)
        alg = self.alg
        t = {}
        for (v1, p1), c1 in self.terms.items():
            for (v2, p2), c2 in other.terms.items():
                if not v1:
                    sign, vm = 1, v2
                elif not v2:
                    sign, vm = 1, v1
                else:
                    sign, vm = alg.merge(v1, v2)
                    if not sign:
                        continue
                key = (vm, pmono_mul(p1, p2))
                v = t.get(key, 0) + sign * c1 * c2
                if v:
                    t[key] = v
                else:
                    t.pop(key, None)
        return DiffPoly(alg, t)

    def __rmul__(self, other):
        return self.scale(other if isinstance(other, (int, Fraction)) else Scalar.coerce(other))

    def __pow__(self, n):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, DiffPoly):
            return self.alg is other.alg and self.terms == other.terms
        try:
            return self.terms == self.alg.const(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # derivations
    def derive(self):
        """Apply the algebra's derivation (d for even kind, D for odd kind)."""
        if self._deriv is None:
            self._deriv = self._derive()
        return self._deriv

    def _derive(self):
        alg = self.alg
        odd = alg.odd
        t = {}
        for (vm, pm), c in self.terms.items():
            before = 0
            for idx, (g, o) in enumerate(vm):
                sign = -1 if (odd and before) else 1
                before ^= alg.vpar((g, o))
                s2, nm = alg.bump(vm, idx)
                if not s2:
                    continue
                key = (nm, pm)
                v = t.get(key, 0) + sign * s2 * c
                if v:
                    t[key] = v
                else:
                    t.pop(key, None)
        return DiffPoly(alg, t)

    def d(self, n=1):
        """Even derivation d applied n times (d = D^2 in the odd case)."""
        out = self
        steps = 2 * n if self.alg.odd else n
        for _ in range(steps):
            out = out.derive()
        return out

    def partial(self, v):
        """Left partial derivative with respect to the variable v=(g, order)."""
        alg = self.alg
        pv = alg.vpar(v)
        t = {}
        for (vm, pm), c in self.terms.items():
            if v not in vm:
                continue
            idx = vm.index(v)
            mult = vm.count(v)
            sign = 1
            if pv:
                before = 0
                for w in vm[:idx]:
                    before ^= alg.vpar(w)
                sign = -1 if before else 1
            nm = vm[:idx] + vm[idx + 1:]
            key = (nm, pm)
            val = t.get(key, 0) + sign * mult * c
            if val:
                t[key] = val
            else:
                t.pop(key, None)
        return DiffPoly(alg, t)

    def rpartial(self, v):
        """Right partial derivative: f = sum (df/dv) v with v moved to the right."""
        alg = self.alg
        pv = alg.vpar(v)
        t = {}
        for (vm, pm), c in self.terms.items():
            if v not in vm:
                continue
            idx = vm.index(v)
            mult = vm.count(v)
            sign = 1
            if pv:
                after = 0
                for w in vm[idx + 1:]:
                    after ^= alg.vpar(w)
                sign = -1 if after else 1
            nm = vm[:idx] + vm[idx + 1:]
            key = (nm, pm)
            val = t.get(key, 0) + sign * mult * c
            if val:
                t[key] = val
            else:
                t.pop(key, None)
        return DiffPoly(alg, t)

    def substitute(self, images, target):
        """Differential algebra homomorphism into `target` sending generator
        position g to images[g] (a DiffPoly of target)."""
        cache = {}

        def img(v):
            if v not in cache:
                g, o = v
                x = images[g]
                for _ in range(o):
                    x = x.derive()
                cache[v] = x
            return cache[v]

        out = target.zero()
        for (vm, pm), c in self.terms.items():
            term = target.const(Scalar({pm: c}))
            for v in vm:
                term = term * img(v)
            out = out + term
        return out

    def map_scalars(self, f):
        """Apply f: Scalar -> Scalar to every coefficient."""
        out = {}
        for vm, s in self.coefficients().items():
            for pm, c in f(s).terms.items():
                out[(vm, pm)] = c
        return DiffPoly(self.alg, out)

    # printing
    def sort_key(self):
        return sorted(self.terms)

    def __str__(self):
        return self.to_text()

    __repr__ = __str__

    def to_text(self, fmt="text"):
        if not self.terms:
            return "0"
        out = []
        for (vm, pm) in sorted(self.terms, key=_term_key):
            c = self.terms[(vm, pm)]
            out.append(term_str(c, _body(self.alg, vm, pm, fmt)))
        return latexify(_join(out)) if fmt == "latex" else _join(out)


def _term_key(key):
    vm, pm = key
    return (-len(vm), vm, pm)


def _body(alg, vm, pm, fmt="text"):
    parts = []
    if pm:
        parts.append(pmono_str(pm))
    parts.extend(alg.var_name(v) for v in vm)
    return "*".join(parts)


_LATEX_RULES = [
    (re.compile(r"\((\d+)/(\d+)\)"), r"\\frac{\1}{\2}"),
    (re.compile(r"\bd\^(\d+)\((\w+)\)"), r"\\partial^{\1} \2"),
    (re.compile(r"\bd\((\w+)\)"), r"\\partial \1"),
    (re.compile(r"\bD\^(\d+)\((\w+)\)"), r"D^{\1} \2"),
    (re.compile(r"\bD\((\w+)\)"), r"D \1"),
    (re.compile(r"(?<=\w)\^(-?\d+)"), r"^{\1}"),
    (re.compile(r"\b([A-Za-z]+)_(\w+)"), r"\1_{\2}"),
    (re.compile(r"\*"), " "),
]


def latexify(text):
    """Turn the ASCII form of an expression into LaTeX."""
    for pat, rep in _LATEX_RULES:
        text = pat.sub(rep, text)
    return text


def _join(parts):
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def random_diffpoly(alg, rng, max_degree=3, max_order=2, nterms=3, parity=None, coeffs=(-2, -1, 1, 2, Fraction(1, 2))):
    """Seeded random homogeneous element used by the property suites."""
    for _ in range(200):
        out = alg.zero()
        for _ in range(nterms):
            deg = rng.randint(1, max_degree)
            vs = [(rng.randrange(len(alg.gens)), rng.randint(0, max_order)) for _ in range(deg)]
            sign, vm = alg.canon(vs)
            if not sign:
                continue
            if parity is not None and alg.mono_parity(vm) != parity:
                continue
            if parity is None and not out.is_zero() and alg.mono_parity(vm) != out.parity():
                continue
            c = to_fraction(rng.choice(coeffs))
            pm = (("k", 1),) if alg.params and rng.random() < 0.3 else ()
            out = out + DiffPoly(alg, {(vm, pm): c})
        if not out.is_zero():
            return out
    return alg.one() if parity in (None, 0) else alg.var(_odd_var(alg))


def _odd_var(alg):
    for g in range(len(alg.gens)):
        for o in range(2):
            if alg.vpar((g, o)):
                return (g, o)
    raise ValueError("algebra has no odd variables")
