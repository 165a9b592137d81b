"""Finite-dimensional Lie superalgebras with an invariant form, gradings by
an sl2 / osp(1|2) element, dual bases and the projection a -> a^#.

Elements are tuples of Fractions in the coordinates of the given basis.
Linear algebra over Q is done with sympy.
"""

import json
from .rational import Fraction
from itertools import product

import sympy

from .scalars import to_fraction


class InvalidAlgebra(ValueError):
    pass


def _frac(x):
    if isinstance(x, sympy.Basic):
        r = sympy.Rational(x)
        return Fraction(int(r.p), int(r.q))
    return to_fraction(x)


def _mat(cols):
    """sympy Matrix whose columns are the given vectors."""
    if not cols:
        return None
    return sympy.Matrix([[sympy.Rational(c.numerator, c.denominator) for c in col] for col in cols]).T


def nullspace(rows_or_cols, n):
    """Nullspace of the linear map with the given column images (dim n domain)."""
    m = _mat(rows_or_cols)
    if m is None:
        return []
    out = []
    for v in m.nullspace():
        vec = [_frac(x) for x in v]
        lead = next(x for x in vec if x)
        out.append(tuple(x / lead for x in vec))
    return out


class LieSuperalgebra:
    """Structure constants c_ij^k, parities and an even supersymmetric form."""

    def __init__(self, names, parities, brackets, form, name="", triple=None, params=("k",), ids=None):
        self.names = list(names)
        self.parities = [p % 2 for p in parities]
        self.dim = len(self.names)
        self.ids = list(ids) if ids is not None else list(range(self.dim))
        self.index = {n: i for i, n in enumerate(self.names)}
        self.name = name
        self.params = tuple(params)
        # brackets: dict (i, j) -> dict k -> Fraction ; fill by skewsymmetry
        br = {}
        for (i, j), vals in brackets.items():
            br[(i, j)] = {k: _frac(c) for k, c in vals.items() if _frac(c)}
        for (i, j), vals in list(br.items()):
            if (j, i) not in br:
                s = -(-1) ** (self.parities[i] * self.parities[j])
                br[(j, i)] = {k: s * c for k, c in vals.items()}
        self.struct = br
        fm = {}
        for (i, j), c in form.items():
            fm[(i, j)] = _frac(c)
        for (i, j), c in list(fm.items()):
            if (j, i) not in fm:
                fm[(j, i)] = (-1) ** (self.parities[i] * self.parities[j]) * c
        self.formvals = {k: v for k, v in fm.items() if v}
        self.triple = {}
        for key, val in (triple or {}).items():
            self.triple[key] = self.element(val)

    # elements
    def basis_vector(self, i):
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dim))

    def element(self, spec):
        """A basis name, a dict name -> coefficient, or a coordinate tuple."""
        if isinstance(spec, str):
            return self.basis_vector(self.index[spec])
        if isinstance(spec, dict):
            v = [Fraction(0)] * self.dim
            for n, c in spec.items():
                v[self.index[n]] += _frac(c)
            return tuple(v)
        return tuple(_frac(c) for c in spec)

    def zero(self):
        return (Fraction(0),) * self.dim

    def bracket(self, x, y):
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.struct.get((i, j), {}).items():
                    out[k] += a * b * c
        return tuple(out)

    def form(self, x, y):
        s = Fraction(0)
        for (i, j), c in self.formvals.items():
            if x[i] and y[j]:
                s += x[i] * y[j] * c
        return s

    def parity_of(self, x):
        ps = {self.parities[i] for i, a in enumerate(x) if a}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0

    def ad(self, x):
        """Columns of ad x in the basis."""
        return [self.bracket(x, self.basis_vector(i)) for i in range(self.dim)]

    def pretty(self, x):
        parts = []
        for i, a in enumerate(x):
            if a:
                parts.append("%s*%s" % (a, self.names[i]) if a != 1 else self.names[i])
        return " + ".join(parts) if parts else "0"

    # axioms
    def validate(self):
        """Report: list of (axiom, ok, witness)."""
        rep = []
        B = [self.basis_vector(i) for i in range(self.dim)]
        P = self.parities

        def first(gen):
            for w in gen:
                return w
            return None

        def sk():
            for i, j in product(range(self.dim), repeat=2):
                lhs = self.bracket(B[i], B[j])
                rhs = self.bracket(B[j], B[i])
                s = -(-1) ** (P[i] * P[j])
                if any(a != s * b for a, b in zip(lhs, rhs)):
                    yield (self.names[i], self.names[j])

        def par():
            for (i, j), vals in self.struct.items():
                for k in vals:
                    if P[k] != (P[i] + P[j]) % 2:
                        yield (self.names[i], self.names[j], self.names[k])

        def jac():
            for i, j, k in product(range(self.dim), repeat=3):
                a, b, c = B[i], B[j], B[k]
                t1 = self.bracket(a, self.bracket(b, c))
                t2 = self.bracket(self.bracket(a, b), c)
                t3 = self.bracket(b, self.bracket(a, c))
                s = (-1) ** (P[i] * P[j])
                if any(x != y + s * z for x, y, z in zip(t1, t2, t3)):
                    yield (self.names[i], self.names[j], self.names[k])

        def fsym():
            for (i, j), c in self.formvals.items():
                if self.formvals.get((j, i), 0) != (-1) ** (P[i] * P[j]) * c:
                    yield (self.names[i], self.names[j])

        def feven():
            for (i, j) in self.formvals:
                if P[i] != P[j]:
                    yield (self.names[i], self.names[j])

        def finv():
            for i, j, k in product(range(self.dim), repeat=3):
                if self.form(self.bracket(B[i], B[j]), B[k]) != self.form(B[i], self.bracket(B[j], B[k])):
                    yield (self.names[i], self.names[j], self.names[k])

        for name, fn in (("parity", par), ("skewsymmetry", sk), ("jacobi", jac),
                         ("form-supersymmetric", fsym), ("form-even", feven), ("form-invariant", finv)):
            w = first(fn())
            rep.append((name, w is None, w))
        return rep

    def is_valid(self):
        return all(ok for _, ok, _ in self.validate())

    # serialization
    def to_json(self):
        br = []
        for (i, j), vals in sorted(self.struct.items()):
            if i <= j and vals:
                br.append([self.ids[i], self.ids[j], [{"k": self.ids[k], "coeff": str(c)} for k, c in sorted(vals.items())]])
        fm = [[self.ids[i], self.ids[j], str(c)] for (i, j), c in sorted(self.formvals.items()) if i <= j]
        trip = {}
        for key, v in self.triple.items():
            nz = [(self.names[i], a) for i, a in enumerate(v) if a]
            if len(nz) == 1 and nz[0][1] == 1:
                trip[key] = nz[0][0]
            else:
                trip[key] = {n: str(a) for n, a in nz}
        return {
            "name": self.name,
            "parameters": list(self.params),
            "basis": [{"id": self.ids[i], "name": self.names[i], "parity": self.parities[i]} for i in range(self.dim)],
            "brackets": br,
            "form": fm,
            "triple": trip,
        }


def load_algebra(data):
    """Build a LieSuperalgebra from the JSON structure (dict or path)."""
    if isinstance(data, str):
        with open(data) as fh:
            data = json.load(fh)
    try:
        basis = data["basis"]
        ids = [b["id"] for b in basis]
        names = [b["name"] for b in basis]
        pars = [int(b["parity"]) for b in basis]
    except (KeyError, TypeError) as exc:
        raise InvalidAlgebra("malformed basis entry: %s" % exc)
    pos = {bid: i for i, bid in enumerate(ids)}
    pos.update({n: i for i, n in enumerate(names)})

    def ix(x):
        if x not in pos:
            raise InvalidAlgebra("unknown basis element %r" % (x,))
        return pos[x]

    brackets = {}
    for entry in data.get("brackets", []):
        i, j, vals = entry
        d = {}
        for item in vals:
            d[ix(item["k"])] = _frac(str(item["coeff"]))
        brackets[(ix(i), ix(j))] = d
    form = {}
    for i, j, c in data.get("form", []):
        form[(ix(i), ix(j))] = _frac(str(c))
    g = LieSuperalgebra(names, pars, brackets, form, name=data.get("name", ""),
                        triple=data.get("triple"), params=tuple(data.get("parameters", ["k"])), ids=ids)
    return g


def from_supermatrices(names, mats, row_parities, name="", triple=None):
    """Lie superalgebra spanned by the given supermatrices (lists of rows),
    with the supercommutator and the supertrace form str(AB)."""
    n = len(row_parities)

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    def mpar(a):
        ps = {(row_parities[i] + row_parities[j]) % 2 for i in range(n) for j in range(n) if a[i][j]}
        if len(ps) != 1:
            raise InvalidAlgebra("matrix is not homogeneous")
        return ps.pop()

    mats = [[[_frac(x) for x in row] for row in m] for m in mats]
    pars = [mpar(m) for m in mats]
    flat = [tuple(x for row in m for x in row) for m in mats]
    M = _mat(flat)

    def coords(m):
        v = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for row in m for x in row])
        sol, params = M.gauss_jordan_solve(v)
        return [_frac(x) for x in sol]

    br = {}
    form = {}
    for i, a in enumerate(mats):
        for j, b in enumerate(mats):
            s = (-1) ** (pars[i] * pars[j])
            ab, ba = mul(a, b), mul(b, a)
            c = [[ab[r][t] - s * ba[r][t] for t in range(n)] for r in range(n)]
            co = coords(c)
            br[(i, j)] = {k: x for k, x in enumerate(co) if x}
            st = sum((-1) ** row_parities[r] * ab[r][r] for r in range(n))
            if st:
                form[(i, j)] = st
    return LieSuperalgebra(names, pars, br, form, name=name, triple=triple)


class GradedDecomposition:
    def __init__(self, g, h, eig, susy):
        self.g = g
        self.h = h
        self.eig = eig
        self.susy = susy

    def grade(self, x):
        gs = {self.eig[i] for i, a in enumerate(x) if a}
        if len(gs) > 1:
            raise ValueError("element is not homogeneous for the grading")
        return gs.pop() if gs else None

    def in_m(self, i):
        return self.eig[i] >= 1

    def in_n(self, i):
        return self.eig[i] > 0

    def in_p(self, i):
        return self.eig[i] <= 0 if self.susy else self.eig[i] < 1


def build_grading(g, susy=False):
    """Eigenvalues of ad(H/2) (equivalently ad x with H = 2x) on the basis."""
    if "H" not in g.triple:
        raise InvalidAlgebra("algebra has no distinguished triple")
    h = tuple(a / 2 for a in g.triple["H"])
    eig = []
    for i in range(g.dim):
        v = g.bracket(h, g.basis_vector(i))
        c = v[i]
        if any(a for j, a in enumerate(v) if j != i):
            raise InvalidAlgebra("basis does not diagonalize ad(H/2): %s" % g.names[i])
        eig.append(c)
    grading = GradedDecomposition(g, h, eig, susy)
    for i, j in product(range(g.dim), repeat=2):
        v = g.bracket(g.basis_vector(i), g.basis_vector(j))
        gr = grading.grade(v)
        if gr is not None and gr != eig[i] + eig[j]:
            raise InvalidAlgebra("not a Lie algebra grading")
    return grading


def check_triple(g, susy=False):
    """List of violated relations of the sl2 / osp(1|2) triple."""
    t = g.triple or {}
    need = ("E", "H", "F", "e", "f") if susy else ("E", "H", "F")
    missing = [x for x in need if x not in t]
    if missing:
        return ["triple element %s not given" % x for x in missing]
    bad = []

    def eq(x, y, what):
        if tuple(x) != tuple(y):
            bad.append(what)

    def sc(c, x):
        return tuple(c * a for a in x)

    E, H, F = t["E"], t["H"], t["F"]
    eq(g.bracket(H, E), sc(2, E), "[H,E]=2E")
    eq(g.bracket(H, F), sc(-2, F), "[H,F]=-2F")
    eq(g.bracket(E, F), H, "[E,F]=H")
    if g.form(E, F) != 1:
        bad.append("(E|F)=1")
    if susy:
        e, f = t["e"], t["f"]
        eq(g.bracket(e, e), sc(2, E), "[e,e]=2E")
        eq(g.bracket(f, f), sc(-2, F), "[f,f]=-2F")
        eq(g.bracket(H, f), sc(-1, f), "[H,f]=-f")
        eq(g.bracket(H, e), e, "[H,e]=e")
        x = tuple(a / 2 for a in H)
        if 2 * g.form(x, x) != 1:
            bad.append("2(x|x)=1")
    return bad


class DualBasisData:
    """Bases q_i of g^F (resp. r_i of g^f), dual bases q^i of g^E, the
    families q^i_m, q_i^m and normalizers, and the projection onto g^F."""

    def __init__(self, g, susy=False):
        if check_triple(g, susy):
            raise InvalidAlgebra("triple relations fail: %s" % check_triple(g, susy))
        self.g = g
        self.susy = susy
        self.grading = build_grading(g, susy)
        t = g.triple
        if susy:
            self.low_op, self.up_op = t["e"], t["f"]
        else:
            self.low_op, self.up_op = t["E"], t["F"]
        eig = self.grading.eig
        groups = {}
        for i in range(g.dim):
            groups.setdefault((eig[i], g.parities[i]), []).append(i)
        lows = []
        for (gr, p), idx in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            if gr > 0:
                continue
            cols = [g.bracket(self.up_op, g.basis_vector(i)) for i in idx]
            for v in nullspace(cols, len(idx)):
                full = [Fraction(0)] * g.dim
                for c, i in zip(v, idx):
                    full[i] = c
                lows.append((-gr, p, tuple(full)))
        # order by height descending, then parity
        lows.sort(key=lambda x: (-x[0], x[1]))
        self.labels = []
        self.parity = {}
        self.height = {}
        self.q_low = {}
        self.q_up = {}
        used = set()
        for n_, (h, p, v) in enumerate(lows):
            nz = [i for i, a in enumerate(v) if a]
            label = g.names[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else "q%d" % n_
            if label in used:
                label = "q%d" % n_
            used.add(label)
            self.labels.append(label)
            self.parity[label] = p
            self.height[label] = h
            self.q_low[label] = v
        # dual basis in g^E / g^e, group by group
        for h in sorted({self.height[l] for l in self.labels}, reverse=True):
            for p in (0, 1):
                labs = [l for l in self.labels if self.height[l] == h and self.parity[l] == p]
                if not labs:
                    continue
                idx = groups.get((h, p), [])
                cols = [g.bracket(self.low_op, g.basis_vector(i)) for i in idx]
                ups = []
                for v in nullspace(cols, len(idx)):
                    full = [Fraction(0)] * g.dim
                    for c, i in zip(v, idx):
                        full[i] = c
                    ups.append(tuple(full))
                if len(ups) != len(labs):
                    raise InvalidAlgebra("kernel dimensions of ad E and ad F differ at height %s" % h)
                M = sympy.Matrix([[_sym(g.form(u, self.q_low[l])) for l in labs] for u in ups])
                if M.det() == 0:
                    raise InvalidAlgebra("singular pairing between g^E and g^F")
                Minv = M.inv()
                for a, l in enumerate(labs):
                    vec = [Fraction(0)] * g.dim
                    for s, u in enumerate(ups):
                        c = _frac(Minv[a, s])
                        for i in range(g.dim):
                            vec[i] += c * u[i]
                    self.q_up[l] = tuple(vec)
        # families
        self.length = {}
        self.up = {}
        self.low = {}
        self.norm = {}
        for l in self.labels:
            top = int(4 * self.height[l]) if susy else int(2 * self.height[l])
            self.length[l] = top
            ups = [self.q_up[l]]
            for _ in range(top):
                ups.append(g.bracket(self.up_op, ups[-1]))
            lows = [self.q_low[l]]
            for _ in range(top):
                lows.append(g.bracket(self.low_op, lows[-1]))
            norms = []
            for m in range(top + 1):
                pr = g.form(ups[m], lows[m])
                if not pr:
                    raise InvalidAlgebra("zero pairing while solving normalizers for %s, m=%d" % (l, m))
                norms.append(1 / pr)
            self.up[l] = ups
            self.low[l] = [tuple(norms[m] * a for a in lows[m]) for m in range(top + 1)]
            self.norm[l] = norms
        self.index_set = [(l, m) for l in self.labels for m in range(self.length[l])]
        self._build_projection()

    # pairing, grading checks
    def pairing_defects(self):
        out = []
        for i in self.labels:
            for m in range(self.length[i] + 1):
                for j in self.labels:
                    for n in range(self.length[j] + 1):
                        want = 1 if (i == j and m == n) else 0
                        if self.g.form(self.up[i][m], self.low[j][n]) != want:
                            out.append((i, m, j, n))
        return out

    def step(self):
        return Fraction(1, 2) if self.susy else Fraction(1)

    def up_height(self, l, m):
        """Grade of q^l_m (resp. r^l_m)."""
        return self.height[l] - m * self.step()

    def index_parity(self, l, m=0):
        """Parity of q^l_m (resp. r^l_m) in g."""
        return (self.parity[l] + (m if self.susy else 0)) % 2

    def _build_projection(self):
        g = self.g
        img = []
        for col in g.ad(self.low_op):
            if any(col):
                img.append(col)
        cols = [self.q_low[l] for l in self.labels]
        # independent subset of the image of ad E
        base = list(cols)
        for v in img:
            if _mat(base + [v]).rank() > len(base):
                base.append(v)
        if len(base) != g.dim:
            raise InvalidAlgebra("g^F and [E,g] do not span g")
        self._P = _mat(base).inv()
        self._nlab = len(cols)

    def coords(self, x):
        """Coordinates of x^# in the basis q_i, as dict label -> Fraction."""
        v = self._P * sympy.Matrix([_sym(a) for a in x])
        return {l: _frac(v[i]) for i, l in enumerate(self.labels) if v[i] != 0}

    def sharp(self, x):
        out = [Fraction(0)] * self.g.dim
        for l, c in self.coords(x).items():
            for i, a in enumerate(self.q_low[l]):
                out[i] += c * a
        return tuple(out)

    def conformal_weight(self, label):
        if self.susy:
            return Fraction(1, 2) + self.height[label]
        return 1 + self.height[label]


def _sym(x):
    return sympy.Rational(x.numerator, x.denominator)
