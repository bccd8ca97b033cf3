"""Sparse multivariate polynomials over a number field.

The central objects are cubic forms in six variables, but the type is
degree-agnostic: gradients, Hessian charts, the Veronese restriction and the
plane-curve work all reuse it.  Monomials are exponent tuples; term order is
graded lexicographic with x1 > x2 > ... (used for echelonized bases and for
printing).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import ChartVanishes, DimensionMismatch
from .linalg import FieldMatrix, nullspace, rref, solve
from .numberfield import QQ, AlgebraicNumber, as_element, common_field


class MPoly:
    """Sparse polynomial: dict exponent-tuple -> nonzero AlgebraicNumber."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field, nvars, terms):
        self.field = field
        self.nvars = nvars
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(field, nvars):
        return MPoly(field, nvars, {})

    @staticmethod
    def constant(field, nvars, c):
        return MPoly(field, nvars, {(0,) * nvars: as_element(c, field)})

    @staticmethod
    def variable(field, nvars, i):
        m = [0] * nvars
        m[i] = 1
        return MPoly(field, nvars, {tuple(m): field.one()})

    @staticmethod
    def monomial(field, exps, c=1):
        return MPoly(field, len(exps), {tuple(exps): as_element(c, field)})

    def to_field(self, field):
        if field == self.field:
            return self
        return MPoly(field, self.nvars,
                     {m: as_element(c, field) for m, c in self.terms.items()})

    # -- ring ops -------------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            other = MPoly.constant(self.field, self.nvars, other)
        if self.nvars != other.nvars:
            raise DimensionMismatch("mixed variable counts")
        f = common_field(self.field, other.field)
        return self.to_field(f), other.to_field(f)

    def __add__(self, other):
        a, b = self._pair(other)
        t = dict(a.terms)
        for m, c in b.terms.items():
            t[m] = t.get(m, a.field.zero()) + c
        return MPoly(a.field, a.nvars, t)

    def __sub__(self, other):
        a, b = self._pair(other)
        t = dict(a.terms)
        for m, c in b.terms.items():
            t[m] = t.get(m, a.field.zero()) - c
        return MPoly(a.field, a.nvars, t)

    def __neg__(self):
        return MPoly(self.field, self.nvars,
                     {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, AlgebraicNumber)):
            f = common_field(self.field, other.field) \
                if isinstance(other, AlgebraicNumber) else self.field
            c0 = as_element(other, f)
            return MPoly(f, self.nvars,
                         {m: as_element(c, f) * c0
                          for m, c in self.to_field(f).terms.items()})
        a, b = self._pair(other)
        out = {}
        z = a.field.zero()
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, z) + c1 * c2
        return MPoly(a.field, a.nvars, out)

    __rmul__ = __mul__
    __radd__ = __add__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        a, b = self._pair(other)
        return a.terms.keys() == b.terms.keys() and \
            all(a.terms[m] == b.terms[m] for m in a.terms)

    def __hash__(self):
        return hash((self.field.key, self.nvars,
                     frozenset((m, c.coords) for m, c in self.terms.items())))

    # -- queries ---------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        if d is None:
            return len(degs) == 1
        return degs == {d}

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.field.zero())

    def sorted_terms(self):
        """Terms in descending graded lex order (x1 > x2 > ...)."""
        return sorted(self.terms.items(),
                      key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def leading_monomial(self):
        return max(self.terms, key=lambda m: (sum(m), m))

    def proportionality(self, other):
        """Exact scalar c with self == c*other, or None."""
        a, b = self._pair(other)
        if a.is_zero():
            return a.field.zero() if not b.is_zero() else None
        if b.is_zero():
            return None
        if a.terms.keys() != b.terms.keys():
            return None
        m0 = next(iter(a.terms))
        c = a.terms[m0] / b.terms[m0]
        for m in a.terms:
            if not (a.terms[m] - c * b.terms[m]).is_zero():
                return None
        return c

    # -- calculus ---------------------------------------------------------------

    def partial(self, i):
        out = {}
        z = self.field.zero()
        for m, c in self.terms.items():
            if m[i]:
                m2 = list(m)
                m2[i] -= 1
                m2 = tuple(m2)
                out[m2] = out.get(m2, z) + c * m[i]
        return MPoly(self.field, self.nvars, out)

    def gradient(self):
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, point):
        """Exact value at a point (list of field elements/rationals)."""
        f = common_field(self.field, *[p.field for p in point
                                       if isinstance(p, AlgebraicNumber)])
        pt = [as_element(p, f) for p in point]
        acc = f.zero()
        for m, c in self.terms.items():
            v = as_element(c, f)
            for x, e in zip(pt, m):
                for _ in range(e):
                    v = v * x
            acc = acc + v
        return acc

    def substitute(self, images):
        """Substitute variable i -> images[i] (an MPoly); exact expansion."""
        assert len(images) == self.nvars
        tgt_nvars = images[0].nvars
        f = common_field(self.field, *[g.field for g in images])
        imgs = [g.to_field(f) for g in images]
        out = MPoly.zero(f, tgt_nvars)
        for m, c in self.terms.items():
            prod = MPoly.constant(f, tgt_nvars, f.one())
            for i, e in enumerate(m):
                for _ in range(e):
                    prod = prod * imgs[i]
            out = out + prod * as_element(c, f)
        return out

    def set_variable(self, i, value):
        """Substitute a constant for variable i; drops that variable."""
        f = common_field(self.field, value.field) \
            if isinstance(value, AlgebraicNumber) else self.field
        val = as_element(value, f)
        out = {}
        z = f.zero()
        for m, c in self.terms.items():
            v = as_element(c, f)
            for _ in range(m[i]):
                v = v * val
            m2 = m[:i] + m[i + 1:]
            out[m2] = out.get(m2, z) + v
        return MPoly(f, self.nvars - 1, out)

    # -- rendering ---------------------------------------------------------------

    def __repr__(self):
        from .polyio import poly_str
        return poly_str(self)


# ---------------------------------------------------------------------------
# the substitution action of matrices on forms

def act(A, F):
    """(A F)(x) = F(x A): substitute variable j -> sum_i A[i][j] x_i.

    Left action: act(A*B, F) == act(A, act(B, F)).
    """
    if isinstance(A, FieldMatrix):
        mat = A
    else:
        mat = A.matrix
    if mat.nrows != mat.ncols or mat.nrows != F.nvars:
        raise DimensionMismatch(
            f"{mat.nrows}x{mat.ncols} matrix on {F.nvars}-variable form")
    f = common_field(mat.field, F.field)
    n = F.nvars
    cols = []
    for j in range(n):
        terms = {}
        for i in range(n):
            e = as_element(mat[i, j], f)
            if not e.is_zero():
                m = [0] * n
                m[i] = 1
                terms[tuple(m)] = e
        cols.append(MPoly(f, n, terms))
    return F.substitute(cols)


def degree_monomials(nvars, d):
    """All exponent tuples of total degree d, descending graded lex."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        m = [0] * nvars
        for i in combo:
            m[i] += 1
        out.append(tuple(m))
    out.sort(key=lambda m: m, reverse=True)
    return out


def invariant_subspace(generators, degree=3, nvars=6):
    """Echelonized basis of the simultaneous eigenvalue-1 subspace of the
    substitution action on degree-d forms."""
    monos = degree_monomials(nvars, degree)
    idx = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    fields = [g.field if isinstance(g, FieldMatrix) else g.matrix.field
              for g in generators]
    f = common_field(QQ, *fields)
    cols = []
    for g in generators:
        mat = g if isinstance(g, FieldMatrix) else g.matrix
        block = []
        for j, m in enumerate(monos):
            image = act(mat, MPoly.monomial(f, m))
            col = [f.zero()] * n
            for m2, c in image.terms.items():
                col[idx[m2]] = c
            col[j] = col[j] - f.one()
            block.append(col)
        # block[j] is column j of (action - I); transpose to rows
        for i in range(n):
            cols.append([block[j][i] for j in range(n)])
    basis = nullspace(cols, f, n)
    red, _ = rref(basis, f)
    out = []
    for v in red:
        terms = {m: c for m, c in zip(monos, v) if not c.is_zero()}
        out.append(MPoly(f, nvars, terms))
    return out


def jacobian(F):
    return F.gradient()


def hessian_at(F, chart, point):
    """Exact Hessian of the chart-dehomogenization of F at `point`.

    `point` is a projective tuple with nonzero chart coordinate; the result
    is an (n-1) x (n-1) FieldMatrix of the affine Hessian at the
    dehomogenized point.
    """
    f = common_field(F.field, *[p.field for p in point
                                if isinstance(p, AlgebraicNumber)])
    pt = [as_element(p, f) for p in point]
    if pt[chart].is_zero():
        raise ChartVanishes(f"coordinate {chart} vanishes at the point")
    inv = pt[chart].inverse()
    pt = [x * inv for x in pt]
    g = F.to_field(f).set_variable(chart, f.one())
    affine_pt = pt[:chart] + pt[chart + 1:]
    n = g.nvars
    rows = []
    for i in range(n):
        gi = g.partial(i)
        rows.append([gi.partial(j).evaluate(affine_pt) for j in range(n)])
    return FieldMatrix(f, rows)


# ---------------------------------------------------------------------------
# the three coefficient families

C7_MONOMIALS = [
    (2, 1, 0, 0, 0, 0),  # x1^2 x2
    (0, 2, 1, 0, 0, 0),  # x2^2 x3
    (0, 0, 2, 1, 0, 0),  # x3^2 x4
    (0, 0, 0, 2, 1, 0),  # x4^2 x5
    (0, 0, 0, 0, 2, 1),  # x5^2 x6
    (1, 0, 0, 0, 0, 2),  # x6^2 x1
    (1, 0, 1, 0, 1, 0),  # x1 x3 x5
    (0, 1, 0, 1, 0, 1),  # x2 x4 x6
]

# slots of the F21 family inside the C7 monomial list
F21_SLOTS = [(0, 2, 4), (1, 3, 5), (6,), (7,)]


class FamilyPoint:
    """Projective coefficient vector in one of the three families."""

    __slots__ = ("family", "coeffs")

    def __init__(self, family, coeffs):
        assert family in ("C7", "F21", "L27")
        n = {"C7": 8, "F21": 4, "L27": 2}[family]
        assert len(coeffs) == n
        f = common_field(QQ, *[c.field for c in coeffs
                               if isinstance(c, AlgebraicNumber)])
        self.family = family
        self.coeffs = tuple(as_element(c, f) for c in coeffs)
        assert not all(c.is_zero() for c in self.coeffs), \
            "projective point needs a nonzero coordinate"

    @property
    def field(self):
        return self.coeffs[0].field

    def __repr__(self):
        return f"FamilyPoint({self.family}, " + \
            "[" + ", ".join(c.serialize() for c in self.coeffs) + "])"


def f21_basis(field=QQ):
    """The four basic invariants of the 21-element group action."""
    out = []
    for slot in F21_SLOTS:
        terms = {C7_MONOMIALS[i]: field.one() for i in slot}
        out.append(MPoly(field, 6, terms))
    return out


def l27_pencil_basis(field=QQ):
    """f1, f2: the two invariants of the 168-element group in 6 variables,
    obtained from the 7-variable symmetric forms by the hyperplane
    substitution x7 -> -(x1+...+x6)."""
    f = field
    F1 = MPoly.zero(f, 7)
    for i in range(7):
        m = [0] * 7
        m[i] = 3
        F1 = F1 + MPoly.monomial(f, m)
    triples = [(1, 2, 4), (2, 3, 5), (3, 4, 6), (1, 5, 6),
               (1, 3, 7), (4, 5, 7), (2, 6, 7)]
    F2 = MPoly.zero(f, 7)
    for t in triples:
        m = [0] * 7
        for i in t:
            m[i - 1] = 1
        F2 = F2 + MPoly.monomial(f, m)
    images = [MPoly.variable(f, 6, i) for i in range(6)]
    last = MPoly.zero(f, 6)
    for i in range(6):
        last = last - MPoly.variable(f, 6, i)
    images.append(last)
    return F1.substitute(images), F2.substitute(images)


def family_embed(p):
    """CubicForm of a family point.

    C7 coefficients follow the monomial list C7_MONOMIALS; an F21 point
    [a, b, c, d] embeds into the C7 family with pattern (a,b,a,b,a,b,c,d);
    an L27 point (c1, c2) is c1*f1 + c2*f2.
    """
    f = p.field
    if p.family == "C7":
        terms = {m: c for m, c in zip(C7_MONOMIALS, p.coeffs)}
        return MPoly(f, 6, terms)
    if p.family == "F21":
        basis = f21_basis(f)
        out = MPoly.zero(f, 6)
        for c, b in zip(p.coeffs, basis):
            out = out + b * c
        return out
    f1, f2 = l27_pencil_basis(f)
    return f1 * p.coeffs[0] + f2 * p.coeffs[1]


def f_ab(a, b, field=None):
    """The standard two-parameter cubic form with order-7 symmetry."""
    coeffs = [1, 1, 1, 1, 1, 1, a, b]
    return family_embed(FamilyPoint("C7", [
        as_element(c, field) if field is not None else
        (c if isinstance(c, AlgebraicNumber) else QQ.from_rational(c))
        for c in coeffs]))


def f21_coordinates(F):
    """Express an invariant cubic form in the 4-dimensional family basis.

    Returns the coefficient list or None if F is outside the span.
    """
    basis = f21_basis(F.field)
    monos = sorted({m for b in basis for m in b.terms} |
                   set(F.terms), reverse=True)
    rows = [[b.coefficient(m) for b in basis] for m in monos]
    rhs = [F.coefficient(m) for m in monos]
    return solve(rows, rhs, F.field)
