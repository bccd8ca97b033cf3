"""Dense exact linear algebra over a NumberField (and over Fraction).

Matrices are tuples of tuples of AlgebraicNumber, all in one field.  Also
provides projective comparison helpers used by the matrix-group code.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch
from .numberfield import AlgebraicNumber, as_element, common_field


class FieldMatrix:
    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(as_element(x, field) for x in r)
                          for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        assert all(len(r) == self.ncols for r in self.rows)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def identity(field, n):
        return FieldMatrix(field, [[1 if i == j else 0 for j in range(n)]
                                   for i in range(n)])

    @staticmethod
    def from_rows(rows, field=None):
        if field is None:
            fields = [x.field for r in rows for x in r
                      if isinstance(x, AlgebraicNumber)]
            from .numberfield import QQ
            field = common_field(*fields) if fields else QQ
        return FieldMatrix(field, rows)

    def to_field(self, field):
        if field == self.field:
            return self
        return FieldMatrix(field, self.rows)

    # -- basic ops ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, FieldMatrix):
            f = common_field(self.field, other.field)
            a, b = self.to_field(f), other.to_field(f)
            if a.ncols != b.nrows:
                raise DimensionMismatch(
                    f"{a.nrows}x{a.ncols} times {b.nrows}x{b.ncols}")
            bt = list(zip(*b.rows))
            return FieldMatrix(f, [[_dot(r, c, f) for c in bt]
                                   for r in a.rows])
        x = as_element(other, self.field)
        f = common_field(self.field, x.field)
        return FieldMatrix(f, [[as_element(v, f) * as_element(x, f)
                                for v in r] for r in self.rows])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other):
        f = common_field(self.field, other.field)
        a, b = self.to_field(f), other.to_field(f)
        return FieldMatrix(f, [[x + y for x, y in zip(r, s)]
                               for r, s in zip(a.rows, b.rows)])

    def __sub__(self, other):
        f = common_field(self.field, other.field)
        a, b = self.to_field(f), other.to_field(f)
        return FieldMatrix(f, [[x - y for x, y in zip(r, s)]
                               for r, s in zip(a.rows, b.rows)])

    def __neg__(self):
        return FieldMatrix(self.field, [[-x for x in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        f = common_field(self.field, other.field)
        a, b = self.to_field(f), other.to_field(f)
        return all(x == y for r, s in zip(a.rows, b.rows)
                   for x, y in zip(r, s))

    def __hash__(self):
        return hash((self.field.key, tuple(tuple(x.coords for x in r)
                                           for r in self.rows)))

    def transpose(self):
        return FieldMatrix(self.field, list(zip(*self.rows)))

    def apply(self, vec):
        """Matrix times column vector (list of elements)."""
        f = common_field(self.field,
                         *[v.field for v in vec
                           if isinstance(v, AlgebraicNumber)])
        vec = [as_element(v, f) for v in vec]
        mat = self.to_field(f)
        return [_dot(r, vec, f) for r in mat.rows]

    def det(self):
        assert self.nrows == self.ncols
        f = self.field
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = f.one()
        for c in range(n):
            p = next((i for i in range(c, n) if not m[i][c].is_zero()), None)
            if p is None:
                return f.zero()
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    fct = m[i][c] * inv
                    m[i] = [x - fct * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self):
        assert self.nrows == self.ncols
        f = self.field
        n = self.nrows
        aug = [list(r) + [f.one() if i == j else f.zero()
                          for j in range(n)]
               for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((i for i in range(c, n) if not aug[i][c].is_zero()),
                     None)
            if p is None:
                raise ZeroDivisionError("matrix is singular")
            aug[c], aug[p] = aug[p], aug[c]
            inv = aug[c][c].inverse()
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and not aug[i][c].is_zero():
                    fct = aug[i][c]
                    aug[i] = [x - fct * y for x, y in zip(aug[i], aug[c])]
        return FieldMatrix(f, [row[n:] for row in aug])

    def is_zero(self):
        return all(x.is_zero() for r in self.rows for x in r)

    def is_identity(self):
        return all((x.is_one() if i == j else x.is_zero())
                   for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_integral(self):
        return all(x.is_integer() for r in self.rows for x in r)

    def to_int_rows(self):
        return [[int(x.rational_value()) for x in r] for r in self.rows]

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.nrows)),
                   self.field.zero())

    # -- projective helpers ----------------------------------------------------

    def first_nonzero(self):
        for r in self.rows:
            for x in r:
                if not x.is_zero():
                    return x
        return None

    def canonical_scale(self):
        """Scale so the first nonzero entry is 1 (projective normal form)."""
        x = self.first_nonzero()
        if x is None:
            return self
        inv = x.inverse()
        return FieldMatrix(self.field, [[v * inv for v in r]
                                        for r in self.rows])

    def try_demote(self):
        """Return the same matrix over Q when all entries are rational
        (keeps hashes of projectively equal matrices field-independent)."""
        from .numberfield import QQ
        if self.field is QQ:
            return self
        if all(x.is_rational() for r in self.rows for x in r):
            return FieldMatrix(QQ, [[x.rational_value() for x in r]
                                    for r in self.rows])
        return self

    def proj_eq(self, other):
        f = common_field(self.field, other.field)
        return self.to_field(f).canonical_scale() == \
            other.to_field(f).canonical_scale()

    def __repr__(self):
        body = "; ".join(",".join(x.serialize() for x in r)
                         for r in self.rows)
        return f"FieldMatrix[{body}]"


def _dot(r, c, f):
    acc = f.zero()
    for x, y in zip(r, c):
        if not (x.is_zero() or y.is_zero()):
            acc = acc + x * y
    return acc


def rref(rows, field):
    """Reduced row echelon form.  Returns (rows, pivot column list)."""
    m = [[as_element(x, field) for x in r] for r in rows]
    nr = len(m)
    nc = len(m[0]) if m else 0
    piv = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = next((i for i in range(r, nr) if not m[i][c].is_zero()), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nr):
            if i != r and not m[i][c].is_zero():
                fct = m[i][c]
                m[i] = [x - fct * y for x, y in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    return m[:r], piv


def nullspace(rows, field, ncols):
    """Basis of the right kernel of the matrix given by `rows`."""
    red, piv = rref(rows, field)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [field.zero()] * ncols
        v[fc] = field.one()
        for r, pc in zip(red, piv):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """Solve M x = rhs exactly; returns list or None if inconsistent."""
    nc = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, field)
    x = [field.zero()] * nc
    for r, pc in zip(red, piv):
        if pc == nc:
            return None  # inconsistent
        x[pc] = r[nc]
    # verify (guards against free columns yielding a non-solution)
    for row, b in zip(rows, rhs):
        acc = field.zero()
        for a, v in zip(row, x):
            acc = acc + as_element(a, field) * v
        if not (acc - as_element(b, field)).is_zero():
            return None
    return x


# -- pure Fraction helpers for integer lattice / LP work ----------------------

def frac_mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def frac_mat_inv(mat):
    n = len(mat)
    aug = [[Fraction(x) for x in row] +
           [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def frac_det(mat):
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det
