"""The matrix groups of the construction.

Builds the order-7 diagonal generator, the order-21 Frobenius group, the
simple group of order 168 in its 6-dimensional model (via the 7-dimensional
permutation representation and the integral change of basis), the extra
normalizing elements, and the induced action on the 4-dimensional family of
invariant cubics together with exact stabilizer computation.

Permutations follow the column convention (e_sigma(1), ..., e_sigma(n)) =
(e_1, ..., e_n) A_sigma, i.e. A_sigma[sigma(j)][j] = 1.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .errors import (ClosureFailure, FieldMismatch, NotInNormalizer,
                     SingularS)
from .linalg import FieldMatrix
from .numberfield import QQ, as_element, common_field, sqrt_field, zeta_field
from .poly import MPoly, act, f21_basis, l27_pencil_basis


class ProjectiveMatrix:
    """Invertible matrix compared up to a global scalar."""

    __slots__ = ("matrix", "_canon")

    def __init__(self, matrix):
        if not isinstance(matrix, FieldMatrix):
            matrix = FieldMatrix.from_rows(matrix)
        self.matrix = matrix
        self._canon = None

    @property
    def field(self):
        return self.matrix.field

    @property
    def n(self):
        return self.matrix.nrows

    def canon(self):
        if self._canon is None:
            self._canon = self.matrix.canonical_scale().try_demote()
        return self._canon

    def __mul__(self, other):
        return ProjectiveMatrix(self.matrix * other.matrix)

    def inverse(self):
        return ProjectiveMatrix(self.matrix.inverse())

    def __eq__(self, other):
        if not isinstance(other, ProjectiveMatrix):
            return NotImplemented
        return self.canon() == other.canon()

    def __hash__(self):
        c = self.canon()
        return hash(c)

    def proj_order(self, limit=64):
        p = self
        ident = ProjectiveMatrix(FieldMatrix.identity(self.field, self.n))
        for k in range(1, limit + 1):
            if p == ident:
                return k
            p = p * self
        return None

    def __repr__(self):
        return f"ProjectiveMatrix({self.matrix!r})"


# ---------------------------------------------------------------------------
# permutation helpers

def perm_matrix(sigma, n, field=QQ):
    """Matrix of sigma (1-based mapping dict/list) with A[sigma(j)][j] = 1."""
    if isinstance(sigma, dict):
        full = {i: sigma.get(i, i) for i in range(1, n + 1)}
    else:
        full = {i + 1: sigma[i] for i in range(n)}
    rows = [[0] * n for _ in range(n)]
    for j in range(1, n + 1):
        rows[full[j] - 1][j - 1] = 1
    return FieldMatrix(field, rows)


def parse_cycles(text):
    """Cycle notation -> mapping dict: "(12)(36)", "(1 2)(3 6)" both work."""
    mapping = {}
    for grp in re.findall(r"\(([^()]*)\)", text):
        grp = grp.strip()
        if not grp:
            continue
        if re.search(r"[ ,]", grp):
            pts = [int(t) for t in re.split(r"[ ,]+", grp)]
        else:
            pts = [int(ch) for ch in grp]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if a in mapping:
                raise ValueError(f"point {a} repeated in {text!r}")
            mapping[a] = b
    return mapping


def cycle_matrix(text, n, field=QQ):
    return perm_matrix(parse_cycles(text), n, field)


# ---------------------------------------------------------------------------
# catalog generators

def g7_matrix():
    """diag(z^1, z^5, z^4, z^6, z^2, z^3) with z a primitive 7th root."""
    F = zeta_field(7)
    z = F.gen()
    w = (1, 5, 4, 6, 2, 3)
    return FieldMatrix(F, [[z ** w[i] if i == j else 0 for j in range(6)]
                           for i in range(6)])


def g3_matrix():
    """The order-3 generator e_i -> e_(i+2)."""
    return cycle_matrix("(135)(246)", 6)


def gtau_matrix():
    """The order-6 permutation (123456) normalizing the order-7 group."""
    return cycle_matrix("(123456)", 6)


def k_matrix():
    """diag(1, 1, w, w, w^2, w^2) with w a primitive cube root."""
    F = zeta_field(3)
    w = F.gen()
    d = [F.one(), F.one(), w, w, w * w, w * w]
    return FieldMatrix(F, [[d[i] if i == j else 0 for j in range(6)]
                           for i in range(6)])


def torus_matrix(t):
    """diag(1, t, 1, t, 1, t): the connected part of the family normalizer."""
    if not hasattr(t, "field"):
        t = QQ.from_rational(t)
    F = t.field
    one = F.one()
    d = [one, t, one, t, one, t]
    return FieldMatrix(F, [[d[i] if i == j else 0 for j in range(6)]
                           for i in range(6)])


def named_generator(name):
    """Catalog element by name, or a permutation in cycle notation."""
    table = {
        "g7": g7_matrix, "g3": g3_matrix, "gtau": gtau_matrix,
        "k": k_matrix, "E": lambda: build_E()[1], "Eprime": lambda: build_E()[1],
        "S": build_S, "P": p_involution_matrix,
    }
    if name in table:
        return table[name]()
    if name.startswith("("):
        return cycle_matrix(name, 6)
    raise KeyError(f"unknown generator {name!r}")


def load_generators(path):
    """Config file: one generator name or cycle expression per line."""
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                out.append((line, named_generator(line)))
    return out


def p_involution_matrix():
    return FieldMatrix(QQ, [[1, 0, 0, 0], [0, 1, 0, 0],
                            [0, 0, 0, -1], [0, 0, -1, 0]])


# ---------------------------------------------------------------------------
# groups

class MatrixGroup:
    """Finite matrix group with optional exhaustive projective element list."""

    def __init__(self, generators, name=""):
        self.generators = [g if isinstance(g, ProjectiveMatrix)
                           else ProjectiveMatrix(g) for g in generators]
        self.name = name
        self.elements = None

    def enumerate(self, max_order=400):
        """Closure under multiplication, projectively; caches the list."""
        if self.elements is not None:
            return self.elements
        field = common_field(*[g.field for g in self.generators])
        ident = ProjectiveMatrix(
            FieldMatrix.identity(field, self.generators[0].n))
        seen = {ident: ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        if len(seen) >= max_order:
                            raise ClosureFailure(
                                f"group exceeds {max_order} elements")
                        seen[y] = y
                        nxt.append(y)
            frontier = nxt
        self.elements = list(seen)
        return self.elements

    def order(self, max_order=400):
        return len(self.enumerate(max_order))

    def __contains__(self, mat):
        p = mat if isinstance(mat, ProjectiveMatrix) else ProjectiveMatrix(mat)
        elems = self.enumerate()
        if p in set(elems):
            return True
        # hash can differ across coefficient fields; fall back to exact scan
        return any(p == e for e in elems)


def f21_group():
    return MatrixGroup([g7_matrix(), g3_matrix()], name="F21")


# ---------------------------------------------------------------------------
# the 7-dimensional model and the order-168 group

def t_matrix():
    rows = [[6 if i == j else -1 for j in range(6)] + [1] for i in range(6)]
    rows.append([-1] * 6 + [1])
    return FieldMatrix(QQ, rows)


def psi_inverse(M7):
    """Extract the 6x6 block A with M7 = T diag(A, 1) T^(-1).

    Raises FieldMismatch when M7 is not in the image of the embedding.
    """
    T = t_matrix().to_field(M7.field)
    inner = T.inverse() * M7 * T
    n = 7
    for i in range(n - 1):
        if not (inner[i, n - 1].is_zero() and inner[n - 1, i].is_zero()):
            raise FieldMismatch("matrix does not preserve the splitting")
    if not inner[n - 1, n - 1].is_one():
        raise FieldMismatch("matrix does not fix the invariant vector")
    return FieldMatrix(M7.field,
                       [[inner[i, j] for j in range(6)] for i in range(6)])


def psi(A6):
    T = t_matrix().to_field(A6.field)
    rows = [[A6[i, j] if (i < 6 and j < 6) else
             (A6.field.one() if i == j == 6 else A6.field.zero())
             for j in range(7)] for i in range(7)]
    return T * FieldMatrix(A6.field, rows) * T.inverse()


def l27_model_generators():
    """The 6-dimensional images of (12)(36) and (1234567)."""
    g2 = psi_inverse(cycle_matrix("(12)(36)", 7))
    g7p = psi_inverse(cycle_matrix("(1234567)", 7))
    return g2, g7p


def build_l27():
    """The order-168 simple group in its 6-dimensional rational model."""
    g2, g7p = l27_model_generators()
    grp = MatrixGroup([g2, g7p], name="L2(7)")
    n = grp.order()
    if n != 168:
        raise ClosureFailure(f"expected order 168, got {n}")
    return grp


def build_E():
    """The normalizing element: E in the 7-dimensional model and its
    6-dimensional image."""
    F = sqrt_field(2)
    s2 = F.gen()
    a = (2 * s2 + 1) / 7
    b = (-3 * s2) / 14 + Fraction(1, 7)
    P7 = cycle_matrix("(1234567)", 7).to_field(F)
    p = {k: _mat_pow(P7, k) for k in range(7)}
    inner = (p[0] + p[4] + p[6]) * a + (p[1] + p[2] + p[3] + p[5]) * b
    E7 = cycle_matrix("(243756)", 7).to_field(F) * inner
    E6 = psi_inverse(E7)
    return E7, E6


def _mat_pow(M, k):
    out = FieldMatrix.identity(M.field, M.nrows)
    for _ in range(k):
        out = out * M
    return out


def is_permutation_matrix(M):
    for r in M.rows:
        ones = sum(1 for x in r if x.is_one())
        zeros = sum(1 for x in r if x.is_zero())
        if not (ones == 1 and zeros == M.ncols - 1):
            return False
    return True


def build_S():
    """The intertwiner S = sum (g3^i g7^j)^(-1) g3'^i g7'^j conjugating the
    permutation-model Frobenius generators onto the diagonal model."""
    g7 = g7_matrix()
    g3 = g3_matrix().to_field(g7.field)
    g2, g7p_model = l27_model_generators()
    g7p = psi_inverse(cycle_matrix("(1234567)", 7))
    g3p = psi_inverse(cycle_matrix("(235)(476)", 7))
    F = g7.field
    g7p = g7p.to_field(F)
    g3p = g3p.to_field(F)
    S = FieldMatrix(F, [[0] * 6 for _ in range(6)])
    for i in range(3):
        for j in range(7):
            left = (_mat_pow(g3, i) * _mat_pow(g7, j)).inverse()
            right = _mat_pow(g3p, i) * _mat_pow(g7p, j)
            S = S + left * right
    if S.det().is_zero():
        raise SingularS("averaging sum is singular")
    return S


def conjugation_identities():
    """Exact checks of the normalizer conjugation relations; returns a list
    of (name, bool)."""
    g7 = ProjectiveMatrix(g7_matrix())
    g3 = ProjectiveMatrix(g3_matrix())
    gt = ProjectiveMatrix(gtau_matrix())
    kk = k_matrix()
    F3 = zeta_field(3)
    w = F3.gen()
    out = []
    out.append(("gtau g7 gtau^-1 == g7^3",
                gt * g7 * gt.inverse() == g7 * g7 * g7))
    out.append(("g3 g7 g3^-1 == g7^2", g3 * g7 * g3.inverse() == g7 * g7))
    kP = ProjectiveMatrix(kk)
    for n in (1, 2):
        lhs = _mat_pow(kk, n).to_field(F3) * g3_matrix().to_field(F3) * \
            _mat_pow(kk, n).inverse().to_field(F3)
        rhs = g3_matrix().to_field(F3) * (w ** n)
        out.append((f"k^{n} g3 k^-{n} == w^{n} g3", lhs == rhs))
    return out


# ---------------------------------------------------------------------------
# induced action on family coordinates

def induced_family_action(g):
    """The 4x4 matrix by which g acts on the coefficients [a, b, c, d] of
    the invariant family.  Exact; raises NotInNormalizer when the action
    leaves the span of the four basic invariants."""
    mat = g.matrix if isinstance(g, ProjectiveMatrix) else g
    field = common_field(QQ, mat.field)
    basis = f21_basis(field)
    monos = sorted({m for b in basis for m in b.terms}, reverse=True)
    cols = []
    from .linalg import solve
    for b in basis:
        img = act(mat, b)
        if any(m not in monos for m in img.terms):
            raise NotInNormalizer("image leaves the invariant family")
        fld = img.field
        rows = [[bb.coefficient(m) for bb in basis] for m in monos]
        rhs = [img.coefficient(m) for m in monos]
        sol = solve(rows, rhs, fld)
        if sol is None:
            raise NotInNormalizer("image leaves the invariant family")
        cols.append(sol)
    fld = common_field(*[c.field for col in cols for c in col])
    rows = [[as_element(cols[j][i], fld) for j in range(4)]
            for i in range(4)]
    return FieldMatrix(fld, rows)


def apply_family_action(R, coeffs):
    return R.apply(list(coeffs))


# ---------------------------------------------------------------------------
# stabilizers inside the family normalizer

class TorusCondition:
    """Solution set in t of a stabilizer condition: either every t, no t,
    or the root set of t^k = value (k >= 1, value != 0)."""

    __slots__ = ("kind", "k", "value")

    def __init__(self, kind, k=None, value=None):
        assert kind in ("all", "none", "power")
        self.kind = kind
        self.k = k
        self.value = value

    def count(self):
        if self.kind == "none":
            return 0
        if self.kind == "all":
            return None  # positive dimensional
        return self.k

    def __repr__(self):
        if self.kind == "power":
            return f"t^{self.k} == {self.value.serialize()}"
        return self.kind


def _merge_power_conditions(conds):
    """Conditions [(d_i, v_i)] meaning t^(d_i) = v_i, all d_i >= 1.

    Returns a TorusCondition: the solution set is either empty or a coset
    of the group of g-th roots of unity with g = gcd(d_i), pinned by a
    single equation t^g = v.
    """
    field = conds[0][1].field
    for _, v2 in conds:
        field = common_field(field, v2.field)
    # Bezout: build t^g (g = gcd of the exponents) from the given powers
    cur_d, cur_v = conds[0][0], as_element(conds[0][1], field)
    for d2, v2 in conds[1:]:
        v2 = as_element(v2, field)
        gg, a, b = _ext_gcd(cur_d, d2)
        nv = (cur_v ** a) * (v2 ** b)
        cur_d, cur_v = gg, nv
    # consistency: each original condition must follow from t^g = v
    g = cur_d
    for d2, v2 in conds:
        if not (cur_v ** (d2 // g) - as_element(v2, field)).is_zero():
            return TorusCondition("none")
    return TorusCondition("power", g, cur_v)


def _ext_gcd(a, b):
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


# induced weights of the torus on the coefficient slots: the connected part
# scales [a, b, c, d] projectively via t^(0), t^(1), t^(-1), t^(2)
TORUS_WEIGHTS = (0, 1, -1, 2)


def torus_condition_for(point_coeffs, moved_coeffs):
    """Exact condition on t for torus(t) to carry `moved` back to `point`."""
    field = common_field(*[c.field for c in point_coeffs],
                         *[c.field for c in moved_coeffs])
    p = [as_element(c, field) for c in point_coeffs]
    q = [as_element(c, field) for c in moved_coeffs]
    nz = []
    for i in range(4):
        if p[i].is_zero() != q[i].is_zero():
            return TorusCondition("none")
        if not p[i].is_zero():
            nz.append(i)
    assert nz
    if len(nz) == 1:
        return TorusCondition("all")
    # torus: t^w_i q_i proportional to p_i; relative conditions
    base = nz[0]
    conds = []
    for i in nz[1:]:
        d = TORUS_WEIGHTS[i] - TORUS_WEIGHTS[base]
        val = (p[i] / q[i]) / (p[base] / q[base])
        if d == 0:
            if not (val - field.one()).is_zero():
                return TorusCondition("none")
            continue
        if d < 0:
            d, val = -d, val.inverse()
        conds.append((d, val))
    if not conds:
        return TorusCondition("all")
    return _merge_power_conditions(conds)


def finite_coset_actions():
    """Distinct projective coefficient actions of k^n gtau^m, with a named
    representative element for each."""
    Rk = induced_family_action(k_matrix())
    Rt = induced_family_action(gtau_matrix())
    out = {}
    for n in range(3):
        for m in range(6):
            R = FieldMatrix.identity(Rk.field, 4)
            for _ in range(n):
                R = Rk * R
            for _ in range(m):
                R = Rt.to_field(R.field) * R
            key = ProjectiveMatrix(R)
            if key not in out:
                out[key] = (n, m, R)
    return list(out.values())


def stabilizer_check(point, with_elements=True):
    """Stabilizer of a projective family point under the normalizer action.

    Returns a dict with the per-coset torus conditions, the total number of
    stabilizing elements modulo the coefficient-trivial subgroup (None when
    positive dimensional), and verified concrete extra elements.
    """
    coeffs = list(point.coeffs) if hasattr(point, "coeffs") else list(point)
    cosets = finite_coset_actions()
    entries = []
    total = 0
    infinite = False
    for (n, m, R) in cosets:
        moved = R.apply(coeffs)
        cond = torus_condition_for(coeffs, moved)
        c = cond.count()
        if c is None:
            infinite = True
        else:
            total += c
        entries.append({"k_power": n, "gtau_power": m, "condition": cond})
    elements = []
    if with_elements and not infinite:
        for e in entries:
            cond = e["condition"]
            if cond.kind == "power" and cond.k == 1:
                t = cond.value
                f = common_field(t.field, zeta_field(3))
                # coset actions were assembled as R(gtau)^m R(k)^n, so the
                # concrete element is torus(t) gtau^m k^n
                mat = torus_matrix(t).to_field(f)
                mat = mat * _mat_pow(gtau_matrix().to_field(f),
                                     e["gtau_power"])
                mat = mat * _mat_pow(k_matrix().to_field(f), e["k_power"])
                elements.append(ProjectiveMatrix(mat))
        # re-verify: each element fixes the embedded cubic projectively
        from .poly import FamilyPoint, family_embed
        F = family_embed(point if hasattr(point, "coeffs")
                         else FamilyPoint("F21", coeffs))
        for el in elements:
            moved = act(el.matrix, F)
            assert moved.proportionality(F) is not None, \
                "stabilizer element fails re-verification"
    return {
        "entries": entries,
        "order": None if infinite else total,
        "elements": elements,
    }
