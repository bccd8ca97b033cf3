"""Exact arithmetic in Q and in a fixed catalog of number fields.

A field is presented as Q[alpha]/(m(alpha)) with m monic and irreducible.
Elements store their coordinate vector in the power basis 1, alpha, ...,
alpha^(d-1) with Fraction entries.  The catalog covers the cyclotomic fields
of conductor 3, 4, 7, 8, 12, 21 (plus ad-hoc conductors for Gauss-sum work),
quadratic fields Q(sqrt d), and multiquadratic fields such as Q(sqrt2, sqrt3,
sqrt7).  Sign and zero decisions are exact: zero is a coordinate test, signs
of real elements are decided by refining an isolating interval of the
designated real root of m.

>>> F = zeta_field(7)
>>> z = F.gen()
>>> (z ** 7).is_one()
True
>>> sum((z ** k for k in range(7)), F.zero()).is_zero()
True
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .errors import FieldMismatch, NotRealEmbedding, UnsupportedComposite

Rational = Fraction  # exact rational scalar used throughout the toolkit


# ---------------------------------------------------------------------------
# dense integer/rational polynomial helpers (coefficient lists, low degree
# first; used for minimal polynomials only)

def poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, q):
    """Exact division with remainder; q need not be monic (Fraction math)."""
    p = [Fraction(c) for c in p]
    q = [Fraction(c) for c in q]
    p, q = poly_trim(p), poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    while len(p) >= len(q):
        c = p[-1] / q[-1]
        k = len(p) - len(q)
        quo[k] = c
        for i, b in enumerate(q):
            p[i + k] -= c * b
        p = poly_trim(p)
    return poly_trim(quo), p


def poly_gcd(p, q):
    p, q = poly_trim(p), poly_trim(q)
    while q:
        p, q = q, poly_divmod(p, q)[1]
    if p:
        lead = p[-1]
        p = [c / lead for c in p]
    return p


def poly_deriv(p):
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def cyclotomic_poly(n):
    """Integer coefficient list of the n-th cyclotomic polynomial."""
    if n == 1:
        return [-1, 1]
    p = [0] * n + [1]
    p[0] = -1  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = poly_divmod(p, cyclotomic_poly(d))
            assert not r
            p = q
    return [int(c) for c in p]


def euler_phi(n):
    out, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            out *= p - 1
            m //= p
            while m % p == 0:
                out *= p
                m //= p
        p += 1
    if m > 1:
        out *= m - 1
    return out


def squarefree_decompose(n):
    """n = s^2 * m with m squarefree; returns (s, m).  n must be positive."""
    assert n > 0
    s, m, p = 1, 1, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                e += 1
                n //= p
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1
    m *= n
    return s, m


def _rational_sqrt(q):
    """Exact square root of a Fraction, or None."""
    if q < 0:
        return None
    a, b = q.numerator, q.denominator
    ra, rb = isqrt(a), isqrt(b)
    if ra * ra == a and rb * rb == b:
        return Fraction(ra, rb)
    return None


# ---------------------------------------------------------------------------
# interval arithmetic with Fraction endpoints, for certified sign decisions

class _Iv:
    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        self.lo, self.hi = lo, hi

    def __add__(self, o):
        return _Iv(self.lo + o.lo, self.hi + o.hi)

    def __mul__(self, o):
        c = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return _Iv(min(c), max(c))

    def sign(self):
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None


def _iv_const(q):
    return _Iv(q, q)


def _poly_iv(coeffs, x):
    """Evaluate a polynomial over an interval (Horner)."""
    acc = _iv_const(Fraction(0))
    for c in reversed(coeffs):
        acc = acc * x + _iv_const(Fraction(c))
    return acc


def _poly_at(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------

class NumberField:
    """Q[alpha]/(m(alpha)) with a designated embedding.

    ``key`` identifies the field in the catalog:
        ("q",)            the rationals
        ("zeta", n)       cyclotomic, alpha = exp(2*pi*i/n)
        ("sqrt", d)       quadratic, d squarefree; alpha = sqrt(d) (d > 0:
                          the positive root, d < 0: the root i*sqrt(|d|))
        ("mq", (d1,...))  multiquadratic, alpha = sqrt(d1)+...+sqrt(dk)
    """

    _registry = {}

    def __init__(self, key, min_poly, *, real_interval=None, approx, symbol):
        self.key = key
        self.min_poly = [int(c) for c in min_poly]  # monic, integer
        assert self.min_poly[-1] == 1
        self.degree = len(self.min_poly) - 1
        self.real_interval = real_interval  # isolating (lo, hi) or None
        self.approx = approx  # float/complex approximation of alpha
        self.symbol = symbol
        self._red = self._reduction_rows()
        self.zero_coords = (Fraction(0),) * self.degree
        self._constants = {}
        self._check_squarefree()
        if real_interval is not None:
            lo, hi = real_interval
            s1 = _poly_at(self.min_poly, lo)
            s2 = _poly_at(self.min_poly, hi)
            assert s1 * s2 < 0, "embedding seed must straddle a root"

    # -- construction helpers ------------------------------------------------

    def _check_squarefree(self):
        g = poly_gcd(self.min_poly, poly_deriv(self.min_poly))
        assert len(g) == 1, "minimal polynomial must be squarefree"

    def _reduction_rows(self):
        """Coordinates of alpha^(d+k) for k = 0..d-2, as Fraction tuples."""
        d = self.degree
        rows = []
        cur = [Fraction(-c) for c in self.min_poly[:-1]]  # alpha^d
        rows.append(tuple(cur))
        for _ in range(d - 2):
            nxt = [Fraction(0)] * d
            for i in range(d - 1):
                nxt[i + 1] += cur[i]
            top = cur[d - 1]
            if top:
                for i in range(d):
                    nxt[i] += top * rows[0][i]
            rows.append(tuple(nxt))
            cur = nxt
        return rows

    # -- element constructors ------------------------------------------------

    def element(self, coords):
        coords = tuple(Fraction(c) for c in coords)
        assert len(coords) == self.degree
        return AlgebraicNumber(self, coords)

    def from_rational(self, q):
        c = [Fraction(q)] + [Fraction(0)] * (self.degree - 1)
        return self.element(c)

    def zero(self):
        return AlgebraicNumber(self, self.zero_coords)

    def one(self):
        return self.from_rational(1)

    def gen(self):
        c = [Fraction(0)] * self.degree
        if self.degree == 1:
            return self.zero()
        c[1] = Fraction(1)
        return self.element(c)

    def constant(self, name):
        """Named catalog constant as an element of this field."""
        if name in self._constants:
            return self._constants[name]
        elt = _make_constant(self, name)
        self._constants[name] = elt
        return elt

    # -- arithmetic kernels --------------------------------------------------

    def _reduce(self, conv):
        """Reduce a raw convolution (length <= 2d-1) mod m(alpha)."""
        d = self.degree
        out = list(conv[:d]) + [Fraction(0)] * (d - len(conv[:d]))
        for k in range(d, len(conv)):
            c = conv[k]
            if c:
                row = self._red[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def _mul_coords(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        return self._reduce(conv)

    def _inv_coords(self, a):
        """Inverse via extended Euclid in Q[x] mod the minimal polynomial."""
        d = self.degree
        if d == 1:
            if a[0] == 0:
                raise ZeroDivisionError("division by zero field element")
            return (1 / a[0],)
        r0 = [Fraction(c) for c in self.min_poly]
        r1 = poly_trim(list(a))
        if not r1:
            raise ZeroDivisionError("division by zero field element")
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = poly_divmod(r0, r1)
            if not r:
                break
            qs1 = poly_mul(q, s1)
            n = max(len(s0), len(qs1))
            s = poly_trim([(s0[i] if i < len(s0) else 0) -
                           (qs1[i] if i < len(qs1) else 0) for i in range(n)])
            r0, r1, s0, s1 = r1, r, s1, s
        # r1 is the gcd: a nonzero constant since m is irreducible
        assert len(r1) == 1, "minimal polynomial is not irreducible"
        c = r1[0]
        inv = [x / c for x in s1]
        inv += [Fraction(0)] * (d - len(inv))
        return tuple(inv[:d])

    # -- misc ----------------------------------------------------------------

    def is_real(self):
        return self.real_interval is not None or self.degree == 1

    def __repr__(self):
        return f"NumberField{self.key}"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.key == other.key

    def __hash__(self):
        return hash(self.key)


class AlgebraicNumber:
    """Immutable element of a NumberField; all arithmetic is exact."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_one(self):
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def is_integer(self):
        return self.is_rational() and self.coords[0].denominator == 1

    # -- coercion ------------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented, NotImplemented
        if other.field is self.field or other.field == self.field:
            return self, other
        target = compose_fields(self.field, other.field)
        return embed(self, target), embed(other, target)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return AlgebraicNumber(a.field, tuple(x + y for x, y in
                                              zip(a.coords, b.coords)))

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return AlgebraicNumber(a.field, tuple(x - y for x, y in
                                              zip(a.coords, b.coords)))

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return AlgebraicNumber(a.field, a.field._mul_coords(a.coords, b.coords))

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is NotImplemented:
            return NotImplemented
        return a * AlgebraicNumber(b.field, b.field._inv_coords(b.coords))

    def __radd__(self, other):
        return self.__add__(other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __rtruediv__(self, other):
        return self.inverse().__mul__(other)

    def __neg__(self):
        return AlgebraicNumber(self.field, tuple(-c for c in self.coords))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        return AlgebraicNumber(self.field,
                               self.field._inv_coords(self.coords))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, AlgebraicNumber):
            return NotImplemented
        a, b = self._pair(other)
        return a.coords == b.coords

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field.key, self.coords))

    # -- sign machinery -------------------------------------------------------

    def sign(self):
        """Exact sign (-1, 0, +1); requires a real designated embedding."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        if self.field.real_interval is None:
            raise NotRealEmbedding(
                f"field {self.field.key} has no designated real embedding")
        lo, hi = (Fraction(x) for x in self.field.real_interval)
        m = self.field.min_poly
        slo = _poly_at(m, lo)
        coeffs = list(self.coords)
        while True:
            s = _poly_iv(coeffs, _Iv(lo, hi)).sign()
            if s is not None:
                return s
            mid = (lo + hi) / 2
            smid = _poly_at(m, mid)
            # m is irreducible of degree >= 2, so m(mid) != 0 for rational mid
            assert smid != 0
            if (slo < 0) != (smid < 0):
                hi = mid
            else:
                lo, slo = mid, smid

    def galois_conjugate(self):
        """The nontrivial conjugate in a quadratic field (sqrt d -> -sqrt d)."""
        if self.field.degree != 2:
            raise FieldMismatch("galois_conjugate needs a quadratic field")
        c0, c1 = self.coords
        k = self.field.key
        if k[0] == "sqrt":
            return self.field.element((c0, -c1))
        # degree-2 cyclotomic (conductor 3): zeta -> zeta^2 = -1 - zeta
        return self.field.element((c0 - c1, -c1))

    def complex_approx(self):
        acc = complex(0)
        a = complex(self.field.approx)
        for c in reversed(self.coords):
            acc = acc * a + complex(Fraction(c))
        return acc

    # -- rendering -----------------------------------------------------------

    def serialize(self):
        cs = ", ".join(_frac_str(c) for c in self.coords)
        ms = _intpoly_str(self.field.min_poly)
        return f"({cs}) over {ms}"

    def __repr__(self):
        return f"<{self.serialize()}>"


def _frac_str(c):
    return f"{c.numerator}/{c.denominator}" if c.denominator != 1 \
        else str(c.numerator)


def _intpoly_str(m):
    parts = []
    for i in range(len(m) - 1, -1, -1):
        c = m[i]
        if c == 0:
            continue
        t = "a" if i == 1 else (f"a^{i}" if i else "")
        mag = "" if (abs(c) == 1 and i) else str(abs(c))
        sep = "*" if (mag and t) else ""
        s = f"{mag}{sep}{t}" if (mag or t) else "0"
        parts.append(("- " if c < 0 else "+ " if parts else "") + s)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# the field catalog

def _register(field):
    NumberField._registry[field.key] = field
    return field


def rational_field():
    key = ("q",)
    if key in NumberField._registry:
        return NumberField._registry[key]
    return _register(NumberField(key, [0, 1], real_interval=(-1, 1),
                                 approx=0.0, symbol=None))


def zeta_field(n):
    """Cyclotomic field of conductor n, alpha = exp(2*pi*i/n)."""
    assert n >= 3
    key = ("zeta", n)
    if key in NumberField._registry:
        return NumberField._registry[key]
    import cmath
    m = cyclotomic_poly(n)
    assert len(m) - 1 == euler_phi(n)
    sym = {3: "omega", 4: "i"}.get(n, f"zeta{n}")
    return _register(NumberField(key, m, approx=cmath.exp(2j * cmath.pi / n),
                                 symbol=sym))


def _isolate_sqrt(d):
    """Rational interval isolating +sqrt(d) among the roots of x^2 - d."""
    r = isqrt(d)
    if r * r == d:
        raise ValueError(f"{d} is a perfect square")
    return (Fraction(r), Fraction(r + 1))


def sqrt_field(d):
    """Q(sqrt d) for squarefree d != 0, 1."""
    key = ("sqrt", d)
    if key in NumberField._registry:
        return NumberField._registry[key]
    assert d not in (0, 1)
    if d > 0:
        s, m = squarefree_decompose(d)
        assert s == 1, "d must be squarefree"
        iv = _isolate_sqrt(d)
        approx = d ** 0.5
    else:
        s, m = squarefree_decompose(-d)
        assert s == 1, "d must be squarefree"
        iv = None
        approx = 1j * ((-d) ** 0.5)
    return _register(NumberField(key, [-d, 0, 1], real_interval=iv,
                                 approx=approx, symbol=f"sqrt{d}"))


class _MQModel:
    """Structure-constant model of Q(sqrt d1, ..., sqrt dk).

    Basis indexed by subsets S of {0..k-1}: basis element prod_{i in S}
    sqrt(d_i).  Used only while constructing the power-basis NumberField.
    """

    def __init__(self, ds):
        self.ds = ds
        self.k = len(ds)
        self.n = 1 << self.k

    def mul(self, a, b):
        out = [Fraction(0)] * self.n
        for s in range(self.n):
            if a[s]:
                for t in range(self.n):
                    if b[t]:
                        inter = s & t
                        c = 1
                        for i in range(self.k):
                            if inter >> i & 1:
                                c *= self.ds[i]
                        out[s ^ t] += a[s] * b[t] * c
        return out

    def sqrt_gen_vec(self, i):
        v = [Fraction(0)] * self.n
        v[1 << i] = Fraction(1)
        return v


def _mq_no_sqrt(ds, target):
    """Certify that `target` (a squarefree positive int not equal to a
    product of a subset of ds) has no square root in Q(sqrt d : d in ds).

    Recursive: x = y + z*sqrt(d_k) with y, z in the smaller field; x^2 =
    (y^2 + z^2 d_k) + 2yz sqrt(d_k) = target forces yz = 0, reducing to a
    square test for target or target/d_k in the smaller field.
    """
    if not ds:
        return _rational_sqrt(Fraction(target)) is None
    head, last = ds[:-1], ds[-1]
    if not _mq_no_sqrt(head, target):
        return False
    q = Fraction(target, last)
    if q.denominator == 1 and not _mq_no_sqrt(head, q.numerator):
        return False
    return True


def mq_field(ds=(2, 3, 7)):
    """Multiquadratic field Q(sqrt d : d in ds), ds distinct squarefree,
    none 0 or 1.  Negative generators are allowed (the designated embedding
    is then complex and sign decisions are unavailable)."""
    ds = tuple(sorted(ds))
    key = ("mq", ds)
    if key in NumberField._registry:
        return NumberField._registry[key]
    assert len(set(ds)) == len(ds) and all(d not in (0, 1) for d in ds)
    for d in ds:
        s, _ = squarefree_decompose(abs(d))
        assert s == 1, f"{d} is not squarefree"
    # tower degree certificate: each step adjoins a genuinely new square root
    for i, d in enumerate(ds):
        assert _mq_no_sqrt(ds[:i], d), f"sqrt{d} already in subfield"
    model = _MQModel(ds)
    n = model.n
    alpha = [Fraction(0)] * n
    for i in range(model.k):
        alpha[1 << i] = Fraction(1)
    powers = [[Fraction(0)] * n]
    powers[0][0] = Fraction(1)
    for _ in range(n):
        powers.append(model.mul(powers[-1], alpha))
    # min poly: solve powers[n] = -sum c_i powers[i] by Gaussian elimination
    rows = [[powers[i][s] for i in range(n)] + [powers[n][s]]
            for s in range(n)]
    sol = _solve_square(rows, n)
    assert sol is not None, "power basis must have full rank"
    m = [-c for c in sol] + [Fraction(1)]
    # transforms between power basis and subset basis
    p2s = [[powers[i][s] for i in range(n)] for s in range(n)]  # column i
    approx = sum((d ** 0.5 if d > 0 else 1j * (-d) ** 0.5) for d in ds)
    if all(d > 0 for d in ds):
        r = approx.real if isinstance(approx, complex) else approx
        iv = (Fraction(int(r * 64) - 1, 64), Fraction(int(r * 64) + 2, 64))
    else:
        iv = None
    fld = NumberField(key, [int(c) if Fraction(c).denominator == 1 else c
                            for c in m],
                      real_interval=iv, approx=approx,
                      symbol="+".join(f"sqrt{d}" for d in ds))
    fld._mq_model = model
    fld._mq_p2s = p2s
    fld._mq_s2p = _invert_rows(p2s)
    return _register(fld)


def _solve_square(rows, n):
    """Solve an n x (n+1) rational system; returns solution list or None."""
    rows = [list(map(Fraction, r)) for r in rows]
    piv = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            return None
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    return [rows[i][n] for i in range(n)]


def _invert_rows(mat):
    n = len(mat)
    aug = [list(map(Fraction, mat[i])) + [Fraction(int(i == j))
                                          for j in range(n)]
           for i in range(n)]
    for c in range(n):
        pr = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pr] = aug[pr], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def mq_from_subset_coords(field, vec):
    """Element of an mq field from subset-basis coordinates."""
    s2p = field._mq_s2p
    n = field.degree
    coords = [sum(s2p[i][s] * vec[s] for s in range(n)) for i in range(n)]
    return field.element(coords)


def mq_subset_coords(elt):
    """Subset-basis coordinates of an mq-field element."""
    field = elt.field
    p2s = field._mq_p2s
    n = field.degree
    return [sum(p2s[s][i] * elt.coords[i] for i in range(n))
            for s in range(n)]


# ---------------------------------------------------------------------------
# named constants

def _make_constant(field, name):
    kind = field.key[0]
    if name == "1":
        return field.one()
    if kind == "zeta":
        n = field.key[1]
        if name == f"zeta{n}" or (n == 3 and name == "omega") \
                or (n == 4 and name == "i"):
            return field.gen()
        if name == "omega" and n % 3 == 0:
            return field.gen() ** (n // 3)
        if name == "zeta7" and n % 7 == 0:
            return field.gen() ** (n // 7)
        if name == "i" and n % 4 == 0:
            return field.gen() ** (n // 4)
        if name == "sqrt-7" and n % 7 == 0:
            z = field.constant("zeta7")
            return 1 + 2 * (z + z ** 2 + z ** 4)
        if name == "sqrt-3" and n % 3 == 0:
            return 1 + 2 * field.constant("omega")
        if name == "sqrt2" and n % 8 == 0:
            z8 = field.gen() ** (n // 8)
            return z8 + z8 ** 7
        if name == "sqrt3" and n % 12 == 0:
            z12 = field.gen() ** (n // 12)
            return z12 + z12 ** 11
        if name == "sqrt21" and n % 21 == 0:
            # sqrt21 = sqrt(-3) * sqrt(-7)  (both in the field, product real)
            return -(field.constant("sqrt-3") * field.constant("sqrt-7"))
    if kind == "sqrt":
        d = field.key[1]
        if name == f"sqrt{d}":
            return field.gen()
    if kind == "mq":
        ds = field.key[1]
        if name.startswith("sqrt"):
            d = int(name[4:])
            vec = _mq_subset_for(ds, d)
            if vec is not None:
                out = [Fraction(0)] * field.degree
                out[0] = Fraction(0)
                v = [Fraction(0)] * field.degree
                v[vec] = Fraction(1)
                return mq_from_subset_coords(field, v)
    raise FieldMismatch(f"constant {name!r} not available in {field.key}")


def _mq_subset_for(ds, d):
    """Subset index s with prod_{i in s} ds[i] == d, or None."""
    k = len(ds)
    for s in range(1 << k):
        p = 1
        for i in range(k):
            if s >> i & 1:
                p *= ds[i]
        if p == d:
            return s
    return None


# ---------------------------------------------------------------------------
# embeddings and composition

_EMBED_CACHE = {}


def _embedding_image(src, dst):
    """Image of src.gen() inside dst, for the canonical catalog injections."""
    ks, kd = src.key, dst.key
    if ks == kd:
        return dst.gen()
    if ks == ("q",):
        return dst.zero()
    if ks[0] == "zeta" and kd[0] == "zeta" and kd[1] % ks[1] == 0:
        return dst.gen() ** (kd[1] // ks[1])
    if ks[0] == "sqrt":
        d = ks[1]
        try:
            return dst.constant(f"sqrt{d}")
        except FieldMismatch:
            pass
    if ks[0] == "mq" and kd[0] == "mq" and set(ks[1]) <= set(kd[1]):
        img = dst.zero()
        for d in ks[1]:
            img = img + dst.constant(f"sqrt{d}")
        return img
    raise UnsupportedComposite(f"no canonical injection {ks} -> {kd}")


def embed(x, dst):
    """Coerce an AlgebraicNumber into a larger catalog field."""
    src = x.field
    if src == dst:
        return x
    key = (src.key, dst.key)
    if key not in _EMBED_CACHE:
        img = _embedding_image(src, dst)
        # verify the defining relation exactly
        acc = dst.zero()
        for c in reversed(src.min_poly):
            acc = acc * img + dst.from_rational(c)
        assert acc.is_zero(), f"embedding {key} fails minimal polynomial"
        if abs(img.complex_approx() - complex(src.approx)) > 1e-6:
            raise AssertionError(f"embedding {key} hits the wrong root")
        powers = [dst.one()]
        for _ in range(src.degree - 1):
            powers.append(powers[-1] * img)
        _EMBED_CACHE[key] = powers
    powers = _EMBED_CACHE[key]
    out = dst.zero()
    for c, p in zip(x.coords, powers):
        if c:
            out = out + p * dst.from_rational(c)
    return out


def compose_fields(f1, f2):
    """Smallest catalog field containing both f1 and f2."""
    if f1 == f2:
        return f1
    k1, k2 = f1.key, f2.key
    if k1 == ("q",):
        return f2
    if k2 == ("q",):
        return f1
    if k1[0] == "zeta" and k2[0] == "zeta":
        n = _lcm(k1[1], k2[1])
        if euler_phi(n) <= 48:
            return zeta_field(n)
        raise UnsupportedComposite(f"cyclotomic composite {n} too large")
    sq = {"sqrt", "mq"}
    if k1[0] in sq and k2[0] in sq:
        ds1 = set(k1[1:2] if k1[0] == "sqrt" else k1[1])
        ds2 = set(k2[1:2] if k2[0] == "sqrt" else k2[1])
        ds = ds1 | ds2
        primes = set()
        for d in ds:
            primes |= set(_prime_factors(abs(d)))
        if primes <= {2, 3, 7}:
            if len(ds) == 1:
                return sqrt_field(ds.pop())
            if ds <= {3, 7, 21} and all(d > 0 for d in ds):
                return mq_field((3, 7))
            if all(d > 0 for d in ds):
                return mq_field((2, 3, 7))
            gens = tuple(sorted(ds))
            return mq_field(gens)
        raise UnsupportedComposite(f"no catalog composite for {ds}")
    # quadratic constants inside cyclotomic fields
    for (a, b) in ((k1, k2), (k2, k1)):
        if a[0] == "sqrt" and b[0] == "zeta":
            target = NumberField._registry[b]
            try:
                target.constant(f"sqrt{a[1]}")
                return target
            except FieldMismatch:
                pass
            if a[1] == -7 and b[1] % 7 == 0:
                return target
    raise UnsupportedComposite(f"unsupported composite {k1} + {k2}")


def _lcm(a, b):
    return a * b // gcd(a, b)


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# convenience: the fields used throughout the verification suites
QQ = rational_field()


def common_field(*fields):
    out = fields[0]
    for f in fields[1:]:
        out = compose_fields(out, f)
    return out


def as_element(x, field):
    """Coerce an int/Fraction/AlgebraicNumber into `field`."""
    if isinstance(x, AlgebraicNumber):
        return embed(x, field)
    return field.from_rational(x)
