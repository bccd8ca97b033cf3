"""Integral lattices: Smith normal form, discriminant groups and their
quadratic forms, the Gauss-sum signature test, isotropic vector search and
local (residue) obstruction certificates.

Vectors are integer coordinate columns in the lattice basis; the pairing is
<u, v> = u^T G v for the Gram matrix G.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd, isqrt

from .errors import ModulusTooLarge, NotEven
from .linalg import frac_det, frac_mat_inv, frac_mat_mul
from .numberfield import zeta_field, squarefree_decompose

# reference Gram matrices of the two transcendental-part lattices
T1_GRAM = [[-2, 1, 0], [1, 10, 0], [0, 0, -28]]
T2_GRAM = [[-2, 1, 0, 0], [1, 10, 0, 0], [0, 0, 0, 7], [0, 0, 7, 0]]
U_GRAM = [[0, 1], [1, 0]]
A2_GRAM = [[2, -1], [-1, 2]]


def smith_normal_form(M):
    """U M V = D with U, V unimodular and D = diag(d1 | d2 | ...).

    Returns (U, D, V) as integer row-lists.
    """
    A = [list(map(int, r)) for r in M]
    n, m = len(A), len(A[0])
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i, j, q):  # row_i -= q*row_j
        A[i] = [a - q * b for a, b in zip(A[i], A[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col_i -= q*col_j
        for r in range(n):
            A[r][i] -= q * A[r][j]
        for r in range(m):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(n):
            A[r][i], A[r][j] = A[r][j], A[r][i]
        for r in range(m):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(n, m):
        # find a nonzero pivot of least magnitude in the trailing block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (best is None or
                                abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, n):
            if A[i][t]:
                row_op(i, t, A[i][t] // A[t][t])
                if A[i][t]:
                    dirty = True
        for j in range(t + 1, m):
            if A[t][j]:
                col_op(j, t, A[t][j] // A[t][t])
                if A[t][j]:
                    dirty = True
        if dirty:
            continue
        # divisibility: pivot must divide the trailing block
        fix = None
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if A[i][j] % A[t][t]:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            row_op(t, fix, -1)  # add row `fix` into the pivot row
            continue
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, A, V


def minor_gcds(M):
    """d_k = gcd of all k x k minors; independent oracle for the Smith
    invariant factors (d_k / d_(k-1))."""
    from itertools import combinations
    n, m = len(M), len(M[0])
    out = []
    for k in range(1, min(n, m) + 1):
        g = 0
        for rows in combinations(range(n), k):
            for cols in combinations(range(m), k):
                sub = [[Fraction(M[i][j]) for j in cols] for i in rows]
                g = gcd(g, int(frac_det(sub)))
        out.append(abs(g))
    return out


@dataclass
class Lattice:
    gram: list

    def __post_init__(self):
        n = len(self.gram)
        assert all(len(r) == n for r in self.gram)
        assert all(self.gram[i][j] == self.gram[j][i]
                   for i in range(n) for j in range(n)), "Gram not symmetric"
        assert frac_det(self.gram) != 0, "degenerate Gram matrix"

    @property
    def rank(self):
        return len(self.gram)

    def det(self):
        return int(frac_det(self.gram))

    def signature(self):
        """(p, q) computed by exact rational congruence diagonalization."""
        n = self.rank
        A = [[Fraction(x) for x in row] for row in self.gram]
        p = q = 0
        idx = 0
        while idx < n:
            if A[idx][idx] == 0:
                j = next((j for j in range(idx + 1, n) if A[idx][j] != 0),
                         None)
                assert j is not None
                # row/col addition to create a nonzero diagonal entry
                for r in range(n):
                    A[idx][r] += A[j][r]
                for r in range(n):
                    A[r][idx] += A[r][j]
            d = A[idx][idx]
            if d > 0:
                p += 1
            else:
                q += 1
            for i in range(idx + 1, n):
                f = A[i][idx] / d
                if f:
                    for r in range(n):
                        A[i][r] -= f * A[idx][r]
                    for r in range(n):
                        A[r][i] -= f * A[r][idx]
            idx += 1
        return p, q

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def bilinear(self, u, v):
        return sum(Fraction(ui) * self.gram[i][j] * Fraction(vj)
                   for i, ui in enumerate(u) for j, vj in enumerate(v))


@dataclass
class DiscriminantGroup:
    lattice: Lattice
    invariant_factors: list          # the d_i > 1
    generators: list                 # dual vectors (Fraction lists)
    gram_dual: list                  # pairing matrix of the generators
    orders: list = dc_field(default_factory=list)

    def q_value(self, coeffs):
        """Quadratic form value q(sum a_i g_i) in Q/2Z, as a Fraction
        reduced to [0, 2)."""
        val = Fraction(0)
        n = len(self.generators)
        for i in range(n):
            for j in range(n):
                val += Fraction(coeffs[i]) * self.gram_dual[i][j] * \
                    Fraction(coeffs[j])
        return val % 2

    def b_value(self, c1, c2):
        """Bilinear form value in Q/Z."""
        val = Fraction(0)
        n = len(self.generators)
        for i in range(n):
            for j in range(n):
                val += Fraction(c1[i]) * self.gram_dual[i][j] * \
                    Fraction(c2[j])
        return val % 1

    def elements(self):
        """All coefficient tuples of the finite group."""
        out = [()]
        for d in self.invariant_factors:
            out = [t + (a,) for t in out for a in range(d)]
        return out

    def order(self):
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n


def discriminant_group(lat):
    """L*/L with generators lifted through the Smith transforms.

    With U G V = D, the class of the dual vector G^-1 U^-1 e_i generates a
    cyclic factor of order d_i.
    """
    G = lat.gram
    U, D, V = smith_normal_form(G)
    n = lat.rank
    Uinv = frac_mat_inv(U)
    Ginv = frac_mat_inv(G)
    gens = []
    factors = []
    for i in range(n):
        d = D[i][i]
        if d == 1:
            continue
        e = [Fraction(int(j == i)) for j in range(n)]
        m = [sum(Uinv[r][c] * e[c] for c in range(n)) for r in range(n)]
        x = [sum(Ginv[r][c] * m[c] for c in range(n)) for r in range(n)]
        gens.append(x)
        factors.append(d)
    gd = [[lat.bilinear(x, y) for y in gens] for x in gens]
    return DiscriminantGroup(lat, factors, gens, gd)


def three_part_generator(disc):
    """Coefficient tuple generating the 3-torsion part (must be Z/3)."""
    three = [(i, d) for i, d in enumerate(disc.invariant_factors)
             if d % 3 == 0]
    assert len(three) == 1, "expect a single cyclic 3-part"
    i, d = three[0]
    coeffs = [0] * len(disc.invariant_factors)
    coeffs[i] = d // 3
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# Gauss-sum signature test

def milgram_phase(lat):
    """Verify sum_x exp(pi i q(x)) = sqrt(|A|) zeta_8^(signature) exactly.

    Works in the cyclotomic field of the minimal sufficient conductor;
    returns (signature mod 8, True/False).
    """
    if not lat.is_even():
        raise NotEven("discriminant form needs an even lattice")
    disc = discriminant_group(lat)
    p, q = lat.signature()
    sig = (p - q) % 8
    order = disc.order()
    # collect q-values (denominators divide 2*det); conductor must carry
    # the half-integral exponents, eighth roots, and sqrt(squarefree part)
    qs = [disc.q_value(c) for c in disc.elements()]
    den = 1
    for v in qs:
        den = den * v.denominator // gcd(den, v.denominator)
    _, mfree = squarefree_decompose(order)
    N = 8
    N = N * (2 * den) // gcd(N, 2 * den)
    modd = mfree
    while modd % 2 == 0:
        modd //= 2
    N = N * modd // gcd(N, modd)
    F = zeta_field(N)
    z = F.gen()
    total = F.zero()
    counts = {}
    for v in qs:
        e = int(v * N / 2) % N      # exp(pi i v) = zeta_N^(v N / 2)
        counts[e] = counts.get(e, 0) + 1
    for e, c in counts.items():
        total = total + (z ** e) * c
    s, m = squarefree_decompose(order)
    target = F.from_rational(s) * _sqrt_squarefree(F, m, N) * \
        (z ** ((N // 8) * sig))
    return sig, (total - target).is_zero()


def _sqrt_squarefree(F, m, N):
    """sqrt(m) for squarefree m > 0 inside the conductor-N field."""
    if m == 1:
        return F.one()
    out = F.one()
    if m % 2 == 0:
        assert N % 8 == 0
        z8 = F.gen() ** (N // 8)
        out = out * (z8 + z8 ** 7)
        m //= 2
    if m > 1:
        assert N % m == 0
        zm = F.gen() ** (N // m)
        gauss = F.zero()
        for k in range(1, m):
            gauss = gauss + _jacobi(k, m) * zm ** k
        if m % 4 == 1:
            out = out * gauss
        else:
            # gauss sum equals i sqrt(m); divide by i = zeta_N^(N/4)
            assert N % 4 == 0
            out = out * gauss * (F.gen() ** (N // 4)).inverse()
    return out


def _jacobi(a, n):
    """Jacobi symbol (a/n) for odd n > 0."""
    assert n > 0 and n % 2 == 1
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


# ---------------------------------------------------------------------------
# isotropic vectors and residue obstructions

def isotropic_search(lat, bound):
    """Nonzero v with v.G.v = 0 and max |v_i| <= bound, or None.

    For rank 3 the third coordinate is solved from the first two; otherwise
    a direct box scan is used.
    """
    assert bound >= 1
    G = lat.gram
    n = lat.rank
    if n == 3 and G[0][2] == G[1][2] == 0:
        c = -G[2][2]
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                q2 = G[0][0] * x * x + 2 * G[0][1] * x * y + G[1][1] * y * y
                if c == 0:
                    if q2 == 0 and (x or y):
                        return (x, y, 0)
                    continue
                if q2 % c == 0 and q2 // c >= 0:
                    z2 = q2 // c
                    z = isqrt(z2)
                    if z * z == z2 and z <= bound and (x or y or z):
                        return (x, y, z)
        return None
    # generic small-rank box scan
    from itertools import product
    rng = range(-bound, bound + 1)
    for v in product(rng, repeat=n):
        if any(v) and lat.bilinear(v, v) == 0:
            return v
    return None


def local_obstruction(form, modulus):
    """True iff Q(x) = 0 (mod modulus) has no primitive solution.

    `form` is a list of (coeff, exponent-tuple) monomials of a quadratic
    form with integer coefficients; `modulus` must be a prime power.  A
    primitive zero of Q over the p-adic integers reduces to a primitive
    solution modulo p^k, so obstruction certifies local anisotropy.
    """
    if modulus > 2 ** 10:
        raise ModulusTooLarge(f"{modulus} exceeds the supported range")
    p = _prime_of(modulus)
    total = _count_solutions(form, modulus)
    # imprimitive solutions: x = p y with y mod p^(k-1) and
    # Q(x) = p^2 Q(y) = 0 mod p^k, i.e. Q(y) = 0 mod p^(k-2)
    nvars = len(form[0][1])
    k = 0
    mm = modulus
    while mm > 1:
        mm //= p
        k += 1
    if k <= 2:
        zero_div = p ** ((k - 1) * nvars)
    else:
        sub = _count_solutions(form, modulus // (p * p))
        # each class mod p^(k-2) lifts to p^nvars classes mod p^(k-1)
        zero_div = sub * p ** nvars
    primitive = total - zero_div
    assert primitive >= 0
    return primitive == 0


def _prime_of(m):
    for p in (2, 3, 5, 7, 11, 13):
        if m % p == 0:
            q = m
            while q % p == 0:
                q //= p
            if q != 1:
                raise ValueError(f"{m} is not a prime power")
            return p
    raise ValueError(f"{m} is not a small prime power")


def _count_solutions(form, modulus):
    """Number of solutions of Q = 0 mod `modulus` over (Z/modulus)^n,
    by convolving per-block value distributions."""
    if modulus == 1:
        nvars = len(form[0][1])
        return 1
    nvars = len(form[0][1])
    # group variables into connected blocks sharing cross terms
    adj = {i: set() for i in range(nvars)}
    for _, m in form:
        vs = [i for i, e in enumerate(m) if e]
        for a in vs:
            for b in vs:
                if a != b:
                    adj[a].add(b)
    blocks, seen = [], set()
    for i in range(nvars):
        if i in seen:
            continue
        comp, todo = set(), [i]
        while todo:
            v = todo.pop()
            if v in comp:
                continue
            comp.add(v)
            todo.extend(adj[v] - comp)
        seen |= comp
        blocks.append(sorted(comp))
    dist = {0: 1}
    for blk in blocks:
        terms = [(c, m) for c, m in form
                 if any(m[i] for i in blk)]
        bd = {}
        from itertools import product
        for vals in product(range(modulus), repeat=len(blk)):
            assign = dict(zip(blk, vals))
            v = 0
            for c, m in terms:
                t = c
                for i, e in enumerate(m):
                    if e:
                        t *= assign[i] ** e
                v += t
            v %= modulus
            bd[v] = bd.get(v, 0) + 1
        new = {}
        for a, ca in dist.items():
            for b, cb in bd.items():
                key = (a + b) % modulus
                new[key] = new.get(key, 0) + ca * cb
        dist = new
    return dist.get(0, 0)


def quadratic_form_from_gram(gram, scale=1):
    """Monomial list of v -> scale * v.G.v (scale clears half-integers)."""
    n = len(gram)
    out = []
    for i in range(n):
        c = gram[i][i] * scale
        if c:
            m = [0] * n
            m[i] = 2
            out.append((int(c), tuple(m)))
    for i in range(n):
        for j in range(i + 1, n):
            c = 2 * gram[i][j] * scale
            if c:
                m = [0] * n
                m[i] = 1
                m[j] = 1
                out.append((int(c), tuple(m)))
    return out
