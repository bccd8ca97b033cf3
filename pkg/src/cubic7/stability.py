"""Numerical-criterion stability for the two coefficient families.

A one-parameter subgroup of the diagonal torus is an integer vector r with
sum zero; a monomial survives the limit iff its weight is nonnegative.  The
destabilizer oracle decides exact rational feasibility of the associated
linear systems by Fourier-Motzkin elimination and returns integer
certificates; the closed-form support conditions are checked against the
oracle over every support pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


@dataclass(frozen=True)
class OnePS:
    """Integer weight vector of a diagonal one-parameter subgroup."""
    r: tuple

    def __post_init__(self):
        assert sum(self.r) == 0, "weights must sum to zero"
        assert any(self.r), "trivial subgroup"


# weights of the eight coefficient slots under diag(t^r1, ..., t^r6):
#   slots 1..6: x_i^2 x_(i+1) cyclically; slot 7: x1 x3 x5; slot 8: x2 x4 x6
def hm_weights(r):
    r = list(r)
    assert len(r) == 6
    w = [2 * r[i] + r[(i + 1) % 6] for i in range(6)]
    w.append(r[0] + r[2] + r[4])
    w.append(r[1] + r[3] + r[5])
    return w


# the same weights as linear forms in (r1, ..., r6)
_WEIGHT_FORMS = [
    [2, 1, 0, 0, 0, 0], [0, 2, 1, 0, 0, 0], [0, 0, 2, 1, 0, 0],
    [0, 0, 0, 2, 1, 0], [0, 0, 0, 0, 2, 1], [1, 0, 0, 0, 0, 2],
    [1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1],
]


# ---------------------------------------------------------------------------
# exact linear feasibility by Fourier-Motzkin elimination

def _fm_eliminate(ineqs, nvars):
    """ineqs: rows (a_1..a_n, b) meaning a.x + b >= 0.  Returns a feasible
    rational point or None."""
    rows = [list(map(Fraction, q)) for q in ineqs]
    stack = []
    for v in range(nvars):
        pos = [q for q in rows if q[v] > 0]
        neg = [q for q in rows if q[v] < 0]
        zer = [q for q in rows if q[v] == 0]
        new = list(zer)
        for p in pos:
            for q in neg:
                # eliminate x_v between p and q
                comb = [p[i] * (-q[v]) + q[i] * p[v]
                        for i in range(nvars + 1)]
                comb[v] = Fraction(0)
                new.append(comb)
        stack.append((v, pos, neg))
        rows = new
    for q in rows:
        if q[nvars] < 0:
            return None
    # back-substitute
    x = [Fraction(0)] * nvars
    for v, pos, neg in reversed(stack):
        lo, hi = None, None
        for p in pos:  # x_v >= -(rest)/p[v]
            val = -(sum(p[i] * x[i] for i in range(nvars) if i != v)
                    + p[nvars]) / p[v]
            lo = val if lo is None else max(lo, val)
        for q in neg:  # x_v <= bound
            val = -(sum(q[i] * x[i] for i in range(nvars) if i != v)
                    + q[nvars]) / q[v]
            hi = val if hi is None else min(hi, val)
        if lo is None and hi is None:
            x[v] = Fraction(0)
        elif lo is None:
            x[v] = hi
        elif hi is None:
            x[v] = lo
        else:
            assert lo <= hi
            x[v] = (lo + hi) / 2
    return x


def _sum_zero_section(vec5):
    """Lift (r1..r5) to (r1..r6) with zero sum."""
    return list(vec5) + [-sum(vec5)]


def _weight_form_reduced(idx):
    """Weight linear form in (r1..r5) after eliminating r6 = -(r1+..+r5);
    returns (coeffs5, const)."""
    full = _WEIGHT_FORMS[idx]
    red = [full[i] - full[5] for i in range(5)]
    return red


def _integerize(vec):
    den = 1
    for v in vec:
        den = den * v.denominator // gcd(den, v.denominator)
    out = [int(v * den) for v in vec]
    g = 0
    for v in out:
        g = gcd(g, abs(v))
    if g > 1:
        out = [v // g for v in out]
    return out


def destabilizer_exists(active, strict):
    """Decide existence of a one-parameter subgroup with positive (strict)
    or nonnegative-and-nontrivial weights on the active slots.

    active: iterable of slot indices (0-based) with nonzero coefficient.
    Returns an integer certificate OnePS or None.  By homogeneity, strict
    positivity is normalized to >= 1.
    """
    active = sorted(set(active))
    if strict:
        if not active:
            return OnePS((1, -1, 0, 0, 0, 0))
        ineqs = []
        for i in active:
            red = _weight_form_reduced(i)
            ineqs.append(red + [-1])  # w_i(r) - 1 >= 0
        sol = _fm_eliminate(ineqs, 5)
        if sol is None:
            return None
        r = _integerize(_sum_zero_section(sol))
        cert = OnePS(tuple(r))
        ws = hm_weights(cert.r)
        assert all(ws[i] > 0 for i in active)
        return cert
    # nonstrict: need a NONZERO r with all active weights >= 0; the cone
    # contains such a point iff some coordinate can be pushed to +-1
    base = [_weight_form_reduced(i) + [0] for i in active]
    for j in range(6):
        for sgn in (1, -1):
            ineqs = list(base)
            if j < 5:
                coord = [0] * 5
                coord[j] = sgn
                ineqs.append(coord + [-1])  # sgn * r_j >= 1
            else:
                ineqs.append([-sgn] * 5 + [-1])  # sgn * r6 >= 1
            sol = _fm_eliminate(ineqs, 5)
            if sol is not None:
                r = _integerize(_sum_zero_section(sol))
                cert = OnePS(tuple(r))
                ws = hm_weights(cert.r)
                assert all(ws[i] >= 0 for i in active)
                return cert
    return None


def classify_c7_oracle(active):
    """LP classification of a support pattern of the eight-slot family."""
    if destabilizer_exists(active, strict=True) is not None:
        return "unstable"
    if destabilizer_exists(active, strict=False) is not None:
        return "semistable_not_stable"
    return "stable"


def closed_form_c7(active):
    """Support-condition classification of the eight-slot family."""
    s = set(active)
    semistable = ({6, 7} <= s) or ({1, 3, 5, 6} <= s) or \
        ({0, 2, 4, 7} <= s) or ({0, 1, 2, 3, 4, 5} <= s)
    stable = {0, 1, 2, 3, 4, 5} <= s
    if stable:
        return "stable"
    if semistable:
        return "semistable_not_stable"
    return "unstable"


# the four-slot family: the acting torus is one-dimensional,
# diag(t, t^-1, t, t^-1, t, t^-1), with slot weights (n, -n, 3n, -3n)
F21_WEIGHTS = (1, -1, 3, -3)


def classify_f21_oracle(active):
    active = sorted(set(active))
    for n in (1, -1):
        ws = [F21_WEIGHTS[i] * n for i in active]
        if all(w > 0 for w in ws):
            return "unstable"
    for n in (1, -1):
        ws = [F21_WEIGHTS[i] * n for i in active]
        if all(w >= 0 for w in ws):
            return "semistable_not_stable"
    return "stable"


def closed_form_f21(active):
    """Stable iff one of the four pairs {c1,c2}, {c1,c4}, {c2,c3}, {c3,c4}
    is fully active; in this family semistable implies stable, and the
    unstable locus is the union of the lines c1 = c3 = 0 and c2 = c4 = 0."""
    s = set(active)
    for pair in ({0, 1}, {0, 3}, {1, 2}, {2, 3}):
        if pair <= s:
            return "stable"
    return "unstable"


def sweep_c7():
    """All 256 support patterns: oracle vs closed form.  Returns rows."""
    rows = []
    for mask in range(256):
        active = [i for i in range(8) if mask >> i & 1]
        oracle = classify_c7_oracle(active)
        closed = closed_form_c7(active)
        cert = None
        if oracle == "unstable":
            cert = destabilizer_exists(active, strict=True)
        elif oracle == "semistable_not_stable":
            cert = destabilizer_exists(active, strict=False)
        rows.append({
            "mask": mask, "active": active,
            "oracle": oracle, "closed_form": closed,
            "agree": oracle == closed,
            "certificate": list(cert.r) if cert else None,
        })
    return rows


def sweep_f21():
    rows = []
    for mask in range(16):
        active = [i for i in range(4) if mask >> i & 1]
        oracle = classify_f21_oracle(active)
        closed = closed_form_f21(active)
        rows.append({
            "mask": mask, "active": active,
            "oracle": oracle, "closed_form": closed,
            "agree": oracle == closed,
        })
    return rows


def verify_quoted_certificates():
    """The two quoted destabilizing vectors verify against their systems."""
    out = {}
    r1 = (-25, -1, 3, 1, -1, 23)
    ws = hm_weights(r1)
    out["not_semistable_cert"] = (sum(r1) == 0 and
                                  all(ws[i] > 0
                                      for i in (1, 2, 3, 4, 5, 7)))
    r2 = (-8, -5, 10, 1, -2, 4)
    ws2 = hm_weights(r2)
    out["not_stable_cert"] = (sum(r2) == 0 and
                              all(ws2[i] >= 0 for i in range(8) if i != 0))
    return out
