"""Series and combinatorial identities shared by the rectangle and ellipse cases.

T_{v,alpha} is the pair of tanh-weighted odd-power sums

    T_{v,a} = a^{-1-v/2}/2 * S_v(a) + e^{i pi v/2} a^{1+v/2}/2 * S_v(1/a),
    S_v(a)  = sum_{m>=0} tanh(a (2m+1) pi/2) / (2m+1)^{3+v},

and T_v = S_v(1).  For even v the T_{v,a} obey a finite recursion seeded by
T_{0,a} = pi^3/32.  The d coefficients solve a unit lower-triangular
binomial system and are kept as exact rationals.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, pi, ceil, tanh, exp
import cmath

from scipy.special import zeta as hurwitz_zeta


@dataclass(frozen=True)
class SeriesValue:
    value: complex
    terms_used: int
    tail_bound: float

    def __float__(self):
        return float(self.value.real) if isinstance(self.value, complex) else float(self.value)


def _odd_power_tail(s, m0):
    """sum_{m>=m0} (2m+1)^{-s} = 2^{-s} zeta(s, m0 + 1/2)."""
    return 2.0 ** (-s) * float(hurwitz_zeta(s, m0 + 0.5))


def tanh_odd_sum(v, a):
    """S_v(a) with the head summed term by term and the saturated tail in
    closed form.  Returns (value, terms, tail_bound)."""
    s = 3.0 + v
    M = max(1, ceil(40.0 / (a * pi)))
    head = 0.0
    for m in range(M):
        head += tanh(a * (2 * m + 1) * pi / 2) / (2 * m + 1) ** s
    tail = _odd_power_tail(s, M)
    # tanh(x) >= 1 - 2 e^{-2x}; for m >= M, x >= 20
    bound = 2.0 * exp(-2.0 * a * (2 * M + 1) * pi / 2) * tail
    return head + tail, M, bound


def T_direct(v, alpha):
    """T_{v,alpha} by direct summation.  Real for even v, complex otherwise."""
    if not alpha > 0 or v < 0:
        raise ValueError("T_direct needs alpha > 0 and v >= 0")
    s1, m1, b1 = tanh_odd_sum(v, alpha)
    s2, m2, b2 = tanh_odd_sum(v, 1.0 / alpha)
    w1 = alpha ** (-1 - v / 2) / 2
    w2 = alpha ** (1 + v / 2) / 2
    if float(v).is_integer() and int(v) % 2 == 0:
        phase = (-1) ** (int(v) // 2)
        val = w1 * s1 + phase * w2 * s2
    else:
        val = w1 * s1 + cmath.exp(1j * pi * v / 2) * w2 * s2
    return SeriesValue(val, m1 + m2, w1 * b1 + w2 * b2 + 1e-16 * abs(val))


def T_plain(v):
    """T_v = sum tanh((2m+1) pi/2)/(2m+1)^{3+v}."""
    return tanh_odd_sum(v, 1.0)[0]


def T_recursive(v, alpha):
    """T_{v,alpha} for even v from the finite recursion."""
    if int(v) != v or v < 0 or int(v) % 2:
        raise ValueError("T_recursive needs an even nonnegative integer v")
    n = int(v) // 2
    sa = alpha ** 0.5
    up, dn = sa + 1j / sa, sa - 1j / sa
    vals = [pi ** 3 / 32]
    for w in range(1, n + 1):
        lead = (pi ** (3 + 2 * w) / (factorial(2 * w) * 4 ** (w + 3) * (w + 1) * (2 * w + 1))
                * ((up ** (2 + 2 * w) - dn ** (2 + 2 * w)) / 2j).real)
        acc = 0.0
        for q in range(w):
            e = 2 * w - 2 * q
            acc += pi ** e / (factorial(e) * 4 ** (w - q)) * ((up ** e + dn ** e) / 2).real * vals[q]
        vals.append(lead - acc)
    return vals[n]


def T4_recursive(n):
    """T_{4n} at alpha = 1 from the reduced recursion."""
    vals = [pi ** 3 / 32]
    for w in range(1, n + 1):
        lead = (-1) ** w * pi ** (4 * w + 3) / (factorial(4 * w) * 4 ** (w + 2) * (4 * w + 1) * (4 * w + 2))
        acc = sum((-1) ** (w - q) * pi ** (4 * (w - q)) / (factorial(4 * (w - q)) * 4 ** (w - q)) * vals[q]
                  for q in range(w))
        vals.append(lead - acc)
    return vals[n]


# ---------------------------------------------------------------------------
# d_l^{(k)} coefficients
# ---------------------------------------------------------------------------

def d_coeffs_exact(b, k):
    """[d_k^{(k)}, ..., d_b^{(k)}] as Fractions."""
    if not (isinstance(b, int) and b >= 1 and 0 <= k <= b - 1):
        raise ValueError("d_coeffs needs an integer b >= 1 and 0 <= k <= b-1")
    out = []
    for ell in range(k, b + 1):
        d = Fraction(comb(2 * ell, ell - k), b + ell)
        for m in range(ell - k):
            d += Fraction(2 * ell * (-1) ** (ell - k - m) * factorial(k + ell + m - 1),
                          (b + k + m) * factorial(m) * factorial(2 * k + m) * factorial(ell - k - m))
        out.append(d)
    return out


def d_coeffs(b, k):
    return [float(x) for x in d_coeffs_exact(b, k)]


def binomial_matrix(b, k):
    """A_{ij} = C(2k+2i, i-j), i, j = 0..b-k (exact integers)."""
    n = b - k + 1
    return [[comb(2 * k + 2 * i, i - j) if i >= j else 0 for j in range(n)] for i in range(n)]


def binomial_matrix_inverse(b, k):
    """Explicit lower-triangular inverse of binomial_matrix, as Fractions."""
    n = b - k + 1
    B = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            top = 2 * k + i + j
            if top == 0:
                # 2(k+i) (2k+i+j-1)! -> 1 in the limit k = i = j = 0
                num = Fraction(1)
            else:
                num = Fraction(2 * (k + i) * factorial(top - 1))
            B[i][j] = (-1) ** (i - j) * num / (factorial(i - j) * factorial(2 * k + 2 * j))
    return B


def d_identity_residual(b, k, n):
    """LHS - RHS of (n/2+b)^{-1} C(n, n/2-k) = sum_l d_l C(n, n/2-l), exact."""
    h = n // 2
    d = d_coeffs_exact(b, k)
    lhs = Fraction(comb(n, h - k) if h >= k else 0, 1) / Fraction(h + b)
    rhs = sum(dl * (comb(n, h - ell) if h >= ell else 0) for ell, dl in zip(range(k, b + 1), d))
    return lhs - rhs
