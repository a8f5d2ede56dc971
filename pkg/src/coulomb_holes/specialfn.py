"""Scalar special functions used by the closed forms.

Everything here works on Python floats / complex numbers.  The digamma
family uses upward recurrence followed by the Stirling-type asymptotic
series; the incomplete beta function is evaluated by quadrature so that
a non-positive second shape parameter is allowed.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, log, pi, sqrt, exp
import cmath

import numpy as np
from scipy import integrate


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


class PoleError(ArithmeticError):
    """Evaluation point sits on (or numerically at) a pole."""


# ---------------------------------------------------------------------------
# Bernoulli numbers, exact up to B_30
# ---------------------------------------------------------------------------

BERNOULLI_MAX = 30


def _bernoulli_table(nmax):
    # B_0..B_nmax from sum_{k<=n} C(n+1,k) B_k = 0
    b = [Fraction(1)]
    for n in range(1, nmax + 1):
        s = sum(comb(n + 1, k) * b[k] for k in range(n))
        b.append(-s / (n + 1))
    return tuple(b)


BERNOULLI = _bernoulli_table(BERNOULLI_MAX)


def bernoulli(n):
    """Exact Bernoulli number B_n (convention B_1 = -1/2), n <= 30."""
    if n < 0 or n > BERNOULLI_MAX:
        raise OverflowError(f"Bernoulli numbers are tabulated up to B_{BERNOULLI_MAX}")
    return BERNOULLI[n]


def zeta_even(m):
    """zeta(2m) from the Bernoulli formula; supported for 2m <= 30."""
    if int(m) != m or m < 1:
        raise DomainError("zeta_even needs a positive integer m")
    m = int(m)
    if 2 * m > BERNOULLI_MAX:
        raise OverflowError(f"zeta_even is capped at zeta({BERNOULLI_MAX})")
    b = abs(BERNOULLI[2 * m])
    return (2 * pi) ** (2 * m) * float(b) / (2 * factorial(2 * m))


# ---------------------------------------------------------------------------
# digamma / trigamma
# ---------------------------------------------------------------------------

_RECUR_SHIFT = 8.0
# B_2k / (2k) and B_2k for the asymptotic tails, k = 1..10
_PSI_COEF = [float(BERNOULLI[2 * k]) / (2 * k) for k in range(1, 11)]
_TRI_COEF = [float(BERNOULLI[2 * k]) for k in range(1, 11)]


def _check_positive(x, name):
    x = float(x)
    if not x > 0:
        raise DomainError(f"{name} is only implemented for x > 0, got {x}")
    return x


def digamma(x):
    """psi(x) = Gamma'(x)/Gamma(x) for x > 0."""
    x = _check_positive(x, "digamma")
    acc = 0.0
    while x < _RECUR_SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    tail = 0.0
    p = inv2
    for c in _PSI_COEF:
        tail += c * p
        p *= inv2
    return acc + log(x) - 0.5 / x - tail


def trigamma(x):
    """psi'(x) = sum_{m>=0} 1/(m+x)^2 for x > 0."""
    x = _check_positive(x, "trigamma")
    acc = 0.0
    while x < _RECUR_SHIFT:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    tail = 0.0
    p = inv2 * inv
    for c in _TRI_COEF:
        tail += c * p
        p *= inv2
    return acc + inv + 0.5 * inv2 + tail


# ---------------------------------------------------------------------------
# incomplete beta by quadrature
# ---------------------------------------------------------------------------

def incomplete_beta(z, alpha, beta):
    """B(z; alpha, beta) = int_0^z x^(alpha-1) (1-x)^(beta-1) dx.

    beta may be zero or negative since z < 1 keeps the integrand bounded
    away from x = 1.  The algebraic endpoint factor x^(alpha-1) is handed
    to QUADPACK as a weight.
    """
    z = float(z)
    if not 0.0 < z < 1.0:
        raise DomainError("incomplete_beta needs 0 < z < 1")
    if not alpha > 0:
        raise DomainError("incomplete_beta needs alpha > 0")
    val, err = integrate.quad(lambda x: (1.0 - x) ** (beta - 1.0), 0.0, z,
                              weight="alg", wvar=(alpha - 1.0, 0.0),
                              epsabs=0.0, epsrel=1e-13, limit=200)
    return val


# ---------------------------------------------------------------------------
# complete elliptic integrals (AGM)
# ---------------------------------------------------------------------------

def _agm(a, b):
    for _ in range(64):
        if abs(a - b) <= 1e-16 * a:
            break
        a, b = 0.5 * (a + b), sqrt(a * b)
    return 0.5 * (a + b)


def _check_modulus(kappa):
    kappa = float(kappa)
    if not 0.0 < kappa < 1.0:
        raise DomainError("the elliptic modulus must lie in (0, 1)")
    return kappa


def elliptic_K(kappa):
    """K(kappa) = int_0^1 dt / sqrt((1-t^2)(1-kappa^2 t^2))."""
    kappa = _check_modulus(kappa)
    return pi / (2.0 * _agm(1.0, sqrt((1.0 - kappa) * (1.0 + kappa))))


def elliptic_Kprime(kappa):
    """K'(kappa) = K(sqrt(1-kappa^2))."""
    kappa = _check_modulus(kappa)
    return pi / (2.0 * _agm(1.0, kappa))


# ---------------------------------------------------------------------------
# theta functions and sn
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Nome:
    """Jacobi nome q = exp(-pi K'/K) attached to a modulus kappa."""
    kappa: float
    q: float

    @classmethod
    def from_modulus(cls, kappa):
        kappa = _check_modulus(kappa)
        return cls(kappa, exp(-pi * elliptic_Kprime(kappa) / elliptic_K(kappa)))


THETA_RTOL = 1e-17
_THETA_NMAX = 200


def _theta_sum(term, first):
    # works for scalars and numpy arrays; stops once every entry has converged
    s = first
    for n in range(1, _THETA_NMAX):
        t = term(n)
        s = s + t
        if np.all(np.abs(t) <= THETA_RTOL * np.abs(s)):
            return s
    return s


def _check_nome(q):
    if not 0.0 < q < 0.9:
        raise DomainError("theta series need 0 < q < 0.9")


def _cplx(z):
    return np.asarray(z, dtype=complex) if np.ndim(z) else complex(z)


def theta1(z, q):
    _check_nome(q)
    z = _cplx(z)
    return 2.0 * _theta_sum(
        lambda n: (-1) ** n * q ** ((n + 0.5) ** 2) * np.sin((2 * n + 1) * z),
        q ** 0.25 * np.sin(z))


def theta2(z, q):
    _check_nome(q)
    z = _cplx(z)
    return 2.0 * _theta_sum(
        lambda n: q ** ((n + 0.5) ** 2) * np.cos((2 * n + 1) * z),
        q ** 0.25 * np.cos(z))


def theta3(z, q):
    _check_nome(q)
    z = _cplx(z)
    return _theta_sum(lambda n: 2.0 * q ** (n * n) * np.cos(2 * n * z), 1.0 + 0 * z)


def theta4(z, q):
    _check_nome(q)
    z = _cplx(z)
    return _theta_sum(lambda n: 2.0 * (-1) ** n * q ** (n * n) * np.cos(2 * n * z),
                      1.0 + 0 * z)


def _jacobi_parts(z, kappa):
    nome = Nome.from_modulus(kappa)
    K = elliptic_K(kappa)
    zeta = np.pi * _cplx(z) / (2.0 * K)
    q = nome.q
    den = theta4(zeta, q)
    if np.any(np.abs(den) < 1e-300):
        raise PoleError(f"Jacobi functions have a pole near z = {z}")
    return zeta, q, den


def jacobi_sn(z, kappa):
    """sn(z, kappa) as a ratio of theta functions, for complex z (or arrays)."""
    zeta, q, den = _jacobi_parts(z, kappa)
    num = theta1(zeta, q)
    if np.any(np.abs(den) < 1e-14 * np.abs(num)):
        raise PoleError(f"sn has a pole at z = {z}")
    return theta3(0.0, q) / theta2(0.0, q) * num / den


def jacobi_cn(z, kappa):
    zeta, q, den = _jacobi_parts(z, kappa)
    return theta4(0.0, q) / theta2(0.0, q) * theta2(zeta, q) / den


def jacobi_dn(z, kappa):
    zeta, q, den = _jacobi_parts(z, kappa)
    return theta4(0.0, q) / theta3(0.0, q) * theta3(zeta, q) / den


# ---------------------------------------------------------------------------
# arctanh with principal logarithms
# ---------------------------------------------------------------------------

def arctanh_cplx(z):
    """(log(1+z) - log(1-z))/2 with principal logs, off the real cuts."""
    z = complex(z)
    if z.imag == 0.0 and abs(z.real) >= 1.0:
        raise DomainError("arctanh is undefined on the cuts (-inf,-1] and [1,inf)")
    return 0.5 * (cmath.log(1.0 + z) - cmath.log(1.0 - z))


# ---------------------------------------------------------------------------
# sine sums  S_k(z) = sum_{m>=1} sin(m z) / m^k
# ---------------------------------------------------------------------------

def bernoulli_poly(n, x):
    x = np.asarray(x, dtype=float)
    return sum(comb(n, k) * float(BERNOULLI[k]) * x ** (n - k) for k in range(n + 1))


_CL2_TERMS = 40
_CL2_COEF = None


def _clausen2(z):
    # Cl_2 on [0, pi] from -int log(2 sin(t/2)) dt, expanded around 0
    global _CL2_COEF
    if _CL2_COEF is None:
        _CL2_COEF = []
        for n in range(1, _CL2_TERMS + 1):
            zeta2n = (zeta_even(n) if 2 * n <= BERNOULLI_MAX
                      else 1.0 + 2.0 ** (-2 * n) + 3.0 ** (-2 * n))
            _CL2_COEF.append(zeta2n / (n * (2 * n + 1) * (2 * pi) ** (2 * n)))
    z = np.asarray(z, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(z > 0, z - z * np.log(np.where(z > 0, z, 1.0)), 0.0)
    p = z ** 3
    z2 = z * z
    for c in _CL2_COEF:
        out = out + c * p
        p = p * z2
    return out


def sine_sum(k, z, n_direct=4000):
    """sum_{m>=1} sin(m z)/m^k for integer k >= 1 (vectorized in z).

    Odd k: Bernoulli polynomial (exact).  k = 2: Clausen series.  Even
    k >= 4: direct summation, truncation error below 1/(3 n_direct^3).
    """
    k = int(k)
    if k < 1:
        raise DomainError("sine_sum needs k >= 1")
    z = np.mod(np.asarray(z, dtype=float), 2 * pi)
    if k % 2 == 1:
        n = (k - 1) // 2
        val = ((-1) ** (n + 1) * (2 * pi) ** k / (2 * factorial(k))
               * bernoulli_poly(k, z / (2 * pi)))
        return np.where((z == 0), 0.0, val)
    if k == 2:
        flip = z > pi
        w = np.where(flip, 2 * pi - z, z)
        v = _clausen2(w)
        return np.where(flip, -v, v)
    m = np.arange(1, n_direct + 1, dtype=float)
    zz = np.atleast_1d(z)
    out = np.sin(np.multiply.outer(zz, m)) @ (m ** (-float(k)))
    return out.reshape(np.shape(z))
