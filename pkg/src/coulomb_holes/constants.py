"""The hole-probability constant C = (beta/4)(int Q dnu + 2 c_U - int_U Q dmu).

Closed forms are used where they exist; `c_generic` evaluates the three
terms by quadrature and serves as the cross-check for all of them.
"""

from dataclasses import dataclass, field
from math import comb, log, pi, sqrt
import cmath

import numpy as np
from numpy.polynomial import Polynomial
import mpmath

from . import balayage as bal
from .balayage import NotCovered, ContainmentError
from .identities import T_recursive, tanh_odd_sum
from .model import (
    Cardioid, Disk, DiskComplement, Ellipse, EllipseComplement, EllipticGinibre,
    EquilateralTriangle, InvalidRegion, MittagLeffler, Rectangle, Sector,
    Spherical, validate,
)
from .oracle import c_U_mu_quadrature, mu_integral, quad2d
from .specialfn import digamma, trigamma


@dataclass(frozen=True)
class HoleConstant:
    C: float
    beta: float
    breakdown: tuple = None  # (int Q dnu, c_U^mu, int_U Q dmu)
    method: str = "closed-form"
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def normalized(self):
        return self.C / self.beta

    def check_breakdown(self):
        q_nu, c_u, q_mu = self.breakdown
        return self.beta / 4 * (q_nu + 2 * c_u - q_mu)

    def as_dict(self):
        d = {"C": self.C, "beta": self.beta, "method": self.method}
        if self.breakdown is not None:
            d["breakdown"] = dict(zip(("integral_Q_dnu", "c_U_mu", "integral_Q_dmu"), self.breakdown))
        d.update(self.meta)
        return d


def _beta(beta):
    if not beta > 0:
        raise ValueError("beta must be positive")
    return float(beta)


def _from_terms(beta, q_nu, c_u, q_mu, method, **meta):
    return HoleConstant(beta / 4 * (q_nu + 2 * c_u - q_mu), beta, (q_nu, c_u, q_mu), method, meta)


# ---------------------------------------------------------------------------
# generic formula
# ---------------------------------------------------------------------------

def c_U_mu(pot, region, tol=1e-11):
    """c_U^mu: closed form where known, otherwise quadrature."""
    if region.bounded:
        return 0.0
    if isinstance(region, EllipseComplement) and isinstance(pot, EllipticGinibre):
        t, a, c = pot.tau, region.a, region.c
        return a * a / (4 * (1 + t)) + c * c / (4 * (1 - t)) - 0.5 + log(2 / (a + c))
    if isinstance(region, DiskComplement) and complex(region.center) == 0 and pot.radial:
        a = region.a
        if isinstance(pot, MittagLeffler):
            b, R = pot.b, pot.radius
            # int_a^R log(r/a) d(r^{2b} b)... with dmu_rad = 2 b^2 r^{2b-1} dr
            F = lambda r: b * r ** (2 * b) * (log(r / a) - 1 / (2 * b))
            return F(R) - F(a)
        return pot.radial_integral(lambda r: np.log(r / a), a, pot.r_max)
    if isinstance(region, DiskComplement) and isinstance(pot, EllipticGinibre):
        c = complex(region.center)
        return (eg_R2logR(pot.tau, c.real, c.imag) / (2 * pi * (1 - pot.tau ** 2))
                - 0.5 + region.a ** 2 / (2 * (1 - pot.tau ** 2)) - log(region.a))
    return c_U_mu_quadrature(pot, region, tol)


def c_generic(pot, region, beta, nu=None, tol=1e-11):
    """All three terms by quadrature; nu from the balayage module."""
    beta = _beta(beta)
    if isinstance(region, Cardioid):
        raise NotCovered("no balayage for the cardioid; use c_eg_named (scaling law)")
    nu = nu if nu is not None else bal.balayage(pot, region)
    q_nu = float(np.real(nu.integrate(pot.Q)))
    q_mu = float(np.real(mu_integral(pot.Q, pot, region, tol)))
    return _from_terms(beta, q_nu, c_U_mu(pot, region), q_mu, "generic-quadrature")


# ---------------------------------------------------------------------------
# radial potentials
# ---------------------------------------------------------------------------

def c_radial_disk(pot, a, beta):
    beta = _beta(beta)
    bal._check_radius(pot, a)
    if isinstance(pot, Spherical):
        return HoleConstant(beta / 4 * (log(1 + a * a) - a * a / (1 + a * a)), beta)
    if isinstance(pot, MittagLeffler):
        return HoleConstant(beta / 8 * pot.b * a ** (4 * pot.b), beta)
    ga = float(pot.g(a))
    val = pot.radial_integral(lambda r: ga - pot.g(r), 0.0, a)
    return HoleConstant(beta / 4 * val, beta, method="generic-quadrature")


def c_radial_annulus(pot, rho1, rho2, beta):
    beta = _beta(beta)
    nu = bal.bal_radial_annulus(pot, rho1, rho2)
    L = log(rho2 / rho1)
    if isinstance(pot, Spherical):
        l = log((1 + rho2 ** 2) / (1 + rho1 ** 2))
        v = l - (rho2 ** 2 - rho1 ** 2) / ((1 + rho1 ** 2) * (1 + rho2 ** 2)) - l * l / (2 * L)
        return HoleConstant(beta / 4 * v, beta)
    if isinstance(pot, MittagLeffler):
        b = pot.b
        v = b / 4 * (rho2 ** (4 * b) - rho1 ** (4 * b)) - (rho2 ** (2 * b) - rho1 ** (2 * b)) ** 2 / (4 * L)
        return HoleConstant(beta / 2 * v, beta)
    lam = nu.meta["lambda"]
    edge = (1 - lam) * float(pot.g(rho2)) + lam * float(pot.g(rho1))
    val = pot.radial_integral(lambda r: edge - pot.g(r), rho1, rho2)
    return HoleConstant(beta / 4 * val, beta, method="generic-quadrature")


def c_radial_disk_complement(pot, a, beta):
    beta = _beta(beta)
    bal._check_radius(pot, a)
    if isinstance(pot, MittagLeffler):
        b = pot.b
        v = a ** (2 * b) - b * a ** (4 * b) / 4 - log(b * a ** (2 * b)) / (2 * b) - 3 / (4 * b)
        return HoleConstant(beta / 2 * v, beta)
    if isinstance(pot, Spherical):
        raise NotCovered("the spherical droplet is the whole plane; no disk-complement hole")
    ga = float(pot.g(a))
    val = pot.radial_integral(lambda r: ga - pot.g(r) + 2 * np.log(r / a), a, pot.r_max)
    return HoleConstant(beta / 4 * val, beta, method="generic-quadrature")


# ---------------------------------------------------------------------------
# circular sector
# ---------------------------------------------------------------------------

def sector_ml_digamma(b, p):
    """C / (beta a^{4b}) for Q = |z|^{2b}."""
    x = 0.5 + 2.0 * b / p
    return (digamma(0.5) - digamma(x) + b / p * (trigamma(0.5) + trigamma(x))) / (4 * pi * pi)


def _nsum(term):
    return float(mpmath.nsum(term, [0, mpmath.inf]))


def _sector_series(ratio, terms, a, p, g_a, mass):
    """The series form.  terms: list of (g_k, k); ratio(s) = a^-s int_0^a r^s dmu_rad."""
    p = mpmath.mpf(p)
    total = 0.0
    for gk, k in terms:
        Rk = ratio(mpmath.mpf(k))
        def t(m, k=k, Rk=Rk):
            s = p * (m + 0.5)
            return (ratio(s) - Rk) / ((k + s) * (k - s))
        total += 2 * float(p) * gk * a ** k / (pi * pi) * _nsum(t)
    arc = 2 / (float(p) * pi * pi) * _nsum(lambda m: ratio(p * (m + 0.5)) / (m + 0.5) ** 2)
    return total + g_a * arc - mass


def _degenerate(ks, p):
    return any(abs((k / p - 0.5) - round(k / p - 0.5)) < 1e-9 and k / p - 0.5 > -1e-9 for k in ks)


def _spherical_terms(a, tol=1e-16):
    out, k = [], 1
    while True:
        gk = (-1) ** (k + 1) / k
        out.append((gk, 2 * k))
        if a ** (2 * k) / k < tol or k > 400:
            return out
        k += 1


def c_sector(pot, a, p, beta, method="auto"):
    """Sector {0<r<a, 0<theta<2 pi/p}.  method: auto | digamma | series | quadrature."""
    beta = _beta(beta)
    bal._check_sector(pot, a, p)
    if p < 2 and not (isinstance(pot, MittagLeffler) and pot.b == 1 and a != 1.0 and p > 1):
        raise InvalidRegion("the sector constant needs p >= 2 (p in (1,2) only for Ginibre with a != 1)")
    ml = isinstance(pot, MittagLeffler)
    if method == "auto":
        method = "digamma" if ml else ("series" if isinstance(pot, Spherical) and a < 1 else "quadrature")
    if method == "digamma":
        if not ml:
            raise NotCovered("the digamma form needs Q = |z|^{2b}")
        return HoleConstant(beta * a ** (4 * pot.b) * sector_ml_digamma(pot.b, p), beta, method="closed-form", meta={"path": "digamma"})
    if method == "series":
        if ml:
            b = pot.b
            ratio = lambda s: 2 * b * b * a ** (2 * b) / (s + 2 * b)
            terms, g_a = [(1.0, 2.0 * b)], a ** (2 * b)
            mass = b * a ** (4 * b) / (2 * p)  # (1/p) int g dmu_rad
        elif isinstance(pot, Spherical):
            if not a < 1:
                raise NotCovered("the spherical series form needs a < 1")
            z = a * a / (1 + a * a)
            # int_0^z (t / (1 - t))^{s/2} dt with t = r^2 / (1 + r^2)
            ratio = lambda s: mpmath.betainc(1 + s / 2, 1 - s / 2, 0, z) / mpmath.mpf(a) ** s
            terms, g_a = _spherical_terms(a), log(1 + a * a)
            mass = (a * a - log(1 + a * a)) / (p * (1 + a * a))
        else:
            raise NotCovered("series form needs an ML or spherical potential")
        f = lambda pp: _sector_series(ratio, terms, a, pp, g_a, mass)
        if _degenerate([k for _, k in terms], p):
            # symmetric limit p' -> p
            h = 1e-6 * p
            val = 0.5 * (f(p + h) + f(p - h))
            return HoleConstant(beta / 4 * val, beta, meta={"path": "series", "limit": "p(1 +- 1e-6) average"})
        return HoleConstant(beta / 4 * f(p), beta, meta={"path": "series"})
    if method == "quadrature":
        nu = bal.bal_sector_density(pot, a, p, method="quadrature")
        q_edge = 2 * float(np.real(_seg_integral(nu, 0, lambda z: pot.g(np.abs(z)))))
        arc_mass = float(np.real(_seg_integral(nu, 1, lambda z: np.ones_like(np.real(z)))))
        q_mu = pot.radial_integral(pot.g, 0.0, a) / p
        val = q_edge + float(pot.g(a)) * arc_mass - q_mu
        return HoleConstant(beta / 4 * val, beta, (q_edge + float(pot.g(a)) * arc_mass, 0.0, q_mu),
                            method="generic-quadrature")
    raise ValueError(f"unknown method {method}")


def _seg_integral(nu, j, f):
    z, wd = nu._nodes()[j]
    return np.asarray(f(z)) @ wd


# ---------------------------------------------------------------------------
# elliptic Ginibre
# ---------------------------------------------------------------------------

def moved_region(region, zeta0, rho, theta0):
    """zeta0 + rho e^{i theta0} U for the region kinds that admit it."""
    e, z0 = cmath.exp(1j * theta0), complex(zeta0)
    if isinstance(region, Disk):
        return Disk(rho * region.a, z0 + rho * e * complex(region.center))
    if isinstance(region, Ellipse):
        return Ellipse(rho * region.a, rho * region.c, z0 + rho * e * complex(region.center),
                       region.rotation + theta0)
    if isinstance(region, Sector):
        return Sector(rho * region.a, region.p, z0 + rho * e * complex(region.center), region.rotation + theta0)
    if isinstance(region, EquilateralTriangle):
        return EquilateralTriangle(rho * region.a, z0 + rho * e * complex(region.center),
                                   region.rotation + theta0)
    if isinstance(region, Cardioid):
        return Cardioid(rho * region.a, region.c, z0 + rho * e * complex(region.center),
                        region.rotation + theta0)
    if isinstance(region, Rectangle):
        k = theta0 / (pi / 2)
        if abs(k - round(k)) > 1e-14:
            raise NotCovered("rotated rectangles are not representable; use theta0 in (pi/2) Z")
        vs = [z0 + rho * e * complex(x, y) for x in (region.a1, region.a2) for y in (region.c1, region.c2)]
        xs, ys = [v.real for v in vs], [v.imag for v in vs]
        return Rectangle(min(xs), max(xs), min(ys), max(ys))
    raise NotCovered(f"cannot move a {region.kind}")


def c_eg_scaled(tau, zeta0, rho, theta0, base_C, beta, base_region=None):
    """Scaling law: C(tau, zeta0, rho, theta0) = rho^4 / (1 - tau^2)^2 * C(0, 0, 1, 0)."""
    beta = _beta(beta)
    if not (0 <= tau < 1 and rho > 0):
        raise InvalidRegion("need 0 <= tau < 1 and rho > 0")
    if base_region is not None:
        moved = moved_region(base_region, zeta0, rho, theta0)
        if not validate(EllipticGinibre(tau), moved).hole_in_support:
            raise ContainmentError("the moved region leaves the elliptic Ginibre droplet")
    return HoleConstant(rho ** 4 / (1 - tau * tau) ** 2 * base_C, beta, method="scaling-law")


def c_eg_moved_generic(tau, zeta0, rho, theta0, base_region, beta):
    """C for the hole zeta0 + rho e^{i theta0} U0 under elliptic Ginibre, by quadrature.
    mu is uniform there, so the balayage of the moved hole is the push-forward of
    the Ginibre one; this does not assume the scaling law and handles rotations of
    regions that have no rotated representation (rectangles)."""
    beta = _beta(beta)
    pot = EllipticGinibre(tau)
    e = rho * cmath.exp(1j * theta0)
    T = lambda z: zeta0 + e * np.asarray(z)
    for ch in base_region.charts():
        t = np.linspace(ch.t0, ch.t1, 65)
        if not np.all(pot.in_support(T(ch.point(t)))):
            raise ContainmentError("the moved region leaves the elliptic Ginibre droplet")
    w = rho * rho / (1 - tau * tau)
    nu0 = bal.balayage(MittagLeffler(1.0), base_region)
    q_nu = w * float(np.real(nu0.integrate(lambda z: pot.Q(T(z)))))
    q_mu = w / pi * float(np.real(quad2d(lambda z: pot.Q(T(z)), base_region, tol=1e-12)))
    return _from_terms(beta, q_nu, 0.0, q_mu, "generic-quadrature")


def c_eg_named(region, tau, beta, check=True):
    """Ellipse, annulus, cardioid or circular sector hole for elliptic Ginibre.
    `region` is an Ellipse, Annulus-like (rho1, rho2, center) tuple, Cardioid or Sector."""
    beta = _beta(beta)
    pot = EllipticGinibre(tau)
    k = 1.0 / (1 - tau * tau) ** 2
    if isinstance(region, tuple):
        rho1, rho2, center = region
        if check and not _annulus_in(pot, rho1, rho2, complex(center)):
            raise ContainmentError("annulus leaves the droplet")
        v = (rho2 ** 4 - rho1 ** 4) / 2 - (rho2 ** 2 - rho1 ** 2) ** 2 / (2 * log(rho2 / rho1))
        return HoleConstant(k * beta / 4 * v, beta)
    if check and not validate(pot, region).hole_in_support:
        raise ContainmentError(f"{region.kind} leaves the elliptic Ginibre droplet")
    if isinstance(region, Ellipse):
        a, c = region.a, region.c
        return HoleConstant(k * beta / 4 * a ** 3 * c ** 3 / (a * a + c * c), beta)
    if isinstance(region, Cardioid):
        a, c = region.a, region.c
        if c >= 0.5:
            raise InvalidRegion("cardioid constant needs c < 1/2")
        return HoleConstant(k * beta / 4 * a ** 4 * ((c * c + 1) ** 2 - 0.5), beta)
    if isinstance(region, Sector):
        if region.p < 2:
            raise InvalidRegion("sector constant needs p >= 2")
        return HoleConstant(k * beta * region.a ** 4 * sector_ml_digamma(1.0, region.p), beta)
    raise NotCovered(f"no named constant for {region.kind}")


def _annulus_in(pot, rho1, rho2, center):
    return bool(validate(pot, Disk(rho2, center)).hole_in_support)


def c_eg_triangle(tau, a, beta):
    beta = _beta(beta)
    return HoleConstant(9 * sqrt(3) * beta * a ** 4 / (320 * pi * (1 - tau * tau) ** 2), beta)


# ---------------------------------------------------------------------------
# rectangles
# ---------------------------------------------------------------------------

def _side_integral(ser, P, lo, hi):
    """int_lo^hi P(t) dnu(t) on one side, exactly, from the coefficient sums
    S(j, s) = sum_m C_m s^m / m^j (integration by parts, sin(m pi) = 0)."""
    L = hi - lo
    total, D, v = 0.0, P, 0
    while True:
        w = (-1) ** v * (L / pi) ** (2 * v + 1)
        total += w * (D(lo) * ser.moment_sum(2 * v + 1, 1) - D(hi) * ser.moment_sum(2 * v + 1, -1))
        D = D.deriv(2)
        v += 1
        if D.degree() == 0 and D.coef[0] == 0 or len(D.coef) == 0:
            return total


def _poly_Q_on_sides(pot, a1, a2, c1, c2):
    """Q restricted to each side as a polynomial in the side parameter."""
    t = Polynomial([0.0, 1.0])
    if isinstance(pot, EllipticGinibre):
        tau = pot.tau
        q = lambda x, y: (x * x * (1 - tau) + y * y * (1 + tau)) / (1 - tau * tau)
    else:
        b = int(pot.b)
        q = lambda x, y: (x * x + y * y) ** b
    return {"right": (q(a2, t), c1, c2), "left": (q(a1, t), c1, c2),
            "top": (q(t, c2), a1, a2), "bottom": (q(t, c1), a1, a2)}


def _rect_Q_mu(pot, a1, a2, c1, c2):
    P = lambda n, lo, hi: (hi ** (n + 1) - lo ** (n + 1)) / (n + 1)
    if isinstance(pot, EllipticGinibre):
        tau = pot.tau
        v = (1 - tau) * P(2, a1, a2) * (c2 - c1) + (1 + tau) * (a2 - a1) * P(2, c1, c2)
        return v / (pi * (1 - tau * tau) ** 2)
    b = int(pot.b)
    n = 2 * b - 1
    v = sum(comb(n, j) * P(2 * j, a1, a2) * P(2 * (n - j), c1, c2) for j in range(n + 1))
    return b * b / pi * v


def c_rectangle(pot, a1, a2, c1, c2, beta, method="auto"):
    """method: auto | tanh (elliptic Ginibre) | series (exact side sums)."""
    beta = _beta(beta)
    region = Rectangle(a1, a2, c1, c2)
    bal._require(pot, region)
    eg = isinstance(pot, EllipticGinibre)
    if method == "auto":
        method = "tanh" if eg else "series"
    if method == "tanh":
        if not eg:
            raise NotCovered("the tanh form is for elliptic Ginibre")
        w, h = a2 - a1, c2 - c1
        al = w / h
        # sum [al^-2 S(al) + al^2 S(1/al)] with S(x) = sum tanh(x(2m+1)pi/2)/(2m+1)^5;
        # T_{2,al} = (al^-2 S(al) - al^2 S(1/al))/2 removes one of the two sums
        s_inv = tanh_odd_sum(2, 1 / al)[0]
        pair = 2 * T_recursive(2, al) + 2 * al * al * s_inv
        v = (al + 1 / al) / 6 - 32 / pi ** 5 * pair
        C = beta * w * w * h * h / (4 * pi * (1 - pot.tau ** 2) ** 2) * v
        return HoleConstant(C, beta, method="closed-form")
    if method == "series":
        b, scale = bal._rect_pot_scale(pot)
        q_nu = 0.0
        for side, (P, lo, hi) in _poly_Q_on_sides(pot, a1, a2, c1, c2).items():
            ser = bal.rectangle_side_series(b, a1, a2, c1, c2, side, scale)
            q_nu += _side_integral(ser, P, lo, hi)
        return _from_terms(beta, q_nu, 0.0, _rect_Q_mu(pot, a1, a2, c1, c2), "closed-form")
    raise ValueError(f"unknown method {method}")


def c_ml_square(b, c, beta):
    """Centered square of side c, Q = |z|^{2b}."""
    return c_rectangle(MittagLeffler(float(b)), -c / 2, c / 2, -c / 2, c / 2, beta)


# ---------------------------------------------------------------------------
# Mittag-Leffler disk and ellipse
# ---------------------------------------------------------------------------

def _half_binom(j, l):
    # C(j, (j + l)/2) when j + l is even, else 0
    return comb(j, (j + l) // 2) if (j + l) % 2 == 0 and j >= l else 0


def c_ml_disk(b, x0, a, beta):
    beta = _beta(beta)
    prof = bal.bal_ml_disk(b, x0, a)
    b = int(b)
    c = prof.coefficients
    s = 0.0
    for j in range(b + 1):
        inner = c[0] * _half_binom(j, 0) + 2 * sum(c[l] * _half_binom(j, l) for l in range(1, b))
        s += comb(b, j) * a ** j * x0 ** j * (x0 * x0 + a * a) ** (b - j) * inner
    q_nu = 2 * s
    q_mu = b * b * sum(comb(2 * b - 1, 2 * j) * comb(2 * j, j)
                       * sum(comb(2 * b - 1 - 2 * j, k) * x0 ** (2 * (2 * b - 1 - j - k))
                             * a ** (2 * (1 + j + k)) / (1 + j + k) for k in range(2 * b - 2 * j))
                       for j in range(b))
    return _from_terms(beta, q_nu, 0.0, q_mu, "closed-form")


def c_ml_ellipse(b, a, c, beta):
    beta = _beta(beta)
    prof = bal.bal_ml_ellipse(b, a, c)
    b = int(b)
    cf = prof.coefficients
    al, ga = (a + c) / 2, (a - c) / 2
    s = 0.0
    for j in range(b + 1):
        inner = cf[0] * _half_binom(j, 0) + sum(2 * cf[l] * _half_binom(j, l) for l in range(1, b + 1))
        s += comb(b, j) * al ** j * ga ** j * (al * al + ga * ga) ** (b - j) * 2 * inner
    q_mu = (al * al - ga * ga) * b / 2 * sum(
        comb(2 * b - 1, 2 * j) * comb(2 * j, j) * al ** (2 * j) * ga ** (2 * j)
        * (al * al + ga * ga) ** (2 * b - 1 - 2 * j) for j in range(b))
    return _from_terms(beta, s, 0.0, q_mu, "closed-form")


# ---------------------------------------------------------------------------
# elliptic Ginibre complements
# ---------------------------------------------------------------------------

def eg_boundary_distance(tau, x0, y0, theta):
    """R(theta): distance from x0 + i y0 to the droplet edge along direction theta."""
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    c2, s2 = np.cos(2 * theta), np.sin(2 * theta)
    rad = np.sqrt(2 + 2 * tau * tau - x0 * x0 - y0 * y0 + (x0 * x0 - y0 * y0 - 4 * tau) * c2 + 2 * x0 * y0 * s2)
    num = (1 - tau * tau) ** 2 * (rad / (sqrt(2) * (1 - tau * tau)) - x0 * c / (1 + tau) ** 2
                                  - y0 * s / (1 - tau) ** 2)
    return num / (1 + tau * tau - 2 * tau * c2)


def eg_R2logR(tau, x0, y0, n0=64, tol=1e-15):
    """int_{-pi}^{pi} R^2 log R dtheta by the periodic trapezoid rule, doubling to convergence."""
    prev, n = None, n0
    while n <= 1 << 16:
        th = -pi + 2 * pi * np.arange(n) / n
        R = eg_boundary_distance(tau, x0, y0, th)
        val = 2 * pi / n * float(np.sum(R * R * np.log(R)))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev, n = val, 2 * n
    return prev


def c_eg_complements(variant, params, tau, beta):
    """variant 'ellipse-complement' (params a, c) or 'disk-complement' (params x0, y0, a)."""
    beta = _beta(beta)
    if not 0 <= tau < 1:
        raise InvalidRegion("need 0 <= tau < 1")
    t2 = 1 - tau * tau
    if variant == "ellipse-complement":
        a, c = params
        bal.bal_eg_complement_ellipse(tau, a, c)  # range check
        v = (a * a * (1 - tau) * (1 - (a * a + 2 * a * c) / (8 * (1 + tau)))
             + c * c * (1 + tau) * (1 - (c * c + 2 * a * c) / (8 * (1 - tau)))
             + a * a * c * c / 4 + t2 * (2 * log(2 / (a + c)) - 1.5))
        return HoleConstant(beta / (4 * t2) * v, beta)
    if variant == "disk-complement":
        x0, y0, a = params
        region = DiskComplement(a, complex(x0, y0))
        bal._require(EllipticGinibre(tau), region)
        I = eg_R2logR(tau, x0, y0)
        v = (I / (pi * t2) - 1.5 + x0 * x0 / (1 + tau) + y0 * y0 / (1 - tau) - 2 * log(a)
             + 2 * a * a * (1 / t2 - x0 * x0 / (1 + tau) ** 2 - y0 * y0 / (1 - tau) ** 2)
             - (1 + 2 * tau * tau) * a ** 4 / (2 * t2 * t2))
        return HoleConstant(beta / 4 * v, beta, meta={"int_R2logR": I})
    raise ValueError("variant must be ellipse-complement or disk-complement")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def hole_constant(pot, region, beta):
    """Closed form when one is known for the pair, otherwise c_generic."""
    kind = region.kind
    eg = isinstance(pot, EllipticGinibre)
    ml = isinstance(pot, MittagLeffler)
    centered = complex(getattr(region, "center", 0j)) == 0
    if pot.radial and centered:
        if kind == "disk":
            return c_radial_disk(pot, region.a, beta)
        if kind == "annulus":
            return c_radial_annulus(pot, region.rho1, region.rho2, beta)
        if kind == "disk-complement":
            return c_radial_disk_complement(pot, region.a, beta)
        if kind == "sector":
            return c_sector(pot, region.a, region.p, beta)
    if ml and float(pot.b).is_integer():
        b = int(pot.b)
        if kind == "disk":
            return c_ml_disk(b, abs(complex(region.center)), region.a, beta)
        if kind == "ellipse" and centered and region.rotation == 0:
            return c_ml_ellipse(b, region.a, region.c, beta)
        if kind == "rectangle":
            return c_rectangle(pot, region.a1, region.a2, region.c1, region.c2, beta)
    if eg:
        if kind == "rectangle":
            return c_rectangle(pot, region.a1, region.a2, region.c1, region.c2, beta)
        if kind == "triangle":
            bal._require(pot, region)
            return c_eg_triangle(pot.tau, region.a, beta)
        if kind in ("ellipse", "cardioid", "sector"):
            return c_eg_named(region, pot.tau, beta)
        if kind == "disk":
            return c_eg_named(Ellipse(region.a, region.a, region.center), pot.tau, beta)
        if kind == "ellipse-complement":
            return c_eg_complements(kind, (region.a, region.c), pot.tau, beta)
        if kind == "disk-complement":
            c = complex(region.center)
            return c_eg_complements(kind, (c.real, c.imag, region.a), pot.tau, beta)
    if ml and pot.b == 1 and kind in ("triangle", "ellipse", "cardioid", "sector", "ellipse-complement",
                                      "disk-complement"):
        # Ginibre is elliptic Ginibre at tau = 0
        return hole_constant(EllipticGinibre(0.0), region, beta)
    return c_generic(pot, region, beta)
