"""Boundary densities of nu = Bal(mu|_U, dU) in closed or semi-closed form.

Every density is returned as a BalayageDensity: a list of boundary charts,
each carrying a density with respect to the chart parameter.  A generic
Green-function density (Poisson kernel integrated against mu) is included
as an independent cross-check.
"""

from dataclasses import dataclass, field
from math import comb, factorial, pi, sqrt, tan, log, ceil
from typing import Callable
import cmath
import functools
import warnings

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import zeta as _zeta

from .identities import SeriesValue, d_coeffs, _odd_power_tail
from .model import (
    Annulus, Chart, Disk, DiskComplement, Ellipse, EllipseComplement, EllipticGinibre,
    EquilateralTriangle, Ginibre, InvalidRegion, MittagLeffler, RadialPotential, Rectangle,
    Sector, Spherical, validate,
)
from .specialfn import (
    DomainError, elliptic_K, elliptic_Kprime, incomplete_beta, jacobi_cn, jacobi_dn,
    jacobi_sn, sine_sum, zeta_even,
)

SERIES_TOL = 1e-12


def _quiet(fn):
    # quad is asked for near-machine tolerances; its roundoff warnings are expected
    @functools.wraps(fn)
    def wrapper(*args, **kw):
        with warnings.catch_warnings(), np.errstate(divide="ignore", invalid="ignore"):
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            return fn(*args, **kw)
    return wrapper


class NotCovered(ValueError):
    """No closed form (or implemented fallback) for this potential/region pair."""


class ContainmentError(InvalidRegion):
    """The hole (or its boundary) is not inside the droplet."""


# ---------------------------------------------------------------------------
# containers
# ---------------------------------------------------------------------------

@dataclass
class Segment:
    chart: Chart
    density: Callable  # density with respect to the chart parameter, vectorized
    singular_points: tuple = ()

    @property
    def kind(self):
        return self.chart.kind


@dataclass
class BalayageDensity:
    region: object
    segments: list
    total_mass: float
    meta: dict = field(default_factory=dict)

    def _rule(self, seg, n):
        # Gauss-Legendre on panels graded geometrically toward both chart
        # ends and toward declared singular points, where corner behavior lives
        ch = seg.chart
        cuts = {ch.t0, ch.t1}
        for c in (ch.t0, ch.t1, *seg.singular_points):
            if not ch.t0 <= c <= ch.t1:
                continue
            cuts.add(c)
            for k in range(1, 40):
                h = (ch.t1 - ch.t0) * 0.5 ** k
                cuts.update(x for x in (c - h, c + h) if ch.t0 < x < ch.t1)
        cuts = np.array(sorted(cuts))
        x, w = leggauss(n)
        lo, hi = cuts[:-1, None], cuts[1:, None]
        t = (0.5 * (hi - lo) * x + 0.5 * (hi + lo)).ravel()
        wt = (0.5 * (hi - lo) * w).ravel()
        return t, wt

    def _nodes(self):
        if "_cache" not in self.__dict__:
            cache = []
            for seg in self.segments:
                t, w = self._rule(seg, 20)
                cache.append((seg.chart.point(t), w * np.asarray(seg.density(t), dtype=float)))
            self.__dict__["_cache"] = cache
        return self.__dict__["_cache"]

    def integrate(self, f):
        """sum over charts of int f(z(t)) density(t) dt (f vectorized)."""
        total = 0.0
        for z, wd in self._nodes():
            total = total + np.asarray(f(z)) @ wd
        return total

    def mass_by_quadrature(self):
        return float(np.real(self.integrate(lambda z: np.ones_like(np.real(z)))))

    def sample(self, n=200):
        """Rows (chart, t, z, density, kind) on an interior grid of each chart."""
        rows = []
        for seg in self.segments:
            ch = seg.chart
            t = ch.t0 + (ch.t1 - ch.t0) * (np.arange(n) + 0.5) / n
            d = np.broadcast_to(seg.density(t), t.shape)
            z = ch.point(t)
            rows += [(ch.name, float(ti), complex(zi), float(di), ch.kind)
                     for ti, zi, di in zip(t, z, d)]
        return rows


@dataclass(frozen=True)
class FourierProfile:
    """density = (c_0 + 2 sum_l c_l cos(l * step * theta)) / pi  per dtheta."""
    coefficients: tuple
    step: int = 1

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        c = self.coefficients
        out = c[0] + 0 * theta
        for l in range(1, len(c)):
            out = out + 2 * c[l] * np.cos(l * self.step * theta)
        return out / pi

    @property
    def mass(self):
        return 2.0 * self.coefficients[0]


def _require(pot, region):
    v = validate(pot, region)
    if not v.boundary_in_support:
        raise ContainmentError(f"{region.kind} boundary leaves the support of {pot.name}")
    if region.bounded and not v.hole_in_support:
        raise ContainmentError(f"{region.kind} is not contained in the support of {pot.name}")
    return v


def _uniform(region, chart, mass, meta=None):
    dens = mass / (2 * pi)
    return BalayageDensity(region, [Segment(chart, lambda t: dens + 0 * np.asarray(t, dtype=float))],
                           mass, meta or {})


# ---------------------------------------------------------------------------
# radial potentials: disk, annulus, complement of a disk
# ---------------------------------------------------------------------------

def _check_radius(pot, r):
    if pot.ring_index(r) is None:
        raise InvalidRegion(f"radius {r} is outside every support ring")


def bal_radial_disk(pot, a):
    """Uniform density on |z| = a carrying int_0^a dmu_rad."""
    if not a > 0:
        raise InvalidRegion("disk radius must be positive")
    _check_radius(pot, a)
    region = Disk(a)
    mass = pot.radial_mass(0.0, a)
    return _uniform(region, region.charts()[0], mass)


def annulus_split(pot, rho1, rho2):
    """(kappa, lambda): total mass and the inner fraction."""
    kappa = pot.radial_mass(rho1, rho2)
    if isinstance(pot, MittagLeffler):
        b = pot.b
        F = lambda r: b * r ** (2 * b) * log(r) - r ** (2 * b) / 2
        logm = F(rho2) - F(rho1)
    else:
        logm = pot.radial_integral(np.log, rho1, rho2)
    lam = (log(rho2) - logm / kappa) / log(rho2 / rho1) if kappa > 0 else 0.5
    return kappa, lam


def bal_radial_annulus(pot, rho1, rho2):
    if not 0 < rho1 < rho2:
        raise InvalidRegion("annulus needs 0 < rho1 < rho2")
    _check_radius(pot, rho1)
    _check_radius(pot, rho2)
    region = Annulus(rho1, rho2)
    kappa, lam = annulus_split(pot, rho1, rho2)
    inner, outer = region.charts()
    d_in, d_out = lam * kappa / (2 * pi), (1 - lam) * kappa / (2 * pi)
    segs = [Segment(inner, lambda t: d_in + 0 * np.asarray(t, dtype=float)),
            Segment(outer, lambda t: d_out + 0 * np.asarray(t, dtype=float))]
    return BalayageDensity(region, segs, kappa, {"kappa": kappa, "lambda": lam})


def bal_radial_disk_complement(pot, a):
    if not a > 0:
        raise InvalidRegion("disk radius must be positive")
    _check_radius(pot, a)
    region = DiskComplement(a)
    mass = pot.radial_mass(a, pot.r_max)
    return _uniform(region, region.charts()[0], mass)


# ---------------------------------------------------------------------------
# circular sector {0 < r < a, 0 < theta < 2 pi / p}
# ---------------------------------------------------------------------------

def _check_sector(pot, a, p):
    if not isinstance(pot, RadialPotential):
        raise NotCovered("sector densities need a radial potential")
    if pot.rings[0][0] != 0.0:
        raise DomainError("sector formulas need a support that starts at 0")
    if not (a > 0 and a <= pot.rings[0][1] + 1e-12):
        raise InvalidRegion("sector radius must lie in the first support ring")
    if not p >= 1:
        raise InvalidRegion("sector needs p >= 1")


def _atanh_ratio(u):
    # arctanh(u) for u in [0, 1), computed from 1 - u without cancellation
    return 0.5 * np.log1p(u) - 0.5 * np.log1p(-u)


@_quiet
def sector_edge_generic(pot, a, p, r, tol=1e-13):
    """dnu/dr on a straight edge by quadrature of the arctanh kernel.

    The log singularity at x = r is removed by x = r -+ u^2 on each side.
    """
    h = p / 2.0

    def kern(x):
        lo, hi = min(x, r), max(x, r)
        if lo == hi:
            return 0.0
        # arctanh(q) with 1 - q = -expm1(h log(lo/hi)) kept exact
        one_minus = -np.expm1(h * log(lo / hi)) if lo > 0 else 1.0
        t1 = 0.5 * log((2.0 - one_minus) / one_minus)
        t2 = float(_atanh_ratio((r * x) ** h / a ** (2 * h)))
        return (t1 - t2) * float(pot.mu_rad(x))

    left, _ = integrate.quad(lambda u: 2 * u * kern(r - u * u), 0.0, sqrt(r),
                             epsabs=tol, epsrel=tol, limit=400)
    right = 0.0
    if a > r:
        right, _ = integrate.quad(lambda u: 2 * u * kern(r + u * u), 0.0, sqrt(a - r),
                                  epsabs=tol, epsrel=tol, limit=400)
    return (left + right) / (pi * pi * r)


def _ml_degenerate_index(b, p):
    beta = 2.0 * b / p
    d = beta - 0.5
    k = round(d)
    if k >= 0 and abs(d - k) < 1e-12:
        return int(k)
    return None


@_quiet
def sector_edge_ml(b, a, p, r, tol=1e-14):
    """dnu/dr on an edge for Q = |z|^{2b}.  The constant part of the
    coefficient series is summed in closed form (digamma reflection); the
    geometric part sum x^s/((s-2b)(s+2b)), s = p(m+1/2), is summed directly
    for small x and otherwise as a head plus an Euler integral of its tail."""
    x = r / a
    if x >= 1.0:
        return SeriesValue(0.0, 0, 0.0)
    pref = 2 * p * b * b * a ** (2 * b) / (pi * pi * r)
    beta = 2.0 * b / p
    ms = _ml_degenerate_index(b, p)
    lx = log(x)
    y = x ** p
    m0 = int(ceil(beta + 0.5))
    tail_bound = 0.0
    if y < 0.5:
        N = max(m0, int(ceil(np.log(1e-18) / np.log(y))) + 1 if y > 0 else 1)
        terms_used = N
    else:
        N = m0
        terms_used = N
    m = np.arange(N, dtype=float)
    sm = p * (m + 0.5)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.exp(sm * lx) / ((sm - 2 * b) * (sm + 2 * b))
    if ms is not None and ms < N:
        terms[ms] = 0.0
    geo = float(np.sum(terms))
    if y >= 0.5:
        # sum_{m>=m0} y^m (1/(m+A) - 1/(m+B)) = y^m0 int_0^1 (t^{m0+A-1} - t^{m0+B-1})/(1 - y t) dt
        A, B = m0 + 0.5 - beta - 1, m0 + 0.5 + beta - 1
        f = lambda t: (t ** A - t ** B) / (1 - y * t)
        pts = [t for t in (1 - 4 * (1 - y), 1 - (1 - y)) if 0 < t < 1]
        I, err = integrate.quad(f, 0.0, 1.0, points=pts or None, epsabs=tol, epsrel=tol, limit=400)
        geo += x ** (p / 2) * y ** m0 * I / (4 * b * p)
        tail_bound = abs(pref) * err
    elif N > 0:
        sN = p * (N + 0.5)
        tail_bound = abs(pref) * x ** sN / ((sN - 2 * b) * (sN + 2 * b) * (1 - y))
    if ms is None:
        val = x ** (2 * b) * pi * tan(pi * beta) / (4 * b * p) - geo
    else:
        val = x ** (2 * b) / (4 * b * p * (2 * ms + 1)) - geo - x ** (2 * b) * lx / (4 * b)
    return SeriesValue(pref * val, terms_used, tail_bound)


@_quiet
def sector_arc_generic(pot, a, p, theta, tol=1e-13):
    """dnu/dtheta on the arc: (2/pi^2) int Im arctanh(e^{i p theta/2} (x/a)^{p/2}) dmu_rad."""
    phi = p * theta / 2.0
    if phi <= 0 or phi >= pi:
        return 0.0
    sp = np.sin(phi)

    def f(x):
        y = (x / a) ** (p / 2.0)
        return 0.5 * np.arctan2(2 * y * sp, 1 - y * y) * float(pot.mu_rad(x))

    val, _ = integrate.quad(f, 0.0, a, epsabs=tol, epsrel=tol, limit=400)
    return 2.0 * val / (pi * pi)


@_quiet
def sector_arc_ml(b, a, p, theta, tol=1e-14):
    """Arc density for Q = |z|^{2b}.  The coefficient series splits into
    sum sin((2m+1)phi)/(m+1/2) = pi/2 minus a Lerch-type sum; both are Euler
    integrals of the same kernel, so their difference is integrated directly."""
    phi = p * theta / 2.0
    if phi <= 0 or phi >= pi:
        return 0.0
    beta = 2.0 * b / p
    sp, s2 = np.sin(phi), np.sin(phi) ** 2
    # (1+t) sin(phi) / (1 - 2t cos(2phi) + t^2), times (1 - t^beta)
    kern = lambda t: -np.expm1(beta * np.log(t)) * (1 + t) * sp / ((1 - t) ** 2 + 4 * t * s2)
    d = min(phi, pi - phi)
    pts = sorted(x for x in (1 - 4 * d, 1 - d, 1 - d / 4) if 0.5 < x < 1)
    t1 = pts[0] if pts else 1.0
    J, _ = integrate.quad(kern, 0.0, t1, weight="alg", wvar=(-0.5, 0.0),
                          epsabs=tol, epsrel=tol, limit=400)
    if t1 < 1.0:
        J2, _ = integrate.quad(lambda t: kern(t) / np.sqrt(t), t1, 1.0, points=pts[1:] or None,
                               epsabs=tol, epsrel=tol, limit=400)
        J += J2
    return b * a ** (2 * b) / (pi * pi) * J


def sector_arc_coefficients(pot, a, p, m_max):
    """Sine coefficients of dnu/dtheta in sin((pm + p/2) theta), m < m_max."""
    m = np.arange(m_max)
    s = p * (m + 0.5)
    if isinstance(pot, MittagLeffler):
        b = pot.b
        return 2 * b * b * a ** (2 * b) / (pi * pi * (m + 0.5) * (2 * b + s))
    if isinstance(pot, Spherical):
        z = a * a / (1 + a * a)
        M = np.array([incomplete_beta(z, 1 + si / 2, 1 - si / 2) for si in s])
    else:
        M = np.array([pot.radial_moment(si, a) for si in s])
    return M / (pi * pi * (m + 0.5) * a ** s)


def bal_sector(pot, a, p, where, t, method="auto"):
    """Single density value: where = 'radial-edge' (dnu/dr at r = t) or
    'arc' (dnu/dtheta at theta = t)."""
    _check_sector(pot, a, p)
    fast = method != "quadrature" and isinstance(pot, MittagLeffler)
    if where == "radial-edge":
        if not 0 < t <= a:
            raise DomainError("edge parameter must lie in (0, a]")
        return float(sector_edge_ml(pot.b, a, p, t).value) if fast else sector_edge_generic(pot, a, p, t)
    if where == "arc":
        if not 0 <= t <= 2 * pi / p:
            raise DomainError("arc parameter must lie in [0, 2 pi / p]")
        return sector_arc_ml(pot.b, a, p, t) if fast else sector_arc_generic(pot, a, p, t)
    raise ValueError("where must be 'radial-edge' or 'arc'")


def bal_sector_density(pot, a, p, rotation=0.0, method="auto"):
    _check_sector(pot, a, p)
    region = Sector(a, p, 0j, rotation)
    edge = np.vectorize(lambda r: bal_sector(pot, a, p, "radial-edge", float(r), method) if r > 0 else 0.0,
                        otypes=[float])
    arc = np.vectorize(lambda th: bal_sector(pot, a, p, "arc", float(th), method), otypes=[float])
    c0, c1, c2 = region.charts()
    segs = [Segment(c0, edge), Segment(c1, arc), Segment(c2, edge)]
    return BalayageDensity(region, segs, pot.radial_mass(0.0, a) / p)


# ---------------------------------------------------------------------------
# Mittag-Leffler, integer b: disk and ellipse
# ---------------------------------------------------------------------------

def _integer_b(b):
    if not (float(b).is_integer() and b >= 1):
        raise NotCovered("this closed form needs a positive integer b")
    return int(b)


def ml_disk_coefficients(b, x0, a):
    b = _integer_b(b)
    c = []
    for l in range(b):
        s = 0.0
        for k in range(l, b, 2):
            inner = sum(comb(b - 1 - k, m) * x0 ** (2 * (b - 1 - k - m)) * a ** (2 + l + k + 2 * m)
                        / (2 + l + k + 2 * m) for m in range(b - k))
            s += comb(b - 1, k) * comb(k, (k - l) // 2) * x0 ** k * inner
        c.append(b * b / a ** l * s)
    return tuple(c)


def bal_ml_disk(b, x0, a):
    """FourierProfile for the disk |z - x0| < a, Q = |z|^{2b}."""
    b = _integer_b(b)
    if not (a > 0 and x0 >= 0):
        raise InvalidRegion("need a > 0 and x0 >= 0")
    if x0 + a > b ** (-1.0 / (2 * b)) + 1e-12:
        raise ContainmentError("disk leaves the Mittag-Leffler droplet")
    return FourierProfile(ml_disk_coefficients(b, x0, a), 1)


def bal_ml_disk_density(b, x0, a):
    prof = bal_ml_disk(b, x0, a)
    region = Disk(a, complex(x0))
    return BalayageDensity(region, [Segment(region.charts()[0], prof)], prof.mass,
                           {"coefficients": list(prof.coefficients)})


def ml_ellipse_coefficients(b, a, c):
    b = _integer_b(b)
    al, ga = (a + c) / 2, (a - c) / 2
    d = {k: [0.0] * k + d_coeffs(b, k) for k in range(b)}
    e = []
    for l in range(b + 1):
        s = 0.0
        for j in range(b):
            inner = 0.0
            for k in range(j % 2, j + 1, 2):
                w = 1.0 if k else 0.5
                inner += (w * (al ** (j + k) * ga ** (j - k) + al ** (j - k) * ga ** (j + k))
                          * comb(j, (j - k) // 2) * d[k][l])
            s += comb(b - 1, j) * (al * al + ga * ga) ** (b - 1 - j) * inner
        e.append((al * al - ga * ga) * b * b / 2 * s)
    coef = [e[0]]
    for l in range(1, b + 1):
        # e_l / (alpha^l gamma^-l + alpha^-l gamma^l), written without dividing by gamma
        coef.append(e[l] * al ** l * ga ** l / (al ** (2 * l) + ga ** (2 * l)))
    return tuple(coef)


def bal_ml_ellipse(b, a, c):
    """FourierProfile (cos 2 l theta basis) for z = a cos t + i c sin t."""
    b = _integer_b(b)
    R = b ** (-1.0 / (2 * b))
    if not (0 < a <= R + 1e-12 and 0 < c <= R + 1e-12):
        raise ContainmentError("ellipse leaves the Mittag-Leffler droplet")
    return FourierProfile(ml_ellipse_coefficients(b, a, c), 2)


def bal_ml_ellipse_density(b, a, c):
    prof = bal_ml_ellipse(b, a, c)
    region = Ellipse(a, c)
    return BalayageDensity(region, [Segment(region.charts()[0], prof)], prof.mass,
                           {"coefficients": list(prof.coefficients)})


# ---------------------------------------------------------------------------
# rectangles
# ---------------------------------------------------------------------------
#
# Each side coefficient is C_m = L(m) + E(m): L is a finite Laurent sum
# sum c_{k,s} s^m m^{-k} (s = +-1) and E collects the coth(x) - 1 and
# 1/sinh(x) pieces, which decay like exp(-pi kappa m).  Sums against
# s'^m m^{-j} and sine series then have exact zeta / sine_sum tails.

def _lmul(A, B):
    out = {}
    for (k1, s1), c1 in A.items():
        for (k2, s2), c2 in B.items():
            key = (k1 + k2, s1 * s2)
            out[key] = out.get(key, 0.0) + c1 * c2
    return out


def _ladd(A, B, w=1.0):
    out = dict(A)
    for key, c in B.items():
        out[key] = out.get(key, 0.0) + w * c
    return out


def _leval(L, m):
    m = np.asarray(m, dtype=float)
    out = 0.0 * m
    sign = np.where(np.mod(m, 2) == 0, 1.0, -1.0)
    for (k, s), c in L.items():
        out = out + c * (sign if s < 0 else 1.0) * m ** (-float(k))
    return out


def _hyp_bracket(v, kappa, kind):
    """Laurent part and exponential part of the coth / csch brackets at M = kappa m."""
    L = {}
    if kind == "coth":
        L[(2 * v + 1, 1)] = pi / (2 * kappa ** (2 * v + 1))
    L[(2 * v + 2, 1)] = L.get((2 * v + 2, 1), 0.0) - 1.0 / (2 * kappa ** (2 * v + 2))
    for j in range(v):
        z = zeta_even(v - j)
        if kind == "csch":
            z *= 2.0 ** (1 - (2 * v - 2 * j)) - 1
        key = (2 + 2 * j, 1)
        L[key] = L.get(key, 0.0) + (-1) ** (v + j) * z / kappa ** (2 + 2 * j)

    def expo(m):
        M = kappa * np.asarray(m, dtype=float)
        with np.errstate(over="ignore"):
            if kind == "coth":
                h = 2.0 / np.expm1(2 * pi * M)
            else:
                h = 1.0 / np.sinh(pi * M)
        return pi * h / (2 * M ** (2 * v + 1))
    return L, expo


@dataclass
class SideSeries:
    """Coefficients C_m, m >= 1, of one rectangle side in sin(m pi (t - t0)/L)."""
    laurent: dict
    expo_parts: list  # (weight, fn(m), laurent multiplier)
    t0: float
    length: float
    m_expo: int

    def expo(self, m):
        m = np.asarray(m, dtype=float)
        out = 0.0 * m
        for w, fn, P in self.expo_parts:
            out = out + w * fn(m) * _leval(P, m)
        return out

    def coeff(self, m):
        return _leval(self.laurent, m) + self.expo(m)

    def density(self, t):
        x = pi * (np.asarray(t, dtype=float) - self.t0) / self.length
        out = 0.0 * x
        for (k, s), c in self.laurent.items():
            out = out + c * sine_sum(k, x if s > 0 else x + pi)
        m = np.arange(1, self.m_expo + 1, dtype=float)
        E = self.expo(m)
        out = out + np.sin(np.multiply.outer(np.atleast_1d(x), m)) @ E if np.ndim(x) else out + float(np.sin(x * m) @ E)
        return out.reshape(np.shape(x)) if np.ndim(x) else out

    def moment_sum(self, j, sign):
        """sum_{m>=1} C_m sign^m / m^j."""
        m = np.arange(1, self.m_expo + 1, dtype=float)
        sg = np.where(np.mod(m, 2) == 0, 1.0, float(sign))
        total = float(np.sum(self.expo(m) * sg / m ** j))
        for (k, s), c in self.laurent.items():
            n = k + j
            if s * sign > 0:
                total += c * float(_zeta(n))
            else:
                total -= c * (1 - 2.0 ** (1 - n)) * float(_zeta(n))
        return total


def _poly_factor(l_exp, length, e_hi, e_lo, alt_sign):
    """Laurent form of sum_v K_v (-1)^v (s^m hi^{..} - lo^{..}) / m^{2v+1}."""
    L = {}
    for v in range(l_exp + 1):
        K = factorial(2 * l_exp) * length ** (2 * v + 1) / (factorial(2 * l_exp - 2 * v) * pi ** (2 * v + 1))
        K *= (-1) ** v
        L[(2 * v + 1, -1)] = L.get((2 * v + 1, -1), 0.0) + K * e_hi ** (2 * l_exp - 2 * v)
        L[(2 * v + 1, 1)] = L.get((2 * v + 1, 1), 0.0) - K * e_lo ** (2 * l_exp - 2 * v)
    return L


def _hyp_factor(l_exp, length, kappa, e_hi, e_lo, kind_hi, kind_lo):
    """Laurent part and exponential pieces of
    sum_v K_v (hi^{..} [bracket_hi] - lo^{..} [bracket_lo])."""
    L, ex = {}, []
    for v in range(l_exp + 1):
        K = factorial(2 * l_exp) * length ** (2 * v + 1) / (factorial(2 * l_exp - 2 * v) * pi ** (2 * v + 1))
        Lh, eh = _hyp_bracket(v, kappa, kind_hi)
        Ll, el = _hyp_bracket(v, kappa, kind_lo)
        wh = K * e_hi ** (2 * l_exp - 2 * v)
        wl = -K * e_lo ** (2 * l_exp - 2 * v)
        L = _ladd(_ladd(L, Lh, wh), Ll, wl)
        ex += [(wh, eh), (wl, el)]
    return L, ex


def rectangle_side_series(b, a1, a2, c1, c2, side, scale=1.0):
    """SideSeries for Q = |z|^{2b} (b integer); `scale` multiplies every coefficient."""
    b = _integer_b(b)
    w, h = a2 - a1, c2 - c1
    total_L, parts = {}, []
    for l in range(b):
        cb = comb(b - 1, l)
        if side in ("right", "left"):
            kappa = w / h
            kinds = ("coth", "csch") if side == "right" else ("csch", "coth")
            HL, hex_ = _hyp_factor(l, w, kappa, a2, a1, *kinds)
            P = _poly_factor(b - 1 - l, h, c2, c1, True)
            pref = (-1 if side == "right" else 1) * 4 * b * b / (h * pi * pi) * cb * scale
            t0, length = c1, h
        elif side in ("top", "bottom"):
            kappa = h / w
            kinds = ("coth", "csch") if side == "top" else ("csch", "coth")
            HL, hex_ = _hyp_factor(b - 1 - l, h, kappa, c2, c1, *kinds)
            P = _poly_factor(l, w, a2, a1, True)
            pref = (-1 if side == "top" else 1) * 4 * b * b / (w * pi * pi) * cb * scale
            t0, length = a1, w
        else:
            raise ValueError("side must be right, top, left or bottom")
        total_L = _ladd(total_L, _lmul(HL, P), pref)
        parts += [(pref * wgt, fn, P) for wgt, fn in hex_]
    # exp(-pi kappa m) below 1e-18 of the leading size
    m_expo = int(ceil(42.0 / (pi * kappa))) + 2
    # drop Laurent entries that cancel to rounding level
    big = max(abs(c) for c in total_L.values())
    total_L = {k: c for k, c in total_L.items() if abs(c) > 1e-15 * big}
    return SideSeries(total_L, parts, t0, length, m_expo)


def _rect_pot_scale(pot):
    if isinstance(pot, EllipticGinibre):
        return 1, 1.0 / (1 - pot.tau ** 2)
    if isinstance(pot, MittagLeffler):
        return _integer_b(pot.b), 1.0
    raise NotCovered("rectangle densities need elliptic Ginibre or Mittag-Leffler with integer b")


def bal_rectangle(pot, a1, a2, c1, c2, side, m_max):
    """Sine-series coefficients C_1..C_{m_max} of one side."""
    region = Rectangle(a1, a2, c1, c2)
    _require(pot, region)
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    b, scale = _rect_pot_scale(pot)
    ser = rectangle_side_series(b, a1, a2, c1, c2, side, scale)
    return ser.coeff(np.arange(1, m_max + 1))


def bal_rectangle_density(pot, a1, a2, c1, c2):
    region = Rectangle(a1, a2, c1, c2)
    _require(pot, region)
    b, scale = _rect_pot_scale(pot)
    segs, series = [], {}
    for ch in region.charts():
        ser = rectangle_side_series(b, a1, a2, c1, c2, ch.name, scale)
        series[ch.name] = ser
        segs.append(Segment(ch, ser.density))
    mass = _rect_mu_mass(b, a1, a2, c1, c2) * scale
    return BalayageDensity(region, segs, mass, {"series": series})


def _rect_mu_mass(b, a1, a2, c1, c2):
    # (b^2/pi) int int (x^2+y^2)^{b-1} dx dy
    s = 0.0
    for l in range(b):
        s += (comb(b - 1, l) * (a2 ** (2 * l + 1) - a1 ** (2 * l + 1)) / (2 * l + 1)
              * (c2 ** (2 * (b - 1 - l) + 1) - c1 ** (2 * (b - 1 - l) + 1)) / (2 * (b - 1 - l) + 1))
    return b * b / pi * s


def square_cosine_coefficients(b, c, m_max):
    """C_{b,m}, m < m_max, of the centered square in cos((y/c)(1+2m)pi) dy."""
    b = _integer_b(b)
    m = np.arange(m_max, dtype=float)
    o = 1 + 2 * m
    th = np.tanh(o * pi / 2)
    acc = 0.0 * m
    for l in range(b):
        for v1 in range(l + 1):
            for v2 in range(b - l):
                K = (factorial(2 * l) / factorial(2 * l - 2 * v1)
                     * factorial(2 * b - 2 - 2 * l) / factorial(2 * b - 2 - 2 * l - 2 * v2)
                     * 2.0 ** (2 * v1 + 2 * v2) * (-1) ** v2 / pi ** (2 * v1 + 2 * v2))
                term = 0.0 * m
                if (v1 + v2) % 2 == 0:
                    term = term + th / o ** (2 + 2 * v1 + 2 * v2)
                for q in range(v1):
                    term = term + (4 * (-1) ** (v1 + q) / (pi * o ** (3 + 2 * v2 + 2 * q))
                                   * (1 - 2.0 ** (-(2 * v1 - 2 * q))) * zeta_even(v1 - q))
                acc = acc + comb(b - 1, l) * K * term
    sign = np.where(np.mod(m, 2) == 0, 1.0, -1.0)
    return 16 * b * b * c ** (2 * b - 1) / (pi ** 3 * 2 ** (2 * b)) * sign * acc


def square_cosine_density(b, c, y, m_max=200_000):
    C = square_cosine_coefficients(b, c, m_max)
    o = 1 + 2 * np.arange(m_max)
    y = np.atleast_1d(np.asarray(y, dtype=float))
    out = np.array([float(C @ np.cos(yi / c * o * pi)) for yi in y])
    # |C_m| <= K/(1+2m)^2 beyond m_max
    bound = abs(C[-1]) * (2 * m_max - 1) ** 2 * _odd_power_tail(2.0, m_max)
    return out, bound


# ---------------------------------------------------------------------------
# elliptic Ginibre: triangle and the two complements
# ---------------------------------------------------------------------------

def bal_triangle_uniform(tau, zeta0, theta0, a):
    pot = EllipticGinibre(tau)
    region = EquilateralTriangle(a, complex(zeta0), theta0)
    _require(pot, region)
    k = 1.0 / (8 * pi * a * (1 - tau * tau))
    dens = lambda y: k * (3 * a * a - 4 * np.asarray(y, dtype=float) ** 2)
    segs = [Segment(ch, dens) for ch in region.charts()]
    return BalayageDensity(region, segs, region.area() / (pi * (1 - tau * tau)))


def bal_eg_complement_ellipse(tau, a, c):
    if not (0 < a <= 1 + tau + 1e-12 and 0 < c <= 1 - tau + 1e-12):
        raise InvalidRegion("need 0 < a <= 1 + tau and 0 < c <= 1 - tau")
    c0 = (1 - tau * tau - a * c) / (2 * pi * (1 - tau * tau))
    c1 = (a + c) * ((a + c) * tau - a + c) / (8 * pi * (1 - tau * tau))
    return c0, c1


def bal_eg_complement_ellipse_density(tau, a, c):
    c0, c1 = bal_eg_complement_ellipse(tau, a, c)
    region = EllipseComplement(a, c)
    dens = lambda t: c0 + 2 * c1 * np.cos(2 * np.asarray(t, dtype=float))
    return BalayageDensity(region, [Segment(region.charts()[0], dens)], 2 * pi * c0,
                           {"c0": c0, "c1": c1})


def eg_complement_disk_profile(tau, x0, y0, a):
    """(constant, cos, sin, cos 2) coefficients of dnu/dtheta."""
    k = a / (pi * (1 - tau * tau))
    return (k * ((1 - tau * tau) / (2 * a) - a / 2), -k * x0 * (1 - tau), -k * y0 * (1 + tau), k * a * tau)


def bal_eg_complement_disk(tau, x0, y0, a):
    pot = EllipticGinibre(tau)
    region = DiskComplement(a, complex(x0, y0))
    _require(pot, region)
    k0, kc, ks, kc2 = eg_complement_disk_profile(tau, x0, y0, a)

    def dens(t):
        t = np.asarray(t, dtype=float)
        return k0 + kc * np.cos(t) + ks * np.sin(t) + kc2 * np.cos(2 * t)
    return BalayageDensity(region, [Segment(region.charts()[0], dens)], 2 * pi * k0,
                           {"profile": (k0, kc, ks, kc2)})


# ---------------------------------------------------------------------------
# centered square, uniform mu: conformal-map oracle
# ---------------------------------------------------------------------------

def square_modulus(tol=1e-12):
    """kappa in (0,1) with K'(kappa) = 2 K(kappa), by bisection."""
    f = lambda k: elliptic_Kprime(k) - 2 * elliptic_K(k)
    lo, hi = 1e-6, 1 - 1e-6
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise ArithmeticError("no sign change for the square modulus")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _square_pieces(c, zb):
    """Polar pieces of the centered square around a point zb on its right edge."""
    h = c / 2
    verts = [complex(h, h), complex(-h, h), complex(-h, -h), complex(h, -h)]
    ang = [cmath.phase(v - zb) for v in verts]
    ang = [t if t > 0 else t + 2 * pi for t in ang]
    lines = [(1j, h), (-1 + 0j, h), (-1j, h)]  # outward normals and offsets of top, left, bottom
    out = []
    for (nrm, off), t0, t1 in zip(lines, ang[:-1], ang[1:]):
        dist = off - (zb * nrm.conjugate()).real
        out.append((t0, t1, nrm, dist))
    return out


def bal_square_elliptic(c, y, tol=1e-7, n0=64, n_max=1024):
    """dnu/dy at c/2 + iy for mu = d^2z/pi on the centered square of side c,
    through the Schwarz-Christoffel map onto the upper half-plane."""
    if not (c > 0 and c / sqrt(2) <= 1 + 1e-12):
        raise ContainmentError("the square must lie in the unit disk")
    if not -c / 2 < y < c / 2:
        raise DomainError("y must lie in (-c/2, c/2)")
    kap = square_modulus()
    K = elliptic_K(kap)
    zb = complex(c / 2, y)
    arg = lambda z: K * (np.asarray(z) + 1j * c / 2) / (c / 2)
    phib = complex(jacobi_sn(arg(zb), kap))
    dphib = complex(jacobi_cn(arg(zb), kap) * jacobi_dn(arg(zb), kap)) * K / (c / 2)
    pieces = _square_pieces(c, zb)
    prev = None
    n = n0
    while n <= n_max:
        xt, wt = leggauss(n)
        total = 0.0
        for t0, t1, nrm, dist in pieces:
            th = 0.5 * (t1 - t0) * xt + 0.5 * (t1 + t0)
            wth = 0.5 * (t1 - t0) * wt
            R = dist / np.cos(th - cmath.phase(nrm))
            u = 0.5 * (xt + 1)
            r = R[:, None] * u[None, :]
            w = zb + r * np.exp(1j * th)[:, None]
            phw = jacobi_sn(arg(w), kap)
            val = np.real(-dphib / (pi * (phw - phib))) / pi
            total += np.sum(wth[:, None] * 0.5 * wt[None, :] * R[:, None] * r * val)
        if prev is not None and abs(total - prev) <= tol * abs(total):
            return total
        prev, n = total, 2 * n
    raise ArithmeticError(f"square oracle did not converge (last {prev})")


# ---------------------------------------------------------------------------
# generic Green-function densities
# ---------------------------------------------------------------------------

def _ray_exit(region, zb, phi, rmax):
    # first exit distance along rays from a boundary point (convex regions)
    lo = np.zeros_like(phi)
    hi = np.full_like(phi, rmax)
    d = np.exp(1j * phi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        inside = region.contains(zb + mid * d)
        lo = np.where(inside, mid, lo)
        hi = np.where(inside, hi, mid)
    return 0.5 * (lo + hi)


def _boundary_integral(kernel, region, zb, normal, corners, density, rmax, tol, n0=48, n_max=768):
    """int_U kernel(w) density(w) d^2w in polar coordinates about zb."""
    t0 = cmath.phase(normal) + pi / 2  # inward half-plane
    brk = [t0, t0 + pi]
    for v in corners:
        if abs(v - zb) > 1e-14:
            t = cmath.phase(v - zb)
            t = t0 + np.mod(t - t0, 2 * pi)
            if t0 < t < t0 + pi:
                brk.append(t)
    brk = sorted(brk)
    prev, n = None, n0
    while n <= n_max:
        xt, wt = leggauss(n)
        total = 0.0
        for a, b in zip(brk[:-1], brk[1:]):
            if b - a < 1e-14:
                continue
            th = 0.5 * (b - a) * xt + 0.5 * (b + a)
            wth = 0.5 * (b - a) * wt
            R = _ray_exit(region, zb, th, rmax)
            u = 0.5 * (xt + 1)
            r = R[:, None] * u[None, :]
            w = zb + r * np.exp(1j * th)[:, None]
            total += np.sum(wth[:, None] * 0.5 * wt[None, :] * R[:, None] * r * kernel(w) * density(w))
        if prev is not None and abs(total - prev) <= tol * max(abs(total), 1e-300):
            return total
        prev, n = total, 2 * n
    raise ArithmeticError(f"Green quadrature did not converge (last {prev})")


def _sector_map(region):
    a, p = region.a, region.p
    rot = cmath.exp(-1j * region.rotation)

    def F(z):
        s = (np.asarray(z) * rot / a) ** (p / 2)
        t = ((1 + s) / (1 - s)) ** 2
        return (t - 1j) / (t + 1j)

    def dF(z):
        z = np.asarray(z) * rot
        s = (z / a) ** (p / 2)
        q = (1 + s) / (1 - s)
        t = q * q
        return 2j / (t + 1j) ** 2 * 2 * q * 2 / (1 - s) ** 2 * (p / 2) * s / z * rot
    return F, dF


def _sine_poly_integral(k, P, lo, hi):
    """int_lo^hi sin(k (t - lo)) P(t) dt for a numpy Polynomial P, exactly
    (repeated integration by parts), vectorized in k."""
    k = np.asarray(k, dtype=float)
    S, C = np.sin(k * (hi - lo)), np.cos(k * (hi - lo))
    out = 0.0 * k
    D, i = P, 0
    while D.degree() >= 0 and np.any(D.coef != 0):
        sgn = (-1) ** (i // 2)
        if i % 2 == 0:
            out = out + sgn * (-C * D(hi) + D(lo)) / k ** (i + 1)
        else:
            out = out + sgn * S * D(hi) / k ** (i + 1)
        D, i = D.deriv(), i + 1
        if D.degree() == 0 and D.coef[0] == 0:
            break
    return out


def _graded_rule(lo, hi, toward_hi, levels=45, n=20):
    x, w = leggauss(n)
    L = hi - lo
    cuts = [0.0] + [L * 0.5 ** j for j in range(levels, 0, -1)] + [L]
    cuts = np.array(cuts)
    dl, dh = cuts[:-1, None], cuts[1:, None]
    d = (0.5 * (dh - dl) * x + 0.5 * (dh + dl)).ravel()
    wd = (0.5 * (dh - dl) * w).ravel()
    # d is the distance from the graded end
    return (hi - d if toward_hi else lo + d), wd, d


def rectangle_green_density(pot, region, side, t, m_max=40000, chunk=500):
    """Green-series density on one side of a rectangle with the q-sum of the
    double sine series done in closed form (hyperbolic 1D Green function)
    and the m-sum truncated at m_max.  mu must be separable: elliptic
    Ginibre or Mittag-Leffler with integer b.  Returns (density, coefficients)."""
    from numpy.polynomial import Polynomial
    a1, a2, c1, c2 = region.a1, region.a2, region.c1, region.c2
    b, scale = _rect_pot_scale(pot)
    if side in ("right", "left"):
        L, W, s_lo, s_hi, n_lo, n_hi = c2 - c1, a2 - a1, c1, c2, a1, a2
    elif side in ("top", "bottom"):
        L, W, s_lo, s_hi, n_lo, n_hi = a2 - a1, c2 - c1, a1, a2, c1, c2
    else:
        raise ValueError("side must be right, top, left or bottom")
    near_hi = side in ("right", "top")
    nn, wn, dist = _graded_rule(n_lo, n_hi, near_hi)
    coef = np.zeros(m_max)
    for j0 in range(0, m_max, chunk):
        m = np.arange(j0 + 1, min(j0 + chunk, m_max) + 1, dtype=float)
        k = m * pi / L
        # sinh(k (W - dist)) / sinh(k W), written with decaying exponentials
        H = np.exp(-np.multiply.outer(k, dist)) * (-np.expm1(-2 * np.multiply.outer(k, W - dist))) \
            / (-np.expm1(-2 * k * W))[:, None]
        for l in range(b):
            wgt = comb(b - 1, l) * b * b / pi
            fn = H @ (nn ** (2 * l) * wn)
            fs = _sine_poly_integral(k, Polynomial([0.0] * (2 * (b - 1 - l)) + [1.0]), s_lo, s_hi)
            coef[j0:j0 + len(m)] += wgt * fn * fs
    coef *= 2.0 / L * scale
    k = np.arange(1, m_max + 1) * pi / L
    return float(coef @ np.sin(k * (t - s_lo))), coef


def rectangle_green_double_series(pot, region, side, t, q_max, m_max, n_nodes=4000):
    """The literal double sine series of the rectangle Green function,
    truncated at q <= q_max, m <= m_max."""
    a1, a2, c1, c2 = region.a1, region.a2, region.c1, region.c2
    b, scale = _rect_pot_scale(pot)
    w, h = a2 - a1, c2 - c1
    x, wq = leggauss(n_nodes)
    X = 0.5 * w * x + 0.5 * (a1 + a2)
    Y = 0.5 * h * x + 0.5 * (c1 + c2)
    wx, wy = 0.5 * w * wq, 0.5 * h * wq
    q = np.arange(1, q_max + 1, dtype=float)
    m = np.arange(1, m_max + 1, dtype=float)
    SX = np.sin(np.multiply.outer(q, X - a1) * pi / w)
    SY = np.sin(np.multiply.outer(m, Y - c1) * pi / h)
    I = np.zeros((q_max, m_max))
    for l in range(b):
        I += comb(b - 1, l) * b * b / pi * np.outer(SX @ (X ** (2 * l) * wx),
                                                    SY @ (Y ** (2 * (b - 1 - l)) * wy))
    I *= scale
    lam = (pi / w) ** 2 * (q[:, None] ** 2 + (w * m[None, :] / h) ** 2)
    A = 4.0 / (w * h * lam) * I
    if side == "right":
        dq = -(q * pi / w) * (-1.0) ** q
        return float(np.sum(A * dq[:, None] * np.sin(m * pi * (t - c1) / h)[None, :]))
    if side == "left":
        dq = q * pi / w
        return float(np.sum(A * dq[:, None] * np.sin(m * pi * (t - c1) / h)[None, :]))
    if side == "top":
        dm = -(m * pi / h) * (-1.0) ** m
        return float(np.sum(A * np.sin(q * pi * (t - a1) / w)[:, None] * dm[None, :]))
    dm = m * pi / h
    return float(np.sum(A * np.sin(q * pi * (t - a1) / w)[:, None] * dm[None, :]))


def bal_green_generic(pot, region, zb, tol=1e-10):
    """Arclength density of nu at the boundary point zb from the Poisson
    kernel of U integrated against mu."""
    zb = complex(zb)
    if isinstance(region, Disk):
        c, a = complex(region.center), region.a
        normal = (zb - c) / abs(zb - c)
        kern = lambda w: (a * a - np.abs(w - c) ** 2) / (2 * pi * a * np.abs(w - zb) ** 2)
        return _boundary_integral(kern, region, zb, normal, [], pot.density, 2 * a, tol)
    if isinstance(region, Sector):
        F, dF = _sector_map(region)
        Fb, dFb = complex(F(zb)), abs(complex(dF(zb)))
        kern = lambda w: dFb * (1 - np.abs(F(w)) ** 2) / (2 * pi * np.abs(Fb - F(w)) ** 2)
        ch = region.charts()
        # outward normal at zb: identify the chart
        e0 = cmath.exp(1j * region.rotation)
        r, th = abs(zb - region.center), cmath.phase((zb - region.center) / e0)
        if abs(r - region.a) < 1e-12:
            normal = (zb - region.center) / r
        elif abs(th) < 1e-12:
            normal = -1j * e0
        else:
            normal = 1j * e0 * cmath.exp(1j * region.opening)
        corners = region.extreme_points()
        return _boundary_integral(kern, region, zb, normal, corners, pot.density, 2 * region.a, tol)
    if isinstance(region, Rectangle):
        for ch in region.charts():
            if ch.kind == "per-dy" and abs(zb.real - ch.point(0.0).real) < 1e-12:
                return rectangle_green_density(pot, region, ch.name, zb.imag)[0]
            if ch.kind == "per-dx" and abs(zb.imag - ch.point(0.0).imag) < 1e-12:
                return rectangle_green_density(pot, region, ch.name, zb.real)[0]
        raise DomainError("point is not on the rectangle boundary")
    raise NotCovered(f"no Green function implemented for {region.kind}")


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _rebase(nu, region, scale=1.0, shift=0.0):
    """Same chart densities on a rigidly moved copy of the region, times scale.
    `shift` offsets the angle of per-dtheta charts (rotated profiles)."""
    segs = []
    for seg, ch in zip(nu.segments, region.charts()):
        d = seg.density
        if shift and ch.kind == "per-dtheta":
            f = (lambda t, d=d: scale * d(np.asarray(t, dtype=float) - shift))
        else:
            f = (lambda t, d=d: scale * d(t))
        segs.append(Segment(ch, f, seg.singular_points))
    return BalayageDensity(region, segs, nu.total_mass * scale, dict(nu.meta))


def balayage(pot, region):
    """nu = Bal(mu|_U, dU) for every (potential, region) pair with a closed form."""
    _require(pot, region)
    eg = isinstance(pot, EllipticGinibre)
    kind = region.kind
    radial = getattr(pot, "radial", False)
    centered = complex(getattr(region, "center", 0j)) == 0

    if kind == "disk":
        if radial and centered:
            return bal_radial_disk(pot, region.a)
        if eg or (isinstance(pot, MittagLeffler) and pot.b == 1):
            # uniform mu on a disk sweeps to the uniform measure on the circle
            s = 1.0 / (1 - pot.tau ** 2) if eg else 1.0
            base = bal_ml_disk_density(1, 0.0, region.a)
            return _rebase(base, region, s)
        if isinstance(pot, MittagLeffler) and float(pot.b).is_integer():
            c = complex(region.center)
            base = bal_ml_disk_density(int(pot.b), abs(c), region.a)
            return _rebase(base, region, 1.0, cmath.phase(c) if c else 0.0)
    if kind == "annulus" and radial:
        return bal_radial_annulus(pot, region.rho1, region.rho2)
    if kind == "disk-complement":
        if radial and centered:
            return bal_radial_disk_complement(pot, region.a)
        if eg:
            c = complex(region.center)
            return bal_eg_complement_disk(pot.tau, c.real, c.imag, region.a)
    if kind == "sector":
        if radial and centered:
            return bal_sector_density(pot, region.a, region.p, region.rotation)
        if eg:
            base = bal_sector_density(Ginibre(), region.a, region.p)
            return _rebase(base, region, 1.0 / (1 - pot.tau ** 2))
    if kind == "ellipse":
        if isinstance(pot, MittagLeffler) and float(pot.b).is_integer() and centered and region.rotation == 0:
            return bal_ml_ellipse_density(int(pot.b), region.a, region.c)
        if eg:
            base = bal_ml_ellipse_density(1, region.a, region.c)
            return _rebase(base, region, 1.0 / (1 - pot.tau ** 2))
    if kind == "ellipse-complement" and eg:
        return bal_eg_complement_ellipse_density(pot.tau, region.a, region.c)
    if kind == "rectangle" and (eg or isinstance(pot, MittagLeffler)):
        return bal_rectangle_density(pot, region.a1, region.a2, region.c1, region.c2)
    if kind == "triangle" and eg:
        return bal_triangle_uniform(pot.tau, region.center, region.rotation, region.a)
    if isinstance(pot, MittagLeffler) and pot.b == 1:
        # Ginibre is elliptic Ginibre at tau = 0
        return balayage(EllipticGinibre(0.0), region)
    raise NotCovered(f"no closed-form balayage for {pot.name} on {kind}; covered: radial disk/annulus/"
                     "disk complement/sector, ML disk/ellipse/rectangle, EG triangle/rectangle/complements")
