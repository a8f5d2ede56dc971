"""Potentials, their equilibrium measures, and hole regions.

A potential knows Q, the planar density of its equilibrium measure mu and
the support S.  Radial potentials additionally expose g(r) = Q(|z|) and the
radial measure dmu_rad(r) = (r/2)(g''(r) + g'(r)/r) dr.

A hole region knows its boundary as a list of charts, a membership test,
and a polar description (pole, angular pieces, radial limits) that the
quadrature oracle uses to integrate over it.
"""

from dataclasses import dataclass
from math import pi, sqrt
from typing import Callable, Tuple
import cmath

import numpy as np
from scipy import integrate

EPS_GEO = 1e-12


class InvalidRegion(ValueError):
    """Region parameters are malformed or not admissible for the potential."""


# ---------------------------------------------------------------------------
# Potentials
# ---------------------------------------------------------------------------

class Potential:
    """Base class; concrete potentials are frozen dataclasses."""

    radial = False
    name = "potential"

    def Q(self, z):
        raise NotImplementedError

    def grad_Q(self, z):
        """dQ/dx + i dQ/dy."""
        raise NotImplementedError

    def density(self, z):
        raise NotImplementedError

    def in_support(self, z, margin=EPS_GEO):
        raise NotImplementedError

    def support_radius_along(self, center, theta):
        """Distance from `center` (inside S) to the boundary of S in direction theta."""
        raise NotImplementedError


class RadialPotential(Potential):
    """Q(z) = g(|z|) with S a union of rings."""

    radial = True
    rings: Tuple[Tuple[float, float], ...] = ((0.0, 1.0),)

    def g(self, r):
        raise NotImplementedError

    def dg(self, r):
        raise NotImplementedError

    def d2g(self, r):
        raise NotImplementedError

    def Q(self, z):
        return self.g(np.abs(z))

    def grad_Q(self, z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(r > 0, self.dg(r) * z / np.where(r > 0, r, 1.0), 0.0)
        return out

    def mu_rad(self, r):
        """Density of dmu_rad with respect to dr (zero off the rings)."""
        r = np.asarray(r, dtype=float)
        val = 0.5 * r * self.d2g(r) + 0.5 * self.dg(r)
        return np.where(self.in_rings(r), val, 0.0)

    def density(self, z):
        r = np.abs(np.asarray(z))
        with np.errstate(invalid="ignore", divide="ignore"):
            d = np.where(r > 0, self.mu_rad(r) / (2 * pi * np.where(r > 0, r, 1.0)), 0.0)
        return d

    def in_rings(self, r, margin=0.0):
        r = np.asarray(r, dtype=float)
        ok = np.zeros(r.shape, dtype=bool)
        for lo, hi in self.rings:
            ok |= (r >= lo - margin) & (r <= hi + margin)
        return ok

    def in_support(self, z, margin=EPS_GEO):
        return self.in_rings(np.abs(z), margin)

    @property
    def r_max(self):
        return self.rings[-1][1]

    def ring_index(self, r, margin=EPS_GEO):
        for j, (lo, hi) in enumerate(self.rings):
            if lo - margin <= r <= hi + margin:
                return j
        return None

    def radial_mass(self, r0, r1):
        """int_{r0}^{r1} dmu_rad = sum over rings of (r g'(r))/2 increments.

        At r = 0 the boundary term r g'(r) is taken to be 0.
        """
        rg = lambda r: 0.0 if r == 0 else 0.5 * r * float(self.dg(r))
        total = 0.0
        for lo, hi in self.rings:
            a, b = max(lo, r0), min(hi, r1)
            if b > a:
                total += rg(b) - rg(a)
        return total

    def radial_integral(self, f, r0, r1):
        """int_{r0}^{r1} f(r) dmu_rad(r) by adaptive quadrature."""
        total = 0.0
        for lo, hi in self.rings:
            a, b = max(lo, r0), min(hi, r1)
            if b > a:
                v, _ = integrate.quad(lambda r: float(f(np.float64(r)) * self.mu_rad(r)),
                                      a, b, epsabs=1e-15, epsrel=1e-13, limit=400)
                total += v
        return total

    def radial_moment(self, s, r1, r0=0.0):
        """int_{r0}^{r1} r^s dmu_rad(r)."""
        return self.radial_integral(lambda r: r ** s, r0, r1)

    def support_radius_along(self, center, theta):
        return _ray_to_circle(center, theta, self.r_max)


@dataclass(frozen=True)
class MittagLeffler(RadialPotential):
    """Q = |z|^(2b); S is the disk of radius b^(-1/(2b))."""
    b: float = 1.0
    name = "mittag-leffler"

    def __post_init__(self):
        if not self.b > 0:
            raise InvalidRegion("Mittag-Leffler exponent b must be positive")

    @property
    def integer_b(self):
        return float(self.b).is_integer()

    @property
    def radius(self):
        return self.b ** (-1.0 / (2 * self.b))

    @property
    def rings(self):
        return ((0.0, self.radius),)

    def g(self, r):
        return np.asarray(r, dtype=float) ** (2 * self.b)

    def dg(self, r):
        return 2 * self.b * np.asarray(r, dtype=float) ** (2 * self.b - 1)

    def d2g(self, r):
        b = self.b
        return 2 * b * (2 * b - 1) * np.asarray(r, dtype=float) ** (2 * b - 2)

    def mu_rad(self, r):
        r = np.asarray(r, dtype=float)
        return np.where((r >= 0) & (r <= self.radius), 2 * self.b ** 2 * r ** (2 * self.b - 1), 0.0)

    def density(self, z):
        r = np.abs(np.asarray(z))
        return np.where(r <= self.radius, self.b ** 2 / pi * r ** (2 * self.b - 2), 0.0)

    def radial_moment(self, s, r1, r0=0.0):
        b = self.b
        r1 = min(r1, self.radius)
        return 2 * b * b * (r1 ** (s + 2 * b) - r0 ** (s + 2 * b)) / (s + 2 * b)

    def radial_mass(self, r0, r1):
        return self.radial_moment(0.0, r1, r0)


@dataclass(frozen=True)
class Ginibre(MittagLeffler):
    """Q = |z|^2, uniform measure on the unit disk."""
    b: float = 1.0
    name = "ginibre"

    def __post_init__(self):
        if self.b != 1.0:
            raise InvalidRegion("Ginibre is the b = 1 Mittag-Leffler potential")


@dataclass(frozen=True)
class Spherical(RadialPotential):
    """Q = log(1+|z|^2); mu has density 1/(pi (1+|z|^2)^2) on the whole plane."""
    name = "spherical"

    @property
    def rings(self):
        return ((0.0, float("inf")),)

    def g(self, r):
        return np.log1p(np.asarray(r, dtype=float) ** 2)

    def dg(self, r):
        r = np.asarray(r, dtype=float)
        return 2 * r / (1 + r * r)

    def d2g(self, r):
        r = np.asarray(r, dtype=float)
        return 2 * (1 - r * r) / (1 + r * r) ** 2

    def mu_rad(self, r):
        r = np.asarray(r, dtype=float)
        return 2 * r / (1 + r * r) ** 2

    def density(self, z):
        return 1.0 / (pi * (1 + np.abs(np.asarray(z)) ** 2) ** 2)

    def in_support(self, z, margin=EPS_GEO):
        return np.ones(np.shape(z), dtype=bool)

    def radial_mass(self, r0, r1):
        f = lambda r: r * r / (1 + r * r) if np.isfinite(r) else 1.0
        return f(r1) - f(r0)

    def radial_moment(self, s, r1, r0=0.0):
        # substitute t = r^2/(1+r^2): the moment is an incomplete beta integral
        from .specialfn import incomplete_beta
        if r0 != 0.0:
            return super().radial_moment(s, r1, r0)
        return incomplete_beta(r1 * r1 / (1 + r1 * r1), 1 + s / 2, 1 - s / 2)

    def support_radius_along(self, center, theta):
        return float("inf")


@dataclass(frozen=True)
class RadialTabulated(RadialPotential):
    """User-supplied g, g', g'' with explicit support rings.

    The rings are taken as given; S is never inferred from g.  The Holder
    regularity the theory needs is a documented precondition only.
    """
    g_fn: Callable = None
    dg_fn: Callable = None
    d2g_fn: Callable = None
    ring_list: Tuple[Tuple[float, float], ...] = ((0.0, 1.0),)
    name = "radial"

    def __post_init__(self):
        flat = [x for ring in self.ring_list for x in ring]
        if any(b <= a for a, b in zip(flat, flat[1:])) or flat[0] < 0:
            raise InvalidRegion("rings must be strictly increasing and nonnegative")
        if None in (self.g_fn, self.dg_fn, self.d2g_fn):
            raise InvalidRegion("g, g' and g'' must all be supplied")

    @property
    def rings(self):
        return tuple(tuple(map(float, r)) for r in self.ring_list)

    def g(self, r):
        return np.asarray(self.g_fn(np.asarray(r, dtype=float)), dtype=float)

    def dg(self, r):
        return np.asarray(self.dg_fn(np.asarray(r, dtype=float)), dtype=float)

    def d2g(self, r):
        return np.asarray(self.d2g_fn(np.asarray(r, dtype=float)), dtype=float)


@dataclass(frozen=True)
class EllipticGinibre(Potential):
    """Q = (|z|^2 - tau Re z^2)/(1-tau^2); mu uniform on an ellipse."""
    tau: float = 0.0
    name = "elliptic-ginibre"

    def __post_init__(self):
        if not 0.0 <= self.tau < 1.0:
            raise InvalidRegion("tau must lie in [0, 1)")

    @property
    def semi_axes(self):
        return 1.0 + self.tau, 1.0 - self.tau

    def Q(self, z):
        z = np.asarray(z, dtype=complex)
        return z.real ** 2 / (1 + self.tau) + z.imag ** 2 / (1 - self.tau)

    def grad_Q(self, z):
        z = np.asarray(z, dtype=complex)
        return 2 * z.real / (1 + self.tau) + 2j * z.imag / (1 - self.tau)

    def density(self, z):
        return np.where(self.in_support(z, 0.0), 1.0 / (pi * (1 - self.tau ** 2)), 0.0)

    def in_support(self, z, margin=EPS_GEO):
        A, B = self.semi_axes
        z = np.asarray(z, dtype=complex)
        return (z.real / A) ** 2 + (z.imag / B) ** 2 <= 1.0 + margin

    def support_radius_along(self, center, theta):
        A, B = self.semi_axes
        return _ray_to_ellipse(center, theta, A, B)


def _ray_to_circle(center, theta, R):
    c = complex(center)
    d = np.exp(1j * np.asarray(theta, dtype=float))
    bdot = (c.conjugate() * d).real
    return -bdot + np.sqrt(np.maximum(bdot * bdot - abs(c) ** 2 + R * R, 0.0))


def _ray_to_ellipse(center, theta, A, B):
    # solve ((x0 + r cos)/A)^2 + ((y0 + r sin)/B)^2 = 1 for r > 0
    x0, y0 = complex(center).real, complex(center).imag
    ct, st = np.cos(theta), np.sin(theta)
    qa = (ct / A) ** 2 + (st / B) ** 2
    qb = 2 * (x0 * ct / A ** 2 + y0 * st / B ** 2)
    qc = (x0 / A) ** 2 + (y0 / B) ** 2 - 1
    return (-qb + np.sqrt(np.maximum(qb * qb - 4 * qa * qc, 0.0))) / (2 * qa)


# ---------------------------------------------------------------------------
# Hole regions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Chart:
    """One smooth piece of the boundary, t in (t0, t1)."""
    name: str
    t0: float
    t1: float
    point: Callable
    speed: Callable
    kind: str  # per-dtheta, per-dr, per-dx, per-dy

    def length(self):
        v, _ = integrate.quad(lambda t: float(self.speed(t)), self.t0, self.t1,
                              epsabs=1e-14, epsrel=1e-13, limit=200)
        return v


@dataclass(frozen=True)
class PolarPiece:
    """Part of U written as {pole + r e^{i theta}: th0<theta<th1, rlo(theta)<r<rhi(theta)}."""
    th0: float
    th1: float
    rlo: Callable
    rhi: Callable


class HoleRegion:
    bounded = True
    kind = "region"

    def charts(self):
        raise NotImplementedError

    def contains(self, z):
        raise NotImplementedError

    def polar_pieces(self, pot=None):
        raise NotImplementedError

    def perimeter(self):
        return sum(ch.length() for ch in self.charts())

    # trig-polynomial boundary description used by the containment checks:
    # z(theta) = sum_k coef[k] e^{i k theta}
    def boundary_fourier(self):
        return None

    def vertices(self):
        return None


def _circle_chart(name, center, a):
    c = complex(center)
    return Chart(name, -pi, pi, lambda t: c + a * np.exp(1j * np.asarray(t)),
                 lambda t: a + 0 * np.asarray(t, dtype=float), "per-dtheta")


def _const(v):
    return lambda th: v + 0 * np.asarray(th, dtype=float)


@dataclass(frozen=True)
class Disk(HoleRegion):
    a: float
    center: complex = 0j
    kind = "disk"

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidRegion("disk radius must be positive")

    def charts(self):
        return [_circle_chart("circle", self.center, self.a)]

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) < self.a

    def polar_pieces(self, pot=None):
        return complex(self.center), [PolarPiece(-pi, pi, _const(0.0), _const(self.a))]

    def boundary_fourier(self):
        return {0: complex(self.center), 1: complex(self.a)}

    def area(self):
        return pi * self.a ** 2


@dataclass(frozen=True)
class Annulus(HoleRegion):
    rho1: float
    rho2: float
    kind = "annulus"

    def __post_init__(self):
        if not 0 < self.rho1 < self.rho2:
            raise InvalidRegion("annulus needs 0 < rho1 < rho2")

    def charts(self):
        return [_circle_chart("inner", 0j, self.rho1), _circle_chart("outer", 0j, self.rho2)]

    def contains(self, z):
        r = np.abs(z)
        return (r > self.rho1) & (r < self.rho2)

    def polar_pieces(self, pot=None):
        return 0j, [PolarPiece(-pi, pi, _const(self.rho1), _const(self.rho2))]

    def area(self):
        return pi * (self.rho2 ** 2 - self.rho1 ** 2)


@dataclass(frozen=True)
class DiskComplement(HoleRegion):
    a: float
    center: complex = 0j
    kind = "disk-complement"
    bounded = False

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidRegion("disk radius must be positive")

    def charts(self):
        return [_circle_chart("circle", self.center, self.a)]

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) > self.a

    def polar_pieces(self, pot=None):
        c = complex(self.center)
        rhi = lambda th: pot.support_radius_along(c, th)
        return c, [PolarPiece(-pi, pi, _const(self.a), rhi)]

    def boundary_fourier(self):
        return {0: complex(self.center), 1: complex(self.a)}

    def green_infinity(self, z):
        """g_U(z, infinity) times 2 pi."""
        return np.log(np.abs(np.asarray(z) - self.center) / self.a)


@dataclass(frozen=True)
class Sector(HoleRegion):
    """{center + e^{i rot} r e^{i theta}: 0 < r < a, 0 < theta < 2 pi / p}."""
    a: float
    p: float
    center: complex = 0j
    rotation: float = 0.0
    kind = "sector"

    def __post_init__(self):
        if not self.a > 0 or not self.p >= 1:
            raise InvalidRegion("sector needs a > 0 and p >= 1")

    @property
    def opening(self):
        return 2 * pi / self.p

    def charts(self):
        a, w = self.a, self.opening
        c, e0 = complex(self.center), cmath.exp(1j * self.rotation)
        e1 = e0 * cmath.exp(1j * w)
        one = lambda t: 1.0 + 0 * np.asarray(t, dtype=float)
        return [
            Chart("edge0", 0.0, a, lambda r: c + e0 * np.asarray(r, dtype=float), one, "per-dr"),
            Chart("arc", 0.0, w, lambda t: c + e0 * a * np.exp(1j * np.asarray(t)),
                  lambda t: a * one(t), "per-dtheta"),
            Chart("edge1", 0.0, a, lambda r: c + e1 * np.asarray(r, dtype=float), one, "per-dr"),
        ]

    def contains(self, z):
        w = (np.asarray(z, dtype=complex) - self.center) * cmath.exp(-1j * self.rotation)
        th = np.mod(np.angle(w), 2 * pi)
        return (np.abs(w) < self.a) & (th > 0) & (th < self.opening)

    def polar_pieces(self, pot=None):
        return complex(self.center), [PolarPiece(self.rotation, self.rotation + self.opening,
                                                 _const(0.0), _const(self.a))]

    def extreme_points(self):
        """Apex, arc end points, and the arc as a Fourier description."""
        return [complex(self.center), self.charts()[1].point(0.0), self.charts()[1].point(self.opening)]

    def area(self):
        return self.a ** 2 * self.opening / 2


@dataclass(frozen=True)
class Ellipse(HoleRegion):
    """Interior of center + e^{i rot}(a cos t + i c sin t)."""
    a: float
    c: float
    center: complex = 0j
    rotation: float = 0.0
    kind = "ellipse"

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0):
            raise InvalidRegion("ellipse semi-axes must be positive")

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return self.center + cmath.exp(1j * self.rotation) * (self.a * np.cos(t) + 1j * self.c * np.sin(t))

    def charts(self):
        a, c = self.a, self.c
        return [Chart("ellipse", -pi, pi, self.point,
                      lambda t: np.hypot(a * np.sin(t), c * np.cos(t)), "per-dtheta")]

    def contains(self, z):
        w = (np.asarray(z) - self.center) * cmath.exp(-1j * self.rotation)
        return (w.real / self.a) ** 2 + (w.imag / self.c) ** 2 < 1

    def _radius(self, th):
        th = np.asarray(th, dtype=float) - self.rotation
        return 1.0 / np.sqrt((np.cos(th) / self.a) ** 2 + (np.sin(th) / self.c) ** 2)

    def polar_pieces(self, pot=None):
        return complex(self.center), [PolarPiece(-pi, pi, _const(0.0), self._radius)]

    def boundary_fourier(self):
        e = cmath.exp(1j * self.rotation)
        return {0: complex(self.center), 1: e * (self.a + self.c) / 2, -1: e * (self.a - self.c) / 2}

    def area(self):
        return pi * self.a * self.c


@dataclass(frozen=True)
class EllipseComplement(HoleRegion):
    """Exterior of the centered ellipse (x/a)^2 + (y/c)^2 = 1."""
    a: float
    c: float
    kind = "ellipse-complement"
    bounded = False

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0):
            raise InvalidRegion("ellipse semi-axes must be positive")

    def point(self, t):
        t = np.asarray(t, dtype=float)
        return self.a * np.cos(t) + 1j * self.c * np.sin(t)

    def charts(self):
        a, c = self.a, self.c
        return [Chart("ellipse", -pi, pi, self.point,
                      lambda t: np.hypot(a * np.sin(t), c * np.cos(t)), "per-dtheta")]

    def contains(self, z):
        z = np.asarray(z)
        return (z.real / self.a) ** 2 + (z.imag / self.c) ** 2 > 1

    def polar_pieces(self, pot=None):
        rlo = lambda th: 1.0 / np.sqrt((np.cos(th) / self.a) ** 2 + (np.sin(th) / self.c) ** 2)
        rhi = lambda th: pot.support_radius_along(0j, th)
        return 0j, [PolarPiece(-pi, pi, rlo, rhi)]

    def boundary_fourier(self):
        return {1: complex((self.a + self.c) / 2), -1: complex((self.a - self.c) / 2)}

    def exterior_map(self, z):
        """Conformal map of U onto {|w| > 1} fixing infinity."""
        z = np.asarray(z, dtype=complex)
        if self.a >= self.c:
            f = np.sqrt(complex(self.a ** 2 - self.c ** 2))
            return (z + np.sqrt(z - f) * np.sqrt(z + f)) / (self.a + self.c)
        # foci on the imaginary axis: rotate by -pi/2 and swap the axes
        w = -1j * z
        f = sqrt(self.c ** 2 - self.a ** 2)
        return (w + np.sqrt(w - f) * np.sqrt(w + f)) / (self.a + self.c)

    def green_infinity(self, z):
        return np.log(np.abs(self.exterior_map(z)))


@dataclass(frozen=True)
class Rectangle(HoleRegion):
    a1: float
    a2: float
    c1: float
    c2: float
    kind = "rectangle"

    def __post_init__(self):
        if not (self.a2 > self.a1 and self.c2 > self.c1):
            raise InvalidRegion("rectangle needs a1 < a2 and c1 < c2")

    @property
    def aspect(self):
        return (self.a2 - self.a1) / (self.c2 - self.c1)

    def charts(self):
        a1, a2, c1, c2 = self.a1, self.a2, self.c1, self.c2
        one = lambda t: 1.0 + 0 * np.asarray(t, dtype=float)
        return [
            Chart("right", c1, c2, lambda y: a2 + 1j * np.asarray(y), one, "per-dy"),
            Chart("top", a1, a2, lambda x: np.asarray(x) + 1j * c2, one, "per-dx"),
            Chart("left", c1, c2, lambda y: a1 + 1j * np.asarray(y), one, "per-dy"),
            Chart("bottom", a1, a2, lambda x: np.asarray(x) + 1j * c1, one, "per-dx"),
        ]

    def contains(self, z):
        z = np.asarray(z)
        return (z.real > self.a1) & (z.real < self.a2) & (z.imag > self.c1) & (z.imag < self.c2)

    def vertices(self):
        return [complex(self.a2, self.c1), complex(self.a2, self.c2),
                complex(self.a1, self.c2), complex(self.a1, self.c1)]

    def polar_pieces(self, pot=None):
        return _polygon_pieces(self.vertices())

    def area(self):
        return (self.a2 - self.a1) * (self.c2 - self.c1)


def Square(c, center=0j):
    """Axis-parallel square of side c."""
    x, y = complex(center).real, complex(center).imag
    return Rectangle(x - c / 2, x + c / 2, y - c / 2, y + c / 2)


@dataclass(frozen=True)
class EquilateralTriangle(HoleRegion):
    """center + e^{i rot} a P, where P has vertices e^{+-i pi/3} and -1."""
    a: float
    center: complex = 0j
    rotation: float = 0.0
    kind = "triangle"

    def __post_init__(self):
        if not self.a > 0:
            raise InvalidRegion("triangle size must be positive")

    def edge_point(self, j, y):
        w = cmath.exp(1j * (self.rotation + 2 * pi * j / 3))
        return self.center + w * (self.a / 2 + 1j * np.asarray(y))

    def charts(self):
        h = sqrt(3) * self.a / 2
        one = lambda t: 1.0 + 0 * np.asarray(t, dtype=float)
        return [Chart(f"edge{j}", -h, h, (lambda y, j=j: self.edge_point(j, y)), one, "per-dy")
                for j in range(3)]

    def vertices(self):
        e = cmath.exp(1j * self.rotation)
        return [self.center + e * self.a * cmath.exp(1j * t) for t in (-pi / 3, pi / 3, pi)]

    def contains(self, z):
        w = (np.asarray(z) - self.center) * cmath.exp(-1j * self.rotation)
        ok = np.ones(np.shape(w), dtype=bool)
        for j in range(3):
            ok &= (w * cmath.exp(-2j * pi * j / 3)).real < self.a / 2
        return ok

    def polar_pieces(self, pot=None):
        return _polygon_pieces(self.vertices(), self.center)

    def area(self):
        return 3 * sqrt(3) / 4 * self.a ** 2


@dataclass(frozen=True)
class Cardioid(HoleRegion):
    """{center + e^{i rot} r e^{i t}: r < a (1 + 2 c cos t)}, 0 <= c < 1/2."""
    a: float
    c: float
    center: complex = 0j
    rotation: float = 0.0
    kind = "cardioid"

    def __post_init__(self):
        if not (self.a > 0 and 0 <= self.c <= 0.5):
            raise InvalidRegion("cardioid needs a > 0 and 0 <= c <= 1/2")

    def _radius(self, t):
        return self.a * (1 + 2 * self.c * np.cos(np.asarray(t, dtype=float) - self.rotation))

    def charts(self):
        a, c = self.a, self.c
        e = cmath.exp(1j * self.rotation)
        pt = lambda t: self.center + e * a * (1 + 2 * c * np.cos(t)) * np.exp(1j * np.asarray(t))
        sp = lambda t: a * np.hypot(1 + 2 * c * np.cos(t), 2 * c * np.sin(t))
        return [Chart("cardioid", -pi, pi, pt, sp, "per-dtheta")]

    def contains(self, z):
        w = np.asarray(z) - self.center
        return np.abs(w) < self._radius(np.angle(w))

    def polar_pieces(self, pot=None):
        return complex(self.center), [PolarPiece(-pi + self.rotation, pi + self.rotation,
                                                 _const(0.0), self._radius)]

    def boundary_fourier(self):
        e = cmath.exp(1j * self.rotation)
        a, c = self.a, self.c
        return {0: complex(self.center) + e * a * c, 1: e * a, 2: e * a * c}

    def area(self):
        return pi * self.a ** 2 * (1 + 2 * self.c ** 2)


def _polygon_pieces(verts, pole=None):
    """Polar pieces of a convex polygon seen from an interior pole."""
    verts = [complex(v) for v in verts]
    if pole is None:
        pole = sum(verts) / len(verts)
    pieces = []
    n = len(verts)
    angles = [cmath.phase(v - pole) for v in verts]
    for j in range(n):
        v0, v1 = verts[j], verts[(j + 1) % n]
        t0, t1 = angles[j], angles[(j + 1) % n]
        if t1 <= t0:
            t1 += 2 * pi
        # distance from pole to the edge line along direction theta
        nrm = (v1 - v0) * -1j
        nrm /= abs(nrm)
        dist = ((v0 - pole) * nrm.conjugate()).real
        if dist < 0:
            nrm, dist = -nrm, -dist

        def rhi(th, nrm=nrm, dist=dist):
            return dist / np.cos(np.asarray(th, dtype=float) - cmath.phase(nrm))
        pieces.append(PolarPiece(t0, t1, _const(0.0), rhi))
    return pole, pieces


# ---------------------------------------------------------------------------
# Validity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Validity:
    boundary_in_support: bool
    hole_in_support: bool
    exterior_ball: bool

    def __bool__(self):
        return self.boundary_in_support


def _trig_critical(fourier, weight):
    """Critical angles of F(theta) = weight(z(theta)), a real trigonometric
    polynomial when z(theta) = sum_k fourier[k] e^{ik theta} and weight is a
    quadratic form.  They are the unit-circle roots of F' written as a
    polynomial in e^{i theta}.
    """
    deg = 2 * max(abs(k) for k in fourier)
    n = 4 * deg + 4
    th = 2 * pi * np.arange(n) / n
    F = weight(sum(c * np.exp(1j * k * th) for k, c in fourier.items()))
    coef = np.fft.fft(F) / n
    ks = np.fft.fftfreq(n, 1.0 / n).round().astype(int)
    poly = np.zeros(2 * deg + 1, dtype=complex)
    for k, fk in zip(ks, coef):
        if abs(k) <= deg:
            poly[k + deg] += 1j * k * fk
    cand = [0.0, pi / 2, pi, -pi / 2]
    if np.max(np.abs(poly)) > 1e-14 * max(1.0, np.max(np.abs(coef))):
        roots = np.roots(poly[::-1])
        cand += [float(np.angle(r)) for r in roots if abs(abs(r) - 1) < 1e-6]
    return np.array(cand)


def _trig_extrema(fourier, weight, arc=None):
    th = _trig_critical(fourier, weight)
    if arc is not None:
        lo, hi = arc
        th = np.concatenate([np.mod(th - lo, 2 * pi) + lo, [lo, hi]])
        th = th[(th >= lo) & (th <= hi)]
    vals = weight(sum(c * np.exp(1j * k * th) for k, c in fourier.items()))
    return float(np.max(vals)), float(np.min(vals))


def _support_form(pot):
    """Quadratic form whose sublevel set {<= 1} is the support, if elliptic."""
    if isinstance(pot, EllipticGinibre):
        A, B = pot.semi_axes
        return lambda z: (np.real(z) / A) ** 2 + (np.imag(z) / B) ** 2
    if isinstance(pot, MittagLeffler):
        R = pot.radius
        return lambda z: np.abs(z) ** 2 / R ** 2
    return None


def _max_over_boundary(region, form):
    """Max of a convex quadratic form over the closure of a bounded region,
    or over the boundary curve of an unbounded one."""
    f = region.boundary_fourier()
    if f is not None:
        return _trig_extrema(f, form)[0]
    if region.vertices() is not None:
        return max(float(form(v)) for v in region.vertices())
    if isinstance(region, Sector):
        e = cmath.exp(1j * region.rotation)
        arc = {0: complex(region.center), 1: e * region.a}
        mx = _trig_extrema(arc, form, (0.0, region.opening))[0]
        return max(mx, float(form(complex(region.center))))
    if isinstance(region, Annulus):
        return _trig_extrema({1: complex(region.rho2)}, form)[0]
    raise InvalidRegion(f"cannot validate {region.kind}")


def _boundary_abs_range(region):
    f = region.boundary_fourier()
    if f is not None:
        mx, mn = _trig_extrema(f, lambda z: np.abs(z) ** 2)
        return sqrt(max(mn, 0.0)), sqrt(mx)
    v = region.vertices()
    if v is not None:
        # |z| is convex: max at a vertex; min over edges by projection
        absmax = max(abs(x) for x in v)
        absmin = min(_seg_dist(0j, v[j], v[(j + 1) % len(v)]) for j in range(len(v)))
        return absmin, absmax
    if isinstance(region, Sector):
        return 0.0, region.a
    if isinstance(region, Annulus):
        return region.rho1, region.rho2
    raise InvalidRegion(f"no boundary description for {region.kind}")


def _seg_dist(p, a, b):
    d = b - a
    t = ((p - a) * d.conjugate()).real / abs(d) ** 2
    t = min(max(t, 0.0), 1.0)
    return abs(a + t * d - p)


def validate(pot, region):
    """Containment and regularity flags for a (potential, region) pair."""
    ext = True
    if isinstance(region, Sector):
        ext = region.p >= 2
    elif isinstance(region, Cardioid):
        ext = region.c < 0.5

    if isinstance(pot, Spherical):
        return Validity(True, region.bounded, ext)

    form = _support_form(pot)
    if form is not None:
        mx = _max_over_boundary(region, form)
        bnd = mx <= 1 + EPS_GEO
        # S is convex, so a bounded hole lies in S once its boundary does
        return Validity(bool(bnd), bool(bnd and region.bounded), ext)

    # tabulated radial: compare |z| ranges with the rings
    lo, hi = _boundary_abs_range(region)
    if isinstance(region, (Annulus,)):
        bnd = pot.ring_index(region.rho1) is not None and pot.ring_index(region.rho2) is not None
        j1, j2 = pot.ring_index(region.rho1), pot.ring_index(region.rho2)
        return Validity(bnd, bnd and j1 == j2, ext)
    if isinstance(region, (Disk, DiskComplement)) and complex(region.center) == 0:
        bnd = pot.ring_index(region.a) is not None
        hole = bnd and region.bounded and pot.ring_index(0.0) == pot.ring_index(region.a)
        return Validity(bnd, hole, ext)
    jl, jh = pot.ring_index(lo), pot.ring_index(hi)
    bnd = jl is not None and jl == jh
    inner = 0.0 if region.contains(0j) or isinstance(region, Sector) else lo
    hole = bnd and region.bounded and pot.ring_index(inner) == jh
    return Validity(bool(bnd), bool(hole), ext)


# ---------------------------------------------------------------------------
# Measure of a region
# ---------------------------------------------------------------------------

def equilibrium_density(pot, z):
    """Density of mu with respect to area measure at z."""
    return pot.density(z)


def mu_mass_of_region(pot, region, tol=1e-10):
    """mu(U), radially when possible, otherwise by 2D quadrature."""
    if pot.radial:
        if isinstance(region, Disk) and complex(region.center) == 0:
            return pot.radial_mass(0.0, region.a)
        if isinstance(region, Annulus):
            return pot.radial_mass(region.rho1, region.rho2)
        if isinstance(region, DiskComplement) and complex(region.center) == 0:
            return pot.radial_mass(region.a, pot.r_max)
        if isinstance(region, Sector):
            return pot.radial_mass(0.0, region.a) / region.p
    from .oracle import mu_integral
    return float(np.real(mu_integral(lambda z: np.ones_like(np.real(z)), pot, region, tol)))
