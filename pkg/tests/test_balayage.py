import cmath
from math import atan2, log, pi, sqrt

import numpy as np
import pytest
from scipy import integrate

from coulomb_holes.balayage import (
    ContainmentError, NotCovered, balayage, bal_eg_complement_disk, bal_eg_complement_ellipse,
    bal_green_generic, bal_ml_disk, bal_ml_disk_density, bal_ml_ellipse, bal_ml_ellipse_density,
    bal_radial_annulus, bal_radial_disk, bal_radial_disk_complement, bal_rectangle,
    bal_rectangle_density, bal_sector, bal_sector_density, bal_square_elliptic, bal_triangle_uniform,
    rectangle_green_density, rectangle_green_double_series, sector_arc_coefficients,
    square_cosine_density, square_modulus,
)
from coulomb_holes.constants import c_U_mu
from coulomb_holes.model import (
    Annulus, Cardioid, Disk, DiskComplement, Ellipse, EllipseComplement, EllipticGinibre,
    EquilateralTriangle, Ginibre, InvalidRegion, MittagLeffler, Rectangle, Sector, Spherical, mu_mass_of_region,
)
from coulomb_holes.oracle import verify_moments


def moment_residual(pot, region, nu, n_max):
    return verify_moments(pot, region, nu, n_max).max_abs_residual


# ---------------------------------------------------------------------------
# radial
# ---------------------------------------------------------------------------

def test_radial_disk():
    nu = bal_radial_disk(Ginibre(), 0.6)
    assert nu.total_mass == pytest.approx(0.36)
    assert nu.segments[0].density(1.0) == pytest.approx(0.36 / (2 * pi))
    nu = bal_radial_disk(Spherical(), 1.0)
    assert nu.total_mass == pytest.approx(0.5) and nu.segments[0].density(0.3) == pytest.approx(1 / (4 * pi))
    pot = MittagLeffler(3)
    nu = bal_radial_disk(pot, 0.5)
    assert nu.total_mass == pytest.approx(0.046875, rel=1e-12)
    assert nu.total_mass == pytest.approx(mu_mass_of_region(pot, Disk(0.5)), rel=1e-12)
    with pytest.raises(InvalidRegion):
        bal_radial_disk(Ginibre(), 1.5)


def annulus_oracle(pot, r1, r2):
    kappa, _ = integrate.quad(lambda r: float(pot.mu_rad(r)), r1, r2, epsabs=1e-15, epsrel=1e-13)
    mlog, _ = integrate.quad(lambda r: log(r) * float(pot.mu_rad(r)), r1, r2, epsabs=1e-15, epsrel=1e-13)
    return kappa, (log(r2) - mlog / kappa) / log(r2 / r1)


@pytest.mark.parametrize("pot, r1, r2", [(Ginibre(), 0.3, 0.7), (Spherical(), 0.5, 2.0),
                                         (MittagLeffler(2.5), 0.1, 0.8), (MittagLeffler(0.5), 0.2, 0.9)])
def test_radial_annulus(pot, r1, r2):
    nu = bal_radial_annulus(pot, r1, r2)
    kappa, lam = annulus_oracle(pot, r1, r2)
    assert nu.meta["kappa"] == pytest.approx(kappa, rel=1e-11)
    assert nu.meta["lambda"] == pytest.approx(lam, rel=1e-10)
    assert 0 <= nu.meta["lambda"] <= 1
    if isinstance(pot, Ginibre):
        assert nu.meta["kappa"] == pytest.approx(0.4)
    assert moment_residual(pot, Annulus(r1, r2), nu, 8) < 1e-7


def test_radial_disk_complement():
    assert bal_radial_disk_complement(Ginibre(), 0.4).total_mass == pytest.approx(1 - 0.16)
    b = 2.0
    pot = MittagLeffler(b)
    assert bal_radial_disk_complement(pot, 0.5).total_mass == pytest.approx(1 - b * 0.5 ** (2 * b))
    assert bal_radial_disk_complement(pot, pot.radius).total_mass == pytest.approx(0, abs=1e-14)


# ---------------------------------------------------------------------------
# sector
# ---------------------------------------------------------------------------

def test_sector_arc_coefficients_ml():
    b, p, a = 2.0, 3.0, 0.6
    c = sector_arc_coefficients(MittagLeffler(b), a, p, 20)
    m = np.arange(20)
    ref = 2 * b * b * a ** (2 * b) / pi ** 2 / ((m + 0.5) * (2 * b + p * m + p / 2))
    assert np.allclose(c, ref, rtol=1e-12, atol=0)


def test_sector_arc_vanishes_at_ends():
    pot = MittagLeffler(1.0)
    assert bal_sector(pot, 0.5, 3, "arc", 0.0) == 0
    assert bal_sector(pot, 0.5, 3, "arc", 2 * pi / 3) == 0


@pytest.mark.parametrize("b, p", [(2.0, 5.0), (1.0, 4.0), (0.5, 3.0), (1.5, 2.0)])
def test_sector_fast_path_vs_quadrature(b, p):
    pot = MittagLeffler(b)
    a = 0.8 * pot.radius
    for r in (0.1 * a, 0.4 * a, 0.9 * a):
        fast = bal_sector(pot, a, p, "radial-edge", r)
        slow = bal_sector(pot, a, p, "radial-edge", r, method="quadrature")
        assert fast == pytest.approx(slow, rel=1e-9)
    for th in (0.1, pi / p, 2 * pi / p - 0.05):
        fast = bal_sector(pot, a, p, "arc", th)
        slow = bal_sector(pot, a, p, "arc", th, method="quadrature")
        assert fast == pytest.approx(slow, rel=1e-9)


def test_sector_spherical_mass():
    nu = bal_sector_density(Spherical(), 0.7, 3)
    assert nu.mass_by_quadrature() == pytest.approx(0.49 / 1.49 / 3, rel=1e-8)


@pytest.mark.parametrize("b, p", [(1.0, 2.0), (2.0, 5.0)])
def test_sector_moments(b, p):
    pot = MittagLeffler(b)
    a = 0.9 * pot.radius
    nu = bal_sector_density(pot, a, p)
    assert moment_residual(pot, Sector(a, p), nu, 8) < 1e-7


# ---------------------------------------------------------------------------
# Mittag-Leffler disk and ellipse
# ---------------------------------------------------------------------------

def test_ml_disk_profiles():
    prof = bal_ml_disk(3, 0.0, 0.4)
    assert prof.coefficients[0] == pytest.approx(3 * 0.4 ** 6 / 2, rel=1e-13)
    assert np.allclose(prof.coefficients[1:], 0, atol=1e-18)
    prof = bal_ml_disk(1, 0.3, 0.2)
    assert prof(np.linspace(0, 6, 7)) == pytest.approx(np.full(7, 0.04 / (2 * pi)))
    with pytest.raises(InvalidRegion):
        bal_ml_disk(2, 0.5, 0.5)


@pytest.mark.parametrize("b", [1, 2, 3])
@pytest.mark.parametrize("where", [0.0, 1.0])
def test_ml_disk_moments(b, where):
    a = 0.4 * b ** (-1 / (2 * b))
    x0 = where * a
    nu = bal_ml_disk_density(b, x0, a)
    assert moment_residual(MittagLeffler(b), Disk(a, x0), nu, 8) < 1e-7


def test_ml_ellipse_b1():
    a, c = 0.7, 0.3
    al, ga = (a + c) / 2, (a - c) / 2
    rho = ga / al
    prof = bal_ml_ellipse(1, a, c)
    th = np.linspace(0, pi, 9)
    ref = al ** 2 / (2 * pi) * (1 - rho ** 2) * (1 - 2 * np.cos(2 * th) / (1 / rho + rho))
    assert prof(th) == pytest.approx(ref, rel=1e-13)


def test_ml_ellipse_circle_limit():
    e = bal_ml_ellipse(3, 0.4, 0.4)
    d = bal_ml_disk(3, 0.0, 0.4)
    th = np.linspace(0, 2 * pi, 13)
    assert e(th) == pytest.approx(d(th), rel=1e-12)


def test_ml_ellipse_b3_moments():
    r = 3 ** (-1 / 6)
    a, c = 0.4 * r, 0.85 * r
    rep = verify_moments(MittagLeffler(3), Ellipse(a, c), bal_ml_ellipse_density(3, a, c), 10)
    assert rep.max_abs_residual < 1e-7
    odd = [abs(v) for n, v in rep.residuals.items() if n % 2]
    assert max(odd) < 1e-15


# ---------------------------------------------------------------------------
# rectangles
# ---------------------------------------------------------------------------

def test_rectangle_b1_coefficients():
    tau = 0.25
    a1, a2, c1, c2 = -0.3, 0.2, -0.1, 0.3
    al = (a2 - a1) / (c2 - c1)
    C = bal_rectangle(EllipticGinibre(tau), a1, a2, c1, c2, "right", 12)
    m = np.arange(1, 13)
    odd = m % 2 == 1
    k = (m - 1) // 2
    ref = np.where(odd, 4 * (c2 - c1) / pi ** 3 * np.tanh(al * (1 + 2 * k) * pi / 2) / (1 + 2 * k) ** 2, 0.0)
    assert np.allclose(C, ref / (1 - tau * tau), rtol=1e-12, atol=1e-17)


def test_centered_square_symmetry():
    pot = MittagLeffler(2)
    sides = [bal_rectangle(pot, -0.3, 0.3, -0.3, 0.3, s, 30) for s in ("right", "top", "left", "bottom")]
    for s in sides[1:]:
        assert np.allclose(s, sides[0], rtol=1e-12, atol=1e-18)
    assert np.allclose(sides[0][1::2], 0, atol=1e-18)
    nu = bal_rectangle_density(pot, -0.3, 0.3, -0.3, 0.3)
    y = np.linspace(-0.29, 0.29, 9)
    d = [seg.density(y) for seg in nu.segments]
    for di in d[1:]:
        assert np.allclose(di, d[0], rtol=1e-12)


def test_rectangle_vs_green_series():
    pot = MittagLeffler(2)
    region = Rectangle(0.1, 0.5, -0.2, 0.3)
    nu = bal_rectangle_density(pot, 0.1, 0.5, -0.2, 0.3)
    segs = {s.chart.name: s for s in nu.segments}
    for side, t in [("right", 0.05), ("right", -0.15), ("top", 0.3), ("left", 0.2), ("bottom", 0.4)]:
        g, _ = rectangle_green_density(pot, region, side, t)
        assert float(segs[side].density(t)) == pytest.approx(g, rel=1e-6)


@pytest.mark.parametrize("pot", [MittagLeffler(1), MittagLeffler(2), EllipticGinibre(0.3)])
def test_rectangle_moments(pot):
    region = Rectangle(-0.25, 0.35, -0.15, 0.2)
    nu = bal_rectangle_density(pot, region.a1, region.a2, region.c1, region.c2)
    assert nu.mass_by_quadrature() == pytest.approx(mu_mass_of_region(pot, region), abs=1e-8)
    assert moment_residual(pot, region, nu, 8) < 1e-7


def test_rectangle_corner_log_behavior():
    # density / (y - c1) - (2/pi^2)(1-tau^2)^{-1} log(1/(y - c1)) stays bounded
    tau = 0.2
    nu = bal_rectangle_density(EllipticGinibre(tau), -0.3, 0.3, -0.2, 0.2)
    right = nu.segments[0]
    d = 2.0 ** -np.arange(6, 22)
    vals = np.array([float(right.density(-0.2 + di)) / di - 2 / (pi ** 2 * (1 - tau * tau)) * log(1 / di)
                     for di in d])
    assert np.all(np.isfinite(vals)) and np.ptp(vals) < 0.5
    assert abs(vals[-1] - vals[-2]) < abs(vals[1] - vals[0])


def test_square_cosine_form():
    b, c = 2, 0.6
    nu = bal_rectangle_density(MittagLeffler(b), -c / 2, c / 2, -c / 2, c / 2)
    y = np.array([-0.25, 0.0, 0.1])
    vals, bound = square_cosine_density(b, c, y)
    assert vals == pytest.approx(nu.segments[0].density(y), rel=1e-7)
    assert bound < 1e-7


# ---------------------------------------------------------------------------
# triangle and complements
# ---------------------------------------------------------------------------

def test_triangle():
    tau, z0, th0, a = 0.2, 0.5 + 0.2j, pi / 10, 0.45
    nu = bal_triangle_uniform(tau, z0, th0, a)
    h = sqrt(3) / 2 * a
    assert abs(nu.segments[0].density(h)) < 1e-15 and abs(nu.segments[0].density(-h)) < 1e-15
    region = EquilateralTriangle(a, z0, th0)
    assert nu.total_mass == pytest.approx(region.area() / (pi * (1 - tau * tau)), rel=1e-14)
    assert nu.mass_by_quadrature() == pytest.approx(nu.total_mass, rel=1e-12)
    assert moment_residual(EllipticGinibre(tau), region, nu, 8) < 1e-7
    # threefold symmetry: the same profile on every edge
    y = np.linspace(-h, h, 7)
    assert np.allclose(nu.segments[1].density(y), nu.segments[0].density(y))


def test_eg_complement_ellipse_coefficients():
    tau = 0.3
    s = 0.8
    c0, c1 = bal_eg_complement_ellipse(tau, s * (1 + tau), s * (1 - tau))
    assert abs(c1) < 1e-16
    c0, c1 = bal_eg_complement_ellipse(tau, 1 + tau, 1 - tau)
    assert abs(c0) < 1e-16 and abs(c1) < 1e-16


def test_eg_complement_ellipse_inverse_moments():
    tau, a, c = 0.2, 0.45, 0.75
    pot, region = EllipticGinibre(tau), EllipseComplement(a, c)
    nu = balayage(pot, region)
    rep = verify_moments(pot, region, nu, 6, c_U_mu(pot, region))
    assert rep.max_abs_residual < 1e-7
    for n in (0, 2, 4):
        lhs = nu.integrate(lambda z: z ** (-n))
        if n == 4:
            assert abs(lhs) < 1e-12
        else:
            assert abs(lhs) > 1e-3


def test_eg_complement_disk():
    tau, a = 0.3, 0.5
    nu0 = bal_eg_complement_disk(tau, 0.0, 0.0, a)
    c0, c1 = bal_eg_complement_ellipse(tau, a, a)
    th = np.linspace(0, 2 * pi, 9)
    assert nu0.segments[0].density(th) == pytest.approx(c0 + 2 * c1 * np.cos(2 * th), rel=1e-13)
    tau, x0, y0, a = 0.2, 0.1, 0.05, 0.4
    pot, region = EllipticGinibre(tau), DiskComplement(a, complex(x0, y0))
    nu = bal_eg_complement_disk(tau, x0, y0, a)
    assert nu.total_mass == pytest.approx(mu_mass_of_region(pot, region), rel=1e-9)
    rep = verify_moments(pot, region, nu, 6, c_U_mu(pot, region))
    assert rep.max_abs_residual < 1e-7


def test_eg_complement_disk_argmin():
    nu = bal_eg_complement_disk(0.0, 0.2, 0.1, 0.6)
    th = np.linspace(-pi, pi, 200001)
    d = nu.segments[0].density(th)
    assert abs(th[np.argmin(d)] - atan2(0.1, 0.2)) < 1e-4
    # tau = 0: density k0 - r cos(theta - phi), argmin exactly at phi
    assert nu.meta["profile"][3] == 0


def test_balayage_nonnegative_and_mass():
    cases = [
        (MittagLeffler(2), Disk(0.3, 0.2 + 0.1j)),
        (EllipticGinibre(0.3), Ellipse(0.3, 0.2, 0.1j, 0.4)),
        (EllipticGinibre(0.3), Sector(0.4, 3, 0.1, 0.5)),
        (MittagLeffler(2), Rectangle(-0.2, 0.3, -0.1, 0.3)),
        (EllipticGinibre(0.3), EquilateralTriangle(0.3, 0.1)),
        (EllipticGinibre(0.3), EllipseComplement(0.9, 0.6)),
        (Spherical(), Annulus(0.3, 1.5)),
    ]
    for pot, region in cases:
        nu = balayage(pot, region)
        for seg in nu.segments:
            ch = seg.chart
            t = np.linspace(ch.t0, ch.t1, 202)[1:-1]
            assert np.all(np.asarray(seg.density(t)) >= -1e-12)
        assert nu.mass_by_quadrature() == pytest.approx(mu_mass_of_region(pot, region), abs=1e-8)


def test_dispatch_refuses_uncovered():
    with pytest.raises(NotCovered):
        balayage(EllipticGinibre(0.2), Cardioid(0.3, 0.2))
    with pytest.raises(NotCovered):
        balayage(MittagLeffler(1.5), Rectangle(-0.1, 0.1, -0.1, 0.1))
    with pytest.raises(ContainmentError):
        balayage(Ginibre(), Disk(0.5, 0.6))


# ---------------------------------------------------------------------------
# square via the conformal map
# ---------------------------------------------------------------------------

def test_square_modulus():
    assert square_modulus() == pytest.approx(0.171573, abs=1e-6)


def test_square_elliptic_symmetry_and_series():
    c = 0.8
    up, dn = bal_square_elliptic(c, 0.2), bal_square_elliptic(c, -0.2)
    assert up == pytest.approx(dn, rel=1e-9)
    ser, _ = square_cosine_density(1, c, [0.0])
    assert bal_square_elliptic(c, 0.0) == pytest.approx(ser[0], rel=1e-6)


# ---------------------------------------------------------------------------
# Green-function oracle
# ---------------------------------------------------------------------------

def test_green_disk():
    pot, region = Ginibre(), Disk(0.3, 0.2 + 0.1j)
    for th in (0.0, 1.0, 2.5):
        zb = region.center + 0.3 * cmath.exp(1j * th)
        # arclength density = (a^2/(2 pi)) / a per unit length
        assert bal_green_generic(pot, region, zb) == pytest.approx(0.09 / (2 * pi) / 0.3, rel=1e-9)


def test_green_sector():
    pot, a, p = Ginibre(), 0.7, 2.0
    region = Sector(a, p)
    for r in (0.1, 0.35, 0.6):
        assert bal_green_generic(pot, region, r) == pytest.approx(bal_sector(pot, a, p, "radial-edge", r), rel=1e-7)
    for th in (0.4, 1.5):
        ref = bal_sector(pot, a, p, "arc", th) / a
        assert bal_green_generic(pot, region, a * cmath.exp(1j * th)) == pytest.approx(ref, rel=1e-7)


def test_green_rectangle_series_self_convergence():
    # truncation q, m <= 200 against q, m <= 400 at one boundary point
    pot, region = MittagLeffler(2), Rectangle(0.1, 0.5, -0.2, 0.3)
    v200 = rectangle_green_double_series(pot, region, "right", 0.05, 200, 200)
    v400 = rectangle_green_double_series(pot, region, "right", 0.05, 400, 400)
    assert abs(v200 - v400) < 1e-9
