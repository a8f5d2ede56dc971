from math import log, pi, sqrt

import numpy as np
import pytest

from coulomb_holes.balayage import ContainmentError, NotCovered
from coulomb_holes.constants import (
    HoleConstant, c_eg_complements, c_eg_moved_generic, c_eg_named, c_eg_scaled, c_eg_triangle,
    c_generic, c_ml_disk, c_ml_ellipse, c_ml_square, c_radial_annulus, c_radial_disk,
    c_radial_disk_complement, c_rectangle, c_sector, eg_R2logR, hole_constant, sector_ml_digamma,
)
from coulomb_holes.model import (
    Annulus, Cardioid, Disk, DiskComplement, Ellipse, EllipseComplement, EllipticGinibre,
    EquilateralTriangle, Ginibre, MittagLeffler, Rectangle, Sector, Spherical,
)


def test_breakdown_invariant():
    h = c_generic(MittagLeffler(2), Disk(0.3, 0.2), 2.0)
    assert h.method == "generic-quadrature"
    assert abs(h.check_breakdown() - h.C) <= 1e-10
    assert h.as_dict()["breakdown"]["c_U_mu"] == 0.0


def test_ginibre_disk():
    for beta in (1.0, 2.0, 4.0):
        assert c_radial_disk(Ginibre(), 0.5, beta).C == pytest.approx(beta * 0.5 ** 4 / 8, rel=1e-14)
        assert c_generic(Ginibre(), Disk(0.5), beta).C == pytest.approx(beta * 0.5 ** 4 / 8, rel=1e-9)


def test_empty_hole_mass_gives_zero():
    # a disk complement whose radius is the droplet radius holds no mass
    pot = MittagLeffler(2)
    assert c_radial_disk_complement(pot, pot.radius, 2).C == pytest.approx(0, abs=1e-14)
    assert c_eg_complements("ellipse-complement", (1.3, 0.7), 0.3, 2).C == pytest.approx(0, abs=1e-14)


def test_radial_closed_forms():
    beta, b, r1, r2 = 2.0, 2.0, 0.3, 0.6
    ref = beta / 2 * (b / 4 * (r2 ** (4 * b) - r1 ** (4 * b)) - (r2 ** (2 * b) - r1 ** (2 * b)) ** 2 / (4 * log(r2 / r1)))
    assert c_radial_annulus(MittagLeffler(b), r1, r2, beta).C == pytest.approx(ref, rel=1e-13)
    a = 0.7
    assert c_radial_disk(Spherical(), a, beta).C == pytest.approx(beta / 4 * (log(1 + a * a) - a * a / (1 + a * a)))
    a = 0.5
    ref = beta / 2 * (a ** (2 * b) - b * a ** (4 * b) / 4 - log(b * a ** (2 * b)) / (2 * b) - 3 / (4 * b))
    assert c_radial_disk_complement(MittagLeffler(b), a, beta).C == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("pot, region", [
    (MittagLeffler(2.5), Annulus(0.2, 0.6)),
    (Spherical(), Annulus(0.5, 1.7)),
    (MittagLeffler(2), DiskComplement(0.5)),
    (MittagLeffler(0.7), Disk(0.4)),
])
def test_radial_vs_generic(pot, region):
    closed = hole_constant(pot, region, 2.0).C
    assert c_generic(pot, region, 2.0).C == pytest.approx(closed, rel=1e-7)


def test_sector_special_values():
    a, beta = 0.6, 2.0
    for b, p, val in [(1, 2, 1 / 8 - 1 / pi ** 2), (1, 4, 1 / 24 - log(2) / (2 * pi ** 2)),
                      (2, 2, 1 / 4 - 16 / (9 * pi ** 2))]:
        pot = MittagLeffler(b)
        aa = a * pot.radius
        assert c_sector(pot, aa, p, beta).C / (beta * aa ** (4 * b)) == pytest.approx(val, rel=1e-12)
    assert c_sector(Ginibre(), 0.5, 2, 2).C == pytest.approx(0.5 ** 4 * (1 / 4 - 2 / pi ** 2), rel=1e-12)


def test_sector_series_vs_digamma():
    pot = MittagLeffler(2)
    a = 0.7 * pot.radius
    d = c_sector(pot, a, 5, 2, method="digamma").C
    s = c_sector(pot, a, 5, 2, method="series").C
    assert abs(s - d) <= 1e-10 * d


def test_sector_vs_generic():
    pot = MittagLeffler(1.5)
    a = 0.8 * pot.radius
    assert c_generic(pot, Sector(a, 3), 2).C == pytest.approx(c_sector(pot, a, 3, 2).C, rel=1e-7)


def test_sector_degenerate_p():
    # p = 4b/(2k+1) makes the series degenerate; the result must be continuous in p
    pot = MittagLeffler(1.0)
    a = 0.6
    mid = c_sector(pot, a, 4.0, 2, method="series").C
    near = c_sector(pot, a, 4.0 * (1 + 1e-4), 2, method="series").C
    assert mid == pytest.approx(c_sector(pot, a, 4.0, 2, method="digamma").C, rel=1e-9)
    assert abs(mid - near) < 1e-3 * mid


def test_sector_parameter_range():
    with pytest.raises(Exception):
        c_sector(MittagLeffler(2), 0.3, 1.5, 2)
    assert c_sector(Ginibre(), 0.5, 1.5, 2).C > 0


def test_scaling_identity_and_containment():
    assert c_eg_scaled(0, 0, 1, 0, 0.123, 2).C == 0.123
    with pytest.raises(ContainmentError):
        c_eg_scaled(0.5, 1.45, 1, 0, 0.1, 2, base_region=Disk(0.1))


def test_eg_ellipse_and_triangle():
    tau, a, c, beta = 0.3, 0.4, 0.25, 2.0
    k = 1 / (1 - tau * tau) ** 2
    ref = k * beta / 4 * a ** 3 * c ** 3 / (a * a + c * c)
    assert c_eg_named(Ellipse(a, c), tau, beta).C == pytest.approx(ref, rel=1e-14)
    assert c_generic(EllipticGinibre(tau), Ellipse(a, c), beta).C == pytest.approx(ref, rel=1e-8)
    a = 0.35
    tri = c_eg_triangle(tau, a, beta).C
    assert tri == pytest.approx(9 * sqrt(3) * beta * a ** 4 / (320 * pi * (1 - tau * tau) ** 2))
    assert c_generic(EllipticGinibre(tau), EquilateralTriangle(a), beta).C == pytest.approx(tri, rel=1e-8)


def test_eg_named_forms():
    tau, beta, a = 0.25, 2.0, 0.4
    k = 1 / (1 - tau * tau) ** 2
    assert c_eg_named(Cardioid(a, 0.0), tau, beta).C == pytest.approx(beta * a ** 4 / 8 * k, rel=1e-14)
    r1, r2 = 0.2, 0.5
    ref = k * beta / 4 * ((r2 ** 4 - r1 ** 4) / 2 - (r2 ** 2 - r1 ** 2) ** 2 / (2 * log(r2 / r1)))
    assert c_eg_named((r1, r2, 0), tau, beta).C == pytest.approx(ref, rel=1e-14)
    sec = c_eg_named(Sector(a, 3), tau, beta).C
    assert sec == pytest.approx(k * c_sector(Ginibre(), a, 3, beta).C, rel=1e-12)
    # tau = 0 is Ginibre, where the generic path applies
    assert c_generic(Ginibre(), Annulus(r1, r2), beta).C == pytest.approx(ref * (1 - tau * tau) ** 2, rel=1e-7)


def test_cardioid_not_covered_by_generic():
    with pytest.raises(NotCovered):
        c_generic(EllipticGinibre(0.1), Cardioid(0.3, 0.2), 2)


def test_rectangles():
    assert c_rectangle(EllipticGinibre(0.0), -0.25, 0.25, -0.25, 0.25, 1).C / 0.5 ** 4 == pytest.approx(1.1187e-2, abs=1e-6)
    for b, ratio in [(2, 2.3057e-3), (3, 4.2438e-4), (4, 8.2742e-5)]:
        c = 0.5 * MittagLeffler(b).radius
        assert c_ml_square(b, c, 1).C / c ** (4 * b) == pytest.approx(ratio, abs=1e-7)


def test_rectangle_paths_and_generic():
    pot = EllipticGinibre(0.3)
    args = (-0.3, 0.2, -0.1, 0.35)
    t = c_rectangle(pot, *args, 2, method="tanh").C
    s = c_rectangle(pot, *args, 2, method="series").C
    assert t == pytest.approx(s, rel=1e-10)
    pot = MittagLeffler(2)
    region = Rectangle(0.1, 0.5, -0.2, 0.3)
    closed = c_rectangle(pot, 0.1, 0.5, -0.2, 0.3, 2).C
    assert c_generic(pot, region, 2).C == pytest.approx(closed, rel=1e-6)


def test_ml_disk_and_ellipse():
    beta, a, x0 = 2.0, 0.3, 0.25
    assert c_ml_disk(2, x0, a, beta).C == pytest.approx(beta * a ** 4 / 4 * (a ** 4 + 8 * a * a * x0 * x0 + 8 * x0 ** 4))
    for x in (0.0, 0.2, 0.5):
        assert c_ml_disk(1, x, 0.3, beta).C == pytest.approx(beta * 0.3 ** 4 / 8)
    a, c = 0.45, 0.3
    al, ga = (a + c) / 2, (a - c) / 2
    ref = beta * (al ** 4 - ga ** 4) ** 3 / (4 * (al ** 4 + ga ** 4))
    assert c_ml_ellipse(2, a, c, beta).C == pytest.approx(ref, rel=1e-12)
    assert c_generic(MittagLeffler(2), Ellipse(a, c), beta).C == pytest.approx(ref, rel=1e-7)
    assert c_generic(MittagLeffler(3), Disk(0.3, 0.2), beta).C == pytest.approx(c_ml_disk(3, 0.2, 0.3, beta).C, rel=1e-7)


def test_eg_complements():
    tau = 0.2
    assert abs(c_eg_complements("ellipse-complement", (1 + tau, 1 - tau), tau, 2).C) <= 1e-10
    assert abs(eg_R2logR(tau, 0, 0)) <= 1e-10
    a, beta = 0.5, 2.0
    ref = beta / 2 * (a * a / (1 - tau * tau) - (1 + 2 * tau * tau) * a ** 4 / (4 * (1 - tau * tau) ** 2) - 0.75 - log(a))
    assert c_eg_complements("disk-complement", (0, 0, a), tau, beta).C == pytest.approx(ref, rel=1e-13)
    a = 0.6
    assert c_eg_complements("ellipse-complement", (a, a), 0.0, 2).C == pytest.approx(a * a - a ** 4 / 4 - 0.75 - log(a))


def test_eg_complements_vs_generic():
    tau, x0, y0, a = 0.2, 0.1, 0.05, 0.4
    pot = EllipticGinibre(tau)
    closed = c_eg_complements("disk-complement", (x0, y0, a), tau, 2).C
    assert c_generic(pot, DiskComplement(a, complex(x0, y0)), 2).C == pytest.approx(closed, rel=1e-8)
    closed = c_eg_complements("ellipse-complement", (0.9, 0.6), 0.3, 2).C
    assert c_generic(EllipticGinibre(0.3), EllipseComplement(0.9, 0.6), 2).C == pytest.approx(closed, rel=1e-8)


def test_scaling_law_moved_holes():
    base = Rectangle(-0.2, 0.15, -0.1, 0.12)
    c0 = c_eg_moved_generic(0.0, 0, 1, 0, base, 2).C
    for tau, z0, rho, th in [(0.2, 0.1 + 0.05j, 0.5, pi / 7), (0.5, -0.1j, 1.0, 0.3)]:
        c = c_eg_moved_generic(tau, z0, rho, th, base, 2).C
        assert c * (1 - tau * tau) ** 2 / rho ** 4 == pytest.approx(c0, rel=1e-8)


def test_degeneration_chains():
    pot, beta, a = MittagLeffler(2), 2.0, 0.4
    disk = c_ml_disk(2, 0, a, beta).C
    errs = [abs(c_ml_ellipse(2, a, a * (1 - e), beta).C - disk) for e in (0.2, 0.1, 0.05, 0.01)]
    assert np.all(np.diff(errs) < 0) and errs[-1] < 0.05 * disk
    tau = 0.3
    disk = c_eg_named(Ellipse(a, a), tau, beta).C
    errs = [abs(c_eg_named(Cardioid(a, c), tau, beta).C - disk) for c in (0.3, 0.1, 0.03, 0.01)]
    assert np.all(np.diff(errs) < 0)
    disk = c_radial_disk(pot, a, beta).C
    errs = [abs(c_radial_annulus(pot, r, a, beta).C - disk) for r in (0.1, 0.01, 1e-3, 1e-4)]
    assert np.all(np.diff(errs) < 0)


@pytest.mark.parametrize("pot", [Ginibre(), MittagLeffler(2), MittagLeffler(0.6), Spherical(), EllipticGinibre(0.3)])
def test_disk_monotone_in_radius(pot):
    top = 0.6 * min(1.0, getattr(pot, "radius", 1.0))
    vals = [hole_constant(pot, Disk(a), 2).C for a in np.linspace(0.05, top, 8)]
    assert vals[0] > 0 and np.all(np.diff(vals) > 0)


def test_nonnegative_on_grid():
    cases = [(Ginibre(), Sector(0.5, 3)), (MittagLeffler(3), Disk(0.2, 0.3)),
             (EllipticGinibre(0.4), Rectangle(-0.3, 0.3, -0.1, 0.2)),
             (EllipticGinibre(0.4), EllipseComplement(1.2, 0.5)), (Spherical(), Annulus(0.2, 3))]
    for pot, region in cases:
        assert hole_constant(pot, region, 2).C >= 0


def test_digamma_form_small_b_over_p():
    # b/p -> 0: the bracket vanishes like 2(b/p)psi'(1/2) - 2(b/p)psi'(1/2) + O((b/p)^2)
    assert abs(sector_ml_digamma(1e-6, 1.0)) < 1e-9


def test_hole_constant_dataclass():
    h = HoleConstant(1.0, 2.0)
    assert h.normalized == 0.5 and h.method == "closed-form" and "breakdown" not in h.as_dict()
