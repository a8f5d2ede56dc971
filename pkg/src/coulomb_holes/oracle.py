"""Independent checks: quadrature, moment matching, and weighted Fekete points.

Nothing here uses the closed forms of the balayage or constants modules,
so the functions can serve as oracles for them.
"""

from dataclasses import dataclass, field
from math import pi
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate, optimize

from .model import (
    Annulus, Disk, DiskComplement, EllipseComplement, EllipticGinibre,
    MittagLeffler, PolarPiece, RadialPotential, Rectangle, _const,
)


class QuadratureError(ArithmeticError):
    """Requested tolerance not met; `estimate` holds the best value found."""

    def __init__(self, msg, estimate):
        super().__init__(msg)
        self.estimate = estimate


# ---------------------------------------------------------------------------
# 1D
# ---------------------------------------------------------------------------

def quad1d(f, a, b, tol=1e-12, points=None, limit=400):
    """int_a^b f(x) dx with QUADPACK; complex integrands are split."""
    kw = dict(epsabs=tol, epsrel=tol, limit=limit)
    if points is not None and np.isfinite(a) and np.isfinite(b):
        kw["points"] = [p for p in points if a < p < b]
    probe = f(0.5 * (a + b)) if np.isfinite(a) and np.isfinite(b) else f(a if np.isfinite(a) else 0.0)
    if np.iscomplexobj(probe):
        re, er = integrate.quad(lambda x: float(np.real(f(x))), a, b, **kw)
        im, ei = integrate.quad(lambda x: float(np.imag(f(x))), a, b, **kw)
        val, err = complex(re, im), abs(er) + abs(ei)
    else:
        val, err = integrate.quad(lambda x: float(f(x)), a, b, **kw)
    if not np.isfinite(err) or err > 100 * tol * max(1.0, abs(val)):
        raise QuadratureError(f"quad1d error estimate {err:.3g} above tolerance", val)
    return val


# ---------------------------------------------------------------------------
# 2D: tensor Gauss-Legendre over polar pieces
# ---------------------------------------------------------------------------

_GL = {}


def _gl(n):
    if n not in _GL:
        _GL[n] = leggauss(n)
    return _GL[n]


def _support_pieces(pot):
    if isinstance(pot, RadialPotential):
        lo, hi = pot.rings[0][0], pot.r_max
        return 0j, [PolarPiece(-pi, pi, _const(lo), _const(hi))]
    if isinstance(pot, EllipticGinibre):
        return 0j, [PolarPiece(-pi, pi, _const(0.0), lambda th: pot.support_radius_along(0j, th))]
    raise ValueError(f"no polar description of the support of {pot!r}")


def _radial_breaks(pot, pole):
    # ring edges of radial supports create kinks in r when the pole is 0
    if isinstance(pot, RadialPotential) and pole == 0:
        return sorted({x for ring in pot.rings for x in ring if np.isfinite(x) and x > 0})
    return []


def _radial_power(pot, pole):
    # density * r ~ r^{2b-1} at 0 for ML with b < 1: substitute r = R u^{1/(2b)}
    if isinstance(pot, MittagLeffler) and pole == 0 and pot.b < 1:
        return 1.0 / (2 * pot.b)
    return 1.0


def _piece_rule(piece, n_th, n_r, panels, pole, breaks, gamma):
    xt, wt = _gl(n_th)
    xr, wr = _gl(n_r)
    edges = np.linspace(piece.th0, piece.th1, panels + 1)
    th = np.concatenate([0.5 * (e1 - e0) * xt + 0.5 * (e1 + e0) for e0, e1 in zip(edges[:-1], edges[1:])])
    wth = np.concatenate([0.5 * (e1 - e0) * wt for e0, e1 in zip(edges[:-1], edges[1:])])
    rlo = np.broadcast_to(piece.rlo(th), th.shape).astype(float)
    rhi = np.broadcast_to(piece.rhi(th), th.shape).astype(float)
    rhi = np.maximum(rhi, rlo)
    u = 0.5 * (xr + 1)
    wu = 0.5 * wr
    if np.all(np.isinf(rhi)):
        # whole plane outside rlo: r = rlo + u/(1-u)
        r = rlo[:, None] + u[None, :] / (1 - u[None, :])
        w = wth[:, None] * wu[None, :] / (1 - u[None, :]) ** 2 * r
        return (pole + r * np.exp(1j * th)[:, None]).ravel(), w.ravel()
    zs, ws = [], []
    # sub-intervals in r between ring edges
    cuts = [rlo]
    for b in breaks:
        cuts.append(np.clip(b + 0 * rlo, rlo, rhi))
    cuts.append(rhi)
    for k in range(len(cuts) - 1):
        lo, hi = cuts[k][:, None], cuts[k + 1][:, None]
        if gamma != 1.0 and k == 0:
            frac = u[None, :] ** gamma
            jac = gamma * u[None, :] ** (gamma - 1)
        else:
            frac, jac = u[None, :], 1.0
        r = lo + (hi - lo) * frac
        w = wth[:, None] * wu[None, :] * (hi - lo) * jac * r
        zs.append(pole + r * np.exp(1j * th)[:, None])
        ws.append(w)
    return np.concatenate([z.ravel() for z in zs]), np.concatenate([w.ravel() for w in ws])


def quad2d(f, region=None, tol=1e-10, pot=None, n0=24, n_max=384, panels=4):
    """Area integral of f over `region` (cut to the support of `pot` when
    the region is unbounded), or over the support itself when region is None.

    The rule is refined by doubling the node count until two successive
    values agree to `tol` (relative, floored at 1).
    """
    if region is None:
        pole, pieces = _support_pieces(pot)
    else:
        pole, pieces = region.polar_pieces(pot)
    pole = complex(pole)
    breaks = _radial_breaks(pot, pole) if pot is not None else []
    gamma = _radial_power(pot, pole) if pot is not None else 1.0
    prev, n = None, n0
    while n <= n_max:
        val = 0.0
        for pc in pieces:
            z, w = _piece_rule(pc, n, n, panels, pole, breaks, gamma)
            val = val + np.sum(w * f(z))
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return val
        prev, n = val, 2 * n
    raise QuadratureError("quad2d did not converge", prev)


def mu_integral(f, pot, region=None, tol=1e-10):
    """int_U f dmu (area integral of f times the equilibrium density)."""
    return quad2d(lambda z: f(z) * pot.density(z), region, tol=tol, pot=pot)


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------

@dataclass
class MomentReport:
    n_max: int
    residuals: dict
    inverse_residuals: dict = field(default_factory=dict)
    log_residual: Optional[float] = None

    @property
    def max_abs_residual(self):
        vals = [abs(v) for v in self.residuals.values()]
        vals += [abs(v) for v in self.inverse_residuals.values()]
        if self.log_residual is not None:
            vals.append(abs(self.log_residual))
        return max(vals) if vals else 0.0

    def as_dict(self):
        cplx = lambda d: {str(k): [float(np.real(v)), float(np.imag(v))] for k, v in d.items()}
        out = {"n_max": self.n_max, "max_abs_residual": self.max_abs_residual,
               "residuals": cplx(self.residuals)}
        if self.inverse_residuals:
            out["inverse_residuals"] = cplx(self.inverse_residuals)
        if self.log_residual is not None:
            out["log_residual"] = float(self.log_residual)
        return out


def c_U_mu_quadrature(pot, region, tol=1e-11):
    """c_U^mu = int over U of log|phi(z)| dmu, phi the exterior map of U."""
    if not isinstance(region, (DiskComplement, EllipseComplement)):
        raise ValueError(f"no exterior map for {region.kind}")
    return float(np.real(mu_integral(region.green_infinity, pot, region, tol)))


def verify_moments(pot, region, nu, n_max=8, c_U=None, tol=1e-11):
    """Compare the boundary moments of nu with the moments of mu on U.

    Bounded U: z^n for n <= n_max.  Unbounded U: z^{-n} for 1 <= n <= n_max
    plus the mass and the log-moment, which needs c_U^mu.
    """
    if region.bounded:
        res = {}
        for n in range(n_max + 1):
            lhs = nu.integrate(lambda z, n=n: z ** n)
            rhs = mu_integral(lambda z, n=n: z ** n, pot, region, tol)
            res[n] = complex(lhs - rhs)
        return MomentReport(n_max, res)
    inv = {}
    for n in range(n_max + 1):
        lhs = nu.integrate(lambda z, n=n: z ** (-n))
        rhs = mu_integral(lambda z, n=n: z ** (-n), pot, region, tol)
        inv[n] = complex(lhs - rhs)
    if c_U is None:
        c_U = c_U_mu_quadrature(pot, region, tol)
    lhs = nu.integrate(lambda z: np.log(np.abs(z)))
    rhs = mu_integral(lambda z: np.log(np.abs(z)), pot, region, tol) - c_U
    return MomentReport(n_max, {}, inv, float(np.real(lhs - rhs)))


# ---------------------------------------------------------------------------
# weighted Fekete points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FeketeConfig:
    n_points: int = 256
    max_iter: int = 2000
    step: float = 0.05
    seed: int = 0
    rtol: float = 1e-11

    def __post_init__(self):
        if self.n_points < 8:
            raise ValueError("n_points must be at least 8")
        if not self.step > 0:
            raise ValueError("step must be positive")


@dataclass
class PointCloud:
    points: np.ndarray
    final_energy: float
    iterations: int
    converged: bool
    energies: list

    def as_dict(self):
        return {"final_energy": self.final_energy, "iterations": self.iterations,
                "converged": self.converged, "n_points": int(len(self.points))}


def discrete_energy(z, pot):
    n = len(z)
    d = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(n, 1)
    return float(np.sum(-2.0 * np.log(d[iu])) / n ** 2 + np.sum(pot.Q(z)) / n)


def _energy_grad(z, pot):
    n = len(z)
    diff = z[:, None] - z[None, :]
    d2 = np.abs(diff) ** 2
    np.fill_diagonal(d2, 1.0)
    inter = diff / d2
    np.fill_diagonal(inter, 0.0)
    return -2.0 * inter.sum(axis=1) / n ** 2 + pot.grad_Q(z) / n


def _nearest_on_charts(region, w):
    best, bd = None, np.inf
    for ch in region.charts():
        t = np.linspace(ch.t0, ch.t1, 801)
        pts = ch.point(t)
        j = int(np.argmin(np.abs(pts - w)))
        lo, hi = t[max(j - 1, 0)], t[min(j + 1, len(t) - 1)]
        res = optimize.minimize_scalar(lambda s: abs(complex(ch.point(s)) - w), bounds=(lo, hi),
                                       method="bounded", options={"xatol": 1e-14})
        p = complex(ch.point(res.x))
        if abs(p - w) < bd:
            best, bd = p, abs(p - w)
    return best


def project_outside(region, z):
    """Nearest-boundary-point map applied to the points of z lying in U."""
    z = np.array(z, dtype=complex)
    if region is None:
        return z
    inside = region.contains(z)
    if not np.any(inside):
        return z
    if isinstance(region, (Disk, DiskComplement)):
        w = z[inside] - region.center
        w = np.where(w == 0, 1.0 + 0j, w)
        z[inside] = region.center + region.a * w / np.abs(w)
    elif isinstance(region, Annulus):
        w = z[inside]
        r = np.abs(w)
        tgt = np.where(r - region.rho1 <= region.rho2 - r, region.rho1, region.rho2)
        z[inside] = tgt * w / r
    elif isinstance(region, Rectangle):
        w = z[inside]
        x, y = w.real, w.imag
        dists = np.stack([region.a2 - x, region.c2 - y, x - region.a1, y - region.c1])
        k = np.argmin(dists, axis=0)
        x = np.where(k == 0, region.a2, np.where(k == 2, region.a1, x))
        y = np.where(k == 1, region.c2, np.where(k == 3, region.c1, y))
        z[inside] = x + 1j * y
    else:
        idx = np.nonzero(inside)[0]
        for j in idx:
            z[j] = _nearest_on_charts(region, complex(z[j]))
    return z


def _initial_cloud(pot, region, n, rng):
    r = np.sqrt(rng.random(n))
    th = 2 * pi * rng.random(n)
    if isinstance(pot, EllipticGinibre):
        A, B = pot.semi_axes
        z = r * (A * np.cos(th) + 1j * B * np.sin(th))
    else:
        R = getattr(pot, "r_max", 1.0)
        R = R if np.isfinite(R) else 1.0
        z = R * r * np.exp(1j * th)
    return project_outside(region, z)


def fekete_minimize(pot, region=None, cfg=FeketeConfig()):
    """Projected gradient descent with Armijo backtracking on the discrete
    weighted energy, constrained to the complement of `region`."""
    rng = np.random.default_rng(cfg.seed)
    z = _initial_cloud(pot, region, cfg.n_points, rng)
    n = cfg.n_points
    E = discrete_energy(z, pot)
    energies = [E]
    converged = False
    it = 0
    for it in range(1, cfg.max_iter + 1):
        d = -n * _energy_grad(z, pot)
        slope = float(np.sum(np.abs(d) ** 2)) / n
        t = cfg.step
        accepted = False
        while t > 1e-14:
            z_new = project_outside(region, z + t * d)
            E_new = discrete_energy(z_new, pot)
            if E_new <= E - 1e-4 * t * slope:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            converged = True
            break
        gain = E - E_new
        z, E = z_new, E_new
        energies.append(E)
        if gain <= cfg.rtol * abs(E):
            converged = True
            break
    return PointCloud(z, E, it, converged, energies)
