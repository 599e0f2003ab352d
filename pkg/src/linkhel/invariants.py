"""Pairwise linking numbers as subtorus mapping degrees, the classical Gauss
linking integral, and the triple linking number via torus helicity.

Orientation conventions, fixed once for the whole package: the 3-torus is
oriented by (s, t, u); the coordinate 2-torus with one parameter frozen is
oriented by the cyclic complement, i.e. (t, u) for frozen s, (u, s) for
frozen t, and (s, t) for frozen u; the target 2-sphere carries the outward
normal.  With these choices (4 pi^2) times the mean of each component of the
sampled torus field equals the matching subtorus degree, and the frozen-u
degree of the unit map agrees with the Gauss integral of the stereographic
images of the first two components.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .charmap import (
    AREA_SCALE,
    EPS_F,
    _FORMS,
    _pair_form,
    g_async,
    sample_VL,
)
from .errors import CurvesTooClose, DegenerateDegree, NearDegenerateTriple, NonzeroLinking
from .geometry import DEFAULT_SEPARATION, ONE, quat_conj, quat_mul, stereo_from_pole
from .torusfields import grid_coords, helicity, helicity_bruteforce

AXES = ("s", "t", "u")

# Residual above which a degree integral refuses to round to an integer.
DEGREE_RESIDUAL_LIMIT = 0.1

# Raw component means of the torus field larger than this trigger a warning
# in the mu pipeline (they should be degree/(4 pi^2) = 0 under the gate).
MEAN_FLUX_WARNING = 1e-4


@dataclass
class InvariantReport:
    """Computed invariants of one link with discretization diagnostics.

    ``mu`` is stored as the raw real number nu/2 together with its distance
    from the nearest integer, rather than silently rounded, so that
    discretization noise stays visible.
    """

    p: int
    q: int
    r: int
    deg_residuals: tuple
    nu: float
    mu: float
    mu_residual: float
    grid_n: int
    converged: bool = None
    mu_delta_half: float = None
    diagnostics: dict = field(default_factory=dict)


def _freeze_grid_F(L, axis, frozen_value, n):
    """F on the coordinate 2-torus with one parameter frozen.

    Returns a (3, n, n) array whose two free axes follow the orientation
    convention: (t, u) for frozen s, (u, s) for frozen t, (s, t) for frozen u.
    """
    nodes = grid_coords(n)
    if axis == "s":
        x0 = L.X.eval(frozen_value)
        y = L.Y.eval(nodes)
        z = L.Z.eval(nodes)
        A = np.einsum("cab,a,tb->ct", _FORMS, x0, y)
        B = _pair_form(y, z)
        C = np.einsum("cab,ua,b->cu", _FORMS, z, x0)
        return A[:, :, None] + B + C[:, None, :]
    if axis == "t":
        y0 = L.Y.eval(frozen_value)
        x = L.X.eval(nodes)
        z = L.Z.eval(nodes)
        A = np.einsum("cab,sa,b->cs", _FORMS, x, y0)
        B = np.einsum("cab,a,ub->cu", _FORMS, y0, z)
        C = _pair_form(z, x)
        return A[:, None, :] + B[:, :, None] + C
    if axis == "u":
        z0 = L.Z.eval(frozen_value)
        x = L.X.eval(nodes)
        y = L.Y.eval(nodes)
        A = _pair_form(x, y)
        B = np.einsum("cab,ta,b->ct", _FORMS, y, z0)
        C = np.einsum("cab,a,sb->cs", _FORMS, z0, x)
        return A + B[:, None, :] + C[:, :, None]
    raise ValueError(f"axis must be one of {AXES}, got {axis!r}")


def _freeze_grid_async(L, axis, frozen_value, n):
    """The asymmetric unit map on a frozen coordinate 2-torus, same layout."""
    nodes = grid_coords(n)
    if axis == "s":
        xbar = quat_conj(L.X.eval(frozen_value))
        py = stereo_from_pole(ONE, quat_mul(L.Y.eval(nodes), xbar))
        pz = stereo_from_pole(ONE, quat_mul(L.Z.eval(nodes), xbar))
        d = pz[None, :, :] - py[:, None, :]
    elif axis == "t":
        xbar = quat_conj(L.X.eval(nodes))
        py = stereo_from_pole(ONE, quat_mul(L.Y.eval(frozen_value), xbar))
        pz = stereo_from_pole(
            ONE, quat_mul(L.Z.eval(nodes)[:, None, :], xbar[None, :, :])
        )
        d = pz - py[None, :, :]
    elif axis == "u":
        xbar = quat_conj(L.X.eval(nodes))
        py = stereo_from_pole(
            ONE, quat_mul(L.Y.eval(nodes)[None, :, :], xbar[:, None, :])
        )
        pz = stereo_from_pole(ONE, quat_mul(L.Z.eval(frozen_value), xbar))
        d = pz[:, None, :] - py
    else:
        raise ValueError(f"axis must be one of {AXES}, got {axis!r}")
    return np.moveaxis(d, -1, 0)


def _spectral_partial_2d(comp, axis):
    from .torusfields import deriv_wavenumbers

    n = comp.shape[axis]
    k = deriv_wavenumbers(n)
    shape = [1, 1]
    shape[axis] = n
    return np.real(np.fft.ifft(1j * k.reshape(shape) * np.fft.fft(comp, axis=axis), axis=axis))


def degree_integral(L, axis, frozen_value=0.0, n=64, use_async=False):
    """Raw degree integral of the unit map on a frozen coordinate 2-torus.

    (1/4pi) sum of g . (d_a g x d_b g) over the n^2 subgrid with spectral
    partials, times the cell area; (a, b) follow the cyclic orientation
    convention of the module docstring.
    """
    if n < 16:
        raise ValueError(f"degree grid must be >= 16, got {n}")
    if use_async:
        g = _freeze_grid_async(L, axis, frozen_value, n)
    else:
        g = _freeze_grid_F(L, axis, frozen_value, n)
    norm = np.sqrt(g[0] ** 2 + g[1] ** 2 + g[2] ** 2)
    if np.any(norm < EPS_F):
        raise NearDegenerateTriple("unit map degenerate on the subtorus grid")
    g = g / norm
    ga = np.stack([_spectral_partial_2d(c, 0) for c in g])
    gb = np.stack([_spectral_partial_2d(c, 1) for c in g])
    integrand = (
        g[0] * (ga[1] * gb[2] - ga[2] * gb[1])
        + g[1] * (ga[2] * gb[0] - ga[0] * gb[2])
        + g[2] * (ga[0] * gb[1] - ga[1] * gb[0])
    )
    return float(AREA_SCALE * (2.0 * np.pi / n) ** 2 * np.sum(integrand))


def subtorus_degree(L, axis, frozen_value=0.0, n=64, use_async=False):
    """Mapping degree of the unit map on a coordinate 2-torus.

    Freezing s gives lk(Y, Z), freezing t gives lk(X, Z), freezing u gives
    lk(X, Y); the result is independent of ``frozen_value``.  Returns
    (integer degree, residual); raises DegenerateDegree when the integral is
    farther than 0.1 from every integer.
    """
    raw = degree_integral(L, axis, frozen_value, n, use_async)
    k = int(np.rint(raw))
    residual = abs(raw - k)
    if residual > DEGREE_RESIDUAL_LIMIT:
        raise DegenerateDegree(
            f"degree integral {raw:.6f} on the frozen-{axis} subtorus is not near an integer"
        )
    return k, residual


def gauss_linking(A, B, m=256, min_separation=DEFAULT_SEPARATION):
    """Gauss linking integral of two disjoint closed curves in R^3.

    (1/4pi) double trapezoidal sum over m^2 parameter nodes of
    a'(s) x b'(t) . (a(s) - b(t)) / ||a(s) - b(t)||^3.
    """
    nodes = 2.0 * np.pi * np.arange(m) / m
    a = A.eval(nodes)
    b = B.eval(nodes)
    da = A.eval_deriv(nodes)
    db = B.eval_deriv(nodes)
    diff = a[:, None, :] - b[None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    if np.min(dist) <= min_separation:
        raise CurvesTooClose(
            f"curves approach within {np.min(dist):.3e} (minimum {min_separation:.3e})"
        )
    cross = np.cross(da[:, None, :], db[None, :, :])
    integrand = np.sum(cross * diff, axis=-1) / dist**3
    return float(np.sum(integrand) * (2.0 * np.pi / m) ** 2 / (4.0 * np.pi))


def pairwise_degrees(L, n=64, frozen_value=0.0, use_async=False):
    """All three subtorus degrees (p, q, r) with their residuals."""
    degs = []
    residuals = []
    for axis in AXES:
        k, res = subtorus_degree(L, axis, frozen_value, n, use_async)
        degs.append(k)
        residuals.append(res)
    return tuple(degs), tuple(residuals)


def milnor_mu(L, n=64, check_convergence=False):
    """Triple linking number of a link whose pairwise linking numbers vanish.

    Pipeline: subtorus degrees -> torus field sampling -> mean-flux check ->
    helicity; nu is the helicity of the sampled field and mu = nu / 2.
    Raises NonzeroLinking when any pairwise degree is nonzero, since the
    triple linking integral is only defined in that case.
    """
    if n < 16:
        raise ValueError(f"grid must be >= 16, got {n}")
    (p, q, r), residuals = pairwise_degrees(L, n)
    if (p, q, r) != (0, 0, 0):
        raise NonzeroLinking(p, q, r)

    V = sample_VL(L, n)
    means = V.means()
    mean_warning = max(abs(m) for m in means) > MEAN_FLUX_WARNING
    if mean_warning:
        warnings.warn(
            f"torus-field component means {means} exceed {MEAN_FLUX_WARNING:g}; "
            "the helicity value may be under-resolved",
            stacklevel=2,
        )
    nu = helicity(V)
    mu = 0.5 * nu
    report = InvariantReport(
        p=p,
        q=q,
        r=r,
        deg_residuals=residuals,
        nu=nu,
        mu=mu,
        mu_residual=abs(mu - np.rint(mu)),
        grid_n=n,
        diagnostics={"component_means": means, "mean_flux_warning": mean_warning},
    )
    if check_convergence and n // 2 >= 16:
        half = milnor_mu(L, n // 2)
        delta = abs(report.mu - half.mu)
        report.mu_delta_half = delta
        report.converged = bool(delta < 0.02)
        report.diagnostics["mu_half"] = half.mu
    return report


def milnor_mu_bruteforce(L, n=10, m=4):
    """Triple linking number by the literal two-point double integral.

    Half the brute-force helicity of the sampled torus field; the coarse-grid
    independent oracle for ``milnor_mu``.
    """
    V = sample_VL(L, n)
    return 0.5 * helicity_bruteforce(V, m)
