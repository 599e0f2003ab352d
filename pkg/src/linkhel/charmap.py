"""The quadratic Grassmann field of a point triple and its unit map.

For distinct points x, y, z on S^3 the field

    F(x, y, z) = ( x.iy + y.iz + z.ix,
                   x.jy + y.jz + z.jx,
                   x.ky + y.kz + z.kx )

(dot products in R^4, quaternion products iy etc.) is a nonzero vector of
R^3 whose norm is twice the area of the triangle xyz.  Its unit
normalization restricted to a parametrized link gives a smooth map of the
3-torus to the 2-sphere; the divergence-free field obtained by pulling the
unit-total-area sphere form back through that map is sampled here on the
torus grid.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import NearDegenerateTriple
from .geometry import ONE, quat_conj, quat_mul, stereo_from_pole
from .torusfields import VectorField3, deriv_wavenumbers, grid_coords

# Scale turning the unit-sphere solid-angle form into the unit-total-area
# form; fixed by the definition of the invariants, never configurable.
AREA_SCALE = 1.0 / (4.0 * np.pi)

# ||F|| below this signals link components (nearly) touching.
EPS_F = 1e-9

# Skew bilinear forms a . (e b) for e = i, j, k; rows index a, columns b.
_FORMS = np.zeros((3, 4, 4))
_FORMS[0, 0, 1], _FORMS[0, 1, 0], _FORMS[0, 2, 3], _FORMS[0, 3, 2] = -1, 1, -1, 1
_FORMS[1, 0, 2], _FORMS[1, 1, 3], _FORMS[1, 2, 0], _FORMS[1, 3, 1] = -1, 1, 1, -1
_FORMS[2, 0, 3], _FORMS[2, 1, 2], _FORMS[2, 2, 1], _FORMS[2, 3, 0] = -1, -1, 1, 1


def thread_count():
    """Worker cap from LINKHEL_THREADS; 0 or unset means automatic."""
    raw = os.environ.get("LINKHEL_THREADS", "0")
    try:
        cap = int(raw)
    except ValueError:
        cap = 0
    if cap <= 0:
        cap = os.cpu_count() or 1
    return cap


def grassmann_F(x, y, z):
    """The quadratic field of a point triple; broadcasts over leading axes.

    Cyclic in (x, y, z), negated under each transposition, and of norm
    2 * area(triangle xyz).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    out = np.einsum("cab,...a,...b->...c", _FORMS, x, y)
    out += np.einsum("cab,...a,...b->...c", _FORMS, y, z)
    out += np.einsum("cab,...a,...b->...c", _FORMS, z, x)
    return out


def _pair_form(a_pts, b_pts):
    """The three pair matrices a_r . (e b_c) of two sample sets, shape (3, Na, Nb)."""
    return np.einsum("cab,ra,sb->crs", _FORMS, a_pts, b_pts)


def _grid_F(x_pts, y_pts, z_pts):
    """F on the product grid of three sample sets, as a (3, Ns, Nt, Nu) array."""
    A = _pair_form(x_pts, y_pts)  # depends on (s, t)
    B = _pair_form(y_pts, z_pts)  # depends on (t, u)
    C = _pair_form(z_pts, x_pts)  # depends on (u, s)
    return (
        A[:, :, :, None]
        + B[:, None, :, :]
        + np.transpose(C, (0, 2, 1))[:, :, None, :]
    )


def g_map(L, s, t, u):
    """Unit normalization of F along the link: a point of S^2.

    Broadcasts over arrays of parameters.  Raises NearDegenerateTriple when
    ||F|| < EPS_F, which signals components nearly touching.
    """
    F = grassmann_F(L.X.eval(s), L.Y.eval(t), L.Z.eval(u))
    norm = np.linalg.norm(F, axis=-1)
    if np.any(norm < EPS_F):
        raise NearDegenerateTriple(f"||F|| fell below {EPS_F}")
    return F / norm[..., None]


def g_async(L, s, t, u):
    """Asymmetric unit map: the direction between the stereographic images
    of y conj(x) and z conj(x), projected at the pole 1.

    Homotopic to ``g_map`` with the same subtorus degrees; the difference is
    ordered (image of z) - (image of y) so the degrees carry the same sign
    as ``g_map`` under this package's target identification of the F-value
    space with the imaginary unit sphere.  Broadcasts.
    """
    x = L.X.eval(s)
    y = L.Y.eval(t)
    z = L.Z.eval(u)
    xbar = quat_conj(x)
    py = stereo_from_pole(ONE, quat_mul(y, xbar))
    pz = stereo_from_pole(ONE, quat_mul(z, xbar))
    d = pz - py
    norm = np.linalg.norm(d, axis=-1)
    if np.any(norm < EPS_F):
        raise NearDegenerateTriple("projected images coincide")
    return d / norm[..., None]


def _spectral_partial(comp, axis):
    """Exact DFT differentiation of one grid array along one axis."""
    n = comp.shape[axis]
    k = deriv_wavenumbers(n)
    shape = [1, 1, 1]
    shape[axis] = n
    hat = np.fft.fft(comp, axis=axis)
    return np.real(np.fft.ifft(1j * k.reshape(shape) * hat, axis=axis))


def sample_VL(L, n):
    """Sample the divergence-free torus field of the link on the n^3 grid.

    F is evaluated at the nodes, its partials taken by term-by-term DFT
    differentiation in each axis, and the components

        ( F_t x F_u . F,  F_u x F_s . F,  F_s x F_t . F ) / (4 pi ||F||^3)

    formed per node.  (4 pi^2) times the mean of each component is the
    corresponding subtorus degree.
    """
    if n < 8 or n % 2 != 0:
        raise ValueError(f"grid size must be even and >= 8, got {n}")
    s = grid_coords(n)
    F = _grid_F(L.X.eval(s), L.Y.eval(s), L.Z.eval(s))
    norm3 = np.sqrt(F[0] ** 2 + F[1] ** 2 + F[2] ** 2) ** 3
    if np.any(norm3 < EPS_F**3):
        raise NearDegenerateTriple(f"||F|| fell below {EPS_F} on the grid")

    jobs = [(c, axis) for c in range(3) for axis in range(3)]
    workers = min(thread_count(), len(jobs))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: _spectral_partial(F[job[0]], job[1]), jobs))
    else:
        parts = [_spectral_partial(F[c], axis) for c, axis in jobs]
    # parts[3c + axis] = dF_c / d(axis)
    Fs = np.stack([parts[0], parts[3], parts[6]])
    Ft = np.stack([parts[1], parts[4], parts[7]])
    Fu = np.stack([parts[2], parts[5], parts[8]])

    def triple(a, b):
        return (
            (a[1] * b[2] - a[2] * b[1]) * F[0]
            + (a[2] * b[0] - a[0] * b[2]) * F[1]
            + (a[0] * b[1] - a[1] * b[0]) * F[2]
        )

    scale = AREA_SCALE / norm3
    return VectorField3.from_arrays(
        triple(Ft, Fu) * scale, triple(Fu, Fs) * scale, triple(Fs, Ft) * scale
    )
