"""Quaternion arithmetic, stereographic projections, and closed curves on S^3.

Points of the unit 3-sphere are quaternions, stored as float arrays
``(..., 4)`` in the basis (1, i, j, k).  Closed curves are trigonometric
polynomials per coordinate, so evaluation and differentiation are spectrally
accurate; the unit-norm constraint is enforced by pointwise projection after
interpolation.
"""

from dataclasses import dataclass, replace

import numpy as np

from .errors import CurvesTooClose, DegenerateCurve, PoleTooClose

# Chordal guard radius around a stereographic pole.
EPS_POLE = 1e-6
# Default minimum chordal separation between distinct link components.
DEFAULT_SEPARATION = 1e-3

ONE = np.array([1.0, 0.0, 0.0, 0.0])
I = np.array([0.0, 1.0, 0.0, 0.0])
J = np.array([0.0, 0.0, 1.0, 0.0])
K = np.array([0.0, 0.0, 0.0, 1.0])


def quat(w, x, y, z):
    """Quaternion w + x*i + y*j + z*k as a float array of shape (4,)."""
    return np.array([w, x, y, z], dtype=float)


def quat_mul(a, b):
    """Hamilton product a*b, broadcasting over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def quat_conj(a):
    """Quaternion conjugate: negate the i, j, k parts."""
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def quat_norm(a):
    """Euclidean norm in R^4, broadcasting over leading axes."""
    return np.linalg.norm(np.asarray(a, dtype=float), axis=-1)


def is_unit(a, eps=1e-9):
    """True where | ||a|| - 1 | <= eps."""
    return np.abs(quat_norm(a) - 1.0) <= eps


def _pole_basis(p):
    """Orthonormal basis (p*i, p*j, p*k) of the 3-space orthogonal to p.

    The handedness of this basis fixes the sign of every mapping degree
    computed through the projection; it must not be changed independently of
    the subtorus orientation conventions in :mod:`linkhel.invariants`.
    """
    p = np.asarray(p, dtype=float)
    return np.stack([quat_mul(p, I), quat_mul(p, J), quat_mul(p, K)], axis=-2)


def stereo_from_pole(p, v):
    """Stereographic projection of S^3 - {p} onto the 3-space orthogonal to p.

    Returns coordinates of the image in the left-translated basis
    (p*i, p*j, p*k).  The antipode -p maps to the origin and the equatorial
    2-sphere {v : v . p = 0} is fixed pointwise.  Broadcasts over leading
    axes of ``v``.
    """
    p = np.asarray(p, dtype=float)
    v = np.asarray(v, dtype=float)
    chordal = np.linalg.norm(v - p, axis=-1)
    if np.any(chordal < EPS_POLE):
        raise PoleTooClose(
            f"point within chordal distance {EPS_POLE} of the projection pole"
        )
    vp = np.sum(v * p, axis=-1)
    proj = (v - vp[..., None] * p) / (1.0 - vp)[..., None]
    basis = _pole_basis(p)
    return np.einsum("...ij,...j->...i", basis, proj)


def inverse_stereo(u):
    """Inverse stereographic projection from the pole 1 back onto S^3.

    ``u`` has shape (..., 3); the origin maps to -1 and the unit sphere of
    R^3 maps to the equatorial 2-sphere, inverting ``stereo_from_pole(ONE, .)``.
    """
    u = np.asarray(u, dtype=float)
    r2 = np.sum(u * u, axis=-1)
    denom = r2 + 1.0
    w = (r2 - 1.0) / denom
    xyz = 2.0 * u / denom[..., None]
    return np.concatenate([w[..., None], xyz], axis=-1)


# ---------------------------------------------------------------------------
# Trigonometric interpolation of closed curves
# ---------------------------------------------------------------------------


def _trig_coeffs(samples):
    """Symmetric trig-polynomial coefficients c_k, k = -K..K, from uniform samples.

    ``samples`` has shape (m, d); returns complex coefficients of shape
    (2K+1, d) with the row order k = -K, ..., K.  For even m the Nyquist
    coefficient is split evenly between +/-K so the interpolant is real and
    smooth between nodes.
    """
    samples = np.asarray(samples, dtype=float)
    m = samples.shape[0]
    c = np.fft.fft(samples, axis=0) / m
    half = m // 2
    if m % 2 == 0:
        k = np.arange(-half, half + 1)
        out = np.zeros((m + 1,) + samples.shape[1:], dtype=complex)
        out[half + 1 : 2 * half] = c[1:half]
        out[1:half] = c[half + 1 :]
        out[half] = c[0]
        out[0] = 0.5 * c[half]
        out[-1] = 0.5 * c[half]
    else:
        k = np.arange(-half, half + 1)
        out = np.concatenate([c[half + 1 :], c[: half + 1]], axis=0)
    return out, k


def _trig_eval(coeffs, wavenumbers, s, deriv=False):
    """Evaluate a symmetric-coefficient trig polynomial (or its derivative)."""
    s = np.asarray(s, dtype=float)
    phases = np.exp(1j * np.multiply.outer(s, wavenumbers))
    if deriv:
        phases = phases * (1j * wavenumbers)
    return np.real(phases @ coeffs)


@dataclass(frozen=True)
class CurveR3:
    """Closed trigonometric-polynomial curve in R^3."""

    coeffs: np.ndarray  # complex, shape (2K+1, 3), mode order k = -K..K
    wavenumbers: np.ndarray
    orientation: int = 1

    @classmethod
    def from_samples(cls, points, orientation=1):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 3:
            raise ValueError("expected an (m, 3) array of R^3 samples")
        coeffs, k = _trig_coeffs(points)
        return cls(coeffs=coeffs, wavenumbers=k, orientation=int(orientation))

    def eval(self, s):
        return _trig_eval(self.coeffs, self.wavenumbers, self.orientation * np.asarray(s, dtype=float))

    def eval_deriv(self, s):
        s = np.asarray(s, dtype=float)
        return self.orientation * _trig_eval(
            self.coeffs, self.wavenumbers, self.orientation * s, deriv=True
        )

    def reversed(self):
        return replace(self, orientation=-self.orientation)


@dataclass(frozen=True)
class CurveS3:
    """Smooth closed curve on the unit 3-sphere.

    Stored as one complex trig polynomial per R^4 coordinate; ``orientation``
    = -1 traverses the same geometric curve backwards (the parameter is
    negated at evaluation time).
    """

    coeffs: np.ndarray  # complex, shape (2K+1, 4)
    wavenumbers: np.ndarray
    orientation: int = 1

    def eval(self, s):
        """Point on S^3 at parameter s; broadcasts, returns shape s.shape + (4,)."""
        return _trig_eval(self.coeffs, self.wavenumbers, self.orientation * np.asarray(s, dtype=float))

    def eval_deriv(self, s):
        """Velocity c'(s) in R^4 (exact term-wise differentiation)."""
        s = np.asarray(s, dtype=float)
        return self.orientation * _trig_eval(
            self.coeffs, self.wavenumbers, self.orientation * s, deriv=True
        )

    def reversed(self):
        """Same curve with the opposite orientation."""
        return replace(self, orientation=-self.orientation)

    def max_norm_defect(self, n_check=4096):
        """max | ||c(s)|| - 1 | over a dense incommensurate sample of s."""
        s = (2.0 * np.pi) * (np.arange(n_check) + 0.382) / n_check
        return float(np.max(np.abs(quat_norm(self.eval(s)) - 1.0)))


def from_samples(points, orientation=1, dense_factor=8, norm_tol=1e-8):
    """Build a CurveS3 through uniformly spaced samples of a closed curve.

    ``points`` is (m, 4) with m >= 8, or (m, 3) in which case the samples are
    first lifted to S^3 by ``inverse_stereo``.  The samples are projected to
    the unit sphere, trig-interpolated, then the interpolant is resampled on
    a dense grid, re-projected and re-interpolated so the unit-norm defect of
    the final curve is below ``norm_tol`` everywhere.
    """
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] not in (3, 4):
        raise ValueError("expected an (m, 4) or (m, 3) array of samples")
    m = points.shape[0]
    if m < 8:
        raise ValueError(f"need at least 8 samples, got {m}")
    if points.shape[1] == 3:
        points = inverse_stereo(points)

    norms = np.linalg.norm(points, axis=1)
    if np.any(norms < 1e-6):
        raise DegenerateCurve("input sample with norm below 1e-6")
    points = points / norms[:, None]

    coeffs, k = _trig_coeffs(points)
    dense = max(dense_factor * m, 256)
    dense = ((dense + m - 1) // m) * m  # keep the original nodes on the dense grid
    for _ in range(2):
        s = (2.0 * np.pi) * np.arange(dense) / dense
        vals = _trig_eval(coeffs, k, s)
        norms = np.linalg.norm(vals, axis=1)
        if np.any(norms < 1e-6):
            raise DegenerateCurve("interpolated point with norm below 1e-6")
        coeffs, k = _trig_coeffs(vals / norms[:, None])
        curve = CurveS3(coeffs=coeffs, wavenumbers=k, orientation=int(orientation))
        if curve.max_norm_defect() <= norm_tol:
            return curve
        dense *= 2
    raise ValueError(
        "curve not resolved: unit-norm defect above tolerance after dense projection"
    )


def stereo_image(curve, pole=ONE, n_samples=256):
    """Project an S^3 curve through ``stereo_from_pole`` into a CurveR3.

    Raises PoleTooClose if the curve meets the guard radius around the pole.
    """
    s = (2.0 * np.pi) * np.arange(n_samples) / n_samples
    pts = stereo_from_pole(pole, curve.eval(s))
    return CurveR3.from_samples(pts, orientation=1)


def _min_pairwise_distance(a, b, n_scan):
    s = (2.0 * np.pi) * np.arange(n_scan) / n_scan
    pa = a.eval(s)
    pb = b.eval(s)
    diff = pa[:, None, :] - pb[None, :, :]
    return float(np.min(np.linalg.norm(diff, axis=-1)))


@dataclass(frozen=True)
class Link3:
    """Ordered, oriented three-component link (X, Y, Z) on S^3.

    Construction scans all three component pairs on a dense parameter grid
    and rejects the link if any chordal distance falls below
    ``min_separation``.
    """

    X: CurveS3
    Y: CurveS3
    Z: CurveS3
    min_separation: float = DEFAULT_SEPARATION
    separation: float = 0.0  # measured pairwise minimum, filled at init

    def __post_init__(self):
        sep = min(
            _min_pairwise_distance(self.X, self.Y, 256),
            _min_pairwise_distance(self.Y, self.Z, 256),
            _min_pairwise_distance(self.X, self.Z, 256),
        )
        object.__setattr__(self, "separation", sep)
        if sep <= self.min_separation:
            raise CurvesTooClose(
                f"components approach within chordal distance {sep:.3e}"
                f" (minimum {self.min_separation:.3e})"
            )

    def components(self):
        return (self.X, self.Y, self.Z)
