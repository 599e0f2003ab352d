"""Scalar and vector fields on the flat 3-torus [0, 2pi)^3.

Fields live on a uniform n^3 grid with nodes (2pi a/n, 2pi b/n, 2pi c/n) and
array axes ordered (s, t, u).  All differential and inverse operators are
Fourier multipliers on integer wave vectors; the DFT is normalized so the
zero coefficient equals the grid mean.  First-derivative multipliers zero
the unpaired Nyquist wavenumber so derivatives of real fields stay real;
the Green multiplier uses the true |k|^2.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridTooLarge

TWO_PI = 2.0 * np.pi
VOLUME = TWO_PI**3  # volume of the 3-torus


def grid_coords(n):
    """Node coordinates along one axis: 2pi*a/n, a = 0..n-1."""
    return TWO_PI * np.arange(n) / n


def wavenumbers(n):
    """Integer wavenumbers in DFT order: 0, 1, ..., n/2-1, -n/2, ..., -1."""
    return np.fft.fftfreq(n, d=1.0 / n).astype(int)


def deriv_wavenumbers(n):
    """Wavenumbers for first derivatives: Nyquist mode zeroed (n even)."""
    k = wavenumbers(n).astype(float)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return k


def _check_grid(n):
    if n < 8 or n % 2 != 0:
        raise ValueError(f"grid size must be even and >= 8, got {n}")


@dataclass(frozen=True)
class ScalarField3:
    """Real scalar samples on the n^3 torus grid."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=float)
        if data.ndim != 3 or len(set(data.shape)) != 1:
            raise ValueError("scalar field data must be a cubic 3d array")
        _check_grid(data.shape[0])
        object.__setattr__(self, "data", data)

    @property
    def n(self):
        return self.data.shape[0]

    def mean(self):
        return float(np.mean(self.data))


@dataclass(frozen=True)
class VectorField3:
    """Vector field with components along the s, t, u coordinate directions."""

    vs: ScalarField3
    vt: ScalarField3
    vu: ScalarField3

    def __post_init__(self):
        if not (self.vs.n == self.vt.n == self.vu.n):
            raise ValueError("vector field components must share one grid size")

    @classmethod
    def from_arrays(cls, vs, vt, vu):
        return cls(ScalarField3(vs), ScalarField3(vt), ScalarField3(vu))

    @property
    def n(self):
        return self.vs.n

    def arrays(self):
        return (self.vs.data, self.vt.data, self.vu.data)

    def means(self):
        return (self.vs.mean(), self.vt.mean(), self.vu.mean())

    def scaled(self, alpha):
        vs, vt, vu = self.arrays()
        return VectorField3.from_arrays(alpha * vs, alpha * vt, alpha * vu)

    def l2_norm(self):
        """sqrt( integral |V|^2 ) over the torus."""
        vs, vt, vu = self.arrays()
        return float(np.sqrt(VOLUME * np.mean(vs**2 + vt**2 + vu**2)))


@dataclass(frozen=True)
class SpectralField3:
    """Complex Fourier coefficients of a grid field, coeff(0) = mean.

    Coefficients are indexed by integer wave vectors in DFT order along each
    axis; a real field has conjugate-symmetric coefficients.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 3 or len(set(coeffs.shape)) != 1:
            raise ValueError("spectral field coefficients must be a cubic 3d array")
        _check_grid(coeffs.shape[0])
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n(self):
        return self.coeffs.shape[0]


def dft_forward(f):
    """Fourier coefficients of a scalar grid field (coeff(0) = mean)."""
    return SpectralField3(np.fft.fftn(f.data) / f.data.size)


def dft_inverse(F):
    """Grid samples from Fourier coefficients (real part of the synthesis)."""
    return ScalarField3(np.real(np.fft.ifftn(F.coeffs * F.coeffs.size)))


def _k_grids(n, deriv=True):
    k = deriv_wavenumbers(n) if deriv else wavenumbers(n).astype(float)
    return (
        k[:, None, None],
        k[None, :, None],
        k[None, None, :],
    )


def _k_squared(n):
    k = wavenumbers(n).astype(float)
    return k[:, None, None] ** 2 + k[None, :, None] ** 2 + k[None, None, :] ** 2


def _k_inf(n):
    """max(|l|, |m|, |n|) over the wave-vector grid."""
    k = np.abs(wavenumbers(n))
    return np.maximum(
        k[:, None, None], np.maximum(k[None, :, None], k[None, None, :])
    )


def _fft3(arr):
    return np.fft.fftn(arr)


def _ifft3(arr):
    return np.real(np.fft.ifftn(arr))


def gradient(f):
    """Spectral gradient of a scalar field."""
    ks, kt, ku = _k_grids(f.n)
    hat = _fft3(f.data)
    return VectorField3.from_arrays(
        _ifft3(1j * ks * hat), _ifft3(1j * kt * hat), _ifft3(1j * ku * hat)
    )


def divergence(V):
    """Spectral divergence of a vector field."""
    ks, kt, ku = _k_grids(V.n)
    vs, vt, vu = V.arrays()
    hat = 1j * (ks * _fft3(vs) + kt * _fft3(vt) + ku * _fft3(vu))
    return ScalarField3(_ifft3(hat))


def curl(V):
    """Spectral curl of a vector field."""
    ks, kt, ku = _k_grids(V.n)
    vs, vt, vu = (_fft3(a) for a in V.arrays())
    return VectorField3.from_arrays(
        _ifft3(1j * (kt * vu - ku * vt)),
        _ifft3(1j * (ku * vs - ks * vu)),
        _ifft3(1j * (ks * vt - kt * vs)),
    )


def laplacian(field):
    """Spectral Laplacian of a scalar or vector field (same kind out)."""
    if isinstance(field, VectorField3):
        return VectorField3(*(laplacian(c) for c in (field.vs, field.vt, field.vu)))
    k2 = _k_squared(field.data.shape[0])
    return ScalarField3(_ifft3(-k2 * _fft3(field.data)))


def _green_multiplier(n):
    k2 = _k_squared(n)
    mult = np.zeros_like(k2)
    nonzero = k2 > 0
    mult[nonzero] = -1.0 / k2[nonzero]
    return mult


def green(V):
    """Invert the Laplacian componentwise: coeff(k) *= -1/|k|^2, mean removed.

    Satisfies laplacian(green(V)) = V - mean(V) exactly in coefficient space.
    """
    mult = _green_multiplier(V.n)
    return VectorField3.from_arrays(*(_ifft3(mult * _fft3(a)) for a in V.arrays()))


def biot_savart(V):
    """The magnetic field of V: -curl(green(V)).

    Fourier multiplier i k x V(k) / |k|^2 at k != 0, zero at k = 0.  For
    divergence-free V this satisfies curl(biot_savart(V)) = V - mean(V), and
    div(biot_savart(V)) = 0 for every V, both exactly in coefficient space.
    """
    n = V.n
    ks, kt, ku = _k_grids(n)
    inv_k2 = -_green_multiplier(n)  # 1/|k|^2 with zero at k = 0
    vs, vt, vu = (_fft3(a) for a in V.arrays())
    return VectorField3.from_arrays(
        _ifft3(1j * (kt * vu - ku * vt) * inv_k2),
        _ifft3(1j * (ku * vs - ks * vu) * inv_k2),
        _ifft3(1j * (ks * vt - kt * vs) * inv_k2),
    )


def helicity(V):
    """Helicity integral of V over the torus: trapezoidal sum of BS(V) . V.

    The periodic trapezoidal rule is plain node average times volume, which
    is spectrally accurate; ``helicity_spectral`` is the coefficient-space
    cross-check of the same number.
    """
    BS = biot_savart(V)
    dot = sum(b * v for b, v in zip(BS.arrays(), V.arrays()))
    return float((TWO_PI / V.n) ** 3 * np.sum(dot))


def helicity_spectral(V):
    """Helicity as the Fourier-space sum 8pi^3 sum conj(V) . (i k x V)/|k|^2."""
    n = V.n
    ks, kt, ku = _k_grids(n)
    inv_k2 = -_green_multiplier(n)
    vs, vt, vu = (_fft3(a) / n**3 for a in V.arrays())
    bs = 1j * (kt * vu - ku * vt) * inv_k2
    bt = 1j * (ku * vs - ks * vu) * inv_k2
    bu = 1j * (ks * vt - kt * vs) * inv_k2
    total = np.sum(np.conj(vs) * bs + np.conj(vt) * bt + np.conj(vu) * bu)
    return float(VOLUME * np.real(total))


def helicity_truncation_bound(V, m):
    """Bound on the helicity content outside the mode cube max|k_i| <= m.

    Sum of the absolute spectral helicity contributions of the excluded
    modes; reported alongside ``helicity_bruteforce`` results.
    """
    n = V.n
    ks, kt, ku = _k_grids(n)
    inv_k2 = -_green_multiplier(n)
    vs, vt, vu = (_fft3(a) / n**3 for a in V.arrays())
    bs = 1j * (kt * vu - ku * vt) * inv_k2
    bt = 1j * (ku * vs - ks * vu) * inv_k2
    bu = 1j * (ks * vt - kt * vs) * inv_k2
    contrib = np.conj(vs) * bs + np.conj(vt) * bt + np.conj(vu) * bu
    outside = _k_inf(n) > m
    return float(VOLUME * np.sum(np.abs(contrib[outside])))


def grad_phi_table(n, m):
    """grad(phi) of the truncated fundamental solution on the n^3 grid.

    Term-wise differentiated cube partial sum, evaluated by direct summation
    (no FFT), shape (n, n, n, 3).
    """
    rng = np.arange(-m, m + 1)
    L, M, N = np.meshgrid(rng, rng, rng, indexing="ij")
    modes = np.stack([L.ravel(), M.ravel(), N.ravel()], axis=1).astype(float)
    modes = modes[np.any(modes != 0, axis=1)]
    k2 = np.sum(modes**2, axis=1)
    x = grid_coords(n)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    pts = np.stack([X.ravel(), Y.ravel(), Z.ravel()], axis=1)
    # grad phi = (1/8pi^3) sum_k k sin(k.x) / |k|^2 over the punctured cube
    phase = np.sin(pts @ modes.T)
    table = phase @ (modes / k2[:, None]) / VOLUME
    return table.reshape(n, n, n, 3)


def helicity_bruteforce(V, m):
    """Direct double Riemann sum of the two-point helicity integral.

    Evaluates sum over grid pairs of V(sigma) x V(tau) . grad(phi)(sigma-tau)
    with the truncated fundamental-solution gradient, at O(n^6) cost.  Kept
    independent of the Fourier pipeline so it can serve as its oracle.
    """
    n = V.n
    if n > 12:
        raise GridTooLarge(f"brute-force helicity limited to n <= 12, got {n}")
    if m > n // 2 - 1:
        raise ValueError(f"truncation degree {m} aliases on an n = {n} grid")
    G = grad_phi_table(n, m)
    vs, vt, vu = V.arrays()
    Vflat = np.stack([vs.ravel(), vt.ravel(), vu.ravel()], axis=1)
    idx = np.arange(n)
    total = 0.0
    h3 = (TWO_PI / n) ** 3
    for a in range(n):
        ia = (a - idx) % n
        for b in range(n):
            ib = (b - idx) % n
            for c in range(n):
                ic = (c - idx) % n
                g = G[np.ix_(ia, ib, ic)].reshape(-1, 3)
                v_sigma = Vflat[(a * n + b) * n + c]
                cross = np.cross(v_sigma, Vflat)
                total += float(np.sum(cross * g))
    return h3 * h3 * total


def phi_eval(point, m):
    """Truncated fundamental solution of the Laplacian on the 3-torus.

    Cube partial sum over 0 < max(|l|,|m|,|n|) <= m of
    -(1/8pi^3) e^{i k . x} / |k|^2, returned as a real number.  Pointwise
    values depend on the (cube) summation convention; coefficient-space
    statements are exact.
    """
    point = np.asarray(point, dtype=float)
    rng = np.arange(-m, m + 1)
    L, M, N = np.meshgrid(rng, rng, rng, indexing="ij")
    modes = np.stack([L.ravel(), M.ravel(), N.ravel()], axis=1).astype(float)
    modes = modes[np.any(modes != 0, axis=1)]
    k2 = np.sum(modes**2, axis=1)
    return float(-np.sum(np.cos(modes @ point) / k2) / VOLUME)


def phi_grid(n, m):
    """The cube-truncated fundamental solution sampled on the n^3 grid."""
    _check_grid(n)
    if m > n // 2 - 1:
        raise ValueError(f"truncation degree {m} aliases on an n = {n} grid")
    k2 = _k_squared(n)
    coeffs = np.zeros((n, n, n), dtype=complex)
    inside = (_k_inf(n) <= m) & (k2 > 0)
    coeffs[inside] = -1.0 / (VOLUME * k2[inside])
    return dft_inverse(SpectralField3(coeffs))


def phi2_eval(point, m):
    """2-torus analog of ``phi_eval``: -(1/4pi^2) sum e^{i k . x} / |k|^2."""
    point = np.asarray(point, dtype=float)
    rng = np.arange(-m, m + 1)
    L, M = np.meshgrid(rng, rng, indexing="ij")
    modes = np.stack([L.ravel(), M.ravel()], axis=1).astype(float)
    modes = modes[np.any(modes != 0, axis=1)]
    k2 = np.sum(modes**2, axis=1)
    return float(-np.sum(np.cos(modes @ point) / k2) / TWO_PI**2)


def phi2_grid(n, m):
    """The 2-torus fundamental solution sampled on an n^2 grid."""
    if m > n // 2 - 1:
        raise ValueError(f"truncation degree {m} aliases on an n = {n} grid")
    k = wavenumbers(n)
    kmax = np.maximum(np.abs(k)[:, None], np.abs(k)[None, :])
    k2 = k[:, None].astype(float) ** 2 + k[None, :].astype(float) ** 2
    coeffs = np.zeros((n, n), dtype=complex)
    inside = (kmax <= m) & (k2 > 0)
    coeffs[inside] = -1.0 / (TWO_PI**2 * k2[inside])
    return np.real(np.fft.ifftn(coeffs * n * n))


def random_scalar_field(n, seed, kmax=None):
    """Deterministic random scalar field, band-limited below the Nyquist."""
    _check_grid(n)
    if kmax is None:
        kmax = n // 2 - 1
    rng = np.random.default_rng(seed)
    data = rng.standard_normal((n, n, n))
    keep = _k_inf(n) <= kmax
    return ScalarField3(_ifft3(np.where(keep, _fft3(data), 0.0)))


def random_vector_field(n, seed, kmax=None):
    """Deterministic random band-limited vector field."""
    return VectorField3(
        random_scalar_field(n, seed, kmax),
        random_scalar_field(n, seed + 1, kmax),
        random_scalar_field(n, seed + 2, kmax),
    )


def random_solenoidal_field(n, seed, kmax=None):
    """Random divergence-free field, built as the curl of a random field."""
    return curl(random_vector_field(n, seed, kmax))


def write_field_csv(V, stream):
    """Write a vector field as CSV rows ``s,t,u,vs,vt,vu``, s varying fastest.

    Floats are written with shortest round-trip repr, so equal inputs give
    byte-identical output.
    """
    n = V.n
    coords = [float(x) for x in grid_coords(n)]
    vs, vt, vu = V.arrays()
    stream.write("s,t,u,vs,vt,vu\n")
    for c in range(n):
        for b in range(n):
            for a in range(n):
                stream.write(
                    f"{coords[a]!r},{coords[b]!r},{coords[c]!r},"
                    f"{float(vs[a, b, c])!r},{float(vt[a, b, c])!r},{float(vu[a, b, c])!r}\n"
                )
