"""Clifford-valued Stockwell transform: scaled, rotated windows on the lattice.

The analysis window family is

    psi^theta_{b,u}(x) = |det A_u| exp(i_n x.u) psi(R_{-theta} A_u (x - b)),

with A_u = diag(u_1, ..., u_n), every u_i nonzero, and R_{-theta} the proper
planar rotation acting on axes (1, 2).  Per (u, theta) the transform over the
whole b-grid is one modulation plus one FFT convolution.
"""

import warnings

import numpy as np

from .cft import _require_transformable
from .grid import SPACE, GridError, GridSignal, plane_wave_multiply
from .volume import CLCSTVolume, DEFAULT_THETAS, default_u_list
from .windows import WindowSpec


class StockwellError(Exception):
    pass


class AnalyticWindowRequiredError(StockwellError):
    pass


class NonUnitWindowWarning(UserWarning):
    pass


class ScalingMatrix:
    """Diagonal scaling A_u = diag(u); every component must be nonzero."""

    def __init__(self, u):
        u = np.asarray(u, dtype=np.float64).ravel()
        if np.any(u == 0.0):
            raise StockwellError("scaling vector has a zero component: %r" % (u,))
        self.u = u

    @property
    def n(self):
        return len(self.u)

    @property
    def det_abs(self):
        return float(np.abs(np.prod(self.u)))

    def apply(self, points):
        """A_u x componentwise; points shaped (n, ...)."""
        return self.u.reshape((-1,) + (1,) * (points.ndim - 1)) * points

    def apply_inverse(self, points):
        return points / self.u.reshape((-1,) + (1,) * (points.ndim - 1))


class Rotation:
    """Planar rotation by theta acting on axes (1, 2), identity elsewhere."""

    def __init__(self, theta):
        self.theta = float(theta)

    def matrix(self, n):
        m = np.eye(n)
        if n >= 2:
            c, s = np.cos(self.theta), np.sin(self.theta)
            m[0, 0] = c
            m[0, 1] = -s
            m[1, 0] = s
            m[1, 1] = c
        return m

    def apply(self, points):
        return np.einsum("ij,j...->i...", self.matrix(points.shape[0]), points)


def minimal_image(diff, half_width):
    """Wrap coordinate differences into [-L, L), the periodic-lattice image."""
    period = 2.0 * half_width
    return (diff + half_width) % period - half_width


def transformed_window_values(psi, spec, b, scaling, rotation, negate=False, wrap=False):
    """psi(R_{-theta} A_u (x - b)) sampled exactly on the lattice.

    With ``negate`` the argument is R_{-theta} A_u (-x), the reflected window
    entering the convolution form.  ``wrap`` takes the difference modulo the
    lattice period, matching the periodic convolution the FFT paths compute.
    """
    if not isinstance(psi, WindowSpec):
        raise AnalyticWindowRequiredError(
            "transformed evaluation needs an analytic window, not sampled data"
        )
    mesh = spec.mesh(SPACE)
    if negate:
        pts = -mesh
    else:
        b = np.asarray(b, dtype=np.float64).reshape((-1,) + (1,) * spec.n)
        pts = mesh - b
    if wrap:
        pts = minimal_image(pts, spec.half_width)
    return psi.evaluate(rotation.apply(scaling.apply(pts)))


def window_family(psi, b, scaling, rotation, spec, ctx):
    """The analysis window psi^theta_{b,u} as a lattice signal.

    Sampled (GridSignal) windows are accepted only for the untransformed
    configuration u = (1,...,1), theta = 0, and a lattice-vector b, where a
    periodic shift is exact; anything else demands an analytic window.
    """
    if isinstance(psi, GridSignal):
        return _shift_sampled_window(psi, b, scaling, rotation)
    vals = transformed_window_values(psi, spec, b, scaling, rotation)
    sig = GridSignal.from_scalar(spec, ctx, vals * scaling.det_abs, SPACE)
    return plane_wave_multiply(sig, scaling.u, +1)


def _shift_sampled_window(psi, b, scaling, rotation):
    if not (np.all(scaling.u == 1.0) and rotation.theta == 0.0):
        raise AnalyticWindowRequiredError(
            "sampled windows cannot be rescaled or rotated without interpolation"
        )
    b = np.asarray(b, dtype=np.float64).ravel()
    steps = b / psi.spec.dx
    rounded = np.rint(steps)
    if np.max(np.abs(steps - rounded)) > 1e-9:
        raise AnalyticWindowRequiredError("sampled windows shift only by lattice vectors")
    shifted = np.roll(psi.data, rounded.astype(int), axis=tuple(range(1, psi.spec.n + 1)))
    sig = GridSignal(psi.spec, psi.ctx, shifted, SPACE)
    return plane_wave_multiply(sig, scaling.u, +1)


def _convolve_with_scalar(f, kernel_values):
    """dx^n sum_t f(t) k(x - t) for a real scalar kernel, via batched FFTs."""
    axes = tuple(range(1, f.spec.n + 1))
    fhat = np.fft.fftn(f.data, axes=axes)
    khat = np.fft.fftn(kernel_values)
    circ = np.fft.ifftn(fhat * khat[None], axes=axes).real
    half = f.spec.samples_per_axis // 2
    out = np.roll(circ, [-half] * f.spec.n, axis=axes)
    return GridSignal(f.spec, f.ctx, out * f.spec.cell_weight(SPACE), f.domain)


def cst_slice(f, psi, scaling, rotation):
    """One (u, theta) slice of the Stockwell transform over the full b-grid."""
    _require_transformable(f)
    modulated = plane_wave_multiply(f, scaling.u, -1)
    reflected = transformed_window_values(psi, f.spec, None, scaling, rotation, negate=True)
    conv = _convolve_with_scalar(modulated, reflected)
    scale = scaling.det_abs * (2.0 * np.pi) ** (-f.spec.n / 2.0)
    return conv.scale(scale)


def cst(f, psi, u_list=None, theta_list=None, strict=False):
    """Stockwell transform volume of f against the window psi.

    The window is expected to integrate to one; a non-unit integral is a
    warning, or an error in strict mode.
    """
    _require_transformable(f)
    if f.domain != SPACE:
        raise GridError("cst expects a space-domain signal")
    if not isinstance(psi, WindowSpec):
        raise AnalyticWindowRequiredError("cst needs an analytic window")
    if not psi.is_unit_integral():
        if strict:
            raise StockwellError("window does not integrate to one (strict mode)")
        warnings.warn(
            "window integral is %g, not 1; reconstruction identities assume 1"
            % psi.integral(),
            NonUnitWindowWarning,
            stacklevel=2,
        )
    if u_list is None:
        u_list = default_u_list(f.spec)
    if theta_list is None:
        theta_list = DEFAULT_THETAS
    vol = CLCSTVolume(f.spec, f.ctx, u_list, theta_list, window=psi, path="cst")
    for ui in range(vol.u_count):
        scaling = ScalingMatrix(vol.u_list[ui])
        for ti in range(vol.theta_count):
            rotation = Rotation(vol.theta_list[ti])
            vol.set_slice(ui, ti, cst_slice(f, psi, scaling, rotation))
    return vol


def cst_direct_point(f, psi, b, scaling, rotation):
    """Naive quadrature of one transform value; the slow oracle.

    Windows are evaluated at the minimal-image difference so the oracle sums
    exactly the periodic-lattice object the FFT path computes.
    """
    from .algebra import Multivector

    _require_transformable(f)
    mesh = f.spec.mesh(SPACE)
    wvals = transformed_window_values(psi, f.spec, b, scaling, rotation, wrap=True)
    phase = -np.tensordot(scaling.u, mesh, axes=(0, 0))
    weight = wvals * f.spec.cell_weight(SPACE)
    faxes = tuple(range(1, f.data.ndim))
    kaxes = tuple(range(f.spec.n))
    cos_sum = np.tensordot(f.data, weight * np.cos(phase), axes=(faxes, kaxes))
    sin_sum = np.tensordot(f.data, weight * np.sin(phase), axes=(faxes, kaxes))
    ctx = f.ctx
    perm = ctx.pseudo_perm
    coeffs = cos_sum.copy()
    coeffs[perm] += ctx.pseudo_sign * sin_sum
    scale = scaling.det_abs * (2.0 * np.pi) ** (-f.spec.n / 2.0)
    return Multivector(ctx, coeffs * scale)
