"""Convergence machinery for the pointwise and L1 inversion results.

Two routes to the truncated inversion value at a point are provided: a
frequency-domain quadrature of the windowed inversion integral, and the
signal-domain double sinc convolution

    I(x0, y0, M, N) = integral f(x0-s, y0-t) sin(Ms)/(pi s) sin(Nt)/(pi t) ds dt

they agree up to quadrature tolerance and converge to the quadrant-limit
average eta at jumps.  The sinc quadrature splits the domain at the
kernel zeros (half-period panels) with a Gauss-Legendre rule per panel;
uniform panels lose several digits once M is large because of
oscillatory cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import sici

from .errors import (
    NoIntegrableSectionError,
    NonConvergentError,
    NonPositiveWindowError,
    SideMismatchError,
)
from .grids import GridSpec, QSignal2D, QSpectrum2D, l1_norm, sample
from .qft import Side, qft_inverse
from .quaternion import qabs, qexp_pure, qmul

__all__ = [
    "JumpAverage",
    "GaussMeanParams",
    "GaussMeanStep",
    "dirichlet_partial_inverse",
    "dirichlet_partial_inverse_freq",
    "dirichlet_partial_inverse_sinc",
    "eta_jump_average",
    "sinc_integral_bound_check",
    "gauss_weierstrass_kernel",
    "gauss_mean_inverse",
    "lc_class_diagnostic",
]


# -- truncated inversion at a point ------------------------------------------

def dirichlet_partial_inverse_freq(spec: QSpectrum2D, point, M, N):
    """Windowed inversion integral at one point, from a QFT spectrum.

    (1/4pi^2) integral over |u|<=M, |v|<=N of the side-ordered kernel
    sandwich; spectrum cells with midpoints outside the window are
    dropped.  Returns a single quaternion (4,).
    """
    if M <= 0 or N <= 0:
        raise NonPositiveWindowError(f"window ({M}, {N}) must be positive")
    if getattr(spec.kind, "family", None) != "qft":
        raise SideMismatchError("partial-sum inversion expects a QFT spectrum")
    x0, y0 = point
    keep_u = np.abs(spec.grid.s) <= M
    keep_v = np.abs(spec.grid.t) <= N
    u = spec.grid.s[keep_u]
    v = spec.grid.t[keep_v]
    F = spec.data[np.ix_(keep_u, keep_v)]
    e1 = qexp_pure(spec.kind.axes.mu1, u * x0)
    e2 = qexp_pure(spec.kind.axes.mu2, v * y0)
    side = spec.kind.side
    if side is Side.TWO_SIDED:
        acc = qmul(qmul(e1[:, None, :], F), e2[None, :, :])
    elif side is Side.RIGHT_SIDED:
        acc = qmul(qmul(F, e2[None, :, :]), e1[:, None, :])
    else:
        acc = qmul(e2[None, :, :], qmul(e1[:, None, :], F))
    return acc.sum(axis=(0, 1)) * spec.grid.cell_area / (4.0 * np.pi ** 2)


def _panel_nodes(lo, hi, rate, breakpoints=(), order=8):
    """Gauss-Legendre nodes/weights on panels cut at the zeros of sin(rate*x)."""
    k_lo = int(np.ceil(lo * rate / np.pi))
    k_hi = int(np.floor(hi * rate / np.pi))
    edges = np.unique(np.concatenate([
        [lo, hi],
        np.arange(k_lo, k_hi + 1) * np.pi / rate,
        np.asarray(breakpoints, dtype=float),
    ]))
    edges = edges[(edges >= lo) & (edges <= hi)]
    gx, gw = np.polynomial.legendre.leggauss(order)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    nodes = (mid[:, None] + half[:, None] * gx[None, :]).ravel()
    weights = (half[:, None] * gw[None, :]).ravel()
    return nodes, weights


def dirichlet_partial_inverse_sinc(fn, point, M, N, rect,
                                   breakpoints_s=(), breakpoints_t=(), order=8):
    """Signal-domain double sinc convolution for the same partial sum.

    Parameters
    ----------
    fn : callable
        Analytic handle ``fn(S, T) -> (..., 4)`` (or a real field).
    point : (x0, y0)
    M, N : positive window extents.
    rect : (s_lo, s_hi, t_lo, t_hi)
        Truncation rectangle for the shifted integrand f(x0-s, y0-t).
    breakpoints_s, breakpoints_t : extra panel cuts (e.g. at the edge of
        an indicator's support) so discontinuities fall on panel edges.
    """
    if M <= 0 or N <= 0:
        raise NonPositiveWindowError(f"window ({M}, {N}) must be positive")
    x0, y0 = point
    s_lo, s_hi, t_lo, t_hi = rect
    s, ws = _panel_nodes(s_lo, s_hi, M, breakpoints_s, order)
    t, wt = _panel_nodes(t_lo, t_hi, N, breakpoints_t, order)
    ker_s = ws * (M / np.pi) * np.sinc(M * s / np.pi)
    ker_t = wt * (N / np.pi) * np.sinc(N * t / np.pi)
    total = np.zeros(4)
    for block in range(0, s.size, 256):
        sb = s[block:block + 256]
        vals = np.asarray(fn(x0 - sb[:, None], y0 - t[None, :]), dtype=float)
        if vals.ndim == 2:
            vals = np.stack([vals, np.zeros_like(vals), np.zeros_like(vals),
                             np.zeros_like(vals)], axis=-1)
        total += np.einsum("i,j,ijq->q", ker_s[block:block + 256], ker_t, vals)
    return total


def dirichlet_partial_inverse(source, point, M, N, **kwargs):
    """Dispatch to the frequency path (spectra) or the sinc path (callables)."""
    if isinstance(source, QSpectrum2D):
        return dirichlet_partial_inverse_freq(source, point, M, N)
    if callable(source):
        return dirichlet_partial_inverse_sinc(source, point, M, N, **kwargs)
    raise TypeError(f"expected a QSpectrum2D or a callable, got {type(source)!r}")


# -- quadrant limits and the jump average ------------------------------------

@dataclass(frozen=True)
class JumpAverage:
    """The four directional limits at a point and their mean eta."""

    value: np.ndarray            # (4,) quaternion
    quadrant_values: np.ndarray  # (4, 4): (+,+), (+,-), (-,+), (-,-)
    h_sequence: np.ndarray


def _richardson(values, max_cols=6):
    """Iterated Richardson extrapolation for a dyadic h-sequence.

    values[k] = g(h0 2^-k); column m removes the h^m error term.
    Returns (limit, settle) where settle is the movement between the
    last two tableau corners.
    """
    T = np.asarray(values, dtype=float)
    cols = min(max_cols, T.shape[0] - 1)
    corners = [T[-1]]
    for m in range(1, cols + 1):
        fac = 2.0 ** m
        T = (fac * T[1:] - T[:-1]) / (fac - 1.0)
        corners.append(T[-1])
    return corners[-1], float(qabs(corners[-1] - corners[-2]))


def eta_jump_average(fn, point, h0=0.5, levels=11, tol=1e-6) -> JumpAverage:
    """Estimate the quadrant limits f(x0 +- 0, y0 +- 0) and their mean.

    Evaluates along the dyadic approach h_k = h0 2^-k into each open
    quadrant and extrapolates with an iterated Richardson tableau (the
    limits are only asserted to exist, so the tableau depth is an
    artifact choice).  Raises NonConvergentError when the extrapolant
    still moves by more than `tol` at the last level.
    """
    x0, y0 = point
    h = h0 * 2.0 ** (-np.arange(levels))
    quadrants = []
    for sx, sy in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        vals = np.asarray(fn(x0 + sx * h, y0 + sy * h), dtype=float)
        if vals.ndim == 1:
            vals = np.stack([vals] + [np.zeros_like(vals)] * 3, axis=-1)
        limit, settle = _richardson(vals)
        if settle > tol:
            raise NonConvergentError(
                f"quadrant ({sx:+d},{sy:+d}) extrapolant still moves by {settle:.3e}")
        quadrants.append(limit)
    quadrants = np.stack(quadrants)
    return JumpAverage(quadrants.mean(axis=0), quadrants, h)


# -- sinc integral bound ------------------------------------------------------

def sinc_integral_bound_check(a, b) -> float:
    """|integral_a^b sin(t)/t dt| via the sine integral; always <= 6."""
    si_b = sici(b)[0]
    si_a = sici(a)[0]
    val = float(abs(si_b - si_a))
    assert val <= 6.0, f"sine-integral bound violated: {val}"
    return val


# -- Gauss-Weierstrass means --------------------------------------------------

def gauss_weierstrass_kernel(alpha, grid: GridSpec) -> QSignal2D:
    """Heat kernel (1/(4 pi alpha)) e^{-(s^2+t^2)/(4 alpha)} sampled on grid."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return sample(lambda S, T: np.exp(-(S ** 2 + T ** 2) / (4.0 * alpha))
                  / (4.0 * np.pi * alpha), grid)


@dataclass(frozen=True)
class GaussMeanParams:
    """Damping parameter and a decreasing schedule of them."""

    alpha: float
    schedule: tuple

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        sched = tuple(float(a) for a in self.schedule)
        if any(a <= 0 for a in sched) or any(np.diff(sched) >= 0):
            raise ValueError("schedule must be strictly decreasing and positive")
        object.__setattr__(self, "schedule", sched)


@dataclass(frozen=True)
class GaussMeanStep:
    alpha: float
    signal: QSignal2D
    l1_error: float | None


def gauss_mean_inverse(spec: QSpectrum2D, params, reference: QSignal2D = None,
                       out_grid: GridSpec = None):
    """Damped (Gauss-mean) inversion along a schedule of alphas.

    For each alpha the spectrum is damped by e^{-alpha(u^2+v^2)} and the
    windowed inversion integral evaluated on the output grid; the result
    equals the heat smoothing f * W_alpha up to truncation.  When a
    reference is supplied, the L1 distance to it is reported per step
    (non-increasing along a decreasing schedule).
    """
    if getattr(spec.kind, "family", None) != "qft" or spec.kind.side is not Side.TWO_SIDED:
        raise SideMismatchError("Gauss means are defined for two-sided QFT spectra")
    if isinstance(params, GaussMeanParams):
        schedule = params.schedule or (params.alpha,)
    else:
        schedule = tuple(params)
    if out_grid is None:
        if reference is None:
            raise ValueError("need a reference signal or an output grid")
        out_grid = reference.grid
    U, V = spec.grid.mesh()
    steps = []
    for alpha in schedule:
        damped = spec.scaled(np.exp(-alpha * (U ** 2 + V ** 2)))
        sig = qft_inverse(damped, spec.kind, out_grid)
        err = None
        if reference is not None:
            err = l1_norm(QSignal2D(out_grid, sig.data - reference.data))
        steps.append(GaussMeanStep(float(alpha), sig, err))
    return steps


# -- LC-class numeric diagnostic ----------------------------------------------

def _quadrant_sum(fn, x0, y0, S, T):
    """f(x0-s,y0-t) + f(x0+s,y0+t) + f(x0-s,y0+t) + f(x0+s,y0-t)."""
    vals = (np.asarray(fn(x0 - S, y0 - T), dtype=float)
            + np.asarray(fn(x0 + S, y0 + T), dtype=float)
            + np.asarray(fn(x0 - S, y0 + T), dtype=float)
            + np.asarray(fn(x0 + S, y0 - T), dtype=float))
    return vals


def _lc_strip(fn, x0, y0, eps_inner, eps_outer, radius, n_inner, n_outer, swap):
    inner = (np.arange(n_inner) + 0.5) * (eps_inner / n_inner)
    outer = eps_outer + (np.arange(n_outer) + 0.5) * ((radius - eps_outer) / n_outer)
    d_in = eps_inner / n_inner
    d_out = (radius - eps_outer) / n_outer
    if swap:  # inner variable is t, outer is s
        S, T = outer[None, :], inner[:, None]
    else:     # inner variable is s, outer is t
        S, T = inner[:, None], outer[None, :]
    G = _quadrant_sum(fn, x0, y0, S, T)
    if G.ndim == 2:
        G = G[..., None]
    mass = np.sum(qabs(G) if G.shape[-1] == 4 else np.abs(G[..., 0]), axis=1) * d_out
    finite = np.isfinite(mass)
    if not finite.any():
        raise NoIntegrableSectionError("no section with finite truncated mass")
    anchor = int(np.argmax(finite))  # nearest-to-zero finite section
    diff = G - G[anchor][None, :, :]
    integrand = np.sqrt(np.sum(diff * diff, axis=-1)) / inner[:, None]
    return float(np.sum(integrand) * d_in * d_out)


def lc_class_diagnostic(fn, point, eps1, eps2, radius,
                        n_inner=96, n_outer=192):
    """Truncated estimates of the two cross-neighborhood strip integrals.

    First value: integral over s in (0, eps1], t in [eps2, radius] of
    |(ftilde(s,t) - ftilde(a,t)) / s|; second is the mirrored t-strip.
    ftilde is the four-quadrant sum around the point; the sections a, b
    are the quadrature nodes closest to zero with finite truncated 1D
    mass.  Raw numbers are returned for the caller to judge: the
    underlying condition is asymptotic and not decidable from finite
    data.
    """
    if eps1 <= 0 or eps2 <= 0:
        raise ValueError("strip half-widths must be positive")
    if radius <= max(eps1, eps2):
        raise ValueError("radius must exceed the strip half-widths")
    x0, y0 = point
    val1 = _lc_strip(fn, x0, y0, eps1, eps2, radius, n_inner, n_outer, swap=False)
    val2 = _lc_strip(fn, x0, y0, eps2, eps1, radius, n_inner, n_outer, swap=True)
    return val1, val2
