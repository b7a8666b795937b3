"""Quaternion Fourier transforms (two-sided, right-sided, left-sided).

Forward transforms are midpoint-rule quadratures of

    two-sided   F(u,v) = integral e^{-mu1 u s} f(s,t) e^{-mu2 v t} ds dt
    right-sided F(u,v) = integral f(s,t) e^{-mu1 u s} e^{-mu2 v t} ds dt
    left-sided  F(u,v) = integral e^{-mu1 u s} e^{-mu2 v t} f(s,t) ds dt

over the signal's (truncated) domain.  The inverse carries the 1/4pi^2
factor and the side-specific kernel order

    two-sided   f = (1/4pi^2) integral e^{mu1 u s} F e^{mu2 v t} du dv
    right-sided f = (1/4pi^2) integral F e^{mu2 v t} e^{mu1 u s} du dv
    left-sided  f = (1/4pi^2) integral e^{mu2 v t} e^{mu1 u s} F du dv

The fast path reduces everything to FFTs of the four real components and
reassembles with the anticommutation sign flips; it lands on the same
midpoint frequency grid as the quadrature path, so the two agree sample
for sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from ._kernels import exp_contract
from .errors import (
    InvalidWindowError,
    NonCanonicalAxesError,
    NonRealInputError,
    NotPowerOfTwoError,
    ProvenanceMismatchError,
    SideMismatchError,
)
from .grids import GridSpec, QSignal2D, QSpectrum2D
from .quaternion import CANONICAL_AXES, AxisPair, qmul, quat

__all__ = [
    "Side",
    "QftKind",
    "FreqWindow",
    "qft_forward",
    "qft_forward_at",
    "qft_inverse",
    "ft2d",
    "qft_from_ft",
    "ft_from_qft",
    "qft_fast",
    "derivative_multiplier",
]


class Side(Enum):
    TWO_SIDED = "two"
    RIGHT_SIDED = "right"
    LEFT_SIDED = "left"


@dataclass(frozen=True)
class QftKind:
    """Which QFT: kernel placement plus the (generalized) axis pair."""

    side: Side = Side.TWO_SIDED
    axes: AxisPair = field(default=CANONICAL_AXES)

    family = "qft"


@dataclass(frozen=True)
class FreqWindow:
    """Truncation window [-u_max, u_max] x [-v_max, v_max], midpoint sampled."""

    u_max: float
    v_max: float
    nu: int
    nv: int

    def __post_init__(self):
        if not (self.u_max > 0 and self.v_max > 0):
            raise InvalidWindowError("window extents must be positive")
        if self.nu < 2 or self.nv < 2:
            raise InvalidWindowError("windows need at least 2 samples per axis")

    @classmethod
    def square(cls, extent, n):
        return cls(extent, extent, n, n)

    @classmethod
    def natural(cls, grid: GridSpec):
        """Window matching the FFT of `grid`: extent pi/spacing, same counts."""
        return cls(np.pi / grid.ds, np.pi / grid.dt, grid.ns, grid.nt)

    def to_grid(self) -> GridSpec:
        return GridSpec(-self.u_max, -self.v_max,
                        2.0 * self.u_max / self.nu, 2.0 * self.v_max / self.nv,
                        self.nu, self.nv)


def _forward_data(data, grid, kind, u, v):
    mu1, mu2 = kind.axes.mu1, kind.axes.mu2
    s, t = grid.s, grid.t
    if kind.side is Side.TWO_SIDED:
        g = exp_contract(-np.outer(u, s), mu1, data, left=True, axis=0)
        out = exp_contract(-np.outer(v, t), mu2, g, left=False, axis=1)
    elif kind.side is Side.RIGHT_SIDED:
        g = exp_contract(-np.outer(u, s), mu1, data, left=False, axis=0)
        out = exp_contract(-np.outer(v, t), mu2, g, left=False, axis=1)
    else:
        g = exp_contract(-np.outer(v, t), mu2, data, left=True, axis=1)
        out = exp_contract(-np.outer(u, s), mu1, g, left=True, axis=0)
    return out * grid.cell_area


def qft_forward_at(sig: QSignal2D, kind: QftKind, u, v):
    """Forward QFT evaluated on explicit frequency arrays (raw data).

    The workhorse behind :func:`qft_forward`; exposed so matched-grid
    comparisons (fast path, canonical-transform relations) can request
    arbitrary frequency nodes.  Returns an ``(len(u), len(v), 4)`` array.
    """
    return _forward_data(sig.data, sig.grid, kind,
                         np.asarray(u, dtype=float), np.asarray(v, dtype=float))


def qft_forward(sig: QSignal2D, kind: QftKind, window: FreqWindow) -> QSpectrum2D:
    """Forward QFT on the window's midpoint frequency grid."""
    fgrid = window.to_grid()
    data = qft_forward_at(sig, kind, fgrid.s, fgrid.t)
    return QSpectrum2D(fgrid, data, kind, window)


def _require_qft(spec: QSpectrum2D):
    if getattr(spec.kind, "family", None) != "qft":
        raise ProvenanceMismatchError(f"not a QFT spectrum: {spec.kind!r}")


def qft_inverse(spec: QSpectrum2D, kind: QftKind, out_grid: GridSpec) -> QSignal2D:
    """Inverse QFT quadrature onto `out_grid` (1/4pi^2 normalization)."""
    _require_qft(spec)
    if spec.kind != kind:
        raise ProvenanceMismatchError(
            f"spectrum provenance {spec.kind!r} does not match {kind!r}")
    mu1, mu2 = kind.axes.mu1, kind.axes.mu2
    u, v = spec.grid.s, spec.grid.t
    s, t = out_grid.s, out_grid.t
    F = spec.data
    if kind.side is Side.TWO_SIDED:
        g = exp_contract(np.outer(s, u), mu1, F, left=True, axis=0)
        out = exp_contract(np.outer(t, v), mu2, g, left=False, axis=1)
    elif kind.side is Side.RIGHT_SIDED:
        g = exp_contract(np.outer(t, v), mu2, F, left=False, axis=1)
        out = exp_contract(np.outer(s, u), mu1, g, left=False, axis=0)
    else:
        g = exp_contract(np.outer(s, u), mu1, F, left=True, axis=0)
        out = exp_contract(np.outer(t, v), mu2, g, left=True, axis=1)
    out *= spec.grid.cell_area / (4.0 * np.pi ** 2)
    return QSignal2D(out_grid, out)


# -- relations with the complex 2D Fourier transform -------------------------

def _real_field(sig: QSignal2D):
    if np.any(sig.data[..., 1:] != 0.0):
        raise NonRealInputError("signal has nonzero i/j/k parts")
    return sig.data[..., 0]


def ft2d(sig: QSignal2D, window: FreqWindow):
    """Complex 2D Fourier transform of a real signal, same quadrature.

    Kernel ``e^{-i u s} e^{-i v t}`` (both factors on the classical axis),
    evaluated on the window's midpoint grid.  Returns a complex array.
    """
    h = _real_field(sig)
    fgrid = window.to_grid()
    eu = np.exp(-1j * np.outer(fgrid.s, sig.grid.s))
    ev = np.exp(-1j * np.outer(fgrid.t, sig.grid.t))
    return (eu @ h @ ev.T) * sig.grid.cell_area


def qft_from_ft(H):
    """Assemble the two-sided QFT of a real field from its complex 2D FT.

    Uses H_T(u,v) = [H(u,v)(1-k) + H(u,-v)(1+k)] / 2.  The frequency grid
    must be symmetric in v (midpoint windows are), so the v reflection is
    an index flip.
    """
    H = np.asarray(H)
    x1, y1 = H.real, H.imag
    Hf = H[:, ::-1]
    x2, y2 = Hf.real, Hf.imag
    return np.stack([(x1 + x2) / 2, (y1 + y2) / 2,
                     (y1 - y2) / 2, (x2 - x1) / 2], axis=-1)


def ft_from_qft(HT):
    """Inverse relation: complex 2D FT from the two-sided QFT of a real field.

    Uses H(u,v) = [H_T(u,v)(1+k) + H_T(u,-v)(1-k)] / 2; the quaternion
    j/k parts of the right-hand side cancel for spectra of real fields
    and are discarded.
    """
    HT = np.asarray(HT)
    w1, x1, y1, z1 = (HT[..., n] for n in range(4))
    HTf = HT[:, ::-1, :]
    w2, x2, y2, z2 = (HTf[..., n] for n in range(4))
    re = ((w1 - z1) + (w2 + z2)) / 2
    im = ((x1 + y1) + (x2 - y2)) / 2
    return re + 1j * im


# -- FFT-accelerated path -----------------------------------------------------

def _shifted_fft2(fields, grid: GridSpec):
    """Complex 2D FTs of real fields on the midpoint frequency grid via FFT.

    Matches the ft2d quadrature on FreqWindow.natural(grid) exactly: the
    midpoint frequency offset becomes an input modulation, the midpoint
    sample offset an output phase.  `fields` is batched over the leading
    axis.
    """
    ns, nt = grid.ns, grid.nt
    fw = FreqWindow.natural(grid)
    fgrid = fw.to_grid()
    k = np.arange(ns)
    l = np.arange(nt)
    pre_s = ((-1.0) ** k) * np.exp(-1j * np.pi * k / ns)
    pre_t = ((-1.0) ** l) * np.exp(-1j * np.pi * l / nt)
    spec = np.fft.fft2(fields * np.outer(pre_s, pre_t), axes=(-2, -1))
    s0 = grid.s_min + grid.ds / 2
    t0 = grid.t_min + grid.dt / 2
    post = np.outer(np.exp(-1j * fgrid.s * s0), np.exp(-1j * fgrid.t * t0))
    return spec * (post * grid.cell_area), fw


def _unit_times(axis_index, q):
    """i*q, j*q or k*q as a component shuffle (axis_index 0, 1, 2)."""
    w, x, y, z = (q[..., n] for n in range(4))
    if axis_index == 0:
        comps = (-x, w, -z, y)
    elif axis_index == 1:
        comps = (-y, z, w, -x)
    else:
        comps = (-z, -y, x, w)
    return np.stack(comps, axis=-1)


def qft_fast(sig: QSignal2D, kind: QftKind = QftKind()) -> QSpectrum2D:
    """FFT-backed QFT on the natural frequency window.

    Requires power-of-two sample counts and the canonical (i, j) axes.
    Each real component goes through one complex FFT; the quaternion
    spectrum is reassembled using the sign-flip rule e^{-ius} j = j e^{ius}:

        two-sided  F = F(f0) + i F(f1) + j F(f2)(-u,v) + k F(f3)(-u,v)
        right      F = F(f0) + i F(f1) + j F(f2)       + k F(f3)
        left       F = F(f0) + i F(f1)(u,-v) + j F(f2)(-u,v) + k F(f3)(-u,-v)

    where F(h) is the two-sided QFT of the real component h (all three
    sides coincide on real fields).
    """
    ns, nt = sig.grid.ns, sig.grid.nt
    if ns & (ns - 1) or nt & (nt - 1):
        raise NotPowerOfTwoError(f"sample counts ({ns}, {nt}) are not powers of two")
    if not kind.axes.is_canonical:
        raise NonCanonicalAxesError("fast path requires the canonical (i, j) axes")
    H, fw = _shifted_fft2(np.moveaxis(sig.data, -1, 0), sig.grid)
    f0, f1, f2, f3 = (qft_from_ft(H[n]) for n in range(4))
    if kind.side is Side.TWO_SIDED:
        out = (f0 + _unit_times(0, f1)
               + _unit_times(1, f2[::-1, :, :]) + _unit_times(2, f3[::-1, :, :]))
    elif kind.side is Side.RIGHT_SIDED:
        out = f0 + _unit_times(0, f1) + _unit_times(1, f2) + _unit_times(2, f3)
    else:
        out = (f0 + _unit_times(0, f1[:, ::-1, :])
               + _unit_times(1, f2[::-1, :, :]) + _unit_times(2, f3[::-1, ::-1, :]))
    return QSpectrum2D(fw.to_grid(), np.ascontiguousarray(out), kind, fw)


# -- derivative multipliers ---------------------------------------------------

def _axis_power(mu, grid_vals, m):
    """(mu * x)^m as a quaternion array over grid values x."""
    cycle = m % 4
    unit = {0: quat(1, 0, 0, 0),
            1: quat(0, *mu),
            2: quat(-1, 0, 0, 0),
            3: quat(0, *(-np.asarray(mu)))}[cycle]
    return (grid_vals ** m)[:, None] * unit[None, :]


def derivative_multiplier(spec: QSpectrum2D, m: int, n: int) -> QSpectrum2D:
    """Spectrum of the (m, n)-th partial derivative via frequency multipliers.

    Two-sided spectra take (mu1 u)^m on the left and (mu2 v)^n on the
    right.  Sided spectra only admit their own one-sided multiplier:
    left-sided (mu1 u)^m (n must be 0), right-sided (mu2 v)^n (m must
    be 0); anything else raises SideMismatchError.
    """
    _require_qft(spec)
    if m < 0 or n < 0:
        raise ValueError("derivative orders must be nonnegative")
    kind = spec.kind
    if kind.side is Side.LEFT_SIDED and n != 0:
        raise SideMismatchError("left-sided spectra only admit the u-multiplier")
    if kind.side is Side.RIGHT_SIDED and m != 0:
        raise SideMismatchError("right-sided spectra only admit the v-multiplier")
    data = spec.data
    if m:
        pw = _axis_power(kind.axes.mu1, spec.grid.s, m)
        data = qmul(pw[:, None, :], data)
    if n:
        pw = _axis_power(kind.axes.mu2, spec.grid.t, n)
        data = qmul(data, pw[None, :, :])
    return QSpectrum2D(spec.grid, data, kind, spec.window)
