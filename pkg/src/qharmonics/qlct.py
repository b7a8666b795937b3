"""Quaternion linear canonical transforms and their inversion pathways.

Each axis carries a unit-determinant matrix (a, b, c, d) and the kernel

    K(x, xi) = (1 / sqrt(mu 2 pi b)) e^{mu (a x^2/(2b) - x xi/b + d xi^2/(2b))}

with sqrt(1/(mu 2 pi b)) fixed as e^{-mu pi/4} / sqrt(2 pi b) for b > 0
and e^{+mu pi/4} / sqrt(2 pi |b|) for b < 0 (the inverse-matrix kernels
(d, -b, -c, a) need the signed branch).  Inversion carries NO extra
1/4pi^2 factor: the kernels are already normalized by 1/sqrt(2 pi b),
and a Gaussian round-trip confirms the choice (including the factor
leaves an O(1) residual).
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field

import numpy as np

from ._kernels import chirp_multiply, const_multiply, exp_contract
from .errors import (
    DegenerateAngleError,
    DegenerateBError,
    ProvenanceMismatchError,
    SideMismatchError,
)
from .grids import GridSpec, QSignal2D, QSpectrum2D
from .qft import FreqWindow, QftKind, Side, qft_fast, qft_forward_at
from .quaternion import (
    CANONICAL_AXES,
    AxisPair,
    axis_components,
    qexp_pure,
    qmul,
)

__all__ = [
    "LctParams",
    "LctKind",
    "lct_kernel",
    "qlct_forward",
    "qlct_inverse_two_sided",
    "qlct_inverse_sided",
    "qlct_via_qft",
    "sided_decompose_transform",
    "qfrft",
]

DET_TOL = 1e-10


@dataclass(frozen=True)
class LctParams:
    """Per-axis canonical-transform matrix (a, b, c, d), det = 1.

    Construction normalizes b < 0 by flipping the sign of the whole
    matrix (`sign_flipped` records it).  Note A and -A do not give the
    pointwise-identical transform: L_{-A}(f)(xi) = mu * L_A(f)(-xi), a
    frequency reflection times the axis unit.  Callers who need honest
    negative-b kernels (the fractional transform at negative angles, the
    inverse matrices) pass ``normalize=False``.
    """

    a: float
    b: float
    c: float
    d: float
    sign_flipped: bool = False
    normalize: InitVar[bool] = True

    def __post_init__(self, normalize):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise ValueError(f"matrix determinant {det!r} is not 1 within {DET_TOL}")
        if normalize and self.b < 0:
            for name, val in zip("abcd", (-self.a, -self.b, -self.c, -self.d)):
                object.__setattr__(self, name, val)
            object.__setattr__(self, "sign_flipped", True)

    @property
    def is_degenerate(self):
        return self.b == 0.0

    @property
    def inverse(self):
        """The inverse matrix (d, -b, -c, a), kept raw (signed b)."""
        return LctParams(self.d, -self.b, -self.c, self.a, normalize=False)

    @classmethod
    def identity_chirp(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def fourier(cls):
        return cls(0.0, 1.0, -1.0, 0.0)

    @classmethod
    def rotation(cls, angle, normalize=True):
        return cls(np.cos(angle), np.sin(angle), -np.sin(angle), np.cos(angle),
                   normalize=normalize)

    def astuple(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class LctKind:
    """Which QLCT: side, per-axis matrices, axes, and the QFRFT phase flag."""

    side: Side
    A1: LctParams
    A2: LctParams
    axes: AxisPair = field(default=CANONICAL_AXES)
    phase_corrected: bool = False

    family = "qlct"


def _kernel_prefactor(b, mu):
    """sqrt(1/(mu 2 pi b)) with the e^{-sign(b) mu pi/4} branch fixed."""
    if b == 0.0:
        raise DegenerateBError("kernel undefined for b = 0 (chirp branch)")
    return qexp_pure(mu, -np.sign(b) * np.pi / 4) / np.sqrt(2.0 * np.pi * abs(b))


def lct_kernel(A: LctParams, axis, x, xi):
    """Evaluate the canonical kernel K_A(x, xi) on broadcastable arrays.

    |K| = 1/sqrt(2 pi |b|) everywhere.  Raises DegenerateBError when
    b = 0 (that branch is a chirp multiplication, not a kernel).
    """
    a, b, _, d = A.astuple() if isinstance(A, LctParams) else A
    pref = _kernel_prefactor(b, axis)
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    phase = a * x * x / (2 * b) - x * xi / b + d * xi * xi / (2 * b)
    return qmul(pref, qexp_pure(axis, phase))


def _lct_axis_stage(data, A, mu, x, xi, left, axis, inverse=False):
    """One kernel-sandwich stage along a grid axis, factored as
    chirp(x) -> oscillatory contraction -> chirp(xi) -> constant."""
    a, b, _, d = A.astuple()
    if inverse:
        a, b, d = d, -b, a
    pref = _kernel_prefactor(b, mu)
    out = chirp_multiply(a * x * x / (2 * b), mu, data, left, axis)
    out = exp_contract(-np.outer(xi, x) / b, mu, out, left, axis)
    out = chirp_multiply(d * xi * xi / (2 * b), mu, out, left, axis)
    return const_multiply(pref, out, left)


def _degenerate_axis(data, A, mu, x, left, axis):
    """b = 0 branch: sqrt(d) e^{mu c d xi^2 / 2} f(d xi) along one axis.

    The output coordinates are xi = x/d so no resampling is needed;
    requires d > 0 (det = ad = 1 pins d = 1/a).
    """
    if A.d <= 0:
        raise DegenerateBError("degenerate branch needs d > 0")
    xi = x / A.d
    out = np.sqrt(A.d) * chirp_multiply(A.c * A.d * xi * xi / 2.0, mu, data, left, axis)
    return out, xi


def _sided_orders(side):
    """(first_axis, placements): stage order and left/right flags per axis."""
    if side is Side.TWO_SIDED:
        return ((0, True), (1, False))
    if side is Side.RIGHT_SIDED:
        return ((0, False), (1, False))
    return ((1, True), (0, True))


def qlct_forward(sig: QSignal2D, kind: LctKind, window: FreqWindow) -> QSpectrum2D:
    """Forward QLCT by midpoint quadrature of the kernel sandwich.

    Kernel placement per side matches the defining integrals: two-sided
    K1 f K2, right-sided f K1 K2, left-sided K1 K2 f.  Axes with b = 0
    take the chirp-scaling branch; their output grid is the input grid
    mapped by xi = x/d and the window is ignored along that axis.
    """
    fgrid = window.to_grid()
    mats = (kind.A1, kind.A2)
    mus = (kind.axes.mu1, kind.axes.mu2)
    in_coords = (sig.grid.s, sig.grid.t)
    win_coords = (fgrid.s, fgrid.t)
    spacing = (sig.grid.ds, sig.grid.dt)

    data = sig.data
    out_coords = [None, None]
    scale = 1.0
    for ax, left in _sided_orders(kind.side):
        if mats[ax].is_degenerate:
            data, out_coords[ax] = _degenerate_axis(data, mats[ax], mus[ax],
                                                    in_coords[ax], left, ax)
        else:
            data = _lct_axis_stage(data, mats[ax], mus[ax],
                                   in_coords[ax], win_coords[ax], left, ax)
            out_coords[ax] = win_coords[ax]
            scale *= spacing[ax]
    grid = _grid_from_coords(out_coords[0], out_coords[1])
    return QSpectrum2D(grid, data * scale, kind, window)


def _grid_from_coords(u, v):
    du = u[1] - u[0]
    dv = v[1] - v[0]
    return GridSpec(u[0] - du / 2, v[0] - dv / 2, du, dv, u.size, v.size)


def _check_inverse_kind(spec, kind, want_sided):
    if getattr(spec.kind, "family", None) != "qlct":
        raise ProvenanceMismatchError(f"not a QLCT spectrum: {spec.kind!r}")
    if spec.kind != kind:
        raise ProvenanceMismatchError(
            f"spectrum provenance {spec.kind!r} does not match {kind!r}")
    if kind.phase_corrected:
        raise ProvenanceMismatchError(
            "undo the fractional phase factors before inverting")
    if want_sided and kind.side is Side.TWO_SIDED:
        raise SideMismatchError("use qlct_inverse_two_sided for two-sided spectra")
    if not want_sided and kind.side is not Side.TWO_SIDED:
        raise SideMismatchError("use qlct_inverse_sided for sided spectra")
    if kind.A1.is_degenerate or kind.A2.is_degenerate:
        raise DegenerateBError("inverse through a degenerate (b = 0) axis")


def qlct_inverse_two_sided(spec: QSpectrum2D, kind: LctKind,
                           out_grid: GridSpec) -> QSignal2D:
    """Two-sided inversion with A^{-1} = (d, -b, -c, a) kernels.

    f(x, y) = integral K_{A1^{-1}}(u, x) L(u, v) K_{A2^{-1}}(v, y) du dv,
    with no 1/4pi^2 prefactor (see module docstring).
    """
    _check_inverse_kind(spec, kind, want_sided=False)
    u, v = spec.grid.s, spec.grid.t
    out = _lct_axis_stage(spec.data, kind.A1, kind.axes.mu1, u, out_grid.s,
                          left=True, axis=0, inverse=True)
    out = _lct_axis_stage(out, kind.A2, kind.axes.mu2, v, out_grid.t,
                          left=False, axis=1, inverse=True)
    return QSignal2D(out_grid, out * spec.grid.cell_area)


def qlct_inverse_sided(spec: QSpectrum2D, kind: LctKind,
                       out_grid: GridSpec) -> QSignal2D:
    """Sided inversions, undoing the forward kernels innermost-first.

    right-sided: f = integral L(u,v) K_{A2^{-1}}(v,t) K_{A1^{-1}}(u,s)
    left-sided:  f = integral K_{A2^{-1}}(v,t) K_{A1^{-1}}(u,s) L(u,v)

    The left-sided order puts the v-kernel leftmost, matching the
    left-sided Fourier inversion it specializes to when both matrices
    are the rotation by pi/2.  The order is load-bearing: swapping the
    two inverse kernels on a non-real signal does not reconstruct f.
    """
    _check_inverse_kind(spec, kind, want_sided=True)
    u, v = spec.grid.s, spec.grid.t
    if kind.side is Side.RIGHT_SIDED:
        out = _lct_axis_stage(spec.data, kind.A2, kind.axes.mu2, v, out_grid.t,
                              left=False, axis=1, inverse=True)
        out = _lct_axis_stage(out, kind.A1, kind.axes.mu1, u, out_grid.s,
                              left=False, axis=0, inverse=True)
    else:
        out = _lct_axis_stage(spec.data, kind.A1, kind.axes.mu1, u, out_grid.s,
                              left=True, axis=0, inverse=True)
        out = _lct_axis_stage(out, kind.A2, kind.axes.mu2, v, out_grid.t,
                              left=True, axis=1, inverse=True)
    return QSignal2D(out_grid, out * spec.grid.cell_area)


def qlct_via_qft(sig: QSignal2D, kind: LctKind, window: FreqWindow = None,
                 fast=False) -> QSpectrum2D:
    """Two-sided QLCT through the chirp-QFT-chirp factorization.

    p(s,t) = e^{mu1 a1 s^2/(2 b1)} f(s,t) e^{mu2 a2 t^2/(2 b2)} is
    transformed by the two-sided QFT, then scaled to (u/b1, v/b2),
    chirped in the output and multiplied by the kernel prefactors.  With
    ``fast=True`` the QFT runs on the FFT path and the spectrum lands on
    the natural window scaled by (b1, b2); otherwise the window is
    required and the result matches qlct_forward node for node.
    """
    if kind.side is not Side.TWO_SIDED:
        raise SideMismatchError("the chirp factorization applies to the two-sided QLCT")
    a1, b1, _, d1 = kind.A1.astuple()
    a2, b2, _, d2 = kind.A2.astuple()
    if b1 <= 0 or b2 <= 0:
        raise DegenerateBError("chirp factorization needs b1, b2 > 0")
    mu1, mu2 = kind.axes.mu1, kind.axes.mu2
    s, t = sig.grid.s, sig.grid.t

    p = chirp_multiply(a1 * s * s / (2 * b1), mu1, sig.data, left=True, axis=0)
    p = chirp_multiply(a2 * t * t / (2 * b2), mu2, p, left=False, axis=1)
    p_sig = QSignal2D(sig.grid, p)
    qft_kind = QftKind(Side.TWO_SIDED, kind.axes)

    if fast:
        p_spec = qft_fast(p_sig, qft_kind)
        u = b1 * p_spec.grid.s
        v = b2 * p_spec.grid.t
        vals = p_spec.data
        window = FreqWindow(b1 * p_spec.window.u_max, b2 * p_spec.window.v_max,
                            p_spec.window.nu, p_spec.window.nv)
    else:
        if window is None:
            raise ValueError("a window is required on the quadrature path")
        fgrid = window.to_grid()
        u, v = fgrid.s, fgrid.t
        vals = qft_forward_at(p_sig, qft_kind, u / b1, v / b2)

    out = chirp_multiply(d1 * u * u / (2 * b1), mu1, vals, left=True, axis=0)
    out = chirp_multiply(d2 * v * v / (2 * b2), mu2, out, left=False, axis=1)
    out = const_multiply(_kernel_prefactor(b1, mu1), out, left=True)
    out = const_multiply(_kernel_prefactor(b2, mu2), out, left=False)
    return QSpectrum2D(_grid_from_coords(u, v), out, kind, window)


def _embed(re, im, mu):
    """re + mu * im as a quaternion array."""
    out = np.zeros(re.shape + (4,))
    out[..., 0] = re
    out[..., 1:] = im[..., None] * mu
    return out


def sided_decompose_transform(sig: QSignal2D, kind: LctKind,
                              window: FreqWindow) -> QSpectrum2D:
    """Sided QLCT as a sum of two two-sided QLCTs of symplectic parts.

    right-sided: L_R(f) = L_T^{mu1,mu2}(f_a) + L_T^{-mu1,mu2}(f_b) mu2
    left-sided:  L_L(f) = L_T^{mu1,mu2}(f_d) + mu1 L_T^{mu1,-mu2}(f_e)

    where f = f_a + f_b mu2 = f_d + mu1 f_e with the parts living in the
    commuting subalgebras span{1, mu1} and span{1, mu2} respectively.
    """
    if kind.side is Side.TWO_SIDED:
        raise SideMismatchError("decomposition computes the sided transforms")
    axes = kind.axes
    a0, a1c, a2c, a3c = axis_components(sig.data, axes)
    mu1, mu2 = axes.mu1, axes.mu2

    def two(ax):
        return LctKind(Side.TWO_SIDED, kind.A1, kind.A2, ax)

    if kind.side is Side.RIGHT_SIDED:
        f_a = QSignal2D(sig.grid, _embed(a0, a1c, mu1))
        f_b = QSignal2D(sig.grid, _embed(a2c, a3c, mu1))
        term1 = qlct_forward(f_a, two(axes), window)
        term2 = qlct_forward(f_b, two(AxisPair(-mu1, mu2)), window)
        data = term1.data + qmul(term2.data, np.concatenate([[0.0], mu2]))
    else:
        f_d = QSignal2D(sig.grid, _embed(a0, a2c, mu2))
        f_e = QSignal2D(sig.grid, _embed(a1c, a3c, mu2))
        term1 = qlct_forward(f_d, two(axes), window)
        term2 = qlct_forward(f_e, two(AxisPair(mu1, -mu2)), window)
        data = term1.data + qmul(np.concatenate([[0.0], mu1]), term2.data)
    return QSpectrum2D(term1.grid, data, kind, window)


def qfrft(sig: QSignal2D, alpha: float, beta: float, side: Side,
          window: FreqWindow, axes: AxisPair = CANONICAL_AXES,
          phase_corrected=False) -> QSpectrum2D:
    """Fractional transform: QLCT with rotation matrices A(alpha), A(beta).

    The raw QLCT output differs from the fractional transform by the
    fixed phases e^{-mu1 alpha/2}, e^{-mu2 beta/2}; ``phase_corrected``
    multiplies them back out (left/right respectively) and is recorded
    in the provenance.  The correction only factors out as a constant
    sandwich for the two-sided transform; sided kinds accept raw output
    only.  Negative angles keep their signed-b matrices so a forward
    pass with (-alpha, -beta) inverts the (alpha, beta) pass.
    """
    if abs(np.sin(alpha)) < 1e-12 or abs(np.sin(beta)) < 1e-12:
        raise DegenerateAngleError("sin(angle) = 0: fractional kernel degenerates")
    if phase_corrected and side is not Side.TWO_SIDED:
        raise SideMismatchError(
            "phase correction is a constant sandwich only for the two-sided kind")
    kind = LctKind(side,
                   LctParams.rotation(alpha, normalize=False),
                   LctParams.rotation(beta, normalize=False),
                   axes, phase_corrected=phase_corrected)
    spec = qlct_forward(sig, LctKind(side, kind.A1, kind.A2, axes), window)
    data = spec.data
    if phase_corrected:
        data = qmul(qexp_pure(axes.mu1, alpha / 2), data)
        data = qmul(data, qexp_pure(axes.mu2, beta / 2))
    return QSpectrum2D(spec.grid, data, kind, window)
