"""Sampled quaternion signals on uniform rectangular grids.

The midpoint convention is used throughout: sample ``k`` along the first
axis sits at ``s_min + (k + 1/2) * ds``.  That keeps constant-function
quadrature exact and avoids double-counting domain edges.  Signal data is
stored as an ``(ns, nt, 4)`` float64 array, axis 0 indexing ``s`` and
axis 1 indexing ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BadPpmError, NonFiniteError, ShapeMismatchError
from .quaternion import qabs

__all__ = [
    "GridSpec",
    "QSignal2D",
    "QSpectrum2D",
    "sample",
    "l1_norm",
    "linf_diff",
    "image_to_qsig",
    "qsig_to_image",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform 2D sampling geometry (midpoint convention)."""

    s_min: float
    t_min: float
    ds: float
    dt: float
    ns: int
    nt: int

    def __post_init__(self):
        if not (self.ds > 0 and self.dt > 0):
            raise ValueError("grid spacings must be positive")
        # 1x1 grids are legal so single-pixel images can round-trip
        if not (self.ns >= 1 and self.nt >= 1):
            raise ValueError("grids need at least 1 sample per axis")

    @classmethod
    def centered(cls, extent, n, extent_t=None, nt=None):
        """Square/rectangular grid over [-extent, extent]^2 with n^2 cells."""
        extent_t = extent if extent_t is None else extent_t
        nt = n if nt is None else nt
        return cls(-extent, -extent_t, 2.0 * extent / n, 2.0 * extent_t / nt, n, nt)

    @property
    def s(self):
        return self.s_min + (np.arange(self.ns) + 0.5) * self.ds

    @property
    def t(self):
        return self.t_min + (np.arange(self.nt) + 0.5) * self.dt

    def mesh(self):
        """Broadcastable (ns,1) and (1,nt) coordinate arrays."""
        return self.s[:, None], self.t[None, :]

    @property
    def cell_area(self):
        return self.ds * self.dt


def _check_data(grid, data):
    data = np.ascontiguousarray(data, dtype=float)
    if data.shape != (grid.ns, grid.nt, 4):
        raise ShapeMismatchError(
            f"data shape {data.shape} does not match grid ({grid.ns}, {grid.nt}, 4)")
    return data


@dataclass(frozen=True)
class QSignal2D:
    """Quaternion-valued samples of a function on a rectangle."""

    grid: GridSpec
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data))

    def map(self, fn):
        """New signal with ``fn`` applied to the data array."""
        return QSignal2D(self.grid, fn(self.data))


@dataclass(frozen=True)
class QSpectrum2D:
    """Transform output on a frequency/canonical-domain grid.

    ``kind`` records which transform produced it (a QftKind or LctKind),
    ``window`` the truncation used; both travel with the data so inverses
    can refuse mismatched requests.
    """

    grid: GridSpec
    data: np.ndarray
    kind: object
    window: object = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "data", _check_data(self.grid, self.data))

    def as_signal(self):
        """Reinterpret the samples as a plain signal (drops provenance)."""
        return QSignal2D(self.grid, self.data)

    def scaled(self, factor):
        """Pointwise real scaling (scalar or (ns, nt) field); provenance kept."""
        factor = np.asarray(factor, dtype=float)
        data = self.data * (factor[..., None] if factor.ndim == 2 else factor)
        return QSpectrum2D(self.grid, data, self.kind, self.window)


def sample(fn, grid: GridSpec) -> QSignal2D:
    """Sample an analytic quaternion function at the grid midpoints.

    ``fn(S, T)`` receives broadcastable coordinate arrays and may return
    either a quaternion array ``(ns, nt, 4)`` or a real field ``(ns, nt)``
    (promoted to the scalar part).

    Raises
    ------
    NonFiniteError
        If any sampled value is NaN or infinite.
    """
    S, T = grid.mesh()
    vals = np.asarray(fn(S, T), dtype=float)
    if vals.shape == (grid.ns, grid.nt):
        out = np.zeros((grid.ns, grid.nt, 4))
        out[..., 0] = vals
        vals = out
    else:
        vals = np.broadcast_to(vals, (grid.ns, grid.nt, 4)).copy()
    if not np.all(np.isfinite(vals)):
        bad = np.argwhere(~np.isfinite(vals))[0]
        raise NonFiniteError(f"non-finite sample at data index {tuple(bad)}")
    return QSignal2D(grid, vals)


def l1_norm(sig: QSignal2D) -> float:
    """Midpoint-rule L1 norm: sum of |q| times the cell area."""
    return float(np.sum(qabs(sig.data)) * sig.grid.cell_area)


def linf_diff(sig_a: QSignal2D, sig_b: QSignal2D) -> float:
    """Max pointwise quaternion modulus of the difference."""
    if sig_a.grid != sig_b.grid:
        raise ShapeMismatchError("signals live on different grids")
    return float(np.max(qabs(sig_a.data - sig_b.data)))


# -- PPM color images --------------------------------------------------------
# Pixels map to pure quaternions: (R, G, B) -> (0, R/255, G/255, B/255),
# image column -> s axis, image row -> t axis (row 0 at t index 0).

def _ppm_tokens(buf, count):
    """Yield `count` whitespace-separated header tokens, honoring # comments.

    Returns (tokens, offset_of_first_raster_byte).
    """
    tokens = []
    i = 0
    n = len(buf)
    while len(tokens) < count:
        while i < n and buf[i:i + 1].isspace():
            i += 1
        if i < n and buf[i:i + 1] == b"#":
            while i < n and buf[i] != 0x0A:
                i += 1
            continue
        start = i
        while i < n and not buf[i:i + 1].isspace():
            i += 1
        if start == i:
            raise BadPpmError("truncated PPM header")
        tokens.append(buf[start:i])
    # exactly one whitespace byte separates the header from the raster
    if i >= n or not buf[i:i + 1].isspace():
        raise BadPpmError("missing separator before raster")
    return tokens, i + 1


def image_to_qsig(ppm_bytes: bytes) -> QSignal2D:
    """Decode a binary PPM (P6, 8-bit) into a pure-quaternion signal."""
    if ppm_bytes[:2] != b"P6":
        raise BadPpmError(f"not a binary PPM (magic {ppm_bytes[:2]!r})")
    try:
        tokens, offset = _ppm_tokens(ppm_bytes[2:], 3)
    except BadPpmError:
        raise
    try:
        width, height, maxval = (int(tok) for tok in tokens)
    except ValueError as exc:
        raise BadPpmError(f"bad PPM header field: {exc}") from None
    if width <= 0 or height <= 0:
        raise BadPpmError(f"bad PPM dimensions {width}x{height}")
    if maxval != 255:
        raise BadPpmError(f"only maxval 255 is supported, got {maxval}")
    raster = ppm_bytes[2 + offset:]
    if len(raster) < 3 * width * height:
        raise BadPpmError("truncated PPM raster")
    pix = np.frombuffer(raster[:3 * width * height], dtype=np.uint8)
    pix = pix.reshape(height, width, 3).astype(float) / 255.0
    data = np.zeros((width, height, 4))
    data[..., 1:] = np.transpose(pix, (1, 0, 2))
    grid = GridSpec(0.0, 0.0, 1.0, 1.0, width, height)
    return QSignal2D(grid, data)


def qsig_to_image(sig: QSignal2D, clamp="clamp"):
    """Encode a signal as binary PPM bytes.

    The i, j, k parts become R, G, B after clamping to [0, 1] and scaling
    by 255.  The scalar part cannot be represented; its range is returned
    in a stats dict alongside the bytes.

    Parameters
    ----------
    sig : QSignal2D
    clamp : {"clamp", "strict"}
        "clamp" saturates out-of-range channels; "strict" raises if any
        channel leaves [0, 1] by more than 1e-9.

    Returns
    -------
    (bytes, dict)
        PPM bytes and ``{"scalar_min", "scalar_max", "scalar_max_abs"}``.
    """
    rgb = np.transpose(sig.data[..., 1:], (1, 0, 2))
    if clamp == "strict":
        if rgb.min() < -1e-9 or rgb.max() > 1.0 + 1e-9:
            raise ValueError(f"channel range [{rgb.min()}, {rgb.max()}] outside [0, 1]")
    elif clamp != "clamp":
        raise ValueError(f"unknown clamp mode {clamp!r}")
    raster = np.rint(np.clip(rgb, 0.0, 1.0) * 255.0).astype(np.uint8)
    scalar = sig.data[..., 0]
    stats = {
        "scalar_min": float(scalar.min()),
        "scalar_max": float(scalar.max()),
        "scalar_max_abs": float(np.abs(scalar).max()),
    }
    header = f"P6\n{sig.grid.ns} {sig.grid.nt}\n255\n".encode("ascii")
    return header + raster.tobytes(), stats
