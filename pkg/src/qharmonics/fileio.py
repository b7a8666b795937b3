"""Versioned little-endian containers for signals and spectra.

Signal files (magic ``QSG1``)::

    "QSG1" | u32 ns | u32 nt | f64 s_min | f64 t_min | f64 ds | f64 dt
          | payload ns*nt*4 f64 (w, x, y, z per sample, row-major,
            t-major rows: the t index varies slowest)

Spectrum files (magic ``QSP1``) insert a provenance block between the
grid header and the payload::

    u8 kind tag | u8 flags | 6 f64 axes (mu1 xyz, mu2 xyz)
    | f64 u_max | f64 v_max | u32 nu | u32 nv
    | [QLCT tags only] 8 f64 (a1 b1 c1 d1 a2 b2 c2 d2)

Kind tags: 1 two-sided QFT, 2 right QFT, 3 left QFT, 4 two-sided QLCT,
5 right QLCT, 6 left QLCT.  Flags: bit0 fractional phase corrected,
bit1/bit2 per-axis matrix sign normalization.  All loads round-trip
saves bit-exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    BadMagicError,
    BadVersionError,
    QsigFormatError,
    TruncatedPayloadError,
)
from .grids import GridSpec, QSignal2D, QSpectrum2D
from .qft import FreqWindow, QftKind, Side
from .qlct import LctKind, LctParams
from .quaternion import AxisPair

__all__ = ["save_qsig", "load_qsig", "save_qspectrum", "load_qspectrum"]

_SIDES = (Side.TWO_SIDED, Side.RIGHT_SIDED, Side.LEFT_SIDED)
_U4 = np.dtype("<u4")
_F8 = np.dtype("<f8")


def _grid_header(grid: GridSpec) -> bytes:
    return (np.array([grid.ns, grid.nt], dtype=_U4).tobytes()
            + np.array([grid.s_min, grid.t_min, grid.ds, grid.dt], dtype=_F8).tobytes())


def _payload(data) -> bytes:
    # t-major rows: serialize with the t index varying slowest
    return np.ascontiguousarray(data.transpose(1, 0, 2), dtype=_F8).tobytes()


class _Reader:
    def __init__(self, buf):
        self.buf = buf
        self.pos = 0

    def take(self, dtype, count):
        nbytes = dtype.itemsize * count
        if self.pos + nbytes > len(self.buf):
            raise TruncatedPayloadError(
                f"need {nbytes} bytes at offset {self.pos}, have {len(self.buf) - self.pos}")
        out = np.frombuffer(self.buf, dtype=dtype, count=count, offset=self.pos)
        self.pos += nbytes
        return out

    def done(self):
        if self.pos != len(self.buf):
            raise QsigFormatError(f"{len(self.buf) - self.pos} trailing bytes")


def _check_magic(buf, family):
    if len(buf) < 4 or buf[:3] != family:
        raise BadMagicError(f"bad magic {bytes(buf[:4])!r}")
    if buf[3:4] != b"1":
        raise BadVersionError(f"unsupported version byte {bytes(buf[3:4])!r}")


def _read_grid(rd: _Reader) -> GridSpec:
    ns, nt = (int(x) for x in rd.take(_U4, 2))
    s_min, t_min, ds, dt = (float(x) for x in rd.take(_F8, 4))
    try:
        return GridSpec(s_min, t_min, ds, dt, ns, nt)
    except ValueError as exc:
        raise QsigFormatError(f"invalid grid header: {exc}") from None


def _read_payload(rd: _Reader, grid: GridSpec):
    flat = rd.take(_F8, grid.ns * grid.nt * 4)
    return np.ascontiguousarray(
        flat.reshape(grid.nt, grid.ns, 4).transpose(1, 0, 2)).astype(float)


def save_qsig(sig: QSignal2D, path):
    with open(path, "wb") as fh:
        fh.write(b"QSG1" + _grid_header(sig.grid) + _payload(sig.data))


def load_qsig(path) -> QSignal2D:
    with open(path, "rb") as fh:
        buf = fh.read()
    _check_magic(buf, b"QSG")
    rd = _Reader(buf)
    rd.pos = 4
    grid = _read_grid(rd)
    data = _read_payload(rd, grid)
    rd.done()
    return QSignal2D(grid, data)


def _kind_tag(kind) -> int:
    base = {"qft": 1, "qlct": 4}[kind.family]
    return base + _SIDES.index(kind.side)


def save_qspectrum(spec: QSpectrum2D, path):
    kind = spec.kind
    if spec.window is None:
        raise QsigFormatError("spectrum has no window metadata to serialize")
    flags = 0
    if getattr(kind, "phase_corrected", False):
        flags |= 1
    if kind.family == "qlct":
        flags |= (kind.A1.sign_flipped << 1) | (kind.A2.sign_flipped << 2)
    block = bytes([_kind_tag(kind), flags])
    block += np.array(np.concatenate([kind.axes.mu1, kind.axes.mu2]), dtype=_F8).tobytes()
    block += np.array([spec.window.u_max, spec.window.v_max], dtype=_F8).tobytes()
    block += np.array([spec.window.nu, spec.window.nv], dtype=_U4).tobytes()
    if kind.family == "qlct":
        block += np.array(kind.A1.astuple() + kind.A2.astuple(), dtype=_F8).tobytes()
    with open(path, "wb") as fh:
        fh.write(b"QSP1" + _grid_header(spec.grid) + block + _payload(spec.data))


def load_qspectrum(path) -> QSpectrum2D:
    with open(path, "rb") as fh:
        buf = fh.read()
    _check_magic(buf, b"QSP")
    rd = _Reader(buf)
    rd.pos = 4
    grid = _read_grid(rd)
    tag, flags = rd.take(np.dtype("u1"), 2)
    if not 1 <= tag <= 6:
        raise QsigFormatError(f"unknown kind tag {tag}")
    axes_vals = rd.take(_F8, 6)
    axes = AxisPair(axes_vals[:3].copy(), axes_vals[3:].copy())
    u_max, v_max = (float(x) for x in rd.take(_F8, 2))
    nu, nv = (int(x) for x in rd.take(_U4, 2))
    window = FreqWindow(u_max, v_max, nu, nv)
    side = _SIDES[(tag - 1) % 3]
    if tag <= 3:
        kind = QftKind(side, axes)
    else:
        mats = [float(x) for x in rd.take(_F8, 8)]
        A1 = LctParams(*mats[:4], sign_flipped=bool(flags & 2), normalize=False)
        A2 = LctParams(*mats[4:], sign_flipped=bool(flags & 4), normalize=False)
        kind = LctKind(side, A1, A2, axes, phase_corrected=bool(flags & 1))
    data = _read_payload(rd, grid)
    rd.done()
    return QSpectrum2D(grid, data, kind, window)
