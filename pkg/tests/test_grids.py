import numpy as np
import pytest

import qharmonics.fileio as fileio
from qharmonics.errors import (
    BadMagicError,
    BadPpmError,
    BadVersionError,
    NonFiniteError,
    QsigFormatError,
    ShapeMismatchError,
    TruncatedPayloadError,
)
from qharmonics.fixtures import gaussian, indicator
from qharmonics.grids import (
    GridSpec,
    QSignal2D,
    image_to_qsig,
    l1_norm,
    linf_diff,
    qsig_to_image,
    sample,
)
from qharmonics.qft import FreqWindow, QftKind, Side, qft_forward
from qharmonics.qlct import LctKind, LctParams
from qharmonics.quaternion import AxisPair


def rand_signal(n=8, seed=0, extent=2.0):
    rng = np.random.default_rng(seed)
    return QSignal2D(GridSpec.centered(extent, n), rng.normal(size=(n, n, 4)))


def test_gridspec_validation_and_midpoints():
    with pytest.raises(ValueError):
        GridSpec(0, 0, 0.0, 1.0, 4, 4)
    with pytest.raises(ValueError):
        GridSpec(0, 0, 1.0, 1.0, 0, 4)
    g = GridSpec.centered(2.0, 4)
    np.testing.assert_allclose(g.s, [-1.5, -0.5, 0.5, 1.5])
    np.testing.assert_allclose(g.t, [-1.5, -0.5, 0.5, 1.5])


def test_sample_constant_and_symmetry():
    g = GridSpec.centered(3.0, 16)
    ones = sample(lambda S, T: np.ones(np.broadcast(S, T).shape), g)
    assert np.all(ones.data[..., 0] == 1.0) and np.all(ones.data[..., 1:] == 0.0)
    gs = sample(gaussian, g)
    np.testing.assert_array_equal(gs.data, gs.data[::-1, ::-1])


def test_sample_indicator_interior_count():
    g = GridSpec.centered(2.0, 4)
    ind = sample(indicator, g)
    assert ind.data[..., 0].sum() == 4.0


def test_sample_nonfinite():
    g = GridSpec.centered(1.0, 4)
    with np.errstate(divide="ignore"), pytest.raises(NonFiniteError):
        sample(lambda S, T: 1.0 / (S - S[0, 0]) * np.ones_like(T), g)


def test_l1_norm_constant_and_homogeneous():
    g = GridSpec(0.0, 0.0, 0.1, 0.1, 10, 10)
    ones = sample(lambda S, T: np.ones(np.broadcast(S, T).shape), g)
    assert abs(l1_norm(ones) - 1.0) < 1e-12
    sig = rand_signal(12, seed=5)
    for c in (-2.5, 0.3):
        scaled = QSignal2D(sig.grid, c * sig.data)
        np.testing.assert_allclose(l1_norm(scaled), abs(c) * l1_norm(sig), rtol=1e-12)


def test_l1_norm_gaussian_pi():
    sig = sample(gaussian, GridSpec.centered(6.0, 256))
    assert abs(l1_norm(sig) - np.pi) / np.pi < 1e-6


def test_linf_diff():
    sig = rand_signal()
    assert linf_diff(sig, sig) == 0.0
    with pytest.raises(ShapeMismatchError):
        linf_diff(sig, rand_signal(n=10))


def test_qsig_roundtrip_bit_exact(tmp_path):
    sig = rand_signal()
    path = tmp_path / "x.qsig"
    fileio.save_qsig(sig, path)
    back = fileio.load_qsig(path)
    assert back.grid == sig.grid
    assert back.data.tolist() == sig.data.tolist()
    # resaving is byte-identical
    path2 = tmp_path / "y.qsig"
    fileio.save_qsig(back, path2)
    assert path.read_bytes() == path2.read_bytes()


def test_qsig_payload_byte_layout(tmp_path):
    # documented layout: little-endian, t index slowest in the payload
    g = GridSpec(0.0, 0.0, 1.0, 1.0, 3, 2)
    data = np.arange(3 * 2 * 4, dtype=float).reshape(3, 2, 4)
    path = tmp_path / "layout.qsig"
    fileio.save_qsig(QSignal2D(g, data), path)
    raw = path.read_bytes()
    assert raw[:4] == b"QSG1"
    ns, nt = np.frombuffer(raw, dtype="<u4", count=2, offset=4)
    assert (ns, nt) == (3, 2)
    payload = np.frombuffer(raw, dtype="<f8", offset=44).reshape(2, 3, 4)
    for k in range(3):
        for l in range(2):
            assert payload[l, k].tolist() == data[k, l].tolist()


def test_qsig_format_errors(tmp_path):
    sig = rand_signal(4)
    path = tmp_path / "x.qsig"
    fileio.save_qsig(sig, path)
    raw = bytearray(path.read_bytes())

    bad = tmp_path / "bad.qsig"
    bad.write_bytes(b"NOPE" + bytes(raw[4:]))
    with pytest.raises(BadMagicError):
        fileio.load_qsig(bad)

    bad.write_bytes(b"QSG9" + bytes(raw[4:]))
    with pytest.raises(BadVersionError):
        fileio.load_qsig(bad)

    # header says 4x4 but only 3 quaternions of payload follow
    header = bytes(raw[:4 + 8 + 32])
    bad.write_bytes(header + bytes(raw[44:44 + 3 * 32]))
    with pytest.raises(TruncatedPayloadError):
        fileio.load_qsig(bad)

    bad.write_bytes(bytes(raw) + b"\x00")
    with pytest.raises(QsigFormatError):
        fileio.load_qsig(bad)


def test_spectrum_roundtrip_qft_and_qlct(tmp_path):
    sig = rand_signal(8, seed=9)
    axes = AxisPair(np.array([0.0, 0.6, 0.8]), np.array([1.0, 0.0, 0.0]))
    kind = QftKind(Side.RIGHT_SIDED, axes)
    spec = qft_forward(sig, kind, FreqWindow.square(3.0, 8))
    path = tmp_path / "s.qsp"
    fileio.save_qspectrum(spec, path)
    back = fileio.load_qspectrum(path)
    assert back.kind == spec.kind
    assert back.window == spec.window
    assert back.data.tolist() == spec.data.tolist()

    lkind = LctKind(Side.TWO_SIDED, LctParams(1.0, 1.0, 0.0, 1.0),
                    LctParams(0.0, -1.0, 1.0, 0.0))  # second gets sign-normalized
    from qharmonics.qlct import qlct_forward
    lspec = qlct_forward(sig, lkind, FreqWindow.square(3.0, 8))
    fileio.save_qspectrum(lspec, path)
    lback = fileio.load_qspectrum(path)
    assert lback.kind == lspec.kind
    assert lback.kind.A2.sign_flipped
    assert lback.data.tolist() == lspec.data.tolist()

    with pytest.raises(BadMagicError):
        fileio.load_qsig(path)  # spectra are not signals


def test_ppm_decode_encode():
    white = b"P6\n1 1\n255\n\xff\xff\xff"
    sig = image_to_qsig(white)
    np.testing.assert_array_equal(sig.data[0, 0], [0.0, 1.0, 1.0, 1.0])
    assert np.all(sig.data[..., 0] == 0.0)

    rng = np.random.default_rng(11)
    raster = rng.integers(0, 256, size=(5, 7, 3), dtype=np.uint8)
    ppm = b"P6\n# a comment\n7 5\n255\n" + raster.tobytes()
    sig = image_to_qsig(ppm)
    assert sig.grid.ns == 7 and sig.grid.nt == 5
    out, stats = qsig_to_image(sig)
    assert out == b"P6\n7 5\n255\n" + raster.tobytes()
    assert stats["scalar_max_abs"] == 0.0


def test_ppm_errors():
    with pytest.raises(BadPpmError):
        image_to_qsig(b"P5\n1 1\n255\n\xff")
    with pytest.raises(BadPpmError):
        image_to_qsig(b"P6\n1 1\n65535\n\xff\xff\xff")
    with pytest.raises(BadPpmError):
        image_to_qsig(b"P6\n2 2\n255\n\xff")  # truncated raster
    with pytest.raises(BadPpmError):
        image_to_qsig(b"P6\nx 1\n255\n\xff\xff\xff")


def test_qsig_to_image_modes():
    g = GridSpec(0.0, 0.0, 1.0, 1.0, 2, 2)
    data = np.zeros((2, 2, 4))
    data[..., 1] = 1.5  # out of range
    sig = QSignal2D(g, data)
    out, _ = qsig_to_image(sig, clamp="clamp")
    assert out.endswith(bytes([255, 0, 0] * 4))
    with pytest.raises(ValueError):
        qsig_to_image(sig, clamp="strict")
    with pytest.raises(ValueError):
        qsig_to_image(sig, clamp="bogus")
