"""Batch command-line driver (`qharmonics <subcommand> --flags`).

Exit codes: 0 success, 1 usage error (message on stderr, nothing
written), 2 runtime error (partial outputs deleted).  All numeric output
uses 17 significant digits with '.' decimals so identical inputs give
byte-identical output.  QH_THREADS caps BLAS parallelism (default 1 for
reproducibility); it must be applied before numpy loads, which is why
this module touches the environment at import time.
"""

from __future__ import annotations

import os
import sys

_threads = os.environ.get("QH_THREADS", "1")
for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
             "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
    os.environ.setdefault(_var, _threads)

import argparse  # noqa: E402
import numpy as np  # noqa: E402

from . import fileio, fixtures, smoothing, variation  # noqa: E402
from .errors import QHarmonicsError  # noqa: E402
from .grids import GridSpec, image_to_qsig, l1_norm, linf_diff, qsig_to_image, sample  # noqa: E402
from .qft import FreqWindow, QftKind, Side, qft_forward, qft_inverse  # noqa: E402
from .qlct import LctKind, LctParams, qfrft, qlct_forward, qlct_inverse_sided, qlct_inverse_two_sided  # noqa: E402
from .quaternion import CANONICAL_AXES, AxisPair  # noqa: E402
from .variation import Net  # noqa: E402

__all__ = ["main"]

_G17 = "{:.17g}".format


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _floats(text, n=None, flag=""):
    try:
        vals = tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise _UsageError(f"{flag}: could not parse {text!r} as comma-separated reals")
    if n is not None and len(vals) != n:
        raise _UsageError(f"{flag}: expected {n} comma-separated reals, got {len(vals)}")
    return vals


def _axes(args) -> AxisPair:
    if args.mu1 is None and args.mu2 is None:
        return CANONICAL_AXES
    if args.mu1 is None or args.mu2 is None:
        raise _UsageError("--mu1 and --mu2 must be given together")
    try:
        return AxisPair(np.array(_floats(args.mu1, 3, "--mu1")),
                        np.array(_floats(args.mu2, 3, "--mu2")))
    except QHarmonicsError as exc:
        raise _UsageError(f"invalid axes: {exc}")


def _side(args) -> Side:
    return {"two": Side.TWO_SIDED, "right": Side.RIGHT_SIDED,
            "left": Side.LEFT_SIDED}[args.side]


def _window(args, grid) -> FreqWindow:
    if args.window is None:
        return FreqWindow.natural(grid)
    vals = _floats(args.window, flag="--window")
    if len(vals) == 1:
        vals = (vals[0], vals[0])
    elif len(vals) != 2:
        raise _UsageError("--window takes M or M,N")
    try:
        return FreqWindow(vals[0], vals[1], grid.ns, grid.nt)
    except QHarmonicsError as exc:
        raise _UsageError(f"invalid window: {exc}")


def _matrices(args):
    missing = [f"--{k}" for k in ("a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2")
               if getattr(args, k) is None]
    if missing:
        raise _UsageError(f"missing matrix flags: {', '.join(missing)}")
    try:
        A1 = LctParams(args.a1, args.b1, args.c1, args.d1)
        A2 = LctParams(args.a2, args.b2, args.c2, args.d2)
    except (ValueError, QHarmonicsError) as exc:
        raise _UsageError(f"invalid canonical matrix: {exc}")
    return A1, A2


def _signal_grid(args) -> GridSpec:
    if args.grid < 2:
        raise _UsageError("--grid must be at least 2")
    if args.extent <= 0:
        raise _UsageError("--extent must be positive")
    return GridSpec.centered(args.extent, args.grid)


def _fixture(args):
    try:
        return fixtures.get_fixture(args.fixture)
    except KeyError as exc:
        raise _UsageError(str(exc))


def _point(args):
    return _floats(args.point, 2, "--point")


class _Outputs:
    """Write-through-temp bookkeeping so failures leave no partial files."""

    def __init__(self):
        self.written = []

    def write(self, path, data: bytes):
        tmp = f"{path}.tmp-{os.getpid()}"
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
        self.written.append(path)

    def save_sig(self, sig, path):
        fileio.save_qsig(sig, self._stage(path))

    def save_spec(self, spec, path):
        fileio.save_qspectrum(spec, self._stage(path))

    def _stage(self, path):
        self.written.append(path)
        return path

    def rollback(self):
        for path in self.written:
            try:
                os.unlink(path)
            except OSError:
                pass


def _build_parser():
    top = _Parser(prog="qharmonics", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, prog=f"qharmonics {name}", **kw)
        p.add_argument("--mu1", default=None)
        p.add_argument("--mu2", default=None)
        return p

    def io_flags(p, inp=True, out=True):
        if inp:
            p.add_argument("--in", dest="inp", required=True)
        if out:
            p.add_argument("--out", required=True)

    def grid_flags(p, grid=256, extent=10.0):
        p.add_argument("--grid", type=int, default=grid)
        p.add_argument("--extent", type=float, default=extent)

    def matrix_flags(p):
        for k in ("a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"):
            p.add_argument(f"--{k}", type=float, default=None)

    p = add("qft", help="forward QFT of a QSIG file")
    io_flags(p)
    p.add_argument("--side", choices=("two", "right", "left"), default="two")
    p.add_argument("--window", default=None)

    p = add("iqft", help="inverse QFT of a spectrum file")
    io_flags(p)
    grid_flags(p)

    p = add("qlct", help="forward QLCT of a QSIG file")
    io_flags(p)
    p.add_argument("--side", choices=("two", "right", "left"), default="two")
    p.add_argument("--window", default=None)
    matrix_flags(p)

    p = add("iqlct", help="inverse QLCT of a spectrum file")
    io_flags(p)
    grid_flags(p)

    p = add("qfrft", help="fractional transform of a QSIG file")
    io_flags(p)
    p.add_argument("--side", choices=("two", "right", "left"), default="two")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--window", default=None)
    p.add_argument("--phase-corrected", action="store_true")

    p = add("roundtrip", help="forward+inverse reconstruction errors on a fixture")
    p.add_argument("--fixture", default="gaussian")
    p.add_argument("--side", choices=("two", "right", "left"), default="two")
    grid_flags(p)
    p.add_argument("--window", default="8")
    p.add_argument("--transform", choices=("qft", "qlct"), default="qft")
    matrix_flags(p)

    p = add("jump-demo", help="partial-sum sweep at a point (CSV)")
    p.add_argument("--M", default="25,50,100")
    p.add_argument("--point", default="1,1")
    p.add_argument("--fixture", default="indicator")

    p = add("gauss-mean", help="damped-inversion error sweep (CSV)")
    p.add_argument("--fixture", default="gaussian")
    p.add_argument("--schedule", default="1,0.1,0.01")
    grid_flags(p, grid=128, extent=6.0)
    p.add_argument("--window", default="8")

    p = add("variation", help="bounded-variation report for a fixture or file (CSV)")
    p.add_argument("--fixture", default=None)
    p.add_argument("--in", dest="inp", default=None)
    p.add_argument("--component", choices=("w", "x", "y", "z"), default="w")
    p.add_argument("--bound", type=float, default=1e6)
    grid_flags(p, grid=64, extent=3.0)

    p = add("lc-diag", help="cross-neighborhood strip integral estimates (CSV)")
    p.add_argument("--fixture", default="gaussian")
    p.add_argument("--point", default="0,0")
    p.add_argument("--eps1", type=float, default=0.5)
    p.add_argument("--eps2", type=float, default=0.5)
    p.add_argument("--radius", type=float, default=8.0)

    p = add("img2qsig", help="PPM image to QSIG")
    io_flags(p)

    p = add("qsig2img", help="QSIG to PPM image (scalar-part stats on stdout)")
    io_flags(p)

    p = add("fixtures", help="write the built-in fixtures as QSIG files")
    p.add_argument("--out-dir", required=True)
    grid_flags(p, grid=64, extent=6.0)

    return top


# -- subcommand bodies --------------------------------------------------------

def _cmd_qft(args, out: _Outputs):
    axes = _axes(args)
    sig = fileio.load_qsig(args.inp)
    window = _window(args, sig.grid)
    spec = qft_forward(sig, QftKind(_side(args), axes), window)
    out.save_spec(spec, args.out)


def _cmd_iqft(args, out: _Outputs):
    grid = _signal_grid(args)
    spec = fileio.load_qspectrum(args.inp)
    sig = qft_inverse(spec, spec.kind, grid)
    out.save_sig(sig, args.out)


def _cmd_qlct(args, out: _Outputs):
    axes = _axes(args)
    A1, A2 = _matrices(args)
    sig = fileio.load_qsig(args.inp)
    window = _window(args, sig.grid)
    spec = qlct_forward(sig, LctKind(_side(args), A1, A2, axes), window)
    out.save_spec(spec, args.out)


def _cmd_iqlct(args, out: _Outputs):
    grid = _signal_grid(args)
    spec = fileio.load_qspectrum(args.inp)
    if spec.kind.side is Side.TWO_SIDED:
        sig = qlct_inverse_two_sided(spec, spec.kind, grid)
    else:
        sig = qlct_inverse_sided(spec, spec.kind, grid)
    out.save_sig(sig, args.out)


def _cmd_qfrft(args, out: _Outputs):
    axes = _axes(args)
    sig = fileio.load_qsig(args.inp)
    window = _window(args, sig.grid)
    spec = qfrft(sig, args.alpha, args.beta, _side(args), window, axes,
                 phase_corrected=args.phase_corrected)
    out.save_spec(spec, args.out)


def _cmd_roundtrip(args, out: _Outputs):
    axes = _axes(args)
    fn = _fixture(args)
    side = _side(args)
    grid = _signal_grid(args)
    window = _window(args, grid)
    sig = sample(fn, grid)
    if args.transform == "qft":
        kind = QftKind(side, axes)
        spec = qft_forward(sig, kind, window)
        back = qft_inverse(spec, kind, grid)
    else:
        A1, A2 = _matrices(args)
        kind = LctKind(side, A1, A2, axes)
        spec = qlct_forward(sig, kind, window)
        if side is Side.TWO_SIDED:
            back = qlct_inverse_two_sided(spec, kind, grid)
        else:
            back = qlct_inverse_sided(spec, kind, grid)
    diff = sig.map(lambda d: d - back.data)
    print("fixture,side,transform,l1_error,linf_error")
    print(",".join([args.fixture, args.side, args.transform,
                    _G17(l1_norm(diff)), _G17(linf_diff(sig, back))]))


def _cmd_jump_demo(args, out: _Outputs):
    fn = _fixture(args)
    point = _point(args)
    sweep = _floats(args.M, flag="--M")
    if any(m <= 0 for m in sweep):
        raise _UsageError("--M entries must be positive")
    rect = fixtures.sinc_rect(args.fixture, point)
    eta = smoothing.eta_jump_average(fn, point).value
    print("M,N,I_re,I_i,I_j,I_k,abs_err")
    for m in sweep:
        val = smoothing.dirichlet_partial_inverse_sinc(fn, point, m, m, rect)
        err = float(np.sqrt(np.sum((val - eta) ** 2)))
        print(",".join([_G17(m), _G17(m)] + [_G17(x) for x in val] + [_G17(err)]))


def _cmd_gauss_mean(args, out: _Outputs):
    fn = _fixture(args)
    grid = _signal_grid(args)
    window = _window(args, grid)
    schedule = _floats(args.schedule, flag="--schedule")
    if any(a <= 0 for a in schedule) or any(np.diff(schedule) >= 0):
        raise _UsageError("--schedule must be strictly decreasing positives")
    sig = sample(fn, grid)
    spec = qft_forward(sig, QftKind(Side.TWO_SIDED), window)
    steps = smoothing.gauss_mean_inverse(spec, schedule, reference=sig)
    print("alpha,l1_error")
    for step in steps:
        print(f"{_G17(step.alpha)},{_G17(step.l1_error)}")


def _cmd_variation(args, out: _Outputs):
    if (args.fixture is None) == (args.inp is None):
        raise _UsageError("give exactly one of --fixture or --in")
    if args.inp is not None:
        sig = fileio.load_qsig(args.inp)
    else:
        sig = sample(_fixture(args), _signal_grid(args))
    comp = "wxyz".index(args.component)
    field = sig.data[..., comp]
    net = Net(sig.grid.s, sig.grid.t)
    report = variation.hardy_bvf_check(field, net, bound=args.bound)
    print("vitali,line_var_s,line_var_t,is_hardy_bvf,nets_tested")
    print(report.to_csv_row())


def _cmd_lc_diag(args, out: _Outputs):
    fn = _fixture(args)
    if args.eps1 <= 0 or args.eps2 <= 0:
        raise _UsageError("--eps1/--eps2 must be positive")
    if args.radius <= max(args.eps1, args.eps2):
        raise _UsageError("--radius must exceed the strip half-widths")
    val1, val2 = smoothing.lc_class_diagnostic(
        fn, _point(args), args.eps1, args.eps2, args.radius)
    print("val_s,val_t")
    print(f"{_G17(val1)},{_G17(val2)}")


def _cmd_img2qsig(args, out: _Outputs):
    with open(args.inp, "rb") as fh:
        sig = image_to_qsig(fh.read())
    out.save_sig(sig, args.out)


def _cmd_qsig2img(args, out: _Outputs):
    sig = fileio.load_qsig(args.inp)
    ppm, stats = qsig_to_image(sig)
    out.write(args.out, ppm)
    print("scalar_min,scalar_max,scalar_max_abs")
    print(",".join(_G17(stats[k]) for k in ("scalar_min", "scalar_max", "scalar_max_abs")))


def _cmd_fixtures(args, out: _Outputs):
    grid = _signal_grid(args)
    os.makedirs(args.out_dir, exist_ok=True)
    for name in sorted(fixtures.FIXTURES):
        sig = sample(fixtures.FIXTURES[name], grid)
        out.save_sig(sig, os.path.join(args.out_dir, f"{name}.qsig"))
        print(f"wrote {name}.qsig")


_COMMANDS = {
    "qft": _cmd_qft,
    "iqft": _cmd_iqft,
    "qlct": _cmd_qlct,
    "iqlct": _cmd_iqlct,
    "qfrft": _cmd_qfrft,
    "roundtrip": _cmd_roundtrip,
    "jump-demo": _cmd_jump_demo,
    "gauss-mean": _cmd_gauss_mean,
    "variation": _cmd_variation,
    "lc-diag": _cmd_lc_diag,
    "img2qsig": _cmd_img2qsig,
    "qsig2img": _cmd_qsig2img,
    "fixtures": _cmd_fixtures,
}


def main(argv=None) -> int:
    parser = _build_parser()
    outputs = _Outputs()
    try:
        args = parser.parse_args(argv)
        _COMMANDS[args.command](args, outputs)
    except _UsageError as exc:
        print(f"qharmonics: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001 - boundary of the process
        outputs.rollback()
        print(f"qharmonics: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
