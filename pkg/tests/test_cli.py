import numpy as np

import qharmonics.fileio as fileio
from qharmonics.cli import main
from qharmonics.grids import GridSpec, linf_diff, sample
from qharmonics.fixtures import gaussian


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_roundtrip_prints_errors_and_succeeds(capsys):
    code, out, err = run(capsys, "roundtrip", "--fixture", "gaussian",
                         "--side", "two", "--grid", "128", "--extent", "10",
                         "--window", "8")
    assert code == 0 and err == ""
    header, row = out.strip().splitlines()
    assert header == "fixture,side,transform,l1_error,linf_error"
    fields = row.split(",")
    assert fields[:3] == ["gaussian", "two", "qft"]
    assert float(fields[4]) < 1e-4


def test_usage_errors_exit_1(capsys, tmp_path):
    code, out, err = run(capsys, "qft")
    assert code == 1 and "required" in err and out == ""

    code, out, err = run(capsys, "roundtrip", "--grid", "0")
    assert code == 1 and "at least 2" in err

    code, out, err = run(capsys, "roundtrip", "--fixture", "nope")
    assert code == 1 and "unknown fixture" in err

    code, out, err = run(capsys, "qlct", "--in", "x", "--out", "y", "--a1", "1")
    assert code == 1 and "missing matrix flags" in err

    code, out, err = run(capsys, "jump-demo", "--M", "25,oops")
    assert code == 1 and "comma-separated" in err

    code, out, err = run(capsys, "gauss-mean", "--schedule", "0.1,1")
    assert code == 1 and "decreasing" in err

    code, out, err = run(capsys, "bogus-subcommand")
    assert code == 1


def test_runtime_errors_exit_2_nothing_left_behind(capsys, tmp_path):
    out_path = tmp_path / "never.qsp"
    code, _, err = run(capsys, "qft", "--in", str(tmp_path / "missing.qsig"),
                       "--out", str(out_path))
    assert code == 2 and err != ""
    assert not out_path.exists()

    bad = tmp_path / "bad.qsig"
    bad.write_bytes(b"JUNKJUNKJUNK")
    code, _, err = run(capsys, "qft", "--in", str(bad), "--out", str(out_path))
    assert code == 2 and "magic" in err
    assert not out_path.exists()

    bad_ppm = tmp_path / "bad.ppm"
    bad_ppm.write_bytes(b"P5\n1 1\n255\n\x00")
    code, _, err = run(capsys, "img2qsig", "--in", str(bad_ppm),
                       "--out", str(tmp_path / "x.qsig"))
    assert code == 2
    assert not (tmp_path / "x.qsig").exists()


def test_fixtures_and_transform_pipeline(capsys, tmp_path):
    fx = tmp_path / "fx"
    code, out, _ = run(capsys, "fixtures", "--out-dir", str(fx),
                       "--grid", "64", "--extent", "10")
    assert code == 0
    assert sorted(p.name for p in fx.iterdir()) == [
        "gaussian.qsig", "heatgauss.qsig", "indicator.qsig", "qgaussian.qsig"]

    spec_path = tmp_path / "g.qsp"
    code, *_ = run(capsys, "qft", "--in", str(fx / "gaussian.qsig"),
                   "--out", str(spec_path), "--window", "8")
    assert code == 0
    back_path = tmp_path / "g_back.qsig"
    code, *_ = run(capsys, "iqft", "--in", str(spec_path),
                   "--out", str(back_path), "--grid", "64", "--extent", "10")
    assert code == 0
    orig = fileio.load_qsig(fx / "gaussian.qsig")
    back = fileio.load_qsig(back_path)
    assert linf_diff(orig, back) < 1e-4

    lspec = tmp_path / "l.qsp"
    code, *_ = run(capsys, "qlct", "--in", str(fx / "qgaussian.qsig"),
                   "--out", str(lspec), "--side", "right", "--window", "8",
                   "--a1", "1", "--b1", "1", "--c1", "0", "--d1", "1",
                   "--a2", "1", "--b2", "1", "--c2", "0", "--d2", "1")
    assert code == 0
    lback = tmp_path / "l_back.qsig"
    code, *_ = run(capsys, "iqlct", "--in", str(lspec), "--out", str(lback),
                   "--grid", "64", "--extent", "10")
    assert code == 0
    assert linf_diff(fileio.load_qsig(fx / "qgaussian.qsig"),
                     fileio.load_qsig(lback)) < 1e-4


def test_jump_demo_csv(capsys):
    code, out, _ = run(capsys, "jump-demo", "--M", "25,50,100")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "M,N,I_re,I_i,I_j,I_k,abs_err"
    assert len(lines) == 4
    errs = [float(line.split(",")[-1]) for line in lines[1:]]
    assert errs[0] > errs[1] > errs[2]
    assert errs[-1] < 0.03


def test_gauss_mean_csv(capsys):
    code, out, _ = run(capsys, "gauss-mean", "--fixture", "gaussian",
                       "--schedule", "1,0.1", "--grid", "64", "--extent", "6",
                       "--window", "8")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "alpha,l1_error"
    vals = [float(line.split(",")[1]) for line in lines[1:]]
    assert vals[0] > vals[1]


def test_variation_and_lc_diag_csv(capsys, tmp_path):
    code, out, _ = run(capsys, "variation", "--fixture", "gaussian",
                       "--grid", "64", "--extent", "3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "vitali,line_var_s,line_var_t,is_hardy_bvf,nets_tested"
    assert lines[1].split(",")[3] == "true"

    code, _, err = run(capsys, "variation", "--fixture", "gaussian",
                       "--in", "also.qsig")
    assert code == 1 and "exactly one" in err

    code, out, _ = run(capsys, "lc-diag", "--fixture", "gaussian",
                       "--point", "0,0", "--eps1", "0.5", "--eps2", "0.5",
                       "--radius", "6")
    assert code == 0
    assert out.splitlines()[0] == "val_s,val_t"


def test_image_pipeline_and_stats(capsys, tmp_path):
    rng = np.random.default_rng(5)
    raster = rng.integers(0, 256, size=(4, 6, 3), dtype=np.uint8)
    ppm = tmp_path / "img.ppm"
    ppm.write_bytes(b"P6\n6 4\n255\n" + raster.tobytes())
    qsig = tmp_path / "img.qsig"
    code, *_ = run(capsys, "img2qsig", "--in", str(ppm), "--out", str(qsig))
    assert code == 0
    out_ppm = tmp_path / "round.ppm"
    code, out, _ = run(capsys, "qsig2img", "--in", str(qsig),
                       "--out", str(out_ppm))
    assert code == 0
    assert out.splitlines()[0] == "scalar_min,scalar_max,scalar_max_abs"
    assert out_ppm.read_bytes() == ppm.read_bytes()


def test_determinism_same_argv_same_bytes(capsys, tmp_path):
    sig = sample(gaussian, GridSpec.centered(6.0, 32))
    src = tmp_path / "g.qsig"
    fileio.save_qsig(sig, src)
    outs = []
    stdouts = []
    for i in range(2):
        dst = tmp_path / f"out{i}.qsp"
        code, out, _ = run(capsys, "qft", "--in", str(src), "--out", str(dst),
                           "--window", "4")
        assert code == 0
        outs.append(dst.read_bytes())
        stdouts.append(out)
    assert outs[0] == outs[1]
    assert stdouts[0] == stdouts[1]

    for _ in range(2):
        code, out, _ = run(capsys, "jump-demo", "--M", "25")
        assert code == 0
        stdouts.append(out)
    assert stdouts[-1] == stdouts[-2]


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    assert "subcommand" in out or "qharmonics" in out
