import json

import numpy as np
import pytest

from wcenhance import metrics as metrics_mod
from wcenhance.cli import CSV_HEADER, main
from wcenhance.image_io import load_image, save_image
from wcenhance.pipeline import enhance, evaluate
from wcenhance.synth import make_fixture


@pytest.fixture
def fixture_dir(tmp_path):
    src = tmp_path / "in"
    src.mkdir()
    for k in range(3):
        save_image(make_fixture(300 + k, size=48), src / f"img{k}.png")
    return src


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    assert lines[0] == CSV_HEADER
    return [line.split(",") for line in lines[1:]]


def test_enhance_single_file(tmp_path):
    src = tmp_path / "one.png"
    save_image(make_fixture(42, size=48), src)
    out = tmp_path / "out"
    code = main(["enhance", "--in", str(src), "--out", str(out)])
    assert code == 0
    assert (out / "one.enhanced.png").exists()
    manifest = json.loads((out / "report.json").read_text())
    assert len(manifest["images"]) == 1
    assert manifest["images"][0]["status"] == "ok"
    rows = read_csv(out / "report.csv")
    assert len(rows) == 1 and rows[0][0] == "one.png"


def test_enhance_directory(fixture_dir, tmp_path):
    out = tmp_path / "out"
    code = main(["enhance", "--in", str(fixture_dir), "--out", str(out)])
    assert code == 0
    for k in range(3):
        assert (out / f"img{k}.enhanced.png").exists()
    manifest = json.loads((out / "report.json").read_text())
    assert [e["file"] for e in manifest["images"]] == ["img0.png", "img1.png", "img2.png"]
    assert all(e["status"] == "ok" for e in manifest["images"])
    assert manifest["aggregate"]["ssim"] is not None


def test_enhance_partial_failure(fixture_dir, tmp_path, capsys):
    (fixture_dir / "broken.png").write_bytes(b"not a png")
    out = tmp_path / "out"
    code = main(["enhance", "--in", str(fixture_dir), "--out", str(out)])
    assert code == 1
    manifest = json.loads((out / "report.json").read_text())
    by_file = {e["file"]: e for e in manifest["images"]}
    assert by_file["broken.png"]["status"] == "error"
    assert "broken.png" in by_file["broken.png"]["error"] or by_file["broken.png"]["error"]
    ok = [f for f, e in by_file.items() if e["status"] == "ok"]
    assert sorted(ok) == ["img0.png", "img1.png", "img2.png"]
    # good images still processed, bad one only in the JSON manifest
    rows = read_csv(out / "report.csv")
    assert [r[0] for r in rows] == ["img0.png", "img1.png", "img2.png"]
    assert "broken.png" in capsys.readouterr().err


def test_enhance_dump_intermediates(tmp_path):
    src = tmp_path / "x.png"
    save_image(make_fixture(5, size=48), src)
    out = tmp_path / "out"
    code = main(["enhance", "--in", str(src), "--out", str(out), "--dump-intermediates"])
    assert code == 0
    for suffix in ("In", "L", "rs", "Sc"):
        assert (out / f"x.{suffix}.png").exists()
    hist = json.loads((out / "x.hist.json").read_text())
    assert len(hist["pdf"]) == 256
    assert len(hist["level_exponents"]) == 256
    assert abs(sum(hist["pdf"]) - 1.0) <= 1e-9
    assert abs(hist["cdf"][-1] - 1.0) <= 1e-9


def test_enhance_no_inputs(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code = main(["enhance", "--in", str(empty), "--out", str(tmp_path / "out")])
    assert code == 1
    assert "no PNG inputs" in capsys.readouterr().err


def test_enhance_report_path_flag(tmp_path):
    src = tmp_path / "y.png"
    save_image(make_fixture(6, size=48), src)
    out = tmp_path / "out"
    base = tmp_path / "scores.json"
    code = main(["enhance", "--in", str(src), "--out", str(out), "--report", str(base)])
    assert code == 0
    assert (tmp_path / "scores.json").exists()
    assert (tmp_path / "scores.csv").exists()


def test_csv_rows_match_library(fixture_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["enhance", "--in", str(fixture_dir), "--out", str(out)]) == 0
    rows = {r[0]: r for r in read_csv(out / "report.csv")}
    for k in range(3):
        name = f"img{k}.png"
        img = load_image(fixture_dir / name)
        enhanced, _ = enhance(img)
        rep = evaluate(img, enhanced)
        expected = [name] + rep.csv_values()
        # wall time is the one run-dependent column
        assert rows[name][:8] == expected[:8]


def test_metrics_same_file(tmp_path, capsys):
    p = tmp_path / "m.png"
    save_image(make_fixture(8, size=48), p)
    code = main(["metrics", "--orig", str(p), "--enh", str(p)])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["loe"] == 0.0
    assert data["ssim"] == 1.0
    assert data["cef"] == 1.0
    assert data["psnr"] == "inf"
    assert data["wall_time_ms"] == 0.0


# every value below was computed from the brute-force reference paths in
# oracles.py (entropy/pdf loops, pairwise inversion count, windowed SSIM,
# direct colorfulness and PSNR formulas) on the seed-901/902 fixture pair,
# then rounded to 6 significant digits like the CLI emits
GOLDEN_METRICS_JSON = (
    '{"cef": 0.953055, "irmle_enh": 2.82065, "irmle_orig": 3.08488, '
    '"irmle_ratio": 0.914348, "loe": 49.4526, "psnr": 9.40833, '
    '"ssim": 0.154859, "wall_time_ms": 0.0}'
)


def test_metrics_golden_pair(tmp_path, capsys):
    a = tmp_path / "orig.png"
    b = tmp_path / "enh.png"
    save_image(make_fixture(901, size=32), a)
    save_image(make_fixture(902, size=32), b)
    code = main(["metrics", "--orig", str(a), "--enh", str(b)])
    assert code == 0
    assert capsys.readouterr().out == GOLDEN_METRICS_JSON + "\n"


def test_metrics_size_mismatch(tmp_path, capsys):
    a = tmp_path / "a.png"
    b = tmp_path / "b.png"
    save_image(make_fixture(1, size=48), a)
    save_image(make_fixture(2, size=64), b)
    code = main(["metrics", "--orig", str(a), "--enh", str(b)])
    assert code == 1
    assert "sizes differ" in capsys.readouterr().err


def test_metrics_missing_file(tmp_path, capsys):
    a = tmp_path / "a.png"
    save_image(make_fixture(1, size=48), a)
    code = main(["metrics", "--orig", str(a), "--enh", str(tmp_path / "nope.png")])
    assert code == 1
    assert capsys.readouterr().err


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enhance", "--in"])
    assert exc.value.code == 2


def test_unknown_subcommand_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["transmogrify"])
    assert exc.value.code == 2


def test_config_file_applied(tmp_path, capsys):
    p = tmp_path / "m.png"
    save_image(make_fixture(8, size=48), p)
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text("psnr_plane = intensity\n")
    code = main(["metrics", "--orig", str(p), "--enh", str(p), "--config", str(cfg_file)])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["psnr"] == "inf"


def test_config_rejections_exit_2(tmp_path, capsys):
    p = tmp_path / "m.png"
    save_image(make_fixture(8, size=48), p)
    for body in ("gaussian_size = 4\n", "wibble = 1\n", "um_gain = wat\n"):
        cfg_file = tmp_path / "cfg.txt"
        cfg_file.write_text(body)
        code = main(["metrics", "--orig", str(p), "--enh", str(p), "--config", str(cfg_file)])
        assert code == 2
        assert "config error" in capsys.readouterr().err


def test_empty_config_is_defaults(tmp_path, capsys):
    p = tmp_path / "m.png"
    save_image(make_fixture(8, size=48), p)
    cfg_file = tmp_path / "cfg.txt"
    cfg_file.write_text("")
    code = main(["metrics", "--orig", str(p), "--enh", str(p), "--config", str(cfg_file)])
    assert code == 0


def test_jobs_parallel_matches_serial(fixture_dir, tmp_path):
    out1 = tmp_path / "serial"
    out2 = tmp_path / "parallel"
    assert main(["enhance", "--in", str(fixture_dir), "--out", str(out1)]) == 0
    assert main(["enhance", "--in", str(fixture_dir), "--out", str(out2), "--jobs", "3"]) == 0
    for k in range(3):
        a = (out1 / f"img{k}.enhanced.png").read_bytes()
        b = (out2 / f"img{k}.enhanced.png").read_bytes()
        assert a == b


def test_irmle_ratio_equals_quotient(fixture_dir, tmp_path):
    out = tmp_path / "out"
    assert main(["enhance", "--in", str(fixture_dir), "--out", str(out)]) == 0
    manifest = json.loads((out / "report.json").read_text())
    for entry in manifest["images"]:
        m = entry["metrics"]
        assert m["irmle_ratio"] == pytest.approx(
            m["irmle_enh"] / m["irmle_orig"], rel=1e-4
        )
