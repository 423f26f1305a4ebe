"""Command-line front end: batch enhancement and standalone pair scoring.

    wcenhance enhance --in <dir|file> --out <dir> [--config F] [--jobs N]
                      [--report PATH] [--dump-intermediates]
    wcenhance metrics --orig <file> --enh <file> [--config F]

`enhance` writes X.enhanced.png per input plus a JSON manifest and a CSV
(one row per successfully processed image, lexicographic by filename).
Exit codes: 0 all ok, 1 any per-file failure, 2 bad flags or bad config.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import kernels
from .config import EnhanceConfig, load_config
from .errors import ConfigError, WcenhanceError
from .image_io import gray_image, load_image, save_image
from .metrics import MetricsReport, metric_to_json
from .pipeline import DebugBundle, enhance, evaluate

CSV_HEADER = "file,irmle_orig,irmle_enh,irmle_ratio,cef,loe,psnr,ssim,wall_time_ms"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wcenhance",
        description="Enhance dark capsule-endoscopy-style PNG images and score the results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enh = sub.add_parser("enhance", help="enhance a PNG file or a directory of PNGs")
    enh.add_argument("--in", dest="input", required=True, help="input PNG file or directory")
    enh.add_argument("--out", dest="output", required=True, help="output directory")
    enh.add_argument("--config", help="flat key=value config file")
    enh.add_argument("--report", help="report base path (writes PATH.json and PATH.csv)")
    enh.add_argument(
        "--dump-intermediates",
        action="store_true",
        help="also write per-image intermediate planes and histogram JSON",
    )
    enh.add_argument("--jobs", type=int, default=1, help="concurrent images (default 1)")
    enh.set_defaults(func=cmd_enhance)

    met = sub.add_parser("metrics", help="score an original/enhanced pair")
    met.add_argument("--orig", required=True, help="original PNG")
    met.add_argument("--enh", required=True, help="enhanced PNG")
    met.add_argument("--config", help="flat key=value config file")
    met.set_defaults(func=cmd_metrics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else EnhanceConfig()
    except ConfigError as exc:
        print(f"wcenhance: config error: {exc}", file=sys.stderr)
        return 2
    return args.func(args, cfg)


# ---------------------------------------------------------------------------
# enhance


def _gather_inputs(raw: str) -> list[Path]:
    path = Path(raw)
    if path.is_dir():
        return sorted(p for p in path.iterdir() if p.suffix.lower() == ".png")
    return [path]


def _dump_intermediates(out_dir: Path, stem: str, bundle: DebugBundle) -> None:
    save_image(gray_image(bundle.norm_plane), out_dir / f"{stem}.In.png")
    if bundle.degenerate:
        return
    save_image(gray_image(bundle.transformed), out_dir / f"{stem}.L.png")
    save_image(gray_image(bundle.sharpened), out_dir / f"{stem}.rs.png")
    save_image(
        gray_image(np.clip(bundle.raw_saturation, 0.0, 1.0)), out_dir / f"{stem}.Sc.png"
    )
    with open(out_dir / f"{stem}.hist.json", "w", encoding="utf-8") as fh:
        json.dump(bundle.histogram.to_json_dict(), fh)
        fh.write("\n")


def _process_one(path: Path, out_dir: Path, cfg: EnhanceConfig, dump: bool) -> dict:
    row = {"file": path.name}
    try:
        img = load_image(path)
        t0 = time.perf_counter()
        enhanced, bundle = enhance(img, cfg)
        elapsed_ms = (time.perf_counter() - t0) * 1000.0
        save_image(enhanced, out_dir / f"{path.stem}.enhanced.png")
        if dump:
            _dump_intermediates(out_dir, path.stem, bundle)
        report = evaluate(img, enhanced, cfg, wall_time_ms=elapsed_ms)
    except WcenhanceError as exc:
        row["status"] = "error"
        row["error"] = str(exc)
        return row
    row["status"] = "ok"
    row["report"] = report
    return row


def _aggregate(reports: list[MetricsReport]) -> dict:
    agg = {}
    for name in MetricsReport.FIELDS:
        values = [getattr(r, name) for r in reports if getattr(r, name) is not None]
        agg[name] = metric_to_json(sum(values) / len(values)) if values else None
    return agg


def _report_paths(args, out_dir: Path) -> tuple[Path, Path]:
    if args.report:
        base = Path(args.report)
        if base.suffix in (".json", ".csv"):
            base = base.with_suffix("")
        return base.with_suffix(".json"), base.with_suffix(".csv")
    return out_dir / "report.json", out_dir / "report.csv"


def cmd_enhance(args, cfg: EnhanceConfig) -> int:
    inputs = _gather_inputs(args.input)
    if not inputs:
        print(f"wcenhance: no PNG inputs found under {args.input}", file=sys.stderr)
        return 1
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = max(1, args.jobs)

    kernels.warmup()
    if jobs == 1:
        rows = [_process_one(p, out_dir, cfg, args.dump_intermediates) for p in inputs]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    lambda p: _process_one(p, out_dir, cfg, args.dump_intermediates),
                    inputs,
                )
            )
    rows.sort(key=lambda r: r["file"])

    ok_reports = [r["report"] for r in rows if r["status"] == "ok"]
    manifest = {
        "config": cfg.to_dict(),
        "inputs": [str(p) for p in inputs],
        "output_dir": str(out_dir),
        "images": [
            {
                "file": r["file"],
                "status": r["status"],
                **(
                    {"metrics": r["report"].to_json_dict()}
                    if r["status"] == "ok"
                    else {"error": r["error"]}
                ),
            }
            for r in rows
        ],
        "aggregate": _aggregate(ok_reports),
    }

    json_path, csv_path = _report_paths(args, out_dir)
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            if r["status"] == "ok":
                fh.write(",".join([r["file"]] + r["report"].csv_values()) + "\n")

    failures = [r for r in rows if r["status"] == "error"]
    for r in failures:
        print(f"wcenhance: {r['file']}: {r['error']}", file=sys.stderr)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# metrics


def cmd_metrics(args, cfg: EnhanceConfig) -> int:
    kernels.warmup()
    try:
        orig = load_image(args.orig)
        enh = load_image(args.enh)
        report = evaluate(orig, enh, cfg)
    except WcenhanceError as exc:
        print(f"wcenhance: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(report.to_json_dict(), sort_keys=True))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
