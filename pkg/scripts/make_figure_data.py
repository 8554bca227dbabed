#!/usr/bin/env python3
"""Regenerate the standard figure datasets through the ewadyn CLI.

Produces, under --out-dir:
  bifurcation_sigma{000,025,050}.csv   long-run states against a, b=0.4
  cobweb_sigma{000,025,050}.csv        staircase data at a=35, b=0.4
  potential_a35_b04.csv                congestion potential for the overlay
  period_diagram_sigma{025,075}.csv    attracting periods over (a,b)
  boundary_sigma{025,075}.csv          analytic flip curves b1/b2 for overlay
  regime_map.csv                       period2/chaos labels over (sigma,b)

Everything goes through `python -m ewadyn`, so the files carry the
self-describing headers and can be re-created from their own metadata.
The full period diagrams run ~1e9 map steps; use --quick for a coarse pass.
"""

import argparse
import subprocess
import sys
from pathlib import Path


def run(out_path: Path, *argv: str) -> None:
    cmd = [sys.executable, "-m", "ewadyn", *argv, "--out", str(out_path)]
    print("  " + " ".join(cmd[2:]))
    subprocess.run(cmd, check=True)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out-dir", default="data/figures", help="output directory")
    ap.add_argument("--threads", default=None, help="sweep workers")
    ap.add_argument("--quick", action="store_true",
                    help="coarse grids and short transients (smoke run)")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    threads = ["--threads", args.threads] if args.threads else []

    a_steps = "120" if args.quick else "600"
    samples = "50" if args.quick else "100"
    transient = "2000" if args.quick else "20000"
    grid = "60" if args.quick else "200"

    print("bifurcation diagrams (b=0.4, a in [1,60]):")
    for sigma, tag in (("0.0", "000"), ("0.25", "025"), ("0.5", "050")):
        run(out / f"bifurcation_sigma{tag}.csv",
            "bifurcation", "--b", "0.4", "--sigma", sigma,
            "--a-min", "1.0", "--a-max", "60.0", "--a-steps", a_steps,
            "--samples-per-a", samples, "--transient", transient, *threads)

    print("cobweb traces (a=35, b=0.4, x0=0.2):")
    for sigma, tag in (("0.0", "000"), ("0.25", "025"), ("0.5", "050")):
        run(out / f"cobweb_sigma{tag}.csv",
            "cobweb", "--a", "35.0", "--b", "0.4", "--sigma", sigma,
            "--x0", "0.2", "--steps", "120")
    run(out / "potential_a35_b04.csv", "potential", "--a", "35.0", "--b", "0.4")

    print("period diagrams (a in [4,54], b in [0,1]):")
    for sigma, tag in (("0.25", "025"), ("0.75", "075")):
        run(out / f"period_diagram_sigma{tag}.csv",
            "period-diagram", "--sigma", sigma,
            "--a-steps", grid, "--b-steps", grid, "--transient", transient, *threads)
        flip_min = 4.0 * (2.0 - float(sigma))
        run(out / f"boundary_sigma{tag}.csv",
            "boundary", "--sigma", sigma, "--a-min", str(flip_min),
            "--a-max", "54.0", "--a-steps", "200")

    print("regime map:")
    run(out / "regime_map.csv", "regime-map", "--sigma-steps", "101", "--b-steps", "101")

    print(f"done; files in {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
