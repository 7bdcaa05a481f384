"""Standalone renderer: one figure from flags, or every stanza of a config."""

from __future__ import annotations

import argparse
import sys

from .config import jobs_from_config, parse_center, parse_size
from .figures import KINDS, PlotJob, render


def main(argv=None) -> int:
    p = argparse.ArgumentParser(
        prog="plotkit",
        description="Render point-cloud figures (CSV or TPOT input, PNG output).")
    p.add_argument("--config", default=None,
                   help="render every stanza of a figures.cfg and exit")
    p.add_argument("--input", action="append", default=None,
                   help="point file; repeat to overlay several")
    p.add_argument("--kind", choices=KINDS, default=None)
    p.add_argument("--out", default=None, help="output PNG path")
    p.add_argument("--size", type=parse_size, default=(900, 900),
                   help="image size as WIDTHxHEIGHT")
    p.add_argument("--scheme", default="viridis", help="matplotlib colormap")
    p.add_argument("--center", type=parse_center, default=1j,
                   help="close-up center as re,im")
    p.add_argument("--radius", type=float, default=0.1,
                   help="close-up half-width")
    args = p.parse_args(argv)

    try:
        if args.config is not None:
            jobs = jobs_from_config(args.config)
        else:
            if not (args.input and args.kind and args.out):
                p.error("--input, --kind and --out are required without --config")
            jobs = [PlotJob(inputs=tuple(args.input), kind=args.kind,
                            out=args.out, size=args.size, scheme=args.scheme,
                            center=args.center, radius=args.radius)]
        for job in jobs:
            print(render(job))
        return 0
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
