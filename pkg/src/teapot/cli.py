"""Command-line front end.

Bulk commands (enumerate, teapot, preperiodic) write a point file and print
run statistics as JSON; single-result commands print one JSON record to
stdout.  Exit codes: 0 success, 1 domain error, 2 usage error.  Complex
numbers are written on the command line as `re,im` (a bare real also
works).  If a `figures.cfg` file sits next to a bulk command's output, the
plotting package is invoked on it when installed; when it is missing the
run still succeeds with a warning.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, dataset, ifs, rootfind, words
from .polynomials import IntPolynomial, parry_polynomial, remove_trivial_factors


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected re,im or a real number, got {text!r}")


def _parse_word(text: str) -> tuple[int, ...]:
    if not text or any(ch not in "01" for ch in text):
        raise argparse.ArgumentTypeError(f"word must be a nonempty 0/1 string, got {text!r}")
    return tuple(int(ch) for ch in text)


def _parse_poly(text: str) -> IntPolynomial:
    try:
        desc = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return IntPolynomial(tuple(reversed(desc)))


def _emit(record: dict):
    print(json.dumps(record))


def _maybe_render_figures(out_path: str):
    cfg = Path(out_path).resolve().parent / "figures.cfg"
    if not cfg.is_file():
        return
    try:
        import plotkit
    except ImportError:
        print("warning: figures.cfg present but the plotting package is not "
              "installed; skipping figure render", file=sys.stderr)
        return
    for job in plotkit.jobs_from_config(str(cfg)):
        path = plotkit.render(job)
        print(f"rendered {path}", file=sys.stderr)


def _stats_record(stats: dataset.EnumStats, out: str, fmt: str) -> dict:
    return {
        "out": out,
        "format": fmt,
        "words": stats.total_words(),
        "admissible_counts": {str(k): v for k, v in sorted(stats.admissible_counts.items())},
        "dominant_counts": {str(k): v for k, v in sorted(stats.dominant_counts.items())},
        "polynomials": stats.total_polynomials,
        "roots": stats.total_roots,
        "solver_failures": stats.solver_failures,
        "wall_time": stats.wall_time,
    }


def _cmd_cloud(source: str):
    def run(args) -> int:
        bound = args.max_total if source == "preperiodic" else args.max_len
        stats = dataset.build_point_cloud(source, bound, args.out,
                                          fmt=args.format, threads=args.threads)
        _emit(_stats_record(stats, args.out, args.format))
        _maybe_render_figures(args.out)
        return 0
    return run


def cmd_membership(args) -> int:
    q = ifs.exclusion_test(args.z, args.depth)
    _emit({
        "z": [q.z.real, q.z.imag],
        "depth": q.depth,
        "verdict": q.verdict,
        "exclusion_min": q.exclusion_min,
        "ball_radius": q.ball_radius,
        "survivors": q.survivors,
    })
    return 0


def cmd_gaps(args) -> int:
    spec = ifs.gap_radius(args.ring, args.d, args.x, args.n)
    record = {
        "ring": spec.ring_kind,
        "d": spec.d,
        "x": [spec.x.real, spec.x.imag],
        "n": spec.n,
        "c": spec.c,
        "r": spec.r,
    }
    if args.cloud:
        ok, offenders = ifs.verify_gap(spec, args.cloud)
        record["ok"] = ok
        record["offender_count"] = len(offenders)
        record["offenders"] = [[z.real, z.imag, dist] for z, dist in offenders[:5]]
    _emit(record)
    return 0


def cmd_double(args) -> int:
    w = words.Word.periodic(args.word)
    doubled = words.period_double(w)
    _emit({
        "word": "".join(map(str, w.letters)),
        "double": "".join(map(str, doubled.letters)),
    })
    return 0


def cmd_roots(args) -> int:
    if args.word is not None:
        poly = parry_polynomial(words.Word.periodic(args.word))
    else:
        poly = args.poly
    reduced = remove_trivial_factors(poly, minus_one=True)
    record = {"poly": list(reduced.coeffs_descending())}
    if reduced.degree < 1:
        record.update({"roots": [], "leading": None})
        _emit(record)
        return 0
    rs = rootfind.all_roots(reduced)
    record["roots"] = [[z.real, z.imag, m] for z, m in rs.roots]
    try:
        record["leading"] = rootfind.leading_root(poly)
    except ValueError:
        record["leading"] = None
    _emit(record)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="teapot",
        description="Tent-map symbolic dynamics: admissible words, their "
                    "polynomials, root point clouds, IFS exclusion and gap checks.")
    p.add_argument("--version", action="version",
                   version=f"teapot {__version__} (tpot format {dataset.TPOT_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    def add_cloud(name, source, help_text):
        sp = sub.add_parser(name, help=help_text)
        if source == "preperiodic":
            sp.add_argument("--max-total", type=int, required=True,
                            help="bound on preperiod + period length")
        else:
            sp.add_argument("--max-len", type=int, required=True,
                            help="bound on word length")
        sp.add_argument("--out", required=True, help="output point file")
        sp.add_argument("--format", choices=("csv", "binary"), default="csv")
        sp.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: TEAPOT_THREADS or all cores)")
        sp.set_defaults(func=_cmd_cloud(source))

    add_cloud("enumerate", "periodic",
              "enumerate admissible words and write their root cloud")
    add_cloud("teapot", "teapot",
              "build the three-dimensional (z, lambda) point cloud")
    add_cloud("preperiodic", "preperiodic",
              "build the root cloud of strictly preperiodic itineraries")

    sp = sub.add_parser("membership", help="inverse-orbit exclusion test for a point")
    sp.add_argument("--z", type=_parse_complex, required=True)
    sp.add_argument("--depth", type=int, required=True)
    sp.set_defaults(func=cmd_membership)

    sp = sub.add_parser("gaps", help="gap radius around a ring element, optionally checked against a cloud")
    sp.add_argument("--ring", choices=("integer", "half"), default="integer",
                    help="integer: Z[sqrt(-D)]; half: Z[(1+sqrt(-D))/2]")
    sp.add_argument("--d", type=int, default=1, help="D in {1,2,3,5}")
    sp.add_argument("--x", type=_parse_complex, required=True)
    sp.add_argument("--n", type=int, required=True, help="postcritical length bound")
    sp.add_argument("--cloud", default=None, help="point file to check the gap against")
    sp.set_defaults(func=cmd_gaps)

    sp = sub.add_parser("double", help="period doubling of an admissible word")
    sp.add_argument("--word", type=_parse_word, required=True)
    sp.set_defaults(func=cmd_double)

    sp = sub.add_parser("roots", help="roots of a word's polynomial (or an explicit one)")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--word", type=_parse_word, default=None)
    group.add_argument("--poly", type=_parse_poly, default=None,
                       help="descending integer coefficients, comma separated")
    sp.set_defaults(func=cmd_roots)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
