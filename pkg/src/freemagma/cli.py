"""Command-line front end.

Subcommands: enumerate, count, transform, density, longitudinal, motzkin,
verify.  Outputs are deterministic for a given configuration and written
atomically (temp file + rename).  Exit codes: 0 success, 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .density import density_report, estimate_density, longitudinal_asymptote, write_trace_csv
from .errors import FreeMagmaError
from .motzkin_paths import PathSpec, count_paths, enumerate_paths
from .sequences import BigSeq, cat_transform, read_sequence_csv
from .subgroupoids import counting_sequence, parse_family, semigroup_info
from .terms import enumerate_terms, format_term
from .verify import verify_all

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _ensure_writable_dir(path: Path) -> None:
    path.mkdir(parents=True, exist_ok=True)
    probe = path / ".write-probe"
    try:
        probe.write_text("")
    except OSError as exc:
        raise FreeMagmaError(f"output directory {path} is not writable: {exc}") from exc
    finally:
        if probe.exists():
            probe.unlink()


def _emit(text: str, out: str | None) -> None:
    if out:
        _atomic_write(Path(out), text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _sequence_text(seq: BigSeq, fmt: str, meta: dict) -> str:
    if fmt == "csv":
        lines = ["n,value"] + [f"{n},{v}" for n, v in enumerate(seq, start=1)]
        return "\n".join(lines)
    if fmt == "json":
        payload = dict(meta)
        payload["values"] = {str(n): str(v) for n, v in enumerate(seq, start=1)}
        return json.dumps(payload, indent=2)
    return "\n".join(f"n={n} {v}" for n, v in enumerate(seq, start=1))


def _cmd_enumerate(args: argparse.Namespace) -> int:
    terms = enumerate_terms(args.n, cap=args.cap)
    if args.format == "json":
        text = json.dumps(
            {"length": args.n, "count": len(terms), "terms": [format_term(t) for t in terms]},
            indent=2,
        )
    elif args.format == "csv":
        lines = ["index,term"] + [f"{i},{format_term(t)}" for i, t in enumerate(terms, start=1)]
        text = "\n".join(lines)
    else:
        text = "\n".join(format_term(t) for t in terms)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_count(args: argparse.Namespace) -> int:
    family = parse_family(args.family)
    seq = counting_sequence(family, args.n)
    text = _sequence_text(seq, args.format, {"family": args.family, "n_max": args.n})
    _emit(text, args.out)
    return EXIT_OK


def _cmd_transform(args: argparse.Namespace) -> int:
    if args.seqfile:
        seq = read_sequence_csv(args.seqfile)
    else:
        seq = BigSeq(int(v) for v in args.values.split(","))
    if args.n:
        seq = seq.padded(args.n)
    out = cat_transform(seq)
    text = _sequence_text(out, args.format, {"n_max": len(out)})
    _emit(text, args.out)
    return EXIT_OK


def _cmd_density(args: argparse.Namespace) -> int:
    if args.precision < 6:
        raise FreeMagmaError(f"precision must be >= 6 significant digits, got {args.precision}")
    family_n = parse_family(args.n)
    family_m = parse_family(args.m)
    out_dir = Path(args.out) if args.out else None
    if out_dir is not None:
        _ensure_writable_dir(out_dir)
    start = time.perf_counter()
    est = estimate_density(family_n, family_m, args.nmax, precision=args.precision)
    runtime = round(time.perf_counter() - start, 3)
    trace_path = accel_path = None
    if out_dir is not None:
        trace_path = str(out_dir / "density_trace.csv")
        accel_path = str(out_dir / "density_accelerated.csv")
        write_trace_csv(trace_path, est.trace.samples)
        write_trace_csv(accel_path, est.accelerated)
    report = density_report(
        est, args.n, args.m, trace_path, accel_path, runtime_seconds=runtime
    )
    if args.format == "plain":
        if est.status == "oscillating":
            residues = ", ".join(str(v) for v in est.per_residue or ())
            text = (
                f"density undefined-oscillating (period {est.oscillation_period})\n"
                f"per-residue estimates: {residues}"
            )
        else:
            text = f"density ~= {est.value} ({est.status}, n_max={est.n_max})"
    else:
        text = json.dumps(report, indent=2)
    if out_dir is not None:
        _atomic_write(out_dir / "density_report.json", json.dumps(report, indent=2) + "\n")
    _emit(text, None)
    return EXIT_OK


def _cmd_longitudinal(args: argparse.Namespace) -> int:
    lengths = sorted({int(v) for v in args.lengths.split(",")})
    asym = longitudinal_asymptote(lengths)
    info = semigroup_info(lengths)
    payload: dict = {
        "lengths": lengths,
        "gcd": info.gcd,
        "reduced_generators": sorted(info.reduced_generators),
        "frobenius": info.frobenius,
        "period": asym.p,
        "per_residue": [str(v) for v in asym.per_residue],
    }
    if args.nmax:
        from .subgroupoids import longitudinal_counting

        payload["counting"] = {
            str(n): str(v)
            for n, v in enumerate(longitudinal_counting(lengths, args.nmax), start=1)
        }
    if args.format == "plain":
        lines = [
            f"lengths: {lengths}",
            f"gcd: {info.gcd}  reduced: {sorted(info.reduced_generators)}  frobenius: {info.frobenius}",
            f"period: {asym.p}",
        ]
        lines += [f"residue {r}: {v}" for r, v in enumerate(asym.per_residue)]
        text = "\n".join(lines)
    else:
        text = json.dumps(payload, indent=2)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_motzkin(args: argparse.Namespace) -> int:
    bigrams = [b.strip() for b in args.forbid.split(",") if b.strip()] if args.forbid else []
    colors = {}
    if args.colors:
        for part in args.colors.split(","):
            step, _, mult = part.partition("=")
            colors[step.strip()] = int(mult)
    spec = PathSpec(args.length, forbidden_bigrams=bigrams, color_multiplicity=colors)
    if args.list:
        paths = enumerate_paths(spec)
        if args.format == "json":
            text = json.dumps({"length": args.length, "count": len(paths), "paths": paths}, indent=2)
        else:
            text = "\n".join(paths) if paths else ""
    else:
        count = count_paths(spec)
        if args.format == "json":
            text = json.dumps({"length": args.length, "count": count}, indent=2)
        else:
            text = str(count)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.config:
        config = json.loads(Path(args.config).read_text())
        unknown = set(config) - {"scope", "format", "out"}
        if unknown:
            raise FreeMagmaError(f"unknown verify config keys: {sorted(unknown)}")
        # Explicit flags win over the config file.
        if args.scope is None:
            args.scope = config.get("scope")
        if args.format == "plain" and "format" in config:
            args.format = config["format"]
        if args.out is None:
            args.out = config.get("out")
    if args.scope not in ("fast", "full"):
        raise FreeMagmaError(f"verify needs a scope of 'fast' or 'full', got {args.scope!r}")
    reports = verify_all(args.scope)
    ok = all(r.passed for r in reports)
    if args.format == "json":
        text = json.dumps(
            {
                "scope": args.scope,
                "passed": ok,
                "checks": [r.as_dict() for r in reports],
            },
            indent=2,
        )
    else:
        lines = []
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status}  {r.name}: {r.details}")
        lines.append(f"{'OK' if ok else 'FAILED'}: {sum(r.passed for r in reports)}/{len(reports)} checks passed")
        text = "\n".join(lines)
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freemagma",
        description=(
            "Exact enumeration, counting and density estimation for subgroupoids "
            "of the free magma on one generator."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all terms of a given length")
    p.add_argument("--n", type=int, required=True, help="term length (>= 1)")
    p.add_argument("--cap", type=int, default=16, help="enumeration size cap (default 16)")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=_cmd_enumerate)

    p = sub.add_parser("count", help="counting sequence of a subgroupoid")
    p.add_argument("--family", required=True, help="family spec, e.g. finite:[(1+1)] or full")
    p.add_argument("--n", type=int, required=True, help="horizon n_max (>= 1)")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("transform", help="apply the counting transform to a raw sequence")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--seqfile", help="CSV file with header n,value")
    group.add_argument("--values", help="comma-separated entries, e.g. 0,1,1")
    p.add_argument("--n", type=int, default=0, help="zero-pad/truncate input to this horizon")
    p.add_argument("--format", choices=("plain", "csv", "json"), default="csv")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=_cmd_transform)

    p = sub.add_parser("density", help="estimate the density of one family in another")
    p.add_argument("--n", required=True, help="numerator family spec")
    p.add_argument("--m", required=True, help="denominator family spec (e.g. full)")
    p.add_argument("--nmax", type=int, required=True, help="trace horizon")
    p.add_argument("--precision", type=int, default=8, help="requested significant digits (>= 6)")
    p.add_argument("--format", choices=("plain", "json"), default="json")
    p.add_argument("--out", help="output directory for report + trace CSVs")
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("longitudinal", help="asymptotes and semigroup data of a longitudinal family")
    p.add_argument("--lengths", required=True, help="comma-separated generator lengths, e.g. 2,3")
    p.add_argument("--nmax", type=int, default=0, help="also emit the counting sequence to n_max")
    p.add_argument("--format", choices=("plain", "json"), default="json")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=_cmd_longitudinal)

    p = sub.add_parser("motzkin", help="count or list constrained Motzkin paths")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--forbid", default="", help="forbidden bigrams, e.g. FU,FF")
    p.add_argument("--colors", default="", help="step color multiplicities, e.g. F=2")
    p.add_argument("--list", action="store_true", help="list paths instead of counting")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=_cmd_motzkin)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--scope", choices=("fast", "full"), default=None)
    p.add_argument("--config", help="JSON file with scope/format/out keys")
    p.add_argument("--format", choices=("plain", "json"), default="plain")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        # Fail on unwritable output locations before any computation runs.
        out = getattr(args, "out", None)
        if out:
            _ensure_writable_dir(Path(out) if args.command == "density" else Path(out).parent)
        return args.fn(args)
    except (FreeMagmaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
