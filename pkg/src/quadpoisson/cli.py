"""Command line front end.

    quadpoisson catalog [--index N] [--param k=v ...]
    quadpoisson cohomology --structure dhc:3 --param a=1 --rmax 9 --out report.json
    quadpoisson spectrum --structure dhc:2 --param a=1 --param b=0 -r 3
    quadpoisson verify --suite les

Exit status: 0 when every check passes, 1 on a failed mathematical check,
2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .cohomology import ExactnessViolation, cohomology_report, report_passes
from .dhc import PARAMS, ParameterViolation, UnknownIndex, dhc_catalog
from .io import StructureFileError, dumps, load_structure, write_report
from .koszul import TriangularizationFailed
from .multivector import NotPoisson
from .srmi import DegenerateFrame, NonCommuting
from .verify import SUITES, SpectrumAnalysis, UnknownSuite, run_suite

log = logging.getLogger("quadpoisson")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError("--param expects k=v, got %r" % item)
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


class ResolvedStructure:
    def __init__(self, label, Lambda, srmi, params, entry=None):
        self.label = label
        self.Lambda = Lambda
        self.srmi = srmi
        self.params = params
        self.entry = entry


def resolve_structure(source, params):
    if not source:
        raise UsageError("--structure is required")
    kind, _, rest = source.partition(":")
    if kind == "dhc":
        try:
            index = int(rest)
        except ValueError:
            raise UsageError("bad catalog index %r" % rest)
        entry = dhc_catalog(index, params)
        srmi = entry.srmi_part if entry.twist.is_zero() else None
        shown = {k: str(v) for k, v in entry.params.items()}
        return ResolvedStructure(source, entry.Lambda, srmi, shown, entry)
    if kind == "file":
        if params:
            raise UsageError("--param is only meaningful with dhc:<i>")
        loaded = load_structure(rest)
        return ResolvedStructure(source, loaded.Lambda, loaded.srmi, {})
    raise UsageError("--structure must be dhc:<i> or file:<path>")


def _emit(args, obj, text_lines):
    if args.out:
        write_report(obj, args.out)
    if args.json or not text_lines:
        sys.stdout.write(dumps(obj))
    else:
        print("\n".join(text_lines))


def cmd_catalog(args):
    params = parse_params(args.param)
    indices = [args.index] if args.index is not None else range(1, 14)
    entries = []
    for i in indices:
        e = dhc_catalog(i, params if args.index is not None else None)
        entries.append(e.describe())
    lines = []
    for d in entries:
        lines.append("L%-2d  srmi %-26s frame %-20s  %s" % (
            d["index"], d["srmi_condition"], d["frame"], d["Lambda"]))
    _emit(args, {"entries": entries}, lines)
    return EXIT_OK


def cmd_cohomology(args):
    if args.rmax < 0:
        raise UsageError("--rmax must be nonnegative")
    st = resolve_structure(args.structure, parse_params(args.param))
    report = cohomology_report(st.Lambda, args.rmax, st.srmi, st.label, st.params, jobs=args.jobs)
    lines = ["%s  pipeline=%s  r_max=%d" % (st.label, report["pipeline"], args.rmax),
             " r  p  d   dim_R  dim_P  dim_S  les   assemble"]
    for s in report["slices"]:
        if s["d"] < 0:
            continue
        lines.append("%2d %2d %2d  %6d %6s %6s  %-5s %s" % (
            s["r"], s["p"], s["d"], s["dim_R"],
            "-" if s["dim_P"] is None else s["dim_P"],
            "-" if s["dim_S"] is None else s["dim_S"],
            s["checks"]["les"], s["checks"]["assemble"]))
    _emit(args, report, lines)
    return EXIT_OK if report_passes(report) else EXIT_FAIL


def cmd_spectrum(args):
    st = resolve_structure(args.structure, parse_params(args.param))
    if st.srmi is None:
        raise UsageError("spectrum needs an SRMI structure")
    degrees = [args.r] if args.r is not None else range(args.rmax + 1)
    records, ok = [], True
    for r in degrees:
        an = SpectrumAnalysis(st.srmi, r)
        rec = an.to_record()
        rec["crosscheck"] = an.crosscheck()
        rec["formula_match"] = an.spectrum_matches()
        ok = ok and rec["crosscheck"] and rec["formula_match"]
        records.append(rec)
    obj = {"structure": st.label, "params": st.params, "degrees": records}
    lines = ["r=%d  mu=%d  s=%d  kernel_dims=%s  formula %s" % (
        rec["r"], rec["mu"], rec["s"], rec["kernel_dims"],
        "ok" if rec["formula_match"] and rec["crosscheck"] else "MISMATCH") for rec in records]
    _emit(args, obj, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args):
    names = [args.suite] if args.suite != "all" else list(SUITES)
    results = {}
    ok = True
    for name in names:
        checks = run_suite(name)
        results[name] = [c.to_record() for c in checks]
        ok = ok and all(c.ok for c in checks)
    lines = []
    for name, recs in results.items():
        bad = [r for r in recs if not r["pass"]]
        lines.append("%-15s %s (%d checks)" % (name, "pass" if not bad else "FAIL", len(recs)))
        for r in bad:
            lines.append("    %s: %s" % (r["check"], r["detail"]))
    _emit(args, {"suites": results, "pass": ok}, lines)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(prog="quadpoisson",
                                 description="Cohomology of quadratic Poisson tensors.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, structure=True):
        if structure:
            p.add_argument("--structure", help="dhc:<i> or file:<path>")
        p.add_argument("--param", action="append", metavar="K=V",
                       help="catalog parameter as an exact rational, repeatable")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="print JSON instead of a table")

    p = sub.add_parser("catalog", help="list the classification entries")
    p.add_argument("--index", type=int)
    common(p, structure=False)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("cohomology", help="cohomology dimensions and representatives")
    common(p)
    p.add_argument("--rmax", type=int, default=9)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for degree slices")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("spectrum", help="joint spectrum and kernel tower")
    common(p)
    p.add_argument("-r", type=int, help="single numerator degree")
    p.add_argument("--rmax", type=int, default=6)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", default="all", help="one of %s or all" % ", ".join(SUITES))
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else
                        logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (UsageError, UnknownIndex, UnknownSuite, ParameterViolation, StructureFileError,
            NotPoisson, NonCommuting, DegenerateFrame, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print("error: %s" % msg, file=sys.stderr)
        return EXIT_USAGE
    except (ExactnessViolation, TriangularizationFailed) as exc:
        print("check failed: %s" % exc, file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
