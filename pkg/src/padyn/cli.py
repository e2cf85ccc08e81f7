"""The ``padyn`` command-line driver.

Jobs are JSON files validated against ``schemas/job.v1.json``. Each run writes
a report envelope (job echo, result payload, precision provenance, duration,
version) and, for polygons and valuation traces, a TSV side file.

Exit codes: 0 success, 1 input or schema error, 2 mathematical failure.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
import json
import os
from pathlib import Path
import sys
import time

import jsonschema

from padyn import __version__
from padyn.catalog import catalog_list
from padyn.dynamics import (check_commute, criterion_check, fixed_point_valuations,
                            trace_to_tsv, valuation_sequence)
from padyn.errors import InputError, MathError, SchemaError
from padyn.formal_groups import (isogeny_solve, lubin_tate, semiconjugacy_verify)
from padyn.local_field import LocalFieldSpec, OKElement
from padyn.newton import polygon_to_tsv
from padyn.series_ring import TruncatedSeries

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 1, 2
JOB_VERSION = "padyn.job/1"
DEFAULT_MAX_M = 4096


def load_schema():
    text = resources.files("padyn").joinpath("schemas/job.v1.json").read_text()
    return json.loads(text)


def _is_zero_scalar(c):
    return c == 0 if isinstance(c, int) else all(x == 0 for x in c)


def validate_job(job):
    """Schema validation plus the checks JSON Schema cannot express."""
    try:
        jsonschema.validate(job, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from None
    for name, coeffs in job.get("payload", {}).items():
        if name in ("P", "U", "P_S", "Q") and not _is_zero_scalar(coeffs[0]):
            raise SchemaError(f"payload/{name}: constant term must be 0")
    cap = int(os.environ.get("PADYN_MAX_M", DEFAULT_MAX_M))
    if job["field"]["precision"] > cap:
        raise InputError(f"precision {job['field']['precision']} exceeds PADYN_MAX_M={cap}")
    return job


def job_spec(job):
    fld = job["field"]
    p = fld["p"]
    return LocalFieldSpec(p, fld.get("h", 1), tuple(fld.get("eisenstein", [-p, 1])),
                          fld["precision"])


def _series(spec, coeffs, trunc):
    return TruncatedSeries.from_coeffs(spec, coeffs, trunc)


def emit_polygon_tsv(polygon, path):
    """Write a polygon as TSV; an empty polygon is refused before any file is created."""
    if not polygon.vertices:
        raise MathError("empty polygon: nothing to write")
    text = polygon_to_tsv(polygon)
    Path(path).write_text(text)
    return path


# ---------------------------------------------------------------- commands

def _cmd_analyze(spec, trunc, pl):
    P = _series(spec, pl["P"], trunc)
    U = _series(spec, pl["U"], trunc)
    pair = check_commute(P, U, pl.get("root_of_unity_bound", 64))
    report = criterion_check(pair, pl.get("levels", 3), pl.get("m_max", 4),
                             pl.get("search_generators", True), pl.get("max_candidates", 8))
    result = report.to_json()
    result["extra_generators"] = [g.to_json() for g in report.extra_generators]
    prov = result["provenance"]
    return result, {"M": prov["M"], "D": prov["D"], "losses": prov["losses"]}, None


def _cmd_lt_build(spec, trunc, pl):
    pi = OKElement.of(spec, pl["pi"])
    lt = lubin_tate(spec, pi, trunc, pl.get("group_degree", 12))
    F = lt.group_law
    endos = []
    losses = {"group_law": F.precision_loss, "endomorphisms": {}}
    for a in pl.get("endomorphisms", []):
        sol = isogeny_solve(lt.f, lt.f, OKElement.of(spec, a))
        lt.endo_cache.setdefault(OKElement.of(spec, a).key(), sol.h)
        endos.append({"a": a, "series": sol.h.to_json(), "precision_loss": sol.precision_loss,
                      "residual_valuation": sol.residual_valuation})
        losses["endomorphisms"][json.dumps(a)] = sol.precision_loss
    result = {"lubin_tate": lt.summary(), "group_law": F.to_json(), "endomorphisms": endos}
    return result, {"M": spec.precision, "D": trunc, "losses": losses}, None


def _cmd_isogeny(spec, trunc, pl):
    P = _series(spec, pl["P"], trunc)
    P_S = _series(spec, pl["P_S"], trunc)
    unit = OKElement.of(spec, pl.get("h1", 1))
    pi = OKElement(spec, spec.arith.pi(), spec.precision)
    sweep = pl.get("h1_valuations", [0])
    runs, losses, last_error = [], {}, None
    for k in sweep:
        h1 = unit
        for _ in range(k):
            h1 = h1 * pi
        entry = {"h1_valuation": k, "h1": h1.coords()}
        try:
            sol = isogeny_solve(P, P_S, h1)
        except MathError as exc:
            entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
            last_error = exc
        else:
            check = semiconjugacy_verify(P, P_S, sol.h)
            entry["solution"] = sol.to_json()
            entry["semiconjugacy"] = check.to_json()
            entry["bound"] = spec.precision - sol.precision_loss
            losses[str(k)] = sol.precision_loss
        runs.append(entry)
    if all("error" in r for r in runs):
        raise last_error
    return {"runs": runs}, {"M": spec.precision, "D": trunc, "losses": losses}, None


def _cmd_valuations(spec, trunc, pl):
    Q = _series(spec, pl["Q"], trunc)
    a0 = pl.get("alpha0_valuation")
    trace = valuation_sequence(Q, Fraction(a0) if a0 is not None else None, pl.get("N", 10))
    return (trace.to_json(), {"M": spec.precision, "D": trunc, "losses": {}},
            trace_to_tsv(trace))


def _cmd_fixed_points(spec, trunc, pl):
    U = _series(spec, pl["U"], trunc)
    poly = fixed_point_valuations(U, pl.get("k", 1))
    if poly.degenerate:
        raise MathError("U^k - T vanishes to the working precision")
    result = {"vertices": [[i, str(Fraction(v))] for i, v in poly.vertices],
              "slopes": [[str(s), n] for s, n in poly.slopes],
              "precision_limited": poly.precision_limited}
    return result, {"M": spec.precision, "D": trunc, "losses": {}}, poly


COMMANDS = {
    "analyze": _cmd_analyze,
    "lt-build": _cmd_lt_build,
    "isogeny": _cmd_isogeny,
    "valuations": _cmd_valuations,
    "fixed-points": _cmd_fixed_points,
}


def execute(job):
    """Run a validated job; returns (result, provenance, tsv_source)."""
    spec = job_spec(job)
    trunc = job.get("trunc", 32)
    return COMMANDS[job["command"]](spec, trunc, job.get("payload", {}))


def payload_bytes(envelope):
    """The deterministic part of an envelope (everything except the duration)."""
    body = {k: v for k, v in envelope.items() if k != "duration_seconds"}
    return json.dumps(body, sort_keys=True, separators=(",", ":")).encode()


def run_job(path, out_dir=None):
    """Run one job file. Returns (exit code, list of written paths)."""
    path = Path(path)
    out_dir = Path(out_dir) if out_dir is not None else path.parent
    try:
        job = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"padyn: cannot read {path}: {exc}", file=sys.stderr)
        return EXIT_INPUT, []
    try:
        validate_job(job)
    except InputError as exc:
        print(f"padyn: {path}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT, []
    out = job.get("output", {})
    report_path = out_dir / out.get("report", f"{path.stem}.report.json")
    tsv_path = out_dir / out.get("tsv", f"{path.stem}.tsv")
    start = time.perf_counter()
    envelope = {"version": __version__, "job": job}
    code, tsv = EXIT_OK, None
    try:
        result, provenance, tsv = execute(job)
        envelope["result"] = result
        envelope["provenance"] = provenance
    except InputError as exc:
        print(f"padyn: {path}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT, []
    except MathError as exc:
        code = EXIT_MATH
        envelope["result"] = None
        envelope["error"] = {"type": type(exc).__name__, "message": str(exc)}
        envelope["provenance"] = {"M": job["field"]["precision"], "D": job.get("trunc", 32)}
        print(f"padyn: {path}: {type(exc).__name__}: {exc}", file=sys.stderr)
    envelope["duration_seconds"] = round(time.perf_counter() - start, 6)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if tsv is not None:
        if isinstance(tsv, str):
            tsv_path.write_text(tsv)
        else:
            emit_polygon_tsv(tsv, tsv_path)
        written.append(str(tsv_path))
        envelope["tsv"] = tsv_path.name
    report_path.write_text(json.dumps(envelope, sort_keys=True, indent=1) + "\n")
    written.insert(0, str(report_path))
    return code, written


def _run_isolated(args):
    path, out_dir = args
    return run_job(path, out_dir)


def cmd_run(args):
    jobs = [Path(j) for j in args.jobs]
    if args.batch and len(jobs) > 1:
        base = Path(args.out) if args.out else Path.cwd()
        tasks = [(j, base / j.stem) for j in jobs]
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_run_isolated, tasks))
    else:
        results = [run_job(j, args.out) for j in jobs]
    for j, (code, written) in zip(jobs, results):
        status = {EXIT_OK: "ok", EXIT_INPUT: "input-error", EXIT_MATH: "math-failure"}[code]
        print(f"{j}\t{status}\t{' '.join(written)}")
    return max(code for code, _ in results)


def cmd_catalog(args):
    print(json.dumps(catalog_list(), indent=1, sort_keys=True))
    return EXIT_OK


def cmd_version(args):
    from padyn.kernels import BACKEND
    print(f"padyn {__version__} (kernels: {BACKEND}, job schema: {JOB_VERSION})")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="padyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="run one or more job files")
    run.add_argument("jobs", nargs="+", help="job JSON files")
    run.add_argument("--out", help="output directory (default: next to each job)")
    run.add_argument("--batch", action="store_true",
                     help="run jobs in parallel, each writing into its own subdirectory")
    run.set_defaults(func=cmd_run)
    sub.add_parser("catalog", help="list built-in example pairs").set_defaults(func=cmd_catalog)
    sub.add_parser("version", help="print the version").set_defaults(func=cmd_version)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
