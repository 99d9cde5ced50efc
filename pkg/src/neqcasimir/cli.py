"""Command line front end for scenario sweeps and comparisons.

Subcommands:

* ``run``: execute a scenario JSON file and emit a CSV sweep with the
  full force breakdown per separation.  The resolved scenario (units
  normalized, defaults filled in, materials inlined) is embedded as a
  ``# scenario:`` comment header, so the output is self-describing and
  re-runnable.
* ``zeros``: read such a CSV back, bracket every sign change of the
  total force on cylinder 1, refine each by bisection on the engine,
  and classify it stable/unstable.
* ``compare-weight`` / ``compare-ampere``: gravitational and magnetic
  reference forces per unit length for putting computed forces in
  context.

Exit codes: 0 success, 2 malformed scenario or input file, 3 quadrature
non-convergence.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

from .analysis import find_zero_crossings, refine_zero
from .engine import sweep, total_force
from .errors import QuadratureError, SchemaError
from .scenario import load_scenario, parse_scenario
from .units import G_STANDARD, MU_0

CSV_COLUMNS = (
    "d_m", "T1_K", "T2_K", "Tenv_K",
    "F1_total", "F2_total",
    "F1_int", "F1_int_prop", "F1_int_evan",
    "F1_self", "F1_pair_source", "F1_env_subtraction",
    "F2_int", "F2_int_prop", "F2_int_evan",
    "F2_self", "F2_pair_source", "F2_env_subtraction",
    "F_eq", "F1_sign", "F2_sign",
)

_FMT = "%.12e"


def weight_per_length(density, radius):
    """Weight per unit length, rho pi R^2 g, in N/m."""
    if density < 0 or radius < 0:
        raise ValueError("density and radius must be nonnegative")
    return density * math.pi * radius ** 2 * G_STANDARD


def ampere_force_per_length(current1, current2, separation):
    """Magnitude of the force per length between parallel currents.

    mu0 I1 I2 / (2 pi d); attractive when the currents are parallel.
    """
    if separation <= 0:
        raise ValueError("separation must be positive")
    return MU_0 * current1 * current2 / (2.0 * math.pi * separation)


def _breakdown_row(b):
    values = (b.separation, b.t1, b.t2, b.t_env,
              b.f_total_1, b.f_total_2,
              b.f_int_21, b.f_int_21_prop, b.f_int_21_evan,
              b.f_self_1, b.f_pair_source_1, b.f_env_subtraction_1,
              b.f_int_12, b.f_int_12_prop, b.f_int_12_evan,
              b.f_self_2, b.f_pair_source_2, b.f_env_subtraction_2,
              b.f_eq)
    return ",".join(_FMT % v for v in values) + ",%s,%s" % (b.f1_sign,
                                                            b.f2_sign)


def write_sweep_csv(rows, resolved, stream):
    """Serialize breakdown rows with the resolved scenario header."""
    stream.write("# scenario: %s\n"
                 % json.dumps(resolved, sort_keys=True,
                              separators=(",", ":")))
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for b in rows:
        stream.write(_breakdown_row(b) + "\n")


def read_sweep_csv(path):
    """Parse a sweep CSV back into (scenario doc, list of row dicts)."""
    doc = None
    body = []
    with open(path, newline="") as handle:
        for line in handle:
            if line.startswith("#"):
                text = line[1:].strip()
                if text.startswith("scenario:"):
                    try:
                        doc = json.loads(text[len("scenario:"):])
                    except json.JSONDecodeError as exc:
                        raise SchemaError(
                            "bad scenario header in %s: %s"
                            % (path, exc)) from None
                continue
            body.append(line)
    if doc is None:
        raise SchemaError("%s has no '# scenario:' header; only sweep "
                          "CSVs written by 'run' can be refined" % (path,))
    reader = csv.DictReader(io.StringIO("".join(body)))
    rows = []
    for record in reader:
        try:
            rows.append({key: (record[key] if key.endswith("_sign")
                               else float(record[key]))
                         for key in record})
        except (TypeError, ValueError, KeyError) as exc:
            raise SchemaError("%s: malformed row %r (%s)"
                              % (path, record, exc)) from None
    if not rows:
        raise SchemaError("%s contains no data rows" % (path,))
    return doc, rows


def _cmd_run(args):
    scenario, resolved = load_scenario(args.scenario)
    if args.provider:
        scenario.provider = args.provider
        resolved["provider"] = args.provider
    if args.rel_tol is not None:
        if args.rel_tol <= 0:
            raise SchemaError("--rel-tol must be positive")
        scenario.controls = replace(scenario.controls,
                                    rel_tol=args.rel_tol)
        resolved["controls"]["rel_tol"] = args.rel_tol
    rows = sweep(scenario)
    out = args.out or scenario.output
    if out:
        with open(out, "w", newline="") as handle:
            write_sweep_csv(rows, resolved, handle)
    else:
        write_sweep_csv(rows, resolved, sys.stdout)
    return 0


def _cmd_zeros(args):
    doc, rows = read_sweep_csv(args.csv)
    scenario, _ = parse_scenario(doc, base_dir=Path(args.csv).parent)
    groups = {}
    for row in rows:
        key = (row["T1_K"], row["T2_K"], row["Tenv_K"])
        groups.setdefault(key, []).append(row)
    sys.stdout.write("T1_K,T2_K,Tenv_K,d_zero_m,stability\n")
    memo = {}
    for (t1, t2, te), group in groups.items():
        d = [row["d_m"] for row in group]
        f = [row["F1_total"] for row in group]
        one = replace(
            scenario,
            cylinder1=replace(scenario.cylinder1, temperature=t1),
            cylinder2=replace(scenario.cylinder2, temperature=t2),
            environment_temperature=te,
            temperature_sets=None)

        def force_at(sep):
            return total_force(one, sep, _memo=memo).f_total_1

        for bracket in find_zero_crossings(d, f):
            root = refine_zero(force_at, bracket.lower, bracket.upper,
                               rel_tol=args.rel_tol)
            sys.stdout.write(
                ",".join(_FMT % v for v in (t1, t2, te, root.midpoint))
                + ",%s\n" % root.stability)
    return 0


def _cmd_weight(args):
    value = weight_per_length(args.density, args.radius)
    sys.stdout.write("weight_per_length_N_per_m = %s\n" % (_FMT % value))
    if args.force is not None:
        sys.stdout.write("force_N_per_m = %s\n" % (_FMT % args.force))
        if args.force != 0.0:
            sys.stdout.write("weight_to_force_ratio = %.6g\n"
                             % (value / abs(args.force)))
    return 0


def _cmd_ampere(args):
    value = ampere_force_per_length(args.current1, args.current2,
                                    args.distance)
    sys.stdout.write("ampere_force_per_length_N_per_m = %s\n"
                     % (_FMT % value))
    if args.force is not None:
        sys.stdout.write("force_N_per_m = %s\n" % (_FMT % args.force))
        if args.force != 0.0:
            sys.stdout.write("ampere_to_force_ratio = %.6g\n"
                             % (value / abs(args.force)))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="neqcasimir",
        description="Non-equilibrium Casimir forces between parallel "
                    "cylinders at independent temperatures.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run", help="sweep a scenario file and emit a breakdown CSV")
    run_p.add_argument("scenario", help="scenario JSON file")
    run_p.add_argument("--out", help="output CSV path (default: the "
                       "scenario's 'output' field, else stdout)")
    run_p.add_argument("--provider", choices=("thin", "full"),
                       help="override the scattering provider")
    run_p.add_argument("--rel-tol", type=float, dest="rel_tol",
                       help="override the quadrature relative tolerance")
    run_p.set_defaults(handler=_cmd_run)

    zeros_p = sub.add_parser(
        "zeros", help="locate and refine force zero crossings in a "
                      "sweep CSV written by 'run'")
    zeros_p.add_argument("csv", help="sweep CSV with scenario header")
    zeros_p.add_argument("--rel-tol", type=float, dest="rel_tol",
                         default=1e-3,
                         help="relative width of the refined bracket "
                              "(default 1e-3)")
    zeros_p.set_defaults(handler=_cmd_zeros)

    weight_p = sub.add_parser(
        "compare-weight", help="weight per unit length of a cylinder")
    weight_p.add_argument("--density", type=float, required=True,
                          help="mass density in kg/m^3")
    weight_p.add_argument("--radius", type=float, required=True,
                          help="cylinder radius in m")
    weight_p.add_argument("--force", type=float,
                          help="force per length in N/m to compare "
                               "against")
    weight_p.set_defaults(handler=_cmd_weight)

    ampere_p = sub.add_parser(
        "compare-ampere", help="force per length between parallel "
                               "currents")
    ampere_p.add_argument("--current1", type=float, required=True,
                          help="current in wire 1, A")
    ampere_p.add_argument("--current2", type=float, required=True,
                          help="current in wire 2, A")
    ampere_p.add_argument("--distance", type=float, required=True,
                          help="wire separation in m")
    ampere_p.add_argument("--force", type=float,
                          help="force per length in N/m to compare "
                               "against")
    ampere_p.set_defaults(handler=_cmd_ampere)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SchemaError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 2
    except QuadratureError as exc:
        sys.stderr.write("error: quadrature did not converge: %s\n"
                         % (exc,))
        return 3
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 2


if __name__ == "__main__":
    sys.exit(main())
