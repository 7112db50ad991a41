"""
Command-line front end: ``dimkit <subcommand> ...``.

Exit status is 0 on success, 1 when the input hits a pole or lies outside
the regime an operation supports, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import angular, loop_integrals, radial, sphere_measure
from .errors import DimkitError
from .verify import oracle_tolerance, run_suites

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

MAX_SWEEP_ROWS = 10_000_000

PLOT_SCRIPT = '''\
"""Plot Omega_d and V_d from a dimkit sweep CSV."""
import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else "{csv}"
raw = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding="utf-8")
d = raw["d"].astype(float)
omega = raw["omega"].astype(float)
volume = np.array([np.nan if v == "pole" else float(v) for v in raw["volume"].astype(str)])
plt.plot(d, omega, label="Omega_d")
plt.plot(d, volume, label="V_d")
plt.axhline(0.0, color="k", lw=0.5)
plt.ylim(-10, 35)
plt.xlabel("d")
plt.legend()
plt.savefig(path.rsplit(".", 1)[0] + ".png", dpi=150)
'''


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _fmt(x) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class SweepConfig:
    d_min: float
    d_max: float
    step: float
    quantities: tuple[str, ...] = ("omega", "volume")
    pole_exclusion_radius: float = 1e-6

    def __post_init__(self):
        if not self.step > 0:
            raise UsageError("--step must be positive")
        if not self.d_min < self.d_max:
            raise UsageError("--from must be smaller than --to")
        if (self.d_max - self.d_min) / self.step > MAX_SWEEP_ROWS:
            raise UsageError(f"sweep would exceed {MAX_SWEEP_ROWS} rows")

    def points(self) -> list[float]:
        n = int(math.floor((self.d_max - self.d_min) / self.step + 1e-9))
        pts = []
        for i in range(n + 1):
            # integer index times step avoids accumulated drift
            d = self.d_min + i * self.step
            near = round(d)
            if abs(d - near) < self.pole_exclusion_radius:
                d = float(near)
            pts.append(d)
        return pts


def sweep_rows(config: SweepConfig):
    for d in config.points():
        om = sphere_measure.omega(d)
        vol = "pole" if d == 0.0 else sphere_measure.volume(d)
        yield d, om, vol


def _sweep_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d", "omega", "volume"])
    for d, om, vol in rows:
        writer.writerow([_fmt(d), _fmt(om), vol if isinstance(vol, str) else _fmt(vol)])
    return buf.getvalue()


def _sweep_json(rows) -> str:
    data = [{"d": d, "omega": om, "volume": vol} for d, om, vol in rows]
    return json.dumps(data, indent=1) + "\n"


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _print_kv(pairs):
    for key, value in pairs:
        if isinstance(value, float):
            value = repr(float(value))
        print(f"{key} = {value}")


def _print_loop(result, tol, fmt):
    if fmt == "json":
        print(json.dumps(result.as_dict(), indent=1))
        return EXIT_OK
    pairs = [("closed_form", result.closed_form)]
    pairs += [(f"component.{k}", v) for k, v in result.components.items()]
    if result.oracle is not None:
        pairs += [("oracle", result.oracle), ("abs_diff", result.abs_diff),
                  ("oracle_error", result.oracle_error)]
        limit = max(tol * abs(result.closed_form), result.oracle_error)
        pairs.append(("agree", "yes" if result.abs_diff <= limit else "no"))
    _print_kv(pairs)
    return EXIT_OK


def cmd_omega(args):
    _print_kv([("d", args.d), ("regime", str(sphere_measure.classify(args.d))),
               ("omega", sphere_measure.omega(args.d))])


def cmd_volume(args):
    _print_kv([("d", args.d), ("volume", sphere_measure.volume(args.d))])


def cmd_coeff(args):
    d = args.d
    coeff = sphere_measure.measure_coefficient(d)
    e = sphere_measure.sine_exponent(d)
    pairs = [("d", d), ("regime", str(sphere_measure.classify(d))),
             ("coefficient", coeff), ("sine_exponent", e),
             ("closure", coeff * angular.sin_power(e) / sphere_measure.omega(d))]
    if args.compare_printed:
        if sphere_measure.classify(d) is not sphere_measure.DimensionRegime.CRITICAL:
            raise DimkitError("--compare-printed applies to the critical region 0 < d < 1")
        printed = sphere_measure.printed_critical_coefficient(d)
        pairs += [("printed_coefficient", printed), ("printed_ratio", printed / coeff)]
    _print_kv(pairs)


def cmd_angles(args):
    d = args.d
    n_max = sphere_measure.max_angles(d)
    n = n_max if args.n is None else args.n
    if not 1 <= n <= n_max:
        raise DimkitError(f"d = {d!r} allows between 1 and {n_max} angles, got {n}")
    dec = sphere_measure.decompose(d, n)
    _print_kv([("d", d), ("max_angles", n_max), ("prefactor", dec.prefactor),
               ("residual_dimension", dec.residual_dimension),
               ("radial_exponent", dec.radial_exponent)])
    for f in dec.angular_factors:
        print(f"theta_{f.angle_index}: sin^{f.sine_exponent!r} on [0, pi)")
    _print_kv([("reconstructed", dec.reconstruct()), ("omega", sphere_measure.omega(d))])


def cmd_sweep(args):
    config = SweepConfig(args.d_from, args.d_to, args.step)
    rows = list(sweep_rows(config))
    text = _sweep_csv(rows) if args.format == "csv" else _sweep_json(rows)
    _emit(text, args.out)
    if args.emit_plot_script:
        with open(args.emit_plot_script, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(PLOT_SCRIPT.format(csv=args.out or "sweep.csv"))


def cmd_bubble(args):
    r = loop_integrals.vacuum_bubble(args.d, args.m, oracle=args.oracle)
    return _print_loop(r, oracle_tolerance(), args.format)


def cmd_dotprod(args):
    r = loop_integrals.dot_product_integral(args.d, args.q)
    return _print_loop(r, oracle_tolerance(), args.format)


def cmd_extmom(args):
    r = loop_integrals.external_momentum_integral(args.d, args.k, args.m, oracle=args.oracle)
    if args.compare_printed and args.format == "text":
        _print_loop(r, oracle_tolerance(), args.format)
        printed = loop_integrals.printed_external_momentum(args.d, args.k, args.m)
        _print_kv([("printed", printed), ("printed_ratio", printed / r.closed_form),
                   ("expected_ratio m^2*(-(1+d)/2)", args.m ** 2 * (-0.5 * (1.0 + args.d)))])
        return EXIT_OK
    if args.compare_printed:
        data = r.as_dict()
        data["printed"] = loop_integrals.printed_external_momentum(args.d, args.k, args.m)
        data["printed_ratio"] = data["printed"] / r.closed_form
        print(json.dumps(data, indent=1))
        return EXIT_OK
    return _print_loop(r, oracle_tolerance(), args.format)


def _grid(text):
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    return values


def cmd_radial(args):
    kind = radial.IntegrandKind.parse(args.kind)
    spec = radial.RadialIntegrandSpec.for_dimension(kind, args.d, args.scale)
    res = radial.extract_finite_part(spec, args.shift, args.delta_grid, args.k_grid)
    pairs = [("kind", str(kind)), ("d", args.d), ("exponent", spec.exponent + args.shift),
             ("finite_part", res.finite_part), ("error_estimate", res.error_estimate)]
    if args.shift == 0.0:
        try:
            pairs.append(("closed_form", radial.closed_form_finite_part(spec, args.d)))
        except DimkitError:
            pass
    _print_kv(pairs)
    for t in res.stripped_terms:
        if t.exponent <= 2.0:
            print(f"stripped {t.side}^{t.exponent!r}: {t.coefficient!r}")


def cmd_verify(args):
    results = run_suites(args.filter)
    if not results:
        raise UsageError(f"no verification suite matches {args.filter!r}")
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dimkit", description="Measures and integrals in arbitrary real dimension.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("omega", help="unit-sphere surface Omega_d")
    s.add_argument("--d", type=float, required=True)
    s.set_defaults(func=cmd_omega)

    s = sub.add_parser("volume", help="unit-ball volume V_d")
    s.add_argument("--d", type=float, required=True)
    s.set_defaults(func=cmd_volume)

    s = sub.add_parser("coeff", help="single-angle measure coefficient")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--compare-printed", action="store_true",
                   help="also show the uncorrected critical coefficient and its ratio")
    s.set_defaults(func=cmd_coeff)

    s = sub.add_parser("angles", help="multi-angle measure decomposition")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--n", type=int, default=None, help="number of angles (default: maximum)")
    s.set_defaults(func=cmd_angles)

    s = sub.add_parser("sweep", help="Omega_d and V_d over a range of d")
    s.add_argument("--from", dest="d_from", type=float, required=True)
    s.add_argument("--to", dest="d_to", type=float, required=True)
    s.add_argument("--step", type=float, required=True)
    s.add_argument("--out", default=None, help="output path (default stdout)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--emit-plot-script", metavar="PATH", default=None,
                   help="write a matplotlib script that plots the sweep")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("bubble", help="massive vacuum bubble")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--m", type=float, required=True)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_bubble)

    s = sub.add_parser("dotprod", help="dot-product integral K(q), d < 0")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--q", type=float, required=True)
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_dotprod)

    s = sub.add_parser("extmom", help="external-momentum integral G(k), d < -2")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--k", type=float, required=True)
    s.add_argument("--m", type=float, required=True)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--compare-printed", action="store_true",
                   help="report the ratio to the uncorrected final display")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.set_defaults(func=cmd_extmom)

    s = sub.add_parser("radial", help="finite part of a cutoff-regulated radial integral")
    s.add_argument("--kind", required=True, help="PurePower, PowerOverOnePlus or PowerExp")
    s.add_argument("--d", type=float, required=True)
    s.add_argument("--scale", type=float, default=1.0)
    s.add_argument("--shift", type=float, default=0.0, help="added to the exponent d/2-1")
    s.add_argument("--delta-grid", type=_grid, default=None, metavar="V1,V2,...")
    s.add_argument("--k-grid", type=_grid, default=None, metavar="V1,V2,...")
    s.set_defaults(func=cmd_radial)

    s = sub.add_parser("verify", help="run the invariant suites")
    s.add_argument("--filter", default=None, help="run suites whose name contains this")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv=None) -> int:
    """Parse ``argv`` and execute; returns the process exit status."""
    try:
        args = build_parser().parse_args(argv)
        status = args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (DimkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK if status is None else status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
