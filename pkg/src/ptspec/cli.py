"""Command-line front end.

Subcommands: ``wkb`` (closed-form levels), ``spectrum`` (shooting or
diagonalization), ``stokes`` (asymptotic directions, optionally traced
lines or a rendered figure), ``reproduce`` (benchmark tables and figure
geometry with per-entry pass/fail).

Every file written is accompanied by (or, for JSON, embeds) a run
manifest recording the command, parameters, version and warnings.  Data
files themselves are deterministic for fixed flags.  Exit codes: 0 ok,
1 reproduction failure, 2 usage error, 3 convergence/labeling warnings.

The environment variable PTSPEC_OUTPUT_DIR, when set, is prepended to
relative output paths.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field

import click
import numpy as np

from . import __version__, reference
from .diag import real_spectrum
from .levels import SpectrumResult
from .potential import PotentialSpec, canonicalize
from .shooting import ShootingConfig, find_eigenvalues
from .stokes import (
    RayPair,
    asymptotic_lines,
    bb_rays,
    pi_fraction,
    trace_all_lines,
    wedge_rays,
)
from .wkb import energy_bb, energy_general, energy_nm

DIAG_SIZES = (80, 120, 160, 200)


@dataclass
class RunManifest:
    command: str
    parameters: dict
    version: str = __version__
    timestamp: str = ""
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if not self.timestamp:
            self.timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat()


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    outdir = os.environ.get("PTSPEC_OUTPUT_DIR")
    if outdir and not os.path.isabs(path):
        os.makedirs(outdir, exist_ok=True)
        return os.path.join(outdir, path)
    return path


def _fmt(value, digits: int) -> str:
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    if value is None:
        return ""
    return str(value)


def _emit(rows: list[dict], header: list[str], manifest: RunManifest,
          fmt: str, output: str | None, digits: int) -> None:
    """Write rows as CSV or JSON to a file or stdout, with the manifest."""
    output = _resolve_output(output)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row.get(col), digits) for col in header])
        text = buf.getvalue()
    else:
        payload = {
            "manifest": asdict(manifest),
            "rows": [{col: row.get(col) for col in header} for row in rows],
        }
        text = json.dumps(payload, indent=2, default=float) + "\n"
    if output is None:
        click.echo(text, nl=False)
    else:
        with open(output, "w") as fh:
            fh.write(text)
        if fmt == "csv":
            _write_manifest_sidecar(output, manifest)
        click.echo(f"wrote {output}")


def _write_manifest_sidecar(output: str, manifest: RunManifest) -> None:
    with open(output + ".manifest.json", "w") as fh:
        json.dump(asdict(manifest), fh, indent=2)
        fh.write("\n")


def _parse_nrange(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(text)]
    except ValueError:
        raise click.BadParameter(f"expected N or LO..HI, got {text!r}")
    if not values or values[0] < 0:
        raise click.BadParameter(f"quantum numbers must be non-negative: {text!r}")
    return values


def _spec_from_flags(m, epsilon, sign, b, ixk, neg_ixk) -> PotentialSpec:
    given_pair = m is not None or epsilon is not None
    if sum((given_pair, ixk is not None, neg_ixk is not None)) != 1:
        raise click.UsageError(
            "specify the potential with exactly one of: --M/--epsilon, "
            "--ixK, or --neg-ixK")
    try:
        if ixk is not None:
            return PotentialSpec(0, ixk, 1, b)
        if neg_ixk is not None:
            return canonicalize(PotentialSpec(0, neg_ixk, -1, b))
        if m is None or epsilon is None:
            raise click.UsageError("--M and --epsilon must be given together")
        return PotentialSpec(m, epsilon, 1 if sign == "+" else -1, b)
    except ValueError as exc:
        raise click.UsageError(str(exc))


def _spec_options(fn):
    fn = click.option("--M", "m", type=int, default=None,
                      help="even-power exponent M of x^(2M)(ix)^eps")(fn)
    fn = click.option("--epsilon", type=int, default=None,
                      help="exponent of the (ix)^eps factor")(fn)
    fn = click.option("--sign", type=click.Choice(["+", "-"]), default="+",
                      help="overall sign s of the monomial")(fn)
    fn = click.option("--b", type=float, default=0.0,
                      help="coefficient of the i*b*x term")(fn)
    fn = click.option("--ixK", "ixk", type=int, default=None,
                      help="shorthand for the (ix)^K potential")(fn)
    fn = click.option("--neg-ixK", "neg_ixk", type=int, default=None,
                      help="shorthand for the -(ix)^K potential (canonical form)")(fn)
    return fn


def _output_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                      default="csv", help="tabular output format")(fn)
    fn = click.option("--output", "-o", type=str, default=None,
                      help="output path (default: stdout)")(fn)
    fn = click.option("--digits", type=int, default=12,
                      help="significant digits in emitted numbers")(fn)
    return fn


@click.group()
@click.version_option(__version__)
def main():
    """Spectra and Stokes geometry of PT-symmetric anharmonic oscillators."""


# --------------------------------------------------------------------------
# wkb


@main.command("wkb")
@click.option("--method", type=click.Choice(["bb", "nm", "general"]), required=True)
@click.option("--N", "big_n", type=int, default=None,
              help="degree parameter for bb/nm (degree K = 2N+1)")
@click.option("--M", "m", type=int, default=None, help="M for --method general")
@click.option("--epsilon", type=int, default=None, help="epsilon for --method general")
@click.option("--n", "nrange", type=str, required=True, help="level range, e.g. 0..10")
@_output_options
def cmd_wkb(method, big_n, m, epsilon, nrange, fmt, output, digits):
    """Closed-form leading-order semiclassical levels."""
    ns = _parse_nrange(nrange)
    try:
        if method in ("bb", "nm"):
            if big_n is None:
                raise click.UsageError(f"--method {method} requires --N")
            fn = energy_bb if method == "bb" else energy_nm
            rows = [{"n": n, "energy": fn(n, big_n)} for n in ns]
            params = {"method": method, "N": big_n, "n": nrange}
        else:
            if m is None or epsilon is None:
                raise click.UsageError("--method general requires --M and --epsilon")
            rows = [{"n": n, "energy": energy_general(n, m, epsilon)} for n in ns]
            params = {"method": method, "M": m, "epsilon": epsilon, "n": nrange}
    except ValueError as exc:
        raise click.UsageError(str(exc))
    manifest = RunManifest(command="wkb", parameters=params)
    _emit(rows, ["n", "energy"], manifest, fmt, output, digits)


# --------------------------------------------------------------------------
# spectrum


@main.command("spectrum")
@click.argument("solver", type=click.Choice(["shoot", "diag"]))
@_spec_options
@click.option("--rays", "rays_mode",
              type=click.Choice(["contains-real-axis", "off-axis", "bb"]),
              default="contains-real-axis",
              help="wedge mode for the shooting rays ('bb' uses the "
                   "-pi/2 +/- 2pi/(K+2) pair)")
@click.option("--nmax", type=int, default=5, help="highest quantum number")
@click.option("--rho-max", type=float, default=None,
              help="explicit ray truncation radius (default: automatic)")
@click.option("--ode-rtol", type=float, default=None)
@click.option("--ode-atol", type=float, default=None)
@click.option("--scan-step", type=float, default=None,
              help="energy scan step as a fraction of the WKB spacing")
@click.option("--root-tol", type=float, default=None,
              help="absolute energy tolerance of the bisection")
@click.option("--sizes", type=str, default=",".join(str(s) for s in DIAG_SIZES),
              help="comma-separated basis-size schedule (diag)")
@click.option("--alpha", type=float, default=1.0, help="basis length scale (diag)")
@_output_options
def cmd_spectrum(solver, m, epsilon, sign, b, ixk, neg_ixk, rays_mode, nmax,
                 rho_max, ode_rtol, ode_atol, scan_step, root_tol, sizes,
                 alpha, fmt, output, digits):
    """Eigenvalues by shooting along anti-Stokes rays or by diagonalization."""
    spec = _spec_from_flags(m, epsilon, sign, b, ixk, neg_ixk)
    params = {"solver": solver, "M": spec.M, "epsilon": spec.epsilon,
              "s": spec.s, "b": spec.b, "nmax": nmax}
    header = ["n", "energy", "err_estimate", "method"]

    if solver == "shoot":
        kwargs = {}
        if rho_max is not None:
            kwargs["rho_max"] = rho_max
        if ode_rtol is not None:
            kwargs["ode_rel_tol"] = ode_rtol
        if ode_atol is not None:
            kwargs["ode_abs_tol"] = ode_atol
        if scan_step is not None:
            kwargs["scan_step"] = scan_step
        if root_tol is not None:
            kwargs["root_tol"] = root_tol
        config = ShootingConfig(**kwargs)
        try:
            if rays_mode == "bb":
                rays = bb_rays(spec.degree)
            else:
                rays = wedge_rays(spec, rays_mode)
            result = find_eigenvalues(spec, rays, nmax, config)
        except (ValueError, RuntimeError) as exc:
            raise click.ClickException(str(exc))
        params.update({"rays": rays_mode, "theta_right": rays.theta_right,
                       "theta_left": rays.theta_left,
                       "config": asdict(config)})
        header += ["theta_right", "theta_left"]
        rows = [{"n": lv.n, "energy": lv.value, "err_estimate": lv.err_estimate,
                 "method": lv.method, "theta_right": rays.theta_right,
                 "theta_left": rays.theta_left} for lv in result.levels]
    else:
        try:
            size_list = [int(s) for s in sizes.split(",")]
        except ValueError:
            raise click.BadParameter(f"bad --sizes value {sizes!r}")
        try:
            result = real_spectrum(spec, size_list, alpha=alpha, n_max=nmax)
        except (ValueError, RuntimeError) as exc:
            raise click.ClickException(str(exc))
        params.update({"sizes": size_list, "alpha": alpha})
        rows = [{"n": lv.n, "energy": lv.value, "err_estimate": lv.err_estimate,
                 "method": lv.method} for lv in result.levels]

    notes = [f"{w.kind}: {w.message}" for w in result.warnings]
    manifest = RunManifest(command="spectrum", parameters=params, warnings=notes)
    _emit(rows, header, manifest, fmt, output, digits)
    for note in notes:
        click.echo(f"warning: {note}", err=True)
    if notes:
        sys.exit(3)


# --------------------------------------------------------------------------
# stokes


@main.command("stokes")
@_spec_options
@click.option("--E", "energy", type=float, default=None,
              help="energy at which lines are traced")
@click.option("--trace/--no-trace", default=False,
              help="trace lines from every turning point")
@click.option("--arc-length", type=float, default=8.0)
@click.option("--format", "fmt", type=click.Choice(["csv", "json", "svg"]),
              default="csv")
@click.option("--output", "-o", type=str, default=None)
@click.option("--digits", type=int, default=12)
def cmd_stokes(m, epsilon, sign, b, ixk, neg_ixk, energy, trace, arc_length,
               fmt, output, digits):
    """Classified asymptotic directions; optionally traced lines or a figure."""
    spec = _spec_from_flags(m, epsilon, sign, b, ixk, neg_ixk)
    diagram = asymptotic_lines(spec)
    params = {"M": spec.M, "epsilon": spec.epsilon, "s": spec.s, "b": spec.b,
              "trace": trace, "E": energy, "arc_length": arc_length}
    if trace and (energy is None or energy <= 0.0):
        raise click.UsageError("--trace requires a positive --E")

    angle_rows = [
        {"kind": line.kind, "angle_rad": line.angle,
         "angle_over_pi": f"{line.fraction.numerator}/{line.fraction.denominator}"}
        for line in diagram.lines
    ]

    traces, failures = ([], [])
    if trace:
        traces, failures = trace_all_lines(spec, energy, arc_length=arc_length)
        for failure in failures:
            click.echo(f"warning: trace failed: {failure}", err=True)

    manifest = RunManifest(command="stokes", parameters=params, warnings=failures)

    if fmt == "svg":
        if output is None:
            raise click.UsageError("--format svg requires --output")
        output = _resolve_output(output)
        from .plotting import render_diagram

        radius = 4.0 if energy is None else max(2.5 * energy ** (1.0 / spec.degree), 2.0)
        render_diagram(spec, diagram, output, traces=traces or None,
                       energy=energy if trace else None, radius=radius)
        _write_manifest_sidecar(output, manifest)
        click.echo(f"wrote {output}")
        return

    if fmt == "json":
        output = _resolve_output(output)
        payload = {"manifest": asdict(manifest), "angles": angle_rows}
        if trace:
            payload["traces"] = [
                {"kind": tr.kind, "direction": tr.direction,
                 "start": [tr.start.real, tr.start.imag],
                 "points": [[p.real, p.imag] for p in tr.points]}
                for tr in traces
            ]
        text = json.dumps(payload, indent=2, default=float) + "\n"
        if output is None:
            click.echo(text, nl=False)
        else:
            with open(output, "w") as fh:
                fh.write(text)
            click.echo(f"wrote {output}")
        return

    _emit(angle_rows, ["kind", "angle_rad", "angle_over_pi"], manifest, fmt,
          output, digits)
    if trace:
        trace_out = output + ".traces.csv" if output else None
        _emit(_trace_rows(traces), ["line", "kind", "direction", "start_re",
                                    "start_im", "point", "re", "im"],
              manifest, "csv", trace_out, digits)


def _trace_rows(traces) -> list[dict]:
    rows = []
    for i, tr in enumerate(traces):
        for j, p in enumerate(tr.points):
            rows.append({"line": i, "kind": tr.kind, "direction": tr.direction,
                         "start_re": tr.start.real, "start_im": tr.start.imag,
                         "point": j, "re": p.real, "im": p.imag})
    return rows


# --------------------------------------------------------------------------
# reproduce


def _check_rows(entries) -> list[dict]:
    """entries: (label, expected, computed, tol, kind) -> report rows."""
    rows = []
    for label, expected, computed, tol, kind in entries:
        if computed is None:
            dev = float("nan")
            status = "fail"
        else:
            dev = abs(computed - expected)
            if kind == "rel":
                dev /= abs(expected)
            status = "pass" if dev < tol else "fail"
        rows.append({"entry": label, "expected": expected, "computed": computed,
                     "deviation": dev, "tolerance": tol, "kind": kind,
                     "status": status})
    return rows


def _level_map(result: SpectrumResult) -> dict[int, float]:
    return {lv.n: lv.value for lv in result.levels if lv.n is not None}


def _reproduce_table1() -> list[dict]:
    entries = []
    for n, expected in enumerate(reference.QUINTIC_OFF_AXIS_WKB):
        entries.append((f"closed-form-bb n={n}", expected, energy_bb(n, 2),
                        5e-9, "rel"))
    spec = PotentialSpec(0, 5)
    result = find_eigenvalues(spec, wedge_rays(spec, "off-axis"), 3,
                              ShootingConfig(root_tol=1e-8))
    found = _level_map(result)
    for n, expected in enumerate(reference.QUINTIC_OFF_AXIS_REFERENCE):
        entries.append((f"shooting-off-axis n={n}", expected, found.get(n),
                        1e-6, "rel"))
    return _check_rows(entries)


def _reproduce_table2() -> list[dict]:
    entries = []
    for n, expected in enumerate(reference.QUINTIC_AXIS_WKB):
        entries.append((f"closed-form-nm n={n}", expected, energy_nm(n, 2),
                        5e-9, "rel"))
    spec = PotentialSpec(0, 5)
    result = find_eigenvalues(spec, wedge_rays(spec, "contains-real-axis"), 10)
    found = _level_map(result)
    for n, expected in enumerate(reference.QUINTIC_AXIS_SHOOTING):
        entries.append((f"shooting-axis n={n}", expected, found.get(n),
                        2e-5, "abs"))
    diag = _level_map(real_spectrum(spec, DIAG_SIZES, alpha=1.0, n_max=10))
    for n, expected in enumerate(reference.QUINTIC_AXIS_DIAG):
        tol = 1e-7 if n <= 3 else (1e-5 if n <= 8 else 1e-4)
        entries.append((f"diag-axis n={n}", expected, diag.get(n), tol, "rel"))
    return _check_rows(entries)


def _reproduce_figures(output_dir: str | None) -> list[dict]:
    rows = []
    for (m, eps), panels in reference.FIGURE_ANGLES.items():
        spec = PotentialSpec(m, eps)
        diagram = asymptotic_lines(spec)
        by_fraction = {line.fraction: line.kind for line in diagram.lines}
        for panel, numerators in panels.items():
            kinds = []
            for num in numerators:
                from fractions import Fraction

                kind = by_fraction.get(Fraction(num, 14))
                kinds.append(kind)
                rows.append({
                    "entry": f"({m},{eps}) panel {panel} angle {num}pi/14",
                    "expected": "classified", "computed": kind or "missing",
                    "deviation": 0.0 if kind else 1.0, "tolerance": 0.0,
                    "kind": "membership",
                    "status": "pass" if kind else "fail"})
            n_anti = sum(1 for k in kinds if k == "antistokes")
            n_stokes = sum(1 for k in kinds if k == "stokes")
            rows.append({
                "entry": f"({m},{eps}) panel {panel} composition",
                "expected": "2 antistokes + 4 stokes",
                "computed": f"{n_anti} antistokes + {n_stokes} stokes",
                "deviation": abs(n_anti - 2) + abs(n_stokes - 4),
                "tolerance": 0.0, "kind": "membership",
                "status": "pass" if (n_anti, n_stokes) == (2, 4) else "fail"})
    pair = bb_rays(5)
    expected_pair = sorted([17.0 / 14.0 * np.pi, 25.0 / 14.0 * np.pi])
    got_pair = sorted([pair.theta_right, pair.theta_left])
    dev = max(abs(a - bq) for a, bq in zip(got_pair, expected_pair))
    rows.append({"entry": "bb_rays(5) = {17pi/14, 25pi/14}",
                 "expected": "{17/14, 25/14} pi",
                 "computed": "{" + ", ".join(f"{a/np.pi:.6f} pi" for a in got_pair) + "}",
                 "deviation": dev, "tolerance": 1e-12, "kind": "abs",
                 "status": "pass" if dev < 1e-12 else "fail"})

    if output_dir is not None:
        from .plotting import render_diagram

        specs_and_energies = [
            (PotentialSpec(0, 5), reference.QUINTIC_AXIS_DIAG[0]),
            (PotentialSpec(1, 3), reference.QUINTIC_OFF_AXIS_REFERENCE[0]),
        ]
        for spec, energy in specs_and_energies:
            traces, _ = trace_all_lines(spec, energy, arc_length=8.0)
            path = os.path.join(
                output_dir, f"stokes_M{spec.M}_eps{spec.epsilon}.svg")
            render_diagram(spec, asymptotic_lines(spec), path, traces=traces,
                           energy=energy,
                           radius=max(2.5 * energy ** (1.0 / spec.degree), 2.0))
    return rows


@main.command("reproduce")
@click.argument("target", type=click.Choice(["table1", "table2", "figures"]))
@click.option("--output-dir", type=str, default=None,
              help="directory for the CSV report (and SVG figures for the "
                   "figures target); default: report to stdout only")
@click.option("--digits", type=int, default=12)
def cmd_reproduce(target, output_dir, digits):
    """Recompute a benchmark target and report per-entry deviations."""
    output_dir = _resolve_output(output_dir)
    if output_dir is not None:
        os.makedirs(output_dir, exist_ok=True)
    if target == "table1":
        rows = _reproduce_table1()
    elif target == "table2":
        rows = _reproduce_table2()
    else:
        rows = _reproduce_figures(output_dir)

    failures = 0
    for row in rows:
        status = row["status"]
        failures += status != "pass"
        if row["kind"] == "membership":
            detail = f"got {row['computed']}"
        else:
            detail = (f"expected {_fmt(row['expected'], digits)}, "
                      f"got {_fmt(row['computed'], digits)}, "
                      f"{row['kind']} deviation {row['deviation']:.3g} "
                      f"(tol {row['tolerance']:.3g})")
        click.echo(f"[{status.upper():4s}] {row['entry']}: {detail}")

    manifest = RunManifest(command="reproduce",
                           parameters={"target": target},
                           warnings=[f"{failures} failing entries"] if failures else [])
    if output_dir is not None:
        report = os.path.join(output_dir, f"reproduce_{target}.csv")
        _emit(rows, ["entry", "expected", "computed", "deviation", "tolerance",
                     "kind", "status"], manifest, "csv", report, digits)
    click.echo(f"{len(rows) - failures}/{len(rows)} entries pass")
    if failures:
        sys.exit(1)


if __name__ == "__main__":
    main()
