"""Command-line interface: spectrum tables, wavefunction samples, oracle runs,
verification, and allowed-region reports, as deterministic CSV/JSON.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numerical
non-convergence.  Passing --plot renders a matplotlib figure next to the
delimited output; the tables themselves stay plot-ready either way.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from .operators import Component, FieldConfig, measured_kappa
from .oracle import (
    Grid,
    GridTooCoarseError,
    _branch_root,
    solve_nonrel,
    solve_relativistic_coupled,
    sweep_nonrel,
)
from .report import (
    render_region_figure,
    render_spectrum_figure,
    render_wavefunction_figure,
    write_csv,
    write_json,
)
from .spectra import (
    EnergyKind,
    allowed_m_interval,
    bound_state_count,
    continuum_threshold,
    nonrel_spectrum,
    relativistic_spectrum,
)
from .verify import SECTIONS, run_verification
from .wavefunctions import ode_residual, radial_wavefunction

OUTDIR_ENV = "H2LANDAU_OUTDIR"
PLOT_AUTO = "__auto__"


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _channel_arg(name: str) -> list[Component]:
    table = {"psi1": [Component.psi1], "psi2": [Component.psi2],
             "psi3": [Component.psi3], "all": list(Component)}
    if name not in table:
        raise UsageError(f"unknown channel {name!r} (psi1, psi2, psi3 or all)")
    return table[name]


def _parse_m_range(text: str) -> range:
    try:
        lo_s, hi_s = text.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise UsageError(f"bad m range {text!r}, expected like -3..4") from None
    if hi < lo:
        raise UsageError(f"empty m range {text!r}")
    return range(lo, hi + 1)


def _load_config(path: str | None) -> dict[str, str]:
    if path is None:
        return {}
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"bad config line {raw!r} (need key=value)")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _pick(flag_value, config: dict, key: str, default, cast):
    if flag_value is not None:
        return flag_value
    if key in config:
        try:
            return cast(config[key])
        except ValueError:
            raise UsageError(f"bad config value for {key}: {config[key]!r}") from None
    return default


def _resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    if p.parent != Path("."):
        p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(out: Path | None, text: str):
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _plot_path(args_plot, out: Path | None) -> Path | None:
    if args_plot is None:
        return None
    if args_plot != PLOT_AUTO:
        return _resolve_out(args_plot)
    if out is None:
        raise UsageError("--plot without a file name requires --out")
    return out.with_suffix(".png")


def build_parser() -> Parser:
    parser = Parser(prog="h2landau",
                    description="Bound levels of a vector particle in a uniform "
                                "magnetic field on the hyperbolic plane")
    parser.add_argument("--config", help="key=value defaults file")
    sub = parser.add_subparsers(dest="command", parser_class=Parser)

    def common_io(p):
        p.add_argument("-o", "--out", help="output file (default: stdout; "
                       f"${OUTDIR_ENV} prefixes relative paths)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("spectrum", help="closed-form bound-level table")
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--M", type=float, default=None)
    p.add_argument("--m-range", dest="m_range", default=None)
    p.add_argument("--n-max", dest="n_max", type=int, default=None)
    p.add_argument("--channel", default=None)
    p.add_argument("--relativistic", action="store_true")
    p.add_argument("--kappa", type=float, default=None,
                   help="coupling constant (default: measured from the operators)")
    p.add_argument("--check", action="store_true",
                   help="solve the same levels numerically and emit differences")
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--grid-points", dest="grid_points", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--plot", nargs="?", const=PLOT_AUTO, default=None)
    common_io(p)

    p = sub.add_parser("wavefunction", help="sampled bound radial profile")
    p.add_argument("--channel", default=None)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--M", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--plot", nargs="?", const=PLOT_AUTO, default=None)
    common_io(p)

    p = sub.add_parser("oracle", help="independent numerical spectrum (JSON)")
    p.add_argument("--channel", default=None)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--M", type=float, default=None)
    p.add_argument("--relativistic", action="store_true")
    p.add_argument("--kappa", type=float, default=None)
    p.add_argument("--rmax", type=float, default=None)
    p.add_argument("--grid-points", dest="grid_points", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--drift-tol", dest="drift_tol", type=float, default=None)
    p.add_argument("-o", "--out", help="output file (default: stdout)")

    p = sub.add_parser("verify", help="run the verification suite")
    for section in SECTIONS:
        p.add_argument(f"--{section}", action="store_true",
                       help=f"run only the {section} section (combinable)")
    p.add_argument("--quick", action="store_true",
                   help="skip the oracle sweep (fast structural checks only)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--out", default=None)

    p = sub.add_parser("region", help="allowed angular numbers and level counts")
    p.add_argument("--B", type=float, default=None)
    p.add_argument("--M", type=float, default=None)
    p.add_argument("--channel", default=None)
    p.add_argument("--m-min", dest="m_min", type=int, default=None)
    p.add_argument("--m-max", dest="m_max", type=int, default=None)
    p.add_argument("--plot", nargs="?", const=PLOT_AUTO, default=None)
    common_io(p)

    return parser


def _field_config(args, config) -> FieldConfig:
    B = _pick(args.B, config, "B", None, float)
    if B is None:
        raise UsageError("--B is required (or set B in the config file)")
    M = _pick(getattr(args, "M", None), config, "M", 1.0, float)
    try:
        return FieldConfig(B=B, M=M)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _grid(args, config, default_n=8000) -> Grid:
    r_max = _pick(args.rmax, config, "rmax", 30.0, float)
    n = _pick(args.grid_points, config, "grid_points", default_n, int)
    try:
        return Grid(r_max=r_max, n=n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_spectrum(args, config) -> int:
    cfg = _field_config(args, config)
    if cfg.B == 0:
        raise UsageError("no bound states at B=0: the allowed region is empty")
    channels = _channel_arg(_pick(args.channel, config, "channel", "all", str))
    m_range = _parse_m_range(_pick(args.m_range, config, "m_range", None, str)
                             or _default_m_range(cfg))
    n_max = _pick(args.n_max, config, "n_max", None, int)

    if args.relativistic:
        kappa = _pick(args.kappa, config, "kappa", None, float)
        if kappa is None:
            kappa = measured_kappa()
        entries = relativistic_spectrum(cfg, m_range, kappa=kappa, n_max=n_max)
    else:
        entries = nonrel_spectrum(cfg, channels=channels, m_values=m_range,
                                  n_max=n_max)

    header = ["channel", "variant", "m", "n", "value", "kind", "threshold", "bound"]
    rows = []
    nonconverged = 0
    oracle_map = {}
    if args.check:
        tol = _pick(args.tol, config, "tol", 1e-10, float)
        grid = _grid(args, config, default_n=2000)
        if args.relativistic:
            kappa_chk = kappa
            for m in sorted({e.m for e in entries}):
                res = solve_relativistic_coupled(m, cfg, kappa=kappa_chk,
                                                 grid=grid, tol=tol,
                                                 drift_tol=1e-6)
                nonconverged += sum(not c for c in res.converged)
                oracle_map[m] = res
        else:
            problems = sorted({(e.channel, e.m) for e in entries},
                              key=lambda p: (p[0].name, p[1]))
            results = sweep_nonrel(problems, cfg, grid=grid, tol=tol,
                                   drift_tol=1e-6)
            for prob, res in zip(problems, results):
                nonconverged += sum(not c for c in res.converged)
                oracle_map[prob] = res
        header += ["oracle_value", "abs_diff"]

    kappa_thr = kappa if args.relativistic else 1.0
    for e in sorted(entries, key=lambda e: (e.channel.name, e.m, e.n, e.kind.value)):
        thr = _threshold_in_value_units(e, cfg, kappa_thr)
        row = [e.channel.name, e.variant.name, e.m, e.n, e.value, e.kind.value,
               thr, True]
        if args.check:
            oracle_value = _oracle_value_for(e, oracle_map, cfg)
            row += [oracle_value,
                    abs(oracle_value - e.value) if oracle_value == oracle_value
                    else float("nan")]
        rows.append(row)

    out = _resolve_out(args.out)
    buf = io.StringIO()
    if args.format == "csv":
        write_csv(buf, header, rows)
    else:
        payload = {
            "schema": "h2landau.spectrum.v1",
            "params": {"B": cfg.B, "M": cfg.M,
                       "relativistic": bool(args.relativistic),
                       "m_range": [m_range.start, m_range.stop - 1],
                       "n_max": n_max},
            "rows": [dict(zip(header, row)) for row in rows],
        }
        write_json(buf, payload)
    _emit(out, buf.getvalue())

    plot = _plot_path(args.plot, out)
    if plot is not None:
        render_spectrum_figure([dict(zip(header, row)) for row in rows],
                               str(plot), cfg.B, cfg.M, args.relativistic)
    if nonconverged:
        print(f"warning: {nonconverged} oracle levels did not converge",
              file=sys.stderr)
        return 3
    return 0


def _default_m_range(cfg: FieldConfig) -> str:
    region = allowed_m_interval(cfg)
    ms = region.integers(-12, 12)
    if not ms:
        raise UsageError("allowed region holds no m in -12..12")
    return f"{ms[0]}..{ms[-1]}"


def _threshold_in_value_units(entry, cfg: FieldConfig, kappa: float) -> float:
    # same units as the value column: eps*M for nonrelativistic rows,
    # eps (per branch) for relativistic ones
    x_th = continuum_threshold(entry.channel, cfg)
    if entry.kind is EnergyKind.nonrel:
        return x_th / 2.0
    shift = {EnergyKind.rel_phi2: 0.0, EnergyKind.rel_gprime: +1.0,
             EnergyKind.rel_phi0prime: -1.0}[entry.kind]
    return float(_branch_root(shift * kappa * cfg.B / cfg.M, cfg.M, x_th))


def _oracle_value_for(entry, oracle_map, cfg) -> float:
    if entry.kind is EnergyKind.nonrel:
        res = oracle_map.get((entry.channel, entry.m))
        if res is None or entry.n >= len(res.eigenvalues):
            return float("nan")
        return float(res.eigenvalues[entry.n]) / 2.0
    res = oracle_map.get(entry.m)
    if res is None:
        return float("nan")
    branch = {EnergyKind.rel_phi2: res.phi2, EnergyKind.rel_gprime: res.gprime,
              EnergyKind.rel_phi0prime: res.phi0prime}[entry.kind]
    if entry.n >= len(branch):
        return float("nan")
    return float(branch[entry.n])


def cmd_wavefunction(args, config) -> int:
    cfg = _field_config(args, config)
    channel = _channel_arg(_pick(args.channel, config, "channel", "psi2", str))
    if len(channel) != 1:
        raise UsageError("wavefunction needs a single channel")
    channel = channel[0]
    samples = _pick(args.samples, config, "samples", 400, int)
    if samples < 2:
        raise UsageError("need at least 2 samples")

    mirrored = cfg.B < 0
    ch_n, m_n, cfg_n = channel, args.m, cfg
    if mirrored:
        ch_n, m_n = channel.mirrored, -args.m
        cfg_n = FieldConfig(B=-cfg.B, M=cfg.M)
    try:
        psi = radial_wavefunction(ch_n, m_n, args.n, cfg_n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    r_max = _pick(args.rmax, config, "rmax", min(psi.r_decay, 20.0), float)
    r = np.linspace(r_max / samples, r_max, samples)
    values = psi.value(r)

    head = {
        "schema": "h2landau.wavefunction.v1",
        "channel": channel.name,
        "m": args.m,
        "n": args.n,
        "B": cfg.B,
        "M": cfg.M,
        "mirrored": mirrored,
        "variant": psi.variant.name,
        "exponents": {"a": psi.exponents.a, "c": psi.exponents.c},
        "level_eps_m": psi.level,
        "norm_integral": psi.norm,
        "tail_estimate": psi.tail_estimate,
        "nodes": psi.node_count(),
        "ode_residual": ode_residual(psi),
    }
    out = _resolve_out(args.out)
    buf = io.StringIO()
    if args.format == "csv":
        buf.write("# " + json.dumps(head, sort_keys=True) + "\n")
        write_csv(buf, ["r", "psi"], [(float(a), float(b))
                                      for a, b in zip(r, values)])
    else:
        payload = dict(head)
        payload["samples"] = [{"r": float(a), "psi": float(b)}
                              for a, b in zip(r, values)]
        write_json(buf, payload)
    _emit(out, buf.getvalue())

    plot = _plot_path(args.plot, out)
    if plot is not None:
        title = (f"{channel.name} m={args.m} n={args.n} B={cfg.B:g} "
                 f"(eps*M = {psi.level:g})")
        render_wavefunction_figure(r, values, str(plot), title)
    return 0


def cmd_oracle(args, config) -> int:
    cfg = _field_config(args, config)
    channel = _channel_arg(_pick(args.channel, config, "channel", "psi2", str))
    if len(channel) != 1:
        raise UsageError("oracle needs a single channel")
    channel = channel[0]
    grid = _grid(args, config)
    tol = _pick(args.tol, config, "tol", 1e-10, float)
    drift_tol = _pick(args.drift_tol, config, "drift_tol", 1e-8, float)

    if args.relativistic:
        kappa = _pick(args.kappa, config, "kappa", None, float)
        if kappa is None:
            kappa = measured_kappa()
        res = solve_relativistic_coupled(args.m, cfg, kappa=kappa, grid=grid,
                                         tol=tol, drift_tol=drift_tol)
        payload = {
            "schema": "h2landau.oracle.relativistic.v1",
            "params": {"channel": channel.name, "m": args.m, "B": cfg.B,
                       "M": cfg.M, "kappa": kappa,
                       "grid": {"r_max": grid.r_max, "n": grid.n}},
            "slot_threshold": res.slot_threshold,
            "eps_cut": res.eps_cut,
            "phi2": [float(v) for v in res.phi2],
            "coupled": [float(v) for v in res.coupled],
            "gprime": [float(v) for v in res.gprime],
            "phi0prime": [float(v) for v in res.phi0prime],
            "branch_mismatch": res.branch_mismatch,
            "converged": [bool(c) for c in res.converged],
        }
        ok = all(res.converged)
    else:
        res = solve_nonrel(channel, args.m, cfg, grid=grid, tol=tol,
                           drift_tol=drift_tol)
        payload = {
            "schema": "h2landau.oracle.v1",
            "params": {"channel": channel.name, "m": args.m, "B": cfg.B,
                       "M": cfg.M, "tol": tol,
                       "grid": {"r_max": grid.r_max, "n": grid.n}},
            "threshold": res.threshold,
            "eigenvalues": [float(v) for v in res.eigenvalues],
            "converged": [bool(c) for c in res.converged],
            "count_below_threshold": res.count_below,
            "grid_levels": [int(n) for n, _ in res.history],
        }
        ok = res.all_converged
    out = _resolve_out(args.out)
    buf = io.StringIO()
    write_json(buf, payload)
    _emit(out, buf.getvalue())
    if not ok:
        print("warning: not all levels converged; refine the grid",
              file=sys.stderr)
        return 3
    return 0


def cmd_verify(args, config) -> int:
    chosen = [s for s in SECTIONS if getattr(args, s)]
    report = run_verification(sections=chosen or None, quick=args.quick)
    out = _resolve_out(args.out)
    buf = io.StringIO()
    if args.format == "json":
        payload = {
            "schema": "h2landau.verify.v1",
            "ok": report.ok,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail,
                        "required": c.required} for c in report.checks],
            "findings": report.findings,
        }
        write_json(buf, payload)
    else:
        for c in report.checks:
            tag = "PASS" if c.passed else "FAIL"
            buf.write(f"[{tag}] {c.name}: {c.detail}\n")
        if report.findings:
            buf.write("findings:\n")
            for f in report.findings:
                buf.write(f"  - {f}\n")
        n_pass = sum(1 for c in report.checks if c.passed)
        buf.write(f"RESULT: {'PASS' if report.ok else 'FAIL'} "
                  f"({n_pass}/{len(report.checks)} checks)\n")
    _emit(out, buf.getvalue())
    return 0 if report.ok else 2


def cmd_region(args, config) -> int:
    cfg = _field_config(args, config)
    if cfg.B == 0:
        raise UsageError("no bound states at B=0: the allowed region is empty")
    channels = _channel_arg(_pick(args.channel, config, "channel", "all", str))
    m_min = _pick(args.m_min, config, "m_min", -12, int)
    m_max = _pick(args.m_max, config, "m_max", 12, int)
    region = allowed_m_interval(cfg)
    rows = []
    for ch in channels:
        for m in region.integers(m_min, m_max):
            rows.append([ch.name, m, bound_state_count(ch, m, cfg)])
    header = ["channel", "m", "count"]
    out = _resolve_out(args.out)
    buf = io.StringIO()
    if args.format == "csv":
        write_csv(buf, header, rows)
    else:
        payload = {
            "schema": "h2landau.region.v1",
            "params": {"B": cfg.B, "M": cfg.M, "m_min": m_min, "m_max": m_max},
            "rows": [dict(zip(header, row)) for row in rows],
        }
        write_json(buf, payload)
    _emit(out, buf.getvalue())
    plot = _plot_path(args.plot, out)
    if plot is not None:
        render_region_figure([dict(zip(header, row)) for row in rows],
                             str(plot), cfg.B)
    return 0


HANDLERS = {
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "region": cmd_region,
}


def _merge_range_flags(argv: list[str]) -> list[str]:
    # argparse reads "-3..4" as an option; fold it into "--m-range=-3..4"
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--m-range" and i + 1 < len(argv):
            out.append(f"--m-range={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_range_flags(list(argv))
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return 1
        config = _load_config(args.config)
        return HANDLERS[args.command](args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except GridTooCoarseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
