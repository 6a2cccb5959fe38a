"""Command-line front end.

    pitchlqr model    AIRCRAFT
    pitchlqr analyze  AIRCRAFT [--json FILE]
    pitchlqr synth    SCENARIO [--out-dir DIR]
    pitchlqr compare  SCENARIO [--interpretation {hertz,rad}] [--dt DT]
                      [--t-final T] [--out-dir DIR] [--no-plots]
    pitchlqr gusts    SCENARIO [--out FILE]

Flags override the matching scenario fields.
"""

import argparse
import dataclasses
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import controllability_rank, find_mode, modal_analysis, observability_rank
from .files import (
    FileFormatError,
    load_aircraft,
    load_scenario,
    resolve_path,
    synthesis_document,
    write_gust_csv,
    write_json,
    write_trajectory_csv,
)
from .riccati import SynthesisError, solve_care
from .sim import DivergenceError, SimConfig, extract_metrics, reductions, simulate
from .statespace import STATE_NAMES, assemble_model
from .wind import normalize_interpretation


class CliError(Exception):
    pass


def _fmt_matrix(name, M):
    rows = [" ".join(f"{v:10.4f}" for v in row) for row in np.asarray(M)]
    return f"{name} =\n" + "\n".join("  " + r for r in rows)


def _load_model(path):
    aircraft = load_aircraft(resolve_path(path))
    return aircraft, assemble_model(aircraft.derivatives, aircraft.condition)


def cmd_model(args):
    aircraft, model = _load_model(args.aircraft)
    print(f"# {aircraft.name}  (u0 = {aircraft.condition.u0:g} m/s, g = {aircraft.condition.g:g} m/s^2)")
    print(f"# states: {', '.join(STATE_NAMES)}; input: delta_e; disturbances: u_g, alpha_g")
    for name in "ABGCD":
        print(_fmt_matrix(name, getattr(model, name)))
    return 0


def analysis_document(model):
    ctrb = controllability_rank(model)
    obsv = observability_rank(model)
    modes = modal_analysis(model)
    return {
        "controllability": dataclasses.asdict(ctrb),
        "observability": dataclasses.asdict(obsv),
        "modes": [
            {
                "label": m.label,
                "eigenvalue": m.eigenvalue,
                "natural_frequency_hz": m.natural_frequency,
                "damping_ratio": m.damping_ratio,
            }
            for m in modes
        ],
    }, ctrb, obsv, modes


def cmd_analyze(args):
    aircraft, model = _load_model(args.aircraft)
    doc, ctrb, obsv, modes = analysis_document(model)
    n = model.n_states
    print(f"# {aircraft.name}")
    print(f"controllability rank {ctrb.rank} (of {n}, tolerance {ctrb.tolerance:.3e})")
    print(f"observability rank {obsv.rank} (of {n}, tolerance {obsv.tolerance:.3e})")
    print(f"{'mode':<14}{'eigenvalue':>26}{'freq (Hz)':>12}{'damping':>10}")
    for m in modes:
        lam = f"{m.eigenvalue.real:.5f}{m.eigenvalue.imag:+.5f}j"
        zeta = "-" if m.damping_ratio is None else f"{m.damping_ratio:.4f}"
        print(f"{m.label:<14}{lam:>26}{m.natural_frequency:>12.4f}{zeta:>10}")
    for label in ("short_period", "phugoid"):
        mode = find_mode(modes, label)
        if mode is not None:
            print(f"{label.replace('_', ' ')}: {mode.natural_frequency:.3f} Hz")
    if args.json:
        write_json(doc, args.json)
    failed = []
    if ctrb.rank < n:
        failed.append("uncontrollable")
    if obsv.rank < n:
        failed.append("unobservable")
    if failed:
        print(f"error: system is {' and '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def _scenario_with_overrides(args):
    scenario = load_scenario(resolve_path(args.scenario))
    updates = {}
    if getattr(args, "out_dir", None) is not None:
        updates["out_dir"] = Path(args.out_dir)
    if getattr(args, "dt", None) is not None:
        updates["dt"] = args.dt
    if getattr(args, "t_final", None) is not None:
        updates["t_final"] = args.t_final
    profile_updates = {}
    for key in ("amplitude_u", "amplitude_w", "freq_u", "freq_w", "duration"):
        value = getattr(args, key, None)
        if value is not None:
            profile_updates[key] = value
    if getattr(args, "interpretation", None) is not None:
        profile_updates["interpretation"] = normalize_interpretation(args.interpretation)
    if profile_updates:
        updates["profile"] = dataclasses.replace(scenario.profile, **profile_updates)
    return dataclasses.replace(scenario, **updates)


def _synthesize(scenario):
    aircraft = load_aircraft(scenario.aircraft_path)
    model = assemble_model(aircraft.derivatives, aircraft.condition)
    return model, solve_care(model.A, model.B, scenario.weights)


def cmd_synth(args):
    scenario = _scenario_with_overrides(args)
    _, synth = _synthesize(scenario)
    scenario.out_dir.mkdir(parents=True, exist_ok=True)
    path = scenario.out_dir / "synthesis.json"
    write_json(synthesis_document(synth), path)
    print(_fmt_matrix("S", synth.S))
    print("K = [" + " ".join(f"{v:.4f}" for v in synth.K.ravel()) + "]")
    print(f"CARE residual {synth.residual_norm:.3e} (relative {synth.relative_residual:.3e})")
    cl = ", ".join(f"{c.real:.4f}{c.imag:+.4f}j" for c in synth.closed_loop_eigenvalues)
    print(f"closed-loop eigenvalues: {cl}")
    print(f"wrote {path}")
    return 0


_METRIC_ROWS = (
    ("theta_max", "theta max (deg)"),
    ("theta_min", "theta min (deg)"),
    ("max_pitch_deviation", "peak |theta| (deg)"),
    ("altitude_min", "altitude min (m)"),
    ("altitude_final", "altitude at t_final (m)"),
    ("altitude_settled", "settled altitude (m)"),
    ("elevator_min", "elevator min (deg)"),
    ("elevator_max", "elevator max (deg)"),
    ("settling_time_theta", "theta settling (s)"),
    ("cost_J", "quadratic cost J"),
    ("small_angle_violated", "small-angle violated"),
    ("elevator_limit_violated", "elevator limit violated"),
)


def _metrics_dict(m):
    d = dataclasses.asdict(m)
    d["max_pitch_deviation"] = m.max_pitch_deviation
    d["max_altitude_loss"] = m.max_altitude_loss
    return d


def metrics_table(open_loop, closed_loop, red):
    lines = [f"{'metric':<26}{'uncontrolled':>14}{'LQR':>14}"]
    for key, label in _METRIC_ROWS:
        a, b = getattr(open_loop, key), getattr(closed_loop, key)
        if isinstance(a, bool):
            lines.append(f"{label:<26}{str(a):>14}{str(b):>14}")
        else:
            lines.append(f"{label:<26}{a:>14.4f}{b:>14.4f}")
    lines.append(f"pitch deviation reduction: {100 * red['pitch_deviation']:.1f}%")
    lines.append(f"altitude loss reduction:   {100 * red['altitude_loss']:.1f}%")
    return "\n".join(lines)


def run_comparison(scenario):
    """Uncontrolled and LQR runs of one scenario; returns everything cmd_compare writes."""
    model, synth = _synthesize(scenario)
    configs = [
        SimConfig(scenario.dt, scenario.t_final, None, scenario.initial_state),
        SimConfig(scenario.dt, scenario.t_final, synth.K, scenario.initial_state),
    ]
    with ThreadPoolExecutor(max_workers=2) as pool:
        runs = list(pool.map(lambda c: simulate(model, scenario.profile, c), configs))
    metrics = [extract_metrics(r, model, scenario.weights) for r in runs]
    return model, synth, runs, metrics


def cmd_compare(args):
    scenario = _scenario_with_overrides(args)
    _, synth, (open_run, closed_run), (m_open, m_closed) = run_comparison(scenario)
    red = reductions(m_open, m_closed)

    out = scenario.out_dir
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory_csv(open_run, out / "uncontrolled.csv")
    write_trajectory_csv(closed_run, out / "controlled.csv")
    write_gust_csv(open_run, out / "gusts.csv")
    write_json(synthesis_document(synth), out / "synthesis.json")
    table = metrics_table(m_open, m_closed, red)
    (out / "metrics.txt").write_text(table + "\n", encoding="utf-8")
    write_json(
        {
            "interpretation": scenario.profile.interpretation,
            "dt": scenario.dt,
            "t_final": scenario.t_final,
            "uncontrolled": _metrics_dict(m_open),
            "controlled": _metrics_dict(m_closed),
            "reductions": red,
        },
        out / "metrics.json",
    )
    if not args.no_plots:
        from .plots import plot_comparison

        plot_comparison(open_run, closed_run, out)
    print(f"# interpretation: {scenario.profile.interpretation}")
    print(table)
    print(f"wrote outputs to {out}")
    return 0


def cmd_gusts(args):
    scenario = _scenario_with_overrides(args)
    aircraft = load_aircraft(scenario.aircraft_path)
    model = assemble_model(aircraft.derivatives, aircraft.condition)
    run = simulate(model, scenario.profile, SimConfig(scenario.dt, scenario.t_final))
    out = Path(args.out) if args.out else scenario.out_dir / "gusts.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_gust_csv(run, out)
    print(f"wrote {out}")
    return 0


def _add_profile_flags(p):
    p.add_argument("--interpretation", choices=["hertz", "hz", "rad", "radians_per_second"])
    p.add_argument("--amplitude-u", type=float, help="horizontal gust amplitude (m/s)")
    p.add_argument("--amplitude-w", type=float, help="vertical gust amplitude (m/s)")
    p.add_argument("--freq-u", type=float)
    p.add_argument("--freq-w", type=float)
    p.add_argument("--duration", type=float, help="gust window length (s)")
    p.add_argument("--dt", type=float, help="integration step (s)")
    p.add_argument("--t-final", type=float, help="simulation horizon (s)")
    p.add_argument("--out-dir", help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pitchlqr", description="LQR pitch control of a light aircraft in a microburst."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="print the state-space matrices")
    p.add_argument("aircraft")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("analyze", help="controllability, observability and modes")
    p.add_argument("aircraft")
    p.add_argument("--json", help="also write the report as JSON")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synth", help="solve the Riccati equation for the LQR gain")
    p.add_argument("scenario")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("compare", help="simulate uncontrolled vs LQR through the microburst")
    p.add_argument("scenario")
    _add_profile_flags(p)
    p.add_argument("--no-plots", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gusts", help="write the disturbance time series as CSV")
    p.add_argument("scenario")
    _add_profile_flags(p)
    p.add_argument("--out", help="CSV path (default OUT_DIR/gusts.csv)")
    p.set_defaults(func=cmd_gusts)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FileNotFoundError, FileFormatError, ValueError, SynthesisError, DivergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
