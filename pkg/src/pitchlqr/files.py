"""
Aircraft and scenario files, trajectory CSV, and JSON result documents.

Aircraft and scenario files are INI-style text read with ``configparser``;
their schemas are documented in the README. Relative paths inside a
scenario resolve against the scenario's directory, then against the files
bundled with the package, so ``aircraft = navion.aircraft`` always works.
"""

import configparser
import json
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path

import numpy as np

from .riccati import DEFAULT_Q_DIAG, DEFAULT_R, LqrWeights
from .statespace import N_STATES, FlightCondition, ModelError, StabilityDerivatives
from .wind import MicroburstProfile, normalize_interpretation

DERIVATIVE_FIELDS = tuple(f.name for f in fields(StabilityDerivatives))
CSV_COLUMNS = ("t", "u", "alpha", "q", "theta", "h", "delta_e", "u_g", "w_g", "alpha_g")
# state columns that hold angles or angular rates and are written in degrees
_ANGULAR_STATES = (1, 2, 3)


class FileFormatError(ValueError):
    """A required field is missing or malformed in an input file."""


def bundled_path(name):
    """Path to a file shipped in the package's data directory."""
    return Path(str(resources.files("pitchlqr").joinpath("data", name)))


def resolve_path(path, base_dir=None):
    path = Path(path)
    candidates = [path]
    if base_dir is not None and not path.is_absolute():
        candidates.insert(0, Path(base_dir) / path)
    if not path.is_absolute():
        candidates.append(bundled_path(path.name))
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    raise FileNotFoundError(f"file not found: {path}")


def _parser():
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # keep X_u distinct from x_u
    return parser


def _read(path):
    parser = _parser()
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise FileFormatError(f"{path}: {exc}") from exc
    return parser


def _number(section, key, raw):
    try:
        value = float(raw)
    except ValueError:
        raise FileFormatError(f"[{section}] {key}: not a number ({raw!r})") from None
    if not math.isfinite(value):
        raise FileFormatError(f"[{section}] {key}: non-finite value ({raw!r})")
    return value


def _numbers(section, key, raw, count=None):
    items = [s for s in raw.replace(",", " ").split()]
    values = [_number(section, key, s) for s in items]
    if count is not None and len(values) != count:
        raise FileFormatError(f"[{section}] {key}: expected {count} values, got {len(values)}")
    return values


def _require(parser, section, key):
    if not parser.has_section(section):
        raise FileFormatError(f"missing section [{section}]")
    if not parser.has_option(section, key):
        raise FileFormatError(f"[{section}] missing field {key}")
    return parser.get(section, key)


@dataclass(frozen=True)
class Aircraft:
    name: str
    derivatives: StabilityDerivatives
    condition: FlightCondition


def load_aircraft(path):
    """Parse an aircraft file.

    Sections: ``[aircraft]`` (optional ``name``), ``[derivatives]`` with all
    twelve derivative fields, ``[flight_condition]`` with ``u0`` and ``g``.
    """
    path = Path(path)
    parser = _read(path)
    name = parser.get("aircraft", "name", fallback=path.stem)
    values = {
        key: _number("derivatives", key, _require(parser, "derivatives", key))
        for key in DERIVATIVE_FIELDS
    }
    extra = set(parser.options("derivatives")) - set(DERIVATIVE_FIELDS)
    if extra:
        raise FileFormatError(f"[derivatives] unknown field {sorted(extra)[0]}")
    cond = {
        key: _number("flight_condition", key, _require(parser, "flight_condition", key))
        for key in ("u0", "g")
    }
    try:
        return Aircraft(name, StabilityDerivatives(**values), FlightCondition(**cond))
    except ModelError as exc:
        raise FileFormatError(str(exc)) from exc


@dataclass(frozen=True)
class Scenario:
    """Everything one CLI run needs. Angles in ``initial_state`` are radians."""

    aircraft_path: Path
    q_diag: tuple = DEFAULT_Q_DIAG
    r: float = DEFAULT_R
    profile: MicroburstProfile = field(default_factory=MicroburstProfile)
    dt: float = 0.001
    t_final: float = 100.0
    initial_state: tuple = (0.0,) * N_STATES
    out_dir: Path = Path("out")

    @property
    def weights(self):
        return LqrWeights.diagonal(self.q_diag, self.r)


def state_from_display(values):
    """Convert a state with angles in degrees to internal radians."""
    x = np.asarray(values, dtype=float).copy()
    x[list(_ANGULAR_STATES)] = np.radians(x[list(_ANGULAR_STATES)])
    return x


def load_scenario(path):
    """Parse a scenario file.

    Sections: ``[scenario]`` (``aircraft``, optional ``out_dir``),
    ``[weights]`` (``q_diag``, ``r``), ``[microburst]``, ``[simulation]``
    (``dt``, ``t_final``, optional ``initial_state`` with angles in degrees).
    Missing optional sections fall back to the bundled scenario's values.
    """
    path = Path(path)
    parser = _read(path)
    base = path.parent
    aircraft = resolve_path(_require(parser, "scenario", "aircraft"), base)
    out_dir = Path(parser.get("scenario", "out_dir", fallback="out"))
    if not out_dir.is_absolute():
        # bundled scenarios must not write into the installed package
        bundled = base.resolve() == bundled_path("").resolve()
        out_dir = (Path.cwd() if bundled else base) / out_dir

    q_diag, r = DEFAULT_Q_DIAG, DEFAULT_R
    if parser.has_section("weights"):
        if parser.has_option("weights", "q_diag"):
            q_diag = tuple(
                _numbers("weights", "q_diag", parser.get("weights", "q_diag"), N_STATES)
            )
        if parser.has_option("weights", "r"):
            r = _number("weights", "r", parser.get("weights", "r"))

    profile_kwargs = {}
    if parser.has_section("microburst"):
        for key in ("amplitude_u", "amplitude_w", "freq_u", "freq_w", "duration"):
            if parser.has_option("microburst", key):
                profile_kwargs[key] = _number("microburst", key, parser.get("microburst", key))
        if parser.has_option("microburst", "interpretation"):
            try:
                profile_kwargs["interpretation"] = normalize_interpretation(
                    parser.get("microburst", "interpretation")
                )
            except ValueError as exc:
                raise FileFormatError(f"[microburst] interpretation: {exc}") from None
    try:
        profile = MicroburstProfile(**profile_kwargs)
    except ValueError as exc:
        raise FileFormatError(f"[microburst] {exc}") from None

    sim = {"dt": 0.001, "t_final": 100.0}
    initial = (0.0,) * N_STATES
    if parser.has_section("simulation"):
        for key in sim:
            if parser.has_option("simulation", key):
                sim[key] = _number("simulation", key, parser.get("simulation", key))
        if parser.has_option("simulation", "initial_state"):
            raw = parser.get("simulation", "initial_state")
            initial = tuple(
                state_from_display(_numbers("simulation", "initial_state", raw, N_STATES))
            )
    return Scenario(aircraft, q_diag, r, profile, sim["dt"], sim["t_final"], initial, out_dir)


def trajectory_table(trajectory):
    """Rows for the trajectory CSV, angles converted to degrees."""
    states = np.array(trajectory.states, dtype=float)
    states[:, _ANGULAR_STATES] = np.degrees(states[:, _ANGULAR_STATES])
    gusts = np.array(trajectory.gusts, dtype=float)
    gusts[:, 2] = np.degrees(gusts[:, 2])
    return np.column_stack(
        [trajectory.times, states, np.degrees(trajectory.controls), gusts]
    )


def write_trajectory_csv(trajectory, path):
    np.savetxt(
        path,
        trajectory_table(trajectory),
        delimiter=",",
        header=",".join(CSV_COLUMNS),
        comments="",
        fmt="%.10g",
    )


def write_gust_csv(trajectory, path):
    """Disturbance time series: t, u_g (m/s), w_g (m/s), alpha_g (deg)."""
    g = trajectory.gusts
    table = np.column_stack([trajectory.times, g[:, 0], g[:, 1], np.degrees(g[:, 2])])
    np.savetxt(path, table, delimiter=",", header="t,u_g,w_g,alpha_g", comments="", fmt="%.10g")


def read_trajectory_csv(path):
    """Load a trajectory CSV into a dict of column arrays (display units)."""
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return {name: data[:, i] for i, name in enumerate(header)}


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, Path):
        return str(value)
    return value


def write_json(document, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable(document), fh, indent=2, sort_keys=False)
        fh.write("\n")


def synthesis_document(synth):
    return {
        "Q": synth.weights.Q,
        "R": synth.weights.R,
        "S": synth.S,
        "K": synth.K,
        "residual_norm": synth.residual_norm,
        "relative_residual": synth.relative_residual,
        "closed_loop_eigenvalues": list(synth.closed_loop_eigenvalues),
    }
