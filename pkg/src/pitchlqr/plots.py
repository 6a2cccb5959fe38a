"""SVG line plots of simulated runs.

Every plot renders the display-unit table produced for the CSV files, so
figures and CSVs always show the same numbers.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .files import CSV_COLUMNS, trajectory_table  # noqa: E402

# fixed salt and no date so reruns produce byte-identical SVG files
_RC = {"svg.hashsalt": "pitchlqr", "svg.fonttype": "path"}
_COL = {name: i for i, name in enumerate(CSV_COLUMNS)}


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)


def _overlay(runs, column, ylabel, title, path):
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(7, 4))
        for label, traj in runs:
            table = trajectory_table(traj)
            ax.plot(table[:, 0], table[:, _COL[column]], label=label)
        ax.set_xlabel("t (s)")
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        ax.grid(True)
        ax.legend()
        fig.tight_layout()
        _save(fig, path)


def plot_gusts(trajectory, path):
    table = trajectory_table(trajectory)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(7, 4))
        ax.plot(table[:, 0], table[:, _COL["u_g"]], label="u_g")
        ax.plot(table[:, 0], table[:, _COL["w_g"]], label="w_g")
        ax.set_xlabel("t (s)")
        ax.set_ylabel("gust speed (m/s)")
        ax.set_title("Microburst disturbance")
        ax.grid(True)
        ax.legend()
        fig.tight_layout()
        _save(fig, path)


def plot_comparison(uncontrolled, controlled, out_dir):
    """Write the four comparison figures into ``out_dir``; returns their paths."""
    runs = [("uncontrolled", uncontrolled), ("LQR", controlled)]
    paths = {
        "gusts": out_dir / "gusts.svg",
        "theta": out_dir / "theta.svg",
        "altitude": out_dir / "altitude.svg",
        "elevator": out_dir / "elevator.svg",
    }
    plot_gusts(uncontrolled, paths["gusts"])
    _overlay(runs, "theta", "Δθ (deg)", "Pitch angle", paths["theta"])
    _overlay(runs, "h", "Δh (m)", "Altitude", paths["altitude"])
    _overlay([("LQR", controlled)], "delta_e", "δe (deg)", "Elevator deflection",
             paths["elevator"])
    return paths
