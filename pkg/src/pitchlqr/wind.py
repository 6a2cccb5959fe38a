"""
Sinusoidal microburst disturbance.

Along the flight path the horizontal gust u_g runs headwind -> zero at the
core -> tailwind, and the vertical gust w_g is a downdraft peaking at the
core:

    u_g(t) = A_u sin(ω_u t),  w_g(t) = A_w sin(ω_w t),  0 ≤ t ≤ duration

and zero outside the window. With ``interpretation="hertz"`` the frequency
parameters are in Hz (ω = 2πf); with ``"radians_per_second"`` they are used
as ω directly.
"""

from dataclasses import dataclass

import numpy as np

HERTZ = "hertz"
RADIANS = "radians_per_second"
INTERPRETATIONS = (HERTZ, RADIANS)
_ALIASES = {"hz": HERTZ, "rad": RADIANS, "rad/s": RADIANS, "radians": RADIANS}


def normalize_interpretation(name):
    key = str(name).strip().lower()
    key = _ALIASES.get(key, key)
    if key not in INTERPRETATIONS:
        raise ValueError(f"unknown frequency interpretation {name!r}")
    return key


@dataclass(frozen=True)
class MicroburstProfile:
    amplitude_u: float = 3.0
    amplitude_w: float = -5.0
    freq_u: float = 0.05
    freq_w: float = 0.025
    duration: float = 20.0
    interpretation: str = HERTZ

    def __post_init__(self):
        for name in ("amplitude_u", "amplitude_w", "freq_u", "freq_w", "duration"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name}: non-finite value {value!r}")
            object.__setattr__(self, name, value)
        if self.duration <= 0:
            raise ValueError(f"duration: must be positive, got {self.duration!r}")
        object.__setattr__(self, "interpretation", normalize_interpretation(self.interpretation))

    def scaled(self, factor):
        """Same profile with both amplitudes multiplied by ``factor``."""
        return MicroburstProfile(
            self.amplitude_u * factor,
            self.amplitude_w * factor,
            self.freq_u,
            self.freq_w,
            self.duration,
            self.interpretation,
        )


def _sin_cycles(cycles):
    """sin(2π·cycles), exactly zero at whole and half cycles."""
    cycles = np.asarray(cycles, dtype=float)
    half_turns = 2.0 * cycles
    out = np.sin(2.0 * np.pi * cycles)
    return np.where(half_turns == np.round(half_turns), 0.0, out)


def gust_series(profile, times):
    """Vectorized (u_g, w_g) in m/s at each time in ``times``."""
    t = np.asarray(times, dtype=float)
    if profile.interpretation == HERTZ:
        ug = profile.amplitude_u * _sin_cycles(profile.freq_u * t)
        wg = profile.amplitude_w * _sin_cycles(profile.freq_w * t)
    else:
        ug = profile.amplitude_u * np.sin(profile.freq_u * t)
        wg = profile.amplitude_w * np.sin(profile.freq_w * t)
    inside = (t >= 0.0) & (t <= profile.duration)
    return np.where(inside, ug, 0.0), np.where(inside, wg, 0.0)


def gust_at(profile, t):
    """(u_g, w_g) in m/s at time ``t`` (s)."""
    ug, wg = gust_series(profile, float(t))
    return float(ug), float(wg)


def alpha_gust(w_g, cond):
    """Disturbance angle of attack (rad) from a vertical gust: w_g / u0."""
    return np.asarray(w_g, dtype=float) / cond.u0 if np.ndim(w_g) else float(w_g) / cond.u0
