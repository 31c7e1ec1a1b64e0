"""Physical constants and unit helpers.

All internal frequencies are angular (rad/s).  User-facing inputs and
outputs quote ordinary frequencies (Hz, i.e. cycles per second); the two
helpers below convert between the conventions.
"""

import math

# CODATA 2018 exact values
HBAR = 1.054571817e-34  # J s
KB = 1.380649e-23  # J / K

TWO_PI = 2.0 * math.pi


def rad_from_hz(nu: float) -> float:
    """Angular frequency (rad/s) for an ordinary frequency in Hz."""
    return TWO_PI * nu


def hz_from_rad(omega: float) -> float:
    """Ordinary frequency (Hz) for an angular frequency in rad/s."""
    return omega / TWO_PI
