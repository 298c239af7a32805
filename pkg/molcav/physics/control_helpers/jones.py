# molcav/physics/control_helpers/jones.py
"""
Jones calculus for the birefringent crystal cavity.

Lab frame: the b axis lies along x (0 deg), the a axis at axis_angle.
Angles are in degrees; a polarizer at angle theta passes the unit vector
(cos theta, sin theta).
"""

from __future__ import annotations
import math
from dataclasses import dataclass

import numpy as np

from ...errors import DomainError


@dataclass(frozen=True)
class JonesVector:
    """Complex field amplitudes (E_x, E_y); |E|^2 is the photon flux."""
    ex: complex
    ey: complex

    def __post_init__(self):
        for name, value in (("ex", self.ex), ("ey", self.ey)):
            if not (math.isfinite(value.real) and math.isfinite(value.imag)):
                raise DomainError(f"Jones component {name} must be finite (got {value!r})")
        object.__setattr__(self, "ex", complex(self.ex))
        object.__setattr__(self, "ey", complex(self.ey))

    @classmethod
    def from_angle(cls, angle_deg: float, amplitude: complex = 1.0) -> "JonesVector":
        """Linear polarization at angle_deg."""
        a = math.radians(angle_deg)
        return cls(amplitude * math.cos(a), amplitude * math.sin(a))

    @classmethod
    def from_array(cls, values) -> "JonesVector":
        return cls(complex(values[0]), complex(values[1]))

    def as_array(self) -> np.ndarray:
        return np.array([self.ex, self.ey], dtype=complex)

    @property
    def flux(self) -> float:
        return abs(self.ex) ** 2 + abs(self.ey) ** 2

    def project(self, angle_deg: float) -> complex:
        """Amplitude passed by a linear polarizer at angle_deg."""
        a = math.radians(angle_deg)
        return math.cos(a) * self.ex + math.sin(a) * self.ey

    def along(self, angle_deg: float) -> "JonesVector":
        """Component along the polarizer direction, as a vector."""
        return JonesVector.from_angle(angle_deg, self.project(angle_deg))

    def __add__(self, other: "JonesVector") -> "JonesVector":
        return JonesVector(self.ex + other.ex, self.ey + other.ey)

    def scaled(self, factor: complex) -> "JonesVector":
        return JonesVector(factor * self.ex, factor * self.ey)

    def transformed(self, matrix: np.ndarray) -> "JonesVector":
        return JonesVector.from_array(np.asarray(matrix) @ self.as_array())


def rotation(angle_deg: float) -> np.ndarray:
    """R(theta) = [[c, s], [-s, c]]."""
    a = math.radians(angle_deg)
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, s], [-s, c]])


def quarter_wave_plate(fast_axis_deg: float) -> np.ndarray:
    """R(-theta) diag(1, i) R(theta)."""
    return rotation(-fast_axis_deg) @ np.diag([1.0, 1j]) @ rotation(fast_axis_deg)


def through_cavity(field: JonesVector, axis_angle_deg: float,
                   response_a: complex, response_b: complex) -> JonesVector:
    """Couple into both eigenmodes by projection, apply their responses and recombine."""
    b_part = field.along(0.0).scaled(response_b)
    a_part = field.along(axis_angle_deg).scaled(response_a)
    return a_part + b_part


def analyzer_fraction(field: JonesVector, analyzer_deg: float) -> float:
    """Share of the field's flux passed by the analyzer; 0 for a vanishing field."""
    total = field.flux
    if total == 0.0:
        return 0.0
    return abs(field.project(analyzer_deg)) ** 2 / total


def hc_balanced_difference(reflection: complex, polarizer_deg: float) -> float:
    """
    Balanced-detector signal I_x - I_y of a Hansch-Couillaud analyzer.

    The a-axis mode (here x) reflects with r, the orthogonal component is
    the reference; a quarter-wave plate at 45 deg and a polarizing beam
    splitter follow. Equals -sin(2 theta) Im r.
    """
    a = math.radians(polarizer_deg)
    field = JonesVector(reflection * math.cos(a), math.sin(a))
    out = field.transformed(quarter_wave_plate(45.0))
    return abs(out.ex) ** 2 - abs(out.ey) ** 2
