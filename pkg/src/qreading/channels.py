"""Phase-shift-keyed memory channel.

A flat memory cell (bit 0) reflects the probe unchanged. A pit (bit 1)
applies U(theta) = exp(-i theta a^dag a) to the illuminated mode, which on a
coherent label acts as ``nu -> nu * exp(-i theta)``. The reflection is
lossless, so no reflectivity parameter exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .coherent import CatSuperposition, Mode, as_amplitude, canonical_angle, phase_factor
from .errors import DomainError

Probe = Union[CatSuperposition, complex]


@dataclass(frozen=True)
class PhaseShiftChannel:
    theta: float = math.pi
    target_mode: Mode = "B"

    def __post_init__(self):
        object.__setattr__(self, "theta", canonical_angle(self.theta))
        if self.target_mode not in ("A", "B"):
            raise DomainError(f"target_mode must be 'A' or 'B', got {self.target_mode!r}")


def apply_phase_shift(state: CatSuperposition, ch: PhaseShiftChannel) -> CatSuperposition:
    """Relabel every coherent amplitude on the target mode; coefficients are untouched."""
    z = phase_factor(ch.theta)
    if ch.target_mode == "A":
        terms = tuple((c, a * z, b) for c, a, b in state.terms)
    else:
        terms = tuple((c, a, b * z) for c, a, b in state.terms)
    return CatSuperposition(terms)


def encode_bit(probe: Probe, bit: int, theta: float = math.pi) -> Probe:
    """Reflect ``probe`` off a memory cell holding ``bit``.

    Two-mode probes have the memory in mode B. A bare complex number is a
    single-mode coherent probe and is phase-shifted directly.
    """
    if bit not in (0, 1):
        raise DomainError(f"bit must be 0 or 1, got {bit!r}")
    if isinstance(probe, CatSuperposition):
        if bit == 0:
            return probe
        return apply_phase_shift(probe, PhaseShiftChannel(theta, "B"))
    alpha = as_amplitude(probe)
    if bit == 0:
        return alpha
    return alpha * phase_factor(theta)
