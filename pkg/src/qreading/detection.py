"""Receiver bounds for binary reading: Helstrom, homodyne, and phase QFI."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .coherent import CatSuperposition, Mode, as_amplitude, cat_overlap, number_moments, overlap
from .errors import DomainError, NumericError
from .fock import DensityMatrix, FockVector, inner

PureState = Union[CatSuperposition, FockVector, complex]
State = Union[PureState, DensityMatrix]

PRIOR_TOL = 1e-12


class Method(str, enum.Enum):
    HELSTROM_PURE = "helstrom_pure"
    HELSTROM_MIXED = "helstrom_mixed"
    HOMODYNE = "homodyne"


@dataclass(frozen=True)
class BinaryEnsemble:
    """Two hypotheses with priors. ``prior1`` defaults to ``1 - prior0``."""

    state0: State
    state1: State
    prior0: float = 0.5
    prior1: Optional[float] = None

    def __post_init__(self):
        p1 = 1.0 - self.prior0 if self.prior1 is None else self.prior1
        object.__setattr__(self, "prior1", float(p1))
        _check_priors(self.prior0, p1)


@dataclass(frozen=True)
class DetectionResult:
    error_prob: float
    method: Method
    overlap_magnitude: Optional[float] = None


def _check_priors(p0: float, p1: float):
    if not (0.0 <= p0 <= 1.0 and 0.0 <= p1 <= 1.0):
        raise DomainError(f"priors must lie in [0, 1], got ({p0}, {p1})")
    if abs(p0 + p1 - 1.0) > PRIOR_TOL:
        raise DomainError(f"priors must sum to 1, got {p0 + p1!r}")


def pure_overlap(s0: PureState, s1: PureState) -> complex:
    """<s0|s1> for two pure states of the same representation."""
    if isinstance(s0, CatSuperposition) and isinstance(s1, CatSuperposition):
        return cat_overlap(s0, s1)
    if isinstance(s0, FockVector) and isinstance(s1, FockVector):
        return inner(s0, s1)
    if isinstance(s0, (complex, float, int)) and isinstance(s1, (complex, float, int)):
        return overlap(s0, s1)
    raise DomainError(
        f"cannot take an overlap between {type(s0).__name__} and {type(s1).__name__}"
    )


def helstrom_error(prior0: float, prior1: float, overlap_magnitude: float) -> float:
    """Minimum error for two pure states, 1/2 [1 - sqrt(1 - 4 p0 p1 |<s0|s1>|^2)]."""
    x = 4.0 * prior0 * prior1 * overlap_magnitude**2
    radicand = 1.0 - x
    if radicand < -1e-12:
        raise NumericError(f"negative radicand {radicand:.3e} in Helstrom formula")
    root = math.sqrt(max(radicand, 0.0))
    # rationalized form avoids cancellation when the error is tiny
    return 0.5 * x / (1.0 + root)


def helstrom_pure(ens: BinaryEnsemble) -> DetectionResult:
    ov = abs(pure_overlap(ens.state0, ens.state1))
    pe = helstrom_error(ens.prior0, ens.prior1, ov)
    return DetectionResult(min(pe, 0.5), Method.HELSTROM_PURE, ov)


def _weighted_difference(ens: BinaryEnsemble) -> np.ndarray:
    r0, r1 = ens.state0, ens.state1
    if not (isinstance(r0, DensityMatrix) and isinstance(r1, DensityMatrix)):
        raise DomainError("helstrom_mixed needs two DensityMatrix states")
    if r0.dim != r1.dim:
        raise DomainError(f"dimension mismatch: {r0.dim} vs {r1.dim}")
    for r in (r0, r1):
        if r.eigenvalues().min() < -1e-8:
            raise DomainError("density matrix is not positive semidefinite")
    return ens.prior1 * r1.entries - ens.prior0 * r0.entries


def helstrom_mixed(ens: BinaryEnsemble) -> DetectionResult:
    """P_e = (1 - ||p1 rho1 - p0 rho0||_1) / 2 from the spectrum of the weighted difference."""
    lam = np.linalg.eigvalsh(_weighted_difference(ens))
    pe = 0.5 * (1.0 - float(np.sum(np.abs(lam))))
    return DetectionResult(min(max(pe, 0.0), 0.5), Method.HELSTROM_MIXED)


def optimal_projectors(ens: BinaryEnsemble) -> tuple[np.ndarray, np.ndarray]:
    """Helstrom measurement (Pi_0, Pi_1); Pi_1 projects onto the positive part of p1 rho1 - p0 rho0."""
    lam, vec = np.linalg.eigh(_weighted_difference(ens))
    pos = vec[:, lam > 0]
    pi1 = pos @ pos.conj().T
    return np.eye(len(lam)) - pi1, pi1


def _phi(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


# quadrature x = (a + a^dag)/2 has variance 1/4 in a coherent state
HOMODYNE_SIGMA = 0.5


def homodyne_error(alpha_mag: float, prior0: float = 0.5) -> DetectionResult:
    """Threshold-detection error for |+a> vs |-a> with an x-quadrature homodyne.

    The two outcomes are Gaussians with means +-|a| and standard deviation
    1/2; the threshold sits where the prior-weighted likelihoods cross.
    Equal priors give erfc(sqrt(2)|a|) / 2.
    """
    a = float(alpha_mag)
    if not (a >= 0.0 and math.isfinite(a)):
        raise DomainError(f"alpha_mag must be finite and nonnegative, got {alpha_mag!r}")
    p0 = float(prior0)
    p1 = 1.0 - p0
    _check_priors(p0, p1)
    if p0 in (0.0, 1.0):
        return DetectionResult(0.0, Method.HOMODYNE)
    if a == 0.0:
        return DetectionResult(min(p0, p1), Method.HOMODYNE)
    s = HOMODYNE_SIGMA
    # decide 0 (mean +a) when x > t
    t = s * s * math.log(p1 / p0) / (2.0 * a)
    pe = p0 * _phi((t - a) / s) + p1 * _phi(-(t + a) / s)
    return DetectionResult(pe, Method.HOMODYNE)


def qfi_pure_phase(state: FockVector, mode: Mode = "A") -> float:
    """Quantum Fisher information 4 Var(n) for a phase imprinted on ``mode``."""
    if abs(state.norm_sq() - 1.0) > 1e-9:
        raise DomainError(f"state must be normalized, norm^2 = {state.norm_sq():.12g}")
    if mode not in ("A", "B"):
        raise DomainError(f"mode must be 'A' or 'B', got {mode!r}")
    if state.modes == 1:
        if mode != "A":
            raise DomainError("a single-mode vector only has mode 'A'")
        probs = np.abs(state.coeffs) ** 2
    else:
        p = np.abs(state.as_matrix()) ** 2
        probs = p.sum(axis=1) if mode == "A" else p.sum(axis=0)
    n = np.arange(probs.size)
    m1 = float(probs @ n)
    m2 = float(probs @ (n * n))
    return max(4.0 * (m2 - m1 * m1), 0.0)


def qfi_cat(state: CatSuperposition, mode: Mode = "B") -> float:
    """Closed-form counterpart of :func:`qfi_pure_phase` for cat superpositions."""
    m1, m2 = number_moments(state, mode)
    return max(4.0 * (m2 - m1 * m1), 0.0)


def coherent_qfi(alpha) -> float:
    return 4.0 * abs(as_amplitude(alpha)) ** 2
