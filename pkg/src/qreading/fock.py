"""Truncated number-basis representation of one- and two-mode states.

This is the brute-force oracle against which the closed-form coherent
algebra is checked. Two-mode vectors are stored flat with index
``n_A * (N + 1) + n_B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .coherent import CatSuperposition, Mode, as_amplitude, phase_factor
from .errors import DomainError, InvalidDensityError

DEFAULT_TAIL_TOL = 1e-14
EIG_FLOOR = 1e-12
NEG_EIG_TOL = 1e-8


@dataclass(frozen=True)
class FockVector:
    modes: int
    cutoff: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.modes not in (1, 2):
            raise DomainError(f"modes must be 1 or 2, got {self.modes}")
        if self.cutoff < 0:
            raise DomainError("cutoff must be nonnegative")
        c = np.asarray(self.coeffs, dtype=complex).reshape(-1)
        if c.size != (self.cutoff + 1) ** self.modes:
            raise DomainError(
                f"expected {(self.cutoff + 1) ** self.modes} coefficients, got {c.size}"
            )
        # truncation can only lose norm
        if np.vdot(c, c).real > 1.0 + 1e-9:
            raise DomainError("Fock vector norm exceeds 1")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.size

    def norm_sq(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def as_matrix(self) -> np.ndarray:
        """Two-mode coefficients as an (N+1, N+1) array indexed [n_A, n_B]."""
        if self.modes != 2:
            raise DomainError("as_matrix needs a two-mode vector")
        n = self.cutoff + 1
        return self.coeffs.reshape(n, n)


@dataclass(frozen=True)
class DensityMatrix:
    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"density matrix must be square, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=1e-10):
            raise InvalidDensityError("density matrix is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def purity(self) -> float:
        return float(np.einsum("ij,ji->", self.entries, self.entries).real)

    @cached_property
    def _spectrum(self) -> np.ndarray:
        lam = np.linalg.eigvalsh(self.entries)
        lam.setflags(write=False)
        return lam

    def eigenvalues(self) -> np.ndarray:
        return self._spectrum


def _check_same_shape(x: FockVector, y: FockVector):
    if x.modes != y.modes or x.cutoff != y.cutoff:
        raise DomainError(
            f"shape mismatch: ({x.modes} modes, N={x.cutoff}) vs ({y.modes} modes, N={y.cutoff})"
        )


def truncation_bound(max_abs_alpha: float, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    """Smallest N whose Poisson tail sum_{n>N} e^-mu mu^n / n! is below ``tail_tol``.

    ``mu = max_abs_alpha**2``. The tail is summed directly from the far end
    so that tolerances near machine epsilon are resolved.
    """
    if max_abs_alpha < 0 or not math.isfinite(max_abs_alpha):
        raise DomainError("max_abs_alpha must be finite and nonnegative")
    if not 0 < tail_tol < 1:
        raise DomainError("tail_tol must lie in (0, 1)")
    mu = float(max_abs_alpha) ** 2
    if mu == 0.0:
        return 0
    # go far enough past the mean that the neglected terms are far below tol
    log_floor = math.log(tail_tol) - 40.0
    terms = []
    n = 0
    while True:
        lp = -mu + n * math.log(mu) - math.lgamma(n + 1)
        terms.append(math.exp(lp))
        if n > mu and lp < log_floor:
            break
        n += 1
    tail = 0.0
    tails = [0.0] * len(terms)
    for k in range(len(terms) - 1, -1, -1):
        tails[k] = tail  # sum over n > k
        tail += terms[k]
    for k, t in enumerate(tails):
        if t < tail_tol:
            return k
    return len(terms) - 1


def coherent_to_fock(alpha, cutoff: int) -> FockVector:
    """Single-mode coherent state with c_n = exp(-|a|^2/2) a^n / sqrt(n!)."""
    a = as_amplitude(alpha)
    if cutoff < 0:
        raise DomainError("cutoff must be nonnegative")
    c = np.empty(cutoff + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(a) ** 2)
    for n in range(1, cutoff + 1):
        c[n] = c[n - 1] * a / math.sqrt(n)
    return FockVector(1, cutoff, c)


def fock_basis(n: int, cutoff: int, modes: int = 1) -> FockVector:
    """Number state |n>; for two modes this is |0, n> in flat indexing."""
    if not 0 <= n <= cutoff:
        raise DomainError(f"n={n} outside 0..{cutoff}")
    c = np.zeros((cutoff + 1) ** modes, dtype=complex)
    c[n] = 1.0
    return FockVector(modes, cutoff, c)


def vacuum(cutoff: int, modes: int = 1) -> FockVector:
    return fock_basis(0, cutoff, modes)


def tensor(a: FockVector, b: FockVector) -> FockVector:
    """Two-mode product |a>_A |b>_B."""
    if a.modes != 1 or b.modes != 1:
        raise DomainError("tensor needs two single-mode vectors")
    if a.cutoff != b.cutoff:
        raise DomainError(f"cutoff mismatch: {a.cutoff} vs {b.cutoff}")
    return FockVector(2, a.cutoff, np.kron(a.coeffs, b.coeffs))


def inner(x: FockVector, y: FockVector) -> complex:
    _check_same_shape(x, y)
    return complex(np.vdot(x.coeffs, y.coeffs))


def cat_to_fock(state: CatSuperposition, cutoff: int) -> FockVector:
    """Fock image of an analytic cat superposition."""
    n = cutoff + 1
    acc = np.zeros((n, n), dtype=complex)
    for c, a, b in state.terms:
        acc += c * np.outer(coherent_to_fock(a, cutoff).coeffs, coherent_to_fock(b, cutoff).coeffs)
    return FockVector(2, cutoff, acc.reshape(-1))


def cutoff_for(state: CatSuperposition | complex, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    if isinstance(state, CatSuperposition):
        return truncation_bound(state.max_abs_label(), tail_tol)
    return truncation_bound(abs(as_amplitude(state)), tail_tol)


def _phases(theta: float, cutoff: int) -> np.ndarray:
    z = phase_factor(theta)
    n = np.arange(cutoff + 1)
    if z.imag == 0.0 or z.real == 0.0:
        # quarter turns: exact powers of +-1, +-i
        return np.power(z, n)
    return np.exp(-1j * theta * n)


def phase_shift_fock(v: FockVector, theta: float, mode: Mode = "B") -> FockVector:
    """Apply exp(-i theta a^dag a) to one mode: |n> -> exp(-i theta n)|n>."""
    if mode not in ("A", "B"):
        raise DomainError(f"mode must be 'A' or 'B', got {mode!r}")
    if v.modes == 1 and mode != "A":
        raise DomainError("a single-mode vector only has mode 'A'")
    ph = _phases(theta, v.cutoff)
    if v.modes == 1:
        return FockVector(1, v.cutoff, v.coeffs * ph)
    m = v.as_matrix()
    m = m * ph[:, None] if mode == "A" else m * ph[None, :]
    return FockVector(2, v.cutoff, m.reshape(-1))


def density_from_state(v: FockVector, tol: float = 1e-9) -> DensityMatrix:
    """Pure-state projector |v><v|."""
    if abs(v.norm_sq() - 1.0) > tol:
        raise DomainError(f"state is not normalized (norm^2 = {v.norm_sq():.12g})")
    return DensityMatrix(np.outer(v.coeffs, v.coeffs.conj()))


def partial_trace(rho: DensityMatrix, keep: Mode, cutoff: int) -> DensityMatrix:
    """Reduce a two-mode density matrix to mode ``keep``."""
    n = cutoff + 1
    if rho.dim != n * n:
        raise DomainError(f"expected dimension {n * n} for cutoff {cutoff}, got {rho.dim}")
    t = rho.entries.reshape(n, n, n, n)
    if keep == "A":
        red = np.einsum("ijkj->ik", t)
    elif keep == "B":
        red = np.einsum("ijil->jl", t)
    else:
        raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")
    return DensityMatrix(red)


def reduced_density(v: FockVector, keep: Mode = "A") -> DensityMatrix:
    """Reduced state of a pure two-mode vector without forming |v><v|.

    Equal to ``partial_trace(density_from_state(v), keep, v.cutoff)`` but
    uses O(N^3) work and O(N^2) memory.
    """
    m = v.as_matrix()
    if keep == "A":
        red = m @ m.conj().T
    elif keep == "B":
        red = m.T @ m.conj()
    else:
        raise DomainError(f"keep must be 'A' or 'B', got {keep!r}")
    # enforce exact Hermiticity lost to rounding
    return DensityMatrix(0.5 * (red + red.conj().T))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """Entropy in bits, -sum lambda log2 lambda over eigenvalues above 1e-12."""
    lam = rho.eigenvalues()
    if lam.min() < -NEG_EIG_TOL:
        raise InvalidDensityError(f"negative eigenvalue {lam.min():.3e}")
    lam = lam[lam > EIG_FLOOR]
    return float(-np.sum(lam * np.log2(lam))) + 0.0
