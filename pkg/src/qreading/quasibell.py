"""The four quasi-Bell entangled coherent states, their Gram matrix and entanglement.

Index order follows the usual listing::

    Psi_1 = h_1 (|a>|a>  + |-a>|-a>)     h_1 = h_3 = 1/sqrt(2(1 + k^2))
    Psi_2 = h_2 (|a>|a>  - |-a>|-a>)     h_2 = h_4 = 1/sqrt(2(1 - k^2))
    Psi_3 = h_3 (|a>|-a> + |-a>|a>)
    Psi_4 = h_4 (|a>|-a> - |-a>|a>)

with k = <a|-a> = exp(-2|a|^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .coherent import (
    DEGENERACY_FLOOR,
    CatSuperposition,
    as_amplitude,
    cat_overlap,
    kappa,
    one_minus_kappa_sq,
)
from .errors import DegenerateStateError, DomainError

INDICES = (1, 2, 3, 4)

# (sign of second term, second mode of first term flipped?)
_PATTERN = {1: (+1, False), 2: (-1, False), 3: (+1, True), 4: (-1, True)}


def _check_index(i: int) -> int:
    if i not in INDICES:
        raise DomainError(f"quasi-Bell index must be one of 1..4, got {i!r}")
    return int(i)


def normalization_constant(i: int, alpha) -> float:
    """h_i for the i-th quasi-Bell state."""
    i = _check_index(i)
    k = kappa(alpha)
    if i in (1, 3):
        return 1.0 / math.sqrt(2.0 * (1.0 + k * k))
    gap = one_minus_kappa_sq(alpha)
    if gap <= DEGENERACY_FLOOR:
        raise DegenerateStateError(
            f"Psi_{i} vanishes at alpha={complex(alpha)!r} (1 - kappa^2 = {gap:.3e})"
        )
    return 1.0 / math.sqrt(2.0 * gap)


def make_quasi_bell(i: int, alpha) -> CatSuperposition:
    """Build Psi_i at coherent amplitude ``alpha`` as an analytic superposition."""
    i = _check_index(i)
    a = as_amplitude(alpha)
    h = normalization_constant(i, a)
    sign, flipped = _PATTERN[i]
    b = -a if flipped else a
    return CatSuperposition(((h, a, b), (sign * h, -a, -b)))


def coupling_d(alpha) -> float:
    """D = 2k / (1 + k^2), the only nonzero off-diagonal Gram entry."""
    k = kappa(alpha)
    return 2.0 * k / (1.0 + k * k)


@dataclass(frozen=True)
class GramMatrix:
    """Overlaps <Psi_i|Psi_j>, rows and columns ordered 1..4."""

    entries: np.ndarray
    alpha: complex

    def entry(self, i: int, j: int) -> complex:
        """1-based access, matching the state labels."""
        return complex(self.entries[_check_index(i) - 1, _check_index(j) - 1])

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return bool(np.allclose(self.entries, self.entries.conj().T, rtol=0.0, atol=tol))


def gram_pattern(alpha) -> np.ndarray:
    """Closed-form Gram matrix: identity plus D at positions (1,3) and (3,1)."""
    g = np.eye(4, dtype=complex)
    d = coupling_d(alpha)
    g[0, 2] = g[2, 0] = d
    return g


def gram_matrix(alpha) -> GramMatrix:
    a = as_amplitude(alpha)
    states = [make_quasi_bell(i, a) for i in INDICES]
    g = np.array([[cat_overlap(x, y) for y in states] for x in states], dtype=complex)
    return GramMatrix(g, a)


def gram_matrix_fock(alpha, tail_tol: float = fock.DEFAULT_TAIL_TOL) -> GramMatrix:
    """Same Gram matrix from truncated Fock images, for cross-checking."""
    a = as_amplitude(alpha)
    cutoff = fock.truncation_bound(abs(a), tail_tol)
    vecs = [fock.cat_to_fock(make_quasi_bell(i, a), cutoff) for i in INDICES]
    g = np.array([[fock.inner(x, y) for y in vecs] for x in vecs], dtype=complex)
    return GramMatrix(g, a)


def entropy_closed_form(c13: float) -> float:
    """Binary entropy, in bits, of the distribution ((1 + C)/2, (1 - C)/2)."""
    c = float(c13)
    if not 0.0 <= c <= 1.0:
        raise DomainError(f"C must lie in [0, 1], got {c13!r}")
    e = 0.0
    for p in ((1.0 + c) / 2.0, (1.0 - c) / 2.0):
        if p > 0.0:
            e -= p * math.log2(p)
    return e


def closed_form_entropy_of(i: int, alpha) -> float:
    """Entanglement of Psi_i from the Gram entry it pairs with.

    Psi_1 and Psi_3 use C_13 = D; Psi_2 and Psi_4 use C_24 = 0, giving 1 bit.
    """
    i = _check_index(i)
    if i in (2, 4):
        normalization_constant(i, alpha)  # raises at the degenerate point
        return entropy_closed_form(0.0)
    return entropy_closed_form(min(coupling_d(alpha), 1.0))


def entanglement_entropy(
    state: CatSuperposition, cutoff_tol: float = fock.DEFAULT_TAIL_TOL
) -> float:
    """Entropy of entanglement in bits, computed on the Fock oracle.

    The reduced state of mode A is formed from the truncated two-mode
    vector and diagonalized.
    """
    n2 = state.norm_sq()
    if abs(n2 - 1.0) > 1e-9:
        raise DomainError(f"state must be normalized, self-overlap is {n2:.12g}")
    cutoff = fock.truncation_bound(state.max_abs_label(), cutoff_tol)
    v = fock.cat_to_fock(state, cutoff)
    return fock.von_neumann_entropy(fock.reduced_density(v, "A"))
