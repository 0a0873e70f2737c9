"""Closed-form algebra of coherent states and two-mode cat superpositions.

Coherent labels are plain Python ``complex`` numbers. A
:class:`CatSuperposition` is a finite sum ``sum_k c_k |mu_k>_A |nu_k>_B``;
every inner product is evaluated analytically, with no Fock truncation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import DegenerateStateError, DomainError

Mode = Literal["A", "B"]

MAX_TERMS = 8
NORM_TOL = 1e-12
DEGENERACY_FLOOR = 1e-30


def as_amplitude(alpha) -> complex:
    """Coerce ``alpha`` to a finite complex coherent label."""
    try:
        a = complex(alpha)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a complex amplitude: {alpha!r}") from exc
    if not (math.isfinite(a.real) and math.isfinite(a.imag)):
        raise DomainError(f"coherent amplitude must be finite, got {a!r}")
    return a


def _abs2(a: complex) -> float:
    return (a.conjugate() * a).real


def overlap(a, b) -> complex:
    """Inner product <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)."""
    a = as_amplitude(a)
    b = as_amplitude(b)
    return cmath.exp(-0.5 * _abs2(a) - 0.5 * _abs2(b) + a.conjugate() * b)


def kappa(alpha) -> float:
    """<alpha|-alpha> = exp(-2|alpha|^2), which is real for any complex alpha."""
    return math.exp(-2.0 * _abs2(as_amplitude(alpha)))


def one_minus_kappa_sq(alpha) -> float:
    """1 - kappa^2 without cancellation at small |alpha|."""
    return -math.expm1(-4.0 * _abs2(as_amplitude(alpha)))


def canonical_angle(theta: float) -> float:
    """Reduce an angle in radians to [0, 2*pi)."""
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError(f"angle must be finite, got {theta!r}")
    t = math.fmod(theta, 2.0 * math.pi)
    if t < 0.0:
        t += 2.0 * math.pi
    return 0.0 if t >= 2.0 * math.pi else t


_QUARTER_TURNS = (1.0 + 0.0j, -1j, -1.0 + 0.0j, 1j)


def phase_factor(theta: float) -> complex:
    """exp(-i theta), exact at integer multiples of pi/2."""
    t = canonical_angle(theta)
    for k, z in enumerate(_QUARTER_TURNS):
        if t == k * (math.pi / 2):
            return z
    return cmath.exp(-1j * t)


@dataclass(frozen=True)
class CatSuperposition:
    """Superposition of two-mode coherent products.

    ``terms`` holds ``(coeff, label_a, label_b)`` triples.
    """

    terms: tuple[tuple[complex, complex, complex], ...]

    def __post_init__(self):
        terms = tuple(
            (complex(c), as_amplitude(a), as_amplitude(b)) for c, a, b in self.terms
        )
        if not terms:
            raise DomainError("a cat superposition needs at least one term")
        if len(terms) > MAX_TERMS:
            raise DomainError(f"at most {MAX_TERMS} terms supported, got {len(terms)}")
        for c, _, _ in terms:
            if not cmath.isfinite(c):
                raise DomainError("coefficients must be finite")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_terms(cls, terms: Iterable) -> "CatSuperposition":
        return cls(tuple(terms))

    @classmethod
    def product(cls, alpha, beta, coeff: complex = 1.0) -> "CatSuperposition":
        """The product state ``coeff * |alpha>_A |beta>_B``."""
        return cls(((coeff, alpha, beta),))

    @property
    def coeffs(self) -> np.ndarray:
        return np.array([t[0] for t in self.terms], dtype=complex)

    @property
    def labels_a(self) -> np.ndarray:
        return np.array([t[1] for t in self.terms], dtype=complex)

    @property
    def labels_b(self) -> np.ndarray:
        return np.array([t[2] for t in self.terms], dtype=complex)

    def max_abs_label(self) -> float:
        return max(max(abs(a), abs(b)) for _, a, b in self.terms)

    def scaled(self, factor: complex) -> "CatSuperposition":
        return CatSuperposition(tuple((factor * c, a, b) for c, a, b in self.terms))

    def norm_sq(self) -> float:
        return cat_overlap(self, self).real


def _gram(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # matrix of <x_j|y_k>
    xa = (np.conj(x) * x).real
    ya = (np.conj(y) * y).real
    return np.exp(-0.5 * xa[:, None] - 0.5 * ya[None, :] + np.conj(x)[:, None] * y[None, :])


def cat_overlap(x: CatSuperposition, y: CatSuperposition) -> complex:
    """Sesquilinear inner product <x|y>, antilinear in ``x``."""
    ga = _gram(x.labels_a, y.labels_a)
    gb = _gram(x.labels_b, y.labels_b)
    return complex(np.conj(x.coeffs) @ (ga * gb) @ y.coeffs)


def normalize(x: CatSuperposition) -> CatSuperposition:
    """Rescale ``x`` to unit norm.

    Raises:
        DegenerateStateError: if the analytic norm is at or below 1e-30,
            e.g. ``|a>|a> - |-a>|-a>`` at ``a = 0``.
    """
    n2 = x.norm_sq()
    if n2 <= DEGENERACY_FLOOR:
        raise DegenerateStateError(f"self-overlap {n2:.3e} is too small to normalize")
    return x.scaled(1.0 / math.sqrt(n2))


def is_normalized(x: CatSuperposition, tol: float = NORM_TOL) -> bool:
    return abs(x.norm_sq() - 1.0) <= tol


def number_moments(x: CatSuperposition, mode: Mode = "B") -> tuple[float, float]:
    """Return (<n>, <n^2>) of the photon number on one mode.

    Uses <mu|n|nu> = conj(mu) nu <mu|nu> and
    <mu|n^2|nu> = ((conj(mu) nu)^2 + conj(mu) nu) <mu|nu>.
    """
    if mode not in ("A", "B"):
        raise DomainError(f"mode must be 'A' or 'B', got {mode!r}")
    ga = _gram(x.labels_a, x.labels_a)
    gb = _gram(x.labels_b, x.labels_b)
    lab = x.labels_a if mode == "A" else x.labels_b
    w = np.conj(lab)[:, None] * lab[None, :]
    base = np.conj(x.coeffs)[:, None] * x.coeffs[None, :] * ga * gb
    n1 = float(np.sum(base * w).real)
    n2 = float(np.sum(base * (w * w + w)).real)
    return n1, n2
