import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import poisson

from qreading.coherent import CatSuperposition, cat_overlap
from qreading.errors import DomainError, InvalidDensityError
from qreading.fock import (
    DensityMatrix,
    FockVector,
    cat_to_fock,
    coherent_to_fock,
    density_from_state,
    fock_basis,
    inner,
    partial_trace,
    phase_shift_fock,
    reduced_density,
    tensor,
    truncation_bound,
    vacuum,
    von_neumann_entropy,
)
from qreading.quasibell import coupling_d, entropy_closed_form, make_quasi_bell

from conftest import random_cat

E_M2 = 0.13533528323661269189


def poisson_oracle(max_abs, tol):
    """Smallest N with survival function P(n > N) < tol, via scipy's incomplete gamma."""
    mu = max_abs**2
    if mu == 0:
        return 0
    n = 0
    while poisson.sf(n, mu) >= tol:
        n += 1
    return n


def test_truncation_bound_vacuum():
    assert truncation_bound(0, 1e-14) == 0


@pytest.mark.parametrize("a, frozen", [(1, 16), (2, 27), (3, 40), (4, 55)])
def test_truncation_bound_against_poisson_oracle(a, frozen):
    assert poisson_oracle(a, 1e-14) == frozen
    assert truncation_bound(a, 1e-14) == frozen


@given(st.floats(0, 4), st.floats(0, 4), st.sampled_from([1e-6, 1e-10, 1e-14]))
@settings(max_examples=40, deadline=None)
def test_truncation_bound_monotone(a, b, tol):
    lo, hi = sorted((a, b))
    assert truncation_bound(hi, tol) >= truncation_bound(lo, tol)


def test_truncation_bound_rejects_bad_input():
    with pytest.raises(DomainError):
        truncation_bound(-1, 1e-14)
    with pytest.raises(DomainError):
        truncation_bound(1, 0.0)


def test_coherent_vacuum():
    v = coherent_to_fock(0, 6)
    assert np.array_equal(v.coeffs, np.eye(7)[0])


def test_coherent_inner_matches_closed_form():
    n = truncation_bound(1, 1e-14)
    assert abs(inner(coherent_to_fock(1, n), coherent_to_fock(-1, n)) - E_M2) < 1e-10


def test_coherent_norm_within_tail_bound():
    v = coherent_to_fock(2, truncation_bound(2, 1e-14))
    assert abs(v.norm_sq() - 1) < 1e-12


def test_fock_vector_validation():
    with pytest.raises(DomainError):
        FockVector(1, 2, np.ones(4))
    with pytest.raises(DomainError):
        FockVector(1, 1, np.array([1.0, 1.0]))
    with pytest.raises(DomainError):
        FockVector(3, 1, np.zeros(8))


def test_tensor_vacuum_and_factorization(rng):
    vv = tensor(vacuum(5), vacuum(5))
    assert vv.modes == 2 and vv.coeffs[0] == 1 and np.count_nonzero(vv.coeffs) == 1
    n = 20
    a1, a2, b1, b2 = (coherent_to_fock(complex(*rng.uniform(-1.5, 1.5, 2)), n) for _ in range(4))
    lhs = inner(tensor(a1, b1), tensor(a2, b2))
    assert abs(lhs - inner(a1, a2) * inner(b1, b2)) < 1e-12


def test_tensor_mismatch():
    with pytest.raises(DomainError):
        tensor(vacuum(3), vacuum(4))
    with pytest.raises(DomainError):
        tensor(vacuum(3, modes=2), vacuum(3))
    with pytest.raises(DomainError):
        inner(vacuum(3), vacuum(4))


def test_psi2_from_tensor_sum_has_analytic_h2():
    a = 1.0
    n = truncation_bound(a, 1e-14)
    raw = tensor(coherent_to_fock(a, n), coherent_to_fock(a, n)).coeffs - tensor(
        coherent_to_fock(-a, n), coherent_to_fock(-a, n)
    ).coeffs
    h2 = 1 / math.sqrt(np.vdot(raw, raw).real)
    assert abs(h2 - make_quasi_bell(2, a).coeffs[0].real) < 1e-10


def test_inner_of_psi2_images_is_zero():
    psi = make_quasi_bell(2, 1.0)
    image = CatSuperposition(tuple((c, a, -b) for c, a, b in psi.terms))
    n = truncation_bound(1.0, 1e-14)
    assert abs(inner(cat_to_fock(psi, n), cat_to_fock(image, n))) < 1e-10


def test_inner_matches_cat_overlap_on_random_states(rng):
    for _ in range(100):
        x, y = random_cat(rng), random_cat(rng)
        n = truncation_bound(max(x.max_abs_label(), y.max_abs_label()), 1e-14)
        assert abs(inner(cat_to_fock(x, n), cat_to_fock(y, n)) - cat_overlap(x, y)) < 1e-10
        xx = inner(cat_to_fock(x, n), cat_to_fock(x, n))
        assert xx.imag == 0 and xx.real >= 0


def test_phase_shift_identity_and_pi():
    n = truncation_bound(1.2, 1e-14)
    v = coherent_to_fock(1.2 - 0.4j, n)
    assert np.array_equal(phase_shift_fock(v, 0.0, "A").coeffs, v.coeffs)
    flipped = phase_shift_fock(v, math.pi, "A")
    assert np.max(np.abs(flipped.coeffs - coherent_to_fock(-1.2 + 0.4j, n).coeffs)) < 1e-10


def test_phase_shift_relabels_alpha():
    n = truncation_bound(1, 1e-14)
    got = phase_shift_fock(coherent_to_fock(1, n), math.pi / 2, "A")
    assert np.max(np.abs(got.coeffs - coherent_to_fock(-1j, n).coeffs)) < 1e-10
    got = phase_shift_fock(coherent_to_fock(1, n), 0.7, "A")
    assert np.max(np.abs(got.coeffs - coherent_to_fock(np.exp(-0.7j), n).coeffs)) < 1e-10


def test_phase_shift_two_mode_acts_on_chosen_mode():
    n = 25
    v = tensor(coherent_to_fock(0.8, n), coherent_to_fock(0.5j, n))
    got = phase_shift_fock(v, 0.9, "B")
    want = tensor(coherent_to_fock(0.8, n), coherent_to_fock(0.5j * np.exp(-0.9j), n))
    assert np.max(np.abs(got.coeffs - want.coeffs)) < 1e-10
    got = phase_shift_fock(v, 0.9, "A")
    want = tensor(coherent_to_fock(0.8 * np.exp(-0.9j), n), coherent_to_fock(0.5j, n))
    assert np.max(np.abs(got.coeffs - want.coeffs)) < 1e-10


def test_phase_shift_bad_mode():
    with pytest.raises(DomainError):
        phase_shift_fock(vacuum(3), 1.0, "B")
    with pytest.raises(DomainError):
        phase_shift_fock(vacuum(3, modes=2), 1.0, "C")


@given(st.floats(-10, 10), st.floats(-10, 10))
@settings(max_examples=50, deadline=None)
def test_phase_shift_unitary_and_composes(t1, t2):
    v = cat_to_fock(make_quasi_bell(3, 0.9 + 0.2j), 20)
    once = phase_shift_fock(phase_shift_fock(v, t1, "B"), t2, "B")
    assert abs(once.norm_sq() - v.norm_sq()) < 1e-14
    both = phase_shift_fock(v, t1 + t2, "B")
    assert np.max(np.abs(once.coeffs - both.coeffs)) < 1e-12


def test_density_from_vacuum():
    rho = density_from_state(vacuum(4))
    expected = np.zeros((5, 5))
    expected[0, 0] = 1
    assert np.array_equal(rho.entries, expected)


def test_density_trace_and_purity(rng):
    for _ in range(5):
        c = rng.normal(size=8) + 1j * rng.normal(size=8)
        rho = density_from_state(FockVector(1, 7, c / np.linalg.norm(c)))
        assert abs(rho.trace() - 1) < 1e-9
        assert abs(rho.purity() - 1) < 1e-9
        assert np.sum(rho.eigenvalues() > 1e-9) == 1


def test_density_requires_normalized_state():
    with pytest.raises(DomainError):
        density_from_state(FockVector(1, 1, np.array([0.5, 0.5])))


def test_density_matrix_must_be_hermitian():
    with pytest.raises(InvalidDensityError):
        DensityMatrix(np.array([[1, 1], [0, 0]]))


def test_partial_trace_of_product_state():
    n = truncation_bound(1.5, 1e-14)
    a, b = coherent_to_fock(0.7 + 0.2j, n), coherent_to_fock(-1.5, n)
    rho = density_from_state(tensor(a, b))
    red_a = partial_trace(rho, "A", n)
    assert np.max(np.abs(red_a.entries - np.outer(a.coeffs, a.coeffs.conj()))) < 1e-10
    red_b = partial_trace(rho, "B", n)
    assert np.max(np.abs(red_b.entries - np.outer(b.coeffs, b.coeffs.conj()))) < 1e-10
    assert abs(red_a.trace() - rho.trace()) < 1e-9


def test_partial_trace_of_psi4_is_flat_two_point():
    n = truncation_bound(1, 1e-14)
    rho = density_from_state(cat_to_fock(make_quasi_bell(4, 1), n))
    lam = np.sort(partial_trace(rho, "A", n).eigenvalues())[::-1]
    assert np.allclose(lam[:2], 0.5, atol=1e-8)
    assert np.allclose(lam[2:], 0, atol=1e-8)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DomainError):
        partial_trace(density_from_state(vacuum(3, modes=2)), "A", 4)


def test_reduced_density_equals_partial_trace(rng):
    for _ in range(5):
        x = random_cat(rng, max_abs=1.5)
        n = truncation_bound(x.max_abs_label(), 1e-14)
        v = cat_to_fock(x, n)
        rho = density_from_state(v)
        for keep in "AB":
            assert np.max(np.abs(reduced_density(v, keep).entries - partial_trace(rho, keep, n).entries)) < 1e-13


def test_entropy_pure_and_maximally_mixed():
    assert von_neumann_entropy(density_from_state(coherent_to_fock(1, 16))) == pytest.approx(0, abs=1e-9)
    assert abs(von_neumann_entropy(DensityMatrix(np.diag([0.5, 0.5]))) - 1) < 1e-12


def test_entropy_rejects_negative_spectrum():
    with pytest.raises(InvalidDensityError):
        von_neumann_entropy(DensityMatrix(np.diag([1.1, -0.1])))


def test_entropy_of_reduced_psi1_matches_closed_form():
    n = truncation_bound(1, 1e-14)
    rho = density_from_state(cat_to_fock(make_quasi_bell(1, 1), n))
    s = von_neumann_entropy(partial_trace(rho, "A", n))
    assert abs(s - entropy_closed_form(coupling_d(1))) < 1e-8
    # mpmath evaluation of the binary entropy at (1 + D)/2
    assert abs(s - 0.94841846623666143714) < 1e-8


def test_entropy_bounds_on_random_pure_states(rng):
    for _ in range(10):
        x = random_cat(rng, max_abs=2.0)
        n = truncation_bound(x.max_abs_label(), 1e-14)
        s = von_neumann_entropy(reduced_density(cat_to_fock(x, n), "A"))
        assert -1e-9 <= s <= math.log2(n + 1)


def test_entropy_within_span_of_two_labels(rng):
    for _ in range(10):
        a = complex(*rng.uniform(-2, 2, 2))
        c = rng.normal(size=4) + 1j * rng.normal(size=4)
        x = CatSuperposition(((c[0], a, a), (c[1], a, -a), (c[2], -a, a), (c[3], -a, -a)))
        x = x.scaled(1 / math.sqrt(x.norm_sq()))
        n = truncation_bound(abs(a), 1e-14)
        assert von_neumann_entropy(reduced_density(cat_to_fock(x, n), "A")) <= 1 + 1e-8


def test_fock_basis_helper():
    assert fock_basis(2, 3).coeffs[2] == 1
    with pytest.raises(DomainError):
        fock_basis(4, 3)
