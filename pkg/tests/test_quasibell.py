import math

import numpy as np
import pytest

from qreading.coherent import CatSuperposition, cat_overlap
from qreading.errors import DegenerateStateError, DomainError
from qreading.quasibell import (
    closed_form_entropy_of,
    coupling_d,
    entanglement_entropy,
    entropy_closed_form,
    gram_matrix,
    gram_matrix_fock,
    gram_pattern,
    make_quasi_bell,
    normalization_constant,
)

# mpmath, 40 digits, kappa = e^-2
H2_AT_1 = 0.71367267019403722153
D_AT_1 = 0.26580222883407969212


def test_psi2_coefficients_at_alpha_1():
    c = make_quasi_bell(2, 1).coeffs
    assert abs(c[0] - H2_AT_1) < 1e-12
    assert abs(c[1] + H2_AT_1) < 1e-12


@pytest.mark.parametrize("i", [1, 2, 3, 4])
@pytest.mark.parametrize("alpha", [0.1, 0.5 + 0.5j, 1, 2.5, -1.2j])
def test_states_are_normalized(i, alpha):
    assert abs(make_quasi_bell(i, alpha).norm_sq() - 1) < 1e-12


def test_term_structure():
    a = 0.7
    assert [t[1:] for t in make_quasi_bell(1, a).terms] == [(a, a), (-a, -a)]
    assert [t[1:] for t in make_quasi_bell(4, a).terms] == [(a, -a), (-a, a)]
    assert make_quasi_bell(4, a).coeffs[1] < 0 < make_quasi_bell(3, a).coeffs[1]


def test_psi1_at_vacuum_collapses():
    psi = make_quasi_bell(1, 0)
    assert abs(psi.norm_sq() - 1) < 1e-15
    assert abs(cat_overlap(psi, CatSuperposition.product(0, 0)) - 1) < 1e-15


@pytest.mark.parametrize("i", [2, 4])
def test_odd_states_degenerate_at_vacuum(i):
    with pytest.raises(DegenerateStateError):
        make_quasi_bell(i, 0)


def test_bad_index():
    with pytest.raises(DomainError):
        make_quasi_bell(5, 1)


def test_normalization_constants_small_alpha_stable():
    # 1 - kappa^2 ~ 4|a|^2: h2 ~ 1/sqrt(8)/|a|
    a = 1e-6
    assert normalization_constant(2, a) == pytest.approx(1 / math.sqrt(8) / a, rel=1e-9)


def test_gram_at_alpha_1():
    g = gram_matrix(1.0)
    assert abs(g.entry(1, 3) - D_AT_1) < 1e-12
    assert abs(g.entry(3, 1) - D_AT_1) < 1e-12
    assert np.max(np.abs(g.entries - gram_pattern(1.0))) < 1e-12


def test_gram_orthogonal_limit():
    assert np.max(np.abs(gram_matrix(5.0).entries - np.eye(4))) < 1e-12


def test_gram_eigenvalues_closed_form():
    lam = np.sort(gram_matrix(1.0).eigenvalues())
    assert np.allclose(lam, sorted([1 - D_AT_1, 1, 1, 1 + D_AT_1]), atol=1e-12)


@pytest.mark.parametrize("alpha", [0.05, 0.3, 1j, 1 + 1j, 2])
def test_gram_hermitian_psd(alpha):
    g = gram_matrix(alpha)
    assert g.is_hermitian()
    assert np.allclose(np.diag(g.entries), 1, atol=1e-12)
    assert g.eigenvalues().min() > -1e-10
    assert np.max(np.abs(g.entries - gram_pattern(alpha))) < 1e-12


def test_gram_fock_agrees():
    assert np.max(np.abs(gram_matrix_fock(1.3).entries - gram_matrix(1.3).entries)) < 1e-10


def test_gram_degenerate():
    with pytest.raises(DegenerateStateError):
        gram_matrix(0)


def test_entropy_closed_form_endpoints():
    assert entropy_closed_form(0) == 1
    assert entropy_closed_form(1) == 0
    with pytest.raises(DomainError):
        entropy_closed_form(1.5)
    with pytest.raises(DomainError):
        entropy_closed_form(-0.1)


def test_entropy_closed_form_matches_fock_for_psi1():
    s = entanglement_entropy(make_quasi_bell(1, 1.0), 1e-14)
    assert abs(entropy_closed_form(coupling_d(1.0)) - s) < 1e-8


def test_perfect_entanglement_examples():
    assert abs(entanglement_entropy(make_quasi_bell(2, 0.8), 1e-14) - 1) < 1e-8
    assert abs(entanglement_entropy(make_quasi_bell(4, 2.0), 1e-14) - 1) < 1e-8


def test_product_state_unentangled():
    assert entanglement_entropy(CatSuperposition.product(1.1, -0.4j)) == pytest.approx(0, abs=1e-9)


def test_entanglement_requires_normalized():
    with pytest.raises(DomainError):
        entanglement_entropy(CatSuperposition.product(1, 1, coeff=2))


@pytest.mark.parametrize("alpha", [0.2, 0.5, 1, 2, 4])
def test_entropy_grid(alpha):
    e = {i: entanglement_entropy(make_quasi_bell(i, alpha)) for i in (1, 2, 3, 4)}
    assert abs(e[2] - 1) < 1e-8 and abs(e[4] - 1) < 1e-8
    c13 = abs(gram_matrix(alpha).entry(1, 3))
    assert abs(e[1] - entropy_closed_form(c13)) < 1e-8
    assert abs(e[3] - entropy_closed_form(c13)) < 1e-8
    for i in (1, 2, 3, 4):
        assert abs(closed_form_entropy_of(i, alpha) - e[i]) < 1e-8


def test_large_alpha_all_one_bit():
    assert coupling_d(4) < 1e-13
    for i in (1, 2, 3, 4):
        assert abs(entanglement_entropy(make_quasi_bell(i, 4)) - 1) < 1e-6
