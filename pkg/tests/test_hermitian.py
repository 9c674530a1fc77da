import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from entrocert.functions import lookup
from entrocert.hermitian import (
    EighError,
    apply_function,
    eigh,
    entropy,
    hermitize,
    is_hermitian,
    matrix_from_json,
    matrix_to_json,
    psd_margin,
    random_hermitian,
    random_pd,
    random_unitary,
    trace_of_function,
)
from entrocert.jets import DomainError

RNG = np.random.default_rng(1234)


def test_hermitize_and_is_hermitian():
    a = RNG.standard_normal((4, 4)) + 1j * RNG.standard_normal((4, 4))
    h = hermitize(a)
    assert is_hermitian(h)
    assert not is_hermitian(a)
    # projection is idempotent, exactly
    assert np.array_equal(hermitize(h), h)


def test_eigh_reconstructs():
    for dim in (2, 3, 5, 8):
        m = random_hermitian(dim, RNG)
        dec = eigh(m)
        assert np.all(np.diff(dec.eigenvalues) >= 0)
        err = np.linalg.norm(dec.reconstruct() - m)
        assert err <= 1e-12 * max(1.0, np.linalg.norm(m))


def test_eigh_rejects_non_hermitian():
    bad = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    with pytest.raises(EighError):
        eigh(bad)


def test_apply_function_square_matches_matmul():
    f = lookup("square")
    m = random_pd(4, (0.2, 5.0), RNG)
    assert np.allclose(apply_function(f, m), m @ m, atol=1e-12 * 25)


def test_apply_function_exp_independent_oracle():
    # scaling-and-squaring Taylor oracle, no spectral calculus involved
    # (the registry exp lives on [0, inf) like every candidate, so stay PD)
    f = lookup("exp")
    m = random_pd(3, (0.2, 3.0), RNG)
    ref = np.eye(3, dtype=complex)
    term = np.eye(3, dtype=complex)
    x = m / 2**10
    for k in range(1, 24):
        term = term @ x / k
        ref = ref + term
    for _ in range(10):
        ref = ref @ ref
    assert np.allclose(apply_function(f, m), ref, atol=1e-10)


def test_apply_function_commutes_with_conjugation():
    f = lookup("tlogt")
    m = random_pd(4, (0.1, 10.0), RNG)
    u = random_unitary(4, RNG)
    lhs = apply_function(f, hermitize(u @ m @ u.conj().T))
    rhs = u @ apply_function(f, m) @ u.conj().T
    assert np.allclose(lhs, rhs, atol=1e-11)


def test_trace_of_function_sums_spectrum():
    f = lookup("neglog")
    vals = np.array([0.5, 1.0, 2.0, 4.0])
    u = random_unitary(4, RNG)
    m = hermitize(u @ np.diag(vals).astype(complex) @ u.conj().T)
    want = float(np.sum(-np.log(vals)))
    assert trace_of_function(f, m) == pytest.approx(want, rel=1e-12)


def test_zero_extension_handles_singular_psd():
    f = lookup("tlogt")
    # rank-1 projector: eigenvalues {0, 0, 1}; t log t extends by 0 at 0
    v = np.array([[1.0], [1.0], [0.0]], dtype=complex) / math.sqrt(2)
    p = v @ v.conj().T
    assert trace_of_function(f, p) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(DomainError):
        trace_of_function(lookup("neglog"), p)


def test_domain_error_on_negative_spectrum():
    m = np.diag([1.0, -0.5]).astype(complex)
    with pytest.raises(DomainError, match="outside the domain"):
        trace_of_function(lookup("tlogt"), m)


def test_entropy_of_maximally_mixed():
    f = lookup("tlogt")
    for n in range(2, 9):
        s = entropy(f, np.eye(n, dtype=complex) / n)
        assert s == pytest.approx(math.log(n), abs=1e-12)


def test_psd_margin_signs():
    pos = np.diag([0.5, 2.0]).astype(complex)
    m = psd_margin(pos)
    assert m.min_eigenvalue == pytest.approx(0.5)
    assert m.normalized == pytest.approx(0.5 / max(1.0, 2.0))
    neg = np.diag([-1.0, 3.0]).astype(complex)
    assert psd_margin(neg).normalized == pytest.approx(-1.0 / 3.0)


def test_random_unitary_is_unitary():
    u = random_unitary(5, RNG)
    assert np.allclose(u.conj().T @ u, np.eye(5), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    dim=st.integers(2, 6),
    lo=st.floats(1e-3, 1.0),
    width=st.floats(1.0, 100.0),
    seed=st.integers(0, 2**32 - 1),
)
def test_random_pd_spectrum_in_range(dim, lo, width, seed):
    rng = np.random.default_rng(seed)
    hi = lo * width
    m = random_pd(dim, (lo, hi), rng)
    assert is_hermitian(m)
    w = np.linalg.eigvalsh(m)
    assert w[0] >= lo * (1 - 1e-9) and w[-1] <= hi * (1 + 1e-9)


def test_random_pd_degenerate_range():
    m = random_pd(3, (2.0, 2.0), RNG)
    assert np.allclose(np.linalg.eigvalsh(m), 2.0, atol=1e-12)
    with pytest.raises(ValueError):
        random_pd(3, (0.0, 1.0), RNG)
    with pytest.raises(ValueError):
        random_pd(3, (2.0, 1.0), RNG)


def test_matrix_json_round_trip():
    m = random_hermitian(3, RNG)
    back = matrix_from_json(matrix_to_json(m))
    assert np.array_equal(back, m)
