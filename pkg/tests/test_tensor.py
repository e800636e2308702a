import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qoclab.tensor import (KrausChannel, PAULI_X, apply_kraus, basis, coherent_fock,
                           dag, expect, kron, matrix_exp_apply, number_op,
                           partial_trace, projector)


class TestKron:
    def test_identity_case(self):
        assert np.allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_basis_bookkeeping(self):
        p0 = projector(basis(2, 0))
        m = kron(PAULI_X, p0)
        want = np.zeros((4, 4))
        want[2, 0] = want[0, 2] = 1.0
        assert np.allclose(m, want)

    def test_mixed_product_identity(self, rng):
        a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        b = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        w = rng.normal(size=2) + 1j * rng.normal(size=2)
        lhs = kron(a, b) @ np.kron(v, w)
        rhs = np.kron(a @ v, b @ w)
        assert np.allclose(lhs, rhs, atol=1e-14)

    def test_size_cap(self):
        big = np.eye(1 << 12)
        with pytest.raises(ValueError):
            kron(big, big, big)


class TestPartialTrace:
    def test_bell_reduction(self):
        psi = np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
        red = partial_trace(projector(psi), keep=(0,), dims=(2, 2))
        assert np.allclose(red, np.eye(2) / 2, atol=1e-14)

    def test_product_state(self, make_density):
        ra = make_density(2)
        rb = make_density(3)
        red = partial_trace(kron(ra, rb), keep=(0,), dims=(2, 3))
        assert np.allclose(red, ra, atol=1e-14)

    def test_ghz_keep_middle(self):
        ghz = np.zeros(8, dtype=complex)
        ghz[0] = ghz[7] = 1 / math.sqrt(2)
        red = partial_trace(projector(ghz), keep=(1,), dims=(2, 2, 2))
        assert np.allclose(red, np.diag([0.5, 0.5]), atol=1e-14)

    def test_keep_order(self, make_density):
        ra = make_density(2)
        rb = make_density(2)
        swapped = partial_trace(kron(ra, rb), keep=(1, 0), dims=(2, 2))
        assert np.allclose(swapped, kron(rb, ra), atol=1e-13)

    def test_empty_keep_rejected(self, make_density):
        with pytest.raises(ValueError):
            partial_trace(make_density(4), keep=(), dims=(2, 2))


class TestApplyKraus:
    def test_identity_channel(self, make_density):
        rho = make_density(2)
        ch = KrausChannel((np.eye(2),))
        assert np.allclose(apply_kraus(rho, ch), rho)

    def test_full_decay(self):
        from qoclab.channels import ad_channel

        rho = projector(basis(2, 1))
        out = apply_kraus(rho, ad_channel(1.0))
        assert np.allclose(out, projector(basis(2, 0)), atol=1e-14)

    def test_ad_on_plus_state(self):
        from qoclab.channels import ad_channel

        plus = np.array([1, 1], dtype=complex) / math.sqrt(2)
        out = apply_kraus(projector(plus), ad_channel(0.3))
        want = np.array([[0.5 + 0.15, math.sqrt(0.7) / 2],
                         [math.sqrt(0.7) / 2, 0.35]])
        assert np.allclose(out, want, atol=1e-14)

    def test_targeted_application(self, make_density):
        from qoclab.channels import ad_channel

        rho = make_density(8)
        ch = ad_channel(0.4)
        out = apply_kraus(rho, ch, targets=(1,), dims=(2, 2, 2))
        ops = [kron(np.eye(2), k, np.eye(2)) for k in ch.operators]
        want = sum(o @ rho @ dag(o) for o in ops)
        assert np.allclose(out, want, atol=1e-13)

    def test_completeness_enforced(self):
        with pytest.raises(ValueError):
            KrausChannel((0.9 * np.eye(2),))


class TestMatrixExpApply:
    def test_zero_generator(self, rng):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert np.allclose(matrix_exp_apply(np.zeros((4, 4)), 2.1, v), v)

    def test_diagonal_phases(self):
        g = np.diag([1.0, 2.5])
        v = np.array([1, 1], dtype=complex) / math.sqrt(2)
        out = matrix_exp_apply(g, 0.7, v)
        want = np.array([np.exp(-0.7j), np.exp(-1.75j)]) / math.sqrt(2)
        assert np.allclose(out, want, atol=1e-14)

    def test_random_hermitian_vs_series(self, rng):
        x = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        g = (x + dag(x)) / 2
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        v /= np.linalg.norm(v)
        z = 0.35
        # series-sum oracle
        term = v.copy()
        ref = v.copy().astype(complex)
        for n in range(1, 60):
            term = (-1j * z / n) * (g @ term)
            ref = ref + term
        out = matrix_exp_apply(g, z, v)
        assert np.max(np.abs(out - ref)) < 1e-9
        assert abs(np.linalg.norm(out) - 1.0) < 1e-8


class TestCoherentFock:
    def test_vacuum(self):
        amps = coherent_fock(0.0, cutoff=5)
        assert np.allclose(amps, basis(6, 0))

    def test_mean_photon_number(self):
        amps = coherent_fock(0.5)
        nbar = expect(number_op(len(amps)), amps).real
        assert abs(nbar - 0.25) < 1e-9

    def test_poisson_distribution(self):
        amps = coherent_fock(0.5, cutoff=20)
        for n in range(7):
            pn = abs(amps[n]) ** 2
            want = math.exp(-0.25) * 0.25**n / math.factorial(n)
            assert abs(pn - want) < 1e-10

    def test_truncation_flag(self):
        with pytest.raises(ValueError):
            coherent_fock(2.0, cutoff=3, strict=True)
        with pytest.warns(UserWarning):
            coherent_fock(2.0, cutoff=3)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_partial_trace_of_product_recovers_factor(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    ra = x @ dag(x)
    ra /= np.trace(ra)
    y = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rb = y @ dag(y)
    rb /= np.trace(rb)
    red = partial_trace(kron(ra, rb), keep=(0,), dims=(2, 3))
    assert np.max(np.abs(red - ra)) <= 1e-14


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 10.0))
def test_hermitian_propagation_preserves_norm(seed, z):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    g = (x + dag(x)) / 2
    g *= min(1.0, 10.0 / (np.linalg.norm(g, 2) * z))  # keep ||g|| z <= 10
    v = rng.normal(size=5) + 1j * rng.normal(size=5)
    v /= np.linalg.norm(v)
    out = matrix_exp_apply(g, z, v)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-8
