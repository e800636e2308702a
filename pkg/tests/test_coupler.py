import numpy as np
import pytest

from qoclab.coupler import (CoherentInputs, CouplerParams, Geometry, Regime,
                            codir_coefficients, coefficients_ode_oracle,
                            contradir_coefficients, exact_evolve, fock_moment,
                            mode_moment, short_length_coefficients,
                            symmetric_l_coefficients)

CODIR = CouplerParams(k=0.1, gamma_b=0.001, delta_k_b=1e-4,
                      geometry=Geometry.CODIRECTIONAL)
CONTRA = CouplerParams(k=0.1, gamma_b=0.001, delta_k_b=1e-4,
                       geometry=Geometry.CONTRADIRECTIONAL)
SYM = CouplerParams(k=0.1, gamma_a=1e-3, gamma_b=1.2e-3, delta_k_a=1.1e-3,
                    delta_k_b=1e-3, geometry=Geometry.SYMMETRIC)


def stack(c):
    return np.concatenate([np.asarray(c.f), np.asarray(c.g), np.asarray(c.h_or_l)])


class TestBoundaryConditions:
    def test_codirectional_z0(self):
        c = codir_coefficients(CODIR, 0.0)
        assert np.allclose(c.f, [1, 0, 0, 0], atol=1e-15)
        assert np.allclose(c.g, [0, 1, 0, 0], atol=1e-15)
        assert np.allclose(c.h_or_l, [1, 0, 0, 0], atol=1e-15)

    def test_contradirectional_l0(self):
        c = contradir_coefficients(CONTRA, 0.0)
        assert np.allclose(c.f, [1, 0, 0, 0], atol=1e-15)
        assert np.allclose(c.h_or_l, [1, 0, 0, 0], atol=1e-15)

    def test_symmetric_z0(self):
        c = symmetric_l_coefficients(SYM, 0.0)
        want = np.zeros(14)
        want[0] = 1.0
        assert np.max(np.abs(np.asarray(c.h_or_l) - want)) < 1e-13

    def test_codir_f_unitarity(self):
        for z in (5.0, 23.0, 71.0):
            c = codir_coefficients(CODIR, z)
            assert abs(abs(c.f[0]) ** 2 + abs(c.f[1]) ** 2 - 1) < 1e-14


class TestClosedFormsVsODE:
    def test_codirectional(self):
        c = codir_coefficients(CODIR, 50.0)
        o = coefficients_ode_oracle(CODIR, 50.0)
        assert np.max(np.abs(stack(c) - stack(o))) < 1e-8

    def test_contradirectional_shooting(self):
        c = contradir_coefficients(CONTRA, 20.0)
        o = coefficients_ode_oracle(CONTRA, 20.0)
        assert np.max(np.abs(stack(c) - stack(o))) < 1e-7

    def test_contradirectional_large_mismatch(self):
        p = CouplerParams(k=0.05, gamma_b=0.002, delta_k_b=1e-2,
                          geometry=Geometry.CONTRADIRECTIONAL)
        c = contradir_coefficients(p, 10.0)
        o = coefficients_ode_oracle(p, 10.0)
        assert np.max(np.abs(stack(c) - stack(o))) < 1e-9

    def test_symmetric(self):
        c = symmetric_l_coefficients(SYM, 1.7)
        o = coefficients_ode_oracle(SYM, 1.7)
        assert np.max(np.abs(stack(c) - stack(o))) < 1e-8

    def test_symmetric_complex_couplings(self):
        p = CouplerParams(k=0.1 * np.exp(0.5j), gamma_a=1e-3 * np.exp(-0.3j),
                          gamma_b=2e-3 * np.exp(0.8j), delta_k_a=3e-3, delta_k_b=2e-3,
                          geometry=Geometry.SYMMETRIC)
        c = symmetric_l_coefficients(p, 2.5)
        o = coefficients_ode_oracle(p, 2.5)
        assert np.max(np.abs(stack(c) - stack(o))) < 1e-10


class TestContradirectionalForms:
    def test_sech_tanh_values(self):
        c = contradir_coefficients(CONTRA, 10.0)
        ak = 0.1
        assert abs(c.f[0] - 1 / np.cosh(ak * 10)) < 1e-14
        assert abs(c.g[1] - 1 / np.cosh(ak * 10)) < 1e-14
        assert abs(c.f[1] + 1j * np.conj(CONTRA.k) / ak * np.tanh(ak * 10)) < 1e-14
        assert abs(c.g[0] + np.conj(c.f[1])) < 1e-14


class TestShortLength:
    def test_f2_value(self):
        c = short_length_coefficients(CODIR, 1.0)
        assert abs(c.f[1] - (-0.1j)) < 1e-15
        assert c.regime is Regime.SHORT_LENGTH

    def test_f4_vanishes(self):
        for z in (0.01, 0.5, 2.0):
            c = short_length_coefficients(CODIR, z)
            assert c.f[3] == 0.0
            assert c.h_or_l[3] == 0.0

    def test_cubic_residual_slope(self):
        zs = np.logspace(-4, -2, 9)
        errs = []
        for z in zs:
            full = stack(codir_coefficients(CODIR, z))
            short = stack(short_length_coefficients(CODIR, z))
            errs.append(np.abs(full - short).max())
        errs = np.asarray(errs)
        keep = errs > 1e-13  # below this the doubles cannot resolve the cubic
        assert keep.sum() >= 4
        slope = np.polyfit(np.log(zs[keep]), np.log(errs[keep]), 1)[0]
        assert slope >= 2.9

    def test_contradirectional_variant(self):
        c = short_length_coefficients(CONTRA, 0.5)
        assert abs(c.g[2] - (-2j * np.conj(CONTRA.gamma_b) * 0.5)) < 1e-15
        assert abs(c.h_or_l[1] - (-1j * CONTRA.gamma_b * 0.5)) < 1e-15


class TestCommutatorsAndConservation:
    def test_equal_space_commutators(self, rng):
        for _ in range(100):
            geom = Geometry.CODIRECTIONAL if rng.uniform() < 0.5 else Geometry.CONTRADIRECTIONAL
            p = CouplerParams(k=0.1 * np.exp(1j * rng.uniform(0, 2 * np.pi)),
                              gamma_b=10 ** rng.uniform(-3.5, -2.5),
                              delta_k_b=10 ** rng.uniform(-4, -1), geometry=geom)
            z = rng.uniform(0.5, 60)
            c = (codir_coefficients if geom is Geometry.CODIRECTIONAL
                 else contradir_coefficients)(p, z)
            f1, f2 = c.f[0], c.f[1]
            g1, g2 = c.g[0], c.g[1]
            assert abs(abs(f1) ** 2 + abs(f2) ** 2 - 1) < 1e-10
            assert abs(abs(g1) ** 2 + abs(g2) ** 2 - 1) < 1e-10
            assert abs(f1 * np.conj(g1) + f2 * np.conj(g2)) < 1e-10

    def test_constant_of_motion(self):
        inp = CoherentInputs(1.1 * np.exp(0.4j), 0.8 * np.exp(-1.0j), 0.5 * np.exp(0.9j))
        base = None
        for z in np.linspace(0, 100, 9):
            c = codir_coefficients(CODIR, z)
            tot = sum(w * mode_moment(c, inp, {m: (1, 1)}).real
                      for m, w in (("a", 1), ("b1", 1), ("b2", 2)))
            base = tot if base is None else base
            assert abs(tot - base) < 1e-8


class TestExactEvolve:
    def test_z0_identity(self):
        inp = CoherentInputs(0.5, 0.2, 0.1)
        psi = exact_evolve(CODIR, inp, 0.0, (6, 6, 4))
        from qoclab.tensor import coherent_fock

        want = np.kron(np.kron(coherent_fock(0.5, 6, tail_mass=1e-8),
                               coherent_fock(0.2, 6, tail_mass=1e-8)),
                       coherent_fock(0.1, 4, tail_mass=1e-8))
        assert np.max(np.abs(psi - want)) < 1e-9

    def test_linear_coupler_conservation(self):
        p = CouplerParams(k=0.1, gamma_b=0.0, delta_k_b=1e-4,
                          geometry=Geometry.CODIRECTIONAL)
        inp = CoherentInputs(0.5, 0.2, 0.1)
        dims = (7, 7, 5)
        psi0 = exact_evolve(p, inp, 0.0, (6, 6, 4))
        psi = exact_evolve(p, inp, 40.0, (6, 6, 4))
        n0 = sum(fock_moment(psi0, dims, {i: (1, 1)}).real for i in (0, 1))
        n1 = sum(fock_moment(psi, dims, {i: (1, 1)}).real for i in (0, 1))
        assert abs(n0 - n1) < 1e-8

    def test_contradirectional_rejected(self):
        with pytest.raises(ValueError):
            exact_evolve(CONTRA, CoherentInputs(0.5, 0.2, 0.1), 1.0, (4, 4, 4))

    def test_memory_cap(self):
        with pytest.raises(MemoryError):
            exact_evolve(CODIR, CoherentInputs(0.5, 0.2, 0.1), 1.0, (99, 99, 99))


class TestModeMoment:
    def test_decoupled_b2_at_gamma0(self):
        p = CouplerParams(k=0.1, gamma_b=0.0, delta_k_b=1e-4,
                          geometry=Geometry.CODIRECTIONAL)
        c = codir_coefficients(p, 12.0)
        inp = CoherentInputs(0.5, 0.2, 0.3 * np.exp(0.4j))
        assert abs(mode_moment(c, inp, {"b2": (1, 1)}) - 0.09) < 1e-14

    def test_na_at_z0(self):
        c = codir_coefficients(CODIR, 0.0)
        inp = CoherentInputs(0.5, 0.2, 0.1)
        assert abs(mode_moment(c, inp, {"a": (1, 1)}) - 0.25) < 1e-14

    def test_na_vs_fock_oracle(self):
        inp = CoherentInputs(0.5, 0.2, 0.1)
        z = 30.0
        c = codir_coefficients(CODIR, z)
        pert = mode_moment(c, inp, {"a": (1, 1)}).real
        psi = exact_evolve(CODIR, inp, z, (6, 6, 4))
        exact = fock_moment(psi, (7, 7, 5), {0: (1, 1)}).real
        assert abs(pert - exact) / exact < 1e-3
