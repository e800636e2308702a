"""Evolution coefficients and oracles for chi(2) waveguide couplers.

Three configurations are covered: a codirectional and a contradirectional
asymmetric coupler (one linear and one second-harmonic-generating waveguide,
modes a, b1, b2), and a symmetric coupler made of two nonlinear waveguides
(modes a1, a2, b1, b2).  Field evolution is perturbative in the nonlinear
coupling, linear order for the asymmetric couplers and quadratic order for
the system second-harmonic branch of the symmetric one.

Two independent numerical oracles live here as well: direct integration of
the coefficient ODEs (with boundary shooting for the contradirectional case)
and brute-force integration of the z-dependent Schrodinger equation in a
truncated Fock space.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import solve_ivp

from ._symmetric_coeffs import second_harmonic_l_coefficients
from .tensor import destroy, kron, coherent_fock

__all__ = [
    "Geometry",
    "Regime",
    "CouplerParams",
    "CouplerCoefficients",
    "CoherentInputs",
    "codir_coefficients",
    "contradir_coefficients",
    "symmetric_l_coefficients",
    "short_length_coefficients",
    "coefficients_ode_oracle",
    "exact_evolve",
    "fock_moment",
    "mode_moment",
    "evolved_mode_expansion",
]


class Geometry(Enum):
    CODIRECTIONAL = "codirectional"
    CONTRADIRECTIONAL = "contradirectional"
    SYMMETRIC = "symmetric"


class Regime(Enum):
    FULL = "full"
    SHORT_LENGTH = "short-length"


@dataclass(frozen=True)
class CouplerParams:
    """Coupling constants and phase mismatches of one coupler configuration.

    The perturbative solutions assume |gamma| << |k|; a ratio above 0.2
    triggers a warning.  Phase mismatches must avoid the resonances at
    0 and 2|k| where the closed forms are singular.
    """

    k: complex
    gamma_b: complex
    delta_k_b: float
    gamma_a: complex = 0.0
    delta_k_a: float = 0.0
    geometry: Geometry = Geometry.CODIRECTIONAL

    def __post_init__(self):
        if self.k == 0:
            raise ValueError("linear coupling k must be nonzero")
        worst = max(abs(self.gamma_a), abs(self.gamma_b)) / abs(self.k)
        if worst > 0.2:
            warnings.warn(
                f"|gamma/k| = {worst:.3g} is outside the perturbative regime",
                stacklevel=2,
            )
        if self.geometry is not Geometry.SYMMETRIC and self.gamma_a != 0:
            raise ValueError("asymmetric couplers have a linear probe: gamma_a must be 0")

    @property
    def eps(self):
        """Singularity guard scale, 1e-9 |k|^2."""
        return 1e-9 * abs(self.k) ** 2

    def _guard(self, dk, name):
        ak = abs(self.k)
        if abs(dk) <= self.eps:
            raise ValueError(f"{name} = {dk:.3g} is too close to the 0 resonance")
        if abs(4 * ak**2 - dk**2) <= self.eps:
            raise ValueError(f"{name} = {dk:.3g} is too close to the 2|k| resonance")


@dataclass(frozen=True)
class CouplerCoefficients:
    """Evolution coefficients of one configuration at propagation length z.

    For the asymmetric couplers f, g, h_or_l are the four coefficients of
    modes a, b1, b2; for the symmetric coupler f and g hold the six
    first-order coefficients of a1 and b1 and h_or_l the fourteen
    second-harmonic coefficients of b2.
    """

    f: tuple
    g: tuple
    h_or_l: tuple
    z: float
    geometry: Geometry
    regime: Regime = Regime.FULL


@dataclass(frozen=True)
class CoherentInputs:
    """Complex amplitudes of the initial product coherent state.

    alpha, beta, gamma feed modes a, b1, b2 of the asymmetric couplers.
    For the symmetric coupler the assignment follows the Zeno convention:
    alpha -> a1, beta -> b1, gamma -> a2, delta -> b2.
    """

    alpha: complex
    beta: complex
    gamma: complex = 0.0
    delta: complex = 0.0


def codir_coefficients(p: CouplerParams, z):
    """Closed-form f, g, h coefficients of the codirectional coupler."""
    if p.geometry is not Geometry.CODIRECTIONAL:
        raise ValueError("params are not for a codirectional coupler")
    p._guard(p.delta_k_b, "delta_k_b")
    k, G, dk = complex(p.k), complex(p.gamma_b), float(p.delta_k_b)
    ak = abs(k)
    kc, Gc = np.conj(k), np.conj(G)
    den = 4 * ak**2 - dk**2
    Gp = 1 + np.exp(-1j * dk * z)
    Gm = 1 - np.exp(-1j * dk * z)
    Gpc, Gmc = np.conj(Gp), np.conj(Gm)
    f1 = np.cos(ak * z)
    g2 = f1
    f2 = -1j * kc / ak * np.sin(ak * z)
    g1 = -np.conj(f2)
    f3 = (2 * kc * Gc / den) * (Gm * f1 + (f2 / kc) * (dk - 2 * ak**2 / dk * Gm))
    f4 = (4 * kc**2 * Gc / (dk * den)) * Gm * f1 + (2 * kc * Gc / den) * Gp * f2
    g3 = (2 * Gc * k / den) * Gp * f2 - (2 * Gc * (2 * ak**2 - dk**2) * f1 / (dk * den)) * Gm
    g4 = (4 * Gc * ak**2 / (dk * den)) * f2 \
        - (2 * Gc * (2 * ak**2 - dk**2) / (dk * den)) * (Gp - 1) * f2 \
        + (2 * kc * Gc / den) * Gm * f1
    s2, c2 = np.sin(2 * ak * z), np.cos(2 * ak * z)
    h1 = np.ones_like(f1)
    h2 = G * Gmc / (2 * dk) - (1j * G / (2 * den)) * (2 * ak * (Gpc - 1) * s2 - 1j * dk * (1 - (Gpc - 1) * c2))
    h3 = (-G * ak / (kc * den)) * (1j * dk * (Gpc - 1) * s2 + 2 * ak * (1 - (Gpc - 1) * c2))
    h4 = -(G * ak**2 * Gmc) / (2 * kc**2 * dk) \
        - (1j * G * ak**2 / (2 * kc**2 * den)) * (2 * ak * (Gpc - 1) * s2 - 1j * dk * (1 - (Gpc - 1) * c2))
    return CouplerCoefficients((f1, f2, f3, f4), (g1, g2, g3, g4), (h1, h2, h3, h4),
                               float(z), Geometry.CODIRECTIONAL)


def contradir_coefficients(p: CouplerParams, L):
    """Closed-form coefficients of the contradirectional coupler at z = L.

    The backward-propagating mode a makes this a boundary problem; the
    returned coefficients relate a(0), b1(L), b2(L) to a(L), b1(0), b2(0)
    and are only meaningful at the boundary length itself.
    """
    if p.geometry is not Geometry.CONTRADIRECTIONAL:
        raise ValueError("params are not for a contradirectional coupler")
    p._guard(p.delta_k_b, "delta_k_b")
    k, G, dk = complex(p.k), complex(p.gamma_b), float(p.delta_k_b)
    ak = abs(k)
    kc, Gc = np.conj(k), np.conj(G)
    C = Gc / (ak * dk * (dk**2 + 4 * ak**2))
    Cc = np.conj(C)
    Gp = 1 + np.exp(-1j * dk * L)
    Gm = 1 - np.exp(-1j * dk * L)
    Gpc, Gmc = np.conj(Gp), np.conj(Gm)
    f1 = 1.0 / np.cosh(ak * L)
    g2 = f1
    f2 = -1j * kc * np.tanh(ak * L) / ak
    g1 = -np.conj(f2)
    sh, ch = np.sinh(ak * L), np.cosh(ak * L)
    sh2, ch2 = np.sinh(2 * ak * L), np.cosh(2 * ak * L)
    f3 = C * kc * dk * f1**2 * (1j * dk * sh2 + 2 * ak * (Gp - 1 - ch2))
    f4 = 2 * C * kc**2 * f1**2 * (1j * dk * sh * Gp - 2 * ak * ch * Gm)
    g3 = -2 * C * ak * f1**2 * ((dk**2 + 2 * ak**2) * ch * Gm + 1j * dk * ak * sh * Gp)
    g4 = C * kc * dk * f1**2 * (1j * dk * sh2 * (Gp - 1) - 2 * ak * (1 - ch2 * (Gp - 1)))
    h1 = np.ones_like(f1 + 0j)
    h2 = (Cc * ak / 2) * f1**2 * (4 * ak**2 * Gmc + dk**2 * (1 - 2 * (Gpc - 1) + ch2) - 2j * dk * ak * sh2)
    # The (G+*-1) factor on the dk^2 sinh term keeps h3 consistent with the
    # coefficient ODEs for every mismatch, not just dk << |k|.
    h3 = 2 * Cc * k * f1**2 * (dk * ak * Gmc * ch + (1j * dk**2 * (Gpc - 1) - 2j * ak**2 * Gmc) * sh)
    h4 = (Cc * ak * k / kc) * f1 * (2 * ak**2 * f1 * Gmc + dk * sh * (Gpc - 1) * (2j * ak + dk * np.tanh(ak * L)))
    return CouplerCoefficients((f1, f2, f3, f4), (g1, g2, g3, g4), (h1, h2, h3, h4),
                               float(L), Geometry.CONTRADIRECTIONAL)


def symmetric_l_coefficients(p: CouplerParams, z):
    """Coefficients of the symmetric coupler: six first-order f/g and l1..l14."""
    if p.geometry is not Geometry.SYMMETRIC:
        raise ValueError("params are not for a symmetric coupler")
    p._guard(p.delta_k_b, "delta_k_b")
    p._guard(p.delta_k_a, "delta_k_a")
    dkab = p.delta_k_a - p.delta_k_b
    p._guard(dkab, "delta_k_a - delta_k_b")
    k = complex(p.k)
    ak = abs(k)
    kc = np.conj(k)
    Gac, Gbc = np.conj(p.gamma_a), np.conj(p.gamma_b)
    ls = second_harmonic_l_coefficients(k, p.delta_k_a, p.delta_k_b, p.gamma_a, p.gamma_b, z)
    f1 = np.cos(ak * z)
    g2 = f1
    g1 = 1j * (k / ak) * np.sin(ak * z)
    f2 = 1j * (kc / ak) * np.sin(ak * z)
    # driving amplitudes over e^{+-i|k|z}, shifted by the mismatch exponential
    ca, cb = 1j * Gac, 1j * Gbc
    f3, g3 = _driven_pair(k, [(ak - p.delta_k_a, ca, 0.0), (-ak - p.delta_k_a, ca, 0.0)], z)
    f4, g4 = _driven_pair(k, [(ak - p.delta_k_a, -ca * k / ak, 0.0),
                              (-ak - p.delta_k_a, ca * k / ak, 0.0)], z)
    f5, g5 = _driven_pair(k, [(ak - p.delta_k_b, 0.0, cb), (-ak - p.delta_k_b, 0.0, cb)], z)
    f6, g6 = _driven_pair(k, [(ak - p.delta_k_b, 0.0, -cb * kc / ak),
                              (-ak - p.delta_k_b, 0.0, cb * kc / ak)], z)
    return CouplerCoefficients((f1, f2, f3, f4, f5, f6), (g1, g2, g3, g4, g5, g6),
                               tuple(ls), float(z), Geometry.SYMMETRIC)


def _driven_pair(k, sources, z):
    """Solve f' = i conj(k) g + s_f, g' = i k f + s_g with f(0) = g(0) = 0.

    `sources` lists (omega, sf_w, sg_w) for drives sf_w e^{i omega z} on f
    and sg_w e^{i omega z} on g.  Exact for omega away from +-|k|.
    """
    ak = abs(k)
    kc = np.conj(k)
    z = np.asarray(z, dtype=float)
    f = np.zeros_like(z, dtype=complex)
    g = np.zeros_like(z, dtype=complex)
    asum = 0.0 + 0j
    bsum = 0.0 + 0j
    for w, sf, sg in sources:
        det = ak**2 - w**2
        a = (1j * w * sf + 1j * kc * sg) / det
        b = (1j * k * sf + 1j * w * sg) / det
        ph = np.exp(1j * w * z)
        f = f + a * ph
        g = g + b * ph
        asum += a
        bsum += b
    cp = (-asum - kc * bsum / ak) / 2
    cm = (-asum + kc * bsum / ak) / 2
    ep, em = np.exp(1j * ak * z), np.exp(-1j * ak * z)
    f = f + cp * ep + cm * em
    g = g + (ak / kc) * (cp * ep - cm * em)
    return f, g


def exact_evolve(p: CouplerParams, inputs: CoherentInputs, z, cutoffs,
                 rtol=1e-10, atol=1e-12, max_dim=200_000, return_info=False):
    """Brute-force state evolution in a truncated Fock space.

    Integrates d|psi>/dz = +i G_S(z) |psi> (the state-picture companion of
    the dO/dz = -i[G, O] convention) for the codirectional or symmetric
    momentum operator, starting from the product coherent state.
    """
    if p.geometry is Geometry.CONTRADIRECTIONAL:
        raise ValueError("the contradirectional coupler is a boundary problem; "
                         "use the shooting coefficient oracle instead")
    dims = tuple(int(c) + 1 for c in cutoffs)
    total = int(np.prod(dims))
    if total > max_dim:
        raise MemoryError(f"Fock space dimension {total} exceeds cap {max_dim}")
    if p.geometry is Geometry.CODIRECTIONAL:
        if len(dims) != 3:
            raise ValueError("codirectional coupler needs cutoffs for (a, b1, b2)")
        amps = (inputs.alpha, inputs.beta, inputs.gamma)
    else:
        if len(dims) != 4:
            raise ValueError("symmetric coupler needs cutoffs for (a1, b1, a2, b2)")
        amps = (inputs.alpha, inputs.beta, inputs.gamma, inputs.delta)

    from scipy import sparse

    ops = []
    for i, d in enumerate(dims):
        mats = [sparse.identity(dd, dtype=complex, format="csr") for dd in dims]
        mats[i] = sparse.csr_matrix(destroy(d))
        full = mats[0]
        for mat in mats[1:]:
            full = sparse.kron(full, mat, format="csr")
        ops.append(full)

    if p.geometry is Geometry.CODIRECTIONAL:
        a, b1, b2 = ops
        m0 = -(p.k * a @ b1.conj().T + np.conj(p.k) * a.conj().T @ b1)
        mb = -p.gamma_b * (b1 @ b1) @ b2.conj().T
        blocks = [(0.0, m0), (p.delta_k_b, mb)]
    else:
        a1, b1, a2, b2 = ops
        m0 = p.k * a1 @ b1.conj().T + np.conj(p.k) * a1.conj().T @ b1
        ma = p.gamma_a * (a1 @ a1) @ a2.conj().T
        mb = p.gamma_b * (b1 @ b1) @ b2.conj().T
        blocks = [(0.0, m0), (p.delta_k_a, ma), (p.delta_k_b, mb)]

    psi0 = coherent_fock(amps[0], dims[0] - 1, tail_mass=1e-8, strict=True)
    for amp, d in zip(amps[1:], dims[1:]):
        psi0 = np.kron(psi0, coherent_fock(amp, d - 1, tail_mass=1e-8, strict=True))

    hermitian_blocks = [(dk, m.tocsr(), m.conj().T.tocsr()) for dk, m in blocks]

    def rhs(s, y):
        psi = y[:total] + 1j * y[total:]
        g = np.zeros_like(psi)
        for dk, m, mh in hermitian_blocks:
            if dk == 0.0:
                g += m @ psi
            else:
                ph = np.exp(1j * dk * s)
                g += ph * (m @ psi) + np.conj(ph) * (mh @ psi)
        dpsi = 1j * g
        return np.concatenate([dpsi.real, dpsi.imag])

    y0 = np.concatenate([psi0.real, psi0.imag])
    sol = solve_ivp(rhs, (0.0, float(z)), y0, method="DOP853", rtol=rtol, atol=atol)
    if not sol.success:
        raise ArithmeticError(f"Fock-space integration failed: {sol.message}")
    psi = sol.y[:total, -1] + 1j * sol.y[total:, -1]
    drift = abs(np.linalg.norm(psi) - 1.0)
    if drift > 1e-6:
        raise ArithmeticError(f"norm drift {drift:.3e} exceeds 1e-6; raise the cutoffs")
    if return_info:
        return psi, {"dims": dims, "norm_drift": drift}
    return psi


def short_length_coefficients(p: CouplerParams, z):
    """Quadratic-in-length truncation of the evolution coefficients.

    For the contradirectional coupler the conventional short-length result
    additionally sets the phase mismatch to zero, so dk drops out there.
    """
    k, G = complex(p.k), complex(p.gamma_b)
    ak = abs(k)
    kc, Gc = np.conj(k), np.conj(G)
    one = np.ones_like(np.asarray(z, dtype=complex))
    if p.geometry is Geometry.CODIRECTIONAL:
        dk = float(p.delta_k_b)
        f1 = (1 - ak**2 * z**2 / 2) * one
        f2 = -1j * kc * z * one
        f3 = -Gc * kc * z**2 * one
        f4 = 0.0 * one
        g1 = -1j * k * z * one
        g2 = f1
        g3 = (-2j * Gc * z - Gc * dk * z**2) * one
        g4 = Gc * kc * z**2 * one
        h1 = one
        h2 = (-1j * G * z + G * dk * z**2 / 2) * one
        h3 = -G * k * z**2 * one
        h4 = 0.0 * one
    elif p.geometry is Geometry.CONTRADIRECTIONAL:
        f1 = (1 - ak**2 * z**2 / 2) * one
        f2 = -1j * kc * z * one
        f3 = -Gc * kc * z**2 * one
        f4 = 0.0 * one
        g1 = -1j * k * z * one
        g2 = f1
        g3 = -2j * Gc * z * one
        g4 = Gc * kc * z**2 * one
        h1 = one
        h2 = -1j * G * z * one
        h3 = -G * k * z**2 * one
        h4 = 0.0 * one
    else:
        raise ValueError("short-length forms are provided for the asymmetric couplers")
    return CouplerCoefficients((f1, f2, f3, f4), (g1, g2, g3, g4), (h1, h2, h3, h4),
                               float(np.max(np.atleast_1d(z))), p.geometry, Regime.SHORT_LENGTH)


def coefficients_ode_oracle(p: CouplerParams, z, rtol=1e-12, atol=1e-14):
    """Coefficients by direct numerical integration of the coefficient ODEs.

    Codirectional and symmetric geometries are initial-value problems; the
    contradirectional one is solved by shooting on the backward mode.
    Returns a CouplerCoefficients with the same layout as the closed forms.
    """
    k = complex(p.k)
    kc = np.conj(k)
    if p.geometry is Geometry.CODIRECTIONAL:
        G = complex(p.gamma_b)
        Gc = np.conj(G)
        dk = float(p.delta_k_b)

        def rhs(s, y):
            c = y[:12] + 1j * y[12:]
            f1, f2, f3, f4, g1, g2, g3, g4, h1, h2, h3, h4 = c
            em = np.exp(-1j * dk * s)
            ep = np.exp(1j * dk * s)
            d = np.array([
                -1j * kc * g1, -1j * kc * g2, -1j * kc * g3, -1j * kc * g4,
                -1j * k * f1, -1j * k * f2,
                -1j * k * f3 - 2j * Gc * np.conj(g2) * em,
                -1j * k * f4 - 2j * Gc * np.conj(g1) * em,
                0.0,
                -1j * G * g2**2 * ep,
                -2j * G * g1 * g2 * ep,
                -1j * G * g1**2 * ep,
            ])
            return np.concatenate([d.real, d.imag])

        y0 = np.zeros(24)
        y0[0] = 1.0
        y0[5] = 1.0
        y0[8] = 1.0
        sol = solve_ivp(rhs, (0.0, float(z)), y0, method="DOP853", rtol=rtol, atol=atol)
        c = sol.y[:12, -1] + 1j * sol.y[12:, -1]
        return CouplerCoefficients(tuple(c[0:4]), tuple(c[4:8]), tuple(c[8:12]),
                                   float(z), p.geometry)
    if p.geometry is Geometry.CONTRADIRECTIONAL:
        return _contradir_shooting(p, float(z), rtol, atol)

    G_a, G_b = complex(p.gamma_a), complex(p.gamma_b)
    dka, dkb = float(p.delta_k_a), float(p.delta_k_b)

    def rhs(s, y):
        c = y[:26] + 1j * y[26:]
        (F1, F2, F3, F4, F5, F6, G1, G2, G3, G4, G5, G6,
         L2, L3, L4, L5, L6, L7, L8, L9, L10, L11, L12, L13, L14, _pad) = c
        eam = np.exp(-1j * dka * s)
        ebm = np.exp(-1j * dkb * s)
        eb = np.exp(1j * dkb * s)
        d = np.array([
            1j * kc * G1, 1j * kc * G2,
            1j * kc * G3 + 2j * np.conj(G_a) * np.conj(F1) * eam,
            1j * kc * G4 + 2j * np.conj(G_a) * np.conj(F2) * eam,
            1j * kc * G5, 1j * kc * G6,
            1j * k * F1, 1j * k * F2, 1j * k * F3, 1j * k * F4,
            1j * k * F5 + 2j * np.conj(G_b) * np.conj(G2) * ebm,
            1j * k * F6 + 2j * np.conj(G_b) * np.conj(G1) * ebm,
            1j * G_b * G2**2 * eb,
            2j * G_b * G1 * G2 * eb,
            1j * G_b * G1**2 * eb,
            2j * G_b * G2 * G5 * eb,
            1j * G_b * (G2 * G5 + G1 * G6) * eb,
            2j * G_b * G1 * G5 * eb,
            2j * G_b * G2 * G6 * eb,
            2j * G_b * G1 * G6 * eb,
            2j * G_b * G2 * G3 * eb,
            2j * G_b * G1 * G3 * eb,
            1j * G_b * (G1 * G3 + G2 * G4) * eb,
            2j * G_b * G2 * G4 * eb,
            2j * G_b * G1 * G4 * eb,
            0.0,
        ])
        return np.concatenate([d.real, d.imag])

    y0 = np.zeros(52)
    y0[0] = 1.0  # F1
    y0[7] = 1.0  # G2
    sol = solve_ivp(rhs, (0.0, float(z)), y0, method="DOP853", rtol=rtol, atol=atol)
    c = sol.y[:26, -1] + 1j * sol.y[26:, -1]
    ls = (1.0 + 0j,) + tuple(c[12:25])
    return CouplerCoefficients(tuple(c[0:6]), tuple(c[6:12]), ls, float(z), p.geometry)


def _contradir_shooting(p, L, rtol, atol):
    k = complex(p.k)
    kc = np.conj(k)
    G = complex(p.gamma_b)
    Gc = np.conj(G)
    dk = float(p.delta_k_b)

    def pair_rhs(s, y, source):
        F = y[0] + 1j * y[1]
        Gv = y[2] + 1j * y[3]
        dF = 1j * kc * Gv
        dG = -1j * k * F + source(s)
        return [dF.real, dF.imag, dG.real, dG.imag]

    def integrate(F0, G0, source):
        return solve_ivp(pair_rhs, (0.0, L), [F0.real, F0.imag, G0.real, G0.imag],
                         args=(source,), method="DOP853", rtol=rtol, atol=atol,
                         dense_output=True)

    def val(sol, s):
        y = sol.sol(s)
        return y[0] + 1j * y[1], y[2] + 1j * y[3]

    zero = lambda s: 0.0
    solu = integrate(1 + 0j, 0j, zero)
    solv = integrate(0j, 1 + 0j, zero)
    uF, uG = val(solu, L)
    vF, vG = val(solv, L)

    F1_0 = 1.0 / uF           # boundary: F1(L) = 1, G1(0) = 0
    F2_0 = -vF / uF           # boundary: F2(L) = 0, G2(0) = 1
    f1, f2 = F1_0, F2_0
    g1 = F1_0 * uG
    g2 = F2_0 * uG + vG

    def G1z(s):
        _, g = val(solu, s)
        return F1_0 * g

    def G2z(s):
        _, gu = val(solu, s)
        _, gv = val(solv, s)
        return F2_0 * gu + gv

    src3 = lambda s: -2j * Gc * np.conj(G2z(s)) * np.exp(-1j * dk * s)
    src4 = lambda s: -2j * Gc * np.conj(G1z(s)) * np.exp(-1j * dk * s)
    solp3 = integrate(0j, 0j, src3)
    solp4 = integrate(0j, 0j, src4)
    p3F, p3G = val(solp3, L)
    p4F, p4G = val(solp4, L)
    F3_0 = -p3F / uF
    F4_0 = -p4F / uF
    f3, f4 = F3_0, F4_0
    g3 = F3_0 * uG + p3G
    g4 = F4_0 * uG + p4G

    def hrhs(s, y):
        g1v, g2v = G1z(s), G2z(s)
        ep = np.exp(1j * dk * s)
        d = np.array([-1j * G * g2v**2 * ep, -2j * G * g1v * g2v * ep, -1j * G * g1v**2 * ep])
        return np.concatenate([d.real, d.imag])

    sol = solve_ivp(hrhs, (0.0, L), np.zeros(6), method="DOP853", rtol=rtol, atol=atol)
    h2, h3, h4 = sol.y[:3, -1] + 1j * sol.y[3:, -1]
    return CouplerCoefficients((f1, f2, f3, f4), (g1, g2, g3, g4), (1.0 + 0j, h2, h3, h4),
                               L, Geometry.CONTRADIRECTIONAL)


_ASYM_PATTERNS = {
    "a": ("f", ((("a", False),), (("b1", False),), (("b1", True), ("b2", False)),
                (("a", True), ("b2", False)))),
    "b1": ("g", ((("a", False),), (("b1", False),), (("b1", True), ("b2", False)),
                 (("a", True), ("b2", False)))),
    "b2": ("h", ((("b2", False),), (("b1", False), ("b1", False)),
                 (("b1", False), ("a", False)), (("a", False), ("a", False)))),
}

_SYM_B2_OPS = (
    (("b2", False),),
    (("b1", False), ("b1", False)),
    (("b1", False), ("a1", False)),
    (("a1", False), ("a1", False)),
    (("b1", True), ("b1", False), ("b2", False)),
    (("b2", False),),
    (("a1", False), ("b1", True), ("b2", False)),
    (("a1", True), ("b1", False), ("b2", False)),
    (("a1", True), ("a1", False), ("b2", False)),
    (("a1", True), ("a2", False), ("b1", False)),
    (("a1", True), ("a1", False), ("a2", False)),
    (("a2", False),),
    (("a2", False), ("b1", True), ("b1", False)),
    (("a1", False), ("a2", False), ("b1", True)),
)
_SYM_B2_ORDERS = (0, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2)

_SYM_FG_OPS = (
    (("a1", False),),
    (("b1", False),),
    (("a1", True), ("a2", False)),
    (("a2", False), ("b1", True)),
    (("b1", True), ("b2", False)),
    (("a1", True), ("b2", False)),
)


def evolved_mode_expansion(c: CouplerCoefficients, mode):
    """The evolved annihilation operator of `mode` as an OperatorSum."""
    from .moments import OperatorSum

    if c.geometry in (Geometry.CODIRECTIONAL, Geometry.CONTRADIRECTIONAL):
        if mode not in _ASYM_PATTERNS:
            raise ValueError(f"unknown mode {mode!r} for an asymmetric coupler")
        which, opsets = _ASYM_PATTERNS[mode]
        coeffs = {"f": c.f, "g": c.g, "h": c.h_or_l}[which]
        orders = (0, 0, 1, 1) if which in ("f", "g") else (0, 1, 1, 1)
        return OperatorSum.from_expansion(
            (coeffs[i], opsets[i], orders[i]) for i in range(4))
    if mode == "b2":
        return OperatorSum.from_expansion(
            (c.h_or_l[i], _SYM_B2_OPS[i], _SYM_B2_ORDERS[i]) for i in range(14))
    if mode in ("a1", "b1"):
        coeffs = c.f if mode == "a1" else c.g
        orders = (0, 0, 1, 1, 1, 1)
        return OperatorSum.from_expansion(
            (coeffs[i], _SYM_FG_OPS[i], orders[i]) for i in range(6))
    raise ValueError(f"no expansion available for mode {mode!r} of the symmetric coupler")


def mode_moment(c: CouplerCoefficients, inputs: CoherentInputs, spec, max_order=1):
    """Normally ordered moment of evolved modes for coherent inputs.

    `spec` maps mode name -> (p, q) for <prod adag^p prod a^q>, all daggered
    factors to the left.  The product is truncated at total nonlinearity
    order `max_order`, matching the perturbative closed forms.
    """
    from .moments import coherent_expectation

    if isinstance(spec, dict):
        spec = [(m, pq[0], pq[1]) for m, pq in sorted(spec.items())]
    else:
        spec = [(m, int(pp), int(qq)) for m, pp, qq in spec]
    if c.geometry in (Geometry.CODIRECTIONAL, Geometry.CONTRADIRECTIONAL):
        amplitudes = {"a": inputs.alpha, "b1": inputs.beta, "b2": inputs.gamma}
    else:
        amplitudes = {"a1": inputs.alpha, "b1": inputs.beta,
                      "a2": inputs.gamma, "b2": inputs.delta}
    factors = []
    for m, pp, _q in spec:
        ex = evolved_mode_expansion(c, m).dagger()
        factors.extend([ex] * pp)
    for m, _p, qq in spec:
        ex = evolved_mode_expansion(c, m)
        factors.extend([ex] * qq)
    return coherent_expectation(factors, amplitudes, max_order=max_order)


def fock_moment(psi, dims, spec):
    """Normally ordered moment <prod a_i^dag^p a_i^q> on a Fock-space ket.

    `spec` maps mode index -> (p, q).
    """
    psi = np.asarray(psi)
    t = psi.reshape(dims)
    bra = t.conj()
    ketv = t
    for mode, (pp, qq) in sorted(spec.items()):
        d = dims[mode]
        a = destroy(d)
        op = np.linalg.matrix_power(a, qq)
        ketv = np.tensordot(op, ketv, axes=([1], [mode]))
        ketv = np.moveaxis(ketv, 0, mode)
        opb = np.linalg.matrix_power(a, pp)
        bra = np.tensordot(opb, bra, axes=([1], [mode]))
        bra = np.moveaxis(bra, 0, mode)
    return complex(np.sum(bra * ketv))
