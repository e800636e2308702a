"""Noise channels: Markovian Kraus families, QND dephasing, squeezed
generalized amplitude damping, non-Markovian parameter families, and the
two-qubit vacuum-bath propagator.

Basis conventions matter here and are stated per constructor.  The
communication-channel family (ad_channel, pd_channel) uses the computational
convention with |1> the excited state.  The spin family (sgad_channel and its
limits) uses the spin convention with index 0 the excited state m = +1/2, the
one the spin quasiprobability closed forms are written in.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .tensor import KrausChannel

__all__ = [
    "NoiseParams",
    "NMParams",
    "ad_channel",
    "pd_channel",
    "dephasing_channel_p",
    "damping_channel_p",
    "gad_channel",
    "sgad_channel",
    "sgad_parameters",
    "sgad_master_evolve",
    "qnd_evolve",
    "ohmic_dephasing_gamma",
    "nm_damping_p",
    "nm_dephasing_p",
    "nm_depolarizing",
    "depolarizing_channel",
    "collective_rates",
    "dressed_basis_matrix",
    "vacuum_bath_propagate",
]


@dataclass(frozen=True)
class NoiseParams:
    """Squeezed-thermal-bath dissipation parameters (hbar = k_B = 1)."""

    gamma0: float
    T: float = 0.0
    r: float = 0.0
    phi: float = 0.0
    omega: float = 1.0
    t: float = 0.0

    def __post_init__(self):
        if self.gamma0 < 0 or self.T < 0 or self.t < 0:
            raise ValueError("gamma0, T, and t must be nonnegative")

    @property
    def n_thermal(self):
        if self.T == 0:
            return 0.0
        return 1.0 / np.expm1(self.omega / self.T)

    @property
    def n_eff(self):
        nth = self.n_thermal
        return nth * (np.cosh(self.r) ** 2 + np.sinh(self.r) ** 2) + np.sinh(self.r) ** 2

    @property
    def a_sq(self):
        return np.sinh(2 * self.r) * (2 * self.n_thermal + 1)

    @property
    def m_bath(self):
        return -0.5 * (2 * self.n_thermal + 1) * np.exp(1j * self.phi) * np.sinh(2 * self.r)


@dataclass(frozen=True)
class NMParams:
    """Strength / bandwidth of one non-Markovian coupling (per axis for
    depolarizing)."""

    gamma: float
    Gamma: float

    def __post_init__(self):
        if self.gamma <= 0 or self.Gamma <= 0:
            raise ValueError("gamma and Gamma must be positive")


def ad_channel(eta):
    """Amplitude damping, |1> decays to |0> with probability eta."""
    if not 0 <= eta <= 1:
        raise ValueError("eta must lie in [0, 1]")
    k0 = np.array([[1, 0], [0, np.sqrt(1 - eta)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(eta)], [0, 0]], dtype=complex)
    return KrausChannel((k0, k1), label="AD")


def pd_channel(eta, form="three"):
    """Phase damping: coherences shrink by (1 - eta), populations fixed.

    form="three" is the three-operator set {sqrt(1-eta) I, sqrt(eta)|0><0|,
    sqrt(eta)|1><1|}.  form="two" is the two-operator set
    {|0><0| + p|1><1|, sqrt(1-p^2)|1><1|}; matching the three-operator action
    requires p = 1 - eta (fixed by direct comparison on random states).
    """
    if not 0 <= eta <= 1:
        raise ValueError("eta must lie in [0, 1]")
    if form == "three":
        k0 = np.sqrt(1 - eta) * np.eye(2, dtype=complex)
        k1 = np.sqrt(eta) * np.diag([1.0, 0.0]).astype(complex)
        k2 = np.sqrt(eta) * np.diag([0.0, 1.0]).astype(complex)
        return KrausChannel((k0, k1, k2), label="PD3")
    if form == "two":
        return dephasing_channel_p(1 - eta)
    raise ValueError("form must be 'two' or 'three'")


def dephasing_channel_p(p):
    """Two-operator dephasing with coherence factor p (non-Markovian family)."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0, 1]")
    k0 = np.diag([1.0, p]).astype(complex)
    k1 = np.array([[0, 0], [0, np.sqrt(1 - p**2)]], dtype=complex)
    return KrausChannel((k0, k1), label="PD2")


def damping_channel_p(p):
    """Amplitude damping written with survival amplitude sqrt(p) (eta = 1-p)."""
    return ad_channel(1 - p)


def sgad_parameters(np_: NoiseParams):
    """(p, lam, mu, nu) of the squeezed generalized amplitude damping channel.

    The mixing probability p solves the consistency condition tying the
    Kraus coherence factors to the interaction-picture master-equation map;
    both quadratic branches are formed and the one meeting all probability
    bounds (and the unsquared equation) is kept, erroring if the choice is
    not unique.
    """
    g0, t = np_.gamma0, np_.t
    if t == 0:
        return 1.0, 0.0, 0.0, 0.0
    N = np_.n_eff
    a = np_.a_sq
    gb = g0 * (2 * N + 1)
    E = np.exp(-gb * t)
    if N == 0:
        # vacuum bath: plain amplitude damping
        return 1.0, 1.0 - np.exp(-g0 * t), 0.0, 0.0
    # the single sinh in the denominator makes (1-p) sqrt(mu nu) equal the
    # squeezing coherence sinh(g0 a t / 2) exp(-gb t / 2) of the master map
    A = (2 * N + 1) / (2 * N) * np.sinh(g0 * a * t / 2) ** 2 * np.exp(-gb * t / 2) \
        / np.sinh(gb * t / 2)
    B = N * (1 - E) / (2 * N + 1)
    C = A + B + E
    D = np.cosh(g0 * a * t / 2) ** 2 * E

    def residual(u):
        # u = 1 - p; unsquared matching condition
        lhs = np.sqrt(max((1 - u) * (C - u), 0.0)) + np.sqrt(max((u - A) * (u - B), 0.0))
        return lhs - np.sqrt(D)

    qa = 4 * D - (1 + E) ** 2
    qb = -(4 * D * (A + B) + 2 * (1 + E) * (D + A * B - A - B - E))
    qc = 4 * D * A * B - (D + A * B - A - B - E) ** 2
    if abs(qa) < 1e-300:
        roots = [-qc / qb] if qb != 0 else []
    else:
        disc = qb**2 - 4 * qa * qc
        if disc < 0 and disc > -1e-12 * max(qb**2, abs(4 * qa * qc)):
            disc = 0.0
        if disc < 0:
            raise ValueError("SGAD mixing probability has no real solution here")
        roots = [(-qb + s * np.sqrt(disc)) / (2 * qa) for s in (+1.0, -1.0)]
    valid = []
    for u in roots:
        p = 1 - u
        if not (0 <= p <= 1):
            continue
        mu = A / u if u > 0 else 0.0
        nu = B / u if u > 0 else 0.0
        lam = (1 - u * (mu + nu) - E) / p if p > 0 else 0.0
        if not all(-1e-10 <= x <= 1 + 1e-10 for x in (lam, mu, nu)):
            continue
        if abs(residual(u)) > 1e-8 * max(1.0, np.sqrt(D)):
            continue
        valid.append((p, min(max(lam, 0.0), 1.0), min(max(mu, 0.0), 1.0), min(max(nu, 0.0), 1.0)))
    if not valid:
        raise ValueError("no SGAD branch satisfies the probability bounds")
    if len(valid) > 1:
        # when both quadratic branches are admissible they parametrize the
        # same channel; confirm via the four action invariants, then keep
        # the branch continuously connected to the damping limit p = 1
        def invariants(v):
            p, lam, mu, nu = v
            return np.array([
                p * np.sqrt(1 - lam) + (1 - p) * np.sqrt((1 - mu) * (1 - nu)),
                (1 - p) * np.sqrt(mu * nu),
                (1 - p) * nu,
                p * lam + (1 - p) * mu,
            ])
        spread = max(np.abs(invariants(a) - invariants(b)).max()
                     for a in valid for b in valid)
        if spread > 1e-9:
            raise ValueError(
                f"SGAD branches disagree on the channel action by {spread:.2e}")
        valid.sort(key=lambda v: -v[0])
    return valid[0]


def sgad_channel(np_: NoiseParams):
    """Squeezed generalized amplitude damping channel (spin convention).

    Index 0 is the excited state m = +1/2.  Limits: r = 0 gives GAD, and
    additionally T = 0 gives AD with lam = 1 - exp(-gamma0 t).
    """
    p, lam, mu, nu = sgad_parameters(np_)
    xi = np_.phi
    sp = np.sqrt(p)
    sq = np.sqrt(1 - p)
    e0 = sp * np.array([[np.sqrt(1 - lam), 0], [0, 1]], dtype=complex)
    e1 = sp * np.array([[0, 0], [np.sqrt(lam), 0]], dtype=complex)
    e2 = sq * np.array([[np.sqrt(1 - mu), 0], [0, np.sqrt(1 - nu)]], dtype=complex)
    e3 = sq * np.array([[0, np.sqrt(nu)], [np.sqrt(mu) * np.exp(-1j * xi), 0]], dtype=complex)
    return KrausChannel((e0, e1, e2, e3), label="SGAD")


def gad_channel(np_: NoiseParams):
    """Generalized amplitude damping: the r = 0 limit of the SGAD family."""
    if np_.r != 0:
        raise ValueError("GAD is the zero-squeezing limit; got r != 0")
    return sgad_channel(np_)


def sgad_master_evolve(rho0, np_: NoiseParams, omega=None):
    """Closed-form squeezed-bath dissipative map (spin convention).

    Solves the master equation including the free -i(omega/2)[sigma_z, rho]
    rotation; omega=0 reproduces the interaction-picture Kraus channel.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    w = np_.omega if omega is None else omega
    g0, t = np_.gamma0, np_.t
    N = np_.n_eff
    M = np_.m_bath
    gp = g0 * (N + 1)
    gm = g0 * N
    gb = gp + gm
    g = gp - gm
    ap = np.sqrt(complex(g0**2 * abs(M) ** 2 - w**2))
    if ap == 0:
        ch, sh_over = 1.0, t  # limits of cosh(ap t), sinh(ap t)/ap
    else:
        ch = np.cosh(ap * t)
        sh_over = np.sinh(ap * t) / ap
    eb = np.exp(-gb * t)
    eb2 = np.exp(-gb * t / 2)
    # spin convention: |e> = [1,0] so sigma_+ = |e><g| = [[0,1],[0,0]]
    sp_ = np.array([[0, 1], [0, 0]], dtype=complex)
    sm_ = sp_.T.conj()
    sz = np.diag([1.0, -1.0]).astype(complex)
    f_p = 1 + eb + 2 * ch * eb2
    f_m = 1 + eb - 2 * ch * eb2
    g_m = (g / gb) * (1 - eb) - 2j * w * sh_over * eb2
    g_p = (g / gb) * (1 - eb) + 2j * w * sh_over * eb2
    out = 0.25 * rho0 * f_p + 0.25 * (sz @ rho0 @ sz) * f_m \
        - 0.25 * (rho0 @ sz) * g_m - 0.25 * (sz @ rho0) * g_p \
        - g0 * sh_over * eb2 * (M * sp_ @ rho0 @ sp_ + np.conj(M) * sm_ @ rho0 @ sm_) \
        + (1 - eb) * ((gp / gb) * sm_ @ rho0 @ sp_ + (gm / gb) * sp_ @ rho0 @ sm_)
    return out


def qnd_evolve(rho0, gamma_t, omega, t):
    """Purely dephasing evolution over the Wigner-Dicke basis (descending m).

    Populations are untouched; the (m, n) coherence picks up the phase
    exp(-i omega (m - n) t) and the decay exp(-omega^2 (m - n)^2 gamma(t)).
    `gamma_t` is a callable with gamma_t(0) = 0, or a precomputed value.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    d = rho0.shape[0]
    j = (d - 1) / 2
    m = j - np.arange(d)
    if callable(gamma_t):
        if abs(float(gamma_t(0.0))) > 1e-14:
            raise ValueError("the decoherence function must vanish at t = 0")
        gam = float(gamma_t(t))
    else:
        gam = float(gamma_t)
    dm = m[:, None] - m[None, :]
    factor = np.exp(-1j * omega * dm * t) * np.exp(-(omega**2) * dm**2 * gam)
    return rho0 * factor


def ohmic_dephasing_gamma(t, gamma0=0.1, omega_c=100.0, T=0.0, r=0.0, a=0.0):
    """QND decoherence exponent for an Ohmic bath, by numerical quadrature.

    Spectral density J(w) = (gamma0 / pi) w exp(-w / omega_c); the squeezing
    angle follows Phi(w) = a w.  Temperature in hbar = k_B = 1 units.
    """
    t = float(t)
    if t == 0:
        return 0.0

    def integrand(w):
        pref = (gamma0 / np.pi) / w * np.exp(-w / omega_c)
        therm = 1.0 if T == 0 else 1.0 / np.tanh(w / (2 * T))
        osc = (np.exp(1j * w * t) - 1) * np.cosh(r) + (np.exp(-1j * w * t) - 1) * np.sinh(r) * np.exp(2j * a * w)
        return 0.5 * pref * therm * abs(osc) ** 2

    val, _err = quad(integrand, 0, np.inf, limit=400)
    return val


def nm_damping_p(np_: NMParams, t):
    """Survival parameter of the non-Markovian damping channel.

    p(t) = e^{-Gamma t} [cos(d t / 2) + (Gamma / d) sin(d t / 2)]^2 with
    d = sqrt(2 gamma Gamma - Gamma^2), evaluated in complex arithmetic so the
    overdamped branch needs no case split.
    """
    t = np.asarray(t, dtype=float)
    g, G = np_.gamma, np_.Gamma
    d = np.sqrt(complex(2 * g * G - G**2))
    if d == 0:
        amp = 1 + G * t / 2
    else:
        amp = np.cos(d * t / 2) + (G / d) * np.sin(d * t / 2)
    p = np.exp(-G * t) * amp**2
    if np.max(np.abs(np.imag(p))) > 1e-12:
        raise ArithmeticError("damping p(t) acquired an imaginary part")
    p = np.real(p)
    return float(np.clip(p, 0.0, 1.0)) if np.ndim(t) == 0 else np.clip(p, 0.0, 1.0)


def nm_dephasing_p(np_: NMParams, t):
    """Coherence parameter of the non-Markovian dephasing channel."""
    t = np.asarray(t, dtype=float)
    g, G = np_.gamma, np_.Gamma
    p = np.exp(-(g / 2) * (t + np.expm1(-G * t) / G))
    return float(p) if np.ndim(t) == 0 else p


def nm_depolarizing(params, t, markovian=False):
    """Pauli weights (P1..P4) and decay factors (Omega1..Omega3).

    `params` is a sequence of three NMParams, one per Pauli axis.  Complete
    positivity (all P_i >= 0) is checked per call.
    """
    if len(params) != 3:
        raise ValueError("three per-axis parameter sets are required")
    t = float(t)
    ratios = [q.gamma / q.Gamma for q in params]
    omegas = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        if markovian:
            gi = 4.0 / params[i].Gamma * (params[j].gamma ** 2 + params[k].gamma ** 2)
            omegas.append(np.exp(-gi * t / 2))
            continue
        d = np.sqrt(complex(16 * (ratios[j] ** 2 + ratios[k] ** 2) - 1))
        G = params[i].Gamma
        if d == 0:
            amp = 1 + G * t / 2
        else:
            amp = np.cos(G * d * t / 2) + (1 / d) * np.sin(G * d * t / 2)
        w = np.exp(-G * t / 2) * amp
        if abs(np.imag(w)) > 1e-12:
            raise ArithmeticError(f"Omega_{i + 1} acquired an imaginary part")
        omegas.append(float(np.real(w)))
    o1, o2, o3 = omegas
    weights = np.array([
        (1 + o1 - o2 - o3) / 4,
        (1 - o1 + o2 - o3) / 4,
        (1 - o1 - o2 + o3) / 4,
        (1 + o1 + o2 + o3) / 4,
    ])
    bad = np.nonzero(weights < -1e-12)[0]
    if bad.size:
        raise ValueError(
            f"complete positivity violated at t = {t}: P_{bad[0] + 1} = {weights[bad[0]]:.3e}")
    weights = np.clip(weights, 0.0, None)
    return tuple(weights), tuple(omegas)


def depolarizing_channel(params, t, markovian=False):
    """KrausChannel {sqrt(P_i) sigma_i} of the depolarizing family."""
    from .tensor import PAULI_I, PAULI_X, PAULI_Y, PAULI_Z

    (p1, p2, p3, p4), _ = nm_depolarizing(params, t, markovian=markovian)
    ops = (np.sqrt(p1) * PAULI_X, np.sqrt(p2) * PAULI_Y,
           np.sqrt(p3) * PAULI_Z, np.sqrt(p4) * PAULI_I)
    return KrausChannel(ops, label="NM-depolarizing")


def collective_rates(Gamma, k0, r12, mu_dot_r=0.0):
    """(Gamma_12, Omega_12) for two identical dipoles a distance r12 apart."""
    x = k0 * r12
    if x <= 0:
        raise ValueError("k0 * r12 must be positive")
    perp = 1 - mu_dot_r**2
    par = 1 - 3 * mu_dot_r**2
    if x < 1e-3:
        # series form avoids the catastrophic cancellation of the x^-3 terms
        F = 1.5 * (perp * (1 - x**2 / 6) + par * (-1 / 3 + x**2 / 30))
    else:
        F = 1.5 * (perp * np.sin(x) / x + par * (np.cos(x) / x**2 - np.sin(x) / x**3))
    gamma12 = Gamma * F
    omega12 = 0.75 * Gamma * (-perp * np.cos(x) / x + par * (np.sin(x) / x**2 + np.cos(x) / x**3))
    return gamma12, omega12


def dressed_basis_matrix():
    """Columns map dressed (e, s, a, g) coordinates to bare (e1e2 .. g1g2)."""
    s = 1 / np.sqrt(2)
    return np.array([
        [1, 0, 0, 0],
        [0, s, s, 0],
        [0, s, -s, 0],
        [0, 0, 0, 1],
    ], dtype=complex)


def vacuum_bath_propagate(rho0, t, Gamma, Gamma12, Omega12, omega0=1.0):
    """Two-qubit dissipative vacuum-bath map in the dressed basis (e, s, a, g).

    Closed-form matrix elements; trace and Hermiticity are preserved, and
    t = 0 is the identity map.
    """
    r = np.asarray(rho0, dtype=complex)
    if r.shape != (4, 4):
        raise ValueError("the dressed-basis density matrix is 4x4")
    G, G12, O12 = float(Gamma), float(Gamma12), float(Omega12)
    gp = G + G12
    gm = G - G12
    ee0, ss0, aa0, gg0 = r[0, 0], r[1, 1], r[2, 2], r[3, 3]
    es0, ea0, eg0, sa0, sg0, ag0 = r[0, 1], r[0, 2], r[0, 3], r[1, 2], r[1, 3], r[2, 3]
    ee = np.exp(-2 * G * t) * ee0
    ss = np.exp(-gp * t) * ss0 + (gp / gm) * (1 - np.exp(-gm * t)) * np.exp(-gp * t) * ee0
    aa = np.exp(-gm * t) * aa0 + (gm / gp) * (1 - np.exp(-gp * t)) * np.exp(-gm * t) * ee0
    # population conservation fixes the ground term exactly
    gg = gg0 + (ss0 - ss) + (aa0 - aa) + (ee0 - ee)
    es = np.exp(-1j * (omega0 - O12) * t) * np.exp(-0.5 * (3 * G + G12) * t) * es0
    ea = np.exp(-1j * (omega0 + O12) * t) * np.exp(-0.5 * (3 * G - G12) * t) * ea0
    eg = np.exp(-2j * omega0 * t) * np.exp(-G * t) * eg0
    sa = np.exp(-2j * O12 * t) * np.exp(-G * t) * sa0
    denom = G**2 + 4 * O12**2
    mix = (2 * O12 * np.exp(-G * t) * np.sin(2 * O12 * t)
           + G * (1 - np.exp(-G * t) * np.cos(2 * O12 * t)))
    mix_i = (2 * O12 * (1 - np.exp(-G * t) * np.cos(2 * O12 * t))
             - G * np.exp(-G * t) * np.sin(2 * O12 * t))
    sg = np.exp(-1j * (omega0 + O12) * t) * np.exp(-0.5 * gp * t) \
        * (sg0 + (gp / denom) * (mix + 1j * mix_i) * es0)
    ag = np.exp(-1j * (omega0 - O12) * t) * np.exp(-0.5 * gm * t) \
        * (ag0 - (gm / denom) * (mix - 1j * mix_i) * ea0)
    out = np.array([
        [ee, es, ea, eg],
        [np.conj(es), ss, sa, sg],
        [np.conj(ea), np.conj(sa), aa, ag],
        [np.conj(eg), np.conj(sg), np.conj(ag), gg],
    ])
    tr = np.trace(out).real
    if abs(tr - np.trace(r).real) > 1e-10:
        raise ArithmeticError(f"vacuum-bath propagation changed the trace by {tr - 1:.3e}")
    return out
