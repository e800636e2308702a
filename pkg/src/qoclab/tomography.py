"""Spin and optical tomograms: measurable distributions of rotated
projections (spin) and rotated quadratures (homodyne).

Wigner d-matrices follow the Varshalovich convention, with
d^{1/2} = [[cos(b/2), -sin(b/2)], [sin(b/2), cos(b/2)]] over descending m.
Spin tomograms are the diagonal of the rotated density matrix and never
depend on the first Euler angle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import NoiseParams

__all__ = [
    "jacobi_poly",
    "wigner_small_d",
    "wigner_D",
    "rotation_matrix",
    "Tomogram",
    "spin_tomogram",
    "two_qubit_tomogram",
    "qnd_tomogram_component",
    "sgad_tomogram_component",
    "vacuum_bath_tomogram",
    "vacuum_tomogram_components",
    "optical_tomogram",
    "radon_transform",
]


def jacobi_poly(n, a, b, x):
    """Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence."""
    x = np.asarray(x, dtype=float)
    if n < 0:
        raise ValueError("polynomial degree must be nonnegative")
    p0 = np.ones_like(x)
    if n == 0:
        return p0
    p1 = 0.5 * (a - b + (a + b + 2) * x)
    if n == 1:
        return p1
    for k in range(2, n + 1):
        c1 = 2 * k * (k + a + b) * (2 * k + a + b - 2)
        c2 = (2 * k + a + b - 1) * (a**2 - b**2)
        c3 = (2 * k + a + b - 2) * (2 * k + a + b - 1) * (2 * k + a + b)
        c4 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + a + b)
        p0, p1 = p1, ((c2 + c3 * x) * p1 - c4 * p0) / c1
    return p1


def _as_two(x, name):
    v = 2 * x
    if abs(v - round(v)) > 1e-12:
        raise ValueError(f"{name} = {x} is not a half-integer")
    return int(round(v))


def wigner_small_d(j, m, mp, beta):
    """Rotation matrix element d^j_{m,m'}(beta), Varshalovich convention."""
    tj = _as_two(j, "j")
    tm = _as_two(m, "m")
    tmp = _as_two(mp, "mp")
    if abs(tm) > tj or abs(tmp) > tj or (tj - tm) % 2 or (tj - tmp) % 2:
        raise ValueError("m and m' must run over j, j-1, ..., -j")
    # map to the region mu = |m - m'|, nu = |m + m'| via symmetries
    mu = abs(tm - tmp) // 2
    nu = abs(tm + tmp) // 2
    n = (tj - max(abs(tm), abs(tmp))) // 2  # n = j - max(|m|, |m'|)
    xi = 1.0 if tmp >= tm else (-1.0) ** ((tm - tmp) // 2)
    lnfac = math.lgamma
    lognorm = 0.5 * (lnfac(n + 1) + lnfac(n + mu + nu + 1)
                     - lnfac(n + mu + 1) - lnfac(n + nu + 1))
    beta = np.asarray(beta, dtype=float)
    val = xi * math.exp(lognorm) * np.sin(beta / 2) ** mu * np.cos(beta / 2) ** nu \
        * jacobi_poly(n, mu, nu, np.cos(beta))
    return float(val) if val.ndim == 0 else val


def wigner_D(j, m, mp, alpha, beta, gamma):
    """Full rotation matrix element exp(-i m alpha) d^j_{m,m'} exp(-i m' gamma)."""
    return np.exp(-1j * m * alpha) * wigner_small_d(j, m, mp, beta) * np.exp(-1j * mp * gamma)


def rotation_matrix(j, alpha, beta, gamma):
    """Matrix D^j over the descending-m basis."""
    tj = _as_two(j, "j")
    d = tj + 1
    ms = [(tj - 2 * i) / 2 for i in range(d)]
    out = np.zeros((d, d), dtype=complex)
    for a, m in enumerate(ms):
        for b, mp in enumerate(ms):
            out[a, b] = wigner_D(j, m, mp, alpha, beta, gamma)
    return out


@dataclass(frozen=True)
class Tomogram:
    """Projection probabilities labeled by magnetic quantum numbers."""

    outcomes: tuple  # ((m_labels, probability), ...)

    def __post_init__(self):
        probs = np.array([p for _, p in self.outcomes])
        if np.any(probs < -1e-12) or np.any(probs > 1 + 1e-12):
            raise ValueError("tomogram probabilities out of range")
        if abs(probs.sum() - 1.0) > 1e-10:
            raise ValueError(f"tomogram sums to {probs.sum():.12g}, not 1")

    @property
    def probabilities(self):
        return np.array([p for _, p in self.outcomes])

    def __getitem__(self, i):
        return self.outcomes[i][1]


def spin_tomogram(rho, j, alpha, beta, gamma):
    """Spin projections onto the rotated axis: diag(D rho D^dag).

    The alpha dependence cancels in the probabilities; it is accepted to
    honor the rotation parametrization.
    """
    rho = np.asarray(rho, dtype=complex)
    D = rotation_matrix(j, alpha, beta, gamma)
    probs = np.real(np.diag(D @ rho @ D.conj().T))
    tj = _as_two(j, "j")
    ms = [(tj - 2 * i) / 2 for i in range(tj + 1)]
    return Tomogram(tuple((m, float(p)) for m, p in zip(ms, probs)))


def _u_matrix(alpha, beta, gamma):
    """Single-qubit rotation used by the two-qubit tomogram."""
    cb, sb = np.cos(beta / 2), np.sin(beta / 2)
    return np.array([
        [cb * np.exp(1j * (alpha + gamma) / 2), sb * np.exp(1j * (alpha - gamma) / 2)],
        [-sb * np.exp(-1j * (alpha - gamma) / 2), cb * np.exp(-1j * (alpha + gamma) / 2)],
    ], dtype=complex)


def two_qubit_tomogram(rho, angles1, angles2):
    """Joint projection probabilities; angles are (alpha, beta, gamma) tuples.

    Outcome order is (+1/2, +1/2), (+1/2, -1/2), (-1/2, +1/2), (-1/2, -1/2).
    """
    rho = np.asarray(rho, dtype=complex)
    u = np.kron(_u_matrix(*angles1), _u_matrix(*angles2))
    probs = np.real(np.diag(u @ rho @ u.conj().T))
    labels = ((0.5, 0.5), (0.5, -0.5), (-0.5, 0.5), (-0.5, -0.5))
    return Tomogram(tuple((lab, float(p)) for lab, p in zip(labels, probs)))


def qnd_tomogram_component(m1, beta_t, gamma_t, t, alpha, beta, omega=1.0, gamma_val=0.0):
    """Closed-form single-qubit tomogram component under pure dephasing."""
    damp = math.exp(-(omega**2) * gamma_val)
    osc = 0.5 * np.sin(beta_t) * np.sin(alpha) * np.cos(omega * t + beta + gamma_t) * damp
    if m1 > 0:
        return np.cos(beta_t / 2) ** 2 - np.cos(beta_t) * np.cos(alpha / 2) ** 2 - osc
    return np.cos(beta_t / 2) ** 2 - np.cos(beta_t) * np.sin(alpha / 2) ** 2 + osc


def sgad_tomogram_component(m1, beta_t, gamma_t, t, alpha, beta, noise: NoiseParams):
    """Closed-form single-qubit tomogram component in the dissipative channel.

    Includes the free rotation at the system frequency, so the noiseless
    limit reproduces the dephasing component with gamma(t) = 0.
    """
    g0 = noise.gamma0
    N = noise.n_eff
    M = noise.m_bath
    w = noise.omega
    gp, gm = g0 * (N + 1), g0 * N
    gb = gp + gm
    ap = np.sqrt(complex(g0**2 * abs(M) ** 2 - w**2))
    ch = np.cosh(ap * t)
    sho = t if ap == 0 else np.sinh(ap * t) / ap
    eb = math.exp(-gb * t) if gb * t < 700 else 0.0
    eb2 = math.exp(-gb * t / 2)
    up = np.cos(alpha / 2) ** 2 * eb + (gp / gb if gb else 1.0) * (1 - eb)
    dn = np.sin(alpha / 2) ** 2 * eb + (gm / gb if gb else 0.0) * (1 - eb)
    coh = 0.5 * np.sin(alpha) * ((ch - 1j * w * sho) * np.exp(-1j * beta)
                                 - g0 * M * sho * np.exp(1j * beta)) * eb2
    cross = np.exp(-1j * gamma_t) * coh
    osc = 0.5 * np.sin(beta_t) * 2 * np.real(cross)
    if m1 > 0:
        return float(np.sin(beta_t / 2) ** 2 * up + np.cos(beta_t / 2) ** 2 * dn - osc)
    return float(np.cos(beta_t / 2) ** 2 * up + np.sin(beta_t / 2) ** 2 * dn + osc)


def vacuum_bath_tomogram(rho_dressed, angles1, angles2):
    """Tomographic four-vector of the dressed two-qubit state.

    The dressed-basis density matrix is rotated to the bare product basis
    before projecting, matching the generic two-qubit tomogram.
    """
    from .channels import dressed_basis_matrix

    B = dressed_basis_matrix()
    rho_bare = B @ np.asarray(rho_dressed, dtype=complex) @ B.conj().T
    return two_qubit_tomogram(rho_bare, angles1, angles2)


def vacuum_tomogram_components(rho_dressed, beta1, beta2, gamma1, gamma2):
    """Closed-form tomographic vector directly from the dressed elements.

    Outcome order matches two_qubit_tomogram; the components sum to the
    trace of the dressed density matrix.
    """
    rho = np.asarray(rho_dressed, dtype=complex)
    ee, ss, aa, gg = rho[0, 0], rho[1, 1], rho[2, 2], rho[3, 3]
    es, ea, eg = rho[0, 1], rho[0, 2], rho[0, 3]
    sa, sg, ag = rho[1, 2], rho[1, 3], rho[2, 3]
    c1, c2 = np.cos(beta1), np.cos(beta2)
    s1, s2 = np.sin(beta1), np.sin(beta2)
    cb1, sb1 = np.cos(beta1 / 2) ** 2, np.sin(beta1 / 2) ** 2
    cb2, sb2 = np.cos(beta2 / 2) ** 2, np.sin(beta2 / 2) ** 2
    cg = np.cos(gamma1 - gamma2)
    sg_ = np.sin(gamma1 - gamma2)
    e1, e2 = np.exp(1j * gamma1), np.exp(1j * gamma2)
    e12 = np.exp(1j * (gamma1 + gamma2))
    rt2 = np.sqrt(2)

    def hc(x):
        return 2 * np.real(x)

    w1 = 0.25 * (4 * ee * cb1 * cb2 + 4 * gg * sb1 * sb2
                 + (aa + ss) * (1 - c1 * c2) - (aa - ss) * s1 * s2 * cg
                 + hc(sa * (c1 - c2 - 1j * s1 * s2 * sg_)
                      + rt2 * (((-ea + es) * cb2 + (ag + sg) * sb2) * s1 * e1
                               + s2 * e2 * ((ea + es) * cb1 - (ag - sg) * sb1))
                      + e12 * eg * s1 * s2))
    w2 = 0.25 * (4 * ee * cb1 * sb2 + 4 * gg * sb1 * cb2
                 + (aa + ss) * (1 + c1 * c2) + (aa - ss) * s1 * s2 * cg
                 + hc(sa * (c1 + c2 + 1j * s1 * s2 * sg_)
                      + rt2 * (((ag + sg) * cb2 - (ea - es) * sb2) * s1 * e1
                               + s2 * e2 * (-(ea + es) * cb1 + (ag - sg) * sb1))
                      - e12 * eg * s1 * s2))
    w3 = 0.25 * (4 * ee * sb1 * cb2 + 4 * gg * cb1 * sb2
                 + (aa + ss) * (1 + c1 * c2) + (aa - ss) * s1 * s2 * cg
                 + hc(-sa * (c1 + c2 - 1j * s1 * s2 * sg_)
                      + rt2 * ((-(ag + sg) * sb2 + (ea - es) * cb2) * s1 * e1
                               + s2 * e2 * ((ea + es) * sb1 - (ag - sg) * cb1))
                      - e12 * eg * s1 * s2))
    w4 = 0.25 * (4 * ee * sb1 * sb2 + 4 * gg * cb1 * cb2
                 + (aa + ss) * (1 - c1 * c2) - (aa - ss) * s1 * s2 * cg
                 + hc(-sa * (c1 - c2 + 1j * s1 * s2 * sg_)
                      + rt2 * ((-(ag + sg) * cb2 + (ea - es) * sb2) * s1 * e1
                               + s2 * e2 * (-(ea + es) * sb1 + (ag - sg) * cb1))
                      + e12 * eg * s1 * s2))
    return np.real(np.array([w1, w2, w3, w4]))


def optical_tomogram(X, theta, t, beta, n_th, r, k):
    """Homodyne distribution of a damped oscillator from a coherent state.

    Gaussian in the rotated quadrature X with center Re[beta e^{i theta}]
    e^{-kt}; the variance combines thermal photons and bath squeezing and
    must stay positive.
    """
    X = np.asarray(X, dtype=float)
    M = 1 - math.exp(-2 * k * t)
    var = (2 * n_th * M + 1) - 2 * r * M * np.cos(2 * theta)
    if np.any(var <= 0):
        raise ValueError(f"variance term {np.min(var):.3g} is not positive; "
                         "reduce the squeezing r or raise n_th")
    center = np.real(beta * np.exp(1j * theta)) * math.exp(-k * t)
    return np.sqrt(2 / np.pi) / np.sqrt(var) * np.exp(-2 * (center - X) ** 2 / var)


def radon_transform(wigner_fn, theta, X, p_span=8.0, n_p=4001):
    """Marginal of a phase-space density along the rotated quadrature.

    Integrates W along the line of constant rotated quadrature
    x cos(theta) - p sin(theta) = X by Simpson quadrature over the line
    parameter in [-p_span, p_span]; the rotation sense matches the homodyne
    quadrature of optical_tomogram, and the grid must cover the support.
    """
    X = np.atleast_1d(np.asarray(X, dtype=float))
    p = np.linspace(-p_span, p_span, n_p)
    xx = X[:, None] * np.cos(theta) + p[None, :] * np.sin(theta)
    pp = -X[:, None] * np.sin(theta) + p[None, :] * np.cos(theta)
    vals = wigner_fn(xx, pp)
    from scipy.integrate import simpson

    out = simpson(vals, x=p, axis=1)
    edge = max(abs(vals[:, 0]).max(), abs(vals[:, -1]).max())
    if edge > 1e-8:
        raise ValueError("phase-space grid does not cover the support; raise p_span")
    return out if out.size > 1 else float(out[0])
