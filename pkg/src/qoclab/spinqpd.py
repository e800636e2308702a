"""Spin-j quasiprobability distributions on the sphere.

Wigner, P, Q, and F distributions are expansions over spherical harmonics
weighted by state multipoles rho_KQ = Tr(T_KQ^dag rho); multi-spin states
factor into one sphere per particle.  Closed forms for the noise scenarios
of interest (dephasing and dissipative single-qubit channels, two-qubit
amplitude damping of a singlet, three-qubit GHZ / W damping) are provided
next to the generic pipeline so each can check the other.

Conventions (stated because sign slips here are the main hazard):
 - Wigner-Dicke basis ordering is descending m, so index 0 is m = +j (the
   excited state in the two-level reading);
 - spherical harmonics carry the Condon-Shortley phase;
 - the multipole operators are fixed by T_00 = I/sqrt(2) and, for j = 1/2,
   T_10 = diag(1, -1)/sqrt(2), T_11 = -sigma_-, T_1-1 = +sigma_+.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .channels import NoiseParams, sgad_parameters

__all__ = [
    "wigner_3j",
    "multipole_operator",
    "atomic_coherent",
    "sph_harm_cs",
    "AngleGrid",
    "state_multipoles",
    "qpd",
    "qnd_acs_qpd",
    "sgad_acs_qpd",
    "epr_ad_state",
    "epr_ad_qpd",
    "ghz_ad_state",
    "ghz_ad_qpd",
    "w_ad_state",
    "w_ad_qpd",
    "analytic_qpd",
    "nonclassical_volume",
]

KINDS = ("W", "P", "Q", "F")


def _check_half_integer(x, name):
    v = 2 * x
    if abs(v - round(v)) > 1e-12:
        raise ValueError(f"{name} = {x} is not a half-integer")
    return round(v)  # 2x as an int


def wigner_3j(j1, j2, j3, m1, m2, m3):
    """Wigner 3j symbol by the Racah sum, evaluated in exact rationals.

    Returns 0 when the selection rules fail; raises on non-half-integer
    arguments or |m| > j.
    """
    tj = [_check_half_integer(v, n) for v, n in ((j1, "j1"), (j2, "j2"), (j3, "j3"))]
    tm = [_check_half_integer(v, n) for v, n in ((m1, "m1"), (m2, "m2"), (m3, "m3"))]
    for a, b in zip(tj, tm):
        if abs(b) > a or (a - b) % 2:
            if abs(b) > a:
                raise ValueError("|m| exceeds j")
            return 0.0
    if tm[0] + tm[1] + tm[2] != 0:
        return 0.0
    if tj[2] > tj[0] + tj[1] or tj[2] < abs(tj[0] - tj[1]):
        return 0.0
    if (tj[0] + tj[1] + tj[2]) % 2:
        return 0.0

    def f(two_x):
        if two_x % 2:
            raise ValueError("factorial of a non-integer")
        n = two_x // 2
        if n < 0:
            raise ValueError("factorial of a negative value")
        return math.factorial(n)

    tj1, tj2, tj3 = tj
    tm1, tm2, tm3 = tm
    tri = Fraction(f(tj1 + tj2 - tj3) * f(tj1 - tj2 + tj3) * f(-tj1 + tj2 + tj3),
                   f(tj1 + tj2 + tj3 + 2))
    norm = tri * f(tj1 + tm1) * f(tj1 - tm1) * f(tj2 + tm2) * f(tj2 - tm2) \
        * f(tj3 + tm3) * f(tj3 - tm3)
    kmin = max(0, (tj2 - tj3 - tm1) // 2, (tj1 - tj3 + tm2) // 2)
    kmax = min((tj1 + tj2 - tj3) // 2, (tj1 - tm1) // 2, (tj2 + tm2) // 2)
    total = Fraction(0)
    for k in range(kmin, kmax + 1):
        den = (math.factorial(k)
               * f(tj1 + tj2 - tj3 - 2 * k)
               * f(tj1 - tm1 - 2 * k)
               * f(tj2 + tm2 - 2 * k)
               * f(tj3 - tj2 + tm1 + 2 * k)
               * f(tj3 - tj1 - tm2 + 2 * k))
        total += Fraction((-1) ** k, den)
    phase = (-1) ** ((tj1 - tj2 - tm3) // 2)
    value = phase * float(total) * math.sqrt(float(norm))
    return value


def multipole_operator(j, K, Q):
    """(2j+1)-dimensional irreducible tensor operator T_KQ, descending-m basis.

    Satisfies T_KQ^dag = (-1)^Q T_K,-Q and Tr(T_KQ^dag T_K'Q') = delta delta.
    """
    tj = _check_half_integer(j, "j")
    if not (0 <= K <= tj):
        raise ValueError(f"K = {K} outside 0..2j")
    if abs(Q) > K:
        raise ValueError(f"|Q| = {abs(Q)} exceeds K = {K}")
    d = tj + 1
    ms = [Fraction(tj, 2) - i for i in range(d)]
    out = np.zeros((d, d), dtype=complex)
    for a, m in enumerate(ms):
        for b, mp in enumerate(ms):
            w = wigner_3j(j, K, j, -float(m), float(Q), float(mp))
            if w:
                out[a, b] = (-1) ** int(round(float(j - m))) * math.sqrt(2 * K + 1) * w
    # match the spin-qubit matrix convention the closed forms are written in
    return out.conj().T


def atomic_coherent(j, alpha, beta):
    """Spin coherent state over Wigner-Dicke states, descending-m ordering."""
    tj = _check_half_integer(j, "j")
    d = tj + 1
    amps = np.zeros(d, dtype=complex)
    for i in range(d):
        m2 = tj - 2 * i  # 2m
        k = (tj + m2) // 2  # j + m
        c = math.sqrt(math.comb(tj, k)) \
            * np.sin(alpha / 2) ** k * np.cos(alpha / 2) ** (tj - k)
        amps[i] = c * np.exp(-1j * k * beta)
    return amps


def sph_harm_cs(l, m, theta, phi):
    """Spherical harmonic with the Condon-Shortley phase (Varshalovich)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    mm = abs(m)
    if mm > l:
        raise ValueError("|m| > l")
    x = np.cos(theta)
    s = np.sin(theta)
    # associated Legendre P_l^mm by stable upward recursion
    pmm = np.ones_like(x)
    if mm > 0:
        pmm = (-1) ** mm * float(_double_factorial(2 * mm - 1)) * s**mm
    if l == mm:
        plm = pmm
    else:
        pm1 = x * (2 * mm + 1) * pmm
        if l == mm + 1:
            plm = pm1
        else:
            for ll in range(mm + 2, l + 1):
                plm = (x * (2 * ll - 1) * pm1 - (ll + mm - 1) * pmm) / (ll - mm)
                pmm, pm1 = pm1, plm
    norm = math.sqrt((2 * l + 1) / (4 * math.pi)
                     * math.factorial(l - mm) / math.factorial(l + mm))
    y = norm * plm * np.exp(1j * mm * phi)
    if m >= 0:
        return y
    return (-1) ** mm * np.conj(y)


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@dataclass(frozen=True)
class AngleGrid:
    """Gauss-Legendre nodes in cos(theta) times a uniform trapezoid in phi."""

    theta: np.ndarray
    phi: np.ndarray
    weights: np.ndarray  # outer product weights, shape (n_theta, n_phi)

    @classmethod
    def build(cls, n_theta=32, n_phi=64):
        x, wx = np.polynomial.legendre.leggauss(n_theta)
        theta = np.arccos(x[::-1])
        wtheta = wx[::-1]
        phi = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
        wphi = np.full(n_phi, 2 * np.pi / n_phi)
        w = np.outer(wtheta, wphi)
        return cls(theta, phi, w)

    def integrate(self, values):
        """Integral of f over the sphere; `values` indexed [theta, phi]."""
        return float(np.sum(np.real(values) * self.weights))

    @property
    def mesh(self):
        t, p = np.meshgrid(self.theta, self.phi, indexing="ij")
        return t, p


def _kernel_value(kind, j, K, Q):
    """Per-sphere expansion weight of one distribution kind."""
    tj = _check_half_integer(j, "j")
    fm = math.factorial(tj - K)
    fp = math.factorial(tj + K + 1)
    f0 = math.factorial(tj)
    if kind == "W":
        return math.sqrt((tj + 1) / (4 * math.pi))
    if kind == "P":
        return (-1) ** (K - Q) / math.sqrt(4 * math.pi) * math.sqrt(fm * fp) / f0
    if kind == "Q":
        return (-1) ** (K - Q) / math.sqrt(4 * math.pi) * (tj + 1) * f0 / math.sqrt(fm * fp)
    if kind == "F":
        jj = tj / 2
        return (1 / math.sqrt(4 * math.pi)) / 2**K * math.sqrt(fp / (fm * (jj * (jj + 1)) ** K))
    raise ValueError(f"unknown distribution kind {kind!r}")


def state_multipoles(rho, j, n_spins=1):
    """rho_{K1 Q1 .. Kn Qn} = Tr(rho T^dag x ... x T^dag) for all K, Q."""
    tj = _check_half_integer(j, "j")
    d = tj + 1
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d**n_spins, d**n_spins):
        raise ValueError("state dimension does not match j and the spin count")
    labels = [(K, Q) for K in range(tj + 1) for Q in range(-K, K + 1)]
    tops = {kq: multipole_operator(j, *kq) for kq in labels}
    out = {}
    import itertools

    for combo in itertools.product(labels, repeat=n_spins):
        op = tops[combo[0]].conj().T
        for kq in combo[1:]:
            op = np.kron(op, tops[kq].conj().T)
        out[combo] = complex(np.trace(op @ rho))
    return out


def qpd(rho, j, kind, angles, multipoles=None):
    """Evaluate the W/P/Q/F distribution of an n-spin state.

    `angles` is a sequence of (theta, phi) pairs, one per spin; theta/phi may
    be arrays (broadcast together).  The imaginary residue beyond 1e-10 of
    the summed series raises, below that it is discarded.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    angles = list(angles)
    n = len(angles)
    mults = multipoles if multipoles is not None else state_multipoles(rho, j, n)
    total = None
    for combo, rkq in mults.items():
        if rkq == 0:
            continue
        term = rkq
        for (K, Q), (th, ph) in zip(combo, angles):
            term = term * _kernel_value(kind, j, K, Q) * sph_harm_cs(K, Q, th, ph)
        total = term if total is None else total + term
    total = np.asarray(total)
    if np.max(np.abs(total.imag)) > 1e-10:
        raise ArithmeticError(f"distribution has imaginary residue {np.max(np.abs(total.imag)):.3e}")
    out = total.real
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# closed forms for the noisy scenarios
# ---------------------------------------------------------------------------

_QPD_WEIGHTS = {"W": math.sqrt(3.0), "P": 3.0, "Q": 1.0, "F": math.sqrt(3.0)}
_QPD_SIGNS = {"W": -1.0, "P": +1.0, "Q": +1.0, "F": -1.0}


def qnd_acs_qpd(kind, theta, phi, t, alpha, beta, omega=1.0, gamma_val=0.0):
    """Atomic coherent state dephasing in a QND bath, single qubit.

    `gamma_val` is the accumulated decoherence exponent gamma(t) (hbar = 1).
    """
    w = _QPD_WEIGHTS[kind]
    s = _QPD_SIGNS[kind]
    damp = np.exp(-(omega**2) * gamma_val)
    return (1 / (4 * np.pi)) * (
        1 + s * w * np.cos(alpha) * np.cos(theta)
        + w * damp * np.cos(beta + omega * t + phi) * np.sin(alpha) * np.sin(theta))


def sgad_acs_qpd(kind, theta, phi, t, alpha, beta, noise: NoiseParams):
    """Atomic coherent state in the dissipative squeezed-bath channel."""
    w = _QPD_WEIGHTS[kind]
    p, lam, mu, nu = sgad_parameters(NoiseParams(noise.gamma0, noise.T, noise.r,
                                                 noise.phi, noise.omega, t))
    xi = noise.phi
    zterm = (-mu + nu - p * (lam - mu + nu)
             + (-1 + mu + nu + p * (lam - mu - nu)) * np.cos(alpha))
    cterm = ((p * np.sqrt(1 - lam) + (1 - p) * np.sqrt((1 - mu) * (1 - nu)))
             * np.cos(beta + phi)
             + (1 - p) * np.sqrt(mu * nu) * np.cos(beta + xi - phi))
    sgn = {"W": (+1.0, +1.0), "P": (-1.0, +1.0), "Q": (-1.0, +1.0), "F": (+1.0, +1.0)}[kind]
    return (1 / (4 * np.pi)) * (1 + sgn[0] * w * zterm * np.cos(theta)
                                + sgn[1] * w * cterm * np.sin(alpha) * np.sin(theta))


def epr_ad_state(lam):
    """Singlet pair with both qubits amplitude damped by lambda (spin basis)."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = rho[2, 2] = 0.5 * (1 - lam)
    rho[1, 2] = rho[2, 1] = -0.5 * (1 - lam)
    rho[3, 3] = lam
    return rho


def epr_ad_qpd(kind, theta1, phi1, theta2, phi2, lam):
    """Closed-form distributions of the damped singlet."""
    c1, c2 = np.cos(theta1), np.cos(theta2)
    s1, s2 = np.sin(theta1), np.sin(theta2)
    cc = np.cos(phi1 - phi2)
    pref = 1 / (16 * np.pi**2)
    if kind in ("W", "F"):
        return pref * (lam * (1 + 3 * c1 * c2 - math.sqrt(3) * (c1 + c2))
                       + (1 - lam) * (1 - 3 * c1 * c2 - 3 * s1 * s2 * cc))
    if kind == "P":
        return pref * (lam * (1 + 9 * c1 * c2 + 3 * (c1 + c2))
                       + (1 - lam) * (1 - 9 * c1 * c2 - 9 * s1 * s2 * cc))
    if kind == "Q":
        return pref * (lam * (1 + c1 * c2 + (c1 + c2))
                       + (1 - lam) * (1 - c1 * c2 - s1 * s2 * cc))
    raise ValueError(f"unknown kind {kind!r}")


def ghz_ad_state(lam):
    """GHZ state with the first qubit amplitude damped (spin basis)."""
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 0.5 * (1 - lam)
    rho[4, 4] = 0.5 * lam
    rho[7, 7] = 0.5
    rho[0, 7] = rho[7, 0] = 0.5 * math.sqrt(1 - lam)
    return rho


def ghz_ad_qpd(kind, angles, lam):
    """Closed-form distributions of the damped GHZ state."""
    (t1, p1), (t2, p2), (t3, p3) = angles
    c1, c2, c3 = np.cos(t1), np.cos(t2), np.cos(t3)
    s1, s2, s3 = np.sin(t1), np.sin(t2), np.sin(t3)
    cph = np.cos(p1 + p2 + p3)
    root = math.sqrt(3)
    pref = 1 / (64 * np.pi**3)
    if kind in ("W", "F"):
        return pref * (1 - root * lam * c1 + 3 * c2 * c3
                       + 3 * (1 - lam) * c1 * (c2 + c3)
                       - 3 * root * (lam * c1 * c2 * c3
                                     - np.sqrt(1 - lam) * s1 * s2 * s3 * cph))
    if kind == "P":
        # coherence term enters with +27, mirroring the Wigner form
        return pref * (1 + 3 * lam * c1 + 9 * c2 * c3
                       + 9 * (1 - lam) * c1 * (c2 + c3)
                       + 27 * (lam * c1 * c2 * c3
                               + np.sqrt(1 - lam) * s1 * s2 * s3 * cph))
    if kind == "Q":
        return pref * (1 + lam * c1 + c2 * c3
                       + (1 - lam) * c1 * (c2 + c3)
                       + lam * c1 * c2 * c3
                       + np.sqrt(1 - lam) * s1 * s2 * s3 * cph)
    raise ValueError(f"unknown kind {kind!r}")


def w_ad_state(lam):
    """W state with the first qubit amplitude damped (spin basis)."""
    rho = np.zeros((8, 8), dtype=complex)
    rt = math.sqrt(1 - lam)
    third = 1.0 / 3.0
    rho[1, 1] = rho[2, 2] = third * (1 - lam)
    rho[5, 5] = rho[6, 6] = third * lam
    rho[4, 4] = third
    rho[1, 4] = rho[4, 1] = third * rt
    rho[2, 4] = rho[4, 2] = third * rt
    rho[1, 2] = rho[2, 1] = third * (1 - lam)
    rho[5, 6] = rho[6, 5] = third * lam
    return rho


def w_ad_qpd(kind, angles, lam):
    """Closed-form distributions of the damped W state."""
    (t1, p1), (t2, p2), (t3, p3) = angles
    c1, c2, c3 = np.cos(t1), np.cos(t2), np.cos(t3)
    s1, s2, s3 = np.sin(t1), np.sin(t2), np.sin(t3)
    c23 = np.cos(p2 - p3)
    c13 = np.cos(p1 - p3)
    c12 = np.cos(p1 - p2)
    rt = np.sqrt(1 - lam)
    root = math.sqrt(3)
    if kind in ("W", "F"):
        pref = 1 / (64 * np.pi**3)
        return pref * (1 - (c1 * c2 + c2 * c3 + c1 * c3)
                       + (root / 3) * (c1 + c2 + c3)
                       - 3 * root * c1 * c2 * c3
                       + 2 * (1 + root * c1) * s2 * s3 * c23
                       + 2 * rt * ((1 + root * c2) * s1 * s3 * c13
                                   + (1 + root * c3) * s1 * s2 * c12)
                       + 4 * root * lam * c1 * (-1 / 3 + c2 * c3 - s2 * s3 * c23))
    if kind == "P":
        pref = 1 / (64 * np.pi**3)
        return pref * (1 - 3 * (c1 * c2 + c2 * c3 + c1 * c3)
                       - (c1 + c2 + c3)
                       + 27 * c1 * c2 * c3
                       + 6 * (1 - 3 * c1) * s2 * s3 * c23
                       + 6 * rt * ((1 - 3 * c2) * s1 * s3 * c13
                                   + (1 - 3 * c3) * s1 * s2 * c12)
                       + 4 * lam * c1 * (1 - 9 * c2 * c3 + 9 * s2 * s3 * c23))
    if kind == "Q":
        pref = 1 / (192 * np.pi**3)
        sq1 = np.sin(t1 / 2) ** 2
        sq2 = np.sin(t2 / 2) ** 2
        sq3 = np.sin(t3 / 2) ** 2
        return pref * (3 - (c1 * c2 + c2 * c3 + c1 * c3)
                       - (c1 + c2 + c3)
                       + 3 * c1 * c2 * c3
                       + 4 * sq1 * s2 * s3 * c23
                       + 4 * rt * s1 * (sq2 * s3 * c13 + s2 * sq3 * c12)
                       + 4 * lam * c1 * (1 - c2 * c3 + s2 * s3 * c23))
    raise ValueError(f"unknown kind {kind!r}")


def analytic_qpd(scenario, kind, angles, t=0.0, **params):
    """Dispatch to the closed-form scenario distributions.

    scenario in {"qnd-acs", "sgad-acs", "epr-ad", "ghz-ad", "w-ad"}; `angles`
    is (theta, phi) for single-qubit scenarios or a sequence of pairs.
    """
    if scenario == "qnd-acs":
        th, ph = angles
        return qnd_acs_qpd(kind, th, ph, t, **params)
    if scenario == "sgad-acs":
        th, ph = angles
        return sgad_acs_qpd(kind, th, ph, t, **params)
    if scenario == "epr-ad":
        (t1, p1), (t2, p2) = angles
        return epr_ad_qpd(kind, t1, p1, t2, p2, params["lam"])
    if scenario == "ghz-ad":
        return ghz_ad_qpd(kind, angles, params["lam"])
    if scenario == "w-ad":
        return w_ad_qpd(kind, angles, params["lam"])
    raise ValueError(f"unknown scenario {scenario!r}")


def nonclassical_volume(wigner_fn, n_spheres=1, start=None, tol=1e-4, max_n=None):
    """Doubled negative volume delta = integral |W| dOmega - 1.

    `wigner_fn(theta1, phi1[, theta2, phi2, ...])` must broadcast over its
    angle arguments.  The per-sphere resolution doubles until the quadrature
    moves by less than `tol`; evaluation is chunked over the first theta axis
    so large product grids stay within memory.
    """
    if start is None:
        start = {1: 24, 2: 12, 3: 8}.get(n_spheres, 8)
    if max_n is None:
        max_n = {1: 768, 2: 96, 3: 16}.get(n_spheres, 16)
    prev = None
    n = start
    while n <= max_n:
        g = AngleGrid.build(n, 2 * n)
        wtheta = np.polynomial.legendre.leggauss(n)[1][::-1]
        wphi = 2 * np.pi / (2 * n)
        args = []
        for s in range(n_spheres):
            tshape = [1] * (2 * n_spheres)
            tshape[2 * s] = n
            pshape = [1] * (2 * n_spheres)
            pshape[2 * s + 1] = 2 * n
            args.append(g.theta.reshape(tshape))
            args.append(g.phi.reshape(pshape))
        wgt = np.ones((1,) * (2 * n_spheres))
        for s in range(n_spheres):
            tshape = [1] * (2 * n_spheres)
            tshape[2 * s] = n
            wgt = wgt * wtheta.reshape(tshape) * wphi
        chunk = max(1, int(2e6 // max(1, (2 * n) * (n * 2 * n) ** (n_spheres - 1))))
        total = 0.0
        for i0 in range(0, n, chunk):
            sub = list(args)
            sub[0] = args[0][i0:i0 + chunk]
            wsub = np.broadcast_to(wgt, (n,) + wgt.shape[1:])[i0:i0 + chunk]
            vals = np.abs(np.asarray(wigner_fn(*sub)))
            total += float(np.sum(vals * wsub))
        delta = total - 1.0
        if prev is not None and abs(delta - prev) < tol:
            if delta < -1e-6:
                raise ArithmeticError(f"negative volume {delta:.3e} beyond tolerance")
            return max(delta, 0.0)
        prev = delta
        n *= 2
    raise ArithmeticError("nonclassical volume quadrature did not converge "
                          f"below resolution {max_n}")
