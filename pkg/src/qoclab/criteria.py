"""Moments-based nonclassicality witnesses and Zeno parameters.

All closed forms are first order in the nonlinear coupling and are built from
the evolution coefficients plus the coherent input amplitudes, so sweeps stay
cheap.  Some combinations carry no printed closed form (entanglement of the
b2-involving pairs, higher three-mode orders); those fall back on the exact
normal-ordering engine at the same perturbative order.

Sign conventions: a witness below -1e-12 flags nonclassicality; quadrature
variances flag it below 1/4 - 1e-12.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .coupler import (CoherentInputs, CouplerCoefficients, CouplerParams, Geometry,
                      evolved_mode_expansion, symmetric_l_coefficients)
from .moments import FirstOrder, moment_jet

__all__ = [
    "NEG_TOL",
    "Probe",
    "CriterionValue",
    "quadrature_variances",
    "amplitude_powered_squeezing",
    "higher_order_antibunching",
    "intermodal_antibunching",
    "hz_entanglement",
    "duan_criterion",
    "three_mode_entanglement",
    "full_separability_gap",
    "zeno_parameter",
    "second_harmonic_zeno_terms",
]

NEG_TOL = 1e-12


class Probe(Enum):
    NONLINEAR = "nonlinear"
    LINEAR = "linear"


@dataclass(frozen=True)
class CriterionValue:
    name: str
    value: float
    nonclassical: bool

    @classmethod
    def witness(cls, name, value):
        return cls(name, float(value), float(value) < -NEG_TOL)

    @classmethod
    def variance(cls, name, value):
        return cls(name, float(value), float(value) < 0.25 - NEG_TOL)


def _amps(c: CouplerCoefficients, inp: CoherentInputs):
    f1, f2 = c.f[0], c.f[1]
    g1, g2 = c.g[0], c.g[1]
    A = f1 * inp.alpha + f2 * inp.beta
    B = g1 * inp.alpha + g2 * inp.beta
    return A, B


def _combos(c: CouplerCoefficients):
    f1, f2, f3, f4 = c.f[:4]
    g1, g2, g3, g4 = c.g[:4]
    return f1 * f4 + f2 * f3, g1 * g4 + g2 * g3


def quadrature_variances(c, inp, selection):
    """(var X, var Y) of a single mode or a compound pair.

    selection in {"a", "b1", "b2", "ab1", "ab2", "b1b2"}.  The b2 mode keeps
    the coherent value 1/4 at this order; compound quadratures involving b2
    are tied to the single-mode ones by var X_{jb2} = var X_j / 2 + 1/8.
    """
    ca, cb = _combos(c)
    g = inp.gamma
    if selection == "a":
        t = 2 * np.real(ca * g)
        return 0.25 * (1 + t), 0.25 * (1 - t)
    if selection == "b1":
        t = 2 * np.real(cb * g)
        return 0.25 * (1 + t), 0.25 * (1 - t)
    if selection == "b2":
        return 0.25, 0.25
    if selection == "ab1":
        f1, f2, f3, f4 = c.f[:4]
        g1, g2, g3, g4 = c.g[:4]
        t = np.real(((f1 + g1) * (f4 + g4) + (f2 + g2) * (f3 + g3)) * g)
        return 0.25 * (1 + t), 0.25 * (1 - t)
    if selection == "ab2":
        vx, vy = quadrature_variances(c, inp, "a")
        return vx / 2 + 0.125, vy / 2 + 0.125
    if selection == "b1b2":
        vx, vy = quadrature_variances(c, inp, "b1")
        return vx / 2 + 0.125, vy / 2 + 0.125
    raise ValueError(f"unknown quadrature selection {selection!r}")


def amplitude_powered_squeezing(c, inp, mode, n=2):
    """(A1, A2) for the n-th amplitude power; A1 = -A2, b2 gives (0, 0)."""
    if n < 2:
        raise ValueError("amplitude powered squeezing needs n >= 2")
    if mode == "b2":
        return 0.0, 0.0
    A, B = _amps(c, inp)
    ca, cb = _combos(c)
    X, combo = (A, ca) if mode == "a" else (B, cb)
    if mode not in ("a", "b1"):
        raise ValueError(f"unknown mode {mode!r}")
    a1 = (n**2 / 4) * 2 * np.real(inp.gamma * combo * X ** (2 * n - 2))
    return a1, -a1


def higher_order_antibunching(c, inp, mode, n=2):
    """D_mode(n) = <adag^n a^n> - <N>^n at first order; identically 0 for b2."""
    if n < 2:
        raise ValueError("antibunching order must be >= 2")
    if mode == "b2":
        return 0.0
    A, B = _amps(c, inp)
    ca, cb = _combos(c)
    X, combo = (A, ca) if mode == "a" else (B, cb)
    if mode not in ("a", "b1"):
        raise ValueError(f"unknown mode {mode!r}")
    return comb(n, 2) * abs(X) ** (2 * n - 4) * 2 * np.real(np.conj(X) ** 2 * combo * inp.gamma)


def intermodal_antibunching(c, inp, pair):
    """D_pair = <N_i N_j> - <N_i><N_j>; closed form for ab1, 0 for pairs with b2."""
    if pair in ("ab2", "b1b2"):
        return 0.0
    if pair != "ab1":
        raise ValueError(f"unknown pair {pair!r}")
    f1, f2, f3, f4 = c.f[:4]
    g1, g2, g3, g4 = c.g[:4]
    al, be, ga = inp.alpha, inp.beta, inp.gamma
    # The ab1b2-weighted term carries conj(f4) f2 - conj(f3) f1, mirroring the
    # HZ-I closed form; the combination is fixed by the moment oracle.
    t = (abs(g1) ** 2 * np.conj(f1) * f4 + np.conj(f1) * f3 * np.conj(g1) * g2) * np.conj(al) ** 2 * ga \
        + (abs(g2) ** 2 * np.conj(f2) * f3 + np.conj(f2) * f4 * np.conj(g2) * g1) * np.conj(be) ** 2 * ga \
        + (abs(g1) ** 2 - abs(g2) ** 2) * (np.conj(f4) * f2 - np.conj(f3) * f1) * al * be * np.conj(ga)
    return 2 * np.real(t)


def _hz11_ab1(c, inp):
    f1, f2, f3, f4 = c.f[:4]
    g1, g2, g3, g4 = c.g[:4]
    al, be, ga = inp.alpha, inp.beta, inp.gamma
    e = (abs(g1) ** 2 * np.conj(f4) * f1 + np.conj(f3) * f1 * np.conj(g2) * g1) * al**2 * np.conj(ga) \
        + (abs(f1) ** 2 * np.conj(g1) * g4 + np.conj(f1) * f2 * np.conj(g1) * g3) * np.conj(al) ** 2 * ga \
        + (abs(g2) ** 2 * np.conj(f3) * f2 + np.conj(f4) * f2 * np.conj(g1) * g2) * be**2 * np.conj(ga) \
        + (abs(f2) ** 2 * np.conj(g2) * g3 + np.conj(f2) * f1 * np.conj(g2) * g4) * np.conj(be) ** 2 * ga \
        + (abs(g1) ** 2 - abs(g2) ** 2) * (
            (np.conj(f4) * f2 - np.conj(f3) * f1) * al * be * np.conj(ga)
            - (np.conj(g2) * g4 - np.conj(g1) * g3) * np.conj(al) * np.conj(be) * ga)
    return np.real(e)


def _mode_names(c):
    if c.geometry in (Geometry.CODIRECTIONAL, Geometry.CONTRADIRECTIONAL):
        return {"a": "a", "b1": "b1", "b2": "b2"}
    return {"a1": "a1", "b1": "b1", "a2": "a2", "b2": "b2"}


def _engine_hz(c, inp, mode_i, mode_j, m, n):
    """HZ-I and HZ-II of an arbitrary pair via the jet engine (first order)."""
    amps = {"a": inp.alpha, "b1": inp.beta, "b2": inp.gamma}
    ei = evolved_mode_expansion(c, mode_i)
    ej = evolved_mode_expansion(c, mode_j)
    eid, ejd = ei.dagger(), ej.dagger()
    nm = moment_jet([eid] * m + [ejd] * n + [ei] * m + [ej] * n, amps)
    cross = moment_jet([ei] * m + [ejd] * n, amps)
    ni = moment_jet([eid] * m + [ei] * m, amps)
    nj = moment_jet([ejd] * n + [ej] * n, amps)
    both = moment_jet([ei] * m + [ej] * n, amps)
    e = nm - cross * cross.conj()
    ep = ni * nj - both * both.conj()
    return e.value.real, ep.value.real


def hz_entanglement(c, inp, pair="ab1", m=1, n=1):
    """(E^{m,n}, E'^{m,n}) of the pair; closed form for ab1, engine otherwise."""
    if m < 1 or n < 1:
        raise ValueError("HZ orders must be >= 1")
    if pair == "ab1":
        A, B = _amps(c, inp)
        e11 = _hz11_ab1(c, inp)
        e = m * n * abs(A) ** (2 * m - 2) * abs(B) ** (2 * n - 2) * e11
        return e, -e
    pairs = {"ab2": ("a", "b2"), "b1b2": ("b1", "b2")}
    if pair not in pairs:
        raise ValueError(f"unknown pair {pair!r}")
    return _engine_hz(c, inp, *pairs[pair], m, n)


def duan_criterion(c, inp, pair="ab1"):
    """Duan collective-quadrature witness; vanishes at this order for all pairs."""
    if pair not in ("ab1", "ab2", "b1b2"):
        raise ValueError(f"unknown pair {pair!r}")
    return 0.0


def three_mode_entanglement(c, inp, partition="a|b1b2", m=1, n=1, l=1):
    """(E, E') for a bipartition of (a, b1, b2); closed relations at (1,1,1)."""
    if (m, n, l) == (1, 1, 1):
        e11 = _hz11_ab1(c, inp)
        g2 = abs(inp.gamma) ** 2
        if partition in ("a|b1b2", "ab2|b1"):
            return g2 * e11, -g2 * e11
        if partition == "ab1|b2":
            return 0.0, 0.0
        raise ValueError(f"unknown partition {partition!r}")
    return _engine_three_mode(c, inp, partition, m, n, l)


def full_separability_gap(c, inp):
    """<N_a><N_b1><N_b2> - |<a b1 b2>|^2 = -|gamma|^2 E^{1,1}_{ab1} at first order."""
    return -abs(inp.gamma) ** 2 * _hz11_ab1(c, inp)


def _engine_three_mode(c, inp, partition, m, n, l):
    amps = {"a": inp.alpha, "b1": inp.beta, "b2": inp.gamma}
    ea = evolved_mode_expansion(c, "a")
    eb1 = evolved_mode_expansion(c, "b1")
    eb2 = evolved_mode_expansion(c, "b2")
    groups = {
        "a|b1b2": ((ea, m), (eb1, n), (eb2, l), ("a",)),
        "ab2|b1": ((ea, m), (eb1, n), (eb2, l), ("a", "b2")),
        "ab1|b2": ((ea, m), (eb1, n), (eb2, l), ("a", "b1")),
    }
    if partition not in groups:
        raise ValueError(f"unknown partition {partition!r}")
    (xa, xm), (xb, xn), (xc, xl), first_group = groups[partition]
    full = moment_jet([xa.dagger()] * xm + [xb.dagger()] * xn + [xc.dagger()] * xl
                      + [xa] * xm + [xb] * xn + [xc] * xl, amps)
    # E: <...> - |<a^m b1^n (b2^dag)^l ... >|^2 with daggers on the second group
    ops = {"a": (ea, m), "b1": (eb1, n), "b2": (eb2, l)}
    cross_factors = []
    for name in ("a", "b1", "b2"):
        ex, p = ops[name]
        cross_factors.extend([ex if name in first_group else ex.dagger()] * p)
    cross = moment_jet(cross_factors, amps)
    e = (full - cross * cross.conj()).value.real
    grp1 = moment_jet(
        sum(([ops[nm][0].dagger()] * ops[nm][1] for nm in first_group), [])
        + sum(([ops[nm][0]] * ops[nm][1] for nm in first_group), []), amps)
    rest = tuple(nm for nm in ("a", "b1", "b2") if nm not in first_group)
    grp2 = moment_jet(
        sum(([ops[nm][0].dagger()] * ops[nm][1] for nm in rest), [])
        + sum(([ops[nm][0]] * ops[nm][1] for nm in rest), []), amps)
    allmodes = moment_jet([ea] * m + [eb1] * n + [eb2] * l, amps)
    eprime = (grp1 * grp2 - allmodes * allmodes.conj()).value.real
    return e, eprime


def second_harmonic_zeno_terms(p: CouplerParams, z):
    """l coefficients plus their probe-free (k = 0) counterparts p2, p5, p6."""
    c = symmetric_l_coefficients(p, z)
    dkb = p.delta_k_b
    Gb = complex(p.gamma_b)
    gmc = 1 - np.exp(1j * dkb * np.asarray(z, dtype=float))
    p2 = -Gb * gmc / dkb
    p5 = -4 * abs(Gb) ** 2 * (gmc + 1j * dkb * np.asarray(z, dtype=float)) / dkb**2
    p6 = p5 / 2
    return c, (p2, p5, p6)


def zeno_parameter(p: CouplerParams, inp: CoherentInputs, z, probe=Probe.NONLINEAR):
    """Change in the system second-harmonic photon number due to the probe.

    Negative values mark suppression of second-harmonic generation by the
    continuously coupled probe (Zeno side), positive values enhancement
    (anti-Zeno side).  A linear probe is the gamma_a = 0 special case.
    """
    if p.geometry is not Geometry.SYMMETRIC:
        raise ValueError("Zeno parameters are defined for the symmetric coupler")
    if np.ndim(z) == 0 and float(z) == 0.0:
        return 0.0  # boundary condition l_i(0) = delta_i1 makes this exact
    if probe is Probe.LINEAR and p.gamma_a != 0:
        p = CouplerParams(k=p.k, gamma_b=p.gamma_b, delta_k_b=p.delta_k_b,
                          gamma_a=0.0, delta_k_a=p.delta_k_a, geometry=Geometry.SYMMETRIC)
    c, (p2, p5, p6) = second_harmonic_zeno_terms(p, z)
    (l1, l2, l3, l4, l5, l6, l7, l8, l9, l10, l11, l12, l13, l14) = c.h_or_l
    al, be, ga, de = inp.alpha, inp.beta, inp.gamma, inp.delta
    dn = (abs(l2) ** 2 - abs(p2) ** 2) * abs(be) ** 4 \
        + abs(l3) ** 2 * abs(al) ** 2 * abs(be) ** 2 \
        + abs(l4) ** 2 * abs(al) ** 4
    cross = (l2 - p2) * be**2 * np.conj(de) + l3 * al * be * np.conj(de) + l4 * al**2 * np.conj(de) \
        + np.conj(l2) * l3 * abs(be) ** 2 * al * np.conj(be) \
        + np.conj(l2) * l4 * al**2 * np.conj(be) ** 2 \
        + np.conj(l3) * l4 * abs(al) ** 2 * al * np.conj(be) \
        + (l5 - p5) * abs(be) ** 2 * abs(de) ** 2 \
        + (l6 - p6) * abs(de) ** 2 \
        + l7 * abs(de) ** 2 * al * np.conj(be) \
        + l8 * abs(de) ** 2 * np.conj(al) * be \
        + l9 * abs(al) ** 2 * abs(de) ** 2 \
        + l10 * np.conj(al) * be * ga * np.conj(de) \
        + l11 * abs(al) ** 2 * ga * np.conj(de) \
        + l12 * ga * np.conj(de) \
        + l13 * abs(be) ** 2 * ga * np.conj(de) \
        + l14 * al * np.conj(be) * ga * np.conj(de)
    return float(np.real(dn + cross + np.conj(cross)))
