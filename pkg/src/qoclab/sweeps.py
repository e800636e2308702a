"""Deterministic parameter sweeps over the package's operations.

A sweep names a target operation, fixes some parameters, and grids up to two
axes.  Rows are evaluated (optionally by a thread pool) and always assembled
in grid order, so identical specs produce byte-identical tables.  Floats are
printed with 12 significant digits in scientific notation.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import channels as ch
from . import coupler as cp
from . import criteria as cr
from . import qcrypto as qc
from . import spinqpd as sq
from . import tomography as tg

__all__ = ["SweepSpec", "TARGETS", "run_sweep", "format_table", "PRESETS", "preset_spec"]


@dataclass(frozen=True)
class SweepSpec:
    target: str
    fixed: dict = field(default_factory=dict)
    axes: tuple = ()  # ((name, start, stop, steps), ...) up to 2

    def __post_init__(self):
        if self.target not in TARGETS:
            raise KeyError(f"unknown sweep target {self.target!r}")
        if len(self.axes) > 2:
            raise ValueError("at most two swept axes are supported")
        for name, start, stop, steps in self.axes:
            if steps < 2:
                raise ValueError(f"axis {name!r} needs at least 2 steps")


def _cparams(p, geometry):
    return cp.CouplerParams(
        k=complex(p.get("k", 0.1)),
        gamma_b=complex(p.get("gamma_b", 1e-3)),
        delta_k_b=float(p.get("delta_k_b", 1e-4)),
        gamma_a=complex(p.get("gamma_a", 0.0)),
        delta_k_a=float(p.get("delta_k_a", 0.0)),
        geometry=geometry,
    )


def _inputs(p):
    return cp.CoherentInputs(complex(p.get("alpha", 1.0)), complex(p.get("beta", 0.5)),
                             complex(p.get("gamma", 0.0)), complex(p.get("delta", 0.0)))


def _geometry(p):
    g = str(p.get("geometry", "contradirectional")).lower()
    return {"codirectional": cp.Geometry.CODIRECTIONAL,
            "contradirectional": cp.Geometry.CONTRADIRECTIONAL,
            "symmetric": cp.Geometry.SYMMETRIC}[g]


def _coeffs(p):
    geom = _geometry(p)
    z = float(p.get("z", 1.0))
    if geom is cp.Geometry.CODIRECTIONAL:
        return cp.codir_coefficients(_cparams(p, geom), z)
    if geom is cp.Geometry.CONTRADIRECTIONAL:
        return cp.contradir_coefficients(_cparams(p, geom), z)
    return cp.symmetric_l_coefficients(_cparams(p, geom), z)


def _row_coupler_coefficients(p):
    c = _coeffs(p)
    out = {}
    for label, vals in (("f", c.f), ("g", c.g), ("hl", c.h_or_l)):
        for i, v in enumerate(vals, start=1):
            out[f"{label}{i}_re"] = float(np.real(v))
            out[f"{label}{i}_im"] = float(np.imag(v))
    return out


def _row_quadrature(p):
    c = _coeffs(p)
    inp = _inputs(p)
    sel = str(p.get("selection", "a"))
    vx, vy = cr.quadrature_variances(c, inp, sel)
    return {"var_x": vx, "var_y": vy}


def _row_amplitude_powered(p):
    c = _coeffs(p)
    inp = _inputs(p)
    a1, a2 = cr.amplitude_powered_squeezing(c, inp, str(p.get("mode", "a")),
                                            int(p.get("n", 2)))
    return {"A1": a1, "A2": a2}


def _row_hoa(p):
    c = _coeffs(p)
    inp = _inputs(p)
    return {"D": cr.higher_order_antibunching(c, inp, str(p.get("mode", "a")),
                                              int(p.get("n", 2)))}


def _row_intermodal(p):
    c = _coeffs(p)
    inp = _inputs(p)
    return {"D_pair": cr.intermodal_antibunching(c, inp, str(p.get("pair", "ab1")))}


def _row_hz(p):
    c = _coeffs(p)
    inp = _inputs(p)
    e, ep = cr.hz_entanglement(c, inp, str(p.get("pair", "ab1")),
                               int(p.get("m", 1)), int(p.get("n", 1)))
    return {"E": e, "E_prime": ep}


def _row_three_mode(p):
    c = _coeffs(p)
    inp = _inputs(p)
    e, ep = cr.three_mode_entanglement(c, inp, str(p.get("partition", "a|b1b2")))
    return {"E": e, "E_prime": ep, "full_sep_gap": cr.full_separability_gap(c, inp)}


def _row_duan(p):
    c = _coeffs(p)
    inp = _inputs(p)
    return {"d_pair": cr.duan_criterion(c, inp, str(p.get("pair", "ab1")))}


def _row_zeno(p):
    par = _cparams({**p, "geometry": "symmetric"}, cp.Geometry.SYMMETRIC)
    inp = _inputs(p)
    z = float(p.get("z", 1.0))
    return {
        "dn_nonlinear": cr.zeno_parameter(par, inp, z, cr.Probe.NONLINEAR),
        "dn_linear": cr.zeno_parameter(par, inp, z, cr.Probe.LINEAR),
    }


def _noise(p):
    return ch.NoiseParams(gamma0=float(p.get("gamma0", 0.05)), T=float(p.get("T", 0.0)),
                          r=float(p.get("r", 0.0)), phi=float(p.get("phi", 0.0)),
                          omega=float(p.get("omega", 1.0)), t=float(p.get("t", 0.0)))


def _row_qpd_qnd(p):
    t = float(p.get("t", 0.0))
    gval = ch.ohmic_dephasing_gamma(t, float(p.get("gamma0", 0.1)),
                                    float(p.get("omega_c", 100.0)), float(p.get("T", 1.0)),
                                    float(p.get("r", 0.0)), float(p.get("a", 0.0)))
    args = (float(p.get("theta", np.pi / 3)), float(p.get("phi", np.pi / 4)), t,
            float(p.get("alpha", np.pi / 2)), float(p.get("beta", np.pi / 3)),
            float(p.get("omega", 1.0)), gval)
    return {k: sq.qnd_acs_qpd(k, *args) for k in ("W", "P", "Q")}


def _row_qpd_sgad(p):
    noise = _noise(p)
    args = (float(p.get("theta", np.pi / 2)), float(p.get("phi", np.pi / 3)),
            noise.t, float(p.get("alpha", np.pi / 2)), float(p.get("beta", np.pi / 3)), noise)
    return {k: sq.sgad_acs_qpd(k, *args) for k in ("W", "P", "Q")}


def _lam_from(p):
    if "lam" in p:
        return float(p["lam"])
    return 1.0 - float(np.exp(-float(p.get("gamma0", 0.1)) * float(p.get("t", 0.0))))


def _row_qpd_epr(p):
    lam = _lam_from(p)
    args = (float(p.get("theta1", np.pi / 2)), float(p.get("phi1", np.pi / 4)),
            float(p.get("theta2", np.pi / 2)), float(p.get("phi2", np.pi / 3)), lam)
    return {k: sq.epr_ad_qpd(k, *args) for k in ("W", "P", "Q")}


def _row_qpd_ghz(p):
    lam = _lam_from(p)
    angles = [(float(p.get("theta1", np.pi / 2)), float(p.get("phi1", np.pi / 4))),
              (float(p.get("theta2", np.pi / 2)), float(p.get("phi2", np.pi / 3))),
              (float(p.get("theta3", np.pi / 2)), float(p.get("phi3", np.pi / 6)))]
    return {k: sq.ghz_ad_qpd(k, angles, lam) for k in ("W", "P", "Q")}


def _row_qpd_w(p):
    lam = _lam_from(p)
    angles = [(float(p.get("theta1", np.pi / 4)), float(p.get("phi1", np.pi / 8))),
              (float(p.get("theta2", np.pi / 6)), float(p.get("phi2", np.pi / 4))),
              (float(p.get("theta3", np.pi / 3)), float(p.get("phi3", np.pi / 6)))]
    return {k: sq.w_ad_qpd(k, angles, lam) for k in ("W", "P", "Q")}


def _vacuum_rho(p):
    G = float(p.get("Gamma", 0.05))
    g12, o12 = ch.collective_rates(G, float(p.get("k0", 1.0)), float(p.get("r12", 0.05)),
                                   float(p.get("mu_dot_r", 0.0)))
    rho0 = np.zeros((4, 4), dtype=complex)
    rho0[1, 1] = rho0[2, 2] = 0.5
    rho0[1, 2] = rho0[2, 1] = 0.5
    return ch.vacuum_bath_propagate(rho0, float(p.get("t", 0.0)), G, g12, o12,
                                    omega0=float(p.get("omega0", 1.0)))


def _row_qpd_vacuum(p):
    rho_d = _vacuum_rho(p)
    B = ch.dressed_basis_matrix()
    rho = B @ rho_d @ B.conj().T
    angles = [(float(p.get("theta1", np.pi / 8)), float(p.get("phi1", np.pi / 4))),
              (float(p.get("theta2", np.pi / 3)), float(p.get("phi2", np.pi / 4)))]
    return {k: sq.qpd(rho, 0.5, k, angles) for k in ("W", "P", "Q")}


def _row_volume_qnd(p):
    t = float(p.get("t", 0.0))
    gval = ch.ohmic_dephasing_gamma(t, float(p.get("gamma0", 0.1)),
                                    float(p.get("omega_c", 100.0)), float(p.get("T", 0.0)),
                                    float(p.get("r", 0.0)), float(p.get("a", 0.0)))
    al, be = float(p.get("alpha", np.pi / 2)), float(p.get("beta", np.pi / 3))
    vol = sq.nonclassical_volume(
        lambda th, ph: sq.qnd_acs_qpd("W", th, ph, t, al, be, float(p.get("omega", 1.0)), gval))
    return {"volume": vol}


def _row_tomogram_qnd(p):
    t = float(p.get("t", 0.0))
    gval = ch.ohmic_dephasing_gamma(t, float(p.get("gamma0", 0.1)),
                                    float(p.get("omega_c", 100.0)), float(p.get("T", 0.0)),
                                    float(p.get("r", 0.0)), float(p.get("a", 0.0)))
    args = (float(p.get("beta_t", np.pi / 3)), float(p.get("gamma_t", np.pi / 4)), t,
            float(p.get("alpha", np.pi / 2)), float(p.get("beta", np.pi / 3)),
            float(p.get("omega", 1.0)), gval)
    return {"w1": tg.qnd_tomogram_component(0.5, *args),
            "w2": tg.qnd_tomogram_component(-0.5, *args)}


def _row_tomogram_sgad(p):
    noise = _noise(p)
    args = (float(p.get("beta_t", np.pi / 3)), float(p.get("gamma_t", np.pi / 4)),
            noise.t, float(p.get("alpha", np.pi / 2)), float(p.get("beta", np.pi / 3)), noise)
    return {"w1": tg.sgad_tomogram_component(0.5, *args),
            "w2": tg.sgad_tomogram_component(-0.5, *args)}


def _row_tomogram_vacuum(p):
    rho_d = _vacuum_rho(p)
    tom = tg.vacuum_bath_tomogram(
        rho_d,
        (0.0, float(p.get("beta1", np.pi / 3)), float(p.get("gamma1", np.pi / 3))),
        (0.0, float(p.get("beta2", np.pi / 4)), float(p.get("gamma2", np.pi / 4))))
    return {f"w{i + 1}": tom[i] for i in range(4)}


def _row_tomogram_optical(p):
    val = tg.optical_tomogram(float(p.get("X", 0.0)), float(p.get("theta", 0.0)),
                              float(p.get("t", 0.0)), complex(p.get("beta", 2.0)),
                              float(p.get("n_th", 5.0)), float(p.get("r", 1.0)),
                              float(p.get("k", 1.0)))
    return {"omega": float(val)}


def _row_nm_params(p):
    q = ch.NMParams(float(p.get("gamma", 1.0)), float(p.get("Gamma", 0.1)))
    t = float(p.get("t", 0.0))
    return {"p_damping": ch.nm_damping_p(q, t), "p_dephasing": ch.nm_dephasing_p(q, t)}


def _row_depolarizing(p):
    t = float(p.get("t", 0.0))
    qs = [ch.NMParams(float(p.get(f"gamma{i}", 0.2)), float(p.get(f"Gamma{i}", 1.0)))
          for i in (1, 2, 3)]
    w, om = ch.nm_depolarizing(qs, t, markovian=bool(p.get("markovian", False)))
    out = {f"P{i + 1}": w[i] for i in range(4)}
    out.update({f"Omega{i + 1}": om[i] for i in range(3)})
    return out


def _row_sgad_params(p):
    noise = _noise(p)
    pp, lam, mu, nu = ch.sgad_parameters(noise)
    return {"p": pp, "lam": lam, "mu": mu, "nu": nu}


def _row_vacuum_elements(p):
    rho = _vacuum_rho(p)
    return {"rho_ee": float(rho[0, 0].real), "rho_ss": float(rho[1, 1].real),
            "rho_aa": float(rho[2, 2].real), "rho_gg": float(rho[3, 3].real),
            "rho_sa_re": float(rho[1, 2].real), "rho_sa_im": float(rho[1, 2].imag)}


_PROTO_LEG_COUNTS = {"CQD": 4, "CDSQC": 3, "QD": 2, "QSDC": 2, "DSQC": 2,
                     "QKA": 2, "BBM": 1, "BB84": 1}


def _row_protocol_fidelity(p):
    proto = qc.Protocol(str(p.get("protocol", "CQD")))
    fam = qc.ChannelFamily(str(p.get("channel", "nm-dephasing")))
    bell = str(p.get("bell", "psi+"))
    n = _PROTO_LEG_COUNTS[proto.value]
    t = float(p.get("t", 0.0))
    if fam is qc.ChannelFamily.NM_DEPOLARIZING:
        qs = [ch.NMParams(float(p.get(f"gamma{i}", 0.2)), float(p.get(f"Gamma{i}", 1.0)))
              for i in (1, 2, 3)]
        _, legs = ch.nm_depolarizing(qs, t)
    elif fam in (qc.ChannelFamily.NM_DAMPING, qc.ChannelFamily.NM_DEPHASING):
        q = ch.NMParams(float(p.get("gamma", 1.0)), float(p.get("Gamma", 0.1)))
        pv = ch.nm_damping_p(q, t) if fam is qc.ChannelFamily.NM_DAMPING \
            else ch.nm_dephasing_p(q, t)
        legs = (pv,) * n
    else:
        legs = (float(p.get("eta", 0.0)),) * n
    s = qc.FidelityScenario(proto, fam, tuple(legs), bell)
    out = {"F_pipeline": qc.pipeline_fidelity(s)}
    try:
        fa = qc.analytic_fidelity(s)
        out["F_analytic"] = fa
        if fam is qc.ChannelFamily.NM_DEPOLARIZING:
            out["F_analytic_normalized"] = fa / 2.0
    except NotImplementedError:
        pass
    return out


def _row_markov_cqd(p):
    eta = float(p.get("eta", 0.0))
    bell = str(p.get("bell", "phi+"))
    chan = str(p.get("chan", "AD"))
    c1 = str(p.get("first_class", "ALL"))
    c2 = str(p.get("second_class", "ALL"))
    return {"F_table": qc.cqd_markov_table_fidelity(bell, c1, c2, chan, eta),
            "F_pipeline": qc.cqd_markov_pipeline_fidelity(bell, c1, c2, chan, eta)}


def _row_bcst(p):
    chan = str(p.get("chan", "AD"))
    t1 = float(p.get("theta1", np.pi / 4))
    t2 = float(p.get("theta2", np.pi / 6))
    eta = float(p.get("eta", 0.0))
    return {"F_closed": qc.bcst_fidelity(chan, t1, t2, eta),
            "F_pipeline": qc.bcst_pipeline_fidelity(chan, t1, t2, eta,
                                                    float(p.get("phi1", 0.0)),
                                                    float(p.get("phi2", 0.0)))}


def _row_channel_count(p):
    return {"N_s": float(qc.channel_count(int(p.get("p", 2)), int(p.get("n", 2))))}


TARGETS = {
    "coupler.coefficients": _row_coupler_coefficients,
    "criteria.quadrature": _row_quadrature,
    "criteria.amplitude-powered": _row_amplitude_powered,
    "criteria.hoa": _row_hoa,
    "criteria.intermodal-antibunching": _row_intermodal,
    "criteria.hz": _row_hz,
    "criteria.three-mode": _row_three_mode,
    "criteria.duan": _row_duan,
    "zeno.parameter": _row_zeno,
    "qpd.qnd-acs": _row_qpd_qnd,
    "qpd.sgad-acs": _row_qpd_sgad,
    "qpd.epr-ad": _row_qpd_epr,
    "qpd.ghz-ad": _row_qpd_ghz,
    "qpd.w-ad": _row_qpd_w,
    "qpd.vacuum-2qubit": _row_qpd_vacuum,
    "qpd.volume-qnd": _row_volume_qnd,
    "tomogram.qnd": _row_tomogram_qnd,
    "tomogram.sgad": _row_tomogram_sgad,
    "tomogram.vacuum-2qubit": _row_tomogram_vacuum,
    "tomogram.optical": _row_tomogram_optical,
    "channels.nm-p": _row_nm_params,
    "channels.depolarizing": _row_depolarizing,
    "channels.sgad-params": _row_sgad_params,
    "channels.vacuum-elements": _row_vacuum_elements,
    "crypto.protocol-fidelity": _row_protocol_fidelity,
    "crypto.markov-cqd": _row_markov_cqd,
    "crypto.bcst": _row_bcst,
    "crypto.channel-count": _row_channel_count,
}


def run_sweep(spec: SweepSpec, threads=1):
    """Evaluate the sweep; returns (columns, rows) in deterministic grid order."""
    fn = TARGETS[spec.target]
    grids = [np.linspace(start, stop, int(steps)) for _, start, stop, steps in spec.axes]
    names = [name for name, *_ in spec.axes]
    points = [()]
    for g in grids:
        points = [pt + (v,) for pt in points for v in g]

    def evaluate(pt):
        params = dict(spec.fixed)
        params.update(dict(zip(names, pt)))
        try:
            row = fn(params)
        except Exception as exc:
            raise RuntimeError(
                f"sweep row {dict(zip(names, pt))} of {spec.target} failed: {exc}") from exc
        return row

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(evaluate, points))
    else:
        rows = [evaluate(pt) for pt in points]
    columns = names + list(rows[0].keys()) if rows else names
    table = [list(pt) + [row[k] for k in rows[0].keys()] for pt, row in zip(points, rows)]
    return columns, table


def _fmt(x):
    return f"{float(x):.11e}"


def format_table(columns, rows, fmt="csv", meta=None):
    """Render the table with fixed 12-significant-digit float formatting."""
    if fmt == "csv":
        lines = [",".join(columns)]
        lines.extend(",".join(_fmt(v) for v in row) for row in rows)
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "meta": meta or {},
            "columns": list(columns),
            "rows": [[_fmt(v) for v in row] for row in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _contra_fixed(alpha, beta, gamma):
    return {"geometry": "contradirectional", "k": 0.1, "gamma_b": 1e-3,
            "delta_k_b": 1e-4, "alpha": alpha, "beta": beta, "gamma": gamma}


_GL_AXIS = ("z", 0.1, 100.0, 200)  # Gamma L from 1e-4 to 0.1 at Gamma = 1e-3

PRESETS = {
    # contradirectional coupler nonclassicality families
    "fig2-2": SweepSpec("criteria.quadrature", {**_contra_fixed(5, 2, 1), "selection": "b1"},
                        (_GL_AXIS,)),
    "fig2-3": SweepSpec("criteria.amplitude-powered", {**_contra_fixed(3, 2, 1),
                                                       "mode": "a", "n": 2}, (_GL_AXIS,)),
    "fig2-4": SweepSpec("criteria.hoa", {**_contra_fixed(3, 2, 1), "mode": "a", "n": 2},
                        (_GL_AXIS,)),
    "fig2-5": SweepSpec("criteria.hoa", {**_contra_fixed(5, 2, 1), "mode": "a", "n": 3},
                        (_GL_AXIS,)),
    "fig2-6": SweepSpec("criteria.hz", {**_contra_fixed(5, 2, 1), "pair": "ab1",
                                        "m": 1, "n": 1}, (_GL_AXIS,)),
    "fig2-7": SweepSpec("criteria.hz", {**_contra_fixed(5, 2, 1), "pair": "ab1",
                                        "m": 2, "n": 1}, (_GL_AXIS,)),
    # Zeno families (k = 1 so the axis is k z; couplings relative to k)
    "fig3-2": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 1e-2, "delta_k_b": 1e-3,
                                           "gamma_a": 0.0, "delta_k_a": 1.1e-3,
                                           "alpha": 5, "beta": 3, "gamma": 0, "delta": 1},
                        (("z", 0.0, 2.0, 101),)),
    "fig3-3": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 1e-2, "delta_k_b": 1e-3,
                                           "gamma_a": 1e-2, "delta_k_a": 1.1e-3,
                                           "alpha": 5, "beta": 3, "gamma": 2, "delta": 1},
                        (("z", 0.0, 2.0, 101),)),
    "fig3-4": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 5e-2, "delta_k_b": 1e-3,
                                           "gamma_a": 0.0, "delta_k_a": 1.1e-3,
                                           "alpha": 5, "beta": 3, "gamma": 0, "delta": 1},
                        (("z", 0.0, 2.0, 101),)),
    "fig3-5": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 1e-2, "delta_k_b": 1e-3,
                                           "gamma_a": 5e-2, "delta_k_a": 1.1e-3,
                                           "alpha": 5, "beta": 3, "gamma": 2, "delta": 1},
                        (("z", 0.0, 2.0, 101),)),
    "fig3-6": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 1e-2, "delta_k_b": 1e-1,
                                           "gamma_a": 0.0, "delta_k_a": 1.1e-3,
                                           "alpha": 6, "beta": 4, "gamma": 0, "delta": 1},
                        (("z", 0.0, 2.0, 101),)),
    "fig3-7": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 1e-2, "delta_k_b": 1e-3,
                                           "gamma_a": 1e-2, "delta_k_a": 1.1e-1,
                                           "alpha": 6, "beta": 4, "gamma": 2, "delta": 1},
                        (("z", 0.0, 2.0, 101),)),
    "fig3-8": SweepSpec("zeno.parameter", {"k": 1.0, "gamma_b": 1e-2, "delta_k_b": 1e-3,
                                           "gamma_a": 0.0, "delta_k_a": 1.1e-3,
                                           "gamma": 0, "delta": 0, "z": 1.0,
                                           "beta": 3},
                        (("alpha", 0.5, 10.0, 39),)),
    # spin QPD families
    "fig5-1": SweepSpec("qpd.qnd-acs", {"gamma0": 0.1, "omega_c": 100.0, "T": 1.0,
                                        "alpha": np.pi / 2, "beta": np.pi / 3,
                                        "theta": np.pi / 3, "phi": np.pi / 4},
                        (("t", 0.0, 10.0, 51),)),
    "fig5-2": SweepSpec("qpd.sgad-acs", {"gamma0": 0.05, "T": 3.0, "r": 1.0, "phi": 0.0,
                                         "alpha": np.pi / 2, "beta": np.pi / 3,
                                         "theta": np.pi / 2},
                        (("t", 0.01, 10.0, 51),)),
    "fig5-3": SweepSpec("qpd.vacuum-2qubit", {"Gamma": 0.05, "r12": 0.05,
                                              "theta1": np.pi / 8, "theta2": np.pi / 3,
                                              "phi1": np.pi / 4, "phi2": np.pi / 4},
                        (("t", 0.0, 10.0, 51),)),
    "fig5-4": SweepSpec("qpd.vacuum-2qubit", {"Gamma": 0.05, "t": 1.0,
                                              "theta1": np.pi / 8, "theta2": np.pi / 3,
                                              "phi1": np.pi / 4, "phi2": np.pi / 4},
                        (("r12", 0.05, 3.0, 60),)),
    "fig5-5": SweepSpec("qpd.epr-ad", {"gamma0": 0.1, "theta1": np.pi / 2,
                                       "theta2": np.pi / 2, "phi1": np.pi / 4,
                                       "phi2": np.pi / 3},
                        (("t", 0.0, 10.0, 51),)),
    "fig5-6": SweepSpec("qpd.ghz-ad", {"gamma0": 0.1, "theta1": np.pi / 2,
                                       "theta2": np.pi / 2, "theta3": np.pi / 2,
                                       "phi1": np.pi / 4, "phi2": np.pi / 3,
                                       "phi3": np.pi / 6},
                        (("t", 0.0, 10.0, 51),)),
    "fig5-7": SweepSpec("qpd.w-ad", {"gamma0": 0.1, "theta1": np.pi / 4,
                                     "theta2": np.pi / 6, "theta3": np.pi / 3,
                                     "phi1": np.pi / 8, "phi2": np.pi / 4,
                                     "phi3": np.pi / 6},
                        (("t", 0.0, 10.0, 51),)),
    "fig5-8": SweepSpec("qpd.volume-qnd", {"gamma0": 0.1, "omega_c": 100.0, "T": 0.0,
                                           "alpha": np.pi / 2, "beta": np.pi / 3},
                        (("t", 0.0, 6.0, 13),)),
    # tomogram families
    "fig6-1": SweepSpec("tomogram.qnd", {"gamma0": 0.1, "omega_c": 100.0, "T": 0.0,
                                         "alpha": np.pi / 2, "beta": np.pi / 3,
                                         "beta_t": np.pi / 3, "gamma_t": np.pi / 4},
                        (("t", 0.0, 10.0, 51),)),
    "fig6-2": SweepSpec("tomogram.qnd", {"gamma0": 0.1, "omega_c": 100.0, "T": 1.0,
                                         "alpha": np.pi / 2, "beta": np.pi / 3, "t": 1.0},
                        (("beta_t", 0.0, np.pi, 25), ("gamma_t", 0.0, 2 * np.pi, 25))),
    "fig6-3": SweepSpec("tomogram.sgad", {"gamma0": 0.25, "T": 1.0, "r": 0.0,
                                          "phi": np.pi, "alpha": np.pi / 2,
                                          "beta": np.pi / 3, "beta_t": np.pi / 3,
                                          "gamma_t": np.pi / 4},
                        (("t", 0.01, 10.0, 51),)),
    "fig6-4": SweepSpec("tomogram.sgad", {"gamma0": 0.25, "T": 1.0, "t": 1.0,
                                          "alpha": np.pi / 2, "beta": np.pi / 3,
                                          "beta_t": np.pi / 3, "gamma_t": np.pi / 4},
                        (("r", 0.0, 2.0, 21), ("phi", 0.0, 2 * np.pi, 25))),
    "fig6-5": SweepSpec("tomogram.vacuum-2qubit", {"Gamma": 0.05, "r12": 0.05,
                                                   "beta1": np.pi / 3, "beta2": np.pi / 4,
                                                   "gamma1": np.pi / 3, "gamma2": np.pi / 4},
                        (("t", 0.0, 10.0, 51),)),
    "fig6-6": SweepSpec("tomogram.vacuum-2qubit", {"Gamma": 0.05, "t": 1.0,
                                                   "beta1": np.pi / 3, "beta2": np.pi / 4,
                                                   "gamma1": np.pi / 3, "gamma2": np.pi / 4},
                        (("r12", 0.05, 3.0, 60),)),
    "fig6-7": SweepSpec("tomogram.optical", {"beta": 2.0, "n_th": 5.0, "r": 1.0,
                                             "k": 1.0, "t": 1.0},
                        (("X", -8.0, 8.0, 81), ("theta", 0.0, 2 * np.pi, 25))),
    # communication fidelity families
    "fig7-2": SweepSpec("crypto.bcst", {"chan": "AD", "theta1": np.pi / 4,
                                        "theta2": np.pi / 6},
                        (("eta", 0.0, 1.0, 51),)),
    "fig7-3": SweepSpec("crypto.bcst", {"chan": "PD", "theta2": np.pi / 6},
                        (("theta1", 0.0, np.pi, 25), ("eta", 0.0, 1.0, 21))),
    "fig7-4": SweepSpec("crypto.markov-cqd", {"bell": "phi+", "chan": "AD",
                                              "first_class": "ALL", "second_class": "ALL"},
                        (("eta", 0.0, 1.0, 51),)),
    "fig8-1": SweepSpec("crypto.protocol-fidelity", {"protocol": "CQD",
                                                     "channel": "nm-damping",
                                                     "bell": "psi+", "gamma": 1.0,
                                                     "Gamma": 0.01},
                        (("t", 0.0, 15.0, 151),)),
    "fig8-2": SweepSpec("crypto.protocol-fidelity", {"protocol": "CQD",
                                                     "channel": "nm-dephasing",
                                                     "bell": "psi+", "gamma": 1.0,
                                                     "Gamma": 0.01},
                        (("t", 0.0, 15.0, 151),)),
    "fig8-3": SweepSpec("crypto.protocol-fidelity", {"protocol": "CQD",
                                                     "channel": "nm-depolarizing",
                                                     "bell": "psi+",
                                                     "gamma1": 0.2, "gamma2": 0.2,
                                                     "gamma3": 0.2, "Gamma1": 1.0,
                                                     "Gamma2": 1.0, "Gamma3": 1.0},
                        (("t", 0.0, 10.0, 101),)),
    "fig8-4": SweepSpec("crypto.protocol-fidelity", {"protocol": "CDSQC",
                                                     "channel": "nm-damping",
                                                     "bell": "psi+", "gamma": 1.0,
                                                     "Gamma": 0.01},
                        (("t", 0.0, 15.0, 151),)),
    "fig8-5": SweepSpec("crypto.protocol-fidelity", {"protocol": "QD",
                                                     "channel": "nm-dephasing",
                                                     "bell": "psi+", "gamma": 1.0,
                                                     "Gamma": 0.01},
                        (("t", 0.0, 15.0, 151),)),
    "fig8-6": SweepSpec("crypto.protocol-fidelity", {"protocol": "BB84",
                                                     "channel": "nm-depolarizing",
                                                     "bell": "psi+",
                                                     "gamma1": 0.2, "gamma2": 0.2,
                                                     "gamma3": 1.0, "Gamma1": 1.0,
                                                     "Gamma2": 1.0, "Gamma3": 0.2},
                        (("t", 0.0, 10.0, 101),)),
}


def preset_spec(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
