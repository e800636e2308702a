"""Dense complex linear algebra and quantum-state plumbing.

Everything here operates on plain numpy arrays (complex128).  States are
1-D arrays, operators and density matrices 2-D.  Multi-mode systems carry
their factor dimensions explicitly so partial traces and targeted channel
application stay honest.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

__all__ = [
    "MAX_KRON_DIM",
    "KrausChannel",
    "DensityOperator",
    "dag",
    "kron",
    "ket",
    "basis",
    "projector",
    "pure_dm",
    "expect",
    "partial_trace",
    "apply_kraus",
    "matrix_exp_apply",
    "coherent_fock",
    "coherent_cutoff",
    "destroy",
    "number_op",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
]

# Guard against accidental construction of huge Kronecker products.
MAX_KRON_DIM = 1 << 22

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dag(a):
    return np.conj(np.asarray(a)).T


def kron(*ops):
    """Kronecker product of one or more matrices (left-to-right order)."""
    out = np.asarray(ops[0], dtype=complex)
    for op in ops[1:]:
        op = np.asarray(op, dtype=complex)
        if out.size * op.size > MAX_KRON_DIM**2:
            raise ValueError("kron result would exceed the configured size cap")
        out = np.kron(out, op)
    return out


def ket(amplitudes, normalize=False):
    v = np.asarray(amplitudes, dtype=complex).ravel()
    if normalize:
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        v = v / n
    return v


def basis(dim, n):
    v = np.zeros(dim, dtype=complex)
    v[n] = 1.0
    return v


def projector(v):
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


pure_dm = projector


def expect(op, state):
    """<state|op|state> for kets, Tr[op rho] for density matrices."""
    state = np.asarray(state, dtype=complex)
    op = np.asarray(op, dtype=complex)
    if state.ndim == 1:
        return complex(np.vdot(state, op @ state))
    return complex(np.trace(op @ state))


def destroy(dim):
    """Bosonic annihilation operator truncated to `dim` Fock levels."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def number_op(dim):
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


@dataclass(frozen=True)
class KrausChannel:
    """Ordered Kraus operators with a completeness check at construction.

    `label` records provenance (e.g. "AD", "SGAD", "NM-dephasing").
    """

    operators: tuple
    label: str = ""
    completeness_tol: float = 1e-10

    def __post_init__(self):
        ops = tuple(np.asarray(op, dtype=complex) for op in self.operators)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        d = ops[0].shape
        if len(d) != 2 or d[0] != d[1]:
            raise ValueError("Kraus operators must be square matrices")
        if any(op.shape != d for op in ops):
            raise ValueError("all Kraus operators must share one dimension")
        object.__setattr__(self, "operators", ops)
        s = sum(dag(op) @ op for op in ops)
        defect = np.max(np.abs(s - np.eye(d[0])))
        if defect > self.completeness_tol:
            raise ValueError(
                f"channel {self.label or '<unnamed>'} violates completeness: "
                f"max |sum K^dag K - I| = {defect:.3e} > {self.completeness_tol:.1e}"
            )

    @property
    def dim(self):
        return self.operators[0].shape[0]

    def __iter__(self):
        return iter(self.operators)


@dataclass(frozen=True)
class DensityOperator:
    """Square complex matrix plus the dimensions of its tensor factors."""

    matrix: np.ndarray
    dims: tuple
    herm_tol: float = 1e-12
    trace_tol: float = 1e-12
    eig_tol: float = 1e-10
    validate: bool = True

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        n = int(np.prod(dims))
        if m.shape != (n, n):
            raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
        if not self.validate:
            return
        if np.max(np.abs(m - m.conj().T)) > self.herm_tol:
            raise ValueError("density matrix is not Hermitian within tolerance")
        if abs(np.trace(m) - 1.0) > self.trace_tol:
            raise ValueError(f"trace is {np.trace(m):.12g}, expected 1")
        w = np.linalg.eigvalsh((m + m.conj().T) / 2)
        if w.min() < -self.eig_tol:
            raise ValueError(f"negative eigenvalue {w.min():.3e} below tolerance")

    @property
    def dim(self):
        return self.matrix.shape[0]


def _as_matrix_dims(rho, dims):
    if isinstance(rho, DensityOperator):
        return rho.matrix, rho.dims
    m = np.asarray(rho, dtype=complex)
    if dims is None:
        dims = (m.shape[0],)
    return m, tuple(int(d) for d in dims)


def partial_trace(rho, keep, dims=None):
    """Trace out every factor not listed in `keep` (kept order preserved).

    `rho` may be a DensityOperator or a plain matrix with `dims` given.
    """
    m, dims = _as_matrix_dims(rho, dims)
    keep = tuple(int(i) for i in keep)
    n = len(dims)
    if not keep:
        raise ValueError("keep must name at least one subsystem (the full trace is a scalar)")
    if any(i < 0 or i >= n for i in keep) or len(set(keep)) != len(keep):
        raise ValueError(f"keep={keep} is not a valid subset of 0..{n - 1}")
    t = m.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    for cnt, i in enumerate(sorted(traced)):
        ax = i - cnt  # axes shift left as we trace
        nleft = n - cnt
        t = np.trace(t, axis1=ax, axis2=ax + nleft)
    sorted_keep = sorted(keep)
    if keep != tuple(sorted_keep):
        # permute kept factors from sorted order to the requested order
        kdims = tuple(dims[i] for i in sorted_keep)
        k = len(keep)
        pos = [sorted_keep.index(i) for i in keep]
        t = t.reshape(kdims + kdims)
        t = np.transpose(t, axes=pos + [p + k for p in pos])
    kept_dims = tuple(dims[i] for i in keep)
    d = int(np.prod(kept_dims))
    out = t.reshape(d, d)
    if isinstance(rho, DensityOperator):
        return DensityOperator(out, kept_dims, validate=False)
    return out


def _embed(op, dims, targets):
    """Lift `op`, acting on the listed target factors, to the full space."""
    n = len(dims)
    targets = tuple(int(t) for t in targets)
    tdims = tuple(dims[t] for t in targets)
    dt = int(np.prod(tdims))
    op = np.asarray(op, dtype=complex)
    if op.shape != (dt, dt):
        raise ValueError(f"operator shape {op.shape} does not match target dims {tdims}")
    rest = [i for i in range(n) if i not in targets]
    full = np.prod(dims)
    # permutation taking (targets..., rest...) ordering back to natural ordering
    order = list(targets) + rest
    big = np.kron(op, np.eye(int(full) // dt))
    t = big.reshape(tuple(dims[i] for i in order) * 2)
    inv = np.argsort(order)
    axes = list(inv) + [m + n for m in inv]
    return np.transpose(t, axes=axes).reshape(int(full), int(full))


def apply_kraus(rho, channel, targets=None, dims=None):
    """Apply an operator-sum channel to the listed subsystems of rho.

    `dims` gives the factor dimensions when rho is a plain matrix spanning
    several subsystems; DensityOperator inputs carry their own.
    """
    m, dims = _as_matrix_dims(rho, dims)
    targets = tuple(range(len(dims))) if targets is None else tuple(int(t) for t in targets)
    ops = channel.operators if isinstance(channel, KrausChannel) else tuple(
        np.asarray(op, dtype=complex) for op in channel
    )
    natural = targets == tuple(range(len(dims)))
    out = np.zeros_like(m)
    for op in ops:
        big = op if (natural and op.shape == m.shape) else _embed(op, dims, targets)
        out += big @ m @ dag(big)
    tr = np.trace(out).real
    if abs(tr - np.trace(m).real) > 1e-10 * max(1.0, abs(np.trace(m))):
        raise ArithmeticError(f"channel application changed the trace by {tr - np.trace(m).real:.3e}")
    if isinstance(rho, DensityOperator):
        return DensityOperator(out, dims, validate=False)
    return out


def matrix_exp_apply(g, z, state):
    """exp(-1j*g*z) @ state, the propagator of a z-independent generator."""
    g = np.asarray(g, dtype=complex)
    state = np.asarray(state, dtype=complex)
    if g.shape[0] != g.shape[1] or g.shape[0] != state.shape[0]:
        raise ValueError("generator and state dimensions disagree")
    out = expm(-1j * z * g) @ state
    if not np.all(np.isfinite(out)):
        raise ArithmeticError("matrix exponential blew up to non-finite values")
    return out


def coherent_cutoff(alpha, tail_mass=1e-10, minimum=4):
    """Smallest Fock cutoff whose Poisson tail mass is below `tail_mass`."""
    nbar = abs(alpha) ** 2
    n = max(minimum, int(np.ceil(nbar)))
    # tail of Poisson(nbar) beyond n
    logp = -nbar
    cum = np.exp(logp)
    k = 0
    while k < n or 1.0 - cum > tail_mass:
        k += 1
        logp += np.log(nbar / k) if nbar > 0 else -np.inf
        cum += np.exp(logp)
        if k > 10000:
            raise ValueError("coherent cutoff search did not converge")
    return k


def coherent_fock(alpha, cutoff=None, tail_mass=1e-10, strict=False):
    """Coherent-state amplitudes in the Fock basis, renormalized after truncation.

    c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!).  When `cutoff` is omitted it is
    chosen so that the discarded tail mass is below `tail_mass`.
    """
    alpha = complex(alpha)
    if cutoff is None:
        cutoff = coherent_cutoff(alpha, tail_mass)
    n = np.arange(cutoff + 1)
    with np.errstate(divide="ignore"):
        logmag = -abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * _log_factorial(n) \
            if alpha != 0 else np.where(n == 0, 0.0, -np.inf)
    amps = np.exp(logmag) * np.exp(1j * n * np.angle(alpha))
    tail = 1.0 - np.sum(np.abs(amps) ** 2)
    if tail > tail_mass:
        msg = f"truncated coherent state loses tail mass {tail:.3e} > {tail_mass:.1e}"
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, stacklevel=2)
    return amps / np.linalg.norm(amps)


def _log_factorial(n):
    from scipy.special import gammaln

    return gammaln(np.asarray(n, dtype=float) + 1.0)
