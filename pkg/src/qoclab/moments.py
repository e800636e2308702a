"""Exact normally-ordered moments of perturbatively evolved coupler modes.

The evolved annihilation operators are finite sums c_i * M_i where each M_i
is a short product of initial-mode ladder operators.  Moments like
<a^dag(z)^n a(z)^n> are evaluated by expanding the product, normal ordering
every term with the bosonic commutation rule, truncating at a chosen total
order in the nonlinear coupling, and letting a coherent input state turn
ladder operators into complex amplitudes.

This is the same algebra the closed-form criteria encode, but executed by a
dumb rewriting engine, which makes it a useful independent cross-check.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["OperatorSum", "coherent_expectation", "FirstOrder", "moment_jet"]


@lru_cache(maxsize=None)
def _normal_order_single(seq):
    """Normal order a single-mode ladder string.

    `seq` is a tuple of booleans (True = creation).  Returns a tuple of
    ((p, q), integer coefficient) pairs meaning coeff * adag^p a^q.
    """
    for i in range(len(seq) - 1):
        if not seq[i] and seq[i + 1]:
            # a adag = adag a + 1
            swapped = seq[:i] + (True, False) + seq[i + 2:]
            dropped = seq[:i] + seq[i + 2:]
            acc = {}
            for key, c in _normal_order_single(swapped):
                acc[key] = acc.get(key, 0) + c
            for key, c in _normal_order_single(dropped):
                acc[key] = acc.get(key, 0) + c
            return tuple(sorted(acc.items()))
    p = sum(seq)
    return (((p, len(seq) - p), 1),)


class OperatorSum:
    """A finite sum of coefficient * (ladder-operator product) terms.

    Terms are kept as {(ops, order): coeff} with ops a tuple of
    (mode, is_creation) and order the power of the nonlinear coupling
    carried by the coefficient.
    """

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @classmethod
    def from_expansion(cls, entries):
        """Build from (coeff, ops, order) entries; ops as ((mode, dag), ...)."""
        t = {}
        for coeff, ops, order in entries:
            key = (tuple(ops), int(order))
            t[key] = t.get(key, 0) + complex(coeff)
        return cls(t)

    def dagger(self):
        t = {}
        for (ops, order), c in self.terms.items():
            newops = tuple((m, not d) for (m, d) in reversed(ops))
            t[(newops, order)] = t.get((newops, order), 0) + np.conj(c)
        return OperatorSum(t)

    def __mul__(self, other):
        return self.mul(other)

    def mul(self, other, max_order=None):
        t = {}
        for (ops1, o1), c1 in self.terms.items():
            for (ops2, o2), c2 in other.terms.items():
                order = o1 + o2
                if max_order is not None and order > max_order:
                    continue
                key = (ops1 + ops2, order)
                t[key] = t.get(key, 0) + c1 * c2
        return OperatorSum(t)


def _product(factors, max_order):
    out = None
    for f in factors:
        out = f if out is None else out.mul(f, max_order=max_order)
    if out is None:
        out = OperatorSum({((), 0): 1.0 + 0j})
    return out


class FirstOrder:
    """Complex scalar split as c0 + c1 with c1 first order in the coupling.

    Arithmetic discards everything beyond first order, mirroring how the
    perturbative closed forms combine moments.
    """

    __slots__ = ("c0", "c1")

    def __init__(self, c0, c1=0.0):
        self.c0 = complex(c0)
        self.c1 = complex(c1)

    def __add__(self, other):
        other = _lift(other)
        return FirstOrder(self.c0 + other.c0, self.c1 + other.c1)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        return FirstOrder(self.c0 - other.c0, self.c1 - other.c1)

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        return FirstOrder(self.c0 * other.c0, self.c0 * other.c1 + self.c1 * other.c0)

    __rmul__ = __mul__

    def __neg__(self):
        return FirstOrder(-self.c0, -self.c1)

    def __pow__(self, n):
        out = FirstOrder(1.0)
        for _ in range(int(n)):
            out = out * self
        return out

    def conj(self):
        return FirstOrder(np.conj(self.c0), np.conj(self.c1))

    def abs(self):
        """|c0 + c1| to first order: |c0| + Re(conj(c0) c1)/|c0|."""
        a0 = abs(self.c0)
        if a0 == 0:
            # the modulus of a purely first-order quantity is first order
            return FirstOrder(0.0, abs(self.c1))
        return FirstOrder(a0, np.real(np.conj(self.c0) * self.c1) / a0)

    def real(self):
        return FirstOrder(self.c0.real, self.c1.real)

    @property
    def value(self):
        return self.c0 + self.c1


def _lift(x):
    return x if isinstance(x, FirstOrder) else FirstOrder(x)


def moment_jet(factors, amplitudes):
    """Moment of an operator product as a FirstOrder jet (orders 0 and 1)."""
    zeroth = coherent_expectation(factors, amplitudes, max_order=0)
    first = coherent_expectation(factors, amplitudes, max_order=1) - zeroth
    return FirstOrder(zeroth, first)


def coherent_expectation(factors, amplitudes, max_order=None):
    """<prod factors> in the product coherent state with the given amplitudes.

    `factors` is an ordered list of OperatorSum objects (leftmost first);
    `amplitudes` maps mode name -> complex amplitude.  Terms whose total
    nonlinearity order exceeds `max_order` are discarded before normal
    ordering, which reproduces the perturbative truncation of the closed
    forms (pass None for the untruncated product).
    """
    prod = _product(list(factors), max_order)
    total = 0.0 + 0j
    for (ops, order), c in prod.terms.items():
        if c == 0 or (max_order is not None and order > max_order):
            continue
        # split the string by mode; cross-mode operators commute
        per_mode = {}
        for m, d in ops:
            per_mode.setdefault(m, []).append(d)
        value = 1.0 + 0j
        for m, seq in per_mode.items():
            amp = complex(amplitudes[m])
            contrib = 0.0 + 0j
            for (p, q), w in _normal_order_single(tuple(seq)):
                contrib += w * np.conj(amp) ** p * amp**q
            value *= contrib
            if value == 0:
                break
        total += c * value
    return total
