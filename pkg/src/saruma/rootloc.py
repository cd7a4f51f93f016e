"""Zero location relative to the unit circle from reflection coefficients.

With ``q_k = prod_{i=k}^{n} (1 - beta_i**2)`` the number of zeros inside the
unit circle equals the number of negative terms among ``q_n, ..., q_1``.
Only squares of the coefficients enter, so partial autocorrelations and
reflection coefficients (their negatives) give the same answer.
"""

import enum
from dataclasses import dataclass

import numpy as np

from saruma import _backend
from saruma.errors import IllDefinedRCs
from saruma.pacf import UNIT_EPS, PacfSeq


@dataclass(frozen=True)
class RootLocationReport:
    nu_inside: int
    n_outside: int
    q_sequence: tuple  # q_n, q_{n-1}, ..., q_1

    @property
    def degree(self):
        return self.nu_inside + self.n_outside

    def to_dict(self):
        return {
            "nu_inside": self.nu_inside,
            "n_outside": self.n_outside,
            "q_sequence": list(self.q_sequence),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["nu_inside"]), int(d["n_outside"]), tuple(d["q_sequence"]))


def count_inside(b, unit_eps=UNIT_EPS):
    """Count zeros inside the unit circle of the polynomial generated by ``b``."""
    values = b.values if isinstance(b, PacfSeq) else tuple(float(v) for v in b)
    for i, v in enumerate(values, start=1):
        if abs(abs(v) - 1.0) <= unit_eps:
            raise IllDefinedRCs(i)
    q = []
    acc = 1.0
    for v in reversed(values):
        acc *= 1.0 - v * v
        q.append(acc)
    nu = sum(1 for v in q if v < 0)
    return RootLocationReport(nu, len(values) - nu, tuple(q))


class Stability(enum.Enum):
    STABLE = "stable"
    ON_CIRCLE = "on_circle"
    INSIDE = "inside"


def stability(p, unit_eps=UNIT_EPS):
    """Classify ``p`` by running the inverse recursion until it fails.

    ``ON_CIRCLE`` when a unit partial autocorrelation is met before any of
    modulus above one, ``INSIDE`` when a modulus above one comes first.
    """
    if p.degree < 1:
        raise ValueError("need a polynomial of degree >= 1")
    beta, status, k, _ = _backend.kernels.levinson_inverse(p.ar, unit_eps)
    # scan from the top order down, as the recursion produced them
    stop = k if status != _backend.STATUS_OK else 1
    for i in range(p.degree, stop - 1, -1):
        v = beta[i - 1]
        if not np.isfinite(v):
            break
        if abs(abs(v) - 1.0) <= unit_eps:
            return Stability.ON_CIRCLE
        if abs(v) > 1.0:
            return Stability.INSIDE
    if status != _backend.STATUS_OK:
        return Stability.INSIDE
    return Stability.STABLE


def is_stable(p, unit_eps=UNIT_EPS):
    """True iff every zero of ``p`` lies strictly outside the unit circle."""
    return stability(p, unit_eps) is Stability.STABLE
