"""Partial autocorrelation parameterisation of (unit-root) AR filters.

Forward and inverse Levinson-Durbin maps between partial autocorrelations
``beta_1..beta_n`` and the filter ``1 - P_n(z)``, and the factorisation of
that filter at partial autocorrelations pinned to +-1.  A pin at position
``m`` splits off ``1 - P_m(z)``, whose roots all lie on the unit circle;
the remaining values, multiplied by ``(-1)**d_plus`` where ``d_plus`` is
the multiplicity of the root +1 in the split-off factor, generate the
cofactor.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from saruma import _backend
from saruma.errors import NonFinite, NotUnitAt, UnitPacfEncountered
from saruma.poly import DEFAULT_TOL, FilterPoly, mul, product, unit_multiplicity

UNIT_EPS = 1e-10


@dataclass(frozen=True)
class PacfSeq:
    """Partial autocorrelations with explicit unit pins (1-based indices).

    Pinned entries must be exactly +1.0 or -1.0.  An unpinned entry of
    modulus exactly 1 is rejected: pins are declared, never guessed.  Use
    :meth:`infer` to pin every exact +-1 on purpose.  Moduli above 1 are
    accepted so that unstable reflection sequences can be represented.
    """

    values: tuple = ()
    unit_pins: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        vals = tuple(float(v) for v in np.asarray(self.values, dtype=float).ravel())
        pins = frozenset(int(i) for i in self.unit_pins)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "unit_pins", pins)
        n = len(vals)
        for i in pins:
            if not 1 <= i <= n:
                raise ValueError(f"pin index {i} outside 1..{n}")
            if vals[i - 1] not in (1.0, -1.0):
                raise ValueError(f"pinned value at {i} must be +-1, got {vals[i - 1]!r}")
        for i, v in enumerate(vals, start=1):
            if not np.isfinite(v):
                raise ValueError(f"value at {i} is not finite")
            if abs(v) == 1.0 and i not in pins:
                raise ValueError(f"value at {i} has unit modulus but is not pinned")

    @classmethod
    def infer(cls, values):
        """Pin every entry that is exactly +-1."""
        vals = [float(v) for v in values]
        return cls(vals, frozenset(i for i, v in enumerate(vals, 1) if abs(v) == 1.0))

    def __len__(self):
        return len(self.values)

    @property
    def array(self):
        return np.array(self.values, dtype=float)

    @property
    def pins(self):
        """Pin indices in increasing order."""
        return sorted(self.unit_pins)

    def to_dict(self):
        return {"values": list(self.values), "unit_pins": self.pins}

    @classmethod
    def from_dict(cls, d):
        return cls(d.get("values", ()), frozenset(d.get("unit_pins", ())))

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def _as_pacf(b):
    return b if isinstance(b, PacfSeq) else PacfSeq.infer(b)


def pacf_to_coeffs(b):
    """Forward Levinson-Durbin: partial autocorrelations -> ``1 - P_n(z)``.

    No restriction on the values; unit values are fine.
    """
    b = _as_pacf(b)
    if len(b) == 0:
        return FilterPoly()
    phi = _backend.kernels.levinson_forward(b.array)
    return FilterPoly.from_ar(phi)


def coeffs_to_pacf(p, unit_eps=UNIT_EPS, order=None):
    """Inverse Levinson-Durbin: ``1 - P_n(z)`` -> partial autocorrelations.

    Raises :class:`UnitPacfEncountered` as soon as some ``|beta_k|`` is
    within ``unit_eps`` of 1, since the step divides by ``1 - beta_k**2``.
    ``order`` (>= degree) reads the polynomial at a higher order, whose
    extra partial autocorrelations are zero.
    """
    order = p.degree if order is None else int(order)
    if order < max(p.degree, 1):
        raise ValueError(f"need order >= max(degree, 1), got {order} for degree {p.degree}")
    phi = np.pad(p.ar, (0, order - p.degree))
    beta, status, k, remaining = _backend.kernels.levinson_inverse(phi, unit_eps)
    if status == _backend.STATUS_UNIT:
        raise UnitPacfEncountered(k, beta[k - 1 :], FilterPoly.from_ar(remaining))
    if status == _backend.STATUS_NONFINITE:
        raise NonFinite(k)
    if not np.all(np.isfinite(beta)):
        raise NonFinite(1)
    return PacfSeq(beta)


def unit_sign(b_m):
    """``(-1)**d_plus`` of a unit-root factor whose last PACF is ``b_m``.

    When the last partial autocorrelation is +-1 the coefficient reversal
    of ``1 - P_m(z)`` equals ``-b_m (1 - P_m(z))``; comparing with the
    factored form gives ``(-1)**d_plus = -b_m`` exactly.
    """
    return -b_m


@dataclass(frozen=True)
class SplitResult:
    unit_part: FilterPoly
    adjusted_tail: PacfSeq
    d_plus: int


def split_after_unit(b, m, tol=DEFAULT_TOL):
    """Split ``1 - P_n`` at the pinned position ``m`` (1-based).

    Returns the unit-root factor generated by ``beta_1..beta_m``, the tail
    ``(-1)**d_plus * beta_{m+i}`` and ``d_plus``.  The sign is taken from
    the exact parity identity in :func:`unit_sign`; ``d_plus`` itself is
    counted by deflation with tolerance ``tol``.
    """
    b = _as_pacf(b)
    n = len(b)
    if not 1 <= m <= n:
        raise ValueError(f"split index {m} outside 1..{n}")
    bm = b.values[m - 1]
    if abs(bm) != 1.0:
        raise NotUnitAt(m, bm)
    unit_part = pacf_to_coeffs(PacfSeq(b.values[:m], frozenset(i for i in b.unit_pins if i <= m)))
    sign = unit_sign(bm)
    d_plus = unit_multiplicity(unit_part, 1, tol)
    if (-1) ** d_plus != sign:
        # a conjugate pair hugging +1 passes the deflation tolerance; the
        # parity identity is exact, so the count is off by one
        d_plus = d_plus - 1 if d_plus > 0 else 1
    tail = PacfSeq(
        [sign * v for v in b.values[m:]],
        frozenset(i - m for i in b.unit_pins if i > m),
    )
    return SplitResult(unit_part, tail, d_plus)


@dataclass(frozen=True)
class UnitRootFactorization:
    """``1 - P_n = unit_factors[0] * ... * unit_factors[-1] * stationary_factor``.

    ``d_plus_trace[i]`` is the multiplicity of +1 in ``unit_factors[i]``;
    each one flips the sign of every partial autocorrelation after it.
    """

    unit_factors: tuple
    stationary_factor: FilterPoly
    d_plus_trace: tuple
    source: PacfSeq

    def unit_product(self):
        return product(self.unit_factors)

    def product(self):
        return mul(self.unit_product(), self.stationary_factor)

    def to_dict(self):
        return {
            "unit_factors": [f.to_list() for f in self.unit_factors],
            "stationary": self.stationary_factor.to_list(),
            "d_plus_trace": list(self.d_plus_trace),
            "source": self.source.to_dict(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            tuple(FilterPoly(c) for c in d["unit_factors"]),
            FilterPoly(d["stationary"]),
            tuple(int(v) for v in d["d_plus_trace"]),
            PacfSeq.from_dict(d["source"]),
        )


def factor_pacf(b, tol=DEFAULT_TOL):
    """Split at every pin, left to right, into unit factors and a stationary rest."""
    b = _as_pacf(b)
    factors = []
    trace = []
    current = b
    while current.unit_pins:
        split = split_after_unit(current, min(current.unit_pins), tol)
        factors.append(split.unit_part)
        trace.append(split.d_plus)
        current = split.adjusted_tail
    return UnitRootFactorization(
        tuple(factors), pacf_to_coeffs(current), tuple(trace), b
    )
