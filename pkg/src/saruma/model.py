"""SARUMA model specification, validation and expansion.

The model is ``U_s(B^s) U(B) phi_s(B^s) phi(B) Y_t = theta_s(B^s) theta(B) e_t``
with unit-circle roots in ``U``/``U_s`` and all roots of the remaining four
polynomials outside the unit circle.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from saruma.errors import InvalidSpec, PinnedMA
from saruma.pacf import PacfSeq, factor_pacf, pacf_to_coeffs
from saruma.poly import (
    DEFAULT_TOL,
    ONE,
    FilterPoly,
    deflate_unit,
    embed_season,
    mul,
    product,
    roots,
)
from saruma.rootloc import Stability, stability

UNIT_CIRCLE_TOL = 1e-6
COMMON_ROOT_TOL = 1e-6

_STATIONARY_PARTS = ("phi", "phi_s", "theta", "theta_s")
_UNIT_PARTS = ("U", "U_s")


def _as_factors(value):
    if isinstance(value, FilterPoly):
        return (value,)
    return tuple(f if isinstance(f, FilterPoly) else FilterPoly(f) for f in value)


@dataclass(frozen=True)
class SarumaSpec:
    """Orders and component polynomials of a SARUMA model.

    ``U`` and ``U_s`` are kept as ordered factor tuples; seasonal
    polynomials are stored before the ``z -> z**s`` embedding.
    """

    s: int = 1
    U: tuple = ()
    U_s: tuple = ()
    phi: FilterPoly = ONE
    phi_s: FilterPoly = ONE
    theta: FilterPoly = ONE
    theta_s: FilterPoly = ONE
    sigma2: float = 1.0

    def __post_init__(self):
        if int(self.s) < 1:
            raise ValueError(f"season must be a positive integer, got {self.s}")
        if not self.sigma2 > 0:
            raise ValueError("sigma2 must be positive")
        object.__setattr__(self, "s", int(self.s))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        for name in _UNIT_PARTS:
            object.__setattr__(self, name, _as_factors(getattr(self, name)))
        for name in _STATIONARY_PARTS:
            v = getattr(self, name)
            if not isinstance(v, FilterPoly):
                object.__setattr__(self, name, FilterPoly(v))

    @property
    def U_poly(self):
        return product(self.U)

    @property
    def U_s_poly(self):
        return product(self.U_s)

    @property
    def orders(self):
        """``(p, d, q, p_s, d_s, q_s, s)``."""
        return (
            self.phi.degree,
            self.U_poly.degree,
            self.theta.degree,
            self.phi_s.degree,
            self.U_s_poly.degree,
            self.theta_s.degree,
            self.s,
        )

    def to_dict(self):
        return {
            "s": self.s,
            "sigma2": self.sigma2,
            "U": [f.to_list() for f in self.U],
            "U_s": [f.to_list() for f in self.U_s],
            "phi": self.phi.to_list(),
            "phi_s": self.phi_s.to_list(),
            "theta": self.theta.to_list(),
            "theta_s": self.theta_s.to_list(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            s=d.get("s", 1),
            U=d.get("U", ()),
            U_s=d.get("U_s", ()),
            phi=d.get("phi", [1.0]),
            phi_s=d.get("phi_s", [1.0]),
            theta=d.get("theta", [1.0]),
            theta_s=d.get("theta_s", [1.0]),
            sigma2=d.get("sigma2", 1.0),
        )

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ExpandedModel:
    """Flat ARUMA form ``ar_full(B) Y_t = ma_full(B) e_t``."""

    ar_full: FilterPoly
    ma_full: FilterPoly = ONE
    nonstationary_degree: int = 0

    def to_dict(self):
        return {
            "ar_full": self.ar_full.to_list(),
            "ma_full": self.ma_full.to_list(),
            "nonstationary_degree": self.nonstationary_degree,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            FilterPoly(d["ar_full"]),
            FilterPoly(d.get("ma_full", [1.0])),
            int(d.get("nonstationary_degree", 0)),
        )


@dataclass(frozen=True)
class Violation:
    component: str
    kind: str  # "not_stationary", "not_unit", "common_root"
    root: complex
    message: str = field(default="")

    def to_dict(self):
        return {
            "component": self.component,
            "kind": self.kind,
            "root": [self.root.real, self.root.imag],
            "message": self.message,
        }


def _fmt(z):
    z = complex(z)
    if abs(z.imag) < 1e-12:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}j"


def _check_stationary(name, p):
    if p.degree == 0:
        return []
    verdict = stability(p)
    if verdict is Stability.STABLE:
        return []
    z = roots(p)
    worst = z[np.argmin(np.abs(z))]
    where = "on unit circle" if verdict is Stability.ON_CIRCLE else "inside unit circle"
    return [
        Violation(name, "not_stationary", complex(worst), f"{name} has root {where} at z = {_fmt(worst)}")
    ]


def _check_unit(name, factor):
    if factor.degree == 0:
        return []
    # +-1 roots are counted by deflation; repeated ones would blur the eigenvalues
    _, rest = deflate_unit(factor, 1, DEFAULT_TOL)
    _, rest = deflate_unit(rest, -1, DEFAULT_TOL)
    if rest.degree == 0:
        return []
    z = roots(rest)
    bad = z[np.abs(np.abs(z) - 1.0) > UNIT_CIRCLE_TOL]
    return [
        Violation(name, "not_unit", complex(r), f"{name} has root off unit circle at z = {_fmt(r)}")
        for r in bad
    ]


def _seasonal_product(spec, inner, seasonal):
    return mul(embed_season(seasonal, spec.s), inner)


def _common_roots(ar, ma):
    if ar.degree == 0 or ma.degree == 0:
        return []
    za, zm = roots(ar), roots(ma)
    out = []
    for r in za:
        gap = np.abs(zm - r)
        if np.any(gap <= COMMON_ROOT_TOL * max(1.0, abs(r))):
            out.append(r)
    return out


def validate(spec):
    """List every violated model constraint; empty when the spec is valid."""
    violations = []
    for name in _STATIONARY_PARTS:
        violations += _check_stationary(name, getattr(spec, name))
    for name in _UNIT_PARTS:
        for f in getattr(spec, name):
            violations += _check_unit(name, f)
    ar = _seasonal_product(spec, spec.phi, spec.phi_s)
    ma = _seasonal_product(spec, spec.theta, spec.theta_s)
    for r in _common_roots(ar, ma):
        violations.append(
            Violation("phi/theta", "common_root", complex(r), f"common root at z = {_fmt(r)}")
        )
    return violations


def expand(spec, check=True):
    """Multiply out the seasonal and unit-root factors."""
    if check:
        violations = validate(spec)
        if violations:
            raise InvalidSpec(violations)
    unit = _seasonal_product(spec, spec.U_poly, spec.U_s_poly)
    ar = mul(unit, _seasonal_product(spec, spec.phi, spec.phi_s))
    ma = _seasonal_product(spec, spec.theta, spec.theta_s)
    return ExpandedModel(ar, ma, unit.degree)


def _empty(b):
    if b is None:
        return PacfSeq()
    return b if isinstance(b, PacfSeq) else PacfSeq.infer(b)


def build_from_pacf(ar_pacf=None, ma_pacf=None, seasonal_ar_pacf=None,
                    seasonal_ma_pacf=None, s=1, sigma2=1.0, check=True):
    """Construct a spec whose polynomials are generated by partial autocorrelations.

    AR sides are factored at their pins (unit factors go to ``U``/``U_s``,
    the stationary remainder to ``phi``/``phi_s``); MA sides must be
    unpinned and map straight through the forward recursion.
    """
    ar_pacf, ma_pacf = _empty(ar_pacf), _empty(ma_pacf)
    seasonal_ar_pacf, seasonal_ma_pacf = _empty(seasonal_ar_pacf), _empty(seasonal_ma_pacf)
    for name, b in (("ma_pacf", ma_pacf), ("seasonal_ma_pacf", seasonal_ma_pacf)):
        if b.unit_pins:
            raise PinnedMA(f"{name} has unit pins {b.pins}")
    ar = factor_pacf(ar_pacf)
    sar = factor_pacf(seasonal_ar_pacf)
    spec = SarumaSpec(
        s=s,
        U=ar.unit_factors,
        U_s=sar.unit_factors,
        phi=ar.stationary_factor,
        phi_s=sar.stationary_factor,
        theta=pacf_to_coeffs(ma_pacf),
        theta_s=pacf_to_coeffs(seasonal_ma_pacf),
        sigma2=sigma2,
    )
    if check:
        violations = validate(spec)
        if violations:
            raise InvalidSpec(violations)
    return spec
