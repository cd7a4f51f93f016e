"""Conditional-sum-of-squares estimation in partial autocorrelation space.

Pinned slots hold +-1 and define the unit-root filter; free slots are
optimised through ``tanh`` so every estimate stays inside (-1, 1).
"""

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from saruma.errors import AllStartsFailed, SarumaError
from saruma.model import SarumaSpec, build_from_pacf, expand
from saruma.pacf import PacfSeq
from saruma.series import TimeSeries, residuals

logger = logging.getLogger(__name__)

SENTINEL = 1e300
_EDGE = math.nextafter(1.0, 0.0)
_COMPONENTS = ("ar", "ma", "seasonal_ar", "seasonal_ma")


def squash(u):
    """Map the real line onto (-1, 1); clipped so it never rounds to +-1."""
    return np.clip(np.tanh(u), -_EDGE, _EDGE)


def unsquash(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) >= 1.0):
        raise ValueError("unsquash needs |x| < 1")
    return np.arctanh(x)


@dataclass(frozen=True)
class Slot:
    """One partial autocorrelation slot: ``pinned``, ``free`` or ``fixed``."""

    kind: str
    value: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))
        if self.kind == "pinned":
            if self.value not in (1.0, -1.0):
                raise ValueError("pinned slots hold +1 or -1")
        elif self.kind in ("free", "fixed"):
            if not abs(self.value) < 1.0:
                raise ValueError(f"{self.kind} slot value must lie in (-1, 1)")
        else:
            raise ValueError(f"unknown slot kind {self.kind!r}")

    def to_dict(self):
        return {"kind": self.kind, "value": self.value}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], d.get("value", 0.0))


def Pinned(sign=1):
    return Slot("pinned", sign)


def Free(initial=0.0):
    return Slot("free", initial)


def Fixed(value):
    return Slot("fixed", value)


@dataclass(frozen=True, eq=False)
class FitTemplate:
    data: TimeSeries
    ar: tuple = ()
    ma: tuple = ()
    seasonal_ar: tuple = ()
    seasonal_ma: tuple = ()
    s: int = 1

    def __post_init__(self):
        if not isinstance(self.data, TimeSeries):
            object.__setattr__(self, "data", TimeSeries(self.data))
        for name in _COMPONENTS:
            slots = tuple(x if isinstance(x, Slot) else Slot.from_dict(x) for x in getattr(self, name))
            object.__setattr__(self, name, slots)
        for name in ("ma", "seasonal_ma"):
            if any(x.kind == "pinned" for x in getattr(self, name)):
                raise ValueError(f"{name} slots cannot be pinned")
        if self.n_free == 0:
            raise ValueError("template needs at least one free slot")

    @property
    def free_slots(self):
        """``(component, position)`` of each free slot, in parameter order."""
        return [
            (name, i)
            for name in _COMPONENTS
            for i, x in enumerate(getattr(self, name))
            if x.kind == "free"
        ]

    @property
    def n_free(self):
        return len(self.free_slots)

    def initial_params(self):
        return unsquash([getattr(self, c)[i].value for c, i in self.free_slots])

    def pacfs(self, params):
        """Per-component :class:`PacfSeq` for unconstrained ``params``."""
        betas = iter(squash(np.asarray(params, dtype=float)).tolist())
        out = {}
        for name in _COMPONENTS:
            vals, pins = [], set()
            for i, x in enumerate(getattr(self, name), start=1):
                if x.kind == "free":
                    vals.append(next(betas))
                else:
                    vals.append(x.value)
                    if x.kind == "pinned":
                        pins.add(i)
            out[name] = PacfSeq(vals, frozenset(pins))
        return out

    def to_dict(self, include_data=True):
        d = {name: [x.to_dict() for x in getattr(self, name)] for name in _COMPONENTS}
        d["s"] = self.s
        if include_data:
            d["data"] = [float(v) for v in self.data.values]
        return d

    @classmethod
    def from_dict(cls, d, data=None):
        if data is None:
            data = d["data"]
        return cls(
            data=data,
            s=d.get("s", 1),
            **{name: tuple(Slot.from_dict(x) for x in d.get(name, ())) for name in _COMPONENTS},
        )


@dataclass(frozen=True)
class FitOptions:
    max_iter: int = 2000
    tol: float = 1e-8
    multistarts: int = 5
    seed: int = 0


def _spec_for(template, params, sigma2=1.0):
    p = template.pacfs(params)
    return p, build_from_pacf(p["ar"], p["ma"], p["seasonal_ar"], p["seasonal_ma"], template.s, sigma2)


def css_objective(params, template):
    """Residual sum of squares at ``params``; ``SENTINEL`` for invalid models."""
    try:
        _, spec = _spec_for(template, params)
        model = expand(spec, check=False)
        value = residuals(model, template.data, check_invertible=False).sum_sq
    except (SarumaError, ValueError):
        return SENTINEL
    return value if math.isfinite(value) else SENTINEL


@dataclass(frozen=True)
class FitReport:
    pacfs: dict
    spec: SarumaSpec
    sum_sq: float
    sigma2_hat: float
    effective_n: int
    iterations: int
    converged: bool
    trace: tuple = field(default=())

    @property
    def trace_length(self):
        return len(self.trace)

    def to_dict(self):
        return {
            "pacfs": {k: v.to_dict() for k, v in self.pacfs.items()},
            "spec": self.spec.to_dict(),
            "sum_sq": self.sum_sq,
            "sigma2_hat": self.sigma2_hat,
            "effective_n": self.effective_n,
            "iterations": self.iterations,
            "converged": self.converged,
            "trace_length": self.trace_length,
            "trace": list(self.trace),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            {k: PacfSeq.from_dict(v) for k, v in d["pacfs"].items()},
            SarumaSpec.from_dict(d["spec"]),
            float(d["sum_sq"]),
            float(d["sigma2_hat"]),
            int(d["effective_n"]),
            int(d["iterations"]),
            bool(d["converged"]),
            tuple(d.get("trace", ())),
        )

    def to_json(self):
        return json.dumps(self.to_dict())


def _run_start(template, x0, opts):
    trace = []

    def record(intermediate_result):
        trace.append(float(intermediate_result.fun))

    k = x0.shape[0]
    simplex = np.vstack([x0, x0 + 0.5 * np.eye(k)])
    res = optimize.minimize(
        css_objective,
        x0,
        args=(template,),
        method="Nelder-Mead",
        callback=record,
        options={
            "maxiter": opts.max_iter,
            # scipy bounds vertex-to-best distance; halving it bounds the diameter
            "xatol": opts.tol / 2,
            "fatol": opts.tol,
            "initial_simplex": simplex,
        },
    )
    pts, fvals = res.final_simplex
    diameter = max(np.max(np.abs(pts - a)) for a in pts)
    spread = float(np.max(fvals) - np.min(fvals))
    converged = bool(diameter < opts.tol and spread < opts.tol * (1.0 + abs(res.fun)))
    return res, converged, trace


def fit(template, opts=None):
    """Minimise the CSS objective over the free slots with Nelder-Mead.

    The first start is the template's initial values; the others draw
    partial autocorrelations uniformly from (-0.9, 0.9) with ``opts.seed``.
    """
    opts = opts or FitOptions()
    if opts.max_iter < 1 or opts.multistarts < 1:
        raise ValueError("max_iter and multistarts must be >= 1")
    if template.n_free == 0:
        raise ValueError("template needs at least one free slot")
    rng = np.random.default_rng(opts.seed)
    starts = [template.initial_params()]
    for _ in range(opts.multistarts - 1):
        starts.append(unsquash(rng.uniform(-0.9, 0.9, template.n_free)))

    best = None
    for i, x0 in enumerate(starts):
        res, converged, trace = _run_start(template, x0, opts)
        logger.debug("start %d: f=%.6g nit=%d converged=%s", i, res.fun, res.nit, converged)
        if res.fun >= SENTINEL:
            continue
        if best is None or res.fun < best[0].fun:
            best = (res, converged, trace)
    if best is None:
        raise AllStartsFailed(f"all {len(starts)} starts returned invalid models")

    res, converged, trace = best
    pacfs, spec = _spec_for(template, res.x)
    rs = residuals(expand(spec, check=False), template.data)
    sigma2_hat = rs.sum_sq / rs.effective_n
    if sigma2_hat > 0:
        spec = SarumaSpec(**{**spec.__dict__, "sigma2": sigma2_hat})
    return FitReport(
        pacfs=pacfs,
        spec=spec,
        sum_sq=rs.sum_sq,
        sigma2_hat=sigma2_hat,
        effective_n=rs.effective_n,
        iterations=int(res.nit),
        converged=converged,
        trace=tuple(trace),
    )
