"""Time series container, simulation, CSS residuals and CSV I/O."""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from saruma import _backend
from saruma.errors import CsvParseError, NonInvertibleMA, SeriesTooShort
from saruma.rootloc import is_stable


@dataclass(frozen=True, eq=False)
class TimeSeries:
    values: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if v.size < 1:
            raise ValueError("a time series needs at least one value")
        if not np.all(np.isfinite(v)):
            raise ValueError("time series values must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != v.size:
                raise ValueError("labels and values differ in length")
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return self.values.shape[0]

    def diff(self):
        labels = None if self.labels is None else self.labels[1:]
        return TimeSeries(np.diff(self.values), labels)


def _values(y):
    return y.values if isinstance(y, TimeSeries) else np.asarray(y, dtype=float)


@dataclass(frozen=True)
class ResidualSet:
    residuals: np.ndarray
    sum_sq: float
    effective_n: int

    def to_dict(self):
        return {
            "residuals": [float(v) for v in self.residuals],
            "sum_sq": self.sum_sq,
            "effective_n": self.effective_n,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(np.asarray(d["residuals"], dtype=float), float(d["sum_sq"]), int(d["effective_n"]))

    def to_json(self):
        return json.dumps(self.to_dict())


def simulate_with_innovations(model, T, sigma=1.0, seed=0, burn_in=0):
    """Simulate ``T`` values after ``burn_in`` discarded ones.

    Returns the series and the matching innovations (both post burn-in).
    Presample values of ``y`` and the innovations are zero.
    """
    if T < 1 or burn_in < 0:
        raise ValueError("need T >= 1 and burn_in >= 0")
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    rng = np.random.default_rng(seed)
    eps = sigma * rng.standard_normal(T + burn_in)
    with np.errstate(over="ignore", invalid="ignore"):
        y = _backend.kernels.arma_simulate(model.ar_full.coeffs, model.ma_full.coeffs, eps)
    if not np.all(np.isfinite(y)):
        raise OverflowError("simulated series overflowed; reduce T")
    return TimeSeries(y[burn_in:]), eps[burn_in:]


def simulate(model, T, sigma=1.0, seed=0, burn_in=0):
    return simulate_with_innovations(model, T, sigma, seed, burn_in)[0]


def residuals(model, y, check_invertible=True):
    """Conditional (zero presample) residuals of ``model`` on ``y``.

    The AR filter is applied for ``t > deg(ar_full)``; the MA recursion
    then starts from zero past innovations.
    """
    y = _values(y)
    k = model.ar_full.degree
    q = model.ma_full.degree
    if y.shape[0] <= k + q:
        raise SeriesTooShort(f"series of length {y.shape[0]} needs more than {k + q} values")
    if check_invertible and q > 0 and not is_stable(model.ma_full):
        raise NonInvertibleMA("MA polynomial has roots on or inside the unit circle")
    e = _backend.kernels.css_residuals(model.ar_full.coeffs, model.ma_full.coeffs, y)
    return ResidualSet(e, float(np.dot(e, e)), int(e.shape[0]))


def read_csv(path):
    """Read one value per line; optional ``value`` header, optional ``label,value`` rows."""
    values, labels = [], []
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if lineno == 1 and parts[-1].lower() == "value":
            continue
        if len(parts) > 2:
            raise CsvParseError(lineno, raw)
        try:
            values.append(float(parts[-1]))
        except ValueError:
            raise CsvParseError(lineno, raw) from None
        labels.append(parts[0] if len(parts) == 2 else None)
    if not values:
        raise CsvParseError(0, "no values")
    if all(lab is not None for lab in labels):
        return TimeSeries(values, labels)
    if any(lab is not None for lab in labels):
        raise CsvParseError(0, "labels present on some rows only")
    return TimeSeries(values)


def write_csv(ts, path, header=True):
    lines = []
    if ts.labels is None:
        if header:
            lines.append("value")
        lines += ["%.17g" % v for v in ts.values]
    else:
        if header:
            lines.append("label,value")
        lines += [f"{lab},{v:.17g}" for lab, v in zip(ts.labels, ts.values)]
    Path(path).write_text("\n".join(lines) + "\n")
