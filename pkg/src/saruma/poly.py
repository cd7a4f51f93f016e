"""Real polynomials in the backshift variable with unit constant term.

A :class:`FilterPoly` stores ``c_0..c_n`` of ``c_0 + c_1 z + ... + c_n z^n``
with ``c_0 == 1``, i.e. the polynomial ``1 - P(z)`` itself (``c_k`` is minus
the k-th autoregressive coefficient).
"""

import json

import numpy as np

from saruma.errors import NotAFactor, RootFindingError

DEFAULT_TOL = 1e-8


class FilterPoly:
    """Immutable polynomial ``1 + c_1 z + ... + c_n z^n``.

    Trailing zero coefficients are dropped so that ``degree`` is honest.
    Pass ``normalise=True`` to divide through by a non-unit constant term
    instead of rejecting it.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=(1.0,), *, normalise=False):
        c = np.array(coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("a FilterPoly needs at least the constant term")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        if c[0] != 1.0:
            if normalise and c[0] != 0.0:
                c = c / c[0]
                c[0] = 1.0
            else:
                raise ValueError(f"constant term must be 1, got {c[0]!r}")
        last = np.flatnonzero(c)[-1]
        c = c[: last + 1] + 0.0  # drops negative zeros
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_ar(cls, phi):
        """Build ``1 - phi_1 z - ... - phi_n z^n`` from AR coefficients."""
        return cls(np.concatenate(([1.0], -np.asarray(phi, dtype=float))))

    @classmethod
    def one(cls):
        return cls()

    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return self._c.shape[0] - 1

    @property
    def ar(self):
        """The autoregressive coefficients phi_1..phi_n (``-c_1..-c_n``)."""
        return -self._c[1:]

    def to_list(self):
        return [float(v) for v in self._c]

    def to_json(self):
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text):
        return cls(json.loads(text))

    def reversed(self):
        """Coefficients in reverse order, i.e. ``z^n p(1/z)``.

        The result generally does not have a unit constant term, so a raw
        array is returned.
        """
        return self._c[::-1].copy()

    def __call__(self, z):
        return evaluate(self, z)

    def __mul__(self, other):
        if not isinstance(other, FilterPoly):
            return NotImplemented
        return mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, FilterPoly):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __len__(self):
        return self._c.shape[0]

    def __repr__(self):
        return f"FilterPoly({self.to_list()!r})"

    def allclose(self, other, atol=1e-10):
        """Coefficient-wise comparison after padding to a common length."""
        a, b = _pad(self._c, other.coeffs)
        return bool(np.all(np.abs(a - b) <= atol))


ONE = FilterPoly()


def _pad(a, b):
    n = max(len(a), len(b))
    return np.pad(a, (0, n - len(a))), np.pad(b, (0, n - len(b)))


def as_poly(p):
    return p if isinstance(p, FilterPoly) else FilterPoly(p)


def evaluate(p, z):
    """Horner evaluation of ``p`` at (complex) ``z``."""
    acc = 0.0
    for c in p.coeffs[::-1]:
        acc = acc * z + c
    return acc


def mul(p, q):
    """Product of two filter polynomials (coefficient convolution)."""
    return FilterPoly(np.convolve(p.coeffs, q.coeffs))


def product(polys):
    out = ONE
    for p in polys:
        out = mul(out, p)
    return out


def embed_season(p, s):
    """Substitute ``z -> z**s``."""
    s = int(s)
    if s < 1:
        raise ValueError(f"season must be a positive integer, got {s}")
    c = np.zeros(p.degree * s + 1)
    c[::s] = p.coeffs
    return FilterPoly(c)


def deflate_unit(p, at=1, tol=DEFAULT_TOL):
    """Divide out the root ``at`` (+1 or -1) as many times as it divides.

    Returns ``(k, quotient)`` where ``p = (1 - z/at)**k * quotient``.  A
    division counts when the synthetic-division remainder is within
    ``tol * (1 + max|c_i|)`` of zero (scale taken from the input ``p``).
    """
    if at not in (1, -1):
        raise ValueError("at must be +1 or -1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    r = float(at)
    threshold = tol * (1.0 + float(np.max(np.abs(p.coeffs))))
    c = p.coeffs
    k = 0
    while c.shape[0] > 1:
        # synthetic division by (z - r), highest degree first
        n = c.shape[0] - 1
        b = np.empty(n)
        b[n - 1] = c[n]
        for i in range(n - 1, 0, -1):
            b[i - 1] = c[i] + r * b[i]
        remainder = c[0] + r * b[0]
        if abs(remainder) > threshold:
            break
        # (z - r) b(z) = (1 - z/r) * (-r b(z))
        c = -r * b
        c = c / c[0]
        k += 1
    return k, FilterPoly(c)


def unit_multiplicity(p, at=1, tol=DEFAULT_TOL):
    """Multiplicity of the root ``at`` (+1 gives d+, -1 gives d-)."""
    return deflate_unit(p, at, tol)[0]


def divide_exact(num, den, tol=DEFAULT_TOL):
    """Quotient ``q`` with ``num = den * q``, or :class:`NotAFactor`.

    The quotient is the least-squares solution of the convolution system,
    which stays accurate when ``den`` has roots on both sides of the unit
    circle.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n, d = num.degree, den.degree
    if d > n:
        raise ValueError(f"divisor degree {d} exceeds dividend degree {n}")
    m = n - d
    conv = np.zeros((n + 1, m + 1))
    for j in range(m + 1):
        conv[j : j + d + 1, j] = den.coeffs
    q = np.linalg.lstsq(conv, num.coeffs, rcond=None)[0]
    remainder = num.coeffs - conv @ q
    threshold = tol * (1.0 + float(np.max(np.abs(num.coeffs))))
    worst = float(np.max(np.abs(remainder)))
    if not worst <= threshold or q[0] == 0.0:
        raise NotAFactor(worst, threshold)
    return FilterPoly(q / q[0])


def roots(p):
    """All complex roots via companion-matrix eigenvalues."""
    if p.degree < 1:
        raise ValueError("roots of a degree-0 polynomial are undefined")
    try:
        z = np.roots(p.coeffs[::-1])
    except np.linalg.LinAlgError as exc:
        raise RootFindingError(str(exc)) from exc
    if z.shape[0] != p.degree or not np.all(np.isfinite(z)):
        raise RootFindingError(
            f"eigen-solver returned {z.shape[0]} roots for degree {p.degree}"
        )
    return np.sort_complex(z.astype(complex))
