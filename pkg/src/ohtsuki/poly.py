"""Exact Laurent polynomials in t^(1/2) and truncated series at t = 1.

Everything here is exact: coefficients are :class:`fractions.Fraction`,
exponents of :class:`HalfLaurent` are integers counting half-units, and
:class:`SeriesU` remembers how far its coefficients are actually known.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from .errors import NotInvertibleError, PrecisionError

__all__ = [
    "HalfLaurent",
    "SeriesU",
    "HSeries",
    "expand_at_one",
    "expand_in_h",
    "series_mul",
    "series_inv",
    "coeff",
    "format_rational",
    "parse_rational",
    "binomial_series",
]


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _format_halfexp(e: int) -> str:
    if e % 2 == 0:
        return str(e // 2)
    return f"{e}/2"


def _parse_halfexp(text: str) -> int:
    v = Fraction(text)
    if (2 * v).denominator != 1:
        raise ValueError(f"exponent {text!r} is not a multiple of 1/2")
    return int(2 * v)


class HalfLaurent:
    """Laurent polynomial in ``t^(1/2)`` with rational coefficients.

    ``HalfLaurent({3: 1})`` is ``t^(3/2)``; keys count half-units.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c) -> "HalfLaurent":
        return cls({0: c})

    @classmethod
    def t(cls, half_units: int = 2, c=1) -> "HalfLaurent":
        """The monomial ``c * t^(half_units/2)``."""
        return cls({half_units: c})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def min_exp(self) -> int:
        return min(self._terms)

    def max_exp(self) -> int:
        return max(self._terms)

    def coeff(self, half_units: int) -> Fraction:
        return self._terms.get(half_units, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HalfLaurent.const(other)
        if not isinstance(other, HalfLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def _coerce(self, other) -> "HalfLaurent":
        if isinstance(other, HalfLaurent):
            return other
        if isinstance(other, (int, Fraction)):
            return HalfLaurent.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise NotInvertibleError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return HalfLaurent({e * n: Fraction(1) / c ** (-n)})
        result = HalfLaurent.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, half_units: int) -> "HalfLaurent":
        return HalfLaurent({e + half_units: c for e, c in self._terms.items()})

    def invert_variable(self) -> "HalfLaurent":
        """Substitute ``t -> t^(-1)``."""
        return HalfLaurent({-e: c for e, c in self._terms.items()})

    def derivative(self) -> "HalfLaurent":
        """Formal d/dt (exponents in half-units)."""
        return HalfLaurent({e - 2: c * Fraction(e, 2) for e, c in self._terms.items() if e})

    def compose_poly(self, coeffs: Iterable) -> "HalfLaurent":
        """Evaluate the polynomial ``sum coeffs[k] x^k`` at ``x = self``."""
        coeffs = list(coeffs)
        acc = HalfLaurent()
        for c in reversed(coeffs):
            acc = acc * self + c
        return acc

    def evaluate(self, t):
        """Evaluate at ``t`` when all exponents are integral."""
        total = 0
        for e, c in self._terms.items():
            if e % 2:
                raise ValueError("half-integer exponent; evaluate at a square instead")
            total += c * t ** (e // 2)
        return total

    def to_json(self) -> dict[str, str]:
        return {_format_halfexp(e): format_rational(c) for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "HalfLaurent":
        return cls({_parse_halfexp(k): parse_rational(v) for k, v in data.items()})

    def format(self, var: str = "t") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 2:
                mono = var
            else:
                mono = f"{var}^{_format_halfexp(e)}" if e > 0 else f"{var}^({_format_halfexp(e)})"
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{format_rational(mag)}*{mono}"
            else:
                body = format_rational(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"HalfLaurent({self.format()})"


# ---------------------------------------------------------------------------
# truncated series in u = t - 1


class SeriesU:
    """Truncated Laurent series ``sum_k c_k u^k`` with ``u = t - 1``.

    Coefficients are known for exponents up to and including ``order``;
    anything beyond is unknown.  ``lo`` is the first nonzero known exponent
    (``order + 1`` when every known coefficient vanishes).
    """

    __slots__ = ("lo", "coeffs", "order")

    def __init__(self, coeffs: Mapping[int, object] | Iterable = (), order: int = 0, lo: int | None = None):
        if isinstance(coeffs, Mapping):
            items = {int(k): Fraction(v) for k, v in coeffs.items()}
        else:
            start = 0 if lo is None else lo
            items = {start + k: Fraction(v) for k, v in enumerate(coeffs)}
        nz = [k for k, v in items.items() if v and k <= order]
        if not nz:
            self.lo = order + 1
            self.coeffs = ()
        else:
            first = min(nz)
            self.lo = first
            self.coeffs = tuple(items.get(k, Fraction(0)) for k in range(first, order + 1))
        self.order = order

    @classmethod
    def const(cls, c, order: int) -> "SeriesU":
        return cls({0: c}, order=order)

    @classmethod
    def zero(cls, order: int) -> "SeriesU":
        return cls({}, order=order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> "SeriesU":
        return cls({k: c}, order=order)

    @property
    def valuation(self) -> int:
        return self.lo

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, n: int) -> Fraction:
        if n > self.order:
            raise PrecisionError(f"coefficient u^{n} requested but series is only known to u^{self.order}")
        if n < self.lo:
            return Fraction(0)
        return self.coeffs[n - self.lo]

    def items(self):
        return ((self.lo + i, c) for i, c in enumerate(self.coeffs) if c)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.items())

    def truncate(self, order: int) -> "SeriesU":
        if order > self.order:
            raise PrecisionError(f"cannot extend a series known to u^{self.order} up to u^{order}")
        return SeriesU(self.as_dict(), order=order)

    def __eq__(self, other):
        if not isinstance(other, SeriesU):
            return NotImplemented
        return self.order == other.order and self.as_dict() == other.as_dict()

    def agrees_with(self, other: "SeriesU") -> bool:
        """Equality on the common range of known coefficients."""
        n = min(self.order, other.order)
        lo = min(self.lo, other.lo)
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, n + 1))

    def __hash__(self):
        return hash((self.order, tuple(self.items())))

    def _coerce(self, other):
        if isinstance(other, SeriesU):
            return other
        if isinstance(other, (int, Fraction)):
            return SeriesU.const(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order = min(self.order, other.order)
        out = {}
        for k, c in self.items():
            if k <= order:
                out[k] = c
        for k, c in other.items():
            if k <= order:
                out[k] = out.get(k, 0) + c
        return SeriesU(out, order=order)

    __radd__ = __add__

    def __neg__(self):
        return SeriesU({k: -c for k, c in self.items()}, order=self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SeriesU":
        c = Fraction(c)
        return SeriesU({k: v * c for k, v in self.items()}, order=self.order)

    def shift(self, k: int) -> "SeriesU":
        """Multiply by ``u^k`` (k may be negative)."""
        return SeriesU({e + k: c for e, c in self.items()}, order=self.order + k)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SeriesU):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return series_inv(self) ** (-n)
        if n == 0:
            if self.is_zero():
                raise PrecisionError("0th power of a series with no known nonzero term")
            return SeriesU.const(1, self.order - self.lo)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def to_json(self) -> dict:
        return {
            "lowest": self.lo,
            "order": self.order,
            "coeffs": {str(k): format_rational(c) for k, c in self.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SeriesU":
        return cls({int(k): parse_rational(v) for k, v in data["coeffs"].items()}, order=int(data["order"]))

    def format(self) -> str:
        body = ""
        for k, c in self.items():
            mag = format_rational(abs(c))
            mono = mag if k == 0 else f"{mag}*u^{k}"
            if not body:
                body = ("-" if c < 0 else "") + mono
            else:
                body += (" - " if c < 0 else " + ") + mono
        return f"{body or '0'} + O(u^{self.order + 1})"

    def __repr__(self):
        return f"SeriesU({self.format()})"


def series_mul(a: SeriesU, b: SeriesU) -> SeriesU:
    """Cauchy product, truncated to the tightest order both factors justify."""
    order = min(a.order + b.lo, b.order + a.lo)
    out: dict[int, Fraction] = {}
    for i, ca in enumerate(a.coeffs):
        ka = a.lo + i
        if ka + b.lo > order:
            break
        for j, cb in enumerate(b.coeffs):
            k = ka + b.lo + j
            if k > order:
                break
            if ca and cb:
                out[k] = out.get(k, 0) + ca * cb
    return SeriesU(out, order=order)


def series_inv(a: SeriesU) -> SeriesU:
    """Multiplicative inverse as a Laurent series at u = 0."""
    if a.is_zero():
        raise NotInvertibleError("series has no known nonzero coefficient")
    v = a.lo
    n = a.order - v  # relative precision
    c0 = a.coeffs[0]
    inv = [Fraction(1) / c0]
    for k in range(1, n + 1):
        s = sum(a.coeffs[j] * inv[k - j] for j in range(1, k + 1))
        inv.append(-s / c0)
    return SeriesU(inv, order=n - v, lo=-v)


def coeff(s: SeriesU, n: int) -> Fraction:
    return s.coeff(n)


@lru_cache(maxsize=4096)
def _binomial_list(alpha: Fraction, n: int) -> tuple[Fraction, ...]:
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, n + 1):
        c = c * (alpha - (k - 1)) / k
        out.append(c)
    return tuple(out)


def binomial_series(alpha, order: int) -> SeriesU:
    """``(1 + u)^alpha`` through ``u^order``."""
    return SeriesU(_binomial_list(Fraction(alpha), order), order=order)


def expand_at_one(p: HalfLaurent, N: int) -> SeriesU:
    """Taylor expansion of ``p`` at ``t = 1`` in ``u = t - 1`` through ``u^N``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    acc = [Fraction(0)] * (N + 1)
    for e, c in p.items():
        for k, b in enumerate(_binomial_list(Fraction(e, 2), N)):
            acc[k] += c * b
    return SeriesU(acc, order=N)


class HSeries:
    """Truncated power series in ``h`` (used for ``t = e^h``)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable, order: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = coeffs[: order + 1] + [Fraction(0)] * (order + 1 - len(coeffs))
        self.coeffs = tuple(coeffs)
        self.order = order

    def coeff(self, n: int) -> Fraction:
        if n > self.order:
            raise PrecisionError(f"h^{n} requested but series is only known to h^{self.order}")
        if n < 0:
            return Fraction(0)
        return self.coeffs[n]

    def derivative_at_zero(self, n: int) -> Fraction:
        return self.coeff(n) * factorial(n)

    def __eq__(self, other):
        if not isinstance(other, HSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return "HSeries(" + ", ".join(format_rational(c) for c in self.coeffs) + ")"


def expand_in_h(p: HalfLaurent, N: int) -> HSeries:
    """Substitute ``t = e^h`` and expand through ``h^N``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    acc = [Fraction(0)] * (N + 1)
    facts = [factorial(k) for k in range(N + 1)]
    for e, c in p.items():
        a = Fraction(e, 2)
        pw = Fraction(1)
        for k in range(N + 1):
            acc[k] += c * pw / facts[k]
            pw *= a
    return HSeries(acc, order=N)
