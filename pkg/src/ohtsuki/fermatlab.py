"""Mod-r checks of Fermat limits.

Z_r[q]/(1 + q + ... + q^(r-1)) reduced mod r is F_r[x]/(x^(r-1)) with
x = q - 1, since the cyclotomic polynomial is x^(r-1) + r*(...).  Elements
are stored as coefficient vectors in powers of x.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, NotInvertibleError
from .residues import gprime, nu

__all__ = [
    "ModQElement",
    "modq",
    "q_pow",
    "quantum_int",
    "gauss_sum",
    "gauss_expand",
    "s_rfi",
    "srfi_valid_order",
    "ResidueProbe",
    "residue_probe",
    "rational_mod",
    "legendre",
    "odd_primes",
    "DEFAULT_PRIMES",
    "check_gauss",
    "check_srfi",
    "check_probes",
]


def odd_primes(lo: int, hi: int) -> list[int]:
    out = []
    for n in range(max(3, lo), hi + 1):
        if all(n % p for p in range(2, int(n**0.5) + 1)):
            out.append(n)
    return out


DEFAULT_PRIMES = tuple(odd_primes(11, 101))


def rational_mod(x, r: int) -> int:
    x = Fraction(x)
    if x.denominator % r == 0:
        raise NotInvertibleError(f"denominator of {x} is divisible by {r}")
    return x.numerator * pow(x.denominator, -1, r) % r


def legendre(a: int, r: int) -> int:
    v = pow(a % r, (r - 1) // 2, r)
    return -1 if v == r - 1 else v


class ModQElement:
    __slots__ = ("r", "c")

    def __init__(self, r: int, coeffs):
        self.r = r
        c = np.zeros(r - 1, dtype=np.int64)
        src = np.asarray(coeffs, dtype=np.int64).ravel()[: r - 1]
        c[: len(src)] = src
        self.c = c % r

    @classmethod
    def const(cls, r: int, a: int) -> "ModQElement":
        return cls(r, [a % r])

    @classmethod
    def x_power(cls, r: int, k: int) -> "ModQElement":
        c = np.zeros(r - 1, dtype=np.int64)
        if k < r - 1:
            c[k] = 1
        return cls(r, c)

    def _other(self, o) -> "ModQElement":
        if isinstance(o, ModQElement):
            if o.r != self.r:
                raise ValueError("elements over different primes")
            return o
        return ModQElement.const(self.r, int(o))

    def __add__(self, o):
        return ModQElement(self.r, self.c + self._other(o).c)

    __radd__ = __add__

    def __sub__(self, o):
        return ModQElement(self.r, self.c - self._other(o).c)

    def __rsub__(self, o):
        return self._other(o) - self

    def __neg__(self):
        return ModQElement(self.r, -self.c)

    def __mul__(self, o):
        if not isinstance(o, ModQElement):
            return ModQElement(self.r, self.c * (int(o) % self.r))
        o = self._other(o)
        return ModQElement(self.r, np.convolve(self.c, o.c)[: self.r - 1] % self.r)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ModQElement.const(self.r, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, o):
        return isinstance(o, ModQElement) and o.r == self.r and np.array_equal(o.c, self.c)

    def __hash__(self):
        return hash((self.r, self.c.tobytes()))

    def valuation(self) -> int:
        nz = np.nonzero(self.c)[0]
        return int(nz[0]) if len(nz) else self.r - 1

    def coeffs(self, k: int | None = None) -> list[int]:
        return [int(v) for v in self.c[: (self.r - 1 if k is None else k)]]

    def divide_by_x(self, k: int) -> tuple["ModQElement", int]:
        """Exact division by x^k; returns the quotient and its number of valid coefficients."""
        if self.valuation() < k:
            raise NotInvertibleError(f"not divisible by (q-1)^{k}")
        return ModQElement(self.r, self.c[k:]), self.r - 1 - k

    def inverse(self) -> "ModQElement":
        r = self.r
        if self.c[0] == 0:
            raise NotInvertibleError("element is not a unit")
        n = r - 1
        inv = np.zeros(n, dtype=np.int64)
        a0 = pow(int(self.c[0]), -1, r)
        inv[0] = a0
        for k in range(1, n):
            s = int(np.dot(self.c[1 : k + 1], inv[k - 1 :: -1][:k]) % r)
            inv[k] = (-s * a0) % r
        return ModQElement(r, inv)

    def __repr__(self):
        terms = [f"{v}*x^{k}" for k, v in enumerate(self.coeffs()) if v]
        return f"ModQElement(r={self.r}, " + (" + ".join(terms) or "0") + ")"


def q_pow(r: int, e) -> ModQElement:
    """q^e with fractional exponents read as q^(a * b^-1 mod r)."""
    e = Fraction(e)
    if e.denominator % r == 0:
        raise NotInvertibleError(f"exponent denominator {e.denominator} is divisible by {r}")
    k = e.numerator * pow(e.denominator, -1, r) % r
    return ModQElement(r, [comb(k, j) % r for j in range(min(k, r - 2) + 1)])


def quantum_int(r: int, k: int) -> ModQElement:
    """[k] = q^((k-1)/2) + q^((k-3)/2) + ... + q^(-(k-1)/2)."""
    if k == 0:
        return ModQElement.const(r, 0)
    if k < 0:
        return -quantum_int(r, -k)
    out = ModQElement.const(r, 0)
    for j in range(k):
        out = out + q_pow(r, Fraction(k - 1 - 2 * j, 2))
    return out


_MODQ_TOKEN = re.compile(r"\s*(\d+|q|[-+*^/()\[\]])")


def modq(r: int, expr) -> ModQElement:
    """Build an element from an expression such as ``"q^(1/2) + q^(-1/2)"`` or ``"[3]*q - 2"``.

    Atoms are integers, ``q``, ``q^(a/b)`` and quantum integers ``[k]``;
    ``+ - *`` and integer powers combine them.  A number or Fraction is read
    as an exponent of q.
    """
    if not isinstance(expr, str):
        return q_pow(r, expr)
    toks: list[str] = []
    pos = 0
    s = expr.strip()
    while pos < len(s):
        m = _MODQ_TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"bad character in {expr!r} at {pos}")
        toks.append(m.group(1))
        pos = m.end()
    i = 0

    def peek():
        return toks[i] if i < len(toks) else ""

    def take(want=None):
        nonlocal i
        t = peek()
        if want is not None and t != want:
            raise ValueError(f"expected {want!r} in {expr!r}")
        i += 1
        return t

    def exponent() -> Fraction:
        if peek() == "(":
            take("(")
            sign = -1 if peek() == "-" else 1
            if peek() in "+-":
                take()
            num = int(take())
            den = 1
            if peek() == "/":
                take()
                den = int(take())
            take(")")
            return Fraction(sign * num, den)
        sign = -1 if peek() == "-" else 1
        if peek() in "+-":
            take()
        return Fraction(sign * int(take()))

    def atom() -> ModQElement:
        t = take()
        if t == "q":
            if peek() == "^":
                take()
                return q_pow(r, exponent())
            return q_pow(r, 1)
        if t == "[":
            sign = -1 if peek() == "-" else 1
            if peek() == "-":
                take()
            k = int(take())
            take("]")
            base = quantum_int(r, sign * k)
        elif t == "(":
            base = sum_()
            take(")")
        elif t.isdigit():
            base = ModQElement.const(r, int(t))
        else:
            raise ValueError(f"unexpected {t!r} in {expr!r}")
        if peek() == "^":
            take()
            e = exponent()
            if e.denominator != 1:
                raise ValueError("fractional powers apply to q only")
            base = base ** int(e)
        return base

    def factor() -> ModQElement:
        if peek() == "-":
            take()
            return -factor()
        return atom()

    def product_() -> ModQElement:
        out = factor()
        while peek() == "*":
            take()
            out = out * factor()
        return out

    def sum_() -> ModQElement:
        out = product_()
        while peek() in ("+", "-") and peek():
            op = take()
            rhs = product_()
            out = out + rhs if op == "+" else out - rhs
        return out

    val = sum_()
    if i != len(toks):
        raise ValueError(f"trailing input in {expr!r}")
    return val


# ---------------------------------------------------------------------------
# Gauss sums


def gauss_sum(r: int, l: int = 0) -> ModQElement:
    """G_{2l}(q) = sum over k mod r of k^(2l) q^(k^2)."""
    out = ModQElement.const(r, 0)
    for k in range(r):
        w = pow(k, 2 * l, r) if (k or l == 0) else 0
        if w:
            out = out + q_pow(r, k * k) * w
    return out


def gauss_expand(r: int, l: int, M: int) -> list[int]:
    """First M+1 coefficients of ((r-1)/2)! G_{2l}(q) / (q-1)^((r-1)/2 - l)."""
    if M > (r - 3) // 2:
        raise ValueError(f"M must be at most {(r - 3) // 2} for r = {r}")
    half = (r - 1) // 2
    fact = 1
    for k in range(1, half + 1):
        fact = fact * k % r
    G = gauss_sum(r, l) * fact
    shift = half - l
    if G.valuation() < shift:
        raise ConsistencyError(f"G_{2 * l} at r = {r} has (q-1)-valuation {G.valuation()} < {shift}")
    quot, valid = G.divide_by_x(shift)
    return quot.coeffs()[: min(M + 1, valid)]


# ---------------------------------------------------------------------------
# s_{r,f,i}


def srfi_valid_order(r: int, i: int) -> int:
    """Largest m for which the m-th coefficient of s_{r,f,i} is determined."""
    return (r - 1) // 2 - i - 1


def s_rfi(r: int, f: int, i: int, M: int) -> list[int]:
    """Coefficients 0..M of s_{r,f,i}(q) in powers of (q-1), reduced mod r."""
    if f not in (1, -1):
        raise ValueError("f must be +1 or -1")
    if M > srfi_valid_order(r, i):
        raise ValueError(f"M must be at most {srfi_valid_order(r, i)} for r = {r}, i = {i}")
    two = quantum_int(r, 2)
    inner = ModQElement.const(r, 0)
    for k in range(1, (r - 1) // 2 + 1):
        acc = ModQElement.const(r, 0)
        for j in range((k - 1) // 2 + 1):
            c = (-1) ** j * comb(k - j - 1, j) * comb(k - 2 * j - 1, i)
            if c % r:
                acc = acc + two ** (k - 2 * j - 1) * c
        inner = inner + q_pow(r, Fraction(f * (k * k - 1), 4)) * quantum_int(r, k) * acc
    num = q_pow(r, Fraction(3 * f, 4) - Fraction(1, 2)) * inner * legendre(f, r)
    G0 = gauss_sum(r, 0)
    vg = G0.valuation()
    vn = num.valuation()
    U, valid_u = G0.divide_by_x(vg)
    V, valid_v = num.divide_by_x(vn)
    shift = i + 1 + vn - vg
    if shift < 0:
        raise ConsistencyError(f"s_(r,f,i) has a pole of order {-shift} at r = {r}")
    quot = V * U.inverse()
    valid = shift + min(valid_u, valid_v)
    if M >= valid:
        raise ConsistencyError("not enough precision for the requested order")
    out = [0] * shift + quot.coeffs()
    return out[: M + 1]


# ---------------------------------------------------------------------------
# residue probes


@dataclass
class ResidueProbe:
    candidate: Fraction
    samples: list[tuple[int, int]] = field(default_factory=list)
    expected: list[int] = field(default_factory=list)
    stable: bool = False
    first_counterexample: int | None = None
    onset: int | None = None

    def to_json(self) -> dict:
        return {
            "candidate": str(self.candidate),
            "samples": [[r, v, e] for (r, v), e in zip(self.samples, self.expected)],
            "stable": self.stable,
            "first_counterexample": self.first_counterexample,
            "onset": self.onset,
        }


def residue_probe(fn: Callable[[int], int], primes: Iterable[int], candidate, cutoff: int = 0) -> ResidueProbe:
    """Compare fn(r) mod r with the candidate rational over the sampled primes."""
    cand = Fraction(candidate)
    probe = ResidueProbe(cand)
    agree = []
    for r in primes:
        if cand.denominator % r == 0:
            continue
        v = fn(r) % r
        e = rational_mod(cand, r)
        probe.samples.append((r, v))
        probe.expected.append(e)
        agree.append((r, v == e))
        if v != e and r >= cutoff and probe.first_counterexample is None:
            probe.first_counterexample = r
    probe.stable = bool(agree) and probe.first_counterexample is None
    onset = None
    for r, ok in reversed(agree):
        if not ok:
            break
        onset = r
    probe.onset = onset
    return probe


# ---------------------------------------------------------------------------
# suites used by the CLI and the tests


def check_gauss(primes: Sequence[int] = DEFAULT_PRIMES, lmax: int = 2, mmax: int = 3) -> list[dict]:
    rows = []
    for r in primes:
        for l in range(lmax + 1):
            M = min(mmax, (r - 3) // 2)
            got = gauss_expand(r, l, M)
            want = [rational_mod(gprime(l, m), r) for m in range(M + 1)]
            rows.append({"r": r, "l": l, "m_max": M, "got": got, "want": want, "ok": got == want})
    return rows


def check_srfi(primes: Sequence[int] = DEFAULT_PRIMES, imax: int = 3, mmax: int = 3) -> list[dict]:
    rows = []
    for r in primes:
        for f in (1, -1):
            for i in range(imax + 1):
                M = min(mmax, srfi_valid_order(r, i))
                if M < 0:
                    continue
                got = s_rfi(r, f, i, M)
                want = [rational_mod(nu(f, i, m), r) for m in range(M + 1)]
                rows.append({"r": r, "f": f, "i": i, "m_max": M, "got": got, "want": want, "ok": got == want})
    return rows


def check_probes(primes: Sequence[int] = DEFAULT_PRIMES) -> list[dict]:
    def half_fact(r):
        out = 1
        for k in range(1, (r - 1) // 2 + 1):
            out = out * k % r
        return out

    cases = [
        ("3^(r-1)", lambda r: pow(3, r - 1, r), Fraction(1), True),
        ("(r-1)/2", lambda r: (r - 1) // 2, Fraction(-1, 2), True),
        ("((r-1)/2)!", half_fact, Fraction(1), False),
    ]
    rows = []
    for name, fn, cand, expect_stable in cases:
        p = residue_probe(fn, primes, cand)
        rows.append({"function": name, "candidate": str(cand), "stable": p.stable,
                     "expected_stable": expect_stable, "ok": p.stable == expect_stable,
                     "first_counterexample": p.first_counterexample})
    return rows
