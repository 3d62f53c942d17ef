"""Exact residue tables: Res(D_k), sigma, g', g, F_{i,l} and the surgery constants nu."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb, factorial

from .errors import ConsistencyError, PrecisionError
from .poly import HalfLaurent, SeriesU, expand_at_one

__all__ = [
    "ResidueTables",
    "DEFAULT_DEPTH",
    "res_D",
    "power_sum",
    "sigma_lm",
    "gprime",
    "g_table",
    "F_coeffs",
    "F_poly",
    "nu",
    "nu_series",
    "tables",
]

DEFAULT_DEPTH = 8
HALF = Fraction(1, 2)


def res_D(k: int) -> Fraction:
    """Residue of D_k: falling product of -1/2 for k > 0, reciprocal rising product for k < 0."""
    out = Fraction(1)
    if k > 0:
        for j in range(k):
            out *= -HALF - j
    elif k < 0:
        for j in range(1, -k + 1):
            out /= -HALF + j
    return out


def power_sum(j: int, n: int) -> int:
    """s_j(1, 2, ..., n-1)."""
    return sum(x**j for x in range(1, n))


def _falling_half(count: int) -> Fraction:
    # (-1/2)(-1/2-1)...(-1/2-count+1)
    out = Fraction(1)
    for j in range(count):
        out *= -HALF - j
    return out


class ResidueTables:
    """Lazily filled exact tables.  Entries are computed once under a lock."""

    def __init__(self):
        self._lock = threading.RLock()
        self._sigma: dict[tuple[int, int], list[Fraction]] = {}
        self._gprime: dict[tuple[int, int], Fraction] = {}
        self._g: dict[int, list[Fraction]] = {}
        self._F: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        self._nu: dict[tuple[int, int], SeriesU] = {}

    # sigma_j^{l,m}
    def sigma(self, l: int, m: int, j: int) -> Fraction:
        if j < 1:
            raise ValueError("sigma is defined for j >= 1")
        with self._lock:
            row = self._sigma.setdefault((l, m), [Fraction(0), HALF])
            while len(row) <= j:
                jj = len(row)
                acc = Fraction(1, factorial(jj + 1))
                for i in range(1, jj):
                    acc += (-HALF - l + m - i) / factorial(jj + 1 - i) * row[i] / i
                row.append(acc)
            return row[j]

    def gprime(self, l: int, m: int) -> Fraction:
        key = (l, m)
        with self._lock:
            if key not in self._gprime:
                if m == 0:
                    val = Fraction(-1) * _falling_half(l)
                else:
                    val = (-1) ** (m + 1) * _falling_half(l + 1) * self.sigma(l, m, m) / m
                self._gprime[key] = val
            return self._gprime[key]

    def g(self, l: int, m: int) -> Fraction:
        with self._lock:
            row = self._g.setdefault(l, [])
            while len(row) <= m:
                mm = len(row)
                val = -self.gprime(l, mm)
                for k in range(mm):
                    val += row[k] * self.gprime(0, mm - k)
                row.append(val)
            return row[m]

    def g_series(self, l: int, order: int) -> SeriesU:
        return SeriesU([self.g(l, m) for m in range(order + 1)], order=order)

    # F_{i,l}(x) as coefficient tuples, lowest degree first
    def F(self, i: int, l: int) -> tuple[Fraction, ...]:
        if l == -1 or l == i + 1:
            return ()
        if not 0 <= l <= i:
            raise ValueError(f"F_{{{i},{l}}} needs 0 <= l <= i")
        key = (i, l)
        with self._lock:
            if key in self._F:
                return self._F[key]
            if i == 0:
                val = (Fraction(1),)
            else:
                a = self.F(i - 1, l - 1)
                b = self.F(i - 1, l) if l <= i - 1 else ()
                n = max(len(a), len(b) + 1, 1)
                out = [Fraction(0)] * (n + 1)
                for k, c in enumerate(a):
                    out[k] += c
                w = 2 * (i - 1) + 1 - l
                for k, c in enumerate(b):
                    out[k + 1] -= w * c
                # (x^2 - 4) F'
                for k, c in enumerate(b):
                    if k:
                        out[k + 1] += k * c
                        out[k - 1] -= 4 * k * c
                while out and out[-1] == 0:
                    out.pop()
                val = tuple(out)
            self._F[key] = val
            return val

    def nu_series(self, f: int, i: int, order: int) -> SeriesU:
        """sum_m nu_{f,i,m} u^m through u^order."""
        if f not in (1, -1):
            raise ValueError("f must be +1 or -1")
        if i == 0:
            return SeriesU({0: -f}, order=order)
        key = (f, i)
        with self._lock:
            hit = self._nu.get(key)
            if hit is not None and hit.order >= order:
                return hit.truncate(order)
            N = order + i + 2
            while True:
                try:
                    total = self._assemble_nu(f, i, N)
                    total.coeff(order)
                    break
                except PrecisionError:
                    N += 2
            for k in range(total.lo, 0):
                if total.coeff(k) != 0:
                    raise ConsistencyError(
                        f"nu_{{{f},{i}}}: coefficient of (t-1)^{k} is {total.coeff(k)}, not 0")
            out = SeriesU({k: total.coeff(k) for k in range(order + 1)}, order=order)
            self._nu[key] = out
            return out

    def _assemble_nu(self, f: int, i: int, N: int) -> SeriesU:
        two = HalfLaurent.t(1) + HalfLaurent.t(-1)
        tp1_i = expand_at_one((HalfLaurent.t(2) + HalfLaurent.const(1)) ** i, N)
        total = None
        for lp in range(i // 2 + 1):
            G = self.g_series(lp, N)
            for l in range(2 * lp + 1, i + 1):
                c = Fraction(f ** (l + lp) * (-2) ** l * comb(l, 2 * lp), factorial(i))
                pref = expand_at_one(HalfLaurent.t(i + 1 - f - l) * two.compose_poly(self.F(i, l)), N)
                term = (pref * tp1_i * G.shift(-lp - i - 1 + l)).scale(c)
                total = term if total is None else total + term
            c = Fraction(-f * f**lp * 2 ** (2 * lp), factorial(i))
            pref = expand_at_one(HalfLaurent.t(i - 2 * lp) * two.compose_poly(self.F(i, 2 * lp)), N)
            term = (pref * tp1_i * G.shift(lp - i)).scale(c)
            total = term if total is None else total + term
        return total

    def nu(self, f: int, i: int, m: int) -> Fraction:
        if m < 0:
            return Fraction(0)
        return self.nu_series(f, i, max(m, DEFAULT_DEPTH)).coeff(m)


tables = ResidueTables()


def sigma_lm(l: int, m: int, j: int) -> Fraction:
    return tables.sigma(l, m, j)


def gprime(l: int, m: int) -> Fraction:
    return tables.gprime(l, m)


def g_table(l: int, m: int) -> Fraction:
    return tables.g(l, m)


def F_coeffs(i: int, l: int) -> tuple[Fraction, ...]:
    return tables.F(i, l)


def F_poly(i: int, l: int) -> HalfLaurent:
    """F_{i,l} as a polynomial in x (HalfLaurent exponents in half-units)."""
    if not 0 <= l <= i:
        raise ValueError(f"F_{{{i},{l}}} needs 0 <= l <= i")
    return HalfLaurent({2 * k: c for k, c in enumerate(tables.F(i, l))})


def nu_series(f: int, i: int, order: int) -> SeriesU:
    return tables.nu_series(f, i, order)


def nu(f: int, i: int, m: int) -> Fraction:
    return tables.nu(f, i, m)
