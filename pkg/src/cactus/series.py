"""Fit rational generating functions to sphere-size sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy


@dataclass(frozen=True)
class RationalSeries:
    numerator: tuple[int, ...]     # coefficients, constant term first
    denominator: tuple[int, ...]
    order: int                     # order of the validated recurrence
    fitted_terms: int
    validated_terms: int

    def expand(self, count: int) -> list[int]:
        """Power-series coefficients of numerator / denominator."""
        q0 = self.denominator[0]
        out: list[int] = []
        for k in range(count):
            acc = self.numerator[k] if k < len(self.numerator) else 0
            for i in range(1, min(k, len(self.denominator) - 1) + 1):
                acc -= self.denominator[i] * out[k - i]
            out.append(acc // q0)
        return out

    def __str__(self):
        x = sympy.Symbol("x")
        num = sum(c * x**i for i, c in enumerate(self.numerator))
        den = sum(c * x**i for i, c in enumerate(self.denominator))
        return f"({sympy.expand(num)})/({sympy.expand(den)})"


def _solve_recurrence(a, order, start, stop):
    """Integer c_1..c_order with a[n] = sum c_i a[n-i] for start <= n < stop, or None."""
    rows = [[a[n - i] for i in range(1, order + 1)] for n in range(start, stop)]
    rhs = [a[n] for n in range(start, stop)]
    if len(rows) < order:
        return None
    M = sympy.Matrix(rows)
    b = sympy.Matrix(rhs)
    if M.rank() < order:
        return None
    sol = (M.T * M).LUsolve(M.T * b)
    coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in sol]
    if any(c.denominator != 1 for c in coeffs):
        return None
    coeffs = [int(c) for c in coeffs]
    for n in range(start, stop):
        if a[n] != sum(c * a[n - i] for i, c in enumerate(coeffs, start=1)):
            return None
    return coeffs


def guess_series(counts) -> RationalSeries | None:
    """Smallest-order integer recurrence fitted on the first half, checked on the rest.

    The recurrence of order d is required to hold from index d + 1 on, so the
    numerator may have degree up to d.
    """
    a = [int(c) for c in counts]
    N = len(a)
    if N < 8:
        raise ValueError("need at least 8 terms")
    half = N // 2
    for d in range(0, N // 2 + 1):
        start = d + 1
        if half - start < d:
            break
        if d == 0:
            if all(x == 0 for x in a[1:]):
                coeffs = []
            else:
                continue
        else:
            coeffs = _solve_recurrence(a, d, start, half)
            if coeffs is None:
                continue
        if all(a[n] == sum(c * a[n - i] for i, c in enumerate(coeffs, start=1)) for n in range(half, N)):
            den = [1] + [-c for c in coeffs]
            num = []
            for k in range(d + 1):
                num.append(a[k] + sum(den[i] * a[k - i] for i in range(1, min(k, d) + 1)))
            while len(num) > 1 and num[-1] == 0:
                num.pop()
            return RationalSeries(tuple(num), tuple(den), d, half, N - half)
    return None
