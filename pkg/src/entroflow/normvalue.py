"""Exact values of invariants: rational combinations of 1 and log q, or infinity.

``NormValue`` keeps coefficients as :class:`fractions.Fraction` keyed by a
symbol, ``1`` standing for the unit and a prime ``q`` for ``log q``. The
symbols are linearly independent over Q, so formal equality is equality
of reals; order comparisons of formally distinct values fall back on
``mpmath`` at a configurable precision.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import mpmath
from sympy import factorint

UNIT = 1

PRECISION_BITS = int(os.environ.get("ENTROFLOW_PRECISION_BITS", "256"))


def _clean(coeffs: Mapping[int, Fraction]) -> tuple[tuple[int, Fraction], ...]:
    return tuple(sorted((k, Fraction(v)) for k, v in coeffs.items() if v))


@dataclass(frozen=True)
class NormValue:
    coeffs: tuple[tuple[int, Fraction], ...] = ()
    infinite: bool = False

    @classmethod
    def zero(cls) -> NormValue:
        return cls()

    @classmethod
    def inf(cls) -> NormValue:
        return cls((), True)

    @classmethod
    def unit(cls, c=1) -> NormValue:
        return cls(_clean({UNIT: Fraction(c)}))

    @classmethod
    def log(cls, n: int, c=1) -> NormValue:
        """``c * log n`` expanded over the primes dividing ``n``."""
        if n < 1:
            raise ValueError("log of a nonpositive integer")
        return cls(_clean({q: Fraction(c) * e for q, e in factorint(n).items()}))

    @property
    def is_finite(self) -> bool:
        return not self.infinite

    def is_zero(self) -> bool:
        return not self.infinite and not self.coeffs

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def __add__(self, other: NormValue) -> NormValue:
        if self.infinite or other.infinite:
            return NormValue.inf()
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return NormValue(_clean(d))

    def __sub__(self, other: NormValue) -> NormValue:
        """Formal difference; may carry negative coefficients."""
        if self.infinite or other.infinite:
            raise ValueError("difference with an infinite value")
        return self + other.scale(-1)

    def scale(self, c) -> NormValue:
        c = Fraction(c)
        if self.infinite:
            if c < 0:
                raise ValueError("negative multiple of infinity")
            return NormValue.inf() if c else NormValue.zero()
        return NormValue(_clean({k: v * c for k, v in self.coeffs}))

    def __truediv__(self, n) -> NormValue:
        return self.scale(Fraction(1) / Fraction(n))

    def numeric(self, bits: int | None = None) -> mpmath.mpf:
        if self.infinite:
            return mpmath.inf
        with mpmath.workprec(bits or PRECISION_BITS):
            total = mpmath.mpf(0)
            for k, v in self.coeffs:
                term = mpmath.mpf(v.numerator) / v.denominator
                total += term if k == UNIT else term * mpmath.log(k)
            return +total

    def sign(self) -> int:
        """Sign of the (possibly signed) value: formal zero first, then numerics."""
        if self.infinite:
            return 1
        if not self.coeffs:
            return 0
        if all(v > 0 for _, v in self.coeffs):
            return 1
        if all(v < 0 for _, v in self.coeffs):
            return -1
        x = self.numeric()
        return (x > 0) - (x < 0)

    def compare(self, other: NormValue) -> int:
        if self == other:
            return 0
        if self.infinite:
            return 1
        if other.infinite:
            return -1
        return (self - other).sign()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def __float__(self):
        return float(self.numeric())

    def __str__(self):
        return format_norm(self)

    def __repr__(self):
        return f"NormValue({format_norm(self)!r})"


def norm_max(values) -> NormValue:
    out = NormValue.zero()
    for v in values:
        if v > out:
            out = v
    return out


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_norm(v: NormValue) -> str:
    """Formal rendering such as ``2*log2 + log3`` (round-trips through :func:`parse_norm`)."""
    if v.infinite:
        return "inf"
    if not v.coeffs:
        return "0"
    parts = []
    for k, c in v.coeffs:
        neg = c < 0
        a = abs(c)
        if k == UNIT:
            body = _format_coeff(a)
        elif a == 1:
            body = f"log{k}"
        else:
            body = f"{_format_coeff(a)}*log{k}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def format_numeric(v: NormValue, digits: int = 16) -> str:
    if v.infinite:
        return "inf"
    return mpmath.nstr(v.numeric(), digits)


_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(log\s*(\d+))?\s*")


def parse_norm(text: str) -> NormValue:
    text = text.strip()
    if text == "inf":
        return NormValue.inf()
    if text == "0":
        return NormValue.zero()
    out = NormValue.zero()
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse norm value {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            out = out + NormValue.log(int(m.group(4)), sign * c)
        else:
            out = out + NormValue.unit(sign * c)
        pos = m.end()
    return out
