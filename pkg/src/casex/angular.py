"""Exact angular-momentum bookkeeping and special functions.

Quantum numbers are carried as :class:`HalfInt`, which stores twice the value
as an ``int`` so that half-integers never pass through floating point. The
3-j symbol uses the Racah sum and the small-d matrix uses Wigner's explicit
sum, both over a fixed float factorial table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

import numpy as np

__all__ = [
    "HalfInt",
    "half",
    "wigner_3j",
    "wigner_small_d",
    "small_d_matrix",
    "FACTORIAL_CAP",
]

FACTORIAL_CAP = 60
_FACT = [float(math.factorial(n)) for n in range(FACTORIAL_CAP + 1)]


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """An integer or half-integer, stored as ``twice`` = 2 * value."""

    twice: int

    def __post_init__(self):
        if isinstance(self.twice, bool) or not isinstance(self.twice, (int, np.integer)):
            raise TypeError(f"HalfInt.twice must be an int, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def parse(cls, value: Union["HalfInt", int, str, Fraction]) -> "HalfInt":
        """Build from an int, a Fraction, or a string such as ``"3/2"`` or ``"-1"``.

        Floats are accepted only when they are exact multiples of 1/2.
        """
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a quantum number")
        if isinstance(value, (int, np.integer)):
            return cls(2 * int(value))
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"cannot parse {value!r} as a half-integer") from exc
        if isinstance(value, float):
            if not math.isfinite(value) or (2 * value) != round(2 * value):
                raise ValueError(f"{value!r} is not a multiple of 1/2")
            return cls(int(round(2 * value)))
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"{value} is not a multiple of 1/2")
            return cls(int(doubled))
        raise TypeError(f"cannot convert {type(value).__name__} to HalfInt")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __int__(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def __index__(self) -> int:
        return int(self)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice + other.twice)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(self.twice - other.twice)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return HalfInt(other.twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.twice == other.twice

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.twice < other.twice

    def __hash__(self) -> int:
        return hash(("HalfInt", self.twice))

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"

    def sign(self) -> int:
        return (self.twice > 0) - (self.twice < 0)

    def range_to(self, stop: "HalfInt"):
        """Yield self, self+1, ..., stop (inclusive)."""
        for t in range(self.twice, _coerce(stop).twice + 1, 2):
            yield HalfInt(t)

    def projections(self):
        """Yield m = -j, -j+1, ..., j."""
        for t in range(-self.twice, self.twice + 1, 2):
            yield HalfInt(t)


def _coerce(value):
    if isinstance(value, HalfInt):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return HalfInt(2 * int(value))
    if isinstance(value, Fraction):
        return HalfInt.parse(value)
    return NotImplemented


def half(value) -> HalfInt:
    """Shorthand for :meth:`HalfInt.parse`."""
    return HalfInt.parse(value)


def _fact(n2: int) -> float:
    # n2 is twice the factorial argument and is always even here
    n = n2 // 2
    if n < 0:
        raise ValueError("negative factorial argument")
    if n > FACTORIAL_CAP:
        raise OverflowError(
            f"factorial argument {n} exceeds table cap {FACTORIAL_CAP}"
        )
    return _FACT[n]


def _check_pair(j: HalfInt, m: HalfInt, name: str) -> None:
    if j.twice < 0:
        raise ValueError(f"{name}: j must be non-negative, got {j}")
    if (j.twice - m.twice) % 2:
        raise ValueError(f"{name}: j - m must be an integer (j={j}, m={m})")


def wigner_3j(j1, j2, j3, m1, m2, m3) -> float:
    """Wigner 3-j symbol ``(j1 j2 j3; m1 m2 m3)`` via the Racah formula.

    Arguments may be anything :func:`half` accepts. Returns exactly 0.0 when a
    selection rule fails. Raises ``ValueError`` when some ``j - m`` is not an
    integer.
    """
    j1, j2, j3, m1, m2, m3 = (half(x) for x in (j1, j2, j3, m1, m2, m3))
    for i, (j, m) in enumerate(((j1, m1), (j2, m2), (j3, m3)), start=1):
        _check_pair(j, m, f"column {i}")

    a, b, c = j1.twice, j2.twice, j3.twice
    x, y, z = m1.twice, m2.twice, m3.twice
    if x + y + z != 0:
        return 0.0
    if abs(x) > a or abs(y) > b or abs(z) > c:
        return 0.0
    if c > a + b or c < abs(a - b) or (a + b + c) % 2:
        return 0.0

    # twice-valued factorial arguments
    tri = (
        _fact(a + b - c) * _fact(a - b + c) * _fact(-a + b + c) / _fact(a + b + c + 2)
    )
    pref = math.sqrt(
        tri
        * _fact(a + x)
        * _fact(a - x)
        * _fact(b + y)
        * _fact(b - y)
        * _fact(c + z)
        * _fact(c - z)
    )

    k_min = max(0, (b - c - x) // 2, (a - c + y) // 2)
    k_max = min((a + b - c) // 2, (a - x) // 2, (b + y) // 2)
    total = 0.0
    for k in range(k_min, k_max + 1):
        k2 = 2 * k
        denom = (
            _fact(k2)
            * _fact(c - b + x + k2)
            * _fact(c - a - y + k2)
            * _fact(a + b - c - k2)
            * _fact(a - x - k2)
            * _fact(b + y - k2)
        )
        total += (-1.0 if k % 2 else 1.0) / denom

    phase = -1.0 if ((a - b - z) // 2) % 2 else 1.0
    return phase * pref * total


def wigner_small_d(j, m1, m2, theta: float) -> float:
    """Wigner rotation element ``d^j_{m1 m2}(theta)``.

    Convention: ``d^1_{00} = cos(theta)`` and
    ``d^1_{10} = -sin(theta)/sqrt(2)`` (rotation about y, active).
    """
    j, m1, m2 = half(j), half(m1), half(m2)
    _check_pair(j, m1, "m1")
    _check_pair(j, m2, "m2")
    if abs(m1.twice) > j.twice or abs(m2.twice) > j.twice:
        raise ValueError(f"|m| exceeds j (j={j}, m1={m1}, m2={m2})")

    J, p, q = j.twice, m1.twice, m2.twice
    c = math.cos(theta / 2)
    s = math.sin(theta / 2)
    pref = math.sqrt(_fact(J + p) * _fact(J - p) * _fact(J + q) * _fact(J - q))

    k_min = max(0, (q - p) // 2)
    k_max = min((J + q) // 2, (J - p) // 2)
    total = 0.0
    for k in range(k_min, k_max + 1):
        k2 = 2 * k
        denom = _fact(J + q - k2) * _fact(k2) * _fact(J - p - k2) * _fact(p - q + k2)
        cos_pow = (2 * J + q - p - 2 * k2) // 2
        sin_pow = (p - q + 2 * k2) // 2
        sign = -1.0 if ((k2 - q + p) // 2) % 2 else 1.0
        total += sign * c**cos_pow * s**sin_pow / denom
    return pref * total


def small_d_matrix(j, theta: float) -> np.ndarray:
    """Full ``(2j+1) x (2j+1)`` small-d matrix, rows and columns m = -j..j."""
    j = half(j)
    ms = list(j.projections())
    out = np.empty((len(ms), len(ms)))
    for a, m1 in enumerate(ms):
        for b, m2 in enumerate(ms):
            out[a, b] = wigner_small_d(j, m1, m2, theta)
    return out
