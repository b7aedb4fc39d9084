from __future__ import annotations

import functools
from fractions import Fraction


@functools.total_ordering
class HalfInteger:
    """Exact multiple of 1/2, stored as twice its value."""

    __slots__ = ("twice",)

    def __init__(self, twice_value: int):
        self.twice = int(twice_value)

    @classmethod
    def of(cls, value) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        f = Fraction(value) * 2
        if f.denominator != 1:
            raise ValueError(f"{value!r} is not a multiple of 1/2")
        return cls(int(f))

    @classmethod
    def parse(cls, text: str) -> "HalfInteger":
        text = text.strip()
        if text.endswith("/2"):
            return cls(int(text[:-2]))
        return cls(2 * int(text))

    @property
    def twice_value(self) -> int:
        return self.twice

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __int__(self) -> int:
        if self.twice % 2:
            raise ValueError(f"{self} is not an integer")
        return self.twice // 2

    def _coerce(self, other):
        if isinstance(other, HalfInteger):
            return other.twice
        if isinstance(other, int):
            return 2 * other
        return NotImplemented

    def __add__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is NotImplemented else HalfInteger(self.twice + t)

    __radd__ = __add__

    def __sub__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is NotImplemented else HalfInteger(self.twice - t)

    def __rsub__(self, other):
        t = self._coerce(other)
        return NotImplemented if t is NotImplemented else HalfInteger(t - self.twice)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return HalfInteger(self.twice * k)

    __rmul__ = __mul__

    def __neg__(self):
        return HalfInteger(-self.twice)

    def __eq__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            if isinstance(other, Fraction):
                return self.as_fraction() == other
            return NotImplemented
        return self.twice == t

    def __lt__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return NotImplemented
        return self.twice < t

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self):
        return f"HalfInteger({self})"
