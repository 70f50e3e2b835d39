"""Exact piecewise-linear semantics of tree pairs.

All arithmetic is done with :class:`fractions.Fraction`; there is no floating
point anywhere in here.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .element import Element


class InsufficientDepth(ValueError):
    def __init__(self, digits: str, required: int):
        super().__init__(f"digit string {digits!r} too short: need at least {required} digits")
        self.required = required


def strip_dot(s: str) -> str:
    return s[1:] if s.startswith(".") else s


def digits_value(s: str, k: int) -> Fraction:
    """The rational ``.d1d2...dn`` in base ``k``."""
    s = strip_dot(s)
    num = 0
    for ch in s:
        d = int(ch)
        if d >= k:
            raise ValueError(f"digit {d} out of range for base {k}")
        num = num * k + d
    return Fraction(num, k ** len(s))


def render_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _exact_log(x: Fraction, k: int) -> int:
    e = 0
    while x > 1:
        if x.denominator != 1 or x.numerator % k:
            raise ValueError(f"{x} is not a power of {k}")
        x /= k
        e += 1
    while x < 1:
        if x.numerator != 1 or x.denominator % k:
            raise ValueError(f"{x} is not a power of {k}")
        x *= k
        e -= 1
    return e


@dataclass(frozen=True)
class PLMap:
    arity: int
    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        b, v = self.breakpoints, self.values
        if len(b) != len(v) or len(b) < 2:
            raise ValueError("need matching breakpoint/value lists of length >= 2")
        if b[0] != 0 or b[-1] != 1 or v[0] != 0 or v[-1] != 1:
            raise ValueError("map must fix 0 and 1")
        if any(x >= y for x, y in zip(b, b[1:])) or any(x >= y for x, y in zip(v, v[1:])):
            raise ValueError("breakpoints and values must be strictly increasing")

    def __call__(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if not 0 <= x <= 1:
            raise ValueError(f"{x} outside [0, 1]")
        i = min(bisect_right(self.breakpoints, x) - 1, len(self.breakpoints) - 2)
        b0, b1 = self.breakpoints[i], self.breakpoints[i + 1]
        v0, v1 = self.values[i], self.values[i + 1]
        return v0 + (v1 - v0) / (b1 - b0) * (x - b0)

    def slopes(self) -> list[Fraction]:
        b, v = self.breakpoints, self.values
        return [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1)]

    def log_slopes(self) -> list[int]:
        return [_exact_log(s, self.arity) for s in self.slopes()]

    def simplified(self) -> "PLMap":
        """Drop breakpoints where the slope does not change."""
        s = self.slopes()
        keep = [0] + [i for i in range(1, len(s)) if s[i] != s[i - 1]] + [len(self.breakpoints) - 1]
        return PLMap(self.arity, tuple(self.breakpoints[i] for i in keep), tuple(self.values[i] for i in keep))

    def then(self, other: "PLMap") -> "PLMap":
        """The map ``x -> other(self(x))``."""
        pts = set(self.breakpoints)
        for y in other.breakpoints:
            pts.add(self.inverse()(y))
        b = tuple(sorted(pts))
        return PLMap(self.arity, b, tuple(other(self(x)) for x in b)).simplified()

    def inverse(self) -> "PLMap":
        return PLMap(self.arity, self.values, self.breakpoints)


def to_plmap(g: Element) -> PLMap:
    k = g.arity
    b = [digits_value(a, k) for a in g.plus.addresses] + [Fraction(1)]
    v = [digits_value(a, k) for a in g.minus.addresses] + [Fraction(1)]
    return PLMap(k, tuple(b), tuple(v))


def apply_digits(g: Element, digits: str) -> str:
    """Push a k-ary digit string through the diagram of ``g``.

    The longest top-tree leaf address that prefixes ``digits`` is swapped for
    the matching bottom-tree address; the rest of the string is kept.
    """
    s = strip_dot(digits)
    for a, b in zip(g.plus.addresses, g.minus.addresses):
        if s.startswith(a):
            return b + s[len(a):]
    need = min(len(a) for a in g.plus.addresses if a.startswith(s))
    raise InsufficientDepth(digits, need)


def log_slope_at_0(g: Element) -> int:
    return len(g.plus.addresses[0]) - len(g.minus.addresses[0])


def log_slope_at_1(g: Element) -> int:
    return len(g.plus.addresses[-1]) - len(g.minus.addresses[-1])


@dataclass(frozen=True)
class FixedSet:
    """Fixed points of a map inside (0, 1): isolated points plus closed
    intervals (endpoints 0 and 1 belong to the closure only)."""

    points: tuple[Fraction, ...]
    intervals: tuple[tuple[Fraction, Fraction], ...]

    def is_empty(self) -> bool:
        return not self.points and not self.intervals

    def to_json(self) -> dict:
        return {
            "points": [render_rational(p) for p in self.points],
            "intervals": [[render_rational(a), render_rational(b)] for a, b in self.intervals],
        }


def fixed_points(g: Element) -> FixedSet:
    f = to_plmap(g)
    b, v = f.breakpoints, f.values
    points: set[Fraction] = set()
    intervals: list[tuple[Fraction, Fraction]] = []
    for i, s in enumerate(f.slopes()):
        lo, hi = b[i], b[i + 1]
        if s == 1:
            if v[i] == lo:
                intervals.append((lo, hi))
            continue
        x = (v[i] - s * lo) / (1 - s)
        if lo <= x <= hi:
            points.add(x)
    merged: list[tuple[Fraction, Fraction]] = []
    for lo, hi in sorted(intervals):
        if merged and merged[-1][1] >= lo:
            merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))
        else:
            merged.append((lo, hi))
    inner = sorted(
        p for p in points if 0 < p < 1 and not any(lo <= p <= hi for lo, hi in merged)
    )
    return FixedSet(tuple(inner), tuple(merged))


def stabilizes_point(g: Element, x: Fraction) -> bool:
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError(f"point {x} must lie in (0, 1)")
    return to_plmap(g)(x) == x


def sample_points(k: int, depth: int) -> list[Fraction]:
    """All k-adic rationals in (0, 1) with denominator dividing ``k**depth``."""
    n = k ** depth
    return [Fraction(i, n) for i in range(1, n)]


def compose(maps: Sequence[PLMap]) -> PLMap:
    out = maps[0]
    for m in maps[1:]:
        out = out.then(m)
    return out
