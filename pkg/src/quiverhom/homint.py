"""Tri-state homological integers.

Dimension-like quantities come in four flavours: an exact non-negative
integer, certified infinity (a periodicity certificate exists), "unknown
above a floor" (a depth limit was hit at `floor` steps without periodicity),
and the distinguished value of the zero module (minus infinity, excluded
from sup/max aggregations).  All of them are intervals [lo, hi] on the
extended integer line; a value is exact iff lo == hi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

INF = float("inf")
NEG_INF = float("-inf")

Extended = Union[int, float]


@dataclass(frozen=True)
class HomInt:
    lo: Extended
    hi: Extended

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def exact(n: int) -> "HomInt":
        return HomInt(n, n)

    @staticmethod
    def infinite() -> "HomInt":
        return HomInt(INF, INF)

    @staticmethod
    def none() -> "HomInt":
        """pd/id of the zero module."""
        return HomInt(NEG_INF, NEG_INF)

    @staticmethod
    def at_least(n: int) -> "HomInt":
        """Lower bound only: true value is >= n (possibly infinite)."""
        return HomInt(n, INF)

    # -- predicates ----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def is_finite_exact(self) -> bool:
        return self.is_exact and isinstance(self.lo, int)

    @property
    def is_infinite(self) -> bool:
        return self.lo == INF

    @property
    def is_none(self) -> bool:
        return self.hi == NEG_INF

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "HomInt") -> "HomInt":
        return HomInt(_add(self.lo, other.lo), _add(self.hi, other.hi))

    def __sub__(self, other: "HomInt") -> "HomInt":
        # a - b: lowest when b largest.
        return HomInt(_sub(self.lo, other.hi), _sub(self.hi, other.lo))

    def max(self, other: "HomInt") -> "HomInt":
        return HomInt(max(self.lo, other.lo), max(self.hi, other.hi))

    def plus(self, n: int) -> "HomInt":
        return self + HomInt.exact(n)

    # -- comparisons (three-valued) -------------------------------------------

    def certainly_le(self, other: "HomInt") -> bool:
        return self.hi <= other.lo

    def certainly_gt(self, other: "HomInt") -> bool:
        return self.lo > other.hi

    def equals_exactly(self, other: "HomInt") -> bool:
        return self.is_exact and other.is_exact and self.lo == other.lo

    # -- rendering -------------------------------------------------------------

    def to_json(self):
        if self.is_none:
            return "none"
        if self.is_infinite:
            return "infinite"
        if self.is_exact:
            return int(self.lo)
        if self.hi == INF:
            return {"at_least": int(self.lo)}
        return {"at_least": int(self.lo), "at_most": int(self.hi)}

    def __str__(self):
        j = self.to_json()
        return str(j) if not isinstance(j, dict) else f">={j['at_least']}"


def _add(a: Extended, b: Extended) -> Extended:
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    if a == INF or b == INF:
        return INF
    return a + b


def _sub(a: Extended, b: Extended) -> Extended:
    if a == INF and b == INF:
        # sup-side slack: a - b is unconstrained below; callers treat the
        # resulting bound as vacuous.
        return NEG_INF
    if b == INF:
        return NEG_INF
    if b == NEG_INF:
        return INF
    return _add(a, -b)


def hmax(*values: HomInt) -> HomInt:
    """max that skips distinguished 'none' values; none when all are none."""
    live = [v for v in values if not v.is_none]
    if not live:
        return HomInt.none()
    out = live[0]
    for v in live[1:]:
        out = out.max(v)
    return out
