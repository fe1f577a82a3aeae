"""Integer-friendly logarithm utilities and tetration.

``lg`` is the base-2 logarithm clipped to a nonnegative range, ``logk`` its
k-fold composition, ``logstar`` the iterated logarithm.  All of them accept
arbitrarily large Python integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded

TOLERANCE = 1e-9
DEFAULT_BIT_BUDGET = 10**6


def lg(n: float) -> float:
    if n >= 1:
        return math.log2(n)
    return 0.0


def logk(k: int, n: float) -> float:
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = n
    for _ in range(k):
        x = lg(x)
    return x


def logstar(n: float) -> int:
    k = 0
    x = n
    while x > 1:
        x = lg(x)
        k += 1
    return k


def tetration(x: int, k: int, max_bits: int = DEFAULT_BIT_BUDGET) -> int:
    """Return ``x`` raised to itself ``k`` times (``x↑↑k``), exactly.

    Raises BudgetExceeded when an intermediate power would need more than
    ``max_bits`` bits.
    """
    if x < 1 or k < 0:
        raise ValueError("tetration needs x >= 1 and k >= 0")
    value = 1
    for _ in range(k):
        if x > 1 and (value > max_bits or value * math.log2(x) > max_bits):
            raise BudgetExceeded(f"{x}↑↑{k} exceeds {max_bits} bits")
        value = x**value
    return value


_KINDS = ("identity", "linear", "sqrt", "cuberoot", "logk", "logstar")


@dataclass(frozen=True)
class BoundFn:
    """A named growth function used to compare measured turn curves.

    ``coef`` scales the argument (``sqrt`` with coef 2 is sqrt(2n)) and
    ``floor`` clips the value from below.
    """

    kind: str
    k: int = 0
    coef: float = 1.0
    floor: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown bound kind {self.kind!r}")
        if self.k < 0:
            raise ValueError("k must be nonnegative")

    def raw(self, n: int) -> float:
        x = self.coef * n
        if self.kind in ("identity", "linear"):
            return float(x)
        if self.kind == "sqrt":
            return math.sqrt(x)
        if self.kind == "cuberoot":
            return x ** (1.0 / 3.0)
        if self.kind == "logk":
            return float(logk(self.k, x))
        return float(logstar(x))

    def __call__(self, n: int) -> float:
        return max(self.floor, self.raw(n))

    def label(self) -> str:
        if self.kind == "logk":
            return f"logk:{self.k}"
        if self.coef != 1.0:
            return f"{self.kind}:{self.coef:g}"
        return self.kind

    @classmethod
    def parse(cls, text: str, floor: float = 0.0) -> BoundFn:
        """Parse ``kind[:param]``: ``logk:2``, ``sqrt:2``, ``logstar``, ``linear``."""
        kind, _, param = text.partition(":")
        kind = kind.strip().lower()
        if kind == "logk":
            if not param:
                raise ValueError("logk needs an order, e.g. logk:2")
            return cls("logk", k=int(param), floor=floor)
        if kind not in _KINDS:
            raise ValueError(f"unknown bound kind {kind!r}")
        coef = float(param) if param else 1.0
        return cls(kind, coef=coef, floor=floor)
