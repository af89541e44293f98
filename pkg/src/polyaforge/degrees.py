"""Degree sets: possibly cofinite sets of allowed degrees or outdegrees.

A set is stored as a finite part plus an optional tail threshold t meaning
"every integer >= t is included".  Sets are normalized so that the finite
part lies strictly below the tail and the tail threshold is minimal; this
makes structural equality coincide with set equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import InvalidDegreeSet


@dataclass(frozen=True)
class DegreeSet:
    finite_part: frozenset[int]
    tail_min: int | None = None

    @staticmethod
    def make(values=(), tail_min: int | None = None) -> "DegreeSet":
        finite = set(int(v) for v in values)
        if any(v < 0 for v in finite):
            raise InvalidDegreeSet("negative entries are not allowed")
        if tail_min is not None:
            tail_min = int(tail_min)
            if tail_min < 0:
                raise InvalidDegreeSet("tail threshold must be >= 0")
            finite = {v for v in finite if v < tail_min}
            # pull the tail down over contiguous finite entries
            while tail_min - 1 in finite:
                tail_min -= 1
                finite.discard(tail_min)
        return DegreeSet(frozenset(finite), tail_min)

    @staticmethod
    def parse(text: str) -> "DegreeSet":
        """Parse "1,3" (finite) or "1,2,3+" (all integers >= 3 plus 1, 2)."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise InvalidDegreeSet(f"empty degree set: {text!r}")
        tail = None
        values = []
        for i, p in enumerate(parts):
            if p.endswith("+"):
                if i != len(parts) - 1:
                    raise InvalidDegreeSet(f"tail marker must be last: {text!r}")
                tail = int(p[:-1])
            else:
                values.append(int(p))
        return DegreeSet.make(values, tail)

    # -- queries ------------------------------------------------------------

    def __contains__(self, k: int) -> bool:
        if k < 0:
            return False
        if self.tail_min is not None and k >= self.tail_min:
            return True
        return k in self.finite_part

    def is_empty(self) -> bool:
        return not self.finite_part and self.tail_min is None

    def min_element(self) -> int | None:
        cands = list(self.finite_part)
        if self.tail_min is not None:
            cands.append(self.tail_min)
        return min(cands) if cands else None

    def max_finite(self) -> int:
        """Largest explicitly stored value (0 if none); tails stretch beyond."""
        m = max(self.finite_part, default=0)
        if self.tail_min is not None:
            m = max(m, self.tail_min)
        return m

    def elements_upto(self, limit: int) -> list[int]:
        return [k for k in range(limit + 1) if k in self]

    # -- algebra ------------------------------------------------------------

    def shift(self, j: int) -> "DegreeSet":
        """The set {x - j : x in self, x >= j}."""
        finite = {v - j for v in self.finite_part if v >= j}
        tail = None if self.tail_min is None else max(0, self.tail_min - j)
        return DegreeSet.make(finite, tail)

    def shifted_down_one(self) -> "DegreeSet":
        return self.shift(1)

    @property
    def period(self) -> int:
        """gcd of the nonzero elements (1 for tail sets; 0 if only {0})."""
        if self.tail_min is not None:
            # a tail contains two consecutive integers >= 1
            nz = [v for v in self.finite_part if v > 0]
            return reduce(math.gcd, nz, math.gcd(max(self.tail_min, 1), max(self.tail_min, 1) + 1))
        nz = [v for v in self.finite_part if v > 0]
        return reduce(math.gcd, nz, 0)

    # -- validation ---------------------------------------------------------

    def validate_as_omega(self) -> None:
        """Degree sets Omega must be positive integers containing 1 and some k >= 3."""
        if 0 in self:
            raise InvalidDegreeSet(f"{self} must contain positive integers only")
        if 1 not in self:
            raise InvalidDegreeSet(f"{self} must contain 1")
        if self.tail_min is None and not any(v >= 3 for v in self.finite_part):
            raise InvalidDegreeSet(f"{self} must contain some k >= 3")

    def validate_as_omega_star(self) -> None:
        """Outdegree sets Omega* must contain 0 and some k >= 2."""
        if 0 not in self:
            raise InvalidDegreeSet(f"{self} must contain 0")
        if self.tail_min is None and not any(v >= 2 for v in self.finite_part):
            raise InvalidDegreeSet(f"{self} must contain some k >= 2")

    # -- misc ---------------------------------------------------------------

    def key(self) -> str:
        parts = [str(v) for v in sorted(self.finite_part)]
        if self.tail_min is not None:
            parts.append(f"{self.tail_min}+")
        return ",".join(parts)

    def __str__(self) -> str:
        return "{" + self.key() + "}"


def omega_star_of(omega: DegreeSet) -> DegreeSet:
    """Shifted outdegree set Omega* = Omega - 1."""
    omega.validate_as_omega()
    return omega.shift(1)


NATURALS = DegreeSet.make((), 1)          # all degrees >= 1
NATURALS_WITH_ZERO = DegreeSet.make((), 0)  # all outdegrees >= 0
