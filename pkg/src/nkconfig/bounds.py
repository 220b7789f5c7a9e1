"""
Upper bounds for N_k, the threshold past which every (n_k) is geometrically realizable.

Everything is exact integer arithmetic; the factorial ratios k!/(t+1)! are
computed as integer quotients so rows for k in the hundreds stay exact.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import BadParams

# Seed facts for k <= 4 from the literature.
KNOWN_THRESHOLDS = {2: 3, 3: 9, 4: 24}
SPORADIC_REALIZABLE = {4: frozenset({18, 20, 21, 22})}
KNOWN_NON_REALIZABLE = {3: frozenset({7, 8}), 4: frozenset({19})}
OPEN_CASES = {4: frozenset({23})}

HAT_BASES = {3: 9, 4: 24}


class Realizability(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class BoundRow:
    k: int
    value: int
    formula: str
    t_used: Optional[int] = None


@dataclass
class BoundTable:
    name: str
    rows: dict[int, BoundRow] = field(default_factory=dict)

    def __getitem__(self, k: int) -> BoundRow:
        return self.rows[k]

    def values(self) -> dict[int, int]:
        return {k: r.value for k, r in self.rows.items()}

    def to_text(self) -> str:
        width = max(len(str(r.value)) for r in self.rows.values())
        out = [f"# {self.name}"]
        for k in sorted(self.rows):
            r = self.rows[k]
            t = f"t={r.t_used}" if r.t_used is not None else ""
            out.append(f"{k:>4}  {r.value:>{width}}  {t:<6} {r.formula}")
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        out = ["k,value,t_used,formula"]
        for k in sorted(self.rows):
            r = self.rows[k]
            t = "" if r.t_used is None else str(r.t_used)
            out.append(f'{k},{r.value},{t},"{r.formula}"')
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class ArithmeticFamily:
    """t-realizable numbers a, a+d, a+2d, ..."""

    t: int
    a: int
    d: int

    def __post_init__(self):
        if self.t < 2 or self.a < 3 or self.d < 1:
            raise BadParams(f"need t >= 2, a >= 3, d >= 1; got {self}")


def bar_step(k: int, prev: int) -> int:
    """One iteration of the replication/switch recursion: (k²-1)·max(prev, k²-2)."""
    if k < 3 or prev < 3:
        raise BadParams(f"bar_step needs k >= 3 and prev >= 3 (got k={k}, prev={prev})")
    return (k * k - 1) * max(prev, k * k - 2)


def table1(start_k: int, start_value: int, max_k: int) -> BoundTable:
    """Iterate :func:`bar_step` from a known (start_k, start_value) up to ``max_k``."""
    table = BoundTable(f"iterated bound from N_{start_k} <= {start_value}")
    table.rows[start_k] = BoundRow(start_k, start_value, "start")
    value = start_value
    for k in range(start_k + 1, max_k + 1):
        value = bar_step(k, value)
        table.rows[k] = BoundRow(k, value, f"({k}^2-1)*max(N_{k - 1}, {k}^2-2)")
    return table


def best_table1(max_k: int) -> BoundTable:
    """Row-wise minimum over the three standard starting points."""
    starts = [table1(s, KNOWN_THRESHOLDS[s], max_k) for s in (2, 3, 4)]
    best = BoundTable("best iterated bound")
    for k in range(2, max_k + 1):
        candidates = [t.rows[k] for t in starts if k in t.rows]
        row = min(candidates, key=lambda r: r.value)
        best.rows[k] = row
    return best


def falling_ratio(k: int, t: int) -> int:
    """k!/(t+1)! as an exact integer (t+1 <= k)."""
    return math.prod(range(t + 2, k + 1))


def n_bound(k: int, t: int, a: int, d: int) -> int:
    """Start of guaranteed consecutive k-configurations from t-realizable a, a+d, ..."""
    if not (2 <= t < k) or a < 3 or d < 1:
        raise BadParams(f"need 2 <= t < k, a >= 3, d >= 1 (got k={k}, t={t}, a={a}, d={d})")
    q = k * k - 1
    if t == k - 1:
        return q * max(a, q * d - 1)
    return q * falling_ratio(k, t) * max(a, q * d)


def band_adjacency_threshold(k: int, t: int, d: int) -> int:
    """Smallest X with X >= (k²-1)d - (t+1)!/k!, where consecutive switch bands touch."""
    if not t < k:
        raise BadParams(f"need t < k (got k={k}, t={t})")
    bound = (k * k - 1) * d - Fraction(math.factorial(t + 1), math.factorial(k))
    return math.ceil(bound)


@lru_cache(maxsize=None)
def _hat(k: int) -> tuple[int, Optional[int]]:
    if k in HAT_BASES:
        return HAT_BASES[k], None
    q = k * k - 1
    best: Optional[tuple[int, int]] = None
    for t in range(3, k):
        value = q * falling_ratio(k, t) * max(_hat(t)[0], q)
        if best is None or value < best[0]:
            best = (value, t)
    assert best is not None
    return best


def hat_value(k: int) -> int:
    if k < 3:
        raise BadParams("the improved bound starts at k = 3")
    # fill the cache bottom-up so deep k does not recurse
    for j in range(5, k):
        _hat(j)
    return _hat(k)[0]


def hat_formula(k: int, t: int) -> str:
    base = _hat(t)[0]
    q = k * k - 1
    inner = f"N^_{t}={base}" if base >= q else f"({k}^2-1)"
    return f"({k}^2-1) * {k}!/{t + 1}! * {inner}"


def hat_table(max_k: int) -> BoundTable:
    """Improved bounds N^_k for k = 5..max_k with the minimizing initial t."""
    if max_k < 5:
        raise BadParams("hat_table needs max_k >= 5")
    table = BoundTable("improved bound (best initial sequence t)")
    for k in range(5, max_k + 1):
        hat_value(k)
        value, t = _hat(k)
        table.rows[k] = BoundRow(k, value, hat_formula(k, t), t)
    return table


def known_realizable(k: int, n: int) -> Realizability:
    """What is known about the existence of a geometric (n_k) configuration."""
    if k < 2 or n < 1:
        return Realizability.NO
    if k == 2:
        return Realizability.YES if n >= 3 else Realizability.NO
    if k == 3:
        return Realizability.YES if n >= 9 else Realizability.NO
    # a point meets k lines each holding k-1 further points, all distinct
    if n < k * k - k + 1:
        return Realizability.NO
    if k == 4:
        if n >= 24 or n in SPORADIC_REALIZABLE[4]:
            return Realizability.YES
        if n in KNOWN_NON_REALIZABLE[4]:
            return Realizability.NO
        return Realizability.UNKNOWN
    if n >= hat_value(k):
        return Realizability.YES
    from .planner import plannable

    if k <= 6 and plannable(k, n):
        return Realizability.YES
    return Realizability.UNKNOWN
