"""
Recipes that realize a target (n_k) from multilaterals and the Pappus configuration.

A plan is a chain ``Seed -> Replicate -> ... -> Replicate [-> SwitchBand]``
where nested levels may themselves end in a switch before the next
replication. Planning is pure integer bookkeeping; :func:`execute` runs the
geometry and returns a verified configuration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from .bounds import bar_step
from .configuration import Configuration, Pencil, largest_pencil, verify
from .constructions import affine_replication, affine_switch
from .errors import BadParams, NotCoveredByKit, ResourceLimit
from . import seeds

# Exact verification is quadratic in n; beyond this we only plan.
EXECUTION_LIMIT_N = 2500
EXECUTION_LIMIT_K = 5

# Orders reachable straight from the Pappus seed at k = 3: the seed and its switch band.
PAPPUS_ORDERS = {9: 0, 19: 1, 20: 2, 21: 3}


@dataclass(frozen=True)
class Seed:
    kind: str
    size: int

    def to_json(self) -> dict:
        return {"op": "seed", "kind": self.kind, "size": self.size}


@dataclass(frozen=True)
class Replicate:
    k_target: int

    def to_json(self) -> dict:
        return {"op": "replicate", "k": self.k_target}


@dataclass(frozen=True)
class SwitchBand:
    r: int

    def to_json(self) -> dict:
        return {"op": "switch", "r": self.r}


Step = Union[Seed, Replicate, SwitchBand]


def step_from_json(doc: dict) -> Step:
    op = doc["op"]
    if op == "seed":
        return Seed(doc["kind"], int(doc["size"]))
    if op == "replicate":
        return Replicate(int(doc["k"]))
    if op == "switch":
        return SwitchBand(int(doc["r"]))
    raise ValueError(f"unknown plan step {op!r}")


@dataclass(frozen=True)
class ConstructionPlan:
    k: int
    n: int
    steps: tuple[Step, ...]

    def __post_init__(self):
        k, n = simulate(self.steps)
        if (k, n) != (self.k, self.n):
            raise ValueError(f"steps produce ({n}_{k}), plan claims ({self.n}_{self.k})")

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, doc: dict) -> "ConstructionPlan":
        return cls(int(doc["k"]), int(doc["n"]), tuple(step_from_json(s) for s in doc["steps"]))

    def describe(self) -> str:
        parts = []
        for s in self.steps:
            if isinstance(s, Seed):
                parts.append(f"{s.kind}({s.size})")
            elif isinstance(s, Replicate):
                parts.append(f"AR(k={s.k_target})")
            else:
                parts.append(f"AS(r={s.r})")
        return " -> ".join(parts) + f"  =>  ({self.n}_{self.k})"


def simulate(steps: tuple[Step, ...]) -> tuple[int, int]:
    """Type-check a step chain and return the (k, n) it produces.

    Tracks the pencil available to a switch: the ``m`` new lines after a
    replication of an (m_{k-1}), or the 3-pencil of the Pappus seed.
    """
    if not steps or not isinstance(steps[0], Seed):
        raise ValueError("a plan starts with a Seed")
    first = steps[0]
    if first.kind == "multilateral":
        if first.size < 3:
            raise ValueError("multilateral seed needs size >= 3")
        k, n, pencil = 2, first.size, None
    elif first.kind == "pappus":
        k, n, pencil = 3, 9, 3
    else:
        raise ValueError(f"unknown seed kind {first.kind!r}")
    for s in steps[1:]:
        if isinstance(s, Replicate):
            if s.k_target != k + 1:
                raise ValueError(f"Replicate({s.k_target}) applied to a k={k} configuration")
            k, n, pencil = k + 1, (k + 2) * n, n
        elif isinstance(s, SwitchBand):
            if pencil is None or not 1 <= s.r <= pencil:
                raise ValueError(f"SwitchBand(r={s.r}) needs a pencil of at least r lines")
            n, pencil = (k - 1) * n + s.r, None
        else:
            raise ValueError("Seed may only start a plan")
    return k, n


@lru_cache(maxsize=None)
def _recipe(k: int, n: int) -> Optional[tuple[Step, ...]]:
    if k == 2:
        return (Seed("multilateral", n),) if n >= 3 else None
    if k == 3 and n in PAPPUS_ORDERS:
        r = PAPPUS_ORDERS[n]
        return (Seed("pappus", 9),) + ((SwitchBand(r),) if r else ())
    if n % (k + 1) == 0:
        sub = _recipe(k - 1, n // (k + 1))
        if sub is not None:
            return sub + (Replicate(k),)
    q = k * k - 1
    x = (n - 1) // q
    while x >= 3 and n - q * x <= x:
        sub = _recipe(k - 1, x)
        if sub is not None:
            return sub + (Replicate(k), SwitchBand(n - q * x))
        x -= 1
    return None


def plannable(k: int, n: int) -> bool:
    return k >= 2 and _recipe(k, n) is not None


def plan(k: int, n: int) -> ConstructionPlan:
    """Recipe for an (n_k) configuration built only from the kit's seeds.

    Prefers a pure replication ``n = (k+1)X``; otherwise ``n = (k²-1)X + r``
    with ``1 <= r <= X`` and the largest workable ``X``.
    """
    if k < 2:
        raise BadParams("k must be at least 2")
    steps = _recipe(k, n)
    if steps is None:
        raise NotCoveredByKit(f"no recipe for ({n}_{k}) from multilaterals and Pappus")
    return ConstructionPlan(k, n, steps)


def guaranteed_from(k: int) -> int:
    """Constructive threshold G_k: G_2 = 3, G_k = bar_step(k, G_{k-1})."""
    g = 3
    for j in range(3, k + 1):
        g = bar_step(j, g)
    return g


@dataclass(frozen=True)
class CoverageCertificate:
    k: int
    guaranteed_from: int
    sporadic: frozenset[int]
    plannable: frozenset[int] = field(default_factory=frozenset)
    up_to: int = 0

    def gaps(self) -> list[int]:
        """Unplannable n in [guaranteed_from, up_to]; empty when the certificate holds."""
        return [n for n in range(self.guaranteed_from, self.up_to + 1) if n not in self.plannable]


def coverage(k: int, up_to: int, max_k: int = EXECUTION_LIMIT_K) -> CoverageCertificate:
    if k < 2:
        raise BadParams("k must be at least 2")
    if k > max_k:
        raise ResourceLimit(f"coverage enumeration limited to k <= {max_k}")
    g = guaranteed_from(k)
    found = frozenset(n for n in range(1, up_to + 1) if plannable(k, n))
    return CoverageCertificate(k, g, frozenset(n for n in found if n < g), found, up_to)


def execute(p: ConstructionPlan, seed: int = 0, *, enforce_limit: bool = True) -> Configuration:
    """Run a plan and return the verified configuration, with the plan in its meta."""
    if enforce_limit and (p.k > EXECUTION_LIMIT_K or p.n > EXECUTION_LIMIT_N):
        raise ResourceLimit(f"({p.n}_{p.k}) exceeds the execution budget "
                            f"(k <= {EXECUTION_LIMIT_K}, n <= {EXECUTION_LIMIT_N}); plan only")
    first = p.steps[0]
    pencil: Optional[Pencil]
    if first.kind == "pappus":
        config = seeds.pappus()
        pencil = largest_pencil(config)
    else:
        config = seeds.multilateral(first.size)
        pencil = None
    for step in p.steps[1:]:
        if isinstance(step, Replicate):
            res = affine_replication(config, step.k_target, seed=seed)
            config, pencil = res.output, res.new_pencil
        else:
            sw = affine_switch(config, pencil, None, s=step.r, t=0, seed=seed)
            config, pencil = sw.output, None
    if (config.k, config.n) != (p.k, p.n):
        raise AssertionError(f"executed ({config.n}_{config.k}), planned ({p.n}_{p.k})")
    if len(p.steps) == 1:
        # a bare seed skipped the constructions' own verification
        report = verify(config)
        if not report.ok:
            raise AssertionError(f"seed failed verification: {report.violations[:3]}")
    return config.with_meta(plan=p.to_json())
