"""The piecewise maps of the 3x+1 and 5x+1 problems.

Every map is a list of affine branches ``n -> (mult*n + add) / div``, each
guarded by a residue class; the guards of one map partition its domain.
The two "full" accelerated maps divide out every power of two and are
handled separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .numtheory import ResidueClass


class MapId(str, Enum):
    C3 = "c3"
    T3 = "t3"
    U3_FULL = "u3"
    U3_GROUPED = "u3g"
    FRAK_U3 = "fraku3"
    C5 = "c5"
    T5 = "t5"
    U5_FULL = "u5"
    U5_GROUPED = "u5g"
    FRAK_U5 = "fraku5"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class AffineStep:
    """One branch ``n -> (mult*n + add) / div`` accepting inputs in ``guard``."""

    name: str
    mult: int
    add: int
    div: int
    guard: ResidueClass

    def apply(self, n: int) -> int:
        num = self.mult * n + self.add
        q, r = divmod(num, self.div)
        if r or n not in self.guard:
            raise ValueError(f"{n} is not accepted by branch {self.name}")
        return q

    def preimage(self, m: int) -> int | None:
        """The unique ``n`` in the guard with ``apply(n) == m``, if any."""
        num = self.div * m - self.add
        if num % self.mult:
            return None
        n = num // self.mult
        return n if n in self.guard else None


@dataclass(frozen=True)
class PiecewiseMap:
    id: MapId
    branches: tuple[AffineStep, ...]
    odd_only: bool = False
    # index of the end-of-branch step and the middle-step alphabet, for the
    # maps whose trajectories are cut into sequence families
    terminal: int | None = None
    middle: tuple[int, ...] = field(default=())

    def branch_of(self, n: int) -> int:
        for i, b in enumerate(self.branches):
            if n in b.guard:
                return i
        raise ValueError(f"{n} is outside the domain of {self.id}")


def _rc(r: int, m: int) -> ResidueClass:
    return ResidueClass(r, m)


MAPS: dict[MapId, PiecewiseMap] = {
    MapId.C3: PiecewiseMap(MapId.C3, (
        AffineStep("3n+1", 3, 1, 1, _rc(1, 2)),
        AffineStep("n/2", 1, 0, 2, _rc(0, 2)),
    )),
    MapId.T3: PiecewiseMap(MapId.T3, (
        AffineStep("(3n+1)/2", 3, 1, 2, _rc(1, 2)),
        AffineStep("n/2", 1, 0, 2, _rc(0, 2)),
    )),
    # branch order matches FRAK_U3 so that branch ids correspond
    MapId.U3_GROUPED: PiecewiseMap(MapId.U3_GROUPED, (
        AffineStep("(3n+1)/4", 3, 1, 4, _rc(1, 8)),
        AffineStep("(3n+1)/2", 3, 1, 2, _rc(3, 4)),
        AffineStep("(3n+1)/8", 3, 1, 8, _rc(5, 8)),
    ), odd_only=True, terminal=2, middle=(0, 1)),
    MapId.FRAK_U3: PiecewiseMap(MapId.FRAK_U3, (
        AffineStep("(3n+1)/4", 3, 1, 4, _rc(1, 4)),
        AffineStep("3n/2", 3, 0, 2, _rc(0, 2)),
        AffineStep("(n+1)/4", 1, 1, 4, _rc(3, 4)),
    ), terminal=2, middle=(0, 1)),
    MapId.C5: PiecewiseMap(MapId.C5, (
        AffineStep("5n+1", 5, 1, 1, _rc(1, 2)),
        AffineStep("n/2", 1, 0, 2, _rc(0, 2)),
    )),
    MapId.T5: PiecewiseMap(MapId.T5, (
        AffineStep("(5n+1)/2", 5, 1, 2, _rc(1, 2)),
        AffineStep("n/2", 1, 0, 2, _rc(0, 2)),
    )),
    MapId.U5_GROUPED: PiecewiseMap(MapId.U5_GROUPED, (
        AffineStep("(5n+1)/4", 5, 1, 4, _rc(7, 8)),
        AffineStep("(5n+1)/2", 5, 1, 2, _rc(1, 4)),
        AffineStep("(5n+1)/16", 5, 1, 16, _rc(3, 32)),
        AffineStep("(5n+1)/8", 5, 1, 8, _rc(11, 16)),
        AffineStep("(5n+1)/32", 5, 1, 32, _rc(19, 32)),
    ), odd_only=True, terminal=4, middle=(0, 1, 2, 3)),
    MapId.FRAK_U5: PiecewiseMap(MapId.FRAK_U5, (
        AffineStep("5n/4", 5, 0, 4, _rc(0, 4)),
        AffineStep("(5n-1)/2", 5, -1, 2, _rc(1, 2)),
        AffineStep("(5n+6)/16", 5, 6, 16, _rc(2, 16)),
        AffineStep("(5n+2)/8", 5, 2, 8, _rc(6, 8)),
        AffineStep("(n+6)/16", 1, 6, 16, _rc(10, 16)),
    ), terminal=4, middle=(0, 1, 2, 3)),
}

FULL_MAPS = {MapId.U3_FULL: 3, MapId.U5_FULL: 5}

# Frak map <-> grouped accelerated map, and the end-of-branch correspondence
FRAK_OF = {MapId.U3_GROUPED: MapId.FRAK_U3, MapId.U5_GROUPED: MapId.FRAK_U5}
GROUPED_OF = {v: k for k, v in FRAK_OF.items()}


def prime_of(map_id: MapId | str) -> int:
    return 5 if MapId(map_id).value.rstrip("g").endswith("5") else 3


def family_maps() -> tuple[MapId, ...]:
    return (MapId.FRAK_U3, MapId.U3_GROUPED, MapId.FRAK_U5, MapId.U5_GROUPED)


def get_map(map_id: MapId | str) -> PiecewiseMap:
    map_id = MapId(map_id)
    if map_id in FULL_MAPS:
        raise ValueError(f"{map_id} has no finite branch list")
    return MAPS[map_id]


def ord2(n: int) -> int:
    """Exponent of the largest power of 2 dividing ``n``."""
    if n == 0:
        raise ValueError("ord2(0) is undefined")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class StepRecord:
    input: int
    branch_id: int
    output: int


def step(map_id: MapId | str, n: int) -> StepRecord:
    map_id = MapId(map_id)
    if map_id in FULL_MAPS:
        if n % 2 == 0:
            raise ValueError(f"{map_id}: domain is odd integers, got {n}")
        num = FULL_MAPS[map_id] * n + 1
        e = ord2(num)
        return StepRecord(n, e, num >> e)
    pm = MAPS[map_id]
    if pm.odd_only and n % 2 == 0:
        raise ValueError(f"{map_id}: domain is odd integers, got {n}")
    i = pm.branch_of(n)
    return StepRecord(n, i, pm.branches[i].apply(n))


def branch_label(map_id: MapId | str, branch_id: int) -> str:
    map_id = MapId(map_id)
    if map_id in FULL_MAPS:
        return f"({FULL_MAPS[map_id]}n+1)/2^{branch_id}"
    return MAPS[map_id].branches[branch_id].name


# -- trajectories -----------------------------------------------------------

@dataclass(frozen=True)
class MaxSteps:
    n: int


@dataclass(frozen=True)
class ValueBelow:
    bound: int


@dataclass(frozen=True)
class BranchFired:
    branch_id: int


@dataclass(frozen=True)
class CycleDetected:
    pass


StopRule = MaxSteps | ValueBelow | BranchFired | CycleDetected

DEFAULT_MAX_STEPS = 100_000


@dataclass
class Trajectory:
    start: int
    steps: list[StepRecord]
    status: str  # "value-below" | "branch-fired" | "cycle" | "budget-exhausted"
    cycle: list[int] | None = None

    @property
    def values(self) -> list[int]:
        return [self.start] + [s.output for s in self.steps]

    @property
    def exhausted(self) -> bool:
        return self.status == "budget-exhausted"


def trajectory(map_id: MapId | str, n: int, *rules: StopRule) -> Trajectory:
    """Iterate ``map_id`` from ``n`` until one of ``rules`` fires.

    A ``MaxSteps`` rule sets the step budget (default ``DEFAULT_MAX_STEPS``);
    running out of budget is reported through ``status``, not raised.
    """
    budget = DEFAULT_MAX_STEPS
    below = fired = None
    detect = False
    for r in rules:
        if isinstance(r, MaxSteps):
            budget = r.n
        elif isinstance(r, ValueBelow):
            below = r.bound
        elif isinstance(r, BranchFired):
            fired = r.branch_id
        elif isinstance(r, CycleDetected):
            detect = True
        else:
            raise TypeError(f"unknown stop rule {r!r}")
    steps: list[StepRecord] = []
    seen = {n: 0} if detect else None
    cur = n
    for _ in range(budget):
        rec = step(map_id, cur)
        steps.append(rec)
        cur = rec.output
        if below is not None and cur < below:
            return Trajectory(n, steps, "value-below")
        if fired is not None and rec.branch_id == fired:
            return Trajectory(n, steps, "branch-fired")
        if seen is not None:
            if cur in seen:
                values = [n] + [s.output for s in steps]
                return Trajectory(n, steps, "cycle", values[seen[cur]:-1])
            seen[cur] = len(steps)
    return Trajectory(n, steps, "budget-exhausted")


# -- correspondence between Frak maps and the grouped accelerated maps --------

def correspond_u_from_fraku(n_new: int, role: str, prime: int = 3) -> int:
    """Image of a Frak-map integer in the accelerated-map world.

    ``role`` is ``"end"`` for end-of-branch integers (and triplet
    intermediates), ``"other"`` for everything else.
    """
    if role == "other":
        return 2 * n_new - 1
    if role == "end":
        return prime * n_new - (prime - 1) // 2
    raise ValueError(f"role must be 'end' or 'other', got {role!r}")


def triplet(map_id: MapId | str, n: int) -> tuple[int, int, int]:
    """The (start, intermediate, result) grouping of one step.

    Frak maps repeat the start as the intermediate; grouped accelerated
    maps record ``(p*n+1)/2``.
    """
    map_id = MapId(map_id)
    rec = step(map_id, n)
    if map_id in (MapId.U3_GROUPED, MapId.U5_GROUPED):
        return (n, (prime_of(map_id) * n + 1) // 2, rec.output)
    return (n, n, rec.output)


def correspond_triplet(map_id: MapId | str, n: int) -> tuple[int, int, int]:
    """Map the Frak triplet starting at ``n`` onto its accelerated-map triplet."""
    map_id = MapId(map_id)
    p = prime_of(map_id)
    rec = step(map_id, n)
    end = rec.branch_id == MAPS[map_id].terminal
    return (
        correspond_u_from_fraku(n, "other", p),
        correspond_u_from_fraku(n, "end", p),
        correspond_u_from_fraku(rec.output, "end" if end else "other", p),
    )
