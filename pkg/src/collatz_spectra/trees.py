"""Branches, chains of branches and the inverse-image tree of the Frak maps."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .affine import Direction
from .maps import MapId, StepRecord, correspond_u_from_fraku, get_map, prime_of, step

DEFAULT_BUDGET = 1_000_000

COMPLETE = "complete"
EXHAUSTED = "budget-exhausted"
CYCLE = "cycle"


def _frak_map(map_id: MapId | str) -> MapId:
    map_id = MapId(map_id)
    if map_id not in (MapId.FRAK_U3, MapId.FRAK_U5):
        raise ValueError(f"branches are defined for fraku3 and fraku5, not {map_id}")
    return map_id


@dataclass
class Branch:
    map_id: MapId
    start: int
    steps: list[StepRecord]
    status: str = COMPLETE

    @property
    def values(self) -> list[int]:
        return [self.start] + [s.output for s in self.steps]

    @property
    def end(self) -> int:
        return self.steps[-1].output if self.steps else self.start

    @property
    def length(self) -> int:
        return len(self.steps) + 1

    @property
    def complete(self) -> bool:
        return self.status == COMPLETE

    @property
    def direction(self) -> Direction:
        return Direction.PP if self.start < self.end else Direction.PG

    @property
    def middle(self) -> tuple[int, ...]:
        return tuple(s.branch_id for s in self.steps[:-1])

    def __str__(self) -> str:
        return "→".join(map(str, self.values))


def branch_from(map_id: MapId | str, n: int, budget: int = DEFAULT_BUDGET) -> Branch:
    """Iterate from ``n`` until the end-of-branch step fires once.

    A value repeating before that (the fixed point 1 of fraku3) gives
    status ``"cycle"``; running out of ``budget`` steps gives
    ``"budget-exhausted"`` with the partial branch.
    """
    map_id = _frak_map(map_id)
    terminal = get_map(map_id).terminal
    steps: list[StepRecord] = []
    seen = {n}
    cur = n
    for _ in range(budget):
        rec = step(map_id, cur)
        steps.append(rec)
        if rec.branch_id == terminal:
            return Branch(map_id, n, steps)
        cur = rec.output
        if cur in seen:
            return Branch(map_id, n, steps, CYCLE)
        seen.add(cur)
    return Branch(map_id, n, steps, EXHAUSTED)


@dataclass
class ChainLevel:
    level: int
    branch: Branch
    vs_origin: Direction  # x_1 against y_j
    vs_level: Direction  # x_j against y_j


@dataclass
class Chain:
    map_id: MapId
    start: int
    levels: list[ChainLevel] = field(default_factory=list)

    @property
    def branches(self) -> list[Branch]:
        return [lv.branch for lv in self.levels]

    @property
    def complete(self) -> bool:
        return all(lv.branch.complete for lv in self.levels)

    def __iter__(self):
        return iter(self.levels)

    def __len__(self) -> int:
        return len(self.levels)


def chain_from(map_id: MapId | str, n: int, max_levels: int, budget: int = DEFAULT_BUDGET) -> Chain:
    """Successive branches, each starting where the previous one ended.

    Stops early at the first incomplete branch (budget or cycle).
    """
    map_id = _frak_map(map_id)
    chain = Chain(map_id, n)
    cur = n
    for j in range(1, max_levels + 1):
        b = branch_from(map_id, cur, budget)
        vs_origin = Direction.PP if n < b.end else Direction.PG
        chain.levels.append(ChainLevel(j, b, vs_origin, b.direction))
        if not b.complete:
            break
        cur = b.end
    return chain


def preimages(map_id: MapId | str, m: int) -> list[tuple[int, int]]:
    """All ``(n, branch_id)`` with ``step(map_id, n)`` landing on ``m``."""
    pm = get_map(_frak_map(map_id))
    out = []
    for i, b in enumerate(pm.branches):
        n = b.preimage(m)
        if n is not None:
            out.append((n, i))
    return sorted(out)


def branch_into(map_id: MapId | str, m: int, budget: int = DEFAULT_BUDGET) -> Branch:
    """The maximal branch ending at ``m``.

    Its last step is the end-of-branch preimage of ``m``; earlier steps
    follow the unique middle-step preimage back to an integer that has none.
    """
    map_id = _frak_map(map_id)
    pm = get_map(map_id)
    terminal = pm.terminal
    n = pm.branches[terminal].preimage(m)
    rev = [StepRecord(n, terminal, m)]
    seen = {n, m}
    status = COMPLETE
    for _ in range(budget):
        pre = [(k, i) for k, i in preimages(map_id, n) if i != terminal]
        assert len(pre) <= 1, f"{n} has several middle preimages"
        if not pre or pre[0][0] in seen:
            break
        k, i = pre[0]
        rev.append(StepRecord(k, i, n))
        seen.add(k)
        n = k
    else:
        status = EXHAUSTED
    rev.reverse()
    return Branch(map_id, rev[0].input, rev, status)


@dataclass
class BranchTree:
    map_id: MapId
    nodes: set[int] = field(default_factory=set)
    edges: dict[int, tuple[int, int]] = field(default_factory=dict)  # n -> (image, branch id)
    branches: list[Branch] = field(default_factory=list)

    @property
    def trunk(self) -> Branch | None:
        return self.branches[0] if self.branches else None

    def u_image(self) -> dict[int, int]:
        """Node-by-node image in the grouped accelerated map's tree."""
        p = prime_of(self.map_id)
        ends = {b.end for b in self.branches}
        return {n: correspond_u_from_fraku(n, "end" if n in ends else "other", p) for n in self.nodes}


def build_tree(map_id: MapId | str, node_budget: int, root: int = 1) -> BranchTree:
    """Grow the tree breadth-first from the trunk (the branch into ``root``).

    Every node gets the branch ending at it; branches are added whole
    until ``node_budget`` nodes are placed (a branch that would overflow
    the budget is cut after its last new node fits).
    """
    map_id = _frak_map(map_id)
    tree = BranchTree(map_id)
    if node_budget <= 0:
        return tree
    queue = deque([root])
    done: set[int] = set()
    while queue and len(tree.nodes) < node_budget:
        m = queue.popleft()
        if m in done:
            continue
        done.add(m)
        b = branch_into(map_id, m)
        kept = []
        for rec in reversed(b.steps):
            if len(tree.nodes) >= node_budget and rec.input not in tree.nodes:
                break
            kept.append(rec)
            if m not in tree.nodes:
                tree.nodes.add(m)
            tree.nodes.add(rec.input)
            tree.edges[rec.input] = (rec.output, rec.branch_id)
        if not kept:
            continue
        kept.reverse()
        tree.branches.append(Branch(map_id, kept[0].input, kept, b.status))
        for rec in kept:
            queue.append(rec.input)
    return tree


def export_dot(tree: BranchTree, name: str | None = None) -> str:
    """Graphviz text with sorted nodes and edges; edges carry the branch's PP/PG."""
    pm = get_map(tree.map_id)
    name = name or str(tree.map_id)
    direction = {}
    for b in tree.branches:
        for rec in b.steps:
            direction[rec.input] = b.direction
    lines = [f"digraph {name} {{"]
    for n in sorted(tree.nodes):
        lines.append(f'  "{n}";')
    for src in sorted(tree.edges):
        dst, bid = tree.edges[src]
        lines.append(
            f'  "{src}" -> "{dst}" [label="{pm.branches[bid].name}", '
            f'direction="{direction.get(src, "")}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
