"""Operation words, their composite affine relation and the residue classes
of integers that realize them.

A word of length ``L`` is ``L - 2`` middle steps followed by the map's
end-of-branch step.  Composing the steps gives ``y = (A*x + C) / B``, i.e.
the Diophantine relation ``C = B*y - A*x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .maps import GROUPED_OF, AffineStep, MapId, get_map, prime_of
from .numtheory import ResidueClass, solve_congruence, solve_linear


class Direction(str, Enum):
    PP = "PP"  # start smaller than end (x < y)
    PG = "PG"  # start larger than end (x > y)

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class OperationWord:
    map_id: MapId
    middle: tuple[int, ...]

    def __post_init__(self) -> None:
        pm = get_map(self.map_id)
        if pm.terminal is None:
            raise ValueError(f"{self.map_id} has no end-of-branch step")
        bad = [i for i in self.middle if i not in pm.middle]
        if bad:
            raise ValueError(f"steps {bad} are not middle steps of {self.map_id}")

    @property
    def length(self) -> int:
        return len(self.middle) + 2

    @property
    def branch_ids(self) -> tuple[int, ...]:
        return self.middle + (get_map(self.map_id).terminal,)

    @property
    def steps(self) -> list[AffineStep]:
        branches = get_map(self.map_id).branches
        return [branches[i] for i in self.branch_ids]

    def __str__(self) -> str:
        return ",".join(s.name for s in self.steps)


@dataclass(frozen=True)
class AffineMap:
    """``y = (A*x + C) / B``, equivalently ``C = B*y - A*x``."""

    A: int
    B: int
    C: int

    def __call__(self, x: int) -> int:
        q, r = divmod(self.A * x + self.C, self.B)
        if r:
            raise ValueError(f"{x} does not give an integer under {self}")
        return q


@dataclass(frozen=True)
class SequenceFamily:
    word: OperationWord
    x_class: ResidueClass
    y_class: ResidueClass
    relation: AffineMap
    direction: Direction

    @property
    def length(self) -> int:
        return self.word.length

    @property
    def modulus(self) -> int:
        return self.x_class.modulus

    def end_of(self, x: int) -> int:
        return self.relation(x)

    def sequence(self, x: int | None = None) -> list[int]:
        """The integers visited from ``x`` (default: least positive member)."""
        if x is None:
            x = self.x_class.least_positive()
        out = [x]
        for s in self.word.steps:
            out.append(s.apply(out[-1]))
        return out


def compose(word: OperationWord) -> AffineMap:
    A, B, C = 1, 1, 0
    for s in word.steps:
        A, B, C = s.mult * A, s.div * B, s.mult * C + s.add * B
    return AffineMap(A, B, C)


def _pull_back(s: AffineStep, target: ResidueClass) -> ResidueClass | None:
    # n in guard with (mult*n + add)/div in target
    # <=> mult*n = div*rep - add (mod div*modulus), then intersect with the guard
    cls = solve_congruence(s.mult, s.div * target.rep - s.add, s.div * target.modulus)
    return None if cls is None else cls.intersect(s.guard)


def word_class(word: OperationWord) -> ResidueClass:
    """Starting class of ``word``, by pulling guards back from the end step."""
    steps = word.steps
    cls: ResidueClass | None = steps[-1].guard
    for s in reversed(steps[:-1]):
        cls = _pull_back(s, cls)
        if cls is None:
            raise AssertionError(f"infeasible word {word}")
    return cls


def compare_endpoints(rel: AffineMap) -> Direction:
    """PG when ``B > A``, PP when ``B < A``; requires ``C > 0``."""
    if rel.C <= 0:
        raise ValueError(f"comparator precondition violated: C = {rel.C} <= 0")
    assert rel.A != rel.B, "A = B cannot occur for coprime prime powers"
    return Direction.PG if rel.B > rel.A else Direction.PP


def _direction_by_members(rel: AffineMap, x_class: ResidueClass) -> Direction:
    # x < y  <=>  (A - B)*x + C > 0, so any member x > |C| carries the sign of A - B
    x = x_class.least_positive() + x_class.modulus * abs(rel.C)
    return Direction.PP if x < rel(x) else Direction.PG


def direction_of(rel: AffineMap, x_class: ResidueClass) -> Direction:
    if rel.C > 0:
        return compare_endpoints(rel)
    return _direction_by_members(rel, x_class)


def solve_word(word: OperationWord) -> SequenceFamily:
    rel = compose(word)
    x_class = word_class(word)
    if x_class.modulus != rel.B:
        raise AssertionError(f"class modulus {x_class.modulus} != B = {rel.B} for {word}")
    y0 = rel(x_class.rep)
    return SequenceFamily(
        word=word,
        x_class=x_class,
        y_class=ResidueClass(y0, rel.A),
        relation=rel,
        direction=direction_of(rel, x_class),
    )


def solve_word_diophantine(word: OperationWord) -> SequenceFamily:
    """Same family as :func:`solve_word`, solved directly from ``C = B*y - A*x``."""
    rel = compose(word)
    sol = solve_linear(rel.C, rel.B, rel.A)
    return SequenceFamily(word, sol.x_class, sol.y_class, rel, direction_of(rel, sol.x_class))


def make_word(map_id: MapId | str, middle: Sequence[int | str]) -> OperationWord:
    """Build a word from middle-step indices or step names such as ``"3n/2"``."""
    map_id = MapId(map_id)
    names = [b.name for b in get_map(map_id).branches]
    ids = tuple(names.index(m) if isinstance(m, str) else m for m in middle)
    return OperationWord(map_id, ids)


def transform_family_to_U(fam: SequenceFamily) -> SequenceFamily:
    """Carry a Frak-map family over to the grouped accelerated map.

    Starts go through ``2n - 1``, ends through ``p*n - (p - 1)/2``; the
    relation becomes ``A' = p*A``, ``B' = 2*B`` with the matching constant.
    """
    src = fam.word.map_id
    if src not in GROUPED_OF:
        raise ValueError(f"{src} is not a Frak map")
    p = prime_of(src)
    h = (p - 1) // 2
    A, B, C = fam.relation.A, fam.relation.B, fam.relation.C
    # x = (xu + 1)/2, y = (yu + h)/p  =>  2B*yu = pA*xu + pA + 2pC - 2hB
    rel = AffineMap(p * A, 2 * B, p * A + 2 * p * C - 2 * h * B)
    x0 = fam.x_class.rep
    xu0 = 2 * x0 - 1
    yu0 = p * fam.relation(x0) - h
    x_class = ResidueClass(xu0, 2 * B)
    return SequenceFamily(
        word=OperationWord(GROUPED_OF[src], fam.word.middle),
        x_class=x_class,
        y_class=ResidueClass(yu0, p * A),
        relation=rel,
        direction=direction_of(rel, x_class),
    )

