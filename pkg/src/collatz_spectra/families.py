"""Sequence families per length with their geometric-series densities.

The multi-level rising fraction is computed as an exact dynamic programme.

Only the exponents of a word's composite relation matter for densities:
a word of length ``L`` has ``A = p**(L-2)`` and ``B = 2**e`` (Frak maps),
so words are aggregated into an *exponent spectrum* ``{(e, L-2): count}``.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .affine import Direction, OperationWord, SequenceFamily, solve_word
from .maps import FRAK_OF, MapId, get_map, prime_of
from .numtheory import geometric_sum

MAX_ENUMERATED_WORDS = 1 << 20


def _frak(map_id: MapId) -> MapId:
    return FRAK_OF.get(map_id, map_id)


def _check_family_map(map_id: MapId | str) -> MapId:
    map_id = MapId(map_id)
    if get_map(map_id).terminal is None:
        raise ValueError(f"{map_id} has no sequence families; use fraku3, u3g, fraku5 or u5g")
    return map_id


@dataclass
class FamilyTable:
    map_id: MapId
    L: int
    families: list[SequenceFamily]

    def by_increment(self) -> dict[int, list[SequenceFamily]]:
        out: dict[int, list[SequenceFamily]] = {}
        for f in self.families:
            out.setdefault(f.modulus, []).append(f)
        return dict(sorted(out.items()))

    def increment_counts(self) -> dict[int, int]:
        return {m: len(fs) for m, fs in self.by_increment().items()}

    def density(self) -> Fraction:
        return sum((f.x_class.density() for f in self.families), Fraction(0))

    def pp(self) -> list[SequenceFamily]:
        return [f for f in self.families if f.direction is Direction.PP]


def enumerate_families(map_id: MapId | str, L: int) -> FamilyTable:
    """All families of length ``L``, sorted by modulus then least positive start."""
    map_id = _check_family_map(map_id)
    if L < 2:
        raise ValueError("L must be >= 2")
    alphabet = get_map(map_id).middle
    if len(alphabet) ** (L - 2) > MAX_ENUMERATED_WORDS:
        raise ValueError(
            f"{len(alphabet)}**{L - 2} words is too many to enumerate; "
            "use the exponent-spectrum functions (pp_distribution_table, rising_fraction)"
        )
    fams = [solve_word(OperationWord(map_id, w)) for w in itertools.product(alphabet, repeat=L - 2)]
    fams.sort(key=lambda f: (f.modulus, f.x_class.least_positive()))
    return FamilyTable(map_id, L, fams)


# -- exponent spectra -------------------------------------------------------

@lru_cache(maxsize=None)
def _middle_exponent_counts(map_id: MapId, k: int) -> tuple[tuple[int, int], ...]:
    """``{sum of log2(div) over k middle steps: number of words}``, sorted."""
    pm = get_map(_frak(map_id))
    exps = [pm.branches[i].div.bit_length() - 1 for i in pm.middle]
    if k == 0:
        return ((0, 1),)
    prev = dict(_middle_exponent_counts(map_id, k - 1))
    cur: dict[int, int] = defaultdict(int)
    for e, c in prev.items():
        for d in exps:
            cur[e + d] += c
    return tuple(sorted(cur.items()))


def length_spectrum(map_id: MapId | str, L: int) -> dict[int, int]:
    """``{log2(modulus of the Frak family): number of words}`` for length ``L``.

    Counts are binomial coefficients for the 3x+1 alphabet and sums of
    multinomial coefficients for the 5x+1 alphabet.
    """
    map_id = _check_family_map(map_id)
    pm = get_map(_frak(map_id))
    t = pm.branches[pm.terminal].div.bit_length() - 1
    return {e + t: c for e, c in _middle_exponent_counts(map_id, L - 2)}


def _pp_scale(map_id: MapId) -> tuple[int, int]:
    # Frak maps compare B < A; grouped accelerated maps compare 2B < p*A
    if map_id in FRAK_OF:
        return prime_of(map_id), 2
    return 1, 1


def _max_e2(map_id: MapId, eo: int) -> int:
    """Largest ``e`` with ``2**e`` strictly below the end coefficient at ``p**eo``."""
    mul_a, mul_b = _pp_scale(map_id)
    v = mul_a * prime_of(map_id) ** eo
    return (-(-v // mul_b) - 1).bit_length() - 1


def distribution_DL(map_id: MapId | str, L: int) -> Fraction:
    """Density of starts of length-``L`` families: ``a * r**(L-2)``."""
    map_id = _check_family_map(map_id)
    if L < 2:
        raise ValueError("L must be >= 2")
    a, r = _series(map_id)
    return a * r ** (L - 2)


def cumulative_SL(map_id: MapId | str, L: int) -> Fraction:
    """Density covered by lengths ``2..L``; equals ``1 - r**(L-1)``."""
    map_id = _check_family_map(map_id)
    if L < 2:
        raise ValueError("L must be >= 2")
    a, r = _series(map_id)
    return geometric_sum(a, r, L - 1)


def _series(map_id: MapId) -> tuple[Fraction, Fraction]:
    pm = get_map(_frak(map_id))
    a = Fraction(1, pm.branches[pm.terminal].div)
    r = sum((Fraction(1, pm.branches[i].div) for i in pm.middle), Fraction(0))
    return a, r


# -- pp distribution per length ------------------------------------------------

@dataclass
class PPRow:
    L: int
    moduli: list[tuple[int, int]]  # (modulus, number of PP words)
    density: Fraction
    cumulative: Fraction
    covered: Fraction  # S_L

    @property
    def denominator(self) -> int:
        return max((m for m, _ in self.moduli), default=1)


def pp_distribution_table(map_id: MapId | str, Ls: Iterable[int]) -> list[PPRow]:
    """Per-length density of starts with ``x < y`` and its running total.

    Moduli are those of the family's starting class (``2*B`` for grouped
    accelerated maps); densities are relative to the map's domain.
    """
    map_id = _check_family_map(map_id)
    wanted = sorted(set(Ls))
    if not wanted:
        return []
    shift = 1 if map_id in FRAK_OF else 0
    rows = []
    cum = Fraction(0)
    for L in range(2, wanted[-1] + 1):
        limit = _max_e2(map_id, L - 2)
        moduli = []
        dens = Fraction(0)
        for e, c in sorted(length_spectrum(map_id, L).items()):
            if e > limit:
                break
            moduli.append((1 << (e + shift), c))
            # odd-integer normalisation: 1/(2B) of all integers is 1/B of the odds
            dens += Fraction(c, 1 << e)
        cum += dens
        if L in wanted:
            rows.append(PPRow(L, moduli, dens, cum, cumulative_SL(map_id, L)))
    return rows


# -- rising fraction -------------------------------------------------------------

@dataclass
class DensityReport:
    map_id: MapId
    lmax: tuple[int, ...]  # per level
    levels: int  # requested
    rising: list[Fraction] = field(default_factory=list)  # f after each completed level
    terms: dict[int, Fraction] = field(default_factory=dict)  # D_L for L <= lmax[0]
    covered: Fraction = Fraction(0)  # S_{lmax[0]}

    @property
    def f(self) -> Fraction:
        return self.rising[-1]

    @property
    def complete(self) -> bool:
        return len(self.rising) == self.levels


def _spectrum_by_eo(map_id: MapId, lmax: int) -> dict[int, tuple[list[int], list[int]]]:
    # eo -> (sorted e2 list, matching counts)
    out = {}
    for L in range(2, lmax + 1):
        items = sorted(length_spectrum(map_id, L).items())
        out[L - 2] = ([e for e, _ in items], [c for _, c in items])
    return out


def rising_fraction(
    map_id: MapId | str,
    lmax: int | Sequence[int],
    levels: int = 1,
    max_work: int | None = None,
) -> DensityReport:
    """Exact density of starts ``x`` with ``x < y_j`` at every level ``j <= levels``.

    Level ``j`` appends one word of length ``2..lmax[j]`` to the chain.  A
    chain state is the pair of exponents ``(e2, eo)`` of its composite
    relation with a multiplicity; a state survives a level boundary iff its
    end coefficient still exceeds ``2**e2`` (the PP test), and its density is
    ``count / 2**e2``.  ``lmax`` may give one bound per level.

    ``max_work`` caps state-transition work; levels that would exceed it are
    skipped and the report is marked incomplete.
    """
    map_id = _check_family_map(map_id)
    if levels < 1:
        raise ValueError("levels must be >= 1")
    bounds = (lmax,) * levels if isinstance(lmax, int) else tuple(lmax)
    if len(bounds) != levels or min(bounds) < 2:
        raise ValueError("need one lmax >= 2 per level")

    report = DensityReport(map_id, bounds, levels)
    report.terms = {L: distribution_DL(map_id, L) for L in range(2, bounds[0] + 1)}
    report.covered = cumulative_SL(map_id, bounds[0])

    states: dict[tuple[int, int], int] = {(0, 0): 1}
    thresholds: dict[int, int] = {}

    def limit(eo: int) -> int:
        if eo not in thresholds:
            thresholds[eo] = _max_e2(map_id, eo)
        return thresholds[eo]

    for lv in range(levels):
        spec = _spectrum_by_eo(map_id, bounds[lv])
        if max_work is not None and len(states) * sum(len(v[0]) for v in spec.values()) > max_work:
            break
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (e2, eo), cnt in states.items():
            for o, (gs, ws) in spec.items():
                E = eo + o
                cut = bisect_right(gs, limit(E) - e2)
                for g, w in zip(gs[:cut], ws[:cut]):
                    nxt[(e2 + g, E)] += cnt * w
        states = nxt
        report.rising.append(_density(states))
    return report


def _density(states: dict[tuple[int, int], int]) -> Fraction:
    if not states:
        return Fraction(0)
    top = max(e for e, _ in states)
    return Fraction(sum(c << (top - e) for (e, _), c in states.items()), 1 << top)
