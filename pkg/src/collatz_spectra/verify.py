"""Slice experiments and consistency audits between the analytic side
(families, rising fraction) and direct iteration of the maps."""

from __future__ import annotations

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .affine import Direction
from .families import enumerate_families, rising_fraction
from .maps import FRAK_OF, GROUPED_OF, MapId, correspond_triplet, step

STEP_BUDGET = 100_000
THREADS_ENV = "COLLATZ_SPECTRA_THREADS"


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


# -- fast branch iteration for the slice tallies ------------------------------

def _end3(n: int, budget: int) -> int | None:
    start = n
    for _ in range(budget):
        r = n & 3
        if r == 3:
            return (n + 1) >> 2
        if r == 1:
            n = (3 * n + 1) >> 2
            if n == start:
                return None
        else:
            n = (3 * n) >> 1
    raise _Budget


def _end5(n: int, budget: int) -> int | None:
    seen = {n}
    for _ in range(budget):
        if n & 1:
            n = (5 * n - 1) >> 1
        elif not n & 3:
            n = (5 * n) >> 2
        else:
            r = n & 15
            if r == 10:
                return (n + 6) >> 4
            n = (5 * n + 6) >> 4 if r == 2 else (5 * n + 2) >> 3
        if n in seen:
            return None
        seen.add(n)
    raise _Budget


class _Budget(Exception):
    pass


def _tally(args: tuple[str, int, int, int, int, int]) -> tuple[list[int], int, int]:
    """Count starts in [lo, hi] passing each level; returns (per-level counts, budget hits, cycles)."""
    frak, lo, hi, levels, budget, stride = args
    prime = 3 if frak == MapId.FRAK_U3.value else 5
    end = _end3 if prime == 3 else _end5
    odd = stride == 2
    h = (prime - 1) // 2
    counts = [0] * levels
    hits = cycles = 0
    for x in range(lo, hi + 1, stride):
        cur = (x + 1) >> 1 if odd else x
        for j in range(levels):
            try:
                y = end(cur, budget)
            except _Budget:
                hits += 1
                break
            if y is None:
                cycles += 1
                break
            # odd domain compares in the accelerated-map world: x_U against p*y - h
            if (prime * y - h if odd else y) <= x:
                break
            counts[j] += 1
            cur = y
    return counts, hits, cycles


@dataclass
class SliceReport:
    map_id: MapId
    level: int
    N: int
    domain: str  # "all" | "odd"
    count: int
    total: int
    analytic: Fraction | None = None
    budget_hits: int = 0
    cycles: int = 0

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.count, self.total)


def slice_fractions(
    map_id: MapId | str,
    levels: int,
    N: int,
    domain: str | None = None,
    budget: int = STEP_BUDGET,
    threads: int | None = None,
    analytic_levels: int = 3,
    analytic_lmax: int = 30,
) -> list[SliceReport]:
    """Fraction of starts ``n <= N`` with ``n < y_j`` for all ``j <= m``, for ``m = 1..levels``.

    Frak maps count all integers ``1..N``; the grouped accelerated maps count
    the odd integers ``1, 3, ..., <= N`` through the correspondence with
    their Frak map.  Chains that hit a cycle or the step budget never count
    as rising; both are tallied separately.
    """
    map_id = MapId(map_id)
    if map_id in FRAK_OF:
        frak, natural = FRAK_OF[map_id], "odd"
    elif map_id in GROUPED_OF:
        frak, natural = map_id, "all"
    else:
        raise ValueError(f"slices are defined for fraku3, fraku5, u3g, u5g, not {map_id}")
    domain = domain or natural
    if domain != natural:
        raise ValueError(f"{map_id} slices run over {natural} integers")
    if N < 1 or levels < 1:
        raise ValueError("N and levels must be >= 1")
    stride = 2 if domain == "odd" else 1
    total = (N + 1) // 2 if domain == "odd" else N
    threads = threads or default_threads()

    chunks = max(1, threads * 4) if threads > 1 else 1
    size = -(-N // chunks)
    jobs = []
    for c in range(chunks):
        lo, hi = 1 + c * size, min(N, (c + 1) * size)
        if stride == 2 and lo % 2 == 0:
            lo += 1
        if lo <= hi:
            jobs.append((frak.value, lo, hi, levels, budget, stride))
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_tally, jobs))
    else:
        results = [_tally(j) for j in jobs]

    counts = [sum(r[0][j] for r in results) for j in range(levels)]
    hits = sum(r[1] for r in results)
    cycles = sum(r[2] for r in results)
    analytic: list[Fraction] = []
    if analytic_levels:
        analytic = rising_fraction(map_id, analytic_lmax, min(levels, analytic_levels)).rising
    return [
        SliceReport(map_id, j + 1, N, domain, counts[j], total,
                    analytic[j] if j < len(analytic) else None, hits, cycles)
        for j in range(levels)
    ]


def slice_fraction(map_id: MapId | str, level: int, N: int, domain: str | None = None, **kw) -> SliceReport:
    return slice_fractions(map_id, level, N, domain, **kw)[-1]


def slices_csv(reports: list[SliceReport], digits: int = 6) -> str:
    from .render import render

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["map", "level", "N", "domain", "count", "total", "fraction", "analytic"])
    for r in reports:
        w.writerow([r.map_id.value, r.level, r.N, r.domain, r.count, r.total,
                    render(r.fraction, digits), "" if r.analytic is None else render(r.analytic, 7)])
    return buf.getvalue()


# -- audits ---------------------------------------------------------------------

@dataclass
class AuditReport:
    checked: int = 0
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_bijection(bound: int, prime: int = 3) -> AuditReport:
    """Check that Frak triplets of ``1..bound`` map onto valid, distinct accelerated-map triplets."""
    frak = MapId.FRAK_U3 if prime == 3 else MapId.FRAK_U5
    grouped = GROUPED_OF[frak]
    report = AuditReport()
    seen: dict[tuple[int, int, int], int] = {}
    for x in range(1, bound + 1):
        report.checked += 1
        xu, iu, yu = correspond_triplet(frak, x)
        if xu % 2 == 0:
            report.violations.append((x, f"start {xu} is even"))
            continue
        if iu != (prime * xu + 1) // 2:
            report.violations.append((x, f"intermediate {iu} != ({prime}*{xu}+1)/2"))
        rec = step(grouped, xu)
        if rec.output != yu:
            report.violations.append((x, f"{grouped}({xu}) = {rec.output}, expected {yu}"))
        if rec.branch_id != step(frak, x).branch_id:
            report.violations.append((x, "branch kinds differ"))
        t = (xu, iu, yu)
        if t in seen:
            report.violations.append((x, f"triplet {t} already produced by {seen[t]}"))
        seen[t] = x
    return report


def audit_family_vs_simulation(map_id: MapId | str, L: int, samples: int) -> AuditReport:
    """Iterate the first ``samples`` members of every length-``L`` family."""
    table = enumerate_families(map_id, L)
    report = AuditReport()
    for fam in table.families:
        want = fam.word.branch_ids
        for x in fam.x_class.positive_members(samples):
            report.checked += 1
            cur, got = x, []
            for _ in want:
                rec = step(table.map_id, cur)
                got.append(rec.branch_id)
                cur = rec.output
            if tuple(got) != want:
                report.violations.append((x, f"realized {got}, family word {want}"))
                continue
            if cur not in fam.y_class or cur != fam.end_of(x):
                report.violations.append((x, f"end {cur} outside {fam.y_class}"))
            rising = x < cur
            if rising != (fam.direction is Direction.PP):
                report.violations.append((x, f"{x} -> {cur} contradicts {fam.direction}"))
    return report

