"""Stopping times of the T maps and the survivor triangle behind F(k).

After ``k`` iterations of ``T`` a residue class mod ``2**k`` with ``i`` odd
steps has composite relation ``T^k(n) = (p**i * n + c) / 2**k``; the class
keeps ``T^j(n) >= n`` for every ``j <= k`` exactly when ``p**i > 2**j`` held
at each step.  The triangle counts surviving classes by ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .maps import MapId, prime_of

STRICT = "strict"
TERRAS = "terras"
FLAVORS = (STRICT, TERRAS)

T_MAPS = (MapId.T3, MapId.T5)


def _t_map(map_id: MapId | str) -> MapId:
    map_id = MapId(map_id)
    if map_id not in T_MAPS:
        raise ValueError(f"stopping times are defined for t3 and t5, not {map_id}")
    return map_id


def _T(p: int, n: int) -> int:
    return (p * n + 1) >> 1 if n & 1 else n >> 1


def stopping_time(map_id: MapId | str, n: int, budget: int = 100_000) -> int | None:
    """Least ``k >= 1`` with ``T^k(n) < n``; ``None`` if ``budget`` steps do not reach it."""
    p = prime_of(_t_map(map_id))
    if n < 1:
        raise ValueError("stopping time needs n >= 1")
    m = n
    for k in range(1, budget + 1):
        m = _T(p, m)
        if m < n:
            return k
    return None


def parity_word(map_id: MapId | str, n: int, k: int) -> tuple[int, ...]:
    """Parities of ``n, T(n), ..., T^{k-1}(n)`` (1 = odd step)."""
    p = prime_of(_t_map(map_id))
    out = []
    for _ in range(k):
        out.append(n & 1)
        n = _T(p, n)
    return tuple(out)


@dataclass(frozen=True)
class SurvivorTriangle:
    map_id: MapId
    k_max: int
    flavor: str
    columns: tuple[tuple[tuple[int, int], ...], ...]  # column k: sorted (i, n(i, k))

    def column(self, k: int) -> dict[int, int]:
        return dict(self.columns[k])

    def entry(self, i: int, k: int) -> int:
        return self.column(k).get(i, 0)

    def total(self, k: int) -> int:
        return sum(c for _, c in self.columns[k])

    def F(self, k: int) -> Fraction:
        return Fraction(self.total(k), 1 << k)


@lru_cache(maxsize=32)
def build_triangle(map_id: MapId | str, k_max: int, flavor: str = STRICT) -> SurvivorTriangle:
    """Survivor counts ``n(i, k)`` for ``0 <= k <= k_max``.

    Each surviving class at ``k - 1`` splits into an even child (``i``
    unchanged) and an odd child (``i + 1``); a child survives at ``k`` when
    ``p**i > 2**k``.  The Terras flavour keeps the children of the
    ``k - 1`` survivors without applying the test at ``k`` (``chi >= k``).
    """
    map_id = _t_map(map_id)
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    p = prime_of(map_id)
    col = {0: 1}
    strict = [col]
    terras = [col]
    for k in range(1, k_max + 1):
        children: dict[int, int] = {}
        for i, c in col.items():
            children[i] = children.get(i, 0) + c
            children[i + 1] = children.get(i + 1, 0) + c
        terras.append(children)
        two_k = 1 << k
        col = {i: c for i, c in children.items() if p**i > two_k}
        strict.append(col)
    chosen = strict if flavor == STRICT else terras
    return SurvivorTriangle(
        map_id, k_max, flavor, tuple(tuple(sorted(c.items())) for c in chosen)
    )


def distribution_F(map_id: MapId | str, k: int, flavor: str = STRICT) -> Fraction:
    """Density of ``n`` with stopping time ``> k`` (strict) or ``>= k`` (terras)."""
    return build_triangle(map_id, max(k, 0), flavor).F(k)


def distribution_G(map_id: MapId | str, k: int) -> Fraction:
    """Density of ``n`` with stopping time ``<= k``."""
    return 1 - distribution_F(map_id, k, STRICT)


@dataclass(frozen=True)
class EmpiricalF:
    map_id: MapId
    k: int
    N: int
    flavor: str
    count: int
    predicted: Fraction  # triangle value times N
    fraction: Fraction

    @property
    def exceptions(self) -> Fraction:
        """Surplus of the tally over the class-level prediction (small-n effects)."""
        return self.count - self.predicted


def empirical_F(map_id: MapId | str, k: int, N: int, flavor: str = STRICT) -> EmpiricalF:
    """Tally ``n <= N`` whose first ``k`` (strict) or ``k - 1`` (terras) iterates stay ``>= n``."""
    map_id = _t_map(map_id)
    if flavor not in FLAVORS:
        raise ValueError(f"flavor must be one of {FLAVORS}")
    if N < 1:
        raise ValueError("N must be >= 1")
    p = prime_of(map_id)
    horizon = k if flavor == STRICT else max(k - 1, 0)
    count = 0
    for n in range(1, N + 1):
        m = n
        for _ in range(horizon):
            m = _T(p, m)
            if m < n:
                break
        else:
            count += 1
    pred = distribution_F(map_id, k, flavor) * N
    return EmpiricalF(map_id, k, N, flavor, count, pred, Fraction(count, N))
