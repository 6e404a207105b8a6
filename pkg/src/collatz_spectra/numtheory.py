"""Exact integer utilities around linear Diophantine equations and residue classes.

Also home to the coefficient helpers (binomial, multinomial, geometric sum).

Python ``int`` is the arbitrary-precision integer and ``fractions.Fraction``
the exact rational used everywhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = gcd(a, b) > 0`` and ``s*a + t*b = g``."""
    if a == 0 and b == 0:
        raise ValueError("undefined gcd: both arguments are zero")
    r0, r1 = a, b
    s0, s1 = 1, 0
    t0, t1 = 0, 1
    while r1 != 0:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0 < 0:
        r0, s0, t0 = -r0, -s0, -t0
    return r0, s0, t0


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The arithmetic progression ``rep + q*modulus``, with ``0 <= rep < modulus``."""

    rep: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "rep", self.rep % self.modulus)

    def __contains__(self, n: int) -> bool:
        return (n - self.rep) % self.modulus == 0

    def member(self, q: int) -> int:
        return self.rep + q * self.modulus

    def least_positive(self) -> int:
        return self.rep if self.rep > 0 else self.modulus

    def positive_members(self, count: int) -> list[int]:
        first = self.least_positive()
        return [first + j * self.modulus for j in range(count)]

    def members_upto(self, bound: int) -> Iterator[int]:
        n = self.least_positive()
        while n <= bound:
            yield n
            n += self.modulus

    def density(self) -> Fraction:
        return Fraction(1, self.modulus)

    def intersect(self, other: ResidueClass) -> ResidueClass | None:
        """Chinese-remainder intersection; ``None`` when the classes are disjoint."""
        g, s, _ = extended_gcd(self.modulus, other.modulus)
        diff = other.rep - self.rep
        if diff % g:
            return None
        lcm = self.modulus // g * other.modulus
        k = (diff // g * s) % (other.modulus // g)
        return ResidueClass(self.rep + k * self.modulus, lcm)

    def __str__(self) -> str:
        return f"{self.rep} (mod {self.modulus})"


def solve_congruence(a: int, b: int, m: int) -> ResidueClass | None:
    """All ``n`` with ``a*n = b (mod m)``, or ``None`` if there are none."""
    g, s, _ = extended_gcd(a, m)
    if b % g:
        return None
    return ResidueClass((b // g) * s, m // g)


@dataclass(frozen=True)
class DiophantineSolution:
    """Solutions of ``c = b*y - a*x``.

    ``x_class`` and ``y_class`` advance together: the q-th solution is
    ``(x0 + (b/g)*q, y0 + (a/g)*q)``, where ``(x0, y0)`` is the particular
    solution with the least nonnegative ``x0``.
    """

    c: int
    b: int
    a: int
    x0: int
    y0: int
    x_class: ResidueClass
    y_class: ResidueClass

    def pair(self, q: int) -> tuple[int, int]:
        return (self.x0 + q * self.x_class.modulus, self.y0 + q * self.y_class.modulus)


def solve_linear(c: int, b: int, a: int) -> DiophantineSolution:
    """Solve ``c = b*y - a*x`` over the integers."""
    if a == 0 or b == 0:
        raise ValueError("coefficients a and b must be nonzero")
    g, s, t = extended_gcd(b, a)
    if c % g:
        raise ValueError(f"no integer solutions: gcd({b}, {a}) = {g} does not divide {c}")
    # s*b + t*a = g  =>  y = s*c/g, x = -t*c/g
    bx, ay = abs(b) // g, abs(a) // g
    x0 = (-t * (c // g)) % bx
    y0 = (c + a * x0) // b
    return DiophantineSolution(
        c=c, b=b, a=a, x0=x0, y0=y0,
        x_class=ResidueClass(x0, bx), y_class=ResidueClass(y0, ay),
    )


def binomial(n: int, k: int) -> int:
    """Zero outside ``0 <= k <= n``, so the Pascal recurrence holds at the edges."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    return math.comb(n, k) if k >= 0 else 0


def multinomial(parts: Sequence[int]) -> int:
    """``(sum parts)! / prod(part!)``, computed as a product of binomials."""
    total = 0
    out = 1
    for p in parts:
        if p < 0:
            raise ValueError(f"multinomial parts must be >= 0, got {p}")
        total += p
        out *= math.comb(total, p)
    return out


def geometric_sum(a: Fraction | int, r: Fraction | int, n: int) -> Fraction:
    """Exact sum of the first ``n`` terms ``a*r**j``.

    For ``r == 1`` the closed form is undefined and ``n*a`` is returned.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    a, r = Fraction(a), Fraction(r)
    if r == 1:
        return n * a
    return a * (1 - r**n) / (1 - r)
