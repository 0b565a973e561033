"""Exact root-system data for the classical families used by the spectrum code.

Weights live in orthonormal e-coordinates. ``B`` and ``D`` are the usual
so(2n+1) and so(2n) conventions; ``U`` is the unitary-group convention, where
a weight of U(m) is a weakly decreasing integer m-tuple and SU(m) weights are
the same tuples modulo adding a constant. Everything here is integer or
``Fraction`` arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator, Sequence

from .errors import InvariantViolation


class Family(str, enum.Enum):
    B = "B"
    D = "D"
    U = "U"


@dataclass(frozen=True)
class RootSystem:
    """A classical root system; for ``U`` the rank is the number of coordinates."""

    family: Family
    rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", Family(self.family))
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.family is Family.D and self.rank < 2:
            raise ValueError("D_1 is abelian and not supported")

    def __str__(self) -> str:
        return f"{self.family.value}{self.rank}"


def _is_dominant(system: RootSystem, coords: Sequence[int]) -> bool:
    if any(a < b for a, b in zip(coords, coords[1:])):
        return False
    if system.family is Family.B:
        return coords[-1] >= 0
    if system.family is Family.D:
        return coords[-2] >= abs(coords[-1])
    return True


@dataclass(frozen=True)
class HighestWeight:
    coords: tuple[int, ...]
    system: RootSystem

    def __post_init__(self) -> None:
        coords = tuple(self.coords)
        if len(coords) != self.system.rank:
            raise ValueError(
                f"{self.system} weight needs {self.system.rank} coordinates, got {len(coords)}"
            )
        if any(Fraction(c).denominator != 1 for c in coords):
            raise ValueError(f"weight coordinates must be integers: {coords}")
        coords = tuple(int(c) for c in coords)
        if not _is_dominant(self.system, coords):
            raise ValueError(f"{coords} is not dominant for {self.system}")
        object.__setattr__(self, "coords", coords)

    def is_zero(self) -> bool:
        return not any(projected(self))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def weight(system: RootSystem, *coords: int) -> HighestWeight:
    return HighestWeight(tuple(coords), system)


@lru_cache(maxsize=None)
def positive_roots(system: RootSystem) -> tuple[tuple[int, ...], ...]:
    """Positive roots in e-coordinates.

    Order: e_i - e_j, then e_i + e_j (B, D) for i < j, then e_i (B only).
    """
    n = system.rank

    def unit(*pairs: tuple[int, int]) -> tuple[int, ...]:
        v = [0] * n
        for idx, sign in pairs:
            v[idx] += sign
        return tuple(v)

    roots = [unit((i, 1), (j, -1)) for i in range(n) for j in range(i + 1, n)]
    if system.family in (Family.B, Family.D):
        roots += [unit((i, 1), (j, 1)) for i in range(n) for j in range(i + 1, n)]
    if system.family is Family.B:
        roots += [unit((i, 1)) for i in range(n)]
    return tuple(roots)


@lru_cache(maxsize=None)
def rho(system: RootSystem) -> tuple[Fraction, ...]:
    total = [Fraction(0)] * system.rank
    for root in positive_roots(system):
        for i, c in enumerate(root):
            total[i] += c
    return tuple(t / 2 for t in total)


def highest_root(system: RootSystem) -> HighestWeight:
    n = system.rank
    if system.family is Family.U:
        if n < 2:
            raise ValueError("U(1) has no roots")
        return HighestWeight((1,) + (0,) * (n - 2) + (-1,), system)
    if system.family is Family.B and n == 1:
        return HighestWeight((1,), system)
    return HighestWeight((1, 1) + (0,) * (n - 2), system)


def projected(lam: HighestWeight) -> tuple[Fraction, ...]:
    """Coordinates with the central U(1) part removed (identity for B and D)."""
    coords = [Fraction(c) for c in lam.coords]
    if lam.system.family is Family.U:
        mean = sum(coords, Fraction(0)) / len(coords)
        coords = [c - mean for c in coords]
    return tuple(coords)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def casimir(lam: HighestWeight) -> Fraction:
    """(lam, lam + 2 rho) in orthonormal coordinates."""
    p = projected(lam)
    r = rho(lam.system)
    return _dot(p, [x + 2 * y for x, y in zip(p, r)])


def weyl_dim(lam: HighestWeight) -> int:
    r = rho(lam.system)
    shifted = [c + x for c, x in zip(lam.coords, r)]
    num = Fraction(1)
    den = Fraction(1)
    for root in positive_roots(lam.system):
        num *= _dot(shifted, root)
        den *= _dot(r, root)
    value = num / den
    if value.denominator != 1 or value <= 0:
        raise InvariantViolation(f"Weyl dimension of {lam} is {value}, not a positive integer")
    return int(value)


def balanced(coords: Sequence[int]) -> tuple[int, ...]:
    """Representative of an SU(m) weight whose coordinate sum is closest to zero.

    Ties (sum = m/2 versus -m/2) go to the positive sum, so the defining
    representative of SU(2) is (1, 0) and its adjoint is (1, -1).
    """
    m = len(coords)
    # shift k puts the sum in (-m/2, m/2]
    k = (m - 2 * sum(coords)) // (2 * m)
    return tuple(c + k for c in coords)


def _enumerate_bd(system: RootSystem, cutoff: Fraction) -> Iterator[tuple[int, ...]]:
    n = system.rank
    r = rho(system)
    bound = isqrt(int(cutoff))
    out: list[int] = []

    # every term lam_i (lam_i + 2 rho_i) is >= 0 for dominant B/D weights
    def rec(i: int, upper: int, partial: Fraction) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(out)
            return
        last_d = system.family is Family.D and i == n - 1
        lower = -upper if last_d else 0
        for v in range(lower, upper + 1):
            term = v * (v + 2 * r[i])
            if partial + term > cutoff:
                continue
            out.append(v)
            yield from rec(i + 1, abs(v) if last_d else v, partial + term)
            out.pop()

    yield from rec(0, bound, Fraction(0))


def _enumerate_u(system: RootSystem, cutoff: Fraction) -> Iterator[tuple[int, ...]]:
    # casimir >= |projected|^2 >= (f_1 - f_m)^2 / 2
    m = system.rank
    if m == 1:
        yield (0,)
        return
    max_spread = isqrt(int(2 * cutoff))
    diffs: list[int] = []

    def rec(remaining: int) -> Iterator[tuple[int, ...]]:
        if len(diffs) == m - 1:
            f = [0]
            for d in reversed(diffs):
                f.append(f[-1] + d)
            yield balanced(tuple(reversed(f)))
            return
        for d in range(remaining + 1):
            diffs.append(d)
            yield from rec(remaining - d)
            diffs.pop()

    yield from rec(max_spread)


def enumerate_dominant_weights(system: RootSystem, cutoff: Fraction | int) -> list[HighestWeight]:
    """All dominant weights with Casimir <= cutoff, sorted by (Casimir, coords).

    For ``U`` systems these are SU weights, one balanced representative each.
    """
    cutoff = Fraction(cutoff)
    if cutoff < 0:
        raise ValueError("cutoff must be non-negative")
    gen = _enumerate_u if system.family is Family.U else _enumerate_bd
    found = []
    for coords in gen(system, cutoff):
        lam = HighestWeight(coords, system)
        c = casimir(lam)
        if c <= cutoff:
            found.append((c, coords, lam))
    found.sort(key=lambda item: (item[0], item[1]))
    return [lam for _, _, lam in found]
