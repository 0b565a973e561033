"""Branching to the isotropy group and the K-type content of the tensor bundles.

Two space families are registered:

* ``SphereEven(n)``: S^{2n} = SO(2n+1)/SO(2n), G-weights of type B_n, K-types of
  type D_n, restriction by the classical interlacing rule.
* ``CPn(n)``: CP^n = SU(n+1)/S(U(n) x U(1)), G-weights as balanced U(n+1)
  tuples, K-types as a U(n) tuple plus a u(1) charge ``q = |f| - |g|``.

CP^n bookkeeping is complexified: bundle tables list the K-types of the
complexified tangent representation and multiplicities are complex ones.
"""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import InvariantViolation
from .rootdata import Family, HighestWeight, RootSystem, highest_root, weyl_dim


class Bundle(str, enum.Enum):
    ONE_FORM = "one-form"
    SYM2 = "sym2"


class SpaceFamily(str, enum.Enum):
    SPHERE_EVEN = "sphere-even"
    CPN = "cpn"


@dataclass(frozen=True)
class KType:
    """An irreducible K-representation.

    ``charge`` is ``None`` for the sphere family. For CP^n the pair
    (weight, charge) is only defined up to the simultaneous shift
    (g + k, q + k) coming from the det twist of U(n+1); ``key`` is the
    shift-invariant label used for comparisons.
    """

    weight: HighestWeight
    charge: int | None = None

    @property
    def key(self) -> tuple[int, ...]:
        if self.charge is None:
            return self.weight.coords
        return tuple(c - self.charge for c in self.weight.coords)

    def dim(self) -> int:
        return weyl_dim(self.weight)

    def __str__(self) -> str:
        if self.charge is None:
            return str(self.weight)
        return f"({self.weight};{self.charge})"


@dataclass(frozen=True)
class SpaceDescriptor:
    name: str
    family: SpaceFamily
    n: int
    g_system: RootSystem
    k_system: RootSystem
    bundles: tuple[tuple[Bundle, tuple[KType, ...]], ...]
    adjoint: HighestWeight
    dim_iso: int

    @property
    def dim(self) -> int:
        return 2 * self.n

    def table(self, bundle: Bundle) -> tuple[KType, ...]:
        return dict(self.bundles)[Bundle(bundle)]


def _validate(space: SpaceDescriptor) -> SpaceDescriptor:
    d = space.dim
    expected = {Bundle.ONE_FORM: d, Bundle.SYM2: d * (d + 1) // 2}
    for bundle, table in space.bundles:
        total = sum(k.dim() for k in table)
        if total != expected[bundle]:
            raise InvariantViolation(
                f"{space.name}: {bundle.value} table has dimension {total}, expected {expected[bundle]}"
            )
    if weyl_dim(space.adjoint) != space.dim_iso:
        raise InvariantViolation(f"{space.name}: adjoint dimension does not match dim_iso")
    return space


def sphere_even(n: int) -> SpaceDescriptor:
    if n < 2:
        raise ValueError("sphere-even needs n >= 2")
    g = RootSystem(Family.B, n)
    k = RootSystem(Family.D, n)
    zero = (0,) * n

    def kt(*head: int) -> KType:
        return KType(HighestWeight(head + zero[len(head):], k))

    return _validate(
        SpaceDescriptor(
            name=f"sphere-even:{n}",
            family=SpaceFamily.SPHERE_EVEN,
            n=n,
            g_system=g,
            k_system=k,
            bundles=(
                (Bundle.ONE_FORM, (kt(1),)),
                (Bundle.SYM2, (kt(), kt(2))),
            ),
            adjoint=highest_root(g),
            dim_iso=n * (2 * n + 1),
        )
    )


def cpn(n: int) -> SpaceDescriptor:
    if n < 2:
        raise ValueError("cpn needs n >= 2")
    g = RootSystem(Family.U, n + 1)
    k = RootSystem(Family.U, n)
    mid = (0,) * (n - 2)

    def kt(coords: tuple[int, ...], q: int) -> KType:
        return KType(HighestWeight(coords, k), q)

    zero = (0,) * n
    e1 = (1,) + (0,) * (n - 1)
    en_bar = (0,) * (n - 1) + (-1,)
    return _validate(
        SpaceDescriptor(
            name=f"cpn:{n}",
            family=SpaceFamily.CPN,
            n=n,
            g_system=g,
            k_system=k,
            bundles=(
                (Bundle.ONE_FORM, (kt(e1, -1), kt(en_bar, 1))),
                (
                    Bundle.SYM2,
                    (
                        kt((2,) + (0,) * (n - 1), -2),
                        kt((0,) * (n - 1) + (-2,), 2),
                        kt((1,) + mid + (-1,), 0),
                        kt(zero, 0),
                    ),
                ),
            ),
            adjoint=highest_root(g),
            dim_iso=(n + 1) ** 2 - 1,
        )
    )


def _interlacing_ranges(space: SpaceDescriptor, lam: HighestWeight) -> list[range]:
    c = lam.coords
    if space.family is SpaceFamily.SPHERE_EVEN:
        n = len(c)
        ranges = [range(c[i + 1], c[i] + 1) for i in range(n - 1)]
        ranges.append(range(-c[n - 1], c[n - 1] + 1))
        return ranges
    return [range(c[i + 1], c[i] + 1) for i in range(len(c) - 1)]


def _check_g_weight(space: SpaceDescriptor, lam: HighestWeight) -> None:
    if lam.system != space.g_system:
        raise ValueError(f"{lam} is a {lam.system} weight, {space.name} needs {space.g_system}")


def branch(space: SpaceDescriptor, lam: HighestWeight) -> list[KType]:
    """Restriction of the G-irrep ``lam`` to K (multiplicity free)."""
    _check_g_weight(space, lam)
    out = []
    total = sum(lam.coords)
    for bar in itertools.product(*_interlacing_ranges(space, lam)):
        w = HighestWeight(bar, space.k_system)
        if space.family is SpaceFamily.CPN:
            out.append(KType(w, total - sum(bar)))
        else:
            out.append(KType(w))
    return out


def contains(space: SpaceDescriptor, lam: HighestWeight, ktype: KType) -> bool:
    """Whether ``ktype`` occurs in the restriction of ``lam``, without enumerating it."""
    _check_g_weight(space, lam)
    if space.family is SpaceFamily.CPN:
        # pick the representative of ktype whose charge matches lam
        shift = sum(lam.coords) - sum(ktype.weight.coords) - ktype.charge
        if shift % (len(lam.coords)) != 0:
            return False
        shift //= len(lam.coords)
        bar = tuple(x + shift for x in ktype.weight.coords)
    else:
        bar = ktype.weight.coords
    return all(v in r for v, r in zip(bar, _interlacing_ranges(space, lam)))


def bundle_k_types(space: SpaceDescriptor, bundle: Bundle) -> tuple[KType, ...]:
    return space.table(bundle)


def hom_multiplicity(space: SpaceDescriptor, lam: HighestWeight, bundle: Bundle) -> int:
    """dim Hom_K(Res lam, E) for the bundle fibre E."""
    return sum(1 for k in space.table(bundle) if contains(space, lam, k))


def multiplicities(ktypes: Iterable[KType]) -> Counter:
    return Counter(k.key for k in ktypes)
