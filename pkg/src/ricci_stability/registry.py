"""Name resolution for spaces (``sphere-even:n``, ``cpn:n``) and two-summand structures."""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .branching import SpaceDescriptor, cpn, sphere_even
from .iteration import TwoSummandStructure
from .jensen import jensen_structure

SPHERE_RANGE = range(2, 9)
CPN_RANGE = range(2, 7)
JENSEN_RANGE = range(1, 9)

_REF = re.compile(r"^([a-z-]+):(\d+)$")


class RegistryError(ValueError):
    pass


def space_names() -> list[str]:
    return [f"sphere-even:{n}" for n in SPHERE_RANGE] + [f"cpn:{n}" for n in CPN_RANGE]


def resolve_space(ref: str) -> SpaceDescriptor:
    m = _REF.match(ref)
    if m:
        family, n = m.group(1), int(m.group(2))
        if family == "sphere-even" and n in SPHERE_RANGE:
            return sphere_even(n)
        if family == "cpn" and n in CPN_RANGE:
            return cpn(n)
    raise RegistryError(
        f"unknown space {ref!r}; expected sphere-even:n (2<=n<=8) or cpn:n (2<=n<=6)"
    )


def load_structure_config(path: Path) -> TwoSummandStructure:
    """Parse a flat ``key = value`` file with keys d1, d2, t111, t122 and optional name.

    Values are integers, ``p/q`` rationals or decimals; ``#`` starts a comment.
    """
    values: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            key, sep, value = line.partition(":")
        if not sep:
            raise RegistryError(f"{path}:{lineno}: expected 'key = value'")
        key = key.strip().lower()
        if key not in {"d1", "d2", "t111", "t122", "name"}:
            raise RegistryError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()
    missing = {"d1", "d2", "t111", "t122"} - values.keys()
    if missing:
        raise RegistryError(f"{path}: missing keys {sorted(missing)}")
    try:
        d1, d2 = Fraction(values["d1"]), Fraction(values["d2"])
        if d1.denominator != 1 or d2.denominator != 1:
            raise ValueError("d1 and d2 must be integers")
        return TwoSummandStructure(
            d1=int(d1),
            d2=int(d2),
            t111=Fraction(values["t111"]),
            t122=Fraction(values["t122"]),
            name=values.get("name", path.stem),
        )
    except ValueError as exc:
        raise RegistryError(f"{path}: {exc}") from exc


def resolve_structure(ref: str) -> TwoSummandStructure:
    m = _REF.match(ref)
    if m and m.group(1) == "jensen":
        n = int(m.group(2))
        if n in JENSEN_RANGE:
            return jensen_structure(n)
        raise RegistryError(f"jensen:n needs 1<=n<=8, got {n}")
    path = Path(ref)
    if path.is_file():
        return load_structure_config(path)
    raise RegistryError(f"unknown structure {ref!r}; expected jensen:n or a config file path")
