"""Additive submonoids of the nonnegative rationals generated by all
powers of finitely many positive fractions.

A generator set B yields the monoid of all finite nonnegative-integer
combinations of b**e over b in B, e >= 0.  This module classifies single
generators, validates multi-generator sets, and decides the structural
flags the factorization machinery depends on:

* canonical: no integer generator and pairwise coprime denominators,
  which makes the power-normal-form machinery in `factorizer` applicable;
* hereditarily atomic: every generator has numerator >= denominator;
* accp obstructed: some generator is a proper fraction, which rules out
  the ascending chain condition on principal ideals.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .exceptions import DuplicateBase, NotAGenerator, NotCanonical, ZeroGenerator
from .qcore import Rational, den, format_rational, num, parse_rational


class CyclicCase(str, Enum):
    INTEGER_BASE = "integer-base"
    UNIT_FRACTION_BASE = "unit-fraction-base"
    GENERIC = "generic"


@dataclass(frozen=True)
class CyclicClassification:
    """Atomicity trichotomy for the monoid generated by powers of one rational."""

    base: Rational
    case: CyclicCase
    atomic: bool
    atom_description: str


def classify_cyclic(r: Rational) -> CyclicClassification:
    """Classify the single-generator monoid <r**n : n >= 0>.

    Integer bases collapse every power into multiples of 1, unit-fraction
    bases kill atomicity altogether, and any other positive rational
    makes every power an atom.
    """
    if r <= 0:
        raise ZeroGenerator(f"generator must be positive, got {r}")
    if den(r) == 1:
        return CyclicClassification(r, CyclicCase.INTEGER_BASE, True, "{1}")
    if num(r) == 1:
        return CyclicClassification(r, CyclicCase.UNIT_FRACTION_BASE, False, "{}")
    desc = "{(" + format_rational(r) + ")^n : n >= 0}"
    return CyclicClassification(r, CyclicCase.GENERIC, True, desc)


@dataclass(frozen=True)
class GeneratorSet:
    """Validated, ascending tuple of generators plus structural flags.

    ``proper_part``/``improper_part`` hold indices of the bases below/above
    1; a base equal to 1 is an integer and lands in neither.  ``minimal``
    is None when minimality of the generating set is undecided.
    """

    bases: tuple[Rational, ...]
    has_unit_fraction: bool
    has_integer: bool
    is_canonical: bool
    is_hereditarily_atomic: bool
    accp_obstructed: bool
    minimal: bool | None
    proper_part: tuple[int, ...]
    improper_part: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.bases)

    def flags(self) -> dict[str, bool | None]:
        return {
            "has_unit_fraction": self.has_unit_fraction,
            "has_integer": self.has_integer,
            "is_canonical": self.is_canonical,
            "is_hereditarily_atomic": self.is_hereditarily_atomic,
            "accp_obstructed": self.accp_obstructed,
            "minimal": self.minimal,
        }


def build_generator_set(bases) -> GeneratorSet:
    """Validate and normalize a collection of positive rationals.

    Generators are sorted ascending.  Duplicates (after reduction) are
    rejected; unit fractions are legal but flagged, since no power of a
    unit fraction can be an atom.
    """
    values = list(bases)
    for b in values:
        if b <= 0:
            raise ZeroGenerator(f"generators must be positive, got {b}")
    ordered = tuple(sorted(values))
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise DuplicateBase(f"duplicate generator {a}")

    has_unit = any(num(b) == 1 and den(b) > 1 for b in ordered)
    has_int = any(den(b) == 1 for b in ordered)
    coprime = all(
        gcd(den(a), den(b)) == 1
        for i, a in enumerate(ordered)
        for b in ordered[i + 1 :]
    )
    canonical = not has_int and coprime
    hereditary = all(num(b) >= den(b) for b in ordered)
    obstructed = any(num(b) < den(b) for b in ordered)
    return GeneratorSet(
        bases=ordered,
        has_unit_fraction=has_unit,
        has_integer=has_int,
        is_canonical=canonical,
        is_hereditarily_atomic=hereditary,
        accp_obstructed=obstructed,
        minimal=True if canonical else None,
        proper_part=tuple(i for i, b in enumerate(ordered) if b < 1),
        improper_part=tuple(i for i, b in enumerate(ordered) if b > 1),
    )


def is_hereditarily_atomic(B: GeneratorSet) -> bool:
    """True when every submonoid of the monoid of B is atomic.

    Holds exactly when no generator is a proper fraction; a proper
    generator embeds a non-atomic unit-fraction-like tail.
    """
    return B.is_hereditarily_atomic


def accp_obstruction(B: GeneratorSet) -> Rational | None:
    """Smallest proper-fraction generator, if any.

    Any such generator yields a strictly descending divisibility chain,
    so the monoid cannot satisfy the ascending chain condition on
    principal ideals.
    """
    for i in B.proper_part:
        return B.bases[i]
    return None


def atom_certificate(b0: Rational, B: GeneratorSet) -> bool:
    """Sufficient condition for every power of b0 to be an atom.

    Requires every generator to be a non-integer with numerator != 1 and
    the denominator of b0 to be coprime to all other denominators.  The
    condition is one-sided: False means "not certified", not "not an atom".
    """
    if b0 not in B.bases:
        raise NotAGenerator(f"{b0} is not a generator of this set")
    for b in B.bases:
        if den(b) == 1 or num(b) == 1:
            return False
    d0 = den(b0)
    return all(gcd(d0, den(b)) == 1 for b in B.bases if b != b0)


class Atom(NamedTuple):
    """One atom of a canonical monoid: a generator power b**e.

    The shared unit atom 1 = b**0 appears once with base_index None.
    """

    base_index: int | None
    exponent: int
    value: Rational


def canonical_atoms(B: GeneratorSet, e_max: int) -> list[Atom]:
    """Atoms of a canonical monoid up to the exponent cap.

    For canonical sets the atoms are exactly the generator powers; the
    unit atom is emitted first and only once.  The empty set generates
    the trivial monoid, which has no atoms at all.
    """
    if not B.is_canonical:
        raise NotCanonical("atoms are enumerated this way only for canonical sets")
    if not B.bases:
        return []
    atoms = [Atom(None, 0, Fraction(1))]
    for i, b in enumerate(B.bases):
        for e in range(1, e_max + 1):
            atoms.append(Atom(i, e, b**e))
    return atoms


def proper_reduction(B: GeneratorSet) -> GeneratorSet:
    """Generator set restricted to the bases below 1.

    The full monoid is atomic precisely when this reduction is, so many
    questions factor through it.
    """
    return build_generator_set(B.bases[i] for i in B.proper_part)


def generator_set_to_dict(B: GeneratorSet) -> dict:
    """JSON-ready form: {"bases": [...], "flags": {...}}."""
    return {
        "bases": [format_rational(b) for b in B.bases],
        "flags": B.flags(),
    }


def generator_set_from_dict(data: dict) -> GeneratorSet:
    """Rebuild from the serialized form; flags are recomputed, not trusted."""
    return build_generator_set(parse_rational(s) for s in data["bases"])
