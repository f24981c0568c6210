"""Formal factorizations over generator powers and their normal form.

A factorization of x is a nonnegative-integer combination
``x = c0 + sum c * b_i**e`` with exponents >= 1 inside the terms and c0
counting copies of the unit atom b**0 = 1.  Two factorizations of the
same value are connected by the exchange identity

    n(b) * b**e  =  d(b) * b**(e+1)

applied in either direction (n, d numerator and denominator of b).

For canonical generator sets (no integers, pairwise coprime
denominators) there is exactly one factorization in which every
positive-exponent coefficient is smaller than its base's denominator.
That representative is called the hub here; it is computable either by
exhaustive downward rewriting (`hub_normalize`) or directly from the
value by congruence peeling (`solve_hub`), and the two routes are kept
deliberately independent so they can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exceptions import (
    BadIndex,
    ImproperBase,
    NotCanonical,
    NotHub,
    ParseError,
    ValueMismatch,
)
from .monoid import GeneratorSet
from .qcore import Rational, den, factorize, format_rational, num, parse_rational


@dataclass(frozen=True)
class SearchCaps:
    """Bounds for the brute-force enumeration: max term exponent and max length."""

    e_max: int = 4
    len_max: int = 64


@dataclass(frozen=True, order=True)
class Factorization:
    """Immutable formal combination of generator powers.

    ``terms`` holds (base_index, exponent, coefficient) triples, sorted,
    with exponent >= 1 and coefficient >= 1; ``c0`` is the unit-atom count.
    """

    c0: int = 0
    terms: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.c0 < 0:
            raise ValueError(f"c0 must be nonnegative, got {self.c0}")
        keys = [(i, e) for (i, e, _) in self.terms]
        if sorted(set(keys)) != keys:
            raise ValueError("terms must be sorted and slot-unique")
        for i, e, c in self.terms:
            if i < 0 or e < 1 or c < 1:
                raise ValueError(f"bad term {(i, e, c)}")

    @classmethod
    def from_terms(cls, c0: int, terms) -> "Factorization":
        """Build from any {(base_index, exponent): coefficient} mapping."""
        items = terms.items() if hasattr(terms, "items") else terms
        cleaned = tuple(
            (i, e, c) for (i, e), c in sorted(items) if c != 0
        )
        return cls(c0, cleaned)

    @property
    def length(self) -> int:
        return self.c0 + sum(c for (_, _, c) in self.terms)

    def coefficient(self, base_index: int, exponent: int) -> int:
        for i, e, c in self.terms:
            if (i, e) == (base_index, exponent):
                return c
        return 0

    def as_mapping(self) -> dict[tuple[int, int], int]:
        return {(i, e): c for (i, e, c) in self.terms}

    def max_exponent(self) -> int:
        return max((e for (_, e, _) in self.terms), default=0)


@dataclass(frozen=True)
class RewriteStep:
    """One application of the exchange identity, with multiplicity.

    direction "down" at exponent e >= 1 replaces m*d(b) copies of b**e by
    m*n(b) copies of b**(e-1); "up" at exponent e >= 0 replaces m*n(b)
    copies of b**e by m*d(b) copies of b**(e+1).  A down step changes the
    length by m*(n(b) - d(b)), an up step by m*(d(b) - n(b)).
    """

    base_index: int
    exponent: int
    direction: str
    multiplicity: int


def _check_indices(z: Factorization, B: GeneratorSet) -> None:
    for i, _, _ in z.terms:
        if i >= len(B.bases):
            raise BadIndex(f"term references base index {i}, set has {len(B.bases)}")


def evaluate(z: Factorization, B: GeneratorSet) -> Rational:
    """Exact value of the formal combination."""
    _check_indices(z, B)
    total = Fraction(z.c0)
    for i, e, c in z.terms:
        total += c * B.bases[i] ** e
    return total


def hub_normalize(z: Factorization, B: GeneratorSet):
    """Rewrite downward until every coefficient is below its denominator.

    Returns (hub, steps).  Each step carries division multiplicity q from
    c = q*d(b) + r, so the audit trail is short even for huge
    coefficients.  Mass only ever moves to lower exponents, hence one
    top-down sweep per base terminates.
    """
    if not B.is_canonical:
        raise NotCanonical("hub normalization requires a canonical generator set")
    _check_indices(z, B)
    work = z.as_mapping()
    c0 = z.c0
    steps: list[RewriteStep] = []
    for i in sorted({i for (i, _) in work}):
        d_i = den(B.bases[i])
        n_i = num(B.bases[i])
        top = max(e for (j, e) in work if j == i)
        for e in range(top, 0, -1):
            c = work.get((i, e), 0)
            if c < d_i:
                continue
            q, r = divmod(c, d_i)
            if r:
                work[(i, e)] = r
            else:
                del work[(i, e)]
            if e == 1:
                c0 += q * n_i
            else:
                work[(i, e - 1)] = work.get((i, e - 1), 0) + q * n_i
            steps.append(RewriteStep(i, e, "down", q))
    return Factorization.from_terms(c0, work), tuple(steps)


def solve_hub(x: Rational, B: GeneratorSet) -> Factorization | None:
    """Decide membership of x and return its hub, or None.

    The denominator of x splits into prime-power parts each owned by a
    unique generator (denominators are pairwise coprime), so x splits by
    partial fractions into per-generator contributions.  Within one
    generator the top coefficient at level e is forced modulo d(b) by

        rem * d(b)**e  ===  c * n(b)**e   (mod d(b)),

    because every lower term still carries a factor of d(b) after
    clearing; integer shifts of rem are invisible mod d(b) for e >= 1, so
    the fractional representative suffices.  Peeling levels top-down
    determines all coefficients; the leftover must be a nonnegative
    integer c0.  Every failure mode certifies non-membership.
    """
    if not B.is_canonical:
        raise NotCanonical("hub solving requires a canonical generator set")
    if x < 0:
        return None
    if x == 0:
        return Factorization()
    if not B.bases:
        return None

    dx = den(x)
    terms: dict[tuple[int, int], int] = {}
    if dx > 1:
        owned: dict[int, dict[int, int]] = {}
        for p, a in factorize(dx).items():
            owners = [i for i, b in enumerate(B.bases) if den(b) % p == 0]
            if not owners:
                return None
            owned.setdefault(owners[0], {})[p] = a
        for i in sorted(owned):
            b = B.bases[i]
            d_i, n_i = den(b), num(b)
            part = owned[i]
            q = 1
            for p, a in part.items():
                q *= p**a
            cap = max(part.values())
            # Fractional representative of this generator's contribution.
            rep = (x.numerator * pow((dx // q) % q, -1, q)) % q
            rem = Fraction(rep, q)
            for e in range(cap, 0, -1):
                t = rem * Fraction(d_i) ** e
                if t.denominator != 1:
                    return None
                c = (t.numerator * pow(pow(n_i, e, d_i), -1, d_i)) % d_i
                if c:
                    terms[(i, e)] = c
                    rem -= c * b**e
            if rem.denominator != 1:
                return None

    residue = x
    for (i, e), c in terms.items():
        residue -= c * B.bases[i] ** e
    if residue.denominator != 1 or residue < 0:
        return None
    return Factorization.from_terms(int(residue), terms)


def min_length_factorization(x: Rational, B: GeneratorSet) -> Factorization | None:
    """Shortest factorization of x, for canonical sets of proper fractions.

    With every generator below 1, downward rewriting strictly shortens,
    so the hub is the unique minimum-length factorization.
    """
    if not B.is_canonical:
        raise NotCanonical("minimum-length route requires a canonical set")
    if B.improper_part:
        raise ImproperBase("minimum-length route requires all generators below 1")
    return solve_hub(x, B)


def enumerate_factorizations(
    x: Rational, B: GeneratorSet, caps: SearchCaps
) -> list[Factorization]:
    """All factorizations of x with exponents <= e_max and length <= len_max.

    Ground-truth oracle: bounded search against the definition, valid for
    any generator set (no canonicity assumed) and deliberately independent
    of the hub machinery.  The only pruning beyond value and budget is an
    arithmetic necessity: any sum of the still-available slot values has
    denominator dividing their product, so a remainder whose denominator
    does not divide it can never be completed.  Slots run highest
    exponent first so that pruning bites early.  Output order is
    deterministic (sorted by term tuple, then c0).
    """
    if x < 0:
        return []
    slots = [
        (i, e)
        for i in range(len(B.bases))
        for e in range(caps.e_max, 0, -1)
    ]
    values = [B.bases[i] ** e for (i, e) in slots]
    # suffix_den[k] = lcm of denominators reachable from slot k onward.
    suffix_den = [1] * (len(slots) + 1)
    for k in range(len(slots) - 1, -1, -1):
        d = values[k].denominator
        suffix_den[k] = suffix_den[k + 1] * d // gcd(suffix_den[k + 1], d)
    found: list[Factorization] = []

    def descend(k: int, remaining: Fraction, budget: int, acc: dict) -> None:
        if suffix_den[k] % remaining.denominator != 0:
            return
        if k == len(slots):
            c0 = int(remaining)
            # The unit atom exists only when there is a generator at all.
            if 0 <= c0 <= budget and (B.bases or c0 == 0):
                found.append(Factorization.from_terms(c0, dict(acc)))
            return
        v = values[k]
        c_max = min(budget, int(remaining / v)) if remaining > 0 else 0
        for c in range(c_max + 1):
            if c:
                acc[slots[k]] = c
            descend(k + 1, remaining - c * v, budget - c, acc)
        acc.pop(slots[k], None)

    descend(0, Fraction(x), caps.len_max, {})
    return sorted(found, key=lambda z: (z.terms, z.c0))


def apply_rewrite(z: Factorization, step: RewriteStep, B: GeneratorSet) -> Factorization:
    """Apply one exchange step; raises ValueError if the source mass is missing."""
    _check_indices(z, B)
    i, e, m = step.base_index, step.exponent, step.multiplicity
    if i >= len(B.bases):
        raise BadIndex(f"no base with index {i}")
    d_i, n_i = den(B.bases[i]), num(B.bases[i])
    work = z.as_mapping()
    c0 = z.c0
    if step.direction == "down":
        if e < 1:
            raise ValueError("down steps need exponent >= 1")
        have = work.get((i, e), 0)
        if have < m * d_i:
            raise ValueError(f"need {m * d_i} at exponent {e}, have {have}")
        work[(i, e)] = have - m * d_i
        if e == 1:
            c0 += m * n_i
        else:
            work[(i, e - 1)] = work.get((i, e - 1), 0) + m * n_i
    elif step.direction == "up":
        if e == 0:
            if c0 < m * n_i:
                raise ValueError(f"need {m * n_i} unit atoms, have {c0}")
            c0 -= m * n_i
        else:
            have = work.get((i, e), 0)
            if have < m * n_i:
                raise ValueError(f"need {m * n_i} at exponent {e}, have {have}")
            work[(i, e)] = have - m * n_i
        work[(i, e + 1)] = work.get((i, e + 1), 0) + m * d_i
    else:
        raise ValueError(f"unknown direction {step.direction!r}")
    return Factorization.from_terms(c0, work)


def rewrite_chain(
    z: Factorization, z_target: Factorization, B: GeneratorSet
) -> tuple[RewriteStep, ...]:
    """Exchange-step chain from z to z_target, routed through the hub.

    Both endpoints normalize to the same hub (uniqueness), so the chain
    is the downward trail of z followed by the reversed, inverted trail
    of the target.
    """
    if evaluate(z, B) != evaluate(z_target, B):
        raise ValueMismatch(
            f"values differ: {evaluate(z, B)} vs {evaluate(z_target, B)}"
        )
    hub_a, down_a = hub_normalize(z, B)
    hub_b, down_b = hub_normalize(z_target, B)
    if hub_a != hub_b:
        raise AssertionError("equal values produced different hubs")
    inverted = tuple(
        RewriteStep(s.base_index, s.exponent - 1, "up", s.multiplicity)
        for s in reversed(down_b)
    )
    return down_a + inverted


def is_max_length(z: Factorization, B: GeneratorSet) -> bool:
    """Certificate that the hub z cannot be lengthened by any rewrite.

    Valid input must already be a hub.  The test: every positive-exponent
    coefficient stays below min(n(b), d(b)), and the unit count stays
    below n(b) for every generator b < 1.  Under those bounds no upward
    step (which needs n(b) copies somewhere) can fire, and downward steps
    only shorten when they exist at all.
    """
    if not B.is_canonical:
        raise NotCanonical("max-length certificate requires a canonical set")
    _check_indices(z, B)
    for i, e, c in z.terms:
        if c >= den(B.bases[i]):
            raise NotHub(f"coefficient {c} at base {i} exponent {e} is not hub-reduced")
    for i, _, c in z.terms:
        if c >= min(num(B.bases[i]), den(B.bases[i])):
            return False
    for i in B.proper_part:
        if z.c0 >= num(B.bases[i]):
            return False
    return True


def factorization_to_dict(z: Factorization, B: GeneratorSet) -> dict:
    """JSON-ready form with bases spelled by value, not index."""
    _check_indices(z, B)
    return {
        "c0": z.c0,
        "terms": [
            {"base": format_rational(B.bases[i]), "exp": e, "coeff": c}
            for (i, e, c) in z.terms
        ],
    }


def factorization_from_dict(data: dict, B: GeneratorSet) -> Factorization:
    terms: dict[tuple[int, int], int] = {}
    for t in data["terms"]:
        b = parse_rational(t["base"])
        try:
            i = B.bases.index(b)
        except ValueError:
            raise ParseError(f"base {t['base']} is not in the generator set") from None
        key = (i, int(t["exp"]))
        terms[key] = terms.get(key, 0) + int(t["coeff"])
    return Factorization.from_terms(int(data["c0"]), terms)


def rewrite_step_to_dict(step: RewriteStep, B: GeneratorSet) -> dict:
    return {
        "base": format_rational(B.bases[step.base_index]),
        "exponent": step.exponent,
        "direction": step.direction,
        "multiplicity": step.multiplicity,
    }
