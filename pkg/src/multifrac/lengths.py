"""Sets of lengths, their finite descriptions, and derived invariants.

The length set L(x) collects the lengths of all factorizations of x.
Over a canonical generator set of proper fractions, every length arises
from the hub by firing upward chains, and the whole set is a finite
union of shifted sumsets of arithmetic progressions.  `MapUnion` is the
exact carrier for such sets: each component is

    offset + P(d1, l1) + P(d2, l2) + ...

where P(d, l) = {0, d, 2d, ..., l*d} and l may be None for an unbounded
progression.  Improper generators contribute only finitely many lengths
per value, recovered by bounded enumeration, and a mixed set splits
every factorization across the proper/improper divide, so L(x) becomes
a finite union of shifted proper-side length sets.

Derived invariants (delta sets, unions of sets of lengths, almost
arithmetic progressions) are computed from these descriptions with
explicit truncation bounds wherever the set itself is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import lcm

from .exceptions import (
    ImproperBase,
    NotCanonical,
    NotMember,
    ZeroLength,
)
from .factorizer import (
    Factorization,
    SearchCaps,
    enumerate_factorizations,
    solve_hub,
)
from .monoid import GeneratorSet, build_generator_set, canonical_atoms
from .qcore import Rational, den, format_rational, num


@dataclass(frozen=True)
class MapComponent:
    """offset + sumset of progressions P(d, l); l None means unbounded."""

    offset: int
    diffs: tuple[tuple[int, int | None], ...] = ()

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offsets are lengths, hence nonnegative")
        for d, l in self.diffs:
            if d < 1 or (l is not None and l < 1):
                raise ValueError(f"bad progression ({d}, {l})")

    def contains(self, v: int) -> bool:
        """Membership by direct subset-sum over the progressions."""
        targets = {self.offset}
        for d, l in self.diffs:
            spread = set()
            for t in targets:
                k_max = (v - t) // d if v >= t else -1
                if l is not None:
                    k_max = min(k_max, l)
                spread.update(t + k * d for k in range(k_max + 1))
            targets = spread
        return v in targets

    def is_infinite(self) -> bool:
        return any(l is None for _, l in self.diffs)

    def finite_extent(self) -> int:
        """Largest value of the bounded progressions' combined reach."""
        return sum(d * l for d, l in self.diffs if l is not None)

    def shifted(self, delta: int) -> "MapComponent":
        return MapComponent(self.offset + delta, self.diffs)


@dataclass(frozen=True)
class MapUnion:
    """Finite union of MapComponents describing one set of lengths."""

    components: tuple[MapComponent, ...] = ()

    @classmethod
    def from_values(cls, values) -> "MapUnion":
        return cls(tuple(MapComponent(v) for v in sorted(set(values))))

    def contains(self, v: int) -> bool:
        return any(c.contains(v) for c in self.components)

    def is_empty(self) -> bool:
        return not self.components

    def min_value(self) -> int:
        if not self.components:
            raise ValueError("empty union has no minimum")
        return min(c.offset for c in self.components)

    def is_infinite(self) -> bool:
        return any(c.is_infinite() for c in self.components)

    def truncate(self, bound: int) -> list[int]:
        """Sorted members in [0, bound]."""
        return [v for v in range(bound + 1) if self.contains(v)]

    def shifted(self, delta: int) -> "MapUnion":
        return MapUnion(tuple(c.shifted(delta) for c in self.components))

    def merged(self, other: "MapUnion") -> "MapUnion":
        seen = []
        for c in self.components + other.components:
            if c not in seen:
                seen.append(c)
        return MapUnion(tuple(sorted(seen, key=_component_key)))

    def to_dict(self) -> dict:
        return {
            "components": [
                {
                    "offset": c.offset,
                    "diffs": [
                        {"d": d, "l": "inf" if l is None else l} for d, l in c.diffs
                    ],
                }
                for c in self.components
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MapUnion":
        comps = []
        for c in data["components"]:
            diffs = tuple(
                (int(t["d"]), None if t["l"] == "inf" else int(t["l"]))
                for t in c["diffs"]
            )
            comps.append(MapComponent(int(c["offset"]), diffs))
        return cls(tuple(comps))


def _component_key(c: MapComponent):
    """Deterministic ordering; unbounded progressions sort before bounded."""
    return (c.offset, [(d, l is not None, l or 0) for d, l in c.diffs])


@dataclass(frozen=True)
class HubWitnessSets:
    """Which generators can fire upward chains out of a hub.

    ``V`` lists the generators already holding n(b) copies at some
    exponent.  ``Ufamily`` lists the index subsets whose combined
    kick-off cost fits inside the unit count c0; the empty subset always
    qualifies.  ``Wfamily`` is the deduplicated list of unions V | U;
    each member set supports independent unbounded chains, one per
    generator in it.
    """

    hub: Factorization
    V: tuple[int, ...]
    Ufamily: tuple[tuple[int, ...], ...]
    Wfamily: tuple[tuple[int, ...], ...]


def hub_witness_sets(z: Factorization, B: GeneratorSet) -> HubWitnessSets:
    v = tuple(sorted({i for (i, _, c) in z.terms if c >= num(B.bases[i])}))
    indices = range(len(B.bases))
    u_family = [
        combo
        for size in range(len(B.bases) + 1)
        for combo in combinations(indices, size)
        if sum(num(B.bases[i]) for i in combo) <= z.c0
    ]
    w_family = []
    for u in u_family:
        fam = tuple(sorted(set(v) | set(u)))
        if fam not in w_family:
            w_family.append(fam)
    return HubWitnessSets(z, v, tuple(u_family), tuple(sorted(w_family)))


def length_set_proper(x: Rational, B: GeneratorSet) -> MapUnion:
    """Exact L(x) for a canonical set of proper fractions.

    Every factorization of x reaches the hub by downward rewrites, and
    from the hub the reachable lengths are |hub| plus independent
    unbounded progressions of step d(b) - n(b), one per generator in a
    witness family.
    """
    if not B.is_canonical:
        raise NotCanonical("structural length sets need a canonical set")
    if B.improper_part:
        raise ImproperBase("this route covers proper fractions only")
    if x == 0:
        raise NotMember("length sets are taken over nonzero elements")
    hub = solve_hub(x, B)
    if hub is None:
        raise NotMember(f"{x} is not in the monoid")
    witness = hub_witness_sets(hub, B)
    comps = []
    for fam in witness.Wfamily:
        diffs = tuple(
            (den(B.bases[i]) - num(B.bases[i]), None) for i in fam
        )
        comp = MapComponent(hub.length, diffs)
        if comp not in comps:
            comps.append(comp)
    return MapUnion(tuple(sorted(comps, key=_component_key)))


def _improper_subset(B: GeneratorSet) -> GeneratorSet:
    return build_generator_set(B.bases[i] for i in B.improper_part)


def _improper_value_caps(y: Rational, B_imp: GeneratorSet) -> SearchCaps:
    """Self-derived complete search bounds over improper generators.

    Every atom power exceeds 1, so a factorization of y has length at
    most floor(y), and a power b**e can only appear while b**e <= y.
    """
    e_self = 0
    for b in B_imp.bases:
        e = 0
        while b ** (e + 1) <= y:
            e += 1
        e_self = max(e_self, e)
    return SearchCaps(e_max=e_self, len_max=int(y))


def _clamp_caps(
    wanted: SearchCaps, caps: SearchCaps | None
) -> tuple[SearchCaps, bool]:
    """Clip self-derived bounds by user caps; report whether anything was cut."""
    if caps is None:
        return wanted, True
    clipped = SearchCaps(
        e_max=min(wanted.e_max, caps.e_max),
        len_max=min(wanted.len_max, caps.len_max),
    )
    complete = wanted.e_max <= caps.e_max and wanted.len_max <= caps.len_max
    return clipped, complete


def improper_lengths(
    y: Rational, B_imp: GeneratorSet, caps: SearchCaps | None = None
) -> set[int]:
    """All factorization lengths of y over an all-improper set.

    The search is self-bounding (complete) unless the supplied caps cut
    it shorter.
    """
    if y == 0:
        return {0}
    eff, _ = _clamp_caps(_improper_value_caps(y, B_imp), caps)
    return {z.length for z in enumerate_factorizations(y, B_imp, eff)}


@dataclass(frozen=True)
class ImproperDivisorReport:
    """Splittings x = y + y' across the improper/proper divide.

    y runs over the submonoid spanned by the improper generators plus
    units, y' over the proper-side monoid.  Both sides may absorb units;
    the union over all pairs is unaffected by that overlap.  ``caps``
    records the bounds the enumeration actually ran with and
    ``complete`` whether they were self-derived (exhaustive) or clipped.
    """

    x: Rational
    pairs: tuple[tuple[Rational, Rational], ...]
    caps: SearchCaps
    complete: bool

    def to_dict(self) -> dict:
        return {
            "x": format_rational(self.x),
            "pairs": [
                {"improper": format_rational(y), "proper": format_rational(yp)}
                for y, yp in self.pairs
            ],
            "caps": {"e_max": self.caps.e_max, "len_max": self.caps.len_max},
            "complete": self.complete,
        }


def improper_divisor_pairs(
    x: Rational, B: GeneratorSet, caps: SearchCaps | None = None
) -> ImproperDivisorReport:
    """Enumerate all (y, y') with y + y' = x splitting improper from proper."""
    if not B.is_canonical:
        raise NotCanonical("the splitting needs a canonical set")
    if x < 0:
        raise NotMember(f"{x} is negative")
    B_imp = _improper_subset(B)
    if x == 0:
        eff, complete = _clamp_caps(SearchCaps(0, 0), caps)
        return ImproperDivisorReport(
            x, ((Fraction(0), Fraction(0)),), eff, complete
        )

    B_prop = build_generator_set(B.bases[i] for i in B.proper_part)

    # Term-only improper values t <= x, then integer top-ups t + k.
    term_values = {Fraction(0)}
    eff, complete = _clamp_caps(_improper_value_caps(x, B_imp), caps)
    slots = [
        (i, e)
        for i in range(len(B_imp.bases))
        for e in range(1, eff.e_max + 1)
    ]

    def grow(k: int, total: Fraction) -> None:
        if k == len(slots):
            term_values.add(total)
            return
        i, e = slots[k]
        v = B_imp.bases[i] ** e
        c = 0
        while total + c * v <= x:
            grow(k + 1, total + c * v)
            c += 1

    grow(0, Fraction(0))

    def proper_member(v: Rational) -> bool:
        if not B_prop.bases:
            return v == 0
        return solve_hub(v, B_prop) is not None

    pairs = set()
    for t in sorted(term_values):
        if not B_imp.bases and t == 0:
            # No improper generators: y may only be 0.
            if proper_member(x):
                pairs.add((Fraction(0), Fraction(x)))
            continue
        k = 0
        while t + k <= x:
            y = t + k
            yp = x - y
            if proper_member(yp):
                pairs.add((Fraction(y), Fraction(yp)))
            k += 1
    return ImproperDivisorReport(x, tuple(sorted(pairs)), eff, complete)


def length_set(
    x: Rational, B: GeneratorSet, caps: SearchCaps | None = None
) -> MapUnion:
    """Exact L(x) for any canonical generator set.

    Dispatches on the proper/improper makeup: all-proper uses the hub
    witness description, all-improper uses complete bounded enumeration,
    and a mixed set unions shifted proper-side sets over all splittings.
    ``caps`` only ever clips the improper-side searches, which are
    self-bounding when it is omitted.
    """
    if not B.is_canonical:
        raise NotCanonical("structural length sets need a canonical set")
    if x == 0:
        raise NotMember("length sets are taken over nonzero elements")
    if solve_hub(x, B) is None:
        raise NotMember(f"{x} is not in the monoid")

    if not B.improper_part:
        return length_set_proper(x, B)

    B_imp = _improper_subset(B)
    if not B.proper_part:
        return MapUnion.from_values(improper_lengths(x, B_imp, caps))

    B_prop = build_generator_set(B.bases[i] for i in B.proper_part)
    report = improper_divisor_pairs(x, B, caps)
    total = MapUnion()
    for y, yp in report.pairs:
        if yp == 0:
            prop_part = MapUnion((MapComponent(0),))
        else:
            prop_part = length_set_proper(yp, B_prop)
        for l_imp in sorted(improper_lengths(y, B_imp, caps)):
            total = total.merged(prop_part.shifted(l_imp))
    return total


def is_length_set_infinite(
    x: Rational, B: GeneratorSet, caps: SearchCaps | None = None
) -> bool:
    return length_set(x, B, caps).is_infinite()


def delta_truncation_bound(mu: MapUnion) -> int:
    """Scan horizon past which an infinite MapUnion repeats its gaps.

    Beyond every offset plus every bounded progression's reach, each
    component is an eventually periodic set with period dividing the lcm
    of its unbounded steps; two extra periods cover both the settling
    range and one full cycle of gaps.
    """
    if mu.is_empty():
        return 0
    top_offset = max(c.offset for c in mu.components)
    extent = max(c.finite_extent() for c in mu.components)
    steps = [d for c in mu.components for d, l in c.diffs if l is None]
    period = lcm(*steps) if steps else 1
    return top_offset + extent + 2 * period


def delta_of_length_set(mu: MapUnion) -> set[int]:
    """Set of gaps between consecutive members; exact even when infinite."""
    members = mu.truncate(delta_truncation_bound(mu))
    return {b - a for a, b in zip(members, members[1:])}


def delta_of_element(
    x: Rational, B: GeneratorSet, caps: SearchCaps | None = None
) -> set[int]:
    return delta_of_length_set(length_set(x, B, caps))


def is_single_difference(B: GeneratorSet) -> int | None:
    """The common value of |n(b) - d(b)| across all bases, else None.

    When it exists, every set of lengths over B is an arithmetic
    progression with that difference, so every nonempty delta set is
    exactly {d}.  Empty sets have no common value.
    """
    gaps = {abs(num(b) - den(b)) for b in B.bases}
    if len(gaps) == 1:
        return next(iter(gaps))
    return None


def delta_sample(
    B: GeneratorSet,
    sample: list[Rational],
    caps: SearchCaps | None = None,
) -> set[int]:
    """Union of the delta sets of the sampled members of the monoid.

    Non-members in the sample are skipped, so the result is a lower
    bound for the distance set of the whole monoid.  It is exact when
    is_single_difference(B) yields some d and a sampled element already
    realizes {d}.
    """
    union: set[int] = set()
    for x in sample:
        if x == 0 or solve_hub(x, B) is None:
            continue
        union |= delta_of_element(x, B, caps)
    return union


@dataclass(frozen=True)
class UnionReport:
    """Union of sets of lengths over all elements with a length-k factorization."""

    k: int
    bound: int
    members: tuple[int, ...]
    elasticity: int | None
    complete: bool
    element_count: int


def union_of_lengths(
    k: int, B: GeneratorSet, caps: SearchCaps | None = None, bound: int = 64
) -> UnionReport:
    """U_k: every length coexisting with length k, truncated at ``bound``.

    Elements with a k-atom factorization are generated as k-multisets of
    atoms with exponent <= caps.e_max, deduplicated by value.  When some
    contributing set of lengths is unbounded the elasticity is reported
    as None (infinite) and that conclusion is exact; the member list is
    only as complete as the exponent cap, so ``complete`` stays False.
    """
    if k <= 0:
        raise ZeroLength("unions of sets of lengths start at k = 1")
    if not B.bases:
        raise ValueError("the trivial monoid has no sets of lengths")
    if caps is None:
        caps = SearchCaps()
    atoms = canonical_atoms(B, caps.e_max)
    values = {sum((a.value for a in combo), Fraction(0))
              for combo in combinations_with_replacement(atoms, k)}
    union: set[int] = set()
    infinite = False
    for x in sorted(values):
        mu = length_set(x, B, caps)
        infinite = infinite or mu.is_infinite()
        union.update(mu.truncate(bound))
    members = tuple(sorted(union))
    elasticity = None if infinite else (max(members) if members else 0)
    return UnionReport(
        k=k,
        bound=bound,
        members=members,
        elasticity=elasticity,
        complete=False,
        element_count=len(values),
    )


@dataclass(frozen=True)
class AapDecomposition:
    """Witness that a finite set is an almost arithmetic progression.

    The set equals y + (s_prime | s_star | s_dprime) where s_prime sits
    inside [-N, -1], s_star = {0, d, ..., l*d} is a full progression,
    and s_dprime sits inside (l*d, l*d + N].  Every member is congruent
    to y modulo d.
    """

    y: int
    d: int
    N: int
    s_prime: tuple[int, ...]
    s_star: tuple[int, ...]
    s_dprime: tuple[int, ...]

    def reconstruct(self) -> list[int]:
        return sorted(
            self.y + v for v in (*self.s_prime, *self.s_star, *self.s_dprime)
        )


def aap_check(values, d: int, N: int) -> AapDecomposition | None:
    """First witness (smallest anchor y) that values form an AAP, or None."""
    if d < 1:
        raise ValueError("the difference d must be positive")
    if N < 0:
        raise ValueError("the fuzz bound N must be nonnegative")
    vs = sorted(set(values))
    if not vs:
        return None
    if len({v % d for v in vs}) > 1:
        # An AAP lives inside a single residue class y + d*Z.
        return None
    for y in vs:
        rel = [v - y for v in vs]
        s_prime = tuple(r for r in rel if r < 0)
        if s_prime and s_prime[0] < -N:
            continue
        s_star = []
        t = 0
        present = set(rel)
        while t in present:
            s_star.append(t)
            t += d
        top = s_star[-1]
        s_dprime = tuple(r for r in rel if r > top)
        if any(r not in s_star for r in rel if 0 <= r <= top):
            continue
        if any(r > top + N for r in s_dprime):
            continue
        return AapDecomposition(
            y=y,
            d=d,
            N=N,
            s_prime=s_prime,
            s_star=tuple(s_star),
            s_dprime=s_dprime,
        )
    return None
