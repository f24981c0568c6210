"""Command-line front end.

Every verb prints one report, either as indented canonical JSON
(--json) or as a flat key = value listing.  Reports are deterministic:
the same invocation always produces byte-identical output, which is
what makes the optional on-disk cache safe.  Parse problems exit 1,
domain errors exit 2 alongside a one-line message on stderr, and the
difftest verb exits 2 when any cross-check fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from types import SimpleNamespace

from .constructs import (
    PrimeSeed,
    delta_realization_check,
    nonatomic_family,
    nonatomic_witness,
)
from .exceptions import MultifracError, NotCanonical, ParseError
from .factorizer import (
    Factorization,
    SearchCaps,
    apply_rewrite,
    enumerate_factorizations,
    evaluate,
    factorization_to_dict,
    hub_normalize,
    rewrite_chain,
    solve_hub,
)
from .lengths import (
    aap_check,
    delta_of_element,
    delta_of_length_set,
    delta_sample,
    delta_truncation_bound,
    hub_witness_sets,
    improper_divisor_pairs,
    is_single_difference,
    length_set,
    union_of_lengths,
)
from .monoid import (
    GeneratorSet,
    accp_obstruction,
    build_generator_set,
    canonical_atoms,
    classify_cyclic,
    generator_set_to_dict,
)
from .qcore import den, format_rational, num, parse_rational


@dataclass(frozen=True)
class Command:
    """One parsed invocation: verb, its parameters, and output wiring."""

    verb: str
    params: dict
    output: str
    cache_dir: str | None


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as ParseError instead of exiting."""

    def error(self, message):
        raise ParseError(message)


def _parse_bases(ns) -> GeneratorSet:
    if ns.bases_file:
        text = Path(ns.bases_file).read_text()
        raw = text.replace(",", " ").split()
    elif ns.bases:
        raw = ns.bases.replace(",", " ").split()
    else:
        raise ParseError("provide --bases or --bases-file")
    return build_generator_set(parse_rational(s) for s in raw)


def _add_base_options(p: _Parser) -> None:
    p.add_argument("--bases", help="comma-separated generators, e.g. 2/3,4/5")
    p.add_argument("--bases-file", help="file holding generators")


def _add_cap_options(p: _Parser) -> None:
    p.add_argument("--emax", type=int, default=4, help="exponent cap (default 4)")
    p.add_argument("--lenmax", type=int, default=64, help="length cap (default 64)")


def _caps(ns) -> SearchCaps:
    return SearchCaps(e_max=ns.emax, len_max=ns.lenmax)


def cmd_classify(ns) -> dict:
    if ns.base is not None:
        r = parse_rational(ns.base)
        c = classify_cyclic(r)
        return {
            "command": "classify",
            "base": format_rational(r),
            "case": c.case.value,
            "atomic": c.atomic,
            "atoms": c.atom_description,
        }
    B = _parse_bases(ns)
    report = {"command": "classify", "generators": generator_set_to_dict(B)}
    obstruction = accp_obstruction(B)
    report["accp_obstruction"] = (
        format_rational(obstruction) if obstruction is not None else None
    )
    return report


def cmd_atoms(ns) -> dict:
    B = _parse_bases(ns)
    atoms = canonical_atoms(B, ns.emax)
    return {
        "command": "atoms",
        "generators": generator_set_to_dict(B),
        "emax": ns.emax,
        "atoms": [
            {
                "base": None if a.base_index is None else format_rational(B.bases[a.base_index]),
                "exponent": a.exponent,
                "value": format_rational(a.value),
            }
            for a in atoms
        ],
    }


def cmd_member(ns) -> dict:
    B = _parse_bases(ns)
    x = parse_rational(ns.x)
    hub = solve_hub(x, B)
    return {
        "command": "member",
        "bases": [format_rational(b) for b in B.bases],
        "x": format_rational(x),
        "member": hub is not None,
        "hub": factorization_to_dict(hub, B) if hub is not None else None,
    }


def _enumeration_complete(B: GeneratorSet, hub, caps: SearchCaps, infinite: bool) -> bool:
    """Whether the bounded search provably saw every factorization in range."""
    if hub is None:
        return False
    if B.proper_part and B.improper_part:
        return False
    if not B.improper_part:
        slack = caps.len_max - hub.length if infinite else 0
        e_req = hub.max_exponent() + max(0, slack)
    else:
        e_req = hub.max_exponent() + hub.length - 1
    return caps.e_max >= e_req


def cmd_factorize(ns) -> dict:
    B = _parse_bases(ns)
    x = parse_rational(ns.x)
    caps = _caps(ns)
    hub = solve_hub(x, B) if B.is_canonical else None
    found = enumerate_factorizations(x, B, caps)
    lengths = sorted({z.length for z in found})
    infinite = False
    if hub is not None and x != 0:
        infinite = length_set(x, B).is_infinite()
    listed = found[: ns.limit]
    return {
        "command": "factorize",
        "bases": [format_rational(b) for b in B.bases],
        "x": format_rational(x),
        "caps": {"e_max": caps.e_max, "len_max": caps.len_max},
        "hub": factorization_to_dict(hub, B) if hub is not None else None,
        "count": len(found),
        "lengths": lengths,
        "complete": _enumeration_complete(B, hub, caps, infinite),
        "factorizations": [factorization_to_dict(z, B) for z in listed],
    }


def cmd_lengths(ns) -> dict:
    B = _parse_bases(ns)
    x = parse_rational(ns.x)
    mu = length_set(x, B)
    hub = solve_hub(x, B)
    report = {
        "command": "lengths",
        "bases": [format_rational(b) for b in B.bases],
        "x": format_rational(x),
        "hub": factorization_to_dict(hub, B),
        "hub_length": hub.length,
        "length_set": mu.to_dict(),
        "infinite": mu.is_infinite(),
        "complete": True,
        "members_within": {"bound": ns.cap, "values": mu.truncate(ns.cap)},
        "delta": sorted(delta_of_length_set(mu)),
        "single_difference": is_single_difference(B),
    }
    if not B.improper_part:
        witness = hub_witness_sets(hub, B)
        report["families"] = [list(f) for f in witness.Wfamily]
    elif B.proper_part:
        pairs = improper_divisor_pairs(x, B)
        d = pairs.to_dict()
        report["splittings"] = {
            "pairs": d["pairs"],
            "caps": d["caps"],
            "complete": d["complete"],
        }
    return report


def _random_sample(B: GeneratorSet, trials: int, seed: int, e_max: int) -> list:
    """Random candidate values num/den with den a product of base denominators."""
    rng = random.Random(seed)
    dens = [den(b) for b in B.bases]
    sample = []
    for _ in range(trials):
        d = 1
        for q in dens:
            d *= q ** rng.randint(0, e_max)
        sample.append(Fraction(rng.randint(1, 12 * d), d))
    return sample


def cmd_delta(ns) -> dict:
    B = _parse_bases(ns)
    if ns.x is not None:
        x = parse_rational(ns.x)
        mu = length_set(x, B)
        return {
            "command": "delta",
            "bases": [format_rational(b) for b in B.bases],
            "x": format_rational(x),
            "delta": sorted(delta_of_length_set(mu)),
            "single_difference": is_single_difference(B),
            "scan_bound": delta_truncation_bound(mu),
        }
    sample = sorted(set(_random_sample(B, ns.trials, ns.seed, ns.emax)))
    caps = SearchCaps(e_max=ns.emax, len_max=64)
    per_element = []
    members = skipped = 0
    for v in sample:
        if solve_hub(v, B) is None:
            skipped += 1
            continue
        members += 1
        delta = delta_of_element(v, B, caps)
        per_element.append(
            {"x": format_rational(v), "delta": sorted(delta)}
        )
    union = delta_sample(B, sample, caps)
    single = is_single_difference(B)
    exact = single is not None and any(
        e["delta"] == [single] for e in per_element
    )
    return {
        "command": "delta",
        "bases": [format_rational(b) for b in B.bases],
        "trials": ns.trials,
        "seed": ns.seed,
        "sample_size": len(sample),
        "members": members,
        "skipped": skipped,
        "deltas": sorted(union),
        "lower_bound": True,
        "single_difference": single,
        "exact": exact,
        "per_element": per_element,
    }


def cmd_unions(ns) -> dict:
    B = _parse_bases(ns)
    caps = _caps(ns)
    report = union_of_lengths(ns.k, B, caps, bound=ns.cap)
    out = {
        "command": "unions",
        "bases": [format_rational(b) for b in B.bases],
        "k": report.k,
        "bound": report.bound,
        "emax": caps.e_max,
        "members": list(report.members),
        "elasticity": "inf" if report.elasticity is None else report.elasticity,
        "complete": report.complete,
        "element_count": report.element_count,
    }
    if ns.aap_d is not None:
        decomposition = aap_check(report.members, ns.aap_d, ns.aap_n)
        out["aap"] = (
            None
            if decomposition is None
            else {
                "y": decomposition.y,
                "d": decomposition.d,
                "N": decomposition.N,
                "s_prime": list(decomposition.s_prime),
                "s_star_count": len(decomposition.s_star),
                "s_dprime": list(decomposition.s_dprime),
            }
        )
    return out


def cmd_construct(ns) -> dict:
    if ns.kind == "nonatomic":
        seed = None
        if ns.seed_primes:
            primes = tuple(int(s) for s in ns.seed_primes.replace(",", " ").split())
            seed = PrimeSeed(primes, "nonatomic-family")
        B = nonatomic_family(ns.n, seed)
        witness = nonatomic_witness(B, m=ns.m, N_max=ns.nmax)
        return {
            "command": "construct",
            "kind": "nonatomic",
            "n": ns.n,
            "generators": generator_set_to_dict(B),
            "witness": witness.to_dict() if witness is not None else None,
        }
    level = ns.K if ns.K is not None else ns.k
    report = delta_realization_check(ns.d, level, _caps(ns))
    return {
        "command": "construct",
        "kind": "delta",
        "d": report.d,
        "k": report.k,
        "K": report.K,
        "generators": generator_set_to_dict(report.generators),
        "x": format_rational(report.x),
        "hub": factorization_to_dict(report.hub, report.generators),
        "length_set": report.lengths.to_dict(),
        "observed": list(report.observed),
        "required": list(report.required),
        "inclusion": report.inclusion,
        "divisibility": report.divisibility,
        "localized": report.localized,
        "localization_bound": report.localization_bound,
        "next_numerator": report.next_numerator,
        "realized": report.realized(),
    }


def _difftest_case(x, B: GeneratorSet, caps: SearchCaps) -> dict:
    hub = solve_hub(x, B)
    found = enumerate_factorizations(x, B, caps)
    case = {"x": format_rational(x), "member": hub is not None, "checks": {}}
    checks = case["checks"]

    if hub is None:
        checks["enumeration_empty"] = not found
        case["ok"] = not found
        return case

    hub_fits = hub.length <= caps.len_max and hub.max_exponent() <= caps.e_max
    checks["hub_in_enumeration"] = (hub in found) if hub_fits else None
    agree = all(hub_normalize(z, B)[0] == hub for z in found)
    checks["hub_agreement"] = agree

    ok = agree and checks["hub_in_enumeration"] is not False

    if x != 0:
        mu = length_set(x, B)
        enum_lengths = {z.length for z in found}
        sound = all(mu.contains(v) for v in enum_lengths)
        checks["soundness"] = sound
        ok = ok and sound
        if not B.improper_part:
            t_safe = min(caps.len_max, hub.length + caps.e_max - hub.max_exponent())
            window_struct = [v for v in mu.truncate(t_safe)]
            window_enum = sorted(v for v in enum_lengths if v <= t_safe)
            equal = window_struct == window_enum
            checks["window"] = {
                "bound": t_safe,
                "structural": window_struct,
                "enumerated": window_enum,
                "equal": equal,
            }
            ok = ok and equal

    if len(found) >= 2:
        first, last = found[0], found[-1]
        chain = rewrite_chain(first, last, B)
        state = first
        replay_ok = True
        for step in chain:
            before = state.length
            state = apply_rewrite(state, step, B)
            n_b = num(B.bases[step.base_index])
            d_b = den(B.bases[step.base_index])
            expected = (
                step.multiplicity * (n_b - d_b)
                if step.direction == "down"
                else step.multiplicity * (d_b - n_b)
            )
            if state.length - before != expected or evaluate(state, B) != x:
                replay_ok = False
                break
        replay_ok = replay_ok and state == last
        checks["chain"] = {"steps": len(chain), "replayed": replay_ok}
        ok = ok and replay_ok

    case["ok"] = ok
    return case


def difftest(B: GeneratorSet, trials: int, caps: SearchCaps, rng_seed: int) -> dict:
    """Cross-check hub, enumeration and length machinery on random elements.

    Each trial evaluates a random factorization and re-derives everything
    about its value from scratch; the report lists every case with its
    individual check results, so a failure carries its counterexample.
    """
    if not B.is_canonical:
        raise NotCanonical("difftest needs a canonical generator set")
    rng = random.Random(rng_seed)
    cases = []
    for _ in range(trials):
        terms = {}
        for i, b in enumerate(B.bases):
            for e in (1, 2):
                c = rng.randint(0, den(b) - 1)
                if c:
                    terms[(i, e)] = c
        z = Factorization.from_terms(rng.randint(0, 3), terms)
        cases.append(_difftest_case(evaluate(z, B), B, caps))
    return {
        "command": "difftest",
        "bases": [format_rational(b) for b in B.bases],
        "caps": {"e_max": caps.e_max, "len_max": caps.len_max},
        "trials": trials,
        "seed": rng_seed,
        "cases": cases,
        "ok": all(c["ok"] for c in cases),
    }


def cmd_difftest(ns) -> dict:
    B = _parse_bases(ns)
    caps = _caps(ns)
    if ns.x is not None:
        case = _difftest_case(parse_rational(ns.x), B, caps)
        return {
            "command": "difftest",
            "bases": [format_rational(b) for b in B.bases],
            "caps": {"e_max": caps.e_max, "len_max": caps.len_max},
            "trials": 1,
            "seed": ns.seed,
            "cases": [case],
            "ok": case["ok"],
        }
    return difftest(B, ns.trials, caps, ns.seed)


_HANDLERS = {
    "classify": cmd_classify,
    "atoms": cmd_atoms,
    "member": cmd_member,
    "factorize": cmd_factorize,
    "lengths": cmd_lengths,
    "delta": cmd_delta,
    "unions": cmd_unions,
    "construct": cmd_construct,
    "difftest": cmd_difftest,
}


def build_parser() -> _Parser:
    parser = _Parser(prog="multifrac", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="cyclic trichotomy or generator-set flags")
    p.add_argument("--base", help="single generator to classify")
    _add_base_options(p)

    p = sub.add_parser("atoms", help="list atoms of a canonical set")
    _add_base_options(p)
    p.add_argument("--emax", type=int, default=4)

    p = sub.add_parser("member", help="membership test with reduced representative")
    _add_base_options(p)
    p.add_argument("--x", required=True)

    p = sub.add_parser("factorize", help="bounded enumeration of factorizations")
    _add_base_options(p)
    p.add_argument("--x", required=True)
    _add_cap_options(p)
    p.add_argument("--limit", type=int, default=50, help="list at most this many")

    p = sub.add_parser("lengths", help="structural set of lengths")
    _add_base_options(p)
    p.add_argument("--x", required=True)
    p.add_argument("--cap", type=int, default=64, help="listing bound (default 64)")

    p = sub.add_parser("delta", help="delta set of one element or a random sample")
    _add_base_options(p)
    p.add_argument("--x")
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emax", type=int, default=4)

    p = sub.add_parser("unions", help="union of sets of lengths over k-atom elements")
    _add_base_options(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--cap", type=int, default=64)
    _add_cap_options(p)
    p.add_argument("--aap-d", type=int, help="also check the members form an AAP")
    p.add_argument("--aap-n", type=int, default=0, help="AAP fuzz bound")

    p = sub.add_parser("construct", help="prime-seeded generator families")
    p.add_argument("--kind", choices=("nonatomic", "delta"), required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--seed-primes", help="comma-separated primes")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--nmax", type=int, default=24)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--K", type=int, default=None)
    _add_cap_options(p)

    p = sub.add_parser("difftest", help="cross-check search, hub and length machinery")
    _add_base_options(p)
    p.add_argument("--x")
    _add_cap_options(p)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)

    for sp in sub.choices.values():
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")
        sp.add_argument(
            "--cache-dir",
            default=os.environ.get("MULTIFRAC_CACHE"),
            help="directory for report caching (or MULTIFRAC_CACHE)",
        )
    return parser


def parse_command(argv=None) -> Command:
    args = build_parser().parse_args(argv)
    meta = {"verb", "json", "cache_dir"}
    params = {k: v for k, v in vars(args).items() if k not in meta}
    return Command(
        verb=args.verb,
        params=params,
        output="json" if args.json else "text",
        cache_dir=args.cache_dir,
    )


def _cache_key(cmd: Command) -> str:
    blob = json.dumps(
        {"verb": cmd.verb, "params": cmd.params}, sort_keys=True, default=str
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def run(cmd: Command) -> dict:
    """Dispatch one command to its verb handler, through the cache if set."""
    cache_file = None
    if cmd.cache_dir:
        cache_file = Path(cmd.cache_dir) / f"{_cache_key(cmd)}.json"
        if cache_file.exists():
            return json.loads(cache_file.read_text())["report"]
    report = _HANDLERS[cmd.verb](SimpleNamespace(**cmd.params))
    if cache_file is not None:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        entry = {
            "manifest": {"verb": cmd.verb, "params": cmd.params},
            "report": report,
        }
        cache_file.write_text(json.dumps(entry, sort_keys=True, default=str))
    return report


def _render_text(report: dict, prefix: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        path = f"{prefix}{key}"
        if isinstance(value, dict):
            lines.extend(_render_text(value, prefix=f"{path}."))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                lines.extend(_render_text(item, prefix=f"{path}[{i}]."))
        else:
            lines.append(f"{path} = {json.dumps(value)}")
    return lines


def main(argv=None) -> int:
    try:
        cmd = parse_command(argv)
        report = run(cmd)
        if cmd.output == "json":
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            print("\n".join(_render_text(report)))
        if report.get("command") == "difftest" and not report["ok"]:
            return 2
        if report.get("command") == "construct" and report.get("realized") is False:
            return 2
        return 0
    except ParseError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except MultifracError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
