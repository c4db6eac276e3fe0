"""Coordinator construction and the modular-vs-monolithic comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError, TheoremViolation
from .fsa import Generator, Word
from .langops import (intersection, inverse_projection, language_diff_witness, language_eq,
                      language_leq, natural_projection, require_same_events, sync_product)
from .mutual import GLO, GMC, GMK, GMN, ModularInstance, check_condition
from .synthesis import Flavor, synthesize

# condition(s) under which modular synthesis is known to be exact
CONDITIONS = {
    Flavor.C: (GMC,),
    Flavor.N: (GMN,),
    Flavor.R_K: (GMK,),
    Flavor.R_L: (GLO,),
    Flavor.CN: (GMC, GMN),
    Flavor.CR: (GMC, GMK),
}
HEURISTIC = frozenset({Flavor.CN, Flavor.CR})


def _local_events(k: Generator, a1: frozenset, a2: frozenset, ak: frozenset):
    if not ak <= a1 | a2:
        raise InputError(f"coordinator events {sorted(ak - (a1 | a2))} are not plant events")
    if k.events != a1 | a2:
        raise InputError(f"specification alphabet {sorted(k.events)} is not A1 ∪ A2 = {sorted(a1 | a2)}")
    if not a1 & a2 <= ak:
        raise InputError(f"coordinator alphabet must contain the shared events {sorted(a1 & a2)}")
    return a1 | ak, a2 | ak


def decomposition(k: Generator, a1: Iterable[str], a2: Iterable[str], ak: Iterable[str]) -> Generator:
    """P_1(K) ∥ P_2(K) for the coordinator-extended local alphabets."""
    b1, b2 = _local_events(k, frozenset(a1), frozenset(a2), frozenset(ak))
    return sync_product([natural_projection(k, b1), natural_projection(k, b2)]).with_alphabet(k.alphabet)


def check_cond_decomposable(k: Generator, a1: Iterable[str], a2: Iterable[str],
                            ak: Iterable[str]) -> tuple[bool, Word | None]:
    """Exact verdict plus the least string of P_1(K) ∥ P_2(K) outside K."""
    prod = decomposition(k, a1, a2, ak)
    ok, wit = language_leq(prod, k)
    return ok, wit


def extend_coordinator_alphabet(k: Generator, a1: Iterable[str], a2: Iterable[str],
                                start: Iterable[str] = ()) -> frozenset:
    """Greedy growth from the shared events until K is conditionally
    decomposable.  Each round adds the least event whose addition strictly
    shrinks the decomposition, or else simply the least remaining event."""
    a1, a2 = frozenset(a1), frozenset(a2)
    ak = (a1 & a2) | frozenset(start)
    current = decomposition(k, a1, a2, ak)
    while not language_leq(current, k)[0]:
        rest = sorted((a1 | a2) - ak)
        chosen, chosen_prod = rest[0], None
        for e in rest:
            cand = decomposition(k, a1, a2, ak | {e})
            if not language_leq(current, cand)[0]:
                chosen, chosen_prod = e, cand
                break
        ak = ak | {chosen}
        current = chosen_prod if chosen_prod is not None else decomposition(k, a1, a2, ak)
    return ak


def build_coordinator(g1: Generator, g2: Generator, ak: Iterable[str]) -> Generator:
    """P_k(G1') ∥ P_k(G2')."""
    ak = frozenset(ak)
    if not ak <= g1.events | g2.events:
        raise InputError(f"coordinator events {sorted(ak - g1.events - g2.events)} are not plant events")
    parts = [natural_projection(g, ak & g.events) for g in (g1, g2)]
    gk = sync_product(parts)
    alphabet = g1.alphabet.merge(g2.alphabet).restrict(ak)
    return gk.with_alphabet(alphabet).relabel()


@dataclass(frozen=True)
class CoordinationSetup:
    g1_orig: Generator
    g2_orig: Generator
    ak: frozenset
    coordinator: Generator
    g1: Generator
    g2: Generator
    k: Generator
    decomposable: bool
    spec_intersected: bool = False

    @property
    def alphabet(self):
        return self.g1.alphabet.merge(self.g2.alphabet)

    @property
    def plant(self) -> Generator:
        return sync_product([self.g1_orig, self.g2_orig]).with_alphabet(self.alphabet)


def _fit_spec(k: Generator, plant: Generator) -> tuple[Generator, bool]:
    require_same_events(k, plant)
    k.alphabet.merge(plant.alphabet)
    if language_leq(k, plant)[0]:
        return k.with_alphabet(plant.alphabet), False
    return intersection(k, plant).with_alphabet(plant.alphabet).relabel(), True


def make_setup(g1: Generator, g2: Generator, k: Generator,
               ak: Iterable[str] | None = None) -> CoordinationSetup:
    """Choose A'_k, build the coordinator G'_k and the local plants G_i = G'_i ∥ G'_k."""
    plant = sync_product([g1, g2])
    k, cut = _fit_spec(k, plant)
    if ak is None:
        ak = extend_coordinator_alphabet(k, g1.events, g2.events)
    ak = frozenset(ak)
    ok, _ = check_cond_decomposable(k, g1.events, g2.events, ak)
    gk = build_coordinator(g1, g2, ak)
    l1 = sync_product([g1, gk]).relabel()
    l2 = sync_product([g2, gk]).relabel()
    return CoordinationSetup(g1, g2, ak, gk, l1, l2, k, ok, cut)


def run_monolithic(g1: Generator, g2: Generator, k: Generator, flavor: Flavor | str) -> Generator:
    plant = sync_product([g1, g2])
    k, _ = _fit_spec(k, plant)
    return synthesize(k, plant, flavor)


@dataclass(frozen=True)
class ModularRun:
    k1: Generator
    k2: Generator
    k1_sup: Generator
    k2_sup: Generator
    product: Generator


def run_coordination(setup: CoordinationSetup, flavor: Flavor | str) -> ModularRun:
    """Local synthesis of P_i(K) against L(G_i), then the product of the results."""
    locs = []
    sups = []
    for g in (setup.g1, setup.g2):
        ki = natural_projection(setup.k, g.events).with_alphabet(g.alphabet)
        locs.append(ki)
        sups.append(synthesize(ki, g, flavor))
    product = sync_product(sups).with_alphabet(setup.alphabet).relabel()
    return ModularRun(locs[0], locs[1], sups[0], sups[1], product)


@dataclass
class ComparisonReport:
    flavor: Flavor
    monolithic: Generator
    modular: Generator
    k1_sup: Generator
    k2_sup: Generator
    coordinator_alphabet: frozenset
    coordinator_states: int
    decomposable: bool
    spec_intersected: bool
    safety_monolithic: bool
    safety_modular: bool
    inclusion_modular_in_monolithic: bool
    equality: bool
    conditions: dict = field(default_factory=dict)
    theorem_applies: bool = False
    heuristic: bool = False
    gap_witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from .textio import generator_to_dict
        return {
            "flavor": self.flavor.cli_name,
            "coordinator_alphabet": sorted(self.coordinator_alphabet),
            "coordinator_states": self.coordinator_states,
            "decomposable": self.decomposable,
            "spec_intersected": self.spec_intersected,
            "safety_monolithic": self.safety_monolithic,
            "safety_modular": self.safety_modular,
            "inclusion_modular_in_monolithic": self.inclusion_modular_in_monolithic,
            "equality": self.equality,
            "conditions": {k: v is None for k, v in self.conditions.items()},
            "condition_witnesses": {k: v.to_dict() for k, v in self.conditions.items() if v is not None},
            "theorem_applies": self.theorem_applies,
            "heuristic": self.heuristic,
            "gap_witnesses": {k: list(v) for k, v in self.gap_witnesses.items()},
            "languages": {
                "monolithic": generator_to_dict(self.monolithic),
                "modular": generator_to_dict(self.modular),
                "local_1": generator_to_dict(self.k1_sup),
                "local_2": generator_to_dict(self.k2_sup),
            },
        }


def compare(g1: Generator, g2: Generator, k: Generator, flavor: Flavor | str,
            ak: Iterable[str] | None = None, strict: bool = True) -> ComparisonReport:
    """Run both pipelines and relate them.  With ``strict``, a case where the
    flavor's sufficient condition holds on a decomposable specification but
    the monolithic result escapes the modular one raises TheoremViolation."""
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    setup = make_setup(g1, g2, k, ak)
    plant = setup.plant
    mono = synthesize(setup.k, plant, flavor)
    run = run_coordination(setup, flavor)
    modular = run.product
    safe_mono = language_leq(mono, setup.k)[0]
    safe_mod = language_leq(modular, setup.k)[0]
    inc, gap_mod = language_leq(modular, mono)
    rev, gap_mono = language_leq(mono, modular)
    inst = ModularInstance(setup.g1, setup.g2, setup.alphabet, run.k1, run.k2)
    conditions = {name: check_condition(name, inst) for name in CONDITIONS[flavor]}
    holds = all(w is None for w in conditions.values())
    applies = holds and setup.decomposable
    gaps = {}
    if gap_mod is not None:
        gaps["modular_not_in_monolithic"] = gap_mod
    if gap_mono is not None:
        gaps["monolithic_not_in_modular"] = gap_mono
    report = ComparisonReport(
        flavor, mono, modular, run.k1_sup, run.k2_sup, setup.ak, len(setup.coordinator),
        setup.decomposable, setup.spec_intersected, safe_mono, safe_mod, inc, inc and rev,
        conditions, applies, flavor in HEURISTIC, gaps)
    if strict and applies and flavor not in HEURISTIC and not rev:
        diag = report.to_dict()
        diag["premises"] = theorem_premises(setup, run, flavor)
        raise TheoremViolation(
            f"{flavor.cli_name}: sufficient condition holds but the monolithic result "
            f"is not contained in the modular one", diag)
    return report


def theorem_premises(setup: CoordinationSetup, run: ModularRun, flavor: Flavor) -> dict:
    """Evaluate exchangeability and distributivity per side, the premises
    the comparison argument chains together.  Values are ``None`` when the
    premise holds, else the least string on which the two sides differ."""
    alphabet = setup.alphabet
    out = {}
    sides = ((1, run.k1, run.k1_sup, setup.g1, setup.g2), (2, run.k2, run.k2_sup, setup.g2, setup.g1))
    for i, ki, ki_sup, li, lj in sides:
        big_k = inverse_projection(ki, alphabet)
        big_l = inverse_projection(li, alphabet)
        m = inverse_projection(lj, alphabet)
        lifted = synthesize(big_k, big_l, flavor)
        out[f"exchangeable_{i}"] = _diff(lifted, inverse_projection(ki_sup, alphabet))
        lhs = synthesize(intersection(big_k, m), intersection(big_l, m), flavor)
        out[f"distributable_{i}"] = _diff(lhs, intersection(lifted, m))
    return out


def _diff(g1: Generator, g2: Generator):
    w = language_diff_witness(g1, g2)
    return None if w is None else list(w)


def coordinator_neutral(setup: CoordinationSetup) -> bool:
    """L(G1' ∥ G2' ∥ G'_k) = L(G1' ∥ G2')."""
    with_k = sync_product([setup.g1_orig, setup.g2_orig, setup.coordinator])
    return language_eq(with_k.with_alphabet(setup.alphabet), setup.plant)
