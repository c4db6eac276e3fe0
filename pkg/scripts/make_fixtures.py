"""Regenerate tests/fixtures by seeded search.

Run from the repository root:  python scripts/make_fixtures.py
Every search is deterministic; the script fails if a search comes up empty.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

from supctl.checks import check_controllability, check_normality, check_observability, relobs_witness
from supctl.errors import BoundError
from supctl.fsa import EventAlphabet
from supctl.langops import intersection, language_eq, union
from supctl.mutual import ModularInstance, check_gmc, check_mn, check_mutual_l_obs, check_wgmc
from supctl.oracle import (InstanceParams, brute_maximal_observable, random_generator,
                           random_instance, random_subautomaton)
from supctl.synthesis import Flavor, synthesize
from supctl.textio import write_generator

ROOT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def save(name: str, gens: dict, meta: dict) -> None:
    d = ROOT / name
    d.mkdir(parents=True, exist_ok=True)
    for key, g in gens.items():
        write_generator(g, d / f"{key}.gen")
    (d / "meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"{name}: {meta}")


def strictness():
    """WGMC (equivalently MC) holds, GMC fails; smallest plants first."""
    params = InstanceParams(modular=True)
    best = None
    for seed in range(2000):
        s = random_instance(seed, params)
        inst = ModularInstance(s.g1, s.g2)
        if check_wgmc(inst) is None and check_gmc(inst) is not None:
            size = len(s.g1) + len(s.g2)
            if best is None or size < best[0]:
                best = (size, seed, s)
    if best is None:
        sys.exit("no WGMC-but-not-GMC instance found")
    _, seed, s = best
    save("wgmc_not_gmc", {"l1": s.g1, "l2": s.g2}, {"seed": seed})


def gmc_instance():
    params = InstanceParams(modular=True)
    for seed in range(2000):
        s = random_instance(seed, params)
        if check_gmc(ModularInstance(s.g1, s.g2)) is None and len(s.g1) > 1 and len(s.g2) > 1:
            save("gmc_holds", {"g1": s.g1, "g2": s.g2, "spec": s.k}, {"seed": seed})
            return
    sys.exit("no GMC instance found")


def mn_without_l_obs():
    """L1 over {a, b1, tau}, L2 over {a, b2, tau}; only tau is unobservable.
    Wanted: mutual normality fails on side 1 with witness a tau, while both
    relative observability inclusions hold."""
    a1 = EventAlphabet.of("a b1 tau", unobservable="tau")
    a2 = EventAlphabet.of("a b2 tau", unobservable="tau")
    best = None
    for seed in range(200000):
        rng = random.Random(seed)
        n = rng.randint(1, 6)
        g1 = random_generator(rng, a1, n, 0.4)
        g2 = random_generator(rng, a2, rng.randint(1, 6), 0.4)
        inst = ModularInstance(g1, g2)
        wit = check_mn(inst)
        if wit is None or wit.side != "1" or wit.w != ("a", "tau"):
            continue
        if check_mutual_l_obs(inst) is not None:
            continue
        size = len(g1) + len(g2)
        if best is None or size < best[0]:
            best = (size, seed, g1, g2)
            if size <= 5:
                break
    if best is None:
        sys.exit("no reconstruction within 6 states per plant")
    _, seed, g1, g2 = best
    save("mn_not_glo", {"l1": g1, "l2": g2}, {"seed": seed, "search_states_per_plant": 6})


def non_union_closed():
    """Two incomparable maximal observable sublanguages whose union is not observable."""
    params = InstanceParams(max_states=4, max_events=3)
    for seed in range(5000):
        inst = random_instance(seed, params)
        try:
            found = brute_maximal_observable(inst.k, inst.l)
        except BoundError:
            continue
        if len(found) < 2:
            continue
        m1, m2 = found[0], found[1]
        if check_observability(union([m1, m2]), inst.l) is None:
            continue
        save("non_union_closed", {"spec": inst.k, "plant": inst.l, "max1": m1, "max2": m2},
             {"seed": seed})
        return
    sys.exit("no non-union-closed instance found")


def _hypothesis(flavor, m, k, l):
    if flavor is Flavor.C:
        return check_controllability(m, l) is None
    if flavor is Flavor.N:
        return check_normality(m, l) is None
    if flavor is Flavor.R_K:
        return relobs_witness(m, k, l, l.alphabet.observable) is None
    return relobs_witness(m, l, l, l.alphabet.observable) is None


def distributivity_failures(count: int = 12):
    """Triples (K, L, M), M ⊆ L, where M lacks the flavor's hypothesis and
    (K∩M, L∩M)^ differs from (K,L)^ ∩ M."""
    params = InstanceParams()
    flavors = [Flavor.C, Flavor.N, Flavor.R_K, Flavor.R_L]
    saved = 0
    seed = 0
    per_flavor = {f: 0 for f in flavors}
    while saved < count and seed < 20000:
        seed += 1
        flavor = flavors[seed % 4]
        if per_flavor[flavor] >= count // 4:
            continue
        inst = random_instance(seed, params)
        rng = random.Random(seed * 31 + 7)
        m = random_subautomaton(rng, inst.l, params)
        if m.is_empty or _hypothesis(flavor, m, inst.k, inst.l):
            continue
        lhs = synthesize(intersection(inst.k, m), intersection(inst.l, m), flavor)
        rhs = intersection(synthesize(inst.k, inst.l, flavor), m)
        if language_eq(lhs, rhs):
            continue
        per_flavor[flavor] += 1
        saved += 1
        save(f"distributivity_{saved:02d}", {"spec": inst.k, "plant": inst.l, "m": m},
             {"seed": seed, "flavor": flavor.value})
    if saved < count:
        sys.exit(f"only {saved} distributivity failures found")


if __name__ == "__main__":
    strictness()
    gmc_instance()
    mn_without_l_obs()
    non_union_closed()
    distributivity_failures()
