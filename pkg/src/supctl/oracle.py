"""Ground truth by exhaustion, plus seeded random instances.

Nothing here is used by the synthesis code paths; the oracles only share the
property checkers, which they call on every candidate sublanguage.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from .checks import check_controllability, check_normality, check_observability, check_rel_observability
from .errors import BoundError, InputError
from .fsa import EventAlphabet, Generator, accessible, empty, enumerate_language, refine_pair
from .langops import language_eq, language_leq, require_same_events, sync_product, union
from .synthesis import Flavor, refined_structure

SUPREMAL_BOUND = 16
MAXIMAL_BOUND = 12

Predicate = Callable[[Generator], bool]


def property_predicate(k: Generator, l: Generator, flavor: Flavor | str,
                       au: Iterable[str] | None = None, ao: Iterable[str] | None = None) -> Predicate:
    """Membership test for the sublanguages of K that the flavor admits."""
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    tests = []
    for part in flavor.union_closed_parts:
        if part == "C":
            tests.append(lambda m: check_controllability(m, l, au) is None)
        elif part == "N":
            tests.append(lambda m: check_normality(m, l, ao) is None)
        elif part == "R_K":
            tests.append(lambda m: check_rel_observability(m, k, l, ao) is None)
        else:
            tests.append(lambda m: check_rel_observability(m, l, l, ao) is None)
    return lambda m: all(t(m) for t in tests)


def rooted_subsets(g: Generator, allowed: frozenset) -> Iterator[frozenset]:
    """Every subset of ``allowed`` containing the initial state whose states
    are all reachable inside the subset.  Each is produced exactly once."""
    if g.initial not in allowed:
        return
    succ = {q: [t for e, t in sorted(g.delta[q].items()) if t in allowed] for q in allowed}

    def grow(chosen: frozenset, cands: tuple, banned: frozenset):
        if not cands:
            yield chosen
            return
        v, rest = cands[0], cands[1:]
        # branch 1: take v
        taken = chosen | {v}
        extra = tuple(t for t in succ[v] if t not in taken and t not in banned and t not in rest)
        yield from grow(taken, rest + tuple(dict.fromkeys(extra)), banned)
        # branch 2: never take v
        yield from grow(chosen, rest, banned | {v})

    start = frozenset([g.initial])
    first = tuple(dict.fromkeys(t for t in succ[g.initial] if t != g.initial))
    yield from grow(start, first, frozenset())


def rooted_transition_sets(g: Generator, allowed: frozenset) -> Iterator[frozenset]:
    """Every set of transitions between ``allowed`` states whose sources are
    all reached from the initial state through the set itself.  Transitions
    are ``(state, event)`` pairs; each set is produced exactly once."""
    if g.initial not in allowed:
        return
    out = {q: [(q, e) for e, t in sorted(g.delta[q].items()) if t in allowed] for q in allowed}

    def grow(chosen: frozenset, reached: frozenset, cands: tuple):
        if not cands:
            yield chosen
            return
        tr, rest = cands[0], cands[1:]
        target = g.delta[tr[0]][tr[1]]
        taken = chosen | {tr}
        if target in reached:
            yield from grow(taken, reached, rest)
        else:
            yield from grow(taken, reached | {target}, rest + tuple(out[target]))
        yield from grow(chosen, reached, rest)

    yield from grow(frozenset(), frozenset([g.initial]), tuple(out[g.initial]))


def _transition_restrict(g: Generator, chosen: frozenset) -> Generator:
    delta: dict = {g.initial: {}}
    for q, e in chosen:
        t = g.delta[q][e]
        delta.setdefault(q, {})[e] = t
        delta.setdefault(t, {})
    return Generator(g.alphabet, delta, g.initial)


def _candidate_structure(k: Generator, l: Generator, flavor: Flavor, ao) -> tuple[Generator, frozenset]:
    if flavor is Flavor.C:
        h, g = refine_pair(k, l)
        return g, frozenset(h.delta)
    ao = l.alphabet.observable if ao is None else frozenset(ao)
    refine_pair(k, l)
    return refined_structure(k, l, ao)


def _maximal_sets(sets: list[frozenset]) -> list[frozenset]:
    sets = sorted(set(sets), key=len, reverse=True)
    out: list[frozenset] = []
    for s in sets:
        if not any(s <= t for t in out):
            out.append(s)
    return out


def brute_supremal(k: Generator, l: Generator, flavor: Flavor | str | Predicate,
                   au: Iterable[str] | None = None, ao: Iterable[str] | None = None,
                   bound: int = SUPREMAL_BOUND) -> Generator:
    """Union of all property-satisfying subautomaton languages of K.

    Candidates are state-subautomata of the refined pair of (K, L) for
    controllability and of its observer-refined product for normality.
    Relative observability cuts single transitions (a state may keep some
    incoming edges and lose others), so for the R flavors the candidates are
    rooted transition subsets of the observer-refined product and ``bound``
    counts transitions.  ``flavor`` may also be a predicate on candidate
    generators (state subsets of the observer-refined product are used).
    """
    require_same_events(k, l)
    by_transition = False
    if callable(flavor) and not isinstance(flavor, Flavor):
        pred = flavor
        structure, inside = _candidate_structure(k, l, Flavor.N, ao)
    else:
        flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
        pred = property_predicate(k, l, flavor, au, ao)
        structure, inside = _candidate_structure(k, l, flavor, ao)
        by_transition = flavor in (Flavor.R_K, Flavor.R_L, Flavor.CR)
    if not inside:
        return empty(l.alphabet)
    if by_transition:
        edges = sum(1 for q in inside for t in structure.delta[q].values() if t in inside)
        if edges > bound:
            raise BoundError(f"{edges} candidate transitions exceed the oracle bound {bound}")
        candidates = rooted_transition_sets(structure, inside)
        build = lambda chosen: _transition_restrict(structure, chosen)
    else:
        if len(inside) > bound:
            raise BoundError(f"{len(inside)} candidate states exceed the oracle bound {bound}")
        candidates = rooted_subsets(structure, inside)
        build = structure.restrict
    good = [chosen for chosen in candidates if pred(build(chosen))]
    if not good:
        return empty(l.alphabet)
    return union([build(chosen) for chosen in _maximal_sets(good)]).relabel()


def brute_maximal_observable(k: Generator, l: Generator, ao: Iterable[str] | None = None,
                             with_controllability: bool = False, au: Iterable[str] | None = None,
                             bound: int = MAXIMAL_BOUND) -> list[Generator]:
    """The ⊆-maximal observable (optionally also controllable) subautomaton
    languages of K; ``[EMPTY]`` when only the empty language qualifies."""
    require_same_events(k, l)
    structure, inside = _candidate_structure(k, l, Flavor.N, ao)
    if not inside:
        return [empty(l.alphabet)]
    if len(inside) > bound:
        raise BoundError(f"{len(inside)} candidate states exceed the oracle bound {bound}")
    langs: list[Generator] = []
    for subset in rooted_subsets(structure, inside):
        m = structure.restrict(subset)
        if check_observability(m, l, ao) is not None:
            continue
        if with_controllability and check_controllability(m, l, au) is not None:
            continue
        langs.append(m)
    if not langs:
        return [empty(l.alphabet)]
    langs.sort(key=len, reverse=True)
    maximal: list[Generator] = []
    for m in langs:
        if any(language_leq(m, other)[0] for other in maximal):
            continue
        maximal = [o for o in maximal if not language_leq(o, m)[0]]
        maximal.append(m)
    return [m.relabel() for m in maximal]


# -- string-level fixpoint -------------------------------------------------

def bounded_string_supremal(k: Generator, l: Generator, flavor: Flavor | str, max_len: int,
                            au: Iterable[str] | None = None,
                            ao: Iterable[str] | None = None) -> frozenset:
    """Greatest fixpoint computed on explicit strings of length <= ``max_len``.

    A string is dropped only for a violation whose strings all lie within
    the bound, so the answer can exceed the true supremal near the bound;
    compare on a shorter prefix.
    """
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    au = l.alphabet.uncontrollable if au is None else frozenset(au)
    ao = l.alphabet.observable if ao is None else frozenset(ao)
    lang = enumerate_language(l, max_len).words
    cur = set(enumerate_language(k, max_len).words)
    ambient = set(cur) if flavor in (Flavor.R_K, Flavor.CR) else set(lang)
    parts = flavor.union_closed_parts
    events = sorted(l.events)

    def obs(s):
        return tuple(e for e in s if e in ao)

    by_obs: dict = {}
    for s in lang:
        by_obs.setdefault(obs(s), []).append(s)

    def doomed() -> set:
        out = set()
        for s in cur:
            if "C" in parts:
                for u in au:
                    su = s + (u,)
                    if su in lang and su not in cur:
                        out.add(s)
            if "N" in parts:
                if any(t not in cur for t in by_obs[obs(s)]):
                    out.add(s)
            if "R_K" in parts or "R_L" in parts:
                amb = set(lang) if "R_L" in parts else ambient
                for e in events:
                    se = s + (e,)
                    if se not in cur:
                        continue
                    for t in by_obs[obs(s)]:
                        te = t + (e,)
                        if t in amb and te in lang and te not in cur:
                            out.add(se)
                            break
        return out

    while True:
        bad = doomed()
        if not bad:
            return frozenset(cur)
        cur = {s for s in cur if not any(s[:i] in bad for i in range(len(s) + 1))}


# -- random instances ------------------------------------------------------

EVENT_POOL = ("a", "b", "c", "d", "e", "f", "g", "h")


@dataclass(frozen=True)
class InstanceParams:
    max_states: int = 5
    max_events: int = 4
    unobs_fraction: float = 0.3
    uncont_fraction: float = 0.3
    density: float = 0.55
    keep_state: float = 0.75
    drop_transition: float = 0.15
    modular: bool = False
    min_unobservable: int = 1
    min_uncontrollable: int = 1


@dataclass(frozen=True)
class Instance:
    k: Generator
    l: Generator


@dataclass(frozen=True)
class ModularSample:
    g1: Generator
    g2: Generator
    k: Generator


def _flags(rng: random.Random, events: list[str], p: InstanceParams) -> EventAlphabet:
    n = len(events)
    n_uo = min(n, max(p.min_unobservable, sum(rng.random() < p.unobs_fraction for _ in events)))
    n_uc = min(n, max(p.min_uncontrollable, sum(rng.random() < p.uncont_fraction for _ in events)))
    unobs = set(rng.sample(events, n_uo))
    uncont = set(rng.sample(events, n_uc))
    evs = frozenset(events)
    return EventAlphabet(evs, evs - uncont, evs - unobs)


def random_generator(rng: random.Random, alphabet: EventAlphabet, max_states: int,
                     density: float) -> Generator:
    n = rng.randint(1, max_states)
    events = sorted(alphabet.events)
    delta = {i: {} for i in range(n)}
    # a spanning chain keeps most states reachable
    for i in range(1, n):
        src = rng.randrange(i)
        delta[src][rng.choice(events)] = i
    for i in range(n):
        for e in events:
            if e not in delta[i] and rng.random() < density:
                delta[i][e] = rng.randrange(n)
    return accessible(Generator(alphabet, delta, 0)).relabel()


def random_subautomaton(rng: random.Random, g: Generator, p: InstanceParams) -> Generator:
    if g.is_empty:
        return g
    if rng.random() < 0.1:
        return g
    keep = {q for q in g.delta if q == g.initial or rng.random() < p.keep_state}
    delta = {q: {e: t for e, t in sorted(g.delta[q].items())
                 if t in keep and rng.random() >= p.drop_transition}
             for q in g.delta if q in keep}
    return accessible(Generator(g.alphabet, delta, g.initial)).relabel()


def random_instance(seed: int, params: InstanceParams | None = None):
    """Deterministic random instance: ``Instance(k, l)`` or, with
    ``params.modular``, ``ModularSample(g1, g2, k)`` with K inside the product."""
    p = params or InstanceParams()
    rng = random.Random(seed)
    if not p.modular:
        n_events = rng.randint(2, max(2, p.max_events))
        alphabet = _flags(rng, list(EVENT_POOL[:n_events]), p)
        l = random_generator(rng, alphabet, p.max_states, p.density)
        return Instance(random_subautomaton(rng, l, p), l)
    n_events = rng.randint(3, max(3, p.max_events))
    pool = list(EVENT_POOL[:n_events])
    alphabet = _flags(rng, pool, p)
    n_shared = rng.randint(1, max(1, n_events - 2))
    shared = pool[:n_shared]
    rest = pool[n_shared:]
    rng.shuffle(rest)
    cut = rng.randint(1, len(rest) - 1) if len(rest) > 1 else len(rest)
    a1 = alphabet.restrict(shared + rest[:cut])
    a2 = alphabet.restrict(shared + rest[cut:])
    g1 = random_generator(rng, a1, p.max_states, p.density)
    g2 = random_generator(rng, a2, p.max_states, p.density)
    plant = sync_product([g1, g2]).relabel()
    return ModularSample(g1, g2, random_subautomaton(rng, plant, p))


def local_instance(seed: int, params: InstanceParams | None = None) -> tuple[Instance, EventAlphabet]:
    """A (K, L) pair over a local alphabet plus a strictly larger global one."""
    p = params or InstanceParams()
    inst = random_instance(seed, p)
    rng = random.Random(seed * 7919 + 1)
    used = inst.l.events
    extra = [e for e in EVENT_POOL if e not in used][: rng.randint(1, 2)]
    extra_alpha = _flags(rng, extra, InstanceParams(min_unobservable=0, min_uncontrollable=0,
                                                      unobs_fraction=p.unobs_fraction,
                                                      uncont_fraction=p.uncont_fraction))
    return inst, inst.l.alphabet.merge(extra_alpha)


def search(predicate: Callable[[object], bool], seeds: Iterable[int],
           params: InstanceParams | None = None):
    """First seeded instance satisfying ``predicate``, as ``(seed, instance)``."""
    for seed in seeds:
        inst = random_instance(seed, params)
        if predicate(inst):
            return seed, inst
    raise InputError("no instance found in the given seed range")
