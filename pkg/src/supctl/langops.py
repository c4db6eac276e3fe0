"""Language operations on generators: product, projection, inclusion."""

from __future__ import annotations

from collections import deque
from functools import reduce
from typing import Iterable, Sequence

from .errors import InputError
from .fsa import EventAlphabet, Generator, Projection, Word, accessible, empty


def require_same_events(*gens: Generator) -> None:
    first = gens[0].events
    for g in gens[1:]:
        if g.events != first:
            raise InputError(
                f"alphabet mismatch: {sorted(first)} vs {sorted(g.events)}")


def project_string(s: Sequence[str], p: Projection | Iterable[str]) -> Word:
    target = p.target if isinstance(p, Projection) else frozenset(p)
    return tuple(e for e in s if e in target)


def sync_product(gs: Sequence[Generator]) -> Generator:
    """Synchronous product; shared events must carry identical flags."""
    gs = list(gs)
    if not gs:
        raise InputError("sync_product needs at least one generator")
    alphabet = reduce(EventAlphabet.merge, (g.alphabet for g in gs))
    if any(g.is_empty for g in gs):
        return empty(alphabet)
    if len(gs) == 1:
        return accessible(gs[0].with_alphabet(alphabet))
    events = sorted(alphabet.events)
    # per event: indices of the components that take part in it
    owners = {e: [i for i, g in enumerate(gs) if e in g.events] for e in events}
    init = tuple(g.initial for g in gs)
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        out = delta[node]
        for e in events:
            nxt = list(node)
            for i in owners[e]:
                t = gs[i].delta[node[i]].get(e)
                if t is None:
                    break
                nxt[i] = t
            else:
                t = tuple(nxt)
                out[e] = t
                if t not in delta:
                    delta[t] = {}
                    queue.append(t)
    return Generator(alphabet, delta, init)


def intersection(g1: Generator, g2: Generator) -> Generator:
    require_same_events(g1, g2)
    return sync_product([g1, g2])


def union(gs: Sequence[Generator]) -> Generator:
    """Generator of the union of same-alphabet prefix-closed languages.

    States are tuples with one (possibly dead, ``None``) position per operand.
    """
    gs = list(gs)
    if not gs:
        raise InputError("union needs at least one generator")
    require_same_events(*gs)
    alphabet = reduce(EventAlphabet.merge, (g.alphabet for g in gs))
    gs = [g for g in gs if not g.is_empty]
    if not gs:
        return empty(alphabet)
    events = sorted(alphabet.events)
    init = tuple(g.initial for g in gs)
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        out = delta[node]
        for e in events:
            t = tuple(None if q is None else g.delta[q].get(e) for g, q in zip(gs, node))
            if any(x is not None for x in t):
                out[e] = t
                if t not in delta:
                    delta[t] = {}
                    queue.append(t)
    return Generator(alphabet, delta, init)


def _closure(g: Generator, states: Iterable, silent: frozenset) -> frozenset:
    seen = set(states)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for e, t in g.delta[q].items():
            if e in silent and t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def natural_projection(g: Generator, keep: Iterable[str]) -> Generator:
    """Observer of ``g`` onto ``keep``: accessible subset construction, unminimized."""
    keep = frozenset(keep)
    if not keep <= g.events:
        raise InputError(f"projection events {sorted(keep - g.events)} not in alphabet")
    alphabet = g.alphabet.restrict(keep)
    if g.is_empty:
        return empty(alphabet)
    silent = g.events - keep
    events = sorted(keep)
    init = _closure(g, [g.initial], silent)
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        x = queue.popleft()
        out = delta[x]
        for e in events:
            step = {g.delta[q][e] for q in x if e in g.delta[q]}
            if not step:
                continue
            t = _closure(g, step, silent)
            out[e] = t
            if t not in delta:
                delta[t] = {}
                queue.append(t)
    return Generator(alphabet, delta, init)


def inverse_projection(g: Generator, full: EventAlphabet) -> Generator:
    """Lift ``g`` to ``full`` by self-looping every event it does not know."""
    alphabet = g.alphabet.merge(full)
    if alphabet.events != full.events:
        raise InputError(f"events {sorted(g.events - full.events)} not in the target alphabet")
    if g.is_empty:
        return empty(full)
    extra = sorted(full.events - g.events)
    if not extra:
        return g.with_alphabet(full)
    delta = {}
    for q, out in g.delta.items():
        row = dict(out)
        for e in extra:
            row[e] = q
        delta[q] = row
    return Generator(full, delta, g.initial)


def language_leq(g1: Generator, g2: Generator) -> tuple[bool, Word | None]:
    """Decide ``L(g1) <= L(g2)``; on failure return the shortlex-least witness."""
    require_same_events(g1, g2)
    if g1.is_empty:
        return True, None
    if g2.is_empty:
        return False, ()
    init = (g1.initial, g2.initial)
    seen = {init: ()}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        x, y = node
        w = seen[node]
        out1, out2 = g1.delta[x], g2.delta[y]
        for e in sorted(out1):
            if e not in out2:
                return False, w + (e,)
            t = (out1[e], out2[e])
            if t not in seen:
                seen[t] = w + (e,)
                queue.append(t)
    return True, None


def language_eq(g1: Generator, g2: Generator) -> bool:
    return language_leq(g1, g2)[0] and language_leq(g2, g1)[0]


def language_diff_witness(g1: Generator, g2: Generator) -> Word | None:
    """Shortlex-least string in exactly one of the two languages, or None."""
    ok1, w1 = language_leq(g1, g2)
    ok2, w2 = language_leq(g2, g1)
    cands = [w for w in (w1, w2) if w is not None]
    if not cands:
        return None
    return min(cands, key=lambda w: (len(w), w))


def observation_closure(g: Generator, full: EventAlphabet, observable: Iterable[str]) -> Generator:
    """Generator of ``O^{-1} O (L(g))`` over ``full``."""
    return inverse_projection(natural_projection(g, frozenset(observable) & g.events), full)
