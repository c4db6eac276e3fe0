"""Supremal sublanguage operators as subautomaton fixpoints.

``sup_controllable`` removes, in one pass, the states of the refined
recognizer of K that reach a non-K state of L by uncontrollable events.

``sup_normal`` and ``sup_rel_observable`` work on the product of the refined
pair with the observer of L (every state carries the current estimate: the
set of joint states reachable by observation-equal strings).  On that
product the fate of a string depends only on its state, so removal is exact:
normality removes states whose estimate contains a non-member, relative
observability removes the offending transitions.  Both repeat until nothing
is removed, re-deriving the product from the shrunken recognizer each round.
"""

from __future__ import annotations

import enum
from collections import deque
from typing import Iterable

from .errors import InputError, SupctlError
from .fsa import Generator, empty, refine_pair
from .langops import language_eq, require_same_events

MAX_ROUNDS = 10_000


class Flavor(enum.Enum):
    C = "C"
    N = "N"
    R_K = "R_K"
    R_L = "R_L"
    CN = "CN"
    CR = "CR"

    @classmethod
    def parse(cls, text: str) -> "Flavor":
        key = _ALIASES.get(text, text)
        try:
            return cls(key)
        except ValueError:
            raise InputError(f"unknown flavor {text!r}; choose from {sorted(_ALIASES)}") from None

    @property
    def cli_name(self) -> str:
        return _CLI_NAMES[self]

    @property
    def union_closed_parts(self) -> tuple[str, ...]:
        return {"C": ("C",), "N": ("N",), "R_K": ("R_K",), "R_L": ("R_L",),
                "CN": ("C", "N"), "CR": ("C", "R_K")}[self.value]


_ALIASES = {
    "c": "C", "n": "N", "r": "R_K", "R": "R_L", "cn": "CN", "cr": "CR",
    "supc": "C", "supn": "N", "supr": "R_K", "supR": "R_L", "supcn": "CN", "supcr": "CR",
}
_CLI_NAMES = {Flavor.C: "supc", Flavor.N: "supn", Flavor.R_K: "supr", Flavor.R_L: "supR",
              Flavor.CN: "supcn", Flavor.CR: "supcr"}


def _events(arg, default, universe, what):
    if arg is None:
        return default
    arg = frozenset(arg)
    if not arg <= universe:
        raise InputError(f"{what} events {sorted(arg - universe)} not in alphabet")
    return arg


def sup_controllable(k: Generator, l: Generator, au: Iterable[str] | None = None) -> Generator:
    require_same_events(k, l)
    au = _events(au, l.alphabet.uncontrollable, l.events, "uncontrollable")
    h, g = refine_pair(k, l)
    if h.is_empty:
        return empty(l.alphabet)
    # backward search from Q \ Q_H along uncontrollable edges
    preds: dict = {q: [] for q in g.delta}
    for q, out in g.delta.items():
        for e, t in out.items():
            if e in au:
                preds[t].append(q)
    bad = {q for q in g.delta if q not in h.delta}
    stack = list(bad)
    while stack:
        t = stack.pop()
        for q in preds[t]:
            if q not in bad:
                bad.add(q)
                stack.append(q)
    return g.restrict(set(h.delta) - bad).relabel()


# -- observer-refined product ---------------------------------------------

def joint_product(h: Generator, l: Generator, c: Generator | None = None) -> Generator:
    """Follow L while tracking positions in H and C (``None`` once left)."""
    hd = h.delta
    cd = c.delta if c is not None else None
    init = (h.initial, c.initial if c is not None else None, l.initial)
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        x, y, z = node
        out = delta[node]
        for e, z2 in l.delta[z].items():
            x2 = hd[x].get(e) if x is not None else None
            y2 = cd[y].get(e) if y is not None else None
            t = (x2, y2, z2)
            out[e] = t
            if t not in delta:
                delta[t] = {}
                queue.append(t)
    return Generator(l.alphabet, delta, init)


def _silent_closure(g: Generator, states, silent) -> frozenset:
    seen = set(states)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for e, t in g.delta[q].items():
            if e in silent and t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


def observer_refine(g: Generator, ao: frozenset) -> Generator:
    """Product of ``g`` with its own observer; states are ``(q, estimate)``."""
    silent = g.events - ao
    init = (g.initial, _silent_closure(g, [g.initial], silent))
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        q, est = node
        out = delta[node]
        for e in sorted(g.delta[q]):
            q2 = g.delta[q][e]
            if e in ao:
                est2 = _silent_closure(g, {g.delta[y][e] for y in est if e in g.delta[y]}, silent)
            else:
                est2 = est
            t = (q2, est2)
            out[e] = t
            if t not in delta:
                delta[t] = {}
                queue.append(t)
    return Generator(g.alphabet, delta, init)


def refined_structure(k: Generator, l: Generator, ao: frozenset,
                      c: Generator | None = None) -> tuple[Generator, frozenset]:
    """Observer-refined recognizer of L and the set of its states inside K."""
    r = observer_refine(joint_product(k, l, c), ao)
    inside = frozenset(s for s in r.delta if s[0][0] is not None)
    return r, inside


def sup_normal(k: Generator, l: Generator, ao: Iterable[str] | None = None) -> Generator:
    require_same_events(k, l)
    ao = _events(ao, l.alphabet.observable, l.events, "observable")
    h, _ = refine_pair(k, l)
    for _round in range(MAX_ROUNDS):
        if h.is_empty:
            return empty(l.alphabet)
        r, inside = refined_structure(h, l, ao)
        bad = {s for s in inside if any(y[0] is None for y in s[1])}
        if not bad:
            return h.with_alphabet(l.alphabet).relabel()
        h = r.restrict(inside - bad).relabel()
    raise SupctlError("sup_normal did not converge")  # pragma: no cover


def sup_rel_observable(k: Generator, c: Generator, l: Generator,
                       ao: Iterable[str] | None = None) -> Generator:
    """Supremal C-observable sublanguage of K w.r.t. L; C stays fixed."""
    require_same_events(k, c, l)
    ao = _events(ao, l.alphabet.observable, l.events, "observable")
    h, _ = refine_pair(k, l)
    for _round in range(MAX_ROUNDS):
        if h.is_empty:
            return empty(l.alphabet)
        r, inside = refined_structure(h, l, ao, c)
        hd, ld = h.delta, l.delta
        cut: set = set()
        for s in inside:
            (x, _, _), est = s
            for e, t in r.delta[s].items():
                if t not in inside:
                    continue
                for (x2, y2, z2) in est:
                    if y2 is not None and e in ld[z2] and (x2 is None or e not in hd[x2]):
                        cut.add((s, e))
                        break
        if not cut:
            return h.with_alphabet(l.alphabet).relabel()
        delta = {s: {e: t for e, t in r.delta[s].items() if t in inside and (s, e) not in cut}
                 for s in inside}
        h = Generator(l.alphabet, delta, r.initial).restrict(inside).relabel()
    raise SupctlError("sup_rel_observable did not converge")  # pragma: no cover


def sup_combined(k: Generator, l: Generator, flavor: Flavor | str,
                 au: Iterable[str] | None = None, ao: Iterable[str] | None = None) -> Generator:
    """Alternate ↑c with ↑n (CN) or ↑r against the original K (CR) until stable."""
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    if flavor not in (Flavor.CN, Flavor.CR):
        raise InputError(f"sup_combined needs CN or CR, got {flavor.value}")
    require_same_events(k, l)
    original = k
    current = k
    for _round in range(MAX_ROUNDS):
        step = sup_controllable(current, l, au)
        if flavor is Flavor.CN:
            step = sup_normal(step, l, ao)
        else:
            step = sup_rel_observable(step, original, l, ao)
        if language_eq(step, current):
            return step
        current = step
    raise SupctlError("sup_combined did not converge")  # pragma: no cover


def synthesize(k: Generator, l: Generator, flavor: Flavor | str,
               au: Iterable[str] | None = None, ao: Iterable[str] | None = None) -> Generator:
    flavor = Flavor.parse(flavor) if isinstance(flavor, str) else flavor
    if flavor is Flavor.C:
        return sup_controllable(k, l, au)
    if flavor is Flavor.N:
        return sup_normal(k, l, ao)
    if flavor is Flavor.R_K:
        return sup_rel_observable(k, k, l, ao)
    if flavor is Flavor.R_L:
        return sup_rel_observable(k, l, l, ao)
    return sup_combined(k, l, flavor, au, ao)
