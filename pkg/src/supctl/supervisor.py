"""Feedback supervisors under partial observation and their closed loops."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .fsa import EventAlphabet, Generator, refine_pair
from .langops import natural_projection, require_same_events


@dataclass(frozen=True)
class Supervisor:
    """Observer of the target language plus one control pattern per observer
    state.  Observations the observer cannot follow get ``default``, which
    is the set of uncontrollable events."""

    alphabet: EventAlphabet
    observer: Generator
    patterns: dict
    default: frozenset

    def __post_init__(self):
        au = self.alphabet.uncontrollable
        for q, gamma in self.patterns.items():
            if not au <= gamma:
                raise InputError(f"pattern at {q!r} misses uncontrollable events {sorted(au - gamma)}")
        if not au <= self.default:
            raise InputError("default pattern must contain every uncontrollable event")

    def pattern(self, state) -> frozenset:
        return self.default if state is None else self.patterns[state]

    def to_dict(self) -> dict:
        obs = self.observer
        states = list(obs.delta)
        return {
            "alphabet": {
                "events": sorted(self.alphabet.events),
                "controllable": sorted(self.alphabet.controllable),
                "observable": sorted(self.alphabet.observable),
            },
            "states": states,
            "initial": obs.initial,
            "transitions": [[q, e, t] for q, e, t in obs.transitions()],
            "patterns": {str(q): sorted(self.patterns[q]) for q in states},
            "default_pattern": sorted(self.default),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Supervisor":
        try:
            a = data["alphabet"]
            alphabet = EventAlphabet(frozenset(a["events"]), frozenset(a["controllable"]),
                                     frozenset(a["observable"]))
            obs_alpha = alphabet.restrict(alphabet.observable)
            observer = Generator.build(obs_alpha, data["states"], data["initial"],
                                       [tuple(t) for t in data["transitions"]])
            patterns = {q: frozenset(data["patterns"][str(q)]) for q in data["states"]}
            default = frozenset(data["default_pattern"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed supervisor document: {exc}") from None
        for gamma in list(patterns.values()) + [default]:
            if not gamma <= alphabet.events:
                raise InputError(f"pattern events {sorted(gamma - alphabet.events)} not in alphabet")
        return cls(alphabet, observer, patterns, default)


def induce_supervisor(ksyn: Generator, l: Generator, ac: Iterable[str] | None = None,
                      ao: Iterable[str] | None = None) -> Supervisor:
    """Enable a controllable event after an observation iff some string of
    ``ksyn`` with that observation continues with it inside ``ksyn``."""
    require_same_events(ksyn, l)
    if ksyn.is_empty:
        raise InputError("cannot realize the empty language")
    refine_pair(ksyn, l)
    alphabet = l.alphabet
    if ac is not None or ao is not None:
        alphabet = alphabet.with_flags(
            controllable=alphabet.controllable if ac is None else ac,
            observable=alphabet.observable if ao is None else ao)
    au = alphabet.uncontrollable
    raw = natural_projection(ksyn.with_alphabet(alphabet), alphabet.observable)
    patterns = {}
    for est in raw.delta:
        enabled = {e for q in est for e in ksyn.delta[q]} & alphabet.controllable
        patterns[est] = frozenset(au | enabled)
    names = {est: i for i, est in enumerate(raw.delta)}
    observer = _rename(raw, names)
    return Supervisor(alphabet, observer, {names[s]: p for s, p in patterns.items()}, frozenset(au))


def _rename(g: Generator, names: dict) -> Generator:
    delta = {names[q]: {e: names[t] for e, t in out.items()} for q, out in g.delta.items()}
    return Generator(g.alphabet, delta, names[g.initial])


def closed_loop(sup: Supervisor, g: Generator) -> Generator:
    """Generator of L(S/G): ``wa`` survives iff it is in L(G) and ``a`` is in
    the pattern issued after observing ``w``."""
    if g.events != sup.alphabet.events:
        raise InputError(f"supervisor alphabet {sorted(sup.alphabet.events)} "
                         f"differs from plant alphabet {sorted(g.events)}")
    if g.is_empty:
        return g
    obs = sup.observer
    observable = sup.alphabet.observable
    init = (g.initial, obs.initial)
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        q, o = node
        gamma = sup.pattern(o)
        out = delta[node]
        for e in sorted(g.delta[q]):
            if e not in gamma:
                continue
            o2 = o
            if e in observable:
                o2 = obs.delta[o].get(e) if o is not None else None
            t = (g.delta[q][e], o2)
            out[e] = t
            if t not in delta:
                delta[t] = {}
                queue.append(t)
    return Generator(g.alphabet, delta, init).relabel()
