"""Deterministic generators of prefix-closed languages.

A :class:`Generator` is a DFA with a partial transition function in which
every state is accepting, so ``L(G)`` is the set of strings along which the
transition function is defined.  Strings are tuples of event names because
events are allowed to be multi-character (``tau``, ``b1``).

The empty language is represented by a generator with no states at all
(see :func:`empty`); every operation in the package accepts it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import ConsistencyError, InclusionError, InputError

State = Hashable
Word = tuple  # tuple[str, ...]


def word(text: str | Sequence[str]) -> Word:
    """``word("a tau b") == ("a", "tau", "b")``; sequences pass through."""
    if isinstance(text, str):
        return tuple(text.split())
    return tuple(text)


def fmt_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "ε"


@dataclass(frozen=True)
class EventAlphabet:
    events: frozenset
    controllable: frozenset = frozenset()
    observable: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "events", frozenset(self.events))
        object.__setattr__(self, "controllable", frozenset(self.controllable))
        object.__setattr__(self, "observable", frozenset(self.observable))
        if not self.controllable <= self.events:
            raise InputError(f"controllable events {sorted(self.controllable - self.events)} not in alphabet")
        if not self.observable <= self.events:
            raise InputError(f"observable events {sorted(self.observable - self.events)} not in alphabet")

    @classmethod
    def of(cls, events: str | Iterable[str], *, uncontrollable: str | Iterable[str] = (),
           unobservable: str | Iterable[str] = ()) -> "EventAlphabet":
        """Alphabet where everything is controllable and observable unless listed."""
        evs = frozenset(word(events))
        unc = frozenset(word(uncontrollable))
        uno = frozenset(word(unobservable))
        return cls(evs, evs - unc, evs - uno)

    @property
    def uncontrollable(self) -> frozenset:
        return self.events - self.controllable

    @property
    def unobservable(self) -> frozenset:
        return self.events - self.observable

    def sorted(self) -> list[str]:
        return sorted(self.events)

    def restrict(self, subset: Iterable[str]) -> "EventAlphabet":
        sub = frozenset(subset)
        if not sub <= self.events:
            raise InputError(f"events {sorted(sub - self.events)} not in alphabet")
        return EventAlphabet(sub, self.controllable & sub, self.observable & sub)

    def merge(self, other: "EventAlphabet") -> "EventAlphabet":
        """Union of two alphabets; shared events must carry identical flags."""
        shared = self.events & other.events
        bad_c = (self.controllable ^ other.controllable) & shared
        bad_o = (self.observable ^ other.observable) & shared
        if bad_c or bad_o:
            raise ConsistencyError(
                f"inconsistent flags on shared events: controllability {sorted(bad_c)}, "
                f"observability {sorted(bad_o)}")
        return EventAlphabet(self.events | other.events,
                             self.controllable | other.controllable,
                             self.observable | other.observable)

    def with_flags(self, *, controllable: Iterable[str] | None = None,
                   observable: Iterable[str] | None = None) -> "EventAlphabet":
        return EventAlphabet(
            self.events,
            self.controllable if controllable is None else frozenset(controllable) & self.events,
            self.observable if observable is None else frozenset(observable) & self.events,
        )


@dataclass(frozen=True, eq=False)
class Generator:
    """Deterministic generator ``(Q, A, delta, q0)``.

    ``delta`` maps every state to its outgoing ``{event: target}`` table; the
    insertion order of ``delta`` is the state order used for output.  Treat
    instances as immutable.
    """

    alphabet: EventAlphabet
    delta: Mapping
    initial: State | None

    def __post_init__(self):
        if self.initial is None:
            if self.delta:
                raise InputError("a generator without initial state must have no states")
            return
        if self.initial not in self.delta:
            raise InputError(f"initial state {self.initial!r} is not a state")
        events = self.alphabet.events
        for q, out in self.delta.items():
            for e, t in out.items():
                if e not in events:
                    raise InputError(f"event {e!r} on state {q!r} not in alphabet")
                if t not in self.delta:
                    raise InputError(f"transition {q!r} -{e}-> {t!r} targets an unknown state")

    # construction ---------------------------------------------------------

    @classmethod
    def build(cls, alphabet: EventAlphabet, states: Iterable[State], initial: State | None,
              transitions: Iterable[tuple[State, str, State]]) -> "Generator":
        delta: dict = {q: {} for q in states}
        for q, e, t in transitions:
            if q not in delta:
                raise InputError(f"unknown source state {q!r}")
            if e in delta[q] and delta[q][e] != t:
                raise InputError(f"nondeterministic transitions on ({q!r}, {e!r})")
            delta[q][e] = t
        return cls(alphabet, delta, initial)

    # basic queries --------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.initial is None

    @property
    def states(self) -> tuple:
        return tuple(self.delta)

    @property
    def events(self) -> frozenset:
        return self.alphabet.events

    def __len__(self) -> int:
        return len(self.delta)

    def transitions(self) -> Iterator[tuple[State, str, State]]:
        for q, out in self.delta.items():
            for e in sorted(out):
                yield q, e, out[e]

    def step(self, q: State, e: str) -> State | None:
        return self.delta[q].get(e)

    def run(self, s: Sequence[str], start: State | None = None) -> State | None:
        q = self.initial if start is None else start
        for e in s:
            if q is None:
                return None
            q = self.delta[q].get(e)
        return q

    def restrict(self, keep: Iterable[State]) -> "Generator":
        """Subautomaton on the states in ``keep``, trimmed to its accessible part."""
        keep = set(keep)
        if self.initial not in keep:
            return empty(self.alphabet)
        delta = {q: {e: t for e, t in out.items() if t in keep}
                 for q, out in self.delta.items() if q in keep}
        return accessible(Generator(self.alphabet, delta, self.initial))

    def relabel(self) -> "Generator":
        """Copy with states renamed 0..n-1 in breadth-first discovery order."""
        order = bfs_order(self)
        index = {q: i for i, q in enumerate(order)}
        delta = {index[q]: {e: index[t] for e, t in sorted(self.delta[q].items())} for q in order}
        return Generator(self.alphabet, delta, 0 if order else None)

    def with_alphabet(self, alphabet: EventAlphabet) -> "Generator":
        """Same automaton over a different flag assignment (events may only grow)."""
        if not self.alphabet.events <= alphabet.events:
            raise InputError("new alphabet must contain the old events")
        return Generator(alphabet, self.delta, self.initial)

    def __repr__(self) -> str:
        if self.is_empty:
            return f"Generator(EMPTY over {sorted(self.events)})"
        n_trans = sum(len(out) for out in self.delta.values())
        return f"Generator({len(self)} states, {n_trans} transitions over {sorted(self.events)})"


def empty(alphabet: EventAlphabet) -> Generator:
    return Generator(alphabet, {}, None)


def epsilon(alphabet: EventAlphabet) -> Generator:
    """One-state generator of ``{ε}``."""
    return Generator(alphabet, {0: {}}, 0)


def from_words(alphabet: EventAlphabet, words: Iterable[str | Sequence[str]]) -> Generator:
    """Trie generator of the prefix closure of ``words``.

    Passing no words yields ``{ε}``; use :func:`empty` for the empty language.
    """
    delta: dict = {(): {}}
    for w in words:
        w = word(w)
        node: tuple = ()
        for e in w:
            if e not in alphabet.events:
                raise InputError(f"event {e!r} not in alphabet")
            nxt = node + (e,)
            delta[node][e] = nxt
            delta.setdefault(nxt, {})
            node = nxt
    return Generator(alphabet, delta, ()).relabel()


def bfs_order(g: Generator) -> list:
    """Reachable states in breadth-first order, events explored alphabetically."""
    if g.is_empty:
        return []
    seen = {g.initial}
    order = [g.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for e in sorted(g.delta[q]):
            t = g.delta[q][e]
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def access_words(g: Generator) -> dict:
    """Shortlex-least access string of every reachable state."""
    if g.is_empty:
        return {}
    acc = {g.initial: ()}
    queue = deque([g.initial])
    while queue:
        q = queue.popleft()
        for e in sorted(g.delta[q]):
            t = g.delta[q][e]
            if t not in acc:
                acc[t] = acc[q] + (e,)
                queue.append(t)
    return acc


def accessible(g: Generator) -> Generator:
    if g.is_empty:
        return g
    order = bfs_order(g)
    if len(order) == len(g.delta):
        return g
    delta = {q: dict(g.delta[q]) for q in order}
    return Generator(g.alphabet, delta, g.initial)


def generates(g: Generator, s: str | Sequence[str]) -> bool:
    s = word(s)
    for e in s:
        if e not in g.events:
            raise InputError(f"event {e!r} not in alphabet {sorted(g.events)}")
    if g.is_empty:
        return False
    return g.run(s) is not None


@dataclass(frozen=True)
class StringSet:
    """Finite snapshot of a language: all member strings up to ``bound``."""

    words: frozenset
    bound: int
    alphabet: frozenset = field(default=frozenset())

    def __contains__(self, s) -> bool:
        return word(s) in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(sorted(self.words, key=lambda w: (len(w), w)))

    def __eq__(self, other) -> bool:
        if isinstance(other, StringSet):
            return self.words == other.words
        return self.words == frozenset(word(w) for w in other)

    def __hash__(self) -> int:
        return hash(self.words)

    def truncate(self, n: int) -> "StringSet":
        return StringSet(frozenset(w for w in self.words if len(w) <= n), min(n, self.bound), self.alphabet)


def enumerate_language(g: Generator, max_len: int) -> StringSet:
    out: set = set()
    if not g.is_empty:
        frontier = [((), g.initial)]
        out.add(())
        for _ in range(max_len):
            nxt = []
            for s, q in frontier:
                for e, t in g.delta[q].items():
                    nxt.append((s + (e,), t))
                    out.add(s + (e,))
            frontier = nxt
    return StringSet(frozenset(out), max_len, g.events)


@dataclass(frozen=True)
class Projection:
    """Natural projection from ``source`` events onto the subset ``target``."""

    source: frozenset
    target: frozenset

    def __post_init__(self):
        object.__setattr__(self, "source", frozenset(self.source))
        object.__setattr__(self, "target", frozenset(self.target))
        if not self.target <= self.source:
            raise InputError(f"projection target {sorted(self.target - self.source)} outside source")

    def __call__(self, s: Sequence[str]) -> Word:
        return tuple(e for e in s if e in self.target)


def _tracked_product(k: Generator, l: Generator) -> Generator:
    """Product of ``l`` with ``k`` where ``k`` may fall out (component None)."""
    init = (k.initial, l.initial)
    delta: dict = {init: {}}
    queue = deque([init])
    while queue:
        node = queue.popleft()
        x, y = node
        out = delta[node]
        for e in sorted(l.delta[y]):
            y2 = l.delta[y][e]
            x2 = k.delta[x].get(e) if x is not None else None
            t = (x2, y2)
            out[e] = t
            if t not in delta:
                delta[t] = {}
                queue.append(t)
    return Generator(l.alphabet, delta, init)


def refine_pair(k: Generator, l: Generator) -> tuple[Generator, Generator]:
    """Recognizers ``(H, G)`` of ``K`` and ``L`` with ``H`` a subautomaton of ``G``.

    ``G`` tracks ``L`` together with the position of ``K`` (``None`` once the
    string has left ``K``); ``H`` keeps the states where that position is
    defined.  States of both are renumbered consistently from 0.
    """
    from .langops import language_leq, require_same_events  # cycle: langops imports fsa

    require_same_events(k, l)
    if l.is_empty:
        if not k.is_empty:
            raise InclusionError("K is not contained in L", ())
        return k, l
    ok, wit = language_leq(k, l)
    if not ok:
        raise InclusionError(f"K is not contained in L (witness {fmt_word(wit)})", wit)
    prod = _tracked_product(k, l)
    order = bfs_order(prod)
    index = {q: i for i, q in enumerate(order)}
    g_delta = {index[q]: {e: index[t] for e, t in prod.delta[q].items()} for q in order}
    g = Generator(l.alphabet, g_delta, 0)
    if k.is_empty:
        return empty(l.alphabet), g
    h = g.restrict({index[q] for q in order if q[0] is not None})
    return h, g


def is_subautomaton(h: Generator, g: Generator) -> bool:
    """``H``'s states are ``G``'s and its transitions are ``G``'s restricted to them."""
    if h.is_empty:
        return True
    if h.initial != g.initial or not set(h.delta) <= set(g.delta):
        return False
    for q, out in h.delta.items():
        expected = {e: t for e, t in g.delta[q].items() if t in h.delta}
        if out != expected:
            return False
    return True
