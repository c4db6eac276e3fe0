"""Exact decision procedures for controllability, (relative) observability
and normality.

Every check returns ``None`` when the property holds and a :class:`Witness`
otherwise.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .errors import InputError
from .fsa import Generator, Word, access_words, fmt_word, refine_pair
from .langops import intersection, language_leq, observation_closure, require_same_events

CONTROLLABILITY = "controllability"
OBSERVABILITY = "observability"
NORMALITY = "normality"


@dataclass(frozen=True)
class Witness:
    """Counterexample to one of the properties.

    controllability: ``w`` in K, ``w a`` in L but not in K.
    observability:   ``w`` in K, ``w2`` in C, same observation, ``w a`` in K,
                     ``w2 a`` in L but not in K.
    normality:       ``w`` in L and observation-equal to a string of K, yet
                     ``w`` not in K.

    ``side`` is set by the mutual conditions (``"1"`` or ``"2"``: the plant
    whose inclusion failed); ``condition`` names the condition.
    """

    kind: str
    w: Word
    w2: Word | None = None
    a: str | None = None
    side: str | None = None
    condition: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "w": list(self.w),
            "w_prime": None if self.w2 is None else list(self.w2),
            "event": self.a,
            "side": self.side,
            "condition": self.condition,
        }

    def __str__(self) -> str:
        parts = [f"{self.kind}: w={fmt_word(self.w)}"]
        if self.w2 is not None:
            parts.append(f"w'={fmt_word(self.w2)}")
        if self.a is not None:
            parts.append(f"a={self.a}")
        if self.side is not None:
            parts.append(f"side={self.side}")
        return " ".join(parts)


def _event_set(events: Iterable[str] | None, default: frozenset, universe: frozenset, what: str) -> frozenset:
    if events is None:
        return default
    events = frozenset(events)
    if not events <= universe:
        raise InputError(f"{what} events {sorted(events - universe)} not in alphabet")
    return events


def check_controllability(k: Generator, l: Generator, au: Iterable[str] | None = None) -> Witness | None:
    """``K Au ∩ L ⊆ K``, decided on the refined pair of recognizers."""
    require_same_events(k, l)
    au = _event_set(au, l.alphabet.uncontrollable, l.events, "uncontrollable")
    h, g = refine_pair(k, l)
    if h.is_empty or not au:
        return None
    order = sorted(au)
    for q, w in access_words(h).items():
        for u in order:
            t = g.delta[q].get(u)
            if t is not None and t not in h.delta:
                return Witness(CONTROLLABILITY, w, a=u)
    return None


def relobs_witness(k: Generator, c: Generator, l: Generator, ao: frozenset) -> Witness | None:
    """Search the verifier for a relative-observability violation.

    No inclusion between the three languages is assumed.  Nodes are pairs of
    (position of ``w`` in K) and (positions of ``w'`` in K, C, L); the search
    runs best-first on ``(|w|+|w'|, |w|, w, w')`` so the first violation
    found is the least one in that order.
    """
    if k.is_empty or c.is_empty or l.is_empty:
        return None
    events = sorted(k.events)
    kd, cd, ld = k.delta, c.delta, l.delta
    start = (k.initial, (k.initial, c.initial, l.initial))
    heap = [(0, 0, (), (), start)]
    done = set()
    while heap:
        total, n_w, w, w2, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        x, (kx, cx, lx) = node
        for e in events:
            if e in kd[x] and e in ld[lx] and (kx is None or e not in kd[kx]):
                return Witness(OBSERVABILITY, w, w2, e)
        for e in events:
            xe = kd[x].get(e)
            ce, le = cd[cx].get(e), ld[lx].get(e)
            w2_moves = ce is not None and le is not None
            kxe = kd[kx].get(e) if kx is not None else None
            if e in ao:
                if xe is not None and w2_moves:
                    nxt = (xe, (kxe, ce, le))
                    if nxt not in done:
                        heapq.heappush(heap, (total + 2, n_w + 1, w + (e,), w2 + (e,), nxt))
            else:
                if xe is not None:
                    nxt = (xe, (kx, cx, lx))
                    if nxt not in done:
                        heapq.heappush(heap, (total + 1, n_w + 1, w + (e,), w2, nxt))
                if w2_moves:
                    nxt = (x, (kxe, ce, le))
                    if nxt not in done:
                        heapq.heappush(heap, (total + 1, n_w, w, w2 + (e,), nxt))
    return None


def check_rel_observability(k: Generator, c: Generator, l: Generator,
                            ao: Iterable[str] | None = None) -> Witness | None:
    """Is K C-observable with respect to L and ``ao``?  Requires only K ⊆ L."""
    require_same_events(k, c, l)
    ao = _event_set(ao, l.alphabet.observable, l.events, "observable")
    refine_pair(k, l)  # raises on K ⊄ L
    return relobs_witness(k, c, l, ao)


def check_observability(k: Generator, l: Generator, ao: Iterable[str] | None = None) -> Witness | None:
    return check_rel_observability(k, k, l, ao)


def check_normality(k: Generator, l: Generator, ao: Iterable[str] | None = None) -> Witness | None:
    """``O^{-1} O(K) ∩ L ⊆ K``."""
    require_same_events(k, l)
    ao = _event_set(ao, l.alphabet.observable, l.events, "observable")
    refine_pair(k, l)
    if k.is_empty:
        return None
    closure = intersection(observation_closure(k, l.alphabet, ao), l)
    ok, wit = language_leq(closure, k)
    if ok:
        return None
    return Witness(NORMALITY, wit)
