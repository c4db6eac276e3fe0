"""Definition-by-enumeration oracles.

These work on explicit finite string sets and never call the automaton
algorithms under test (only ``Generator.delta`` is read), so they give an
independent second route for every exact decision procedure.
"""

from __future__ import annotations

from itertools import product


def strings(g, n):
    """All strings of L(g) of length <= n, by walking the transition map."""
    if g.initial is None:
        return set()
    out = {()}
    frontier = [((), g.initial)]
    for _ in range(n):
        nxt = []
        for s, q in frontier:
            for e, t in g.delta[q].items():
                out.add(s + (e,))
                nxt.append((s + (e,), t))
        frontier = nxt
    return out


def all_strings(events, n):
    events = sorted(events)
    out = [()]
    for k in range(1, n + 1):
        out.extend(product(events, repeat=k))
    return out


def proj(s, keep):
    return tuple(e for e in s if e in keep)


def sync(langs_with_events, n):
    """Strings over the union alphabet up to n whose every projection lies in
    the corresponding language (languages given as (strings, events))."""
    union = set()
    for _, ev in langs_with_events:
        union |= set(ev)
    return {s for s in all_strings(union, n)
            if all(proj(s, ev) in lang for lang, ev in langs_with_events)}


def controllable(k, l, au, n):
    """Violations (w, u) with w in K, |w| <= n, wu in L \\ K.

    k and l are string sets enumerated to at least n + 1."""
    return sorted((w, u) for w in k if len(w) <= n for u in au
                  if w + (u,) in l and w + (u,) not in k)


def normal_violations(k, l, ao):
    obs_k = {proj(s, ao) for s in k}
    return sorted(s for s in l if proj(s, ao) in obs_k and s not in k)


def relobs_violations(k, c, l, ao, events, n):
    """(w, w', a): w in K, w' in C, both of length <= n, O(w) = O(w'),
    wa in K, w'a in L, w'a not in K.  Sets are enumerated to n + 1."""
    by_obs = {}
    for w2 in c:
        if len(w2) <= n:
            by_obs.setdefault(proj(w2, ao), []).append(w2)
    out = []
    for w in (w for w in k if len(w) <= n):
        for w2 in by_obs.get(proj(w, ao), ()):
            for a in sorted(events):
                if w + (a,) in k and w2 + (a,) in l and w2 + (a,) not in k:
                    out.append((w, w2, a))
    return out
