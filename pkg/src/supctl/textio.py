"""Text, JSON-ready and DOT forms of generators and alphabets.

Generator files hold one statement per line::

    alphabet: a:co b:o tau:
    states: s0 s1 s2
    initial: s0
    trans: s0 a s1

Flags after the colon: ``c`` controllable, ``o`` observable.  The empty
language is written as the ``alphabet:`` line followed by a lone ``EMPTY``.
``#`` starts a comment.
"""

from __future__ import annotations

from pathlib import Path

from .errors import InputError, ParseError
from .fsa import EventAlphabet, Generator

_KEYS = ("alphabet", "states", "initial", "trans")


def _statements(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "EMPTY":
            yield n, "EMPTY", []
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise ParseError(f"expected one of {', '.join(k + ':' for k in _KEYS)} or EMPTY", n)
        yield n, key, rest.split()


def _parse_alphabet(items: list[str], line: int) -> EventAlphabet:
    events, cont, obs = [], set(), set()
    for item in items:
        name, sep, flags = item.partition(":")
        if not sep or not name:
            raise ParseError(f"event {item!r} must be written name:flags (flags from 'c', 'o')", line)
        if name in events:
            raise ParseError(f"event {name!r} declared twice", line)
        if set(flags) - {"c", "o"} or len(set(flags)) != len(flags):
            raise ParseError(f"bad flags {flags!r} on event {name!r}", line)
        events.append(name)
        if "c" in flags:
            cont.add(name)
        if "o" in flags:
            obs.add(name)
    return EventAlphabet(frozenset(events), frozenset(cont), frozenset(obs))


def parse_alphabet(text: str) -> EventAlphabet:
    alphabet = None
    for n, key, args in _statements(text):
        if key != "alphabet":
            raise ParseError("an alphabet file holds a single alphabet: line", n)
        if alphabet is not None:
            raise ParseError("duplicate alphabet: line", n)
        alphabet = _parse_alphabet(args, n)
    if alphabet is None:
        raise ParseError("missing alphabet: line", 1)
    return alphabet


def parse_generator(text: str) -> Generator:
    alphabet = None
    states: list[str] | None = None
    initial = None
    trans: list = []
    seen: dict = {}
    is_empty = False
    last = 0
    for n, key, args in _statements(text):
        last = n
        if key == "alphabet":
            if alphabet is not None:
                raise ParseError("duplicate alphabet: line", n)
            alphabet = _parse_alphabet(args, n)
            continue
        if alphabet is None:
            raise ParseError("alphabet: must come first", n)
        if key == "EMPTY":
            if is_empty or states is not None:
                raise ParseError("EMPTY cannot be combined with states or repeated", n)
            is_empty = True
        elif is_empty:
            raise ParseError("an EMPTY generator has no states or transitions", n)
        elif key == "states":
            if states is not None:
                raise ParseError("duplicate states: line", n)
            if not args:
                raise ParseError("states: needs at least one state (use EMPTY for the empty language)", n)
            if len(set(args)) != len(args):
                raise ParseError("state declared twice", n)
            states = args
        elif key == "initial":
            if states is None:
                raise ParseError("initial: must follow states:", n)
            if initial is not None:
                raise ParseError("duplicate initial: line", n)
            if len(args) != 1:
                raise ParseError("initial: takes exactly one state", n)
            if args[0] not in states:
                raise ParseError(f"undeclared state {args[0]!r}", n)
            initial = args[0]
        else:
            if states is None:
                raise ParseError("trans: must follow states:", n)
            if len(args) != 3:
                raise ParseError("trans: takes source, event, target", n)
            q, e, t = args
            for s in (q, t):
                if s not in states:
                    raise ParseError(f"undeclared state {s!r}", n)
            if e not in alphabet.events:
                raise ParseError(f"undeclared event {e!r}", n)
            if (q, e) in seen:
                raise ParseError(f"duplicate transition from {q!r} on {e!r} (first on line {seen[q, e]})", n)
            seen[q, e] = n
            trans.append((q, e, t))
    if alphabet is None:
        raise ParseError("missing alphabet: line", max(last, 1))
    if is_empty:
        return Generator(alphabet, {}, None)
    if states is None:
        raise ParseError("missing states: line (or EMPTY)", max(last, 1))
    if initial is None:
        raise ParseError("missing initial: line", max(last, 1))
    return Generator.build(alphabet, states, initial, trans)


def format_alphabet(alphabet: EventAlphabet) -> str:
    items = []
    for e in alphabet.sorted():
        flags = ("c" if e in alphabet.controllable else "") + ("o" if e in alphabet.observable else "")
        items.append(f"{e}:{flags}")
    return "alphabet: " + " ".join(items)


def serialize_generator(g: Generator) -> str:
    """Canonical text: states renamed s0, s1, ... in breadth-first order."""
    lines = [format_alphabet(g.alphabet)]
    if g.is_empty:
        lines.append("EMPTY")
        return "\n".join(lines) + "\n"
    c = g.relabel()
    lines.append("states: " + " ".join(f"s{q}" for q in c.states))
    lines.append(f"initial: s{c.initial}")
    for q, e, t in c.transitions():
        lines.append(f"trans: s{q} {e} s{t}")
    return "\n".join(lines) + "\n"


def read_generator(path: str | Path) -> Generator:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_generator(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.reason}", exc.line) from None


def read_alphabet(path: str | Path) -> EventAlphabet:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_alphabet(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.reason}", exc.line) from None


def write_generator(g: Generator, path: str | Path) -> None:
    Path(path).write_text(serialize_generator(g), encoding="utf-8")


def generator_to_dict(g: Generator) -> dict:
    c = g.relabel()
    return {
        "alphabet": {
            "events": sorted(g.alphabet.events),
            "controllable": sorted(g.alphabet.controllable),
            "observable": sorted(g.alphabet.observable),
        },
        "empty": g.is_empty,
        "states": [] if g.is_empty else list(c.states),
        "initial": None if g.is_empty else c.initial,
        "transitions": [] if g.is_empty else [[q, e, t] for q, e, t in c.transitions()],
    }


def to_dot(g: Generator, name: str = "G") -> str:
    """Unobservable events are dashed; uncontrollable ones carry a ``!``."""
    c = g.relabel()
    out = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
    if c.is_empty:
        out.append('  empty [shape=plaintext, label="EMPTY"];')
    else:
        out.append('  init [shape=point];')
        for q in c.states:
            out.append(f'  s{q} [label="s{q}"];')
        out.append(f"  init -> s{c.initial};")
        for q, e, t in c.transitions():
            label = e + ("!" if e in g.alphabet.uncontrollable else "")
            style = ", style=dashed" if e in g.alphabet.unobservable else ""
            out.append(f'  s{q} -> s{t} [label="{label}"{style}];')
    out.append("}")
    return "\n".join(out) + "\n"
