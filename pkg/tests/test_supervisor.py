import pytest

from supctl.checks import check_controllability, check_observability
from supctl.errors import InputError
from supctl.fsa import EventAlphabet, empty, enumerate_language, from_words
from supctl.langops import language_eq, language_leq
from supctl.oracle import random_instance
from supctl.supervisor import Supervisor, closed_loop, induce_supervisor
from supctl.synthesis import Flavor, synthesize


def test_full_observation_patterns():
    a = EventAlphabet.of("a b u", uncontrollable="u")
    l = from_words(a, ["a b", "a u", "b"])
    k = from_words(a, ["a u", "b"])
    sup = induce_supervisor(k, l)
    assert sup.pattern(sup.observer.initial) == {"a", "b", "u"}
    after_a = sup.observer.step(sup.observer.initial, "a")
    assert sup.pattern(after_a) == {"u"}
    assert language_eq(closed_loop(sup, l), k)


def test_target_equal_to_plant_enables_everything():
    inst = random_instance(2)
    sup = induce_supervisor(inst.l, inst.l)
    assert language_eq(closed_loop(sup, inst.l), inst.l)


def test_pattern_for_unobservable_example():
    a = EventAlphabet(frozenset({"a", "tau"}), frozenset({"a"}), frozenset({"a"}))
    l = from_words(a, ["a", "tau a"])
    k = from_words(a, ["tau"])
    sup = induce_supervisor(k, l)
    assert len(sup.observer) == 1
    assert sup.pattern(sup.observer.initial) == {"tau"}
    assert enumerate_language(closed_loop(sup, l), 3) == ["", "tau"]


def test_errors_and_empty_plant():
    a = EventAlphabet.of("a u", uncontrollable="u")
    l = from_words(a, ["a u"])
    with pytest.raises(InputError):
        induce_supervisor(empty(a), l)
    sup = induce_supervisor(from_words(a, ["a u"]), l)
    assert closed_loop(sup, empty(a)).is_empty
    with pytest.raises(InputError):
        Supervisor(a, sup.observer, {0: frozenset({"a"})}, frozenset({"u"}))


def test_dict_round_trip():
    inst = random_instance(4)
    ks = synthesize(inst.k, inst.l, Flavor.CN)
    if ks.is_empty:
        ks = inst.l
    sup = induce_supervisor(ks, inst.l)
    back = Supervisor.from_dict(sup.to_dict())
    assert language_eq(closed_loop(back, inst.l), closed_loop(sup, inst.l))
    with pytest.raises(InputError):
        Supervisor.from_dict({"alphabet": {}})


@pytest.mark.parametrize("seed", range(80))
def test_patterns_and_closed_loop_bounds(seed):
    inst = random_instance(seed)
    for f in (Flavor.CN, Flavor.CR, Flavor.N):
        ks = synthesize(inst.k, inst.l, f)
        if ks.is_empty:
            continue
        sup = induce_supervisor(ks, inst.l)
        au = inst.l.alphabet.uncontrollable
        assert all(au <= p for p in sup.patterns.values()) and au <= sup.default
        loop = closed_loop(sup, inst.l)
        assert language_leq(loop, inst.l)[0]
        if check_controllability(ks, inst.l) is None and check_observability(ks, inst.l) is None:
            assert language_eq(loop, ks)
