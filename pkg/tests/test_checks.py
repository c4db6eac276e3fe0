import pytest

from oracles import controllable, normal_violations, proj, relobs_violations, strings
from supctl.checks import (check_controllability, check_normality, check_observability,
                           check_rel_observability)
from supctl.errors import InclusionError, InputError
from supctl.fsa import EventAlphabet, empty, from_words, generates
from supctl.oracle import InstanceParams, random_instance

A_U = EventAlphabet.of("a u", uncontrollable="u")
A_TAU = EventAlphabet.of("a tau", unobservable="tau")


def test_controllability_examples():
    k, l = from_words(A_U, ["a"]), from_words(A_U, ["a u"])
    wit = check_controllability(k, l)
    assert wit.w == ("a",) and wit.a == "u"
    assert check_controllability(l, l) is None
    assert check_controllability(k, l, au=()) is None


def test_controllability_errors():
    k, l = from_words(A_U, ["a"]), from_words(A_U, ["a u"])
    with pytest.raises(InputError):
        check_controllability(k, l, au={"zz"})
    with pytest.raises(InclusionError):
        check_controllability(l, k)


def test_relobs_example():
    k = from_words(A_TAU, ["a", "tau"])
    l = from_words(A_TAU, ["a", "tau a"])
    wit = check_rel_observability(k, k, l)
    assert (wit.w, wit.w2, wit.a) == ((), ("tau",), "a")
    assert check_observability(k, l) == wit
    assert check_rel_observability(k, k, l, ao={"a", "tau"}) is None
    assert check_rel_observability(empty(A_TAU), k, l) is None


def test_normality_example():
    a = EventAlphabet.of("a b tau", unobservable="tau")
    k, l = from_words(a, ["a"]), from_words(a, ["a tau", "b"])
    assert check_normality(k, l).w == ("a", "tau")
    assert check_normality(k, l, ao=a.events) is None
    assert check_normality(l, l) is None
    assert check_observability(l, l) is None


SMALL = InstanceParams(max_states=3, max_events=3)


def _bound(k, l):
    return len(k) * len(l) + 1


@pytest.mark.parametrize("seed", range(60))
def test_verdicts_match_enumeration(seed):
    inst = random_instance(seed, SMALL)
    k, l = inst.k, inst.l
    n = _bound(k, l)
    ks, ls = strings(k, n + 1), strings(l, n + 1)
    au, ao = l.alphabet.uncontrollable, l.alphabet.observable

    c_viol = controllable(ks, ls, au, n)
    assert (check_controllability(k, l) is None) == (not c_viol)

    short_k = {w for w in ks if len(w) <= n}
    n_viol = normal_violations(short_k, {w for w in ls if len(w) <= n}, ao)
    assert (check_normality(k, l) is None) == (not n_viol)

    for c in (k, l):
        viol = relobs_violations(ks, strings(c, n), ls, ao, l.events, n)
        assert (check_rel_observability(k, c, l) is None) == (not viol)


@pytest.mark.parametrize("seed", range(100))
def test_witnesses_replay(seed):
    inst = random_instance(seed)
    k, l = inst.k, inst.l
    ao = l.alphabet.observable
    wit = check_controllability(k, l)
    if wit:
        assert generates(k, wit.w) and generates(l, wit.w + (wit.a,))
        assert not generates(k, wit.w + (wit.a,)) and wit.a in l.alphabet.uncontrollable
    wit = check_normality(k, l)
    if wit:
        assert generates(l, wit.w) and not generates(k, wit.w)
        n = len(wit.w) + len(k)
        assert any(proj(s, ao) == proj(wit.w, ao) for s in strings(k, n))
    for c in (k, l):
        wit = check_rel_observability(k, c, l)
        if wit:
            assert proj(wit.w, ao) == proj(wit.w2, ao)
            assert generates(k, wit.w + (wit.a,)) and generates(c, wit.w2)
            assert generates(l, wit.w2 + (wit.a,)) and not generates(k, wit.w2 + (wit.a,))


@pytest.mark.parametrize("seed", range(150))
def test_property_implications(seed):
    inst = random_instance(seed)
    k, l = inst.k, inst.l
    normal = check_normality(k, l) is None
    l_obs = check_rel_observability(k, l, l) is None
    k_obs = check_observability(k, l) is None
    if normal:
        assert l_obs
    if l_obs:
        assert k_obs


def test_witness_dict_keys():
    k = from_words(A_TAU, ["a", "tau"])
    l = from_words(A_TAU, ["a", "tau a"])
    d = check_observability(k, l).to_dict()
    assert d == {"kind": "observability", "w": [], "w_prime": ["tau"], "event": "a",
                 "side": None, "condition": None}
