import pytest

from oracles import strings
from supctl.coordination import (HEURISTIC, build_coordinator, check_cond_decomposable, compare,
                                 coordinator_neutral, extend_coordinator_alphabet, make_setup,
                                 run_coordination, run_monolithic)
from supctl.errors import BoundError, InputError, TheoremViolation
from supctl.fsa import EventAlphabet, empty, from_words
from supctl.langops import language_eq, sync_product
from supctl.oracle import InstanceParams, brute_supremal, random_instance
from supctl.synthesis import Flavor

MOD = InstanceParams(modular=True)
AB = EventAlphabet.of("a b")


def test_cond_decomposable_examples():
    k = from_words(AB, ["a b"])
    ok, wit = check_cond_decomposable(k, {"a"}, {"b"}, set())
    assert not ok and wit == ("b",)
    assert check_cond_decomposable(k, {"a"}, {"b"}, {"a"}) == (True, None)
    assert check_cond_decomposable(k, {"a"}, {"b"}, {"a", "b"})[0]
    with pytest.raises(InputError):
        check_cond_decomposable(k, {"a"}, {"b"}, {"zz"})


def test_extend_examples():
    k = from_words(AB, ["a b"])
    assert extend_coordinator_alphabet(k, {"a"}, {"b"}) == {"a"}
    a = EventAlphabet.of("a b s")
    assert extend_coordinator_alphabet(from_words(a, ["a s b"]), {"a", "s"}, {"b", "s"}) == {"s"}
    assert extend_coordinator_alphabet(from_words(a, ["a"]), {"a", "s"}, {"b", "s"}) == {"s"}


def test_build_coordinator_examples():
    g1 = from_words(EventAlphabet.of("a"), ["a"])
    g2 = from_words(EventAlphabet.of("b"), ["b"])
    assert strings(build_coordinator(g1, g2, set()), 2) == {()}
    assert language_eq(build_coordinator(g1, g1, {"a"}), g1)
    h1 = from_words(EventAlphabet.of("a s"), ["a s"])
    h2 = from_words(EventAlphabet.of("b s"), ["s b"])
    assert strings(build_coordinator(h1, h2, {"s"}), 3) == {(), ("s",)}


@pytest.mark.parametrize("seed", range(40))
def test_setup_invariants(seed):
    s = random_instance(seed, MOD)
    setup = make_setup(s.g1, s.g2, s.k)
    assert s.g1.events & s.g2.events <= setup.ak <= s.g1.events | s.g2.events
    assert setup.decomposable
    assert coordinator_neutral(setup)
    assert setup.g1.events == s.g1.events | setup.ak
    gk_direct = sync_product([s.g1, s.g2])
    assert language_eq(sync_product([setup.g1, setup.g2]).with_alphabet(gk_direct.alphabet), gk_direct)


def test_run_monolithic_examples():
    a = EventAlphabet.of("a b")
    g1, g2 = from_words(a, ["a b", "b"]), from_words(a, ["a b", "b a"])
    k = from_words(a, ["a"])
    assert language_eq(run_monolithic(g1, g2, k, Flavor.C), k)
    plant = sync_product([g1, g2])
    assert language_eq(run_monolithic(g1, g2, plant, Flavor.C), plant)


@pytest.mark.parametrize("seed", range(10))
def test_run_monolithic_matches_oracle(seed):
    s = random_instance(seed, MOD)
    plant = sync_product([s.g1, s.g2])
    for f in (Flavor.C, Flavor.N):
        try:
            b = brute_supremal(s.k, plant, f)
        except BoundError as exc:
            pytest.skip(str(exc))
        assert language_eq(run_monolithic(s.g1, s.g2, s.k, f), b)


def test_run_coordination_trivial_cases():
    s = random_instance(5, MOD)
    alphabet = s.g1.alphabet.merge(s.g2.alphabet)
    setup = make_setup(s.g1, s.g2, empty(alphabet))
    run = run_coordination(setup, Flavor.C)
    assert run.k1_sup.is_empty and run.k2_sup.is_empty and run.product.is_empty
    plant = sync_product([s.g1, s.g2])
    setup = make_setup(s.g1, s.g2, plant)
    run = run_coordination(setup, Flavor.C)
    assert language_eq(run.product, plant)


def test_compare_disjoint_plants():
    g1 = from_words(EventAlphabet.of("a u", uncontrollable="u", unobservable="u"), ["a u", "u a"])
    g2 = from_words(EventAlphabet.of("b t", unobservable="t"), ["b t", "t"])
    plant = sync_product([g1, g2])
    k = sync_product([from_words(g1.alphabet, ["a", "u"]), from_words(g2.alphabet, ["t"])])
    assert check_cond_decomposable(k, g1.events, g2.events, set())[0]
    for f in Flavor:
        r = compare(g1, g2, k.with_alphabet(plant.alphabet), f)
        assert r.equality, f


def test_compare_gmc_fixture(fixture_loader):
    gens, _ = fixture_loader("gmc_holds")
    r = compare(gens["g1"], gens["g2"], gens["spec"], Flavor.C)
    assert r.conditions["gmc"] is None
    assert r.equality and r.theorem_applies


def test_compare_report_example():
    a1 = EventAlphabet.of("a u", uncontrollable="u")
    a2 = EventAlphabet.of("a")
    g1, g2 = from_words(a1, ["a u"]), from_words(a2, ["a"])
    k = from_words(a1, ["a"])
    r = compare(g1, g2, k, "c")
    assert r.safety_monolithic and r.safety_modular and r.inclusion_modular_in_monolithic
    d = r.to_dict()
    assert d["flavor"] == "supc" and set(d["conditions"]) == {"gmc"}


def test_compare_intersects_spec():
    a = EventAlphabet.of("a b")
    g1, g2 = from_words(a, ["a"]), from_words(a, ["a", "b"])
    k = from_words(a, ["a b"])
    r = compare(g1, g2, k, "C")
    assert r.spec_intersected and r.safety_monolithic


def test_heuristic_flavors_flagged():
    s = random_instance(7, MOD)
    for f in Flavor:
        r = compare(s.g1, s.g2, s.k, f, strict=False)
        assert r.heuristic == (f in HEURISTIC)
        assert len(r.conditions) == (2 if f in HEURISTIC else 1)


def test_theorem_violation_carries_premises():
    # R_K with the condition holding but exchangeability failing on side 2
    s = random_instance(106, MOD)
    with pytest.raises(TheoremViolation) as info:
        compare(s.g1, s.g2, s.k, Flavor.R_K)
    prem = info.value.diagnostics["premises"]
    assert prem["exchangeable_2"] is not None
    r = compare(s.g1, s.g2, s.k, Flavor.R_K, strict=False)
    assert r.theorem_applies and not r.equality


@pytest.mark.parametrize("seed", range(40))
def test_c_and_n_comparison_facts(seed):
    s = random_instance(seed, MOD)
    for f in (Flavor.C, Flavor.N, Flavor.CN):
        r = compare(s.g1, s.g2, s.k, f)
        assert r.safety_monolithic and r.safety_modular
        assert r.inclusion_modular_in_monolithic
        if r.theorem_applies:
            assert r.equality
