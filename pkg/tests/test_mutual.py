import pytest

from oracles import all_strings, proj, strings
from supctl.errors import ConsistencyError, InputError
from supctl.fsa import EventAlphabet, empty, from_words
from supctl.mutual import (ModularInstance, check_condition, check_gm_k_obs, check_gmc, check_gmn,
                           check_mc, check_mn, check_mutual_l_obs, check_wgmc)
from supctl.oracle import InstanceParams, random_instance
from supctl.coordination import make_setup, run_coordination
from supctl.synthesis import Flavor

MOD = InstanceParams(modular=True)


def _full_obs(g):
    a = g.alphabet
    return g.with_alphabet(EventAlphabet(a.events, a.controllable, a.events))


def test_full_observation_conditions_hold():
    for seed in range(20):
        s = random_instance(seed, MOD)
        inst = ModularInstance(_full_obs(s.g1), _full_obs(s.g2))
        assert check_gmn(inst) is None and check_mn(inst) is None
        assert check_mutual_l_obs(inst) is None
        k1 = inst.l1
        inst = ModularInstance(inst.l1, inst.l2, k1=k1, k2=inst.l2)
        assert check_gm_k_obs(inst) is None


def test_disjoint_alphabets():
    l1 = from_words(EventAlphabet.of("a u", uncontrollable="u"), ["a u"])
    l2 = from_words(EventAlphabet.of("b"), ["b b"])
    inst = ModularInstance(l1, l2)
    assert check_mc(inst) is None and check_wgmc(inst) is None


def test_empty_ambient_spec():
    s = random_instance(3, MOD)
    inst = ModularInstance(s.g1, s.g2, k1=empty(s.g1.alphabet), k2=empty(s.g2.alphabet))
    assert check_gm_k_obs(inst) is None


def test_instance_validation():
    l1 = from_words(EventAlphabet.of("a b", uncontrollable="a"), ["a"])
    l2 = from_words(EventAlphabet.of("a c"), ["a"])
    with pytest.raises(ConsistencyError):
        ModularInstance(l1, l2)
    ok2 = from_words(EventAlphabet.of("a c", uncontrollable="a"), ["a"])
    with pytest.raises(InputError):
        ModularInstance(l1, ok2, k1=from_words(l1.alphabet, ["a b"]))
    with pytest.raises(InputError):
        check_gm_k_obs(ModularInstance(l1, ok2))
    with pytest.raises(InputError):
        check_condition("xyz", ModularInstance(l1, ok2))
    with pytest.raises(InputError):
        ModularInstance(l1, ok2, alphabet=EventAlphabet.of("a b"))


def test_stored_gmc_instance(fixture_loader):
    gens, _ = fixture_loader("gmc_holds")
    inst = ModularInstance(gens["g1"], gens["g2"])
    assert check_gmc(inst) is None and check_wgmc(inst) is None and check_mc(inst) is None


def test_witness_tags(fixture_loader):
    gens, _ = fixture_loader("wgmc_not_gmc")
    wit = check_gmc(ModularInstance(gens["l1"], gens["l2"]))
    assert wit.condition == "gmc" and wit.side in ("1", "2")
    assert wit.to_dict()["condition"] == "gmc"


def _lift_member(s, lang, events):
    return proj(s, events) in lang


@pytest.mark.parametrize("seed", range(60))
def test_gmc_gmn_by_definition(seed):
    # direct quantifier scan over global strings of length <= 4
    s = random_instance(seed, MOD)
    inst = ModularInstance(s.g1, s.g2)
    glob = inst.alphabet
    n = 4
    ls = {i: strings(inst.local(i), n + 1) for i in (1, 2)}
    ev = {i: inst.local(i).events for i in (1, 2)}
    words = all_strings(glob.events, n)
    in_l = lambda s, i: _lift_member(s, ls[i], ev[i])  # noqa: E731
    gmc_viol = gmn_viol = False
    ao = glob.observable
    for i, j in ((1, 2), (2, 1)):
        au = inst.local(i).alphabet.uncontrollable
        for w in words:
            if in_l(w, i):
                for u in au:
                    if in_l(w + (u,), j) and not in_l(w + (u,), i):
                        gmc_viol = True
        obs_li = {proj(w, ao) for w in words if in_l(w, i)}
        for w in words:
            if proj(w, ao) in obs_li and in_l(w, j) and not in_l(w, i):
                gmn_viol = True
    if gmc_viol:
        assert check_gmc(inst) is not None
    if gmn_viol:
        assert check_gmn(inst) is not None
    wit = check_gmc(inst)
    if wit is not None and len(wit.w) < n:
        assert gmc_viol


@pytest.mark.parametrize("seed", range(60))
def test_gmk_by_definition(seed):
    s = random_instance(seed, MOD)
    setup = make_setup(s.g1, s.g2, s.k)
    run = run_coordination(setup, Flavor.R_K)
    inst = ModularInstance(setup.g1, setup.g2, setup.alphabet, run.k1, run.k2)
    glob, ao = inst.alphabet, inst.alphabet.observable
    n = 3
    words = all_strings(glob.events, n)
    ls = {i: strings(inst.local(i), n + 1) for i in (1, 2)}
    ks = {i: strings(inst.spec(i), n + 1) for i in (1, 2)}
    ev = {i: inst.local(i).events for i in (1, 2)}
    violation = None
    for i, j in ((1, 2), (2, 1)):
        by_obs = {}
        for w2 in words:
            if _lift_member(w2, ks[j], ev[j]):
                by_obs.setdefault(proj(w2, ao), []).append(w2)
        for w in words:
            for a in sorted(glob.events):
                if not _lift_member(w + (a,), ls[i], ev[i]):
                    continue
                for w2 in by_obs.get(proj(w, ao), ()):
                    if _lift_member(w2 + (a,), ls[j], ev[j]) and not _lift_member(w2 + (a,), ls[i], ev[i]):
                        violation = violation or (i, w, w2, a)
    wit = check_gm_k_obs(inst)
    if violation:
        assert wit is not None
    if wit is not None and len(wit.w) <= n and len(wit.w2) <= n:
        assert violation


@pytest.mark.parametrize("seed", range(150))
def test_implications(seed):
    s = random_instance(seed, MOD)
    inst = ModularInstance(s.g1, s.g2)
    if check_gmc(inst) is None:
        assert check_wgmc(inst) is None
    if check_gmn(inst) is None:
        assert check_mutual_l_obs(inst) is None
