"""Structural conditions between two local plants.

Every condition is an inclusion between automata built from inverse
projections, products and observers, so each check reduces to one of the
exact property checkers or to ``language_leq``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .checks import NORMALITY, Witness, check_controllability, relobs_witness
from .errors import InputError
from .fsa import EventAlphabet, Generator
from .langops import (intersection, inverse_projection, language_leq, natural_projection,
                      observation_closure)

GMC, WGMC, MC, GMN, MN, GMK, GLO = "gmc", "wgmc", "mc", "gmn", "mn", "gmk", "glo"


@dataclass(frozen=True)
class ModularInstance:
    """Two local plants (and optionally local specifications) over a global
    alphabet whose flags every local alphabet must agree with."""

    l1: Generator
    l2: Generator
    alphabet: EventAlphabet | None = None
    k1: Generator | None = None
    k2: Generator | None = None

    def __post_init__(self):
        merged = self.l1.alphabet.merge(self.l2.alphabet)
        if self.alphabet is None:
            object.__setattr__(self, "alphabet", merged)
        elif self.alphabet.events != merged.events:
            raise InputError(f"global alphabet {sorted(self.alphabet.events)} is not "
                             f"A1 ∪ A2 = {sorted(merged.events)}")
        else:
            self.alphabet.merge(merged)
        for name, k, l in (("k1", self.k1, self.l1), ("k2", self.k2, self.l2)):
            if k is None:
                continue
            if k.events != l.events:
                raise InputError(f"{name} alphabet differs from its plant")
            k.alphabet.merge(l.alphabet)
            ok, wit = language_leq(k, l)
            if not ok:
                raise InputError(f"{name} is not contained in its plant; witness {wit}")

    def local(self, i: int) -> Generator:
        return self.l1 if i == 1 else self.l2

    def spec(self, i: int) -> Generator:
        k = self.k1 if i == 1 else self.k2
        if k is None:
            raise InputError("this condition needs the local specifications k1 and k2")
        return k

    def lift(self, g: Generator) -> Generator:
        return inverse_projection(g, self.alphabet)


def _sides():
    return ((1, 2), (2, 1))


def _tag(wit: Witness | None, side: int, condition: str) -> Witness | None:
    if wit is None:
        return None
    return replace(wit, side=str(side), condition=condition)


def _global_mutual_controllability(inst: ModularInstance, local_only: bool, name: str):
    # P_i^-1 L_i Au ∩ P_j^-1 L_j ⊆ P_i^-1 L_i  is controllability of the
    # intersection with respect to P_j^-1 L_j (L_j is prefix-closed)
    for i, j in _sides():
        li, lj = inst.lift(inst.local(i)), inst.lift(inst.local(j))
        au = inst.local(i).alphabet.uncontrollable
        if local_only:
            au = au & inst.local(j).events
        wit = check_controllability(intersection(li, lj), lj, au)
        if wit is not None:
            return _tag(wit, i, name)
    return None


def check_gmc(inst: ModularInstance) -> Witness | None:
    return _global_mutual_controllability(inst, False, GMC)


def check_wgmc(inst: ModularInstance) -> Witness | None:
    return _global_mutual_controllability(inst, True, WGMC)


def _local_view(inst: ModularInstance, i: int, j: int) -> Generator:
    """P_i(P_j^-1(L_j)) over A_i."""
    li = inst.local(i)
    return natural_projection(inst.lift(inst.local(j)), li.events).with_alphabet(li.alphabet)


def check_mc(inst: ModularInstance) -> Witness | None:
    """L_i (A_iu ∩ A_j) ∩ P_i P_j^-1 L_j ⊆ L_i, decided over A_i."""
    for i, j in _sides():
        li = inst.local(i)
        view = _local_view(inst, i, j)
        au = li.alphabet.uncontrollable & inst.local(j).events
        wit = check_controllability(intersection(li, view), view, au)
        if wit is not None:
            return _tag(wit, i, MC)
    return None


def check_gmn(inst: ModularInstance) -> Witness | None:
    ao = inst.alphabet.observable
    for i, j in _sides():
        li, lj = inst.lift(inst.local(i)), inst.lift(inst.local(j))
        lhs = intersection(observation_closure(li, inst.alphabet, ao), lj)
        ok, w = language_leq(lhs, li)
        if not ok:
            return Witness(NORMALITY, w, side=str(i), condition=GMN)
    return None


def check_mn(inst: ModularInstance) -> Witness | None:
    """O_i^-1 O_i(L_i) ∩ P_i P_j^-1 L_j ⊆ L_i, decided over A_i."""
    for i, j in _sides():
        li = inst.local(i)
        lhs = intersection(observation_closure(li, li.alphabet, li.alphabet.observable),
                           _local_view(inst, i, j))
        ok, w = language_leq(lhs, li)
        if not ok:
            return Witness(NORMALITY, w, side=str(i), condition=MN)
    return None


def check_gm_k_obs(inst: ModularInstance) -> Witness | None:
    """P_i^-1 L_i is P_j^-1 K_j-observable with respect to P_j^-1 L_j."""
    ao = inst.alphabet.observable
    for i, j in _sides():
        li, lj = inst.lift(inst.local(i)), inst.lift(inst.local(j))
        kj = inst.lift(inst.spec(j))
        wit = relobs_witness(li, kj, lj, ao)
        if wit is not None:
            return _tag(wit, i, GMK)
    return None


def check_mutual_l_obs(inst: ModularInstance) -> Witness | None:
    """P_i^-1 L_i is P_j^-1 L_j-observable with respect to P_j^-1 L_j."""
    ao = inst.alphabet.observable
    for i, j in _sides():
        li, lj = inst.lift(inst.local(i)), inst.lift(inst.local(j))
        wit = relobs_witness(li, lj, lj, ao)
        if wit is not None:
            return _tag(wit, i, GLO)
    return None


CHECKS = {GMC: check_gmc, WGMC: check_wgmc, MC: check_mc, GMN: check_gmn, MN: check_mn,
          GMK: check_gm_k_obs, GLO: check_mutual_l_obs}


def check_condition(name: str, inst: ModularInstance) -> Witness | None:
    try:
        fn = CHECKS[name]
    except KeyError:
        raise InputError(f"unknown condition {name!r}; choose from {sorted(CHECKS)}") from None
    return fn(inst)

