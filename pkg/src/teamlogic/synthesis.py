"""Characteristic formulas and expressive-completeness synthesis.

All aggregates are right-nested and ordered by ascending valuation / team
index.  Empty conjunctions are ``~_|_``; empty local or global disjunctions
are ``_|_``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .closure import Verdict, has_empty, is_downward_closed, is_flat, is_union_closed
from .formula import (BOT, TOP, And, DepAtom, Formula, FragmentSpec, IncAtom, LocalOr, Neg, Prop,
                      conj, fragment, gdisj, ldisj)
from .team import TeamProperty, Universe, extension, members, popcount


class PreconditionError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NoConstructionError(ValueError):
    pass


def _complement_team(t: int, universe: Universe) -> int:
    return universe.full_team & ~t


class Constructions:
    """The characteristic-formula builders, bound to one universe.

    Results are cached per instance, so formulas for the same team are the
    same object and share extension tables.  Subclasses may override single
    builders (the mutation tests do) and everything built on top follows.
    """

    def __init__(self, universe: Universe):
        self.universe = universe
        self._cache = {}

    def _memo(self, key, make):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    def chi_v(self, v: int) -> Formula:
        """Conjunction of literals true exactly at ``v``."""
        U = self.universe
        return self._memo(("chi_v", v), lambda: conj(*(Prop(x) if U.value(v, x) else Neg(Prop(x)) for x in U.vars)))

    def chi_t(self, t: int) -> Formula:
        return self._memo(("chi_t", t), lambda: ldisj(*(self.chi_v(v) for v in members(t))))

    def chi_t_conjunctive(self, t: int) -> Formula:
        outside = _complement_team(t, self.universe)
        return conj(*(Neg(self.chi_v(v)) for v in members(outside)))

    def iota_v(self, v: int) -> Formula:
        """Primitive inclusion atom saying row ``v`` occurs in the team."""
        U = self.universe
        if U.n == 0:
            raise ValueError("inclusion atoms need at least one variable")
        consts = tuple(TOP if U.value(v, x) else BOT for x in U.vars)
        return self._memo(("iota_v", v), lambda: IncAtom(consts, U.vars))

    def iota_t(self, t: int) -> Formula:
        return self._memo(("iota_t", t), lambda: conj(*(self.iota_v(v) for v in members(t))))

    def fix_team(self, t: int) -> Formula:
        """True exactly on ``t`` and on the empty team."""
        return self._memo(("fix", t), lambda: And(self.chi_t(t), self.iota_t(t)))

    def constancy_block(self) -> Formula:
        return self._memo(("block",), lambda: conj(*(DepAtom((), x) for x in self.universe.vars)))

    def mu_k(self, k: int) -> Formula:
        """True exactly on teams of at most ``k`` valuations; ``k == 0`` gives ``_|_``."""
        if k < 0:
            raise ValueError("k must be non-negative")
        return self._memo(("mu", k), lambda: ldisj(*([self.constancy_block()] * k)))

    def rho_t(self, t: int) -> Formula:
        """Dependence-logic formula true on ``s`` iff ``t`` is not a subteam of ``s``."""
        if t == 0:
            raise ValueError("rho_t needs a nonempty team")
        return self._memo(("rho", t), lambda: LocalOr(self.mu_k(popcount(t) - 1),
                                                      self.chi_t(_complement_team(t, self.universe))))

    def sigma_t(self, t: int) -> Formula:
        """Inclusion-logic formula true on ``s`` iff ``s`` is empty or not a subteam of ``t``."""
        if t == 0:
            raise ValueError("sigma_t needs a nonempty team")
        outside = _complement_team(t, self.universe)
        return self._memo(("sigma", t), lambda: ldisj(*(self.iota_v(v) for v in members(outside))))

    def psi_t(self, t: int) -> Formula:
        """True on every team except ``t``."""
        if t == 0:
            raise ValueError("psi_t needs a nonempty team")
        return self._memo(("psi", t), lambda: LocalOr(self.rho_t(t), self.sigma_t(t)))

    def characteristic(self, prop: TeamProperty, name: str) -> Formula:
        """The fragment's defining formula for ``prop``; preconditions are not checked."""
        teams = list(prop)
        outside = list(prop.complement())
        if name == "PL":
            union = 0
            for t in teams:
                union |= t
            return self.chi_t(union)
        if name == "PLv":
            return gdisj(*(self.chi_t(t) for t in teams))
        if name == "PLdep":
            return conj(*(self.rho_t(t) for t in outside))
        if name == "PLinc":
            return ldisj(*(self.fix_team(t) for t in teams))
        if name == "PLincV":
            return gdisj(*(self.fix_team(t) for t in teams))
        if name == "PLdepinc":
            return conj(*(self.psi_t(t) for t in outside))
        raise NoConstructionError(f"no synthesis construction for fragment {name}")


def _fresh(universe):
    return Constructions(universe)


def chi_v(v: int, universe: Universe) -> Formula:
    return _fresh(universe).chi_v(v)


def chi_t_disjunctive(t: int, universe: Universe) -> Formula:
    return _fresh(universe).chi_t(t)


def chi_t_conjunctive(t: int, universe: Universe) -> Formula:
    return _fresh(universe).chi_t_conjunctive(t)


chi_t = chi_t_disjunctive


def iota_v(v: int, universe: Universe) -> Formula:
    return _fresh(universe).iota_v(v)


def iota_t(t: int, universe: Universe) -> Formula:
    return _fresh(universe).iota_t(t)


def fix_team(t: int, universe: Universe) -> Formula:
    return _fresh(universe).fix_team(t)


def constancy_block(universe: Universe) -> Formula:
    return _fresh(universe).constancy_block()


def mu_k(k: int, universe: Universe) -> Formula:
    return _fresh(universe).mu_k(k)


def rho_t(t: int, universe: Universe) -> Formula:
    return _fresh(universe).rho_t(t)


def sigma_t(t: int, universe: Universe) -> Formula:
    return _fresh(universe).sigma_t(t)


def psi_t(t: int, universe: Universe) -> Formula:
    return _fresh(universe).psi_t(t)


# -- synthesis ---------------------------------------------------------------

@dataclass(frozen=True)
class SynthesisResult:
    formula: Formula
    fragment: FragmentSpec
    verified: bool
    target: TeamProperty


def _require(verdict: Verdict, message: str):
    if not verdict:
        raise PreconditionError(message, verdict.witness)


def _check_class(prop: TeamProperty, name: str):
    if name == "PL":
        _require(is_flat(prop), "property is not flat")
    elif name in ("PLv", "PLdep"):
        if prop.mask == 0:
            raise PreconditionError("property is empty")
        _require(is_downward_closed(prop), "property is not downward closed")
    elif name == "PLinc":
        _require(has_empty(prop), "property does not contain the empty team")
        _require(is_union_closed(prop), "property is not union closed")
    elif name in ("PLincV", "PLdepinc"):
        _require(has_empty(prop), "property does not contain the empty team")
    else:
        raise NoConstructionError(f"no synthesis construction for fragment {name}")
    if name in ("PLinc", "PLincV") and prop.universe.n == 0:
        raise PreconditionError("inclusion-atom constructions need at least one variable")


def characteristic_formula(prop: TeamProperty, name: str) -> Formula:
    """The fragment's defining formula for ``prop``; preconditions are not checked."""
    return Constructions(prop.universe).characteristic(prop, name)


def synth(prop: TeamProperty, fragment_name: str, kit: Optional[Constructions] = None,
          memo: Optional[dict] = None) -> SynthesisResult:
    """Synthesize a defining formula after checking the fragment's closure class.

    Passing the same ``kit`` and ``memo`` across many calls over one universe
    shares both the formula parts and their extension tables.
    """
    spec = fragment(fragment_name)
    _check_class(prop, spec.name)
    kit = kit or Constructions(prop.universe)
    if kit.universe != prop.universe:
        raise ValueError("constructions are bound to a different universe")
    phi = kit.characteristic(prop, spec.name)
    return SynthesisResult(phi, spec, extension(phi, prop.universe, memo) == prop, prop)
