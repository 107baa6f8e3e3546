"""Closure classes of team properties.

Each checker returns a :class:`Verdict`, truthy iff the property holds, carrying
a witness when it fails:

* downward closure: ``(t, s)`` with ``t`` in T, ``s`` a subteam of ``t`` missing from T
* union closure: ``(t1, t2, t1 | t2)`` with the union missing
* flatness: ``(t,)`` whose membership disagrees with its singletons
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .formula import Formula
from .team import TeamProperty, Universe, extension, members


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


def has_empty(prop: TeamProperty) -> Verdict:
    return Verdict(0 in prop)


def is_downward_closed(prop: TeamProperty) -> Verdict:
    # closure under removing one member at a time suffices
    for t in prop:
        for v in members(t):
            s = t & ~(1 << v)
            if s not in prop:
                return Verdict(False, (t, s))
    return Verdict(True)


def is_union_closed(prop: TeamProperty) -> Verdict:
    teams = list(prop)
    for i, a in enumerate(teams):
        for b in teams[i + 1:]:
            if (a | b) not in prop:
                return Verdict(False, (a, b, a | b))
    return Verdict(True)


def is_flat(prop: TeamProperty) -> Verdict:
    U = prop.universe
    good = 0
    for v in range(U.num_valuations):
        if (1 << v) in prop:
            good |= 1 << v
    for t in range(U.num_teams):
        if (t in prop) != (t & ~good == 0):
            return Verdict(False, (t,))
    return Verdict(True)


def flat_by_closure(prop: TeamProperty) -> bool:
    return bool(has_empty(prop)) and bool(is_downward_closed(prop)) and bool(is_union_closed(prop))


def describe(prop: TeamProperty) -> dict:
    """All four verdicts with witnesses rendered as bit-string rows."""
    U = prop.universe

    def rows(t):
        return [U.bits(v) for v in members(t)]

    out = {}
    for name, check in (("empty", has_empty), ("downward", is_downward_closed),
                        ("union", is_union_closed), ("flat", is_flat)):
        verdict = check(prop)
        out[name] = {"holds": verdict.holds,
                     "witness": None if verdict.witness is None else [rows(t) for t in verdict.witness]}
    return out


def formula_closure(phi: Formula, universe: Universe) -> dict:
    prop = extension(phi, universe)
    return {name: check(prop) for name, check in (("empty", has_empty), ("downward", is_downward_closed),
                                                     ("union", is_union_closed), ("flat", is_flat))}
