"""Reference semantics written straight from the definitions.

Valuations are dicts, teams are frozensets of valuation tuples.  Nothing here
shares code with the package evaluator beyond the formula classes.
"""
import itertools

from teamlogic.formula import (And, Bottom, Const, DepAtom, GlobalOr, IncAtom, IntImpl, LocalOr, Neg, Prop)


def all_valuations(names):
    return [tuple(zip(names, bits)) for bits in itertools.product((0, 1), repeat=len(names))]


def powerset(items):
    items = list(items)
    return [frozenset(c) for r in range(len(items) + 1) for c in itertools.combinations(items, r)]


def value(v, term):
    if isinstance(term, Const):
        return term.value
    return dict(v)[term]


def sat(team, phi):
    if isinstance(phi, Prop):
        return all(dict(v)[phi.name] == 1 for v in team)
    if isinstance(phi, Bottom):
        return not team
    if isinstance(phi, Neg):
        return all(not sat(frozenset([v]), phi.sub) for v in team)
    if isinstance(phi, And):
        return sat(team, phi.left) and sat(team, phi.right)
    if isinstance(phi, GlobalOr):
        return sat(team, phi.left) or sat(team, phi.right)
    if isinstance(phi, LocalOr):
        # every cover r | s = team, not just partitions
        for r in powerset(team):
            for s in powerset(team):
                if r | s == team and sat(r, phi.left) and sat(s, phi.right):
                    return True
        return False
    if isinstance(phi, IntImpl):
        return all(not sat(s, phi.left) or sat(s, phi.right) for s in powerset(team))
    if isinstance(phi, DepAtom):
        for u in team:
            for w in team:
                if all(value(u, x) == value(w, x) for x in phi.args) and value(u, phi.target) != value(w, phi.target):
                    return False
        return True
    if isinstance(phi, IncAtom):
        rhs = {tuple(value(w, x) for x in phi.rhs) for w in team}
        return all(tuple(value(v, x) for x in phi.lhs) in rhs for v in team)
    raise TypeError(phi)


def single(v, alpha):
    return sat(frozenset([v]), alpha)


def team_from_index(names, t):
    """Package encoding: bit i of t is valuation i, whose bit string is in name order."""
    vals = all_valuations(names)
    return frozenset(vals[i] for i in range(len(vals)) if t >> i & 1)
