"""Global-disjunctive normal forms, Harrop flattening, and the DNF-based
entailment decision.

``to_dnf(phi)`` returns classical formulas ``a1 ... am`` with
``phi == a1 \\/ ... \\/ am``.
"""
from __future__ import annotations

import itertools

from .formula import (And, Bottom, DepAtom, Formula, GlobalOr, IncAtom, IntImpl, LocalOr, Neg, Prop, conj,
                      features, gdisj, is_classical, is_harrop, to_text, variables)
from .team import Universe, single_valuation_sat

DNF_LIMIT = 4096


class FragmentError(ValueError):
    pass


class DNFSizeError(ValueError):
    pass


def _dedupe(items):
    seen = set()
    out = []
    for a in items:
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out


def _check_count(count, limit):
    if count > limit:
        raise DNFSizeError(f"normal form has {count} disjuncts, limit {limit}")


def to_dnf(phi: Formula, limit: int = DNF_LIMIT) -> list:
    if is_classical(phi):
        return [phi]
    if isinstance(phi, (DepAtom, IncAtom)):
        raise FragmentError(f"no normal form for atom {to_text(phi)}")
    if isinstance(phi, GlobalOr):
        out = _dedupe(to_dnf(phi.left, limit) + to_dnf(phi.right, limit))
        _check_count(len(out), limit)
        return out
    if isinstance(phi, Neg):
        return [conj(*(Neg(a) for a in to_dnf(phi.sub, limit)))]
    if isinstance(phi, And):
        left, right = to_dnf(phi.left, limit), to_dnf(phi.right, limit)
        _check_count(len(left) * len(right), limit)
        return _dedupe(And(a, b) for a, b in itertools.product(left, right))
    if isinstance(phi, LocalOr):
        left, right = to_dnf(phi.left, limit), to_dnf(phi.right, limit)
        _check_count(len(left) * len(right), limit)
        return _dedupe(LocalOr(a, b) for a, b in itertools.product(left, right))
    if isinstance(phi, IntImpl):
        # (\/ a_i) -> c  ==  /\_i (~a_i | c), each conjunct distributed over c's disjuncts
        antecedents, consequent = to_dnf(phi.left, limit), to_dnf(phi.right, limit)
        rows = [[LocalOr(Neg(a), b) for b in consequent] for a in antecedents]
        total = 1
        for row in rows:
            total *= len(row)
        _check_count(total, limit)
        return _dedupe(conj(*combo) for combo in itertools.product(*rows))
    raise TypeError(f"not a formula: {phi!r}")


def dnf_formula(phi: Formula, limit: int = DNF_LIMIT) -> Formula:
    return gdisj(*to_dnf(phi, limit))


def harrop_flatten(delta: Formula) -> Formula:
    """Replace every global disjunction by a local one; only valid on Harrop input."""
    if not is_harrop(delta):
        raise FragmentError(f"{to_text(delta)} is not a Harrop formula")
    return _flatten(delta)


def _flatten(phi):
    if isinstance(phi, (Prop, Bottom)):
        return phi
    if isinstance(phi, Neg):
        return Neg(_flatten(phi.sub))
    if isinstance(phi, (GlobalOr, LocalOr)):
        return LocalOr(_flatten(phi.left), _flatten(phi.right))
    if isinstance(phi, And):
        return And(_flatten(phi.left), _flatten(phi.right))
    raise FragmentError(f"cannot flatten {to_text(phi)}")


def classically_entails(premises, conclusion: Formula) -> bool:
    """Single-valuation entailment by sweeping every valuation of the mentioned variables."""
    names = set(variables(conclusion))
    for a in premises:
        names |= variables(a)
    U = Universe(tuple(sorted(names)), cap=max(len(names), 1))
    for v in range(U.num_valuations):
        if all(single_valuation_sat(v, a, U) for a in premises) and not single_valuation_sat(v, conclusion, U):
            return False
    return True


def matching(psi: Formula, phi: Formula, limit: int = DNF_LIMIT):
    """For each disjunct of ``psi`` the index of a disjunct of ``phi`` it entails, or None."""
    left, right = to_dnf(psi, limit), to_dnf(phi, limit)
    out = []
    for a in left:
        j = next((j for j, b in enumerate(right) if classically_entails([a], b)), None)
        out.append(j)
    return left, right, out


def decide_entailment_dnf(psi: Formula, phi: Formula, limit: int = DNF_LIMIT) -> bool:
    """``psi |= phi`` decided disjunct-wise on normal forms."""
    for f in (psi, phi):
        if features(f) & {"dep", "inc"}:
            raise FragmentError(f"{to_text(f)} uses dependency atoms; no normal form available")
    _, _, match = matching(psi, phi, limit)
    return all(j is not None for j in match)
