"""Derived rules as derivation templates.

Each template takes concrete formulas for its metavariables and returns a
derivation whose open hypotheses are exactly the rule's premises, labelled
``a0, a1, ...``.  The ``*_from`` variants take premise derivations instead,
so templates compose.
"""
from __future__ import annotations

from typing import Callable, Optional

from ..formula import Bottom, Formula, GlobalOr, IntImpl, LocalOr, Neg, is_classical, to_text
from .build import Builder, bridge, excluded_middle
from .kernel import Derivation, Rule


class InstantiationError(ValueError):
    pass


def _need_classical(alpha: Formula, rule: str):
    if not is_classical(alpha):
        raise InstantiationError(f"{rule} needs a classical alpha, got {to_text(alpha)}")


def lor_bot_elim_from(b: Builder, d: Derivation) -> Derivation:
    """``phi | _|_`` to ``phi``, routed through normal forms."""
    return bridge(b, d, d.conclusion.left)


def disj_syl1_from(b: Builder, d_or: Derivation, d_not: Derivation) -> Derivation:
    """``alpha | phi`` and ``~alpha`` to ``phi``."""
    alpha = d_or.conclusion.left
    _need_classical(alpha, "DisjSyl1")
    killed = b.lor_mon(d_or, lambda h: b.neg_e(h, d_not, Bottom()))
    return lor_bot_elim_from(b, b.lor_com(killed))


def disj_syl2_from(b: Builder, d_pos: Derivation, d_neg: Derivation) -> Derivation:
    """``alpha | phi`` and ``~alpha | psi`` to ``phi | psi``."""
    return b.lor_mon(d_neg, lambda h: disj_syl1_from(b, d_pos, h))


def impl_def_lr_from(b: Builder, d: Derivation) -> Derivation:
    """``alpha -> phi`` to ``~alpha | phi``."""
    alpha = d.conclusion.left
    _need_classical(alpha, "ImplDef_LR")
    lem = excluded_middle(b, alpha)
    return b.lor_com(b.lor_mon(lem, lambda h: b.impl_e(d, h)))


def impl_def_rl_from(b: Builder, d: Derivation) -> Derivation:
    """``~alpha | phi`` to ``alpha -> phi``."""
    alpha = d.conclusion.left.sub
    _need_classical(alpha, "ImplDef_RL")

    def body(h):
        double = b.neg_i(Neg(alpha), lambda k: b.neg_e(h, k, Bottom()))
        return disj_syl1_from(b, d, double)

    return b.impl_i(alpha, body)


def split_from(b: Builder, d: Derivation) -> Derivation:
    """``alpha -> (phi \\/ psi)`` to ``(alpha -> phi) \\/ (alpha -> psi)`` without the Split rule."""
    alpha = d.conclusion.left
    phi, psi = d.conclusion.right.left, d.conclusion.right.right
    spread = b.dis(impl_def_lr_from(b, d))
    goal = GlobalOr(IntImpl(alpha, phi), IntImpl(alpha, psi))
    return b.gor_e(spread, goal,
                   lambda h: b.gor_l(impl_def_rl_from(b, h), IntImpl(alpha, psi)),
                   lambda h: b.gor_r(IntImpl(alpha, phi), impl_def_rl_from(b, h)))


def neg_anton_from(b: Builder, d_neg: Derivation, psi: Formula,
                   step: Optional[Callable[[Derivation], Derivation]] = None) -> Derivation:
    """``~phi`` plus ``[psi] ... phi`` to ``~psi`` using only NegI and NegE."""
    phi = d_neg.conclusion.sub
    step = step or (lambda h: bridge(b, h, phi))
    return b.neg_i(psi, lambda h: b.neg_e(step(h), d_neg, Bottom()))


def expand_neg_anton(d: Derivation) -> Derivation:
    """Rewrite every NegAnton node into NegI over NegE, reusing its sub-derivation."""
    premises = tuple(expand_neg_anton(p) for p in d.premises)
    if d.rule is not Rule.NegAnton:
        return Derivation(d.conclusion, d.rule, premises, d.discharged, d.label)
    d_neg, inner = premises
    label = d.discharged[0]
    return Derivation(d.conclusion, Rule.NegI, (Derivation(Bottom(), Rule.NegE, (inner, d_neg)),), (label,))


# -- named templates -----------------------------------------------------------

def _lor_ass(b, phi, psi, chi):
    prem = b.hyp(LocalOr(LocalOr(phi, psi), chi), "a0")
    return bridge(b, prem, LocalOr(phi, LocalOr(psi, chi)))


def _lor_bot_elim(b, phi):
    return lor_bot_elim_from(b, b.hyp(LocalOr(phi, Bottom()), "a0"))


def _disj_syl1(b, alpha, phi):
    _need_classical(alpha, "DisjSyl1")
    return disj_syl1_from(b, b.hyp(LocalOr(alpha, phi), "a0"), b.hyp(Neg(alpha), "a1"))


def _disj_syl2(b, alpha, phi, psi):
    _need_classical(alpha, "DisjSyl2")
    return disj_syl2_from(b, b.hyp(LocalOr(alpha, phi), "a0"), b.hyp(LocalOr(Neg(alpha), psi), "a1"))


def _impl_def_lr(b, alpha, phi):
    _need_classical(alpha, "ImplDef_LR")
    return impl_def_lr_from(b, b.hyp(IntImpl(alpha, phi), "a0"))


def _impl_def_rl(b, alpha, phi):
    _need_classical(alpha, "ImplDef_RL")
    return impl_def_rl_from(b, b.hyp(LocalOr(Neg(alpha), phi), "a0"))


def _split(b, alpha, phi, psi):
    _need_classical(alpha, "SplitDerived")
    return split_from(b, b.hyp(IntImpl(alpha, GlobalOr(phi, psi)), "a0"))


def _neg_anton(b, phi, psi):
    return neg_anton_from(b, b.hyp(Neg(phi), "a0"), psi)


DERIVED_RULES = {
    "LOrAss": (_lor_ass, ("phi", "psi", "chi"), "(phi | psi) | chi |- phi | (psi | chi)"),
    "LOrBotElim": (_lor_bot_elim, ("phi",), "phi | _|_ |- phi"),
    "DisjSyl1": (_disj_syl1, ("alpha", "phi"), "alpha | phi, ~alpha |- phi"),
    "DisjSyl2": (_disj_syl2, ("alpha", "phi", "psi"), "alpha | phi, ~alpha | psi |- phi | psi"),
    "ImplDef_LR": (_impl_def_lr, ("alpha", "phi"), "alpha -> phi |- ~alpha | phi"),
    "ImplDef_RL": (_impl_def_rl, ("alpha", "phi"), "~alpha | phi |- alpha -> phi"),
    "SplitDerived": (_split, ("alpha", "phi", "psi"), "alpha -> (phi \\/ psi) |- (alpha -> phi) \\/ (alpha -> psi)"),
    "NegAntonExpand": (_neg_anton, ("phi", "psi"), "~phi, psi |= phi  gives  ~phi |- ~psi"),
}


def derived_rule(name: str, **metavars: Formula) -> Derivation:
    """Instantiate a derived rule; hypotheses are the rule's premises ``a0, a1``."""
    if name not in DERIVED_RULES:
        raise KeyError(f"unknown derived rule {name!r}; known: {sorted(DERIVED_RULES)}")
    fn, params, _ = DERIVED_RULES[name]
    missing = set(params) - set(metavars)
    extra = set(metavars) - set(params)
    if missing or extra:
        raise InstantiationError(f"{name} takes {params}, got {sorted(metavars)}")
    return fn(Builder(), **{k: metavars[k] for k in params})
