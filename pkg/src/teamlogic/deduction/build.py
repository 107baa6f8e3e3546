"""Machine-built derivations.

A :class:`Builder` hands out fresh labels and wraps each rule in a helper that
computes the conclusion from the premises.  On top of that sit

* ``prove_classical``: truth-table guided proofs inside the classical rules;
* ``dnf_transforms``: proof transformers ``phi -> \\/ a_i`` and back;
* ``bridge``: turn a derivation of ``psi`` into one of ``phi`` whenever
  ``psi |= phi``, by matching normal-form disjuncts;
* ``prove``: the same for a finite premise list;
* ``replacement``: ``phi[chi/p] |- phi[chi'/p]`` by structural recursion.

Everything returned here is meant to pass :func:`kernel.check` unchanged.
"""
from __future__ import annotations

import itertools
from typing import Callable, Optional, Sequence

from ..formula import (And, Bottom, Formula, GlobalOr, IntImpl, LocalOr, Neg, Prop, conj, features,
                       SubstitutionError, gdisj, is_classical, occurrence_paths, replace_at, to_text,
                       variables)
from ..normal_forms import FragmentError, _dedupe, classically_entails, to_dnf
from ..team import Universe, countermodel, single_valuation_sat
from .kernel import Derivation, Rule

Transform = Callable[[Derivation], Derivation]


class NotDerivable(ValueError):
    """The entailment fails; ``countermodel`` is a team satisfying the premises but not the goal."""

    def __init__(self, message, countermodel=None, universe=None):
        super().__init__(message)
        self.countermodel = countermodel
        self.universe = universe


class Builder:
    def __init__(self, prefix: str = "h"):
        self.prefix = prefix
        self._count = itertools.count()

    def fresh(self) -> str:
        return f"{self.prefix}{next(self._count)}"

    # -- one helper per rule -------------------------------------------------

    def hyp(self, phi: Formula, label: Optional[str] = None) -> Derivation:
        return Derivation(phi, Rule.Hypothesis, label=label or self.fresh())

    def bot_e(self, d: Derivation, goal: Formula) -> Derivation:
        return Derivation(goal, Rule.BotE, (d,))

    def and_i(self, a: Derivation, b: Derivation) -> Derivation:
        return Derivation(And(a.conclusion, b.conclusion), Rule.AndI, (a, b))

    def and_l(self, d: Derivation) -> Derivation:
        return Derivation(d.conclusion.left, Rule.AndE_L, (d,))

    def and_r(self, d: Derivation) -> Derivation:
        return Derivation(d.conclusion.right, Rule.AndE_R, (d,))

    def neg_i(self, phi: Formula, body: Callable[[Derivation], Derivation]) -> Derivation:
        label = self.fresh()
        return Derivation(Neg(phi), Rule.NegI, (body(self.hyp(phi, label)),), (label,))

    def neg_e(self, d: Derivation, d_neg: Derivation, goal: Formula) -> Derivation:
        return Derivation(goal, Rule.NegE, (d, d_neg))

    def raa(self, alpha: Formula, body: Callable[[Derivation], Derivation]) -> Derivation:
        label = self.fresh()
        return Derivation(alpha, Rule.RAA, (body(self.hyp(Neg(alpha), label)),), (label,))

    def gor_l(self, d: Derivation, right: Formula) -> Derivation:
        return Derivation(GlobalOr(d.conclusion, right), Rule.GOrI_L, (d,))

    def gor_r(self, left: Formula, d: Derivation) -> Derivation:
        return Derivation(GlobalOr(left, d.conclusion), Rule.GOrI_R, (d,))

    def _elim(self, rule, d, goal, left_case, right_case):
        a, b = self.fresh(), self.fresh()
        major = d.conclusion
        return Derivation(goal, rule, (d, left_case(self.hyp(major.left, a)), right_case(self.hyp(major.right, b))),
                          (a, b))

    def gor_e(self, d, goal, left_case, right_case) -> Derivation:
        return self._elim(Rule.GOrE, d, goal, left_case, right_case)

    def lor_e(self, d, goal, left_case, right_case) -> Derivation:
        return self._elim(Rule.LOrE, d, goal, left_case, right_case)

    def lor_i(self, d: Derivation, right: Formula) -> Derivation:
        return Derivation(LocalOr(d.conclusion, right), Rule.LOrI, (d,))

    def lor_com(self, d: Derivation) -> Derivation:
        c = d.conclusion
        return Derivation(LocalOr(c.right, c.left), Rule.LOrCom, (d,))

    def lor_mon(self, d: Derivation, step: Transform) -> Derivation:
        label = self.fresh()
        inner = step(self.hyp(d.conclusion.left, label))
        return Derivation(LocalOr(inner.conclusion, d.conclusion.right), Rule.LOrMon, (d, inner), (label,))

    def dis(self, d: Derivation) -> Derivation:
        c = d.conclusion
        a, b, e = c.left, c.right.left, c.right.right
        return Derivation(GlobalOr(LocalOr(a, b), LocalOr(a, e)), Rule.DisOrGOr, (d,))

    def impl_i(self, alpha: Formula, body: Callable[[Derivation], Derivation]) -> Derivation:
        label = self.fresh()
        inner = body(self.hyp(alpha, label))
        return Derivation(IntImpl(alpha, inner.conclusion), Rule.ImplI, (inner,), (label,))

    def impl_e(self, d_impl: Derivation, d_arg: Derivation) -> Derivation:
        return Derivation(d_impl.conclusion.right, Rule.ImplE, (d_impl, d_arg))

    def split(self, d: Derivation) -> Derivation:
        c = d.conclusion
        a, b, e = c.left, c.right.left, c.right.right
        return Derivation(GlobalOr(IntImpl(a, b), IntImpl(a, e)), Rule.Split, (d,))

    def neg_anton(self, d_neg: Derivation, phi: Formula, step: Transform) -> Derivation:
        """From ``~X`` and a way to get ``X`` out of ``[phi]``, conclude ``~phi``."""
        label = self.fresh()
        inner = step(self.hyp(phi, label))
        return Derivation(Neg(phi), Rule.NegAnton, (d_neg, inner), (label,))

    # -- aggregates ----------------------------------------------------------

    def verum(self) -> Derivation:
        return self.neg_i(Bottom(), lambda h: h)

    def conj_intro(self, ds: Sequence[Derivation]) -> Derivation:
        if not ds:
            return self.verum()
        if len(ds) == 1:
            return ds[0]
        return self.and_i(ds[0], self.conj_intro(ds[1:]))

    def conj_project(self, d: Derivation, count: int, j: int) -> Derivation:
        while count > 1:
            if j == 0:
                return self.and_l(d)
            d, count, j = self.and_r(d), count - 1, j - 1
        return d

    def inject(self, d: Derivation, items: Sequence[Formula], k: int) -> Derivation:
        """From item ``k`` conclude the right-nested global disjunction of ``items``."""
        if len(items) == 1:
            return d
        if k == 0:
            return self.gor_l(d, gdisj(*items[1:]))
        return self.gor_r(items[0], self.inject(d, items[1:], k - 1))

    def cases(self, d: Derivation, items: Sequence[Formula], goal: Formula,
              branch: Callable[[int, Derivation], Derivation]) -> Derivation:
        """Global-disjunction elimination over ``gdisj(items)``; ``branch(i, hyp)`` proves ``goal``."""
        if len(items) == 1:
            return branch(0, d)
        return self.gor_e(d, goal, lambda h: branch(0, h),
                          lambda h: self.cases(h, items[1:], goal, lambda i, g: branch(i + 1, g)))

    def embed(self, d: Derivation, src: Sequence[Formula], dst: Sequence[Formula]) -> Derivation:
        return self.cases(d, src, gdisj(*dst), lambda i, h: self.inject(h, dst, dst.index(src[i])))

    def distribute(self, d: Derivation, items: Sequence[Formula]) -> Derivation:
        """``X | (i0 \\/ ... \\/ ik)`` to ``(X | i0) \\/ ... \\/ (X | ik)``."""
        if len(items) == 1:
            return d
        left = d.conclusion.left
        goal = gdisj(*(LocalOr(left, i) for i in items))
        rest = gdisj(*(LocalOr(left, i) for i in items[1:]))
        return self.gor_e(self.dis(d), goal, lambda h: self.gor_l(h, rest),
                          lambda h: self.gor_r(LocalOr(left, items[0]), self.distribute(h, items[1:])))


# -- classical completeness --------------------------------------------------

def excluded_middle(b: Builder, alpha: Formula) -> Derivation:
    """Closed derivation of ``alpha | ~alpha`` (``alpha`` classical)."""
    both = LocalOr(alpha, Neg(alpha))

    def body(h):
        not_alpha = b.neg_i(alpha, lambda a: b.neg_e(b.lor_i(a, Neg(alpha)), h, Bottom()))
        return b.neg_e(b.lor_com(b.lor_i(not_alpha, alpha)), h, Bottom())

    return b.raa(both, body)


def _double_neg(b: Builder, d: Derivation) -> Derivation:
    return b.neg_i(Neg(d.conclusion), lambda h: b.neg_e(d, h, Bottom()))


def kalmar(b: Builder, beta: Formula, v: int, U: Universe, lits: dict) -> Derivation:
    """Derive ``beta`` or ``~beta`` from the literal derivations ``lits`` describing ``v``."""
    if isinstance(beta, Prop):
        return lits[beta.name]
    if isinstance(beta, Bottom):
        return b.verum()
    if isinstance(beta, Neg):
        inner = kalmar(b, beta.sub, v, U, lits)
        if single_valuation_sat(v, beta.sub, U):
            return _double_neg(b, inner)
        return inner
    left, right = beta.left, beta.right
    sl, sr = single_valuation_sat(v, left, U), single_valuation_sat(v, right, U)
    dl, dr = kalmar(b, left, v, U, lits), kalmar(b, right, v, U, lits)
    if isinstance(beta, And):
        if sl and sr:
            return b.and_i(dl, dr)
        bad, side = (dl, b.and_l) if not sl else (dr, b.and_r)
        return b.neg_i(beta, lambda h: b.neg_e(side(h), bad, Bottom()))
    if isinstance(beta, LocalOr):
        if sl:
            return b.lor_i(dl, right)
        if sr:
            return b.lor_com(b.lor_i(dr, left))

        def refute(h):
            return b.lor_e(h, Bottom(), lambda x: b.neg_e(x, dl, Bottom()), lambda y: b.neg_e(y, dr, Bottom()))

        return b.neg_i(beta, refute)
    raise FragmentError(f"{to_text(beta)} is not classical")


def prove_classical(b: Builder, premises: Sequence[Derivation], goal: Formula) -> Derivation:
    """Derive the classical ``goal`` from derivations of classical premises, with classical rules only."""
    alphas = [d.conclusion for d in premises]
    for a in alphas + [goal]:
        if not is_classical(a):
            raise FragmentError(f"{to_text(a)} is not classical")
    if not classically_entails(alphas, goal):
        raise NotDerivable(f"{', '.join(map(to_text, alphas))} does not classically entail {to_text(goal)}")
    names = set(variables(goal))
    for a in alphas:
        names |= variables(a)
    U = Universe(tuple(sorted(names)), cap=max(len(names), 1))

    def leaf(v, lits):
        for d, a in zip(premises, alphas):
            if not single_valuation_sat(v, a, U):
                return b.neg_e(d, kalmar(b, a, v, U, lits), goal)
        return kalmar(b, goal, v, U, lits)

    def split(i, v, lits):
        if i == U.n:
            return leaf(v, lits)
        name = U.vars[i]
        p = Prop(name)
        bit = 1 << (U.n - 1 - i)
        return b.lor_e(excluded_middle(b, p), goal,
                       lambda h: split(i + 1, v | bit, {**lits, name: h}),
                       lambda h: split(i + 1, v, {**lits, name: h}))

    return split(0, 0, {})


# -- normal forms as proof transformers ---------------------------------------

def _identity(d: Derivation) -> Derivation:
    return d


def dnf_transforms(b: Builder, phi: Formula):
    """Return ``(items, fwd, bwd)`` with ``items == to_dnf(phi)``.

    ``fwd`` maps a derivation of ``phi`` to one of ``gdisj(items)`` and ``bwd``
    goes back.
    """
    if is_classical(phi):
        return [phi], _identity, _identity
    used = features(phi) & {"dep", "inc", "impl"}
    if used:
        raise FragmentError(f"{to_text(phi)} is outside PLv (uses {sorted(used)})")

    if isinstance(phi, GlobalOr):
        la, fa, ba = dnf_transforms(b, phi.left)
        lb, fb, bb = dnf_transforms(b, phi.right)
        items = _dedupe(la + lb)
        goal = gdisj(*items)

        def fwd(d):
            return b.gor_e(d, goal, lambda h: b.embed(fa(h), la, items), lambda h: b.embed(fb(h), lb, items))

        def bwd(d):
            def branch(i, h):
                c = items[i]
                if c in la:
                    return b.gor_l(ba(b.inject(h, la, la.index(c))), phi.right)
                return b.gor_r(phi.left, bb(b.inject(h, lb, lb.index(c))))
            return b.cases(d, items, phi, branch)

        return items, fwd, bwd

    if isinstance(phi, Neg):
        la, fa, ba = dnf_transforms(b, phi.sub)
        negs = [Neg(a) for a in la]
        items = [conj(*negs)]
        big = gdisj(*la)

        def fwd(d):
            not_big = b.neg_anton(d, big, ba)
            parts = [b.neg_i(a, lambda k, j=j: b.neg_e(b.inject(k, la, j), not_big, Bottom()))
                     for j, a in enumerate(la)]
            return b.conj_intro(parts)

        def bwd(d):
            def refute(h):
                return b.cases(h, la, Bottom(),
                               lambda i, g: b.neg_e(g, b.conj_project(d, len(negs), i), Bottom()))
            return b.neg_anton(b.neg_i(big, refute), phi.sub, fa)

        return items, fwd, bwd

    if isinstance(phi, And):
        la, fa, ba = dnf_transforms(b, phi.left)
        lb, fb, bb = dnf_transforms(b, phi.right)
        items = _dedupe(And(x, y) for x, y in itertools.product(la, lb))
        goal = gdisj(*items)

        def fwd(d):
            return b.cases(fa(b.and_l(d)), la, goal, lambda i, hx: b.cases(
                fb(b.and_r(d)), lb, goal, lambda j, hy: b.inject(b.and_i(hx, hy), items,
                                                                 items.index(And(la[i], lb[j])))))

        def bwd(d):
            def branch(i, h):
                c = items[i]
                left = ba(b.inject(b.and_l(h), la, la.index(c.left)))
                right = bb(b.inject(b.and_r(h), lb, lb.index(c.right)))
                return b.and_i(left, right)
            return b.cases(d, items, phi, branch)

        return items, fwd, bwd

    if isinstance(phi, LocalOr):
        la, fa, ba = dnf_transforms(b, phi.left)
        lb, fb, bb = dnf_transforms(b, phi.right)
        items = _dedupe(LocalOr(x, y) for x, y in itertools.product(la, lb))
        goal = gdisj(*items)
        big_b = gdisj(*lb)
        rows = [LocalOr(big_b, a) for a in la]

        def fwd(d):
            d1 = d if fa is _identity else b.lor_mon(d, fa)
            d2 = b.lor_com(d1)
            d3 = d2 if fb is _identity else b.lor_mon(d2, fb)
            d4 = b.distribute(d3, la)

            def branch(i, h):
                a = la[i]
                spread = b.distribute(b.lor_com(h), lb)
                return b.embed(spread, [LocalOr(a, y) for y in lb], items)
            return b.cases(d4, rows, goal, branch)

        def bwd(d):
            def branch(i, h):
                c = items[i]
                e1 = b.lor_mon(h, lambda g: ba(b.inject(g, la, la.index(c.left))))
                e2 = b.lor_com(e1)
                e3 = b.lor_mon(e2, lambda g: bb(b.inject(g, lb, lb.index(c.right))))
                return b.lor_com(e3)
            return b.cases(d, items, phi, branch)

        return items, fwd, bwd

    raise FragmentError(f"no normal form for {to_text(phi)}")


def derive_dnf(phi: Formula, builder: Optional[Builder] = None):
    """Pair of derivations ``phi |- \\/ a_i`` and ``\\/ a_i |- phi`` over ``to_dnf(phi)``."""
    b = builder or Builder()
    items, fwd, bwd = dnf_transforms(b, phi)
    assert items == to_dnf(phi)
    return fwd(b.hyp(phi, "phi")), bwd(b.hyp(gdisj(*items), "dnf"))


def bridge(b: Builder, d: Derivation, phi: Formula) -> Derivation:
    """Extend a derivation of ``psi`` to one of ``phi``; needs ``psi |= phi``."""
    psi = d.conclusion
    if psi == phi:
        return d
    left, fwd, _ = dnf_transforms(b, psi)
    right, _, bwd = dnf_transforms(b, phi)
    match = []
    for a in left:
        j = next((j for j, c in enumerate(right) if classically_entails([a], c)), None)
        if j is None:
            raise NotDerivable(f"{to_text(psi)} does not entail {to_text(phi)}: disjunct {to_text(a)} unmatched")
        match.append(j)

    def branch(i, h):
        j = match[i]
        return bwd(b.inject(prove_classical(b, [h], right[j]), right, j))

    return b.cases(fwd(d), left, phi, branch)


def prove(premises: Sequence[Formula], phi: Formula, universe: Optional[Universe] = None) -> Derivation:
    """Derivation of ``premises |- phi``; hypotheses are labelled ``g0, g1, ...``.

    Raises :class:`NotDerivable` with a countermodel team when the entailment fails.
    """
    premises = list(premises)
    for f in premises + [phi]:
        used = features(f) & {"dep", "inc", "impl"}
        if used:
            raise FragmentError(f"{to_text(f)} is outside PLv (uses {sorted(used)})")
    U = universe or Universe.for_formulas(*premises, phi)
    bad = countermodel(premises, phi, U)
    if bad is not None:
        raise NotDerivable(f"premises do not entail {to_text(phi)}", bad, U)
    b = Builder()
    labels = {}
    hyps = [b.hyp(g, labels.setdefault(g, f"g{len(labels)}")) for g in premises]
    return bridge(b, b.conj_intro(hyps), phi)


# -- replacement ---------------------------------------------------------------

def replacement(phi: Formula, p: str, chi: Formula, chi_prime: Formula, occurrence: int = 0,
                forward: Optional[Transform] = None, backward: Optional[Transform] = None,
                builder: Optional[Builder] = None) -> Derivation:
    """Derivation of ``phi[chi'/p]`` from the hypothesis ``phi[chi/p]`` at one occurrence of ``p``.

    ``forward`` and ``backward`` turn derivations of ``chi`` into ``chi'`` and
    back; by default they are built with :func:`bridge`.  Negations on the
    path are crossed with NegAnton, which is why both directions are needed.
    """
    b = builder or Builder("r")
    paths = occurrence_paths(phi, p)
    if not 0 <= occurrence < len(paths):
        raise SubstitutionError(f"{p} has {len(paths)} occurrence(s) in {to_text(phi)}")
    path = paths[occurrence]
    fwd = forward or (lambda d: bridge(b, d, chi_prime))
    bwd = backward or (lambda d: bridge(b, d, chi))
    step, _ = _replace_steps(b, phi, tuple(path), chi, chi_prime, fwd, bwd)
    return step(b.hyp(replace_at(phi, path, chi), "src"))


def _replace_steps(b, phi, path, chi, chi_prime, fwd, bwd):
    """Transformers ``phi[chi] -> phi[chi']`` and back along ``path``."""
    if not path:
        return fwd, bwd
    idx, rest = path[0], path[1:]
    if isinstance(phi, Neg):
        inner_f, inner_b = _replace_steps(b, phi.sub, rest, chi, chi_prime, fwd, bwd)
        old, new = replace_at(phi.sub, rest, chi), replace_at(phi.sub, rest, chi_prime)
        return (lambda d: b.neg_anton(d, new, inner_b)), (lambda d: b.neg_anton(d, old, inner_f))
    sub = phi.left if idx == 0 else phi.right
    inner_f, inner_b = _replace_steps(b, sub, rest, chi, chi_prime, fwd, bwd)

    def across(inner):
        if isinstance(phi, And):
            if idx == 0:
                return lambda d: b.and_i(inner(b.and_l(d)), b.and_r(d))
            return lambda d: b.and_i(b.and_l(d), inner(b.and_r(d)))
        if isinstance(phi, LocalOr):
            if idx == 0:
                return lambda d: b.lor_mon(d, inner)
            return lambda d: b.lor_com(b.lor_mon(b.lor_com(d), inner))
        raise FragmentError(f"replacement does not cross {type(phi).__name__}")

    if isinstance(phi, GlobalOr):
        return _gor_across(b, phi, idx, rest, chi, chi_prime, inner_f, inner_b)
    return across(inner_f), across(inner_b)


def _gor_across(b, phi, idx, rest, chi, chi_prime, inner_f, inner_b):
    sub = phi.left if idx == 0 else phi.right
    other = phi.right if idx == 0 else phi.left
    old_sub, new_sub = replace_at(sub, rest, chi), replace_at(sub, rest, chi_prime)

    def make(inner, target_sub):
        goal = GlobalOr(target_sub, other) if idx == 0 else GlobalOr(other, target_sub)
        if idx == 0:
            return lambda d: b.gor_e(d, goal, lambda h: b.gor_l(inner(h), other), lambda h: b.gor_r(target_sub, h))
        return lambda d: b.gor_e(d, goal, lambda h: b.gor_l(h, target_sub), lambda h: b.gor_r(other, inner(h)))

    return make(inner_f, new_sub), make(inner_b, old_sub)
