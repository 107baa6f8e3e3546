"""Derivations and the proof checker.

A :class:`Derivation` is a tree.  Leaves are ``Hypothesis`` nodes carrying a
label; rules that discharge assumptions list one label per discharge slot in
``discharged``, positionally.  A slot may discharge nothing (vacuous
discharge).  Labels must denote a single formula wherever they are open.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Optional

from ..formula import (And, Bottom, Formula, GlobalOr, IntImpl, LocalOr, Neg, features, is_classical,
                       is_harrop, parse, to_text)


class Rule(str, enum.Enum):
    BotE = "BotE"
    AndI = "AndI"
    AndE_L = "AndE_L"
    AndE_R = "AndE_R"
    NegI = "NegI"
    NegE = "NegE"
    RAA = "RAA"
    GOrI_L = "GOrI_L"
    GOrI_R = "GOrI_R"
    GOrE = "GOrE"
    LOrI = "LOrI"
    LOrE = "LOrE"
    LOrCom = "LOrCom"
    LOrMon = "LOrMon"
    DisOrGOr = "DisOrGOr"
    ImplI = "ImplI"
    ImplE = "ImplE"
    Split = "Split"
    Hypothesis = "Hypothesis"
    NegAnton = "NegAnton"


ARITY = {
    Rule.Hypothesis: 0, Rule.BotE: 1, Rule.AndI: 2, Rule.AndE_L: 1, Rule.AndE_R: 1, Rule.NegI: 1,
    Rule.NegE: 2, Rule.RAA: 1, Rule.GOrI_L: 1, Rule.GOrI_R: 1, Rule.GOrE: 3, Rule.LOrI: 1,
    Rule.LOrE: 3, Rule.LOrCom: 1, Rule.LOrMon: 2, Rule.DisOrGOr: 1, Rule.ImplI: 1, Rule.ImplE: 2,
    Rule.Split: 1, Rule.NegAnton: 2,
}

# premise index that each discharge slot closes hypotheses in
DISCHARGE_SLOTS = {
    Rule.NegI: (0,), Rule.RAA: (0,), Rule.ImplI: (0,), Rule.GOrE: (1, 2), Rule.LOrE: (1, 2),
    Rule.LOrMon: (1,), Rule.NegAnton: (1,),
}

CLASSICAL_RULES = frozenset({
    Rule.Hypothesis, Rule.BotE, Rule.AndI, Rule.AndE_L, Rule.AndE_R, Rule.NegI, Rule.NegE, Rule.RAA,
    Rule.LOrI, Rule.LOrE, Rule.LOrCom, Rule.LOrMon,
})

SIDE_CONDITIONS = ("classical", "harrop", "off")


@dataclass(frozen=True)
class Derivation:
    conclusion: Formula
    rule: Rule
    premises: tuple = ()
    discharged: tuple = ()
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "rule", Rule(self.rule))
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "discharged", tuple(self.discharged))

    def nodes(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))

    def rules_used(self) -> frozenset:
        return frozenset(node.rule for node in self.nodes())

    def size(self) -> int:
        return sum(1 for _ in self.nodes())


@dataclass(frozen=True)
class Sequent:
    premises: frozenset
    conclusion: Formula

    def __str__(self):
        left = ", ".join(sorted(to_text(p) for p in self.premises))
        return f"{left} |- {to_text(self.conclusion)}"


class ProofError(ValueError):
    def __init__(self, path: tuple, message: str):
        where = "root" if not path else "premises " + ".".join(map(str, path))
        super().__init__(f"at {where}: {message}")
        self.path = path
        self.reason = message


class SideConditionError(ProofError):
    def __init__(self, path, rule, alpha, mode):
        super().__init__(path, f"{rule.value} needs a {mode} formula, got {to_text(alpha)}")
        self.offending = alpha


def _side_ok(alpha: Formula, mode: str) -> bool:
    if mode == "classical":
        return is_classical(alpha)
    if mode == "harrop":
        return is_harrop(alpha)
    return True


def _expect(cond, path, message):
    if not cond:
        raise ProofError(path, message)


def _schema(node: Derivation, prem: list, path, side: str) -> tuple:
    """Validate one inference; return the formula assumed by each discharge slot."""
    r, c = node.rule, node.conclusion
    t = to_text

    def side_check(alpha):
        if not _side_ok(alpha, side):
            raise SideConditionError(path, r, alpha, side)

    if r is Rule.BotE:
        _expect(prem[0] == Bottom(), path, f"BotE needs premise _|_, got {t(prem[0])}")
        return ()
    if r is Rule.AndI:
        _expect(c == And(prem[0], prem[1]), path, f"AndI of {t(prem[0])}, {t(prem[1])} cannot give {t(c)}")
        return ()
    if r in (Rule.AndE_L, Rule.AndE_R):
        _expect(isinstance(prem[0], And), path, f"{r.value} needs a conjunction, got {t(prem[0])}")
        part = prem[0].left if r is Rule.AndE_L else prem[0].right
        _expect(part == c, path, f"{r.value} of {t(prem[0])} cannot give {t(c)}")
        return ()
    if r is Rule.NegI:
        _expect(prem[0] == Bottom(), path, f"NegI needs premise _|_, got {t(prem[0])}")
        _expect(isinstance(c, Neg), path, f"NegI must conclude a negation, got {t(c)}")
        return (c.sub,)
    if r is Rule.NegE:
        _expect(prem[1] == Neg(prem[0]), path, f"NegE needs phi and ~phi, got {t(prem[0])} and {t(prem[1])}")
        return ()
    if r is Rule.RAA:
        _expect(prem[0] == Bottom(), path, f"RAA needs premise _|_, got {t(prem[0])}")
        side_check(c)
        return (Neg(c),)
    if r in (Rule.GOrI_L, Rule.GOrI_R):
        _expect(isinstance(c, GlobalOr), path, f"{r.value} must conclude a global disjunction, got {t(c)}")
        part = c.left if r is Rule.GOrI_L else c.right
        _expect(part == prem[0], path, f"{r.value} of {t(prem[0])} cannot give {t(c)}")
        return ()
    if r in (Rule.GOrE, Rule.LOrE):
        kind = GlobalOr if r is Rule.GOrE else LocalOr
        _expect(isinstance(prem[0], kind), path, f"{r.value} major premise has wrong shape: {t(prem[0])}")
        _expect(prem[1] == c and prem[2] == c, path,
                f"{r.value} minor premises {t(prem[1])}, {t(prem[2])} must both be {t(c)}")
        if r is Rule.LOrE:
            side_check(c)
        return (prem[0].left, prem[0].right)
    if r is Rule.LOrI:
        _expect(isinstance(c, LocalOr) and c.left == prem[0], path, f"LOrI of {t(prem[0])} cannot give {t(c)}")
        return ()
    if r is Rule.LOrCom:
        _expect(isinstance(prem[0], LocalOr), path, f"LOrCom needs a local disjunction, got {t(prem[0])}")
        _expect(c == LocalOr(prem[0].right, prem[0].left), path, f"LOrCom of {t(prem[0])} cannot give {t(c)}")
        return ()
    if r is Rule.LOrMon:
        _expect(isinstance(prem[0], LocalOr), path, f"LOrMon needs a local disjunction, got {t(prem[0])}")
        _expect(c == LocalOr(prem[1], prem[0].right), path,
                f"LOrMon of {t(prem[0])} with {t(prem[1])} cannot give {t(c)}")
        return (prem[0].left,)
    if r is Rule.DisOrGOr:
        major = prem[0]
        _expect(isinstance(major, LocalOr) and isinstance(major.right, GlobalOr), path,
                f"DisOrGOr needs phi | (psi \\/ chi), got {t(major)}")
        a, b, d = major.left, major.right.left, major.right.right
        _expect(c == GlobalOr(LocalOr(a, b), LocalOr(a, d)), path, f"DisOrGOr of {t(major)} cannot give {t(c)}")
        return ()
    if r is Rule.ImplI:
        _expect(isinstance(c, IntImpl) and c.right == prem[0], path, f"ImplI of {t(prem[0])} cannot give {t(c)}")
        return (c.left,)
    if r is Rule.ImplE:
        _expect(prem[0] == IntImpl(prem[1], c), path,
                f"ImplE of {t(prem[0])} and {t(prem[1])} cannot give {t(c)}")
        return ()
    if r is Rule.Split:
        major = prem[0]
        _expect(isinstance(major, IntImpl) and isinstance(major.right, GlobalOr), path,
                f"Split needs alpha -> (phi \\/ psi), got {t(major)}")
        a, b, d = major.left, major.right.left, major.right.right
        side_check(a)
        _expect(c == GlobalOr(IntImpl(a, b), IntImpl(a, d)), path, f"Split of {t(major)} cannot give {t(c)}")
        return ()
    if r is Rule.NegAnton:
        _expect(prem[0] == Neg(prem[1]), path, f"NegAnton needs ~phi and phi, got {t(prem[0])} and {t(prem[1])}")
        _expect(isinstance(c, Neg), path, f"NegAnton must conclude a negation, got {t(c)}")
        return (c.sub,)
    raise ProofError(path, f"unknown rule {r}")


def _merge(into: dict, other: dict, path):
    for label, f in other.items():
        if into.setdefault(label, f) != f:
            raise ProofError(path, f"label {label!r} names both {to_text(into[label])} and {to_text(f)}")


def check(d: Derivation, side_condition: str = "classical") -> Sequent:
    """Check every inference of ``d``; return the proved sequent.

    ``side_condition`` governs the formula alpha in RAA, LOrE and Split:
    ``classical`` (default), ``harrop``, or ``off`` (unsound, for mutation tests).
    """
    if side_condition not in SIDE_CONDITIONS:
        raise ValueError(f"side condition must be one of {SIDE_CONDITIONS}")
    # iterative post-order; derivations built by the prover can be deep
    results = {}
    stack = [(d, (), False)]
    while stack:
        node, path, ready = stack.pop()
        if not ready:
            stack.append((node, path, True))
            for i, p in enumerate(node.premises):
                stack.append((p, path + (i,), False))
            continue
        used = features(node.conclusion) & {"dep", "inc"}
        if used:
            raise ProofError(path, f"{to_text(node.conclusion)} is outside the PLv language (uses {sorted(used)})")
        if len(node.premises) != ARITY[node.rule]:
            raise ProofError(path, f"{node.rule.value} takes {ARITY[node.rule]} premises, got {len(node.premises)}")
        if node.rule is Rule.Hypothesis:
            if not node.label:
                raise ProofError(path, "hypothesis without a label")
            results[path] = {node.label: node.conclusion}
            continue
        slots = DISCHARGE_SLOTS.get(node.rule, ())
        if len(node.discharged) != len(slots):
            raise ProofError(path, f"{node.rule.value} discharges {len(slots)} label(s), "
                                   f"got {len(node.discharged)}")
        opens = [results.pop(path + (i,)) for i in range(len(node.premises))]
        assumed = _schema(node, [p.conclusion for p in node.premises], path, side_condition)
        for label, premise_index, formula in zip(node.discharged, slots, assumed):
            found = opens[premise_index].get(label)
            if found is not None and found != formula:
                raise ProofError(path, f"label {label!r} discharges {to_text(formula)} "
                                       f"but marks {to_text(found)}")
            opens[premise_index] = {k: v for k, v in opens[premise_index].items() if k != label}
        merged = {}
        for o in opens:
            _merge(merged, o, path)
        results[path] = merged
    return Sequent(frozenset(results[()].values()), d.conclusion)


# -- JSON --------------------------------------------------------------------

def derivation_to_json(d: Derivation) -> dict:
    out = {"rule": d.rule.value, "conclusion": to_text(d.conclusion)}
    if d.label is not None:
        out["label"] = d.label
    if d.discharged:
        out["discharged"] = list(d.discharged)
    if d.premises:
        out["premises"] = [derivation_to_json(p) for p in d.premises]
    return out


def derivation_from_json(obj: dict) -> Derivation:
    try:
        rule = Rule(obj["rule"])
    except ValueError:
        raise ProofError((), f"unknown rule {obj['rule']!r}") from None
    return Derivation(
        conclusion=parse(obj["conclusion"]),
        rule=rule,
        premises=tuple(derivation_from_json(p) for p in obj.get("premises", ())),
        discharged=tuple(obj.get("discharged", ())),
        label=obj.get("label"),
    )


def dumps(d: Derivation, **kw) -> str:
    return json.dumps({"schema": 1, "proof": derivation_to_json(d)}, **kw)


def loads(text: str) -> Derivation:
    obj = json.loads(text)
    return derivation_from_json(obj["proof"] if "proof" in obj else obj)
