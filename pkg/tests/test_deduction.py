import json

import pytest
from hypothesis import given, settings

from strategies import in_fragment
from teamlogic.deduction import (CLASSICAL_RULES, DERIVED_RULES, Builder, Derivation, InstantiationError,
                                 NotDerivable, ProofError, Rule, SideConditionError, check, derive_dnf,
                                 derived_rule, dumps, expand_neg_anton, loads, prove, replacement)
from teamlogic.deduction.build import excluded_middle, prove_classical
from teamlogic.formula import Bottom, Neg, Prop, gdisj, parse, variables
from teamlogic.normal_forms import FragmentError, to_dnf
from teamlogic.team import Universe, entails, satisfies

p, q, r = Prop("p"), Prop("q"), Prop("r")


def H(phi, label):
    return Derivation(parse(phi) if isinstance(phi, str) else phi, Rule.Hypothesis, label=label)


def valid(seq, names=("p", "q", "r")):
    U = Universe(tuple(sorted(set(names) | set().union(*(variables(f) for f in (*seq.premises, seq.conclusion))))))
    return entails(sorted(seq.premises, key=str), seq.conclusion, U)


# -- checker --------------------------------------------------------------

def test_negation_elimination_sequent():
    d = Derivation(q, Rule.NegE, (H(p, "a"), H(Neg(p), "b")))
    seq = check(d)
    assert seq.premises == {p, Neg(p)} and seq.conclusion == q


def test_raa_on_global_disjunction_rejected():
    lem = parse("p \\/ ~p")
    b = Builder()
    d = b.raa(lem, lambda h: b.neg_e(b.gor_l(b.raa(p, lambda k: b.neg_e(b.gor_r(p, k), h, Bottom())), Neg(p)),
                                     h, Bottom()))
    with pytest.raises(SideConditionError) as info:
        check(d)
    assert info.value.offending == lem and info.value.path == ()
    with pytest.raises(SideConditionError):
        check(d, side_condition="harrop")
    assert check(d, side_condition="off").premises == frozenset()


def test_harrop_flag_widens_lore():
    goal = parse("~(p \\/ q) | r")
    major = H("p | q", "m")
    d = Derivation(goal, Rule.LOrE, (major, H(goal, "u"), H(goal, "u")), ("x", "y"))
    with pytest.raises(SideConditionError):
        check(d)
    assert check(d, side_condition="harrop").conclusion == goal


def test_commutation():
    d = Derivation(parse("q | p"), Rule.LOrCom, (H("p | q", "a"),))
    assert check(d).conclusion == parse("q | p")
    bad = Derivation(parse("p | q"), Rule.LOrCom, (H("p | q", "a"),))
    with pytest.raises(ProofError):
        check(bad)


def test_discharge_bookkeeping():
    b = Builder()
    d = b.impl_i(p, lambda h: h)
    assert check(d).premises == frozenset()
    # vacuous discharge
    vac = Derivation(parse("q -> p"), Rule.ImplI, (H(p, "a"),), ("z",))
    assert check(vac).premises == {p}
    # label marks the wrong formula
    wrong = Derivation(parse("q -> p"), Rule.ImplI, (H(p, "a"),), ("a",))
    with pytest.raises(ProofError, match="discharges"):
        check(wrong)
    # one label, two formulas
    clash = Derivation(parse("p & q"), Rule.AndI, (H(p, "a"), H(q, "a")))
    with pytest.raises(ProofError, match="names both"):
        check(clash)
    # wrong number of discharge labels
    missing = Derivation(parse("p -> p"), Rule.ImplI, (H(p, "a"),))
    with pytest.raises(ProofError):
        check(missing)


def test_discharge_stays_inside_its_premise():
    # GOrE discharges [p] in its second premise only; the open p in the major survives
    major = Derivation(parse("p \\/ p"), Rule.GOrI_L, (H(p, "a"),))
    d = Derivation(p, Rule.GOrE, (major, H(p, "a"), H(p, "b")), ("a", "b"))
    assert check(d).premises == {p}


def test_error_paths():
    inner = Derivation(q, Rule.AndE_L, (H("p & q", "a"),))
    d = Derivation(parse("q & q"), Rule.AndI, (H(q, "b"), inner))
    with pytest.raises(ProofError) as info:
        check(d)
    assert info.value.path == (1,)


def test_rejects_dependency_atoms():
    with pytest.raises(ProofError, match="outside"):
        check(H("=(p)", "a"))


def test_arity_and_labels():
    with pytest.raises(ProofError):
        check(Derivation(p, Rule.BotE, ()))
    with pytest.raises(ProofError):
        check(Derivation(p, Rule.Hypothesis))
    with pytest.raises(ValueError):
        check(H(p, "a"), side_condition="loose")


def test_json_round_trip():
    d = prove([parse("p | q"), parse("~p")], q)
    text = dumps(d)
    assert json.loads(text)["schema"] == 1
    assert loads(text) == d
    with pytest.raises(ProofError):
        loads('{"proof": {"rule": "Magic", "conclusion": "p"}}')


def test_split_rule():
    b = Builder()
    d = b.split(b.hyp(parse("p -> q \\/ r"), "a"))
    assert str(check(d)) == "p -> q \\/ r |- (p -> q) \\/ (p -> r)"
    bad = b.split(b.hyp(parse("(p \\/ q) -> q \\/ r"), "a"))
    with pytest.raises(SideConditionError):
        check(bad)


# -- normal forms --------------------------------------------------------------

@pytest.mark.parametrize("text", ["p", "~(p \\/ q)", "(p \\/ q) | r", "~(p \\/ ~p)", "(p \\/ q) & (r \\/ ~p)",
                                  "((p \\/ q) | (r \\/ p)) \\/ ~(q \\/ r)", "~~(p \\/ q)"])
def test_derive_dnf_examples(text):
    phi = parse(text)
    fwd, bwd = derive_dnf(phi)
    target = gdisj(*to_dnf(phi))
    s1, s2 = check(fwd), check(bwd)
    assert s1.premises == {phi} and s1.conclusion == target
    assert s2.premises == {target} and s2.conclusion == phi


def test_derive_dnf_classical_is_reflexive():
    fwd, bwd = derive_dnf(parse("p | ~q"))
    assert fwd.rule is Rule.Hypothesis and bwd.rule is Rule.Hypothesis


def test_derive_dnf_uses_distribution():
    fwd, _ = derive_dnf(parse("(p \\/ q) | r"))
    assert Rule.DisOrGOr in fwd.rules_used()


def test_derive_dnf_rejects_atoms():
    with pytest.raises(FragmentError):
        derive_dnf(parse("=(p) \\/ q"))


@settings(max_examples=40)
@given(in_fragment("PLv", max_leaves=6))
def test_derive_dnf_always_checks(phi):
    fwd, bwd = derive_dnf(phi)
    target = gdisj(*to_dnf(phi))
    assert check(fwd).conclusion == target
    assert check(bwd).conclusion == phi


# -- prove ------------------------------------------------------------------------

def test_prove_examples():
    d = prove([p], parse("p \\/ q"))
    assert check(d) .conclusion == parse("p \\/ q")
    assert Rule.GOrI_L in d.rules_used()
    d = prove([parse("p | q"), parse("~p | r")], parse("q | r"))
    assert check(d).premises == {parse("p | q"), parse("~p | r")}
    d = prove([], parse("~(p & ~p)"))
    assert check(d).premises == frozenset()


def test_prove_failure_has_countermodel():
    with pytest.raises(NotDerivable) as info:
        prove([parse("p \\/ ~p")], p)
    U, t = info.value.universe, info.value.countermodel
    assert t == 0b01
    assert satisfies(t, parse("p \\/ ~p"), U) and not satisfies(t, p, U)


def test_prove_rejects_atoms():
    with pytest.raises(FragmentError):
        prove([parse("=(p)")], p)


@settings(max_examples=40)
@given(in_fragment("PL", max_leaves=5), in_fragment("PL", max_leaves=5))
def test_classical_entailments_use_classical_rules(a, c):
    U = Universe(("p", "q", "r"))
    if not entails([a], c, U):
        return
    d = prove([a], c, U)
    assert check(d).conclusion == c
    assert d.rules_used() <= CLASSICAL_RULES


def test_classical_prover_directly():
    b = Builder()
    d = prove_classical(b, [b.hyp(parse("p | q"), "a"), b.hyp(parse("~p"), "b")], q)
    assert check(d).premises == {parse("p | q"), parse("~p")}
    assert check(excluded_middle(Builder(), p)).conclusion == parse("p | ~p")
    with pytest.raises(NotDerivable):
        prove_classical(Builder(), [], p)


# -- replacement ----------------------------------------------------------------------

@pytest.mark.parametrize("phi, occ, chi, chi2", [
    ("~(p | q) & r", 0, "s & s", "s"),
    ("(p \\/ q) | r", 0, "~~s", "s"),
    ("q \\/ ~~p", 0, "s \\/ t", "t \\/ s"),
    ("p | ~(q & p)", 1, "~(s \\/ t)", "~s & ~t"),
])
def test_replacement(phi, occ, chi, chi2):
    phi, chi, chi2 = parse(phi), parse(chi), parse(chi2)
    d = replacement(phi, "p", chi, chi2, occurrence=occ)
    seq = check(d)
    assert valid(seq, ("s", "t"))
    assert seq.conclusion != next(iter(seq.premises))


def test_replacement_crosses_negation_with_neg_anton():
    d = replacement(parse("~p"), "p", parse("q \\/ r"), parse("r \\/ q"))
    assert d.rule is Rule.NegAnton


# -- derived rules ---------------------------------------------------------------------

def test_derived_examples():
    d = derived_rule("DisjSyl1", alpha=p, phi=q)
    assert check(d).premises == {parse("p | q"), parse("~p")} and check(d).conclusion == q
    d = derived_rule("LOrBotElim", phi=parse("p \\/ q"))
    assert str(check(d)) == "(p \\/ q) | _|_ |- p \\/ q"
    d = derived_rule("SplitDerived", alpha=p, phi=q, psi=r)
    assert str(check(d)) == "p -> q \\/ r |- (p -> q) \\/ (p -> r)"
    assert Rule.Split not in d.rules_used()


def test_derived_rule_errors():
    with pytest.raises(InstantiationError):
        derived_rule("DisjSyl1", alpha=parse("p \\/ q"), phi=q)
    with pytest.raises(InstantiationError):
        derived_rule("DisjSyl1", alpha=p)
    with pytest.raises(KeyError):
        derived_rule("Nope")
    with pytest.raises(NotDerivable):
        derived_rule("NegAntonExpand", phi=p, psi=q)


def test_neg_anton_expansion():
    d = prove([parse("p \\/ q")], parse("~~(p \\/ q)"))
    assert Rule.NegAnton in d.rules_used()
    e = expand_neg_anton(d)
    assert Rule.NegAnton not in e.rules_used()
    assert check(e) == check(d)


def test_every_derived_rule_listed():
    assert set(DERIVED_RULES) == {"LOrAss", "LOrBotElim", "DisjSyl1", "DisjSyl2", "ImplDef_LR", "ImplDef_RL",
                                  "SplitDerived", "NegAntonExpand"}


def test_deterministic_labels():
    a = dumps(prove([parse("p \\/ q")], parse("q \\/ p")))
    b = dumps(prove([parse("p \\/ q")], parse("q \\/ p")))
    assert a == b
