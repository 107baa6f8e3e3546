import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from strategies import formulas, in_fragment
from teamlogic.formula import parse
from teamlogic.team import (TeamProperty, UniverseCapError, UnknownVariableError, Universe, countermodel, entails,
                            equivalent, extension, extension_by_sweep, members, property_from_json,
                            property_to_json, satisfies, single_valuation_sat, subteams, team_from_bits,
                            team_from_json, team_of, team_to_bits, team_to_json, truth_set)

PQ = Universe.of("p", "q")
PQR = Universe.of("p", "q", "r")
everything = formulas(("prop", "bot", "dep", "inc"), ("neg", "and", "lor", "gor", "impl"), names=("p", "q"),
                      max_leaves=6)


def test_encoding():
    assert PQ.value(0b10, "p") == 1 and PQ.value(0b10, "q") == 0
    assert PQ.bits(1) == "01"
    assert team_from_bits(PQ, ["00", "11"]) == 0b1001
    assert team_to_bits(PQ, 0b1001) == ["00", "11"]
    assert members(0b1010) == [1, 3]
    assert list(subteams(0b11)) == [3, 2, 1, 0]
    assert PQ.var_mask("p") == team_of([2, 3])


def test_universe_validation():
    with pytest.raises(ValueError):
        Universe.of("p", "p")
    with pytest.raises(UniverseCapError):
        Universe.standard(5)
    assert Universe.standard(5, cap=5).n == 5
    with pytest.raises(UnknownVariableError):
        satisfies(1, parse("r"), PQ)
    with pytest.raises(UniverseCapError):
        extension(parse("p1"), Universe.standard(5, cap=6))


def test_global_excluded_middle_fails_on_two_valuations():
    U = Universe.of("p")
    assert not satisfies(0b11, parse("p \\/ ~p"), U)
    assert satisfies(0b11, parse("p | ~p"), U)
    assert satisfies(0b01, parse("p \\/ ~p"), U)


def test_atoms():
    U = Universe.of("p")
    assert extension(parse("=(p)"), U) == TeamProperty.from_teams(U, [0, 1, 2])
    assert extension(parse("~=(p)"), U) == TeamProperty.from_teams(U, [0])
    assert extension(parse("T <= p"), U) == TeamProperty.from_teams(U, [0, 2, 3])
    assert extension(parse("p <= q"), PQ) == extension_by_sweep(parse("p <= q"), PQ)
    assert satisfies(team_from_bits(PQ, ["01", "10", "11"]), parse("=(p q, q)"), PQ)
    assert not satisfies(team_from_bits(PQ, ["00", "01"]), parse("=(p, q)"), PQ)


def test_negation_is_flat_and_bottom():
    U = Universe.of("p")
    assert extension(parse("_|_"), U) == TeamProperty.from_teams(U, [0])
    assert extension(parse("~_|_"), U) == TeamProperty.full(U)


def test_invalid_formula_seven_of_sixteen():
    # (p \/ ~p) | ~(p \/ ~p) fails on teams that are neither constant nor splittable
    prop = extension(parse("(p \\/ ~p) | ~(p \\/ ~p)"), PQ)
    assert len(prop) == 7


@settings(max_examples=150)
@given(everything)
def test_two_routes_agree(phi):
    assert extension(phi, PQ) == extension_by_sweep(phi, PQ)
    assert extension(phi, PQ) == extension_by_sweep(phi, PQ, cover_mode="covers")


@settings(max_examples=60)
@given(everything, st.integers(0, 15))
def test_matches_reference_semantics(phi, t):
    assert satisfies(t, phi, PQ) == oracle.sat(oracle.team_from_index(PQ.vars, t), phi)


@given(in_fragment("PLdep", names=("p", "q")))
def test_partitions_suffice_for_downward_closed(phi):
    assert extension_by_sweep(phi, PQ, "partitions") == extension(phi, PQ)


@given(in_fragment("PL", names=("p", "q", "r")), st.integers(0, 7))
def test_single_valuation(alpha, v):
    t = 1 << v
    assert single_valuation_sat(v, alpha, PQR) == satisfies(t, alpha, PQR)
    assert (truth_set(alpha, PQR) >> v & 1) == single_valuation_sat(v, alpha, PQR)


def test_single_valuation_rejects_non_classical():
    with pytest.raises(ValueError):
        single_valuation_sat(0, parse("p \\/ q"), PQ)


def test_entailment():
    assert entails([parse("p & q")], parse("p \\/ q"), PQ)
    assert not entails([parse("p | q")], parse("p \\/ q"), PQ)
    assert countermodel([parse("p \\/ ~p")], parse("p"), Universe.of("p")) == 0b01
    assert equivalent(parse("~(p \\/ q)"), parse("~p & ~q"), PQ)
    assert entails([], parse("~_|_"), PQ)


@given(in_fragment("PLv", names=("p", "q")), in_fragment("PLv", names=("p", "q")))
def test_entailment_matches_definition(phi, psi):
    a, b = extension(phi, PQ), extension(psi, PQ)
    assert entails([phi], psi, PQ) == (a.mask & ~b.mask == 0)


def test_json_round_trip():
    prop = extension(parse("=(p) \\/ q"), PQ)
    obj = json.loads(json.dumps(property_to_json(prop)))
    assert property_from_json(obj) == prop
    U, t = team_from_json(team_to_json(PQ, 0b0110))
    assert U == PQ and t == 0b0110
    U, t = team_from_json({"vars": ["p"], "teams": [["0", "1"]]})
    assert t == 0b11
    with pytest.raises(ValueError):
        team_from_json({"vars": ["p"], "teams": []})
    with pytest.raises(ValueError):
        team_from_json({"vars": ["p"], "team": ["2"]})


def test_property_container():
    prop = TeamProperty.from_teams(PQ, [0, 3, 5])
    assert list(prop) == [0, 3, 5] and len(prop) == 3 and 3 in prop and 4 not in prop
    assert len(prop.complement()) == 13
    with pytest.raises(ValueError):
        TeamProperty.from_teams(PQ, [16])
