import itertools

from hypothesis import given
from hypothesis import strategies as st

from strategies import in_fragment
from teamlogic.closure import (describe, flat_by_closure, formula_closure, has_empty, is_downward_closed, is_flat,
                               is_union_closed)
from teamlogic.formula import parse
from teamlogic.team import TeamProperty, Universe, extension

P = Universe.of("p")
PQ = Universe.of("p", "q")


def brute_downward(prop):
    teams = list(prop)
    return all(s in prop for t in teams for s in range(prop.universe.num_teams) if s & ~t == 0)


def brute_union(prop):
    # every nonempty subfamily, not only pairs
    teams = list(prop)
    for r in range(2, len(teams) + 1):
        for family in itertools.combinations(teams, r):
            u = 0
            for t in family:
                u |= t
            if u not in prop:
                return False
    return True


def brute_flat(prop):
    U = prop.universe
    return all((t in prop) == all((1 << v) in prop for v in range(U.num_valuations) if t >> v & 1)
               for t in range(U.num_teams))


def test_all_properties_over_one_variable():
    for mask in range(16):
        prop = TeamProperty(P, mask)
        assert bool(is_downward_closed(prop)) == brute_downward(prop)
        assert bool(is_union_closed(prop)) == brute_union(prop)
        assert bool(is_flat(prop)) == brute_flat(prop)
        assert bool(is_flat(prop)) == flat_by_closure(prop)


@given(st.integers(0, (1 << 16) - 1))
def test_sampled_properties_over_two_variables(mask):
    prop = TeamProperty(PQ, mask)
    assert bool(is_downward_closed(prop)) == brute_downward(prop)
    assert bool(is_flat(prop)) == brute_flat(prop) == flat_by_closure(prop)


def test_witnesses():
    prop = extension(parse("T <= p"), P)
    verdict = is_downward_closed(prop)
    assert not verdict and verdict.witness == (0b11, 0b01)
    prop = extension(parse("=(p)"), P)
    verdict = is_union_closed(prop)
    assert not verdict and verdict.witness == (1, 2, 3)
    assert not has_empty(TeamProperty.from_teams(P, [1]))


def test_describe():
    report = describe(extension(parse("p \\/ ~p"), P))
    assert report["downward"]["holds"] and not report["union"]["holds"]
    assert report["union"]["witness"] == [["0"], ["1"], ["0", "1"]]
    assert report["flat"]["witness"] == [["0", "1"]]


@given(in_fragment("PLv", names=("p", "q")))
def test_plv_is_downward_closed(phi):
    c = formula_closure(phi, PQ)
    assert c["empty"] and c["downward"]


@given(in_fragment("PLinc", names=("p", "q")))
def test_plinc_is_union_closed(phi):
    c = formula_closure(phi, PQ)
    assert c["empty"] and c["union"]


@given(in_fragment("PLdepinc", names=("p", "q"), with_impl=True))
def test_negations_are_flat(phi):
    assert formula_closure(parse(f"~({phi})"), PQ)["flat"]
