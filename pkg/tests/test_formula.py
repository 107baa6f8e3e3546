import pytest
from hypothesis import given

from strategies import formulas, in_fragment
from teamlogic.formula import (BOT, TOP, VERUM, And, Bottom, DepAtom, FormulaSyntaxError, GlobalOr, IncAtom,
                               IntImpl, LocalOr, Neg, Prop, SubstitutionError, atomic_negation_only, classify,
                               conj, depth, features, flatten, fragment, gdisj, is_classical, is_harrop, ldisj,
                               occurrence_paths, parse, size, substitute, syntactically_downward_closed,
                               syntactically_union_closed, to_text, variables)

p, q, r = Prop("p"), Prop("q"), Prop("r")


@pytest.mark.parametrize("text, expected", [
    ("p", p),
    ("~p", Neg(p)),
    ("p & q | r", LocalOr(And(p, q), r)),
    ("p | q \\/ r", GlobalOr(LocalOr(p, q), r)),
    ("p \\/ q -> r", IntImpl(GlobalOr(p, q), r)),
    ("p -> q -> r", IntImpl(p, IntImpl(q, r))),
    ("p | q | r", LocalOr(p, LocalOr(q, r))),
    ("~~p", Neg(Neg(p))),
    ("_|_", Bottom()),
    ("T", VERUM),
    ("B", Bottom()),
    ("=(p)", DepAtom((), "p")),
    ("=(p q, r)", DepAtom(("p", "q"), "r")),
    ("T B <= p q", IncAtom((TOP, BOT), ("p", "q"))),
    ("p <= q", IncAtom(("p",), ("q",))),
    ("¬p ∨ q", LocalOr(Neg(p), q)),
    ("p ⩖ q", GlobalOr(p, q)),
])
def test_parse(text, expected):
    assert parse(text) == expected


def test_implication_sugar():
    assert parse("p ->. q") == LocalOr(Neg(p), q)
    assert parse("p ->: q") == GlobalOr(Neg(p), q)


@pytest.mark.parametrize("bad", ["", "p &", "(p", "p q", "=(p", "p <= q r", "T <= ", "p ) q", "~", "T = p"])
def test_parse_errors(bad):
    with pytest.raises(FormulaSyntaxError):
        parse(bad)


def test_syntax_error_has_position():
    with pytest.raises(FormulaSyntaxError) as info:
        parse("p & & q")
    assert info.value.position == 4


@given(formulas(("prop", "bot", "dep", "inc"), ("neg", "and", "lor", "gor", "impl")))
def test_print_parse_round_trip(phi):
    assert parse(to_text(phi)) == phi


def test_printing_is_minimal():
    assert to_text(LocalOr(LocalOr(p, q), r)) == "(p | q) | r"
    assert to_text(LocalOr(p, LocalOr(q, r))) == "p | q | r"
    assert to_text(Neg(And(p, q))) == "~(p & q)"
    assert to_text(And(GlobalOr(p, q), r)) == "(p \\/ q) & r"


def test_aggregates():
    assert conj() == VERUM
    assert ldisj() == Bottom() and gdisj() == Bottom()
    assert conj(p) == p
    assert conj(p, q, r) == And(p, And(q, r))
    assert flatten(conj(p, q, r), And) == [p, q, r]
    assert gdisj(p, q) == GlobalOr(p, q)


def test_traversals():
    phi = parse("~(p | =(q)) \\/ r")
    assert variables(phi) == {"p", "q", "r"}
    assert features(phi) == {"neg", "lor", "prop", "dep", "gor"}
    assert size(phi) == 6
    assert depth(phi) == 4
    assert variables(parse("T <= q")) == {"q"}


@pytest.mark.parametrize("text, member, nonmember", [
    ("p | ~q", "PL", None),
    ("p \\/ q", "PLv", "PL"),
    ("=(p) & q", "PLdep", "PLv"),
    ("T <= p", "PLinc", "PLdep"),
    ("(T <= p) \\/ q", "PLincV", "PLinc"),
    ("=(p) | (T <= q)", "PLdepinc", "PLincV"),
    ("p -> q", "PLfull", "PLdepinc"),
])
def test_classify(text, member, nonmember):
    names = classify(parse(text))
    assert member in names
    if nonmember:
        assert nonmember not in names


def test_fragment_lookup():
    assert fragment("PLv").admits(parse("p \\/ ~q"))
    with pytest.raises(ValueError):
        fragment("nope")


def test_predicates():
    assert is_classical(parse("~(p | q) & _|_"))
    assert not is_classical(parse("p \\/ q"))
    assert is_harrop(parse("~(p \\/ q) | r"))
    assert not is_harrop(parse("(p \\/ q) | r"))
    assert atomic_negation_only(parse("~p | ~_|_"))
    assert not atomic_negation_only(parse("~~p"))
    assert syntactically_downward_closed(parse("=(p) | ~(T <= p)"))
    assert not syntactically_downward_closed(parse("T <= p"))
    assert syntactically_union_closed(parse("(T <= p) | ~=(p)"))
    assert not syntactically_union_closed(parse("p \\/ q"))


def test_substitution():
    phi = parse("p | ~(p & q)")
    assert occurrence_paths(phi, "p") == [(0,), (1, 0, 0)]
    assert substitute(phi, "p", r, 1) == parse("p | ~(r & q)")
    assert substitute(phi, "p", r) == parse("r | ~(p & q)")
    with pytest.raises(SubstitutionError):
        substitute(phi, "p", r, 2)


def test_inclusion_arity_checked():
    with pytest.raises(ValueError):
        IncAtom(("p",), ("p", "q"))


@given(in_fragment("PLv"))
def test_plv_generator_stays_in_fragment(phi):
    assert "PLv" in classify(phi)
