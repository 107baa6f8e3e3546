"""Brute-force sweeps confirming the characteristic-formula facts, the
synthesis round trips and the soundness of the proof checker.

Each check compares the bottom-up extension of a constructed formula with a
set-theoretic predicate evaluated directly on teams.  Mutation modes swap in a
deliberately broken construction so the sweeps can be seen to fail.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .closure import has_empty, is_downward_closed, is_flat, is_union_closed
from .formula import (Bottom, Formula, GlobalOr, LocalOr, Neg, Prop, atomic_negation_only, conj, fragment,
                      ldisj)
from .generate import corpus, random_names
from .synthesis import Constructions, _check_class
from .team import TeamProperty, Universe, extension, members, popcount, single_valuation_sat, truth_set

LEMMA_IDS = ("1", "2", "3", "5", "6", "eq3", "eq7", "eq8", "eq9", "mu",
             "cor1", "thm2", "plinc", "thm3", "thm4", "sound")

TITLES = {
    "1": "classical formulas define the powerset of their truth set",
    "2": "chi_t defines the powerset of t (both forms)",
    "3": "rho_t holds on s iff t is not a subteam of s",
    "5": "sigma_t holds on s iff s is empty or not a subteam of t",
    "6": "rho_t | sigma_t holds on s iff s != t",
    "eq3": "a valuation u satisfies chi_v iff u = v",
    "eq7": "iota_v holds on nonempty s iff v is in s",
    "eq8": "iota_t holds on s iff t is a subteam of s or s is empty",
    "eq9": "chi_t & iota_t holds on s iff s = t or s is empty",
    "mu": "mu_k holds on s iff |s| <= k",
    "cor1": "PL round trip over flat properties",
    "thm2": "PLv and PLdep round trips over nonempty downward-closed properties",
    "plinc": "PLinc round trip over union-closed properties with the empty team",
    "thm3": "PLincV round trip over properties with the empty team",
    "thm4": "PLdepinc round trip over properties with the empty team",
    "sound": "every derivation the checker accepts is semantically valid",
}

MUTATIONS = ("sigma-complement", "iota-drop", "raa-weak")

# beyond this many properties a round trip must be sampled
EXHAUSTIVE_LIMIT = 1 << 16


@dataclass
class LemmaResult:
    lemma: str
    title: str
    passed: bool
    cases: int
    counterexample: Optional[dict] = None
    sampled: bool = False
    skipped: Optional[str] = None

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "title": self.title, "passed": self.passed, "cases": self.cases,
                "sampled": self.sampled, "skipped": self.skipped, "counterexample": self.counterexample}


# -- mutated constructions ------------------------------------------------------

class SigmaOverTeam(Constructions):
    """sigma_t built from the members of t instead of its complement."""

    def sigma_t(self, t):
        return self._memo(("sigma", t), lambda: ldisj(*(self.iota_v(v) for v in members(t))))


class IotaDropLast(Constructions):
    """iota_t missing its last conjunct."""

    def iota_t(self, t):
        return self._memo(("iota_t", t), lambda: conj(*(self.iota_v(v) for v in members(t)[:-1])))


def constructions_for(universe: Universe, mutation: Optional[str] = None) -> Constructions:
    if mutation == "sigma-complement":
        return SigmaOverTeam(universe)
    if mutation == "iota-drop":
        return IotaDropLast(universe)
    return Constructions(universe)


# -- helpers --------------------------------------------------------------------

class _Sweep:
    def __init__(self, lemma: str, universe: Universe):
        self.lemma = lemma
        self.U = universe
        self.cases = 0
        self.counterexample = None

    def rows(self, t):
        return [self.U.bits(v) for v in members(t)]

    def record(self, ok: bool, **info):
        self.cases += 1
        if not ok and self.counterexample is None:
            self.counterexample = info
        return ok

    def team_predicate(self, phi: Formula, predicate: Callable[[int], bool], memo, **context):
        """Compare the extension of ``phi`` with ``predicate`` on every team."""
        ext = extension(phi, self.U, memo)
        for s in range(self.U.num_teams):
            expected = predicate(s)
            got = s in ext
            context_rows = {k: self.rows(v) for k, v in context.items()}
            if not self.record(expected == got, s=self.rows(s), expected=expected, got=got, **context_rows):
                return False
        return True

    def result(self, sampled=False) -> LemmaResult:
        return LemmaResult(self.lemma, TITLES[self.lemma], self.counterexample is None, self.cases,
                           self.counterexample, sampled)


def _subset(a: int, b: int) -> bool:
    return a & ~b == 0


def _teams(U):
    return range(U.num_teams)


# -- characteristic-formula lemmas -----------------------------------------------

def _lemma_1(U, kit, rng, sample, memo):
    sw = _Sweep("1", U)
    count = sample or 200
    # drawn from the classical fragment; every variable of U may appear
    for i, alpha in enumerate(corpus(rng.randrange(1 << 30), count, "PL", U.vars, 4)):
        good = truth_set(alpha, U)
        ext = extension(alpha, U, memo)
        for s in _teams(U):
            if not sw.record((s in ext) == _subset(s, good), formula=str(alpha), s=sw.rows(s)):
                return sw.result(sampled=True)
    return sw.result(sampled=True)


def _lemma_2(U, kit, rng, sample, memo):
    sw = _Sweep("2", U)
    for t in _teams(U):
        for phi in (kit.chi_t(t), kit.chi_t_conjunctive(t)):
            if not sw.team_predicate(phi, lambda s: _subset(s, t), memo, t=t):
                return sw.result()
    return sw.result()


def _per_team(lemma, U, build, predicate, memo, nonempty=True):
    sw = _Sweep(lemma, U)
    for t in _teams(U):
        if nonempty and t == 0:
            continue
        if not sw.team_predicate(build(t), lambda s: predicate(s, t), memo, t=t):
            break
    return sw.result()


def _lemma_3(U, kit, rng, sample, memo):
    return _per_team("3", U, kit.rho_t, lambda s, t: not _subset(t, s), memo)


def _lemma_5(U, kit, rng, sample, memo):
    return _per_team("5", U, kit.sigma_t, lambda s, t: s == 0 or not _subset(s, t), memo)


def _lemma_6(U, kit, rng, sample, memo):
    return _per_team("6", U, kit.psi_t, lambda s, t: s != t, memo)


def _eq_3(U, kit, rng, sample, memo):
    sw = _Sweep("eq3", U)
    for v in range(U.num_valuations):
        chi = kit.chi_v(v)
        for u in range(U.num_valuations):
            if not sw.record(single_valuation_sat(u, chi, U) == (u == v), u=U.bits(u), v=U.bits(v)):
                return sw.result()
    return sw.result()


def _eq_7(U, kit, rng, sample, memo):
    sw = _Sweep("eq7", U)
    for v in range(U.num_valuations):
        # the empty team satisfies every atom; nonempty teams need v
        if not sw.team_predicate(kit.iota_v(v), lambda s: s == 0 or bool(s >> v & 1), memo, t=1 << v):
            break
    return sw.result()


def _eq_8(U, kit, rng, sample, memo):
    return _per_team("eq8", U, kit.iota_t, lambda s, t: s == 0 or _subset(t, s), memo, nonempty=False)


def _eq_9(U, kit, rng, sample, memo):
    return _per_team("eq9", U, kit.fix_team, lambda s, t: s == 0 or s == t, memo, nonempty=False)


def _mu(U, kit, rng, sample, memo):
    sw = _Sweep("mu", U)
    for k in range(U.num_valuations + 1):
        if not sw.team_predicate(kit.mu_k(k), lambda s: popcount(s) <= k, memo):
            sw.counterexample["k"] = k
            break
    return sw.result()


# -- round trips -------------------------------------------------------------------

def _all_properties(U):
    for mask in range(1 << U.num_teams):
        yield TeamProperty(U, mask)


def _down_close(U, teams):
    out = set()
    for t in teams:
        sub = t
        while True:
            out.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & t
    return TeamProperty.from_teams(U, out)


def _union_close(U, teams):
    out = {0}
    for t in teams:
        out |= {t | s for s in out}
    return TeamProperty.from_teams(U, out)


def _sampler(U, cls, rng):
    size = U.num_teams
    if cls == "flat":
        return lambda: _down_close(U, [rng.getrandbits(U.num_valuations)])
    if cls == "down":
        return lambda: _down_close(U, [rng.randrange(size) for _ in range(rng.randint(1, 4))])
    if cls == "union":
        return lambda: _union_close(U, [rng.randrange(size) for _ in range(rng.randint(0, 5))])
    return lambda: TeamProperty(U, rng.getrandbits(size) | 1)


_MEMBERSHIP = {
    "flat": lambda p: bool(is_flat(p)),
    "down": lambda p: p.mask != 0 and bool(is_downward_closed(p)),
    "union": lambda p: bool(has_empty(p)) and bool(is_union_closed(p)),
    "empty": lambda p: bool(has_empty(p)),
}


def _properties(U, cls, rng, sample):
    exhaustive = sample is None and (1 << U.num_teams) <= EXHAUSTIVE_LIMIT
    if exhaustive:
        return (p for p in _all_properties(U) if _MEMBERSHIP[cls](p)), False
    draw = _sampler(U, cls, rng)
    return (draw() for _ in range(sample or 200)), True


def _round_trip(lemma, U, kit, rng, sample, memo, cls, names):
    sw = _Sweep(lemma, U)
    if U.n == 0 and any(name in ("PLinc", "PLincV", "PLdepinc") for name in names):
        return LemmaResult(lemma, TITLES[lemma], True, 0, skipped="inclusion atoms need a variable")
    props, sampled = _properties(U, cls, rng, sample)
    for prop in props:
        for name in names:
            _check_class(prop, name)
            phi = kit.characteristic(prop, name)
            got = extension(phi, U, memo)
            ok = got == prop and fragment(name).admits(phi) and atomic_negation_only(phi)
            if not sw.record(ok, fragment=name, property=[sw.rows(t) for t in prop],
                             got=[sw.rows(t) for t in got]):
                return sw.result(sampled)
    return sw.result(sampled)


def _cor_1(U, kit, rng, sample, memo):
    return _round_trip("cor1", U, kit, rng, sample, memo, "flat", ("PL",))


def _thm_2(U, kit, rng, sample, memo):
    return _round_trip("thm2", U, kit, rng, sample, memo, "down", ("PLv", "PLdep"))


def _plinc(U, kit, rng, sample, memo):
    return _round_trip("plinc", U, kit, rng, sample, memo, "union", ("PLinc",))


def _thm_3(U, kit, rng, sample, memo):
    return _round_trip("thm3", U, kit, rng, sample, memo, "empty", ("PLincV",))


def _thm_4(U, kit, rng, sample, memo):
    return _round_trip("thm4", U, kit, rng, sample, memo, "empty", ("PLdepinc",))


# -- checker soundness ---------------------------------------------------------------

def soundness_candidates(names) -> list:
    """Derivations probing the checker, including some that only the
    unrestricted side condition lets through."""
    from .deduction import Builder, derived_rule, prove

    p = Prop(names[0])
    q = Prop(names[1]) if len(names) > 1 else Neg(p)
    b = Builder("c")
    out = []
    # RAA on a global disjunction: closed proof of p \/ ~p
    lem = GlobalOr(p, Neg(p))
    out.append(b.raa(lem, lambda h: b.neg_e(b.gor_l(b.raa(p, lambda k: b.neg_e(b.gor_r(p, k), h, Bottom())), Neg(p)),
                                            h, Bottom())))
    # LOrE with a non-classical goal: p | ~p |- p \/ ~p
    b2 = Builder("d")
    major = b2.hyp(LocalOr(p, Neg(p)), "m")
    out.append(b2.lor_e(major, lem, lambda h: b2.gor_l(h, Neg(p)), lambda h: b2.gor_r(p, h)))
    # Split with a non-classical antecedent
    b3 = Builder("e")
    ante = GlobalOr(p, q)
    out.append(b3.split(b3.impl_i(ante, lambda h: h)))
    # honest derivations
    out.append(prove([LocalOr(p, q), LocalOr(Neg(p), q)], q))
    out.append(prove([GlobalOr(p, q)], LocalOr(p, q)))
    out.append(derived_rule("DisjSyl1", alpha=p, phi=q))
    out.append(derived_rule("SplitDerived", alpha=p, phi=q, psi=Neg(q)))
    out.append(derived_rule("ImplDef_LR", alpha=p, phi=GlobalOr(q, Neg(q))))
    return out


def _sound(U, kit, rng, sample, memo, side="classical"):
    from .deduction import ProofError, check
    from .team import countermodel

    sw = _Sweep("sound", U)
    names = U.vars if U.n else ("p",)
    V = U if U.n else Universe(("p",))
    for d in soundness_candidates(names):
        try:
            seq = check(d, side_condition=side)
        except ProofError:
            continue
        bad = countermodel(sorted(seq.premises, key=str), seq.conclusion, V)
        if not sw.record(bad is None, sequent=str(seq), countermodel=None if bad is None else sw.rows(bad)):
            break
    return sw.result()


CHECKS = {
    "1": _lemma_1, "2": _lemma_2, "3": _lemma_3, "5": _lemma_5, "6": _lemma_6, "eq3": _eq_3, "eq7": _eq_7,
    "eq8": _eq_8, "eq9": _eq_9, "mu": _mu, "cor1": _cor_1, "thm2": _thm_2, "plinc": _plinc, "thm3": _thm_3,
    "thm4": _thm_4, "sound": _sound,
}

_NEEDS_VARIABLE = {"1", "5", "6", "eq7", "eq8", "eq9"}


def verify_lemmas(n: int, ids: Optional[Iterable[str]] = None, sample: Optional[int] = None,
                  mutation: Optional[str] = None, seed: int = 0) -> list:
    """Run the selected checks over the universe of ``n`` variables.

    ``sample`` caps the number of properties (and classical formulas) drawn
    instead of sweeping exhaustively.
    """
    if mutation is not None and mutation not in MUTATIONS:
        raise ValueError(f"unknown mutation {mutation!r}; choose from {MUTATIONS}")
    ids = list(ids) if ids else list(LEMMA_IDS)
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise ValueError(f"unknown lemma id(s) {unknown}; choose from {LEMMA_IDS}")
    U = Universe(random_names(n))
    kit = constructions_for(U, mutation)
    rng = random.Random(seed)
    memo = {}
    out = []
    for lemma in ids:
        if lemma in _NEEDS_VARIABLE and U.n == 0:
            out.append(LemmaResult(lemma, TITLES[lemma], True, 0, skipped="needs at least one variable"))
            continue
        if lemma == "sound":
            out.append(_sound(U, kit, rng, sample, memo, "off" if mutation == "raa-weak" else "classical"))
        else:
            out.append(CHECKS[lemma](U, kit, rng, sample, memo))
    return out
