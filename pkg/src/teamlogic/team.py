"""Valuations, teams and team properties over a finite universe, and the
satisfaction relation.

Encoding: a valuation over ``Universe(("p", "q"))`` is an int whose binary
string in universe order is the valuation, so ``0b01`` means p=0, q=1.  A team
is an int bitmask with bit ``v`` set iff valuation ``v`` is a member.  A team
property is a bitmask over team indices, wrapped in :class:`TeamProperty`.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .formula import (And, Bottom, Const, DepAtom, Formula, GlobalOr, IncAtom, IntImpl, LocalOr, Neg,
                      Prop, is_classical, syntactically_downward_closed, to_text, variables)

DEFAULT_CAP = 4
# numpy tables hold one entry per team; 2**(2**4) is the largest feasible size
EXTENSION_LIMIT = 4


class UnknownVariableError(ValueError):
    pass


class UniverseCapError(ValueError):
    pass


@dataclass(frozen=True)
class Universe:
    vars: tuple
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variables in universe {self.vars}")
        if len(self.vars) > self.cap:
            raise UniverseCapError(
                f"universe of {len(self.vars)} variables exceeds cap {self.cap}; raise the cap explicitly")

    @classmethod
    def of(cls, *names: str, cap: int = DEFAULT_CAP) -> "Universe":
        return cls(tuple(names), cap)

    @classmethod
    def standard(cls, n: int, cap: int = DEFAULT_CAP) -> "Universe":
        """The universe ``p1 ... pn``."""
        return cls(tuple(f"p{i}" for i in range(1, n + 1)), cap)

    @classmethod
    def for_formulas(cls, *formulas: Formula, cap: int = DEFAULT_CAP) -> "Universe":
        names = set()
        for phi in formulas:
            names |= variables(phi)
        return cls(tuple(sorted(names)), cap)

    @property
    def n(self) -> int:
        return len(self.vars)

    @property
    def num_valuations(self) -> int:
        return 1 << self.n

    @property
    def num_teams(self) -> int:
        return 1 << self.num_valuations

    @property
    def full_team(self) -> int:
        return (1 << self.num_valuations) - 1

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise UnknownVariableError(f"variable {var!r} not in universe {self.vars}") from None

    def value(self, v: int, var: str) -> int:
        return (v >> (self.n - 1 - self.index(var))) & 1

    def var_mask(self, var: str) -> int:
        """Team of all valuations making ``var`` true."""
        return _var_mask(self, var)

    def bits(self, v: int) -> str:
        return format(v, f"0{self.n}b") if self.n else ""

    def parse_bits(self, bits: str) -> int:
        if len(bits) != self.n or set(bits) - {"0", "1"}:
            raise ValueError(f"valuation {bits!r} is not a {self.n}-bit string")
        return int(bits, 2) if bits else 0

    def check_formula(self, phi: Formula) -> None:
        missing = variables(phi) - set(self.vars)
        if missing:
            raise UnknownVariableError(
                f"{to_text(phi)} mentions {sorted(missing)} outside universe {self.vars}")


@functools.lru_cache(maxsize=None)
def _var_mask(universe: Universe, var: str) -> int:
    return sum(1 << v for v in range(universe.num_valuations) if universe.value(v, var))


# -- teams -------------------------------------------------------------------

def members(team: int) -> list:
    out = []
    v = 0
    while team:
        if team & 1:
            out.append(v)
        team >>= 1
        v += 1
    return out


def team_of(valuations: Iterable[int]) -> int:
    t = 0
    for v in valuations:
        t |= 1 << v
    return t


def team_from_bits(universe: Universe, rows: Iterable[str]) -> int:
    return team_of(universe.parse_bits(r) for r in rows)


def team_to_bits(universe: Universe, team: int) -> list:
    return [universe.bits(v) for v in members(team)]


def subteams(team: int) -> Iterator[int]:
    """All subsets of ``team``, largest first, ending with the empty team."""
    s = team
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & team


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class TeamProperty:
    universe: Universe
    mask: int

    @classmethod
    def from_teams(cls, universe: Universe, teams: Iterable[int]) -> "TeamProperty":
        mask = 0
        for t in teams:
            if not 0 <= t <= universe.full_team:
                raise ValueError(f"team {t} is not over universe {universe.vars}")
            mask |= 1 << t
        return cls(universe, mask)

    @classmethod
    def full(cls, universe: Universe) -> "TeamProperty":
        return cls(universe, (1 << universe.num_teams) - 1)

    def __contains__(self, team: int) -> bool:
        return bool((self.mask >> team) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(members(self.mask))

    def __len__(self) -> int:
        return popcount(self.mask)

    def complement(self) -> "TeamProperty":
        return TeamProperty(self.universe, ((1 << self.universe.num_teams) - 1) & ~self.mask)

    def __str__(self):
        rows = ["{" + ",".join(team_to_bits(self.universe, t)) + "}" for t in self]
        return "{" + ", ".join(rows) + "}"


# -- satisfaction, direct route ---------------------------------------------

def _term_value(universe: Universe, v: int, term) -> int:
    if isinstance(term, Const):
        return term.value
    return universe.value(v, term)


class _Evaluator:
    """Top-down evaluation with a memo keyed on (node id, team)."""

    def __init__(self, universe: Universe, cover_mode: str):
        if cover_mode not in ("auto", "covers", "partitions"):
            raise ValueError(f"unknown cover mode {cover_mode!r}")
        self.universe = universe
        self.cover_mode = cover_mode
        self.memo = {}
        self.downward = {}

    def sat(self, team: int, phi: Formula) -> bool:
        key = (id(phi), team)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = self._sat(team, phi)
        return hit

    def _partitions_suffice(self, phi: LocalOr) -> bool:
        if self.cover_mode != "auto":
            return self.cover_mode == "partitions"
        key = id(phi)
        if key not in self.downward:
            self.downward[key] = (syntactically_downward_closed(phi.left)
                                  and syntactically_downward_closed(phi.right))
        return self.downward[key]

    def _sat(self, team: int, phi: Formula) -> bool:
        U = self.universe
        if isinstance(phi, Prop):
            return team & ~U.var_mask(phi.name) == 0
        if isinstance(phi, Bottom):
            return team == 0
        if isinstance(phi, Neg):
            return not any(self.sat(1 << v, phi.sub) for v in members(team))
        if isinstance(phi, And):
            return self.sat(team, phi.left) and self.sat(team, phi.right)
        if isinstance(phi, GlobalOr):
            return self.sat(team, phi.left) or self.sat(team, phi.right)
        if isinstance(phi, LocalOr):
            if self._partitions_suffice(phi):
                return any(self.sat(r, phi.left) and self.sat(team ^ r, phi.right) for r in subteams(team))
            for r in subteams(team):
                if not self.sat(r, phi.left):
                    continue
                rest = team ^ r
                if any(self.sat(rest | x, phi.right) for x in subteams(r)):
                    return True
            return False
        if isinstance(phi, IntImpl):
            return all(self.sat(s, phi.right) for s in subteams(team) if self.sat(s, phi.left))
        if isinstance(phi, DepAtom):
            seen = {}
            for v in members(team):
                key = tuple(U.value(v, x) for x in phi.args)
                val = U.value(v, phi.target)
                if seen.setdefault(key, val) != val:
                    return False
            return True
        if isinstance(phi, IncAtom):
            rows = members(team)
            present = {tuple(_term_value(U, u, x) for x in phi.rhs) for u in rows}
            return all(tuple(_term_value(U, v, x) for x in phi.lhs) in present for v in rows)
        raise TypeError(f"not a formula: {phi!r}")


def satisfies(team: int, phi: Formula, universe: Universe, cover_mode: str = "auto") -> bool:
    """Decide ``team |= phi``.

    ``cover_mode`` selects the local-disjunction search: ``covers`` tries every
    ``r | s == team``; ``partitions`` only disjoint splits, which is exact when
    both disjuncts are downward closed; ``auto`` picks partitions when that is
    syntactically guaranteed.
    """
    universe.check_formula(phi)
    if team < 0 or team > universe.full_team:
        raise ValueError(f"team {team} is not over universe {universe.vars}")
    return _Evaluator(universe, cover_mode).sat(team, phi)


def single_valuation_sat(v: int, alpha: Formula, universe: Universe) -> bool:
    """Classical truth of ``alpha`` at the single valuation ``v``."""
    if not is_classical(alpha):
        raise ValueError(f"{to_text(alpha)} is not classical")
    universe.check_formula(alpha)
    return _classical(v, alpha, universe)


def _classical(v, alpha, universe):
    if isinstance(alpha, Prop):
        return bool(universe.value(v, alpha.name))
    if isinstance(alpha, Bottom):
        return False
    if isinstance(alpha, Neg):
        return not _classical(v, alpha.sub, universe)
    if isinstance(alpha, And):
        return _classical(v, alpha.left, universe) and _classical(v, alpha.right, universe)
    return _classical(v, alpha.left, universe) or _classical(v, alpha.right, universe)


def truth_set(alpha: Formula, universe: Universe) -> int:
    """The team of valuations satisfying classical ``alpha``."""
    return team_of(v for v in range(universe.num_valuations) if single_valuation_sat(v, alpha, universe))


# -- extensions, bottom-up route ---------------------------------------------

class _Tables:
    def __init__(self, universe: Universe):
        self.universe = universe
        self.size = universe.num_teams
        self.teams = np.arange(self.size, dtype=np.int64)
        self.nbits = universe.num_valuations

    def powerset(self, team: int) -> np.ndarray:
        return (self.teams & ~np.int64(team)) == 0

    def zeta(self, a: np.ndarray) -> np.ndarray:
        a = a.copy()
        for i in range(self.nbits):
            view = a.reshape(-1, 2, 1 << i)
            view[:, 1, :] += view[:, 0, :]
        return a

    def mobius(self, a: np.ndarray) -> np.ndarray:
        a = a.copy()
        for i in range(self.nbits):
            view = a.reshape(-1, 2, 1 << i)
            view[:, 1, :] -= view[:, 0, :]
        return a

    def upward(self, a: np.ndarray) -> np.ndarray:
        a = a.copy()
        for i in range(self.nbits):
            view = a.reshape(-1, 2, 1 << i)
            view[:, 1, :] |= view[:, 0, :]
        return a

    def join(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """``{r | s : r in a, s in b}`` via subset-sum convolution."""
        joint = self.zeta(a.astype(np.int64)) * self.zeta(b.astype(np.int64))
        return self.mobius(joint) > 0


@functools.lru_cache(maxsize=8)
def _tables(universe: Universe) -> _Tables:
    return _Tables(universe)


def _check_extension_size(universe: Universe):
    if universe.n > min(universe.cap, EXTENSION_LIMIT):
        raise UniverseCapError(
            f"extension over {universe.n} variables needs 2^(2^{universe.n}) teams; "
            f"limit is {min(universe.cap, EXTENSION_LIMIT)}")


def _extension_array(phi: Formula, universe: Universe, memo: dict) -> np.ndarray:
    key = (id(phi), universe.vars)
    if key in memo:
        return memo[key][1]
    tab = _tables(universe)
    U = universe
    if isinstance(phi, Prop):
        out = tab.powerset(U.var_mask(phi.name))
    elif isinstance(phi, Bottom):
        out = tab.teams == 0
    elif isinstance(phi, Neg):
        sub = _extension_array(phi.sub, U, memo)
        keep = team_of(v for v in range(U.num_valuations) if not sub[1 << v])
        out = tab.powerset(keep)
    elif isinstance(phi, And):
        out = _extension_array(phi.left, U, memo) & _extension_array(phi.right, U, memo)
    elif isinstance(phi, GlobalOr):
        out = _extension_array(phi.left, U, memo) | _extension_array(phi.right, U, memo)
    elif isinstance(phi, LocalOr):
        out = tab.join(_extension_array(phi.left, U, memo), _extension_array(phi.right, U, memo))
    elif isinstance(phi, IntImpl):
        good = ~_extension_array(phi.left, U, memo) | _extension_array(phi.right, U, memo)
        out = ~tab.upward(~good)
    elif isinstance(phi, DepAtom):
        out = np.ones(tab.size, dtype=bool)
        for u in range(U.num_valuations):
            for v in range(u + 1, U.num_valuations):
                agree = all(U.value(u, x) == U.value(v, x) for x in phi.args)
                if agree and U.value(u, phi.target) != U.value(v, phi.target):
                    pair = np.int64((1 << u) | (1 << v))
                    out &= (tab.teams & pair) != pair
    elif isinstance(phi, IncAtom):
        out = np.ones(tab.size, dtype=bool)
        # rows grouped by the value tuple they show on each side
        lhs, rhs = {}, {}
        for v in range(U.num_valuations):
            row = tuple(_term_value(U, v, x) for x in phi.lhs)
            lhs[row] = lhs.get(row, 0) | 1 << v
            row = tuple(_term_value(U, v, x) for x in phi.rhs)
            rhs[row] = rhs.get(row, 0) | 1 << v
        for w, source in lhs.items():
            target = np.int64(rhs.get(w, 0))
            out &= ((tab.teams & np.int64(source)) == 0) | ((tab.teams & target) != 0)
    else:
        raise TypeError(f"not a formula: {phi!r}")
    # holding phi keeps id() stable for the lifetime of the memo
    memo[key] = (phi, out)
    return out


def _array_to_mask(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


def mask_to_array(mask: int, size: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def extension(phi: Formula, universe: Universe, memo: Optional[dict] = None) -> TeamProperty:
    """The set of all teams over ``universe`` satisfying ``phi``.

    ``memo`` may be shared between calls to reuse tables of common subformula
    objects, which pays off when formulas are assembled from cached parts.
    """
    universe.check_formula(phi)
    _check_extension_size(universe)
    return TeamProperty(universe, _array_to_mask(_extension_array(phi, universe, {} if memo is None else memo)))


def extension_by_sweep(phi: Formula, universe: Universe, cover_mode: str = "auto") -> TeamProperty:
    """Same as :func:`extension`, computed by calling :func:`satisfies` on every team."""
    universe.check_formula(phi)
    _check_extension_size(universe)
    ev = _Evaluator(universe, cover_mode)
    return TeamProperty.from_teams(universe, (t for t in range(universe.num_teams) if ev.sat(t, phi)))


# -- semantic judgements -----------------------------------------------------

def countermodel(premises: Sequence[Formula], conclusion: Formula, universe: Universe):
    """Least team satisfying every premise but not the conclusion, or None."""
    for phi in (*premises, conclusion):
        universe.check_formula(phi)
    _check_extension_size(universe)
    memo = {}
    tab = _tables(universe)
    good = np.ones(tab.size, dtype=bool)
    for phi in premises:
        good &= _extension_array(phi, universe, memo)
    bad = np.flatnonzero(good & ~_extension_array(conclusion, universe, memo))
    return int(bad[0]) if bad.size else None


def entails(premises: Sequence[Formula], conclusion: Formula, universe: Universe) -> bool:
    """Every team over ``universe`` satisfying all ``premises`` satisfies ``conclusion``."""
    return countermodel(premises, conclusion, universe) is None


def equivalent(phi: Formula, psi: Formula, universe: Universe) -> bool:
    return entails([phi], psi, universe) and entails([psi], phi, universe)


# -- JSON --------------------------------------------------------------------

def property_to_json(prop: TeamProperty) -> dict:
    U = prop.universe
    return {"vars": list(U.vars), "teams": [team_to_bits(U, t) for t in prop]}


def property_from_json(obj: dict, cap: int = DEFAULT_CAP) -> TeamProperty:
    U = Universe(tuple(obj["vars"]), cap)
    return TeamProperty.from_teams(U, (team_from_bits(U, rows) for rows in obj["teams"]))


def team_to_json(universe: Universe, team: int) -> dict:
    return {"vars": list(universe.vars), "team": team_to_bits(universe, team)}


def team_from_json(obj: dict, cap: int = DEFAULT_CAP):
    """Read ``{"vars", "team"}``, or a ``{"vars", "teams"}`` holding exactly one team."""
    U = Universe(tuple(obj["vars"]), cap)
    if "team" in obj:
        rows = obj["team"]
    else:
        teams = obj.get("teams", [])
        if len(teams) != 1:
            raise ValueError(f"expected exactly one team, found {len(teams)}")
        rows = teams[0]
    return U, team_from_bits(U, rows)
