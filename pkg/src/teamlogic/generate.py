"""Seeded random formulas, for sweeps and corpora."""
from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from .formula import (BOT, TOP, And, Bottom, DepAtom, Formula, GlobalOr, IncAtom, IntImpl, LocalOr, Neg, Prop,
                      fragment)

_BINARY = {"and": And, "lor": LocalOr, "gor": GlobalOr, "impl": IntImpl}


def random_atom(rng: random.Random, names: Sequence[str], atoms: Iterable[str]) -> Formula:
    kind = rng.choice(sorted(atoms))
    if kind == "bot":
        return Bottom()
    if kind == "dep":
        k = rng.randint(0, min(2, len(names)))
        return DepAtom(tuple(rng.sample(list(names), k)), rng.choice(names))
    if kind == "inc":
        arity = rng.randint(1, min(2, len(names)))
        pool = list(names) + [TOP, BOT]
        # left side is often constant, giving the primitive atoms used in synthesis
        lhs = tuple(rng.choice(pool) for _ in range(arity))
        rhs = tuple(rng.sample(list(names), arity))
        return IncAtom(lhs, rhs)
    return Prop(rng.choice(names))


def random_formula(rng: random.Random, names: Sequence[str], depth: int, atoms: Iterable[str] = ("prop",),
                   connectives: Iterable[str] = ("neg", "and", "lor"), leaf_bias: float = 0.3) -> Formula:
    """A formula of depth at most ``depth`` over the given atom and connective kinds."""
    atoms = tuple(sorted(atoms))
    connectives = tuple(sorted(connectives))
    # plain propositions stay the most common leaf
    leaf_kinds = atoms + ("prop",) * 2 if "prop" in atoms else atoms

    def build(d):
        if d == 0 or not connectives or rng.random() < leaf_bias:
            return random_atom(rng, names, leaf_kinds)
        kind = rng.choice(connectives)
        if kind == "neg":
            return Neg(build(d - 1))
        return _BINARY[kind](build(d - 1), build(d - 1))

    return build(depth)


def random_in_fragment(rng: random.Random, name: str, names: Sequence[str], depth: int,
                       with_impl: bool = False) -> Formula:
    spec = fragment(name)
    connectives = set(spec.connectives)
    if with_impl:
        connectives.add("impl")
    return random_formula(rng, names, depth, spec.atoms, connectives)


def corpus(seed: int, count: int, name: str, names: Sequence[str], depth: int,
           with_impl: bool = False) -> list:
    rng = random.Random(seed)
    return [random_in_fragment(rng, name, names, depth, with_impl) for _ in range(count)]


def random_team(rng: random.Random, num_valuations: int) -> int:
    return rng.getrandbits(num_valuations) if num_valuations else 0


def random_names(n: int, prefix: Optional[str] = None) -> tuple:
    if prefix:
        return tuple(f"{prefix}{i}" for i in range(1, n + 1))
    return tuple("pqrs"[:n]) if n <= 4 else tuple(f"p{i}" for i in range(1, n + 1))
