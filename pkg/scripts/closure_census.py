"""Count team properties by closure class, and random formulas by the closure
class of their extension.

    python scripts/closure_census.py --n 2 --formulas 300
"""
import argparse
import random
from collections import Counter
from dataclasses import dataclass

from teamlogic.closure import has_empty, is_downward_closed, is_flat, is_union_closed
from teamlogic.generate import corpus, random_names
from teamlogic.team import TeamProperty, Universe, extension

FRAGMENTS = ("PL", "PLv", "PLdep", "PLinc", "PLincV", "PLdepinc", "PLfull")


@dataclass
class CensusConfig:
    n: int = 2
    formulas: int = 300
    depth: int = 4
    properties: int = 0  # 0 means every property when that is feasible
    seed: int = 0


def signature(prop):
    return (bool(has_empty(prop)), bool(is_downward_closed(prop)), bool(is_union_closed(prop)), bool(is_flat(prop)))


def label(sig):
    names = [n for n, on in zip(("empty", "down", "union", "flat"), sig) if on]
    return "+".join(names) or "none"


def property_census(cfg: CensusConfig, U: Universe) -> Counter:
    rng = random.Random(cfg.seed)
    total = 1 << U.num_teams
    if cfg.properties or total > 1 << 16:
        masks = (rng.getrandbits(U.num_teams) for _ in range(cfg.properties or 10_000))
    else:
        masks = range(total)
    return Counter(label(signature(TeamProperty(U, m))) for m in masks)


def formula_census(cfg: CensusConfig, U: Universe) -> dict:
    out = {}
    for i, name in enumerate(FRAGMENTS):
        phis = corpus(cfg.seed + i, cfg.formulas, name, U.vars, cfg.depth, with_impl=name == "PLfull")
        out[name] = Counter(label(signature(extension(phi, U))) for phi in phis)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for key, value in vars(CensusConfig()).items():
        parser.add_argument(f"--{key}", type=int, default=value)
    cfg = CensusConfig(**vars(parser.parse_args()))
    U = Universe(random_names(cfg.n))
    print(f"properties over ({' '.join(U.vars)}):")
    for key, count in sorted(property_census(cfg, U).items(), key=lambda kv: -kv[1]):
        print(f"  {key:22s} {count}")
    print(f"extensions of {cfg.formulas} random formulas per fragment (depth {cfg.depth}):")
    for name, counts in formula_census(cfg, U).items():
        print(f"  {name:9s} " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))


if __name__ == "__main__":
    main()
