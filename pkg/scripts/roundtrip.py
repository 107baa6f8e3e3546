"""Synthesize a defining formula for every property of a closure class and
report formula sizes and timing.

    python scripts/roundtrip.py --n 2 --fragment PLdep
    python scripts/roundtrip.py --n 3 --fragment PLincV --sample 50
"""
import argparse
import random
import statistics
import time
from dataclasses import dataclass
from typing import Optional

from teamlogic.closure import has_empty, is_downward_closed, is_flat, is_union_closed
from teamlogic.formula import size
from teamlogic.generate import random_names
from teamlogic.synthesis import Constructions, synth
from teamlogic.team import TeamProperty, Universe

MEMBERSHIP = {
    "PL": is_flat,
    "PLv": lambda p: p.mask != 0 and is_downward_closed(p),
    "PLdep": lambda p: p.mask != 0 and is_downward_closed(p),
    "PLinc": lambda p: has_empty(p) and is_union_closed(p),
    "PLincV": has_empty,
    "PLdepinc": has_empty,
}


@dataclass
class RoundTripConfig:
    n: int = 2
    fragment: str = "PLdep"
    sample: Optional[int] = None
    seed: int = 0


def properties(cfg: RoundTripConfig, U: Universe):
    member = MEMBERSHIP[cfg.fragment]
    if cfg.sample is None:
        for mask in range(1 << U.num_teams):
            prop = TeamProperty(U, mask)
            if member(prop):
                yield prop
        return
    rng = random.Random(cfg.seed)
    found = 0
    while found < cfg.sample:
        # rejection sampling; fine for the classes that contain the empty team
        prop = TeamProperty(U, rng.getrandbits(U.num_teams) | 1)
        if cfg.fragment in ("PL", "PLv", "PLdep", "PLinc"):
            prop = _close(prop, cfg.fragment, rng)
        if member(prop):
            found += 1
            yield prop


def _close(prop, fragment, rng):
    U = prop.universe
    teams = rng.sample(list(prop), min(3, len(prop)))
    if fragment == "PLinc":
        out = {0}
        for t in teams:
            out |= {t | s for s in out}
        return TeamProperty.from_teams(U, out)
    if fragment == "PL":
        teams = [max(teams)]
    return TeamProperty.from_teams(U, {s for t in teams for s in range(U.num_teams) if s & ~t == 0})


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--fragment", default="PLdep", choices=sorted(MEMBERSHIP))
    parser.add_argument("--sample", type=int)
    parser.add_argument("--seed", type=int, default=0)
    cfg = RoundTripConfig(**vars(parser.parse_args()))
    U = Universe(random_names(cfg.n))
    kit, memo = Constructions(U), {}
    sizes, failed = [], 0
    start = time.perf_counter()
    for prop in properties(cfg, U):
        result = synth(prop, cfg.fragment, kit=kit, memo=memo)
        failed += not result.verified
        sizes.append(size(result.formula))
    elapsed = time.perf_counter() - start
    print(f"{cfg.fragment} over n={cfg.n}: {len(sizes)} properties, {failed} unverified, {elapsed:.1f}s")
    if sizes:
        print(f"formula size: min {min(sizes)}, median {statistics.median(sizes)}, max {max(sizes)}")


if __name__ == "__main__":
    main()
