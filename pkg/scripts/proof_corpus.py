"""Prove or refute random entailments over PLv and write the results as JSON
lines, one record per pair.

    python scripts/proof_corpus.py --pairs 50 --out proofs.jsonl
"""
import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Optional

from teamlogic.deduction import NotDerivable, check, derivation_to_json, prove
from teamlogic.formula import to_text
from teamlogic.generate import random_in_fragment, random_names
from teamlogic.team import Universe, team_to_bits


@dataclass
class CorpusConfig:
    pairs: int = 50
    n: int = 2
    depth: int = 3
    max_premises: int = 2
    seed: int = 0
    out: Optional[str] = None


def records(cfg: CorpusConfig):
    rng = random.Random(cfg.seed)
    U = Universe(random_names(cfg.n))
    for _ in range(cfg.pairs):
        gamma = [random_in_fragment(rng, "PLv", U.vars, rng.randint(1, cfg.depth))
                 for _ in range(rng.randint(0, cfg.max_premises))]
        phi = random_in_fragment(rng, "PLv", U.vars, rng.randint(1, cfg.depth))
        rec = {"premises": [to_text(g) for g in gamma], "conclusion": to_text(phi)}
        try:
            d = prove(gamma, phi, U)
        except NotDerivable as exc:
            rec.update(derivable=False, countermodel=team_to_bits(U, exc.countermodel))
        else:
            check(d)
            rec.update(derivable=True, size=d.size(), proof=derivation_to_json(d))
        yield rec


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=50)
    parser.add_argument("--n", type=int, default=2)
    parser.add_argument("--depth", type=int, default=3)
    parser.add_argument("--max-premises", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out")
    cfg = CorpusConfig(**vars(parser.parse_args()))
    out = open(cfg.out, "w") if cfg.out else sys.stdout
    proved = 0
    for rec in records(cfg):
        proved += rec["derivable"]
        out.write(json.dumps(rec) + "\n")
    if cfg.out:
        out.close()
    print(f"{proved} of {cfg.pairs} pairs proved", file=sys.stderr)


if __name__ == "__main__":
    main()
