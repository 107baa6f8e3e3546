"""Write the hand-built golden derivations to tests/golden/.

Each entry is assembled rule by rule (no proof search); the JSON file records
the expected end sequent and the side-condition mode it is checked under.

    python scripts/build_golden.py [--out tests/golden]
"""
import argparse
import json
from pathlib import Path

from teamlogic.deduction import Builder, Derivation, Rule, check, derivation_to_json, expand_neg_anton
from teamlogic.deduction.build import excluded_middle
from teamlogic.deduction.derived import derived_rule
from teamlogic.formula import Bottom, parse

F = parse
BOT = Bottom()


def entries():
    out = []

    def add(name, d, side="classical"):
        out.append((name, d, side))

    b = Builder()
    add("hypothesis", b.hyp(F("p"), "a"))
    add("bot_elim", b.bot_e(b.hyp(BOT, "a"), F("p \\/ q")))
    add("and_intro", b.and_i(b.hyp(F("p"), "a"), b.hyp(F("q"), "b")))
    add("and_elim_left", b.and_l(b.hyp(F("p & q"), "a")))
    add("and_elim_right", b.and_r(b.hyp(F("p & q"), "a")))
    add("and_commute", (lambda h: b.and_i(b.and_r(h), b.and_l(h)))(b.hyp(F("p & q"), "a")))
    add("neg_elim", b.neg_e(b.hyp(F("p"), "a"), b.hyp(F("~p"), "b"), F("q")))
    add("non_contradiction", b.neg_i(F("p & ~p"), lambda h: b.neg_e(b.and_l(h), b.and_r(h), BOT)))
    add("double_negation_intro", b.neg_i(F("~p"), lambda h: b.neg_e(b.hyp(F("p"), "a"), h, BOT)))
    add("double_negation_elim", b.raa(F("p"), lambda h: b.neg_e(h, b.hyp(F("~~p"), "a"), BOT)))
    add("excluded_middle_local", excluded_middle(Builder("m"), F("p")))
    add("gor_intro_left", b.gor_l(b.hyp(F("p"), "a"), F("q")))
    add("gor_intro_right", b.gor_r(F("p"), b.hyp(F("q"), "a")))
    add("gor_commute", b.gor_e(b.hyp(F("p \\/ q"), "a"), F("q \\/ p"),
                               lambda h: b.gor_r(F("q"), h), lambda h: b.gor_l(h, F("p"))))
    add("gor_to_lor", b.gor_e(b.hyp(F("p \\/ q"), "a"), F("p | q"),
                              lambda h: b.lor_i(h, F("q")), lambda h: b.lor_com(b.lor_i(h, F("p")))))
    add("lor_intro", b.lor_i(b.hyp(F("p"), "a"), F("q")))
    add("lor_commute", b.lor_com(b.hyp(F("p | q"), "a")))
    add("lor_mon", b.lor_mon(b.hyp(F("p & r | q"), "a"), b.and_l))
    add("lor_elim_classical", b.lor_e(b.hyp(F("p | q"), "a"), F("q | p"),
                                      lambda h: b.lor_com(b.lor_i(h, F("q"))),
                                      lambda h: b.lor_i(h, F("p"))))
    add("lor_idempotent", b.lor_e(b.hyp(F("p | p"), "a"), F("p"), lambda h: h, lambda h: h))
    add("dis_or_gor", b.dis(b.hyp(F("p | (q \\/ r)"), "a")))
    # distribution into one disjunct then back through both branches
    dis = b.dis(b.hyp(F("p | (q \\/ r)"), "a"))
    add("dis_then_merge", b.gor_e(dis, F("p | (q | r)"),
                                  lambda h: b.lor_com(b.lor_mon(b.lor_com(h), lambda g: b.lor_i(g, F("r")))),
                                  lambda h: b.lor_com(b.lor_mon(b.lor_com(h),
                                                                lambda g: b.lor_com(b.lor_i(g, F("q")))))))
    add("impl_intro", b.impl_i(F("p"), lambda h: b.gor_l(h, F("q"))))
    add("impl_elim", b.impl_e(b.hyp(F("p -> q"), "a"), b.hyp(F("p"), "b")))
    add("impl_chain", b.impl_i(F("p"), lambda h: b.impl_e(b.hyp(F("q -> r"), "b"),
                                                          b.impl_e(b.hyp(F("p -> q"), "a"), h))))
    add("impl_over_gor", b.impl_i(F("p \\/ q"), lambda h: b.gor_e(
        h, F("r"), lambda x: b.impl_e(b.hyp(F("p -> r"), "a"), x), lambda y: b.impl_e(b.hyp(F("q -> r"), "b"), y))))
    add("split", b.split(b.hyp(F("p -> q \\/ r"), "a")))
    add("split_by_rule_then_use", b.gor_e(
        b.split(b.hyp(F("p -> q \\/ r"), "a")), F("(p -> q | r)"),
        lambda h: b.impl_i(F("p"), lambda x: b.lor_i(b.impl_e(h, x), F("r"))),
        lambda h: b.impl_i(F("p"), lambda x: b.lor_com(b.lor_i(b.impl_e(h, x), F("q"))))))
    add("neg_anton", b.neg_anton(b.hyp(F("~p"), "a"), F("p & q"), b.and_l))
    add("neg_anton_global", b.neg_anton(b.hyp(F("~(p | q)"), "a"), F("p \\/ q"),
                                        lambda h: b.gor_e(h, F("p | q"), lambda x: b.lor_i(x, F("q")),
                                                          lambda y: b.lor_com(b.lor_i(y, F("p"))))))
    add("neg_anton_expanded", expand_neg_anton(b.neg_anton(b.hyp(F("~p"), "a"), F("p & q"), b.and_l)))
    add("neg_of_gor_to_conj", b.and_i(
        b.neg_i(F("p"), lambda h: b.neg_e(b.gor_l(h, F("q")), b.hyp(F("~(p \\/ q)"), "a"), BOT)),
        b.neg_i(F("q"), lambda h: b.neg_e(b.gor_r(F("p"), h), b.hyp(F("~(p \\/ q)"), "a"), BOT))))
    add("split_derived", derived_rule("SplitDerived", alpha=F("p"), phi=F("q"), psi=F("r")))
    add("disjunctive_syllogism", derived_rule("DisjSyl1", alpha=F("p"), phi=F("q")))
    # a Harrop formula as the RAA conclusion, valid only under the widened side condition
    harrop = F("~(p \\/ q) | r")
    add("raa_harrop", b.raa(harrop, lambda h: b.neg_e(b.hyp(harrop, "a"), h, BOT)), "harrop")
    add("lor_elim_harrop", b.lor_e(b.hyp(F("p | q"), "a"), F("~~(p \\/ q)"),
                                   lambda h: b.neg_i(F("~(p \\/ q)"), lambda k: b.neg_e(b.gor_l(h, F("q")), k, BOT)),
                                   lambda h: b.neg_i(F("~(p \\/ q)"), lambda k: b.neg_e(b.gor_r(F("p"), h), k, BOT))),
        "harrop")
    add("explicit_vacuous_discharge", Derivation(F("q -> p"), Rule.ImplI, (b.hyp(F("p"), "a"),), ("unused",)))
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "golden"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.json"):
        old.unlink()
    for i, (name, d, side) in enumerate(entries()):
        seq = check(d, side_condition=side)
        record = {"schema": 1, "name": name, "side_condition": side, "sequent": str(seq),
                  "rules": sorted(r.value for r in d.rules_used()), "proof": derivation_to_json(d)}
        (out / f"{i:02d}_{name}.json").write_text(json.dumps(record, indent=1) + "\n")
        print(f"{i:02d} {name:28s} {seq}")


if __name__ == "__main__":
    main()
