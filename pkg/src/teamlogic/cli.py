"""Command-line front end.

Exit codes: 0 for success or a true verdict, 1 for a false verdict, 2 for
usage and input errors.  ``--json`` switches every report to JSON carrying
``"schema": 1``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import closure, normal_forms, synthesis, team, verify
from .deduction import NotDerivable, ProofError, check, derivation_to_json, loads, prove
from .formula import FormulaSyntaxError, classify, parse, to_text, variables

SCHEMA = 1


class InputError(Exception):
    pass


def _load_json(arg: str):
    """Inline JSON or a path to a JSON file."""
    text = arg if arg.lstrip().startswith(("{", "[")) else None
    if text is None:
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {arg}: {exc}") from None


def _universe(args, *formulas):
    if getattr(args, "vars", None):
        names = tuple(x for x in args.vars.replace(",", " ").split() if x)
        return team.Universe(names, args.cap)
    names = set()
    for f in formulas:
        names |= variables(f)
    return team.Universe(tuple(sorted(names)), args.cap)


class Reporter:
    def __init__(self, as_json: bool, out=None):
        self.as_json = as_json
        self.out = out or sys.stdout

    def emit(self, command: str, payload: dict, text: str):
        if self.as_json:
            self.out.write(json.dumps({"schema": SCHEMA, "command": command, **payload}, indent=2) + "\n")
        else:
            self.out.write(text.rstrip("\n") + "\n")


def _rows(U, t):
    return team.team_to_bits(U, t)


# -- commands -------------------------------------------------------------------

def cmd_eval(args, rep: Reporter) -> int:
    phi = parse(args.formula)
    U, t = team.team_from_json(_load_json(args.team), args.cap)
    verdict = team.satisfies(t, phi, U)
    rep.emit("eval", {"formula": to_text(phi), "team": _rows(U, t), "verdict": verdict},
             f"{'true' if verdict else 'false'}: {{{', '.join(_rows(U, t))}}} |= {to_text(phi)}")
    return 0 if verdict else 1


def cmd_extension(args, rep: Reporter) -> int:
    phi = parse(args.formula)
    U = _universe(args, phi)
    prop = team.extension(phi, U)
    obj = team.property_to_json(prop)
    lines = [f"{len(prop)} of {U.num_teams} teams over ({' '.join(U.vars)}) satisfy {to_text(phi)}"]
    lines += ["  {" + ", ".join(rows) + "}" for rows in obj["teams"]]
    rep.emit("extension", {"formula": to_text(phi), "property": obj, "count": len(prop)}, "\n".join(lines))
    return 0


def cmd_entails(args, rep: Reporter) -> int:
    premises = [parse(p) for p in args.premise or ()]
    goal = parse(args.conclusion)
    U = _universe(args, *premises, goal)
    bad = team.countermodel(premises, goal, U)
    payload = {"premises": [to_text(p) for p in premises], "conclusion": to_text(goal),
               "vars": list(U.vars), "entails": bad is None,
               "countermodel": None if bad is None else _rows(U, bad)}
    if bad is None:
        text = "entails"
    else:
        text = "does not entail; countermodel team {" + ", ".join(_rows(U, bad)) + "}"
    rep.emit("entails", payload, text)
    return 0 if bad is None else 1


def cmd_classify_property(args, rep: Reporter) -> int:
    prop = team.property_from_json(_load_json(args.property), args.cap)
    report = closure.describe(prop)
    lines = []
    for name, info in report.items():
        line = f"{name:9s} {'yes' if info['holds'] else 'no'}"
        if info["witness"] is not None and not info["holds"]:
            line += "  witness: " + " ; ".join("{" + ", ".join(rows) + "}" for rows in info["witness"])
        lines.append(line)
    rep.emit("classify-property", {"property": team.property_to_json(prop), "closure": report}, "\n".join(lines))
    return 0


def cmd_synth(args, rep: Reporter) -> int:
    prop = team.property_from_json(_load_json(args.property), args.cap)
    U = prop.universe
    try:
        result = synthesis.synth(prop, args.fragment)
    except synthesis.PreconditionError as exc:
        witness = None if exc.witness is None else [_rows(U, t) for t in exc.witness]
        text = f"precondition failed: {exc}"
        if witness:
            text += "; witness " + " ; ".join("{" + ", ".join(w) + "}" for w in witness)
        rep.emit("synth", {"fragment": args.fragment, "ok": False, "error": str(exc), "witness": witness}, text)
        return 1
    phi = result.formula
    payload = {"fragment": result.fragment.name, "ok": True, "formula": to_text(phi),
               "verified": result.verified, "fragments": sorted(classify(phi))}
    rep.emit("synth", payload, f"{to_text(phi)}\nverified: {str(result.verified).lower()}")
    return 0 if result.verified else 1


def cmd_nf(args, rep: Reporter) -> int:
    if args.dnf is not None:
        phi = parse(args.dnf)
        items = normal_forms.to_dnf(phi)
        rep.emit("nf", {"mode": "dnf", "formula": to_text(phi), "disjuncts": [to_text(a) for a in items]},
                 "\n".join(to_text(a) for a in items))
        return 0
    phi = parse(args.harrop)
    flat = normal_forms.harrop_flatten(phi)
    rep.emit("nf", {"mode": "harrop", "formula": to_text(phi), "result": to_text(flat)}, to_text(flat))
    return 0


def cmd_prove(args, rep: Reporter) -> int:
    premises = [parse(p) for p in args.premise or ()]
    goal = parse(args.conclusion)
    U = _universe(args, *premises, goal)
    try:
        d = prove(premises, goal, U)
    except NotDerivable as exc:
        rows = _rows(U, exc.countermodel)
        rep.emit("prove", {"derivable": False, "countermodel": rows, "vars": list(U.vars)},
                 "not derivable; countermodel team {" + ", ".join(rows) + "}")
        return 1
    proof = {"schema": SCHEMA, "proof": derivation_to_json(d)}
    if args.out:
        Path(args.out).write_text(json.dumps(proof, indent=1) + "\n")
    seq = check(d)
    if rep.as_json:
        rep.emit("prove", {"derivable": True, "sequent": str(seq), "size": d.size(), "proof": proof["proof"]}, "")
    else:
        text = f"derivable: {seq}  ({d.size()} nodes)"
        if not args.out:
            text += "\n" + json.dumps(proof, indent=1)
        rep.emit("prove", {}, text)
    return 0


def cmd_check_proof(args, rep: Reporter) -> int:
    raw = args.proof
    obj = _load_json(raw)
    try:
        d = loads(json.dumps(obj))
    except (KeyError, TypeError, FormulaSyntaxError) as exc:
        raise InputError(f"malformed proof: {exc}") from None
    mode = "harrop" if args.harrop_side_condition else "classical"
    try:
        seq = check(d, side_condition=mode)
    except ProofError as exc:
        rep.emit("check-proof", {"valid": False, "error": exc.reason, "path": list(exc.path)}, f"invalid: {exc}")
        return 1
    rep.emit("check-proof", {"valid": True, "premises": sorted(to_text(p) for p in seq.premises),
                             "conclusion": to_text(seq.conclusion)}, f"valid: {seq}")
    return 0


def cmd_verify_lemmas(args, rep: Reporter) -> int:
    ids = []
    for item in args.lemma or ():
        ids += [x for x in item.split(",") if x]
    results = verify.verify_lemmas(args.n, ids or None, args.sample, args.mutation, args.seed)
    ok = all(r.passed for r in results)
    lines = []
    for r in results:
        status = "skip" if r.skipped else ("pass" if r.passed else "FAIL")
        line = f"{status}  {r.lemma:6s} {r.title}  [{r.cases} cases{', sampled' if r.sampled else ''}]"
        if r.counterexample is not None:
            line += f"\n      counterexample: {json.dumps(r.counterexample)}"
        lines.append(line)
    rep.emit("verify-lemmas", {"n": args.n, "mutation": args.mutation, "passed": ok,
                               "results": [r.to_json() for r in results]}, "\n".join(lines))
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--cap", type=int, default=team.DEFAULT_CAP, help="largest allowed universe")

    parser = argparse.ArgumentParser(prog="teamlogic", description="Team-semantics engine: evaluate, decide, "
                                     "synthesize, normalize and prove.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula on a team")
    p.add_argument("--team", required=True, help="team JSON or path")
    p.add_argument("--formula", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("extension", parents=[common], help="list every team satisfying a formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--vars", help="universe variables, comma or space separated")
    p.set_defaults(func=cmd_extension)

    p = sub.add_parser("entails", parents=[common], help="decide team entailment")
    p.add_argument("--premise", action="append")
    p.add_argument("--conclusion", required=True)
    p.add_argument("--vars")
    p.set_defaults(func=cmd_entails)

    p = sub.add_parser("classify-property", parents=[common], help="closure classes of a team property")
    p.add_argument("--property", required=True, help="property JSON or path")
    p.set_defaults(func=cmd_classify_property)

    p = sub.add_parser("synth", parents=[common], help="synthesize a defining formula")
    p.add_argument("--fragment", required=True)
    p.add_argument("--property", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("nf", parents=[common], help="normal forms")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--dnf", metavar="FORMULA")
    mode.add_argument("--harrop", metavar="FORMULA")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("prove", parents=[common], help="build a derivation")
    p.add_argument("--premise", action="append")
    p.add_argument("--conclusion", required=True)
    p.add_argument("--vars")
    p.add_argument("--out", help="write the proof JSON here")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check-proof", parents=[common], help="check a proof JSON file")
    p.add_argument("proof", help="proof JSON or path")
    p.add_argument("--harrop-side-condition", action="store_true",
                   help="let RAA, LOrE and Split take Harrop formulas")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("verify-lemmas", parents=[common], help="brute-force verification sweeps")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--lemma", action="append", help=f"one of {', '.join(verify.LEMMA_IDS)}; repeatable")
    p.add_argument("--sample", type=int)
    p.add_argument("--mutation", choices=verify.MUTATIONS)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_lemmas)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    rep = Reporter(args.json, out)
    try:
        return args.func(args, rep)
    except (InputError, FormulaSyntaxError, team.UnknownVariableError, team.UniverseCapError,
            normal_forms.FragmentError, normal_forms.DNFSizeError, synthesis.NoConstructionError,
            ValueError, KeyError) as exc:
        message = str(exc).strip("'\"")
        if rep.as_json:
            rep.emit(args.command, {"error": message, "kind": type(exc).__name__}, "")
        else:
            sys.stderr.write(f"error: {message}\n")
        return 2


def main() -> None:
    sys.exit(run())
