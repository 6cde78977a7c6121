"""Command-line entry point: ``nuclei <command> [options]``.

Exit codes: 0 when the sequent is provable or every check passed, 1 when it
is unprovable or a check failed, 2 on usage, parse or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .calculus import Logic, prove
from .entailment import (
    CarrierTooLarge,
    NotANucleus,
    check_nucleus,
    conservation_report,
    load_system,
    run_campaign,
    saturate,
)
from .entailment.campaign import KINDS as CAMPAIGN_KINDS
from .formula import ParseError, parse, parse_sequent, render, render_sequent
from .harness import CHECKS, run_check
from .logical import parse_nucleus

__all__ = ["run", "main", "build_parser"]

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--output", "-o", metavar="PATH", help="write to PATH instead of stdout")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument(
        "--seed", type=int, default=None,
        help="random seed (default 0; required when CI_STRICT=1)",
    )

    p = argparse.ArgumentParser(prog="nuclei", description="Nuclei over entailment relations.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("prove", parents=[common], help="decide a sequent")
    sp.add_argument("--logic", default="i", help="p, m, i or c (default i)")
    sp.add_argument("--max-worlds", type=int, default=4)
    sp.add_argument("--no-countermodel", action="store_true")
    sp.add_argument("--trace", action="store_true", help="include the derivation")
    sp.add_argument("sequent", help='e.g. "p, p -> q |- q"')

    sp = sub.add_parser("translate", parents=[common], help="apply a nucleus to a formula")
    sp.add_argument("--nucleus", required=True, help="glivenko, peirce, df or deduction:A")
    sp.add_argument("formula")

    sp = sub.add_parser("conserve", parents=[common, seeded], help="fuzz a conservation result")
    sp.add_argument("--check", required=True, choices=sorted(CHECKS))
    sp.add_argument("--samples", type=int, default=1000)

    sp = sub.add_parser("abstract", parents=[common], help="run a JSON entailment system")
    sp.add_argument("--file", required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--nucleus-check", action="store_true")
    mode.add_argument("--conservation", action="store_true")

    sp = sub.add_parser("campaign", parents=[common, seeded], help="randomised finite-system trials")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--kind", choices=sorted(CAMPAIGN_KINDS) + ["all"], default="conservation")
    sp.add_argument("--max-carrier", type=int, default=6)
    return p


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    if os.environ.get("CI_STRICT") == "1":
        raise UsageError("--seed is required when CI_STRICT=1")
    return 0


def _positive(value: int, name: str) -> int:
    if value < 1:
        raise UsageError(f"{name} must be at least 1")
    return value


def _text(rows: list[tuple[str, object]]) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _show_model(model) -> str:
    data = model.to_json()
    order = " ".join(f"{a}<={b}" for a, b in data["order"] if a != b) or "-"
    val = " ".join(
        f"{w}:{{{','.join(data['valuation'][str(w)])}}}" for w in data["worlds"]
    )
    return f"{len(data['worlds'])} worlds; order {order}; valuation {val}"


# ---------------------------------------------------------------- commands


def _prove(args):
    try:
        logic = Logic.from_code(args.logic)
    except ValueError as e:
        raise UsageError(str(e)) from None
    s = parse_sequent(args.sequent)
    r = prove(logic, s, countermodel=not args.no_countermodel, max_worlds=args.max_worlds)
    verdict = "Provable" if r.provable else "Unprovable"
    data = {
        "logic": logic.name.lower(),
        "sequent": render_sequent(s),
        "verdict": verdict,
        "countermodel": r.countermodel.to_json() if r.countermodel is not None else None,
    }
    if args.trace:
        data["derivation"] = r.derivation.to_json() if r.derivation is not None else None
    rows = [("logic", data["logic"]), ("sequent", data["sequent"]), ("verdict", verdict)]
    if r.countermodel is not None:
        rows.append(("countermodel", _show_model(r.countermodel)))
    text = _text(rows)
    if args.trace and r.derivation is not None:
        text += "".join(line + "\n" for line in r.derivation.lines())
    return (OK if r.provable else FAILED), data, text


def _translate(args):
    try:
        n = parse_nucleus(args.nucleus)
    except ValueError as e:
        raise UsageError(str(e)) from None
    f = parse(args.formula)
    out = render(n(f))
    return OK, {"nucleus": str(n), "input": render(f), "output": out}, out + "\n"


def _conserve(args):
    seed = _seed(args)
    rep = run_check(args.check, _positive(args.samples, "--samples"), seed)
    data = rep.to_json()
    rows = [("check", rep.check), ("seed", seed), ("samples", rep.samples)]
    rows += [(k, f"{v}/{rep.samples}") for k, v in data["counts"].items()]
    rows.append(("failures", rep.failure_count))
    rows.append(("result", "passed" if rep.ok else "FAILED"))
    text = _text(rows) + "".join(f"  #{f['index']}: {f['sequent']}\n" for f in rep.failures)
    return (OK if rep.ok else FAILED), data, text


def _abstract(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            raw = json.load(fh)
        sys_, j = load_system(raw)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"cannot load {args.file}: {e}") from None
    rel = saturate(sys_)
    if not (args.nucleus_check or args.conservation):
        data = {"relation": rel.to_json()}
        lines = [
            f"{a}: " + " ".join("{" + ",".join(g) + "}" for g in gens)
            for a, gens in data["relation"]["generators"].items()
        ]
        return OK, data, "\n".join(lines) + "\n"
    if j is None:
        raise UsageError("the system file has no \"nucleus\" entry")
    report = check_nucleus(rel, j)
    data = {"nucleus": report.to_json(sys_.carrier)}
    rows = [("is_nucleus", report.is_nucleus), ("rj", report.rj), ("lj", report.lj)]
    if args.nucleus_check or not report.is_nucleus:
        return (OK if report.is_nucleus else FAILED), data, _text(rows)
    cons = conservation_report(sys_, j, rel)
    data["conservation"] = cons.to_json()
    rows += list(cons.to_json().items())
    return (OK if cons.ok else FAILED), data, _text(rows)


def _campaign(args):
    seed = _seed(args)
    trials = _positive(args.trials, "--trials")
    kinds = sorted(CAMPAIGN_KINDS) if args.kind == "all" else [args.kind]
    reports = [run_campaign(k, trials, seed, args.max_carrier) for k in kinds]
    ok = all(r.ok for r in reports)
    data = {"seed": seed, "passed": ok, "reports": [r.to_json() for r in reports]}
    rows = [("seed", seed), ("trials", trials)]
    for r in reports:
        rows.append((r.kind, f"failures {r.failures}, equal {r.equal}/{trials}, "
                     f"non-identity nuclei {r.nonidentity}"))
    rows.append(("result", "passed" if ok else "FAILED"))
    return (OK if ok else FAILED), data, _text(rows)


COMMANDS = {
    "prove": _prove,
    "translate": _translate,
    "conserve": _conserve,
    "abstract": _abstract,
    "campaign": _campaign,
}


def _emit(args, data, text) -> None:
    body = json.dumps(data, sort_keys=True, indent=2) + "\n" if args.format == "json" else text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    try:
        code, data, text = COMMANDS[args.command](args)
    except ParseError as e:
        print(f"nuclei: parse error: {e}", file=sys.stderr)
        return USAGE
    except UsageError as e:
        print(f"nuclei: {e}", file=sys.stderr)
        return USAGE
    except CarrierTooLarge as e:
        print(f"nuclei: {e}", file=sys.stderr)
        return USAGE
    except NotANucleus as e:
        print(f"nuclei: {e}", file=sys.stderr)
        return FAILED
    _emit(args, data, text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
