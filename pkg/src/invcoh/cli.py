"""Command-line front end.

Subcommands: normalize, equal, eval, kl, sign, cohomology, trivialize,
classify, model-check, model-eval.  Exit codes: 0 success, 1 a well-posed
check came back negative (not forced, unsolvable, axiom failure), 2 bad
input.  All output is deterministic for fixed arguments and seeds; --json
swaps the human rendering for one JSON object on stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from . import cohomology as coh
from . import composites as comp
from . import grammar, kl, models, signs
from .models import FiniteAbelianGroup, ModelError
from .words import max_generator, to_text

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


class InputError(ValueError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(str(e)) from None


def _jsonable(x):
    if isinstance(x, dict):
        return {_key(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "tolist"):
        return _jsonable(x.tolist())
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def _key(k) -> str:
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return "[" + "|".join(_key(t) for t in k) + "]"
    return str(k)


def _emit(args, record: dict, human: list[str]) -> None:
    if args.json:
        json.dump(_jsonable(record), sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    else:
        for line in human:
            print(line)


def _group_name(invariants: list[int]) -> str:
    return " x ".join(f"Z/{d}" for d in invariants) if invariants else "trivial"


def _parse_composite_arg(path: str, n: Optional[int]) -> comp.FormalComposite:
    return grammar.parse_composite(_read(path), n)


def _vector(text: Optional[str], name: str) -> Optional[tuple[int, ...]]:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise InputError(f"--{name} must be a comma-separated integer vector")


# ---------------------------------------------------------------------------
# subcommands


def cmd_normalize(args) -> int:
    n = args.gens or max(max_generator(grammar.parse_word(args.word)), 1)
    w = grammar.parse_word(args.word, n)
    rng = random.Random(args.seed) if args.seed is not None else None
    try:
        c = comp.canonical_phi(w, n, rng=rng)
    except (ValueError, comp.MoveError) as e:
        raise InputError(str(e)) from None
    target = comp.target_word(c)
    record = {
        "command": "normalize",
        "source": to_text(w),
        "target": to_text(target),
        "moves": [grammar.move_to_text(m) for m in c.moves],
        "evaluation": list(comp.evaluate(c)),
    }
    human = [f"target: {to_text(target)}", ""]
    human += [grammar.composite_to_text(c).rstrip("\n")]
    _emit(args, record, human)
    return EXIT_OK


def cmd_equal(args) -> int:
    c1 = _parse_composite_arg(args.first, args.gens)
    c2 = _parse_composite_arg(args.second, args.gens)
    n = max(c1.n, c2.n)
    c1 = comp.FormalComposite(c1.source, c1.moves, n)
    c2 = comp.FormalComposite(c2.source, c2.moves, n)
    try:
        verdict = comp.equal(c1, c2)
    except comp.EndpointMismatch as e:
        raise InputError(str(e)) from None
    e1, e2 = comp.evaluate(c1), comp.evaluate(c2)
    record = {
        "command": "equal",
        "verdict": verdict,
        "evaluation_first": list(e1),
        "evaluation_second": list(e2),
    }
    label = "ForcedEqual" if verdict == "forced-equal" else "NotForced"
    human = [label, f"first:  {e1}", f"second: {e2}"]
    _emit(args, record, human)
    return EXIT_OK if verdict == "forced-equal" else EXIT_NEGATIVE


def cmd_eval(args) -> int:
    c = _parse_composite_arg(args.composite, args.gens)
    e = comp.evaluate(c)
    record = {
        "command": "eval",
        "source": to_text(c.source),
        "target": to_text(comp.target_word(c)),
        "evaluation": list(e),
    }
    _emit(args, record, [f"evaluation: {e}"])
    return EXIT_OK


def cmd_kl(args) -> int:
    c = _parse_composite_arg(args.composite, args.gens)
    m, s = comp.compile_to_kl(c)
    record = {
        "command": "kl",
        "src": to_text(m.src),
        "dst": to_text(m.dst),
        "edges": sorted([list(t), list(h)] for t, h in m.edges),
        "loops": {f"X{g}": k for g, k in m.loops},
        "substitutions": list(s),
    }
    human = [kl.to_record(m).rstrip("\n"), f"substitutions: {s}"]
    _emit(args, record, human)
    return EXIT_OK


def cmd_sign(args) -> int:
    a = _vector(args.a, "a")
    b = _vector(args.b, "b")
    c = _vector(args.c, "c")
    d = _vector(args.d, "d")
    rule = args.rule
    if rule == "tau":
        if a is None or b is None:
            raise InputError("tau needs --a and --b")
        if len(a) != len(b):
            raise InputError("--a and --b must have equal length")
        g = signs.CommuterGroup(len(a))
        out = signs.tau(a, b, g)
        text = g.show(out)
        record = {"command": "sign", "rule": rule, "factor": text, "exponents": list(out)}
        _emit(args, record, [text])
        return EXIT_OK
    if rule.startswith("lr-"):
        vecs = [v for v in (a, b, c, d) if v is not None]
        if not vecs:
            raise InputError("lr rules need degree vectors")
        n = len(vecs[0])
        if any(len(v) != n for v in vecs):
            raise InputError("degree vectors must have equal length")
        g = signs.CommuterGroup(n)
        try:
            out = signs.lr_correction(rule[3:], a, b, c, d, group=g, flavor=args.flavor)
        except signs.SignError as e:
            raise InputError(str(e)) from None
        text = g.show(out)
        record = {"command": "sign", "rule": rule, "flavor": args.flavor, "factor": text, "exponents": list(out)}
        _emit(args, record, [text])
        return EXIT_OK
    if rule == "motivic":
        if any(v is None or len(v) != 1 for v in (a, b, c, d)):
            raise InputError("motivic needs scalar --a --b --c --d")
        k, m = signs.motivic_skew(a[0], b[0], c[0], d[0])
        text = f"(-1)^{k} * eps^{m}"
        record = {"command": "sign", "rule": rule, "factor": text, "exponents": [k, m]}
        _emit(args, record, [text])
        return EXIT_OK
    if rule == "realization":
        try:
            out = signs.realization_correction(
                args.convention,
                b=None if b is None else b[0],
                c=None if c is None else c[0],
                d=None if d is None else d[0],
                a=None if a is None else a[0],
                s=args.s,
            )
        except signs.SignError as e:
            raise InputError(str(e)) from None
        text = f"{out:+d}"
        record = {"command": "sign", "rule": rule, "convention": args.convention, "factor": out}
        _emit(args, record, [text])
        return EXIT_OK
    raise InputError(f"unknown sign rule {rule!r}")


def _bar_cohomology(A: FiniteAbelianGroup, N: FiniteAbelianGroup, k: int):
    from .linalg import quotient_invariants

    if k not in (1, 2, 3):
        raise InputError("bar cohomology computed in degrees 1..3")
    ker_mat = coh.bar_d_matrix(A, k + 1).T
    im_mat = coh.bar_d_matrix(A, k).T
    invs: list[int] = []
    for m in N.moduli:
        if m == 0:
            raise InputError("coefficients must be finite")
        facs, _ = quotient_invariants(
            ker_mat, [im_mat[:, j] for j in range(im_mat.shape[1])], m
        )
        invs.extend(facs)
    return sorted(invs)


def cmd_cohomology(args) -> int:
    A = _parse_group(args.A)
    N = _parse_group(args.N)
    if args.em:
        invs, reps = coh.em_cohomology(A, N, args.degree)
        record = {
            "command": "cohomology",
            "complex": "extended",
            "A": args.A,
            "N": args.N,
            "degree": args.degree,
            "invariants": invs,
            "group": _group_name(invs),
            "representatives": [_jsonable(r) for r in reps],
        }
    else:
        invs = _bar_cohomology(A, N, args.degree)
        record = {
            "command": "cohomology",
            "complex": "bar",
            "A": args.A,
            "N": args.N,
            "degree": args.degree,
            "invariants": invs,
            "group": _group_name(invs),
        }
    _emit(args, record, [f"group: {_group_name(invs)}"])
    return EXIT_OK


def cmd_trivialize(args) -> int:
    A = _parse_group(args.A)
    N = _parse_group(args.N)
    alpha = grammar.parse_cochain_table(_read(args.alpha_file), A, N, 3)
    res = coh.trivialize(A, N, alpha)
    record = {
        "command": "trivialize",
        "A": args.A,
        "N": args.N,
        "solvable": res["solvable"],
    }
    if not res["solvable"]:
        _emit(args, record, ["not solvable: no sigma with delta sigma = alpha"])
        return EXIT_NEGATIVE
    record["particular"] = _jsonable(res["particular"])
    record["z2_order"] = res["z2_order"]
    record["solution_count"] = None if res["solutions"] is None else len(res["solutions"])
    human = [
        "solvable",
        f"torsor over Z^2_norm of order {res['z2_order']}",
        "particular sigma (nonzero entries):",
    ]
    for pair in sorted(res["particular"]):
        human.append(f"  sigma[{pair[0]},{pair[1]}] = {res['particular'][pair]}")
    _emit(args, record, human)
    return EXIT_OK


def cmd_classify(args) -> int:
    A = _parse_group(args.A)
    N = _parse_group(args.N)
    alpha = None
    if args.alpha_file:
        alpha = grammar.parse_cochain_table(_read(args.alpha_file), A, N, 3)
    try:
        res = coh.classify_rings(coh.ClassificationProblem(A, N, alpha))
    except coh.CohomologyError as e:
        raise InputError(str(e)) from None
    record = {
        "command": "classify",
        "A": args.A,
        "N": args.N,
        "class_count": res["class_count"],
        "h2_order": res["h2_order"],
        "consistent": res["consistent"],
        "representatives": [_jsonable(c["representative"]) for c in res["classes"]],
    }
    human = [
        f"classes: {res['class_count']}",
        f"|H^2(A;N)|: {res['h2_order']}",
        f"consistent: {res['consistent']}",
    ]
    for i, cls in enumerate(res["classes"], start=1):
        rep = cls["representative"]
        entries = ", ".join(
            f"sigma[{p[0]},{p[1]}]={rep[p]}" for p in sorted(rep)
        ) or "0"
        human.append(f"class {i}: {entries} ({1 + len(cls['members'])} members)")
    _emit(args, record, human)
    return EXIT_OK if res["consistent"] else EXIT_NEGATIVE


def cmd_model_check(args) -> int:
    M, _ = models.load_model(_read(args.model))
    bound = args.bound if not M.A.is_finite() else None
    report = models.check_axioms(M, bound=bound)
    record = {
        "command": "model-check",
        "model": M.name or "table",
        "checks": {k: report[k] for k in ("pentagon", "hexagon1", "hexagon2", "symmetry", "normalized")},
        "all": report["all"],
        "failures": _jsonable(report["failures"]),
    }
    human = [
        f"{k}: {'ok' if report[k] else 'FAIL at ' + str(report['failures'].get(k))}"
        for k in ("pentagon", "hexagon1", "hexagon2", "symmetry", "normalized")
    ]
    human.append("all checks passed" if report["all"] else "axioms FAILED")
    _emit(args, record, human)
    return EXIT_OK if report["all"] else EXIT_NEGATIVE


def cmd_model_eval(args) -> int:
    M, assignment = models.load_model(_read(args.model))
    if assignment is None:
        raise InputError("model file has no `assign` lines for the generators")
    c = _parse_composite_arg(args.composite, args.gens or assignment.n)
    try:
        val, src_obj, dst_obj = models.evaluate_in_model(c, M, assignment)
    except ModelError as e:
        raise InputError(str(e)) from None
    record = {
        "command": "model-eval",
        "value": list(val),
        "source_object": list(src_obj),
        "target_object": list(dst_obj),
    }
    human = [
        f"value: {val}",
        f"source object: {src_obj}",
        f"target object: {dst_obj}",
    ]
    _emit(args, record, human)
    return EXIT_OK


def _parse_group(text: str) -> FiniteAbelianGroup:
    try:
        return FiniteAbelianGroup.parse(text)
    except ModelError as e:
        raise InputError(str(e)) from None


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="invcoh",
        description="Coherence workbench for invertible objects: composite "
        "evaluation, diagram compilation, sign rules, and the cohomology "
        "classifying graded ring structures.",
    )
    sub = p.add_subparsers(dest="subcommand", required=True)

    def common(sp, gens=True, seed=False):
        sp.add_argument("--json", action="store_true", help="emit one JSON object")
        if gens:
            sp.add_argument("--gens", type=int, metavar="N", help="number of generators")
        if seed:
            sp.add_argument("--seed", type=int, metavar="K", help="random canonical path (fixed default: deterministic)")

    sp = sub.add_parser("normalize", help="canonical move script from a word to its power-word normal form")
    sp.add_argument("word")
    common(sp, seed=True)
    sp.set_defaults(fn=cmd_normalize)

    sp = sub.add_parser("equal", help="decide ForcedEqual / NotForced for two composite scripts")
    sp.add_argument("first", help="composite script file ('-' for stdin)")
    sp.add_argument("second")
    common(sp)
    sp.set_defaults(fn=cmd_equal)

    sp = sub.add_parser("eval", help="exponent vector of a composite script")
    sp.add_argument("composite", help="composite script file ('-' for stdin)")
    common(sp)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("kl", help="compile a composite to its diagram-category correspondence")
    sp.add_argument("composite")
    common(sp)
    sp.set_defaults(fn=cmd_kl)

    sp = sub.add_parser("sign", help="sign-calculus factors (tau, lr-a..lr-g, motivic, realization)")
    sp.add_argument("rule", help="tau | lr-a..lr-g | motivic | realization")
    sp.add_argument("--a")
    sp.add_argument("--b")
    sp.add_argument("--c")
    sp.add_argument("--d")
    sp.add_argument("--flavor", choices=("r", "l"), default="r")
    sp.add_argument("--convention", default="X1=S^{1,0}")
    sp.add_argument("--s", type=int)
    common(sp, gens=False)
    sp.set_defaults(fn=cmd_sign)

    sp = sub.add_parser("cohomology", help="group invariants of H^k (bar or extended complex)")
    sp.add_argument("A", help="object group, e.g. 'Z/2 x Z/4'")
    sp.add_argument("N", help="coefficient group")
    sp.add_argument("degree", type=int)
    sp.add_argument("--em", action="store_true", help="use the extended complex")
    common(sp, gens=False)
    sp.set_defaults(fn=cmd_cohomology)

    sp = sub.add_parser("trivialize", help="all normalized sigma with delta sigma = alpha")
    sp.add_argument("A")
    sp.add_argument("N")
    sp.add_argument("alpha_file", help="cochain table file ('-' for stdin)")
    common(sp, gens=False)
    sp.set_defaults(fn=cmd_trivialize)

    sp = sub.add_parser("classify", help="graded ring structures up to standard isomorphism")
    sp.add_argument("A")
    sp.add_argument("N")
    sp.add_argument("--alpha-file", help="optional associator table (default 0)")
    common(sp, gens=False)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("model-check", help="verify the axioms of a model file")
    sp.add_argument("--model", required=True, metavar="FILE")
    sp.add_argument("--bound", type=int, default=3, help="sampling bound for infinite object groups")
    common(sp, gens=False)
    sp.set_defaults(fn=cmd_model_check)

    sp = sub.add_parser("model-eval", help="evaluate a composite script in a model file")
    sp.add_argument("composite")
    sp.add_argument("--model", required=True, metavar="FILE")
    common(sp)
    sp.set_defaults(fn=cmd_model_eval)

    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, grammar.ParseError, ModelError, coh.CohomologyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
