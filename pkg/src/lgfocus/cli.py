"""Command-line interface.

Exit codes: 0 provable (or success), 1 unprovable (or a negative answer),
2 error or indeterminate.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import focused, phase, unfocused
from .calculus import Variant
from .formula import Down, is_positive, parse_formula, print_formula
from .polarized import decorate, decorate_presentation, parse_pol_presentation
from .proof import render
from .structure import Presentation, map_leaves, parse_presentation, print_presentation
from .syntax import ParseError

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _read_input(args) -> str:
    if args.file:
        return Path(args.file).read_text().strip()
    if args.input is None:
        raise SystemExit("an input string or --file is required")
    return args.input


def _is_polarized(text: str) -> bool:
    return "^" in text or any(tok == "_" for tok in _leading_underscores(text))


def _leading_underscores(text: str):
    prev = " "
    for ch in text:
        if ch == "_" and not (prev.isalnum() or prev == "_"):
            yield "_"
        prev = ch


def _prove(w: Presentation, variant: Variant, engine: str, max_visited: int):
    """(status string, proof or None) for one presentation."""
    if engine == "unfocused":
        result = unfocused.prove(w, variant, max_visited)
    else:
        result = focused.prove_presentation(w, variant, max_visited)
    return result.status.value, result.proof


def cmd_prove(args) -> int:
    variant = Variant.parse(args.logic)
    w = parse_presentation(_read_input(args))
    status, proof = _prove(w, variant, args.engine, args.max_visited)
    print(status)
    if proof is not None:
        print(render(proof, args.format))
        if args.certify:
            if args.engine == "unfocused":
                ok = unfocused.proves(proof, w, variant)
            else:
                ok = bool(focused.check_focused(proof, variant)) and proof.conclusion == decorate_presentation(w)
            print(f"certificate: {'ok' if ok else 'REJECTED'}")
            if not ok:
                return EXIT_ERROR
    elif status == "UNPROVABLE" and args.certify:
        model = phase.countermodel_search(w, variant, args.max_n, args.seed)
        if model is None:
            print(f"no countermodel up to n={args.max_n}")
        else:
            print("countermodel:")
            print(model.to_json())
    return {"PROVABLE": EXIT_OK, "UNPROVABLE": EXIT_NO}.get(status, EXIT_ERROR)


def cmd_enumerate(args) -> int:
    variant = Variant.parse(args.logic)
    text = _read_input(args)
    if _is_polarized(text):
        w = parse_pol_presentation(text)
        decorated = Presentation(*(_down_leaves(s) for s in (w.left, w.right)))
    else:
        decorated = decorate_presentation(parse_presentation(text))
    goals = focused.goals_of(decorated)
    total = 1
    for i, goal in enumerate(goals):
        proofs = focused.enumerate_proofs(goal, variant, args.cap, args.max_visited)
        if len(goals) > 1:
            print(f"goal {i}: {print_presentation(goal)}")
        for k, proof in enumerate(proofs):
            print(f"proof {k}:")
            print(render(proof, args.format))
            if args.certify and not focused.check_focused(proof, variant):
                print("certificate: REJECTED")
                return EXIT_ERROR
        if len(goals) > 1:
            print(f"goal {i} count: {len(proofs)}")
        total *= len(proofs)
    print(f"count: {total}")
    return EXIT_OK if total else EXIT_NO


def _down_leaves(s):
    return map_leaves(s, lambda leaf: leaf if is_positive(leaf) else Down(leaf))


def cmd_translate(args) -> int:
    text = _read_input(args)
    if ";" in text or "=>" in text:
        print(print_presentation(decorate_presentation(parse_presentation(text))))
    else:
        print(print_formula(decorate(parse_formula(text))))
    return EXIT_OK


def cmd_countermodel(args) -> int:
    variant = Variant.parse(args.logic)
    w = parse_presentation(_read_input(args))
    model = phase.countermodel_search(w, variant, args.max_n, args.seed, args.samples)
    if model is None:
        print(f"no countermodel up to n={args.max_n}")
        return EXIT_NO
    if args.certify and not phase.certify_countermodel(model, w, variant):
        print("certificate: REJECTED")
        return EXIT_ERROR
    print(model.to_json())
    return EXIT_OK


def cmd_check_model(args) -> int:
    variant = Variant.parse(args.logic)
    model = phase.Model.from_json(Path(args.model).read_text())
    problems = model.space.violations(variant)
    problems += [f"valuation of {k} is not a fact" for k, v in model.valuation.items() if not model.space.is_fact(v)]
    if problems:
        print("INVALID")
        for p in problems[:20]:
            print("  " + p)
        return EXIT_NO
    print("VALID")
    if args.input is not None:
        decorated = decorate_presentation(parse_presentation(args.input))
        readings = phase.inclusions(model, decorated)
        print("holds" if readings[0] else "fails", "(four readings: " + " ".join(map(str, readings)) + ")")
        return EXIT_OK if readings[0] else EXIT_NO
    return EXIT_OK


def read_corpus(path: str) -> list[tuple[str, str, str]]:
    entries = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3 or parts[2].strip() not in ("P", "U"):
            raise ValueError(f"{path}:{lineno}: expected variant<TAB>sequent<TAB>P|U")
        entries.append((parts[0].strip(), parts[1].strip(), parts[2].strip()))
    return entries


def _run_entry(job):
    variant, text, engine, max_visited = job
    try:
        status, _ = _prove(parse_presentation(text), Variant.parse(variant), engine, max_visited)
    except (ParseError, ValueError) as exc:
        status = f"ERROR ({exc})"
    return status


def cmd_corpus(args) -> int:
    entries = read_corpus(args.path)
    jobs = [(v, s, args.engine, args.max_visited) for v, s, _ in entries]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_run_entry, jobs))
    else:
        results = [_run_entry(j) for j in jobs]
    failures = 0
    for (variant, text, expected), status in zip(entries, results):
        got = {"PROVABLE": "P", "UNPROVABLE": "U"}.get(status, "?")
        ok = got == expected
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'}\t{variant}\t{expected}\t{got}\t{text}")
    print(f"{len(entries) - failures}/{len(entries)} as expected")
    return EXIT_OK if failures == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lgfocus", description="Proof search for Lambek-Grishin display calculi.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, logic=True, input_=True):
        if logic:
            p.add_argument("--logic", default="lg0", choices=[v.value for v in Variant])
        if input_:
            p.add_argument("input", nargs="?", help="formula or presentation text")
            p.add_argument("--file", help="read the input from a file")

    p = sub.add_parser("prove", help="decide a presentation")
    common(p)
    p.add_argument("--engine", default="focused", choices=["focused", "unfocused"])
    p.add_argument("--format", default="ascii", choices=["ascii", "latex", "json"])
    p.add_argument("--max-visited", type=int, default=500_000)
    p.add_argument("--certify", action="store_true", help="re-check the proof, or look for a countermodel")
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("enumerate", help="list every focused proof")
    common(p)
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("--format", default="ascii", choices=["ascii", "latex", "json"])
    p.add_argument("--max-visited", type=int, default=500_000)
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("translate", help="print the polarized decoration")
    common(p, logic=False)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("countermodel", help="search small phase spaces for a countermodel")
    common(p)
    p.add_argument("--max-n", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_countermodel)

    p = sub.add_parser("check-model", help="validate a JSON phase model")
    p.add_argument("--logic", default="lg0", choices=[v.value for v in Variant])
    p.add_argument("model", help="path to the model JSON")
    p.add_argument("input", nargs="?", help="optional presentation to evaluate")
    p.set_defaults(func=cmd_check_model)

    p = sub.add_parser("corpus", help="run a tab-separated corpus of expectations")
    p.add_argument("path")
    p.add_argument("--engine", default="focused", choices=["focused", "unfocused"])
    p.add_argument("--max-visited", type=int, default=500_000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
