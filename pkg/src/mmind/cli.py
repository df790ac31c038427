"""Command-line entry point.

Subcommands: evaluate, tree, optimize, assist, serve.
Exit codes: 0 success, 1 usage error, 2 invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import optimizer as ga
from . import strategy
from .rules import EmptyStateError, InvalidCodeError, feedback_from_counts
from .strategy import DepthExceededError, InvariantViolation
from .weights_io import WeightParseError, make_policy

THREADS_ENV = "MMIND_THREADS"  # default worker count; 1 = fully sequential


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _policy_from_args(args) -> "Policy":
    spec = args.policy
    if spec in ("fixed", "staged"):
        spec = f"{spec}:{args.weights or (spec + '-paper')}"
    elif args.weights:
        raise SystemExit(_usage_error("--weights only applies to fixed/staged policies"))
    return make_policy(spec, force_opening=args.force_opening)


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_policy_flags(sub, default="staged"):
    sub.add_argument(
        "--policy", default=default,
        help="fixed[:<file|bundled>], staged[:<file|bundled>], shannon, knuth, most-parts",
    )
    sub.add_argument("--weights", help="weight file or bundled name for fixed/staged")
    sub.add_argument("--force-opening", action="store_true",
                     help="force the opening guess 1123")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mmind", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    ev = subs.add_parser("evaluate", parents=[], help="play all 1296 secrets, report stats")
    _add_policy_flags(ev)
    ev.add_argument("--max-turns", type=int, default=10)
    ev.add_argument("--format", choices=("text", "csv"), default="text")
    ev.add_argument("--out")

    tr = subs.add_parser("tree", help="emit the full strategy tree")
    _add_policy_flags(tr, default="fixed")
    tr.add_argument("--max-depth", type=int, default=10)
    tr.add_argument("--out")

    op = subs.add_parser("optimize", help="run the GA weight search")
    op.add_argument("--mode", choices=("fixed", "staged"), default="staged")
    op.add_argument("--force-opening", action="store_true")
    op.add_argument("--generations", type=int, default=1000)
    op.add_argument("--seed", type=int, default=0)
    op.add_argument("--population", type=int, default=64)
    op.add_argument("--anchor-paper", action="store_true",
                    help="seed the published staged weights into generation 0")
    op.add_argument("--out", help="checkpoint file (default optimize.ckpt)")
    op.add_argument("--log", help="progress CSV file")

    assist = subs.add_parser("assist", help="interactive text assistant")
    _add_policy_flags(assist)
    assist.add_argument("--max-turns", type=int, default=10)

    serve = subs.add_parser("serve", help="start the assistant HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--static", help="directory with the built UI bundle")

    return parser


def cmd_evaluate(args) -> int:
    policy = _policy_from_args(args)
    stats = strategy.evaluate_all(policy, args.max_turns)
    text = strategy.stats_csv(stats) if args.format == "csv" else strategy.stats_text(stats)
    _write_out(text, args.out)
    return 0


def cmd_tree(args) -> int:
    policy = _policy_from_args(args)
    tree = strategy.build_tree(policy, args.max_depth)
    _write_out(strategy.serialize_tree(tree), args.out)
    return 0


def cmd_optimize(args) -> int:
    config = ga.GAConfig(
        mode=args.mode,
        force_opening=args.force_opening,
        population_size=args.population,
        seed=args.seed,
        max_generations=args.generations,
    )
    anchors = [ga.staged_paper_genome(config)] if args.anchor_paper and args.mode == "staged" else None
    initial = ga.seed_population(config, anchors=anchors) if anchors else None

    log_fh = open(args.log, "w", encoding="utf-8") if args.log else None
    if log_fh:
        log_fh.write(ga.progress_csv_header())

    def progress(gen, rec):
        if log_fh:
            log_fh.write(ga.progress_csv_row(gen, rec))
        if gen % 50 == 0 or gen == 1:
            print(f"generation {gen}: total={rec.total_guesses} "
                  f"avg={rec.average:.4f} max={rec.maximum}", file=sys.stderr)

    try:
        result = ga.evolve(config, initial=initial,
                           generations=args.generations, progress=progress)
    finally:
        if log_fh:
            log_fh.close()

    out = args.out or "optimize.ckpt"
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(ga.checkpoint_text(result, None, config))
    best = result.best_fitness
    print(f"best: total={best.total_guesses} avg={best.average:.4f} "
          f"max={best.maximum} (checkpoint: {out})")
    return 0


def cmd_assist(args) -> int:
    from .heuristics import filter_remaining, full_space, select_guess

    policy = _policy_from_args(args)
    remaining = full_space()
    print("Enter feedback as '<bulls> <cows>' after each suggested guess; "
          "'undo' to revert, 'quit' to exit.")
    history = []
    turn = 1
    while True:
        sg = None
        if remaining.size == 0:
            print("No code is consistent with the feedback entered; "
                  "some response was wrong. Type 'undo' or 'quit'.")
        else:
            sg = select_guess(remaining, turn, policy)
            print(f"turn {turn}: suggest {sg.guess}  ({remaining.size} codes remain)")
        try:
            line = input("> ").strip().lower()
        except EOFError:
            return 0
        if line in ("quit", "exit", "q"):
            return 0
        if line == "undo":
            if not history:
                print("nothing to undo")
                continue
            history.pop()
            remaining = full_space()
            for g, fb in history:
                remaining = filter_remaining(remaining, g, fb)
            turn = len(history) + 1
            continue
        parts = line.split()
        if sg is None or len(parts) != 2 or not all(p.isdigit() for p in parts):
            print("expected: <bulls> <cows> (or 'undo' / 'quit')")
            continue
        try:
            fb = feedback_from_counts(int(parts[0]), int(parts[1]))
        except ValueError as exc:
            print(f"invalid feedback: {exc}")
            continue
        history.append((sg.guess, fb))
        remaining = filter_remaining(remaining, sg.guess, fb)
        turn += 1
        if fb.bulls == 4:
            print(f"Solved in {len(history)} guesses.")
            return 0
        if turn > args.max_turns:
            print("Turn limit reached.")
            return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    static = args.static
    if static is None:
        default = os.path.join(os.path.dirname(__file__), "..", "..", "frontend", "dist")
        static = default if os.path.isdir(default) else None
    app = create_app(static_dir=static)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


COMMANDS = {
    "evaluate": cmd_evaluate,
    "tree": cmd_tree,
    "optimize": cmd_optimize,
    "assist": cmd_assist,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (WeightParseError, InvalidCodeError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvariantViolation, DepthExceededError, EmptyStateError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
