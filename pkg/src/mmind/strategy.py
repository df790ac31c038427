"""Deterministic play, exhaustive evaluation over all secrets, strategy trees.

`evaluate_all` runs the full-space recursion in the kernel backend (games
with a common guess prefix share their scoring work); `play_game` is the
straight-line per-secret version, and the two are required to agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .heuristics import Policy, filter_remaining, full_space, select_guess
from .rules import MM46, Code, Feedback, GameParams, decode, feedback_list, feedback_table, parse_display


class InvariantViolation(RuntimeError):
    pass


class DepthExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class Move:
    guess: Code
    feedback: Feedback
    remaining_after: int


@dataclass(frozen=True)
class Transcript:
    moves: tuple[Move, ...]
    solved_in: int | None  # None = unsolved within maxTurns


@dataclass(frozen=True)
class GameStats:
    histogram: dict[int, int]  # turn count -> number of secrets
    total_guesses: int
    average: float
    maximum: int
    unsolved: int


def play_game(secret: Code, policy: Policy, max_turns: int = 10,
              params: GameParams = MM46) -> Transcript:
    if max_turns < 1:
        raise ValueError("max_turns must be >= 1")
    remaining = full_space(params)
    moves = []
    for turn in range(1, max_turns + 1):
        sg = select_guess(remaining, turn, policy, params)
        fb = feedback_list(params)[feedback_table(params)[sg.guess.index, secret.index]]
        remaining = filter_remaining(remaining, sg.guess, fb, params)
        moves.append(Move(sg.guess, fb, int(remaining.size)))
        if fb.bulls == params.n:
            return Transcript(tuple(moves), turn)
        if remaining.size == 0:
            raise InvariantViolation(
                f"remaining set emptied while unsolved (secret {secret}, turn {turn})"
            )
    return Transcript(tuple(moves), None)


def evaluate_all(policy: Policy, max_turns: int = 10,
                 params: GameParams = MM46) -> GameStats:
    """Play every secret; aggregate the turn-count histogram."""
    turns = play_all_turns(policy, max_turns, params)
    return stats_from_turns(turns)


def play_all_turns(policy: Policy, max_turns: int = 10,
                   params: GameParams = MM46) -> np.ndarray:
    """Per-secret turn counts over the full space; 0 marks unsolved."""
    table = feedback_table(params)
    kind, wmat = policy.kernel_args(params)
    forced = policy.forced_opening.index if policy.forced_opening is not None else -1
    return kernels.play_all(table, kind, wmat, forced, max_turns)


def stats_from_turns(turns: np.ndarray) -> GameStats:
    solved = turns[turns > 0]
    unsolved = int((turns == 0).sum())
    hist = {int(t): int(n) for t, n in zip(*np.unique(solved, return_counts=True))}
    total = int(solved.sum())
    return GameStats(
        histogram=hist,
        total_guesses=total,
        average=total / solved.size if solved.size else float("nan"),
        maximum=int(solved.max()) if solved.size else 0,
        unsolved=unsolved,
    )


@dataclass
class TreeNode:
    guess: Code
    children: dict[int, "TreeNode"] = field(default_factory=dict)

    def depth(self) -> int:
        if not self.children:
            return 1
        return 1 + max(child.depth() for child in self.children.values())


def build_tree(policy: Policy, max_depth: int = 10,
               params: GameParams = MM46) -> TreeNode:
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    table = feedback_table(params)
    fbs = feedback_list(params)
    solved_idx = params.feedback_count - 1

    def expand(remaining: np.ndarray, depth: int, path: tuple[str, ...]) -> TreeNode:
        sg = select_guess(remaining, depth, policy, params)
        node = TreeNode(sg.guess)
        fb = table[sg.guess.index, remaining]
        for f in np.unique(fb):
            if f == solved_idx:
                continue
            if depth >= max_depth:
                raise DepthExceededError(
                    "depth bound exceeded at branch "
                    + " -> ".join(path + (f"{sg.guess} {fbs[f].label()}",))
                )
            node.children[int(f)] = expand(
                remaining[fb == f], depth + 1, path + (f"{sg.guess} {fbs[f].label()}",)
            )
        return node

    return expand(full_space(params), 1, ())


def tree_play(tree: TreeNode, secret: Code, params: GameParams = MM46) -> tuple[Code, ...]:
    """Guess sequence the tree produces against one secret."""
    table = feedback_table(params)
    solved_idx = params.feedback_count - 1
    node = tree
    guesses = []
    while True:
        guesses.append(node.guess)
        f = int(table[node.guess.index, secret.index])
        if f == solved_idx:
            return tuple(guesses)
        child = node.children.get(f)
        if child is None:
            raise InvariantViolation(
                f"tree has no branch for {node.guess} -> {feedback_list(params)[f].label()}"
            )
        node = child


def serialize_tree(tree: TreeNode, params: GameParams = MM46) -> str:
    fbs = feedback_list(params)
    lines = []

    def emit(node: TreeNode, depth: int, edge: int | None) -> None:
        prefix = "  " * depth
        if edge is None:
            lines.append(f"{prefix}{node.guess.display()}")
        else:
            lines.append(f"{prefix}{node.guess.display()} | {fbs[edge].label()}")
        for f in sorted(node.children):
            emit(node.children[f], depth + 1, f)

    emit(tree, 0, None)
    return "\n".join(lines) + "\n"


def parse_tree(text: str, params: GameParams = MM46) -> TreeNode:
    label_to_idx = {f.label(): f.idx for f in feedback_list(params)}
    root: TreeNode | None = None
    stack: list[TreeNode] = []  # stack[d] = last node at depth d
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        stripped = raw.lstrip(" ")
        indent = len(raw) - len(stripped)
        if indent % 2 != 0:
            raise ValueError(f"line {lineno}: odd indentation")
        depth = indent // 2
        if "|" in stripped:
            code_part, _, label = stripped.partition("|")
            edge = label_to_idx.get(label.strip())
            if edge is None:
                raise ValueError(f"line {lineno}: bad feedback label {label.strip()!r}")
        else:
            code_part, edge = stripped, None
        node = TreeNode(parse_display(code_part.strip(), params))
        if depth == 0:
            if edge is not None or root is not None:
                raise ValueError(f"line {lineno}: unexpected root line")
            root = node
            stack = [node]
        else:
            if edge is None or depth > len(stack) - 1 + 1 or depth - 1 >= len(stack):
                raise ValueError(f"line {lineno}: malformed tree structure")
            stack = stack[:depth]
            stack[depth - 1].children[edge] = node
            stack.append(node)
    if root is None:
        raise ValueError("empty tree text")
    return root


def stats_text(stats: GameStats) -> str:
    lines = ["turns  secrets", "-----  -------"]
    for t in sorted(stats.histogram):
        lines.append(f"{t:>5}  {stats.histogram[t]:>7}")
    if stats.unsolved:
        lines.append(f" >max  {stats.unsolved:>7} (unsolved)")
    lines.append("")
    lines.append(f"total guesses: {stats.total_guesses}")
    lines.append(f"average: {stats.average:.4f}")
    lines.append(f"max: {stats.maximum}")
    return "\n".join(lines) + "\n"


def stats_csv(stats: GameStats) -> str:
    lines = ["turns,count"]
    for t in sorted(stats.histogram):
        lines.append(f"{t},{stats.histogram[t]}")
    if stats.unsolved:
        lines.append(f"unsolved,{stats.unsolved}")
    lines.append(f"average,{stats.average:.4f}")
    lines.append(f"max,{stats.maximum}")
    return "\n".join(lines) + "\n"
