"""Guess scoring and selection: weighted entropy, baselines, tie-breaking.

Selection scans all 1296 candidate guesses (not just the remaining set) and
applies the tie cascade: higher score, then consistent beats inconsistent,
then smallest code index. Scores within SCORE_TIE_TOL of the maximum count
as tied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import kernels
from .rules import (
    MM46,
    Code,
    EmptyStateError,
    Feedback,
    GameParams,
    PartitionCounts,
    decode,
    feedback_table,
)

SCORE_TIE_TOL = kernels.TIE_TOL


@dataclass(frozen=True)
class WeightVector:
    values: tuple[float, ...]

    def __post_init__(self):
        if any(v <= 0 for v in self.values):
            raise ValueError("weights must be positive")

    @classmethod
    def of(cls, values) -> "WeightVector":
        return cls(tuple(float(v) for v in values))

    @classmethod
    def uniform(cls, nfb: int = 14) -> "WeightVector":
        return cls((1.0,) * nfb)

    def scaled(self, factor: float) -> "WeightVector":
        return WeightVector(tuple(v * factor for v in self.values))


@dataclass(frozen=True)
class StageWeights:
    per_turn: tuple[WeightVector, ...]  # turns 1..6; later turns reuse the last

    def __post_init__(self):
        if len(self.per_turn) != 6:
            raise ValueError(f"expected 6 per-turn vectors, got {len(self.per_turn)}")

    def for_turn(self, turn: int) -> WeightVector:
        return self.per_turn[min(turn, len(self.per_turn)) - 1]


class PolicyKind(Enum):
    FIXED_WEIGHT = "fixed-weight"
    STAGE_WEIGHT = "stage-weight"
    SHANNON = "shannon-uniform"
    KNUTH = "knuth-minimax"
    MOST_PARTS = "most-parts"


@dataclass(frozen=True)
class Policy:
    kind: PolicyKind
    weights: WeightVector | StageWeights | None = None
    forced_opening: Code | None = None

    def __post_init__(self):
        if self.kind is PolicyKind.FIXED_WEIGHT and not isinstance(self.weights, WeightVector):
            raise ValueError("fixed-weight policy needs a WeightVector")
        if self.kind is PolicyKind.STAGE_WEIGHT and not isinstance(self.weights, StageWeights):
            raise ValueError("stage-weight policy needs StageWeights")
        if self.kind in (PolicyKind.SHANNON, PolicyKind.KNUTH, PolicyKind.MOST_PARTS):
            if self.weights is not None:
                raise ValueError(f"{self.kind.value} policy carries no weights")

    def kernel_args(self, params: GameParams = MM46) -> tuple[int, np.ndarray]:
        """(kind code, per-turn weight matrix) as consumed by the kernels."""
        nfb = params.feedback_count
        if self.kind is PolicyKind.FIXED_WEIGHT:
            return kernels.KIND_WEIGHTED, np.array([self.weights.values], dtype=np.float64)
        if self.kind is PolicyKind.STAGE_WEIGHT:
            rows = [wv.values for wv in self.weights.per_turn]
            return kernels.KIND_WEIGHTED, np.array(rows, dtype=np.float64)
        ones = np.ones((1, nfb), dtype=np.float64)
        if self.kind is PolicyKind.SHANNON:
            return kernels.KIND_WEIGHTED, ones
        if self.kind is PolicyKind.KNUTH:
            return kernels.KIND_KNUTH, ones
        return kernels.KIND_MOST_PARTS, ones


@dataclass(frozen=True)
class ScoredGuess:
    guess: Code
    score: float
    consistent: bool


def weighted_entropy_score(counts: PartitionCounts, weights: WeightVector) -> float:
    """-sum w_i p_i log2 p_i over non-empty buckets (0 log 0 taken as 0)."""
    if counts.total <= 0:
        raise EmptyStateError("cannot score an empty partition")
    if len(weights.values) != len(counts.counts):
        raise ValueError("weight/partition length mismatch")
    score = 0.0
    for c, w in zip(counts.counts, weights.values):
        if c > 0:
            p = c / counts.total
            score -= w * p * math.log2(p)
    return score


def baseline_score(counts: PartitionCounts, kind: PolicyKind) -> float:
    if counts.total <= 0:
        raise EmptyStateError("cannot score an empty partition")
    if kind is PolicyKind.SHANNON:
        return weighted_entropy_score(counts, WeightVector.uniform(len(counts.counts)))
    if kind is PolicyKind.KNUTH:
        return -float(max(counts.counts))
    if kind is PolicyKind.MOST_PARTS:
        return float(sum(1 for c in counts.counts if c > 0))
    raise ValueError(f"{kind} is not a baseline")


def policy_score(counts: PartitionCounts, policy: Policy, turn: int) -> float:
    """Score a single partition under the policy's turn-`turn` rule."""
    if policy.kind is PolicyKind.FIXED_WEIGHT:
        return weighted_entropy_score(counts, policy.weights)
    if policy.kind is PolicyKind.STAGE_WEIGHT:
        return weighted_entropy_score(counts, policy.weights.for_turn(turn))
    return baseline_score(counts, policy.kind)


def select_guess(remaining, turn: int, policy: Policy, params: GameParams = MM46) -> ScoredGuess:
    """Best guess over the full code space for the given remaining set.

    `remaining` is an array of code indices. Deterministic: identical inputs
    always produce the identical guess.
    """
    rem = np.asarray(remaining, dtype=np.int64)
    if rem.size == 0:
        raise EmptyStateError("remaining set is empty")
    if turn < 1:
        raise ValueError("turn numbers start at 1")
    table = feedback_table(params)
    kind, wmat = policy.kernel_args(params)
    member = np.zeros(params.code_count, dtype=np.uint8)
    member[rem] = 1
    if policy.forced_opening is not None and turn == 1:
        g = policy.forced_opening.index
        scores = kernels.guess_scores(table, rem, kind, wmat[0])
    else:
        w = wmat[min(turn, wmat.shape[0]) - 1]
        scores = kernels.guess_scores(table, rem, kind, w)
        g = kernels.select_index(scores, member)
    return ScoredGuess(decode(g, params), float(scores[g]), bool(member[g]))


def filter_remaining(remaining, guess: Code, observed: Feedback, params: GameParams = MM46) -> np.ndarray:
    """Codes in `remaining` consistent with the observed feedback; may be empty."""
    rem = np.asarray(remaining, dtype=np.int64)
    if rem.size == 0:
        raise EmptyStateError("remaining set is empty")
    table = feedback_table(params)
    return rem[table[guess.index, rem] == observed.idx]


def full_space(params: GameParams = MM46) -> np.ndarray:
    return np.arange(params.code_count, dtype=np.int64)
