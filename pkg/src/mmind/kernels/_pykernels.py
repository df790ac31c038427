"""Pure-Python (numpy) implementations of the hot kernels.

Fallback backend when the compiled extension is unavailable; also the
reference the extension is checked against. Same function contracts as
`_ckernels`.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

TIE_TOL = 1e-9  # two scores tie when |a - b| <= TIE_TOL (absolute)

# score kinds
KIND_WEIGHTED = 0  # utility-weighted Shannon entropy
KIND_KNUTH = 1  # minus the largest partition bucket
KIND_MOST_PARTS = 2  # number of non-empty buckets


def build_table(pegs: np.ndarray, c: int, fb_lookup: np.ndarray) -> np.ndarray:
    """Full pairwise feedback-index table, uint8 (S, S)."""
    S, n = pegs.shape
    bulls = np.zeros((S, S), dtype=np.int8)
    for j in range(n):
        col = pegs[:, j]
        bulls += col[:, None] == col[None, :]
    color_counts = np.empty((S, c), dtype=np.int8)
    for col in range(c):
        color_counts[:, col] = (pegs == col).sum(axis=1)
    matches = np.zeros((S, S), dtype=np.int8)
    for col in range(c):
        cc = color_counts[:, col]
        matches += np.minimum(cc[:, None], cc[None, :])
    idx = fb_lookup[bulls, matches - bulls]
    if (idx < 0).any():
        raise AssertionError("feedback lookup produced an invalid pair")
    return idx.astype(np.uint8)


def partition_matrix(table: np.ndarray, remaining: np.ndarray, nfb: int) -> np.ndarray:
    """(S, nfb) int64 matrix: row g = partition counts of `remaining` under guess g."""
    S = table.shape[0]
    sub = table[:, remaining].astype(np.int64)
    sub += nfb * np.arange(S)[:, None]
    return np.bincount(sub.ravel(), minlength=nfb * S).reshape(S, nfb)


def guess_scores(
    table: np.ndarray,
    remaining: np.ndarray,
    kind: int,
    weights: np.ndarray,
) -> np.ndarray:
    """Score every code in the full space against `remaining`, float64 (S,)."""
    nfb = weights.shape[0]
    m = remaining.shape[0]
    counts = partition_matrix(table, remaining, nfb)
    if kind == KIND_KNUTH:
        return -counts.max(axis=1).astype(np.float64)
    if kind == KIND_MOST_PARTS:
        return (counts > 0).sum(axis=1).astype(np.float64)
    probs = counts / m
    terms = np.zeros_like(probs)
    nz = counts > 0
    terms[nz] = probs[nz] * np.log2(probs[nz])
    return -(terms @ weights)


def select_index(scores: np.ndarray, member: np.ndarray, tol: float = TIE_TOL) -> int:
    """Argmax with the tie cascade: score, then consistency, then lowest index."""
    tie = scores >= scores.max() - tol
    consistent = tie & member
    return int(np.argmax(consistent if consistent.any() else tie))


def play_all(
    table: np.ndarray,
    kind: int,
    weights: np.ndarray,
    forced_opening: int,
    max_turns: int,
) -> np.ndarray:
    """Play every secret to completion; int32 (S,) turns used, 0 = unsolved.

    `weights` is (T, nfb); turn t uses row min(t, T) - 1, so a 1-row array
    gives a fixed vector and a 6-row array gives stage weights with
    turn-6 reuse past the end.
    """
    S = table.shape[0]
    nfb = weights.shape[1]
    solved_idx = nfb - 1
    turns = np.zeros(S, dtype=np.int32)
    member = np.zeros(S, dtype=bool)

    def expand(rem: np.ndarray, turn: int) -> None:
        if turn > max_turns:
            return
        if rem.shape[0] == 1:
            # every guess scores identically on a singleton; the consistency
            # tie-break selects the one remaining code
            turns[rem[0]] = turn
            return
        if forced_opening >= 0 and turn == 1:
            g = forced_opening
        else:
            w = weights[min(turn, weights.shape[0]) - 1]
            scores = guess_scores(table, rem, kind, w)
            member[:] = False
            member[rem] = True
            g = select_index(scores, member)
        fb = table[g, rem]
        for f in np.unique(fb):
            if f == solved_idx:
                turns[g] = turn
            else:
                expand(rem[fb == f], turn + 1)

    expand(np.arange(S, dtype=np.int64), 1)
    return turns
