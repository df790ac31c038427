"""Game mechanics for MM(n,c): codes, feedback marking, feedback enumeration.

Everything here is generic over (n, c) but the rest of the package pins
MM(4,6). Colors are 0-based internally; display is 1-based digits, so the
classic opening written '1123' is pegs (0, 0, 1, 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class InvalidCodeError(ValueError):
    pass


class EmptyStateError(ValueError):
    """Raised when an operation needs a non-empty remaining set."""


class ResourceError(RuntimeError):
    pass


@dataclass(frozen=True)
class GameParams:
    n: int = 4
    c: int = 6

    def __post_init__(self):
        if self.n < 1 or self.c < 1:
            raise ValueError(f"need n >= 1 and c >= 1, got n={self.n} c={self.c}")

    @property
    def code_count(self) -> int:
        return self.c**self.n

    @property
    def feedback_count(self) -> int:
        # valid (bulls, cows) pairs: bulls + cows <= n minus the impossible
        # (n-1 bulls, 1 cow); closed form n(n+3)/2
        return self.n * (self.n + 3) // 2


MM46 = GameParams(4, 6)


@dataclass(frozen=True)
class Code:
    pegs: tuple[int, ...]
    index: int

    def display(self) -> str:
        """1-based digit string, e.g. pegs (0,0,1,2) -> '1123'."""
        return "".join(str(p + 1) for p in self.pegs)

    def __str__(self) -> str:
        return self.display()


def encode(pegs, params: GameParams = MM46) -> Code:
    pegs = tuple(int(p) for p in pegs)
    if len(pegs) != params.n:
        raise InvalidCodeError(f"expected {params.n} pegs, got {len(pegs)}")
    if any(p < 0 or p >= params.c for p in pegs):
        raise InvalidCodeError(f"peg out of range 0..{params.c - 1}: {pegs}")
    index = 0
    for p in pegs:
        index = index * params.c + p
    return Code(pegs, index)


def decode(index: int, params: GameParams = MM46) -> Code:
    if index < 0 or index >= params.code_count:
        raise InvalidCodeError(f"index {index} outside 0..{params.code_count - 1}")
    pegs = []
    rest = index
    for _ in range(params.n):
        pegs.append(rest % params.c)
        rest //= params.c
    return Code(tuple(reversed(pegs)), index)


def parse_display(text: str, params: GameParams = MM46) -> Code:
    """Parse a 1-based digit string like '1123'."""
    if len(text) != params.n or not text.isdigit():
        raise InvalidCodeError(f"expected {params.n} digits, got {text!r}")
    return encode(tuple(int(ch) - 1 for ch in text), params)


@dataclass(frozen=True)
class Feedback:
    bulls: int
    cows: int
    idx: int

    def label(self) -> str:
        return f"{self.bulls}B{self.cows}C"

    def __str__(self) -> str:
        return f"{self.bulls}B-{self.cows}C"


@lru_cache(maxsize=None)
def feedback_list(params: GameParams = MM46) -> tuple[Feedback, ...]:
    """All valid feedbacks, ascending by bulls then cows (canonical index order)."""
    out = []
    for b in range(params.n + 1):
        for c in range(params.n - b + 1):
            if b == params.n - 1 and c == 1:
                continue
            out.append(Feedback(b, c, len(out)))
    return tuple(out)


def feedback_count(params: GameParams = MM46) -> int:
    return params.feedback_count


@lru_cache(maxsize=None)
def _feedback_index_map(params: GameParams) -> dict[tuple[int, int], int]:
    return {(f.bulls, f.cows): f.idx for f in feedback_list(params)}


def feedback_from_counts(bulls: int, cows: int, params: GameParams = MM46) -> Feedback:
    idx = _feedback_index_map(params).get((bulls, cows))
    if idx is None:
        raise ValueError(f"invalid feedback {bulls}B-{cows}C for n={params.n}")
    return feedback_list(params)[idx]


def mark(g: Code, s: Code, params: GameParams = MM46) -> Feedback:
    """Bulls = positional matches; cows = min color-count matches minus bulls."""
    bulls = sum(1 for a, b in zip(g.pegs, s.pegs) if a == b)
    gc = [0] * params.c
    sc = [0] * params.c
    for a in g.pegs:
        gc[a] += 1
    for b in s.pegs:
        sc[b] += 1
    matches = sum(min(a, b) for a, b in zip(gc, sc))
    return feedback_from_counts(bulls, matches - bulls, params)


@lru_cache(maxsize=None)
def all_pegs(params: GameParams = MM46) -> np.ndarray:
    """(code_count, n) int8 array of pegs, row i = decode(i).pegs."""
    total = params.code_count
    arr = np.empty((total, params.n), dtype=np.int8)
    rng = np.arange(total)
    for j in range(params.n):
        arr[:, params.n - 1 - j] = (rng // params.c**j) % params.c
    return arr


@lru_cache(maxsize=None)
def feedback_index_lookup(params: GameParams = MM46) -> np.ndarray:
    """(n+1, n+1) int16 lookup: [bulls, cows] -> canonical index, -1 if invalid."""
    lut = np.full((params.n + 1, params.n + 1), -1, dtype=np.int16)
    for f in feedback_list(params):
        lut[f.bulls, f.cows] = f.idx
    lut.setflags(write=False)
    return lut


@dataclass(frozen=True)
class PartitionCounts:
    counts: tuple[int, ...]
    total: int


def partition_counts(g: Code, remaining, params: GameParams = MM46) -> PartitionCounts:
    """Bucket `remaining` codes by their feedback against guess g."""
    remaining = list(remaining)
    if not remaining:
        raise EmptyStateError("remaining set is empty")
    counts = [0] * params.feedback_count
    for s in remaining:
        counts[mark(g, s, params).idx] += 1
    return PartitionCounts(tuple(counts), len(remaining))


_TABLE_PAIR_BUDGET = 10**5  # max c^n; 1296^2 pairs is the intended scale


def build_feedback_table(params: GameParams = MM46) -> np.ndarray:
    """(c^n, c^n) uint8 table of feedback indices; table[g, s] = mark(g, s).idx.

    Built once per process via the selected kernel backend and shared
    read-only.
    """
    if params.code_count > _TABLE_PAIR_BUDGET:
        raise ResourceError(
            f"feedback table for c^n={params.code_count} exceeds budget {_TABLE_PAIR_BUDGET}"
        )
    from . import kernels

    return kernels.build_table(all_pegs(params), params.c, feedback_index_lookup(params))


_table_cache: dict[GameParams, np.ndarray] = {}


def feedback_table(params: GameParams = MM46) -> np.ndarray:
    tab = _table_cache.get(params)
    if tab is None:
        tab = build_feedback_table(params)
        tab.setflags(write=False)
        _table_cache[params] = tab
    return tab
