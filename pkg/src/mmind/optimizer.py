"""Genetic-algorithm search over entropy weight vectors.

Generational GA with elitism, tournament selection, per-gene uniform
crossover, bounded mutation, and a stagnation restart that re-randomizes
everything but the elite. Fitness = total guesses over all 1296 games,
lower is better, with a fixed penalty per unsolved game.

The published methodology leaves the mutation operator, mutation rate,
tournament size, and restart scope unspecified; the defaults here
(additive uniform mutation in [-0.1, 0.1] at rate 0.05, tournament of 3,
restart keeping the top 10) are this implementation's choices and are all
configurable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .heuristics import Policy, PolicyKind, StageWeights, WeightVector
from .rules import MM46, parse_display
from .strategy import play_all_turns
from .weights_io import STANDARD_OPENING

GENE_MIN = 0.1
GENE_MAX = 1.0

NUM_FEEDBACK = MM46.feedback_count
NUM_STAGES = 6


class InvalidGenomeError(ValueError):
    pass


@dataclass(frozen=True)
class GAConfig:
    mode: str = "staged"  # "fixed" | "staged"
    force_opening: bool = False  # pin turn 1 to '1123' (drops its 14 genes)
    population_size: int = 64
    elite_count: int = 10
    tournament_size: int = 3
    crossover_rate: float = 0.5  # per-gene chance of taking parent B's gene
    mutation_rate: float = 0.05
    mutation_step: float = 0.1
    stagnation_limit: int = 250
    max_generations: int = 50_000
    seed: int = 0
    max_turns: int = 10
    unsolved_penalty: int = 5  # each unsolved game costs max_turns + this

    def __post_init__(self):
        if self.mode not in ("fixed", "staged"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "fixed" and self.force_opening:
            raise ValueError("forced opening applies to staged mode only")
        if not 0 < self.elite_count < self.population_size:
            raise ValueError("need 0 < elite_count < population_size")
        if self.stagnation_limit < 1:
            raise ValueError("stagnation_limit must be >= 1")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")

    @property
    def genome_length(self) -> int:
        if self.mode == "fixed":
            return NUM_FEEDBACK
        stages = NUM_STAGES - (1 if self.force_opening else 0)
        return stages * NUM_FEEDBACK


@dataclass(frozen=True)
class FitnessRecord:
    total_guesses: int
    average: float
    maximum: int
    unsolved: int

    def key(self) -> tuple[int, int]:
        # integer comparison avoids float ties; lower is better
        return (self.total_guesses, self.maximum)


def validate_genome(genome: np.ndarray, config: GAConfig) -> np.ndarray:
    genome = np.asarray(genome, dtype=np.float64)
    if genome.shape != (config.genome_length,):
        raise InvalidGenomeError(
            f"expected {config.genome_length} genes for mode={config.mode}"
            f"{' (forced opening)' if config.force_opening else ''}, got {genome.shape}"
        )
    if (genome < GENE_MIN).any() or (genome > GENE_MAX).any():
        raise InvalidGenomeError(f"genes must lie in [{GENE_MIN}, {GENE_MAX}]")
    return genome


def genome_to_policy(genome: np.ndarray, config: GAConfig) -> Policy:
    genome = validate_genome(genome, config)
    if config.mode == "fixed":
        return Policy(PolicyKind.FIXED_WEIGHT, WeightVector.of(genome))
    rows = list(genome.reshape(-1, NUM_FEEDBACK))
    opening = None
    if config.force_opening:
        # turn 1 never scores, so its weights are arbitrary; use ones
        rows.insert(0, np.ones(NUM_FEEDBACK))
        opening = parse_display(STANDARD_OPENING)
    stage = StageWeights(tuple(WeightVector.of(r) for r in rows))
    return Policy(PolicyKind.STAGE_WEIGHT, stage, opening)


def fitness(genome: np.ndarray, config: GAConfig) -> FitnessRecord:
    policy = genome_to_policy(genome, config)
    turns = play_all_turns(policy, config.max_turns)
    solved = turns[turns > 0]
    unsolved = int((turns == 0).sum())
    penalty_cost = config.max_turns + config.unsolved_penalty
    total = int(solved.sum()) + unsolved * penalty_cost
    maximum = int(solved.max()) if solved.size else 0
    if unsolved:
        maximum = penalty_cost
    return FitnessRecord(
        total_guesses=total,
        average=total / turns.size,
        maximum=maximum,
        unsolved=unsolved,
    )


def _worker_count() -> int:
    # MMIND_THREADS=1 forces fully sequential execution
    raw = os.environ.get("MMIND_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _fitness_map(genomes, config: GAConfig) -> list[FitnessRecord]:
    """Evaluate a batch; results are in input order regardless of scheduling.

    Fitness is a pure function and the compiled kernel releases the GIL, so
    threads neither perturb results nor need per-slot RNG state.
    """
    workers = _worker_count()
    if workers == 1 or len(genomes) <= 1:
        return [fitness(g, config) for g in genomes]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda g: fitness(g, config), genomes))


def seed_population(config: GAConfig, anchors=None, rng: np.random.Generator | None = None) -> np.ndarray:
    """(population_size, genome_length) array: anchors verbatim, rest uniform."""
    anchors = [validate_genome(a, config) for a in (anchors or [])]
    if len(anchors) > config.population_size:
        raise InvalidGenomeError("more anchors than population slots")
    if rng is None:
        rng = np.random.default_rng(config.seed)
    pop = rng.uniform(GENE_MIN, GENE_MAX, size=(config.population_size, config.genome_length))
    for i, a in enumerate(anchors):
        pop[i] = a
    return pop


@dataclass
class GAResult:
    best_genome: np.ndarray
    best_fitness: FitnessRecord
    history: list[FitnessRecord] = field(default_factory=list)  # per-generation best
    generations: int = 0
    restarts: int = 0
    final_population: np.ndarray | None = None


def _tournament(rng: np.random.Generator, keys: list, size: int) -> int:
    contenders = rng.integers(0, len(keys), size=size)
    best = contenders[0]
    for idx in contenders[1:]:
        if keys[idx] < keys[best]:
            best = idx
    return int(best)


def evolve(config: GAConfig, initial: np.ndarray | None = None,
           generations: int | None = None,
           progress=None) -> GAResult:
    """Run the GA; fully reproducible from (config, initial).

    `progress`, if given, is called as progress(generation, best_record)
    after each generation.
    """
    rng = np.random.default_rng(config.seed)
    if initial is None:
        pop = seed_population(config, rng=rng)
    else:
        pop = np.array([validate_genome(g, config) for g in initial])
        if pop.shape[0] != config.population_size:
            raise InvalidGenomeError("initial population has wrong size")
    if generations is None:
        generations = config.max_generations

    records = _fitness_map(pop, config)
    result = GAResult(best_genome=pop[0].copy(), best_fitness=records[0])
    stale = 0

    for gen in range(1, generations + 1):
        order = sorted(range(len(records)), key=lambda i: (records[i].key(), i))
        best_idx = order[0]
        if records[best_idx].key() < result.best_fitness.key():
            result.best_fitness = records[best_idx]
            result.best_genome = pop[best_idx].copy()
            stale = 0
        else:
            stale += 1

        result.history.append(result.best_fitness)
        result.generations = gen
        if progress is not None:
            progress(gen, result.best_fitness)
        if gen == generations:
            break

        elites = [pop[i].copy() for i in order[: config.elite_count]]
        elite_records = [records[i] for i in order[: config.elite_count]]
        keys = [records[i].key() for i in range(len(records))]

        if stale >= config.stagnation_limit:
            fresh = rng.uniform(
                GENE_MIN, GENE_MAX,
                size=(config.population_size - config.elite_count, config.genome_length),
            )
            pop = np.vstack([elites, fresh])
            records = elite_records + _fitness_map(fresh, config)
            result.restarts += 1
            stale = 0
            continue

        offspring = []
        for _ in range(config.population_size - config.elite_count):
            pa = pop[_tournament(rng, keys, config.tournament_size)]
            pb = pop[_tournament(rng, keys, config.tournament_size)]
            take_b = rng.random(config.genome_length) < config.crossover_rate
            child = np.where(take_b, pb, pa)
            mutate = rng.random(config.genome_length) < config.mutation_rate
            steps = rng.uniform(-config.mutation_step, config.mutation_step,
                                size=config.genome_length)
            child = np.where(mutate, child + steps, child)
            offspring.append(np.clip(child, GENE_MIN, GENE_MAX))
        pop = np.vstack([elites, offspring])
        records = elite_records + _fitness_map(offspring, config)

    result.final_population = pop
    return result


def staged_paper_genome(config: GAConfig) -> np.ndarray:
    """The bundled stage weights flattened into this config's gene layout."""
    from .weights_io import STAGED_PAPER

    rows = STAGED_PAPER[1:] if config.force_opening else STAGED_PAPER
    return np.array([v for row in rows for v in row], dtype=np.float64)


def checkpoint_text(result: GAResult, pop_or_none: np.ndarray | None, config: GAConfig) -> str:
    """Plain-text checkpoint: header line, then genomes, best first."""
    lines = [f"generation {result.generations} seed {config.seed}"]
    lines.append(" ".join(repr(float(v)) for v in result.best_genome))
    if pop_or_none is not None:
        for g in pop_or_none:
            lines.append(" ".join(repr(float(v)) for v in g))
    return "\n".join(lines) + "\n"


def progress_csv_header() -> str:
    return "generation,bestTotalGuesses,bestAverage,bestMax\n"


def progress_csv_row(generation: int, rec: FitnessRecord) -> str:
    return f"{generation},{rec.total_guesses},{rec.average:.6f},{rec.maximum}\n"
