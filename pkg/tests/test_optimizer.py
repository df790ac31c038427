import numpy as np
import pytest

from mmind import optimizer as ga
from mmind.optimizer import (
    GAConfig,
    InvalidGenomeError,
    evolve,
    fitness,
    genome_to_policy,
    seed_population,
    staged_paper_genome,
)
from mmind.weights_io import FIXED_PAPER


class TestConfig:
    def test_genome_lengths(self):
        assert GAConfig(mode="fixed").genome_length == 14
        assert GAConfig(mode="staged").genome_length == 84
        assert GAConfig(mode="staged", force_opening=True).genome_length == 70

    def test_invalid_configs(self):
        with pytest.raises(ValueError):
            GAConfig(mode="annealed")
        with pytest.raises(ValueError):
            GAConfig(elite_count=64, population_size=64)
        with pytest.raises(ValueError):
            GAConfig(mode="fixed", force_opening=True)


class TestFitness:
    def test_fixed_paper_genome(self):
        cfg = GAConfig(mode="fixed")
        rec = fitness(np.array(FIXED_PAPER), cfg)
        assert rec.total_guesses == 5646
        assert rec.maximum == 5
        assert rec.average == pytest.approx(5646 / 1296)

    def test_staged_paper_genome_with_forced_opening(self):
        cfg = GAConfig(mode="staged", force_opening=True)
        rec = fitness(staged_paper_genome(cfg), cfg)
        assert rec.total_guesses == 5636
        assert rec.maximum == 6

    def test_all_ones_fixed_equals_shannon(self):
        from mmind.strategy import evaluate_all
        from mmind.weights_io import make_policy

        cfg = GAConfig(mode="fixed")
        rec = fitness(np.ones(14), cfg)
        stats = evaluate_all(make_policy("shannon"))
        assert rec.total_guesses == stats.total_guesses
        assert rec.maximum == stats.maximum

    def test_out_of_bounds_genome_rejected(self):
        cfg = GAConfig(mode="fixed")
        with pytest.raises(InvalidGenomeError):
            fitness(np.full(14, 1.5), cfg)
        with pytest.raises(InvalidGenomeError):
            fitness(np.ones(84), cfg)

    def test_genome_policy_layout(self):
        cfg = GAConfig(mode="staged", force_opening=True)
        genome = staged_paper_genome(cfg)
        pol = genome_to_policy(genome, cfg)
        assert pol.forced_opening.display() == "1123"
        # turn 2 vector is the first 14 genes when turn 1 is forced
        assert pol.weights.per_turn[1].values == tuple(genome[:14])


class TestSeedPopulation:
    def test_size_and_bounds(self):
        cfg = GAConfig(seed=3)
        pop = seed_population(cfg)
        assert pop.shape == (64, 84)
        assert (pop >= 0.1).all() and (pop <= 1.0).all()

    def test_anchor_included_verbatim(self):
        cfg = GAConfig(mode="staged", force_opening=True, seed=3)
        anchor = staged_paper_genome(cfg)
        pop = seed_population(cfg, anchors=[anchor])
        assert (pop[0] == anchor).all()

    def test_invalid_anchor_rejected(self):
        cfg = GAConfig(mode="staged")
        with pytest.raises(InvalidGenomeError):
            seed_population(cfg, anchors=[np.ones(14)])

    def test_bounds_over_many_draws(self):
        cfg = GAConfig(mode="fixed", seed=99, population_size=720)
        pop = seed_population(cfg)  # ~10k genes
        assert pop.size >= 10_000
        assert (pop >= 0.1).all() and (pop <= 1.0).all()


class TestEvolve:
    def test_short_run_properties(self):
        cfg = GAConfig(mode="fixed", seed=11)
        res = evolve(cfg, generations=8)
        totals = [r.total_guesses for r in res.history]
        assert len(totals) == 8
        assert all(a >= b for a, b in zip(totals, totals[1:]))
        assert res.best_fitness.total_guesses == totals[-1]

    def test_reproducible_from_seed(self):
        cfg = GAConfig(mode="fixed", seed=21)
        r1 = evolve(cfg, generations=6)
        r2 = evolve(cfg, generations=6)
        assert [r.total_guesses for r in r1.history] == [r.total_guesses for r in r2.history]
        assert (r1.best_genome == r2.best_genome).all()

    def test_stagnation_restart_keeps_elite(self):
        cfg = GAConfig(mode="fixed", seed=5, stagnation_limit=2,
                       population_size=8, elite_count=2)
        res = evolve(cfg, generations=12)
        assert res.restarts >= 1
        totals = [r.total_guesses for r in res.history]
        assert all(a >= b for a, b in zip(totals, totals[1:]))

    def test_anchored_run_never_worse_than_anchor(self):
        cfg = GAConfig(mode="staged", force_opening=True, seed=1)
        anchor = staged_paper_genome(cfg)
        pop = seed_population(cfg, anchors=[anchor])
        res = evolve(cfg, initial=pop, generations=5)
        assert res.best_fitness.total_guesses <= 5636


class TestCheckpoint:
    def test_checkpoint_round_trip(self):
        cfg = GAConfig(mode="fixed", seed=4)
        res = evolve(cfg, generations=2)
        text = ga.checkpoint_text(res, None, cfg)
        lines = text.splitlines()
        assert lines[0] == f"generation 2 seed 4"
        parsed = np.array([float(v) for v in lines[1].split()])
        assert (parsed == res.best_genome).all()

    def test_progress_csv(self):
        rec = ga.FitnessRecord(5700, 5700 / 1296, 6, 0)
        assert ga.progress_csv_header() == "generation,bestTotalGuesses,bestAverage,bestMax\n"
        assert ga.progress_csv_row(3, rec) == "3,5700,4.398148,6\n"
