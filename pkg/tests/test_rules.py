import itertools

import numpy as np
import pytest

from mmind import rules
from mmind.rules import (
    MM46,
    Code,
    EmptyStateError,
    GameParams,
    InvalidCodeError,
    decode,
    encode,
    feedback_count,
    feedback_from_counts,
    feedback_list,
    mark,
    parse_display,
    partition_counts,
)


def code(text):
    return parse_display(text)


class TestEncoding:
    def test_minimal_and_maximal(self):
        assert encode((0, 0, 0, 0)).index == 0
        assert encode((5, 5, 5, 5)).index == 1295

    def test_mixed_radix(self):
        assert encode((0, 0, 1, 2)).index == 8

    def test_display_round_trip(self):
        assert code("1123").pegs == (0, 0, 1, 2)
        assert code("1123").display() == "1123"

    def test_bijection_over_full_space(self):
        seen = set()
        for pegs in itertools.product(range(6), repeat=4):
            c = encode(pegs)
            assert decode(c.index).pegs == pegs
            seen.add(c.index)
        assert seen == set(range(1296))

    def test_lexicographic_order_matches_index_order(self):
        all_pegs = sorted(itertools.product(range(6), repeat=4))
        indices = [encode(p).index for p in all_pegs]
        assert indices == sorted(indices)

    def test_invalid_codes_rejected(self):
        with pytest.raises(InvalidCodeError):
            encode((0, 0, 0))
        with pytest.raises(InvalidCodeError):
            encode((0, 0, 0, 6))
        with pytest.raises(InvalidCodeError):
            decode(1296)
        with pytest.raises(InvalidCodeError):
            parse_display("112")


class TestMark:
    def test_identity_is_all_bulls(self):
        fb = mark(code("1123"), code("1123"))
        assert (fb.bulls, fb.cows) == (4, 0)

    def test_disjoint_colors(self):
        fb = mark(code("1122"), code("3456"))
        assert (fb.bulls, fb.cows) == (0, 0)

    def test_all_cows(self):
        fb = mark(code("1234"), code("2143"))
        assert (fb.bulls, fb.cows) == (0, 4)

    def test_min_count_rule(self):
        fb = mark(code("1123"), code("2211"))
        assert (fb.bulls, fb.cows) == (0, 3)

    def test_symmetry_sample(self, rng):
        for _ in range(200):
            g = decode(int(rng.integers(1296)))
            s = decode(int(rng.integers(1296)))
            assert mark(g, s) == mark(s, g)


class TestFeedbackEnumeration:
    def test_count_for_standard_game(self):
        assert feedback_count(MM46) == 14

    def test_count_single_position(self):
        assert feedback_count(GameParams(1, 6)) == 2

    @pytest.mark.parametrize("n", range(1, 7))
    def test_formula_matches_enumeration(self, n):
        valid = [
            (b, c)
            for b in range(n + 1)
            for c in range(n - b + 1)
            if not (b == n - 1 and c == 1)
        ]
        assert len(valid) == feedback_count(GameParams(n, 6))
        # enumeration order is the canonical index order
        params = GameParams(n, 6)
        assert [(f.bulls, f.cows) for f in feedback_list(params)] == valid

    def test_canonical_order_for_mm46(self):
        labels = [str(f) for f in feedback_list(MM46)]
        assert labels[0] == "0B-0C"
        assert labels[5] == "1B-0C"
        assert labels[13] == "4B-0C"

    def test_impossible_pair_rejected(self):
        with pytest.raises(ValueError):
            feedback_from_counts(3, 1)
        with pytest.raises(ValueError):
            feedback_from_counts(4, 1)


class TestPartitionCounts:
    def test_singleton_remaining(self):
        g = code("1123")
        pc = partition_counts(g, [g])
        assert pc.total == 1
        assert pc.counts[13] == 1
        assert sum(pc.counts) == 1

    def test_full_space_completeness(self):
        g = code("1122")
        pc = partition_counts(g, [decode(i) for i in range(1296)])
        assert pc.total == 1296
        assert sum(pc.counts) == 1296

    def test_zero_bucket_count_for_1234(self):
        # secrets avoiding colors 1-4 entirely: 2^4 codes over {5, 6}
        pc = partition_counts(code("1234"), [decode(i) for i in range(1296)])
        assert pc.counts[0] == 16

    def test_empty_remaining_rejected(self):
        with pytest.raises(EmptyStateError):
            partition_counts(code("1234"), [])


class TestFeedbackTable:
    def test_diagonal_is_solved(self, table):
        assert (np.diag(table) == 13).all()

    def test_symmetric(self, table):
        assert (table == table.T).all()

    def test_spot_check_against_mark(self, table, rng):
        for _ in range(100):
            i, j = (int(x) for x in rng.integers(1296, size=2))
            assert table[i, j] == mark(decode(i), decode(j)).idx

    def test_size_guard(self):
        with pytest.raises(rules.ResourceError):
            rules.build_feedback_table(GameParams(8, 8))
