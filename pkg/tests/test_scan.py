"""String-level scanning: codecs, expansion, and sliding-window counts."""

import random

import pytest

from wordbalance.language import ResourceLimitError
from wordbalance.scan import (
    TextCodec,
    count_overlapping,
    distinct_factors,
    expand_text,
    factor_sets_stable,
    tower_letter_texts,
    window_count_extrema,
    window_imbalance,
    window_imbalance_curve,
)
from wordbalance.substitution import Substitution
from wordbalance.tms import parse_directive
from wordbalance.words import Alphabet, Word, block_alphabet, n_coding

BIN = Alphabet.from_text("01")
M = Substitution.from_text("0->01;1->10")


def brute_count(text: str, pattern: str) -> int:
    return sum(
        1
        for i in range(len(text) - len(pattern) + 1)
        if text[i : i + len(pattern)] == pattern
    )


class TestTextCodec:
    def test_single_char_passthrough(self):
        codec = TextCodec.for_alphabet(BIN)
        assert codec.chars == ("0", "1")
        w = Word.from_text("0110", BIN)
        assert codec.encode(w) == "0110"
        assert codec.decode("0110") == w

    def test_tuple_symbols_get_fresh_chars(self):
        blocks = block_alphabet(BIN, 2)
        codec = TextCodec.for_alphabet(blocks)
        assert codec.chars == ("!", '"', "#", "$")
        coded = n_coding(Word.from_text("0110", BIN), 2)
        assert codec.encode(coded) == '"$#'
        assert codec.decode('"$#') == coded

    def test_alphabet_size_limit(self):
        with pytest.raises(ValueError):
            TextCodec.for_alphabet(block_alphabet(BIN, 8))  # 256 symbols


class TestExpansion:
    def test_doubling_expansion(self):
        assert expand_text(M, "0", 0) == "0"
        assert expand_text(M, "0", 2) == "0110"
        assert expand_text(M, "0", 4) == "0110100110010110"
        assert expand_text(M, "1", 3) == "10010110"

    def test_needs_endomorphism(self):
        widening = Substitution.from_text("0->012;1->01")
        with pytest.raises(ValueError):
            expand_text(widening, "0", 2)

    def test_character_budget(self):
        with pytest.raises(ResourceLimitError):
            expand_text(M, "0", 40, max_chars=1000)

    def test_tower_letter_texts(self):
        texts, codec = tower_letter_texts(parse_directive("|M"), 0, 3)
        assert texts == {"0": "01101001", "1": "10010110"}
        assert codec.chars == ("0", "1")

    def test_tower_budget(self):
        with pytest.raises(ResourceLimitError):
            tower_letter_texts(parse_directive("|M"), 0, 30, max_chars=100)


class TestCounting:
    def test_literals(self):
        assert count_overlapping("0110110", "11") == 2
        assert count_overlapping("aaa", "aa") == 2
        assert count_overlapping("0101", "11") == 0
        assert count_overlapping("", "0") == 0

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            count_overlapping("01", "")

    def test_random_oracle(self):
        rng = random.Random(404)
        for _ in range(200):
            text = "".join(rng.choice("01") for _ in range(rng.randint(0, 30)))
            pat = "".join(rng.choice("01") for _ in range(rng.randint(1, 4)))
            assert count_overlapping(text, pat) == brute_count(text, pat)


class TestWindowExtrema:
    def test_matches_brute_force(self):
        rng = random.Random(505)
        for _ in range(80):
            text = "".join(rng.choice("01") for _ in range(rng.randint(1, 40)))
            pat = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
            win = rng.randint(1, 12)
            got = window_count_extrema(text, pat, win)
            if len(text) < win:
                assert got is None
                continue
            counts = [
                brute_count(text[i : i + win], pat)
                for i in range(len(text) - win + 1)
            ]
            assert got.max_count == max(counts)
            assert got.min_count == min(counts)
            assert got.argmax == counts.index(max(counts))
            assert got.argmin == counts.index(min(counts))

    def test_window_shorter_than_pattern(self):
        got = window_count_extrema("010101", "0101", 2)
        assert got.max_count == 0 and got.min_count == 0

    def test_guards(self):
        with pytest.raises(ValueError):
            window_count_extrema("01", "0", 0)
        assert window_count_extrema("01", "0", 5) is None


class TestWindowImbalance:
    def test_curve_matches_brute_force(self):
        texts = [expand_text(M, "0", 6), expand_text(M, "1", 5)]
        patterns = ["0", "11"]
        lens = [1, 2, 5, 9]
        curve = window_imbalance_curve(texts, patterns, lens)
        assert sorted(curve) == lens
        for win, witness in curve.items():
            best = 0
            for pat in patterns:
                pool = [
                    brute_count(t[i : i + win], pat)
                    for t in texts
                    if len(t) >= win
                    for i in range(len(t) - win + 1)
                ]
                best = max(best, max(pool) - min(pool))
            assert witness.imbalance == best
            assert witness.window_len == win
            assert len(witness.high_window) == win
            assert len(witness.low_window) == win
            assert any(witness.high_window in t for t in texts)
            assert any(witness.low_window in t for t in texts)
            spread = count_overlapping(
                witness.high_window, witness.pattern
            ) - count_overlapping(witness.low_window, witness.pattern)
            assert spread == witness.imbalance

    def test_unfittable_lengths_omitted(self):
        curve = window_imbalance_curve(["0101"], ["0"], [2, 99])
        assert sorted(curve) == [2]
        assert window_imbalance(["0101"], ["0"], 99) is None

    def test_deterministic(self):
        texts = [expand_text(M, "0", 5)]
        a = window_imbalance_curve(texts, ["01", "10"], range(1, 9))
        b = window_imbalance_curve(texts, ["01", "10"], range(1, 9))
        assert a == b

    def test_nonpositive_window_rejected(self):
        with pytest.raises(ValueError):
            window_imbalance_curve(["01"], ["0"], [1, 0])


class TestFactorSets:
    def test_distinct_factors(self):
        assert distinct_factors("0110", 2) == {"0", "1", "01", "11", "10"}
        assert distinct_factors("0110", 2, min_len=2) == {"01", "11", "10"}
        rng = random.Random(606)
        text = "".join(rng.choice("ab") for _ in range(60))
        want = {
            text[i : i + n]
            for n in (1, 2, 3)
            for i in range(len(text) - n + 1)
        }
        assert distinct_factors(text, 3) == want

    def test_stability_comparison(self):
        a = expand_text(M, "0", 6)
        b = expand_text(M, "0", 7)
        assert factor_sets_stable(a, b, [1, 2, 3])
        assert not factor_sets_stable("0101", "0011", [2])
