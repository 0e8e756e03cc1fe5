"""Directive sequences, language sampling, and growth decisions."""

import pytest

from wordbalance.language import (
    DirectiveSequence,
    LanguageSample,
    SampleMeta,
    factorial_closure,
    is_everywhere_growing,
    is_factorial,
    sample_level_language,
    substitution_tower,
)
from wordbalance.substitution import Substitution, SubstitutionError
from wordbalance.tms import parse_directive
from wordbalance.words import Alphabet, Word

BIN = Alphabet.from_text("01")


class TestDirectiveSequence:
    def test_prefix_and_period_structure(self):
        d = parse_directive("LM|R")
        assert d.prefix_length == 2 and d.period_length == 1
        assert d.is_eventually_periodic()
        assert d.max_defined_level() is None
        assert d.describe() == "LM|R"

    def test_finite_directive(self):
        d = parse_directive("LM|")
        assert not d.is_eventually_periodic()
        assert d.max_defined_level() == 2
        with pytest.raises(SubstitutionError):
            d.substitution_at(2)

    def test_periodic_wraparound(self):
        d = parse_directive("L|MR")
        names = [d.substitution_at(j).to_text() for j in range(5)]
        assert names == [
            "0->0;1->10",   # L
            "0->01;1->10",  # M
            "0->01;1->1",   # R
            "0->01;1->10",  # M
            "0->01;1->1",   # R
        ]
        with pytest.raises(IndexError):
            d.substitution_at(-1)

    def test_needs_at_least_one_substitution(self):
        with pytest.raises(SubstitutionError):
            DirectiveSequence(prefix=(), period=None)
        with pytest.raises(SubstitutionError):
            DirectiveSequence(prefix=(), period=())

    def test_chain_mismatch_rejected(self):
        t = Substitution.from_text("a->ab;b->a")
        l = Substitution.from_text("0->0;1->10")
        with pytest.raises(SubstitutionError):
            DirectiveSequence(prefix=(l, t), period=(t,))


class TestTower:
    def test_identity_at_zero_height(self):
        d = parse_directive("|M")
        assert substitution_tower(d, 0, 0).is_identity()

    def test_directive_order_is_outermost_first(self):
        d = parse_directive("LM|R")
        tower = d.tower(0, 2)
        assert tower.image("0").render() == "010"  # L(M(0))
        assert tower.image("1").render() == "100"

    def test_height_below_start_rejected(self):
        with pytest.raises(ValueError):
            substitution_tower(parse_directive("|M"), 2, 1)


class TestFactorialClosure:
    def test_contains_all_factors(self):
        sample = factorial_closure([Word.from_text("0011", BIN)], 4)
        got = {w.render() for w in sample.words}
        want = {"", "0", "1", "00", "01", "11", "001", "011", "0011"}
        assert got == want
        assert is_factorial(sample)
        assert sample.meta.exact

    def test_cap_truncates(self):
        sample = factorial_closure([Word.from_text("0011", BIN)], 2)
        assert max(len(w) for w in sample.words) == 2

    def test_alphabet_handling(self):
        with pytest.raises(ValueError):
            factorial_closure([], 3)
        empty = factorial_closure([], 3, alphabet=BIN)
        assert {w.render() for w in empty.words} == {""}
        other = Alphabet.from_text("ab")
        with pytest.raises(ValueError):
            factorial_closure(
                [Word.from_text("0", BIN), Word.from_text("a", other)], 3
            )

    def test_is_factorial_detects_gaps(self):
        words = frozenset(
            [Word.empty(BIN), Word.from_text("00", BIN)]  # missing "0"
        )
        sample = LanguageSample(
            alphabet=BIN, level=0, max_length=2, words=words,
            meta=SampleMeta(depth=0, window=0, exact=False, saturated=False),
        )
        assert not is_factorial(sample)


class TestSampleAccessors:
    def test_words_of_length_sorted(self, tm_sample):
        ws = tm_sample.words_of_length(2)
        assert [w.render() for w in ws] == ["00", "01", "10", "11"]
        assert Word.from_text("01", BIN) in tm_sample
        assert len(tm_sample.nonempty_words()) == len(tm_sample) - 1


class TestExactSampling:
    def test_doubling_language_truncation(self, tm_sample):
        assert tm_sample.meta.exact
        assert is_factorial(tm_sample)
        assert len(tm_sample) == 93
        assert Word.from_text("110011", BIN) in tm_sample
        assert Word.from_text("000", BIN) not in tm_sample
        assert Word.from_text("111", BIN) not in tm_sample

    def test_left_fixed_point_language(self):
        sample = sample_level_language(parse_directive("|L"), 0, 3)
        got = {w.render() for w in sample.words}
        assert got == {"", "0", "1", "00", "10", "000", "100"}
        assert sample.meta.exact

    def test_right_fixed_point_language(self):
        sample = sample_level_language(parse_directive("|R"), 0, 3)
        got = {w.render() for w in sample.words}
        assert got == {"", "0", "1", "01", "11", "011", "111"}
        assert sample.meta.exact

    def test_max_length_zero(self):
        sample = sample_level_language(parse_directive("|M"), 0, 0)
        assert {w.render() for w in sample.words} == {""}

    def test_negative_cap_rejected(self):
        with pytest.raises(ValueError):
            sample_level_language(parse_directive("|M"), 0, -1)


class TestWindowedSampling:
    def test_multi_substitution_period(self):
        sample = sample_level_language(parse_directive("RL|LR"), 0, 6)
        assert not sample.meta.exact
        assert sample.meta.saturated
        assert is_factorial(sample)
        assert sample.alphabet == BIN

    def test_windowed_doubling_matches_exact(self, tm_sample):
        windowed = sample_level_language(
            parse_directive("|M"), 0, 6, depth=8, window=2
        )
        exact = {w.render() for w in tm_sample.words if len(w) <= 6}
        assert {w.render() for w in windowed.words} == exact
        assert not windowed.meta.exact  # explicit depth forces the window path
        assert windowed.meta.saturated

    def test_level_one_sample(self):
        sample = sample_level_language(parse_directive("RL|LR"), 1, 5)
        assert is_factorial(sample)
        assert sample.level == 1

    def test_depth_above_level_required(self):
        with pytest.raises(ValueError):
            sample_level_language(parse_directive("RL|LR"), 2, 4, depth=1)

    def test_finite_directive_too_short(self):
        with pytest.raises(ValueError):
            sample_level_language(parse_directive("ML|"), 0, 4, depth=1, window=5)


class TestGrowthDecision:
    @pytest.mark.parametrize(
        "text,want",
        [
            ("|M", True),
            ("|L", False),
            ("|R", False),
            ("|LR", True),
            ("|ML", True),
            ("R|L", False),
            ("LML|M", True),
        ],
    )
    def test_pinned_verdicts(self, text, want):
        rep = is_everywhere_growing(parse_directive(text))
        assert rep.growing == want
        assert rep.exact
        assert isinstance(rep.certificate, dict)
