import random

import pytest

import oracles
from chainshift import (
    Alphabet,
    DomainError,
    Substitution,
    apply,
    count_occurrences,
    incidence_matrix,
    language,
)
from conftest import CORPUS_RULES, make


def test_alphabet_validation():
    with pytest.raises(DomainError):
        Alphabet(("a", "a"))
    with pytest.raises(DomainError):
        Alphabet(("a", " "))
    assert len(Alphabet(("x", "y", "z"))) == 3


def test_substitution_validation():
    with pytest.raises(DomainError):
        Substitution.from_rules({"a": "", "b": "a"})
    with pytest.raises(DomainError):
        Substitution.from_rules({"a": "ab", "b": "q"})


def test_count_single_letter_identity():
    assert count_occurrences("a", "a") == (1, (1,))


def test_count_in_image():
    # occurrences of b in the image of b for the quartic system
    assert count_occurrences("b", "abbb").count == 3


def test_count_overlapping_positions():
    expected = oracles.occurrences("aba", "ababa")
    got = count_occurrences("aba", "ababa")
    assert got.count == 2 and list(got.positions) == expected == [1, 3]


def test_count_rejects_empty_pattern():
    with pytest.raises(DomainError):
        count_occurrences("", "abc")


def test_count_matches_oracle_on_random_words():
    rng = random.Random(7)
    for _ in range(200):
        v = "".join(rng.choice("ab") for _ in range(rng.randint(1, 30)))
        u = "".join(rng.choice("ab") for _ in range(rng.randint(1, 4)))
        assert list(count_occurrences(u, v).positions) == oracles.occurrences(u, v)


def test_apply_single_step_is_concatenation():
    chacon = make("chacon")
    assert apply(chacon, "b", 1) == "bbab"
    rng = random.Random(3)
    for _ in range(50):
        w = "".join(rng.choice("ab") for _ in range(rng.randint(1, 8)))
        assert apply(chacon, w, 1) == "".join(chacon.image(c) for c in w)


def test_apply_square_of_quartic_bottom():
    quartic = make("quartic")
    assert apply(quartic, "a", 2) == oracles.power(CORPUS_RULES["quartic"], "a", 2) == "a" * 16


def test_apply_power_zero_needs_flag():
    chacon = make("chacon")
    with pytest.raises(DomainError):
        apply(chacon, "b", 0)
    assert apply(chacon, "b", 0, allow_identity=True) == "b"
    with pytest.raises(DomainError):
        apply(chacon, "", 1)


def test_apply_length_formula(corpus_sub):
    # |sigma^k(w)| equals the occurrence-weighted sum of letter image lengths
    rng = random.Random(11)
    letters = corpus_sub.alphabet.letters
    for k in (1, 2, 3):
        w = "".join(rng.choice(letters) for _ in range(5))
        total = sum(
            count_occurrences(a, w).count * len(apply(corpus_sub, a, k)) for a in letters
        )
        assert len(apply(corpus_sub, w, k)) == total


def test_language_quartic_m2():
    assert language(make("quartic"), 2) == {"aa", "ab", "ba", "bb", "bc", "ca", "cb"}


def test_language_mid_dominant_m2():
    assert language(make("mid_dominant"), 2) == {
        "aa", "ab", "bb", "bc", "ca", "cc", "cd", "da", "dd",
    }


def test_language_m1_by_brute_force():
    rules = CORPUS_RULES["quartic"]
    assert language(make("quartic"), 1) == oracles.language(rules, 1) == {"a", "b", "c"}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_language_matches_deep_expansion(corpus_sub, m):
    rules = {c: corpus_sub.image(c) for c in corpus_sub.alphabet}
    assert language(corpus_sub, m) == oracles.language(rules, m)


def test_language_monotone_factors(corpus_sub):
    for m in (2, 3, 4):
        below = language(corpus_sub, m - 1)
        for w in language(corpus_sub, m):
            assert w[:-1] in below and w[1:] in below


def test_language_rejects_bad_length():
    with pytest.raises(DomainError):
        language(make("chacon"), 0)


def test_occurrences_match_matrix_powers():
    rng = random.Random(2024)
    for _ in range(40):
        rules = oracles.random_substitution(rng)
        sub = Substitution.from_rules(rules)
        matrix = incidence_matrix(sub)
        for k in (1, 2, 4, 8):
            power = matrix.power(k)
            for ai, a in enumerate(matrix.letters):
                image = apply(sub, a, k)
                for bi, b in enumerate(matrix.letters):
                    assert count_occurrences(b, image).count == power[ai][bi]
                assert sum(power[ai]) == len(image)
