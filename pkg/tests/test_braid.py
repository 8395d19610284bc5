import random

import pytest

from braidkex.braid import (
    BraidWord,
    GeneratorRangeError,
    StrandMismatchError,
    WordSyntaxError,
    delta,
    format_word,
    free_reduce,
    invert_word,
    is_pure,
    multiply,
    parse_word,
    permutation_of,
)
from braidkex.keygen import random_word
from braidkex.permutation import Permutation


def test_parse_examples():
    assert parse_word("1 2 1", 3).letters == (1, 2, 1)
    assert parse_word("1 -1", 3).letters == ()
    assert parse_word("", 3).letters == ()
    assert parse_word("  -2\t1\n", 3).letters == (-2, 1)


@pytest.mark.parametrize("text", ["1 x", "1.5", "--1", "1-"])
def test_parse_syntax_errors(text):
    with pytest.raises(WordSyntaxError):
        parse_word(text, 4)


@pytest.mark.parametrize("text", ["7", "0", "-3", "3"])
def test_parse_range_errors(text):
    with pytest.raises(GeneratorRangeError):
        parse_word(text, 3)


def test_format_round_trip():
    w = parse_word("1 -2 3", 5)
    assert parse_word(format_word(w), 5) == w


def test_free_reduction_on_construction():
    assert BraidWord(4, (1, 2, -2, -1, 3)).letters == (3,)
    assert free_reduce([1, 2, -2, -1]) == []


def test_multiply_and_invert():
    u, v = parse_word("1 2", 3), parse_word("-2 1", 3)
    assert multiply(u, v).letters == (1, 1)
    assert invert_word(u).letters == (-2, -1)
    assert multiply(u, invert_word(u)).letters == ()


def test_strand_mismatch():
    with pytest.raises(StrandMismatchError):
        multiply(BraidWord(3, (1,)), BraidWord(4, (1,)))


def test_n_below_two_rejected():
    with pytest.raises(ValueError):
        BraidWord(1, ())


def test_permutation_examples():
    assert permutation_of(parse_word("1", 3)) == Permutation((1, 0, 2))
    assert permutation_of(parse_word("1 2", 3)) == Permutation((1, 2, 0))
    assert permutation_of(BraidWord(3, ())).is_identity()


@pytest.mark.parametrize("n", range(2, 9))
def test_delta_projects_to_reversal(n):
    d = delta(n)
    assert len(d.letters) == n * (n - 1) // 2
    assert permutation_of(d) == Permutation.reversal(n)
    assert is_pure(d * d)


def test_is_pure():
    assert not is_pure(parse_word("1", 3))
    assert is_pure(parse_word("1 1", 3))


def test_permutation_homomorphism():
    rng = random.Random(11)
    for _ in range(1000):
        n = rng.randint(2, 8)
        u, v = random_word(n, rng.randint(0, 30), rng), random_word(n, rng.randint(0, 30), rng)
        assert permutation_of(u * v) == permutation_of(u) @ permutation_of(v)
