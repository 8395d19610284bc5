import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidkex import garside
from braidkex.braid import BraidError, BraidWord, StrandMismatchError, delta, parse_word, permutation_of
from braidkex.garside import (
    CanonicalForm,
    canonical_invert,
    canonical_multiply,
    canonical_product,
    canonical_to_word,
    commutes,
    delta_form,
    equals,
    finishing_set,
    is_left_weighted,
    starting_set,
    to_canonical,
)
from braidkex.keygen import random_word
from braidkex.permutation import Permutation

from conftest import burau, insert_relators


def words(max_n=6, max_len=40):
    return st.integers(2, max_n).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=max_len
        ).map(lambda letters: BraidWord(n, tuple(letters)))
    )


def test_small_forms():
    assert str(to_canonical(parse_word("1", 3))) == "D^0 [1,0,2]"
    assert str(to_canonical(parse_word("1 2 1", 3))) == "D^1"
    assert str(to_canonical(parse_word("-1", 3))) == "D^-1 [1,2,0]"
    assert to_canonical(BraidWord(3, ())).is_identity()


def test_braid_relations():
    assert equals(parse_word("1 2 1", 3), parse_word("2 1 2", 3))
    assert equals(parse_word("1 3", 4), parse_word("3 1", 4))
    assert not equals(parse_word("1", 3), parse_word("2", 3))
    assert commutes(parse_word("1", 4), parse_word("3", 4))
    assert not commutes(parse_word("1", 3), parse_word("2", 3))


def test_two_strands_is_cyclic():
    for k in range(-5, 6):
        form = to_canonical(BraidWord(2, (1,) * k if k > 0 else (-1,) * -k))
        assert form == CanonicalForm(2, k)


def test_sets():
    f = to_canonical(parse_word("1 2", 3)).factors[0]
    assert starting_set(f) == {1}
    assert finishing_set(f) == {2}


def test_invalid_forms_rejected():
    ident, dlt = Permutation.identity(3), Permutation.reversal(3)
    x1, x2 = Permutation((1, 0, 2)), Permutation((0, 2, 1))
    for factors in [(ident,), (dlt,), (x1, x2)]:
        with pytest.raises(BraidError):
            CanonicalForm(3, 0, factors)
    assert not is_left_weighted(x1, x2)
    assert is_left_weighted(x1, x1)


@settings(max_examples=200, deadline=None)
@given(words())
def test_form_round_trip_and_weighting(u):
    f = to_canonical(u)
    assert f.violation() is None
    assert to_canonical(canonical_to_word(f)) == f
    assert burau(canonical_to_word(f)) == burau(u)
    assert f.permutation() == permutation_of(u)


@settings(max_examples=150, deadline=None)
@given(words(), st.data())
def test_multiply_invert(u, data):
    v = data.draw(words(u.n, 30).filter(lambda x: x.n == u.n) | st.just(BraidWord(u.n, ())))
    fu, fv = to_canonical(u), to_canonical(v)
    assert canonical_multiply(fu, fv) == to_canonical(u * v)
    assert canonical_invert(fu) == to_canonical(u.inverse())
    assert canonical_multiply(fu, fu.inverse()).is_identity()


def test_burau_separates_b3():
    # faithful on three strands: distinct forms have distinct matrices
    rng = random.Random(5)
    seen = {}
    for _ in range(400):
        u = random_word(3, rng.randint(0, 10), rng)
        f, m = to_canonical(u), burau(u)
        if m in seen:
            assert seen[m] == f
        seen[m] = f
    assert len(seen) > 100


def test_relator_insertion_small():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(2, 6)
        u = random_word(n, rng.randint(0, 20), rng)
        assert to_canonical(insert_relators(u, 10, rng)) == to_canonical(u)


@pytest.mark.parametrize("n", range(3, 9))
def test_delta_conjugation(n):
    d = delta(n)
    for i in range(1, n):
        x = BraidWord.generator(n, i)
        assert equals(d * x * d.inverse(), BraidWord.generator(n, n - i))


def test_delta_form():
    assert delta_form(4, 2) == to_canonical(delta(4) * delta(4))
    assert to_canonical(delta(5)) == CanonicalForm(5, 1)


def test_product_checks_strands():
    with pytest.raises(StrandMismatchError):
        canonical_product([to_canonical(BraidWord(3, (1,)))], 4)
    assert canonical_product([], 3).is_identity()


def test_long_word_chunking():
    rng = random.Random(9)
    u = random_word(6, 500, rng)
    f = to_canonical(u)
    assert f.violation() is None
    half = len(u.letters) // 3
    left, right = BraidWord(6, u.letters[:half]), BraidWord(6, u.letters[half:])
    assert canonical_multiply(to_canonical(left), to_canonical(right)) == f


@pytest.mark.skipif(len(garside.ENGINES) < 2, reason="compiled engine unavailable")
def test_engines_agree():
    # move-based compiled kernel vs merge-based meet in pure Python
    rng = random.Random(17)
    for _ in range(150):
        n = rng.randint(2, 16)
        u, v = random_word(n, rng.randint(0, 150), rng), random_word(n, rng.randint(0, 150), rng)
        results = {}
        for name in garside.ENGINES:
            with garside.engine(name):
                fu, fv = to_canonical(u), to_canonical(v)
                results[name] = (fu, fv, fu * fv, fu.inverse() * fv)
        assert results["numba"] == results["python"]


def test_engine_switch():
    old = garside.get_engine()
    with garside.engine("python"):
        assert garside.get_engine() == "python"
    assert garside.get_engine() == old
    with pytest.raises(ValueError):
        garside.set_engine("fortran")
