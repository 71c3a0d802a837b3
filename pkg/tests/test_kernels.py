import random

import pytest

from chainshift.kernels import (
    HAVE_SPEEDUPS,
    _pure,
    apply_bytes,
    count_subword,
    encode_images,
    encode_word,
    expand_prefix,
)
from chainshift import apply
from conftest import make

IMPLS = [_pure]
if HAVE_SPEEDUPS:
    from chainshift.kernels import _speedups

    IMPLS.append(_speedups)


@pytest.mark.parametrize("impl", IMPLS)
def test_count_subword_overlaps(impl):
    assert impl.count_subword(b"aa", b"aaaa") == 3
    assert impl.count_subword(b"ab", b"") == 0
    assert impl.count_subword(b"abc", b"ab") == 0
    rng = random.Random(42)
    for _ in range(300):
        hay = bytes(rng.randrange(4) for _ in range(rng.randrange(0, 64)))
        needle = bytes(rng.randrange(4) for _ in range(rng.randrange(1, 5)))
        brute = sum(
            1
            for i in range(len(hay) - len(needle) + 1)
            if hay[i : i + len(needle)] == needle
        )
        assert impl.count_subword(needle, hay) == brute


@pytest.mark.parametrize("impl", IMPLS)
def test_expand_prefix_matches_apply(impl):
    sub = make("golden_tower")
    letters = sub.alphabet.letters
    images = encode_images(letters, sub.images)
    for k in range(7):
        for c in letters:
            full = encode_word(letters, apply(sub, c, k, allow_identity=True))
            assert impl.expand_prefix(images, letters.index(c), k, 10**6) == full
            assert impl.expand_prefix(images, letters.index(c), k, 5) == full[:5]


@pytest.mark.parametrize("impl", IMPLS)
def test_apply_bytes_matches_step(impl):
    sub = make("quartic")
    letters = sub.alphabet.letters
    images = encode_images(letters, sub.images)
    rng = random.Random(9)
    for _ in range(50):
        word = "".join(rng.choice(letters) for _ in range(rng.randrange(0, 40)))
        encoded = encode_word(letters, word)
        assert impl.apply_bytes(images, encoded) == encode_word(letters, sub.step(word))


@pytest.mark.skipif(not HAVE_SPEEDUPS, reason="compiled kernels unavailable")
def test_compiled_and_pure_agree_on_long_streams():
    sub = make("golden_tower")
    letters = sub.alphabet.letters
    images = encode_images(letters, sub.images)
    a = _pure.expand_prefix(images, 0, 25, 200_000)
    b = _speedups.expand_prefix(images, 0, 25, 200_000)
    assert a == b
    needle = encode_word(letters, "ab")
    assert _pure.count_subword(needle, a) == _speedups.count_subword(needle, b)


def test_selected_interface_works():
    sub = make("chacon")
    letters = sub.alphabet.letters
    images = encode_images(letters, sub.images)
    prefix = expand_prefix(images, letters.index("b"), 8, 1000)
    assert len(prefix) == 1000
    assert count_subword(encode_word(letters, "ab"), prefix) > 0
    assert apply_bytes(images, encode_word(letters, "ab")) == encode_word(letters, "abbab")
