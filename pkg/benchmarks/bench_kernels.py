"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [prefix_length]

Expands power images of a five-letter system and counts a two-letter window,
which is exactly the hot loop behind `chainshift simulate`.
"""

from __future__ import annotations

import sys
import time

from chainshift import Substitution
from chainshift.kernels import HAVE_SPEEDUPS, _pure, encode_images, encode_word

RULES = {"a": "ab", "b": "a", "c": "acd", "d": "adc", "e": "dece"}


def _power_for_length(images: list[bytes], seed: int, target: int) -> int:
    lengths = [1] * len(images)
    k = 0
    while lengths[seed] < target:
        lengths = [sum(lengths[c] for c in img) for img in images]
        k += 1
    return k


def bench(impl, images, seed: int, k: int, length: int, needle: bytes) -> tuple[float, float, int]:
    start = time.perf_counter()
    prefix = impl.expand_prefix(images, seed, k, length)
    mid = time.perf_counter()
    count = impl.count_subword(needle, prefix)
    end = time.perf_counter()
    assert len(prefix) == length
    return mid - start, end - mid, count


def main() -> None:
    length = int(sys.argv[1]) if len(sys.argv) > 1 else 2_000_000
    sub = Substitution.from_rules(RULES)
    letters = sub.alphabet.letters
    images = encode_images(letters, sub.images)
    seed = letters.index("e")
    k = _power_for_length(images, seed, length)
    needle = encode_word(letters, "dc")

    impls = [("pure", _pure)]
    if HAVE_SPEEDUPS:
        from chainshift.kernels import _speedups

        impls.append(("compiled", _speedups))
    else:
        print("compiled kernels unavailable; benchmarking the fallback only")

    print(f"prefix length {length:,} of power {k}, counting one 2-letter window")
    print(f"{'impl':<10}{'expand [s]':>12}{'count [s]':>12}{'total [s]':>12}{'occurrences':>14}")
    results = {}
    for name, impl in impls:
        expand, count_t, count = min(
            (bench(impl, images, seed, k, length, needle) for _ in range(3)),
            key=lambda t: t[0] + t[1],
        )
        results[name] = expand + count_t
        print(f"{name:<10}{expand:>12.4f}{count_t:>12.4f}{expand + count_t:>12.4f}{count:>14,}")
    if "compiled" in results:
        print(f"speedup: {results['pure'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    main()
