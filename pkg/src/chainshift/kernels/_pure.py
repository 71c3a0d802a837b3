"""Pure-Python kernels; same contracts as the compiled module."""

from __future__ import annotations


def count_subword(needle: bytes, hay: bytes) -> int:
    """Occurrences of ``needle`` in ``hay``, overlaps included."""
    if not needle or len(needle) > len(hay):
        return 0
    count = 0
    i = hay.find(needle)
    while i != -1:
        count += 1
        i = hay.find(needle, i + 1)
    return count


def expand_prefix(images: list[bytes], seed: int, k: int, limit: int) -> bytes:
    """First ``limit`` bytes of the k-th power image of letter id ``seed``.

    Letters are byte ids indexing into ``images``. Expansion is a depth-first
    walk, so memory stays proportional to ``k`` plus the output.
    """
    if k == 0:
        return bytes([seed])[:limit]
    out = bytearray()
    # frame: [image bytes, position, remaining power]
    stack = [[images[seed], 0, k - 1]]
    while stack and len(out) < limit:
        frame = stack[-1]
        img, pos, power = frame
        if pos == len(img):
            stack.pop()
            continue
        frame[1] += 1
        c = img[pos]
        if power == 0:
            out.append(c)
        else:
            stack.append([images[c], 0, power - 1])
    return bytes(out)


def apply_bytes(images: list[bytes], word: bytes) -> bytes:
    """One substitution step on a byte-encoded word."""
    return b"".join(images[c] for c in word)
