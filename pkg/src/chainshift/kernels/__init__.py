"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension is optional; selection happens once at import time.
``HAVE_SPEEDUPS`` reports which implementation is active, and both are
importable directly for benchmarking.
"""

from __future__ import annotations

from . import _pure

try:
    from . import _speedups as _impl

    HAVE_SPEEDUPS = True
except ImportError:
    _impl = _pure
    HAVE_SPEEDUPS = False

count_subword = _impl.count_subword
expand_prefix = _impl.expand_prefix
apply_bytes = _impl.apply_bytes


def encode_word(letters: tuple[str, ...], word: str) -> bytes:
    """Encode a word over at most 256 letters as letter-index bytes."""
    index = {c: i for i, c in enumerate(letters)}
    return bytes(index[c] for c in word)


def encode_images(letters: tuple[str, ...], images: tuple[str, ...]) -> list[bytes]:
    """Byte-encoded image table aligned with letter indices."""
    return [encode_word(letters, img) for img in images]
