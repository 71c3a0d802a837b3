# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the hot loops: overlapping subword counting, prefix
expansion of substitution powers, and one-step rewriting of byte words.

Contracts match ``chainshift.kernels._pure`` exactly.
"""

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.string cimport memcpy


def count_subword(bytes needle, bytes hay):
    cdef const unsigned char * n = needle
    cdef const unsigned char * h = hay
    cdef Py_ssize_t ln = len(needle), lh = len(hay)
    cdef Py_ssize_t i, j, count = 0
    if ln == 0 or ln > lh:
        return 0
    for i in range(lh - ln + 1):
        j = 0
        while j < ln and h[i + j] == n[j]:
            j += 1
        if j == ln:
            count += 1
    return count


def expand_prefix(list images, int seed, int k, Py_ssize_t limit):
    cdef bytearray out = bytearray()
    cdef list stack, frame
    cdef bytes img
    cdef const unsigned char * data
    cdef Py_ssize_t pos
    cdef int power
    cdef unsigned char c
    if k == 0:
        return bytes([seed])[:limit]
    stack = [[images[seed], 0, k - 1]]
    while stack and len(out) < limit:
        frame = <list> stack[len(stack) - 1]
        img = <bytes> frame[0]
        pos = frame[1]
        if pos == len(img):
            stack.pop()
            continue
        frame[1] = pos + 1
        data = img
        c = data[pos]
        power = frame[2]
        if power == 0:
            out.append(c)
        else:
            stack.append([images[c], 0, power - 1])
    return bytes(out)


def apply_bytes(list images, bytes word):
    cdef const unsigned char * w = word
    cdef Py_ssize_t lw = len(word)
    cdef Py_ssize_t total = 0, i, j, ln
    cdef bytes img
    cdef const unsigned char * src
    for i in range(lw):
        img = <bytes> images[w[i]]
        total += len(img)
    result = PyBytes_FromStringAndSize(NULL, total)
    cdef unsigned char * dst = <unsigned char *> PyBytes_AS_STRING(result)
    j = 0
    for i in range(lw):
        img = <bytes> images[w[i]]
        src = img
        ln = len(img)
        if ln > 0:
            memcpy(dst + j, src, ln)
        j += ln
    return result
