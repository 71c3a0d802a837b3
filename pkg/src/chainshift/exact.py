"""Exact algebra: integer characteristic polynomials, Sturm-sequence root
isolation, algebraic reals with decidable ordering, and rational linear
solves.

Polynomials are tuples of coefficients in descending degree order. The
characteristic polynomial of an integer matrix is computed division-free, so
everything stays in exact integer and Fraction arithmetic; floats appear only
as final approximations.
"""

from __future__ import annotations

from fractions import Fraction

Poly = tuple[Fraction, ...]


def charpoly(mat) -> tuple[int, ...]:
    """Monic characteristic polynomial det(xI - M) of an integer matrix.

    Berkowitz recursion: extend the polynomial of the leading principal
    submatrix one row/column at a time through a Toeplitz convolution. No
    divisions, so integer inputs give integer coefficients.
    """
    n = len(mat)
    if n == 0:
        return (1,)
    poly = [1, -mat[0][0]]
    for k in range(1, n):
        row = mat[k][:k]
        vec = [mat[r][k] for r in range(k)]
        items = [1, -mat[k][k], -sum(row[r] * vec[r] for r in range(k))]
        for _ in range(k - 1):
            vec = [sum(mat[r][c] * vec[c] for c in range(k)) for r in range(k)]
            items.append(-sum(row[r] * vec[r] for r in range(k)))
        new = []
        for i in range(k + 2):
            acc = 0
            for j, pj in enumerate(poly):
                t = i - j
                if 0 <= t < len(items):
                    acc += items[t] * pj
            new.append(acc)
        poly = new
    return tuple(poly)


def poly_eval(p, x: Fraction):
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def poly_deriv(p) -> Poly:
    n = len(p) - 1
    return tuple(Fraction(c) * (n - i) for i, c in enumerate(p[:-1]))


def _strip(p) -> Poly:
    i = 0
    while i < len(p) - 1 and p[i] == 0:
        i += 1
    return tuple(Fraction(c) for c in p[i:])


def poly_divmod(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    rem = list(_strip(num))
    den = _strip(den)
    if den == (Fraction(0),):
        raise ZeroDivisionError("polynomial division by zero")
    dn, dd = len(rem) - 1, len(den) - 1
    if dn < dd:
        return (Fraction(0),), tuple(rem)
    q = [Fraction(0)] * (dn - dd + 1)
    for i in range(dn - dd + 1):
        coef = rem[i] / den[0]
        q[i] = coef
        if coef != 0:
            for j in range(dd + 1):
                rem[i + j] -= coef * den[j]
    tail = tuple(rem[dn - dd + 1 :])
    return _strip(tuple(q)), _strip(tail if tail else (Fraction(0),))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals."""
    a, b = _strip(a), _strip(b)
    while b != (Fraction(0),):
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a[0] != 0:
        a = tuple(c / a[0] for c in a)
    return a


def squarefree_part(p) -> Poly:
    p = _strip(p)
    if len(p) <= 2:
        return p
    g = poly_gcd(p, poly_deriv(p))
    if len(g) == 1:
        return p
    q, r = poly_divmod(p, g)
    assert r == (Fraction(0),), "gcd must divide the polynomial"
    return q


def sturm_chain(p: Poly) -> list[Poly]:
    chain = [_strip(p), _strip(poly_deriv(p))]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r == (Fraction(0),):
            break
        chain.append(tuple(-c for c in r))
    return chain


def _variations(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[Poly], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots of the squarefree polynomial in (lo, hi]."""
    return _variations(chain, lo) - _variations(chain, hi)


class AlgebraicReal:
    """The largest real root of a monic integer polynomial.

    Comparisons are exact: rational values are recognized outright (for a
    monic integer polynomial they are integers), and two irrational roots are
    equal iff a gcd of their squarefree parts has a root in the intersection
    of the isolating intervals. Interval refinement only ever narrows, so
    instances behave as immutable values.
    """

    __slots__ = ("poly", "_sf", "_chain", "lo", "hi", "rational")

    def __init__(self, poly, search_range: tuple[int, int] | None = None):
        self.poly = tuple(int(c) for c in poly)
        sf = squarefree_part(self.poly)
        self._sf = sf
        self._chain = sturm_chain(sf)
        if search_range is None:
            bound = 1 + max(abs(c) for c in self.poly)
            search_range = (-bound, bound)
        lo = Fraction(search_range[0] - 1)
        hi = Fraction(search_range[1] + 1)
        assert count_roots(self._chain, lo, hi) >= 1, "no real root in range"
        # Exact rational roots of a monic integer polynomial are integers;
        # scan the search range for the largest one.
        self.rational: Fraction | None = None
        best = None
        for r in range(search_range[1] + 1, search_range[0] - 1, -1):
            if poly_eval(self.poly, Fraction(r)) == 0:
                best = r
                break
        if best is not None and count_roots(self._chain, Fraction(best), hi) == 0:
            self.rational = Fraction(best)
            self.lo = Fraction(best)
            self.hi = Fraction(best)
            return
        # Largest root is irrational: bisect down to an isolating interval.
        # Dyadic midpoints can never hit it, so Sturm counts are safe.
        if best is not None:
            lo = Fraction(best)
        while count_roots(self._chain, lo, hi) > 1:
            mid = (lo + hi) / 2
            if count_roots(self._chain, mid, hi) >= 1:
                lo = mid
            else:
                hi = mid
        self.lo, self.hi = lo, hi

    def refine(self, width: Fraction) -> None:
        if self.rational is not None:
            return
        while self.hi - self.lo > width:
            mid = (self.lo + self.hi) / 2
            if count_roots(self._chain, mid, self.hi) >= 1:
                self.lo = mid
            else:
                self.hi = mid

    def to_fraction(self, width: Fraction = Fraction(1, 2**48)) -> Fraction:
        if self.rational is not None:
            return self.rational
        self.refine(width)
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.to_fraction())

    def as_integer(self) -> int | None:
        if self.rational is not None and self.rational.denominator == 1:
            return int(self.rational)
        return None

    def compare(self, other) -> int:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if self.rational is not None:
                return (self.rational > q) - (self.rational < q)
            if poly_eval(self._sf, q) == 0 and self.lo < q <= self.hi:
                return 0
            while self.lo < q <= self.hi:
                self.refine((self.hi - self.lo) / 2)
            return 1 if q <= self.lo else -1
        if not isinstance(other, AlgebraicReal):
            return NotImplemented
        if self.rational is not None and other.rational is not None:
            return (self.rational > other.rational) - (self.rational < other.rational)
        if self.rational is not None:
            return -other.compare(self.rational)
        if other.rational is not None:
            return self.compare(other.rational)
        g = poly_gcd(self._sf, other._sf)
        if len(g) > 1:
            lo = max(self.lo, other.lo)
            hi = min(self.hi, other.hi)
            if lo < hi and count_roots(sturm_chain(g), lo, hi) >= 1:
                return 0
        while self.lo < other.hi and other.lo < self.hi:
            self.refine((self.hi - self.lo) / 2)
            other.refine((other.hi - other.lo) / 2)
        return 1 if other.hi <= self.lo else -1

    def __eq__(self, other) -> bool:
        r = self.compare(other)
        return False if r is NotImplemented else r == 0

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __hash__(self):
        raise TypeError("AlgebraicReal is not hashable")

    def __repr__(self) -> str:
        return f"AlgebraicReal({float(self):.12g}, poly={self.poly})"


def solve_linear(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a square nonsingular rational system by Gaussian elimination."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(A, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if M[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def nullspace_vector(A: list[list[Fraction]]) -> list[Fraction]:
    """A nonzero kernel vector of a rational matrix with 1-dimensional kernel."""
    n = len(A)
    M = [list(map(Fraction, row)) for row in A]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, n) if M[i][col] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(n):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * c for a, c in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise ZeroDivisionError(f"kernel is {len(free)}-dimensional, expected 1")
    x = [Fraction(0)] * n
    x[free[0]] = Fraction(1)
    for row_idx, col in enumerate(pivots):
        x[col] = -M[row_idx][free[0]]
    return x
