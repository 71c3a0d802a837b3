"""Incidence matrix and the chain of primitive components.

A valid system decomposes the alphabet into nested levels A_1 c A_2 c ... of
letters, each level closed under the substitution, such that some uniform
power reproduces every letter of A_i inside every image of a level-i letter.
Detection works on the reachability digraph: the strongly connected
components must be totally ordered by reachability, each diagonal block must
be primitive, and a uniform witness power is then found by boolean matrix
powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NoPrimitiveChainError
from .words import Substitution, count_occurrences

IntMatrix = tuple[tuple[int, ...], ...]


def mat_mul(a, b) -> IntMatrix:
    n, mid, m = len(a), len(b), len(b[0]) if b else 0
    bt = list(zip(*b))
    return tuple(
        tuple(sum(a[i][k] * bt[j][k] for k in range(mid)) for j in range(m))
        for i in range(n)
    )


def mat_identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    result = mat_identity(len(a))
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if k > 1 else base
        k >>= 1
    return result


def _bool_mul(a, b):
    n = len(a)
    bt = list(zip(*b))
    return tuple(
        tuple(1 if any(x and y for x, y in zip(row, col)) else 0 for col in bt)
        for row in a
    )


@dataclass(frozen=True)
class IncidenceMatrix:
    """Integer matrix counting each letter's occurrences in each image."""

    letters: tuple[str, ...]
    entries: IntMatrix

    def __getitem__(self, pair: tuple[str, str]) -> int:
        a, b = pair
        return self.entries[self.letters.index(a)][self.letters.index(b)]

    def row_sums(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.entries)

    def power(self, k: int) -> IntMatrix:
        return mat_pow(self.entries, k)


def incidence_matrix(sub: Substitution) -> IncidenceMatrix:
    letters = sub.alphabet.letters
    entries = tuple(
        tuple(count_occurrences(b, sub.image(a)).count for b in letters)
        for a in letters
    )
    return IncidenceMatrix(letters, entries)


def _tarjan_sccs(n: int, edges: list[set[int]]) -> list[list[int]]:
    """Strongly connected components, iteratively, in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(sorted(edges[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(edges[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


@dataclass(frozen=True)
class ComponentChain:
    """Nested letter levels with per-level diagonal blocks."""

    sub: Substitution
    levels: tuple[tuple[str, ...], ...]  # cumulative A_i, declaration order
    witness_k: int

    @property
    def n(self) -> int:
        return len(self.levels)

    def check_level(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise DomainError(f"level {i} out of range 1..{self.n}")
        return i

    def alphabet_at(self, i: int) -> tuple[str, ...]:
        return self.levels[self.check_level(i) - 1]

    def new_letters(self, i: int) -> tuple[str, ...]:
        self.check_level(i)
        below = set(self.levels[i - 2]) if i >= 2 else set()
        return tuple(c for c in self.levels[i - 1] if c not in below)

    def level_of(self, letter: str) -> int:
        for i, level in enumerate(self.levels, start=1):
            if letter in level:
                return i
        raise DomainError(f"letter {letter!r} not in alphabet")

    def block(self, i: int) -> IntMatrix:
        """Diagonal block Q_i: occurrence counts among the level's new letters."""
        letters = self.new_letters(i)
        return tuple(
            tuple(count_occurrences(b, self.sub.image(a)).count for b in letters)
            for a in letters
        )

    def coupling(self, i: int, j: int) -> IntMatrix:
        """Off-diagonal block R_{i,j}: counts of level-j letters in level-i images.

        Requires j < i; together with the diagonal blocks these views tile the
        lower triangle of the incidence matrix.
        """
        self.check_level(i)
        self.check_level(j)
        if not j < i:
            raise DomainError("coupling blocks sit strictly below the diagonal")
        rows = self.new_letters(i)
        cols = self.new_letters(j)
        return tuple(
            tuple(count_occurrences(b, self.sub.image(a)).count for b in cols)
            for a in rows
        )

    def restrict(self, i: int) -> tuple[Substitution, "ComponentChain"]:
        """The level-i sub-substitution together with its own chain."""
        self.check_level(i)
        sub_i = self.sub.restrict(self.alphabet_at(i))
        return sub_i, ComponentChain(sub_i, self.levels[:i], self.witness_k)


@lru_cache(maxsize=None)
def component_chain(sub: Substitution) -> ComponentChain:
    """Detect the unique chain of primitive components.

    Raises NoPrimitiveChainError with a diagnostic when the reachability
    order on strongly connected components is not total or some diagonal
    block is imprimitive.
    """
    letters = sub.alphabet.letters
    n = len(letters)
    idx = {c: i for i, c in enumerate(letters)}
    edges = [set(idx[c] for c in sub.image(a)) for a in letters]

    sccs = _tarjan_sccs(n, edges)
    comp_of = [0] * n
    for ci, comp in enumerate(sccs):
        for v in comp:
            comp_of[v] = ci
    ncomp = len(sccs)
    # Reachability closure on the condensation.
    reach = [set() for _ in range(ncomp)]
    for ci in range(ncomp):  # Tarjan emits reverse topological order
        r = {ci}
        for v in sccs[ci]:
            for w in edges[v]:
                r |= reach[comp_of[w]]
        reach[ci] = r
    for a in range(ncomp):
        for b in range(a + 1, ncomp):
            if a not in reach[b] and b not in reach[a]:
                raise NoPrimitiveChainError(
                    "strongly connected components are incomparable",
                    {
                        "kind": "incomparable_components",
                        "components": [
                            sorted(letters[v] for v in sccs[a]),
                            sorted(letters[v] for v in sccs[b]),
                        ],
                    },
                )
    order = sorted(range(ncomp), key=lambda ci: len(reach[ci]))
    # Each diagonal block must be primitive: some boolean power all-positive.
    for ci in order:
        comp = sccs[ci]
        block = tuple(
            tuple(1 if idx[b] in edges[idx[a]] else 0 for b in (letters[v] for v in comp))
            for a in (letters[v] for v in comp)
        )
        size = len(block)
        wielandt = (size - 1) ** 2 + 1
        power = block
        ok = all(all(row) for row in power)
        for _ in range(wielandt - 1):
            if ok:
                break
            power = _bool_mul(power, block)
            ok = all(all(row) for row in power)
        if not ok:
            raise NoPrimitiveChainError(
                "a diagonal block is not primitive",
                {
                    "kind": "imprimitive_block",
                    "component": sorted(letters[v] for v in comp),
                },
            )
    cumulative: list[tuple[str, ...]] = []
    seen: set[str] = set()
    for ci in order:
        seen |= {letters[v] for v in sccs[ci]}
        cumulative.append(tuple(c for c in letters if c in seen))
    levels = tuple(cumulative)
    level_of = {}
    for i, lv in enumerate(levels, start=1):
        for c in lv:
            level_of.setdefault(c, i)
    # Uniform witness power: all entries on or below the block diagonal of
    # some boolean power are positive; bounded by Wielandt plus graph depth.
    bound = (n - 1) ** 2 + 1 + n
    boolean = tuple(
        tuple(1 if j in edges[i] else 0 for j in range(n)) for i in range(n)
    )
    power = boolean
    witness = None
    for k in range(1, bound + 1):
        if all(
            power[idx[a]][idx[b]]
            for a in letters
            for b in letters
            if level_of[a] >= level_of[b]
        ):
            witness = k
            break
        power = _bool_mul(power, boolean)
    if witness is None:  # unreachable if the checks above passed
        raise NoPrimitiveChainError(
            "no uniform witness power below the bound",
            {"kind": "no_witness", "bound": bound},
        )
    return ComponentChain(sub, levels, witness)


def sub_substitution(sub: Substitution, chain: ComponentChain, i: int) -> Substitution:
    """Restriction of the substitution to the level-i alphabet."""
    chain.check_level(i)
    return sub.restrict(chain.alphabet_at(i))


def is_empty_bottom(sub: Substitution, chain: ComponentChain) -> bool:
    """True iff the bottom subshift is empty: A_1 = {s} with s mapped to itself."""
    bottom = chain.alphabet_at(1)
    return len(bottom) == 1 and sub.image(bottom[0]) == bottom[0]
