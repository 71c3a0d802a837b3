"""Invariant-measure computation per level.

Levels whose block eigenvalue strictly dominates everything below carry a
finite ergodic measure; cylinder values are left-eigenvector ratios. Levels
dominated from below carry an infinite Radon measure; finite cylinder values
are products of the divergent limit vectors, normalized through the
quasi-fixed point anchored at the level's distinguished letter, and every
word already present below the cutoff level is flagged infinite. Levels with
block eigenvalue 1 only carry counting measures on orbits and expose no
cylinder evaluation.

All level computations run inside the restricted substitution of that level;
values are exact rationals whenever the block eigenvalue is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .auxiliary import auxiliary_matrix, build_auxiliary
from .classify import LevelReport, _bottom_report, classify_level
from .errors import (
    BudgetExceeded,
    DomainError,
    MeasureTypeCounting,
    WordNotInLevelLanguage,
)
from .kernels import apply_bytes, count_subword, encode_images, encode_word, expand_prefix
from .spectral import SpectralProfile, limit_data, pf_vectors
from .structure import ComponentChain, mat_pow
from .words import Substitution, language

STREAM_BUDGET = 2 * 10**7
POWER_BUDGET = 10**12


@dataclass
class MeasureDescriptor:
    level: int
    kind: str  # "finite_ergodic" | "infinite_radon" | "counting" | "empty"
    anchor: str | None
    i_prime: int | None
    finite_atoms: int
    infinite_orbits: int


def measure_type(
    sub: Substitution,
    chain: ComponentChain,
    spectral: SpectralProfile,
    i: int,
    report: LevelReport | None = None,
) -> MeasureDescriptor:
    chain.check_level(i)
    if i == 1:
        report = report or _bottom_report(sub, chain)
        if report.case == "bottom_empty":
            return MeasureDescriptor(1, "empty", None, None, 0, 0)
        return MeasureDescriptor(1, "finite_ergodic", report.anchor, None, 0, 0)
    report = report or classify_level(sub, chain, spectral, i)
    if not spectral.theta_is_one(i):
        kind = "finite_ergodic" if spectral.level_is_finite(i) else "infinite_radon"
        ip = spectral.i_prime(i) if kind == "infinite_radon" else None
        return MeasureDescriptor(i, kind, report.anchor, ip, 0, 0)
    finite_atoms = sum(1 for p in report.point_seeds if p.shift_periodic)
    infinite = sum(1 for p in report.point_seeds if not p.shift_periodic)
    if report.quasi_fixed is not None and report.quasi_fixed.isolated_orbit:
        infinite += 1
    if finite_atoms + infinite == 0:
        return MeasureDescriptor(i, "empty", report.anchor, None, 0, 0)
    return MeasureDescriptor(i, "counting", report.anchor, None, finite_atoms, infinite)


@dataclass
class CylinderValue:
    level: int
    word: str
    infinite: bool
    exact: Fraction | None
    value: float | None
    anchor: str | None
    algebraic: dict | None = None  # char poly + isolating interval when irrational

    def as_json(self):
        if self.infinite:
            val = "inf"
        elif self.exact is not None:
            val = str(self.exact)
        else:
            val = self.value
        out = {"value": val, "float": self.value, "anchor_letter": self.anchor}
        if self.algebraic:
            out["algebraic"] = self.algebraic
        return out


def _algebraic_note(theta) -> dict | None:
    if theta.as_integer() is not None:
        return None
    theta.refine(Fraction(1, 2**48))
    return {
        "char_poly": list(theta.poly),
        "isolating_interval": [str(theta.lo), str(theta.hi)],
    }


def cylinder_measure(
    sub: Substitution,
    chain: ComponentChain,
    spectral: SpectralProfile,
    i: int,
    v: str,
    report: LevelReport | None = None,
) -> CylinderValue:
    """Measure of the cylinder anchored at the origin spelling ``v``.

    Two-sided cylinders reduce to one-sided ones by shift invariance, so only
    the concatenated word matters.
    """
    desc = measure_type(sub, chain, spectral, i, report)
    if desc.kind == "empty":
        raise DomainError(f"level {i} has no points, no measure to evaluate")
    if desc.kind == "counting":
        raise MeasureTypeCounting(
            f"level {i} carries counting measures on orbits; cylinder values are not exposed"
        )
    if not v:
        raise DomainError("cylinder word must be nonempty")
    m = len(v)
    sub_i, chain_i = chain.restrict(i)
    if v not in language(sub_i, m):
        raise WordNotInLevelLanguage(f"{v!r} is not in the level-{i} language")
    if desc.kind == "finite_ergodic":
        pair = pf_vectors(sub_i, chain_i, m)
        total = sum(pair.beta.values())
        value = pair.beta[v] / total
        if pair.exact:
            return CylinderValue(i, v, False, value, float(value), desc.anchor)
        return CylinderValue(
            i, v, False, None, float(value), desc.anchor, _algebraic_note(spectral.theta(i))
        )
    ld = limit_data(sub, chain, m, i, spectral)
    if v in ld.infinite_words:
        return CylinderValue(i, v, True, None, None, desc.anchor)
    anchors = [w for w in ld.restricted_words if w[0] == desc.anchor]
    assert anchors, "anchor letter must start some language window"
    gammas = [ld.gamma[w] for w in anchors]
    if ld.exact:
        assert len(set(gammas)) == 1, "right limit vector must only depend on the first letter"
    value = gammas[0] * ld.delta[v]
    if ld.exact:
        return CylinderValue(i, v, False, value, float(value), desc.anchor)
    return CylinderValue(
        i, v, False, None, float(value), desc.anchor, _algebraic_note(spectral.theta(i))
    )


# ---------------------------------------------------------------------------
# streaming


def _growth_power(sub: Substitution, anchor: str, target: int, *, at_most: bool) -> int:
    """Smallest k with |sub^k(anchor)| >= target, or largest with <= target."""
    lengths = {c: 1 for c in sub.alphabet}
    k = 0
    stall = 0
    while True:
        size = lengths[anchor]
        if not at_most and size >= target:
            return k
        nxt = {c: sum(lengths[x] for x in sub.image(c)) for c in sub.alphabet}
        if at_most and nxt[anchor] > target:
            return k
        stall = stall + 1 if nxt[anchor] == size else 0
        if stall > 2 * len(sub.alphabet) + 4:
            raise BudgetExceeded("anchor expansion does not grow")
        lengths = nxt
        k += 1


@dataclass
class EmpiricalFrequency:
    level: int
    word: str
    length: int
    power: int
    ratio: float
    scaled_power: int | None = None
    scaled_count: int | None = None
    scaled_value: float | None = None


def empirical_frequency(
    sub: Substitution,
    chain: ComponentChain,
    spectral: SpectralProfile,
    i: int,
    v: str,
    L: int,
    *,
    stream_budget: int = STREAM_BUDGET,
    power_budget: int = POWER_BUDGET,
    report: LevelReport | None = None,
) -> EmpiricalFrequency:
    """Occurrence statistics of ``v`` along the expansion of the anchor letter.

    Returns the frequency in the length-L prefix of the first power image of
    length >= L, and for infinite-measure levels also the occurrence count in
    a full power image scaled by the level eigenvalue (computed through exact
    window-matrix powers; the windowed count differs from the plain count by
    less than the window length).
    """
    desc = measure_type(sub, chain, spectral, i, report)
    if desc.kind not in ("finite_ergodic", "infinite_radon"):
        raise DomainError(f"level {i} has no expanding anchor to stream")
    if not v or len(v) > L:
        raise DomainError("need a nonempty word no longer than the prefix")
    m = len(v)
    sub_i, chain_i = chain.restrict(i)
    if v not in language(sub_i, m):
        raise WordNotInLevelLanguage(f"{v!r} is not in the level-{i} language")
    if L > stream_budget:
        raise BudgetExceeded(f"prefix length {L} exceeds the streaming budget {stream_budget}")
    anchor = desc.anchor
    k = _growth_power(sub_i, anchor, L, at_most=False)
    letters = sub_i.alphabet.letters
    images = encode_images(letters, sub_i.images)
    prefix = expand_prefix(images, letters.index(anchor), k, L)
    assert len(prefix) == L
    ratio = count_subword(encode_word(letters, v), prefix) / L
    result = EmpiricalFrequency(level=i, word=v, length=L, power=k, ratio=ratio)
    if desc.kind == "infinite_radon":
        k2 = _growth_power(sub_i, anchor, power_budget, at_most=True)
        aux = build_auxiliary(sub_i, chain_i, m)
        matrix = auxiliary_matrix(aux)
        u = min(
            (w for w in aux.words if w[0] == anchor), key=sub_i.alphabet.word_key
        )
        power = mat_pow(matrix.entries, k2)
        count = power[aux.index(u)][aux.index(v)]
        theta = spectral.theta(i)
        exact_theta = theta.as_integer()
        if exact_theta is not None:
            scaled = float(Fraction(count, exact_theta**k2))
        else:
            scaled = count / float(theta) ** k2
        result.scaled_power = k2
        result.scaled_count = count
        result.scaled_value = scaled
    return result


@dataclass
class UniformityResult:
    level: int
    word: str
    window_count: int
    target: float
    ratios: dict[int, float]
    max_deviation: float


def uniformity_check(
    sub: Substitution,
    chain: ComponentChain,
    spectral: SpectralProfile,
    i: int,
    v: str,
    n: int,
    offsets: tuple[int, ...] = (0,),
    *,
    stream_budget: int = STREAM_BUDGET,
    report: LevelReport | None = None,
) -> UniformityResult:
    """Return-word frequency stability along the quasi-fixed point.

    Streams the right half of the level's quasi-fixed point, collects the
    positions of new-letter visits, and compares window frequencies of ``v``
    against the eigenvector ratio it should converge to. A falsification
    harness, not a proof.
    """
    chain.check_level(i)
    if i < 2:
        raise DomainError("uniformity windows are defined on levels >= 2")
    if n < 1 or min(offsets, default=0) < 0:
        raise DomainError("need a positive window size and nonnegative offsets")
    report = report or classify_level(sub, chain, spectral, i)
    if report.quasi_fixed is None:
        raise DomainError(f"level {i} has no quasi-fixed point to stream")
    seed = report.quasi_fixed.seed
    new = set(chain.new_letters(i))
    if not any(c in new for c in v):
        raise DomainError("the word must contain a new letter of the level")
    m = len(v)
    sub_i, chain_i = chain.restrict(i)
    if v not in language(sub_i, m):
        raise WordNotInLevelLanguage(f"{v!r} is not in the level-{i} language")
    # Target ratio from the eigenvector data, normalized over the windows
    # that start with a new letter.
    if spectral.theta_is_one(i):
        raise DomainError(f"level {i} has eigenvalue 1; no frequency target exists")
    if spectral.level_is_finite(i):
        pair = pf_vectors(sub_i, chain_i, m)
        data = pair.beta
    else:
        ld = limit_data(sub, chain, m, i, spectral)
        data = ld.delta
    denom = sum(val for w, val in data.items() if w[0] in new)
    target = float(data[v] / denom)

    # Stream the right half of the quasi-fixed point in the seed orientation.
    mirrored = seed.orientation == "reverse"
    system = sub_i.reversed() if mirrored else sub_i
    query = v[::-1] if mirrored else v
    head = seed.b + (seed.v[::-1] if mirrored else seed.v)
    letters = system.alphabet.letters
    images = encode_images(letters, system.images)
    new_ids = np.array(sorted(letters.index(c) for c in new), dtype=np.uint8)
    needed = max(offsets) + n + 1
    buf = bytearray(encode_word(letters, head))
    chunk = encode_word(letters, head[1:])
    positions: list[int] = []
    scanned = 0

    def scan(upto: int) -> None:
        nonlocal scanned
        arr = np.frombuffer(bytes(buf[scanned:upto]), dtype=np.uint8)
        hits = np.flatnonzero(np.isin(arr, new_ids)) + scanned
        positions.extend(int(h) for h in hits)
        scanned = upto

    scan(len(buf))
    while len(positions) < needed + 1:
        for _ in range(seed.k):
            chunk = apply_bytes(images, chunk)
        if len(buf) + len(chunk) > stream_budget:
            raise BudgetExceeded("quasi-fixed point stream exceeded its budget")
        buf.extend(chunk)
        scan(len(buf))
    qbytes = encode_word(letters, query)
    ratios: dict[int, float] = {}
    for j in sorted(set(offsets)):
        lo, hi = positions[j], positions[j + n]
        window = bytes(buf[lo : hi + 1])
        ratios[j] = count_subword(qbytes, window) / n
    deviation = max(abs(r - target) for r in ratios.values())
    return UniformityResult(
        level=i, word=v, window_count=n, target=target, ratios=ratios, max_deviation=deviation
    )


def level_measure_table(
    sub: Substitution,
    chain: ComponentChain,
    spectral: SpectralProfile,
    i: int,
    max_m: int = 2,
    report: LevelReport | None = None,
) -> dict:
    """Descriptor plus cylinder values for all words up to length ``max_m``."""
    desc = measure_type(sub, chain, spectral, i, report)
    out: dict = {"level": i, "kind": desc.kind, "anchor_letter": desc.anchor}
    if desc.kind == "infinite_radon":
        out["i_prime"] = desc.i_prime
    if desc.kind == "counting":
        out["finite_atoms"] = desc.finite_atoms
        out["infinite_orbits"] = desc.infinite_orbits
    if desc.kind in ("finite_ergodic", "infinite_radon"):
        sub_i, _ = chain.restrict(i)
        key = sub.alphabet.word_key
        cylinders: dict[str, dict] = {}
        for m in range(1, max_m + 1):
            for w in sorted(language(sub_i, m), key=key):
                cylinders[w] = cylinder_measure(sub, chain, spectral, i, w, report).as_json()
        out["cylinders"] = cylinders
    return out
