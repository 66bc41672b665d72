"""Admissible cyclic words, their rank, admissible moves and crossing sequences.

A word is stored as a tuple of 2n signed integers read counter-clockwise:
``+i`` is the label i and ``-i`` is its antipode i'.  The canonical rotation
puts the unprimed label n in slot 0, so equal words compare equal as tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import permutations, product
from math import factorial
from typing import Optional, Sequence, Union

from .curve import (
    ExtendedCurve, PolynomialCurve, ProjectedCurve, extend_curve, minor_k,
    minor_pair, pairs, project,
)
from .exactnum import (
    CommonRootError, Poly, RootInterval, as_fraction, count_real_roots,
    isolate_roots, refine_root, separate_roots,
)

__all__ = [
    "AdmissibleWord", "MoveRecord", "Crossing", "CrossingSequence",
    "WallError", "IllegalMoveError", "DegenerateCurveError", "RankIncreaseError",
    "format_label", "word_of_matrix", "pair_sign", "rank", "rank_profile",
    "enumerate_words", "legal_moves", "apply_move", "classify_move",
    "find_move", "crossing_sequence", "certify_theorem_main",
    "witness_matrix", "totally_positive_word", "totally_negative_word",
    "MOVE_TYPES",
]

MOVE_TYPES = ("Ia", "Ib", "IIa", "IIb", "IIIa", "IIIb", "IIIc", "IVa", "IVb", "IVc")
MAX_N = 8


class WallError(ValueError):
    """The 2 x n matrix is not in the generic stratum (zero or parallel columns)."""


class IllegalMoveError(ValueError):
    pass


class DegenerateCurveError(ValueError):
    """Two m_Y share a root, or some m_Y has a multiple root or vanishes at a junction."""


class RankIncreaseError(AssertionError):
    """A crossing raised the rank: an implementation bug or a counterexample."""


def format_label(x: int) -> str:
    return f"{abs(x)}'" if x < 0 else str(x)


@dataclass(frozen=True)
class AdmissibleWord:
    """Cyclic word in 1..n, 1'..n' with every i antipodal to i'."""

    n: int
    slots: tuple[int, ...]
    _pos: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n, s = self.n, tuple(self.slots)
        if len(s) != 2 * n or sorted(s) != sorted(list(range(1, n + 1)) + list(range(-n, 0))):
            raise ValueError("a word must use each of 1..n and 1'..n' exactly once")
        k = s.index(n)
        s = s[k:] + s[:k]
        for p in range(n):
            if s[p + n] != -s[p]:
                raise ValueError(f"{format_label(s[p])} is not antipodal to its partner")
        object.__setattr__(self, "slots", s)
        object.__setattr__(self, "_pos", {x: p for p, x in enumerate(s)})

    @classmethod
    def parse(cls, text: str) -> "AdmissibleWord":
        labels = []
        for ch in text:
            if ch.isdigit():
                labels.append(int(ch))
            elif ch in "'′":
                if not labels or labels[-1] < 0:
                    raise ValueError(f"stray prime in {text!r}")
                labels[-1] = -labels[-1]
            elif ch in " ,()":
                continue
            else:
                raise ValueError(f"unexpected character {ch!r} in word {text!r}")
        if len(labels) % 2:
            raise ValueError(f"word {text!r} has odd length")
        return cls(len(labels) // 2, tuple(labels))

    def __str__(self):
        return "".join(format_label(x) for x in self.slots)

    def slot(self, label: int) -> int:
        return self._pos[label]

    def label_at(self, p: int) -> int:
        return self.slots[p % (2 * self.n)]

    @property
    def is_plus(self) -> bool:
        return pair_sign(self, (self.n - 1, self.n)) > 0


def totally_positive_word(n: int) -> AdmissibleWord:
    return AdmissibleWord(n, tuple(range(1, n + 1)) + tuple(-i for i in range(1, n + 1)))


def totally_negative_word(n: int) -> AdmissibleWord:
    """n (n-1)' (n-2) ... read with alternating primes, then the antipodes."""
    half = tuple((n - p) * (-1) ** p for p in range(n))
    return AdmissibleWord(n, half + tuple(-x for x in half))


# -- words from matrices ------------------------------------------------------

def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def word_of_matrix(X) -> AdmissibleWord:
    """Word read counter-clockwise from the columns of a 2 x n rational matrix.

    Label i sits at direction v_i and i' at -v_i.  Comparisons are exact
    (half-plane test plus cross products).
    """
    top, bottom = [as_fraction(a) for a in X[0]], [as_fraction(a) for a in X[1]]
    n = len(top)
    vs = list(zip(top, bottom))
    for i, v in enumerate(vs, 1):
        if not v[0] and not v[1]:
            raise WallError(f"not in C1: column {i} vanishes")
    for i in range(n):
        for j in range(i + 1, n):
            if not _det2(vs[i], vs[j]):
                raise WallError(f"not in C3, on a wall: m_{{{i + 1},{j + 1}}} = 0")
    ref = vs[n - 1]

    def half(u):
        d = _det2(ref, u)
        if d > 0 or (d == 0 and ref[0] * u[0] + ref[1] * u[1] > 0):
            return 0
        return 1

    points = []
    for i, v in enumerate(vs, 1):
        points.append((v, i))
        points.append(((-v[0], -v[1]), -i))

    def cmp(a, b):
        ha, hb = half(a[0]), half(b[0])
        if ha != hb:
            return ha - hb
        d = _det2(a[0], b[0])
        return -1 if d > 0 else (1 if d < 0 else 0)

    points.sort(key=cmp_to_key(cmp))
    return AdmissibleWord(n, tuple(lbl for _, lbl in points))


def witness_matrix(w: AdmissibleWord) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """A matrix X in the normalized 2 x n chart with word_of_matrix(X) == w.

    Slots are spread evenly along the boundary of the square [-1, 1]^2,
    starting at (0, 1) and running counter-clockwise; the column for n-1 is
    rescaled to first coordinate 1.  Requires w in W+.
    """
    n = w.n
    if not w.is_plus:
        raise ValueError("witness matrices exist only for words in W+")

    def square_point(p: int):
        s = Fraction(8 * p, 2 * n)  # arclength from (0, 1), ccw
        if s <= 1:
            return (-s, Fraction(1))
        if s <= 3:
            return (Fraction(-1), 1 - (s - 1))
        if s <= 5:
            return (-1 + (s - 3), Fraction(-1))
        if s <= 7:
            return (Fraction(1), -1 + (s - 5))
        return (1 - (s - 7), Fraction(1))

    cols = []
    for i in range(1, n + 1):
        v = square_point(w.slot(i))
        if i == n - 1:
            v = (Fraction(1), v[1] / v[0])
        cols.append(v)
    return tuple(c[0] for c in cols), tuple(c[1] for c in cols)


# -- signs and rank -----------------------------------------------------------

def pair_sign(w: AdmissibleWord, Y: Sequence[int]) -> int:
    """+1 when j follows i counter-clockwise within less than half a turn."""
    i, j = Y
    if not 1 <= i < j <= w.n:
        raise ValueError(f"malformed pair {tuple(Y)!r}")
    gap = (w.slot(j) - w.slot(i)) % (2 * w.n)
    assert gap != w.n
    return 1 if gap < w.n else -1


def rank_profile(w: AdmissibleWord) -> dict:
    """Monotone runs behind the rank: directions, run lengths (in slots) and contents."""
    n, size = w.n, 2 * w.n
    dirs, lengths = [], []
    for k in range(1, n):
        fwd = (w.slot(k + 1) - w.slot(k)) % size
        if fwd < n:
            dirs.append(1)
            lengths.append(fwd)
        else:
            dirs.append(-1)
            lengths.append(size - fwd)
    runs = []
    start = 1
    for k in range(2, n):
        if dirs[k - 1] != dirs[k - 2]:
            runs.append((start, k))
            start = k
    runs.append((start, n))
    contents = [sum(lengths[a - 1:b - 1]) // n for a, b in runs]
    return {"directions": dirs, "lengths": lengths, "runs": runs, "contents": contents}


def rank(w: AdmissibleWord) -> int:
    """rk(w) = 2 * total content + (number of maximal monotone runs) - 1."""
    if w.n < 2:
        return 0
    prof = rank_profile(w)
    return 2 * sum(prof["contents"]) + len(prof["runs"]) - 1


def enumerate_words(n: int, plus_only: bool = False) -> list[AdmissibleWord]:
    """All admissible words (or only those in W+), canonical and duplicate-free."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n > MAX_N:
        raise ValueError(f"enumeration capped at n <= {MAX_N}")
    out = []
    for perm in permutations(range(1, n)):
        for signs in product((1, -1), repeat=n - 1):
            half = (n,) + tuple(s * x for s, x in zip(signs, perm))
            w = AdmissibleWord(n, half + tuple(-x for x in half))
            if not plus_only or w.is_plus:
                out.append(w)
    expected = 2 ** (n - 2 if plus_only else n - 1) * factorial(n - 1)
    assert len(out) == len(set(out)) == expected
    return out


# -- admissible moves ---------------------------------------------------------

@dataclass(frozen=True)
class MoveRecord:
    """Label ``mover`` (with its antipode) passes the adjacent label ``passed``.

    ``direction`` is +1 for counter-clockwise (increasing slot) and -1 for
    clockwise.  ``passed`` is a signed label.
    """

    mover: int
    direction: int
    passed: int
    type: str
    rank_before: int
    rank_after: int
    flips_m12: bool

    @property
    def pair(self) -> tuple[int, int]:
        return tuple(sorted((self.mover, abs(self.passed))))

    def to_json(self) -> dict:
        return {
            "mover": self.mover,
            "direction": "ccw" if self.direction > 0 else "cw",
            "passed": format_label(self.passed),
            "type": self.type,
            "rank_before": self.rank_before,
            "rank_after": self.rank_after,
        }


def _move_direction(w: AdmissibleWord, j: int) -> int:
    return 1 if pair_sign(w, (j, j + 1)) > 0 else -1


def legal_moves(w: AdmissibleWord) -> list[tuple[int, int]]:
    """(mover, direction) pairs: j rotates toward j+1 along the shorter arc."""
    out = []
    for j in range(1, w.n):
        d = _move_direction(w, j)
        if w.label_at(w.slot(j) + d) != j + 1:
            out.append((j, d))
    return out


def _in_short_arc(w: AdmissibleWord, x: int, y: int, z: int) -> bool:
    """Does label z lie strictly inside the shorter arc between labels x and y?"""
    size, n = 2 * w.n, w.n
    sx, sy, sz = w.slot(x), w.slot(y), w.slot(z)
    fwd = (sy - sx) % size
    assert fwd != n
    if fwd < n:
        return 0 < (sz - sx) % size < fwd
    return 0 < (sx - sz) % size < size - fwd


def classify_move(w: AdmissibleWord, j: int, direction: int) -> str:
    """Collision type of mover j passing its neighbour in ``direction``."""
    alpha = w.label_at(w.slot(j) + direction)
    base, primed = abs(alpha), alpha < 0
    i = j
    if i == 1:
        return "Ib" if primed else "Ia"
    if base == 1:
        return "IIb" if primed else "IIa"
    if base != i - 1:
        return "IVa" if primed else "IIIa"
    if not primed:
        if _in_short_arc(w, -(i - 1), i, i - 2):
            return "IIIb"
        assert _in_short_arc(w, i - 1, -i, i - 2)
        return "IIIc"
    if _in_short_arc(w, i - 1, i, i - 2):
        return "IVb"
    assert _in_short_arc(w, -(i - 1), -i, i - 2)
    return "IVc"


def apply_move(w: AdmissibleWord, j: int, direction: Optional[int] = None
               ) -> tuple[AdmissibleWord, MoveRecord]:
    """Rotate label j (and j') one step toward j+1, past the adjacent label."""
    n = w.n
    if not 1 <= j <= n - 1:
        raise IllegalMoveError(f"label {j} cannot move (movers are 1..{n - 1})")
    d = _move_direction(w, j)
    if direction is not None and direction != d:
        raise IllegalMoveError(
            f"label {j} rotates toward {j + 1} along the shorter arc, "
            f"i.e. {'ccw' if d > 0 else 'cw'}")
    p = w.slot(j)
    alpha = w.label_at(p + d)
    if alpha == j + 1:
        raise IllegalMoveError(f"label {j} is already adjacent to {j + 1}; it cannot pass it")
    size = 2 * n
    s = list(w.slots)
    for a in (p, p + n):
        b = a + d
        s[a % size], s[b % size] = s[b % size], s[a % size]
    w2 = AdmissibleWord(n, tuple(s))
    rec = MoveRecord(
        mover=j, direction=d, passed=alpha, type=classify_move(w, j, d),
        rank_before=rank(w), rank_after=rank(w2),
        flips_m12=pair_sign(w, (1, 2)) != pair_sign(w2, (1, 2)),
    )
    return w2, rec


def find_move(before: AdmissibleWord, after: AdmissibleWord) -> MoveRecord:
    """The admissible move taking ``before`` to ``after``.

    When both colliding labels could be the mover, the smaller label is
    reported.
    """
    for j, d in legal_moves(before):
        w2, rec = apply_move(before, j, d)
        if w2 == after:
            return rec
    raise IllegalMoveError(f"no admissible move takes {before} to {after}")


# -- crossing sequences -------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    Y: tuple[int, int]
    interval: RootInterval
    word_before: AdmissibleWord
    word_after: AdmissibleWord
    move: MoveRecord

    def to_json(self) -> dict:
        return {
            "Y": list(self.Y),
            "lo": str(self.interval.lo),
            "hi": str(self.interval.hi),
            "approx": float(self.interval.mid),
            "word_before": str(self.word_before),
            "word_after": str(self.word_after),
            "move_type": self.move.type,
            "mover": self.move.mover,
            "passed": format_label(self.move.passed),
            "rank_before": self.move.rank_before,
            "rank_after": self.move.rank_after,
        }


@dataclass(frozen=True)
class CrossingSequence:
    lo: Fraction
    hi: Fraction
    words: tuple[AdmissibleWord, ...]
    crossings: tuple[Crossing, ...]

    @property
    def ranks(self) -> list[int]:
        return [rank(w) for w in self.words]

    def to_json(self) -> dict:
        return {
            "domain": [str(self.lo), str(self.hi)],
            "words": [str(w) for w in self.words],
            "ranks": self.ranks,
            "crossings": [c.to_json() for c in self.crossings],
        }


CurveLike = Union[ProjectedCurve, PolynomialCurve, ExtendedCurve]


def _as_pieces(curve: CurveLike, lo, hi) -> list[tuple[ProjectedCurve, Fraction, Fraction]]:
    if isinstance(curve, ExtendedCurve):
        if lo is not None or hi is not None:
            raise ValueError("an extended curve carries its own domain")
        return [(project(c), a, b) for c, a, b in curve.pieces]
    if lo is None or hi is None:
        raise ValueError("domain endpoints required")
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not lo < hi:
        raise ValueError("domain must satisfy lo < hi")
    pc = project(curve) if isinstance(curve, PolynomialCurve) else curve
    return [(pc, lo, hi)]


def crossing_sequence(curve: CurveLike, lo=None, hi=None,
                      width=Fraction(1, 1024)) -> CrossingSequence:
    """Wall crossings of the projected curve, in time order, with the words between.

    Root intervals are refined below ``width`` (``None`` keeps whatever
    width separation needed).

    Raises :class:`DegenerateCurveError` when the curve leaves the stratum
    where at most one m_Y vanishes at a time through a simple root.
    """
    pieces = _as_pieces(curve, lo, hi)
    n = pieces[0][0].n
    items = []
    for idx, (pc, a, b) in enumerate(pieces):
        for Y in pairs(n):
            p = minor_pair(pc, Y)
            if not p:
                raise DegenerateCurveError(f"m_{{{Y[0]},{Y[1]}}} vanishes identically")
            if p.degree == 0:
                continue
            for t in (a, b):
                if not p(t):
                    raise DegenerateCurveError(
                        f"m_{{{Y[0]},{Y[1]}}} vanishes at the endpoint t={t}: perturb L0 or the domain")
            for iv in isolate_roots(p, a, b):
                if iv.multiplicity > 1:
                    raise DegenerateCurveError(
                        f"m_{{{Y[0]},{Y[1]}}} has a multiple root near {float(iv.mid):.6g}: perturb L0")
                items.append(((idx, Y), p, iv))
    try:
        ordered = separate_roots(items)
    except CommonRootError as exc:
        ys = [k[1] for k in exc.keys]
        raise DegenerateCurveError(
            f"m_{{{ys[0][0]},{ys[0][1]}}} and m_{{{ys[1][0]},{ys[1][1]}}} vanish together "
            f"near t={float(exc.interval.mid):.6g} (not in C2): perturb L0") from None
    if width is not None:
        ordered = [(key, p, refine_root(p, iv, width) if iv.width > width else iv)
                   for key, p, iv in ordered]

    def word_at(t: Fraction) -> AdmissibleWord:
        for pc, a, b in pieces:
            if a <= t <= b:
                return word_of_matrix(pc.at(t))
        raise AssertionError

    start, end = pieces[0][1], pieces[-1][2]
    # no m_Y vanishes between consecutive isolating intervals
    gaps = [(ordered[k][2].hi + ordered[k + 1][2].lo) / 2 for k in range(len(ordered) - 1)]
    samples = [start] + gaps + ([end] if ordered else [])
    words = [word_at(t) for t in samples]
    crossings = []
    for k, ((_, Y), _, iv) in enumerate(ordered):
        try:
            rec = find_move(words[k], words[k + 1])
        except IllegalMoveError as exc:
            raise AssertionError(f"crossing of m_{Y} near {float(iv.mid):.6g}: {exc}") from None
        if rec.pair != Y:
            raise AssertionError(f"move {rec} does not match the vanishing minor {Y}")
        crossings.append(Crossing(Y, iv, words[k], words[k + 1], rec))
    return CrossingSequence(start, end, tuple(words), tuple(crossings))


@dataclass
class TheoremMainReport:
    n: int
    domain: tuple[Fraction, Fraction]
    extended_domain: tuple[Fraction, Fraction]
    m2_root_count: int
    m2_root_count_sturm: int
    rank_trace: list[int]
    bound: int
    passed: bool
    failures: list[str]
    sequence: CrossingSequence = field(repr=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "domain": [str(x) for x in self.domain],
            "extended_domain": [str(x) for x in self.extended_domain],
            "m2_root_count": self.m2_root_count,
            "m2_root_count_sturm": self.m2_root_count_sturm,
            "rank_trace": self.rank_trace,
            "bound": self.bound,
            "passed": self.passed,
            "failures": self.failures,
            "crossings": [c.to_json() for c in self.sequence.crossings],
        }


def certify_theorem_main(curve: Union[PolynomialCurve, ExtendedCurve], s=None, f=None
                         ) -> TheoremMainReport:
    """Rank certificate that m_2 has at most 2(n-2) zeros along the curve.

    A polynomial curve is first extended from [s, f] so that it starts in Neg
    and ends in Pos.  Any rank increase raises :class:`RankIncreaseError`.
    """
    if isinstance(curve, PolynomialCurve):
        ext = extend_curve(curve, s, f)
        dom = (as_fraction(s), as_fraction(f))
    else:
        ext = curve
        dom = (ext.a, ext.b)
    n = ext.n
    seq = crossing_sequence(ext)
    ranks = seq.ranks
    bound = 2 * (n - 2)
    failures = []
    if ranks[0] != bound:
        failures.append(f"start rank {ranks[0]} != 2(n-2) = {bound}")
    if ranks[-1] != 0:
        failures.append(f"end rank {ranks[-1]} != 0")
    for c in seq.crossings:
        if c.move.rank_after > c.move.rank_before:
            raise RankIncreaseError(
                f"rank rose {c.move.rank_before} -> {c.move.rank_after} at {c.word_before} -> "
                f"{c.word_after} (type {c.move.type})")
        if c.Y == (1, 2) and c.move.rank_after != c.move.rank_before - 1:
            failures.append(f"m_2 crossing near {float(c.interval.mid):.4g} changed rank by "
                            f"{c.move.rank_after - c.move.rank_before}")
    m2 = sum(1 for c in seq.crossings if c.Y == (1, 2))
    sturm = 0
    for pc_curve, a, b in ext.pieces:
        sturm += count_real_roots(minor_k(pc_curve, 2), a, b)
    if sturm != m2:
        failures.append(f"crossing count {m2} disagrees with Sturm count {sturm}")
    if m2 > bound:
        failures.append(f"m_2 has {m2} > {bound} zeros")
    return TheoremMainReport(
        n=n, domain=dom, extended_domain=(ext.a, ext.b), m2_root_count=m2,
        m2_root_count_sturm=sturm, rank_trace=ranks, bound=bound,
        passed=not failures, failures=failures, sequence=seq,
    )
