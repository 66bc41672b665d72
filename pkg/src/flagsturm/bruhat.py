"""Permutations, Bruhat cells of lower unitriangular matrices, good matrices and itineraries.

Permutations compose left to right: ``i^(sigma tau) = (i^sigma)^tau``, so
``sigma * a_j`` swaps the values j and j+1 in the one-line notation and
the permutation matrix with ones at ``(i, i^sigma)`` satisfies
``P_(sigma tau) = P_sigma P_tau``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .curve import (
    LowerUni, NilpotentGenerator, PolynomialCurve, is_totally_negative,
    is_totally_positive, make_curve, minors, positivity_thresholds,
)
from .exactnum import (
    CommonRootError, Poly, RootInterval, as_fraction, count_real_roots,
    frac_rank, is_squarefree, isolate_roots, separate_roots,
)

__all__ = [
    "Permutation", "ReducedWord", "mult_vector", "cover_update",
    "generator_matrix", "word_matrix", "bruhat_cell", "corner_rank_cell",
    "eta_word", "GoodMatrix", "NotGoodError", "build_good_matrix", "is_good",
    "distinctify", "Itinerary", "ItineraryError", "itinerary",
    "NontransversalityCount", "count_nontransversality", "perturbed_itinerary",
]


@dataclass(frozen=True)
class Permutation:
    """One-line notation ``values = (1^s, ..., n^s)``."""

    values: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.values)
        if sorted(v) != list(range(1, len(v) + 1)):
            raise ValueError(f"{v} is not a permutation of 1..{len(v)}")
        object.__setattr__(self, "values", v)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def top(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def generator(cls, n: int, j: int) -> "Permutation":
        if not 1 <= j <= n - 1:
            raise ValueError(f"a_{j} undefined for n={n}")
        v = list(range(1, n + 1))
        v[j - 1], v[j] = v[j], v[j - 1]
        return cls(tuple(v))

    @classmethod
    def from_word(cls, n: int, letters: Iterable[int]) -> "Permutation":
        p = cls.identity(n)
        for j in letters:
            p = p * cls.generator(n, j)
        return p

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, i: int) -> int:
        return self.values[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Permutation(tuple(other.values[x - 1] for x in self.values))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.values, 1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def inversions(self) -> int:
        v = self.values
        return sum(1 for i in range(len(v)) for j in range(i + 1, len(v)) if v[i] > v[j])

    def position(self, value: int) -> int:
        return self.values.index(value) + 1

    def reduced_word(self) -> "ReducedWord":
        """A reduced word obtained by bubble-sorting values from the right."""
        letters = []
        p = self
        while p.inversions():
            for j in range(1, p.n):
                if p.position(j) > p.position(j + 1):
                    letters.append(j)
                    p = p * Permutation.generator(p.n, j)
                    break
        return ReducedWord(self.n, tuple(reversed(letters)))

    def __str__(self):
        return "".join(map(str, self.values)) if self.n < 10 else " ".join(map(str, self.values))


@dataclass(frozen=True)
class ReducedWord:
    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        letters = tuple(int(j) for j in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.product().inversions() != len(letters):
            raise ValueError(f"word {letters} is not reduced")

    def product(self) -> Permutation:
        return Permutation.from_word(self.n, self.letters)

    def prefixes(self) -> list[Permutation]:
        """rho_0 = e, rho_1, ..., rho_l."""
        out = [Permutation.identity(self.n)]
        for j in self.letters:
            out.append(out[-1] * Permutation.generator(self.n, j))
        return out

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(f"a{j}" for j in self.letters)


def eta_word(n: int) -> ReducedWord:
    """a_1 (a_2 a_1) (a_3 a_2 a_1) ... : a reduced word for the top permutation."""
    return ReducedWord(n, tuple(j for i in range(1, n) for j in range(i, 0, -1)))


def mult_vector(sigma: Permutation) -> tuple[int, ...]:
    """mult_k(sigma) = (1^s + ... + k^s) - (1 + ... + k), k = 1..n-1."""
    out, acc = [], 0
    for k in range(1, sigma.n):
        acc += sigma(k)
        out.append(acc - k * (k + 1) // 2)
    return tuple(out)


def cover_update(sigma0: Permutation, j: int) -> tuple[int, ...]:
    """mult of sigma0 * a_j from mult of sigma0, for a Bruhat cover."""
    i0, i1 = sigma0.position(j), sigma0.position(j + 1)
    if i0 > i1:
        raise ValueError(f"{sigma0} * a_{j} is not a cover of {sigma0} (it lowers the length)")
    base = mult_vector(sigma0)
    return tuple(m + 1 if i0 <= k < i1 else m for k, m in enumerate(base, 1))


# -- matrices -----------------------------------------------------------------

def generator_matrix(n: int, j: int, tau) -> LowerUni:
    """lambda_j(tau): identity plus tau at (j+1, j)."""
    if not 1 <= j <= n - 1:
        raise ValueError(f"generator index {j} outside 1..{n - 1}")
    return LowerUni.from_entries(n, {(j + 1, j): as_fraction(tau)} if tau else {})


def word_matrix(n: int, letters: Sequence[int], taus: Sequence) -> LowerUni:
    if len(letters) != len(taus):
        raise ValueError("need one parameter per letter")
    L = LowerUni.identity(n)
    for j, tau in zip(letters, taus):
        L = L @ generator_matrix(n, j, tau)
    return L


def bruhat_cell(L: LowerUni) -> Permutation:
    """The rho with L = U1 P_rho U2, by two-sided elimination.

    Columns are scanned left to right; the pivot is the lowest row not yet
    used whose entry is nonzero.  Rows above are cleared with row operations
    (upper triangular on the left) and the rest of the row with column
    operations (upper triangular on the right).
    """
    n = L.n
    a = [list(r) for r in L.rows]
    rho = [0] * n
    used = set()
    for col in range(n):
        piv = next(r for r in range(n - 1, -1, -1) if r not in used and a[r][col])
        used.add(piv)
        rho[piv] = col + 1
        for r in range(piv):
            if a[r][col]:
                f = a[r][col] / a[piv][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[piv])]
        for c in range(col + 1, n):
            if a[piv][c]:
                f = a[piv][c] / a[piv][col]
                for r in range(n):
                    a[r][c] -= f * a[r][col]
    return Permutation(tuple(rho))


def corner_rank_cell(L: LowerUni) -> Permutation:
    """Same cell from ranks of the southwest corners rows i..n, columns 1..j."""
    n = L.n

    def r(i, j):
        if i > n or j < 1:
            return 0
        return frac_rank([row[:j] for row in L.rows[i - 1:]])

    rho = [0] * n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if r(i, j) - r(i + 1, j) - r(i, j - 1) + r(i + 1, j - 1) == 1:
                rho[i - 1] = j
    return Permutation(tuple(rho))


# -- good matrices ------------------------------------------------------------

class NotGoodError(ValueError):
    pass


def _good_minor(p: Poly, mu: int, window: Optional[tuple[Fraction, Fraction]]) -> bool:
    low, q = p.strip_zero_root()
    if low != mu or not is_squarefree(q):
        return False
    if count_real_roots(q) != q.degree:
        return False
    if window is not None and q.degree:
        lo, hi = window
        if count_real_roots(q, lo, hi) != q.degree or not q(hi):
            return False
    return True


def is_good(L: LowerUni, rho: Permutation, N0: NilpotentGenerator,
            window: Optional[tuple] = None) -> bool:
    """rho-goodness of L for the curve L exp(t N0), checked exactly.

    Every m_k must be t^mult_k(eta rho) times a squarefree polynomial with
    only real roots.  With ``window = (t-, t+)`` the nonzero roots must also
    lie strictly inside it and the curve must be in Neg at t- and Pos at t+.
    """
    if bruhat_cell(L) != rho:
        return False
    curve = make_curve(L, N0, check=False)
    sigma = Permutation.top(L.n) * rho
    if window is not None:
        lo, hi = (as_fraction(x) for x in window)
        if not (is_totally_negative(curve.at(lo)) and is_totally_positive(curve.at(hi))):
            return False
        window = (lo, hi)
    return all(_good_minor(p, mu, window) for p, mu in zip(minors(curve), mult_vector(sigma)))


@dataclass(frozen=True)
class GoodMatrix:
    """L = lambda_{j1}(tau1) ... lambda_{jl}(taul) with the data that built it."""

    L: LowerUni
    word: ReducedWord
    taus: tuple[Fraction, ...]
    N0: NilpotentGenerator
    window: Optional[tuple[Fraction, Fraction]] = None

    @property
    def rho(self) -> Permutation:
        return self.word.product()

    @cached_property
    def curve(self) -> PolynomialCurve:
        return make_curve(self.L, self.N0)

    def to_json(self) -> dict:
        return {
            "n": self.L.n,
            "word": list(self.word.letters),
            "taus": [str(t) for t in self.taus],
            "L0": self.L.to_json(),
            "N0_subdiag": [str(x) for x in self.N0.subdiag],
            "window": None if self.window is None else [str(x) for x in self.window],
        }


def _nearest_root_gap(L: LowerUni, N0: NilpotentGenerator) -> Fraction:
    """Half the distance from 0 to the closest nonzero root of any m_k (1 if none)."""
    best = None
    for p in minors(make_curve(L, N0, check=False)):
        _, q = p.strip_zero_root()
        for iv in isolate_roots(q):
            d = min(abs(iv.lo), abs(iv.hi))
            if d > 0 and (best is None or d < best):
                best = d
    return Fraction(1) if best is None else min(Fraction(1), best / 2)


def build_good_matrix(word: ReducedWord, N0: NilpotentGenerator, mode: str = "polynomial",
                      taus: Optional[Sequence] = None, seed: Optional[int] = None,
                      window: Optional[tuple] = None, cap: int = 64) -> GoodMatrix:
    """Grow a good matrix one generator at a time, halving |tau| until good.

    ``mode='polynomial'`` checks goodness of every prefix.  ``mode='along'``
    also keeps the nonzero roots inside ``window`` (default: positivity
    thresholds of the identity along N0) with Neg/Pos at its ends.  With
    ``taus`` given, those parameters are used verbatim and must be good.
    Signs alternate +,-,+,... unless ``seed`` picks them at random.
    """
    n = word.n
    if N0.n != n:
        raise ValueError("N0 and word disagree on n")
    if mode not in ("polynomial", "along"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "along":
        window = tuple(as_fraction(x) for x in (window or positivity_thresholds(LowerUni.identity(n), N0)))
        if not window[0] < 0 < window[1]:
            raise ValueError("the window must contain 0 in its interior")
    else:
        window = None
    if taus is not None and len(taus) != len(word):
        raise ValueError(f"need {len(word)} parameters, got {len(taus)}")
    rng = random.Random(seed) if seed is not None else None
    L = LowerUni.identity(n)
    chosen = []
    for step, (j, rho) in enumerate(zip(word.letters, word.prefixes()[1:])):
        if taus is not None:
            tau = as_fraction(taus[step])
            cand = L @ generator_matrix(n, j, tau)
            if not tau or not is_good(cand, rho, N0, window):
                raise NotGoodError(f"prefix of length {step + 1} (tau={tau}) is not {rho}-good")
        else:
            sign = rng.choice((1, -1)) if rng else (1 if step % 2 == 0 else -1)
            mag = _nearest_root_gap(L, N0) if mode == "along" else Fraction(1)
            for _ in range(cap):
                tau = sign * mag
                cand = L @ generator_matrix(n, j, tau)
                if is_good(cand, rho, N0, window):
                    break
                mag /= 2
            else:
                raise NotGoodError(f"goodness not certified at step {step + 1} after {cap} halvings")
        L = cand
        chosen.append(tau)
    return GoodMatrix(L, word, tuple(chosen), N0, window)


def _pairwise_coprime(polys: Sequence[Poly]) -> bool:
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            if polys[a].gcd(polys[b]).degree > 0:
                return False
    return True


def distinctify(gm: GoodMatrix, cap: int = 64) -> GoodMatrix:
    """Perturb the last parameter until no two m_k share a root, keeping goodness."""
    if _pairwise_coprime(minors(gm.curve)):
        return gm
    n = gm.L.n
    head = word_matrix(n, gm.word.letters[:-1], gm.taus[:-1])
    last_j, last = gm.word.letters[-1], gm.taus[-1]
    delta = last / 2
    for _ in range(cap):
        for tau in (last + delta, last - delta):
            if not tau:
                continue
            L = head @ generator_matrix(n, last_j, tau)
            if is_good(L, gm.rho, gm.N0, gm.window) and \
                    _pairwise_coprime(minors(make_curve(L, gm.N0, check=False))):
                return GoodMatrix(L, gm.word, gm.taus[:-1] + (tau,), gm.N0, gm.window)
        delta /= 2
    raise NotGoodError(f"could not separate the roots after {cap} perturbations")


# -- itineraries --------------------------------------------------------------

class ItineraryError(ValueError):
    pass


@dataclass(frozen=True)
class Itinerary:
    """Time-ordered letters k (for a_k) with the isolating interval of each root."""

    n: int
    letters: tuple[int, ...]
    intervals: tuple[RootInterval, ...]

    def __str__(self):
        return "".join(chr(ord("a") + k - 1) for k in self.letters)

    def counts(self) -> tuple[int, ...]:
        return tuple(self.letters.count(k) for k in range(1, self.n))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "itinerary": str(self),
            "counts": list(self.counts()),
            "roots": [{"k": k, "lo": str(iv.lo), "hi": str(iv.hi), "approx": float(iv.mid)}
                      for k, iv in zip(self.letters, self.intervals)],
        }


def itinerary(curve: PolynomialCurve, lo=None, hi=None) -> Itinerary:
    """Letter a_k at every root of m_k in (lo, hi], in time order.

    Needs every root simple and no root shared by two minors.
    """
    items = []
    for k, p in enumerate(minors(curve), 1):
        if not p:
            raise ItineraryError(f"m_{k} vanishes identically: itinerary undefined")
        for iv in isolate_roots(p, lo, hi):
            if iv.multiplicity > 1:
                raise ItineraryError(
                    f"m_{k} has a root of multiplicity {iv.multiplicity} near {float(iv.mid):.6g}: "
                    "itinerary undefined, distinctify first")
            items.append((k, p, iv))
    try:
        ordered = separate_roots(items)
    except CommonRootError as exc:
        raise ItineraryError(
            f"m_{exc.keys[0]} and m_{exc.keys[1]} share a root near {float(exc.interval.mid):.6g}: "
            "itinerary undefined, distinctify first") from None
    return Itinerary(curve.n, tuple(k for k, _, _ in ordered), tuple(iv for _, _, iv in ordered))


@dataclass(frozen=True)
class NontransversalityCount:
    """Roots of m_k per k: with multiplicity, distinct, and distinct moments overall."""

    with_multiplicity: tuple[int, ...]
    distinct: tuple[int, ...]
    moments: int

    @property
    def total(self) -> int:
        return sum(self.with_multiplicity)

    @property
    def total_distinct(self) -> int:
        return sum(self.distinct)

    def to_json(self) -> dict:
        return {
            "per_k": list(self.with_multiplicity),
            "per_k_distinct": list(self.distinct),
            "total": self.total,
            "total_distinct": self.total_distinct,
            "moments": self.moments,
        }


def count_nontransversality(curve: PolynomialCurve, L1: Optional[LowerUni] = None,
                            lo=None, hi=None) -> NontransversalityCount:
    """Count the moments where L1 Gamma(t) fails to be transversal to the standard flag."""
    if L1 is not None:
        curve = make_curve(L1 @ curve.L0, curve.N0, check=False)
    mult, distinct = [], []
    for k, p in enumerate(minors(curve), 1):
        ivs = isolate_roots(p, lo, hi)
        mult.append(sum(iv.multiplicity for iv in ivs))
        distinct.append(len(ivs))
    prod = Poly.const(1)
    for p in minors(curve):
        if p.degree > 0:
            prod = prod * p
    # a root shared by several m_k is one moment
    moments = count_real_roots(prod, lo, hi) if prod.degree > 0 else 0
    return NontransversalityCount(tuple(mult), tuple(distinct), moments)


def perturbed_itinerary(curve: PolynomialCurve, lo=None, hi=None, seed: int = 0,
                        scale=Fraction(1, 1024), tries: int = 32
                        ) -> tuple[Itinerary, PolynomialCurve, tuple[Fraction, ...]]:
    """Itinerary of a nearby curve L0 P exp(t N0) where it is defined.

    P is a product of generators along a reduced word for the top
    permutation with parameters of size about ``scale``.  Returns the
    itinerary, the perturbed curve and the parameters used.
    """
    n = curve.n
    word = eta_word(n)
    rng = random.Random(seed)
    for _ in range(tries):
        taus = tuple(as_fraction(scale) * Fraction(rng.choice((-1, 1)) * rng.randint(16, 32), 32)
                     for _ in word.letters)
        moved = make_curve(curve.L0 @ word_matrix(n, word.letters, taus), curve.N0)
        try:
            return itinerary(moved, lo, hi), moved, taus
        except ItineraryError:
            continue
    raise ItineraryError(f"no perturbation of size {scale} separated the roots in {tries} tries")
