"""Polynomial flag-convex curves ``t -> L0 exp(t N0)`` in the lower unitriangular group.

Indices exposed to users follow the 1-based matrix convention of the
literature: ``minor_k(curve, k)`` for 1 <= k <= n-1, pairs ``Y = (i, j)``
with 1 <= i < j <= n, and entry ``(i, j)`` meaning row i, column j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Mapping, Optional, Sequence

from .exactnum import (
    Poly, PolyMatrix, as_fraction, frac_det, frac_identity, frac_matmul, poly_det,
)

__all__ = [
    "NilpotentGenerator", "LowerUni", "PolynomialCurve", "ProjectedCurve",
    "ExtendedCurve", "exp_nilpotent", "make_curve", "minor_k", "minors",
    "project", "minor_pair", "pairs", "is_totally_positive",
    "is_totally_negative", "positivity_thresholds", "extend_curve",
    "dual_curve", "duality_sign", "random_lower", "random_generator",
    "random_curve", "unit_generator",
]


@dataclass(frozen=True)
class NilpotentGenerator:
    """Strictly positive subdiagonal (entries at (j+1, j)); zero elsewhere."""

    subdiag: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(x) for x in self.subdiag)
        if any(v <= 0 for v in vals):
            raise ValueError("subdiagonal entries must be strictly positive")
        object.__setattr__(self, "subdiag", vals)

    @property
    def n(self) -> int:
        return len(self.subdiag) + 1

    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        n = self.n
        return tuple(
            tuple(self.subdiag[j] if i == j + 1 else Fraction(0) for j in range(n))
            for i in range(n)
        )


def unit_generator(n: int) -> NilpotentGenerator:
    return NilpotentGenerator((1,) * (n - 1))


@dataclass(frozen=True)
class LowerUni:
    """Lower triangular rational matrix with unit diagonal."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(as_fraction(a) for a in r) for r in self.rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise ValueError("matrix is not square")
            if r[i] != 1 or any(r[j] for j in range(i + 1, n)):
                raise ValueError(f"row {i + 1} breaks lower unitriangularity")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "LowerUni":
        return cls(frac_identity(n))

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], object]) -> "LowerUni":
        """Build from {(i, j): value} with 1-based i > j."""
        rows = [list(r) for r in frac_identity(n)]
        for (i, j), v in entries.items():
            if not 1 <= j < i <= n:
                raise ValueError(f"({i}, {j}) is not strictly below the diagonal")
            rows[i - 1][j - 1] = as_fraction(v)
        return cls(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "LowerUni") -> "LowerUni":
        return LowerUni(frac_matmul(self.rows, other.rows))

    def inverse(self) -> "LowerUni":
        n = self.n
        inv = [list(r) for r in frac_identity(n)]
        for i in range(n):
            for j in range(i):
                inv[i][j] = -sum((self.rows[i][k] * inv[k][j] for k in range(j, i)), Fraction(0))
        return LowerUni(inv)

    def minor(self, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
        """Minor on 0-based ``rows`` x ``cols``."""
        return frac_det([[self.rows[i][j] for j in cols] for i in rows])

    def conjugate_by_signs(self) -> "LowerUni":
        """P L P with P = diag(1, -1, 1, ...)."""
        return LowerUni([[a if (i + j) % 2 == 0 else -a for j, a in enumerate(r)]
                         for i, r in enumerate(self.rows)])

    def to_json(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.rows]


def exp_nilpotent(N0: NilpotentGenerator) -> PolyMatrix:
    """exp(t N0) as a polynomial matrix; the series stops at (tN0)^(n-1)."""
    n = N0.n
    N = N0.matrix()
    out = [[Poly() for _ in range(n)] for _ in range(n)]
    power = frac_identity(n)
    for m in range(n):
        scale = Fraction(1, factorial(m))
        for i in range(n):
            for j in range(n):
                if power[i][j]:
                    mono = [0] * m + [power[i][j] * scale]
                    out[i][j] = out[i][j] + Poly(mono)
        power = frac_matmul(power, N)
    return PolyMatrix(out)


@dataclass(frozen=True)
class PolynomialCurve:
    """The curve Gamma(t) = L0 exp(t N0) with its polynomial matrix cached."""

    L0: LowerUni
    N0: NilpotentGenerator
    gamma: PolyMatrix = field(compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.L0.n

    def at(self, t) -> LowerUni:
        return LowerUni(self.gamma.evaluate(t))

    def is_flag_convex(self) -> bool:
        """Check Gamma' = Gamma N0 as a polynomial identity."""
        N = PolyMatrix.constant(self.N0.matrix())
        return self.gamma.deriv() == self.gamma @ N


def make_curve(L0: LowerUni, N0: NilpotentGenerator, check: bool = True) -> PolynomialCurve:
    if L0.n != N0.n:
        raise ValueError(f"dimension mismatch: L0 is {L0.n}x{L0.n}, N0 is {N0.n}x{N0.n}")
    gamma = PolyMatrix.constant(L0.rows) @ exp_nilpotent(N0)
    curve = PolynomialCurve(L0, N0, gamma)
    if check and not curve.is_flag_convex():
        raise AssertionError("logarithmic derivative differs from N0")
    return curve


def minor_k(curve: PolynomialCurve, k: int) -> Poly:
    """Southwest k x k minor m_k(t): last k rows, first k columns."""
    n = curve.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside 1..{n - 1}")
    return poly_det(curve.gamma, range(n - k, n), range(k))


def minors(curve: PolynomialCurve) -> list[Poly]:
    """[m_1, ..., m_{n-1}]."""
    return [minor_k(curve, k) for k in range(1, curve.n)]


@dataclass(frozen=True)
class ProjectedCurve:
    """Last two rows of a curve, as a 2 x n polynomial matrix."""

    rows: PolyMatrix

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def at(self, t) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return self.rows.evaluate(t)

    def column(self, i: int) -> tuple[Poly, Poly]:
        return self.rows[0, i - 1], self.rows[1, i - 1]


def project(curve: PolynomialCurve) -> ProjectedCurve:
    n = curve.n
    if n < 2:
        raise ValueError("projection needs n >= 2")
    pc = ProjectedCurve(curve.gamma.submatrix([n - 2, n - 1], range(n)))
    # normalization of the 2 x n chart
    assert pc.rows[0, n - 2] == 1 and pc.rows[1, n - 1] == 1 and not pc.rows[0, n - 1]
    return pc


def pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def minor_pair(pc: ProjectedCurve, Y: tuple[int, int]) -> Poly:
    """m_Y(t) = det(v_i, v_j) for Y = (i, j), 1 <= i < j <= n."""
    i, j = Y
    if not 1 <= i < j <= pc.n:
        raise ValueError(f"malformed pair {Y!r}")
    (a, b), (c, d) = pc.column(i), pc.column(j)
    return a * d - c * b


# -- total positivity ---------------------------------------------------------

@lru_cache(maxsize=None)
def _testable_minors(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Minors that do not vanish on exp(N) at t=1, hence not identically on Lo_n^1."""
    ref = make_curve(LowerUni.identity(n), unit_generator(n), check=False).at(1)
    out = []
    for size in range(1, n + 1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(n), size):
                if ref.minor(rows, cols):
                    out.append((rows, cols))
    return tuple(out)


def is_totally_positive(L: LowerUni) -> bool:
    return all(L.minor(r, c) > 0 for r, c in _testable_minors(L.n))


def is_totally_negative(L: LowerUni) -> bool:
    return is_totally_positive(L.conjugate_by_signs())


def positivity_thresholds(G: LowerUni, N0: NilpotentGenerator,
                          max_doublings: int = 64) -> tuple[Fraction, Fraction]:
    """Rationals t- < 0 < t+ with G exp(t+ N0) in Pos and G exp(t- N0) in Neg.

    Found by doubling from +-1 and re-checked at t * 2^m for m <= 4.  These are
    certified bounds, not the smallest such values.
    """
    T = make_curve(G, N0, check=False)

    def search(sign: int, test) -> Fraction:
        t = Fraction(sign)
        for _ in range(max_doublings):
            if test(T.at(t)) and all(test(T.at(t * 2 ** m)) for m in range(1, 5)):
                return t
            t *= 2
        raise RuntimeError("positivity threshold not found within the doubling cap")

    return search(-1, is_totally_negative), search(1, is_totally_positive)


# -- extension to Neg/Pos endpoints -------------------------------------------

@dataclass(frozen=True)
class ExtendedCurve:
    """Piecewise curve on [a, b]: Gamma(s) T(t-s) on [a, s], Gamma on [s, f],
    Gamma(f) T(t-f) on [f, b], with T(t) = exp(t N) for unit N.

    Each piece is itself a polynomial curve; ``pieces`` lists
    ``(curve, lo, hi)`` in time order, degenerate pieces (lo == hi) dropped.
    """

    pieces: tuple[tuple[PolynomialCurve, Fraction, Fraction], ...]

    @property
    def a(self) -> Fraction:
        return self.pieces[0][1]

    @property
    def b(self) -> Fraction:
        return self.pieces[-1][2]

    @property
    def n(self) -> int:
        return self.pieces[0][0].n

    def at(self, t) -> LowerUni:
        t = as_fraction(t)
        for curve, lo, hi in self.pieces:
            if lo <= t <= hi:
                return curve.at(t)
        raise ValueError(f"t={t} outside [{self.a}, {self.b}]")


def _shifted_piece(G: LowerUni, t0: Fraction) -> PolynomialCurve:
    """The curve t -> G exp((t - t0) N) written as L' exp(t N)."""
    n = G.n
    back = make_curve(LowerUni.identity(n), unit_generator(n), check=False).at(-t0)
    return make_curve(G @ back, unit_generator(n))


def extend_curve(curve: PolynomialCurve, s, f) -> ExtendedCurve:
    """Extend ``curve`` on [s, f] so that it starts in Neg and ends in Pos."""
    s, f = as_fraction(s), as_fraction(f)
    if s > f:
        raise ValueError("domain must satisfy s <= f")
    unit = unit_generator(curve.n)
    Gs, Gf = curve.at(s), curve.at(f)
    t_minus, _ = positivity_thresholds(Gs, unit)
    _, t_plus = positivity_thresholds(Gf, unit)
    a, b = s + t_minus, f + t_plus
    pieces = [(_shifted_piece(Gs, s), a, s)]
    if s < f:
        pieces.append((curve, s, f))
    pieces.append((_shifted_piece(Gf, f), f, b))
    ext = ExtendedCurve(tuple(pieces))
    assert is_totally_negative(ext.at(a)) and is_totally_positive(ext.at(b))
    return ext


# -- duality ------------------------------------------------------------------

def _poly_unitriangular_inverse(m: PolyMatrix) -> PolyMatrix:
    n = m.shape[0]
    inv = [[Poly.const(1) if i == j else Poly() for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            acc = Poly()
            for k in range(j, i):
                acc = acc + m[i, k] * inv[k][j]
            inv[i][j] = -acc
    return PolyMatrix(inv)


def _flip(rows):
    """P_eta X P_eta: reverse both row and column order."""
    return [list(reversed(r)) for r in reversed(rows)]


def dual_curve(curve: PolynomialCurve) -> PolynomialCurve:
    """Gamma_star(t) = P_eta Gamma(-t)^{-T} P_eta.

    For Gamma = L0 exp(t N0) this is again polynomial, with
    L0_star = P L0^{-T} P and subdiagonal of N0 reversed.
    """
    n = curve.n
    L_star = LowerUni(_flip(list(zip(*curve.L0.inverse().rows))))
    N_star = NilpotentGenerator(tuple(reversed(curve.N0.subdiag)))
    dual = make_curve(L_star, N_star)
    direct = _poly_unitriangular_inverse(curve.gamma.map(Poly.reflect)).transpose()
    direct = PolyMatrix(_flip(direct.rows))
    if direct != dual.gamma:
        raise AssertionError("closed-form dual disagrees with P Gamma(-t)^{-T} P")
    return dual


def duality_sign(curve: PolynomialCurve, k: int) -> int:
    """The sign eps with m_{dual,k}(t) = eps * m_{n-k}(-t); raises if neither sign fits."""
    lhs = minor_k(dual_curve(curve), k)
    rhs = minor_k(curve, curve.n - k).reflect()
    if lhs == rhs:
        return 1
    if lhs == -rhs:
        return -1
    raise AssertionError(f"duality identity fails for k={k}")


# -- random samples -----------------------------------------------------------

def random_lower(n: int, rng: random.Random, den: int = 8, spread: int = 8) -> LowerUni:
    entries = {(i, j): Fraction(rng.randint(-spread, spread), rng.randint(1, den))
               for i in range(2, n + 1) for j in range(1, i)}
    return LowerUni.from_entries(n, entries)


def random_generator(n: int, rng: random.Random, den: int = 4) -> NilpotentGenerator:
    return NilpotentGenerator(tuple(Fraction(rng.randint(1, 2 * den), den) for _ in range(n - 1)))


def random_curve(n: int, rng: random.Random) -> PolynomialCurve:
    return make_curve(random_lower(n, rng), random_generator(n, rng))
