"""Exact rational polynomials, polynomial matrices and certified real roots.

Scalars are :class:`fractions.Fraction` throughout; nothing in this module
touches floating point.  Real roots are counted with Sturm chains of the
squarefree part and isolated by bisection; multiplicities come from Yun's
squarefree decomposition.

Matrix indices are 0-based here.  Callers that speak in 1-based labels
(rows, columns, generators) convert at their own boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

__all__ = [
    "Fraction", "Poly", "PolyMatrix", "RootInterval",
    "as_fraction", "poly_det", "sturm_chain", "sign_variations",
    "count_real_roots", "squarefree_part", "is_squarefree",
    "squarefree_decomposition", "common_roots", "root_bound",
    "isolate_roots", "refine_root", "restrict_roots", "separate_roots",
    "frac_det", "frac_rank", "frac_matmul", "frac_identity",
    "CommonRootError",
]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and strings like ``"-3/8"`` into a Fraction.

    Floats are rejected so that no rounded value sneaks into a certificate.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a string or Fraction")
    return Fraction(x)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Poly:
    """Univariate polynomial with rational coefficients, lowest degree first.

    Instances are immutable and hashable.  The zero polynomial has no
    coefficients and degree -1.
    """

    __slots__ = ("c", "__weakref__")

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c: list) -> "Poly":
        while c and not c[-1]:
            c.pop()
        p = object.__new__(cls)
        p.c = tuple(c)
        return p

    @classmethod
    def const(cls, a) -> "Poly":
        return cls((a,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Poly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls((-as_fraction(r), 1))
        return p

    # -- basic queries -------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> Fraction:
        return self.c[-1] if self.c else ZERO

    def is_zero(self) -> bool:
        return not self.c

    def coeff(self, i: int) -> Fraction:
        return self.c[i] if 0 <= i < len(self.c) else ZERO

    def low_order(self) -> int:
        """Multiplicity of the root t = 0 (the zero polynomial raises)."""
        if not self.c:
            raise ValueError("identically zero")
        for i, a in enumerate(self.c):
            if a:
                return i
        raise AssertionError

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c == Poly.const(other).c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(a) for a in self.c]})"

    def __str__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if not a:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else f"{mag}*"
                body = f"{coef}t" + (f"^{i}" if i > 1 else "")
            terms.append(("-" if a < 0 else "+", body))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for s, body in terms[1:]:
            out += f" {s} {body}"
        return out

    # -- arithmetic ----------------------------------------------------
    def __neg__(self):
        return Poly._raw([-a for a in self.c])

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            s = as_fraction(other)
            return Poly._raw([a * s for a in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out, base = Poly.const(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, Poly):
            q, r = divmod(self, other)
            if r:
                raise ArithmeticError("inexact polynomial division")
            return q
        s = as_fraction(other)
        return Poly._raw([a / s for a in self.c])

    def __divmod__(self, other: "Poly"):
        if not other.c:
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.c)
        db = len(other.c) - 1
        lead = other.c[-1]
        if len(r) - 1 < db:
            return Poly(), self
        q = [ZERO] * (len(r) - db)
        b = other.c
        for i in range(len(r) - 1, db - 1, -1):
            f = r[i] / lead
            if not f:
                continue
            q[i - db] = f
            base = i - db
            for j in range(db + 1):
                r[base + j] -= f * b[j]
        return Poly._raw(q), Poly._raw(r[:db])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __call__(self, x):
        acc = ZERO
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def sign_at(self, x) -> int:
        return _sign(self(x))

    def deriv(self) -> "Poly":
        return Poly._raw([i * a for i, a in enumerate(self.c)][1:])

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self / self.c[-1]

    def reflect(self) -> "Poly":
        """The polynomial t -> p(-t)."""
        return Poly._raw([-a if i % 2 else a for i, a in enumerate(self.c)])

    def compose_affine(self, a, b) -> "Poly":
        """The polynomial t -> p(a*t + b)."""
        lin = Poly((b, a))
        acc = Poly()
        for coef in reversed(self.c):
            acc = acc * lin + coef
        return acc

    def strip_zero_root(self) -> tuple[int, "Poly"]:
        """Split p = t^mu * q with q(0) != 0; returns (mu, q)."""
        mu = self.low_order()
        return mu, Poly._raw(list(self.c[mu:]))

    def gcd(self, other: "Poly") -> "Poly":
        """Monic greatest common divisor (gcd(0, 0) = 0)."""
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def to_json(self) -> list[str]:
        return [str(a) for a in self.c]


# ---------------------------------------------------------------------------
# Polynomial matrices
# ---------------------------------------------------------------------------

class PolyMatrix:
    """Rectangular matrix with :class:`Poly` entries (0-based indexing)."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(
            tuple(e if isinstance(e, Poly) else Poly.const(e) for e in r) for r in rows
        )
        if len({len(r) for r in self.rows}) > 1:
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def constant(cls, rows) -> "PolyMatrix":
        return cls([[Poly.const(a) for a in r] for r in rows])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "PolyMatrix(" + repr([[str(e) for e in r] for r in self.rows]) + ")"

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        r, m = self.shape
        m2, c = other.shape
        if m != m2:
            raise ValueError("shape mismatch")
        out = []
        for i in range(r):
            row = []
            for j in range(c):
                acc = Poly()
                for k in range(m):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def __add__(self, other):
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def scale(self, s) -> "PolyMatrix":
        return PolyMatrix([[a * s for a in r] for r in self.rows])

    def deriv(self) -> "PolyMatrix":
        return PolyMatrix([[a.deriv() for a in r] for r in self.rows])

    def map(self, f) -> "PolyMatrix":
        return PolyMatrix([[f(a) for a in r] for r in self.rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.rows)))

    def evaluate(self, x) -> tuple[tuple[Fraction, ...], ...]:
        x = as_fraction(x)
        return tuple(tuple(a(x) for a in r) for r in self.rows)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def det(self) -> Poly:
        return poly_det(self)


def poly_det(m: PolyMatrix, rows: Optional[Sequence[int]] = None,
             cols: Optional[Sequence[int]] = None) -> Poly:
    """Determinant of ``m`` (or of its rows x cols selection).

    Uses Bareiss fraction-free elimination over Q[t]; each division is exact.
    """
    if rows is not None or cols is not None:
        r, c = m.shape
        rows = range(r) if rows is None else rows
        cols = range(c) if cols is None else cols
        m = m.submatrix(list(rows), list(cols))
    r, c = m.shape
    if r != c:
        raise ValueError(f"determinant of a non-square {r}x{c} selection")
    n = r
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return m.rows[0][0]
    if n == 2:
        (a, b), (cc, d) = m.rows
        return a * d - b * cc
    a = [list(row) for row in m.rows]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly()
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num / prev if k else num
        prev = pivot
    res = a[n - 1][n - 1]
    return -res if sign < 0 else res


# ---------------------------------------------------------------------------
# Exact rational matrices
# ---------------------------------------------------------------------------

def frac_identity(n: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def frac_matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(r, col)), ZERO) for col in cols) for r in a)


def frac_det(m) -> Fraction:
    """Determinant of a square rational matrix by Gaussian elimination."""
    a = [list(r) for r in m]
    n = len(a)
    det = ONE
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return ZERO
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det *= piv
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f = f / piv
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return det


def frac_rank(m) -> int:
    a = [list(r) for r in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    rank = 0
    for c in range(cols):
        p = next((i for i in range(rank, rows) if a[i][c]), None)
        if p is None:
            continue
        a[rank], a[p] = a[p], a[rank]
        piv = a[rank][c]
        for i in range(rank + 1, rows):
            f = a[i][c]
            if f:
                f = f / piv
                for j in range(c, cols):
                    a[i][j] -= f * a[rank][j]
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Squarefree machinery and Sturm chains
# ---------------------------------------------------------------------------

def _require_nonzero(p: Poly):
    if not p:
        raise ValueError("identically zero polynomial has no finite root count")


@lru_cache(maxsize=8192)
def squarefree_part(p: Poly) -> Poly:
    _require_nonzero(p)
    if p.degree <= 0:
        return p
    g = p.gcd(p.deriv())
    return p / g if g.degree > 0 else p


def is_squarefree(p: Poly) -> bool:
    _require_nonzero(p)
    return p.degree <= 0 or p.gcd(p.deriv()).degree == 0


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm: p = lc * prod f_i^i with f_i squarefree and coprime.

    Returns ``[(f_i, i), ...]`` for the non-constant factors only.
    """
    _require_nonzero(p)
    if p.degree <= 0:
        return []
    dp = p.deriv()
    a = p.gcd(dp)
    b = p / a
    c = dp / a
    d = c - b.deriv()
    out = []
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        b = b / a
        c = d / a
        d = c - b.deriv()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


def common_roots(p: Poly, q: Poly) -> bool:
    """True when p and q share a complex root (their gcd is non-constant)."""
    return p.gcd(q).degree > 0


@lru_cache(maxsize=8192)
def _sturm_chain(p: Poly) -> tuple[Poly, ...]:
    return tuple(sturm_chain(p))


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm chain of the squarefree part of p."""
    q = squarefree_part(p)
    chain = [q, q.deriv()]
    while chain[-1]:
        r = chain[-2] % chain[-1]
        if not r:
            break
        chain.append(-r)
    return [f for f in chain if f]


def sign_variations(chain: Sequence[Poly], x) -> int:
    """Sign changes of the chain at x; x=None/±inf handled via ``x`` in {"-inf","+inf"}."""
    if x == "+inf":
        signs = [_sign(f.lc) for f in chain]
    elif x == "-inf":
        signs = [_sign(f.lc) * (-1 if f.degree % 2 else 1) for f in chain]
    else:
        signs = [_sign(f(x)) for f in chain]
    last = 0
    count = 0
    for s in signs:
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Number of distinct real roots of p in the half-open interval (lo, hi].

    ``None`` stands for -inf (lo) or +inf (hi).
    """
    _require_nonzero(p)
    if p.degree <= 0:
        return 0
    chain = _sturm_chain(p)
    va = sign_variations(chain, "-inf" if lo is None else as_fraction(lo))
    vb = sign_variations(chain, "+inf" if hi is None else as_fraction(hi))
    return va - vb


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every complex root satisfies |z| < bound."""
    _require_nonzero(p)
    lead = abs(p.lc)
    return 1 + max((abs(a) / lead for a in p.c[:-1]), default=ZERO)


# ---------------------------------------------------------------------------
# Isolation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootInterval:
    """Open interval (lo, hi) holding exactly one distinct real root."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty root interval ({self.lo}, {self.hi})")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def approx(self) -> float:
        return float(self.mid)

    def overlaps(self, other: "RootInterval") -> bool:
        return self.lo < other.hi and other.lo < self.hi

    def to_json(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi), "multiplicity": self.multiplicity}


def _nudge_split(q: Poly, lo: Fraction, hi: Fraction) -> Fraction:
    """A rational in (lo, hi), near the midpoint, where q does not vanish."""
    mid = (lo + hi) / 2
    if q(mid):
        return mid
    step = (hi - lo) / 8
    k = 1
    while True:
        for cand in (mid + step / k, mid - step / k):
            if q(cand):
                return cand
        k += 1


def _isolate_squarefree(q: Poly, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Disjoint (a, b) pairs isolating the roots of squarefree q in (lo, hi).

    ``lo`` and ``hi`` must not be roots of q.
    """
    chain = _sturm_chain(q)
    out = []
    stack = [(lo, hi, sign_variations(chain, lo), sign_variations(chain, hi))]
    while stack:
        a, b, va, vb = stack.pop()
        cnt = va - vb
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((a, b))
            continue
        m = _nudge_split(q, a, b)
        vm = sign_variations(chain, m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    out.sort()
    return out


def _bisect_simple(q: Poly, a: Fraction, b: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink (a, b), holding one simple root of q, below ``width``."""
    sa = q.sign_at(a)
    while b - a >= width:
        m = (a + b) / 2
        sm = q.sign_at(m)
        if sm == 0:
            eps = width / 4
            return max(a, m - eps), min(b, m + eps)
        if sm == sa:
            a = m
        else:
            b = m
    return a, b


def isolate_roots(p: Poly, lo=None, hi=None, width=None) -> list[RootInterval]:
    """Isolating intervals for the distinct real roots of p, in increasing order.

    With ``lo``/``hi`` the result is restricted to roots in (lo, hi]; an
    interval may then poke past ``hi`` when hi is itself a root.  ``width``
    refines every interval below that positive rational.
    """
    _require_nonzero(p)
    if p.degree <= 0:
        return []
    factors = squarefree_decomposition(p)
    q = squarefree_part(p)
    bound = root_bound(q)
    pairs = _isolate_squarefree(q, -bound, bound)
    out = []
    for a, b in pairs:
        mult = next(i for f, i in factors if count_real_roots(f, a, b) == 1)
        out.append(RootInterval(a, b, mult))
    if lo is not None or hi is not None:
        out = restrict_roots(p, out, lo, hi)
    if width is not None:
        out = [refine_root(p, iv, width) for iv in out]
    return out


def refine_root(p: Poly, iv: RootInterval, width) -> RootInterval:
    """Shrink an isolating interval of p below ``width``."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if iv.width < width:
        return iv
    q = squarefree_part(p)
    a, b = _bisect_simple(q, iv.lo, iv.hi, width)
    return RootInterval(a, b, iv.multiplicity)


def _split_at(q: Poly, iv: RootInterval, x: Fraction) -> Optional[str]:
    """Where the root of iv sits relative to x: 'below', 'at' or 'above'."""
    if not iv.lo < x < iv.hi:
        return "below" if iv.hi <= x else "above"
    sx = q.sign_at(x)
    if sx == 0:
        return "at"
    return "below" if q.sign_at(iv.lo) != sx else "above"


def restrict_roots(p: Poly, roots: Sequence[RootInterval], lo=None, hi=None) -> list[RootInterval]:
    """Keep the roots lying in (lo, hi]; intervals straddling lo/hi are trimmed."""
    q = squarefree_part(p)
    lo = None if lo is None else as_fraction(lo)
    hi = None if hi is None else as_fraction(hi)
    out = []
    for iv in roots:
        if lo is not None:
            where = _split_at(q, iv, lo)
            if where in ("below", "at"):
                continue
            if iv.lo < lo:
                iv = RootInterval(lo, iv.hi, iv.multiplicity)
        if hi is not None:
            where = _split_at(q, iv, hi)
            if where == "above":
                continue
            if where == "below" and iv.hi > hi:
                iv = RootInterval(iv.lo, hi, iv.multiplicity)
        out.append(iv)
    return out


class CommonRootError(ValueError):
    """Two polynomials handed to :func:`separate_roots` share a real root."""

    def __init__(self, key_a, key_b, interval):
        super().__init__(f"{key_a!r} and {key_b!r} share a real root near {float(interval.mid):.6g}")
        self.keys = (key_a, key_b)
        self.interval = interval


def separate_roots(items: Sequence[tuple[object, Poly, RootInterval]],
                   gcd_after=Fraction(1, 2**20)) -> list[tuple[object, Poly, RootInterval]]:
    """Refine root intervals of several polynomials until pairwise disjoint.

    ``items`` holds ``(key, poly, interval)`` triples.  When two intervals
    still overlap below ``gcd_after`` width, the gcd of the two polynomials
    decides exactly whether the root is shared; a shared root raises
    :class:`CommonRootError`.  Returns the triples sorted by position.
    """
    items = [list(t) for t in items]
    gcds = {}
    while True:
        items.sort(key=lambda t: (t[2].lo, t[2].hi))
        clash = None
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if items[j][2].lo >= items[i][2].hi:
                    break
                if items[i][2].overlaps(items[j][2]):
                    clash = (i, j)
                    break
            if clash:
                break
        if clash is None:
            return [tuple(t) for t in items]
        for idx in clash:
            key, poly, iv = items[idx]
            items[idx][2] = refine_root(poly, iv, iv.width / 2)
        a, b = items[clash[0]], items[clash[1]]
        if max(a[2].width, b[2].width) < gcd_after:
            tag = (a[1], b[1])
            if tag not in gcds:
                gcds[tag] = a[1].gcd(b[1])
            g = gcds[tag]
            if g.degree > 0:
                lo = max(a[2].lo, b[2].lo)
                hi = min(a[2].hi, b[2].hi)
                if lo < hi and count_real_roots(g, lo, hi) > 0:
                    raise CommonRootError(a[0], b[0], RootInterval(lo, hi))
