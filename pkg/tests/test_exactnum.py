from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from flagsturm.exactnum import (
    CommonRootError, Poly, PolyMatrix, RootInterval, as_fraction, common_roots,
    count_real_roots, frac_det, frac_rank, is_squarefree, isolate_roots, poly_det,
    refine_root, root_bound, separate_roots, squarefree_decomposition, squarefree_part,
)

T = Poly.x()
sym_t = sympy.Symbol("t")


def to_sympy(p: Poly):
    return sum(sympy.Rational(a.numerator, a.denominator) * sym_t ** i for i, a in enumerate(p.c))


def from_sympy(expr) -> Poly:
    coeffs = sympy.Poly(sympy.expand(expr), sym_t).all_coeffs()[::-1]
    return Poly(F(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs)


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)
small_polys = st.lists(rationals, min_size=1, max_size=7).map(Poly).filter(bool)


# -- scalars and polynomials ---------------------------------------------------

def test_as_fraction_rejects_floats():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("3/6") == F(1, 2)


def test_zero_polynomial_has_degree_minus_one():
    assert Poly().degree == -1
    assert Poly([0, 0]) == Poly()


def test_string_form():
    assert str(T ** 2 / 2 + F(1, 6)) == "1/2*t^2 + 1/6"


@given(small_polys, small_polys)
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(small_polys, small_polys, rationals)
def test_evaluation_is_a_ring_map(a, b, x):
    assert (a * b)(x) == a(x) * b(x)
    assert (a + b)(x) == a(x) + b(x)


@given(small_polys)
def test_reflect_and_compose(p):
    assert p.reflect() == p.compose_affine(-1, 0)
    assert p.compose_affine(1, 0) == p


@given(small_polys, small_polys)
def test_gcd_matches_sympy(a, b):
    g = a.gcd(b)
    expected = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), sym_t)
    assert g.degree == expected.degree()


# -- determinants ---------------------------------------------------------------

def test_det_trivial_cases():
    assert poly_det(PolyMatrix([[T]])) == T
    assert poly_det(PolyMatrix([[Poly.const(1), Poly()], [T, Poly.const(1)]])) == Poly.const(1)


def test_det_rejects_non_square_selection():
    m = PolyMatrix.identity(3)
    with pytest.raises(ValueError):
        poly_det(m, rows=[0, 1], cols=[0])


poly_entries = st.lists(st.integers(-3, 3), min_size=0, max_size=3).map(Poly)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(poly_entries, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_bareiss_matches_sympy_determinant(rows):
    ours = poly_det(PolyMatrix(rows))
    theirs = sympy.Matrix([[to_sympy(p) for p in r] for r in rows]).det()
    assert ours == from_sympy(theirs) if sympy.expand(theirs) != 0 else not ours


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_fraction_det_and_rank_match_sympy(rows):
    m = [[F(x) for x in r] for r in rows]
    assert frac_det(m) == sympy.Matrix(rows).det()
    assert frac_rank(m) == sympy.Matrix(rows).rank()


# -- squarefree machinery --------------------------------------------------------

def test_squarefree_examples():
    assert common_roots(Poly.from_roots([1, 2]), Poly.from_roots([2, 3]))
    assert not common_roots(T, T + 1)
    assert squarefree_part(Poly.from_roots([1, 1, 2])) == Poly.from_roots([1, 2])
    assert not is_squarefree(T ** 2)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(1, 3)), min_size=1, max_size=4,
                unique_by=lambda x: x[0]))
def test_yun_recovers_multiplicities(planted):
    p = Poly.from_roots([r for r, m in planted for _ in range(m)], lead=F(3, 2))
    found = [i for f, i in squarefree_decomposition(p) for _ in isolate_roots(f)]
    assert sorted(found) == sorted(m for _, m in planted)


# -- root counting and isolation ---------------------------------------------------

def test_count_examples():
    assert count_real_roots(T ** 2 - 1, -2, 2) == 2
    assert count_real_roots(T ** 2, -1, 1) == 1
    assert count_real_roots(T ** 2 + 1) == 0


def test_half_open_convention():
    p = T * (T - 1)
    assert count_real_roots(p, 0, 1) == 1
    assert count_real_roots(p, -1, 0) == 1


def test_zero_polynomial_raises():
    with pytest.raises(ValueError, match="identically zero"):
        count_real_roots(Poly())
    with pytest.raises(ValueError):
        isolate_roots(Poly())


def test_isolation_examples():
    ivs = isolate_roots(T * (T - 1))
    assert [iv.multiplicity for iv in ivs] == [1, 1]
    assert ivs[0].lo < 0 < ivs[0].hi <= ivs[1].lo < 1 < ivs[1].hi
    (iv,) = isolate_roots((T - 1) ** 2)
    assert iv.multiplicity == 2 and iv.lo < 1 < iv.hi


def test_refinement_below_requested_width():
    iv = isolate_roots(T ** 2 - 2)[-1]
    fine = refine_root(T ** 2 - 2, iv, F(1, 10 ** 6))
    assert fine.width < F(1, 10 ** 6)
    assert fine.lo ** 2 < 2 < fine.hi ** 2


def test_exact_rational_root_inside_refinement():
    p = T * (T - F(1, 3))
    for iv in isolate_roots(p, width=F(1, 100)):
        assert iv.width < F(1, 100)
        assert p(iv.lo) and p(iv.hi)


def _grid_sign_changes(p: Poly, roots) -> int:
    """Brute-force oracle: sign changes of p on a grid that straddles every planted root."""
    pts = sorted({r + d for r in roots for d in (F(-1, 97), F(1, 97))})
    signs = [p.sign_at(x) for x in pts]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=1, max_size=6,
                unique=True),
       st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 3)), max_size=2))
def test_sturm_count_matches_grid_oracle(roots, quadratics):
    # planted rational roots times positive quadratics (no extra real roots)
    p = Poly.from_roots(roots)
    for b, c in quadratics:
        p = p * Poly((b * b + c, 2 * b, 1))
    assert count_real_roots(p) == len(roots) == _grid_sign_changes(p, roots)
    assert count_real_roots(p) <= p.degree


@settings(max_examples=60, deadline=None)
@given(small_polys)
def test_sturm_count_matches_sympy(p):
    if p.degree < 1:
        return
    assert count_real_roots(p) == len(set(sympy.real_roots(to_sympy(p))))


@settings(max_examples=60, deadline=None)
@given(small_polys)
def test_isolation_is_ordered_disjoint_and_exact(p):
    if p.degree < 1:
        return
    ivs = isolate_roots(p)
    for a, b in zip(ivs, ivs[1:]):
        assert a.hi <= b.lo
    for iv in ivs:
        assert count_real_roots(p, iv.lo, iv.hi) == 1
    total = sum(iv.multiplicity for iv in ivs)
    complex_roots = sympy.Poly(to_sympy(p), sym_t).all_roots()
    nonreal = sum(1 for r in complex_roots if not r.is_real)
    assert total == p.degree - nonreal


def test_root_bound_contains_roots():
    p = Poly.from_roots([-7, 2, 5])
    assert root_bound(p) > 7


def test_restricted_isolation():
    p = Poly.from_roots([-2, 0, 1, 3])
    assert [iv.mid for iv in isolate_roots(p, 0, 2, width=F(1, 64))] == pytest.approx([1.0], abs=0.02)


def test_separate_roots_orders_and_detects_shared_roots():
    a, b = Poly.from_roots([1, 3]), Poly.from_roots([2])
    items = [("a", a, iv) for iv in isolate_roots(a)] + [("b", b, iv) for iv in isolate_roots(b)]
    assert [k for k, _, _ in separate_roots(items)] == ["a", "b", "a"]
    c = Poly.from_roots([1, 5])
    items = [("a", a, iv) for iv in isolate_roots(a)] + [("c", c, iv) for iv in isolate_roots(c)]
    with pytest.raises(CommonRootError):
        separate_roots(items)


def test_root_interval_validation():
    with pytest.raises(ValueError):
        RootInterval(F(1), F(1))
