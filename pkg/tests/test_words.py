import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from flagsturm.bruhat import build_good_matrix, distinctify, eta_word
from flagsturm.curve import LowerUni, extend_curve, make_curve, project, unit_generator
from flagsturm.samples import (
    N3_WORDS, RANK_EXAMPLES, SAMPLE4_CROSSINGS, SAMPLE4_DOMAIN, sample4_curve, sample4_words,
)
from flagsturm.words import (
    AdmissibleWord, DegenerateCurveError, IllegalMoveError, WallError, apply_move,
    certify_theorem_main, crossing_sequence, enumerate_words, find_move, format_label,
    legal_moves, pair_sign, rank, rank_profile, totally_negative_word, totally_positive_word,
    witness_matrix, word_of_matrix,
)

W = AdmissibleWord.parse


def _sign(x):
    return (x > 0) - (x < 0)


# -- words ------------------------------------------------------------------------------

def test_parse_and_format_round_trip():
    w = W("13'4'25'1'342'5")
    assert str(w) == "513'4'25'1'342'"
    assert W(str(w)) == w
    assert format_label(-3) == "3'" and format_label(2) == "2"
    assert W("1′2′12") == W("121'2'")


@pytest.mark.parametrize("text", ["12", "11'2", "12'12", "1x1'", "''", "1231'2'"])
def test_malformed_words_rejected(text):
    with pytest.raises(ValueError):
        W(text)


def test_pair_signs_of_example():
    w = W("13'4'25'1'342'5")
    assert pair_sign(w, (1, 2)) == 1
    assert pair_sign(w, (1, 3)) == -1
    assert pair_sign(w, (3, 5)) == 1
    with pytest.raises(ValueError):
        pair_sign(w, (2, 2))


def test_reference_words():
    assert str(totally_positive_word(4)) == "41'2'3'4'123"
    assert totally_positive_word(4) == W("12341'2'3'4'")
    assert totally_negative_word(5) == W("54'32'15'43'21'")
    for n in range(2, 8):
        assert rank(totally_positive_word(n)) == 0
        assert rank(totally_negative_word(n)) == 2 * (n - 2) if n > 2 else True


# -- words from matrices ---------------------------------------------------------------------

def test_word_of_small_matrices():
    assert word_of_matrix([[1, 0], [0, 1]]) == W("121'2'")
    assert word_of_matrix([[1, 1, 0], [0, 1, 1]]) == W("1231'2'3'")
    assert word_of_matrix([[1, -1, 0], [0, 1, 1]]) == W("321'3'2'1")


def test_walls_raise():
    with pytest.raises(WallError, match="column 2 vanishes"):
        word_of_matrix([[1, 0, 0], [0, 0, 1]])
    with pytest.raises(WallError, match=r"m_\{1,2\} = 0"):
        word_of_matrix([[1, 2, 0], [1, 2, 1]])


@settings(max_examples=200)
@given(st.integers(2, 6).flatmap(lambda n: st.lists(
    st.tuples(st.integers(-9, 9), st.integers(-9, 9)), min_size=n, max_size=n)))
def test_word_signs_agree_with_minor_signs(cols):
    n = len(cols)
    dets = {(i, j): cols[i - 1][0] * cols[j - 1][1] - cols[i - 1][1] * cols[j - 1][0]
            for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    assume(all(dets.values()))
    w = word_of_matrix([[c[0] for c in cols], [c[1] for c in cols]])
    for Y, d in dets.items():
        assert pair_sign(w, Y) == _sign(d)
    assert w.is_plus == (dets[(n - 1, n)] > 0)


@pytest.mark.parametrize("n", range(2, 6))
def test_witness_matrices_reproduce_every_plus_word(n):
    for w in enumerate_words(n, plus_only=True):
        X = witness_matrix(w)
        assert X[0][n - 2] == 1
        assert word_of_matrix(X) == w


def test_witness_needs_plus_word():
    minus = next(w for w in enumerate_words(3) if not w.is_plus)
    with pytest.raises(ValueError):
        witness_matrix(minus)


# -- rank -----------------------------------------------------------------------------------

@pytest.mark.parametrize("text,expected", RANK_EXAMPLES)
def test_rank_examples(text, expected):
    assert rank(W(text)) == expected


def test_rank_profile_shape():
    prof = rank_profile(W("15'43'21'54'32'"))
    assert len(prof["directions"]) == 4
    assert sum(b - a for a, b in prof["runs"]) == 4


def test_n3_enumeration():
    assert set(enumerate_words(3)) == {W(x) for x in N3_WORDS}


@pytest.mark.parametrize("n", range(2, 8))
def test_enumeration_counts(n):
    from math import factorial
    assert len(enumerate_words(n)) == 2 ** (n - 1) * factorial(n - 1)
    assert len(enumerate_words(n, plus_only=True)) == 2 ** (n - 2) * factorial(n - 1)


def test_enumeration_cap():
    with pytest.raises(ValueError):
        enumerate_words(9)


@pytest.mark.parametrize("n", range(3, 7))
def test_rank_bounds_and_parity(n):
    for w in enumerate_words(n):
        r = rank(w)
        assert 0 <= r <= 2 * (n - 2)
        even_iff_positive = (r % 2 == 0) == (pair_sign(w, (1, 2)) > 0)
        # parity follows the sign of m_12 exactly on W+, and the reverse off it
        assert even_iff_positive == w.is_plus


# -- moves --------------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 6))
def test_moves_exhaustively(n):
    for w in enumerate_words(n):
        for j, d in legal_moves(w):
            w2, rec = apply_move(w, j, d)
            assert w2.is_plus == w.is_plus
            if not w.is_plus:
                continue
            assert rec.rank_after <= rec.rank_before
            if rec.pair == (1, 2):
                assert rec.flips_m12 and rec.rank_after == rec.rank_before - 1
            if rec.type == "IIIc":
                assert rec.rank_after == rec.rank_before
            assert find_move(w, w2).pair == rec.pair


def test_illegal_moves():
    w = totally_positive_word(4)
    with pytest.raises(IllegalMoveError, match="already adjacent"):
        apply_move(w, 1)
    with pytest.raises(IllegalMoveError):
        apply_move(w, 4)
    w = W("143'21'4'32'")
    j, d = legal_moves(w)[0]
    with pytest.raises(IllegalMoveError, match="shorter arc"):
        apply_move(w, j, -d)
    with pytest.raises(IllegalMoveError, match="no admissible move"):
        find_move(w, totally_positive_word(4))


def test_totally_positive_word_admits_no_move():
    for n in range(2, 7):
        assert legal_moves(totally_positive_word(n)) == []


def test_moves_between_rank_examples():
    w3, w4 = W(RANK_EXAMPLES[2][0]), W(RANK_EXAMPLES[3][0])
    rec = find_move(w3, w4)
    assert (rec.mover, format_label(rec.passed), rec.type) == (1, "4", "Ia")
    back = find_move(w4, w3)
    assert (back.mover, format_label(back.passed), back.type) == (4, "1", "IIa")
    assert rec.rank_before == rec.rank_after == 2


def test_last_sample_move_is_driven_by_label_2():
    ws = sample4_words()
    last = find_move(ws[5], ws[6])
    assert (last.mover, abs(last.passed), last.type) == (2, 1, "IIa")


# -- crossing sequences ----------------------------------------------------------------------

def test_sample_curve_crossings():
    seq = crossing_sequence(sample4_curve(), *SAMPLE4_DOMAIN)
    assert [str(w) for w in seq.words] == [str(w) for w in sample4_words()]
    assert [c.Y for c in seq.crossings] == [Y for Y, _ in SAMPLE4_CROSSINGS]
    for c, (_, t) in zip(seq.crossings, SAMPLE4_CROSSINGS):
        assert float(c.interval.mid) == pytest.approx(t, abs=0.01)
    assert [c.move.type for c in seq.crossings] == ["IVc", "IIIa", "IIa", "IIIc", "Ia", "IIa"]
    assert seq.ranks == [4, 2, 2, 1, 1, 1, 0]


def test_positive_part_has_no_crossings():
    c = make_curve(LowerUni.identity(4), unit_generator(4))
    seq = crossing_sequence(c, 1, 2)
    assert seq.crossings == () and seq.ranks == [0]


def test_projected_curve_input():
    seq = crossing_sequence(project(sample4_curve()), *SAMPLE4_DOMAIN)
    assert len(seq.crossings) == 6


def test_degenerate_curves_raise():
    ident = make_curve(LowerUni.identity(3), unit_generator(3))
    with pytest.raises(DegenerateCurveError, match="multiple root"):
        crossing_sequence(ident, -1, 1)
    with pytest.raises(DegenerateCurveError, match="endpoint"):
        crossing_sequence(sample4_curve(), 0, 1)
    with pytest.raises(ValueError):
        crossing_sequence(sample4_curve(), 1, 0)
    with pytest.raises(ValueError):
        crossing_sequence(sample4_curve())


def test_certificate_on_sample_curve():
    rep = certify_theorem_main(sample4_curve(), *SAMPLE4_DOMAIN)
    assert rep.passed, rep.failures
    assert rep.rank_trace[0] == 4 and rep.rank_trace[-1] == 0
    assert rep.m2_root_count == rep.m2_root_count_sturm == 2
    assert rep.to_json()["bound"] == 4


def test_certificate_accepts_an_extended_curve():
    ext = extend_curve(sample4_curve(), *SAMPLE4_DOMAIN)
    rep = certify_theorem_main(ext)
    assert rep.passed and rep.extended_domain == (ext.a, ext.b)


@pytest.mark.parametrize("n", [3, 4])
def test_good_curve_attains_the_bound(n):
    gm = distinctify(build_good_matrix(eta_word(n), unit_generator(n), mode="along"))
    rep = certify_theorem_main(gm.curve, *gm.window)
    assert rep.passed, rep.failures
    assert rep.m2_root_count == 2 * (n - 2)


@settings(max_examples=10)
@given(st.integers(3, 5), st.integers(0, 10 ** 6))
def test_certificate_on_random_curves(n, seed):
    from flagsturm.verify import random_certificate
    rep, _ = random_certificate(n, random.Random(seed))
    assert rep.passed, rep.failures
    assert all(a >= b for a, b in zip(rep.rank_trace, rep.rank_trace[1:]))
