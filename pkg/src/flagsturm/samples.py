"""Worked examples with known answers, used by the CLI, the demos and the tests."""

from fractions import Fraction as F

from .bruhat import GoodMatrix, ReducedWord, build_good_matrix
from .curve import LowerUni, PolynomialCurve, make_curve, unit_generator
from .words import AdmissibleWord

# n = 4 curve crossing six walls of the 2 x n chart between t = -1 and t = 3/2
SAMPLE4_ENTRIES = {(3, 1): F(1, 6), (4, 1): F(1, 8), (4, 2): F(1, 5)}
SAMPLE4_WORDS = (
    "143'21'4'32'", "1423'1'4'2'3", "31243'1'2'4'", "32143'2'1'4'",
    "23142'3'1'4'", "21342'1'3'4'", "12341'2'3'4'",
)
SAMPLE4_CROSSINGS = (
    ((2, 3), -0.63), ((2, 4), 0.0), ((1, 2), 0.26),
    ((2, 3), 0.63), ((1, 3), 0.77), ((1, 2), 1.11),
)
SAMPLE4_DOMAIN = (F(-1), F(3, 2))

# n = 5 good matrix for the cell eta * a_2 built from nine generators
SAMPLE5_LETTERS = (1, 2, 1, 3, 4, 3, 2, 1, 3)
SAMPLE5_TAUS = (F(1), F(-1), F(1), F(1, 8), F(-1, 8), F(1, 64), F(1, 512), F(-1, 512), F(-1, 4096))
SAMPLE5_ITINERARY = "dcbcdabacbcbabdcbadc"

# all eight words of W for n = 3, in the order they are usually listed
N3_WORDS = (
    "123'1'2'3", "12'3'1'23", "1'23'12'3", "1'2'3'123",
    "213'2'1'3", "2'13'21'3", "21'3'2'13", "2'1'3'213",
)

# rank examples for n = 5: (word, rank)
RANK_EXAMPLES = (
    ("123451'2'3'4'5'", 0),
    ("15'43'21'54'32'", 6),
    ("145231'4'5'2'3'", 2),
    ("415234'1'5'2'3'", 2),
)


def sample4_curve() -> PolynomialCurve:
    return make_curve(LowerUni.from_entries(4, SAMPLE4_ENTRIES), unit_generator(4))


def sample4_words() -> list[AdmissibleWord]:
    return [AdmissibleWord.parse(w) for w in SAMPLE4_WORDS]


def sample5_good_matrix() -> GoodMatrix:
    return build_good_matrix(ReducedWord(5, SAMPLE5_LETTERS), unit_generator(5), taus=SAMPLE5_TAUS)
