"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from uqwhittaker.scalars import EvalPoint, Scalar

small_ints = st.integers(min_value=-4, max_value=4)
exponent = st.tuples(st.integers(0, 3), st.integers(0, 2))


@st.composite
def polys(draw, max_terms=3):
    terms = draw(st.dictionaries(exponent, small_ints.filter(bool), min_size=1, max_size=max_terms))
    return terms


@st.composite
def scalars(draw):
    """Random element of Q(q, alpha) with a small q^i alpha^j monomial shift."""
    num = draw(polys())
    den = draw(polys(2))
    s = Scalar.from_dicts(num, den) if Scalar.from_dicts(den) != 0 else Scalar.from_dicts(num)
    shift = Scalar.q() ** draw(st.integers(-2, 2)) * Scalar.alpha() ** draw(st.integers(-1, 1))
    return s * shift


nonzero_scalars = scalars().filter(lambda s: s != 0)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def eval_points(draw):
    q0 = draw(rationals.filter(lambda x: x not in (0, 1, -1)))
    a0 = draw(rationals.filter(lambda x: x != 0))
    return EvalPoint(Fraction(q0), Fraction(a0))


letters = st.sampled_from(("F3", "F2", "F1", "K1", "K1i", "K2", "K2i", "E3", "E2", "E1"))
words = st.lists(letters, min_size=1, max_size=6).map(tuple)
chevalley_words = st.lists(st.sampled_from(("E1", "E2", "F1", "F2", "K1", "K2", "K1i", "K2i")),
                           min_size=1, max_size=4).map(tuple)
