from fractions import Fraction

from hypothesis import strategies as st

rationals = st.fractions(min_value=-200, max_value=200, max_denominator=60)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def rational_in(lo, hi, max_denominator=30):
    return st.fractions(min_value=Fraction(lo), max_value=Fraction(hi), max_denominator=max_denominator)
