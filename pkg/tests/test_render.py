from fractions import Fraction

from collatz_spectra.render import over, percent, render, significant_digits


def test_render_significant_digits():
    assert render(Fraction(1, 3)) == "0.3333333"
    assert render(Fraction(2, 3), 3) == "0.667"
    assert render(Fraction(1, 8)) == "0.125"
    assert render(Fraction(0)) == "0"
    assert render(Fraction(1)) == "1"
    assert render(Fraction(5, 2), 1) == "3"  # half-up


def test_exact_bypasses_rounding():
    assert render(Fraction(3367, 4096), 2, exact=True) == "3367/4096"
    assert render(Fraction(4), exact=True) == "4"


def test_helpers():
    assert significant_digits("0.0508968") == 6
    assert significant_digits("6.6440e-4") == 5
    assert over(Fraction(5, 128), 512) == "20/512"
    assert percent(Fraction(781, 1024)) == "76.27"
