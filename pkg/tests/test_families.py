from decimal import Decimal
from fractions import Fraction

import pytest

from golden import (
    PP_ROWS,
    PRINTED_TYPO_L16,
    RISING_FRAKU3,
    RISING_FRAKU3_LEVELS_COLUMN,
    RISING_U3G_LEVELS,
)

from collatz_spectra.affine import Direction
from collatz_spectra.families import (
    cumulative_SL,
    distribution_DL,
    enumerate_families,
    length_spectrum,
    pp_distribution_table,
    rising_fraction,
)
from collatz_spectra.maps import get_map, step
from collatz_spectra.numtheory import binomial, multinomial
from collatz_spectra.render import over, percent, render

def places7(x: Fraction) -> str:
    return f"{Decimal(x.numerator) / Decimal(x.denominator):.7f}"


SUMMARY_3 = {  # L -> (D_L, S_L, {modulus: count})
    2: ("1/4", "1/4", {4: 1}),
    3: ("3/16", "7/16", {8: 1, 16: 1}),
    4: ("9/64", "37/64", {16: 1, 32: 2, 64: 1}),
    5: ("27/256", "175/256", {32: 1, 64: 3, 128: 3, 256: 1}),
    6: ("81/1024", "781/1024", {64: 1, 128: 4, 256: 6, 512: 4, 1024: 1}),
    7: ("243/4096", "3367/4096", {128: 1, 256: 5, 512: 10, 1024: 10, 2048: 5, 4096: 1}),
}


@pytest.mark.parametrize("L", sorted(SUMMARY_3))
def test_fraku3_summary(L):
    dl, sl, counts = SUMMARY_3[L]
    assert distribution_DL("fraku3", L) == Fraction(dl)
    assert cumulative_SL("fraku3", L) == Fraction(sl)
    table = enumerate_families("fraku3", L)
    assert table.increment_counts() == counts
    assert table.density() == Fraction(dl)
    assert {2 ** e: c for e, c in length_spectrum("fraku3", L).items()} == counts


def test_summary_percentages():
    assert [percent(cumulative_SL("fraku3", L)) for L in range(2, 8)] == [
        "25.00", "43.75", "57.81", "68.36", "76.27", "82.20",
    ]


@pytest.mark.parametrize("map_id", ["fraku3", "u3g", "fraku5", "u5g"])
def test_enumerated_density_is_DL(map_id):
    pm = get_map(map_id)
    for L in range(2, 8):
        table = enumerate_families(map_id, L)
        assert len(table.families) == len(pm.middle) ** (L - 2)
        dens = table.density() * (2 if pm.odd_only else 1)  # relative to the map's domain
        assert dens == distribution_DL(map_id, L)
        assert cumulative_SL(map_id, L) == sum(distribution_DL(map_id, j) for j in range(2, L + 1))


def test_spectrum_coefficients():
    for L in range(2, 30):
        k = L - 2
        assert length_spectrum("fraku3", L) == {2 + k + j: binomial(k, j) for j in range(k + 1)}
    # 5x+1 alphabet: exponents 2 (5n/4), 1, 4, 3 -> sums of multinomials
    for L in range(2, 9):
        k = L - 2
        want: dict[int, int] = {}
        for a in range(k + 1):
            for b in range(k + 1 - a):
                for c in range(k + 1 - a - b):
                    d = k - a - b - c
                    e = 4 + 2 * a + b + 4 * c + 3 * d
                    want[e] = want.get(e, 0) + multinomial([a, b, c, d])
        assert length_spectrum("fraku5", L) == want


def test_fraku3_pp_at_six():
    pp = enumerate_families("fraku3", 6).pp()
    assert [(f.x_class.rep, f.modulus) for f in pp] == [(48, 64)]


def test_fraku5_pp_at_six():
    pp = enumerate_families("fraku5", 6).pp()
    assert [(f.x_class.rep, f.modulus) for f in pp][:5] == [(155, 256), (367, 512), (412, 512), (435, 512), (453, 512)]


def test_pp_rows():
    rows = pp_distribution_table("fraku3", range(6, 21))
    assert len(rows) == len(PP_ROWS)
    for r, (L, moduli, dens, cum, cum_pct, sl_pct) in zip(rows, PP_ROWS):
        assert r.L == L
        printed = dict(moduli)
        if L == 16:
            m, typo, fixed = PRINTED_TYPO_L16
            assert printed[m] == typo
            printed[m] = fixed
        assert dict(r.moduli) == printed
        assert over(r.density, r.denominator) == dens
        assert over(r.cumulative, r.denominator) == cum
        assert percent(r.cumulative) == cum_pct
        assert percent(r.covered) == sl_pct


def test_printed_l16_coefficient_is_a_typo():
    m, typo, fixed = PRINTED_TYPO_L16
    row = next(r for r in PP_ROWS if r[0] == 16)
    others = sum(c * (m // mod) for mod, c in row[1] if mod != m)
    assert Fraction(row[2]) * m - others == fixed != typo


def test_pp_table_matches_enumeration():
    for map_id in ("fraku3", "u3g", "fraku5", "u5g"):
        pm = get_map(map_id)
        for r in pp_distribution_table(map_id, range(2, 9)):
            fams = enumerate_families(map_id, r.L).pp()
            dens = sum((f.x_class.density() for f in fams), Fraction(0)) * (2 if pm.odd_only else 1)
            assert r.density == dens, (map_id, r.L)


def test_level_one_equals_cumulative_pp():
    rows = pp_distribution_table("fraku3", [20])
    assert rising_fraction("fraku3", 20).f == rows[-1].cumulative == Fraction(32181086, 268435456)


@pytest.mark.parametrize("lmax", sorted(RISING_FRAKU3))
def test_fraku3_level_one(lmax):
    assert render(rising_fraction("fraku3", lmax).f) == RISING_FRAKU3[lmax]


def test_fraku3_three_levels_uniform_30():
    rep = rising_fraction("fraku3", 30, 3)
    assert tuple(places7(f) for f in rep.rising) == RISING_FRAKU3_LEVELS_COLUMN
    assert render(rep.rising[2], 8) == "0.024040812"
    assert rep.complete and rep.covered == cumulative_SL("fraku3", 30)


def test_fraku3_level_two_with_longer_first_level():
    assert render(rising_fraction("fraku3", (50, 30), 2).f) == "0.05112079"


def test_u3g_three_levels():
    rep = rising_fraction("u3g", 30, 3)
    assert tuple(places7(f) for f in rep.rising) == RISING_U3G_LEVELS


def test_rising_fraction_shape():
    assert rising_fraction("fraku3", 2).f == 0
    assert rising_fraction("fraku3", 5).f == 0
    prev = Fraction(0)
    for lmax in range(6, 40, 3):
        f = rising_fraction("fraku3", lmax).f
        assert f >= prev
        prev = f
    rep = rising_fraction("fraku5", 20, 4)
    assert all(a > b > 0 for a, b in zip(rep.rising, rep.rising[1:]))


def _brute_rising(map_id, bounds, period):
    """Count residues r mod ``period`` whose huge representative stays above itself."""
    pm = get_map(map_id)
    big = period << 60
    hits = [0] * len(bounds)
    for r in range(period):
        x = cur = r + big
        for j, lmax in enumerate(bounds):
            for _ in range(lmax - 1):
                rec = step(map_id, cur)
                cur = rec.output
                if rec.branch_id == pm.terminal:
                    break
            else:
                break
            if cur <= x:
                break
            hits[j] += 1
    return [Fraction(h, period) for h in hits]


def test_rising_fraction_against_residues():
    # fraku5 branches of length <= 3 have moduli <= 256, so two levels repeat mod 2**16
    assert rising_fraction("fraku5", (3, 3), 2).rising == _brute_rising("fraku5", (3, 3), 1 << 16)
    assert rising_fraction("fraku5", 4, 1).rising == _brute_rising("fraku5", (4,), 1 << 12)
    assert rising_fraction("fraku3", (8, 3), 2).rising == _brute_rising("fraku3", (8, 3), 1 << 18)


def test_work_cap_truncates_levels():
    rep = rising_fraction("fraku3", 30, 3, max_work=10_000)
    assert not rep.complete
    assert len(rep.rising) < 3


def test_enumeration_cap():
    with pytest.raises(ValueError, match="exponent-spectrum"):
        enumerate_families("fraku5", 14)


def test_bad_arguments():
    with pytest.raises(ValueError):
        enumerate_families("t3", 4)
    with pytest.raises(ValueError):
        rising_fraction("fraku3", (30, 30), 3)
    with pytest.raises(ValueError):
        distribution_DL("fraku3", 1)


def test_directions_are_labelled():
    assert {f.direction for f in enumerate_families("fraku3", 8).families} == {Direction.PP, Direction.PG}
