"""Level-2 and level-3 rising fractions for fraku3 under different per-level length cut-offs."""

from collatz_spectra.families import rising_fraction
from collatz_spectra.render import render

for bounds in [(30, 30), (40, 30), (50, 30), (60, 30), (30, 30, 30), (50, 30, 30)]:
    rep = rising_fraction("fraku3", bounds, len(bounds))
    print(bounds, " ".join(render(f, 10) for f in rep.rising))
