"""Write every reproducible table as CSV into an output directory (default ./results)."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from collatz_spectra.cli import main as cli


@dataclass(frozen=True)
class Job:
    name: str
    argv: tuple[str, ...]


JOBS = (
    Job("fraku3_families_L2-6", ("families", "--map", "fraku3", "--L", "2..6")),
    Job("u3g_families_L2-6", ("families", "--map", "u3g", "--L", "2..6")),
    Job("fraku3_summary_L2-7", ("families", "--map", "fraku3", "--L", "2..7", "--summary", "--exact")),
    Job("fraku3_pp_L6-20", ("families", "--map", "fraku3", "--L", "6..20", "--pp", "--exact")),
    Job("fraku5_pp_L3-12", ("families", "--map", "fraku5", "--L", "3..12", "--pp", "--exact")),
    Job("fraku3_rising_levels", ("density", "--map", "fraku3", "--lmax", "30", "--levels", "3", "--precision", "10")),
    Job("u3g_rising_levels", ("density", "--map", "u3g", "--lmax", "30", "--levels", "3", "--precision", "10")),
    Job("fraku5_rising_L85", ("density", "--map", "fraku5", "--lmax", "85")),
    Job("t3_F", ("stopping", "--map", "t3", "--k", "0..10,20,30,40,50,60,70,80,90,100", "--flavor", "both")),
    Job("t5_F", ("stopping", "--map", "t5", "--k", "0..10,20,30,40,50,60,70,80,90,100", "--flavor", "both")),
    Job("fraku3_second_level_61", ("chain", "--map", "fraku3", "--start", "61", "--levels", "1")),
    Job("fraku5_chain_4", ("chain", "--map", "fraku5", "--start", "4", "--levels", "3")),
    Job("fraku3_slices_1e5", ("slices", "--map", "fraku3", "--levels", "7", "--until", "100000")),
    Job("u3g_slices_1e5", ("slices", "--map", "u3g", "--levels", "7", "--until", "100001")),
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("results"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for job in JOBS:
        t0 = time.perf_counter()
        code = cli([*job.argv, "--out", str(args.out / f"{job.name}.csv")])
        print(f"{job.name:28s} exit={code} {time.perf_counter() - t0:6.2f}s")
    code = cli(["tree", "--map", "fraku3", "--nodes", "60", "--format", "dot", "--out", str(args.out / "fraku3_tree.dot")])
    print(f"{'fraku3_tree':28s} exit={code}")


if __name__ == "__main__":
    main()
