"""Regenerate the frozen regression files in tests/golden.

Run only after an intentional change to the numerics:

    python3 tests/make_golden.py
"""

from pathlib import Path

from coxswim.dynamics import simulate
from coxswim.geometry import ModelParams
from coxswim.output import TRAJECTORY_HEADER, csv_text, trajectory_rows
from coxswim.shapes import BumpParams, BumpProgram
from coxswim.solver import discrepancy_report

GOLDEN = Path(__file__).parent / "golden"
BUMP_RUN_PARAMS = ModelParams(h=0.01, delta=0.05)
REFERENCE_BUMP = BumpParams(c1=1e6, c2=15.0, c3=1.0 / 15.0)
STRIDE = 25
REPORT_TANGENTS = ((1.0, 0.0), (0.0, 1.0), (0.6, 0.8), (-0.8, 0.6))


def bump_run():
    return simulate(BumpProgram(REFERENCE_BUMP), BUMP_RUN_PARAMS, 15.0, 0.01)


def bump_golden_text(traj):
    return csv_text(TRAJECTORY_HEADER, trajectory_rows(traj)[::STRIDE])


def report_text():
    return discrepancy_report(BUMP_RUN_PARAMS, REPORT_TANGENTS)


def main():
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / "bump_run.csv").write_text(bump_golden_text(bump_run()))
    (GOLDEN / "discrepancy_report.txt").write_text(report_text())


if __name__ == "__main__":
    main()
