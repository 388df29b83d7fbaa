"""Tests for the coverage curve type, its CSV form and the analytic/simulated join."""

import math
from pathlib import Path

import pytest

from mmwave_coverage.coverage import (
    CoverageCurve,
    compare_curves,
    db_to_linear,
    read_curve_csv,
    write_curve_csv,
)
from mmwave_coverage.shared import CoverageMethod, Family, InvalidArgumentError


def _analytic() -> CoverageCurve:
    return CoverageCurve(
        thresholds_db=[-10.0, 0.0, 10.0],
        coverages=[0.95, 0.7, 0.3],
        method=CoverageMethod.ANALYTIC,
        gx_family=Family.LOGLOGISTIC,
    )


def _simulated() -> CoverageCurve:
    return CoverageCurve(
        thresholds_db=[10.0, 0.0, -10.0],
        coverages=[0.32, 0.69, 0.96],
        method=CoverageMethod.MONTECARLO,
        gx_family=Family.LOGLOGISTIC,
        stderr=[0.01, 0.01, 0.005],
    )


@pytest.mark.unit
class TestCoverageCurve:
    @pytest.mark.parametrize(
        ("t_db", "expected"), [(0.0, 1.0), (10.0, 10.0), (-10.0, 0.1), (3.0, 1.9953)]
    )
    def test_db_to_linear(self, t_db: float, expected: float) -> None:
        assert db_to_linear(t_db) == pytest.approx(expected, rel=1e-4)

    def test_length_mismatch(self) -> None:
        with pytest.raises(InvalidArgumentError):
            CoverageCurve([0.0, 1.0], [0.5], CoverageMethod.ANALYTIC)

    @pytest.mark.parametrize("bad", [-0.1, 1.1, math.nan])
    def test_coverage_range(self, bad: float) -> None:
        with pytest.raises(InvalidArgumentError):
            CoverageCurve([0.0], [bad], CoverageMethod.ANALYTIC)

    def test_must_be_nonincreasing(self) -> None:
        with pytest.raises(InvalidArgumentError):
            CoverageCurve([0.0, 5.0], [0.5, 0.6], CoverageMethod.ANALYTIC)

    def test_unsorted_thresholds_accepted(self) -> None:
        assert len(_simulated()) == 3

    def test_stderr_length(self) -> None:
        with pytest.raises(InvalidArgumentError):
            CoverageCurve([0.0], [0.5], CoverageMethod.MONTECARLO, stderr=[0.1, 0.1])

    def test_frame_columns(self) -> None:
        assert list(_analytic().to_frame().columns) == [
            "T_dB",
            "coverage",
            "method",
            "gx_family",
        ]
        assert "stderr" in _simulated().to_frame().columns


@pytest.mark.unit
class TestCurveCsv:
    def test_written_layout(self, tmp_path: Path) -> None:
        path = write_curve_csv(_analytic(), tmp_path / "curve.csv")
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "T_dB,coverage,method,gx_family"
        assert lines[1] == "-10,0.95,analytic,loglogistic"

    def test_read_back(self, tmp_path: Path) -> None:
        curve = _simulated()
        loaded = read_curve_csv(write_curve_csv(curve, tmp_path / "mc.csv"))
        assert loaded.thresholds_db == curve.thresholds_db
        assert loaded.coverages == curve.coverages
        assert loaded.stderr == curve.stderr
        assert loaded.method is CoverageMethod.MONTECARLO
        assert loaded.gx_family is Family.LOGLOGISTIC

    def test_curve_without_family(self, tmp_path: Path) -> None:
        curve = CoverageCurve([0.0], [0.5], CoverageMethod.MONTECARLO)
        loaded = read_curve_csv(write_curve_csv(curve, tmp_path / "c.csv"))
        assert loaded.gx_family is None

    def test_missing_column(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.csv"
        path.write_text("T_dB,coverage\n0,0.5\n", encoding="utf-8")
        with pytest.raises(InvalidArgumentError):
            read_curve_csv(path)


@pytest.mark.unit
class TestCompareCurves:
    def test_join_and_delta(self) -> None:
        joined = compare_curves(_analytic(), _simulated())
        assert list(joined.columns) == [
            "T_dB",
            "analytic",
            "montecarlo",
            "stderr",
            "delta",
        ]
        assert joined["T_dB"].tolist() == [-10.0, 0.0, 10.0]
        assert joined["delta"].tolist() == pytest.approx([0.01, -0.01, 0.02])
        assert joined["stderr"].tolist() == [0.005, 0.01, 0.01]

    def test_missing_stderr_is_nan(self) -> None:
        joined = compare_curves(_analytic(), _analytic())
        assert joined["stderr"].isna().all()
        assert (joined["delta"] == 0).all()

    def test_disjoint_grids(self) -> None:
        other = CoverageCurve([3.0], [0.5], CoverageMethod.MONTECARLO)
        with pytest.raises(InvalidArgumentError):
            compare_curves(_analytic(), other)
