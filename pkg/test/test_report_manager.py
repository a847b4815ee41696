import pytest

from branchforge.core.data_types import PipelineConfig, RunReport, StageResult
from branchforge.core.errors import ConfigSchemaError
from branchforge.data.report_manager import ReportManager


@pytest.fixture
def report():
    return RunReport("kummer", [
        StageResult("kummer.parse", "pass", {"F": "x1+x2"}, "abc", 0.25),
        StageResult("kummer.eliminate", "deadline", {}, "def", 3.5, "超过截止时间"),
        StageResult("kummer.rationality", "skipped", message="上游阶段 kummer.eliminate 未通过"),
    ])


def test_report_summary(report):
    assert not report.passed
    assert report.exit_code == 1
    assert report.status_counts() == {"pass": 1, "fail": 0, "skipped": 1, "deadline": 1}
    assert report.stage("kummer.parse").outputs == {"F": "x1+x2"}
    with pytest.raises(KeyError):
        report.stage("kummer.missing")


def test_empty_report_does_not_pass():
    assert not RunReport("kummer").passed


def test_text_report(report):
    text = report.to_text()
    assert text.startswith("pipeline: kummer\n")
    assert "[PASS    ] kummer.parse" in text
    assert "    F: x1+x2" in text
    assert text.endswith("result: FAIL\n")


def test_multiline_output_is_indented():
    report = RunReport("nodes8", [StageResult("nodes8.sections", "pass", {"sections": "a\nb"})])
    lines = report.to_text().splitlines()
    assert "    sections: a" in lines
    assert "              b" in lines


def test_unknown_stage_status():
    with pytest.raises(ValueError):
        StageResult("x", "maybe")


def test_save_and_load(tmp_path, report):
    manager = ReportManager(str(tmp_path / "out"))
    saved = manager.save_report(report)
    assert set(saved) == {"json", "text", "csv"}

    data = manager.load_report()
    assert data["pipeline"] == "kummer"
    assert data["passed"] is False
    assert [s["status"] for s in data["stages"]] == ["pass", "deadline", "skipped"]
    assert "wall_time" not in data["stages"][0]

    timings = manager.load_timings()
    assert list(timings.columns) == ["pipeline", "stage", "status", "wall_time"]
    assert timings["wall_time"].tolist() == [0.25, 3.5, 0.0]
    assert (tmp_path / "out" / "report.txt").read_text(encoding="utf-8") == report.to_text()


def test_selected_formats(tmp_path, report):
    manager = ReportManager(str(tmp_path), ["json"])
    assert list(manager.save_report(report)) == ["json"]
    assert not (tmp_path / "timings.csv").exists()
    with pytest.raises(ValueError):
        ReportManager(str(tmp_path), ["xml"])
    with pytest.raises(FileNotFoundError):
        manager.load_report(str(tmp_path / "none.json"))


def test_pipeline_config_deadlines():
    config = PipelineConfig("bidegree", deadlines={"default": 300.0, "bidegree": 60.0, "bidegree_slice": None})
    assert config.stage_deadline("bidegree_elimination", "bidegree") == 60.0
    assert config.stage_deadline("bidegree_slice", "bidegree") is None
    assert config.stage_deadline("nodes8") == 300.0
    config.deadline_override = 5.0
    assert config.stage_deadline("bidegree_slice") == 5.0
    with pytest.raises(ConfigSchemaError):
        PipelineConfig("kummer", report_formats=["pdf"])
    with pytest.raises(ConfigSchemaError):
        config.polynomial("F")
    with pytest.raises(ConfigSchemaError):
        config.invariant("KS2")
