from pathlib import Path

import pytest

from branchforge.algebra.exactfield import QQ
from branchforge.algebra.multipoly import Ring, parse
from branchforge.cli import compose_config
from branchforge.core.data_types import PipelineConfig
from branchforge.core.errors import DeadlineExceeded
from branchforge.data.golden import GoldenStore
from branchforge.pipelines import PipelineContext, require, run_pipeline
from branchforge.pipelines.quadpoint import eliminate_s

ROOT = Path(__file__).resolve().parent.parent
COVERS_DIR = ROOT / "configs" / "covers"
GOLDEN_DIR = ROOT / "golden"


def _invariants_config(name: str) -> PipelineConfig:
    return PipelineConfig("invariants", covers_config=str(COVERS_DIR / f"{name}.json"))


@pytest.mark.parametrize("name", ["todorov", "todorov_mod", "example2", "example3"])
def test_invariants_pipeline_matches_goldens(name):
    report = run_pipeline(_invariants_config(name), GoldenStore(GOLDEN_DIR))
    assert report.passed, report.to_text()
    assert [s.name for s in report.stages] == ["invariants.load", "invariants.chain", "invariants.classify"]
    assert report.stage("invariants.load").outputs == {}


def test_invariants_outputs():
    report = run_pipeline(_invariants_config("todorov_mod"))
    chain = report.stage("invariants.chain").outputs
    assert chain["KV2"] == "-10"
    assert chain["r_list"] == "4"
    assert chain["bicanonical_composed"] == "true"
    assert "_result" not in chain
    assert report.stage("invariants.classify").outputs == {"case": "b"}

    todorov = run_pipeline(_invariants_config("todorov"))
    assert "r_list" not in todorov.stage("invariants.chain").outputs
    assert todorov.stage("invariants.classify").outputs["violations"] == "p_g = q = 1"


def test_missing_config_skips_downstream():
    report = run_pipeline(PipelineConfig("invariants"))
    assert [s.status for s in report.stages] == ["fail", "skipped", "skipped"]
    assert "ConfigSchemaError" in report.stages[0].message
    assert report.exit_code == 1


def test_golden_mismatch_fails_stage(tmp_path):
    bad = tmp_path / "invariants" / "todorov"
    bad.mkdir(parents=True)
    (bad / "KS2.txt").write_text("9\n", encoding="utf-8")
    report = run_pipeline(_invariants_config("todorov"), GoldenStore(tmp_path))
    assert [s.status for s in report.stages] == ["pass", "fail", "skipped"]
    assert "GoldenMismatchError" in report.stage("invariants.chain").message


def test_unknown_pipeline():
    with pytest.raises(ValueError):
        run_pipeline(PipelineConfig("frobnicate"))


def test_stage_status_and_digest():
    ctx = PipelineContext(PipelineConfig("demo", deadlines={"default": 300.0, "demo_late": -1.0}))

    def first(deadline):
        return {"value": 3, "_hidden": "x"}

    def late(deadline):
        deadline.check()
        return {}

    assert ctx.run_stage("demo", "first", first)
    assert ctx.get("demo.value") == 3
    assert ctx.get("demo.hidden") == "x"
    assert ctx.report.stage("demo.first").outputs == {"value": "3"}

    assert not ctx.run_stage("demo", "late", late, inputs=["demo.value"])
    stage = ctx.report.stage("demo.late")
    assert stage.status == "deadline"
    assert len(stage.inputs_digest) == 16

    assert not ctx.run_stage("demo", "after", first)
    assert ctx.report.stage("demo.after").status == "skipped"


def test_digest_is_reproducible():
    digests = []
    for _ in range(2):
        ctx = PipelineContext(PipelineConfig("demo"))
        ctx.run_stage("demo", "first", lambda deadline: {"value": 3})
        ctx.run_stage("demo", "second", lambda deadline: {}, inputs=["demo.value"])
        digests.append(ctx.report.stage("demo.second").inputs_digest)
    assert digests[0] == digests[1]


def test_require():
    require(True, "ok")
    with pytest.raises(AssertionError):
        require(False, "boom")


def test_unexpected_exception_fails_stage():
    ctx = PipelineContext(PipelineConfig("demo"))

    def broken(deadline):
        return {"value": len(None)}

    assert not ctx.run_stage("demo", "broken", broken)
    stage = ctx.report.stage("demo.broken")
    assert stage.status == "fail"
    assert stage.message.startswith("TypeError")
    assert not ctx.run_stage("demo", "after", lambda deadline: {})
    assert ctx.report.stage("demo.after").status == "skipped"


def test_eliminate_s_checks_lead_coefficient():
    ring = Ring(QQ, ("s", "x", "y"))
    assert eliminate_s(parse("s^2 - x", ring), parse("y*s - 1", ring)) == parse("1 - x*y^2", ring)
    with pytest.raises(AssertionError):
        eliminate_s(parse("s - 1", ring), parse("x*s + x*y", ring))


def test_stage_catches_deadline_exceeded():
    ctx = PipelineContext(PipelineConfig("demo"))

    def slow(deadline):
        raise DeadlineExceeded("demo.slow 超过截止时间")

    assert not ctx.run_stage("demo", "slow", slow)
    assert ctx.report.stage("demo.slow").status == "deadline"


def _run_with_goldens(command: str):
    config = PipelineConfig.from_cfg(compose_config([command]))
    return run_pipeline(config, GoldenStore(GOLDEN_DIR))


@pytest.mark.slow
def test_kummer_pipeline():
    report = _run_with_goldens("kummer")
    assert report.passed, report.to_text()
    assert report.stage("kummer.eliminate").outputs["F"] == (GOLDEN_DIR / "kummer" / "F.txt").read_text(
        encoding="utf-8").strip()


@pytest.mark.slow
def test_nodes8_pipeline():
    report = _run_with_goldens("nodes8")
    assert report.passed, report.to_text()
    assert report.stage("nodes8.node_difference").outputs["N_points"] == "8"


@pytest.mark.slow
@pytest.mark.parametrize("command", ["quadpoint", "confirm", "bidegree"])
def test_long_pipelines(command):
    report = _run_with_goldens(command)
    assert report.passed, report.to_text()
