"""
流水线上下文模块
按顺序执行阶段：截止时间、金标准比对、失败后跳过下游阶段
"""

import hashlib
import logging
import time
from typing import Any, Callable, Dict, List, Optional, Sequence

from ..algebra.exactfield import FieldElement, NumberField, cyclotomic_field
from ..algebra.groebner import Deadline
from ..algebra.multipoly import Polynomial, Ring, parse
from ..core.data_types import PipelineConfig, RunReport, StageResult
from ..core.errors import BranchForgeError, CheckFailedError, ConfigSchemaError, DeadlineExceeded
from ..data.golden import GoldenStore, format_artifact
from ..data.ideal_io import parse_element, parse_field

StageFn = Callable[[Deadline], Dict[str, Any]]


class PipelineContext:
    """
    一次运行的上下文

    阶段函数返回 产物名 → 值；以下划线开头的产物只在上下文内部传递，
    不写入报告，也不参与金标准比对。
    """

    def __init__(self, config: PipelineConfig, golden: Optional[GoldenStore] = None):
        self.config = config
        self.golden = golden
        self.report = RunReport(config.name)
        self.artifacts: Dict[str, Any] = {}
        self.completed: List[str] = []
        self.blocked_by: Optional[str] = None
        self._fields: Dict[str, NumberField] = {}

    # ───────── 输入 ─────────

    def field(self, key: str) -> NumberField:
        """配置 inputs.fields 中声明的数域"""
        if key not in self._fields:
            spec = self.config.fields.get(key)
            if spec is None:
                raise ConfigSchemaError(f"配置中缺少数域声明 '{key}'")
            if isinstance(spec, str):
                self._fields[key] = parse_field(spec)
            elif "cyclotomic" in spec:
                self._fields[key] = cyclotomic_field(int(spec["cyclotomic"]), spec.get("name", "e"))
            else:
                self._fields[key] = parse_field(f"{spec['name']} = {spec['min_poly']}")
        return self._fields[key]

    def polynomial(self, key: str, ring: Ring) -> Polynomial:
        return parse(self.config.polynomial(key), ring)

    def element(self, key: str, field: NumberField) -> FieldElement:
        """以生成元多项式给出的数域元素，如 "64/55*r13^3 - 46/55" """
        return parse_element(self.config.polynomial(key), field)

    # ───────── 产物 ─────────

    def get(self, key: str) -> Any:
        if key not in self.artifacts:
            raise KeyError(f"上下文中没有产物 {key}")
        return self.artifacts[key]

    def once(self, pipeline: str, runner: Callable[["PipelineContext"], None]) -> None:
        """前置流水线在同一上下文中只运行一次"""
        if pipeline in self.completed:
            return
        self.completed.append(pipeline)
        runner(self)

    def _digest(self, inputs: Sequence[str]) -> str:
        h = hashlib.sha256()
        for key in inputs:
            h.update(key.encode("utf-8"))
            h.update(b"\0")
            value = self.artifacts.get(key)
            h.update(format_artifact(value).encode("utf-8") if value is not None else b"")
            h.update(b"\0")
        return h.hexdigest()[:16]

    # ───────── 阶段 ─────────

    def run_stage(self, pipeline: str, stage: str, fn: StageFn,
                  inputs: Sequence[str] = (), deadline_key: Optional[str] = None,
                  golden_subdir: Optional[str] = None) -> bool:
        """
        执行一个阶段

        Args:
            pipeline: 流水线名称，也是金标准子目录
            stage: 阶段名称
            fn: 阶段函数，参数为截止时间
            inputs: 阶段读取的上游产物键，用于输入摘要
            deadline_key: 截止时间配置键，缺省时依次查找 "<pipeline>_<stage>" 与 "<pipeline>"
            golden_subdir: 金标准子目录，默认与流水线同名

        Returns:
            阶段是否通过
        """
        name = f"{pipeline}.{stage}"
        digest = self._digest(inputs)
        if self.blocked_by is not None:
            result = StageResult(name, "skipped", inputs_digest=digest,
                                 message=f"上游阶段 {self.blocked_by} 未通过")
            self.report.stages.append(result)
            logging.info(f"跳过阶段 {name}")
            return False

        keys = [deadline_key] if deadline_key else []
        seconds = self.config.stage_deadline(*keys, f"{pipeline}_{stage}", pipeline)
        deadline = Deadline(seconds, label=name)
        logging.info(f"开始阶段 {name}")
        start = time.perf_counter()
        outputs: Dict[str, Any] = {}
        status, message = "pass", ""
        try:
            outputs = fn(deadline) or {}
            if self.golden is not None:
                for key, value in outputs.items():
                    if not key.startswith("_"):
                        self.golden.check(golden_subdir or pipeline, key, value)
        except DeadlineExceeded as e:
            status, message = "deadline", str(e)
        except (BranchForgeError, ArithmeticError, ValueError, AssertionError, KeyError) as e:
            status, message = "fail", f"{type(e).__name__}: {e}"
        except Exception as e:
            logging.exception(f"阶段 {name} 出现意外异常")
            status, message = "fail", f"{type(e).__name__}: {e}"
        wall_time = time.perf_counter() - start

        for key, value in outputs.items():
            self.artifacts[f"{pipeline}.{key.lstrip('_')}"] = value
        reported = {k: format_artifact(v) for k, v in outputs.items() if not k.startswith("_")}
        result = StageResult(name, status, reported, digest, wall_time, message)
        self.report.stages.append(result)

        if status == "pass":
            logging.info(f"阶段 {name} 通过，用时 {wall_time:.2f} 秒")
        else:
            self.blocked_by = name
            if status == "deadline":
                logging.warning(f"阶段 {name} 超过截止时间: {message}")
            else:
                logging.error(f"阶段 {name} 失败: {message}")
        return status == "pass"


def require(condition: bool, message: str) -> None:
    """阶段内的精确校验"""
    if not condition:
        raise CheckFailedError(message)
