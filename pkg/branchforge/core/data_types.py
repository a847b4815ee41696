"""
branchforge 核心数据结构模块
定义流水线配置、阶段结果与运行报告
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from omegaconf import DictConfig, OmegaConf

from .errors import ConfigSchemaError

STAGE_STATUSES = ("pass", "fail", "skipped", "deadline")
REPORT_FORMATS = ("json", "text", "csv")


@dataclass
class StageResult:
    """单个阶段的结果"""
    name: str
    status: str
    outputs: Dict[str, str] = field(default_factory=dict)  # 精确字符串
    inputs_digest: str = ""
    wall_time: float = 0.0  # 只写入 timings.csv
    message: str = ""

    def __post_init__(self):
        if self.status not in STAGE_STATUSES:
            raise ValueError(f"未知的阶段状态: {self.status}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "inputs_digest": self.inputs_digest,
            "outputs": dict(self.outputs),
            "message": self.message,
        }


@dataclass
class RunReport:
    """一次流水线运行的报告"""
    pipeline: str
    stages: List[StageResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.stages) and all(s.passed for s in self.stages)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def stage(self, name: str) -> StageResult:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(f"报告中没有阶段 {name}")

    def status_counts(self) -> Dict[str, int]:
        counts = {status: 0 for status in STAGE_STATUSES}
        for s in self.stages:
            counts[s.status] += 1
        return counts

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pipeline": self.pipeline,
            "passed": self.passed,
            "summary": self.status_counts(),
            "stages": [s.to_dict() for s in self.stages],
        }

    def to_text(self) -> str:
        lines = [f"pipeline: {self.pipeline}"]
        for s in self.stages:
            lines.append(f"[{s.status.upper():8}] {s.name}")
            if s.message:
                lines.append(f"    {s.message}")
            for key, value in s.outputs.items():
                value_lines = value.splitlines() or [""]
                lines.append(f"    {key}: {value_lines[0]}")
                lines.extend(f"    {' ' * len(key)}  {extra}" for extra in value_lines[1:])
        counts = self.status_counts()
        lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
        lines.append("result: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines) + "\n"


@dataclass
class PipelineConfig:
    """流水线配置

    Args:
        name: 流水线或工具子命令名称
        covers_config: 覆盖计算链的 JSON 配置路径
        deadlines: 各阶段默认截止秒数，键 "default" 为缺省值
        deadline_override: 命令行给出的全局截止秒数
        out_dir: 报告输出目录，None 表示不写文件
        golden_dir: 金标准目录，None 表示不比对
        seed: 随机投影路线的种子
        max_restriction_solutions: 标量限制法求根的解数上限
        report_formats: 报告格式
        fields: 数域声明 名称 → {name, min_poly}
        polynomials: 多项式输入 名称 → 表达式
        invariants: 与多项式输入配套的曲面不变量，如 KS2、chi
        image_route: 像次数的计算路线
        tool: 工具子命令的参数
    """
    name: str
    covers_config: Optional[str] = None
    deadlines: Dict[str, Optional[float]] = field(default_factory=lambda: {"default": 300.0})
    deadline_override: Optional[float] = None
    out_dir: Optional[str] = None
    golden_dir: Optional[str] = None
    seed: int = 0
    max_restriction_solutions: int = 64
    report_formats: List[str] = field(default_factory=lambda: ["json", "text", "csv"])
    fields: Dict[str, Dict[str, str]] = field(default_factory=dict)
    polynomials: Dict[str, str] = field(default_factory=dict)
    invariants: Dict[str, int] = field(default_factory=dict)
    image_route: str = "auto"
    tool: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        unknown = [f for f in self.report_formats if f not in REPORT_FORMATS]
        if unknown:
            raise ConfigSchemaError(f"不支持的报告格式: {unknown}，可选 {list(REPORT_FORMATS)}")

    def stage_deadline(self, *keys: str) -> Optional[float]:
        """阶段截止秒数：命令行覆盖 > 第一个出现的配置键 > 默认值"""
        if self.deadline_override is not None:
            return self.deadline_override
        for key in keys:
            if key in self.deadlines:
                return self.deadlines[key]
        return self.deadlines.get("default")

    def polynomial(self, key: str) -> str:
        if key not in self.polynomials:
            raise ConfigSchemaError(f"配置中缺少多项式输入 '{key}'")
        return self.polynomials[key]

    @classmethod
    def from_cfg(cls, cfg: DictConfig) -> "PipelineConfig":
        """从 Hydra 配置构造"""
        data = OmegaConf.to_container(cfg, resolve=True)
        inputs = data.get("inputs") or {}
        report = data.get("report") or {}
        solve = data.get("solve") or {}
        deadlines = dict(data.get("deadlines") or {})
        deadlines.setdefault("default", 300.0)
        return cls(
            name=data.get("command") or "",
            covers_config=data.get("config"),
            deadlines=deadlines,
            deadline_override=data.get("deadline"),
            out_dir=data.get("out_dir"),
            golden_dir=data.get("golden_dir"),
            seed=int(data.get("seed", 0)),
            max_restriction_solutions=int(solve.get("max_restriction_solutions", 64)),
            report_formats=list(report.get("formats", ["json", "text", "csv"])),
            fields=dict(inputs.get("fields") or {}),
            polynomials=dict(inputs.get("polynomials") or {}),
            invariants={k: int(v) for k, v in (inputs.get("invariants") or {}).items()},
            image_route=data.get("image_route", "auto"),
            tool=dict(data.get("tool") or {}),
        )

    def invariant(self, key: str) -> int:
        if key not in self.invariants:
            raise ConfigSchemaError(f"配置中缺少不变量输入 '{key}'")
        return self.invariants[key]
