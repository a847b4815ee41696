"""
branchforge 命令行模块
流水线与工具子命令的统一入口：Hydra 配置 → 运行 → 报告

    branchforge kummer --out reports --golden golden
    branchforge solve tool.input=examples.ideal tool.ext="r = r^2 - 2"
    python main.py command=bidegree deadline=600
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from hydra import compose, initialize_config_dir
from omegaconf import DictConfig

from .algebra.groebner import (
    Deadline,
    eliminate,
    groebner_basis,
    projective_dim_degree,
    solve_zero_dim,
    zero_dim_degree,
)
from .algebra.multipoly import format_poly
from .algebra.schemes import (
    RationalMap,
    compute_image_degree,
    linear_system,
    multiplicity_at,
    projective_points,
    scheme_dimension,
    singular_subscheme,
    tangent_space,
)
from .core.data_types import PipelineConfig
from .core.errors import BranchForgeError, ConfigSchemaError
from .data.golden import GoldenStore
from .data.ideal_io import IdealFile, format_ideal_file, load_ideal_file, parse_field, parse_point
from .data.report_manager import ReportManager
from .invariants.classify import check_profile, classify_summary, profile_from_chain
from .invariants.covers import load_cover_config, run_chain
from .pipelines import PIPELINES, run_pipeline

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def setup_logging(level: str = "INFO"):
    """设置日志配置"""
    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )


# ═════════════════════════════ 工具子命令 ═════════════════════════════

def _tool_arg(config: PipelineConfig, key: str, default=None, required: bool = True):
    value = config.tool.get(key, default)
    if value is None and required:
        raise ConfigSchemaError(f"{config.name} 需要参数 tool.{key}")
    return value


def _input_file(config: PipelineConfig) -> IdealFile:
    return load_ideal_file(_tool_arg(config, "input"))


def _deadline(config: PipelineConfig) -> Deadline:
    return Deadline(config.stage_deadline(config.name.replace("-", "_")), label=config.name)


def _names(value) -> List[str]:
    if isinstance(value, str):
        return [v for v in value.replace(",", " ").split() if v]
    return [str(v) for v in value]


def tool_gb(config: PipelineConfig) -> str:
    data = _input_file(config)
    basis = groebner_basis(data.ideal, deadline=_deadline(config))
    return format_ideal_file(IdealFile(data.ambient, list(basis), order=data.order, source=data.source))


def tool_eliminate(config: PipelineConfig) -> str:
    data = _input_file(config)
    names = _names(_tool_arg(config, "variables"))
    result = eliminate(data.ideal, names, _deadline(config))
    return "\n".join(format_poly(g) for g in result.generators) + "\n"


def tool_dim(config: PipelineConfig) -> str:
    data = _input_file(config)
    return f"{scheme_dimension(data.scheme, _deadline(config))}\n"


def tool_degree(config: PipelineConfig) -> str:
    data = _input_file(config)
    deadline = _deadline(config)
    if data.ambient.is_projective:
        dim, degree = projective_dim_degree(data.scheme.ideal, deadline)
        return f"dimension: {dim}\ndegree: {degree}\n"
    return f"{zero_dim_degree(data.ideal, deadline)}\n"


def tool_solve(config: PipelineConfig) -> str:
    data = _input_file(config)
    ext = config.tool.get("ext")
    field = parse_field(ext) if ext else None
    deadline = _deadline(config)
    if data.ambient.is_projective:
        points = projective_points(data.scheme, field, config.max_restriction_solutions, deadline)
    else:
        points = solve_zero_dim(data.ideal, field, config.max_restriction_solutions, deadline)
    lines = [f"# {len(points)} points over {points.field.name}"] + points.format_points()
    return "\n".join(lines) + "\n"


def tool_singular(config: PipelineConfig) -> str:
    data = _input_file(config)
    sing = singular_subscheme(data.scheme)
    return format_ideal_file(IdealFile(sing.ambient, list(sing.equations), source=data.source))


def tool_tangent(config: PipelineConfig) -> str:
    data = _input_file(config)
    point = parse_point(_tool_arg(config, "point"), data.number_field)
    return format_poly(tangent_space(data.scheme, point)) + "\n"


def tool_linsys(config: PipelineConfig) -> str:
    data = _input_file(config)
    degree = int(_tool_arg(config, "degree"))
    conditions = []
    for item in config.tool.get("conditions") or []:
        point = parse_point(item["point"], data.number_field)
        conditions.append((point, int(item.get("multiplicity", 1))))
    sections = linear_system(data.ambient, degree, conditions)
    lines = [f"# dimension {len(sections)}"] + [format_poly(p) for p in sections]
    return "\n".join(lines) + "\n"


def tool_mult(config: PipelineConfig) -> str:
    data = _input_file(config)
    if not data.polynomials:
        raise ConfigSchemaError(f"{data.source}: 没有多项式")
    point = parse_point(_tool_arg(config, "point"), data.number_field)
    return f"{multiplicity_at(data.polynomials[0], point)}\n"


def tool_image_degree(config: PipelineConfig) -> str:
    data = _input_file(config)
    if not data.sections:
        raise ConfigSchemaError(f"{data.source}: image-degree 需要 '--- sections' 块")
    result = compute_image_degree(
        RationalMap(data.scheme, tuple(data.sections)),
        route=config.image_route,
        elimination_deadline=config.stage_deadline("image_degree_elimination", "bidegree_elimination"),
        slice_deadline=config.stage_deadline("image_degree_slice", "bidegree_slice"),
        seed=config.seed,
    )
    return f"degree: {result.degree}\ndimension: {result.dimension}\nroute: {result.route}\n"


def tool_classify(config: PipelineConfig) -> str:
    path = config.tool.get("input") or config.covers_config
    if not path:
        raise ConfigSchemaError("classify 需要 tool.input 或 config 指向覆盖计算链 JSON")
    cover = load_cover_config(path)
    result = run_chain(cover)
    profile = profile_from_chain(cover, result)
    summary = classify_summary(check_profile(profile), profile)
    summary["chain"] = result.to_dict()
    return json.dumps(summary, indent=2, ensure_ascii=False) + "\n"


TOOLS: Dict[str, Callable[[PipelineConfig], str]] = {
    "gb": tool_gb,
    "eliminate": tool_eliminate,
    "dim": tool_dim,
    "degree": tool_degree,
    "solve": tool_solve,
    "singular": tool_singular,
    "tangent": tool_tangent,
    "linsys": tool_linsys,
    "mult": tool_mult,
    "image-degree": tool_image_degree,
    "classify": tool_classify,
}


# ═════════════════════════════ 运行 ═════════════════════════════

def run(cfg: DictConfig) -> int:
    """
    执行配置中的命令

    Returns:
        退出码：全部阶段通过为 0，否则为 1
    """
    config = PipelineConfig.from_cfg(cfg)
    if config.name in PIPELINES:
        golden = GoldenStore(config.golden_dir) if config.golden_dir else None
        report = run_pipeline(config, golden)
        if config.out_dir:
            ReportManager(config.out_dir, config.report_formats).save_report(report)
        sys.stdout.write(report.to_text())
        return report.exit_code
    if config.name in TOOLS:
        text = TOOLS[config.name](config)
        if config.out_dir:
            out = Path(config.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            file_path = out / f"{config.name}.txt"
            file_path.write_text(text, encoding="utf-8")
            logging.info(f"结果已保存到: {file_path}")
        sys.stdout.write(text)
        return 0
    raise ConfigSchemaError(f"未知的命令: {config.name!r}，可选 {list(PIPELINES) + list(TOOLS)}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchforge", description="双覆盖不变量的精确计算与复现流水线")
    parser.add_argument("command", choices=list(PIPELINES) + list(TOOLS), help="流水线或工具子命令")
    parser.add_argument("--config", help="覆盖计算链 JSON 路径")
    parser.add_argument("--deadline", type=float, help="每个阶段的截止秒数")
    parser.add_argument("--out", help="报告输出目录")
    parser.add_argument("--golden", help="金标准目录")
    parser.add_argument("overrides", nargs="*", help="Hydra 覆盖项 key=value")
    return parser


def compose_config(argv: Optional[List[str]] = None) -> DictConfig:
    """把命令行参数翻译成 Hydra 覆盖项并组合配置"""
    args = build_parser().parse_args(argv)
    overrides = [f"command={args.command}"]
    if args.config:
        overrides.append(f"config={args.config}")
    if args.deadline is not None:
        overrides.append(f"deadline={args.deadline}")
    if args.out:
        overrides.append(f"out_dir={args.out}")
    if args.golden:
        overrides.append(f"golden_dir={args.golden}")
    overrides.extend(args.overrides)
    with initialize_config_dir(version_base=None, config_dir=str(CONFIG_DIR)):
        return compose(config_name="branchforge", overrides=overrides)


def main(argv: Optional[List[str]] = None) -> int:
    """控制台脚本入口"""
    cfg = compose_config(argv)
    setup_logging(cfg.get("log_level", "INFO"))
    try:
        return run(cfg)
    except KeyboardInterrupt:
        logging.info("用户中断程序")
        return 130
    except (BranchForgeError, FileNotFoundError) as e:
        logging.error(f"运行失败: {e}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
