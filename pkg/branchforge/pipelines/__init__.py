"""
流水线模块
五个可复现的计算与不变量计算链
"""

import logging
from typing import Callable, Dict, Optional

from ..core.data_types import PipelineConfig, RunReport
from ..data.golden import GoldenStore
from .bidegree import BIDEGREE, run_bidegree
from .context import PipelineContext, require
from .invariants import INVARIANTS, run_invariants
from .kummer import KUMMER, NODES8, run_kummer, run_nodes8
from .quadpoint import CONFIRM, QUADPOINT, run_confirm, run_quadpoint

PIPELINES: Dict[str, Callable[[PipelineContext], None]] = {
    KUMMER: run_kummer,
    NODES8: run_nodes8,
    QUADPOINT: run_quadpoint,
    CONFIRM: run_confirm,
    BIDEGREE: run_bidegree,
    INVARIANTS: run_invariants,
}


def run_pipeline(config: PipelineConfig, golden: Optional[GoldenStore] = None) -> RunReport:
    """运行一个流水线(含其前置流水线)并返回报告"""
    if config.name not in PIPELINES:
        raise ValueError(f"未知的流水线: {config.name}，可选 {list(PIPELINES)}")
    ctx = PipelineContext(config, golden)
    ctx.once(config.name, PIPELINES[config.name])
    counts = ctx.report.status_counts()
    logging.info(f"流水线 {config.name} 完成: {counts}")
    return ctx.report


__all__ = [
    'PIPELINES',
    'PipelineContext',
    'run_pipeline',
    'require',
]
