"""
branchforge - 双覆盖不变量的精确计算平台
Exact computer algebra for double covers of surfaces

精确数域与多项式算术、Gröbner 基、射影概形工具，
双覆盖不变量计算链与分类约束，以及可复现的构造流水线。
"""

__version__ = "0.1.0"

from .algebra import (
    QQ, NumberField, FieldElement, Ring, Polynomial, Ideal, Deadline,
    AmbientSpace, Scheme, RationalMap
)
from .core import PipelineConfig, RunReport, StageResult, BranchForgeError
from .data import GoldenStore, ReportManager
from .invariants import run_chain, load_cover_config, check_profile
from .pipelines import PIPELINES, run_pipeline

__all__ = [
    # 精确代数
    'QQ', 'NumberField', 'FieldElement', 'Ring', 'Polynomial', 'Ideal', 'Deadline',

    # 概形
    'AmbientSpace', 'Scheme', 'RationalMap',

    # 配置与报告
    'PipelineConfig', 'RunReport', 'StageResult', 'BranchForgeError',
    'GoldenStore', 'ReportManager',

    # 不变量
    'run_chain', 'load_cover_config', 'check_profile',

    # 流水线
    'PIPELINES', 'run_pipeline'
]
