"""
branchforge核心模块
包含异常层次与运行配置、报告数据类型
"""

from .data_types import PipelineConfig, RunReport, StageResult
from .errors import (
    BranchForgeError,
    CheckFailedError,
    ConfigSchemaError,
    DeadlineExceeded,
    GoldenMismatchError,
)

__all__ = [
    'PipelineConfig',
    'RunReport',
    'StageResult',
    'BranchForgeError',
    'CheckFailedError',
    'ConfigSchemaError',
    'DeadlineExceeded',
    'GoldenMismatchError'
]
