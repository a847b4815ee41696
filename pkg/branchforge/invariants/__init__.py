"""
不变量模块
双覆盖不变量计算链与分类约束
"""

from .classify import check_profile, profile_from_chain, theorem_table
from .covers import CoverConfig, CoverResult, SingularityTree, load_cover_config, run_chain

__all__ = [
    'check_profile',
    'profile_from_chain',
    'theorem_table',
    'CoverConfig',
    'CoverResult',
    'SingularityTree',
    'load_cover_config',
    'run_chain'
]
