"""
数据模块
提供理想文件读写、金标准比对与报告保存功能
"""

from .golden import GoldenStore
from .ideal_io import IdealFile, load_ideal_file, save_ideal_file
from .report_manager import ReportManager

__all__ = [
    'GoldenStore',
    'IdealFile',
    'load_ideal_file',
    'save_ideal_file',
    'ReportManager'
]
