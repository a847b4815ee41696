"""
branchforge 报告管理模块
将运行报告保存为 JSON、纯文本与计时 CSV
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from ..core.data_types import REPORT_FORMATS, RunReport


class ReportManager:
    """报告管理器"""

    def __init__(self, save_dir: str, formats: Optional[List[str]] = None):
        """
        初始化报告管理器

        Args:
            save_dir: 保存目录
            formats: 报告格式，支持 "json", "text", "csv"
        """
        self.save_dir = Path(save_dir)
        self.save_dir.mkdir(parents=True, exist_ok=True)

        formats = list(REPORT_FORMATS) if formats is None else list(formats)
        for fmt in formats:
            if fmt not in REPORT_FORMATS:
                raise ValueError(f"不支持的报告格式: {fmt}，支持的格式: {list(REPORT_FORMATS)}")
        self.formats = formats

        logging.info(f"报告管理器初始化完成，报告格式: {formats}")

    def save_report(self, report: RunReport) -> Dict[str, str]:
        """
        保存运行报告

        Returns:
            格式 → 文件路径
        """
        saved = {}
        for fmt in self.formats:
            if fmt == "json":
                file_path = self.save_dir / "report.json"
                with open(file_path, "w", encoding="utf-8") as f:
                    json.dump(report.to_dict(), f, indent=2, ensure_ascii=False)
                    f.write("\n")
            elif fmt == "text":
                file_path = self.save_dir / "report.txt"
                file_path.write_text(report.to_text(), encoding="utf-8")
            elif fmt == "csv":
                file_path = self.save_dir / "timings.csv"
                self._save_timings(report, file_path)
            else:
                raise ValueError(f"不支持的报告格式: {fmt}")
            saved[fmt] = str(file_path)
            logging.info(f"报告已保存到: {file_path}")
        return saved

    def _save_timings(self, report: RunReport, file_path: Path):
        """每个阶段一行，墙钟时间只出现在这里"""
        rows = [
            {
                "pipeline": report.pipeline,
                "stage": stage.name,
                "status": stage.status,
                "wall_time": round(stage.wall_time, 6),
            }
            for stage in report.stages
        ]
        df = pd.DataFrame(rows, columns=["pipeline", "stage", "status", "wall_time"])
        df.to_csv(file_path, index=False)

    def load_report(self, file_path: Optional[str] = None) -> Dict[str, Any]:
        """读取 report.json"""
        file_path = Path(file_path) if file_path else self.save_dir / "report.json"
        if not file_path.exists():
            raise FileNotFoundError(f"报告文件不存在: {file_path}")
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)

    def load_timings(self, file_path: Optional[str] = None) -> pd.DataFrame:
        file_path = Path(file_path) if file_path else self.save_dir / "timings.csv"
        return pd.read_csv(file_path)
