"""
金标准模块
<golden_dir>/<pipeline>/<artifact>.txt，每个文件一个精确字符串(UTF-8)
多项式按非零标量比较，截面列表按张成空间比较，整数与布尔值精确比较
"""

import logging
from pathlib import Path
from typing import Any, Optional, Sequence, Union

from ..algebra.exactfield import FieldElement
from ..algebra.groebner import PointSet
from ..algebra.multipoly import LEX, Polynomial, canonical_form, format_poly, parse
from ..algebra.schemes import same_span
from ..core.errors import GoldenMismatchError


def format_artifact(value: Any) -> str:
    """产物的精确字符串形式，可经多项式语法重新解析"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Polynomial):
        return format_poly(canonical_form(value), LEX)
    if isinstance(value, FieldElement):
        return value.format(spaced=False)
    if isinstance(value, PointSet):
        return "\n".join(value.format_points())
    if isinstance(value, (list, tuple)):
        if value and all(isinstance(v, FieldElement) for v in value):
            return "(" + ", ".join(v.format(spaced=False) for v in value) + ")"
        return "\n".join(format_artifact(v) for v in value)
    return str(value)


def _parse_lines(text: str, like: Polynomial) -> Sequence[Polynomial]:
    return [parse(line, like.ring) for line in text.splitlines() if line.strip()]


def artifacts_match(value: Any, expected: str) -> bool:
    """按产物类型比较计算值与金标准文本"""
    expected = expected.strip()
    if isinstance(value, bool):
        return expected == format_artifact(value)
    if isinstance(value, int):
        return int(expected) == value
    if isinstance(value, Polynomial):
        golden = parse(expected, value.ring)
        if not value or not golden:
            return not value and not golden
        return canonical_form(golden) == canonical_form(value)
    if isinstance(value, (list, tuple)) and value and all(isinstance(v, Polynomial) for v in value):
        return same_span(list(value), _parse_lines(expected, value[0]))
    if isinstance(value, PointSet):
        return set(value.format_points()) == {line.strip() for line in expected.splitlines() if line.strip()}
    return format_artifact(value).strip() == expected


class GoldenStore:
    """金标准存储"""

    def __init__(self, golden_dir: Union[str, Path]):
        self.golden_dir = Path(golden_dir)
        if not self.golden_dir.is_dir():
            raise FileNotFoundError(f"金标准目录不存在: {self.golden_dir}")
        logging.info(f"金标准目录: {self.golden_dir}")

    def path(self, pipeline: str, artifact: str) -> Path:
        return self.golden_dir / pipeline / f"{artifact}.txt"

    def read(self, pipeline: str, artifact: str) -> Optional[str]:
        file_path = self.path(pipeline, artifact)
        if not file_path.exists():
            return None
        return file_path.read_text(encoding="utf-8")

    def check(self, pipeline: str, artifact: str, value: Any) -> bool:
        """
        比对一个产物

        Returns:
            True 表示已比对且一致，False 表示没有对应的金标准文件

        Raises:
            GoldenMismatchError: 与金标准不一致
        """
        expected = self.read(pipeline, artifact)
        if expected is None:
            logging.debug(f"没有金标准: {pipeline}/{artifact}")
            return False
        try:
            matched = artifacts_match(value, expected)
        except (ValueError, ArithmeticError) as e:
            raise GoldenMismatchError(f"{pipeline}/{artifact}: 金标准无法解析: {e}") from e
        if not matched:
            raise GoldenMismatchError(
                f"{pipeline}/{artifact}: 计算值 {format_artifact(value)!r} 与金标准 {expected.strip()!r} 不一致"
            )
        return True

    def write(self, pipeline: str, artifact: str, value: Any) -> str:
        file_path = self.path(pipeline, artifact)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(format_artifact(value) + "\n", encoding="utf-8")
        logging.info(f"金标准已保存到: {file_path}")
        return str(file_path)
