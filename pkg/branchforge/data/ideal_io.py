"""
理想文件读写模块
*.ideal 文件：头部 "key: value" 行，"---" 分隔，之后每行一个多项式

示例:
    field: r13 = r13^4 + r13^3 + 1/4*r13^2 + 3/32
    variables: s, x1, x2, x3
    ambient: projective
    ---
    -s^2*x1*x3 + s^2*x2^2 + 2*s*x1^3 - 2*s*x3^3 \\
        + 4*x1^2*x3^2 - 32*x1*x2^2*x3 + 64*x2^4
    --- sections
    s*x1 - 2*x1^2
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..algebra.exactfield import QQ, FieldElement, NumberField, format_upoly, nf_create, parse_rational
from ..algebra.groebner import Ideal
from ..algebra.multipoly import GREVLEX, LEX, Polynomial, Ring, format_poly, parse
from ..algebra.schemes import AmbientSpace, Scheme
from ..core.errors import ConfigSchemaError, PolynomialSyntaxError

HEADER_KEYS = ("field", "variables", "weights", "order", "ambient")
_ORDERS = {"grevlex": GREVLEX, "lex": LEX}


@dataclass
class IdealFile:
    """理想文件的内容"""
    ambient: AmbientSpace
    polynomials: List[Polynomial]
    sections: List[Polynomial] = field(default_factory=list)
    order: str = "grevlex"
    source: str = "<string>"

    @property
    def ring(self) -> Ring:
        return self.ambient.ring.with_order(_ORDERS[self.order])

    @property
    def number_field(self) -> NumberField:
        return self.ambient.field

    @property
    def ideal(self) -> Ideal:
        return Ideal(self.ring, tuple(self.polynomials))

    @property
    def scheme(self) -> Scheme:
        return Scheme(self.ambient, Ideal(self.ambient.ring, tuple(self.polynomials)))


def parse_field(text: str) -> NumberField:
    """"QQ" 或 "名称 = 首一极小多项式" """
    text = text.strip()
    if text in ("QQ", "Q", "Rationals"):
        return QQ
    if "=" not in text:
        raise ConfigSchemaError(f"数域声明应为 'QQ' 或 '名称 = 极小多项式': {text!r}")
    name, poly_text = (part.strip() for part in text.split("=", 1))
    if not name.isidentifier():
        raise ConfigSchemaError(f"非法的数域生成元名称: {name!r}")
    min_poly = parse(poly_text, Ring(QQ, (name,)))
    return nf_create([c.to_rational() for c in min_poly.univariate_coeffs(0)], name=name)


def format_field(field: NumberField) -> str:
    if field.is_rational:
        return "QQ"
    return f"{field.name} = {format_upoly(field.min_poly, field.name)}"


def _split_names(text: str) -> List[str]:
    return [part for part in text.replace(",", " ").split() if part]


def _logical_lines(lines: List[Tuple[int, str]]) -> List[Tuple[int, str]]:
    """去掉注释并合并以反斜杠结尾的续行"""
    merged: List[Tuple[int, str]] = []
    pending: Optional[Tuple[int, str]] = None
    for lineno, raw in lines:
        line = raw.split("#", 1)[0].rstrip()
        if pending is not None:
            start, text = pending
            line = text + " " + line.strip()
            lineno = start
            pending = None
        if line.endswith("\\"):
            pending = (lineno, line[:-1])
            continue
        if line.strip():
            merged.append((lineno, line.strip()))
    if pending is not None and pending[1].strip():
        merged.append((pending[0], pending[1].strip()))
    return merged


def parse_ideal_text(text: str, source: str = "<string>") -> IdealFile:
    """解析 *.ideal 文本"""
    header: Dict[str, str] = {}
    blocks: Dict[str, List[Tuple[int, str]]] = {"header": [], "polynomials": [], "sections": []}
    current = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped.startswith("---"):
            label = stripped[3:].strip().lower()
            if current == "header" and not label:
                current = "polynomials"
            elif label == "sections":
                current = "sections"
            else:
                raise ConfigSchemaError(f"{source}:{lineno}: 无法识别的分隔行 {stripped!r}")
            continue
        blocks[current].append((lineno, raw))

    for lineno, line in _logical_lines(blocks["header"]):
        if ":" not in line:
            raise ConfigSchemaError(f"{source}:{lineno}: 头部行应为 'key: value': {line!r}")
        key, value = (part.strip() for part in line.split(":", 1))
        if key not in HEADER_KEYS:
            raise ConfigSchemaError(f"{source}:{lineno}: 未知的头部键 {key!r}，可选 {list(HEADER_KEYS)}")
        header[key] = value

    if "variables" not in header:
        raise ConfigSchemaError(f"{source}: 头部缺少 'variables'")
    variables = _split_names(header["variables"])
    weights = None
    if "weights" in header:
        try:
            weights = tuple(int(w) for w in _split_names(header["weights"]))
        except ValueError as e:
            raise ConfigSchemaError(f"{source}: 权重必须是整数: {header['weights']!r}") from e
        if len(weights) != len(variables):
            raise ConfigSchemaError(f"{source}: 权重个数 {len(weights)} ≠ 变量个数 {len(variables)}")
    order = header.get("order", "grevlex")
    if order not in _ORDERS:
        raise ConfigSchemaError(f"{source}: 未知的单项式序 {order!r}，可选 {list(_ORDERS)}")
    field_ = parse_field(header.get("field", "QQ"))
    ambient = AmbientSpace(header.get("ambient", "affine"), tuple(variables), weights, field_)
    ring = ambient.ring.with_order(_ORDERS[order])

    def parse_block(name: str) -> List[Polynomial]:
        result = []
        for lineno, line in _logical_lines(blocks[name]):
            try:
                result.append(parse(line, ring))
            except PolynomialSyntaxError as e:
                raise PolynomialSyntaxError(f"{source}:{lineno}: {e}", e.position, line) from e
        return result

    polynomials = parse_block("polynomials")
    sections = parse_block("sections")
    logging.debug(f"理想文件 {source}: {len(polynomials)} 个多项式，{len(sections)} 个截面")
    return IdealFile(ambient, polynomials, sections, order, source)


def load_ideal_file(path: Union[str, Path]) -> IdealFile:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"理想文件不存在: {path}")
    return parse_ideal_text(path.read_text(encoding="utf-8"), source=str(path))


def format_ideal_file(data: IdealFile) -> str:
    ambient = data.ambient
    lines = [
        f"field: {format_field(ambient.field)}",
        f"variables: {', '.join(ambient.variables)}",
    ]
    if ambient.is_weighted:
        lines.append(f"weights: {' '.join(map(str, ambient.weights))}")
    lines.append(f"order: {data.order}")
    lines.append(f"ambient: {ambient.kind}")
    lines.append("---")
    lines.extend(format_poly(p) for p in data.polynomials)
    if data.sections:
        lines.append("--- sections")
        lines.extend(format_poly(p) for p in data.sections)
    return "\n".join(lines) + "\n"


def save_ideal_file(data: IdealFile, path: Union[str, Path]) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_ideal_file(data), encoding="utf-8")
    logging.info(f"理想文件已保存到: {path}")
    return str(path)


def parse_element(text: Union[str, int], field: NumberField) -> FieldElement:
    """数域元素的字符串形式：有理数或生成元多项式，如 "-1/2" 或 "e - 1" """
    text = str(text).strip()
    if field.is_rational:
        return field.from_rational(parse_rational(text))
    p = parse(text, Ring(QQ, (field.name,)))
    return field.element([c.to_rational() for c in p.univariate_coeffs(0)])


def parse_point(coords, field: NumberField) -> Tuple[FieldElement, ...]:
    """点坐标：字符串列表或逗号分隔的字符串"""
    if isinstance(coords, str):
        coords = [c for c in coords.strip().strip("()[]").split(",") if c.strip()]
    return tuple(parse_element(c, field) for c in coords)
