"""
精确数域运算模块
有理数 ℚ、数域 ℚ[x]/(f) 的元素运算，一元多项式辅助函数，以及稠密精确线性代数

所有值构造后不可变，所有运算均为纯函数，可在任意线程中共享。
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Any, Callable, Dict, List, Sequence, Tuple, Union

import sympy

from ..core.errors import (
    FieldMismatchError,
    InvalidMinimalPolynomialError,
    NonInvertibleError,
)

Rational = Fraction
RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


# ═════════════════════════════ 有理数 ═════════════════════════════

def to_rational(value: RationalLike) -> Fraction:
    """把整数、分数或 "p/q" 字符串转换为规范分数(浮点数不被接受)"""
    if isinstance(value, bool):
        raise TypeError("布尔值不能作为有理数")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, FieldElement) and value.is_rational():
        return value.to_rational()
    raise TypeError(f"无法转换为有理数: {value!r}")


def parse_rational(text: str) -> Fraction:
    """解析 "p" 或 "p/q" 形式的有理数"""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise ValueError(f"非法的有理数字符串: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) else 1
    if denominator == 0:
        raise ZeroDivisionError(f"有理数分母为0: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """有理数的精确字符串形式 "p/q" (整数时省略分母)"""
    return str(Fraction(value))


_RAT_OPS: Dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def rat_arith(a: RationalLike, b: RationalLike, op: str) -> Fraction:
    """
    有理数四则运算

    Args:
        a, b: 运算数
        op: "add" | "sub" | "mul" | "div"

    Returns:
        规范形式(既约、分母为正)的结果
    """
    if op not in _RAT_OPS:
        raise ValueError(f"不支持的运算: {op}")
    a, b = to_rational(a), to_rational(b)
    if op == "div" and b == 0:
        raise ZeroDivisionError(f"有理数除以零: {a} / 0")
    return _RAT_OPS[op](a, b)


# ═════════════════════════════ 一元多项式辅助 ═════════════════════════════
# 系数列表由低次到高次；元素只需支持 + - * / 与真值判断，Fraction 与 FieldElement 均可

def upoly_normalize(a: Sequence[Any]) -> List[Any]:
    """去掉高次零系数"""
    result = list(a)
    while result and not result[-1]:
        result.pop()
    return result


def upoly_degree(a: Sequence[Any]) -> int:
    """次数，零多项式为 -1"""
    return len(upoly_normalize(a)) - 1


def upoly_mul(a: Sequence[Any], b: Sequence[Any]) -> List[Any]:
    if not a or not b:
        return []
    zero = a[0] - a[0]
    result = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            result[i + j] = result[i + j] + ai * bj
    return upoly_normalize(result)


def upoly_sub(a: Sequence[Any], b: Sequence[Any]) -> List[Any]:
    size = max(len(a), len(b))
    out = []
    for i in range(size):
        if i < len(a) and i < len(b):
            out.append(a[i] - b[i])
        elif i < len(a):
            out.append(a[i])
        else:
            out.append(-b[i])
    return upoly_normalize(out)


def upoly_divmod(a: Sequence[Any], b: Sequence[Any]) -> Tuple[List[Any], List[Any]]:
    """带余除法 a = q·b + r，deg r < deg b"""
    b = upoly_normalize(b)
    if not b:
        raise ZeroDivisionError("一元多项式除以零多项式")
    a = upoly_normalize(a)
    if len(a) < len(b):
        return [], a
    zero = b[-1] - b[-1]
    inv_lc = 1 / b[-1]
    rem = list(a)
    quot = [zero] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] * inv_lc
        quot[i] = c
        if c:
            for j, bj in enumerate(b):
                rem[i + j] = rem[i + j] - c * bj
    return upoly_normalize(quot), upoly_normalize(rem[:len(b) - 1])


def upoly_monic(a: Sequence[Any]) -> List[Any]:
    a = upoly_normalize(a)
    if not a:
        return a
    inv_lc = 1 / a[-1]
    return [c * inv_lc for c in a]


def upoly_gcd(a: Sequence[Any], b: Sequence[Any]) -> List[Any]:
    """首一最大公因式(欧几里得算法)"""
    a, b = upoly_normalize(a), upoly_normalize(b)
    while b:
        _, r = upoly_divmod(a, b)
        a, b = b, r
    return upoly_monic(a)


def upoly_xgcd(a: Sequence[Any], b: Sequence[Any]) -> Tuple[List[Any], List[Any], List[Any]]:
    """
    扩展欧几里得算法

    Returns:
        (g, s, t) 满足 s·a + t·b = g，g 为首一最大公因式
    """
    a, b = upoly_normalize(a), upoly_normalize(b)
    if not a and not b:
        return [], [], []
    one = (a or b)[-1] / (a or b)[-1]
    r0, r1 = a, b
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = upoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, upoly_sub(s0, upoly_mul(q, s1))
        t0, t1 = t1, upoly_sub(t0, upoly_mul(q, t1))
    inv_lc = 1 / r0[-1]
    return ([c * inv_lc for c in r0], [c * inv_lc for c in s0], [c * inv_lc for c in t0])


def upoly_derivative(a: Sequence[Any]) -> List[Any]:
    return upoly_normalize([a[i] * i for i in range(1, len(a))])


def upoly_eval(a: Sequence[Any], x: Any) -> Any:
    """Horner 求值"""
    if not a:
        return x - x
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def upoly_squarefree(a: Sequence[Any]) -> List[Any]:
    """无平方部分 a / gcd(a, a')，首一"""
    a = upoly_normalize(a)
    if len(a) <= 1:
        return upoly_monic(a)
    g = upoly_gcd(a, upoly_derivative(a))
    q, _ = upoly_divmod(a, g)
    return upoly_monic(q)


def rational_roots(coeffs: Sequence[RationalLike]) -> List[Fraction]:
    """
    有理根定理求全部有理根

    先取无平方部分，再化为本原整系数模型；候选 ±p/q 中 p 整除常数项、q 整除首项系数。

    Args:
        coeffs: 由低到高的有理系数

    Returns:
        升序排列的互不相同的有理根
    """
    poly = upoly_squarefree([to_rational(c) for c in coeffs])
    if len(poly) <= 1:
        return []

    roots: List[Fraction] = []
    if poly[0] == 0:
        roots.append(Fraction(0))
        while poly and poly[0] == 0:
            poly = poly[1:]
    if len(poly) <= 1:
        return sorted(roots)

    denominator = 1
    for c in poly:
        denominator = lcm(denominator, c.denominator)
    ints = [int(c * denominator) for c in poly]
    content = 0
    for c in ints:
        content = gcd(content, c)
    ints = [c // content for c in ints]

    degree = len(ints) - 1
    if degree == 1:
        return sorted(roots + [Fraction(-ints[0], ints[1])])

    numerators = sympy.divisors(abs(ints[0]))
    denominators = sympy.divisors(abs(ints[-1]))
    logging.debug(f"有理根候选: {len(numerators)} × {len(denominators)} (次数 {degree})")
    for q in denominators:
        for p in numerators:
            if gcd(p, q) != 1:
                continue
            for num in (p, -p):
                # q^n · f(p/q) 的整数求值
                q_power = 1
                acc = ints[-1]
                for a in reversed(ints[:-1]):
                    acc = acc * num + a * q_power * q
                    q_power *= q
                if acc == 0:
                    roots.append(Fraction(num, q))
    return sorted(set(roots))


def cyclotomic_polynomial(n: int) -> List[Fraction]:
    """第 n 个分圆多项式 Φ_n (由低到高)"""
    if n < 1:
        raise ValueError(f"分圆多项式的阶必须为正: {n}")
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = upoly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
    return poly


# ═════════════════════════════ 数域 ═════════════════════════════

@dataclass(frozen=True)
class NumberField:
    """数域 ℚ[x]/(f)，f 为首一极小多项式(不可约性由调用者保证)"""
    name: str
    min_poly: Tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.min_poly) - 1

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @cached_property
    def _reduction_rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """x^k (d ≤ k ≤ 2d-2) 模极小多项式后的系数向量"""
        d = self.degree
        rows = []
        current = [-c for c in self.min_poly[:d]]  # x^d
        for _ in range(max(d - 1, 0)):
            rows.append(tuple(current))
            shifted = [Fraction(0)] + current[:-1]
            top = current[-1]
            current = [shifted[j] - top * self.min_poly[j] for j in range(d)]
        return tuple(rows)

    def element(self, coeffs: Sequence[RationalLike]) -> "FieldElement":
        """由任意长度系数列表(由低到高)构造元素，自动模极小多项式约化"""
        values = [to_rational(c) for c in coeffs]
        d = self.degree
        if len(values) <= d:
            return FieldElement(self, values + [Fraction(0)] * (d - len(values)))
        _, rem = upoly_divmod(values, list(self.min_poly))
        return FieldElement(self, rem + [Fraction(0)] * (d - len(rem)))

    def from_rational(self, value: RationalLike) -> "FieldElement":
        return FieldElement._make(self, (to_rational(value),) + (Fraction(0),) * (self.degree - 1))

    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    def one(self) -> "FieldElement":
        return self.from_rational(1)

    def gen(self) -> "FieldElement":
        """生成元(ℚ 的情形返回 0，因为极小多项式为 x)"""
        return self.element([0, 1])

    def contains(self, other: "NumberField") -> bool:
        """ℚ 可嵌入任何数域；其余情况仅当两域相同"""
        return other == self or other.is_rational

    def __str__(self) -> str:
        if self.is_rational:
            return "QQ"
        return f"{self.name} = {format_upoly(self.min_poly, 'x')}"


QQ = NumberField("QQ", (Fraction(0), Fraction(1)))


def nf_create(min_poly: Sequence[RationalLike], name: str = "r") -> NumberField:
    """
    创建数域

    Args:
        min_poly: 极小多项式系数(由低到高)，必须首一且次数 ≥ 1
        name: 生成元名称，如 "e"、"r13"

    Returns:
        数域句柄；次数为1时即为 ℚ
    """
    coeffs = upoly_normalize([to_rational(c) for c in min_poly])
    if len(coeffs) < 2:
        raise InvalidMinimalPolynomialError(f"极小多项式次数必须 ≥ 1: {list(map(str, coeffs))}")
    if coeffs[-1] != 1:
        raise InvalidMinimalPolynomialError(
            f"极小多项式必须首一，首项系数为 {coeffs[-1]}: {format_upoly(coeffs, 'x')}")
    if len(coeffs) == 2:
        return QQ
    field = NumberField(name, tuple(coeffs))
    logging.debug(f"创建数域 {field}")
    return field


def cyclotomic_field(n: int, name: str = "e") -> NumberField:
    """分圆域 ℚ(ζ_n)，如 CyclotomicField(6) 对应 x² - x + 1"""
    return nf_create(cyclotomic_polynomial(n), name)


def format_upoly(coeffs: Sequence[Fraction], var: str, spaced: bool = True) -> str:
    """一元有理多项式的字符串形式(降幂)"""
    parts: List[Tuple[bool, str]] = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        magnitude = abs(c)
        if k == 0:
            body = format_rational(magnitude)
        else:
            monomial = var if k == 1 else f"{var}^{k}"
            body = monomial if magnitude == 1 else f"{format_rational(magnitude)}*{monomial}"
        parts.append((c < 0, body))
    if not parts:
        return "0"
    joiner_plus, joiner_minus = (" + ", " - ") if spaced else ("+", "-")
    negative, body = parts[0]
    text = ("-" if negative else "") + body
    for negative, body in parts[1:]:
        text += (joiner_minus if negative else joiner_plus) + body
    return text


class FieldElement:
    """数域元素：相对 1, x, …, x^(d-1) 的有理系数向量"""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: Sequence[RationalLike]):
        if len(coeffs) != field.degree:
            raise ValueError(f"系数长度 {len(coeffs)} 与数域次数 {field.degree} 不一致")
        self.field = field
        self.coeffs = tuple(to_rational(c) for c in coeffs)

    @classmethod
    def _make(cls, field: NumberField, coeffs: Tuple[Fraction, ...]) -> "FieldElement":
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        return obj

    # ───────── 类型转换 ─────────

    def _coerce(self, other: Any) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other
            if other.field.is_rational:
                return self.field.from_rational(other.coeffs[0])
            if self.field.is_rational:
                raise FieldMismatchError(f"ℚ 中的元素不能与 {other.field.name} 中的元素直接运算")
            raise FieldMismatchError(f"数域不一致: {self.field.name} 与 {other.field.name}")
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.from_rational(other)
        return NotImplemented

    def _lift(self, other: Any) -> Tuple["FieldElement", "FieldElement"]:
        """两元素统一到较大的数域(ℚ 嵌入扩域)"""
        if isinstance(other, FieldElement) and self.field.is_rational and not other.field.is_rational:
            return other.field.from_rational(self.coeffs[0]), other
        coerced = self._coerce(other)
        return self, coerced

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"元素不是有理数: {self}")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    # ───────── 运算 ─────────

    def __add__(self, other: Any) -> "FieldElement":
        a, b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement._make(a.field, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElement":
        a, b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement._make(a.field, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other: Any) -> "FieldElement":
        return (-self) + other

    def __neg__(self) -> "FieldElement":
        return FieldElement._make(self.field, tuple(-x for x in self.coeffs))

    def __mul__(self, other: Any) -> "FieldElement":
        a, b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        field = a.field
        d = field.degree
        if d == 1:
            return FieldElement._make(field, (a.coeffs[0] * b.coeffs[0],))
        product = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    product[i + j] += x * y
        rows = field._reduction_rows
        result = product[:d]
        for k in range(d, 2 * d - 1):
            c = product[k]
            if c:
                row = rows[k - d]
                for j in range(d):
                    result[j] += c * row[j]
        return FieldElement._make(field, tuple(result))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        """乘法逆元(对极小多项式做扩展欧几里得)"""
        if self.is_zero():
            raise ZeroDivisionError(f"{self.field.name} 中除以零")
        d = self.field.degree
        if d == 1:
            return FieldElement._make(self.field, (1 / self.coeffs[0],))
        g, s, _ = upoly_xgcd(list(self.coeffs), list(self.field.min_poly))
        if len(g) > 1:
            raise NonInvertibleError(g)
        s = s + [Fraction(0)] * (d - len(s))
        return FieldElement._make(self.field, tuple(s[:d]))

    def __truediv__(self, other: Any) -> "FieldElement":
        a, b = self._lift(other)
        if b is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other: Any) -> "FieldElement":
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            return NotImplemented
        return coerced * self.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        n = abs(exponent)
        result = self.field.one()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.coeffs == other.coeffs
            # ℚ 中元素与扩域中的有理元素视为相等
            if self.field.is_rational or other.field.is_rational:
                return self.is_rational() and other.is_rational() and self.coeffs[0] == other.coeffs[0]
            return False
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.name, self.coeffs))

    # ───────── 输出 ─────────

    def format(self, spaced: bool = True) -> str:
        """生成元多项式形式，如 "64/55*r^3 - 272/55*r^2 - 96/55*r - 46/55" """
        if self.field.is_rational:
            return format_rational(self.coeffs[0])
        return format_upoly(self.coeffs, self.field.name, spaced=spaced)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"FieldElement({self.field.name}: {self.format()})"


Scalar = Union[int, Fraction, FieldElement]


def as_element(value: Scalar, field: NumberField) -> FieldElement:
    """把标量转换为给定数域中的元素"""
    if isinstance(value, FieldElement):
        if value.field == field:
            return value
        if value.field.is_rational:
            return field.from_rational(value.coeffs[0])
        if field.is_rational and value.is_rational():
            return field.from_rational(value.coeffs[0])
        raise FieldMismatchError(f"数域不一致: {value.field.name} 与 {field.name}")
    return field.from_rational(value)


_NF_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def nf_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """
    数域元素四则运算

    Args:
        a, b: 同一数域中的元素
        op: "add" | "sub" | "mul" | "div"
    """
    if op not in _NF_OPS:
        raise ValueError(f"不支持的运算: {op}")
    if a.field != b.field:
        raise FieldMismatchError(f"数域不一致: {a.field.name} 与 {b.field.name}")
    return _NF_OPS[op](a, b)


# ═════════════════════════════ 稠密矩阵 ═════════════════════════════

@dataclass(frozen=True)
class Matrix:
    """行优先存储的稠密矩阵，所有元素属于同一数域"""
    rows: int
    cols: int
    entries: Tuple[FieldElement, ...]
    field: NumberField = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"矩阵元素个数 {len(self.entries)} ≠ {self.rows}×{self.cols}")
        for entry in self.entries:
            if entry.field != self.field:
                raise FieldMismatchError(f"矩阵元素不属于 {self.field.name}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], field: NumberField = QQ,
                  cols: int = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"矩阵行长度不一致: {len(r)} ≠ {cols}")
        entries = tuple(as_element(v, field) for r in rows for v in r)
        return cls(len(rows), cols, entries, field)

    def entry(self, i: int, j: int) -> FieldElement:
        return self.entries[i * self.cols + j]

    def row_list(self) -> List[List[FieldElement]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def apply(self, vector: Sequence[Scalar]) -> List[FieldElement]:
        """矩阵乘向量"""
        if len(vector) != self.cols:
            raise ValueError(f"向量长度 {len(vector)} ≠ 列数 {self.cols}")
        vec = [as_element(v, self.field) for v in vector]
        out = []
        for row in self.row_list():
            acc = self.field.zero()
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out


def mat_rref(m: Matrix) -> Tuple[List[List[FieldElement]], List[int]]:
    """
    简化行阶梯形

    前向消元用无分数(Bareiss)格式控制系数膨胀，回代时再归一化主元。

    Returns:
        (非零行组成的简化行阶梯形, 主元列下标)
    """
    a = m.row_list()
    zero, one = m.field.zero(), m.field.one()
    pivots: List[int] = []
    r = 0
    previous = one
    for c in range(m.cols):
        if r >= m.rows:
            break
        pivot_row = next((i for i in range(r, m.rows) if a[i][c]), None)
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        p = a[r][c]
        for i in range(r + 1, m.rows):
            factor = a[i][c]
            if factor:
                for j in range(c + 1, m.cols):
                    a[i][j] = (p * a[i][j] - factor * a[r][j]) / previous
            else:
                for j in range(c + 1, m.cols):
                    a[i][j] = (p * a[i][j]) / previous
            a[i][c] = zero
        previous = p
        pivots.append(c)
        r += 1

    rows = a[:r]
    for k in range(r - 1, -1, -1):
        c = pivots[k]
        inv = rows[k][c].inverse()
        rows[k] = [v * inv for v in rows[k]]
        for i in range(k):
            factor = rows[i][c]
            if factor:
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[k])]
    return rows, pivots


def mat_rank(m: Matrix) -> int:
    return len(mat_rref(m)[1])


def mat_kernel(m: Matrix) -> List[Tuple[FieldElement, ...]]:
    """
    右零空间的精确基

    Returns:
        基向量列表；当且仅当核平凡时为空
    """
    rows, pivots = mat_rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero, one = m.field.zero(), m.field.one()
    basis = []
    for f in free:
        vector = [zero] * m.cols
        vector[f] = one
        for row, c in zip(rows, pivots):
            if row[f]:
                vector[c] = -row[f]
        basis.append(tuple(vector))
    return basis
