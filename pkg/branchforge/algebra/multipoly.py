"""
稀疏多元多项式模块
数域系数上的多元多项式：单项式序、加权次数、求导、代入，以及表达式语法的解析与输出
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..core.errors import (
    FieldMismatchError,
    PolynomialSyntaxError,
    RingMismatchError,
    UnknownVariableError,
)
from .exactfield import FieldElement, NumberField, Scalar, as_element

Exponent = Tuple[int, ...]

MAX_EXPONENT = 2 ** 31 - 1

ORDER_KINDS = ("lex", "grevlex", "block")
ORDER_KEY_CACHE_SIZE = 1 << 16


def _check_exponent(value: int) -> int:
    if value > MAX_EXPONENT:
        raise OverflowError(f"指数 {value} 超过上限 {MAX_EXPONENT}")
    return value


# ═════════════════════════════ 单项式序 ═════════════════════════════

@dataclass(frozen=True)
class MonomialOrder:
    """
    单项式序

    key() 返回平坦整数元组，元组越大单项式越大。
    block(k) 先比较前 k 个变量(块内 grevlex)，再比较其余变量(块内 grevlex)。
    """
    kind: str = "grevlex"
    block: int = 0
    ranking: Optional[Tuple[int, ...]] = None
    weights: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"未知的单项式序: {self.kind}，可选 {ORDER_KINDS}")
        if self.kind == "block" and self.block < 0:
            raise ValueError(f"块序的块大小必须非负: {self.block}")
        if self.weights is not None and any(w <= 0 for w in self.weights):
            raise ValueError(f"权重必须为正整数: {self.weights}")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def grevlex(cls, weights: Optional[Sequence[int]] = None) -> "MonomialOrder":
        return cls("grevlex", weights=tuple(weights) if weights else None)

    @classmethod
    def elimination(cls, k: int, ranking: Optional[Sequence[int]] = None) -> "MonomialOrder":
        return cls("block", block=k, ranking=tuple(ranking) if ranking else None)

    def _grevlex_key(self, exp: Sequence[int], weights: Sequence[int]) -> Tuple[int, ...]:
        degree = sum(w * e for w, e in zip(weights, exp))
        return (degree,) + tuple(-e for e in reversed(exp))

    def key(self, exp: Exponent) -> Tuple[int, ...]:
        return _order_key(self, exp)

    def _compute_key(self, exp: Exponent) -> Tuple[int, ...]:
        if self.ranking is not None:
            perm = [exp[i] for i in self.ranking]
            weights = [self.weights[i] for i in self.ranking] if self.weights else [1] * len(exp)
        else:
            perm = exp
            weights = self.weights or (1,) * len(exp)
        if self.kind == "lex":
            value = tuple(perm)
        elif self.kind == "grevlex":
            value = self._grevlex_key(perm, weights)
        else:
            k = self.block
            value = self._grevlex_key(perm[:k], weights[:k]) + self._grevlex_key(perm[k:], weights[k:])
        return value

    def describe(self) -> str:
        if self.kind == "block":
            return f"block({self.block})"
        return self.kind


@lru_cache(maxsize=ORDER_KEY_CACHE_SIZE)
def _order_key(order: MonomialOrder, exp: Exponent) -> Tuple[int, ...]:
    return order._compute_key(exp)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ═════════════════════════════ 多项式环 ═════════════════════════════

@dataclass(frozen=True)
class Ring:
    """多项式环：系数域、有序变量名、变量权重(默认全1)和默认单项式序"""
    field: NumberField
    variables: Tuple[str, ...]
    weights: Optional[Tuple[int, ...]] = None
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"变量名重复: {self.variables}")
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.variables))
        else:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != len(self.variables):
            raise ValueError(f"权重个数 {len(self.weights)} 与变量个数 {len(self.variables)} 不一致")
        if any(w <= 0 for w in self.weights):
            raise ValueError(f"权重必须为正整数: {self.weights}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def compatible(self, other: "Ring") -> bool:
        """同一系数域、同一变量与权重(单项式序可不同)"""
        return (self is other or (self.field == other.field and self.variables == other.variables
                                  and self.weights == other.weights))

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(f"未知变量: {name}，环变量为 {list(self.variables)}") from None

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.field, self.variables, self.weights, order)

    def with_field(self, field: NumberField) -> "Ring":
        return Ring(field, self.variables, self.weights, self.order)

    def with_variables(self, variables: Sequence[str], weights: Optional[Sequence[int]] = None,
                       order: Optional[MonomialOrder] = None) -> "Ring":
        return Ring(self.field, tuple(variables), tuple(weights) if weights else None, order or self.order)

    def zero(self) -> "Polynomial":
        return Polynomial._make(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, value: Scalar) -> "Polynomial":
        c = as_element(value, self.field)
        if not c:
            return self.zero()
        return Polynomial._make(self, {(0,) * self.nvars: c})

    def gen(self, name: Union[str, int]) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial._make(self, {exp: self.field.one()})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        if len(exp) != self.nvars:
            raise ValueError(f"指数向量长度 {len(exp)} ≠ 变量个数 {self.nvars}")
        c = as_element(coeff, self.field)
        if not c:
            return self.zero()
        return Polynomial._make(self, {tuple(_check_exponent(e) for e in exp): c})

    def parse(self, text: str) -> "Polynomial":
        return parse(text, self)

    def __str__(self) -> str:
        weights = "" if all(w == 1 for w in self.weights) else f" weights={list(self.weights)}"
        return f"{self.field.name}[{', '.join(self.variables)}]{weights} order={self.order.describe()}"


# ═════════════════════════════ 多项式 ═════════════════════════════

class Polynomial:
    """稀疏多元多项式：指数向量 → 非零系数"""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Sequence[int], Scalar]):
        self.ring = ring
        clean: Dict[Exponent, FieldElement] = {}
        for exp, coeff in terms.items():
            exp = tuple(_check_exponent(int(e)) for e in exp)
            if len(exp) != ring.nvars:
                raise ValueError(f"指数向量长度 {len(exp)} ≠ 变量个数 {ring.nvars}")
            c = as_element(coeff, ring.field)
            if c:
                clean[exp] = clean[exp] + c if exp in clean else c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def _make(cls, ring: Ring, terms: Dict[Exponent, FieldElement]) -> "Polynomial":
        obj = object.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    # ───────── 基本属性 ─────────

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> FieldElement:
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def sorted_terms(self, order: Optional[MonomialOrder] = None) -> List[Tuple[Exponent, FieldElement]]:
        """按单项式序降序排列的项"""
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda item: order.key(item[0]), reverse=True)

    def leading_term(self, order: Optional[MonomialOrder] = None) -> Tuple[Exponent, FieldElement]:
        if not self.terms:
            raise ValueError("零多项式没有首项")
        order = order or self.ring.order
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def leading_monomial(self, order: Optional[MonomialOrder] = None) -> Exponent:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: Optional[MonomialOrder] = None) -> FieldElement:
        return self.leading_term(order)[1]

    def monic(self, order: Optional[MonomialOrder] = None) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.leading_coefficient(order).inverse())

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(exp) for exp in self.terms)

    def weighted_degree(self, weights: Optional[Sequence[int]] = None) -> int:
        """各项加权次数的最大值，零多项式为 -1"""
        weights = weights or self.ring.weights
        if not self.terms:
            return -1
        return max(sum(w * e for w, e in zip(weights, exp)) for exp in self.terms)

    def is_homogeneous(self, weights: Optional[Sequence[int]] = None) -> bool:
        weights = weights or self.ring.weights
        degrees = {sum(w * e for w, e in zip(weights, exp)) for exp in self.terms}
        return len(degrees) <= 1

    def degree_in(self, var: Union[str, int]) -> int:
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return -1
        return max(exp[i] for exp in self.terms)

    def variables_used(self) -> List[int]:
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return sorted(used)

    def lowest_degree(self) -> int:
        """各项总次数的最小值(在原点处的重数)"""
        if not self.terms:
            return -1
        return min(sum(exp) for exp in self.terms)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return Polynomial._make(self.ring, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # ───────── 环运算 ─────────

    def _check_ring(self, other: "Polynomial") -> None:
        if not self.ring.compatible(other.ring):
            raise RingMismatchError(f"多项式不属于同一个环: {self.ring} 与 {other.ring}")

    def _as_poly(self, other: Any) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other: Any) -> "Polynomial":
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            if exp in terms:
                s = terms[exp] + c
                if s:
                    terms[exp] = s
                else:
                    del terms[exp]
            else:
                terms[exp] = c
        return Polynomial._make(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Any) -> "Polynomial":
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "Polynomial":
        return (-self) + other

    def scale(self, c: Scalar) -> "Polynomial":
        c = as_element(c, self.ring.field)
        if not c:
            return self.ring.zero()
        return Polynomial._make(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_term(self, exp: Exponent, c: FieldElement) -> "Polynomial":
        """乘以单项 c·x^exp"""
        if not c:
            return self.ring.zero()
        return Polynomial._make(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()})

    def __mul__(self, other: Any) -> "Polynomial":
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction, FieldElement)):
                return self.scale(other)
            return NotImplemented
        self._check_ring(other)
        if len(other.terms) == 1:
            exp, c = next(iter(other.terms.items()))
            return self.mul_term(exp, c)
        terms: Dict[Exponent, FieldElement] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                if exp in terms:
                    terms[exp] = terms[exp] + prod
                else:
                    terms[exp] = prod
        return Polynomial._make(self.ring, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError(f"多项式幂次必须非负: {n}")
        if n and self.terms:
            _check_exponent(max(max(e) for e in self.terms) * n)
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, Polynomial):
            return self.ring.compatible(other.ring) and self.terms == other.terms
        if isinstance(other, (int, Fraction, FieldElement)):
            return self.terms == self.ring.constant(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.variables, frozenset(self.terms.items())))

    # ───────── 微积分与代入 ─────────

    def derivative(self, var: Union[str, int]) -> "Polynomial":
        """形式偏导数"""
        i = var if isinstance(var, int) else self.ring.index(var)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i]:
                new_exp = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                terms[new_exp] = c * exp[i]
        return Polynomial._make(self.ring, terms)

    def evaluate(self, assignment: Mapping[Union[str, int], Union[Scalar, "Polynomial"]]) -> "Polynomial":
        """
        代入求值，未赋值的变量保留

        Args:
            assignment: 变量名(或下标) → 标量或同环多项式。系数域为 ℚ 而值属于数域 K 时，
                结果自动提升到 K 上的同名环；两个不同的非平凡数域混合时报错

        Returns:
            同变量环中的多项式
        """
        indexed: Dict[int, Any] = {}
        target_field = self.ring.field
        for key, value in assignment.items():
            i = key if isinstance(key, int) else self.ring.index(key)
            value_field = None
            if isinstance(value, FieldElement):
                value_field = value.field
            elif isinstance(value, Polynomial):
                value_field = value.ring.field
                if value.ring.variables != self.ring.variables:
                    raise RingMismatchError(f"代入的多项式不属于环 {self.ring}")
            if value_field is not None and value_field != target_field and not value_field.is_rational:
                if target_field.is_rational:
                    target_field = value_field
                else:
                    raise FieldMismatchError(f"数域不一致: {target_field.name} 与 {value_field.name}")
            indexed[i] = value
        source = self if target_field == self.ring.field else extend_field(self, target_field)
        ring = source.ring

        values: Dict[int, "Polynomial"] = {}
        scalar_values: Dict[int, FieldElement] = {}
        for i, value in indexed.items():
            if isinstance(value, Polynomial):
                values[i] = value if value.ring.field == target_field else extend_field(value, target_field)
            else:
                scalar_values[i] = as_element(value, target_field)

        power_cache: Dict[Tuple[int, int], Any] = {}

        def power(i: int, k: int, base: Any) -> Any:
            if (i, k) not in power_cache:
                power_cache[(i, k)] = base ** k
            return power_cache[(i, k)]

        result_terms: Dict[Exponent, FieldElement] = {}
        poly_parts: List[Polynomial] = []
        for exp, c in source.terms.items():
            coeff = c
            for i, v in scalar_values.items():
                if exp[i]:
                    coeff = coeff * power(i, exp[i], v)
            if not coeff:
                continue
            rest = tuple(0 if (i in scalar_values or i in values) else e for i, e in enumerate(exp))
            factors = [power(i, exp[i], v) for i, v in values.items() if exp[i]]
            if factors:
                part = ring.monomial(rest, coeff)
                for f in factors:
                    part = part * f
                poly_parts.append(part)
            else:
                result_terms[rest] = result_terms[rest] + coeff if rest in result_terms else coeff
        result = Polynomial._make(ring, {e: c for e, c in result_terms.items() if c})
        for part in poly_parts:
            result = result + part
        return result

    def eval_point(self, point: Sequence[Scalar]) -> FieldElement:
        """在点处完全求值"""
        if len(point) != self.ring.nvars:
            raise ValueError(f"点的维数 {len(point)} ≠ 变量个数 {self.ring.nvars}")
        field = self.ring.field
        for v in point:
            if isinstance(v, FieldElement) and not v.field.is_rational and v.field != field:
                if field.is_rational:
                    field = v.field
                else:
                    raise FieldMismatchError(f"数域不一致: {field.name} 与 {v.field.name}")
        coords = [as_element(v, field) for v in point]
        powers: Dict[Tuple[int, int], FieldElement] = {}
        total = field.zero()
        for exp, c in self.terms.items():
            value = as_element(c, field)
            for i, e in enumerate(exp):
                if e:
                    key = (i, e)
                    if key not in powers:
                        powers[key] = coords[i] ** e
                    value = value * powers[key]
            total = total + value
        return total

    def coefficients_in(self, var: Union[str, int]) -> Dict[int, "Polynomial"]:
        """按某变量的幂次收集系数多项式"""
        i = var if isinstance(var, int) else self.ring.index(var)
        groups: Dict[int, Dict[Exponent, FieldElement]] = {}
        for exp, c in self.terms.items():
            groups.setdefault(exp[i], {})[exp[:i] + (0,) + exp[i + 1:]] = c
        return {k: Polynomial._make(self.ring, t) for k, t in groups.items()}

    def univariate_coeffs(self, var: Union[str, int]) -> List[FieldElement]:
        """只含单个变量时的系数列表(由低到高)"""
        i = var if isinstance(var, int) else self.ring.index(var)
        if not self.terms:
            return []
        coeffs = [self.ring.field.zero()] * (self.degree_in(i) + 1)
        for exp, c in self.terms.items():
            if any(e for j, e in enumerate(exp) if j != i):
                raise ValueError(f"多项式不是 {self.ring.variables[i]} 的一元多项式: {self}")
            coeffs[exp[i]] = c
        return coeffs

    # ───────── 输出 ─────────

    def format(self, order: Optional[MonomialOrder] = None) -> str:
        return format_poly(self, order)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_poly(self)})"


def from_univariate(ring: Ring, var: Union[str, int], coeffs: Sequence[Scalar]) -> Polynomial:
    """由一元系数列表(由低到高)构造多项式"""
    i = var if isinstance(var, int) else ring.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        c = as_element(c, ring.field)
        if c:
            terms[tuple(k if j == i else 0 for j in range(ring.nvars))] = c
    return Polynomial._make(ring, terms)


# ═════════════════════════════ 运算接口 ═════════════════════════════

def poly_arith(a: Polynomial, b: Union[Polynomial, int], op: str) -> Polynomial:
    """
    多项式运算

    Args:
        a: 左运算数
        b: 右运算数；op="pow" 时为非负整数
        op: "add" | "sub" | "mul" | "pow"
    """
    if op == "pow":
        if not isinstance(b, int):
            raise TypeError(f"幂次必须为整数: {b!r}")
        return a ** b
    if not isinstance(b, Polynomial):
        raise TypeError(f"运算数必须为多项式: {b!r}")
    a._check_ring(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"不支持的运算: {op}")


def derivative(p: Polynomial, var: Union[str, int]) -> Polynomial:
    return p.derivative(var)


def evaluate(p: Polynomial, assignment: Mapping[Union[str, int], Any]) -> Polynomial:
    return p.evaluate(assignment)


def weighted_degree(p: Polynomial) -> int:
    return p.weighted_degree()


def is_homogeneous(p: Polynomial) -> bool:
    return p.is_homogeneous()


def extend_field(p: Polynomial, field: NumberField) -> Polynomial:
    """把 ℚ 系数多项式嵌入数域 K 上的同名环"""
    if p.ring.field == field:
        return p
    if not p.ring.field.is_rational:
        raise FieldMismatchError(f"只能从 ℚ 扩张系数域，当前为 {p.ring.field.name}")
    ring = p.ring.with_field(field)
    return Polynomial._make(ring, {e: field.from_rational(c.coeffs[0]) for e, c in p.terms.items()})


def change_ring(p: Polynomial, ring: Ring, images: Sequence[Polynomial]) -> Polynomial:
    """
    环同态：第 i 个变量映到 images[i] (目标环中的多项式)

    例如 hom<R -> R4 | [0, B, C, X1, X2, 0]>
    """
    if len(images) != p.ring.nvars:
        raise ValueError(f"像的个数 {len(images)} ≠ 源环变量个数 {p.ring.nvars}")
    images = [img if isinstance(img, Polynomial) else ring.constant(img) for img in images]
    for img in images:
        if not img.ring.compatible(ring):
            raise RingMismatchError(f"像不属于目标环 {ring}")
    if p.ring.field != ring.field and not p.ring.field.is_rational:
        raise FieldMismatchError(f"数域不一致: {p.ring.field.name} 与 {ring.field.name}")
    cache: Dict[Tuple[int, int], Polynomial] = {}
    result = ring.zero()
    for exp, c in p.terms.items():
        term = ring.constant(as_element(c, ring.field))
        for i, e in enumerate(exp):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = images[i] ** e
                term = term * cache[(i, e)]
        result = result + term
    return result


def embed(p: Polynomial, ring: Ring) -> Polynomial:
    """按变量名把多项式嵌入更大的环(目标环须包含源环全部变量)"""
    positions = [ring.index(name) for name in p.ring.variables]
    field = ring.field
    if p.ring.field != field and not p.ring.field.is_rational:
        raise FieldMismatchError(f"数域不一致: {p.ring.field.name} 与 {field.name}")
    terms = {}
    for exp, c in p.terms.items():
        new = [0] * ring.nvars
        for i, e in zip(positions, exp):
            new[i] = e
        terms[tuple(new)] = as_element(c, field)
    return Polynomial._make(ring, terms)


def restrict(p: Polynomial, ring: Ring) -> Polynomial:
    """embed 的逆：把不含多余变量的多项式搬回子环"""
    positions = [p.ring.index(name) for name in ring.variables]
    missing = set(range(p.ring.nvars)) - set(positions)
    terms = {}
    for exp, c in p.terms.items():
        if any(exp[i] for i in missing):
            raise ValueError(f"多项式含有子环 {ring.variables} 以外的变量: {p}")
        terms[tuple(exp[i] for i in positions)] = as_element(c, ring.field)
    return Polynomial._make(ring, terms)


def homogenize(p: Polynomial, var: Union[str, int]) -> Polynomial:
    """用权重为 1 的变量 var 把 p 齐次化到其加权次数"""
    i = var if isinstance(var, int) else p.ring.index(var)
    if p.ring.weights[i] != 1:
        raise ValueError(f"齐次化变量 {p.ring.variables[i]} 的权重必须为 1")
    if p.degree_in(i) > 0:
        raise ValueError(f"待齐次化的多项式不应含有 {p.ring.variables[i]}")
    top = p.weighted_degree()
    weights = p.ring.weights
    terms = {}
    for exp, c in p.terms.items():
        gap = top - sum(w * e for w, e in zip(weights, exp))
        terms[exp[:i] + (gap,) + exp[i + 1:]] = c
    return Polynomial._make(p.ring, terms)


def dehomogenize(p: Polynomial, var: Union[str, int]) -> Polynomial:
    return p.evaluate({var: 1})


def exact_divide(a: Polynomial, b: Polynomial) -> Polynomial:
    """精确多元除法，不能整除时报错"""
    a._check_ring(b)
    if not b:
        raise ZeroDivisionError("多项式除以零")
    order = a.ring.order
    lead_exp, lead_c = b.leading_term(order)
    inv = lead_c.inverse()
    quotient: Dict[Exponent, FieldElement] = {}
    rem = a
    while rem:
        exp, c = rem.leading_term(order)
        diff = tuple(x - y for x, y in zip(exp, lead_exp))
        if any(d < 0 for d in diff):
            raise ArithmeticError(f"多项式不能整除: ({a}) / ({b})")
        q = c * inv
        quotient[diff] = q
        rem = rem - b.mul_term(diff, q)
    return Polynomial._make(a.ring, quotient)


def divides(b: Polynomial, a: Polynomial) -> bool:
    """b 是否整除 a"""
    if not b:
        return not a
    try:
        exact_divide(a, b)
    except ArithmeticError:
        return False
    return True


def linear_resultant(f: Polynomial, g: Polynomial, var: Union[str, int]) -> Polynomial:
    """
    g 关于 var 为一次式 ℓ·var + g₀ 时消去 var: ℓ^d · f(−g₀/ℓ)

    结果只保证落在 ⟨f, g⟩ 的消元理想中；ℓ 为常数，或 ℓ 不可约且不整除结果时，
    它生成该消元理想。后一条件由调用者用 `divides` 检查。
    """
    f._check_ring(g)
    i = var if isinstance(var, int) else f.ring.index(var)
    if g.degree_in(i) != 1:
        raise ValueError(f"{f.ring.variables[i]} 在 {g} 中不是一次的")
    parts = g.coefficients_in(i)
    lead = parts[1]
    neg_tail = -parts.get(0, g.ring.zero())
    d = f.degree_in(i)
    result = f.ring.zero()
    for k, a in f.coefficients_in(i).items():
        result = result + a * neg_tail ** k * lead ** (d - k)
    return result


def canonical_form(p: Polynomial) -> Polynomial:
    """
    标量规范代表元：grevlex 首项系数为 1 后乘以正有理数，
    使所有系数的有理分量为互素整数
    """
    if not p.terms:
        return p
    q = p.monic(MonomialOrder.grevlex(p.ring.weights))
    parts = [r for c in q.terms.values() for r in c.coeffs if r]
    denominator = lcm(*(r.denominator for r in parts))
    numerator = gcd(*(r.numerator for r in parts))
    return q.scale(Fraction(denominator, numerator))


def monomials_of_degree(ring: Ring, degree: int) -> List[Polynomial]:
    """加权次数恰为 degree 的全部首一单项式，按环的单项式序降序"""
    exps: List[Exponent] = []

    def extend(prefix: List[int], i: int, remaining: int) -> None:
        if i == ring.nvars:
            if remaining == 0:
                exps.append(tuple(prefix))
            return
        w = ring.weights[i]
        for e in range(remaining // w, -1, -1):
            extend(prefix + [e], i + 1, remaining - w * e)

    if degree >= 0:
        extend([], 0, degree)
    exps.sort(key=ring.order.key, reverse=True)
    one = ring.field.one()
    return [Polynomial._make(ring, {e: one}) for e in exps]


def monomials_up_to(ring: Ring, degree: int) -> List[Exponent]:
    """总次数不超过 degree 的指数向量"""
    exps = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(ring.nvars), d):
            exp = [0] * ring.nvars
            for i in combo:
                exp[i] += 1
            exps.append(tuple(exp))
    return exps


def partial_derivatives(p: Polynomial, order: int) -> List[Polynomial]:
    """p 的全部 order 阶偏导数(按变量多重集枚举)"""
    result = []
    for combo in combinations_with_replacement(range(p.ring.nvars), order):
        q = p
        for i in combo:
            q = q.derivative(i)
        result.append(q)
    return result


# ═════════════════════════════ 表达式解析 ═════════════════════════════

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise PolynomialSyntaxError(f"非法字符 {text[pos]!r}", pos, text)
        number, name, op = match.groups()
        start = match.start(1) if number else match.start(2) if name else match.start(3)
        if number:
            tokens.append(("num", number, start))
        elif name:
            tokens.append(("name", name, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """递归下降解析器，语法见 parse() 的说明"""

    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.pos = 0
        self.field_gen = ring.field.name if not ring.field.is_rational else None

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> Tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, token: Tuple[str, str, int]) -> PolynomialSyntaxError:
        return PolynomialSyntaxError(message, token[2], self.text)

    def parse(self) -> Polynomial:
        result = self.expr()
        token = self.peek()
        if token[0] != "end":
            raise self.error(f"多余的符号 {token[1]!r}", token)
        return result

    def expr(self) -> Polynomial:
        sign = 1
        token = self.peek()
        if token[0] == "op" and token[1] in "+-":
            self.advance()
            sign = -1 if token[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            token = self.peek()
            if token[0] == "op" and token[1] in "+-":
                self.advance()
                rhs = self.term()
                result = result + rhs if token[1] == "+" else result - rhs
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.advance()
            token = self.advance()
            if token[0] != "num":
                raise self.error("'^' 之后需要非负整数指数", token)
            base = base ** _check_exponent(int(token[1]))
        return base

    def base(self) -> Polynomial:
        token = self.advance()
        kind, value, position = token
        if kind == "num":
            numerator = int(value)
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.advance()
                denom_token = self.advance()
                if denom_token[0] != "num":
                    raise self.error("'/' 之后需要正整数分母", denom_token)
                denominator = int(denom_token[1])
                if denominator == 0:
                    raise self.error("分母为零", denom_token)
                return self.ring.constant(Fraction(numerator, denominator))
            return self.ring.constant(numerator)
        if kind == "name":
            if value in self.ring.variables:
                return self.ring.gen(value)
            if value == self.field_gen:
                return self.ring.constant(self.ring.field.gen())
            raise UnknownVariableError(f"未知变量 {value!r} (位置 {position})，环变量为 {list(self.ring.variables)}")
        if kind == "op" and value == "(":
            inner = self.expr()
            closing = self.advance()
            if closing[0] != "op" or closing[1] != ")":
                raise self.error(f"括号未闭合(起始位置 {position})", closing)
            return inner
        if kind == "end":
            raise self.error("表达式意外结束", token)
        raise self.error(f"意外的符号 {value!r}", token)


def parse(text: str, ring: Ring) -> Polynomial:
    """
    解析多项式表达式

    语法:
        expr     := ['+'|'-'] term (('+'|'-') term)*
        term     := factor ('*' factor)*
        factor   := base ('^' nat)?
        base     := rational | varname | '(' expr ')'
        rational := int ('/' nat)?

    环的系数域为数域时，其生成元名称(如 e、r13)可作为常数出现。

    Args:
        text: 表达式字符串，空白无关
        ring: 目标环

    Returns:
        解析得到的多项式
    """
    return _Parser(text, ring).parse()


def parse_many(texts: Iterable[str], ring: Ring) -> List[Polynomial]:
    return [parse(t, ring) for t in texts]


def _format_monomial(exp: Exponent, variables: Sequence[str]) -> str:
    parts = []
    for name, e in zip(variables, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Polynomial, order: Optional[MonomialOrder] = None) -> str:
    """
    紧凑形式输出，项按单项式序降序

    例如 "-s^2*x1*x3+s^2*x2^2+2*s*x1^3-2*s*x3^3+4*x1^2*x3^2-32*x1*x2^2*x3+64*x2^4"。
    非有理系数加括号，如 "(e-1)*x1"。
    """
    if not p.terms:
        return "0"
    pieces = []
    for index, (exp, c) in enumerate(p.sorted_terms(order)):
        monomial = _format_monomial(exp, p.ring.variables)
        if c.is_rational():
            value = c.coeffs[0]
            negative = value < 0
            magnitude = abs(value)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
        else:
            negative = False
            coeff_text = f"({c.format(spaced=False)})"
            body = f"{coeff_text}*{monomial}" if monomial else coeff_text
        if index == 0:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append(("-" if negative else "+") + body)
    return "".join(pieces)


def polynomials_span_key(polys: Sequence[Polynomial]) -> List[Exponent]:
    """多项式列表中出现的全部单项式(降序)，用于构造系数矩阵"""
    if not polys:
        return []
    order = polys[0].ring.order
    exps = set()
    for p in polys:
        exps.update(p.terms)
    return sorted(exps, key=order.key, reverse=True)

