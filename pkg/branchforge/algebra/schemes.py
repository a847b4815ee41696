"""
概形运算模块
理想之上的几何层：奇异子概形、切空间、交/并/差、胖点线性系统、点的重数、
平面曲线无平方部分、仿射平移，以及有理映射像的次数
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import (
    AmbientMismatchError,
    DeadlineExceeded,
    ImageDegreeMismatchError,
    ImageDimensionError,
    NotOnSchemeError,
    PositiveDimensionalError,
    SingularPointError,
)
from .exactfield import (
    QQ,
    FieldElement,
    Matrix,
    NumberField,
    Scalar,
    as_element,
    mat_kernel,
    mat_rref,
    upoly_divmod,
    upoly_gcd,
    upoly_mul,
    upoly_normalize,
    upoly_sub,
)
from .groebner import (
    Deadline,
    Ideal,
    PointSet,
    dimension,
    eliminate,
    ideal_intersection,
    projective_dim_degree,
    saturate,
    solve_zero_dim,
    zero_dim_degree,
)
from .multipoly import (
    Polynomial,
    Ring,
    embed,
    exact_divide,
    extend_field,
    monomials_of_degree,
    restrict,
)

AMBIENT_KINDS = ("affine", "projective")


# ═════════════════════════════ 数据类型 ═════════════════════════════

@dataclass(frozen=True)
class AmbientSpace:
    """外围空间：仿射或(加权)射影空间"""
    kind: str
    variables: Tuple[str, ...]
    weights: Optional[Tuple[int, ...]] = None
    field: NumberField = QQ

    def __post_init__(self):
        if self.kind not in AMBIENT_KINDS:
            raise ValueError(f"未知的外围空间类型: {self.kind}，可选 {AMBIENT_KINDS}")
        object.__setattr__(self, "variables", tuple(self.variables))
        if self.weights is None:
            object.__setattr__(self, "weights", (1,) * len(self.variables))
        if self.kind == "affine" and any(w != 1 for w in self.weights):
            raise ValueError("仿射空间不带权重")

    @property
    def ring(self) -> Ring:
        return Ring(self.field, self.variables, self.weights)

    @property
    def is_projective(self) -> bool:
        return self.kind == "projective"

    @property
    def is_weighted(self) -> bool:
        return any(w != 1 for w in self.weights)

    def with_field(self, field: NumberField) -> "AmbientSpace":
        return AmbientSpace(self.kind, self.variables, self.weights, field)

    def same_space(self, other: "AmbientSpace") -> bool:
        """忽略系数域的比较(ℚ 上的概形可以与扩域上的概形运算)"""
        return (self.kind, self.variables, self.weights) == (other.kind, other.variables, other.weights)

    def describe(self) -> str:
        if self.kind == "affine":
            return f"A^{len(self.variables)}({', '.join(self.variables)})"
        if self.is_weighted:
            return f"P({', '.join(map(str, self.weights))})[{', '.join(self.variables)}]"
        return f"P^{len(self.variables) - 1}[{', '.join(self.variables)}]"


@dataclass(frozen=True)
class Scheme:
    """外围空间中由理想定义的概形；射影情形生成元须(加权)齐次"""
    ambient: AmbientSpace
    ideal: Ideal

    def __post_init__(self):
        if not self.ideal.ring.compatible(self.ambient.ring):
            raise AmbientMismatchError(f"理想的环 {self.ideal.ring} 与外围空间 {self.ambient.describe()} 不一致")
        if self.ambient.is_projective:
            for g in self.ideal.generators:
                if not g.is_homogeneous(self.ambient.weights):
                    raise ValueError(f"射影概形的生成元必须齐次: {g}")

    @classmethod
    def from_polys(cls, ambient: AmbientSpace, polys: Sequence[Polynomial]) -> "Scheme":
        return cls(ambient, Ideal(ambient.ring, tuple(polys)))

    @property
    def equations(self) -> Tuple[Polynomial, ...]:
        return self.ideal.generators

    @property
    def ring(self) -> Ring:
        return self.ambient.ring

    def with_field(self, field: NumberField) -> "Scheme":
        if field == self.ambient.field:
            return self
        return Scheme(self.ambient.with_field(field), self.ideal.with_field(field))

    def contains_point(self, point: Sequence[Scalar]) -> bool:
        return all(not g.eval_point(point) for g in self.equations)


@dataclass(frozen=True)
class RationalMap:
    """有理映射 source ⇢ P^m，由 m+1 个截面给出"""
    source: Scheme
    sections: Tuple[Polynomial, ...]
    target_variables: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        sections = tuple(self.sections)
        object.__setattr__(self, "sections", sections)
        if not sections or all(not s for s in sections):
            raise ValueError("截面不能全为零")
        for s in sections:
            if not s.ring.compatible(self.source.ring):
                raise AmbientMismatchError(f"截面 {s} 不属于源概形的环")
        if self.source.ambient.is_projective:
            degrees = {s.weighted_degree() for s in sections if s}
            if len(degrees) > 1 or not all(s.is_homogeneous() for s in sections):
                raise ValueError(f"射影源上的截面必须是同次齐次式，实际次数 {sorted(degrees)}")
        if not self.target_variables:
            object.__setattr__(self, "target_variables", tuple(f"y{i}" for i in range(len(sections))))
        if len(self.target_variables) != len(sections):
            raise ValueError("目标变量个数与截面个数不一致")

    @property
    def target_ring(self) -> Ring:
        return Ring(self.source.ambient.field, self.target_variables)


def _common_field(*fields: NumberField) -> NumberField:
    chosen = QQ
    for f in fields:
        if not f.is_rational:
            if chosen.is_rational:
                chosen = f
            elif f != chosen:
                raise AmbientMismatchError(f"数域不一致: {chosen.name} 与 {f.name}")
    return chosen


def _point_field(point: Sequence[Scalar]) -> NumberField:
    return _common_field(*(c.field for c in point if isinstance(c, FieldElement)))


def _lift(p: Polynomial, field: NumberField) -> Polynomial:
    return p if p.ring.field == field else extend_field(p, field)


# ═════════════════════════════ 奇异性与切空间 ═════════════════════════════

def _hypersurface_equation(scheme: Scheme) -> Polynomial:
    if len(scheme.equations) != 1:
        raise ValueError(f"需要超曲面(单个方程)，实际有 {len(scheme.equations)} 个方程")
    return scheme.equations[0]


def singular_subscheme(scheme: Scheme) -> Scheme:
    """超曲面 F 的奇异子概形 ⟨F, ∂F/∂x_i⟩"""
    f = _hypersurface_equation(scheme)
    gens = [f] + [f.derivative(i) for i in range(f.ring.nvars)]
    return Scheme(scheme.ambient, Ideal(scheme.ring, tuple(gens)))


def gradient_at(f: Polynomial, point: Sequence[Scalar]) -> List[FieldElement]:
    return [f.derivative(i).eval_point(point) for i in range(f.ring.nvars)]


def tangent_space(scheme: Scheme, point: Sequence[Scalar]) -> Polynomial:
    """
    超曲面在光滑点处的切空间

    射影情形为 Σ ∂F/∂x_i(pt)·x_i，仿射情形为 Σ ∂F/∂x_i(pt)·(x_i - p_i)。

    Raises:
        NotOnSchemeError: 点不在超曲面上
        SingularPointError: 梯度为零
    """
    f = _hypersurface_equation(scheme)
    if f.eval_point(point):
        raise NotOnSchemeError(f"点 {[str(c) for c in point]} 不在超曲面上")
    grad = gradient_at(f, point)
    if not any(grad):
        raise SingularPointError(f"点 {[str(c) for c in point]} 是奇点，切空间无定义")
    field = _common_field(f.ring.field, *(g.field for g in grad))
    ring = f.ring.with_field(field)
    result = ring.zero()
    for i, g in enumerate(grad):
        term = ring.gen(i)
        if not scheme.ambient.is_projective:
            term = term - ring.constant(as_element(point[i], field))
        result = result + term.scale(as_element(g, field))
    return result


# ═════════════════════════════ 概形运算 ═════════════════════════════

def _align(a: Scheme, b: Scheme) -> Tuple[Scheme, Scheme]:
    if not a.ambient.same_space(b.ambient):
        raise AmbientMismatchError(f"外围空间不一致: {a.ambient.describe()} 与 {b.ambient.describe()}")
    field = _common_field(a.ambient.field, b.ambient.field)
    return a.with_field(field), b.with_field(field)


def meet(a: Scheme, b: Scheme) -> Scheme:
    a, b = _align(a, b)
    return Scheme(a.ambient, a.ideal + b.ideal)


def union(a: Scheme, b: Scheme, deadline: Optional[Deadline] = None) -> Scheme:
    a, b = _align(a, b)
    return Scheme(a.ambient, ideal_intersection(a.ideal, b.ideal, deadline))


def difference(a: Scheme, b: Scheme, deadline: Optional[Deadline] = None) -> Scheme:
    """A \\ B 的闭包：I(A) 对 I(B) 饱和"""
    a, b = _align(a, b)
    return Scheme(a.ambient, saturate(a.ideal, b.ideal, deadline))


def scheme_ops(a: Scheme, b: Scheme, op: str, deadline: Optional[Deadline] = None) -> Scheme:
    """
    概形运算

    Args:
        a, b: 同一外围空间中的概形
        op: "meet" | "union" | "difference"
    """
    if op == "meet":
        return meet(a, b)
    if op == "union":
        return union(a, b, deadline)
    if op == "difference":
        return difference(a, b, deadline)
    raise ValueError(f"不支持的概形运算: {op}")


# ═════════════════════════════ 点、长度与空集判定 ═════════════════════════════

def affine_patch(scheme: Scheme, index: int) -> Scheme:
    """射影概形在 x_index = 1 的标准仿射片"""
    if not scheme.ambient.is_projective:
        raise ValueError("只有射影概形才有仿射片")
    if scheme.ambient.weights[index] != 1:
        raise ValueError(f"加权变量 {scheme.ambient.variables[index]} 不能取为仿射片坐标")
    ring = scheme.ring
    kept = tuple(v for i, v in enumerate(ring.variables) if i != index)
    weights = tuple(w for i, w in enumerate(ring.weights) if i != index)
    ambient = AmbientSpace("affine", kept, None, scheme.ambient.field)
    if any(w != 1 for w in weights):
        logging.debug("加权射影空间的仿射片按单位权重处理")
    gens = [restrict(g.evaluate({index: 1}), Ring(ring.field, kept, None, ring.order))
            for g in scheme.equations]
    return Scheme(ambient, Ideal(ambient.ring, tuple(gens)))


def _patch_partition(scheme: Scheme, index: int) -> Scheme:
    """x_0 = … = x_{index-1} = 0, x_index = 1 的仿射片"""
    ring = scheme.ring
    assignment = {i: 0 for i in range(index)}
    assignment[index] = 1
    kept = ring.variables[index + 1:]
    sub = Ring(ring.field, kept)
    gens = [g.evaluate(assignment) for g in scheme.equations]
    gens = [restrict(g, sub) for g in gens if g]
    ambient = AmbientSpace("affine", kept, None, scheme.ambient.field)
    return Scheme(ambient, Ideal(sub, tuple(gens)))


def projective_points(scheme: Scheme, field: Optional[NumberField] = None,
                      max_restriction_solutions: int = 64,
                      deadline: Optional[Deadline] = None) -> PointSet:
    """
    射影零维概形在数域上的点，按标准片划分枚举(第一个非零坐标归一化为 1)

    Args:
        scheme: 射影概形(单位权重)
        field: 求点的数域，默认为概形自身的系数域
    """
    if not scheme.ambient.is_projective or scheme.ambient.is_weighted:
        raise ValueError("projective_points 只支持单位权重的射影概形")
    target = field or scheme.ambient.field
    lifted = scheme.with_field(_common_field(scheme.ambient.field, target))
    ring = lifted.ring
    points = []
    for index in range(ring.nvars):
        patch = _patch_partition(lifted, index)
        if not patch.ambient.variables:
            if all(not g for g in patch.equations):
                points.append(tuple(ring.field.one() if i == index else ring.field.zero()
                                    for i in range(ring.nvars)))
            continue
        if dimension(patch.ideal, deadline) > 0:
            raise PositiveDimensionalError(f"第 {index} 个仿射片不是零维")
        found = solve_zero_dim(patch.ideal, max_restriction_solutions=max_restriction_solutions,
                               deadline=deadline)
        for pt in found:
            full = [ring.field.zero()] * index + [ring.field.one()] + list(pt)
            points.append(tuple(full))
    for pt in points:
        if not scheme.with_field(ring.field).contains_point(pt):
            raise ArithmeticError(f"射影点 {pt} 不在概形上")
    return PointSet(ring.variables, ring.field, tuple(points))


def scheme_length(scheme: Scheme, deadline: Optional[Deadline] = None) -> int:
    """零维概形的长度(仿射：阶梯计数；射影：常数 Hilbert 多项式)"""
    if not scheme.ambient.is_projective:
        return zero_dim_degree(scheme.ideal, deadline)
    dim, degree = projective_dim_degree(scheme.ideal, deadline)
    if dim > 0:
        raise PositiveDimensionalError(f"射影概形维数为 {dim}，不是零维")
    return degree


def is_empty(scheme: Scheme, deadline: Optional[Deadline] = None) -> bool:
    """空集判定(射影情形看 Hilbert 多项式是否为零)"""
    if scheme.ambient.is_projective:
        return projective_dim_degree(scheme.ideal, deadline)[0] < 0
    return scheme.ideal.is_unit(deadline) if scheme.equations else False


def scheme_dimension(scheme: Scheme, deadline: Optional[Deadline] = None) -> int:
    dim = dimension(scheme.ideal, deadline)
    if scheme.ambient.is_projective:
        return max(dim - 1, -1) if dim > 0 else -1
    return dim


# ═════════════════════════════ 线性系统 ═════════════════════════════

def _coefficient_rows(polys: Sequence[Polynomial], field: NumberField) -> Tuple[List[List[FieldElement]], list]:
    exps = sorted({e for p in polys for e in p.terms}, reverse=True)
    zero = field.zero()
    rows = [[as_element(p.terms[e], field) if e in p.terms else zero for e in exps] for p in polys]
    return rows, exps


def descend_to_rationals(p: Polynomial) -> Polynomial:
    """系数全为有理数时把多项式搬回 ℚ 上的同名环"""
    if p.ring.field.is_rational or not all(c.is_rational() for c in p.terms.values()):
        return p
    ring = p.ring.with_field(QQ)
    return Polynomial(ring, {e: c.coeffs[0] for e, c in p.terms.items()})


def linear_system(ambient: AmbientSpace, degree: int,
                  conditions: Sequence[Tuple[Sequence[Scalar], int]] = ()) -> List[Polynomial]:
    """
    过胖点的 degree 次形式组成的线性系统

    Args:
        ambient: 外围空间
        degree: (加权)次数
        conditions: (点, 重数) 列表；重数 m 要求直到 m-1 阶的全部偏导数在该点为零

    Returns:
        以简化行阶梯形给出的基；系数全为有理数时位于 ℚ 上
    """
    field = _common_field(ambient.field, *(_point_field(pt) for pt, _ in conditions))
    ring = Ring(field, ambient.variables, ambient.weights)
    monomials = monomials_of_degree(ring, degree)
    if not monomials:
        return []
    rows: List[List[FieldElement]] = []
    for point, multiplicity in conditions:
        if multiplicity < 1:
            raise ValueError(f"重数必须 ≥ 1: {multiplicity}")
        coords = [as_element(c, field) for c in point]
        if len(coords) != ring.nvars:
            raise ValueError(f"点的维数 {len(coords)} ≠ 变量个数 {ring.nvars}")
        for k in range(multiplicity):
            for combo in combinations_with_replacement(range(ring.nvars), k):
                row = []
                for m in monomials:
                    d = m
                    for i in combo:
                        d = d.derivative(i)
                    row.append(d.eval_point(coords) if d else field.zero())
                rows.append(row)
    if rows:
        kernel = mat_kernel(Matrix.from_rows(rows, field, cols=len(monomials)))
    else:
        one, zero = field.one(), field.zero()
        kernel = [tuple(one if j == i else zero for j in range(len(monomials))) for i in range(len(monomials))]
    if not kernel:
        return []
    reduced, _ = mat_rref(Matrix.from_rows(kernel, field, cols=len(monomials)))
    sections = []
    for vector in reduced:
        p = ring.zero()
        for c, m in zip(vector, monomials):
            if c:
                p = p + m.scale(c)
        sections.append(descend_to_rationals(p))
    logging.debug(f"{degree} 次线性系统：{len(monomials)} 个单项式，{len(rows)} 个条件，维数 {len(sections)}")
    return sections


def same_span(first: Sequence[Polynomial], second: Sequence[Polynomial]) -> bool:
    """两组多项式张成相同的线性空间(比较简化行阶梯形)"""
    polys = list(first) + list(second)
    if not polys:
        return True
    field = _common_field(*(p.ring.field for p in polys))
    rows, exps = _coefficient_rows(polys, field)
    if not exps:
        return True
    a, _ = mat_rref(Matrix.from_rows(rows[:len(first)], field, cols=len(exps))) if first else ([], [])
    b, _ = mat_rref(Matrix.from_rows(rows[len(first):], field, cols=len(exps))) if second else ([], [])
    return a == b


# ═════════════════════════════ 重数与平移 ═════════════════════════════

def translate(f: Polynomial, point: Sequence[Scalar]) -> Polynomial:
    """f(x + p)：把点 p 平移到原点"""
    field = _common_field(f.ring.field, _point_field(point))
    g = _lift(f, field)
    ring = g.ring
    shift = {i: ring.gen(i) + ring.constant(as_element(c, field)) for i, c in enumerate(point) if c}
    return g.evaluate(shift) if shift else g


def multiplicity_at(f: Polynomial, point: Sequence[Scalar]) -> int:
    """f 在点处的重数：平移到原点后的最低次数"""
    if not f:
        raise ValueError("零多项式没有重数")
    return translate(f, point).lowest_degree()


def affine_translate(scheme: Scheme, point: Sequence[Scalar]) -> Scheme:
    """把仿射概形平移使 point 落在原点"""
    if scheme.ambient.is_projective:
        raise ValueError("affine_translate 只作用于仿射概形")
    field = _common_field(scheme.ambient.field, _point_field(point))
    gens = tuple(translate(g, point) for g in scheme.equations)
    return Scheme(scheme.ambient.with_field(field), Ideal(scheme.ring.with_field(field), gens))


# ═════════════════════════════ 无平方部分 ═════════════════════════════

Nested = List[List[FieldElement]]


def _to_nested(f: Polynomial, x: int, y: int) -> Nested:
    """按 y 的幂次展开，系数为 x 的一元多项式"""
    zero = f.ring.field.zero()
    degree = f.degree_in(y)
    nested: Nested = [[] for _ in range(degree + 1)]
    for exp, c in f.terms.items():
        coeff = nested[exp[y]]
        while len(coeff) <= exp[x]:
            coeff.append(zero)
        coeff[exp[x]] = c
    return [upoly_normalize(c) for c in nested]


def _from_nested(nested: Nested, ring: Ring, x: int, y: int) -> Polynomial:
    terms = {}
    for j, coeff in enumerate(nested):
        for i, c in enumerate(coeff):
            if c:
                exp = [0] * ring.nvars
                exp[x], exp[y] = i, j
                terms[tuple(exp)] = c
    return Polynomial._make(ring, terms)


def _trim(nested: Nested) -> Nested:
    nested = [upoly_normalize(c) for c in nested]
    while nested and not nested[-1]:
        nested.pop()
    return nested


def _content(nested: Nested) -> List[FieldElement]:
    result: List[FieldElement] = []
    for c in nested:
        if c:
            result = c if not result else upoly_gcd(result, c)
    return upoly_gcd(result, []) if result else result


def _primitive(nested: Nested) -> Nested:
    content = _content(nested)
    return [upoly_divmod(c, content)[0] if c else [] for c in nested]


def _prem(a: Nested, b: Nested) -> Nested:
    """关于 y 的伪余式"""
    a = _trim(a)
    lc_b = b[-1]
    while len(a) >= len(b):
        lc_a = a[-1]
        shift = len(a) - len(b)
        scaled = [upoly_mul(lc_b, c) for c in a]
        for j, c in enumerate(b):
            scaled[j + shift] = upoly_sub(scaled[j + shift], upoly_mul(lc_a, c))
        a = _trim(scaled)
    return a


def _bivariate_gcd(a: Nested, b: Nested) -> Nested:
    """本原伪余式序列求 K[x][y] 中的最大公因式"""
    content = upoly_gcd(_content(a), _content(b))
    pa, pb = _primitive(_trim(a)), _primitive(_trim(b))
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb)
        pa, pb = pb, (_primitive(r) if r else [])
    if len(pa) <= 1:
        return [content]
    return [upoly_mul(content, c) for c in pa]


def polynomial_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """至多两个有效变量的多项式的首一最大公因式"""
    ring = f.ring
    used = sorted(set(f.variables_used()) | set(g.variables_used()))
    if len(used) > 2:
        raise ValueError(f"最大公因式只支持至多两个变量，实际为 {[ring.variables[i] for i in used]}")
    if not f:
        return g.monic() if g else g
    if not g:
        return f.monic()
    if not used:
        return ring.one()
    if len(used) == 1:
        x = used[0]
        h = upoly_gcd(f.univariate_coeffs(x), g.univariate_coeffs(x))
        terms = {tuple(k if j == x else 0 for j in range(ring.nvars)): c for k, c in enumerate(h) if c}
        return Polynomial._make(ring, terms).monic()
    x, y = used
    nested = _bivariate_gcd(_to_nested(f, x, y), _to_nested(g, x, y))
    return _from_nested(nested, ring, x, y).monic()


def squarefree_part(f: Polynomial) -> Polynomial:
    """
    平面曲线的约化方程：f / gcd(f, ∂f/∂x, ∂f/∂y)

    Args:
        f: 至多两个有效变量的多项式

    Returns:
        ⟨f⟩ 的根理想的生成元
    """
    if not f:
        return f
    used = f.variables_used()
    if len(used) > 2:
        raise ValueError("squarefree_part 只支持平面曲线(至多两个有效变量)")
    g = f
    for i in used:
        g = polynomial_gcd(g, f.derivative(i))
    if g.is_constant():
        return f
    return exact_divide(f, g)


# ═════════════════════════════ 像的次数 ═════════════════════════════

@dataclass(frozen=True)
class ImageDegree:
    """像次数计算结果"""
    degree: int
    dimension: int
    route: str
    elimination_degree: Optional[int] = None
    slice_degree: Optional[int] = None


def _source_dimension(scheme: Scheme, deadline: Optional[Deadline]) -> int:
    dim = dimension(scheme.ideal, deadline)
    return dim - 1 if scheme.ambient.is_projective else dim


def _image_cone(source: Scheme, sections: Sequence[Polynomial], target_vars: Sequence[str],
                deadline: Optional[Deadline]) -> Ideal:
    """图像理想 ⟨I, y_i - t·s_i⟩ 消去 t 与源变量，得到像的锥"""
    src_ring = source.ring
    tag = "_t"
    while tag in src_ring.variables or tag in target_vars:
        tag += "_"
    big = Ring(src_ring.field, (tag,) + src_ring.variables + tuple(target_vars))
    t = big.gen(0)
    gens = [embed(g, big) for g in source.equations]
    for name, s in zip(target_vars, sections):
        gens.append(big.gen(name) - t * embed(s, big))
    return eliminate(Ideal(big, tuple(gens)), (tag,) + src_ring.variables, deadline)


def _elimination_route(m: RationalMap, deadline: Optional[Deadline]) -> Tuple[int, int]:
    cone = _image_cone(m.source, m.sections, m.target_variables, deadline)
    return projective_dim_degree(cone, deadline)


def _slice_route(m: RationalMap, image_dim: int, seed: int,
                 deadline: Optional[Deadline]) -> Tuple[int, int]:
    """随机整数线性投影到 P^(dim+1)，像的次数等于投影后超曲面的次数"""
    rng = np.random.default_rng(seed)
    field = m.source.ambient.field
    size = image_dim + 2
    while True:
        matrix = rng.integers(-9, 10, size=(size, len(m.sections)))
        if np.linalg.matrix_rank(matrix) == size:
            break
    projected = []
    for row in matrix.tolist():
        s = m.source.ring.zero()
        for c, section in zip(row, m.sections):
            if c:
                s = s + section.scale(as_element(int(c), field))
        projected.append(s)
    names = tuple(f"_u{i}" for i in range(size))
    cone = _image_cone(m.source, projected, names, deadline)
    return projective_dim_degree(cone, deadline)


def compute_image_degree(m: RationalMap, route: str = "auto",
                         elimination_deadline: Optional[float] = None,
                         slice_deadline: Optional[float] = None,
                         seed: int = 0) -> ImageDegree:
    """
    有理映射像闭包的次数

    Args:
        m: 有理映射
        route: "elimination" 只用消元路线；"slice" 只用随机投影路线；
            "auto" 消元超时后改用随机投影；"both" 两条路线都算并要求一致
        elimination_deadline: 消元路线的截止秒数
        slice_deadline: 随机投影路线的截止秒数
        seed: 随机投影的种子

    Raises:
        ImageDimensionError: 像的维数低于源的维数
        ImageDegreeMismatchError: 两条路线都完成但结果不同
    """
    if route not in ("auto", "elimination", "slice", "both"):
        raise ValueError(f"未知的计算路线: {route}")
    source_dim = _source_dimension(m.source, None)
    elim: Optional[Tuple[int, int]] = None
    if route in ("auto", "elimination", "both"):
        try:
            elim = _elimination_route(m, Deadline(elimination_deadline, "像次数消元路线"))
            logging.info(f"消元路线：像维数 {elim[0]}，次数 {elim[1]}")
        except DeadlineExceeded:
            if route == "elimination":
                raise
            logging.warning(f"消元路线超过 {elimination_deadline} 秒，改用随机投影路线")
    if elim is not None and elim[0] < source_dim:
        raise ImageDimensionError(f"像的维数 {elim[0]} 低于源的维数 {source_dim}")
    sliced: Optional[Tuple[int, int]] = None
    if route == "slice" or route == "both" or elim is None:
        sliced = _slice_route(m, source_dim, seed, Deadline(slice_deadline, "像次数随机投影路线"))
        logging.info(f"随机投影路线：像维数 {sliced[0]}，次数 {sliced[1]}")
        if sliced[0] < source_dim:
            raise ImageDimensionError(f"像的维数 {sliced[0]} 低于源的维数 {source_dim}")
    if elim is not None and sliced is not None and elim[1] != sliced[1]:
        raise ImageDegreeMismatchError(f"两条路线的像次数不一致: 消元 {elim[1]}，随机投影 {sliced[1]}")
    if elim is not None:
        return ImageDegree(elim[1], elim[0], "elimination" if sliced is None else "both",
                           elim[1], sliced[1] if sliced else None)
    return ImageDegree(sliced[1], sliced[0], "slice", None, sliced[1])


def image_degree(m: RationalMap, **kwargs) -> int:
    return compute_image_degree(m, **kwargs).degree

