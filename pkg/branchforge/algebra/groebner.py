"""
Gröbner 基模块
Buchberger 算法(Gebauer–Möller 判据 + 正规选择策略)、约化 Gröbner 基缓存、消元理想、
维数与零维次数、商理想与饱和、Hilbert 级数分子，以及零维方程组求解
"""

import heapq
import logging
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import sympy

from ..core.errors import (
    DeadlineExceeded,
    ExtensionMismatchError,
    FieldMismatchError,
    IncompleteSolutionError,
    PositiveDimensionalError,
    RingMismatchError,
)
from .exactfield import (
    QQ,
    FieldElement,
    Matrix,
    NumberField,
    as_element,
    mat_kernel,
    nf_create,
    rational_roots,
    upoly_divmod,
    upoly_eval,
    upoly_gcd,
    upoly_mul,
    upoly_normalize,
    upoly_squarefree,
    upoly_sub,
)
from .multipoly import (
    GREVLEX,
    Exponent,
    MonomialOrder,
    Polynomial,
    Ring,
    embed,
    exact_divide,
    extend_field,
    restrict,
)


# ═════════════════════════════ 截止时间 ═════════════════════════════

class Deadline:
    """协作式截止时间：长计算在 S 对之间调用 check()"""

    def __init__(self, seconds: Optional[float] = None, label: str = ""):
        self.seconds = seconds
        self.label = label
        self.expires = None if seconds is None else time.monotonic() + seconds

    def remaining(self) -> Optional[float]:
        if self.expires is None:
            return None
        return max(0.0, self.expires - time.monotonic())

    def expired(self) -> bool:
        return self.expires is not None and time.monotonic() > self.expires

    def check(self) -> None:
        if self.expired():
            raise DeadlineExceeded(f"{self.label or '计算'} 超过截止时间 {self.seconds} 秒")


NO_DEADLINE = Deadline()


# ═════════════════════════════ 理想与点集 ═════════════════════════════

@dataclass(frozen=True)
class Ideal:
    """多项式理想：环与非零生成元"""
    ring: Ring
    generators: Tuple[Polynomial, ...]

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if not g.ring.compatible(self.ring):
                raise RingMismatchError(f"生成元 {g} 不属于环 {self.ring}")
            if g:
                gens.append(g)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def from_strings(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, tuple(ring.parse(t) for t in texts))

    def groebner(self, order: Optional[MonomialOrder] = None,
                 deadline: Optional[Deadline] = None) -> Tuple[Polynomial, ...]:
        return groebner_basis(self, order, deadline)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self, deadline: Optional[Deadline] = None) -> bool:
        gb = groebner_basis(self, deadline=deadline)
        return len(gb) == 1 and gb[0].is_constant()

    def contains(self, f: Polynomial, deadline: Optional[Deadline] = None) -> bool:
        return not normal_form(f, groebner_basis(self, deadline=deadline))

    def same_as(self, other: "Ideal", deadline: Optional[Deadline] = None) -> bool:
        return groebner_basis(self, deadline=deadline) == groebner_basis(other, deadline=deadline)

    def __add__(self, other: "Ideal") -> "Ideal":
        if not self.ring.compatible(other.ring):
            raise RingMismatchError(f"理想不属于同一个环: {self.ring} 与 {other.ring}")
        return Ideal(self.ring, self.generators + other.generators)

    def with_field(self, field: NumberField) -> "Ideal":
        ring = self.ring.with_field(field)
        return Ideal(ring, tuple(extend_field(g, field) for g in self.generators))

    def __str__(self) -> str:
        return "⟨" + ", ".join(map(str, self.generators)) + "⟩"


@dataclass(frozen=True)
class PointSet:
    """零维理想的点集，坐标按环变量顺序"""
    variables: Tuple[str, ...]
    field: NumberField
    points: Tuple[Tuple[FieldElement, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def format_points(self) -> List[str]:
        return ["(" + ", ".join(c.format(spaced=False) for c in pt) + ")" for pt in self.points]


# ═════════════════════════════ 约化 ═════════════════════════════

class _Lead:
    """基元素的首项数据：首单项式、首系数之逆、其余项"""
    __slots__ = ("poly", "lm", "inv", "tail")

    def __init__(self, poly: Polynomial, order: MonomialOrder):
        self.poly = poly
        self.lm, lc = poly.leading_term(order)
        self.inv = lc.inverse()
        self.tail = [(e, c) for e, c in poly.terms.items() if e != self.lm]


def _divides(a: Exponent, b: Exponent) -> bool:
    """x^a 整除 x^b"""
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


def _neg_key(order: MonomialOrder, exp: Exponent) -> Tuple[int, ...]:
    return tuple(-k for k in order.key(exp))


def _reduce_terms(terms: Dict[Exponent, FieldElement], leads: Sequence[_Lead],
                  order: MonomialOrder) -> Dict[Exponent, FieldElement]:
    """对项字典做完全约化，返回余式的项"""
    terms = dict(terms)
    heap = [(_neg_key(order, e), e) for e in terms]
    heapq.heapify(heap)
    remainder: Dict[Exponent, FieldElement] = {}
    while heap:
        _, exp = heapq.heappop(heap)
        c = terms.pop(exp, None)
        if c is None:
            continue
        divisor = None
        for lead in leads:
            if _divides(lead.lm, exp):
                divisor = lead
                break
        if divisor is None:
            remainder[exp] = c
            continue
        q = c * divisor.inv
        shift = tuple(a - b for a, b in zip(exp, divisor.lm))
        for e2, c2 in divisor.tail:
            e3 = tuple(a + b for a, b in zip(e2, shift))
            v = terms.get(e3)
            if v is None:
                terms[e3] = -(q * c2)
                heapq.heappush(heap, (_neg_key(order, e3), e3))
            else:
                v = v - q * c2
                if v:
                    terms[e3] = v
                else:
                    del terms[e3]
    return remainder


def normal_form(f: Polynomial, basis: Sequence[Polynomial],
                order: Optional[MonomialOrder] = None) -> Polynomial:
    """
    多元除法余式

    Args:
        f: 被除多项式
        basis: 除式(不必是 Gröbner 基)
        order: 单项式序，默认 grevlex

    Returns:
        没有任何项能被 basis 首项整除的余式
    """
    order = order or GREVLEX
    for g in basis:
        if not g.ring.compatible(f.ring):
            raise RingMismatchError(f"多项式不属于同一个环: {f.ring} 与 {g.ring}")
    leads = [_Lead(g, order) for g in basis if g]
    return Polynomial._make(f.ring, _reduce_terms(f.terms, leads, order))


# ═════════════════════════════ Buchberger ═════════════════════════════

def _spoly_terms(a: _Lead, b: _Lead) -> Dict[Exponent, FieldElement]:
    """首一基元素的 S 多项式(首项相消，只需尾项)"""
    lcm = _lcm(a.lm, b.lm)
    shift_a = tuple(x - y for x, y in zip(lcm, a.lm))
    shift_b = tuple(x - y for x, y in zip(lcm, b.lm))
    terms: Dict[Exponent, FieldElement] = {}
    for e, c in a.tail:
        terms[tuple(x + y for x, y in zip(e, shift_a))] = c
    for e, c in b.tail:
        e2 = tuple(x + y for x, y in zip(e, shift_b))
        v = terms.get(e2)
        if v is None:
            terms[e2] = -c
        else:
            v = v - c
            if v:
                terms[e2] = v
            else:
                del terms[e2]
    return terms


def _buchberger(polys: Sequence[Polynomial], order: MonomialOrder,
                deadline: Deadline) -> List[Polynomial]:
    ring = polys[0].ring
    leads: List[_Lead] = []
    active: List[bool] = []
    pairs = set()
    pair_heap: List[Tuple[Tuple[int, ...], int, int]] = []

    def active_leads() -> List[_Lead]:
        return [leads[i] for i in range(len(leads)) if active[i]]

    def update(h: int) -> None:
        lm_h = leads[h].lm
        candidates = [g for g in range(len(leads)) if active[g] and g != h]
        kept: List[int] = []
        while candidates:
            g1 = candidates.pop()
            l1 = _lcm(lm_h, leads[g1].lm)
            if _coprime(lm_h, leads[g1].lm):
                kept.append(g1)
                continue
            dominated = any(_divides(_lcm(lm_h, leads[g2].lm), l1) for g2 in candidates)
            dominated = dominated or any(_divides(_lcm(lm_h, leads[g2].lm), l1) for g2 in kept)
            if not dominated:
                kept.append(g1)
        new_pairs = [g for g in kept if not _coprime(lm_h, leads[g].lm)]

        for a, b in list(pairs):
            l_ab = _lcm(leads[a].lm, leads[b].lm)
            if (_divides(lm_h, l_ab) and _lcm(leads[a].lm, lm_h) != l_ab
                    and _lcm(leads[b].lm, lm_h) != l_ab):
                pairs.discard((a, b))
        for g in new_pairs:
            pair = (g, h)
            pairs.add(pair)
            heapq.heappush(pair_heap, (order.key(_lcm(leads[g].lm, lm_h)), g, h))
        for g in range(len(leads)):
            if active[g] and g != h and _divides(lm_h, leads[g].lm):
                active[g] = False
        active[h] = True

    def insert(terms: Dict[Exponent, FieldElement]) -> bool:
        """插入一个非零约化结果，若得到非零常数返回 True"""
        poly = Polynomial._make(ring, terms).monic(order)
        leads.append(_Lead(poly, order))
        active.append(False)
        update(len(leads) - 1)
        return poly.is_constant()

    for p in sorted(polys, key=lambda q: order.key(q.leading_monomial(order))):
        deadline.check()
        r = _reduce_terms(p.terms, active_leads(), order)
        if r and insert(r):
            return [ring.one()]

    processed = 0
    while pair_heap:
        _, i, j = heapq.heappop(pair_heap)
        if (i, j) not in pairs:
            continue
        pairs.discard((i, j))
        deadline.check()
        h = _reduce_terms(_spoly_terms(leads[i], leads[j]), active_leads(), order)
        processed += 1
        if processed % 50 == 0:
            logging.debug(f"Buchberger: 已处理 {processed} 个 S 对，基大小 {sum(active)}，待处理 {len(pairs)}")
        if h and insert(h):
            return [ring.one()]

    # 约化：每个元素的尾项对其余元素做完全约化
    minimal = active_leads()
    reduced = []
    for lead in minimal:
        others = [other for other in minimal if other is not lead]
        tail = _reduce_terms(dict(lead.tail), others, order)
        tail[lead.lm] = ring.field.one()
        reduced.append(Polynomial._make(ring, tail))
    reduced.sort(key=lambda q: order.key(q.leading_monomial(order)), reverse=True)
    return reduced


GB_CACHE_SIZE = 256
_GB_CACHE: "OrderedDict[tuple, Tuple[Polynomial, ...]]" = OrderedDict()
_GB_LOCK = threading.Lock()


def _cache_key(ideal: Ideal, order: MonomialOrder) -> tuple:
    canonical: FrozenSet[Polynomial] = frozenset(g.monic(order) for g in ideal.generators)
    ring = ideal.ring
    return (ring.field, ring.variables, ring.weights, order, canonical)


def clear_cache() -> None:
    with _GB_LOCK:
        _GB_CACHE.clear()


def groebner_basis(ideal: Ideal, order: Optional[MonomialOrder] = None,
                   deadline: Optional[Deadline] = None) -> Tuple[Polynomial, ...]:
    """
    约化 Gröbner 基

    同一 (生成元集合, 单项式序) 只计算一次；并发重复计算时先写入者胜出。
    缓存最多保留 GB_CACHE_SIZE 个结果，按最近使用淘汰。

    Args:
        ideal: 理想
        order: 单项式序，默认 grevlex
        deadline: 协作式截止时间

    Returns:
        首一、按首项降序排列的约化 Gröbner 基；零理想返回空元组
    """
    order = order or GREVLEX
    if not ideal.generators:
        return ()
    key = _cache_key(ideal, order)
    with _GB_LOCK:
        cached = _GB_CACHE.get(key)
        if cached is not None:
            _GB_CACHE.move_to_end(key)
    if cached is not None:
        return cached
    started = time.monotonic()
    basis = tuple(_buchberger(list(ideal.generators), order, deadline or NO_DEADLINE))
    logging.debug(f"Gröbner 基 ({order.describe()}, {len(ideal.generators)} 个生成元) → "
                  f"{len(basis)} 个元素，用时 {time.monotonic() - started:.2f}s")
    with _GB_LOCK:
        basis = _GB_CACHE.setdefault(key, basis)
        while len(_GB_CACHE) > GB_CACHE_SIZE:
            _GB_CACHE.popitem(last=False)
    return basis


def leading_exponents(ideal: Ideal, order: Optional[MonomialOrder] = None,
                      deadline: Optional[Deadline] = None) -> List[Exponent]:
    order = order or GREVLEX
    return [g.leading_monomial(order) for g in groebner_basis(ideal, order, deadline)]


# ═════════════════════════════ 消元 ═════════════════════════════

def eliminate(ideal: Ideal, names: Sequence[str], deadline: Optional[Deadline] = None) -> Ideal:
    """
    消去给定变量：I ∩ k[其余变量]

    使用以被消变量为第一块的块序(块内 grevlex)。

    Returns:
        子环(保留其余变量的原顺序与权重)中的理想
    """
    ring = ideal.ring
    eliminated = [ring.index(n) for n in names]
    kept = [i for i in range(ring.nvars) if i not in eliminated]
    if not kept:
        raise ValueError("不能消去全部变量")
    order = MonomialOrder.elimination(len(eliminated), eliminated + kept)
    subring = Ring(ring.field, tuple(ring.variables[i] for i in kept),
                   tuple(ring.weights[i] for i in kept), ring.order)
    gens = []
    for g in groebner_basis(ideal, order, deadline):
        lm = g.leading_monomial(order)
        if not any(lm[i] for i in eliminated):
            gens.append(restrict(g, subring))
    return Ideal(subring, tuple(gens))


def elimination(ideal: Ideal, k: int, deadline: Optional[Deadline] = None) -> Ideal:
    """消去前 k 个变量"""
    if not 0 <= k < ideal.ring.nvars:
        raise ValueError(f"消元个数必须满足 0 ≤ k < {ideal.ring.nvars}: {k}")
    if k == 0:
        return ideal
    return eliminate(ideal, ideal.ring.variables[:k], deadline)


def _fresh_name(ring: Ring, base: str) -> str:
    name = base
    suffix = 0
    while name in ring.variables:
        suffix += 1
        name = f"{base}{suffix}"
    return name


def ideal_intersection(a: Ideal, b: Ideal, deadline: Optional[Deadline] = None) -> Ideal:
    """I ∩ J：在添加标记变量 t 的环中消去 t·I + (1-t)·J"""
    if not a.ring.compatible(b.ring):
        raise RingMismatchError(f"理想不属于同一个环: {a.ring} 与 {b.ring}")
    ring = a.ring
    if not a.generators or not b.generators:
        return Ideal(ring, ())
    tag = _fresh_name(ring, "_t")
    big = Ring(ring.field, (tag,) + ring.variables, (1,) + ring.weights, ring.order)
    t = big.gen(0)
    gens = [t * embed(g, big) for g in a.generators]
    gens += [(big.one() - t) * embed(g, big) for g in b.generators]
    result = eliminate(Ideal(big, tuple(gens)), [tag], deadline)
    return Ideal(ring, result.generators)


def colon(a: Ideal, b: Ideal, deadline: Optional[Deadline] = None) -> Ideal:
    """
    商理想 I : J = ⋂_g (I : g)，其中 I : g = (I ∩ ⟨g⟩) / g
    """
    if not a.ring.compatible(b.ring):
        raise RingMismatchError(f"理想不属于同一个环: {a.ring} 与 {b.ring}")
    ring = a.ring
    if not b.generators:
        return Ideal(ring, (ring.one(),))
    result: Optional[Ideal] = None
    for g in b.generators:
        meet = ideal_intersection(a, Ideal(ring, (g,)), deadline)
        quotient = Ideal(ring, tuple(exact_divide(h, g) for h in meet.generators))
        result = quotient if result is None else ideal_intersection(result, quotient, deadline)
    return Ideal(ring, groebner_basis(result, deadline=deadline))


def saturate(a: Ideal, b: Ideal, deadline: Optional[Deadline] = None) -> Ideal:
    """饱和 I : J^∞，反复取商理想直至稳定"""
    current = Ideal(a.ring, groebner_basis(a, deadline=deadline))
    rounds = 0
    while True:
        rounds += 1
        nxt = colon(current, b, deadline)
        if groebner_basis(nxt, deadline=deadline) == groebner_basis(current, deadline=deadline):
            logging.debug(f"饱和在第 {rounds} 轮稳定")
            return current
        current = nxt


# ═════════════════════════════ 维数与次数 ═════════════════════════════

def _dimension_from_leads(lms: Sequence[Exponent], nvars: int) -> int:
    if any(not any(lm) for lm in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in lms]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            chosen = set(subset)
            if all(not s <= chosen for s in supports):
                return size
    return 0


def dimension(ideal: Ideal, deadline: Optional[Deadline] = None) -> int:
    """仿射 Krull 维数(首项理想的极大独立变量集)，单位理想为 -1"""
    if not ideal.generators:
        return ideal.ring.nvars
    return _dimension_from_leads(leading_exponents(ideal, deadline=deadline), ideal.ring.nvars)


def standard_monomials(lms: Sequence[Exponent], nvars: int, limit: int = 1_000_000) -> List[Exponent]:
    """不被任何首单项式整除的单项式(零维时为有限集)"""
    if any(not any(lm) for lm in lms):
        return []
    start = (0,) * nvars
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for exp in frontier:
            for i in range(nvars):
                cand = exp[:i] + (exp[i] + 1,) + exp[i + 1:]
                if cand in seen or any(_divides(lm, cand) for lm in lms):
                    continue
                seen.add(cand)
                nxt.append(cand)
                if len(seen) > limit:
                    raise PositiveDimensionalError(f"标准单项式超过 {limit} 个")
        frontier = nxt
    return sorted(seen)


def zero_dim_degree(ideal: Ideal, deadline: Optional[Deadline] = None) -> int:
    """零维理想商环的向量空间维数(阶梯下的单项式个数)"""
    dim = dimension(ideal, deadline)
    if dim > 0:
        raise PositiveDimensionalError(f"理想维数为 {dim}，不是零维")
    if dim < 0:
        return 0
    return len(standard_monomials(leading_exponents(ideal, deadline=deadline), ideal.ring.nvars))


# ───────── Hilbert 级数 ─────────

def _minimalize(a: np.ndarray) -> np.ndarray:
    """单项式生成元的极小化(行是指数向量)"""
    kept: List[np.ndarray] = []
    for m in sorted(a.tolist(), key=sum):
        row = np.array(m, dtype=np.int64)
        if all(not np.all(row >= g) for g in kept):
            kept.append(row)
    if not kept:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return np.array(kept, dtype=np.int64)


def _poly_add(a: List[int], b: List[int]) -> List[int]:
    size = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(size)]


def _poly_mul(a: List[int], b: List[int]) -> List[int]:
    result = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                result[i + j] += x * y
    return result


def _numerator(a: np.ndarray) -> List[int]:
    if len(a) == 0:
        return [1]
    degrees = a.sum(axis=1)
    if np.any(degrees == 0):
        return [0]
    if np.count_nonzero(a, axis=0).max() <= 1:
        # 生成元两两互素：∏ (1 - t^deg)
        result = [1]
        for d in degrees.tolist():
            result = _poly_mul(result, [1] + [0] * (d - 1) + [-1])
        return result
    nontrivial = a[np.count_nonzero(a, axis=1) > 1]
    j = int(np.argmax(np.count_nonzero(nontrivial, axis=0)))
    column = a[:, j]
    e = int(column[column > 0].min())
    p = np.zeros(a.shape[1], dtype=np.int64)
    p[j] = e
    left = [m for m in a if not np.all(m >= p)] + [p]
    right = np.maximum(a - p, 0)
    left_num = _numerator(_minimalize(np.array(left, dtype=np.int64)))
    right_num = _numerator(_minimalize(right))
    return _poly_add(left_num, [0] * e + right_num)


def hilbert_numerator(monomials: Union[np.ndarray, Sequence[Exponent]], nvars: Optional[int] = None) -> List[int]:
    """
    单项式理想 M 的 Hilbert 级数分子 N(t)：HS(S/M) = N(t) / (1-t)^n

    Args:
        monomials: 生成元指数向量(行)
        nvars: 变量个数(monomials 为空时必须给出)

    Returns:
        N(t) 的整数系数，由低到高
    """
    a = np.array(monomials, dtype=np.int64)
    if a.size == 0:
        return [1]
    if nvars is not None and a.shape[1] != nvars:
        raise ValueError(f"指数向量长度 {a.shape[1]} ≠ {nvars}")
    return upoly_normalize(_numerator(_minimalize(a))) or [0]


def projective_dim_degree(ideal: Ideal, deadline: Optional[Deadline] = None) -> Tuple[int, int]:
    """
    齐次理想(单位权重)定义的射影概形的维数与次数

    Returns:
        (射影维数, 次数)；空概形返回 (-1, 0)
    """
    ring = ideal.ring
    if any(w != 1 for w in ring.weights):
        raise ValueError("Hilbert 多项式只支持单位权重")
    for g in ideal.generators:
        if not g.is_homogeneous((1,) * ring.nvars):
            raise ValueError(f"生成元不是齐次的: {g}")
    lms = leading_exponents(ideal, deadline=deadline) if ideal.generators else []
    numerator = hilbert_numerator(lms, ring.nvars) if lms else [1]
    if not any(numerator):
        return -1, 0
    cancelled = 0
    while sum(numerator) == 0:
        # 除以 (1 - t)
        quotient = []
        acc = 0
        for c in numerator[:-1]:
            acc += c
            quotient.append(acc)
        numerator = quotient
        cancelled += 1
    affine_dim = ring.nvars - cancelled
    if affine_dim == 0:
        return -1, 0
    return affine_dim - 1, sum(numerator)


# ═════════════════════════════ 零维求解 ═════════════════════════════

def univariate_eliminant(ideal: Ideal, var: Union[str, int],
                         deadline: Optional[Deadline] = None) -> List[FieldElement]:
    """
    零维理想中变量 var 的首一极小多项式(乘法算子的极小多项式)

    依次计算 var 的幂的正规形，第一次出现线性相关时由 mat_kernel 给出系数。

    Returns:
        系数(由低到高)；单位理想返回 [1]
    """
    ring = ideal.ring
    i = var if isinstance(var, int) else ring.index(var)
    dim = dimension(ideal, deadline)
    if dim > 0:
        raise PositiveDimensionalError(f"理想维数为 {dim}，不是零维")
    field = ring.field
    if dim < 0:
        return [field.one()]
    gb = groebner_basis(ideal, deadline=deadline)
    leads = [_Lead(g, GREVLEX) for g in gb]
    std = standard_monomials([lead.lm for lead in leads], ring.nvars)
    index = {e: k for k, e in enumerate(std)}
    x = ring.gen(i)
    current = ring.one()
    columns = [current]
    for _ in range(len(std)):
        if deadline:
            deadline.check()
        current = Polynomial._make(ring, _reduce_terms((current * x).terms, leads, GREVLEX))
        columns.append(current)
        rows = [[field.zero()] * len(columns) for _ in std]
        for col, p in enumerate(columns):
            for e, c in p.terms.items():
                rows[index[e]][col] = c
        kernel = mat_kernel(Matrix.from_rows(rows, field, cols=len(columns)))
        if kernel:
            vector = kernel[0]
            top = vector[-1]
            return [c / top for c in vector]
    raise ArithmeticError("未找到极小多项式(商环维数计算有误)")


def power_of_linear_root(coeffs: Sequence[FieldElement]) -> Optional[FieldElement]:
    """若 p = lc·(y - a)^k 返回 a，否则返回 None"""
    coeffs = upoly_normalize(list(coeffs))
    k = len(coeffs) - 1
    if k < 1:
        return None
    lc = coeffs[-1]
    a = -coeffs[k - 1] / (lc * k)
    for j in range(k + 1):
        expected = lc * comb(k, j) * (-a) ** (k - j)
        if coeffs[j] != expected:
            return None
    return a


def _restriction_roots(poly: List[FieldElement], field: NumberField,
                       deadline: Optional[Deadline]) -> List[FieldElement]:
    """限制纯量：在 ℚ 上求解 p(Σ y_j θ^j) = 0 的 d 个分量方程"""
    d = field.degree
    names = tuple(f"y{j}" for j in range(d))
    ring_q = Ring(QQ, names)
    ring_k = ring_q.with_field(field)
    theta = field.gen()
    y = ring_k.zero()
    for j in range(d):
        y = y + ring_k.gen(j).scale(theta ** j)
    value = ring_k.zero()
    for c in reversed(poly):
        value = value * y + ring_k.constant(c)
    components = []
    for j in range(d):
        terms = {e: c.coeffs[j] for e, c in value.terms.items() if c.coeffs[j]}
        if terms:
            components.append(Polynomial(ring_q, terms))
    system = Ideal(ring_q, tuple(components))
    if dimension(system, deadline) != 0:
        raise IncompleteSolutionError(poly, f"限制纯量方程组不是零维，无法求出全部根: {list(map(str, poly))}")
    points = solve_zero_dim(system, deadline=deadline)
    roots = []
    for pt in points:
        value = field.zero()
        for j, c in enumerate(pt):
            value = value + theta ** j * c.coeffs[0]
        roots.append(value)
    return roots


def _to_fraction(value: sympy.Rational) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def _norm_roots(poly: List[FieldElement], field: NumberField, max_shifts: int = 32,
                deadline: Optional[Deadline] = None) -> Optional[List[FieldElement]]:
    """
    范数分解求根

    取平移 s 使 N(x) = Res_t(m(t), p(x - s·t)) 无平方，在 ℚ 上分解 N；
    每个 d 次不可约因子 g 对应 p 在 K 上的一次因子 gcd(p(x), g(x + sθ))。

    Returns:
        p 在 K 中的全部根；max_shifts 个平移内找不到无平方范数时返回 None
    """
    x, t = sympy.symbols("x t")
    d = field.degree
    min_expr = sum(sympy.Rational(c.numerator, c.denominator) * t ** j for j, c in enumerate(field.min_poly))
    coeff_exprs = [sum(sympy.Rational(c.numerator, c.denominator) * t ** j for j, c in enumerate(a.coeffs))
                   for a in poly]
    theta = field.gen()
    for shift in range(max_shifts):
        if deadline:
            deadline.check()
        shifted = sympy.expand(sum(c * (x - shift * t) ** i for i, c in enumerate(coeff_exprs)))
        norm = sympy.Poly(sympy.resultant(min_expr, shifted, t), x, domain="QQ")
        if norm.gcd(norm.diff(x)).degree() > 0:
            continue
        _, factors = norm.factor_list()
        move = [theta * shift, field.one()]
        roots = []
        for g, _ in factors:
            if g.degree() != d:
                continue
            composed: List[FieldElement] = []
            for c in g.all_coeffs():
                composed = upoly_sub(upoly_mul(composed, move), [-field.from_rational(_to_fraction(c))])
            h = upoly_gcd(poly, composed)
            if len(h) == 2:
                roots.append(-h[0] / h[1])
        logging.debug(f"范数分解：平移 {shift}，{len(factors)} 个有理因子，{len(roots)} 个根")
        return roots
    return None


def field_roots(coeffs: Sequence[Union[FieldElement, Fraction, int]], field: NumberField,
                max_restriction_solutions: int = 64,
                deadline: Optional[Deadline] = None) -> List[FieldElement]:
    """
    一元多项式在数域 K 中的根

    依次使用：有理根定理；生成元检验；除去已知根后的一次因子；
    以及次数 deg^d 不超过 max_restriction_solutions 时的限制纯量求解。

    Returns:
        互不相同的根(按字符串排序)
    """
    poly = upoly_normalize([as_element(c, field) for c in coeffs])
    if len(poly) <= 1:
        return []
    poly = upoly_squarefree(poly)
    roots: List[FieldElement] = []

    def add(root: FieldElement) -> None:
        if root not in roots and not upoly_eval(poly, root):
            roots.append(root)

    if len(poly) == 2:
        add(-poly[0] / poly[1])
        return roots
    if field.is_rational:
        for r in rational_roots([c.coeffs[0] for c in poly]):
            add(field.from_rational(r))
        return roots

    components = [upoly_normalize([c.coeffs[j] for c in poly]) for j in range(field.degree)]
    common: List[Fraction] = []
    for comp in components:
        if comp:
            common = comp if not common else upoly_gcd(common, comp)
    if len(common) > 1:
        for r in rational_roots(common):
            add(field.from_rational(r))
    add(field.gen())

    remaining = poly
    for r in roots:
        remaining, _ = upoly_divmod(remaining, [-r, field.one()])
    if len(remaining) == 2:
        add(-remaining[0] / remaining[1])
    elif len(remaining) > 2:
        found = _norm_roots(remaining, field, deadline=deadline)
        if found is None:
            if (len(remaining) - 1) ** field.degree > max_restriction_solutions:
                raise IncompleteSolutionError(
                    remaining, f"因子次数 {len(remaining) - 1} 超出限制纯量上界 {max_restriction_solutions}，"
                               f"且范数分解失败")
            found = _restriction_roots(remaining, field, deadline)
        for r in found:
            add(r)
    return sorted(roots, key=str)


def _solve_recursive(ideal: Ideal, max_restriction_solutions: int,
                     deadline: Optional[Deadline]) -> List[Dict[str, FieldElement]]:
    ring = ideal.ring
    gb = groebner_basis(ideal, deadline=deadline)
    if len(gb) == 1 and gb[0].is_constant():
        return []
    last = ring.nvars - 1
    name = ring.variables[last]
    eliminant = univariate_eliminant(ideal, last, deadline)
    roots = field_roots(eliminant, ring.field, max_restriction_solutions, deadline)
    if ring.nvars == 1:
        return [{name: r} for r in roots]
    subring = Ring(ring.field, ring.variables[:last], ring.weights[:last], ring.order)
    results = []
    for r in roots:
        gens = []
        for g in gb:
            sub = g.evaluate({last: r})
            if sub:
                gens.append(restrict(sub, subring))
        if any(g.is_constant() for g in gens):
            continue
        for partial in _solve_recursive(Ideal(subring, tuple(gens)), max_restriction_solutions, deadline):
            partial[name] = r
            results.append(partial)
    return results


def _resolve_ext(ext: Union[NumberField, Sequence, Polynomial, None]) -> Optional[NumberField]:
    if ext is None or isinstance(ext, NumberField):
        return ext
    if isinstance(ext, Polynomial):
        used = ext.variables_used()
        var = used[0] if used else 0
        return nf_create([c.coeffs[0] for c in ext.univariate_coeffs(var)], "r")
    return nf_create(ext, "r")


def solve_zero_dim(ideal: Ideal, ext: Union[NumberField, Sequence, Polynomial, None] = None,
                   max_restriction_solutions: int = 64,
                   deadline: Optional[Deadline] = None) -> PointSet:
    """
    零维方程组求解

    按变量从后往前三角化：取一元消元多项式的根，代回后递归。系数域为 ℚ 且给出 ext 时，
    先验证 ext 整除某个变量的一元消元多项式，再在 ℚ[x]/(ext) 上求根并回代。

    Args:
        ideal: 零维理想
        ext: 可选的扩域(数域、极小多项式系数或一元多项式)
        max_restriction_solutions: 限制纯量求根的 Bézout 上界
        deadline: 协作式截止时间

    Returns:
        每个点都经过全部生成元精确验证的点集
    """
    ring = ideal.ring
    dim = dimension(ideal, deadline)
    if dim > 0:
        raise PositiveDimensionalError(f"理想维数为 {dim}，不是零维")
    ext_field = _resolve_ext(ext)
    field = ring.field
    work = ideal
    if ext_field is not None and ext_field != field:
        if not field.is_rational:
            raise FieldMismatchError(f"理想已定义在 {field.name} 上，不能再扩张到 {ext_field.name}")
        dividing = []
        for i in range(ring.nvars):
            eliminant = [c.coeffs[0] for c in univariate_eliminant(ideal, i, deadline)]
            _, rem = upoly_divmod(eliminant, list(ext_field.min_poly))
            if not rem:
                dividing.append(ring.variables[i])
        if not dividing:
            raise ExtensionMismatchError(
                f"扩域极小多项式 {ext_field} 不整除任何变量的一元消元多项式")
        logging.info(f"扩域 {ext_field.name} 整除变量 {dividing} 的一元消元多项式")
        field = ext_field
        work = ideal.with_field(field)
    if dim < 0:
        return PointSet(ring.variables, field, ())

    solutions = _solve_recursive(work, max_restriction_solutions, deadline)
    points = []
    for sol in solutions:
        point = tuple(sol[name] for name in ring.variables)
        for g in ideal.generators:
            if g.eval_point(point):
                raise ArithmeticError(f"求得的点 {point} 不满足生成元 {g}")
        if point not in points:
            points.append(point)
    points.sort(key=lambda pt: [c.format(spaced=False) for c in pt])
    return PointSet(ring.variables, field, tuple(points))


def support_certificate(ideal: Ideal, deadline: Optional[Deadline] = None) -> Optional[Tuple[FieldElement, ...]]:
    """
    支撑证书：零维理想的每个变量的一元消元多项式都是一次式的幂时，
    理想在任何扩域上都只支撑于唯一的点

    Returns:
        该点坐标；否则为 None
    """
    if dimension(ideal, deadline) != 0:
        return None
    point = []
    for i in range(ideal.ring.nvars):
        root = power_of_linear_root(univariate_eliminant(ideal, i, deadline))
        if root is None:
            return None
        point.append(root)
    point = tuple(point)
    if any(g.eval_point(point) for g in ideal.generators):
        return None
    return point
