"""
双覆盖不变量计算模块
光滑双覆盖公式、由无穷近点重数树给出的典范消解修正、极小模型调整、
结点数公式、p_g/q 记账以及双典范映射的判别等式

本模块只做整数运算：交数 B²、K·B 以及上同调维数 h⁰ 都由调用者给出。
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from ..core.errors import (
    ConfigSchemaError,
    InconsistentInvariantsError,
    OutOfRangeError,
    ParityError,
    TreeError,
)

# Kodaira 维数 −∞ 的整数编码
KOD_NEG_INF = -1
KODAIRA_VALUES = (KOD_NEG_INF, 0, 1, 2)


def _parse_kod(value: Any) -> Optional[int]:
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() in ("-inf", "−∞", "-infinity"):
        return KOD_NEG_INF
    if isinstance(value, bool) or not isinstance(value, int) or value not in KODAIRA_VALUES:
        raise ConfigSchemaError(f"Kodaira 维数必须是 -inf/0/1/2，得到 {value!r}")
    return value


def format_kod(kod: Optional[int]) -> Optional[str]:
    if kod is None:
        return None
    return "-inf" if kod == KOD_NEG_INF else str(kod)


# ═════════════════════════════ 数据结构 ═════════════════════════════

@dataclass(frozen=True)
class SurfaceInvariants:
    """曲面的数值不变量

    Args:
        K2: 典范除子自交数 K²
        chi: 全纯欧拉示性数 χ(O)
        pg: 几何亏格(可缺省)
        q: 不规则度(可缺省)
        kod: Kodaira 维数，−∞ 编码为 KOD_NEG_INF
    """
    K2: int
    chi: int
    pg: Optional[int] = None
    q: Optional[int] = None
    kod: Optional[int] = None

    def __post_init__(self):
        if self.pg is not None and self.q is not None and self.chi != 1 - self.q + self.pg:
            raise InconsistentInvariantsError(
                f"χ = {self.chi} 与 1 − q + p_g = {1 - self.q + self.pg} 不一致")
        if self.kod is not None and self.kod not in KODAIRA_VALUES:
            raise OutOfRangeError(f"Kodaira 维数非法: {self.kod}")

    def to_dict(self) -> Dict[str, Any]:
        return {"K2": self.K2, "chi": self.chi, "pg": self.pg, "q": self.q, "kod": format_kod(self.kod)}


@dataclass(frozen=True)
class SingularityTree:
    """分歧曲线奇点的无穷近点树

    每个结点记录分歧曲线严格变换在该点的重数，children 是位于该点
    爆破例外曲线上的无穷近点。
    """
    multiplicity: int
    children: Tuple["SingularityTree", ...] = ()

    def __post_init__(self):
        if isinstance(self.multiplicity, bool) or not isinstance(self.multiplicity, int):
            raise TreeError(f"重数必须是整数: {self.multiplicity!r}")
        if self.multiplicity < 2:
            raise TreeError(f"无穷近点树中的重数必须 ≥ 2，得到 {self.multiplicity}")
        object.__setattr__(self, "children", tuple(self.children))

    @classmethod
    def ordinary(cls, m: int) -> "SingularityTree":
        """普通 m 重点"""
        return cls(m)

    @classmethod
    def infinitely_near(cls, n: int) -> "SingularityTree":
        """(n,n) 点：n 重点，其无穷近点仍为 n 重"""
        return cls(n, (cls(n),))

    @classmethod
    def from_json(cls, data: Any) -> "SingularityTree":
        """整数表示单点；整数列表表示一条链；字典为 {"m": 重数, "children": [...]}"""
        if isinstance(data, int) and not isinstance(data, bool):
            return cls(data)
        if isinstance(data, list):
            if not data:
                raise ConfigSchemaError("奇点链不能为空")
            node = None
            for m in reversed(data):
                if isinstance(m, bool) or not isinstance(m, int):
                    raise ConfigSchemaError(f"奇点链中的重数必须是整数: {m!r}")
                node = cls(m, (node,) if node is not None else ())
            return node
        if isinstance(data, dict):
            if "m" not in data:
                raise ConfigSchemaError("奇点树结点缺少键 'm'")
            children = data.get("children", [])
            if not isinstance(children, list):
                raise ConfigSchemaError("奇点树的 'children' 必须是列表")
            m = data["m"]
            if isinstance(m, bool) or not isinstance(m, int):
                raise ConfigSchemaError(f"奇点树结点的 'm' 必须是整数: {m!r}")
            return cls(m, tuple(cls.from_json(child) for child in children))
        raise ConfigSchemaError(f"无法识别的奇点树: {data!r}")

    def to_json(self) -> Dict[str, Any]:
        return {"m": self.multiplicity, "children": [child.to_json() for child in self.children]}

    def size(self) -> int:
        return 1 + sum(child.size() for child in self.children)


@dataclass(frozen=True)
class BranchData:
    """分歧除子的数值数据

    Args:
        B2: 分歧除子自交数 B²
        KB: K·B
        nodal_components: 分歧中互不相交的 (−2) 曲线个数 t
        trees: 非平凡奇点的无穷近点树
        h0_KL: h⁰(K_W+L)，用户给出
        h0_2KL: h⁰(2K_W+L)，用户给出
        h1_KL: h¹(K_W+L)，用户给出；缺省时 q 由 χ 记账推出
    """
    B2: int
    KB: int
    nodal_components: int = 0
    trees: Tuple[SingularityTree, ...] = ()
    h0_KL: Optional[int] = None
    h0_2KL: Optional[int] = None
    h1_KL: Optional[int] = None

    def __post_init__(self):
        # 2L ≡ B
        if self.B2 % 4 != 0:
            raise ParityError(f"B² = {self.B2} 不是 4 的倍数，不存在 L 使 2L ≡ B")
        if self.KB % 2 != 0:
            raise ParityError(f"K·B = {self.KB} 是奇数，不存在 L 使 2L ≡ B")
        if self.nodal_components < 0:
            raise OutOfRangeError(f"结点分量个数必须非负: {self.nodal_components}")
        for name in ("h0_KL", "h0_2KL", "h1_KL"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise OutOfRangeError(f"{name} 必须非负: {value}")
        object.__setattr__(self, "trees", tuple(self.trees))

    @property
    def L2(self) -> int:
        return self.B2 // 4

    @property
    def KL(self) -> int:
        return self.KB // 2


@dataclass(frozen=True)
class ResolutionDelta:
    """典范消解的修正量

    Args:
        r_list: 每次爆破减去的例外曲线系数 r = 2⌊m/2⌋
        delta_chi: χ 的修正
        delta_K2: K² 的修正
    """
    r_list: Tuple[int, ...]
    delta_chi: int
    delta_K2: int

    @property
    def halves(self) -> Tuple[int, ...]:
        return tuple(r // 2 for r in self.r_list)

    def __add__(self, other: "ResolutionDelta") -> "ResolutionDelta":
        return ResolutionDelta(self.r_list + other.r_list,
                               self.delta_chi + other.delta_chi,
                               self.delta_K2 + other.delta_K2)


NO_RESOLUTION = ResolutionDelta((), 0, 0)


@dataclass
class CoverConfig:
    """一条双覆盖计算链的输入

    construction 可以给出底曲面本身作为另一个双覆盖的构造过程，
    运行时先算出它的 K² 与 χ 并与 base 比对。
    """
    base: SurfaceInvariants
    branch: BranchData
    contracted: int = 0
    name: str = ""
    construction: Optional["CoverConfig"] = None
    has_genus2_fibration: Optional[bool] = None
    phi2_birational: Optional[bool] = None
    kod_quotient: Optional[int] = None
    deg_phi2: Optional[int] = None


@dataclass
class CoverResult:
    """双覆盖计算链的输出"""
    KV2: int
    KS2: int
    chiS: int
    t_check: Optional[int]
    r_list: List[int]
    bicanonical_composed: Optional[bool]
    pg: Optional[int] = None
    q: Optional[int] = None
    smooth_KV2: int = 0
    smooth_chiV: int = 0
    resolved_base: Tuple[int, int, int] = (0, 0, 0)
    mrg2_holds: Optional[bool] = None
    construction: Optional["CoverResult"] = None
    notes: List[str] = field(default_factory=list)

    @property
    def surface(self) -> SurfaceInvariants:
        return SurfaceInvariants(self.KS2, self.chiS, self.pg, self.q)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "KV2": self.KV2,
            "KS2": self.KS2,
            "chiS": self.chiS,
            "pg": self.pg,
            "q": self.q,
            "t_check": self.t_check,
            "r_list": list(self.r_list),
            "bicanonical_composed": self.bicanonical_composed,
            "smooth_KV2": self.smooth_KV2,
            "smooth_chiV": self.smooth_chiV,
            "resolved_base": {"K2": self.resolved_base[0], "KL": self.resolved_base[1],
                              "L2": self.resolved_base[2]},
            "mrg2_holds": self.mrg2_holds,
            "notes": list(self.notes),
        }
        if self.construction is not None:
            data["construction"] = self.construction.to_dict()
        return data


# ═════════════════════════════ 基本公式 ═════════════════════════════

def canonical_resolution(tree: SingularityTree) -> ResolutionDelta:
    """沿无穷近点树自根向下做典范消解

    每个结点的总重数 m 等于严格变换重数，若父结点总重数为奇数则再加 1
    (此时例外曲线进入分歧)。每次爆破给出 r = 2⌊m/2⌋，
    Δχ = −k(k−1)/2，ΔK² = −2(k−1)²，其中 k = ⌊m/2⌋。

    Args:
        tree: 奇点的无穷近点树

    Returns:
        ResolutionDelta: 前序遍历顺序的 r 列表与总修正
    """
    r_list: List[int] = []
    delta_chi = 0
    delta_K2 = 0

    stack: List[Tuple[SingularityTree, Optional[int]]] = [(tree, None)]
    while stack:
        node, parent_total = stack.pop()
        total = node.multiplicity + (1 if parent_total is not None and parent_total % 2 == 1 else 0)
        k = total // 2
        r_list.append(2 * k)
        delta_chi -= k * (k - 1) // 2
        delta_K2 -= 2 * (k - 1) ** 2
        for child in reversed(node.children):
            stack.append((child, total))

    return ResolutionDelta(tuple(r_list), delta_chi, delta_K2)


def resolve_all(trees: Sequence[SingularityTree]) -> ResolutionDelta:
    delta = NO_RESOLUTION
    for tree in trees:
        delta = delta + canonical_resolution(tree)
    return delta


def resolved_numerics(K2: int, KL: int, L2: int, delta: ResolutionDelta) -> Tuple[int, int, int]:
    """按爆破逐次更新 (K², K·L, L²)

    每次爆破 K ↦ π*K + E，L ↦ π*L − kE，故 K² 减 1，K·L 加 k，L² 减 k²。
    """
    halves = delta.halves
    return (K2 - len(halves), KL + sum(halves), L2 - sum(k * k for k in halves))


def smooth_cover(base: SurfaceInvariants, L2: int, KL: int) -> Tuple[int, int]:
    """光滑分歧双覆盖的不变量

    Args:
        base: 底曲面 W 的不变量
        L2: L²
        KL: K_W·L

    Returns:
        (K_V², χ(O_V))
    """
    if (KL + L2) % 2 != 0:
        raise ParityError(f"L(K+L) = {KL + L2} 是奇数，与 Riemann–Roch 矛盾")
    KV2 = 2 * (base.K2 + 2 * KL + L2)
    chiV = 2 * base.chi + (KL + L2) // 2
    return KV2, chiV


def chi_double_cover(chi_base: int, B_dot_2K_plus_B: int) -> int:
    """χ(O_V) = 2χ(O_W) + B(2K_W+B)/8"""
    if B_dot_2K_plus_B % 8 != 0:
        raise ParityError(f"B(2K+B) = {B_dot_2K_plus_B} 不能被 8 整除")
    return 2 * chi_base + B_dot_2K_plus_B // 8


def minimal_model_adjust(KV2: int, contracted: int) -> int:
    """收缩 contracted 条孤立 (−1) 曲线后的 K²"""
    if contracted < 0:
        raise OutOfRangeError(f"收缩的曲线数必须非负: {contracted}")
    return KV2 + contracted


def nodes_count(KS2: int, chiW: int, chiS: int, h0_2KL: int) -> int:
    """商曲面 S/i 的结点数 t = K_S² + 6χ(O_W) − 2χ(O_S) − 2h⁰(2K_W+L)"""
    if h0_2KL < 0:
        raise OutOfRangeError(f"h⁰(2K_W+L) 必须非负: {h0_2KL}")
    t = KS2 + 6 * chiW - 2 * chiS - 2 * h0_2KL
    if t < 0:
        raise InconsistentInvariantsError(
            f"结点数为负: K_S²={KS2}, χ_W={chiW}, χ_S={chiS}, h⁰={h0_2KL} 给出 t={t}")
    return t


def bicanonical_test(chiP: int, chiS: int, KP2: int, KPdelta: int, r_list: Sequence[int]) -> bool:
    """双典范映射与对合复合的判别等式

    χ(O_P) − χ(O_S) = K_P(K_P+δ) + Σ(rᵢ−2)/2
    """
    for r in r_list:
        if r < 2 or r % 2 != 0:
            raise ParityError(f"r 必须是 ≥ 2 的偶数: {r}")
    return chiP - chiS == KP2 + KPdelta + sum(r - 2 for r in r_list) // 2


def pg_q(baseW: SurfaceInvariants, h0_KL: int, h1_KL: int) -> Tuple[int, int]:
    """p_g(S) = p_g(W) + h⁰(K_W+L)，q(S) = q(W) + h¹(K_W+L)"""
    if baseW.pg is None or baseW.q is None:
        raise InconsistentInvariantsError("底曲面缺少 p_g 或 q，无法计算覆盖的 p_g 与 q")
    if h0_KL < 0 or h1_KL < 0:
        raise OutOfRangeError(f"上同调维数必须非负: h⁰={h0_KL}, h¹={h1_KL}")
    return baseW.pg + h0_KL, baseW.q + h1_KL


def check_mrg2(chiW: int, chiS: int, KW2: int, KL: int, h0_2KL: int) -> bool:
    """χ(O_W) − χ(O_S) = K_W(K_W+L) − h⁰(2K_W+L)，不成立时记录警告"""
    holds = chiW - chiS == KW2 + KL - h0_2KL
    if not holds:
        logging.warning(
            f"χ_W − χ_S = {chiW - chiS} 而 K_W(K_W+L) − h⁰(2K_W+L) = {KW2 + KL - h0_2KL}，"
            f"给出的 h⁰(2K_W+L) 与其余不变量不相容")
    return holds


# ═════════════════════════════ 计算链 ═════════════════════════════

def run_chain(config: CoverConfig) -> CoverResult:
    """运行完整的双覆盖计算链

    smooth_cover → 典范消解修正 → 极小模型调整 → p_g/q → 结点数校验

    Args:
        config: 计算链输入

    Returns:
        CoverResult: 覆盖曲面 S 的不变量与各项校验
    """
    construction_result = None
    if config.construction is not None:
        construction_result = run_chain(config.construction)
        KW2 = construction_result.KS2
        if (KW2, construction_result.chiS) != (config.base.K2, config.base.chi):
            raise InconsistentInvariantsError(
                f"构造给出 K_W² = {KW2}, χ_W = {construction_result.chiS}，"
                f"与底曲面 K² = {config.base.K2}, χ = {config.base.chi} 不一致")
        logging.info(f"底曲面构造校验通过: K_W² = {KW2}, χ(O_W) = {construction_result.chiS}")

    base, branch = config.base, config.branch
    smooth_KV2, smooth_chiV = smooth_cover(base, branch.L2, branch.KL)
    delta = resolve_all(branch.trees)
    KV2 = smooth_KV2 + delta.delta_K2
    chiS = smooth_chiV + delta.delta_chi
    KS2 = minimal_model_adjust(KV2, config.contracted)
    resolved = resolved_numerics(base.K2, branch.KL, branch.L2, delta)
    notes: List[str] = []

    pg = q = None
    if branch.h0_KL is not None and base.pg is not None and base.q is not None:
        if branch.h1_KL is not None:
            pg, q = pg_q(base, branch.h0_KL, branch.h1_KL)
        else:
            pg = base.pg + branch.h0_KL
            q = 1 - chiS + pg
            notes.append("q 由 χ = 1 − q + p_g 推出")
        if q < 0:
            raise InconsistentInvariantsError(f"推出的 q(S) = {q} 为负")
        if chiS != 1 - q + pg:
            raise InconsistentInvariantsError(f"χ(O_S) = {chiS} 与 1 − q + p_g = {1 - q + pg} 不一致")

    t_check = None
    bicanonical_composed = None
    mrg2_holds = None
    if branch.h0_2KL is not None:
        t_check = nodes_count(KS2, base.chi, chiS, branch.h0_2KL)
        bicanonical_composed = branch.h0_2KL == 0
        mrg2_holds = check_mrg2(base.chi, chiS, resolved[0], resolved[1], branch.h0_2KL)
        if not mrg2_holds:
            notes.append("χ_W − χ_S = K_W(K_W+L) − h⁰(2K_W+L) 不成立")
        if t_check != branch.nodal_components:
            logging.warning(f"结点数公式给出 t = {t_check}，而分歧含 {branch.nodal_components} 条 (−2) 曲线")
            notes.append(f"t = {t_check} ≠ {branch.nodal_components}")

    r_list = list(delta.r_list)
    logging.info(f"双覆盖计算链 {config.name or '<未命名>'}: K_V² = {KV2}, K_S² = {KS2}, "
                 f"χ(O_S) = {chiS}, p_g = {pg}, q = {q}, t = {t_check}")
    return CoverResult(
        KV2=KV2,
        KS2=KS2,
        chiS=chiS,
        t_check=t_check,
        r_list=r_list,
        bicanonical_composed=bicanonical_composed,
        pg=pg,
        q=q,
        smooth_KV2=smooth_KV2,
        smooth_chiV=smooth_chiV,
        resolved_base=resolved,
        mrg2_holds=mrg2_holds,
        construction=construction_result,
        notes=notes,
    )


# ═════════════════════════════ 配置读取 ═════════════════════════════

def _require(data: Dict[str, Any], key: str, where: str) -> Any:
    if not isinstance(data, dict):
        raise ConfigSchemaError(f"{where} 必须是 JSON 对象")
    if key not in data:
        raise ConfigSchemaError(f"{where} 缺少键 '{key}'")
    return data[key]


def _int(value: Any, key: str, optional: bool = False) -> Optional[int]:
    if value is None and optional:
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigSchemaError(f"键 '{key}' 必须是整数，得到 {value!r}")
    return value


def _bool(value: Any, key: str) -> Optional[bool]:
    if value is None or isinstance(value, bool):
        return value
    raise ConfigSchemaError(f"键 '{key}' 必须是布尔值或 null，得到 {value!r}")


def _base_from_dict(data: Dict[str, Any], where: str) -> SurfaceInvariants:
    try:
        return SurfaceInvariants(
            K2=_int(_require(data, "K2", where), "K2"),
            chi=_int(_require(data, "chi", where), "chi"),
            pg=_int(data.get("pg"), "pg", optional=True),
            q=_int(data.get("q"), "q", optional=True),
            kod=_parse_kod(data.get("kod")),
        )
    except InconsistentInvariantsError as e:
        raise ConfigSchemaError(f"{where}: {e}") from e


def _branch_from_dict(data: Dict[str, Any], where: str) -> BranchData:
    trees = data.get("trees", []) if isinstance(data, dict) else []
    if not isinstance(trees, list):
        raise ConfigSchemaError(f"{where}.trees 必须是列表")
    return BranchData(
        B2=_int(_require(data, "B2", where), "B2"),
        KB=_int(_require(data, "KB", where), "KB"),
        nodal_components=_int(data.get("nodal_components", 0), "nodal_components"),
        trees=tuple(SingularityTree.from_json(tree) for tree in trees),
        h0_KL=_int(data.get("h0_KL"), "h0_KL", optional=True),
        h0_2KL=_int(data.get("h0_2KL"), "h0_2KL", optional=True),
        h1_KL=_int(data.get("h1_KL"), "h1_KL", optional=True),
    )


def cover_config_from_dict(data: Dict[str, Any], name: str = "") -> CoverConfig:
    """从 JSON 对象构造 CoverConfig，结构错误抛出 ConfigSchemaError"""
    if not isinstance(data, dict):
        raise ConfigSchemaError("覆盖配置必须是 JSON 对象")
    construction = None
    if data.get("construction") is not None:
        construction = cover_config_from_dict(data["construction"], name=f"{name}/construction")
    return CoverConfig(
        base=_base_from_dict(_require(data, "base", "config"), "base"),
        branch=_branch_from_dict(_require(data, "branch", "config"), "branch"),
        contracted=_int(data.get("contracted", 0), "contracted"),
        name=data.get("name", name),
        construction=construction,
        has_genus2_fibration=_bool(data.get("has_genus2_fibration"), "has_genus2_fibration"),
        phi2_birational=_bool(data.get("phi2_birational"), "phi2_birational"),
        kod_quotient=_parse_kod(data.get("kod_quotient")),
        deg_phi2=_int(data.get("deg_phi2"), "deg_phi2", optional=True),
    )


def load_cover_config(path: Union[str, Path]) -> CoverConfig:
    """读取覆盖计算链的 JSON 配置文件"""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigSchemaError(f"配置文件不是合法 JSON: {path}: {e}") from e
    logging.info(f"覆盖配置已加载: {path}")
    return cover_config_from_dict(data, name=path.stem)
