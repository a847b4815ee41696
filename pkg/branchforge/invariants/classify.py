"""
分类规则模块
带对合且双典范映射与对合复合的 p_g = q = 1 曲面的分类表、数值约束检查与相关算术
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..core.errors import InconsistentInvariantsError, OutOfRangeError
from .covers import (
    CoverConfig,
    CoverResult,
    SurfaceInvariants,
    bicanonical_test,
    format_kod,
    nodes_count,
)

# 违反的规则名称
RULE_PG_Q = "p_g = q = 1"
RULE_K2_RANGE = "2 ≤ K² ≤ 9"
RULE_GENUS2_BOUND = "K² ≤ 6"
RULE_NOT_NINE = "K² ≠ 9"
RULE_KOD_NONNEG = "Kod(S/i) ≥ 0"
RULE_REGULAR = "q(S/i) = 0"
RULE_NOT_ENRIQUES = "S/i 不是 Enriques 曲面"
RULE_COMPOSED = "χ(P) − χ(S) = K_P(K_P+δ) + Σ(r−2)/2"
RULE_NO_CASE = "没有匹配的情形"
RULE_AMBIGUOUS = "情形不唯一"


@dataclass(frozen=True)
class Phi2Constraint:
    """双典范映射次数的约束: exact / at_least / unknown"""
    kind: str
    value: Optional[int] = None

    def admits(self, degree: Optional[int]) -> bool:
        if degree is None or self.kind == "unknown":
            return True
        if self.kind == "exact":
            return degree == self.value
        return degree >= self.value

    def describe(self) -> str:
        if self.kind == "exact":
            return f"= {self.value}"
        if self.kind == "at_least":
            return f"≥ {self.value}"
        return "未知"


@dataclass(frozen=True)
class CaseRecord:
    """分类表中的一种情形

    Args:
        case_id: a-i / a-ii / a-iii / b
        kod_quotient: 商曲面 S/i 的 Kodaira 维数
        chi_quotient: χ(O_{S/i})，未约束时为 None
        K2_range: K_S² 的闭区间
        deg_phi2: 双典范映射次数的约束
        genus_albanese: Albanese 纤维化亏格: "2"、"not-2" 或 "unknown"
    """
    case_id: str
    kod_quotient: int
    chi_quotient: Optional[int]
    K2_range: Tuple[int, int]
    deg_phi2: Phi2Constraint
    genus_albanese: str

    def __post_init__(self):
        if self.K2_range[0] > self.K2_range[1]:
            raise OutOfRangeError(f"情形 {self.case_id} 的 K² 区间为空: {self.K2_range}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case_id": self.case_id,
            "kod_quotient": self.kod_quotient,
            "chi_quotient": self.chi_quotient,
            "K2_range": list(self.K2_range),
            "deg_phi2": {"kind": self.deg_phi2.kind, "value": self.deg_phi2.value},
            "genus_albanese": self.genus_albanese,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CaseRecord":
        return cls(
            case_id=data["case_id"],
            kod_quotient=data["kod_quotient"],
            chi_quotient=data["chi_quotient"],
            K2_range=tuple(data["K2_range"]),
            deg_phi2=Phi2Constraint(data["deg_phi2"]["kind"], data["deg_phi2"]["value"]),
            genus_albanese=data["genus_albanese"],
        )


_THEOREM_TABLE: Tuple[CaseRecord, ...] = (
    CaseRecord("a-i", 2, 2, (2, 2), Phi2Constraint("exact", 8), "2"),
    CaseRecord("a-ii", 1, 2, (2, 4), Phi2Constraint("at_least", 4), "2"),
    # 商曲面双有理于 K3，故 Kod = 0、χ = 2
    CaseRecord("a-iii", 0, 2, (3, 6), Phi2Constraint("exact", 4), "2"),
    CaseRecord("b", 0, 2, (2, 9), Phi2Constraint("unknown"), "not-2"),
)


def theorem_table() -> List[CaseRecord]:
    """分类表的四种情形"""
    return list(_THEOREM_TABLE)


@dataclass
class SurfaceProfile:
    """待分类曲面 S 的数据

    Args:
        KS2: K_S²
        pg: p_g(S)
        q: q(S)
        quotient: 商曲面 S/i 的极小模型 P 的不变量(kod 为其 Kodaira 维数)
        r_list: 分歧典范消解的 r 列表
        KPdelta: K_P·δ，缺省时跳过判别等式
        has_genus2_fibration: 是否有亏格2纤维化，None 表示未知
        phi2_birational: 双典范映射是否双有理，None 表示未知
        deg_phi2: 双典范映射次数，None 表示未知
    """
    KS2: int
    pg: int
    q: int
    quotient: SurfaceInvariants
    r_list: List[int] = field(default_factory=list)
    KPdelta: Optional[int] = None
    has_genus2_fibration: Optional[bool] = None
    phi2_birational: Optional[bool] = None
    deg_phi2: Optional[int] = None

    @property
    def chiS(self) -> int:
        return 1 - self.q + self.pg

    def to_dict(self) -> Dict[str, Any]:
        return {
            "KS2": self.KS2,
            "pg": self.pg,
            "q": self.q,
            "quotient": self.quotient.to_dict(),
            "r_list": list(self.r_list),
            "KPdelta": self.KPdelta,
            "has_genus2_fibration": self.has_genus2_fibration,
            "phi2_birational": self.phi2_birational,
            "deg_phi2": self.deg_phi2,
        }


@dataclass
class ProfileVerdict:
    """check_profile 的结果：恰好一个情形，或非空的违反列表"""
    case: Optional[CaseRecord]
    violations: List[str]

    @property
    def ok(self) -> bool:
        return self.case is not None

    def describe(self) -> str:
        if self.case is not None:
            return f"case {self.case.case_id}"
        return "violations: " + "; ".join(self.violations)

    def to_dict(self) -> Dict[str, Any]:
        return {"case": self.case.case_id if self.case else None, "violations": list(self.violations)}


def _global_violations(p: SurfaceProfile) -> List[str]:
    violations = []
    if p.pg != 1 or p.q != 1:
        violations.append(RULE_PG_Q)
    if not 2 <= p.KS2 <= 9:
        violations.append(RULE_K2_RANGE)
    if p.has_genus2_fibration is True and p.KS2 > 6:
        violations.append(RULE_GENUS2_BOUND)
    if p.phi2_birational is False and p.KS2 == 9:
        violations.append(RULE_NOT_NINE)

    quotient = p.quotient
    if quotient.kod is not None and quotient.kod < 0:
        violations.append(RULE_KOD_NONNEG)
    if quotient.q is not None and quotient.q != 0:
        violations.append(RULE_REGULAR)
    if quotient.kod == 0 and quotient.chi == 1:
        violations.append(RULE_NOT_ENRIQUES)
    if p.KPdelta is not None and p.phi2_birational is not True:
        if not bicanonical_test(quotient.chi, p.chiS, quotient.K2, p.KPdelta, p.r_list):
            violations.append(RULE_COMPOSED)
    return violations


def _degree(p: SurfaceProfile) -> Optional[int]:
    if p.deg_phi2 is not None:
        return p.deg_phi2
    if p.phi2_birational is True:
        return 1
    return None


def _matches(record: CaseRecord, p: SurfaceProfile) -> bool:
    quotient = p.quotient
    if quotient.kod is not None and quotient.kod != record.kod_quotient:
        return False
    if record.chi_quotient is not None and quotient.chi != record.chi_quotient:
        return False
    if not record.K2_range[0] <= p.KS2 <= record.K2_range[1]:
        return False
    if not record.deg_phi2.admits(_degree(p)):
        return False
    if record.genus_albanese == "2" and p.has_genus2_fibration is False:
        return False
    if record.genus_albanese == "not-2" and p.has_genus2_fibration is True:
        return False
    return True


def check_profile(p: SurfaceProfile) -> ProfileVerdict:
    """按顺序检查数值约束并匹配分类情形

    Returns:
        ProfileVerdict: 唯一匹配的情形；否则为全部违反的规则
    """
    violations = _global_violations(p)
    if violations:
        logging.info(f"曲面数据违反约束: {violations}")
        return ProfileVerdict(None, violations)

    matches = [record for record in _THEOREM_TABLE if _matches(record, p)]
    if not matches:
        return ProfileVerdict(None, [RULE_NO_CASE])
    if len(matches) > 1:
        ids = ", ".join(record.case_id for record in matches)
        logging.info(f"曲面数据同时符合多个情形: {ids}")
        return ProfileVerdict(None, [f"{RULE_AMBIGUOUS}: {ids}"])

    logging.info(f"曲面数据归入情形 {matches[0].case_id}")
    return ProfileVerdict(matches[0], [])


def profile_from_chain(config: CoverConfig, result: CoverResult) -> SurfaceProfile:
    """由覆盖计算链的输入与结果构造分类所需的曲面数据

    底曲面视为商曲面的极小模型 P，δ 的数值取 K·L。
    """
    if result.pg is None or result.q is None:
        raise InconsistentInvariantsError("计算链没有给出 p_g 与 q，无法分类")
    base = config.base
    kod = config.kod_quotient if config.kod_quotient is not None else base.kod
    quotient = SurfaceInvariants(base.K2, base.chi, base.pg, base.q, kod)
    return SurfaceProfile(
        KS2=result.KS2,
        pg=result.pg,
        q=result.q,
        quotient=quotient,
        r_list=list(result.r_list),
        KPdelta=config.branch.KL,
        has_genus2_fibration=config.has_genus2_fibration,
        phi2_birational=config.phi2_birational,
        deg_phi2=config.deg_phi2,
    )


# ═════════════════════════════ 数值推论 ═════════════════════════════

def enriques_exclusion(KS2: int) -> int:
    """商曲面为 Enriques 曲面时的 B̄′²

    此时 t = K_S² + 4，B̄′² = −8 + 2t = 2K_S² > 0，与负半定性矛盾。
    """
    if not 2 <= KS2 <= 9:
        raise OutOfRangeError(f"K_S² 必须在 [2, 9] 内: {KS2}")
    t = nodes_count(KS2, chiW=1, chiS=1, h0_2KL=0)
    return -8 + 2 * t


def phi2_degree_relation(KS2: int, image_degree: int) -> int:
    """deg φ₂ = (2K_S)² / deg φ₂(S)"""
    if image_degree < 1:
        raise OutOfRangeError(f"像次数必须 ≥ 1: {image_degree}")
    if (4 * KS2) % image_degree != 0:
        raise InconsistentInvariantsError(f"像次数 {image_degree} 不整除 (2K_S)² = {4 * KS2}")
    return 4 * KS2 // image_degree


def case_one_K2(Bbar2: int) -> int:
    """商曲面为一般型时 K_S² = (4 + B̄′²)/2"""
    if (4 + Bbar2) % 2 != 0:
        raise InconsistentInvariantsError(f"B̄′² = {Bbar2} 为奇数")
    return (4 + Bbar2) // 2


def case_two_K2(Bbar2: int) -> int:
    """商曲面 Kod = 1 时 2K_S² = 8 + B̄′²，且 B̄′² ≤ 0"""
    if Bbar2 > 0:
        raise OutOfRangeError(f"只有可忽略奇点时 B̄′² ≤ 0，得到 {Bbar2}")
    if (8 + Bbar2) % 2 != 0:
        raise InconsistentInvariantsError(f"B̄′² = {Bbar2} 为奇数")
    return (8 + Bbar2) // 2


def bicanonical_target_dim(KS2: int, chi: int) -> int:
    """双典范映射的目标射影空间维数 h⁰(2K) − 1 = K² + χ − 1"""
    return KS2 + chi - 1


def k3_even_node_set(n: int) -> bool:
    """K3 曲面上 n 个结点的 (−2) 曲线之和能否被 2 整除"""
    if not 0 <= n <= 16:
        raise OutOfRangeError(f"K3 曲面最多 16 个结点: {n}")
    return n in (0, 8, 16)


def classify_summary(verdict: ProfileVerdict, profile: SurfaceProfile) -> Dict[str, Any]:
    """分类结论的 JSON 形式"""
    return {
        "verdict": verdict.to_dict(),
        "profile": profile.to_dict(),
        "kod_quotient": format_kod(profile.quotient.kod),
        "bicanonical_target_dim": bicanonical_target_dim(profile.KS2, profile.chiS),
    }

