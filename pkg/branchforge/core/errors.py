"""
异常类型模块
branchforge 各层共享的异常层次结构
"""

from typing import Any, Optional, Sequence


class BranchForgeError(Exception):
    """所有 branchforge 异常的基类"""


# ───────────────────────────── 精确算术 ─────────────────────────────

class FieldMismatchError(BranchForgeError, ValueError):
    """不同数域的元素混合运算"""


class InvalidMinimalPolynomialError(BranchForgeError, ValueError):
    """极小多项式不是首一多项式或次数为0"""


class NonInvertibleError(BranchForgeError, ZeroDivisionError):
    """元素与极小多项式不互素，无法求逆"""

    def __init__(self, factor: Sequence[Any], message: Optional[str] = None):
        self.factor = tuple(factor)
        super().__init__(message or f"元素不可逆，发现极小多项式的因子(系数由低到高): {list(map(str, self.factor))}")


# ───────────────────────────── 多项式 ─────────────────────────────

class PolynomialSyntaxError(BranchForgeError, ValueError):
    """表达式语法错误"""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (位置 {position})")


class UnknownVariableError(BranchForgeError, ValueError):
    """未声明的变量名"""


class RingMismatchError(BranchForgeError, ValueError):
    """多项式不属于同一个环"""


# ───────────────────────────── 理想与概形 ─────────────────────────────

class PositiveDimensionalError(BranchForgeError, ValueError):
    """要求零维理想却得到正维数理想"""


class ExtensionMismatchError(BranchForgeError, ValueError):
    """给定的扩域极小多项式不整除任何一元消元多项式"""


class IncompleteSolutionError(BranchForgeError, ArithmeticError):
    """一元因子的根无法在数域中全部找出，不能给出完整解集"""

    def __init__(self, factor: Sequence[Any], message: Optional[str] = None):
        self.factor = tuple(factor)
        super().__init__(message or f"未能分解的因子(系数由低到高): {list(map(str, self.factor))}")


class DeadlineExceeded(BranchForgeError, TimeoutError):
    """长时间计算超过截止时间(协作式取消)"""


class SingularPointError(BranchForgeError, ValueError):
    """在奇点处请求切空间"""


class NotOnSchemeError(BranchForgeError, ValueError):
    """点不在概形上"""


class AmbientMismatchError(BranchForgeError, ValueError):
    """两个概形的外围空间不一致"""


class ImageDimensionError(BranchForgeError, ValueError):
    """有理映射的像维数低于源的维数"""


class ImageDegreeMismatchError(BranchForgeError, ArithmeticError):
    """两条像次数计算路线结果不一致"""


# ───────────────────────────── 不变量 ─────────────────────────────

class ParityError(BranchForgeError, ValueError):
    """分歧数据不满足 2L ≡ B 所要求的奇偶性"""


class InconsistentInvariantsError(BranchForgeError, ArithmeticError):
    """不变量相互矛盾(如结点数为负、整除性失败)"""


class TreeError(BranchForgeError, ValueError):
    """无穷近点树不合法"""


class OutOfRangeError(BranchForgeError, ValueError):
    """参数超出允许范围"""


# ───────────────────────────── 配置与流程 ─────────────────────────────

class ConfigSchemaError(BranchForgeError, ValueError):
    """配置文件不符合约定格式"""


class GoldenMismatchError(BranchForgeError, AssertionError):
    """阶段输出与金标准值不一致"""


class CheckFailedError(BranchForgeError, AssertionError):
    """阶段内的精确校验(证书)不成立"""
