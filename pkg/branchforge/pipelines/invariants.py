"""
不变量流水线
读取覆盖计算链的 JSON 配置，运行计算链与分类，并与 golden/invariants/<配置名>/ 比对
"""

from pathlib import Path
from typing import Any, Dict

from ..algebra.groebner import Deadline
from ..core.errors import ConfigSchemaError
from ..invariants.classify import check_profile, profile_from_chain
from ..invariants.covers import load_cover_config, run_chain
from .context import PipelineContext

INVARIANTS = "invariants"


def chain_outputs(result) -> Dict[str, Any]:
    """计算链结果中写入报告的整数与布尔值"""
    outputs: Dict[str, Any] = {
        "KV2": result.KV2,
        "KS2": result.KS2,
        "chiS": result.chiS,
    }
    if result.r_list:
        outputs["r_list"] = " ".join(map(str, result.r_list))
    optional = {
        "pg": result.pg,
        "q": result.q,
        "t": result.t_check,
        "bicanonical_composed": result.bicanonical_composed,
        "mrg2_holds": result.mrg2_holds,
    }
    outputs.update({k: v for k, v in optional.items() if v is not None})
    if result.construction is not None:
        outputs["KW2"] = result.construction.KS2
        outputs["chiW"] = result.construction.chiS
    return outputs


def run_invariants(ctx: PipelineContext) -> None:
    path = ctx.config.covers_config
    golden_subdir = f"{INVARIANTS}/{Path(path).stem}" if path else INVARIANTS

    def load(deadline: Deadline) -> Dict[str, Any]:
        if not path:
            raise ConfigSchemaError("invariants 流水线需要 config=<覆盖计算链 JSON 路径>")
        return {"_config": load_cover_config(path)}

    def chain(deadline: Deadline) -> Dict[str, Any]:
        result = run_chain(ctx.get("invariants.config"))
        outputs = chain_outputs(result)
        outputs["_result"] = result
        return outputs

    def classify(deadline: Deadline) -> Dict[str, Any]:
        profile = profile_from_chain(ctx.get("invariants.config"), ctx.get("invariants.result"))
        verdict = check_profile(profile)
        outputs: Dict[str, Any] = {"case": verdict.case.case_id if verdict.case else "none"}
        if verdict.violations:
            outputs["violations"] = "\n".join(verdict.violations)
        return outputs

    ctx.run_stage(INVARIANTS, "load", load, golden_subdir=golden_subdir)
    ctx.run_stage(INVARIANTS, "chain", chain, inputs=["invariants.config"], golden_subdir=golden_subdir)
    ctx.run_stage(INVARIANTS, "classify", classify, inputs=["invariants.result"],
                  golden_subdir=golden_subdir)
