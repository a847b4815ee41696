"""
双典范映射次数流水线
把 pt 平移到原点，用切平面形式与全部二次单项式构造 7 个截面，计算像的次数
"""

import logging
from typing import Any, Dict

from ..algebra.groebner import Deadline
from ..algebra.multipoly import extend_field
from ..algebra.schemes import (
    AmbientSpace,
    RationalMap,
    Scheme,
    affine_patch,
    affine_translate,
    compute_image_degree,
    gradient_at,
)
from ..invariants.classify import bicanonical_target_dim, phi2_degree_relation
from .context import PipelineContext, require
from .kummer import SURFACE_VARIABLES
from .quadpoint import CONFIRM, run_confirm

BIDEGREE = "bidegree"


def run_bidegree(ctx: PipelineContext) -> None:
    ctx.once(CONFIRM, run_confirm)

    def translated_patch(deadline: Deadline) -> Dict[str, Any]:
        field = ctx.field("r13")
        ambient = AmbientSpace("projective", SURFACE_VARIABLES, None, field)
        quartic = Scheme.from_polys(ambient, [extend_field(ctx.get("kummer.F"), field)])
        pt = ctx.get("confirm.pt")
        patch = affine_translate(affine_patch(quartic, 3), pt[:3])
        origin = [field.zero()] * 3
        require(patch.contains_point(origin), "平移后原点不在曲面上")
        return {"_patch": patch}

    def sections(deadline: Deadline) -> Dict[str, Any]:
        patch = ctx.get("bidegree.patch")
        ring = patch.ring
        field = ring.field
        j = gradient_at(patch.equations[0], [field.zero()] * ring.nvars)
        require(any(j), "原点是奇点")
        x, y, z = ring.gens()
        tangent = x.scale(j[0]) + y.scale(j[1]) + z.scale(j[2])
        polys = [tangent, x * x, x * y, x * z, y * y, y * z, z * z]
        target = bicanonical_target_dim(ctx.config.invariant("KS2"), ctx.config.invariant("chi"))
        require(len(polys) == target + 1, f"截面个数 {len(polys)} ≠ P^{target} 的坐标个数")
        return {"section_count": len(polys), "_sections": polys}

    def image_degree(deadline: Deadline) -> Dict[str, Any]:
        cfg = ctx.config
        tau = RationalMap(ctx.get("bidegree.patch"), tuple(ctx.get("bidegree.sections")))
        result = compute_image_degree(
            tau,
            route=cfg.image_route,
            elimination_deadline=cfg.stage_deadline("bidegree_elimination"),
            slice_deadline=cfg.stage_deadline("bidegree_slice"),
            seed=cfg.seed,
        )
        logging.info(f"像次数 {result.degree}，路线 {result.route}")
        return {"image_degree": result.degree, "image_dimension": result.dimension}

    def phi2_degree(deadline: Deadline) -> Dict[str, Any]:
        degree = phi2_degree_relation(ctx.config.invariant("KS2"), ctx.get("bidegree.image_degree"))
        return {"phi2_degree": degree}

    ctx.run_stage(BIDEGREE, "translated_patch", translated_patch, inputs=["kummer.F", "confirm.pt"])
    ctx.run_stage(BIDEGREE, "sections", sections, inputs=["bidegree.patch"])
    ctx.run_stage(BIDEGREE, "image_degree", image_degree, inputs=["bidegree.sections"])
    ctx.run_stage(BIDEGREE, "phi2_degree", phi2_degree, inputs=["bidegree.image_degree"])
