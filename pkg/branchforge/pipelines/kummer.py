"""
Kummer 四次曲面流水线
kummer: 由分圆域上的六次形式经反投影得到 Kummer 曲面 Q
nodes8: Q 的 16 个结点、两个 trope 以及过其中 8 个结点的二次曲面线性系统
"""

import logging
from typing import Any, Dict

from ..algebra.exactfield import QQ
from ..algebra.groebner import Deadline, Ideal, eliminate
from ..algebra.multipoly import Polynomial, Ring, canonical_form, embed
from ..algebra.schemes import (
    AmbientSpace,
    Scheme,
    descend_to_rationals,
    difference,
    linear_system,
    meet,
    projective_points,
    same_span,
    scheme_length,
    singular_subscheme,
    union,
)
from .context import PipelineContext, require

KUMMER = "kummer"
NODES8 = "nodes8"

SURFACE_VARIABLES = ("s", "x1", "x2", "x3")


def sextic_form(ctx: PipelineContext) -> Polynomial:
    """g = ∏_{i=0..5} (e^{2i}·x1 − 2e^i·x2 + x3)，e 为六次本原单位根"""
    field = ctx.field("K")
    ring = Ring(field, ("x1", "x2", "x3"))
    x1, x2, x3 = ring.gens()
    e = field.gen()
    g = ring.one()
    for i in range(6):
        g = g * (x1.scale(e ** (2 * i)) - x2.scale(2 * e ** i) + x3)
    return g


def surface_ring() -> Ring:
    return Ring(QQ, SURFACE_VARIABLES)


def run_kummer(ctx: PipelineContext) -> None:
    """反投影重构 Kummer 曲面方程"""
    weighted = Ring(QQ, ("z", "s", "x1", "x2", "x3"), (3, 1, 1, 1, 1))

    def g_rational(deadline: Deadline) -> Dict[str, Any]:
        g = sextic_form(ctx)
        rational = all(c.is_rational() for c in g.terms.values())
        require(rational, f"g 的系数不全是有理数: {g}")
        return {"g_rational": rational, "g": descend_to_rationals(g)}

    def abde_identity(deadline: Deadline) -> Dict[str, Any]:
        g = embed(ctx.get("kummer.g"), weighted)
        z = weighted.gen("z")
        a, b, d, e = (ctx.polynomial(key, weighted) for key in ("A", "B", "D", "E"))
        identity = z ** 2 - g == a * b + d * e
        require(identity, "z² − g ≠ AB + DE")
        return {"abde_identity": identity}

    def unprojection(deadline: Deadline) -> Dict[str, Any]:
        a, b, d, e = (ctx.polynomial(key, weighted) for key in ("A", "B", "D", "E"))
        s = weighted.gen("s")
        # B·s = D, E·s = −A
        ideal = Ideal(weighted, (s * b - d, s * e + a))
        return {"_unprojection": ideal}

    def eliminate_z(deadline: Deadline) -> Dict[str, Any]:
        result = eliminate(ctx.get("kummer.unprojection"), ("z",), deadline)
        require(len(result.generators) == 1, f"消元理想应为主理想，得到 {len(result.generators)} 个生成元")
        f = embed(result.generators[0], surface_ring())
        expected = ctx.polynomial("F", surface_ring())
        require(canonical_form(f) == canonical_form(expected), f"消元结果 {f} 与给定的 F 不成比例")
        logging.info(f"Kummer 曲面方程: {canonical_form(f)}")
        return {"F": f}

    ctx.run_stage(KUMMER, "g_rational", g_rational)
    ctx.run_stage(KUMMER, "abde_identity", abde_identity, inputs=["kummer.g"])
    ctx.run_stage(KUMMER, "unprojection", unprojection)
    ctx.run_stage(KUMMER, "eliminate", eliminate_z, inputs=["kummer.unprojection"])


def run_nodes8(ctx: PipelineContext) -> None:
    """两个 trope 之外的 8 个结点与过它们的二次曲面"""
    ctx.once(KUMMER, run_kummer)
    ring = surface_ring()
    ambient = AmbientSpace("projective", SURFACE_VARIABLES, None, ring.field)

    def singular_locus(deadline: Deadline) -> Dict[str, Any]:
        quartic = Scheme.from_polys(ambient, [ctx.get("kummer.F")])
        sq = singular_subscheme(quartic)
        length = scheme_length(sq, deadline)
        require(length == 16, f"Kummer 曲面应有 16 个结点，奇异子概形长度为 {length}")
        return {"SQ_length": length, "_SQ": sq}

    def node_difference(deadline: Deadline) -> Dict[str, Any]:
        t1 = Scheme.from_polys(ambient, [ctx.polynomial("T1", ring)])
        t2 = Scheme.from_polys(ambient, [ctx.polynomial("T2", ring)])
        sq = ctx.get("nodes8.SQ")
        nodes = difference(meet(union(t1, t2, deadline), sq), meet(t1, t2), deadline)
        points = projective_points(nodes, ctx.field("K"), ctx.config.max_restriction_solutions, deadline)
        require(len(points) == 8, f"差集概形应有 8 个点，得到 {len(points)}")
        for pt in points.format_points():
            logging.debug(f"结点: {pt}")
        return {"N_points": len(points), "_points": points}

    def quadric_system(deadline: Deadline) -> Dict[str, Any]:
        points = ctx.get("nodes8.points")
        sections = linear_system(ambient, 2, [(pt, 1) for pt in points])
        require(len(sections) == 3, f"过 8 个结点的二次曲面应有 3 个截面，得到 {len(sections)}")
        printed = [ctx.polynomial(key, ring) for key in ("h1", "h2", "h3")]
        sections = [embed(p, ring) for p in sections]
        require(same_span(sections, printed), "线性系统与 h1, h2, h3 张成的空间不同")
        return {"quadric_dimension": len(sections), "sections": sections}

    ctx.run_stage(NODES8, "singular_locus", singular_locus, inputs=["kummer.F"])
    ctx.run_stage(NODES8, "node_difference", node_difference, inputs=["nodes8.SQ"])
    ctx.run_stage(NODES8, "quadric_system", quadric_system, inputs=["nodes8.points"])
