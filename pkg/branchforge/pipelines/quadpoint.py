"""
四重点流水线
quadpoint: 寻找二次曲面 H = h1 + b·h2 + c·h3，使 Q ∩ H 在平面上的投影有四重点
confirm: 对给定的 (b, c) 精确验证四重点、pt 的光滑性以及切平面的支撑
"""

import logging
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Tuple

from ..algebra.exactfield import QQ, FieldElement
from ..algebra.groebner import Deadline, Ideal, dimension, solve_zero_dim, support_certificate, zero_dim_degree
from ..algebra.multipoly import (
    Polynomial,
    Ring,
    change_ring,
    dehomogenize,
    divides,
    embed,
    extend_field,
    homogenize,
    linear_resultant,
    restrict,
)
from ..algebra.schemes import (
    AmbientSpace,
    Scheme,
    affine_patch,
    is_empty,
    meet,
    multiplicity_at,
    singular_subscheme,
    squarefree_part,
    tangent_space,
)
from .context import PipelineContext, require
from .kummer import NODES8, SURFACE_VARIABLES, run_nodes8, surface_ring

QUADPOINT = "quadpoint"
CONFIRM = "confirm"
QUADRUPLE = 4


def eliminate_s(f: Polynomial, quadric: Polynomial) -> Polynomial:
    """H 关于 s 一次，系数 ℓ 为线性型；ℓ 不整除结式时结式生成消元理想"""
    res = linear_resultant(f, quadric, "s")
    lead = quadric.coefficients_in("s")[1]
    require(not divides(lead, res), f"s 的系数 {lead} 整除结式，结式不生成消元理想")
    return res


def multiplicity_equations(q: Polynomial, variables: Tuple[str, ...], order: int) -> List[Polynomial]:
    """q 及其关于 variables 的直到 order 阶偏导数：要求这些全为零即要求重数 > order"""
    equations = [q]
    for k in range(1, order + 1):
        for combo in combinations_with_replacement(variables, k):
            d = q
            for name in combo:
                d = d.derivative(name)
            equations.append(d)
    return equations


def run_quadpoint(ctx: PipelineContext) -> None:
    ctx.once(NODES8, run_nodes8)
    family_ring = Ring(QQ, ("b", "c") + SURFACE_VARIABLES)
    plane_ring = Ring(QQ, ("B", "C", "X1", "X2"))

    def quadric_family(deadline: Deadline) -> Dict[str, Any]:
        h1, h2, h3 = (ctx.polynomial(key, family_ring) for key in ("h1", "h2", "h3"))
        b, c = family_ring.gen("b"), family_ring.gen("c")
        quadric = h1 + b * h2 + c * h3
        res = eliminate_s(embed(ctx.get("kummer.F"), family_ring), quadric)
        q0 = dehomogenize(res, "x3")
        B, C, X1, X2 = plane_ring.gens()
        zero = plane_ring.zero()
        q = change_ring(q0, plane_ring, [B, C, zero, X1, X2, zero])
        equations = multiplicity_equations(q, ("X1", "X2"), QUADRUPLE - 1)
        return {"equation_count": len(equations), "_equations": equations}

    def zero_dimensional(deadline: Deadline) -> Dict[str, Any]:
        ideal = Ideal(plane_ring, tuple(ctx.get("quadpoint.equations")))
        dim = dimension(ideal, deadline)
        require(dim == 0, f"四重点方程组的维数应为 0，得到 {dim}")
        count = zero_dim_degree(ideal, deadline)
        logging.info(f"四重点方程组有 {count} 个解(计重数)")
        return {"dimension": dim, "solution_count": count}

    def verify_solution(deadline: Deadline) -> Dict[str, Any]:
        field = ctx.field("r13")
        b, c = ctx.element("b", field), ctx.element("c", field)
        point_ring = Ring(field, ("X1", "X2"))
        substituted = []
        for eq in ctx.get("quadpoint.equations"):
            specialized = eq.evaluate({"B": b, "C": c})
            substituted.append(restrict(specialized, point_ring))
        points = solve_zero_dim(Ideal(point_ring, tuple(substituted)),
                                max_restriction_solutions=ctx.config.max_restriction_solutions,
                                deadline=deadline)
        require(len(points) >= 1, "给定的 (b, c) 下没有四重点")
        for pt in points:
            for eq in substituted:
                require(not eq.eval_point(pt), f"点 {pt} 不满足 {eq}")
        return {"b": b, "c": c, "plane_points": len(points), "_plane_point": points.points[0]}

    ctx.run_stage(QUADPOINT, "quadric_family", quadric_family, inputs=["kummer.F"])
    ctx.run_stage(QUADPOINT, "zero_dimensional", zero_dimensional, inputs=["quadpoint.equations"])
    ctx.run_stage(QUADPOINT, "verify_solution", verify_solution, inputs=["quadpoint.equations"])


def quadric_over(ctx: PipelineContext) -> Polynomial:
    """Q 所在环扩张到 r13 上的 H"""
    field = ctx.field("r13")
    ring = surface_ring()
    h1, h2, h3 = (extend_field(ctx.polynomial(key, ring), field) for key in ("h1", "h2", "h3"))
    b, c = ctx.get("quadpoint.b"), ctx.get("quadpoint.c")
    return h1 + h2.scale(b) + h3.scale(c)


def lift_point(quadric: Polynomial, plane_point: Tuple[FieldElement, ...]) -> Tuple[FieldElement, ...]:
    """平面点 (x1, x2) 沿 H 提升：s = −h₀/ℓ，其中 H = ℓ·s + h₀"""
    parts = quadric.coefficients_in("s")
    lead = parts[1]
    tail = parts.get(0, quadric.ring.zero())
    zero = quadric.ring.field.zero()
    one = quadric.ring.field.one()
    pt = (zero, plane_point[0], plane_point[1], one)
    denominator = lead.eval_point(pt)
    require(bool(denominator), "ℓ 在平面点处为零，无法沿 H 提升")
    return (-tail.eval_point(pt) / denominator, plane_point[0], plane_point[1], one)


def run_confirm(ctx: PipelineContext) -> None:
    ctx.once(QUADPOINT, run_quadpoint)

    def setup():
        field = ctx.field("r13")
        surface = surface_ring().with_field(field)
        ambient = AmbientSpace("projective", SURFACE_VARIABLES, None, field)
        return field, surface, ambient

    def plane_model(deadline: Deadline) -> Dict[str, Any]:
        field, _, _ = setup()
        quadric = quadric_over(ctx)
        quartic = extend_field(ctx.get("kummer.F"), field)
        curve = restrict(eliminate_s(quartic, quadric), Ring(field, ("x1", "x2", "x3")))
        affine = restrict(dehomogenize(curve, "x3"), Ring(field, ("x1", "x2")))
        reduced = squarefree_part(affine)
        return {"plane_degree": curve.total_degree(), "_H": quadric, "_curve": reduced}

    def singular_point(deadline: Deadline) -> Dict[str, Any]:
        field, _, _ = setup()
        reduced = ctx.get("confirm.curve")
        plane = AmbientSpace("affine", ("x1", "x2"), None, field)
        sing = singular_subscheme(Scheme.from_polys(plane, [reduced]))
        point = support_certificate(sing.ideal, deadline)
        require(point is not None, "约化平面曲线的奇点不唯一(或不是零维)")

        projective_plane = AmbientSpace("projective", ("x1", "x2", "x3"), None, field)
        closure = homogenize(embed(reduced, projective_plane.ring), "x3")
        at_infinity = meet(singular_subscheme(Scheme.from_polys(projective_plane, [closure])),
                           Scheme.from_polys(projective_plane, [projective_plane.ring.gen("x3")]))
        empty = is_empty(at_infinity, deadline)
        require(empty, "约化平面曲线在无穷远处有奇点")

        mult = multiplicity_at(reduced, point)
        require(mult == QUADRUPLE, f"奇点的重数应为 {QUADRUPLE}，得到 {mult}")
        expected = ctx.get("quadpoint.plane_point")
        require(tuple(point) == tuple(expected), f"奇点 {point} 与四重点方程组的解 {expected} 不一致")
        return {"singular_points": 1, "singular_at_infinity": not empty,
                "multiplicity": mult, "_singular_point": point}

    def smooth_on_quartic(deadline: Deadline) -> Dict[str, Any]:
        field, _, ambient = setup()
        quadric = ctx.get("confirm.H")
        pt = lift_point(quadric, ctx.get("confirm.singular_point"))
        quartic = extend_field(ctx.get("kummer.F"), field)
        on_quartic = not quartic.eval_point(pt)
        require(on_quartic, "提升后的点不在 Q 上")
        require(not quadric.eval_point(pt), "提升后的点不在 H 上")
        tangent = tangent_space(Scheme.from_polys(ambient, [quartic]), pt)
        logging.info(f"pt = ({', '.join(c.format(spaced=False) for c in pt)})")
        return {"pt_on_quartic": on_quartic, "pt_singular": False, "_pt": pt, "_tangent": tangent}

    def tangent_support(deadline: Deadline) -> Dict[str, Any]:
        field, surface, ambient = setup()
        quartic = extend_field(ctx.get("kummer.F"), field)
        tangent = ctx.get("confirm.tangent")
        pt = ctx.get("confirm.pt")
        scheme = Scheme.from_polys(ambient, [quartic, ctx.get("confirm.H"), tangent ** 2])
        support = support_certificate(affine_patch(scheme, 3).ideal, deadline)
        require(support is not None, "⟨F, H, T²⟩ 在 x3 = 1 上的支撑不唯一")
        require(tuple(support) == tuple(pt[:3]), f"⟨F, H, T²⟩ 支撑于 {support}，而不是 pt")
        at_infinity = meet(scheme, Scheme.from_polys(ambient, [surface.gen("x3")]))
        empty = is_empty(at_infinity, deadline)
        require(empty, "⟨F, H, T²⟩ 在 x3 = 0 上有点")
        return {"support_points": 1, "support_at_infinity": not empty}

    ctx.run_stage(CONFIRM, "plane_model", plane_model, inputs=["kummer.F", "quadpoint.b", "quadpoint.c"])
    ctx.run_stage(CONFIRM, "singular_point", singular_point, inputs=["confirm.curve"])
    ctx.run_stage(CONFIRM, "smooth_on_quartic", smooth_on_quartic, inputs=["confirm.H", "confirm.singular_point"])
    ctx.run_stage(CONFIRM, "tangent_support", tangent_support, inputs=["confirm.tangent", "confirm.pt"])
