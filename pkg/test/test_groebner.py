from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
import sympy

import branchforge.algebra.groebner as groebner_module
from branchforge.algebra.exactfield import QQ, cyclotomic_field, nf_create, upoly_mul
from branchforge.algebra.groebner import (
    Deadline,
    Ideal,
    clear_cache,
    colon,
    dimension,
    eliminate,
    field_roots,
    groebner_basis,
    hilbert_numerator,
    normal_form,
    ideal_intersection,
    power_of_linear_root,
    projective_dim_degree,
    saturate,
    solve_zero_dim,
    support_certificate,
    univariate_eliminant,
    zero_dim_degree,
)
from branchforge.algebra.multipoly import GREVLEX, Ring, canonical_form, format_poly, linear_resultant, parse
from branchforge.core.errors import (
    DeadlineExceeded,
    ExtensionMismatchError,
    IncompleteSolutionError,
    PositiveDimensionalError,
    RingMismatchError,
)


@pytest.fixture
def xy():
    return Ring(QQ, ("x", "y"))


def _canonical_set(polys):
    return {canonical_form(p) for p in polys}


def _from_sympy(exprs, ring):
    return [parse(str(sympy.expand(e)), ring) for e in exprs]


def test_reduced_basis_circle_line(xy):
    ideal = Ideal.from_strings(xy, ["x^2 + y^2 - 1", "x - y"])
    gb = groebner_basis(ideal)
    assert set(gb) == {parse("x - y", xy), parse("y^2 - 1/2", xy)}
    assert ideal.contains(parse("x^2 - y^2", xy))
    assert not ideal.contains(parse("x", xy))
    assert dimension(ideal) == 0
    assert zero_dim_degree(ideal) == 2


def test_matches_sympy_groebner():
    ring = Ring(QQ, ("x", "y", "z"))
    texts = ["x^2*y - z", "x*y^2 - x", "z^2 - y"]
    ours = groebner_basis(Ideal.from_strings(ring, texts))
    x, y, z = sympy.symbols("x y z")
    expected = sympy.groebner([x ** 2 * y - z, x * y ** 2 - x, z ** 2 - y], x, y, z, order="grevlex")
    assert _canonical_set(ours) == _canonical_set(_from_sympy(expected.exprs, ring))


def test_eliminate_matches_sympy_resultant():
    ring = Ring(QQ, ("t", "x", "y"))
    ideal = Ideal.from_strings(ring, ["x - t^2", "y - t^3"])
    result = eliminate(ideal, ["t"])
    assert result.ring.variables == ("x", "y")
    assert len(result.generators) == 1

    t, x, y = sympy.symbols("t x y")
    oracle = sympy.resultant(x - t ** 2, y - t ** 3, t)
    (expected,) = _from_sympy([oracle], result.ring)
    assert canonical_form(result.generators[0]) == canonical_form(expected)


def test_linear_resultant_matches_sympy():
    ring = Ring(QQ, ("s", "x1", "x2", "x3"))
    f = parse("s^2*x1 + s*x2*x3 + x3^3", ring)
    g = parse("x1*s - x2^2", ring)
    s, x1, x2, x3 = sympy.symbols("s x1 x2 x3")
    oracle = sympy.resultant(s ** 2 * x1 + s * x2 * x3 + x3 ** 3, x1 * s - x2 ** 2, s)
    (expected,) = _from_sympy([oracle], ring)
    assert canonical_form(linear_resultant(f, g, "s")) == canonical_form(expected)


def test_unit_ideal(xy):
    ideal = Ideal.from_strings(xy, ["x", "x - 1"])
    assert ideal.is_unit()
    assert dimension(ideal) == -1
    assert zero_dim_degree(ideal) == 0
    assert len(solve_zero_dim(ideal)) == 0


def test_positive_dimensional_rejected(xy):
    ideal = Ideal.from_strings(xy, ["x*y"])
    assert dimension(ideal) == 1
    with pytest.raises(PositiveDimensionalError):
        zero_dim_degree(ideal)
    with pytest.raises(PositiveDimensionalError):
        solve_zero_dim(ideal)


def test_intersection_colon_saturation(xy):
    x_ideal = Ideal.from_strings(xy, ["x"])
    y_ideal = Ideal.from_strings(xy, ["y"])
    meet = ideal_intersection(x_ideal, y_ideal)
    assert meet.same_as(Ideal.from_strings(xy, ["x*y"]))

    quotient = colon(Ideal.from_strings(xy, ["x*y"]), x_ideal)
    assert quotient.same_as(y_ideal)

    saturated = saturate(Ideal.from_strings(xy, ["x^2*y"]), x_ideal)
    assert saturated.same_as(y_ideal)


@pytest.mark.parametrize(
    "variables, texts, expected",
    [
        (("x", "y", "z"), ["x^2 + y^2 - z^2"], (1, 2)),
        (("x", "y", "z"), ["x", "y"], (0, 1)),
        (("a", "b", "c", "d"), ["a*c - b^2", "b*d - c^2", "a*d - b*c"], (1, 3)),
        (("x", "y", "z", "w"), ["x^4 + y^4 + z^4 + w^4"], (2, 4)),
        (("x", "y", "z"), ["x", "y", "z"], (-1, 0)),
    ],
)
def test_projective_dim_degree(variables, texts, expected):
    ring = Ring(QQ, variables)
    assert projective_dim_degree(Ideal.from_strings(ring, texts)) == expected


def test_projective_requires_homogeneous(xy):
    with pytest.raises(ValueError):
        projective_dim_degree(Ideal.from_strings(xy, ["x^2 - y"]))


def test_hilbert_numerator():
    assert hilbert_numerator([(2, 0, 0)], 3) == [1, 0, -1]
    assert hilbert_numerator([(1, 0), (0, 1)], 2) == [1, -2, 1]
    assert hilbert_numerator([], 3) == [1]


def test_solve_requires_matching_extension(xy):
    ideal = Ideal.from_strings(xy, ["x^2 + y^2 - 1", "x - y"])
    assert len(solve_zero_dim(ideal)) == 0
    with pytest.raises(ExtensionMismatchError):
        solve_zero_dim(ideal, [-2, 0, 1])

    points = solve_zero_dim(ideal, [Fraction(-1, 2), 0, 1])
    assert len(points) == 2
    assert points.format_points() == ["(-r, -r)", "(r, r)"]


def test_solve_rational_points(xy):
    ideal = Ideal.from_strings(xy, ["x^2 - 3*x + 2", "y - x^2"])
    points = solve_zero_dim(ideal)
    assert points.field == QQ
    assert points.format_points() == ["(1, 1)", "(2, 4)"]


def test_univariate_eliminant(xy):
    ideal = Ideal.from_strings(xy, ["x^2 - 2", "y - x"])
    assert univariate_eliminant(ideal, "y") == [-2, 0, 1]


def test_field_roots_over_cyclotomic_field():
    field = cyclotomic_field(6)
    e = field.gen()
    roots = field_roots([1, -1, 1], field)
    assert set(roots) == {e, 1 - e}
    assert field_roots([1, 0, 1], field) == []
    assert field_roots([-2, 1], QQ) == [QQ.from_rational(2)]


def test_support_certificate(xy):
    assert support_certificate(Ideal.from_strings(xy, ["x^2", "y - 1"])) == (0, 1)
    assert support_certificate(Ideal.from_strings(xy, ["x^2 - 1", "y"])) is None
    assert power_of_linear_root([Fraction(c) for c in (-8, 12, -6, 1)]) == 2
    assert power_of_linear_root([Fraction(c) for c in (1, 0, 1)]) is None


def test_expired_deadline():
    clear_cache()
    ring = Ring(QQ, ("x", "y", "z"))
    ideal = Ideal.from_strings(ring, ["x^3 - y*z", "y^3 - x*z", "z^3 - x*y"])
    with pytest.raises(DeadlineExceeded):
        groebner_basis(ideal, deadline=Deadline(-1, "测试"))
    assert not Deadline().expired()
    assert Deadline(3600).remaining() > 0


def test_extension_field_ideal():
    field = nf_create([-2, 0, 1], "r")
    ring = Ring(field, ("x",))
    ideal = Ideal.from_strings(ring, ["x^2 - 2"])
    points = solve_zero_dim(ideal)
    assert points.format_points() == ["(-r)", "(r)"]


def test_normal_form_division(xy):
    f = parse("x^2 + y", xy)
    remainder = normal_form(f, [parse("x - y", xy)])
    assert remainder == parse("y^2 + y", xy)
    assert not normal_form(parse("x^2 - y^2", xy), [parse("x - y", xy), parse("x + y", xy)])
    with pytest.raises(RingMismatchError):
        normal_form(f, [parse("z", Ring(QQ, ("z",)))])


def test_solve_finds_every_root_beyond_restriction_bound():
    field = cyclotomic_field(6)
    e = field.gen()
    ring = Ring(field, ("x",))
    product = "*".join(f"(x - {k}*e)" for k in range(1, 11))
    points = solve_zero_dim(Ideal.from_strings(ring, [product]), max_restriction_solutions=4)
    assert len(points) == 10
    assert {pt[0] for pt in points} == {e * k for k in range(1, 11)}


def test_field_roots_split_by_norm():
    field = nf_create([-2, 0, 1], "r")
    r = field.gen()
    # (x - r - 1)(x + r)(x^2 - 3)，x^2 - 3 在 ℚ(√2) 上不可约
    linear = [-r - 1, field.one()]
    other = [r, field.one()]
    quadratic = [field.from_rational(-3), field.zero(), field.one()]
    poly = upoly_mul(upoly_mul(linear, other), quadratic)
    assert set(field_roots(poly, field)) == {r + 1, -r}


def test_restriction_fallback_and_incomplete_roots(monkeypatch):
    field = cyclotomic_field(6)
    e = field.gen()
    expected = sorted([2 * e - 1, 1 - 2 * e], key=str)
    assert field_roots([3, 0, 1], field) == expected

    monkeypatch.setattr(groebner_module, "_norm_roots", lambda *args, **kwargs: None)
    assert field_roots([3, 0, 1], field) == expected
    with pytest.raises(IncompleteSolutionError) as info:
        field_roots([3, 0, 1], field, max_restriction_solutions=3)
    assert len(info.value.factor) == 3


def test_groebner_cache_is_bounded(xy, monkeypatch):
    clear_cache()
    monkeypatch.setattr(groebner_module, "GB_CACHE_SIZE", 2)
    ideals = [Ideal.from_strings(xy, [f"x^2 - {k}", "y - x"]) for k in range(1, 5)]
    for ideal in ideals:
        groebner_basis(ideal)
    assert len(groebner_module._GB_CACHE) == 2
    # 最近使用的结果保留
    assert groebner_basis(ideals[-1]) is groebner_basis(ideals[-1])
    clear_cache()


def _random_ideal(rng, nvars):
    names = ("x", "y", "z")[:nvars]
    symbols = sympy.symbols(names)
    exprs = []
    for _ in range(int(rng.integers(2, 4))):
        expr = 0
        for _ in range(int(rng.integers(2, 5))):
            degree = int(rng.integers(1, 5))
            cuts = sorted(int(c) for c in rng.integers(0, degree + 1, size=nvars - 1))
            exps = [b - a for a, b in zip([0] + cuts, cuts + [degree])]
            expr += int(rng.integers(-5, 6)) * sympy.Mul(*(s ** e for s, e in zip(symbols, exps)))
        if expr != 0:
            exprs.append(expr)
    if not exprs:
        exprs.append(symbols[0] ** 2 - 1)
    ring = Ring(QQ, names)
    return Ideal(ring, tuple(_from_sympy(exprs, ring)))


def _s_polynomial(f, g):
    ef, cf = f.leading_term(GREVLEX)
    eg, cg = g.leading_term(GREVLEX)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    return (f.mul_term(tuple(a - b for a, b in zip(lcm, ef)), cf.inverse())
            - g.mul_term(tuple(a - b for a, b in zip(lcm, eg)), cg.inverse()))


@pytest.mark.parametrize("seed", [pytest.param(s, marks=pytest.mark.slow) if s >= 5 else s for s in range(50)])
def test_random_groebner_basis_properties(seed):
    rng = np.random.default_rng(seed)
    ideal = _random_ideal(rng, 2 + seed % 2)
    clear_cache()
    gb = groebner_basis(ideal)
    for f, g in combinations(gb, 2):
        assert not normal_form(_s_polynomial(f, g), gb)
    for f in ideal.generators:
        assert not normal_form(f, gb)
    leads = [g.leading_monomial(GREVLEX) for g in gb]
    for g, lm in zip(gb, leads):
        assert g.leading_coefficient(GREVLEX) == 1
        for other in leads:
            if other != lm:
                assert not any(all(a <= b for a, b in zip(other, e)) for e in g.terms)

    # 打乱顺序并做可逆线性组合后重新计算
    gens = list(ideal.generators)
    order = [int(i) for i in rng.permutation(len(gens))]
    shuffled = [gens[i] for i in order]
    shuffled[0] = shuffled[0] + shuffled[-1].scale(int(rng.integers(1, 5)))
    clear_cache()
    assert groebner_basis(Ideal(ideal.ring, tuple(shuffled))) == gb


def _sylvester_resultant(f, g, var):
    fc, gc = sympy.Poly(f, var).all_coeffs(), sympy.Poly(g, var).all_coeffs()
    m, n = len(fc) - 1, len(gc) - 1
    rows = [[0] * i + fc + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + gc + [0] * (m - 1 - i) for i in range(m)]
    return sympy.expand(sympy.Matrix(rows).det(method="berkowitz"))


@pytest.mark.parametrize("seed", range(25))
def test_elimination_matches_sylvester_resultant(seed):
    rng = np.random.default_rng(seed)
    x, y = sympy.symbols("x y")

    def monic_in_x():
        degree = int(rng.integers(1, 4))
        expr = x ** degree
        for i in range(degree):
            for j in range(3):
                expr += int(rng.integers(-3, 4)) * x ** i * y ** j
        return sympy.expand(expr)

    f, g = monic_in_x(), monic_in_x()
    ring = Ring(QQ, ("x", "y"))
    elim = eliminate(Ideal(ring, tuple(_from_sympy([f, g], ring))), ["x"])
    res = _sylvester_resultant(f, g, x)
    if res == 0:
        assert not elim.generators
        return
    (h,) = elim.generators
    h_expr = sympy.sympify(format_poly(h).replace("^", "**"))
    sqf_res, sqf_h = sympy.sqf_part(res, y), sympy.sqf_part(h_expr, y)
    assert sympy.rem(sqf_res, sqf_h, y, domain=sympy.QQ) == 0
    assert sympy.rem(sqf_h, sqf_res, y, domain=sympy.QQ) == 0


@pytest.mark.parametrize("a", range(1, 6))
@pytest.mark.parametrize("b", range(1, 6))
def test_zero_dim_degree_monomial_grid(xy, a, b):
    assert zero_dim_degree(Ideal.from_strings(xy, [f"x^{a}", f"y^{b}"])) == a * b
    assert zero_dim_degree(Ideal.from_strings(xy, [f"x^{a} - y", f"y^{b}"])) == a * b


@pytest.mark.parametrize("seed", range(10))
def test_solutions_satisfy_generators(xy, seed):
    rng = np.random.default_rng(seed)
    xs = [int(v) for v in rng.choice(np.arange(-9, 10), size=3, replace=False)]
    ys = [int(v) for v in rng.integers(-9, 10, size=3)]
    x = xy.gen("x")
    vanish = xy.one()
    interpolant = xy.zero()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        vanish = vanish * (x - xi)
        basis = xy.one()
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * (x - xj).scale(Fraction(1, xi - xj))
        interpolant = interpolant + basis.scale(yi)
    ideal = Ideal(xy, (vanish, xy.gen("y") - interpolant))
    points = solve_zero_dim(ideal)
    assert {(pt[0], pt[1]) for pt in points} == {(QQ.from_rational(a), QQ.from_rational(b))
                                                for a, b in zip(xs, ys)}
    for pt in points:
        assert all(not g.eval_point(pt) for g in ideal.generators)
