from fractions import Fraction

import numpy as np
import pytest

from branchforge.algebra.exactfield import (
    QQ,
    Matrix,
    cyclotomic_field,
    cyclotomic_polynomial,
    mat_kernel,
    mat_rank,
    nf_arith,
    nf_create,
    parse_rational,
    rat_arith,
    rational_roots,
    to_rational,
    upoly_mul,
    upoly_sub,
    upoly_xgcd,
)
from branchforge.core.errors import FieldMismatchError, InvalidMinimalPolynomialError, NonInvertibleError


@pytest.fixture
def sqrt2():
    return nf_create([-2, 0, 1], "r")


@pytest.mark.parametrize(
    "a, b, op, expected",
    [
        ("1/2", 3, "add", Fraction(7, 2)),
        ("1/2", "1/3", "sub", Fraction(1, 6)),
        (Fraction(-2, 3), "9/4", "mul", Fraction(-3, 2)),
        (5, "10/3", "div", Fraction(3, 2)),
    ],
)
def test_rat_arith(a, b, op, expected):
    assert rat_arith(a, b, op) == expected


def test_rational_parsing_errors():
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "div")
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("0.5")
    with pytest.raises(TypeError):
        to_rational(1.5)
    with pytest.raises(TypeError):
        to_rational(True)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(6) == [1, -1, 1]
    assert cyclotomic_polynomial(4) == [1, 0, 1]
    assert cyclotomic_polynomial(3) == [1, 1, 1]


def test_sixth_root_of_unity():
    field = cyclotomic_field(6)
    e = field.gen()
    assert field.degree == 2
    assert e ** 6 == 1
    assert e ** 3 == -1
    assert e ** 2 == e - 1
    assert e * e.inverse() == field.one()
    assert e ** -1 == 1 - e


def test_field_inverse_and_division(sqrt2):
    r = sqrt2.gen()
    assert r * r == 2
    assert (1 + r).inverse() == r - 1
    assert (r + 3) / (r + 3) == 1
    assert nf_arith(r, r, "mul") == sqrt2.from_rational(2)
    with pytest.raises(ZeroDivisionError):
        sqrt2.zero().inverse()


def test_element_reduces_modulo_min_poly(sqrt2):
    assert sqrt2.element([1, 0, 1]) == 3
    assert sqrt2.element([0, 0, 0, 1]) == sqrt2.element([0, 2])


def test_non_invertible_reports_factor():
    reducible = nf_create([-1, 0, 1], "u")
    u = reducible.gen()
    with pytest.raises(NonInvertibleError) as info:
        (u - 1).inverse()
    assert info.value.factor == (Fraction(-1), Fraction(1))


def test_nf_create_validation():
    assert nf_create([-3, 1]) is QQ
    with pytest.raises(InvalidMinimalPolynomialError):
        nf_create([1, 0, 2])
    with pytest.raises(InvalidMinimalPolynomialError):
        nf_create([5])


def test_mixing_fields(sqrt2):
    e = cyclotomic_field(6).gen()
    r = sqrt2.gen()
    with pytest.raises(FieldMismatchError):
        _ = e + r
    with pytest.raises(FieldMismatchError):
        nf_arith(QQ.one(), r, "add")
    lifted = QQ.from_rational(Fraction(1, 2)) + r
    assert lifted.field == sqrt2
    assert lifted == sqrt2.element([Fraction(1, 2), 1])


def test_element_format(sqrt2):
    x = sqrt2.element([3, Fraction(1, 2)])
    assert x.format() == "1/2*r + 3"
    assert x.format(spaced=False) == "1/2*r+3"
    assert (-sqrt2.gen()).format() == "-r"
    assert QQ.from_rational(Fraction(-7, 3)).format() == "-7/3"


@pytest.mark.parametrize(
    "coeffs, expected",
    [
        ([-6, 11, -6, 1], [1, 2, 3]),
        ([1, -3, 2], [Fraction(1, 2), 1]),
        ([0, 0, 1], [0]),
        ([2, 0, 1], []),
        ([-1, 0, 0, 0, 1], [-1, 1]),
        # (x − 2)²(x + 1/3)
        (["4/3", "8/3", "-11/3", 1], [Fraction(-1, 3), 2]),
    ],
)
def test_rational_roots(coeffs, expected):
    assert rational_roots(coeffs) == expected


def test_upoly_xgcd_bezout():
    a = [Fraction(c) for c in (-1, 0, 0, 1)]
    b = [Fraction(c) for c in (-1, 0, 1)]
    g, s, t = upoly_xgcd(a, b)
    assert g == [-1, 1]
    combination = upoly_sub(upoly_mul(s, a), [-c for c in upoly_mul(t, b)])
    assert combination == g


def test_matrix_kernel_and_rank():
    m = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    assert mat_rank(m) == 1
    kernel = mat_kernel(m)
    assert len(kernel) == 2
    for vector in kernel:
        assert all(v == 0 for v in m.apply(vector))


def test_matrix_over_number_field(sqrt2):
    r = sqrt2.gen()
    m = Matrix.from_rows([[1, r], [r, 2]], field=sqrt2)
    assert mat_rank(m) == 1
    (vector,) = mat_kernel(m)
    assert all(v == 0 for v in m.apply(vector))
    identity = Matrix.from_rows([[1, 0], [0, 1]], field=sqrt2)
    assert mat_kernel(identity) == []


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_field_elements_invert(seed):
    rng = np.random.default_rng(seed)
    field = nf_create([-2, 0, 0, 0, 1], "w")
    for _ in range(5):
        coeffs = [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(4)]
        x = field.element(coeffs)
        if not x:
            continue
        assert x * x.inverse() == field.one()
        assert (x * x) / x == x


PROPERTY_FIELDS = {
    "QQ": lambda: QQ,
    "sqrt2": lambda: nf_create([-2, 0, 1], "r"),
    "cyclotomic6": lambda: cyclotomic_field(6),
    "quartic": lambda: nf_create([-2, 0, 0, 0, 1], "w"),
    "r13": lambda: nf_create([Fraction(3, 32), 0, Fraction(1, 4), 1, 1], "r13"),
}


def _random_element(rng, field):
    return field.element([Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9)))
                          for _ in range(field.degree)])


@pytest.mark.parametrize("name", sorted(PROPERTY_FIELDS))
@pytest.mark.parametrize("samples", [50, pytest.param(1000, marks=pytest.mark.slow)])
def test_field_axioms(name, samples):
    field = PROPERTY_FIELDS[name]()
    rng = np.random.default_rng(samples)
    zero, one = field.zero(), field.one()
    for _ in range(samples):
        a, b, c = (_random_element(rng, field) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert a - a == zero
        if a:
            assert a * a.inverse() == one
            assert (b / a) * a == b


@pytest.mark.parametrize("seed", range(10))
def test_kernel_dimension_matches_rank(seed):
    rng = np.random.default_rng(seed)
    field = cyclotomic_field(6)
    rows, cols = int(rng.integers(1, 5)), int(rng.integers(1, 6))
    base = [[_random_element(rng, field) for _ in range(cols)] for _ in range(max(rows - 1, 1))]
    # 追加一行为已有两行之和，使矩阵不满秩
    if rows > 1:
        base.append([x + y for x, y in zip(base[0], base[-1])])
    m = Matrix.from_rows(base, field=field, cols=cols)
    kernel = mat_kernel(m)
    assert len(kernel) == cols - mat_rank(m)
    for vector in kernel:
        assert all(not v for v in m.apply(vector))
