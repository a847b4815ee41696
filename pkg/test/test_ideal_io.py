from fractions import Fraction

import pytest

from branchforge.algebra.exactfield import QQ, nf_create
from branchforge.algebra.multipoly import Ring, parse
from branchforge.core.errors import ConfigSchemaError, PolynomialSyntaxError
from branchforge.data.ideal_io import (
    format_field,
    format_ideal_file,
    load_ideal_file,
    parse_element,
    parse_field,
    parse_ideal_text,
    parse_point,
    save_ideal_file,
)

QUARTIC_FILE = """\
# Kummer 四次曲面的一个仿射片
field: QQ
variables: s, x1, x2, x3
ambient: projective
---
-s^2*x1*x3 + s^2*x2^2 + 2*s*x1^3 - 2*s*x3^3 \\
    + 4*x1^2*x3^2 - 32*x1*x2^2*x3 + 64*x2^4
--- sections
s*x1 - 2*x1^2
x2^2
"""


def test_parse_ideal_text():
    data = parse_ideal_text(QUARTIC_FILE)
    assert data.ambient.is_projective
    assert data.ambient.variables == ("s", "x1", "x2", "x3")
    assert data.number_field == QQ
    assert len(data.polynomials) == 1
    assert data.polynomials[0].weighted_degree() == 4
    assert len(data.polynomials[0]) == 7
    assert [p.weighted_degree() for p in data.sections] == [2, 2]
    assert data.scheme.equations == tuple(data.polynomials)


def test_extension_field_header():
    text = "field: r = r^2 - 2\nvariables: x, y\n---\nx^2 - r*y\nx - 1/2\n"
    data = parse_ideal_text(text)
    assert data.number_field.name == "r"
    assert data.number_field.min_poly == (Fraction(-2), Fraction(0), Fraction(1))
    assert not data.ambient.is_projective
    assert len(data.ideal.generators) == 2


def test_weights_and_order():
    text = "variables: z, x, y\nweights: 3 1 1\nambient: projective\norder: lex\n---\nz^2 - x^6 - y^6\n"
    data = parse_ideal_text(text)
    assert data.ambient.weights == (3, 1, 1)
    assert data.ring.order.kind == "lex"
    assert data.polynomials[0].is_homogeneous()


def test_format_roundtrip(tmp_path):
    data = parse_ideal_text(QUARTIC_FILE)
    path = save_ideal_file(data, tmp_path / "quartic.ideal")
    again = load_ideal_file(path)
    assert again.polynomials == data.polynomials
    assert again.sections == data.sections
    assert again.ambient == data.ambient
    assert "--- sections" in format_ideal_file(again)


@pytest.mark.parametrize(
    "text",
    [
        "field: QQ\n---\nx\n",
        "variables: x\ncolor: red\n---\nx\n",
        "variables: x\n--- extra\nx\n",
        "variables: x\norder: deglex\n---\nx\n",
        "variables: x, y\nweights: 1\n---\nx\n",
        "variables: x\nweights: a\n---\nx\n",
        "variables: x\nno colon here\n---\nx\n",
        "field: 2r = r^2 - 2\nvariables: x\n---\nx\n",
        "field: r^2 - 2\nvariables: x\n---\nx\n",
    ],
)
def test_header_errors(text):
    with pytest.raises(ConfigSchemaError):
        parse_ideal_text(text)


def test_syntax_error_reports_line():
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_ideal_text("variables: x, y\n---\nx + y\nx $ y\n", source="bad.ideal")
    assert "bad.ideal:4" in str(info.value)


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_ideal_file(tmp_path / "nothing.ideal")


def test_field_declarations():
    assert parse_field("QQ") is QQ
    sqrt2 = parse_field("r = r^2 - 2")
    assert sqrt2 == nf_create([-2, 0, 1], "r")
    assert format_field(sqrt2) == "r = r^2 - 2"
    assert format_field(QQ) == "QQ"
    assert parse_field(format_field(sqrt2)) == sqrt2


def test_parse_points():
    field = nf_create([1, -1, 1], "e")
    e = field.gen()
    assert parse_element("e - 1", field) == e - 1
    assert parse_element("-1/2", QQ) == QQ.from_rational(Fraction(-1, 2))
    assert parse_point("(1, 0, e - 1)", field) == (field.one(), field.zero(), e - 1)
    assert parse_point(["1/3", 2], QQ)[0] == QQ.from_rational(Fraction(1, 3))

    xy = Ring(QQ, ("x", "y"))
    assert parse("x*y - 6", xy).eval_point(parse_point("2, 3", QQ)) == 0
