import numpy as np
import pytest

from nawarp.exprs import ExpressionError, parse_expression, vector_field_from_exprs


def test_basic_arithmetic():
    fn = parse_expression("x1 + 2*x2^2 - 1", 2)
    grids = [np.array(1.0), np.array(3.0)]
    assert float(fn(grids)) == pytest.approx(1.0 + 18.0 - 1.0)


def test_functions_and_unary():
    fn = parse_expression("sin(x1) + exp(-x1)", 1)
    x = np.linspace(-1, 1, 7)
    assert np.max(np.abs(fn([x]) - (np.sin(x) + np.exp(-x)))) < 1e-15


def test_vectorized_over_grids():
    fn = parse_expression("x1*x2", 2)
    a = np.arange(4.0).reshape(2, 2)
    b = np.ones((2, 2)) * 3
    assert np.max(np.abs(fn([a, b]) - a * 3)) < 1e-15


@pytest.mark.parametrize(
    "bad",
    [
        "__import__('os')",
        "x1.real",
        "open('x')",
        "x3",
        "lambda: 1",
        "[1, 2]",
        "x1 if 1 else x2",
        "unknownfn(x1)",
    ],
)
def test_rejects_unsafe_or_unknown(bad):
    with pytest.raises(ExpressionError):
        parse_expression(bad, 2)


def test_vector_field_from_exprs():
    field = vector_field_from_exprs(
        ["x1 + 0.1*x1^2", "x2"], [["1 + 0.2*x1", "0"], ["0", "1"]]
    )
    grids = [np.array(2.0), np.array(-1.0)]
    vals = field.value(grids)
    assert float(vals[0]) == pytest.approx(2.4)
    assert float(vals[1]) == pytest.approx(-1.0)
    jac = field.jacobian(grids)
    assert float(jac[0][0]) == pytest.approx(1.4)
    assert float(jac[0][1]) == 0.0


def test_vector_field_shape_mismatch():
    with pytest.raises(ExpressionError):
        vector_field_from_exprs(["x1", "x2"], [["1", "0"]])
