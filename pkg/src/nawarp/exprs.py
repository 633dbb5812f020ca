"""Tiny arithmetic expression grammar for user-defined vector fields.

Supported: +, -, *, /, ^ (power), sin, cos, exp, numeric literals, and
the variables x1..xn.  Expressions are parsed through the Python ast with
a strict whitelist, so config files cannot smuggle in arbitrary code.
"""

import ast

import numpy as np

_FUNCTIONS = {"sin": np.sin, "cos": np.cos, "exp": np.exp}

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
    ast.Pow: lambda a, b: a**b,
}

_UNARYOPS = {ast.UAdd: lambda a: a, ast.USub: lambda a: -a}


class ExpressionError(ValueError):
    """Raised for syntax errors or constructs outside the grammar."""


def _validate(node, nvars):
    if isinstance(node, ast.Expression):
        _validate(node.body, nvars)
    elif isinstance(node, ast.BinOp):
        if type(node.op) not in _BINOPS:
            raise ExpressionError(f"operator {type(node.op).__name__} not allowed")
        _validate(node.left, nvars)
        _validate(node.right, nvars)
    elif isinstance(node, ast.UnaryOp):
        if type(node.op) not in _UNARYOPS:
            raise ExpressionError(f"operator {type(node.op).__name__} not allowed")
        _validate(node.operand, nvars)
    elif isinstance(node, ast.Call):
        if (
            not isinstance(node.func, ast.Name)
            or node.func.id not in _FUNCTIONS
            or len(node.args) != 1
            or node.keywords
        ):
            raise ExpressionError("only sin, cos, exp with one argument are allowed")
        _validate(node.args[0], nvars)
    elif isinstance(node, ast.Name):
        if not _is_variable(node.id, nvars):
            raise ExpressionError(f"unknown name {node.id!r}")
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, (int, float)):
            raise ExpressionError(f"literal {node.value!r} not allowed")
    else:
        raise ExpressionError(f"construct {type(node).__name__} not allowed")


def _is_variable(name, nvars):
    if not name.startswith("x"):
        return False
    try:
        idx = int(name[1:])
    except ValueError:
        return False
    return 1 <= idx <= nvars


def _evaluate(node, env):
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, env)
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](
            _evaluate(node.left, env), _evaluate(node.right, env)
        )
    if isinstance(node, ast.UnaryOp):
        return _UNARYOPS[type(node.op)](_evaluate(node.operand, env))
    if isinstance(node, ast.Call):
        return _FUNCTIONS[node.func.id](_evaluate(node.args[0], env))
    if isinstance(node, ast.Name):
        return env[node.id]
    if isinstance(node, ast.Constant):
        return node.value
    raise ExpressionError(f"construct {type(node).__name__} not allowed")


def parse_expression(src, nvars):
    """Compile one expression into a function of the coordinate grids."""
    if not isinstance(src, str) or not src.strip():
        raise ExpressionError("expression must be a nonempty string")
    try:
        tree = ast.parse(src.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {src!r}: {exc.msg}") from exc
    _validate(tree, nvars)

    def func(grids):
        env = {f"x{i + 1}": g for i, g in enumerate(grids)}
        out = _evaluate(tree, env)
        return np.broadcast_to(np.asarray(out, dtype=float), np.shape(grids[0])).copy()

    return func


def vector_field_from_exprs(value_exprs, jacobian_exprs):
    """Build a SmoothVectorField from value and Jacobian expression lists.

    value_exprs is a list of n strings; jacobian_exprs is an n x n nested
    list with entry [i][k] = dZ^k/dx_i.
    """
    from nawarp.qm_gauge import SmoothVectorField

    n = len(value_exprs)
    if len(jacobian_exprs) != n or any(len(row) != n for row in jacobian_exprs):
        raise ExpressionError("jacobian must be an n x n expression array")
    vals = [parse_expression(s, n) for s in value_exprs]
    jacs = [[parse_expression(s, n) for s in row] for row in jacobian_exprs]
    return SmoothVectorField(
        n=n,
        value=lambda grids: [v(grids) for v in vals],
        jacobian=lambda grids: [[j(grids) for j in row] for row in jacs],
    )
