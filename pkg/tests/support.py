"""Shared generators and oracles for the test suite.

The oracles here deliberately avoid the package's evaluation path: they
work on plain coefficient lists and Python floats so the tests compare
two independent routes to the same numbers.
"""

from __future__ import annotations

import random

from nrquad.expressions import BinOp, Call, Const, Expression, Neg, Var, evaluate

FUNCTION_POOL = ("sin", "cos", "tan", "exp", "ln", "sqrt", "abs")


def random_polynomial(rng: random.Random, max_degree: int = 5) -> tuple[Expression, list[float]]:
    """Random polynomial as an expression tree plus its coefficient list."""
    degree = rng.randint(1, max_degree)
    coeffs = [round(rng.uniform(-4.0, 4.0), 3) for _ in range(degree + 1)]
    if abs(coeffs[-1]) < 0.25:
        coeffs[-1] = 1.0
    expr: Expression = Const(coeffs[0])
    for i, c in enumerate(coeffs[1:], start=1):
        term = BinOp("*", Const(c), BinOp("^", Var(), Const(float(i))))
        expr = BinOp("+", expr, term)
    return expr, coeffs


def poly_value(coeffs: list[float], x: float) -> float:
    return sum(c * x**i for i, c in enumerate(coeffs))


def poly_derivative(coeffs: list[float]) -> list[float]:
    return [i * c for i, c in enumerate(coeffs)][1:] or [0.0]


def random_tree(rng: random.Random, depth: int) -> Expression:
    """Random expression tree of depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.6:
            return Var()
        return Const(round(rng.uniform(-3.0, 3.0), 3))
    roll = rng.random()
    if roll < 0.55:
        op = rng.choice("+-*/")
        return BinOp(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1))
    if roll < 0.70:
        exponent = rng.choice((-3.0, -2.0, -1.0, 2.0, 3.0))
        return BinOp("^", random_tree(rng, depth - 1), Const(exponent))
    if roll < 0.80:
        return Neg(random_tree(rng, depth - 1))
    return Call(rng.choice(FUNCTION_POOL), random_tree(rng, depth - 1))


def central_difference(e: Expression, x: float, h: float) -> float:
    return (evaluate(e, x + h) - evaluate(e, x - h)) / (2.0 * h)
