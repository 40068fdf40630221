#!/usr/bin/env python3
"""Generate golden tables for the manufactured-solution right-hand sides.

For each case this script differentiates the closed-form solution u
symbolically, assembles

    rhs(x) = D1 D2 D3^2 D4^2 u + sum_{i != (1,1,2,2)} a_i(x) * D^i u(x),

and tabulates rhs on a uniform grid over the unit box. The output tables
are committed under crates/goursat4d/tests/golden/ and compared against
the library's sampled right-hand sides in tests.

Run from the repository root:  python3 scripts/gen_golden.py
"""

import itertools
import os

import sympy as sp

X = sp.symbols("x1 x2 x3 x4")
MAX_ORDER = (1, 1, 2, 2)

OUT_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "crates",
    "goursat4d",
    "tests",
    "golden",
)


def multi_indices():
    for i1, i2 in itertools.product(range(2), range(2)):
        for i3, i4 in itertools.product(range(3), range(3)):
            yield (i1, i2, i3, i4)


def mixed_derivative(u, idx):
    d = u
    for axis, order in enumerate(idx):
        d = sp.diff(d, X[axis], order)
    return d


def rhs_expression(u, coeff):
    """coeff maps a non-dominant multi-index to a sympy expression (or number)."""
    expr = mixed_derivative(u, MAX_ORDER)
    for idx in multi_indices():
        if idx == MAX_ORDER:
            continue
        a = coeff.get(idx, 0)
        if a == 0:
            continue
        expr = expr + sp.sympify(a) * mixed_derivative(u, idx)
    return sp.simplify(expr)


def write_table(name, expr, n):
    nodes = [sp.Rational(k, n - 1) for k in range(n)]
    path = os.path.join(OUT_DIR, name)
    with open(path, "w") as out:
        out.write("# x1 x2 x3 x4 rhs\n")
        out.write(f"# uniform {n}^4 grid on the unit box, row-major, x4 fastest\n")
        for p in itertools.product(nodes, repeat=4):
            val = expr.subs(dict(zip(X, p)))
            val = sp.N(val, 30)
            coords = " ".join("%.17g" % float(c) for c in p)
            out.write("%s %.17g\n" % (coords, float(val)))
    print(f"wrote {path}")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)

    ones = {idx: 1 for idx in multi_indices() if idx != MAX_ORDER}

    u_poly = X[0] * X[1] * X[2] ** 2 * X[3] ** 2 / 4
    write_table("poly_const_coef_rhs_5.txt", rhs_expression(u_poly, ones), 5)

    u_trig = sp.sin(X[0]) * sp.sin(X[1]) * sp.sin(X[2]) * sp.sin(X[3])
    write_table("trig_rhs_5.txt", rhs_expression(u_trig, ones), 5)

    # Closed-form cross-check for the polynomial case:
    # rhs = (1+x1)(1+x2)(1+x3+x3^2/2)(1+x4+x4^2/2).
    closed = (
        (1 + X[0])
        * (1 + X[1])
        * (1 + X[2] + X[2] ** 2 / 2)
        * (1 + X[3] + X[3] ** 2 / 2)
    )
    diff = sp.simplify(rhs_expression(u_poly, ones) - closed)
    assert diff == 0, f"polynomial rhs mismatch: {diff}"
    print("closed-form cross-check passed")


if __name__ == "__main__":
    main()
