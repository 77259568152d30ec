#!/usr/bin/env python3
"""Write the textbook cycling fixtures and verify their optima.

Each instance is stored as equality rows with explicit slack columns, so
the standard form seen by the solver is exactly the textbook tableau. The
optimum is computed by enumerating every basis (exact rational
arithmetic) and cross-checked against scipy's HiGHS when available.

Usage:
    scripts/verify_cycling.py [--out data/cycling]
"""

import argparse
import itertools
import json
import os
from fractions import Fraction as F

# (name, source, objective, rows, rhs); columns are x1..xn, min objective.
INSTANCES = [
    (
        "BEALE",
        "Beale (1955); slacks x1..x3",
        [0, 0, 0, F(-3, 4), 20, F(-1, 2), 6],
        [
            [1, 0, 0, F(1, 4), -8, -1, 9],
            [0, 1, 0, F(1, 2), -12, F(-1, 2), 3],
            [0, 0, 1, 0, 0, 1, 0],
        ],
        [0, 0, 1],
    ),
    (
        "CHVATAL",
        "Chvatal, Linear Programming (1983), ch. 3; slacks x5..x7",
        [-10, 57, 9, 24, 0, 0, 0],
        [
            [F(1, 2), F(-11, 2), F(-5, 2), 9, 1, 0, 0],
            [F(1, 2), F(-3, 2), F(-1, 2), 1, 0, 1, 0],
            [1, 0, 0, 0, 0, 0, 1],
        ],
        [0, 0, 1],
    ),
    (
        "KUHN",
        "Kuhn's example (Balinski and Tucker 1969); slacks x5..x7",
        [-2, -3, 1, 12, 0, 0, 0],
        [
            [-2, -9, 1, 9, 1, 0, 0],
            [F(1, 3), 1, F(-1, 3), -2, 0, 1, 0],
            [2, 3, -1, -12, 0, 0, 1],
        ],
        [0, 0, 2],
    ),
]


def solve_square(a, b):
    """Gauss-Jordan over rationals; None when singular."""
    n = len(a)
    m = [row[:] + [rhs] for row, rhs in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [v / piv for v in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


def enumerate_optimum(c, a, b):
    """Best basic feasible solution, and whether an improving ray exists."""
    m, n = len(a), len(a[0])
    c = [F(v) for v in c]
    a = [[F(v) for v in row] for row in a]
    b = [F(v) for v in b]
    best = None
    for basis in itertools.combinations(range(n), m):
        sub = [[a[i][j] for j in basis] for i in range(m)]
        xb = solve_square(sub, b)
        if xb is None or any(v < 0 for v in xb):
            continue
        x = [F(0)] * n
        for j, v in zip(basis, xb):
            x[j] = v
        obj = sum(ci * xi for ci, xi in zip(c, x))
        if best is None or obj < best[0]:
            best = (obj, x, basis)
        # an improving extreme ray leaves this basis along a nonbasic column
        for k in set(range(n)) - set(basis):
            d = solve_square(sub, [a[i][k] for i in range(m)])
            if d is not None and all(v <= 0 for v in d):
                red = c[k] - sum(c[j] * dj for j, dj in zip(basis, d))
                if red < 0:
                    return None
    return best


def fmt(v):
    return repr(float(v))


def write_mps(path, name, c, a, b):
    m, n = len(a), len(a[0])
    lines = [f"NAME          {name}", "ROWS", " N  COST"]
    lines += [f" E  R{i + 1}" for i in range(m)]
    lines.append("COLUMNS")
    for j in range(n):
        if c[j] != 0:
            lines.append(f"    X{j + 1}  COST  {fmt(c[j])}")
        for i in range(m):
            if a[i][j] != 0:
                lines.append(f"    X{j + 1}  R{i + 1}  {fmt(a[i][j])}")
    lines.append("RHS")
    lines += [f"    RHS  R{i + 1}  {fmt(b[i])}" for i in range(m) if b[i] != 0]
    lines.append("ENDATA")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/cycling")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    manifest = []
    for name, source, c, a, b in INSTANCES:
        best = enumerate_optimum(c, a, b)
        assert best is not None, f"{name} is unbounded"
        obj, x, basis = best
        try:
            from scipy.optimize import linprog

            r = linprog([float(v) for v in c], A_eq=[[float(v) for v in row] for row in a],
                        b_eq=[float(v) for v in b], bounds=(0, None), method="highs")
            assert r.status == 0 and abs(r.fun - float(obj)) < 1e-9, (name, r.fun, obj)
            checked = "scipy-highs"
        except ImportError:
            checked = "none"
        write_mps(os.path.join(args.out, f"{name}.mps"), name, c, a, b)
        manifest.append({
            "name": name,
            "source": source,
            "rows": len(a),
            "cols": len(a[0]),
            "optimum": float(obj),
            "optimum_exact": str(obj),
            "optimal_x": [str(v) for v in x],
            "cross_check": checked,
        })
        print(f"{name}: optimum {obj} at x = {[str(v) for v in x]}")
    with open(os.path.join(args.out, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
