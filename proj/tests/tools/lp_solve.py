#!/usr/bin/env python3
"""Solve an exported LP-format model with scipy's exact MILP solver (HiGHS)
and write the binary assignment as `x_<id> <value>` lines.

Usage: lp_solve.py model.lp assignment.txt
"""
import re
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp


def parse(text):
    text = text.replace("\n     ", " ")  # unfold continuation lines
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    section = None
    objective = {}
    constraints = []
    binaries = set()
    for ln in lines:
        low = ln.lower()
        if low == "maximize":
            section = "obj"
            continue
        if low == "subject to":
            section = "con"
            continue
        if low == "binary":
            section = "bin"
            continue
        if low == "end":
            break
        if section == "obj":
            body = ln.split(":", 1)[1] if ":" in ln else ln
            for coeff, var in re.findall(r"([+-]?\s*\d+)\s+x_(\d+)", body):
                objective[int(var)] = int(coeff.replace(" ", ""))
        elif section == "con":
            name, body = ln.split(":", 1)
            terms = re.findall(r"x_(\d+)", body)
            rhs = int(re.search(r"<=\s*(-?\d+)", body).group(1))
            constraints.append((name.strip(), [int(t) for t in terms], rhs))
        elif section == "bin":
            m = re.fullmatch(r"x_(\d+)", ln)
            if m:
                binaries.add(int(m.group(1)))
    return objective, constraints, binaries


def main():
    lp_path, out_path = sys.argv[1], sys.argv[2]
    with open(lp_path) as f:
        objective, constraints, binaries = parse(f.read())

    ids = sorted(binaries)
    if not ids:
        with open(out_path, "w") as f:
            pass
        return
    col = {v: i for i, v in enumerate(ids)}
    n = len(ids)

    c = np.zeros(n)
    for v, w in objective.items():
        c[col[v]] = -w  # maximize

    if constraints:
        a = np.zeros((len(constraints), n))
        ub = np.zeros(len(constraints))
        for row, (_, terms, rhs) in enumerate(constraints):
            for v in terms:
                a[row, col[v]] += 1.0
            ub[row] = rhs
        lc = LinearConstraint(a, -np.inf, ub)
        res = milp(c, constraints=[lc], integrality=np.ones(n), bounds=Bounds(0, 1))
    else:
        res = milp(c, integrality=np.ones(n), bounds=Bounds(0, 1))
    if not res.success:
        sys.exit("milp failed: " + str(res.message))
    with open(out_path, "w") as f:
        for v in ids:
            f.write(f"x_{v} {int(round(res.x[col[v]]))}\n")


if __name__ == "__main__":
    main()
