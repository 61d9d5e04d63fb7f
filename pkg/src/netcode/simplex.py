"""Textbook primal simplex over exact rationals.

Solves max c.x subject to A.x <= b, x >= 0 with b >= 0, so the slack basis
is feasible and no phase-one is needed. Bland's rule guarantees
termination; everything stays in Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParameterError


def maximize(c, rows, rhs):
    """Returns (optimal value, primal solution) or raises on unbounded input.

    c: objective coefficients (length nv)
    rows: constraint matrix, one list per constraint
    rhs: right-hand sides, all nonnegative
    """
    nv = len(c)
    nc = len(rows)
    if any(len(r) != nv for r in rows) or len(rhs) != nc:
        raise ParameterError("inconsistent LP dimensions")
    if any(v < 0 for v in rhs):
        raise ParameterError("rhs must be nonnegative for the slack starting basis")

    # tableau: nc rows of [A | I | b]; objective row tracks reduced costs
    tab = [[Fraction(x) for x in rows[i]] +
           [Fraction(int(i == j)) for j in range(nc)] +
           [Fraction(rhs[i])] for i in range(nc)]
    z = [Fraction(x) for x in c] + [Fraction(0)] * (nc + 1)
    basis = [nv + i for i in range(nc)]
    total = nv + nc

    while True:
        enter = next((j for j in range(total) if z[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(nc):
            if tab[i][enter] > 0:
                ratio = tab[i][total] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            raise ParameterError("LP is unbounded")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(nc):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if z[enter]:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, tab[leave])]
        basis[leave] = enter

    solution = [Fraction(0)] * nv
    for i, var in enumerate(basis):
        if var < nv:
            solution[var] = tab[i][total]
    value = -z[total]
    return value, solution
