"""Exact LP over the rationals: two-phase simplex with Bland's rule.

Small problems only (the valuation fitter uses a few dozen variables), so a
dense tableau with Fraction entries is plenty.  All variables are free;
they are split into positive parts internally.

maximize  c . x
subject   A_eq x == b_eq
          A_le x <= b_le
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["LPResult", "solve_lp"]


class LPResult:
    def __init__(self, status, x=None, value=None):
        self.status = status  # "optimal" | "infeasible" | "unbounded"
        self.x = x
        self.value = value

    def __repr__(self):
        return "LPResult(%s, value=%s)" % (self.status, self.value)


def _frac_row(row):
    return [Fraction(v) for v in row]


def solve_lp(n, c, a_eq=(), b_eq=(), a_le=(), b_le=()):
    """Maximize c.x over free x in Q^n subject to equalities/inequalities."""
    c = _frac_row(c)
    a_eq = [_frac_row(r) for r in a_eq]
    a_le = [_frac_row(r) for r in a_le]
    b_eq = _frac_row(b_eq)
    b_le = _frac_row(b_le)

    # split x = u - v with u, v >= 0; add slacks for <= rows
    m = len(a_eq) + len(a_le)
    nslack = len(a_le)
    ncols = 2 * n + nslack
    rows = []
    rhs = []
    for r, b in zip(a_eq, b_eq):
        rows.append([*r, *[-v for v in r], *([Fraction(0)] * nslack)])
        rhs.append(Fraction(b))
    for k, (r, b) in enumerate(zip(a_le, b_le)):
        slack = [Fraction(0)] * nslack
        slack[k] = Fraction(1)
        rows.append([*r, *[-v for v in r], *slack])
        rhs.append(Fraction(b))
    obj = [*c, *[-v for v in c], *([Fraction(0)] * nslack)]

    # make rhs nonnegative
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # phase 1: artificial variables
    total = ncols + m
    tab = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(rows[i] + art + [rhs[i]])
    basis = [ncols + i for i in range(m)]
    cost1 = [Fraction(0)] * ncols + [Fraction(-1)] * m

    z = _simplex(tab, basis, cost1, total)
    if z < 0:
        return LPResult("infeasible")

    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= ncols:
            piv = next(
                (j for j in range(ncols) if tab[i][j] != 0), None
            )
            if piv is not None:
                _pivot(tab, basis, i, piv, total)
    # rows still basic in an artificial are redundant (their rhs is zero)
    keep = [i for i in range(m) if basis[i] < ncols]
    tab = [tab[i] for i in keep]
    basis = [basis[i] for i in keep]

    cost2 = obj + [Fraction(0)] * m
    z = _simplex(tab, basis, cost2, ncols)
    if z is None:
        return LPResult("unbounded")

    xsplit = [Fraction(0)] * ncols
    for i, bi in enumerate(basis):
        if bi < ncols:
            xsplit[bi] = tab[i][-1]
    x = [xsplit[j] - xsplit[n + j] for j in range(n)]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult("optimal", x, value)


def _simplex(tab, basis, cost, allowed_cols):
    """Bland-rule simplex on the tableau; returns the objective value or
    None when unbounded.  tab rows end with the rhs column."""
    m = len(tab)
    while True:
        # reduced costs
        red = list(cost[:allowed_cols])
        shadow = [Fraction(0)] * m
        for i, bi in enumerate(basis):
            shadow[i] = cost[bi]
        for j in range(allowed_cols):
            s = Fraction(0)
            for i in range(m):
                if shadow[i]:
                    s += shadow[i] * tab[i][j]
            red[j] = cost[j] - s
        enter = next((j for j in range(allowed_cols) if red[j] > 0), None)
        if enter is None:
            z = Fraction(0)
            for i in range(m):
                z += cost[basis[i]] * tab[i][-1]
            return z
        # ratio test (Bland: smallest basis index on ties)
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            return None
        _pivot(tab, basis, leave, enter, None)


def _pivot(tab, basis, row, col, _total):
    m = len(tab)
    piv = tab[row][col]
    tab[row] = [v / piv for v in tab[row]]
    for i in range(m):
        if i != row and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[row])]
    basis[row] = col
