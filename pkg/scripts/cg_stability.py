"""Closed-form CG blocks against three float alternatives, for growing N.

    python3 scripts/cg_stability.py --n-max 30

Columns: the float closed form (3F2 in double precision), the upward-only
three-term recurrence, and the two-sided recurrence used by the package.  Each
is the worst column-norm error against the exact-arithmetic closed form.
"""
import argparse
import math
from fractions import Fraction

import numpy as np

from krawx import su11cg
from krawx.polyfun import dual_hahn, pochhammer

NUS = [Fraction(1, 4), Fraction(3, 4), Fraction(1), Fraction(3, 2), Fraction(5, 2)]


def float_closed_form(nu1, nu2, N):
    """The same closed form, every factor in double precision."""
    a1, a2 = 2 * float(nu1), 2 * float(nu2)
    out = np.empty((N + 1, N + 1))
    for n1 in range(N + 1):
        n2 = N - n1
        for x in range(N + 1):
            n12 = N - x
            num = pochhammer(a1, n1) * pochhammer(a2, n2) * pochhammer(a1, x)
            den = (
                math.factorial(n1) * math.factorial(n2) * math.factorial(n12) * math.factorial(x)
                * pochhammer(a2, x) * pochhammer(a1 + a2 + 2 * x, n12) * pochhammer(a1 + a2 + x - 1, x)
            )
            out[n1, x] = math.sqrt(num / den) * math.factorial(x + n12) * dual_hahn(n1, x, a1 - 1, a2 - 1, N)
    return out


def upward_only(nu1, nu2, N):
    nu1, nu2 = float(nu1), float(nu2)
    w = su11cg._offdiag(nu1, nu2, N)
    n = np.arange(N + 1, dtype=float)
    diag = 2 * (n + nu1) * (N - n + nu2) + nu1 * (nu1 - 1) + nu2 * (nu2 - 1)
    out = np.empty((N + 1, N + 1))
    for x in range(N + 1):
        ev = (nu1 + nu2 + x) * (nu1 + nu2 + x - 1)
        col = np.zeros(N + 1)
        col[0] = 1.0
        for k in range(N):
            prev = w[k] * col[k - 1] if k else 0.0
            col[k + 1] = ((ev - diag[k]) * col[k] - prev) / w[k + 1]
        out[:, x] = col / np.linalg.norm(col)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=30)
    ns = ap.parse_args()
    print(f"{'N':>3} {'float 3F2':>10} {'upward':>10} {'two-sided':>10}")
    for N in range(0, ns.n_max + 1, 5):
        errs = np.zeros(3)
        for nu1 in NUS:
            for nu2 in NUS:
                exact = su11cg.cg_block(nu1, nu2, N)
                for j, alt in enumerate((float_closed_form(nu1, nu2, N), upward_only(nu1, nu2, N),
                                         su11cg.cg_block_recurrence(nu1, nu2, N))):
                    errs[j] = max(errs[j], np.linalg.norm(alt - exact, axis=0).max())
        print(f"{N:>3} " + " ".join(f"{e:10.2e}" for e in errs))


if __name__ == "__main__":
    main()
