"""Accuracy of the Krawtchouk form of d^ell(beta) across beta.

    python3 scripts/wigner_conditioning.py --ell 10

For each beta, compares against a 60-digit factorial-sum reference: the raw
double-precision Krawtchouk formula (no reflection, no fallback) and the
package's ``small_d``.  The raw formula degrades toward beta = pi, where its
series cancels before division by a small cosine power.
"""
import argparse
import math

import mpmath
import numpy as np

from krawx.polyfun import krawtchouk
from krawx.rotations import small_d


def reference(ell, mp, m, beta):
    with mpmath.workdps(60):
        c, s = mpmath.cos(mpmath.mpf(beta) / 2), mpmath.sin(mpmath.mpf(beta) / 2)
        f = mpmath.factorial
        pre = mpmath.sqrt(f(ell + mp) * f(ell - mp) * f(ell + m) * f(ell - m))
        tot = mpmath.fsum(
            (-1) ** (mp - m + k) * c ** (2 * ell + m - mp - 2 * k) * s ** (mp - m + 2 * k)
            / (f(ell + m - k) * f(k) * f(mp - m + k) * f(ell - mp - k))
            for k in range(max(0, m - mp), min(ell + m, ell - mp) + 1)
        )
        return float(pre * tot)


def raw(ell, mp, m, beta):
    s, c = math.sin(beta / 2), math.cos(beta / 2)
    binoms = math.sqrt(math.comb(2 * ell, m + ell) * math.comb(2 * ell, mp + ell))
    return (-1) ** (mp + ell) * s ** (2 * ell + m + mp) * c ** (-(m + mp)) * binoms * krawtchouk(m + ell, mp + ell, s * s, 2 * ell)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ell", type=int, default=10)
    ns = ap.parse_args()
    ell = ns.ell
    print(f"{'beta':>6} {'raw':>10} {'small_d':>10}")
    for beta in np.linspace(0.1, 3.1, 11):
        e_raw = e_pkg = 0.0
        for mp in range(-ell, ell + 1):
            for m in range(-ell, ell + 1):
                ref = reference(ell, mp, m, beta)
                e_raw = max(e_raw, abs(raw(ell, mp, m, beta) - ref))
                e_pkg = max(e_pkg, abs(small_d(ell, mp, m, beta) - ref))
        print(f"{beta:6.2f} {e_raw:10.2e} {e_pkg:10.2e}")


if __name__ == "__main__":
    main()
