"""Brute-force radius scan freezing the dyadic-staircase oracle at 0.

Independently of the library's breakpoint scan, sweep a dense grid of scales
rho and evaluate the open-ball functional sup_{0<|u|<rho} f(u) / rho of the
staircase f(u) = 2**-n on 2**-n <= |u| < 2**-(n-1) straight from the
definition.  The infimum over scales approaches 1/2 (attained just below
each jump, rho -> 2**-(n-1)) and the supremum approaches 1 (rho = 2**-n),
which freezes lip(0) = 0.5 and Lip(0) = 1.0 in the zoo.

Run: python3 scripts/dyadic_oracle_scan.py
"""
import math

import numpy as np


def staircase(u):
    a = abs(u)
    if a == 0.0:
        return 0.0
    return 2.0 ** (math.frexp(a)[1] - 1)


def sup_over_ball(rho, samples):
    vals = [staircase(u) for u in samples if 0.0 < abs(u) < rho]
    return max(vals) / rho if vals else 0.0


def main():
    # sample points: all jump locations plus midpoints, down to 2**-40
    levels = np.array([2.0 ** -n for n in range(1, 41)])
    samples = np.concatenate([levels, 0.75 * levels])
    # scales: dense geometric sweep through several staircase periods
    rhos = np.exp(np.linspace(math.log(2.0 ** -30), math.log(0.5), 200001))
    ratios = np.array([sup_over_ball(r, samples) for r in rhos])
    lip0, big0 = ratios.min(), ratios.max()
    print(f"inf over scales  (lip at 0): {lip0:.12f}")
    print(f"sup over scales  (Lip at 0): {big0:.12f}")
    assert abs(lip0 - 0.5) < 1e-4, lip0
    assert abs(big0 - 1.0) < 1e-10, big0
    print("frozen: DYADIC_LITTLE_AT_ZERO = 0.5, DYADIC_BIG_AT_ZERO = 1.0")


if __name__ == "__main__":
    main()
