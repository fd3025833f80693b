#!/usr/bin/env python3
"""Reference values for the discrete power-law fit, computed with scipy.

The model CDF here uses the closed form 1 - zeta(a, x+1) / zeta(a, x_min)
rather than summing terms, so it is independent of the C++ code path.
Prints C++ initializers that are frozen into tests/test_powerlaw.cpp.
"""
import math

import numpy as np
from scipy.special import zeta


def fit(hist):
    degrees = np.array(sorted(hist), dtype=float)
    counts = np.array([hist[d] for d in sorted(hist)], dtype=float)
    k = len(degrees)
    best = None
    last = math.floor(0.95 * (k - 1)) if k >= 2 else 0
    for i in range(0, last + 1):
        if k - i < 2:
            break
        n = counts[i:].sum()
        if n < 50:
            break
        xmin = degrees[i]
        alpha = 1.0 + n / np.sum(counts[i:] * np.log(degrees[i:] / (xmin - 0.5)))
        xs = np.arange(xmin, degrees[-1] + 1.0)
        model = 1.0 - zeta(alpha, xs + 1.0) / zeta(alpha, xmin)
        emp = np.zeros_like(xs)
        idx = (degrees[i:] - xmin).astype(int)
        emp[idx] = counts[i:] / n
        emp = np.cumsum(emp)
        ks = float(np.max(np.abs(emp - model)))
        if best is None or ks < best[2]:
            best = (alpha, int(xmin), ks, int(n))
    return best


def main():
    cases = {
        "grid128": {2: 4, 3: 504, 4: 15876},
        "path4096": {1: 2, 2: 4094},
        "geometric": {d: int(1e5 * 0.5 ** d) for d in range(1, 40) if int(1e5 * 0.5 ** d) > 0},
        "zipf25": {d: round(1e5 * d ** -2.5 / zeta(2.5, 1)) for d in range(1, 2001)
                   if round(1e5 * d ** -2.5 / zeta(2.5, 1)) > 0},
    }
    for name, h in cases.items():
        a, xmin, ks, n = fit(h)
        print(f'{name}: alpha={a:.12f} x_min={xmin} ks={ks:.12f} tail={n}')
    for s, q in [(2.5, 1.0), (2.0, 3.0), (3.1, 10.5), (1.5, 100.0), (1.05, 2.0)]:
        print(f'zeta({s}, {q}) = {zeta(s, q):.15g}')


if __name__ == "__main__":
    main()
