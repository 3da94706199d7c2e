#!/usr/bin/env python3
"""Independent recomputation of the N_S(l, k) recursion used to freeze golden values.

Surfaces are (genus, boundary). Complexity xi = 3g + n - 3.
  S_{1,1}: ((l + 2M + 2) k)^(l+1)
  S_{0,4}: (2 (l + 2M + 2) k)^(l+1)
  xi >= 2: (2 N'(xi - 1; l + 2M, k))^(l+1), N'(c) = max over complexities 1..c.
"""
import sys


def torus(l, k, m):
    return ((l + 2 * m + 2) * k) ** (l + 1)


def sphere(l, k, m):
    return (2 * (l + 2 * m + 2) * k) ** (l + 1)


def level(xi, l, k, m):
    if xi == 1:
        return max(torus(l, k, m), sphere(l, k, m))
    return (2 * lower(xi - 1, l + 2 * m, k, m)) ** (l + 1)


def lower(c, l, k, m):
    return max(level(j, l, k, m) for j in range(1, c + 1))


def n_bound(g, n, l, k, m):
    xi = 3 * g + n - 3
    if (g, n) == (1, 1):
        return torus(l, k, m)
    if (g, n) == (0, 4):
        return sphere(l, k, m)
    return (2 * lower(xi - 1, l + 2 * m, k, m)) ** (l + 1)


if __name__ == "__main__":
    print("S11 l=1 k=2 M=1:", n_bound(1, 1, 1, 2, 1))
    print("S04 l=1 k=2 M=1:", n_bound(0, 4, 1, 2, 1))
    print("S05 l=1 k=2 M=1:", n_bound(0, 5, 1, 2, 1))
    print("S12 l=1 k=2 M=1:", n_bound(1, 2, 1, 2, 1))
    print("S06 l=1 k=2 M=1 digits:", len(str(n_bound(0, 6, 1, 2, 1))))
    print("S11 N(2,3) M=1:", n_bound(1, 1, 2, 3, 1), " N(4,3):", n_bound(1, 1, 4, 3, 1))
    print("S04 N(2,3) M=1:", n_bound(0, 4, 2, 3, 1))
