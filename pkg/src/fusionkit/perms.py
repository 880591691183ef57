"""Permutation primitives.

Permutations on n points are plain tuples p of length n with p[i] the image
of point i. Products compose left to right: (a * b) applies a first, then b,
so i^(a*b) = b[a[i]]. Conjugation follows the same convention, x^g = g^-1 x g.
"""

from __future__ import annotations

from math import lcm


def identity(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Product a*b, applying a first."""
    return tuple(b[x] for x in a)


def inverse(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(x: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """x^g = g^-1 * x * g."""
    out = [0] * len(x)
    for k in range(len(x)):
        out[g[k]] = g[x[k]]
    return tuple(out)


def is_perm(p) -> bool:
    return isinstance(p, tuple) and sorted(p) == list(range(len(p)))


def order(p: tuple[int, ...]) -> int:
    n = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        n = lcm(n, length)
    return n


def power(p: tuple[int, ...], k: int) -> tuple[int, ...]:
    if k < 0:
        return power(inverse(p), -k)
    out = identity(len(p))
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def from_cycles(degree: int, cycles) -> tuple[int, ...]:
    """Build a permutation from disjoint cycles, e.g. [(0, 1, 2), (3, 4)]."""
    out = list(range(degree))
    for cyc in cycles:
        for i, pt in enumerate(cyc):
            out[pt] = cyc[(i + 1) % len(cyc)]
    return tuple(out)


def cycle_string(p: tuple[int, ...]) -> str:
    parts = []
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) if parts else "()"


def direct_sum(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Act with a on the first len(a) points and b on the rest."""
    d = len(a)
    return a + tuple(x + d for x in b)
