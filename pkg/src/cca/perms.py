"""Permutations as tuples of point images.

The product convention is "apply left factor first": (a*b)(x) = b(a(x)).
With this convention the right-regular representation g -> (x -> x*g)
is a homomorphism.
"""

from __future__ import annotations

from typing import Iterable


Perm = tuple


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_perm(p) -> bool:
    return sorted(p) == list(range(len(p)))


def pmul(a: Perm, b: Perm) -> Perm:
    """a*b: apply a, then b."""
    return tuple(b[x] for x in a)


def pinv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def pconj(g: Perm, h: Perm) -> Perm:
    """g^h = h^-1 * g * h."""
    return pmul(pmul(pinv(h), g), h)


def ppow(a: Perm, k: int) -> Perm:
    n = len(a)
    if k < 0:
        return ppow(pinv(a), -k)
    r = identity(n)
    while k:
        if k & 1:
            r = pmul(r, a)
        a = pmul(a, a)
        k >>= 1
    return r


def porder(a: Perm) -> int:
    n = len(a)
    seen = [False] * n
    from math import lcm

    o = 1
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                length += 1
            o = lcm(o, length)
    return o


def cycles(a: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, each starting at its least point."""
    n = len(a)
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i] and a[i] != i:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = a[j]
            out.append(tuple(cyc))
        seen[i] = True
    return out


def from_cycles(degree: int, cycs: Iterable[Iterable[int]]) -> Perm:
    img = list(range(degree))
    for cyc in cycs:
        cyc = list(cyc)
        for i, p in enumerate(cyc):
            img[p] = cyc[(i + 1) % len(cyc)]
    return tuple(img)
