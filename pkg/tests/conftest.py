"""Shared helpers: brute-force oracles and random graph sampling."""

import itertools
import random

from cca import builders
from cca.engine import is_colour_preserving
from cca.graphs import ColouredCayleyGraph
from cca.groups import FiniteGroup, close_generators
from cca.perms import pinv, pmul


def brute_force_stabiliser(Gamma):
    """All identity-fixing colour-preserving maps, by filtering (n-1)!
    candidate permutations.  Usable only for tiny graphs."""
    n = Gamma.n
    out = []
    for rest in itertools.permutations(range(1, n)):
        p = (0,) + rest
        if is_colour_preserving(Gamma, p):
            out.append(p)
    return sorted(out)


def is_power_of_two(k: int) -> bool:
    return k >= 1 and (k & (k - 1)) == 0


def _is_dihedral(G: FiniteGroup) -> bool:
    """Order 2m with a cyclic subgroup of order m and an outside involution
    inverting it."""
    if G.order % 2 or G.order < 4:
        return False
    m = G.order // 2
    rs = [i for i, o in enumerate(G.element_orders) if o == m]
    for r in rs:
        rp = G.elements[r]
        cyc = {rp}
        cur = rp
        for _ in range(m - 1):
            cur = pmul(cur, rp)
            cyc.add(cur)
        for t in G.elements:
            if t in cyc or G.element_orders[G.index[t]] != 2:
                continue
            if pmul(pmul(t, rp), t) == pinv(rp):
                return True
    return False


def stabiliser_shape_allowed(stab, degree: int) -> bool:
    """The vertex stabiliser of a connected coloured Cayley graph can be
    neither cyclic of order >= 4 nor dihedral of order >= 16."""
    Gs = close_generators(stab, degree, cap=len(stab) + 1)
    if Gs.is_cyclic() and Gs.order >= 4:
        return False
    if Gs.order >= 16 and _is_dihedral(Gs):
        return False
    return True


def colour_units(G: FiniteGroup):
    units = []
    seen = set()
    for s in range(1, G.order):
        if s in seen:
            continue
        si = G.inverse[s]
        seen.update((s, si))
        units.append((s,) if si == s else (s, si))
    return units


def generating_connection_sets(G: FiniteGroup):
    """Every inverse-closed generating subset of G \\ {1}."""
    units = colour_units(G)
    out = []
    for mask in range(1, 1 << len(units)):
        conn = []
        for i, u in enumerate(units):
            if mask >> i & 1:
                conn.extend(u)
        gens = [G.elements[s] for s in conn]
        if close_generators(gens, G.degree, cap=G.order + 1).order == G.order:
            out.append(sorted(conn))
    return out


def random_connected_cayley(rng: random.Random, pool):
    G = pool[rng.randrange(len(pool))]
    units = colour_units(G)
    while True:
        conn = []
        for u in units:
            if rng.random() < 0.5:
                conn.extend(u)
        if not conn:
            continue
        gens = [G.elements[s] for s in conn]
        if close_generators(gens, G.degree, cap=G.order + 1).order == G.order:
            return ColouredCayleyGraph(G, sorted(conn))


def group_pool(max_order: int):
    pool = [G for _, G in builders.catalog(max_order)]
    for G in (builders.f21(), builders.agl17(), builders.symmetric(4)):
        if G.order <= max_order:
            pool.append(G)
    return pool
