"""Fully enumerated permutation groups and the subgroup-theoretic queries
used throughout the package.

Groups are small (a few thousand elements at most); everything is done by
explicit element lists, which keeps every operation exactly verifiable.
"""

from __future__ import annotations

import os
from functools import cached_property
from math import lcm

from .errors import BoundExceeded, ClosureExceedsCap, NotASubgroup
from .perms import Perm, identity, is_perm, pconj, pinv, pmul, porder

DEFAULT_CAP = 10_000
ISO_BOUND = 400


class FiniteGroup:
    """A finite group given by its full element list (permutations of a common
    degree), with identity at index 0.

    Immutable after construction apart from lazily filled caches; safe to share.
    """

    def __init__(self, elements, generators, labels=None, meta=None):
        self.elements: list[Perm] = list(elements)
        if not self.elements:
            raise ValueError("element list must be nonempty")
        self.degree = len(self.elements[0])
        if self.elements[0] != identity(self.degree):
            raise ValueError("identity must be element 0")
        self.index = {p: i for i, p in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        self.generators: list[Perm] = list(generators)
        for g in self.generators:
            if g not in self.index:
                raise ValueError("generator not in element list")
        self.labels = list(labels) if labels is not None else None
        self.meta = dict(meta) if meta else {}
        self._rows: dict[int, tuple[int, ...]] = {}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.index

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return f"e{i}"

    def label_index(self, lab: str) -> int:
        if self.labels is None:
            if lab.startswith("e") and lab[1:].isdigit():
                return int(lab[1:])
            raise KeyError(lab)
        try:
            return self.labels.index(lab)
        except ValueError:
            raise KeyError(lab) from None

    # -- index arithmetic -------------------------------------------------

    def imul(self, i: int, j: int) -> int:
        return self.index[pmul(self.elements[i], self.elements[j])]

    @cached_property
    def inverse(self) -> list[int]:
        return [self.index[pinv(p)] for p in self.elements]

    @cached_property
    def element_orders(self) -> list[int]:
        return [porder(p) for p in self.elements]

    def left_row(self, s: int) -> tuple[int, ...]:
        """Row of the multiplication table: x -> s*x (left multiplication)."""
        row = self._rows.get(s)
        if row is None:
            es = self.elements[s]
            row = tuple(self.index[pmul(es, e)] for e in self.elements)
            self._rows[s] = row
        return row

    def right_row(self, s: int) -> tuple[int, ...]:
        """x -> x*s; this is the right-regular image of element s."""
        es = self.elements[s]
        return tuple(self.index[pmul(e, es)] for e in self.elements)

    @cached_property
    def table(self) -> list[tuple[int, ...]]:
        """Full multiplication table, table[i][j] = index of e_i * e_j."""
        return [self.left_row(i) for i in range(self.order)]

    # -- derived groups ---------------------------------------------------

    def right_regular(self) -> "FiniteGroup":
        """The right-regular representation G_R acting on element indices."""
        gens = [self.right_row(self.index[g]) for g in self.generators]
        G = close_generators(gens, self.order, cap=max(DEFAULT_CAP, self.order))
        assert G.order == self.order
        return G

    def subgroup(self, gens: list[Perm], cap: int | None = None) -> "FiniteGroup":
        H = close_generators(gens, self.degree, cap=cap or max(DEFAULT_CAP, self.order))
        for p in H.elements:
            if p not in self.index:
                raise NotASubgroup("generated subgroup leaves the ambient group")
        return H

    def is_abelian(self) -> bool:
        gens = self.generators or self.elements
        return all(pmul(a, b) == pmul(b, a) for a in gens for b in gens)

    def is_cyclic(self) -> bool:
        return self.order in self.element_orders

    def exponent(self) -> int:
        e = 1
        for o in self.element_orders:
            e = lcm(e, o)
        return e


def trivial_group(degree: int) -> FiniteGroup:
    return FiniteGroup([identity(degree)], [])


def close_generators(gens, degree: int, cap: int | None = None) -> FiniteGroup:
    """Breadth-first closure from the identity, generators applied in input
    order; the resulting element ordering is deterministic.

    The default cap can be overridden with the CCA_ENUM_CAP env variable."""
    if cap is None:
        cap = int(os.environ.get("CCA_ENUM_CAP", DEFAULT_CAP))
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = [tuple(g) for g in gens]
    for g in gens:
        if len(g) != degree or not is_perm(g):
            raise ValueError("generators must be permutations of the given degree")
    ident = identity(degree)
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        e = elements[head]
        head += 1
        for g in gens:
            f = pmul(e, g)
            if f not in index:
                if len(elements) >= cap:
                    raise ClosureExceedsCap(f"closure exceeds cap {cap}")
                index[f] = len(elements)
                elements.append(f)
    return FiniteGroup(elements, gens)


def is_subgroup(H: FiniteGroup, G: FiniteGroup) -> bool:
    return H.degree == G.degree and all(p in G.index for p in H.elements)


def is_normal(H: FiniteGroup, G: FiniteGroup) -> bool:
    """True iff g^-1 h g stays in H for every h in H and generator g of G."""
    if not is_subgroup(H, G):
        raise NotASubgroup("H is not a subgroup of G")
    hset = H.index
    for g in G.generators:
        for h in H.elements:
            if pconj(h, g) not in hset:
                return False
    return True


def p_part(n: int, p: int) -> int:
    q = 1
    while n % p == 0:
        n //= p
        q *= p
    return q


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def sylow_subgroup(G: FiniteGroup, p: int) -> FiniteGroup:
    """A Sylow p-subgroup, by greedy growth: keep adjoining p-power-order
    elements that normalise the current p-subgroup.  Group theory guarantees
    progress, but a small exhaustive fallback is kept as a safety net."""
    target = p_part(G.order, p)
    P = trivial_group(G.degree)
    if target == 1:
        return P
    orders = G.element_orders
    p_elems = [G.elements[i] for i in range(G.order)
               if orders[i] > 1 and p_part(orders[i], p) == orders[i]]
    while P.order < target:
        pset = set(P.elements)
        for e in p_elems:
            if e in pset:
                continue
            if all(pconj(x, e) in pset for x in P.elements):
                P = G.subgroup(P.generators + [e])
                break
        else:
            P = _sylow_fallback(G, p_elems, target)
            break
    assert P.order == target
    return P


def _sylow_fallback(G: FiniteGroup, p_elems, target: int) -> FiniteGroup:
    # Exhaustive search over subgroups generated by <= 3 p-elements.
    from itertools import combinations

    for k in (1, 2, 3):
        for combo in combinations(p_elems, k):
            H = G.subgroup(list(combo))
            if H.order == target:
                return H
    raise AssertionError("Sylow subgroup not found (should be impossible)")


def is_sylow_cyclic_order_not_div_4(G: FiniteGroup) -> bool:
    """True iff |G| is not divisible by 4 and every Sylow subgroup is cyclic.

    A Sylow p-subgroup is cyclic iff some element has order equal to the full
    p-part of |G|."""
    if G.order % 4 == 0:
        return False
    orders = set(G.element_orders)
    return all(p_part(G.order, p) in orders for p in prime_factors(G.order))


def squares_subgroup(H: FiniteGroup) -> FiniteGroup:
    sqs = sorted({pmul(x, x) for x in H.elements})
    return close_generators(sqs, H.degree, cap=max(DEFAULT_CAP, H.order))


def centralizer(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """C_G(H), by scanning G's elements against H's generators."""
    hgens = H.generators or [p for p in H.elements if p != identity(H.degree)]
    elems = [g for g in G.elements if all(pmul(g, h) == pmul(h, g) for h in hgens)]
    return FiniteGroup(elems, [p for p in elems if p != identity(G.degree)])


def normalizer(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    hset = set(H.elements)
    elems = [g for g in G.elements if all(pconj(h, g) in hset for h in H.generators)] \
        if H.generators else list(G.elements)
    return FiniteGroup(elems, [p for p in elems if p != identity(G.degree)])


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes as sorted lists of element indices, ordered by their
    least member."""
    seen = [False] * G.order
    gens = G.generators or []
    classes = []
    for i in range(G.order):
        if seen[i]:
            continue
        orbit = {i}
        queue = [i]
        while queue:
            j = queue.pop()
            for g in gens:
                k = G.index[pconj(G.elements[j], g)]
                if k not in orbit:
                    orbit.add(k)
                    queue.append(k)
        for j in orbit:
            seen[j] = True
        classes.append(sorted(orbit))
    return classes


def normal_subgroups(G: FiniteGroup, cap: int = DEFAULT_CAP,
                     class_cap: int = 64) -> list[FiniteGroup]:
    """All normal subgroups, as joins of normal closures of conjugacy classes.

    Every normal subgroup is generated by the classes it contains, so closing
    the class-closures under pairwise join reaches all of them."""
    if G.order > cap:
        raise BoundExceeded(f"|G| = {G.order} exceeds bound {cap}")
    classes = conjugacy_classes(G)
    if len(classes) > class_cap:
        raise BoundExceeded(f"{len(classes)} conjugacy classes exceed bound {class_cap}")

    def close_norm(gen_idxs):
        gens = [G.elements[i] for i in gen_idxs if i != 0]
        return G.subgroup(gens)

    found: dict[frozenset, FiniteGroup] = {}
    triv = trivial_group(G.degree)
    found[frozenset([identity(G.degree)])] = triv
    for cls in classes:
        N = close_norm(cls)
        found.setdefault(frozenset(N.elements), N)
    changed = True
    while changed:
        changed = False
        current = list(found.values())
        for A in current:
            for B in current:
                key_gens = A.generators + B.generators
                J = G.subgroup(key_gens)
                key = frozenset(J.elements)
                if key not in found:
                    found[key] = J
                    changed = True
    out = sorted(found.values(), key=lambda N: (N.order, sorted(map(tuple, N.elements))))
    for N in out:
        assert is_normal(N, G)
    return out


def _order_histogram(G: FiniteGroup) -> dict[int, int]:
    hist: dict[int, int] = {}
    for o in G.element_orders:
        hist[o] = hist.get(o, 0) + 1
    return hist


def generating_sequence(G: FiniteGroup) -> list[int]:
    """A small deterministic generating sequence: repeatedly adjoin the first
    element outside the current closure."""
    gens: list[int] = []
    closed = {identity(G.degree)}
    while len(closed) < G.order:
        for i in range(1, G.order):
            if G.elements[i] not in closed:
                gens.append(i)
                closed = set(G.subgroup([G.elements[j] for j in gens]).elements)
                break
    return gens


def find_isomorphism(G: FiniteGroup, H: FiniteGroup,
                     bound: int = ISO_BOUND) -> list[int] | None:
    """An isomorphism G -> H as a list mapping G-indices to H-indices, or None.

    Order-histogram pruning followed by backtracking over generator images."""
    if G.order != H.order:
        return None
    if G.order > bound or H.order > bound:
        raise BoundExceeded(f"isomorphism test bound {bound} exceeded")
    if _order_histogram(G) != _order_histogram(H):
        return None
    gens = generating_sequence(G)
    if not gens:
        return [0]
    # BFS words for every element of G over the generating sequence.
    word_of: dict[int, tuple[int, int]] = {}  # elem -> (prev elem, gen position)
    frontier = [0]
    known = {0}
    while frontier:
        nxt = []
        for e in frontier:
            for pos, g in enumerate(gens):
                f = G.imul(e, g)
                if f not in known:
                    known.add(f)
                    word_of[f] = (e, pos)
                    nxt.append(f)
        frontier = nxt
    assert len(known) == G.order

    g_orders = G.element_orders
    h_orders = H.element_orders
    h_by_order: dict[int, list[int]] = {}
    for i, o in enumerate(h_orders):
        h_by_order.setdefault(o, []).append(i)
    # Partial-closure sizes along the generator chain, for pruning.
    chain_sizes = []
    for k in range(1, len(gens) + 1):
        chain_sizes.append(G.subgroup([G.elements[i] for i in gens[:k]]).order)

    imgs: list[int] = []

    def build_phi() -> list[int] | None:
        phi = [-1] * G.order
        phi[0] = 0
        frontier = [0]
        while frontier:
            nxt = []
            for e in frontier:
                for pos, g in enumerate(gens):
                    f = G.imul(e, g)
                    cand = H.imul(phi[e], imgs[pos])
                    if phi[f] == -1:
                        phi[f] = cand
                        nxt.append(f)
                    elif phi[f] != cand:
                        return None
            frontier = nxt
        if len(set(phi)) != G.order:
            return None
        # Homomorphism on (all elements) x (generators) suffices.
        for e in range(G.order):
            for pos, g in enumerate(gens):
                if phi[G.imul(e, g)] != H.imul(phi[e], imgs[pos]):
                    return None
        return phi

    def extend(k: int) -> list[int] | None:
        if k == len(gens):
            return build_phi()
        for cand in h_by_order.get(g_orders[gens[k]], []):
            imgs.append(cand)
            sub = H.subgroup([H.elements[i] for i in imgs])
            if sub.order == chain_sizes[k] and \
                    all(h_orders[H.imul(cand, imgs[j])] == g_orders[G.imul(gens[k], gens[j])]
                        for j in range(k)):
                res = extend(k + 1)
                if res is not None:
                    return res
            imgs.pop()
        return None

    return extend(0)


def are_isomorphic(G: FiniteGroup, H: FiniteGroup, bound: int = ISO_BOUND) -> bool:
    return find_isomorphism(G, H, bound=bound) is not None


def are_conjugate_subsets(Amb: FiniteGroup, S1, S2) -> bool:
    """True iff a^-1 S1 a = S2 (as sets) for some a in Amb.  S1, S2 are
    collections of permutations belonging to Amb's element set."""
    S1 = {tuple(s) for s in S1}
    S2 = {tuple(s) for s in S2}
    for s in S1 | S2:
        if s not in Amb.index:
            raise NotASubgroup("subset element outside the ambient group")
    if len(S1) != len(S2):
        return False
    if sorted(porder(s) for s in S1) != sorted(porder(s) for s in S2):
        return False
    for a in Amb.elements:
        if {pconj(s, a) for s in S1} == S2:
            return True
    return False
