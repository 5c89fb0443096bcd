"""Constructions of non-CCA Cayley graphs.

Two families: wreath products carrying the colour-preserving but
non-automorphic map tau', and line-graph / subdivision realizations over
edge- or arc-regular groups with local complete-colour-pair verification.
Every hypothesis is machine-checked at construction time, so the builders
double as oracles for the engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import builders
from .engine import is_colour_preserving, predicted_autc_complete
from .errors import HypothesisViolated, NotArcRegular, NotRegular
from .graphs import (ColouredCayleyGraph, PlainGraph, complete_cayley,
                     realize_line_graph_as_cayley, subdivision)
from .groups import FiniteGroup, close_generators, is_subgroup
from .perms import Perm, identity, pconj


# -- wreath products --------------------------------------------------------

@dataclass
class WreathWitness:
    X: FiniteGroup
    T_conn: list[int]
    tau_prime: Perm
    graph: ColouredCayleyGraph
    non_hom_pair: tuple[int, int]   # tau'(ab) != tau'(a)tau'(b) here

    def to_json_dict(self) -> dict:
        return {
            "order": self.X.order,
            "connection_set": [self.X.label(s) for s in self.T_conn],
            "tau_prime": list(self.tau_prime),
            "non_hom_pair": [self.X.label(i) for i in self.non_hom_pair],
        }


def _move_point_zero(H: FiniteGroup) -> FiniteGroup:
    """Relabel H's points so that point 0 is moved, when H is nontrivial."""
    if H.order == 1 or any(p[0] != 0 for p in H.elements):
        return H
    moved = next(q for q in range(H.degree)
                 for p in H.elements if p[q] != q)
    t = list(range(H.degree))
    t[0], t[moved] = t[moved], t[0]
    t = tuple(t)
    return FiniteGroup([pconj(p, t) for p in H.elements],
                       [pconj(p, t) for p in H.generators],
                       labels=H.labels, meta=H.meta)


def wreath_witness(G: FiniteGroup, S, tau, H: FiniteGroup) -> WreathWitness:
    """Build X = G wr H with connection set (H - 1) u S_1 u ... u S_m and the
    colour-preserving map tau' sending h*g_1*...*g_m to h*tau(g_1)*g_2*...*g_m.

    Hypotheses (all verified): S is an inverse-closed generating set of G;
    tau is a non-identity bijection fixing 1 with tau(sg) = s^{+-1} tau(g);
    and either H is nontrivial or tau is not a group automorphism."""
    n = G.order
    S = [s if isinstance(s, int) else G.index[tuple(s)] for s in S]
    tau = tuple(getattr(tau, "carrier", tau))
    if 0 in S:
        raise HypothesisViolated("first hypothesis: S contains the identity")
    if any(G.inverse[s] not in S for s in S):
        raise HypothesisViolated("first hypothesis: S is not inverse-closed")
    if G.subgroup([G.elements[s] for s in S]).order != n:
        raise HypothesisViolated("first hypothesis: S does not generate G")
    if sorted(tau) != list(range(n)) or tau[0] != 0:
        raise HypothesisViolated("first hypothesis: tau must be a bijection fixing 1")
    if tau == identity(n):
        raise HypothesisViolated("first hypothesis: tau is the identity")
    for s in S:
        ls, lsi = G.left_row(s), G.left_row(G.inverse[s])
        for g in range(n):
            if tau[ls[g]] not in (ls[tau[g]], lsi[tau[g]]):
                raise HypothesisViolated(
                    "first hypothesis: tau(sg) != s^{+-1} tau(g) at "
                    f"s={G.label(s)}, g={G.label(g)}")
    tau_is_aut = all(tau[G.imul(a, b)] == G.imul(tau[a], tau[b])
                     for a in range(n) for b in range(n))
    if H.order == 1 and tau_is_aut:
        raise HypothesisViolated(
            "second hypothesis: H is trivial and tau is an automorphism of G")

    H = _move_point_zero(H)
    X = builders.wreath_product(G, H)
    items = X.meta["items"]
    idx = {it: i for i, it in enumerate(items)}
    m = H.degree

    T = [idx[(h, (0,) * m)] for h in range(1, H.order)]
    for i in range(m):
        for s in S:
            gs = [0] * m
            gs[i] = s
            T.append(idx[(0, tuple(gs))])

    tau_prime = tuple(idx[(h, (tau[gs[0]],) + gs[1:])] for h, gs in items)
    graph = ColouredCayleyGraph(X, T)

    assert tau_prime[0] == 0
    assert is_colour_preserving(graph, tau_prime)
    pair = next(((a, b) for a in range(X.order) for b in range(X.order)
                 if tau_prime[X.imul(a, b)]
                 != X.imul(tau_prime[a], tau_prime[b])), None)
    assert pair is not None, "tau' unexpectedly multiplicative"
    return WreathWitness(X, T, tau_prime, graph, pair)


# -- complete colour pairs --------------------------------------------------

@dataclass
class CompleteColourPairCheck:
    local_G: FiniteGroup
    local_B: FiniteGroup
    is_pair: bool
    case: str                      # "1" | "2" | "3" | "CCA"


def is_complete_colour_pair(local_G: FiniteGroup,
                            local_B: FiniteGroup) -> CompleteColourPairCheck:
    """Decide whether (local_G, local_B) is a complete colour pair: local_G
    must be one of the exceptional cases of the complete-graph classification
    and every element of local_B must preserve colours on K_{local_G}."""
    deg = local_G.degree
    if local_G.order != deg:
        raise NotRegular("local group order differs from the point count")
    point_of = [p[0] for p in local_G.elements]
    if len(set(point_of)) != deg:
        raise NotRegular("local group is not regular on the points")
    if local_B.degree != deg or not is_subgroup(local_G, local_B):
        raise HypothesisViolated("local_G is not a subgroup of local_B")
    elem_of_point = {pt: e for e, pt in enumerate(point_of)}
    case = predicted_autc_complete(local_G).case
    K = complete_cayley(local_G)
    preserved = all(
        is_colour_preserving(K, tuple(elem_of_point[b[pt]] for pt in point_of))
        for b in local_B.elements)
    return CompleteColourPairCheck(local_G, local_B,
                                   preserved and case != "CCA", case)


# -- line graph / subdivision constructions --------------------------------

def _check_acts(P: PlainGraph, A: FiniteGroup, name: str):
    eset = set(P.edges)
    for g in A.generators or []:
        if len(g) != P.n:
            raise HypothesisViolated(f"{name} has the wrong degree")
        for u, v in P.edges:
            if (min(g[u], g[v]), max(g[u], g[v])) not in eset:
                raise HypothesisViolated(f"{name} is not a group of automorphisms")


def _vertex_orbits(P: PlainGraph, H: FiniteGroup) -> list[frozenset]:
    seen = set()
    orbits = []
    for v in range(P.n):
        if v in seen:
            continue
        orb = frozenset(h[v] for h in H.elements)
        seen |= orb
        orbits.append(orb)
    return orbits


def _local_group(P: PlainGraph, A: FiniteGroup, v: int) -> FiniteGroup:
    """The permutation group induced on the neighbourhood of v by the
    vertex-stabiliser A_v."""
    nbrs = P.adj[v]
    pos = {u: i for i, u in enumerate(nbrs)}
    induced = {tuple(pos[g[u]] for u in nbrs) for g in A.elements if g[v] == v}
    return close_generators(sorted(induced), len(nbrs),
                            cap=len(induced) + 1)


def _special_clique_checks(P: PlainGraph, Gamma: ColouredCayleyGraph):
    """Special cliques (edges through one P-vertex) must partition the edges
    of the line graph, with each line-graph vertex in exactly two of them."""
    cliques = []
    for v in range(P.n):
        cliques.append({Gamma.vertex_of_edge[(min(v, u), max(v, u))]
                        for u in P.adj[v]})
    membership = [0] * Gamma.n
    for c in cliques:
        for i in c:
            membership[i] += 1
    assert all(k == 2 for k in membership), "vertex not in exactly 2 special cliques"
    for i, j in Gamma.edges:
        assert sum(1 for c in cliques if i in c and j in c) == 1, \
            "line-graph edge not in exactly one special clique"


def line_graph_construction(P: PlainGraph, G: FiniteGroup, H: FiniteGroup):
    """Realize L(P) as a coloured Cayley graph on an edge-regular G and embed
    H as colour-preserving automorphisms.

    Hypotheses verified: P connected bipartite; G <= H <= Aut(P); G
    edge-regular; the H-orbits on vertices are exactly the biparts; at every
    vertex the induced local groups coincide or form a complete colour pair."""
    if not P.is_connected():
        raise HypothesisViolated("graph is not connected")
    bip = P.bipartition or P.two_colouring()
    if bip is None:
        raise HypothesisViolated("graph is not bipartite")
    _check_acts(P, H, "H")
    if not is_subgroup(G, H):
        raise HypothesisViolated("G is not a subgroup of H")

    orbits = set(_vertex_orbits(P, H))
    if orbits != {frozenset(bip[0]), frozenset(bip[1])}:
        raise HypothesisViolated("H-orbits on vertices are not the biparts")

    for v in range(P.n):
        loc_G = _local_group(P, G, v)
        loc_H = _local_group(P, H, v)
        if set(loc_G.elements) == set(loc_H.elements):
            continue
        if not is_complete_colour_pair(loc_G, loc_H).is_pair:
            raise HypothesisViolated(
                f"local pair condition fails at vertex {v}")

    Gamma = realize_line_graph_as_cayley(P, G)
    _special_clique_checks(P, Gamma)

    def induced(h):
        out = []
        for u, v in Gamma.edge_of_vertex:
            hu, hv = h[u], h[v]
            out.append(Gamma.vertex_of_edge[(min(hu, hv), max(hu, hv))])
        return tuple(out)

    emb_elems = [induced(h) for h in H.elements]
    if len(set(emb_elems)) != H.order:
        raise HypothesisViolated("H does not act faithfully on the edges")
    H_emb = FiniteGroup(emb_elems, [induced(h) for h in H.generators],
                        labels=H.labels)
    for p in H_emb.elements:
        assert is_colour_preserving(Gamma, p)
    return Gamma, H_emb


def subdivision_construction(P: PlainGraph, G: FiniteGroup, H: FiniteGroup):
    """Realize L(S(P)) as a coloured Cayley graph on an arc-regular G with H
    embedded as colour-preserving automorphisms, by lifting both groups to
    the subdivision graph and delegating to the line-graph construction."""
    if not P.is_connected():
        raise HypothesisViolated("graph is not connected")
    _check_acts(P, H, "H")
    if not is_subgroup(G, H):
        raise HypothesisViolated("G is not a subgroup of H")
    arcs = [(u, v) for u, v in P.edges] + [(v, u) for u, v in P.edges]
    if G.order != len(arcs):
        raise NotArcRegular(f"|G| = {G.order} but the graph has {len(arcs)} arcs")
    u0, v0 = arcs[0]
    if len({(g[u0], g[v0]) for g in G.elements}) != len(arcs):
        raise NotArcRegular("G is not regular on the arcs")

    SP = subdivision(P)
    edge_pos = {e: k for k, e in enumerate(P.edges)}

    def lift(g):
        img = [g[v] for v in range(P.n)]
        for u, v in P.edges:
            gu, gv = g[u], g[v]
            img.append(P.n + edge_pos[(min(gu, gv), max(gu, gv))])
        return tuple(img)

    G2 = FiniteGroup([lift(g) for g in G.elements],
                     [lift(g) for g in G.generators], labels=G.labels)
    H2 = FiniteGroup([lift(h) for h in H.elements],
                     [lift(h) for h in H.generators], labels=H.labels)
    return line_graph_construction(SP, G2, H2)
