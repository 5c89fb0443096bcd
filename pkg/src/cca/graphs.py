"""Coloured Cayley graphs, plain graphs, and the graph operators used by the
non-CCA constructions (quotient, line graph, subdivision, Heawood graph,
complete Cayley graph), plus DOT/JSON export.
"""

from __future__ import annotations

import json
from collections import deque

from .errors import (ContainsIdentity, NotEdgeRegular, NotInverseClosed,
                     NotNormal)
from .groups import FiniteGroup, close_generators, is_normal, is_subgroup
from .perms import Perm, identity, pmul


class PlainGraph:
    """Simple undirected graph on vertices 0..n-1."""

    def __init__(self, n: int, edges, bipartition=None):
        self.n = n
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops not allowed")
            es.add((min(u, v), max(u, v)))
        self.edges = sorted(es)
        self.adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            self.adj[u].append(v)
            self.adj[v].append(u)
        for nb in self.adj:
            nb.sort()
        self.bipartition = bipartition

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == self.n

    def two_colouring(self):
        """Bipartition as a pair of sorted vertex lists, or None."""
        colour = [-1] * self.n
        for start in range(self.n):
            if colour[start] != -1:
                continue
            colour[start] = 0
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in self.adj[u]:
                    if colour[v] == -1:
                        colour[v] = 1 - colour[u]
                        queue.append(v)
                    elif colour[v] == colour[u]:
                        return None
        return (sorted(i for i in range(self.n) if colour[i] == 0),
                sorted(i for i in range(self.n) if colour[i] == 1))

    def girth(self) -> int:
        best = 0
        for src in range(self.n):
            dist = {src: 0}
            parent = {src: -1}
            queue = deque([src])
            while queue:
                u = queue.popleft()
                for v in self.adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        queue.append(v)
                    elif parent[u] != v:
                        cyc = dist[u] + dist[v] + 1
                        if best == 0 or cyc < best:
                            best = cyc
        return best


def line_graph(P: PlainGraph) -> PlainGraph:
    m = len(P.edges)
    edges = []
    incident: list[list[int]] = [[] for _ in range(P.n)]
    for i, (u, v) in enumerate(P.edges):
        incident[u].append(i)
        incident[v].append(i)
    for lst in incident:
        for a in range(len(lst)):
            for b in range(a + 1, len(lst)):
                edges.append((lst[a], lst[b]))
    L = PlainGraph(m, edges)
    L.meta_edges = list(P.edges)
    return L


def subdivision(P: PlainGraph) -> PlainGraph:
    edges = []
    for k, (u, v) in enumerate(P.edges):
        edges.append((u, P.n + k))
        edges.append((v, P.n + k))
    S = PlainGraph(P.n + len(P.edges), edges,
                   bipartition=(list(range(P.n)),
                                list(range(P.n, P.n + len(P.edges)))))
    S.meta_edges = list(P.edges)
    return S


def heawood() -> PlainGraph:
    """Point-line incidence graph of the Fano plane; points 0..6, lines 7..13
    with line i = {i, i+1, i+3} mod 7."""
    edges = []
    for i in range(7):
        for d in (0, 1, 3):
            edges.append(((i + d) % 7, 7 + i))
    return PlainGraph(14, edges, bipartition=(list(range(7)), list(range(7, 14))))


def graph_automorphisms(P: PlainGraph, max_n: int = 50) -> list[Perm]:
    """All automorphisms by backtracking with degree/refinement pruning."""
    if P.n > max_n:
        raise ValueError(f"graph too large for backtracking ({P.n} > {max_n})")
    # iterated neighbourhood-colour refinement
    colour = [len(P.adj[v]) for v in range(P.n)]
    while True:
        sig = [(colour[v], tuple(sorted(colour[u] for u in P.adj[v])))
               for v in range(P.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [palette[s] for s in sig]
        if new == colour:
            break
        colour = new
    adjset = [set(nb) for nb in P.adj]
    order = sorted(range(P.n), key=lambda v: (colour.count(colour[v]), v))
    out: list[Perm] = []
    img = [-1] * P.n
    used = [False] * P.n

    def rec(k: int):
        if k == P.n:
            out.append(tuple(img))
            return
        v = order[k]
        for w in range(P.n):
            if used[w] or colour[w] != colour[v]:
                continue
            ok = True
            for u in order[:k]:
                if (u in adjset[v]) != (img[u] in adjset[w]):
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                rec(k + 1)
                used[w] = False
                img[v] = -1

    rec(0)
    return sorted(out)


# -- coloured Cayley graphs ------------------------------------------------

class ColouredCayleyGraph:
    """Cay(G, S): vertices are G's element indices, an edge {g, sg} for every
    g and s in S, coloured by the inverse pair {s, s^-1}."""

    def __init__(self, group: FiniteGroup, conn: list[int]):
        self.group = group
        n = group.order
        seen = set()
        conn_list = []
        for s in conn:
            if s == 0:
                raise ContainsIdentity("connection set contains the identity")
            if s not in seen:
                seen.add(s)
                conn_list.append(s)
        for s in conn_list:
            if group.inverse[s] not in seen:
                raise NotInverseClosed(
                    f"connection set is not inverse-closed at {group.label(s)}")
        self.conn = conn_list
        # colour classes: inverse pairs in first-appearance order
        self.colour_classes: list[tuple[int, ...]] = []
        class_of: dict[int, int] = {}
        for s in conn_list:
            if s in class_of:
                continue
            si = group.inverse[s]
            cls = (s,) if si == s else (s, si)
            class_of[s] = len(self.colour_classes)
            class_of[si] = len(self.colour_classes)
            self.colour_classes.append(cls)
        self.n = n
        self.adjacency: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        self.edge_colour: dict[tuple[int, int], int] = {}
        for ci, cls in enumerate(self.colour_classes):
            s = cls[0]
            row = group.left_row(s)
            for v in range(n):
                w = row[v]
                key = (min(v, w), max(v, w))
                if key not in self.edge_colour:
                    self.edge_colour[key] = ci
                    self.adjacency[v].append((w, ci, +1))
                    self.adjacency[w].append((v, ci, -1))

    @property
    def edges(self):
        return sorted(self.edge_colour)

    def to_plain(self) -> PlainGraph:
        return PlainGraph(self.n, self.edges)


def cayley(G: FiniteGroup, S) -> ColouredCayleyGraph:
    """S may contain element indices or permutations of G."""
    idxs = [s if isinstance(s, int) else G.index[tuple(s)] for s in S]
    return ColouredCayleyGraph(G, idxs)


def is_connected(Gamma: ColouredCayleyGraph) -> bool:
    """Graph-side BFS cross-checked against <S> = G."""
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, _, _ in Gamma.adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    graph_side = len(seen) == Gamma.n
    gens = [Gamma.group.elements[s] for s in Gamma.conn]
    group_side = close_generators(gens, Gamma.group.degree,
                                  cap=Gamma.n).order == Gamma.n if gens else Gamma.n == 1
    if graph_side != group_side:
        raise RuntimeError("internal error: graph/group connectivity disagree")
    return graph_side


def complete_cayley(G: FiniteGroup) -> ColouredCayleyGraph:
    if G.order < 2:
        raise ValueError("complete Cayley graph needs |G| >= 2")
    return ColouredCayleyGraph(G, list(range(1, G.order)))


def quotient_graph(Gamma: ColouredCayleyGraph, N: FiniteGroup) -> ColouredCayleyGraph:
    """Cay(G/N, S/N).  The quotient group is realised by the action of G on
    the right cosets of N (kernel is exactly N since N is normal)."""
    G = Gamma.group
    if not is_subgroup(N, G) or not is_normal(N, G):
        raise NotNormal("N must be a normal subgroup of G")
    nset = set(N.elements)
    coset_of = {}
    cosets = []
    for i, e in enumerate(G.elements):
        if i in coset_of:
            continue
        coset = sorted(G.index[pmul(x, e)] for x in nset)
        ci = len(cosets)
        cosets.append(coset)
        for j in coset:
            coset_of[j] = ci
    # identity coset must come first; it does, since element 0 is identity
    assert coset_of[0] == 0

    def act(i: int) -> tuple[int, ...]:
        row = G.right_row(i)
        return tuple(coset_of[row[c[0]]] for c in cosets)

    gen_imgs = [act(G.index[g]) for g in G.generators]
    Q = close_generators(gen_imgs, len(cosets), cap=len(cosets) + 1)
    assert Q.order == G.order // N.order
    labels = ["{" + ",".join(G.label(j) for j in cosets[c]) + "}"
              for c in range(len(cosets))]
    # element of Q reached by s: the image of s under the action homomorphism
    conn = []
    for s in Gamma.conn:
        q = Q.index[act(s)]
        if q != 0 and q not in conn:
            conn.append(q)
    # relabel Q's elements by the coset they send coset 0 to
    Q.labels = [labels[p[0]] for p in Q.elements]
    return ColouredCayleyGraph(Q, conn)


def realize_line_graph_as_cayley(P: PlainGraph, G: FiniteGroup) -> ColouredCayleyGraph:
    """View L(P) as a Cayley graph on an edge-regular G <= Aut(P).

    Vertex g of the Cayley graph is the edge e0^g, where e0 is the
    lexicographically least edge."""
    edge_index = {e: i for i, e in enumerate(P.edges)}

    def edge_image(e, g):
        u, v = g[e[0]], g[e[1]]
        return (min(u, v), max(u, v))

    for g in G.elements:
        for e in P.edges:
            if edge_image(e, g) not in edge_index:
                raise NotEdgeRegular("G does not act on the graph by automorphisms")
    if G.order != len(P.edges):
        raise NotEdgeRegular(f"|G| = {G.order} but the graph has {len(P.edges)} edges")
    e0 = P.edges[0]
    orbit = {edge_image(e0, g) for g in G.elements}
    if len(orbit) != len(P.edges):
        raise NotEdgeRegular("G is not transitive on edges")

    def adjacent_edges(e, f):
        return e != f and len(set(e) & set(f)) == 1

    S = [i for i, g in enumerate(G.elements)
         if adjacent_edges(edge_image(e0, g), e0)]
    Gamma = ColouredCayleyGraph(G, S)
    Gamma.base_edge = e0
    Gamma.edge_of_vertex = [edge_image(e0, g) for g in G.elements]
    Gamma.vertex_of_edge = {e: i for i, e in enumerate(Gamma.edge_of_vertex)}
    # sanity: Cayley adjacency matches line-graph adjacency
    for (u, v) in Gamma.edges:
        assert adjacent_edges(Gamma.edge_of_vertex[u], Gamma.edge_of_vertex[v])
    return Gamma


# -- export ----------------------------------------------------------------

_DOT_PALETTE = ["red", "blue", "green", "orange", "purple", "brown", "cyan",
                "magenta", "gold", "darkgreen", "navy", "gray"]


def to_dot(Gamma: ColouredCayleyGraph) -> str:
    lines = ["graph cayley {"]
    for v in range(Gamma.n):
        lines.append(f'  {v} [label="{Gamma.group.label(v)}"];')
    for (u, v), c in sorted(Gamma.edge_colour.items()):
        col = _DOT_PALETTE[c % len(_DOT_PALETTE)]
        lines.append(f"  {u} -- {v} [color={col}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(Gamma: ColouredCayleyGraph) -> dict:
    return {
        "group_spec": Gamma.group.meta.get("spec"),
        "connection_set": [Gamma.group.label(s) for s in Gamma.conn],
        "edges": [[u, v, c] for (u, v), c in sorted(Gamma.edge_colour.items())],
    }


def to_json(Gamma: ColouredCayleyGraph) -> str:
    return json.dumps(to_json_dict(Gamma), sort_keys=True)
