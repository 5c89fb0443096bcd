import pytest

from cca import builders
from cca.constructions import (is_complete_colour_pair,
                               line_graph_construction,
                               subdivision_construction, wreath_witness)
from cca.engine import autc_group, is_colour_preserving
from cca.errors import HypothesisViolated, NotArcRegular, NotRegular
from cca.graphs import PlainGraph, graph_automorphisms, heawood
from cca.groups import close_generators, trivial_group
from cca.recipes import _dihedral_coset_tau, _heawood_groups


def test_wreath_witness_z3():
    Z3 = builders.cyclic(3)
    W = wreath_witness(Z3, [1, 2], builders.named_map(Z3, "inversion"),
                       builders.cyclic(2))
    assert W.X.order == 18
    assert W.tau_prime[0] == 0
    assert is_colour_preserving(W.graph, W.tau_prime)
    a, b = W.non_hom_pair
    assert W.tau_prime[W.X.imul(a, b)] != \
        W.X.imul(W.tau_prime[a], W.tau_prime[b])
    assert autc_group(W.graph).verdict == "NonCCA"


def test_wreath_witness_hypothesis_gates():
    Z3 = builders.cyclic(3)
    Z4 = builders.cyclic(4)
    H2 = builders.cyclic(2)
    inv3 = builders.named_map(Z3, "inversion")
    with pytest.raises(HypothesisViolated, match="identity"):
        wreath_witness(Z3, [0, 1, 2], inv3, H2)
    with pytest.raises(HypothesisViolated, match="inverse-closed"):
        wreath_witness(Z4, [1], builders.named_map(Z4, "inversion"), H2)
    with pytest.raises(HypothesisViolated, match="generate"):
        wreath_witness(Z4, [2], builders.named_map(Z4, "inversion"), H2)
    # inversion on an abelian group is an automorphism: trivial H is rejected
    with pytest.raises(HypothesisViolated, match="automorphism"):
        wreath_witness(Z3, [1, 2], inv3, trivial_group(1))
    # tau that scrambles colours is rejected
    with pytest.raises(HypothesisViolated, match="tau"):
        wreath_witness(Z4, [1, 3], (0, 2, 1, 3), H2)


def test_wreath_witness_trivial_top_group_needs_nonhom_tau():
    Q = builders.quaternion8()
    S = [Q.label_index(l) for l in ("i", "-i", "j", "-j")]
    W = wreath_witness(Q, S, builders.named_map(Q, "inversion"),
                       trivial_group(1))
    assert W.X.order == 8
    assert autc_group(W.graph).verdict == "NonCCA"


def test_dihedral_coset_tau_satisfies_hypotheses():
    D = builders.dihedral(3)
    tau, S = _dihedral_coset_tau(D)
    W = wreath_witness(D, S, tau, builders.cyclic(2))
    assert W.X.order == 72
    assert autc_group(W.graph).verdict == "NonCCA"


def test_complete_colour_pair_q8():
    A = builders.q8_times_z2(0)
    AR = A.right_regular()
    sigmas = [builders.named_map(A, f"sigma-{u}").carrier for u in "ijk"]
    B = close_generators(list(AR.generators) + sigmas, 8, cap=65)
    chk = is_complete_colour_pair(AR, B)
    assert chk.is_pair and chk.case == "3"


def test_complete_colour_pair_rejected_for_plain_group():
    G = builders.symmetric(3).right_regular()
    chk = is_complete_colour_pair(G, G)
    assert not chk.is_pair and chk.case == "CCA"


def test_complete_colour_pair_requires_regularity():
    S3 = builders.symmetric(3)
    with pytest.raises(NotRegular):
        is_complete_colour_pair(S3, S3)


def test_line_graph_construction_heawood():
    P, _, Hbip, G21, _ = _heawood_groups()
    Gamma, Hemb = line_graph_construction(P, G21, Hbip)
    assert Gamma.n == 21
    assert Hemb.order == 168
    for p in Hemb.generators:
        assert is_colour_preserving(Gamma, p)
    res = autc_group(Gamma)
    assert res.verdict == "NonCCA"
    assert res.full_group.order == 168
    assert set(res.full_group.elements) == set(Hemb.elements)


def test_line_graph_construction_gates():
    P, full, Hbip, G21, _ = _heawood_groups()
    # orbits of the full group are not the two biparts
    with pytest.raises(HypothesisViolated, match="orbit"):
        line_graph_construction(P, G21, full)
    square = PlainGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    Z4R = builders.cyclic(4)
    with pytest.raises(HypothesisViolated):
        line_graph_construction(square, Z4R, Z4R)


def test_subdivision_construction_heawood():
    P, full, _, _, G42 = _heawood_groups()
    Gamma, Hemb = subdivision_construction(P, G42, full)
    assert Gamma.n == 42
    assert Hemb.order == 336
    res = autc_group(Gamma)
    assert res.verdict == "NonCCA"
    assert res.full_group.order == 336


def test_subdivision_requires_arc_regular():
    P, full, Hbip, G21, _ = _heawood_groups()
    with pytest.raises(NotArcRegular):
        subdivision_construction(P, G21, Hbip)
