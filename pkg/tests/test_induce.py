import random

import pytest

from centalg.cyclo import CyclotomicNumber as Cyc, ONE, ZERO
from centalg.errors import OrientabilityViolation
from centalg.induce import (centraliser_basis, centraliser_basis_from_generators,
                            centraliser_membership, induce_representation,
                            orbital_matrix, orbital_orientable)
from centalg.perm import (DoubleCosetDecomposition, PermGroup, Permutation,
                          group_closure, point_stabiliser)
from centalg.structure import linear_characters
from tests.groups import frobenius21, frobenius80, sym_pairs


def c7c3_rep(char_index=1):
    G = frobenius21()
    H = point_stabiliser(G, 1)
    chi = linear_characters(H)[char_index]
    return induce_representation(G, H, chi)


def test_factor_maps():
    rep = c7c3_rep()
    G = rep.group
    h, t, u = rep.factor_maps(G.identity())
    assert h.is_identity() and t.is_identity() and u == 1
    for g in G.elements:
        h, t, u = rep.factor_maps(g)
        assert h * t == g
        assert rep.subgroup.contains(h)
        assert u == rep.character(h)


def test_homomorphism_exhaustive():
    rep = c7c3_rep()
    mats = {g.images: rep.materialize(g) for g in rep.group.elements}
    for g1 in rep.group.elements:
        for g2 in rep.group.elements:
            assert mats[g1.images] * mats[g2.images] == mats[(g1 * g2).images]


def test_trivial_character_gives_permutation_matrices():
    G = frobenius80()
    H = point_stabiliser(G, 1)
    rep = induce_representation(G, H, linear_characters(H)[0])
    assert rep.degree == 16
    for g in G.generators:
        mat = rep.materialize(g)
        assert all(u == 1 for u in mat.units)


def test_subgroup_equal_group():
    G = frobenius21()
    chi = linear_characters(G)[1]
    rep = induce_representation(G, G, chi)
    assert rep.degree == 1
    for g in G.elements:
        assert rep.materialize(g).units[0] == chi(g)


def test_entries_in_cube_roots():
    rep = c7c3_rep()
    w = Cyc.zeta(3)
    allowed = {ONE, w, w * w}
    for g in rep.group.elements:
        assert set(rep.materialize(g).units) <= allowed


def test_orientability_diagonal_always():
    rep = c7c3_rep()
    ok, wit = orbital_orientable(rep, rep.group.identity())
    assert ok and wit is None


def test_orientability_trivial_character():
    G = sym_pairs(5)
    H = point_stabiliser(G, 1)
    rep = induce_representation(G, H, linear_characters(H)[0])
    dc = DoubleCosetDecomposition(G, H)
    assert all(orbital_orientable(rep, t)[0] for t in dc.reps)


def test_non_orientable_witness_sym5():
    G = sym_pairs(5)
    H = point_stabiliser(G, 1)
    # character with kernel Sym({3,4,5}): kills (3,4), negates (1,2)
    pairs_t34 = next(g for g in H.elements
                     if g.order() == 2 and g(0) == 0 and _moves_as(g, G, (3, 4)))
    chars = linear_characters(H)
    t12 = next(g for g in H.elements if g.order() == 2 and _moves_as(g, G, (1, 2)))
    chi = next(ch for ch in chars if ch(pairs_t34) == 1 and ch(t12) == -1)
    rep = induce_representation(G, H, chi)
    dc = DoubleCosetDecomposition(G, H)
    disjoint_rep = next(t for t in dc.reps if t(0) >= 7)  # image pair misses {1,2}
    ok, witness = orbital_orientable(rep, disjoint_rep)
    assert not ok
    # witness is conjugate to the transposition (1,2): same cycle type on pairs
    assert sorted(len(c) for c in witness.cycles()) == sorted(
        len(c) for c in t12.cycles())
    with pytest.raises(OrientabilityViolation):
        orbital_matrix(rep, disjoint_rep)
    basis = centraliser_basis(rep)
    assert basis.non_orientable == 1 and basis.rank == 2

    # 0/1 indicator of the non-orientable orbital is not in the centraliser
    n = G.degree
    ind = [[ZERO] * n for _ in range(n)]
    for k in G.elements:
        ind[k(0)][(disjoint_rep * k)(0)] = ONE
    assert not centraliser_membership(rep, ind)


def _moves_as(g, G, points):
    """g moves exactly the pairs meeting the given underlying points."""
    from itertools import combinations

    pairs = list(combinations(range(1, 6), 2))
    moved = {pairs[i] for i in range(len(pairs)) if g(i) != i}
    expect = {p for p in pairs if set(p) & set(points) and not set(p) >= set(points)}
    return moved == expect


def test_orbital_matrices_c7c3():
    rep = c7c3_rep()
    basis = centraliser_basis(rep)
    assert basis.rank == 3 and basis.commutative
    assert basis.subdegree_profile() == [1, 3, 3]
    ident = basis.matrices[0]
    assert ident.support_size == 7
    assert all(ident.entry(i, i) == 1 for i in range(7))
    w = Cyc.zeta(3)
    for m in basis.matrices[1:]:
        assert set(m.entries.values()) <= {ONE, w, w * w}
        anchor = min(c for c in m.entries if c[0] == 0)
        assert m.entries[anchor] == 1


def test_trivial_character_orbital_is_adjacency():
    from tests.groups import paley_group

    G = paley_group(5)
    H = point_stabiliser(G, 1)
    rep = induce_representation(G, H, linear_characters(H)[0])
    basis = centraliser_basis(rep)
    assert basis.rank == 3
    # one nontrivial orbital is exactly the Paley graph (quadratic residues),
    # the other its complement; matrix indices live in transversal order
    pt = [t(0) for t in rep.transversal.reps]
    residues = {1, 4}
    supports = []
    for m in basis.matrices[1:]:
        assert all(v == 1 for v in m.entries.values())
        supports.append({(pt[i] - pt[j]) % 5 for (i, j) in m.entries})
    assert residues in supports and {2, 3} in supports


def test_structure_constants_reproduce_products():
    rep = c7c3_rep()
    basis = centraliser_basis(rep)
    r = basis.rank
    for i in range(r):
        for j in range(r):
            coeffs = basis.product_coefficients(i, j)
            # recompute product densely
            a = basis.matrices[i].dense()
            b = basis.matrices[j].dense()
            n = basis.degree
            prod = [[sum((a[x][k] * b[k][y] for k in range(n)), ZERO)
                     for y in range(n)] for x in range(n)]
            expect = [[sum((coeffs[k] * basis.matrices[k].entry(x, y)
                            for k in range(r)), ZERO)
                       for y in range(n)] for x in range(n)]
            assert prod == expect


def test_membership():
    rep = c7c3_rep()
    basis = centraliser_basis(rep)
    n = basis.degree
    ident = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    assert centraliser_membership(rep, ident)
    for m in basis.matrices:
        assert centraliser_membership(rep, m)


def test_gauge_route_agrees_with_transversal_route():
    for idx in (0, 1):
        rep = c7c3_rep(idx)
        b1 = centraliser_basis(rep)
        b2 = centraliser_basis_from_generators(rep.generator_matrices())
        assert b1.rank == b2.rank
        assert sorted(b1.subdegree_profile()) == sorted(b2.subdegree_profile())
        assert b1.commutative == b2.commutative


def test_fill_rule_post_hoc():
    rep = c7c3_rep()
    dc = DoubleCosetDecomposition(rep.group, rep.subgroup, rep.transversal)
    rng = random.Random(0)
    mats = {t.images: orbital_matrix(rep, t) for t in dc.reps}
    for _ in range(100):
        g = rep.group.elements[rng.randrange(rep.group.order)]
        t = dc.reps[rng.randrange(len(dc.reps))]
        m = mats[t.images]
        i = rep.transversal.coset_index(g)
        j = rep.transversal.coset_index(t * g)
        assert m.entry(i, j) == rep.unit_part(g).inverse() * rep.unit_part(t * g)
