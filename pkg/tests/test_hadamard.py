import random

import mpmath
import numpy
import pytest

from centalg.chartable import ct_exact
from centalg.cyclo import ComplexBall, CyclotomicNumber as Cyc, ONE, ZERO
from centalg.errors import NotConstantRowSum, UnsupportedFieldSize
from centalg.extension import Cocycle, cocycle_space, extension_from_cocycle
from centalg.hadamard import (DenseMatrix, assemble, cocyclic_matrix,
                              development_roundtrip_checks, extension_reps,
                              group_developed, is_complex_hadamard,
                              is_strictly_cocyclic, is_strictly_group_developed,
                              monomially_equivalent, paley_I, regular_reps,
                              row_sum_square_check, sylvester)
from centalg.induce import MonomialMatrix, centraliser_basis, induce_representation
from centalg.perm import Permutation, PermGroup, group_closure, point_stabiliser
from centalg.structure import character_table_dixon, linear_characters
from tests.groups import frobenius21, frobenius80, klein_four


def test_is_hadamard_small():
    M = DenseMatrix([[ONE, ONE], [ONE, -ONE]])
    assert is_complex_hadamard(M)
    allones = DenseMatrix([[ONE, ONE], [ONE, ONE]])
    assert not is_complex_hadamard(allones)


def test_assemble_identity():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    rep = induce_representation(G, H, linear_characters(H)[1])
    basis = centraliser_basis(rep)
    M = assemble(basis, [ONE, ZERO, ZERO])
    assert M.is_scalar(1)


def test_example52_assembly():
    G = frobenius80()
    H = point_stabiliser(G, 1)
    CT = character_table_dixon(G)
    rep = induce_representation(G, H, linear_characters(H)[0])
    basis = centraliser_basis(rep)
    M = assemble(basis, [ONE, ONE, -ONE, -ONE])
    assert M.size == 16
    vals = {v for row in M.entries for v in row}
    assert vals == {ONE, -ONE}
    assert (M * M.transpose()).is_scalar(16)
    assert is_complex_hadamard(M)
    # row sums +-4 and n = 16 = s^2
    s = row_sum_square_check(M)
    assert s * s == 16
    # eigenvalue set {-4, 4} through the character table action
    act = ct_exact(basis, CT)
    alpha = [ONE, ONE, -ONE, -ONE]
    lams = set()
    for row in act.rows:
        lam = sum((row[k] * alpha[k] for k in range(4)), ZERO)
        lams.add(lam.as_rational())
    assert lams == {-4, 4}


def test_example72_assembly_exact():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    rep = induce_representation(G, H, linear_characters(H)[1])
    basis = centraliser_basis(rep)
    g = Cyc.gauss_sum(7)
    alpha1 = (-3 + g) / 4
    M = assemble(basis, [ONE, alpha1, ONE])
    assert (M * M.conjugate_transpose()).is_scalar(7)
    assert is_complex_hadamard(M)


def test_regular_rep_identities():
    for G in (klein_four(), frobenius21()):
        R, L, N = regular_reps(G)
        n = G.order
        ident = MonomialMatrix(Permutation.identity(n), [ONE] * n)
        assert N * N == ident
        for g in G.elements:
            assert N * R(g) * N == L(g)
            lt = L(g).conjugate_transpose()
            assert lt == L(g.inverse())


def test_group_developed_pattern():
    G = klein_four()
    f = [ONE, ONE, -ONE, -ONE]
    M = group_developed(G, f)
    assert is_strictly_group_developed(M, G)
    assert M.entries[0] == f
    allones = group_developed(G, [ONE] * 4)
    assert all(v == 1 for row in allones.entries for v in row)


def test_extension_identities():
    G = klein_four()
    space = cocycle_space(G, 2)
    for psi in space.class_representatives()[:4]:
        ext = extension_from_cocycle(G, psi)
        R, L, N = extension_reps(ext)
        n = G.order
        elems = [(a, g) for a in range(2) for g in G.elements]
        # R is a homomorphism; R(a,g) N L(a,g)* = N
        for a, g in elems:
            for b, h in elems[:4]:
                prod = R(a, g) * R(b, h)
                c, k = ext.multiply((a, G.index_of(g)), (b, G.index_of(h)))
                assert prod == R(c, G.elements[k])
        for a, g in elems:
            assert R(a, g) * N * L(a, g).conjugate_transpose() == N


def test_cocyclic_roundtrips():
    rng = random.Random(11)
    G = klein_four()
    space = cocycle_space(G, 2)
    for psi in space.class_representatives():
        ext = extension_from_cocycle(G, psi)
        fails = development_roundtrip_checks(G, rng, samples=4, ext=ext)
        assert fails == []


def test_group_roundtrips():
    rng = random.Random(12)
    for G in (group_closure([Permutation.from_cycles(4, [(1, 2, 3, 4)])]),
              klein_four(), frobenius21()):
        assert development_roundtrip_checks(G, rng, samples=6) == []


def test_trivial_cocycle_reduces_to_group_development():
    G = klein_four()
    ext = extension_from_cocycle(G, Cocycle.trivial(G, 2))
    phi = [ONE, -ONE, -ONE, ONE]
    assert cocyclic_matrix(ext, phi) == group_developed(G, phi)


def test_paley_matrices():
    for q in (3, 7, 11):
        P = paley_I(q)
        assert (P * P.conjugate_transpose()).is_scalar(q + 1)
        assert is_complex_hadamard(P)
    with pytest.raises(UnsupportedFieldSize):
        paley_I(5)
    with pytest.raises(UnsupportedFieldSize):
        paley_I(9)


def test_sylvester():
    S = sylvester(2)
    assert is_complex_hadamard(S)
    # equals the Klein character table as a set of rows
    T = character_table_dixon(klein_four())
    srows = {tuple(v.as_rational() for v in row) for row in S.entries}
    trows = {tuple(v.as_rational() for v in row) for row in T.rows}
    assert srows == trows


def test_row_sum_check_negative():
    with pytest.raises(NotConstantRowSum):
        row_sum_square_check(paley_I(7))
    assert row_sum_square_check(DenseMatrix([[ONE]])) == 1


def test_lemma_oracle_random_unit_matrices():
    """Hadamard test agrees with the eigenvalue-based oracle on random
    4 x 4 unit matrices and on planted Hadamard cases."""
    rng = random.Random(13)
    roots = [Cyc.zeta(8, k) for k in range(8)]

    def random_unit_matrix():
        return DenseMatrix([[roots[rng.randrange(8)] for _ in range(4)]
                            for _ in range(4)])

    planted = [sylvester(2), paley_I(3)]
    z = Cyc.zeta(12, 5)
    planted.append(DenseMatrix([[ONE, ONE, ONE, ONE],
                                [ONE, -ONE, z, -z],
                                [ONE, ONE, -ONE, -ONE],
                                [ONE, -ONE, -z, z]]))
    cases = [random_unit_matrix() for _ in range(1000)] + planted
    hits = 0
    for M in cases:
        direct = is_complex_hadamard(M)
        nm = numpy.zeros((4, 4), dtype=complex)
        for i in range(4):
            for j in range(4):
                b = M.entries[i][j].embed(64)
                nm[i, j] = complex(b.mid)
        eigs = numpy.linalg.eigvals(nm)
        oracle = all(abs(abs(l) - 2) < 1e-9 for l in eigs)
        assert direct == oracle
        hits += direct
    assert hits == len(planted)


def test_monomial_equivalence():
    rng = random.Random(14)
    P7 = paley_I(7)
    # scramble by random monomial P, Q
    n = 8
    permP = Permutation([3, 0, 6, 1, 7, 2, 5, 4])
    permQ = Permutation([5, 2, 0, 7, 4, 6, 1, 3])
    i4 = [Cyc.zeta(4, k) for k in range(4)]
    pu = [i4[rng.randrange(4)] for _ in range(n)]
    qu = [i4[rng.randrange(4)] for _ in range(n)]
    B = DenseMatrix([[pu[x] * P7.entries[permP(x)][permQ(y)] * qu[y].conjugate()
                      for y in range(n)] for x in range(n)])
    assert monomially_equivalent(P7, B)
    # a matrix with different support profile is rejected immediately
    other = DenseMatrix([[ONE if i == j else ZERO for j in range(n)]
                         for i in range(n)])
    assert not monomially_equivalent(P7, other)


def test_monomial_equivalence_sparse():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    chars = linear_characters(H)
    b1 = centraliser_basis(induce_representation(G, H, chars[1]))
    b2 = centraliser_basis(induce_representation(G, H, chars[2]))
    m1 = DenseMatrix(b1.matrices[1].dense())
    m1_conj = DenseMatrix(b2.matrices[1].dense())
    trivial = centraliser_basis(induce_representation(G, H, chars[0]))
    m_perm = DenseMatrix(trivial.matrices[1].dense())
    assert monomially_equivalent(m1, m1_conj)
    # every closed-walk phase product of a single orbital matrix is 1 (the
    # fill rule is a coboundary along the transversal), so the weighted
    # orbital is gauge-equivalent to its 0/1 support pattern
    assert monomially_equivalent(m1, m_perm)
    # breaking one entry's phase breaks a closed-walk invariant
    w = Cyc.zeta(3)
    cell = next(iter(b1.matrices[1].entries))
    twisted = [row[:] for row in m1.entries]
    twisted[cell[0]][cell[1]] = twisted[cell[0]][cell[1]] * w
    assert not monomially_equivalent(m1, DenseMatrix(twisted))
