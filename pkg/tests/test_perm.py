import pytest

from centalg.errors import ClosureExceedsBound, NotASubgroup
from centalg.perm import (CosetTransversal, Permutation, PermGroup,
                          commutator_subgroup, conjugacy_classes, double_cosets,
                          group_closure, group_from_json, group_to_json,
                          orbitals, point_stabiliser, right_transversal)


def frobenius21():
    c7 = Permutation.from_one_line([2, 3, 4, 5, 6, 7, 1])
    m2 = Permutation([(2 * i) % 7 for i in range(7)])
    return group_closure([c7, m2])


def frobenius80():
    sigma = Permutation.from_cycles(16, [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10),
                                         (11, 12), (13, 14), (15, 16)])
    tau = Permutation.from_cycles(16, [(2, 3, 5, 9, 16), (4, 7, 13, 8, 15),
                                       (6, 11, 12, 10, 14)])
    return group_closure([sigma, tau])


def test_identity_closure():
    G = group_closure([Permutation.identity(7)])
    assert G.order == 1


def test_frobenius80_order():
    assert frobenius80().order == 80


def test_c7c3_order():
    assert frobenius21().order == 21


def test_closure_bound():
    with pytest.raises(ClosureExceedsBound):
        group_closure([Permutation.from_cycles(7, [(1, 2)]),
                       Permutation.from_cycles(7, [tuple(range(1, 8))])], bound=100)


def test_point_stabilisers():
    G = frobenius80()
    assert point_stabiliser(G, 1).order == 5
    T = PermGroup.trivial(4)
    assert point_stabiliser(T, 2).order == 1
    assert point_stabiliser(frobenius21(), 1).order == 3


def test_transversal_singleton():
    G = frobenius21()
    assert len(right_transversal(G, G).reps) == 1


def test_transversal_factorisation_roundtrip():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    tr = right_transversal(G, H)
    assert len(tr.reps) == 7
    assert tr.reps[0].is_identity()
    for g in G.elements:
        h, t = tr.factorise(g)
        assert H.contains(h) and h * t == g


def test_transversal_requires_subgroup():
    G = frobenius21()
    other = group_closure([Permutation.from_cycles(7, [(1, 2)])])
    with pytest.raises(NotASubgroup):
        right_transversal(G, other)


def test_double_cosets_2transitive():
    # PSL-free check: Sym(4) natural action is 2-transitive
    G = group_closure([Permutation.from_cycles(4, [(1, 2)]),
                       Permutation.from_cycles(4, [(1, 2, 3, 4)])])
    H = point_stabiliser(G, 1)
    assert double_cosets(G, H).rank == 2


def test_double_cosets_frobenius80():
    G = frobenius80()
    H = point_stabiliser(G, 1)
    dc = double_cosets(G, H)
    assert dc.rank == 4
    assert sorted(s // H.order for s in dc.sizes) == [1, 5, 5, 5]
    assert sum(dc.sizes) == G.order
    for k, Hi in zip(dc.indices, dc.intersections):
        assert k * Hi.order == H.order


def test_double_cosets_c7c3():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    dc = double_cosets(G, H)
    assert dc.rank == 3
    assert sorted(s // 3 for s in dc.sizes) == [1, 3, 3]


def test_orbitals():
    G = frobenius80()
    H = point_stabiliser(G, 1)
    orbs = orbitals(G, H)
    assert sorted(o.size // 16 for o in orbs) == [1, 5, 5, 5]
    diag = next(o for o in orbs if o.rep.is_identity())
    assert diag.size == 16 and all(a == b for a, b in diag.pairs)

    # Paley graph group p = 5: subdegrees [1, 2, 2]
    shift = Permutation([(i + 1) % 5 for i in range(5)])
    sq = Permutation([(4 * i) % 5 for i in range(5)])
    P = group_closure([shift, sq])
    orbs = orbitals(P, point_stabiliser(P, 1))
    assert sorted(o.size // 5 for o in orbs) == [1, 2, 2]


def test_conjugacy_classes():
    abelian = group_closure([Permutation.from_cycles(6, [(1, 2, 3, 4, 5, 6)])])
    assert len(conjugacy_classes(abelian)) == 6
    cls = conjugacy_classes(frobenius21())
    assert sorted(len(m) for _, m in cls) == [1, 3, 3, 7, 7]
    assert cls[0][0].is_identity()


def test_rank_equals_suborbit_count():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    dc = double_cosets(G, H)
    # orbits of H on points
    seen = set()
    orbit_count = 0
    for p in range(G.degree):
        if p in seen:
            continue
        orbit_count += 1
        frontier = [p]
        seen.add(p)
        while frontier:
            nxt = []
            for x in frontier:
                for h in H.generators:
                    y = h(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
    assert orbit_count == dc.rank == len(orbitals(G, H))


def test_commutator_subgroup():
    K4 = group_closure([Permutation.from_cycles(4, [(1, 2), (3, 4)]),
                        Permutation.from_cycles(4, [(1, 3), (2, 4)])])
    assert commutator_subgroup(K4).order == 1
    assert commutator_subgroup(frobenius21()).order == 7


def test_group_json_roundtrip():
    G = frobenius21()
    data = group_to_json(G, "C7:C3")
    G2 = group_from_json(data)
    assert G2.order == G.order and G2.degree == G.degree
    assert all(G.contains(g) for g in G2.elements)
