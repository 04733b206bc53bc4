"""Catalog of the groups of order up to 16 as permutation groups (regular
representations built from explicit multiplication models), with an
isomorphism test used to certify the catalog is complete and duplicate-free.
"""

from __future__ import annotations

import itertools

from .perm import PermGroup, Permutation, group_closure

GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2,
                11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14}


def regular_group(elements, mult) -> PermGroup:
    """Right regular representation of an abstract multiplication model."""
    idx = {e: k for k, e in enumerate(elements)}
    n = len(elements)
    perms = {}
    for g in elements:
        perms[g] = Permutation([idx[mult(x, g)] for x in elements])
    # generators: greedily grow a generating set
    gens = []
    have = {perms[elements[0]].images}  # identity assumed first
    for g in elements:
        p = perms[g]
        if p.images in have:
            continue
        gens.append(p)
        closure = group_closure(gens)
        have = {q.images for q in closure.elements}
        if len(have) == n:
            break
    return group_closure(gens) if gens else PermGroup.trivial(1)


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup.trivial(1)
    return group_closure([Permutation([(i + 1) % n for i in range(n)])])


def abelian(*invariants: int) -> PermGroup:
    """Direct product of cyclic groups, regular representation."""
    elements = list(itertools.product(*[range(d) for d in invariants]))

    def mult(x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, invariants))

    return regular_group(elements, mult)


def metacyclic(m: int, n: int, t: int, c: int) -> PermGroup:
    """<a, b | a^n = 1, b^m = a^c, b^-1 a b = a^t> as (j, k) = b^j a^k.

    Requires t^m = 1 mod n and c(t - 1) = 0 mod n.
    """
    assert pow(t, m, n) == 1 % n and (c * (t - 1)) % n == 0
    elements = [(j, k) for j in range(m) for k in range(n)]

    def mult(x, y):
        (j1, k1), (j2, k2) = x, y
        j = j1 + j2
        k = pow(t, j2, n) * k1 + k2 + c * (j // m)
        return (j % m, k % n)

    return regular_group(elements, mult)


def dihedral(n: int) -> PermGroup:
    return metacyclic(2, n, n - 1, 0)


def dicyclic(n: int) -> PermGroup:
    """Order 4n: b^2 = a^n with a of order 2n and b inverting a."""
    return metacyclic(2, 2 * n, 2 * n - 1, n)


def direct_product(G: PermGroup, H: PermGroup) -> PermGroup:
    elements = list(itertools.product(G.elements, H.elements))

    def mult(x, y):
        return (x[0] * y[0], x[1] * y[1])

    return regular_group(elements, mult)


def _klein_semidirect_c4() -> PermGroup:
    """(C2 x C2) : C4 with the order-4 generator swapping the factors."""
    elements = [((v1, v2), k) for v1 in range(2) for v2 in range(2) for k in range(4)]

    def act(v, k):
        return v if k % 2 == 0 else (v[1], v[0])

    def mult(x, y):
        (v, k), (w, l) = x, y
        vw = act(w, k)
        return (((v[0] + vw[0]) % 2, (v[1] + vw[1]) % 2), (k + l) % 4)

    return regular_group(elements, mult)


def _pauli_group() -> PermGroup:
    """Central product C4 . D4 of order 16, via the 2x2 matrix model
    generated by the two order-2 reflections and the scalar i."""
    i = (0, 1)  # complex units as (re, im) with entries in {-1,0,1}

    def cmul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def mmul(A, B):
        return tuple(tuple(
            tuple(x + y for x, y in zip(cmul(A[r][0], B[0][c]), cmul(A[r][1], B[1][c])))
            for c in range(2)) for r in range(2))

    one, zero, mone = (1, 0), (0, 0), (-1, 0)
    X = ((zero, one), (one, zero))
    Z = ((one, zero), (zero, mone))
    S = (((0, 1), zero), (zero, (0, 1)))
    elements = set()
    frontier = [((one, zero), (zero, one))]
    ident = ((one, zero), (zero, one))
    elements.add(ident)
    frontier = [ident]
    while frontier:
        nxt = []
        for E in frontier:
            for g in (X, Z, S):
                F = mmul(E, g)
                if F not in elements:
                    elements.add(F)
                    nxt.append(F)
        frontier = nxt
    elements = sorted(elements)
    elements.remove(ident)
    elements.insert(0, ident)
    return regular_group(elements, mmul)


def _sym(n: int) -> PermGroup:
    gens = [Permutation.from_cycles(n, [(1, 2)]),
            Permutation.from_cycles(n, [tuple(range(1, n + 1))])]
    return group_closure(gens)


def _alt4() -> PermGroup:
    return group_closure([Permutation.from_cycles(4, [(1, 2), (3, 4)]),
                          Permutation.from_cycles(4, [(1, 2, 3)])])


def small_groups(max_order: int = 16) -> list[tuple[str, PermGroup]]:
    """All groups of order <= max_order up to isomorphism (max_order <= 16)."""
    if max_order > 16:
        raise ValueError("catalog covers orders up to 16")
    catalog: list[tuple[str, PermGroup]] = []

    def add(name, G):
        if G.order <= max_order:
            catalog.append((name, G))

    add("C1", cyclic(1))
    add("C2", cyclic(2))
    add("C3", cyclic(3))
    add("C4", cyclic(4))
    add("C2xC2", abelian(2, 2))
    add("C5", cyclic(5))
    add("C6", cyclic(6))
    add("S3", dihedral(3))
    add("C7", cyclic(7))
    add("C8", cyclic(8))
    add("C4xC2", abelian(4, 2))
    add("C2^3", abelian(2, 2, 2))
    add("D4", dihedral(4))
    add("Q8", dicyclic(2))
    add("C9", cyclic(9))
    add("C3xC3", abelian(3, 3))
    add("C10", cyclic(10))
    add("D5", dihedral(5))
    add("C11", cyclic(11))
    add("C12", cyclic(12))
    add("C6xC2", abelian(6, 2))
    add("D6", dihedral(6))
    add("A4", _alt4())
    add("Dic3", dicyclic(3))
    add("C13", cyclic(13))
    add("C14", cyclic(14))
    add("D7", dihedral(7))
    add("C15", cyclic(15))
    if max_order >= 16:
        add("C16", cyclic(16))
        add("C4xC4", abelian(4, 4))
        add("C8xC2", abelian(8, 2))
        add("C4xC2^2", abelian(4, 2, 2))
        add("C2^4", abelian(2, 2, 2, 2))
        add("D8", dihedral(8))
        add("Q16", dicyclic(4))
        add("SD16", metacyclic(2, 8, 3, 0))
        add("M4(2)", metacyclic(2, 8, 5, 0))
        add("C4:C4", metacyclic(4, 4, 3, 0))
        add("D4xC2", direct_product(dihedral(4), cyclic(2)))
        add("Q8xC2", direct_product(dicyclic(2), cyclic(2)))
        add("(C4xC2):C2", _klein_semidirect_c4())
        add("C4.D4", _pauli_group())
    return catalog


def _fingerprint(G: PermGroup):
    orders = tuple(sorted(g.order() for g in G.elements))
    center = sum(1 for z in G.elements if all(z * g == g * z for g in G.generators))
    from .perm import commutator_subgroup, conjugacy_classes

    derived = commutator_subgroup(G).order
    classes = len(conjugacy_classes(G))
    return (G.order, orders, center, derived, classes, G.is_abelian())


def isomorphic(G: PermGroup, H: PermGroup) -> bool:
    """Exact isomorphism test by generator-image backtracking; intended for
    the catalog's small orders."""
    if G.order != H.order:
        return False
    if _fingerprint(G) != _fingerprint(H):
        return False
    gens = list(G.generators) or [G.identity()]
    orders = [g.order() for g in gens]
    h_by_order: dict[int, list[Permutation]] = {}
    for h in H.elements:
        h_by_order.setdefault(h.order(), []).append(h)

    def build(images) -> bool:
        # check the map extends to a homomorphism with full image
        gmap = {G.identity().images: H.identity()}
        frontier = [G.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                hx = gmap[x.images]
                for g, hg in zip(gens, images):
                    y = x * g
                    hy = hx * hg
                    known = gmap.get(y.images)
                    if known is None:
                        gmap[y.images] = hy
                        nxt.append(y)
                    elif known != hy:
                        return False
            frontier = nxt
        return len({h.images for h in gmap.values()}) == H.order

    def search(k, picked):
        if k == len(gens):
            return build(picked)
        for h in h_by_order.get(orders[k], []):
            if search(k + 1, picked + [h]):
                return True
        return False

    return search(0, [])


def verify_catalog(max_order: int = 16) -> None:
    """Counts per order match the classification and entries are pairwise
    non-isomorphic."""
    groups = small_groups(max_order)
    by_order: dict[int, list] = {}
    for name, G in groups:
        by_order.setdefault(G.order, []).append((name, G))
    for order in range(1, max_order + 1):
        got = len(by_order.get(order, []))
        assert got == GROUP_COUNTS[order], f"order {order}: {got} groups"
    for order, entries in by_order.items():
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                assert not isomorphic(entries[i][1], entries[j][1]), \
                    f"{entries[i][0]} isomorphic to {entries[j][0]}"
