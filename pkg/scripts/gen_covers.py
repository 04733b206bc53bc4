#!/usr/bin/env python3
"""Construct the bundled monomial-cover files.

SL2(q) covers of PSL2(q) in degree q+1 come from the explicit coset
factorization over the upper-triangular subgroup with the quadratic
character. The double cover of Alt(5) in degree 10 and the triple cover of
C3^2:C4 in degree 9 are induced with the library's own machinery from
subgroup characters of concrete realizations. The six-fold cover of Alt(6)
in degree 15 is built as the fiber product of SL2(9) and the preimage of
Alt(6) in SL3(4), again inducing with the library.

Every file is re-validated on load (closure order, scalar kernel,
projection onto the claimed base).
"""

import json
import os
import random
import sys
from itertools import combinations

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from centalg.cyclo import CyclotomicNumber, legendre_symbol
from centalg.extension import MonomialCover, load_cover
from centalg.perm import (PermGroup, Permutation, group_closure, group_from_json,
                          group_to_json)
from centalg.structure import linear_characters
from centalg.induce import induce_representation

HERE = os.path.dirname(__file__)
DATA = os.path.join(HERE, "..", "src", "centalg", "data")


# -- SL2(q) in degree q+1 ---------------------------------------------------------


def sl2_cover(q: int) -> dict:
    """Monomial generators of SL2(q) acting in degree q+1 via the quadratic
    character of the upper-triangular subgroup; entries are +-1."""

    def inv(a):
        return pow(a, q - 2, q)

    def mat_mul(A, B):
        return ((A[0][0] * B[0][0] + A[0][1] * B[1][0]) % q,
                (A[0][0] * B[0][1] + A[0][1] * B[1][1]) % q,
                (A[1][0] * B[0][0] + A[1][1] * B[1][0]) % q,
                (A[1][0] * B[0][1] + A[1][1] * B[1][1]) % q)

    def as_rows(t):
        return ((t[0], t[1]), (t[2], t[3]))

    # transversal index: 0 <-> identity coset, 1 + x <-> t_x = [[0,-1],[1,x]]
    def factorise(M):
        """(chi(h), transversal index) for M = h t."""
        (a, b), (c, d) = M
        if c % q == 0:
            return legendre_symbol(a, q), 0
        x = (inv(c) * d) % q
        alpha = (a * inv(c) * d - b) % q
        return legendre_symbol(alpha, q), 1 + x

    def rho(M):
        n = q + 1
        images = [0] * n
        diag = [0] * n
        reps = [((1, 0), (0, 1))] + [((0, q - 1), (1, x)) for x in range(q)]
        for i, t in enumerate(reps):
            prod = as_rows(mat_mul(t, M))
            sign, k = factorise(prod)
            images[i] = k
            diag[i] = 0 if sign == 1 else 1
        return Permutation(images), tuple(diag)

    S = ((0, q - 1), (1, 0))
    T = ((1, 1), (0, 1))
    # diag[i] is the exponent of the unit in row i (at column perm(i))
    gens = [rho(M) for M in (S, T)]
    base = group_closure([p for p, _ in gens])
    return {
        "degree": q + 1,
        "modulus": 2,
        "generators": [{"perm": p.one_line(), "diag": list(d)} for p, d in gens],
        "base": group_to_json(base, f"PSL2({q})"),
        "name": f"SL2({q}) monomial cover, degree {q + 1}",
    }


def rep_to_cover(rep, base: PermGroup, modulus: int, name: str) -> dict:
    """Serialize the induced representation's generator matrices."""
    gens = []
    for g in rep.group.generators:
        mat = rep.materialize(g)
        diag = [0] * rep.degree
        for i in range(rep.degree):
            u = mat.units[i]
            diag[i] = next(k for k in range(modulus)
                           if u == CyclotomicNumber.zeta(modulus, k))
        gens.append((mat.perm, tuple(diag)))
    return {
        "degree": rep.degree,
        "modulus": modulus,
        "generators": [{"perm": p.one_line(), "diag": list(d)} for p, d in gens],
        "base": group_to_json(base, None),
        "name": name,
    }


# -- 2.Alt(5) in degree 10 ---------------------------------------------------------


def alt5_double_cover() -> dict:
    q = 5
    vecs = [(x, y) for x in range(q) for y in range(q) if (x, y) != (0, 0)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def perm_of(M):
        (a, b), (c, d) = M
        return Permutation([vidx[((a * x + b * y) % q, (c * x + d * y) % q)]
                            for x, y in vecs])

    S = perm_of(((0, 4), (1, 0)))
    T = perm_of(((1, 1), (0, 1)))
    G = group_closure([S, T])
    assert G.order == 120
    minus = perm_of(((4, 0), (0, 4)))
    # dicyclic subgroup of order 12: an order-3 element and an order-4
    # element inverting it
    a = next(g for g in G.elements if g.order() == 3)
    b = next(g for g in G.elements
             if g.order() == 4 and g.inverse() * a * g == a.inverse())
    H = group_closure([a, b])
    assert H.order == 12 and H.contains(minus)
    chi = next(ch for ch in linear_characters(H)
               if ch.order() == 4 and ch(minus) == -1)
    rep = induce_representation(G, H, chi)
    base = group_closure([rep.materialize(g).perm for g in G.generators])
    assert base.order == 60
    return rep_to_cover(rep, base, 4, "2.Alt(5) monomial cover, degree 10")


# -- 3.(C3^2 : C4) in degree 9 -------------------------------------------------------


def c3sq_c4_triple_cover() -> dict:
    from centalg.extension import cocycle_space, extension_from_cocycle
    from centalg.perm import point_stabiliser

    with open(os.path.join(DATA, "groups", "c3sq-c4-deg9.json")) as fh:
        G = group_from_json(json.load(fh))
    assert G.order == 36
    space = cocycle_space(G, 3)
    assert space.h2_order == 3, space.h2_order
    psi = space.class_representatives()[1]
    ext = extension_from_cocycle(G, psi)
    Ghat = ext.permutation_group()
    assert Ghat.order == 108
    n = G.order
    H = point_stabiliser(G, 1)
    Hhat = PermGroup.from_elements(
        Ghat.degree,
        [g for g in Ghat.elements if H.contains(G.elements[g(0) % n])])
    assert Hhat.order == 12
    scal = next(g for g in Ghat.elements if g(0) == n)  # the element (1, id)
    chi = next(ch for ch in linear_characters(Hhat)
               if ch.order() == 12 and ch(scal).root_order() == 3)
    rep = induce_representation(Ghat, Hhat, chi)
    base = group_closure([rep.materialize(g).perm for g in Ghat.generators])
    assert base.order == 36
    return rep_to_cover(rep, base, 12, "3.(C3^2:C4) monomial cover, degree 9")


# -- 6.Alt(6) in degree 15 -----------------------------------------------------------


def _f9():
    """F9 as pairs (a, b) = a + b*i with i^2 = -1 over F3."""
    els = [(a, b) for a in range(3) for b in range(3)]

    def add(x, y):
        return ((x[0] + y[0]) % 3, (x[1] + y[1]) % 3)

    def mul(x, y):
        return ((x[0] * y[0] - x[1] * y[1]) % 3, (x[0] * y[1] + x[1] * y[0]) % 3)

    def neg(x):
        return ((-x[0]) % 3, (-x[1]) % 3)

    def inv(x):
        for y in els:
            if mul(x, y) == (1, 0):
                return y
        raise ZeroDivisionError

    return els, add, mul, neg, inv


def _f4():
    els = [0, 1, 2, 3]  # 0, 1, w, w^2 with w^2 = w + 1

    table = {}
    for x in els:
        for y in els:
            if x == 0 or y == 0:
                table[(x, y)] = 0
            elif x == 1:
                table[(x, y)] = y
            elif y == 1:
                table[(x, y)] = x
            else:
                k = ((x - 1) + (y - 1)) % 3
                table[(x, y)] = 1 + k

    def add(x, y):
        # F4 addition as bitwise xor in the basis {1, w}
        tobits = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)}
        frombits = {v: k for k, v in tobits.items()}
        a, b = tobits[x], tobits[y]
        return frombits[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)]

    def mul(x, y):
        return table[(x, y)]

    return els, add, mul


def sl2_9_group():
    els, add, mul, neg, inv = _f9()
    zero, one = (0, 0), (1, 0)
    vecs = [(x, y) for x in els for y in els if (x, y) != (zero, zero)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def perm_of(M):
        (a, b), (c, d) = M

        def act(v):
            x, y = v
            return (add(mul(a, x), mul(b, y)), add(mul(c, x), mul(d, y)))

        return Permutation([vidx[act(v)] for v in vecs])

    i9 = (0, 1)
    S = perm_of(((zero, neg(one)), (one, zero)))
    T = perm_of(((one, one), (zero, one)))
    U = perm_of(((one, i9), (zero, one)))
    G = group_closure([S, T, U])
    assert G.order == 720, G.order
    minus = perm_of(((neg(one), zero), (zero, neg(one))))
    return G, minus


def sl3_4_valentiner(rng):
    """The preimage of an Alt(6) subgroup of PSL3(4) inside SL3(4), as a
    permutation group on the 63 nonzero vectors of F4^3."""
    els, add, mul = _f4()
    vecs = [(x, y, z) for x in els for y in els for z in els
            if (x, y, z) != (0, 0, 0)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def mat_perm(M):
        def act(v):
            return tuple(
                add(add(mul(M[r][0], v[0]), mul(M[r][1], v[1])), mul(M[r][2], v[2]))
                for r in range(3))

        return Permutation([vidx[act(v)] for v in vecs])

    # projective action on the 21 projective points
    def normalize(v):
        for c in v:
            if c:
                # scale so the first nonzero coordinate is 1
                invc = {1: 1, 2: 3, 3: 2}[c]
                return tuple(_f4()[2](invc, x) for x in v)
        raise ValueError

    points = sorted({normalize(v) for v in vecs})
    pidx = {p: i for i, p in enumerate(points)}

    def proj_perm(M):
        def act(p):
            image = tuple(
                add(add(mul(M[r][0], p[0]), mul(M[r][1], p[1])), mul(M[r][2], p[2]))
                for r in range(3))
            return normalize(image)

        return Permutation([pidx[act(p)] for p in points])

    # generators of SL3(4)
    gens_m = [
        ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((2, 0, 0), (0, 3, 0), (0, 0, 1)),
        ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
    ]
    psl = group_closure([proj_perm(M) for M in gens_m], bound=25000)
    assert psl.order == 20160, psl.order
    # hunt for an Alt(6) subgroup
    while True:
        x = psl.elements[rng.randrange(psl.order)]
        y = psl.elements[rng.randrange(psl.order)]
        try:
            S = group_closure([x, y], bound=400)
        except Exception:
            continue
        if S.order == 360:
            from centalg.perm import commutator_subgroup

            if commutator_subgroup(S).order == 360:
                return S, mat_perm, proj_perm, gens_m, vecs, points


def find_isomorphism(G: PermGroup, H: PermGroup, rng=None):
    """Generator images in H defining an isomorphism from G, or None.
    Returns (gens, images, hom dict on all elements)."""
    gens = list(G.generators)
    orders = [g.order() for g in gens]

    def profile(group, a, b):
        return (a.order(), b.order(), (a * b).order(), (a * b * b).order(),
                (a * a * b).order())

    target_by_order = {}
    for h in H.elements:
        target_by_order.setdefault(h.order(), []).append(h)

    def build(images):
        hom = {G.identity().images: H.identity()}
        frontier = [G.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                hx = hom[x.images]
                for g, hg in zip(gens, images):
                    y = x * g
                    hy = hx * hg
                    known = hom.get(y.images)
                    if known is None:
                        hom[y.images] = hy
                        nxt.append(y)
                    elif known != hy:
                        return None
            frontier = nxt
        if len({h.images for h in hom.values()}) != H.order:
            return None
        return hom

    assert len(gens) == 2, "expected a 2-generated group"
    a, b = gens
    want = profile(G, a, b)
    for ha in target_by_order.get(orders[0], []):
        for hb in target_by_order.get(orders[1], []):
            if profile(H, ha, hb) != want:
                continue
            hom = build([ha, hb])
            if hom is not None:
                return gens, [ha, hb], hom
    return None


def alt6_natural() -> PermGroup:
    x = Permutation.from_cycles(6, [(1, 2, 3)])
    y = Permutation.from_cycles(6, [(2, 3, 4, 5, 6)])
    G = group_closure([x, y])
    assert G.order == 360
    return G


def psl2_9_on_10(sl29: PermGroup, minus: Permutation):
    """The projective-line action induced by the vector action of SL2(9),
    plus the projection map from 80-point elements to 10-point elements."""
    els, add, mul, neg, inv = _f9()
    zero = (0, 0)
    vecs = [(x, y) for x in els for y in els if (x, y) != (zero, zero)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def normalize(v):
        x, y = v
        if x != zero:
            s = inv(x)
            return ((1, 0), mul(s, y))
        return (zero, (1, 0))

    points = sorted({normalize(v) for v in vecs})
    pidx = {p: i for i, p in enumerate(points)}

    def project(perm80: Permutation) -> Permutation:
        images = [0] * len(points)
        for p in points:
            v = p if p[0] != zero else ((0, 0), (1, 0))
            vv = (p[0], p[1]) if p[0] != zero else (zero, (1, 0))
            w = vecs[perm80(vidx[vv])]
            images[pidx[p]] = pidx[normalize(w)]
        return Permutation(images)

    proj_gens = [project(g) for g in sl29.generators]
    Q = group_closure(proj_gens)
    assert Q.order == 360
    return Q, project


def alt6_sixfold_cover(seed: int = 5) -> dict:
    rng = random.Random(seed)
    print("  building SL2(9) ...")
    sl29, minus80 = sl2_9_group()
    print("  projecting to PSL2(9) on 10 points ...")
    Q2, project2 = psl2_9_on_10(sl29, minus80)

    print("  hunting Alt(6) inside PSL3(4) ...")
    els, add, mul = _f4()

    def mat_mul3(A, B):
        return tuple(tuple(
            add(add(mul(A[r][0], B[0][c]), mul(A[r][1], B[1][c])),
                mul(A[r][2], B[2][c])) for c in range(3)) for r in range(3))

    vecs = [(x, y, z) for x in els for y in els for z in els if (x, y, z) != (0, 0, 0)]
    vidx = {v: i for i, v in enumerate(vecs)}

    def mat_perm(M):
        def act(v):
            return tuple(
                add(add(mul(M[r][0], v[0]), mul(M[r][1], v[1])), mul(M[r][2], v[2]))
                for r in range(3))

        return Permutation([vidx[act(v)] for v in vecs])

    finv = {1: 1, 2: 3, 3: 2}

    def normalize3(v):
        for c in v:
            if c:
                s = finv[c]
                return tuple(mul(s, x) for x in v)
        raise ValueError

    points21 = sorted({normalize3(v) for v in vecs})
    pidx21 = {p: i for i, p in enumerate(points21)}

    def proj_perm3(perm63: Permutation) -> Permutation:
        images = [0] * 21
        for p in points21:
            w = vecs[perm63(vidx[p])]
            images[pidx21[p]] = pidx21[normalize3(w)]
        return Permutation(images)

    gens_m = [
        ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
        ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
        ((2, 0, 0), (0, 3, 0), (0, 0, 1)),
        ((1, 0, 0), (0, 1, 1), (0, 0, 1)),
    ]
    base_mats = [mat_perm(M) for M in gens_m]
    # random words in the matrix generators until two of them generate A6
    # projectively
    def random_word():
        w = Permutation.identity(63)
        for _ in range(rng.randrange(3, 12)):
            w = w * base_mats[rng.randrange(len(base_mats))]
        return w

    from centalg.perm import commutator_subgroup

    while True:
        m1, m2 = random_word(), random_word()
        p1, p2 = proj_perm3(m1), proj_perm3(m2)
        try:
            S = group_closure([p1, p2], bound=400)
        except Exception:
            continue
        if S.order == 360 and commutator_subgroup(S).order == 360:
            break
    print("  found Alt(6) in PSL3(4); building the 1080 preimage ...")
    omega = mat_perm(((2, 0, 0), (0, 2, 0), (0, 0, 2)))
    V = group_closure([m1, m2, omega], bound=1200)
    assert V.order == 1080, V.order

    print("  matching the two quotients with Alt(6) ...")
    A6 = alt6_natural()
    iso2 = find_isomorphism(A6, Q2)
    assert iso2 is not None
    _, _, hom2 = iso2
    S21 = group_closure([p1, p2])
    iso3 = find_isomorphism(A6, S21)
    assert iso3 is not None
    _, _, hom3 = iso3

    # lift the natural generators into both covers
    gens6 = list(A6.generators)
    proj_of_80 = {}
    for u in sl29.elements:
        proj_of_80[u.images] = project2(u)
    lifts80 = []
    for g in gens6:
        target = hom2[g.images]
        lift = next(u for u in sl29.elements if proj_of_80[u.images] == target)
        lifts80.append(lift)
    proj_of_63 = {v.images: proj_perm3(v) for v in V.elements}
    lifts63 = []
    for g in gens6:
        target = hom3[g.images]
        lift = next(v for v in V.elements if proj_of_63[v.images] == target)
        lifts63.append(lift)

    print("  closing the fiber product on 143 points ...")

    def pair_perm(u80, v63):
        return Permutation(list(u80.images) + [80 + k for k in v63.images])

    fp_gens = [pair_perm(u, v) for u, v in zip(lifts80, lifts63)]
    fp_gens.append(pair_perm(minus80, Permutation.identity(63)))
    fp_gens.append(pair_perm(Permutation.identity(80), omega))
    FP = group_closure(fp_gens, bound=4000)
    assert FP.order == 2160, FP.order

    # projection FP -> natural Alt(6) through the first component
    inv_hom2 = {hom2[k].images: Permutation(k) for k in hom2}
    def to_natural(fp_elem: Permutation) -> Permutation:
        u = Permutation(fp_elem.images[:80])
        return inv_hom2[project2(u).images]

    print("  cutting out the preimage of the pair stabiliser ...")
    Hhat_elems = [g for g in FP.elements
                  if {to_natural(g)(0), to_natural(g)(1)} == {0, 1}]
    Hhat = PermGroup.from_elements(143, Hhat_elems)
    assert Hhat.order == 144, Hhat.order

    z = pair_perm(minus80, omega)
    from centalg.structure import abelian_invariants
    assert abelian_invariants(Hhat) == [6]
    chars = linear_characters(Hhat)
    # the binary central part of 6.Alt(6) lies in the derived subgroup of
    # Hhat (its image in SL2(9) is binary octahedral), so chi(z) has order
    # at most 3 and the induced image has order 1080 with zeta_3 scalars;
    # adjoining the scalar zeta_6 I gives the order-2160 monomial cover
    # with the same centraliser algebra.
    chi = next(ch for ch in chars
               if ch.order() == 6 and ch(z).root_order() == 3)
    print("  inducing the degree-15 monomial representation ...")
    rep = induce_representation(FP, Hhat, chi)
    assert rep.degree == 15
    base = group_closure([rep.materialize(g).perm for g in FP.generators])
    assert base.order == 360
    data = rep_to_cover(rep, base, 6, "6.Alt(6) monomial cover, degree 15")
    data["generators"].append({"perm": Permutation.identity(15).one_line(),
                               "diag": [1] * 15})
    return data


def main():
    os.makedirs(os.path.join(DATA, "covers"), exist_ok=True)
    jobs = [
        ("sl2-7-deg8", lambda: sl2_cover(7)),
        ("sl2-11-deg12", lambda: sl2_cover(11)),
        ("2alt5-deg10", alt5_double_cover),
        ("3c3sqc4-deg9", c3sq_c4_triple_cover),
        ("6alt6-deg15", alt6_sixfold_cover),
    ]
    only = sys.argv[1:] or [name for name, _ in jobs]
    for name, make in jobs:
        if name not in only:
            continue
        print(f"building {name} ...")
        data = make()
        cover = load_cover(data)  # full validation
        print(f"  order {cover.order}, scalar kernel {cover.scalar_kernel_order}, "
              f"base order {cover.claimed_base.order}")
        with open(os.path.join(DATA, "covers", f"{name}.json"), "w") as fh:
            json.dump(data, fh, indent=1)
        print(f"  wrote {name}.json")


if __name__ == "__main__":
    main()
