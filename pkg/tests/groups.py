"""Shared group constructions for the test suite."""

from itertools import combinations

from centalg.cli import load_bundled_cover, load_bundled_group
from centalg.perm import Permutation, group_closure


def klein_four():
    return group_closure([Permutation.from_cycles(4, [(1, 2), (3, 4)]),
                          Permutation.from_cycles(4, [(1, 3), (2, 4)])])


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


def paley_group(p: int):
    """Index-2 subgroup of AGL(1, p): x -> a^2 x + b."""
    shift = Permutation([(i + 1) % p for i in range(p)])
    # generator: multiplication by a primitive square
    g = 1
    for cand in range(2, p):
        if pow(cand, (p - 1) // 2, p) == 1 and cand != 1:
            g = cand
            break
    sq = Permutation([(g * i) % p for i in range(p)])
    return group_closure([shift, sq])


def sym_pairs(n: int):
    """Sym(n) acting on unordered pairs."""
    pairs = list(combinations(range(1, n + 1), 2))
    pidx = {p: i for i, p in enumerate(pairs)}

    def lift(images):
        def act(p):
            a, b = images[p[0] - 1], images[p[1] - 1]
            return (min(a, b), max(a, b))

        return Permutation([pidx[act(p)] for p in pairs])

    swap = lift([2, 1] + list(range(3, n + 1)))
    cyc = lift(list(range(2, n + 1)) + [1])
    return group_closure([swap, cyc])


_COVER_GROUP_CACHE = {}


def sl2_cover_group():
    """The bundled SL2(7) cover as a permutation group of degree 16."""
    if "sl27" not in _COVER_GROUP_CACHE:
        cover = load_bundled_cover("sl2-7-deg8")
        _COVER_GROUP_CACHE["sl27"] = cover.permutation_group()
    return _COVER_GROUP_CACHE["sl27"]
