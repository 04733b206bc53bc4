#!/usr/bin/env python3
"""Write the bundled group files: the rank-3 Frobenius groups, the Paley
p = 5 group, the degree-16 Frobenius group of order 80, and the base groups
of the bundled monomial covers."""

import json
import os
import sys
from itertools import combinations

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from centalg.perm import Permutation, group_closure, group_to_json

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "centalg", "data", "groups")


def frobenius(p: int, a: int, name: str):
    shift = Permutation([(i + 1) % p for i in range(p)])
    mult = Permutation([(a * i) % p for i in range(p)])
    return group_closure([shift, mult]), name


def pairs_action_alt(n: int):
    """Alt(n) on unordered pairs."""
    pairs = list(combinations(range(1, n + 1), 2))
    pidx = {pr: i for i, pr in enumerate(pairs)}

    def lift(images):
        def act(pr):
            a, b = images[pr[0] - 1], images[pr[1] - 1]
            return (min(a, b), max(a, b))

        return Permutation([pidx[act(pr)] for pr in pairs])

    three = list(range(1, n + 1))
    c3 = lift([2, 3, 1] + three[3:])
    if n % 2 == 1:
        cn = lift(three[1:] + [1])
    else:
        cn = lift([1] + three[2:] + [2])
    return group_closure([c3, cn])


def c3sq_c4():
    """C3^2 : C4 on 9 points (the vectors of F_3^2), C4 acting as a rotation."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    idx = {p: i for i, p in enumerate(pts)}
    t1 = Permutation([idx[((x + 1) % 3, y)] for x, y in pts])
    t2 = Permutation([idx[(x, (y + 1) % 3)] for x, y in pts])
    rot = Permutation([idx[((-y) % 3, x)] for x, y in pts])
    return group_closure([t1, t2, rot])


def psl2(q: int):
    """PSL(2, q) on the q + 1 points of the projective line."""
    points = ["inf"] + list(range(q))
    pidx = {p: i for i, p in enumerate(points)}

    def moebius(a, b, c, d):
        def act(p):
            if p == "inf":
                return "inf" if c == 0 else (a * pow(c, q - 2, q)) % q
            num, den = (a * p + b) % q, (c * p + d) % q
            if den == 0:
                return "inf"
            return (num * pow(den, q - 2, q)) % q

        return Permutation([pidx[act(p)] for p in points])

    s = moebius(0, -1 % q, 1, 0)
    t = moebius(1, 1, 0, 1)
    return group_closure([s, t])


def main():
    os.makedirs(OUT, exist_ok=True)
    groups = []
    groups.append((*frobenius(7, 2, "C7:C3"),))
    groups.append((*frobenius(11, 3, "C11:C5"),))
    groups.append((*frobenius(13, 4, "C13:C6"),))
    groups.append((frobenius(5, 4, "")[0], "paley5"))

    sigma = Permutation.from_cycles(16, [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10),
                                         (11, 12), (13, 14), (15, 16)])
    tau = Permutation.from_cycles(16, [(2, 3, 5, 9, 16), (4, 7, 13, 8, 15),
                                       (6, 11, 12, 10, 14)])
    groups.append((group_closure([sigma, tau]), "frobenius80"))

    groups.append((pairs_action_alt(5), "alt5-pairs10"))
    groups.append((pairs_action_alt(6), "alt6-pairs15"))
    groups.append((c3sq_c4(), "c3sq-c4-deg9"))
    groups.append((psl2(7), "psl2-7-deg8"))
    groups.append((psl2(11), "psl2-11-deg12"))

    names = {"C7:C3": "c7c3", "C11:C5": "c11c5", "C13:C6": "c13c6"}
    for G, name in groups:
        fname = names.get(name, name)
        with open(os.path.join(OUT, f"{fname}.json"), "w") as fh:
            json.dump(group_to_json(G, name), fh, indent=1)
        print(f"{fname}: degree {G.degree}, order {G.order}")


if __name__ == "__main__":
    main()
