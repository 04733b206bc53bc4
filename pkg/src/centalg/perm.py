"""Finite permutation groups by explicit element enumeration: transversals,
double cosets, orbitals, and conjugacy classes.

Points are 0-based inside the library; 1-based only in files and the CLI.
Products act on the right: (p * q) sends x to q(p(x)), matching the action
convention omega.(pq) = (omega.p).q.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .errors import ClosureExceedsBound, DegreeMismatch, NotASubgroup, NotTransitive

DEFAULT_BOUND = 100_000


class Permutation:
    """A permutation of {0..n-1} stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        self.images = tuple(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(range(degree))

    @classmethod
    def from_one_line(cls, images_1based) -> Permutation:
        return cls(i - 1 for i in images_1based)

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        """Cycles given with 1-based points."""
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b - 1
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(self.images) != len(other.images):
            raise DegreeMismatch("cannot compose permutations of different degrees")
        o = other.images
        return Permutation(o[i] for i in self.images)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def __pow__(self, n: int) -> Permutation:
        if n < 0:
            return self.inverse() ** (-n)
        result = Permutation.identity(self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def order(self) -> int:
        n = 1
        p = self
        ident = tuple(range(self.degree))
        while p.images != ident:
            p = p * self
            n += 1
        return n

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def one_line(self) -> list[int]:
        return [i + 1 for i in self.images]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 1-based."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x + 1)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return f"Perm(id_{self.degree})"
        return "Perm(" + "".join("(" + ",".join(map(str, c)) + ")" for c in cyc) + ")"


class PermGroup:
    """A permutation group with an explicitly enumerated, canonically ordered
    element list (breadth-first over generator words, levels sorted by image
    tuple, identity first)."""

    def __init__(self, degree: int, generators, elements):
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = list(elements)
        self.order = len(self.elements)
        self._index = {g.images: i for i, g in enumerate(self.elements)}

    # -- construction --------------------------------------------------------

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        ident = Permutation.identity(degree)
        return cls(degree, (), [ident])

    @classmethod
    def from_elements(cls, degree: int, elements, generators=None) -> PermGroup:
        """Build from a known-closed element set, keeping canonical order."""
        elems = sorted(set(elements), key=lambda p: p.images)
        ident = Permutation.identity(degree)
        elems.remove(ident)
        elems.insert(0, ident)
        if generators is None:
            generators = _small_generating_set(degree, elems)
        return cls(degree, generators, elems)

    def contains(self, p: Permutation) -> bool:
        return p.images in self._index

    def index_of(self, p: Permutation) -> int:
        return self._index[p.images]

    def identity(self) -> Permutation:
        return self.elements[0]

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.elements)

    def is_abelian(self) -> bool:
        gens = self.generators or self.elements
        return all(a * b == b * a for a in gens for b in gens)

    def exponent(self) -> int:
        import math

        e = 1
        for g in self.elements:
            o = g.order()
            e = e * o // math.gcd(e, o)
        return e

    def orbit(self, point: int) -> set[int]:
        seen = {point}
        frontier = [point]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = g(x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def group_closure(generators, bound: int = DEFAULT_BOUND) -> PermGroup:
    """Breadth-first closure of the generators; deterministic element order."""
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator (or use PermGroup.trivial)")
    degree = generators[0].degree
    if any(g.degree != degree for g in generators):
        raise DegreeMismatch("generators act on different point sets")
    ident = Permutation.identity(degree)
    seen = {ident.images}
    elements = [ident]
    level = [ident]
    while level:
        candidates = set()
        for t in level:
            for s in generators:
                u = t * s
                if u.images not in seen:
                    candidates.add(u.images)
        level = [Permutation(im) for im in sorted(candidates)]
        for u in level:
            seen.add(u.images)
            elements.append(u)
        if len(elements) > bound:
            raise ClosureExceedsBound(f"closure exceeds bound {bound}")
    return PermGroup(degree, generators, elements)


def _small_generating_set(degree: int, elements) -> tuple[Permutation, ...]:
    """Greedy small generating set for an explicitly listed subgroup."""
    if len(elements) == 1:
        return ()
    target = {p.images for p in elements}
    gens: list[Permutation] = []
    closed = {Permutation.identity(degree).images}
    for p in elements:
        if p.images in closed:
            continue
        gens.append(p)
        frontier = list(closed)
        closed.add(p.images)
        frontier.append(p.images)
        while frontier:
            nxt = []
            for im in frontier:
                q = Permutation(im)
                for s in gens:
                    u = (q * s).images
                    if u not in closed:
                        closed.add(u)
                        nxt.append(u)
            frontier = nxt
        if closed == target:
            break
    return tuple(gens)


def point_stabiliser(G: PermGroup, omega: int) -> PermGroup:
    """Stabiliser of the 1-based point omega."""
    if not 1 <= omega <= G.degree:
        raise ValueError(f"point {omega} out of range 1..{G.degree}")
    w = omega - 1
    elems = [g for g in G.elements if g(w) == w]
    return PermGroup.from_elements(G.degree, elems)


class CosetTransversal:
    """Right transversal of H in G with t_1 = identity and a full
    element -> coset-index map for O(1) factorisation."""

    def __init__(self, G: PermGroup, H: PermGroup):
        if not H.is_subgroup_of(G):
            raise NotASubgroup("H is not a subgroup of G")
        self.group = G
        self.subgroup = H
        reps: list[Permutation] = []
        coset_of: dict[tuple, int] = {}

        def open_coset(t: Permutation) -> None:
            idx = len(reps)
            reps.append(t)
            for h in H.elements:
                coset_of[(h * t).images] = idx

        open_coset(G.identity())
        level = [G.identity()]
        while level:
            candidates: dict[int, Permutation] = {}
            marker = len(reps)
            new_cosets: dict[tuple, Permutation] = {}
            for t in level:
                for s in G.generators:
                    u = t * s
                    if u.images in coset_of:
                        continue
                    # first sight of this coset in the current level
                    key = min((h * u).images for h in H.elements)
                    cur = new_cosets.get(key)
                    if cur is None or u.images < cur.images:
                        new_cosets[key] = u
            for u in sorted(new_cosets.values(), key=lambda p: p.images):
                open_coset(u)
            level = reps[marker:]
        self.reps = reps
        self._coset_of = coset_of
        assert len(reps) * H.order == G.order

    def __len__(self) -> int:
        return len(self.reps)

    def coset_index(self, g: Permutation) -> int:
        return self._coset_of[g.images]

    def factorise(self, g: Permutation) -> tuple[Permutation, Permutation]:
        """g = h * t with h in H and t in reps."""
        t = self.reps[self._coset_of[g.images]]
        h = g * t.inverse()
        return h, t


def right_transversal(G: PermGroup, H: PermGroup) -> CosetTransversal:
    return CosetTransversal(G, H)


class DoubleCosetDecomposition:
    """H-double cosets of G: canonical representatives, intersection
    subgroups H_i = H meet t_i^-1 H t_i, and indices k_i = |H : H_i|."""

    def __init__(self, G: PermGroup, H: PermGroup, transversal: CosetTransversal | None = None):
        if transversal is None:
            transversal = CosetTransversal(G, H)
        self.group = G
        self.subgroup = H
        self.transversal = transversal
        reps: list[Permutation] = []
        coset_lists: list[list[int]] = []
        assigned: dict[int, int] = {}
        hgens = H.generators or (H.identity(),)
        for idx, t in enumerate(transversal.reps):
            if idx in assigned:
                continue
            block = [idx]
            assigned[idx] = len(reps)
            frontier = [t]
            while frontier:
                nxt = []
                for u in frontier:
                    for h in hgens:
                        v = u * h
                        j = transversal.coset_index(v)
                        if j not in assigned:
                            assigned[j] = len(reps)
                            block.append(j)
                            nxt.append(transversal.reps[j])
                frontier = nxt
            reps.append(t)
            coset_lists.append(sorted(block))
        self.reps = reps
        self.coset_blocks = coset_lists
        self.intersections = []
        self.indices = []
        self.sizes = []
        for t in reps:
            ti = t.inverse()
            elems = [h for h in H.elements if H.contains(t * h * ti)]
            Hi = PermGroup.from_elements(G.degree, elems)
            self.intersections.append(Hi)
            self.indices.append(H.order // Hi.order)
            self.sizes.append(H.order * (H.order // Hi.order))
        assert sum(self.sizes) == G.order
        assert all(k * Hi.order == H.order for k, Hi in zip(self.indices, self.intersections))

    @property
    def rank(self) -> int:
        return len(self.reps)


def double_cosets(G: PermGroup, H: PermGroup) -> DoubleCosetDecomposition:
    return DoubleCosetDecomposition(G, H)


class OrbitalDescriptor:
    """One orbital of a transitive action: its pair set and pairing data."""

    __slots__ = ("rep", "pairs", "self_paired", "size")

    def __init__(self, rep: Permutation, pairs: frozenset, self_paired: bool):
        self.rep = rep
        self.pairs = pairs
        self.self_paired = self_paired
        self.size = len(pairs)


def orbitals(G: PermGroup, H: PermGroup, omega: int = 1,
             decomposition: DoubleCosetDecomposition | None = None) -> list[OrbitalDescriptor]:
    """Orbitals of the transitive action, one per H-double coset.

    H must be the stabiliser of the 1-based point omega.
    """
    if not G.is_transitive():
        raise NotTransitive("orbitals require a transitive action")
    w = omega - 1
    if any(h(w) != w for h in H.elements) or H.order * G.degree != G.order:
        raise NotASubgroup("H is not the stabiliser of the given point")
    if decomposition is None:
        decomposition = DoubleCosetDecomposition(G, H)
    out = []
    for t in decomposition.reps:
        pairs = frozenset((k(w), (t * k)(w)) for k in G.elements)
        a, b = next(iter(pairs))
        out.append(OrbitalDescriptor(t, pairs, (b, a) in pairs))
    return out


def conjugacy_classes(G: PermGroup) -> list[tuple[Permutation, list[Permutation]]]:
    """Conjugacy classes in canonical order; representative = first element
    of the class in enumeration order."""
    gens = G.generators or (G.identity(),)
    inv_gens = [g.inverse() for g in gens]
    assigned: dict[tuple, int] = {}
    classes: list[tuple[Permutation, list[Permutation]]] = []
    for x in G.elements:
        if x.images in assigned:
            continue
        members = [x]
        assigned[x.images] = len(classes)
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g, gi in zip(gens, inv_gens):
                    z = gi * y * g
                    if z.images not in assigned:
                        assigned[z.images] = len(classes)
                        members.append(z)
                        nxt.append(z)
            frontier = nxt
        classes.append((x, members))
    return classes


def commutator_subgroup(G: PermGroup) -> PermGroup:
    """Normal closure of all generator commutators."""
    gens = list(G.generators) or [G.identity()]
    comms = []
    for a in gens:
        for b in gens:
            c = a.inverse() * b.inverse() * a * b
            if not c.is_identity():
                comms.append(c)
    if not comms:
        return PermGroup.trivial(G.degree)
    closed = {G.identity().images}
    elems = [G.identity()]
    frontier = list({c.images: c for c in comms}.values())
    for c in frontier:
        if c.images not in closed:
            closed.add(c.images)
            elems.append(c)
    while frontier:
        nxt = []
        for x in frontier:
            candidates = [x * c for c in comms]
            candidates += [g.inverse() * x * g for g in gens]
            for y in candidates:
                if y.images not in closed:
                    closed.add(y.images)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return PermGroup.from_elements(G.degree, elems)


# -- group files ---------------------------------------------------------------


def group_to_json(G: PermGroup, name: str | None = None) -> dict:
    data = {"degree": G.degree, "generators": [g.one_line() for g in G.generators]}
    if name:
        data["name"] = name
    return data


def group_from_json(data: dict, bound: int = DEFAULT_BOUND) -> PermGroup:
    from .errors import SchemaError

    try:
        degree = int(data["degree"])
        gens = [Permutation.from_one_line(images) for images in data["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad group file: {exc}") from exc
    for g in gens:
        if g.degree != degree or sorted(g.images) != list(range(degree)):
            raise SchemaError("generator is not a permutation of 1..degree")
    if not gens:
        return PermGroup.trivial(degree)
    return group_closure(gens, bound)


def load_group(path, bound: int = DEFAULT_BOUND) -> PermGroup:
    with open(path) as fh:
        return group_from_json(json.load(fh), bound)
