"""Induced monomial representations, orbital orientability, and the
orientable-orbital basis of the centraliser algebra with its structure
constants.

Two construction routes are provided: the transversal route for a
representation induced from a linear character of a subgroup, and a gauge
propagation route that builds the same basis directly from generator
matrices when the representation arrives as explicit monomial matrices.
"""

from __future__ import annotations

from .cyclo import CyclotomicNumber, ONE, ZERO
from .errors import NotASubgroup, OrientabilityViolation
from .perm import (CosetTransversal, DoubleCosetDecomposition, PermGroup,
                   Permutation)
from .structure import LinearCharacter


class MonomialMatrix:
    """Monomial matrix P*D: row i holds unit ``units[i]`` in column ``perm(i)``."""

    __slots__ = ("perm", "units")

    def __init__(self, perm: Permutation, units):
        self.perm = perm
        self.units = tuple(units)

    @property
    def degree(self) -> int:
        return self.perm.degree

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return self.units[i] if self.perm(i) == j else ZERO

    def __mul__(self, other: MonomialMatrix) -> MonomialMatrix:
        perm = self.perm * other.perm
        units = tuple(self.units[i] * other.units[self.perm(i)] for i in range(self.degree))
        return MonomialMatrix(perm, units)

    def inverse(self) -> MonomialMatrix:
        pinv = self.perm.inverse()
        units = tuple(self.units[pinv(i)].inverse() for i in range(self.degree))
        return MonomialMatrix(pinv, units)

    def conjugate_transpose(self) -> MonomialMatrix:
        pinv = self.perm.inverse()
        units = tuple(self.units[pinv(i)].conjugate() for i in range(self.degree))
        return MonomialMatrix(pinv, units)

    def scale(self, c: CyclotomicNumber) -> MonomialMatrix:
        return MonomialMatrix(self.perm, tuple(c * u for u in self.units))

    def dense(self) -> list[list[CyclotomicNumber]]:
        n = self.degree
        out = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            out[i][self.perm(i)] = self.units[i]
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, MonomialMatrix)
                and self.perm == other.perm and self.units == other.units)

    def __hash__(self) -> int:
        return hash((self.perm.images, self.units))

    def __repr__(self) -> str:
        return f"MonomialMatrix(degree {self.degree}, perm {self.perm})"


class MonomialRep:
    """The representation of G induced from a linear character of H,
    materialized through a fixed right transversal."""

    def __init__(self, group: PermGroup, subgroup: PermGroup, character: LinearCharacter,
                 transversal: CosetTransversal | None = None):
        if not subgroup.is_subgroup_of(group):
            raise NotASubgroup("H is not a subgroup of G")
        if character.domain is not subgroup and not (
                character.domain.order == subgroup.order
                and all(subgroup.contains(g) for g in character.domain.elements)):
            raise ValueError("character is not defined on the subgroup")
        self.group = group
        self.subgroup = subgroup
        self.character = character
        self.transversal = transversal or CosetTransversal(group, subgroup)
        self.degree = len(self.transversal.reps)

    def coset_part(self, g: Permutation) -> Permutation:
        return self.transversal.reps[self.transversal.coset_index(g)]

    def subgroup_part(self, g: Permutation) -> Permutation:
        h, _ = self.transversal.factorise(g)
        return h

    def unit_part(self, g: Permutation) -> CyclotomicNumber:
        h, _ = self.transversal.factorise(g)
        return self.character(h)

    def factor_maps(self, g: Permutation):
        """(H(g), T(g), U(g)) with g = H(g)*T(g) and U(g) = chi(H(g))."""
        h, t = self.transversal.factorise(g)
        return h, t, self.character(h)

    def materialize(self, g: Permutation) -> MonomialMatrix:
        tr = self.transversal
        n = self.degree
        images = []
        units = []
        for i in range(n):
            tg = tr.reps[i] * g
            images.append(tr.coset_index(tg))
            units.append(self.character(tr.factorise(tg)[0]))
        return MonomialMatrix(Permutation(images), units)

    def generator_matrices(self) -> list[MonomialMatrix]:
        return [self.materialize(g) for g in self.group.generators]


def factor_maps(rep: MonomialRep, g: Permutation):
    return rep.factor_maps(g)


def induce_representation(G: PermGroup, H: PermGroup, chi: LinearCharacter) -> MonomialRep:
    return MonomialRep(G, H, chi)


def orbital_orientable(rep: MonomialRep, t: Permutation):
    """Orientability test for the orbital anchored at (1, t): the character
    must kill every commutator t h t^-1 h^-1 with h in H meet t^-1 H t.

    Returns (True, None) or (False, witness h).
    """
    H = rep.subgroup
    chi = rep.character
    ti = t.inverse()
    for h in H.elements:
        conj = t * h * ti
        if H.contains(conj):
            if chi(conj) != chi(h):
                return False, h
    return True, None


class OrbitalMatrix:
    """Sparse matrix supported on one orientable orbital, with the anchor
    entry in row 1 normalized to 1."""

    __slots__ = ("degree", "coset_rep", "entries", "orientable")

    def __init__(self, degree: int, coset_rep: Permutation, entries: dict):
        self.degree = degree
        self.coset_rep = coset_rep
        self.entries = entries
        self.orientable = True

    def entry(self, i: int, j: int) -> CyclotomicNumber:
        return self.entries.get((i, j), ZERO)

    @property
    def support_size(self) -> int:
        return len(self.entries)

    def rows(self) -> dict[int, list[tuple[int, CyclotomicNumber]]]:
        out: dict[int, list[tuple[int, CyclotomicNumber]]] = {}
        for (i, j), v in self.entries.items():
            out.setdefault(i, []).append((j, v))
        return out

    def dense(self) -> list[list[CyclotomicNumber]]:
        out = [[ZERO] * self.degree for _ in range(self.degree)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def to_json(self) -> dict:
        return {
            "rows": self.degree,
            "entries": [[i + 1, j + 1, v.to_json()]
                        for (i, j), v in sorted(self.entries.items())],
        }

    def __repr__(self) -> str:
        return f"OrbitalMatrix(degree {self.degree}, support {len(self.entries)})"


def orbital_matrix(rep: MonomialRep, t: Permutation) -> OrbitalMatrix:
    """Fill the orbital of (1, t) by sweeping g over G with the rule
    m(T(g), T(tg)) = m(1, t) U(g)^-1 U(tg); the sweep itself verifies
    consistency of every overdetermined assignment."""
    tr = rep.transversal
    entries: dict[tuple[int, int], CyclotomicNumber] = {}
    for g in rep.group.elements:
        i = tr.coset_index(g)
        tg = t * g
        j = tr.coset_index(tg)
        value = rep.unit_part(g).inverse() * rep.unit_part(tg)
        old = entries.get((i, j))
        if old is None:
            entries[(i, j)] = value
        elif old != value:
            raise OrientabilityViolation(
                "inconsistent fill: the orbital of the given representative is non-orientable")
    return OrbitalMatrix(rep.degree, t, entries)


class CentraliserBasis:
    """Ordered basis of the centraliser algebra by orientable orbital
    matrices, with exact structure constants."""

    def __init__(self, matrices, structure_constants, commutative: bool,
                 rep=None, non_orientable: int = 0):
        self.matrices = list(matrices)
        self.structure_constants = structure_constants
        self.commutative = commutative
        self.rep = rep
        self.non_orientable = non_orientable
        self.degree = matrices[0].degree if matrices else 0

    @property
    def rank(self) -> int:
        return len(self.matrices)

    def subdegree_profile(self) -> list[int]:
        return [m.support_size // self.degree for m in self.matrices]

    def product_coefficients(self, i: int, j: int) -> list[CyclotomicNumber]:
        return [self.structure_constants[i][j][k] for k in range(self.rank)]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rank": self.rank,
            "commutative": self.commutative,
            "non_orientable_orbitals": self.non_orientable,
            "matrices": [m.to_json() for m in self.matrices],
            "structure_constants": [
                [[self.structure_constants[i][j][k].to_json() for k in range(self.rank)]
                 for j in range(self.rank)]
                for i in range(self.rank)
            ],
        }


def _sparse_product(A: OrbitalMatrix, B: OrbitalMatrix) -> dict:
    brows = B.rows()
    out: dict[tuple[int, int], CyclotomicNumber] = {}
    for (i, j), u in A.entries.items():
        for (k, v) in brows.get(j, ()):
            key = (i, k)
            s = out.get(key, ZERO) + u * v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return out


def _structure_constants(matrices: list[OrbitalMatrix]):
    """Read c_ijk off the anchor cell of each basis matrix, then verify the
    full product expansion exactly."""
    r = len(matrices)
    anchors = []
    for m in matrices:
        cell = min((c for c in m.entries if c[0] == 0))
        assert m.entries[cell] == 1
        anchors.append(cell)
    table = [[[ZERO] * r for _ in range(r)] for _ in range(r)]
    commutative = True
    products = {}
    for i in range(r):
        for j in range(r):
            prod = _sparse_product(matrices[i], matrices[j])
            products[(i, j)] = prod
            coeffs = [prod.get(anchors[k], ZERO) for k in range(r)]
            table[i][j] = coeffs
            # the product must be exactly the claimed combination
            expansion: dict[tuple[int, int], CyclotomicNumber] = {}
            for k, c in enumerate(coeffs):
                if c.is_zero():
                    continue
                for cell, v in matrices[k].entries.items():
                    s = expansion.get(cell, ZERO) + c * v
                    if s.is_zero():
                        expansion.pop(cell, None)
                    else:
                        expansion[cell] = s
            if expansion != prod:
                raise OrientabilityViolation(
                    "orbital products leave the span of the orientable orbitals")
    for i in range(r):
        for j in range(i + 1, r):
            if products[(i, j)] != products[(j, i)]:
                commutative = False
    return table, commutative


def centraliser_basis(rep: MonomialRep,
                      decomposition: DoubleCosetDecomposition | None = None) -> CentraliserBasis:
    """Basis in canonical double-coset order, identity orbital first."""
    if decomposition is None:
        decomposition = DoubleCosetDecomposition(rep.group, rep.subgroup, rep.transversal)
    matrices = []
    skipped = 0
    for t in decomposition.reps:
        ok, _ = orbital_orientable(rep, t)
        if ok:
            matrices.append(orbital_matrix(rep, t))
        else:
            skipped += 1
    table, commutative = _structure_constants(matrices)
    return CentraliserBasis(matrices, table, commutative, rep=rep, non_orientable=skipped)


def centraliser_basis_from_generators(mats: list[MonomialMatrix]) -> CentraliserBasis:
    """Basis of {M : rho(g) M = M rho(g) for all generators}, built by weighted
    gauge propagation over matrix cells.

    Cells of the n x n array are merged along (i, j) -> (s(i), s(j)) with the
    unit factor forced by each generator; components with an inconsistent
    cycle factor carry only the zero matrix.
    """
    n = mats[0].degree
    parent = list(range(n * n))
    weight = [ONE] * (n * n)  # value(x) = weight[x] * value(parent[x])
    dead: set[int] = set()

    def find(x: int) -> int:
        # path-compressing find; afterwards weight[x] = value(x)/value(root)
        if parent[x] == x:
            return x
        stack = []
        while parent[x] != x:
            stack.append(x)
            x = parent[x]
        root = x
        for y in reversed(stack):
            p = parent[y]
            if p != root:
                weight[y] = weight[y] * weight[p]
                parent[y] = root
        return root

    def weight_to_root(x: int) -> CyclotomicNumber:
        return ONE if find(x) == x else weight[x]

    def union(a: int, b: int, f: CyclotomicNumber) -> None:
        # impose value(b) = f * value(a)
        ra, rb = find(a), find(b)
        wa, wb = weight_to_root(a), weight_to_root(b)
        if ra == rb:
            if wb != f * wa:
                dead.add(ra)
            return
        parent[rb] = ra
        weight[rb] = f * wa / wb
        if rb in dead:
            dead.discard(rb)
            dead.add(ra)

    for mat in mats:
        s = mat.perm
        u = mat.units
        for i in range(n):
            for j in range(n):
                f = u[j] / u[i]
                union(i * n + j, s(i) * n + s(j), f)

    components: dict[int, list[int]] = {}
    for cell in range(n * n):
        components.setdefault(find(cell), []).append(cell)
    live = [(min(cells), root, cells) for root, cells in components.items()
            if find(root) not in dead]
    live.sort()
    matrices = []
    for anchor, root, cells in live:
        anchor_w = weight_to_root(anchor)
        entries = {}
        for cell in cells:
            w = weight_to_root(cell)
            entries[(cell // n, cell % n)] = w / anchor_w
        matrices.append(OrbitalMatrix(n, None, entries))
    table, commutative = _structure_constants(matrices)
    dead_components = len(components) - len(live)
    return CentraliserBasis(matrices, table, commutative, rep=mats,
                            non_orientable=dead_components)


def centraliser_membership(rep, M) -> bool:
    """Exact commutation test of M against the representation generators.

    ``rep`` is a MonomialRep or a list of MonomialMatrix generators; M is a
    dense matrix (list of lists) or an OrbitalMatrix.
    """
    gens = rep.generator_matrices() if isinstance(rep, MonomialRep) else list(rep)
    if isinstance(M, OrbitalMatrix):
        M = M.dense()
    n = len(M)
    for g in gens:
        s, u = g.perm, g.units
        for i in range(n):
            for j in range(n):
                # (rho M)[i][j] = u_i M[s(i)][j];  (M rho)[i][j] = M[i][s^-1(j)] u_{s^-1(j)}
                left = u[i] * M[s(i)][j]
                jp = s.inverse()(j)
                right = M[i][jp] * u[jp]
                if left != right:
                    return False
    return True
