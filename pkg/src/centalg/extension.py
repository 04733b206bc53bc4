"""Central extensions from 2-cocycles, cocycle and coboundary spaces with
H^2 invariant factors for small groups, and monomial-cover data files for
the large covers.

Cocycle values are exponents in Z_m for the coefficient group <zeta_m>;
matrices convert to roots of unity only at the boundary.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .cyclo import CyclotomicNumber
from .errors import (ClosureExceedsBound, GroupTooLarge, InvalidCocycle,
                     ProjectionMismatch, SchemaError)
from .induce import MonomialMatrix
from .perm import DEFAULT_BOUND, PermGroup, Permutation, group_from_json

H2_GROUP_BOUND = 100


class Cocycle:
    """Normalized 2-cocycle on G with values in Z_m (exponent form)."""

    def __init__(self, group: PermGroup, modulus: int, table):
        self.group = group
        self.modulus = modulus
        self.table = np.asarray(table, dtype=np.int64) % modulus
        n = group.order
        if self.table.shape != (n, n):
            raise InvalidCocycle(f"table must be {n} x {n}")

    def value(self, g: Permutation, h: Permutation) -> int:
        i = self.group.index_of(g)
        j = self.group.index_of(h)
        return int(self.table[i, j])

    @classmethod
    def trivial(cls, group: PermGroup, modulus: int) -> Cocycle:
        return cls(group, modulus, np.zeros((group.order, group.order), dtype=np.int64))

    @classmethod
    def coboundary(cls, group: PermGroup, modulus: int, phi) -> Cocycle:
        """The coboundary of phi: G -> Z_m with phi(1) = 0."""
        n = group.order
        mult = _mult_table(group)
        phi = np.asarray(phi, dtype=np.int64) % modulus
        if phi[0] % modulus:
            raise InvalidCocycle("phi must vanish on the identity")
        table = (phi[:, None] + phi[None, :] - phi[mult]) % modulus
        return cls(group, modulus, table)

    def is_coboundary_of(self, phi) -> bool:
        other = Cocycle.coboundary(self.group, self.modulus, phi)
        return bool(np.array_equal(self.table, other.table))


def _mult_table(group: PermGroup) -> np.ndarray:
    cached = getattr(group, "_mult_table_cache", None)
    if cached is None:
        n = group.order
        cached = np.zeros((n, n), dtype=np.int64)
        for i, a in enumerate(group.elements):
            row = [0] * n
            for j, b in enumerate(group.elements):
                row[j] = group.index_of(a * b)
            cached[i] = row
        group._mult_table_cache = cached
    return cached


def validate_cocycle(psi: Cocycle) -> bool:
    """Normalization and the full cocycle identity (all |G|^3 triples for
    |G| <= 100, a deterministic sample above)."""
    G = psi.group
    n = G.order
    m = psi.modulus
    t = psi.table
    if np.any(t[0, :] % m) or np.any(t[:, 0] % m):
        return False
    mult = _mult_table(G)
    if n <= H2_GROUP_BOUND:
        g = np.arange(n)[:, None, None]
        h = np.arange(n)[None, :, None]
        k = np.arange(n)[None, None, :]
        gh = mult[g, h]
        hk = mult[h, k]
        lhs = t[g, h] + t[gh, k]
        rhs = t[g, hk] + t[h, k]
        return bool(np.all((lhs - rhs) % m == 0))
    rng = np.random.default_rng(0)
    idx = rng.integers(0, n, size=(20000, 3))
    for g, h, k in idx:
        if (t[g, h] + t[mult[g, h], k] - t[g, mult[h, k]] - t[h, k]) % m:
            return False
    return True


# -- reduced cocycle space ------------------------------------------------------


class CocycleSpace:
    """Z^2(G, Z_m), B^2(G, Z_m), and the invariant factors of H^2.

    A normalized cocycle is determined by its values on S x G for a
    generating set S: the identity psi(uw, k) = psi(u, wk) + psi(w, k)
    - psi(u, w) propagates along a left factorization tree, and imposing the
    cocycle identity for triples with first argument in S is sufficient.
    The linear algebra then happens in |S|*(|G|-1) unknowns."""

    def __init__(self, group: PermGroup, modulus: int, z_basis, b_basis, invariants,
                 expand):
        self.group = group
        self.modulus = modulus
        self.z_basis = z_basis          # rows: reduced coordinate vectors
        self.b_basis = b_basis
        self.invariants = invariants    # H^2 invariant factors (all > 1)
        self._expand = expand

    @property
    def h2_order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    def cocycle_from_reduced(self, vec) -> Cocycle:
        return Cocycle(self.group, self.modulus, self._expand(np.asarray(vec)))

    def class_representatives(self, limit: int = 256) -> list[Cocycle]:
        """One cocycle per H^2 class (trivial class first)."""
        if self.h2_order > limit:
            raise GroupTooLarge(f"H^2 has {self.h2_order} classes; raise the limit")
        nv = self.z_basis.shape[1] if self.z_basis.size else 0
        zero = np.zeros(nv, dtype=np.int64)
        import itertools

        ranges = [d for d, _v in self._class_generators]
        vectors = [v for _d, v in self._class_generators]
        combos = []
        for exps in itertools.product(*[range(d) for d in ranges]):
            if all(e == 0 for e in exps):
                continue
            combo = zero.copy()
            for e, v in zip(exps, vectors):
                combo = combo + e * v
            combos.append(combo % self.modulus)
        out = [self.cocycle_from_reduced(zero)]
        out.extend(self.cocycle_from_reduced(v) for v in combos)
        return out


def cocycle_space(G: PermGroup, m: int) -> CocycleSpace:
    if G.order > H2_GROUP_BOUND:
        raise GroupTooLarge(f"cocycle space restricted to |G| <= {H2_GROUP_BOUND}")
    n = G.order
    if n == 1:
        space = CocycleSpace(G, m, np.zeros((0, 0), dtype=np.int64),
                             np.zeros((0, 0), dtype=np.int64), [],
                             lambda vec: np.zeros((1, 1), dtype=np.int64))
        space._class_generators = []
        return space
    gens = list(G.generators)
    gen_idx = [G.index_of(g) for g in gens]
    mult = _mult_table(G)
    ns = len(gens)
    nv = ns * (n - 1)  # unknowns psi(s, y), y != identity

    def var(si: int, y: int) -> int:
        return si * (n - 1) + (y - 1)

    # left factorization tree: elem = gen * shorter
    parent: dict[int, tuple[int, int]] = {}
    order: list[int] = [0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for w in frontier:
            for si, gi in enumerate(gen_idx):
                u = mult[gi, w]  # gen * w
                if u not in seen:
                    seen.add(u)
                    parent[u] = (si, w)
                    order.append(u)
                    nxt.append(u)
        frontier = nxt
    assert len(order) == n

    # L[x][y] = integer vector over the reduced unknowns
    L = np.zeros((n, n, nv), dtype=np.int64)
    for si, gi in enumerate(gen_idx):
        for y in range(1, n):
            L[gi, y, var(si, y)] += 1
    for w in order:
        if w == 0 or w in gen_idx:
            continue
        si, rest = parent[w]
        gi = gen_idx[si]
        for k in range(n):
            L[w, k] = L[gi, mult[rest, k]] + L[rest, k] - L[gi, rest]

    rows = []
    for gi in gen_idx:
        for h in range(n):
            gh = mult[gi, h]
            for k in range(n):
                row = L[gi, h] + L[gh, k] - L[gi, mult[h, k]] - L[h, k]
                if row.any():
                    rows.append(row % m)
    A = np.unique(np.array(rows, dtype=np.int64), axis=0) if rows else \
        np.zeros((0, nv), dtype=np.int64)

    kernel = _kernel_mod(A, m, nv)  # rows span {x : Ax = 0 mod m}, includes m*I

    # coboundaries in reduced coordinates
    b_rows = []
    for z in range(1, n):
        phi = np.zeros(n, dtype=np.int64)
        phi[z] = 1
        row = np.zeros(nv, dtype=np.int64)
        for si, gi in enumerate(gen_idx):
            for y in range(1, n):
                row[var(si, y)] = (phi[gi] + phi[y] - phi[mult[gi, y]]) % m
        b_rows.append(row)
    B = np.array(b_rows, dtype=np.int64) if b_rows else np.zeros((0, nv), dtype=np.int64)
    b_lattice = _hnf_mod(np.vstack([B, m * np.eye(nv, dtype=np.int64)]), m)

    inv, class_gens = _quotient_invariants(kernel, b_lattice, m)

    def expand(vec) -> np.ndarray:
        table = (L @ (np.asarray(vec, dtype=np.int64) % m)) % m
        return table

    space = CocycleSpace(G, m, kernel, b_lattice, inv, expand)
    space._class_generators = class_gens
    return space


def _hnf_mod(rows: np.ndarray, m: int) -> np.ndarray:
    """Row-style Hermite form of the lattice spanned by the rows plus m*Z^n,
    entries kept in [0, m). Returns a full-rank n x n upper triangular basis."""
    n = rows.shape[1]
    basis = [None] * n  # basis[c] has pivot at column c
    for c in range(n):
        v = np.zeros(n, dtype=np.int64)
        v[c] = m
        basis[c] = v

    def insert(v: np.ndarray) -> None:
        v = v % m
        while v.any():
            c = int(np.nonzero(v)[0][0])
            b = basis[c]
            g = math.gcd(int(b[c]), int(v[c]))
            # combine so pivot becomes g
            if v[c] % b[c] == 0:
                v = (v - (int(v[c]) // int(b[c])) * b) % m
                continue
            # extended gcd step
            x0, y0 = _ext_gcd(int(b[c]), int(v[c]))
            new_b = (x0 * b + y0 * v) % m
            v = ((int(v[c]) // g) * b - (int(b[c]) // g) * v) % m
            basis[c] = new_b
    for r in rows:
        insert(r.copy())
    # reduce above-pivot entries
    out = np.array(basis, dtype=np.int64)
    for c in range(n - 1, -1, -1):
        piv = int(out[c, c])
        if piv == 0:
            continue
        for r in range(c):
            q = int(out[r, c]) // piv
            if q:
                out[r] = (out[r] - q * out[c]) % m
    return out


def _ext_gcd(a: int, b: int) -> tuple[int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


def _kernel_mod(A: np.ndarray, m: int, nv: int) -> np.ndarray:
    """Row basis of the lattice {x : A x = 0 mod m} (contains m*Z^nv)."""
    basis = np.eye(nv, dtype=np.int64)
    values = None
    for row in A:
        vals = (basis @ row) % m
        # unimodular row ops on basis to concentrate the value in one vector
        idxs = [i for i in range(len(basis)) if vals[i] % m]
        if not idxs:
            continue
        i0 = idxs[0]
        for i in idxs[1:]:
            a, b = int(vals[i0]), int(vals[i])
            g = math.gcd(a, b)
            x0, y0 = _ext_gcd(a, b)
            newi0 = x0 * basis[i0] + y0 * basis[i]
            newi = (b // g) * basis[i0] - (a // g) * basis[i]
            basis[i0], basis[i] = newi0, newi
            vals[i0], vals[i] = g, 0
        g = int(vals[i0]) % m
        g = math.gcd(g, m)
        scale = m // g
        basis[i0] = basis[i0] * scale
        basis = basis % m
    out = np.vstack([basis, m * np.eye(nv, dtype=np.int64)])
    return _hnf_mod(out, m)


def _quotient_invariants(K: np.ndarray, B: np.ndarray, m: int):
    """Invariant factors (>1) of the quotient lattice K/B plus reduced-space
    generators of each cyclic factor. Both lattices contain m*Z^nv."""
    nv = K.shape[1]
    # coordinates of B rows in the K basis (K is upper triangular, full rank)
    Y = []
    for b in B:
        y = np.zeros(nv, dtype=object)
        r = b.astype(object).copy()
        for c in range(nv):
            piv = int(K[c, c])
            q = int(r[c]) // piv if piv else 0
            assert piv and int(r[c]) % piv == 0, "B is not contained in K"
            y[c] = q
            r = r - q * K[c].astype(object)
        assert all(int(x) == 0 for x in r), "B is not contained in K"
        Y.append([int(v) for v in y])
    Ym = [[int(v) for v in row] for row in Y]
    diag, pinv = _smith_normal_form(Ym, nv, mod=m)
    ranges = []
    gens = []
    for i in range(nv):
        d = diag[i] if i < len(diag) else 0
        if d > 1:
            # generator of the Z_d factor: transformed basis vector in K
            vec = np.zeros(nv, dtype=np.int64)
            for c in range(nv):
                vec = vec + pinv[i][c] * K[c]
            ranges.append(d)
            gens.append(vec % m)
    invariants = _divisor_chain(ranges)
    return invariants, list(zip(ranges, gens))


def _divisor_chain(ds: list[int]) -> list[int]:
    ds = [d for d in ds if d > 1]
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            if ds[j] % ds[i]:
                g = math.gcd(ds[i], ds[j])
                ds[i], ds[j] = g, ds[i] * ds[j] // g
    return sorted([d for d in ds if d > 1])


def _smith_normal_form(rows: list[list[int]], ncols: int, mod: int | None = None):
    """Diagonalize the integer matrix by unimodular row and column
    operations. Returns (diagonal entries, Pinv) where row j of Pinv holds
    the coefficients expressing the j-th transformed basis vector in the
    original column basis (Pinv = Q^-1 for the accumulated column transform
    A -> A Q).

    With ``mod`` set the row lattice must contain mod*Z^ncols (rows of
    mod*I are appended); entries are then reduced modulo mod throughout,
    which keeps the integers small. Sizes here are small either way."""
    A = [row[:] for row in rows]
    if mod:
        A = [[x % mod for x in row] for row in A]
        for j in range(ncols):
            A.append([mod if k == j else 0 for k in range(ncols)])
    nr = len(A)
    Pinv = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def _red(row):
        return [x % mod for x in row] if mod else row

    def col_op(j1, j2, a, b, c, d):
        # columns: c_j1' = a c_j1 + b c_j2, c_j2' = c c_j1 + d c_j2
        det = a * d - b * c
        assert det in (1, -1)
        for r in range(nr):
            x, y = A[r][j1], A[r][j2]
            u, v = a * x + b * y, c * x + d * y
            if mod:
                u, v = u % mod, v % mod
            A[r][j1], A[r][j2] = u, v
        # mirror with the inverse on Pinv rows: E^-1 = det^-1 [[d, -c], [-b, a]]
        r1, r2 = Pinv[j1], Pinv[j2]
        Pinv[j1] = [(d * x - c * y) * det for x, y in zip(r1, r2)]
        Pinv[j2] = [(-b * x + a * y) * det for x, y in zip(r1, r2)]

    def row_op(i1, i2, a, b, c, d):
        r1, r2 = A[i1], A[i2]
        A[i1] = _red([a * x + b * y for x, y in zip(r1, r2)])
        A[i2] = _red([c * x + d * y for x, y in zip(r1, r2)])

    diag = []
    t = 0
    while t < min(nr, ncols):
        piv = None
        for i in range(t, nr):
            for j in range(t, ncols):
                if A[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        i0, j0 = piv
        A[t], A[i0] = A[i0], A[t]
        if j0 != t:
            col_op(t, j0, 0, 1, 1, 0)
        changed = True
        while changed:
            changed = False
            for i in range(t + 1, nr):
                if A[i][t]:
                    a, b = A[t][t], A[i][t]
                    if b % a == 0:
                        row_op(t, i, 1, 0, -(b // a), 1)
                    else:
                        g = math.gcd(a, b)
                        x0, y0 = _ext_gcd(a, b)
                        row_op(t, i, x0, y0, -(b // g), a // g)
                        changed = True
            for j in range(t + 1, ncols):
                if A[t][j]:
                    a, b = A[t][t], A[t][j]
                    if b % a == 0:
                        col_op(t, j, 1, 0, -(b // a), 1)
                    else:
                        g = math.gcd(a, b)
                        x0, y0 = _ext_gcd(a, b)
                        col_op(t, j, x0, y0, -(b // g), a // g)
                        changed = True
        diag.append(abs(A[t][t]) if not mod else (abs(A[t][t]) % mod or mod))
        t += 1
    if mod:
        while len(diag) < ncols:
            diag.append(mod)
    return diag, Pinv


# -- central extensions ----------------------------------------------------------


class CentralExtension:
    """The group (Z_m x G, (a,g)(b,h) = (a+b+psi(g,h), gh)) realized as a
    permutation group of degree m*|G| through its right regular action."""

    def __init__(self, base: PermGroup, cocycle: Cocycle):
        if not validate_cocycle(cocycle):
            raise InvalidCocycle("cocycle fails normalization or the identity")
        self.base = base
        self.modulus = cocycle.modulus
        self.cocycle = cocycle
        self.order = self.modulus * base.order

    def element_perm(self, a: int, gi: int) -> Permutation:
        """The permutation of Z_m x G induced by right multiplication."""
        m, n = self.modulus, self.base.order
        mult = _mult_table(self.base)
        t = self.cocycle.table
        images = [0] * (m * n)
        for b in range(m):
            for x in range(n):
                c = (b + a + int(t[x, gi])) % m
                images[b * n + x] = c * n + mult[x, gi]
        return Permutation(images)

    def permutation_group(self, bound: int = DEFAULT_BOUND) -> PermGroup:
        from .perm import group_closure

        gens = [self.element_perm(1, 0)]
        for g in self.base.generators:
            gens.append(self.element_perm(0, self.base.index_of(g)))
        G = group_closure(gens, bound)
        assert G.order == self.order, "extension closure has wrong order"
        return G

    def project(self, a: int, gi: int) -> Permutation:
        return self.base.elements[gi]

    def multiply(self, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
        (a, g), (b, h) = x, y
        mult = _mult_table(self.base)
        return ((a + b + int(self.cocycle.table[g, h])) % self.modulus,
                int(mult[g, h]))

    def element_orders(self) -> list[int]:
        out = []
        for g in range(self.base.order):
            for a in range(self.modulus):
                x = (a, g)
                o = 1
                y = x
                while y != (0, 0):
                    y = self.multiply(y, x)
                    o += 1
                out.append(o)
        return sorted(out)


def extension_from_cocycle(G: PermGroup, psi: Cocycle) -> CentralExtension:
    return CentralExtension(G, psi)


# -- monomial covers --------------------------------------------------------------


class MonomialCover:
    """Explicit monomial generators for a cover group: permutation part plus
    diagonal exponent vector in Z_m^degree."""

    def __init__(self, degree: int, modulus: int, generators, base: PermGroup,
                 name: str | None = None, bound: int = DEFAULT_BOUND):
        self.degree = degree
        self.modulus = modulus
        self.generators = list(generators)
        self.claimed_base = base
        self.name = name
        self._verify(bound)

    def generator_matrices(self) -> list[MonomialMatrix]:
        out = []
        for perm, diag in self.generators:
            units = tuple(CyclotomicNumber.zeta(self.modulus, e) for e in diag)
            out.append(MonomialMatrix(perm, units))
        return out

    def _verify(self, bound: int) -> None:
        from .perm import group_closure

        perm_parts = [perm for perm, _ in self.generators]
        projected = group_closure(perm_parts, bound)
        if (projected.order != self.claimed_base.order
                or not all(self.claimed_base.contains(g) for g in projected.elements)):
            raise ProjectionMismatch(
                "permutation parts do not generate the claimed base group")
        # closure over (perm, diag) pairs with scalar-kernel check
        m, n = self.modulus, self.degree
        seen = {}
        ident = (tuple(range(n)), (0,) * n)
        frontier = [ident]
        seen[ident] = True
        gens = [(p.images, tuple(d % m for d in diag)) for p, diag in self.generators]
        while frontier:
            nxt = []
            for perm, diag in frontier:
                for gp, gd in gens:
                    np_ = tuple(gp[i] for i in perm)
                    nd = tuple((diag[i] + gd[perm[i]]) % m for i in range(n))
                    key = (np_, nd)
                    if key not in seen:
                        if len(seen) >= bound:
                            raise ClosureExceedsBound("monomial closure exceeds bound")
                        seen[key] = True
                        nxt.append(key)
            frontier = nxt
        self.order = len(seen)
        idperm = tuple(range(n))
        scalars = {diag for perm, diag in seen if perm == idperm}
        for diag in scalars:
            if len(set(diag)) != 1:
                raise ProjectionMismatch("non-scalar kernel element in the cover")
        self.scalar_kernel_order = len(scalars)

    def permutation_group(self, bound: int = DEFAULT_BOUND) -> PermGroup:
        """The cover as a permutation group on degree*modulus points."""
        from .perm import group_closure

        m, n = self.modulus, self.degree
        gens = []
        for perm, diag in self.generators:
            images = [0] * (m * n)
            for a in range(m):
                for i in range(n):
                    images[a * n + i] = ((a + diag[i]) % m) * n + perm(i)
            gens.append(Permutation(images))
        return group_closure(gens, bound)

    def block_character_data(self, cover_group: PermGroup):
        """The point-block subgroup of the cover with the unit character it
        carries: elements fixing block 0, chi = zeta^(phase shift at 0)."""
        m, n = self.modulus, self.degree
        elems = [g for g in cover_group.elements if g(0) % n == 0]
        H = PermGroup.from_elements(cover_group.degree, elems)
        from .structure import LinearCharacter

        values = [CyclotomicNumber.zeta(m, g(0) // n) for g in H.elements]
        return H, LinearCharacter(H, values)

    def to_json(self) -> dict:
        from .perm import group_to_json

        return {
            "degree": self.degree,
            "modulus": self.modulus,
            "generators": [{"perm": p.one_line(), "diag": list(d)}
                           for p, d in self.generators],
            "base": group_to_json(self.claimed_base, self.name),
            "name": self.name,
        }


def load_cover(source, bound: int = DEFAULT_BOUND) -> MonomialCover:
    """Load and fully verify a cover file (path, file object, or dict)."""
    if isinstance(source, dict):
        data = source
    elif hasattr(source, "read"):
        data = json.load(source)
    else:
        with open(source) as fh:
            data = json.load(fh)
    try:
        degree = int(data["degree"])
        modulus = int(data["modulus"])
        gens = [(Permutation.from_one_line(entry["perm"]),
                 tuple(int(x) % modulus for x in entry["diag"]))
                for entry in data["generators"]]
        base = group_from_json(data["base"], bound)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad cover file: {exc}") from exc
    for perm, diag in gens:
        if perm.degree != degree or len(diag) != degree:
            raise SchemaError("generator dimensions do not match the degree")
    return MonomialCover(degree, modulus, gens, base, data.get("name"), bound)
