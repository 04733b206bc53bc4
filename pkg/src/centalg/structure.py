"""Group-structure computations feeding the representation layer:
abelianizations, linear characters, induced-character constituents, and
exact character tables of the group (modular Burnside-Dixon, or file import
with verification)."""

from __future__ import annotations

import hashlib
import json
import math
import random
from fractions import Fraction

import numpy as np

from .cyclo import CyclotomicNumber, Rat
from .errors import OrthogonalityFailure, SchemaError
from .perm import (CosetTransversal, PermGroup, Permutation, commutator_subgroup,
                   conjugacy_classes)

__all__ = [
    "LinearCharacter", "GroupCharacterTable", "commutator_subgroup",
    "abelian_invariants", "linear_characters", "character_table_dixon",
    "character_table_import", "character_table_export",
    "induced_character_and_constituents",
]


def _cyc_sort_key(v: CyclotomicNumber):
    c = v._canonical()
    return (c.order, tuple(sorted(c.coeffs.items())))


class LinearCharacter:
    """A one-dimensional character of H, stored as one value per element."""

    def __init__(self, domain: PermGroup, values: list[CyclotomicNumber],
                 exponents: tuple[int, ...] = ()):
        self.domain = domain
        self.values = list(values)
        self.exponents = exponents
        self._lookup = {g.images: v for g, v in zip(domain.elements, values)}
        gens = domain.generators or (domain.identity(),)
        for a in gens:
            for b in gens:
                assert self(a * b) == self(a) * self(b), "character not multiplicative"

    def __call__(self, h: Permutation) -> CyclotomicNumber:
        return self._lookup[h.images]

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def order(self) -> int:
        """Smallest d with all values d-th roots of unity."""
        d = 1
        for v in self.values:
            o = v.root_order()
            d = d * o // math.gcd(d, o)
        return d

    def restrict_test(self) -> bool:
        return all(self(a * b) == self(a) * self(b)
                   for a in self.domain.elements for b in self.domain.elements)

    def __repr__(self) -> str:
        return f"LinearCharacter(order {self.order()} on group of order {self.domain.order})"


def abelian_invariants(H: PermGroup) -> list[int]:
    """Cyclic invariant decomposition of H/H' (largest factor first)."""
    basis = _abelianization_basis(H)
    return [d for _, d in basis[2]]


def _abelianization_basis(H: PermGroup):
    """Cosets of H' in H decomposed into cyclic factors.

    Returns (transversal, coset_exponents, basis) where basis is a list of
    (coset_index, order) and coset_exponents maps each coset index to its
    exponent tuple over the basis.
    """
    K = commutator_subgroup(H)
    tr = CosetTransversal(H, K)
    n = len(tr.reps)
    mult = [[0] * n for _ in range(n)]
    for i, a in enumerate(tr.reps):
        for j, b in enumerate(tr.reps):
            mult[i][j] = tr.coset_index(a * b)

    def order_of(i: int) -> int:
        o, x = 1, i
        while x != 0:
            x = mult[x][i]
            o += 1
        return o

    def power(i: int, k: int) -> int:
        x = 0
        for _ in range(k):
            x = mult[x][i]
        return x

    def basis_of(element_set: list[int], quotient_mult, quotient_order_of):
        # recursive invariant-factor extraction on an abelian mult table
        if len(element_set) == 1:
            return []
        a = max(element_set, key=quotient_order_of)
        d = quotient_order_of(a)
        cyc = []
        x = 0
        for _ in range(d):
            cyc.append(x)
            x = quotient_mult(x, a)
        cyc_set = set(cyc)
        # quotient by <a>: merge cosets
        rep_of = {}
        for e in element_set:
            block = frozenset(quotient_mult(e, c) for c in cyc_set)
            rep_of[e] = min(block)
        reps = sorted(set(rep_of.values()))
        idx = {r: i for i, r in enumerate(reps)}

        def qmult(i, j):
            return idx[rep_of[quotient_mult(reps[i], reps[j])]]

        def qorder(i):
            o, x = 1, i
            while x != 0:
                x = qmult(x, i)
                o += 1
            return o

        sub = basis_of(list(range(len(reps))), qmult, qorder)
        out = [(a, d)]
        for (bq, e) in sub:
            b = reps[bq]
            for c in cyc:
                cand = quotient_mult(b, c)
                if quotient_order_of(cand) == e:
                    out.append((cand, e))
                    break
            else:
                raise AssertionError("no order-preserving lift found")
        return out

    basis = basis_of(list(range(n)), lambda i, j: mult[i][j], order_of)
    basis.sort(key=lambda t: -t[1])
    # enumerate exponent tuples and verify the decomposition is bijective
    exps: dict[int, tuple[int, ...]] = {}
    ranges = [range(d) for _, d in basis]
    import itertools

    for tup in itertools.product(*ranges) if basis else [()]:
        x = 0
        for (g, _), e in zip(basis, tup):
            x = mult[x][power(g, e)]
        assert x not in exps, "cyclic decomposition is not direct"
        exps[x] = tup
    assert len(exps) == n, "cyclic decomposition does not span"
    return tr, exps, basis


def linear_characters(H: PermGroup) -> list[LinearCharacter]:
    """All |H/H'| linear characters, trivial character first, in a
    deterministic order."""
    tr, coset_exps, basis = _abelianization_basis(H)
    orders = [d for _, d in basis]
    L = 1
    for d in orders:
        L = L * d // math.gcd(L, d)
    elem_exps = [coset_exps[tr.coset_index(h)] for h in H.elements]
    import itertools

    chars = []
    for ktup in itertools.product(*[range(d) for d in orders]) if orders else [()]:
        values = []
        for etup in elem_exps:
            exp = sum(k * e * (L // d) for k, e, d in zip(ktup, etup, orders)) % L if orders else 0
            values.append(CyclotomicNumber.zeta(L, exp) if L > 1 else CyclotomicNumber.one())
        chars.append(LinearCharacter(H, values, ktup))
    chars.sort(key=lambda c: c.exponents)
    return chars


class GroupCharacterTable:
    """Exact character table of a finite group over Q(zeta_exp(G))."""

    def __init__(self, group: PermGroup, classes, rows):
        self.group = group
        self.classes = classes  # list of (rep, members)
        self.rows = [tuple(r) for r in rows]
        self.degrees = [r[0].as_rational() for r in self.rows]
        assert all(d.denominator == 1 for d in self.degrees)
        self.degrees = [int(d) for d in self.degrees]
        self._class_of = {}
        for i, (_, members) in enumerate(classes):
            for m in members:
                self._class_of[m.images] = i

    @property
    def class_sizes(self) -> list[int]:
        return [len(m) for _, m in self.classes]

    def class_index(self, g: Permutation) -> int:
        return self._class_of[g.images]

    def inverse_class(self, i: int) -> int:
        return self._class_of[self.classes[i][0].inverse().images]

    def value(self, row: int, g: Permutation) -> CyclotomicNumber:
        return self.rows[row][self.class_index(g)]

    def verify_orthogonality(self) -> None:
        n = self.group.order
        sizes = self.class_sizes
        r = len(self.rows)
        for i in range(r):
            for j in range(i, r):
                s = CyclotomicNumber.zero()
                for c in range(len(self.classes)):
                    s = s + sizes[c] * self.rows[i][c] * self.rows[j][c].conjugate()
                expected = n if i == j else 0
                if s != expected:
                    raise OrthogonalityFailure(f"row orthogonality fails at ({i},{j})")
        if sum(d * d for d in self.degrees) != n:
            raise OrthogonalityFailure("degree sum does not match the group order")

    def __repr__(self) -> str:
        return f"GroupCharacterTable({len(self.rows)} irreducibles, group order {self.group.order})"


def _sorted_classes(G: PermGroup):
    """Identity class first, then ascending element order, class size,
    lexicographic representative."""
    cls = conjugacy_classes(G)
    return sorted(cls, key=lambda t: (t[0].order() != 1, t[0].order(), len(t[1]), t[0].images))


def _dixon_prime(exponent: int, order: int) -> int:
    p = exponent + 1
    while True:
        if p > 2 * math.isqrt(order) + 1 and (p - 1) % exponent == 0 and order % p != 0:
            if all(p % q for q in range(2, math.isqrt(p) + 1)):
                return p
        p += 1


def _primitive_root(p: int) -> int:
    fact = []
    m = p - 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            fact.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fact.append(m)
    for w in range(2, p):
        if all(pow(w, (p - 1) // q, p) != 1 for q in fact):
            return w
    raise AssertionError("no primitive root found")


def _charpoly_mod(B: np.ndarray, p: int) -> list[int]:
    """Faddeev-LeVerrier characteristic polynomial coefficients mod p,
    returned ascending: det(xI - B)."""
    r = B.shape[0]
    coeffs = [0] * (r + 1)
    coeffs[r] = 1
    M = np.zeros_like(B)
    I = np.eye(r, dtype=B.dtype)
    c = 1
    for k in range(1, r + 1):
        M = (B @ M + c * I) % p
        c = (-int(np.trace((B @ M) % p)) * pow(k, p - 2, p)) % p
        coeffs[r - k] = c
    return coeffs


def _nullspace_mod(A: np.ndarray, p: int) -> list[np.ndarray]:
    A = A.copy() % p
    rows, cols = A.shape
    pivots = {}
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if A[i, c] % p:
                pr = i
                break
        if pr is None:
            continue
        A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        pivots[c] = r
        r += 1
    basis = []
    free = [c for c in range(cols) if c not in pivots]
    for fc in free:
        v = np.zeros(cols, dtype=A.dtype)
        v[fc] = 1
        for c, pr in pivots.items():
            v[c] = (-A[pr, fc]) % p
        basis.append(v % p)
    return basis


def character_table_dixon(G: PermGroup, seed: int = 0) -> GroupCharacterTable:
    """Exact character table via modular class-matrix diagonalization.

    Internal randomness (the splitting combination) is drawn from ``seed``;
    rows are canonically re-sorted, so output is reproducible regardless.
    """
    if G.order > 10_000:
        raise ValueError("group too large for the character-table bound")
    classes = _sorted_classes(G)
    r = len(classes)
    exponent = G.exponent()
    p = _dixon_prime(exponent, G.order)
    class_of = {}
    for i, (_, members) in enumerate(classes):
        for m in members:
            class_of[m.images] = i
    reps = [rep for rep, _ in classes]
    sizes = [len(members) for _, members in classes]
    inv_class = [class_of[rep.inverse().images] for rep in reps]

    # class-matrix structure constants: C_i C_j = sum_k a[i][j][k] C_k
    A = np.zeros((r, r, r), dtype=np.int64)
    for i, (_, members) in enumerate(classes):
        for k, zk in enumerate(reps):
            for x in members:
                j = class_of[(x.inverse() * zk).images]
                A[i][j][k] += 1

    rng = random.Random(seed)
    for _ in range(64):
        c = [rng.randrange(p) for _ in range(r)]
        B = sum(ci * A[i] for i, ci in enumerate(c)) % p
        cp = _charpoly_mod(B.astype(np.int64), p)
        roots = [lam for lam in range(p)
                 if sum(co * pow(lam, k, p) for k, co in enumerate(cp)) % p == 0]
        if len(roots) < r:
            continue
        spaces = []
        ok = True
        for lam in roots:
            ns = _nullspace_mod(B - lam * np.eye(r, dtype=np.int64), p)
            if len(ns) != 1:
                ok = False
                break
            spaces.append(ns[0])
        if ok and len(spaces) == r:
            break
    else:
        raise AssertionError("failed to split class-matrix eigenspaces")

    omegas = []
    for v in spaces:
        if v[0] % p == 0:
            raise AssertionError("eigenvector vanishes on the identity class")
        inv = pow(int(v[0]), p - 2, p)
        omegas.append([(int(x) * inv) % p for x in v])

    n = G.order
    chars_mod_p = []
    degrees = []
    for om in omegas:
        t = 0
        for j in range(r):
            t = (t + om[j] * om[inv_class[j]] * pow(sizes[j], p - 2, p)) % p
        d2 = (n * pow(t, p - 2, p)) % p
        d = next(dd for dd in range(1, math.isqrt(n) + 1) if (dd * dd - d2) % p == 0)
        degrees.append(d)
        row = [(d * om[j] * pow(sizes[j], p - 2, p)) % p for j in range(r)]
        chars_mod_p.append(row)
    assert sum(d * d for d in degrees) == n, "degree equation fails"

    # lift to exact cyclotomic values via discrete Fourier inversion mod p
    w = _primitive_root(p)
    power_class = []
    for rep in reps:
        o = rep.order()
        power_class.append([class_of[(rep ** s).images] for s in range(o)])
    rows = []
    for row_mod, d in zip(chars_mod_p, degrees):
        row = []
        for j, rep in enumerate(reps):
            o = rep.order()
            z = pow(w, (p - 1) // o, p)
            zinv = pow(z, p - 2, p)
            oinv = pow(o, p - 2, p)
            coeffs = {}
            total = 0
            for l in range(o):
                m_l = 0
                for s in range(o):
                    m_l = (m_l + row_mod[power_class[j][s]] * pow(zinv, l * s, p)) % p
                m_l = (m_l * oinv) % p
                total += m_l
                if m_l:
                    coeffs[l] = Rat(m_l)
            assert total == d, "multiplicity lift inconsistent"
            row.append(CyclotomicNumber(o, coeffs) if coeffs else CyclotomicNumber.zero())
        rows.append(row)

    rows.sort(key=lambda row: (int(row[0].as_rational()), [_cyc_sort_key(v) for v in row]))
    table = GroupCharacterTable(G, classes, rows)
    table.verify_orthogonality()
    return table


def _group_hash(G: PermGroup) -> str:
    blob = json.dumps(sorted(g.one_line() for g in G.elements)).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def character_table_export(table: GroupCharacterTable) -> dict:
    return {
        "group_hash": _group_hash(table.group),
        "classes": [{"rep": rep.one_line(), "size": len(members)}
                    for rep, members in table.classes],
        "rows": [[v.to_json() for v in row] for row in table.rows],
    }


def character_table_import(data: dict, G: PermGroup) -> GroupCharacterTable:
    """Accept a character-table file only after exact orthogonality checks."""
    try:
        class_entries = data["classes"]
        row_entries = data["rows"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad character table file: {exc}") from exc
    if data.get("group_hash") not in (None, _group_hash(G)):
        raise SchemaError("character table belongs to a different group")
    known = {rep.images: members for rep, members in conjugacy_classes(G)}
    classes = []
    for entry in class_entries:
        rep = Permutation.from_one_line(entry["rep"])
        if not G.contains(rep):
            raise SchemaError("class representative not in the group")
        members = next((m for im, m in known.items() if rep.images in {x.images for x in m}), None)
        if members is None or len(members) != entry["size"]:
            raise SchemaError("class size mismatch")
        classes.append((rep, members))
    if len(classes) != len(known):
        raise SchemaError("class count mismatch")
    rows = [[CyclotomicNumber.from_json(v) for v in row] for row in row_entries]
    table = GroupCharacterTable(G, classes, rows)
    table.verify_orthogonality()
    return table


def induced_character_and_constituents(chi: LinearCharacter, G: PermGroup,
                                       table: GroupCharacterTable):
    """Induce a linear character of H to G and decompose it.

    Returns (values per class of ``table``, [(row index, multiplicity)...],
    multiplicity_free flag).
    """
    H = chi.domain
    if not H.is_subgroup_of(G):
        from .errors import NotASubgroup

        raise NotASubgroup("character domain is not a subgroup of G")
    hsize = Fraction(H.order)
    induced = []
    for rep, _ in table.classes:
        total = CyclotomicNumber.zero()
        for x in G.elements:
            y = x * rep * x.inverse()
            if H.contains(y):
                total = total + chi(y)
        induced.append(total * Rat(1, H.order))
    n = G.order
    constituents = []
    for i, row in enumerate(table.rows):
        s = CyclotomicNumber.zero()
        for c, (_, members) in enumerate(table.classes):
            s = s + len(members) * induced[c] * row[c].conjugate()
        mult = s * Rat(1, n)
        q = mult.as_rational()
        assert q.denominator == 1 and q >= 0, "inner product is not a nonnegative integer"
        if q:
            constituents.append((i, int(q)))
    multiplicity_free = all(m == 1 for _, m in constituents)
    return induced, constituents, multiplicity_free
