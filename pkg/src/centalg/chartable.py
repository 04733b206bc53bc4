"""Character table of a commutative centraliser algebra.

The exact route evaluates the double-coset character-sum formula
CT = (1/|H|) * M_{G,H} * L^T * diag(k_1..k_r); the numeric route
simultaneously diagonalizes the basis through a random real combination and
certifies eigenvalue balls. The two routes cross-validate each other.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import mpmath

from .cyclo import ComplexBall, CyclotomicNumber, Rat, ZERO
from .errors import (EigenvalueCollision, MissingConstituentRows, NotCommutative,
                     PrecisionInsufficient)
from .induce import CentraliserBasis, MonomialRep, _sparse_product
from .perm import DoubleCosetDecomposition, PermGroup
from .structure import (GroupCharacterTable, LinearCharacter, _cyc_sort_key,
                        induced_character_and_constituents)


class AlgebraCharacterTable:
    """r x r table of basis-matrix eigenvalues on the common eigenspaces."""

    def __init__(self, basis: CentraliserBasis, rows, row_multiplicities,
                 exact: bool, field_order: int | None = None,
                 constituent_rows=None):
        self.basis = basis
        self.rows = [tuple(r) for r in rows]
        self.row_multiplicities = list(row_multiplicities)
        self.exact = exact
        self.field_order = field_order
        self.constituent_rows = constituent_rows

    @property
    def rank(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def verify_identities(self) -> None:
        """Trace and Frobenius product identities against the basis matrices,
        exact; also first-column normalization and invertibility."""
        if not self.exact:
            raise ValueError("identity verification is for exact tables")
        r = self.rank
        n = self.basis.degree
        mats = self.basis.matrices
        for i in range(r):
            assert self.rows[i][0] == 1, "identity-orbital column must be all ones"
        for j in range(r):
            total = ZERO
            for i in range(r):
                total = total + self.row_multiplicities[i] * self.rows[i][j]
            trace = sum((v for (a, b), v in mats[j].entries.items() if a == b), ZERO)
            assert total == trace, "trace identity fails"
            assert trace == (n if j == 0 else 0)
        for j in range(r):
            for k in range(r):
                mk_star = {(b, a): v.conjugate() for (a, b), v in mats[k].entries.items()}
                prod = _sparse_product_dicts(mats[j].entries, mk_star)
                c1 = prod.get((0, 0), ZERO)
                lhs = ZERO
                for i in range(r):
                    lhs = lhs + self.row_multiplicities[i] * self.rows[i][j] * self.rows[i][k].conjugate()
                assert lhs == n * c1, "Frobenius product identity fails"
        assert _exact_det_nonzero([list(row) for row in self.rows]), "table is singular"

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, CyclotomicNumber):
                return v.to_json()
            return {"ball": [float(v.mid.real), float(v.mid.imag), float(v.rad)]}

        return {
            "rank": self.rank,
            "exact": self.exact,
            "field_order": self.field_order,
            "row_multiplicities": self.row_multiplicities,
            "rows": [[enc(v) for v in row] for row in self.rows],
        }


def _sparse_product_dicts(A: dict, B: dict) -> dict:
    brows: dict[int, list] = {}
    for (i, j), v in B.items():
        brows.setdefault(i, []).append((j, v))
    out: dict[tuple[int, int], CyclotomicNumber] = {}
    for (i, j), u in A.items():
        for k, v in brows.get(j, ()):
            s = out.get((i, k), ZERO) + u * v
            if s.is_zero():
                out.pop((i, k), None)
            else:
                out[(i, k)] = s
    return out


def _exact_det_nonzero(rows) -> bool:
    n = len(rows)
    rows = [list(r) for r in rows]
    for c in range(n):
        piv = next((i for i in range(c, n) if not rows[i][c].is_zero()), None)
        if piv is None:
            return False
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = rows[c][c].inverse()
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return True


def l_matrix(G: PermGroup, H: PermGroup, chi: LinearCharacter,
             table: GroupCharacterTable,
             decomposition: DoubleCosetDecomposition | None = None):
    """Rows indexed by double-coset representatives, columns by conjugacy
    classes: l(t_i, C) = sum over h in H of [h t_i in C] * chi(h^-1)."""
    if decomposition is None:
        decomposition = DoubleCosetDecomposition(G, H)
    out = []
    for t in decomposition.reps:
        row = [ZERO] * len(table.classes)
        for h in H.elements:
            c = table.class_index(h * t)
            row[c] = row[c] + chi(h.inverse())
        out.append(row)
    return out


def minimal_field_order(values) -> int:
    d = 1
    for v in values:
        m = v.minimal_order()
        d = d * m // math.gcd(d, m)
    return d


def ct_exact(basis: CentraliserBasis, table: GroupCharacterTable,
             decomposition: DoubleCosetDecomposition | None = None) -> AlgebraCharacterTable:
    """Exact algebra character table via double-coset character sums."""
    if not basis.commutative:
        raise NotCommutative("character table requires a commutative centraliser algebra")
    rep = basis.rep
    if not isinstance(rep, MonomialRep):
        raise ValueError("exact route needs the inducing data (subgroup and character)")
    G, H, chi = rep.group, rep.subgroup, rep.character
    if decomposition is None:
        decomposition = DoubleCosetDecomposition(G, H, rep.transversal)
    _, constituents, mfree = induced_character_and_constituents(chi, G, table)
    if not mfree:
        raise NotCommutative("induced representation is not multiplicity-free")
    if len(constituents) != basis.rank:
        raise MissingConstituentRows(
            f"{len(constituents)} constituents vs basis rank {basis.rank}")
    L = l_matrix(G, H, chi, table, decomposition)
    rows = []
    info = []
    for row_idx, _ in constituents:
        crow = table.rows[row_idx]
        out_row = []
        for j in range(len(decomposition.reps)):
            s = ZERO
            for c in range(len(table.classes)):
                if L[j][c].is_zero() or crow[c].is_zero():
                    continue
                s = s + crow[c] * L[j][c]
            out_row.append(s * Rat(decomposition.indices[j], H.order))
        rows.append(out_row)
        degree = int(crow[table.class_index(G.identity())].as_rational())
        trivial = all(v == 1 for v in crow)
        info.append((row_idx, degree, trivial))
    order = sorted(range(len(rows)),
                   key=lambda i: (not info[i][2], info[i][1],
                                  [_cyc_sort_key(v) for v in rows[i]]))
    rows = [rows[i] for i in order]
    mults = [info[i][1] for i in order]
    crows = [info[i][0] for i in order]
    act = AlgebraCharacterTable(basis, rows, mults, exact=True,
                                field_order=minimal_field_order(
                                    [v for row in rows for v in row]),
                                constituent_rows=crows)
    act.verify_identities()
    return act


# -- numeric route -------------------------------------------------------------


def _embed_sparse(entries: dict, n: int, bits: int):
    cache: dict = {}
    out = {}
    for cell, v in entries.items():
        key = id(v)
        if key not in cache:
            cache[key] = v.embed(bits)
        out[cell] = cache[key]
    return out


def _verify_normality(basis: CentraliserBasis) -> None:
    for m in basis.matrices:
        star = {(b, a): v.conjugate() for (a, b), v in m.entries.items()}
        if _sparse_product_dicts(m.entries, star) != _sparse_product_dicts(star, m.entries):
            raise NotCommutative("basis matrix is not normal; numeric certification invalid")


def ct_numeric(basis: CentraliserBasis, bits: int = 128, seed: int = 0) -> AlgebraCharacterTable:
    """Numeric algebra character table with certified eigenvalue balls.

    A random real-rational combination K of the basis is diagonalized at
    working precision; each common eigenspace contributes one eigenvector v,
    and the eigenvalue of M_j on that eigenspace is enclosed through the
    normal-matrix residual bound |mu - lambda| <= ||M v - mu v|| / ||v||
    plus a cluster-separation term for the subspace error. All matrices are
    verified normal exactly before the bound is used.
    """
    if not basis.commutative:
        raise NotCommutative("numeric route requires a commutative algebra")
    _verify_normality(basis)
    r = basis.rank
    n = basis.degree
    rng = random.Random(seed)
    last_error = None
    for attempt in range(6):
        coeffs = [Fraction(rng.randrange(2 ** 20, 2 ** 21), 2 ** 20) for _ in range(r)]
        try:
            return _ct_numeric_once(basis, coeffs, bits)
        except EigenvalueCollision as exc:
            last_error = exc
    raise EigenvalueCollision(f"no separating combination found: {last_error}")


def _ct_numeric_once(basis: CentraliserBasis, coeffs, bits: int) -> AlgebraCharacterTable:
    r, n = basis.rank, basis.degree
    wp = bits + 64
    combo: dict[tuple[int, int], CyclotomicNumber] = {}
    for c, m in zip(coeffs, basis.matrices):
        for cell, v in m.entries.items():
            s = combo.get(cell, ZERO) + c * v
            if s.is_zero():
                combo.pop(cell, None)
            else:
                combo[cell] = s
    # exact normality of the combination: conj-transpose commutes
    star = {(b, a): v.conjugate() for (a, b), v in combo.items()}
    if _sparse_product_dicts(combo, star) != _sparse_product_dicts(star, combo):
        raise NotCommutative("combination is not normal")

    with mpmath.workprec(wp):
        K = mpmath.zeros(n, n)
        for (i, j), v in combo.items():
            K[i, j] = v.embed(wp).mid
        E, ER = mpmath.eig(K)
        # cluster eigenvalues into r groups
        order = sorted(range(n), key=lambda i: (mpmath.re(E[i]), mpmath.im(E[i])))
        clusters: list[list[int]] = [[order[0]]]
        tol = mpmath.mpf(2) ** int(-(bits // 2))
        scale = max(abs(E[i]) for i in range(n)) + 1
        for idx in order[1:]:
            if abs(E[idx] - E[clusters[-1][-1]]) < tol * scale:
                clusters[-1].append(idx)
            else:
                clusters.append([idx])
        if len(clusters) != r:
            raise EigenvalueCollision(
                f"{len(clusters)} eigenvalue clusters for rank {r}")
        gap = min(abs(E[a[0]] - E[b[0]])
                  for i, a in enumerate(clusters) for b in clusters[:i]) if r > 1 else mpmath.mpf(1)

        mats_balls = [_embed_sparse(m.entries, n, wp) for m in basis.matrices]
        norm_bounds = []
        for m in basis.matrices:
            rowsums: dict[int, ComplexBall] = {}
            best = mpmath.mpf(0)
            sums: dict[int, mpmath.mpf] = {}
            for (i, j), v in m.entries.items():
                b = v.embed(wp)
                sums[i] = sums.get(i, mpmath.mpf(0)) + abs(b.mid) + b.rad
            norm_bounds.append(max(sums.values()) if sums else mpmath.mpf(0))

        rows = []
        mults = []
        res_K_max = mpmath.mpf(0)
        for cluster in clusters:
            idx = cluster[0]
            v = [ER[i, idx] for i in range(n)]
            vnorm2 = mpmath.fsum([abs(x) ** 2 for x in v])
            vnorm = mpmath.sqrt(vnorm2)
            # residual of (K, mu, v)
            mu_K = E[idx]
            Kv = [mpmath.fsum([K[i, j] * v[j] for j in range(n)]) for i in range(n)]
            res_K = mpmath.sqrt(mpmath.fsum([abs(Kv[i] - mu_K * v[i]) ** 2 for i in range(n)])) / vnorm
            res_K_max = max(res_K_max, res_K)
            row = []
            for m_balls, nb in zip(mats_balls, norm_bounds):
                mv = [ComplexBall(0, 0, wp) for _ in range(n)]
                for (i, j), b in m_balls.items():
                    mv[i] = mv[i] + b * v[j]
                num = ComplexBall(0, 0, wp)
                for i in range(n):
                    num = num + mv[i] * mpmath.conj(v[i])
                mu = num * ComplexBall(1 / vnorm2, 0, wp)
                resid2 = mpmath.mpf(0)
                for i in range(n):
                    d = mv[i] - mu * ComplexBall(v[i], 0, wp)
                    resid2 += (abs(d.mid) + d.rad) ** 2
                resid = mpmath.sqrt(resid2) / vnorm
                subspace_err = res_K / (gap - 2 * res_K) if gap > 4 * res_K else None
                if subspace_err is None:
                    raise EigenvalueCollision("cluster gap too small to certify")
                rad = mu.rad + resid + 2 * nb * subspace_err ** 2
                row.append(ComplexBall(mu.mid, rad, bits))
            rows.append(row)
            mults.append(len(cluster))

        target = mpmath.mpf(2) ** (-(bits - 16))
        if any(b.rad > target for row in rows for b in row):
            raise PrecisionInsufficient(
                "certified radii exceed the requested tolerance; raise the bit count")

    order = sorted(range(r), key=lambda i: tuple(
        (mpmath.nstr(rows[i][j].mid.real, 20), mpmath.nstr(rows[i][j].mid.imag, 20))
        for j in range(r)))
    return AlgebraCharacterTable(basis, [rows[i] for i in order],
                                 [mults[i] for i in order], exact=False)


def cross_validate(exact: AlgebraCharacterTable, numeric: AlgebraCharacterTable,
                   bits: int = 128) -> bool:
    """Does some row permutation match every exact entry's embedding into the
    corresponding numeric ball?"""
    if exact.basis is not numeric.basis or exact.rank != numeric.rank:
        if exact.rank != numeric.rank:
            return False
    r = exact.rank
    embedded = [[v.embed(bits) for v in row] for row in exact.rows]
    used = [False] * r
    for i in range(r):
        found = None
        for j in range(r):
            if used[j]:
                continue
            if all(embedded[i][k].overlaps(numeric.rows[j][k]) for k in range(r)):
                found = j
                break
        if found is None:
            return False
        used[found] = True
        if exact.row_multiplicities[i] != numeric.row_multiplicities[found]:
            return False
    return True
