"""Matrix assembly, the complex Hadamard criterion, group-developed and
cocyclic development with the regular-representation machinery, reference
constructions (Paley I, Sylvester), and monomial equivalence testing."""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

from .cyclo import (ComplexBall, CyclotomicNumber, NumberFieldElement, ONE,
                    ZERO, legendre_symbol)
from .errors import (InvalidCocycle, NotConstantRowSum, PrecisionInsufficient,
                     UnsupportedFieldSize)
from .extension import Cocycle, CentralExtension, _mult_table
from .induce import CentraliserBasis, MonomialMatrix
from .perm import PermGroup, Permutation


class DenseMatrix:
    """Square matrix over exact cyclotomic / extension values or complex
    balls, uniformly per matrix."""

    __slots__ = ("size", "entries", "kind")

    def __init__(self, entries):
        self.size = len(entries)
        self.entries = [list(row) for row in entries]
        for row in self.entries:
            if len(row) != self.size:
                raise ValueError("matrix must be square")
        first = self.entries[0][0] if self.size else None
        if isinstance(first, ComplexBall):
            self.kind = "ball"
        elif isinstance(first, NumberFieldElement):
            self.kind = "algebraic"
        else:
            self.kind = "exact"

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __mul__(self, other: DenseMatrix) -> DenseMatrix:
        n = self.size
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = None
                for k in range(n):
                    t = self.entries[i][k] * other.entries[k][j]
                    acc = t if acc is None else acc + t
                row.append(acc)
            out.append(row)
        return DenseMatrix(out)

    def conjugate_transpose(self) -> DenseMatrix:
        n = self.size
        return DenseMatrix([[_conj(self.entries[j][i]) for j in range(n)]
                            for i in range(n)])

    def transpose(self) -> DenseMatrix:
        n = self.size
        return DenseMatrix([[self.entries[j][i] for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, DenseMatrix) and self.size == other.size
                and all(self.entries[i][j] == other.entries[i][j]
                        for i in range(self.size) for j in range(self.size)))

    def scale(self, c) -> DenseMatrix:
        return DenseMatrix([[c * v for v in row] for row in self.entries])

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        return DenseMatrix([[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        return DenseMatrix([[a - b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def is_scalar(self, value) -> bool:
        for i in range(self.size):
            for j in range(self.size):
                want = value if i == j else 0
                if self.entries[i][j] != want:
                    return False
        return True

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, ComplexBall):
                return {"ball": [float(v.mid.real), float(v.mid.imag), float(v.rad)]}
            return v.to_json()

        return {"size": self.size,
                "entries": [[enc(v) for v in row] for row in self.entries]}

    def pretty(self) -> str:
        def s(v):
            if isinstance(v, CyclotomicNumber):
                if v.is_rational():
                    return str(v.as_rational())
                return repr(v)
            if isinstance(v, ComplexBall):
                return mpmath.nstr(v.mid, 6)
            return repr(v)

        cells = [[s(v) for v in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    def __repr__(self) -> str:
        return f"DenseMatrix({self.size} x {self.size}, {self.kind})"


def _conj(v):
    if isinstance(v, (CyclotomicNumber, ComplexBall)):
        return v.conjugate()
    if isinstance(v, NumberFieldElement):
        raise ValueError("conjugation of extension entries is numeric; embed first")
    return v


def assemble(basis: CentraliserBasis, alpha) -> DenseMatrix:
    """The linear combination sum_i alpha_i M_i over the orbital basis."""
    if len(alpha) != basis.rank:
        raise ValueError(f"need {basis.rank} coefficients")
    n = basis.degree
    numeric = any(isinstance(a, ComplexBall) for a in alpha)
    if numeric:
        prec = max(a.prec for a in alpha if isinstance(a, ComplexBall))
        zero = ComplexBall(0, 0, prec)
        out = [[zero for _ in range(n)] for _ in range(n)]
        coeffs = [a if isinstance(a, ComplexBall) else a.embed(prec) for a in alpha]
        for a, mat in zip(coeffs, basis.matrices):
            for (i, j), v in mat.entries.items():
                out[i][j] = out[i][j] + a * v.embed(prec)
        return DenseMatrix(out)
    out = [[ZERO for _ in range(n)] for _ in range(n)]
    for a, mat in zip(alpha, basis.matrices):
        for (i, j), v in mat.entries.items():
            out[i][j] = out[i][j] + a * v
    return DenseMatrix(out)


def is_complex_hadamard(M: DenseMatrix, bits: int = 128) -> bool:
    """Exact route for exact entries: unit entries and M M* = n I. Ball
    route for numeric entries: certified within the ball radii, escalating
    precision before giving up."""
    n = M.size
    if M.kind == "exact":
        for row in M.entries:
            for v in row:
                if not (v * v.conjugate() == 1):
                    return False
        return (M * M.conjugate_transpose()).is_scalar(n)
    balls = _as_ball_matrix(M, bits)
    for attempt in range(4):
        ok = _ball_hadamard_check(balls, n)
        if ok is not None:
            return ok
        bits *= 2
        balls = _as_ball_matrix(M, bits)
    raise PrecisionInsufficient("cannot certify the Hadamard property at this precision")


def _as_ball_matrix(M: DenseMatrix, bits: int):
    out = []
    for row in M.entries:
        r = []
        for v in row:
            r.append(v if isinstance(v, ComplexBall) else v.embed(bits))
        out.append(r)
    return out


def _ball_hadamard_check(balls, n):
    """True/False when certified either way, None when inconclusive."""
    for row in balls:
        for b in row:
            d = b.abs_squared() - 1
            if d.is_nonzero():
                return False
            if d.rad > mpmath.mpf(2) ** (-(b.prec // 2)):
                return None
    for i in range(n):
        for j in range(n):
            acc = None
            for k in range(n):
                t = balls[i][k] * balls[j][k].conjugate()
                acc = t if acc is None else acc + t
            target = n if i == j else 0
            d = acc - target
            if d.is_nonzero():
                return False
            if d.rad > mpmath.mpf(2) ** (-(balls[0][0].prec // 2)):
                return None
    return True


# -- regular representations and development -----------------------------------


def regular_reps(G: PermGroup):
    """(R, L, N) for the right and left regular representations in the
    group's canonical element order: R(g) = [d(y = xg)], L(g) = [d(y = g^-1 x)],
    N = [d(x = y^-1)]."""
    n = G.order
    idx = G.index_of

    def R(g: Permutation) -> MonomialMatrix:
        images = [idx(x * g) for x in G.elements]
        return MonomialMatrix(Permutation(images), [ONE] * n)

    def L(g: Permutation) -> MonomialMatrix:
        gi = g.inverse()
        images = [idx(gi * x) for x in G.elements]
        return MonomialMatrix(Permutation(images), [ONE] * n)

    images = [idx(x.inverse()) for x in G.elements]
    N = MonomialMatrix(Permutation(images), [ONE] * n)
    return R, L, N


def group_developed(G: PermGroup, f) -> DenseMatrix:
    """M = [f(xy)] over the canonical element order; f maps group elements
    (or element indices) to unit entries."""
    n = G.order
    values = _as_value_list(G, f)
    idx = G.index_of
    return DenseMatrix([[values[idx(x * y)] for y in G.elements] for x in G.elements])


def _as_value_list(G: PermGroup, f) -> list:
    if callable(f):
        return [f(g) for g in G.elements]
    values = list(f)
    if len(values) != G.order:
        raise ValueError("need one value per group element")
    return values


def is_strictly_group_developed(M: DenseMatrix, G: PermGroup) -> bool:
    """Does M[x][y] depend only on the product xy?"""
    idx = G.index_of
    f = [None] * G.order
    for i, x in enumerate(G.elements):
        for j, y in enumerate(G.elements):
            k = idx(x * y)
            if f[k] is None:
                f[k] = M.entries[i][j]
            elif f[k] != M.entries[i][j]:
                return False
    return True


def extension_reps(ext: CentralExtension):
    """(R, L, N) for a central extension (G, Z_m, psi): R(a,g) and L(a,g)
    act monomially on the G-indexed coordinates with cocycle phases, and
    N = [psi(x, x^-1) d(y = x^-1)]."""
    G = ext.base
    m = ext.modulus
    t = ext.cocycle.table
    n = G.order
    idx = G.index_of
    inv_idx = [idx(x.inverse()) for x in G.elements]

    def unit(e: int) -> CyclotomicNumber:
        return CyclotomicNumber.zeta(m, e)

    def R(a: int, g: Permutation) -> MonomialMatrix:
        gi = idx(g)
        images = []
        units = []
        for x in range(n):
            images.append(idx(G.elements[x] * g))
            units.append(unit((a + int(t[x, gi])) % m))
        return MonomialMatrix(Permutation(images), units)

    def L(a: int, g: Permutation) -> MonomialMatrix:
        gi = idx(g)
        ginv = g.inverse()
        images = []
        units = []
        for x in range(n):
            y = idx(ginv * G.elements[x])
            images.append(y)
            units.append(unit((a + int(t[gi, y])) % m))
        return MonomialMatrix(Permutation(images), units)

    images = [inv_idx[x] for x in range(n)]
    units = [unit(int(t[x, inv_idx[x]]) % m) for x in range(n)]
    N = MonomialMatrix(Permutation(images), units)
    return R, L, N


def cocyclic_matrix(ext: CentralExtension, phi) -> DenseMatrix:
    """M = [psi(x, y) phi(xy)] over the base group's canonical order."""
    G = ext.base
    m = ext.modulus
    t = ext.cocycle.table
    values = _as_value_list(G, phi)
    idx = G.index_of
    mult = _mult_table(G)
    n = G.order
    return DenseMatrix([[CyclotomicNumber.zeta(m, int(t[i, j])) * values[mult[i, j]]
                         for j in range(n)] for i in range(n)])


def is_strictly_cocyclic(M: DenseMatrix, ext: CentralExtension) -> bool:
    """Does M[x][y] = psi(x,y) f(xy) hold for f(g) := M[g][1]?"""
    G = ext.base
    m = ext.modulus
    t = ext.cocycle.table
    mult = _mult_table(G)
    n = G.order
    f = [M.entries[g][0] for g in range(n)]  # psi(g, 1) = 1
    for i in range(n):
        for j in range(n):
            if M.entries[i][j] != CyclotomicNumber.zeta(m, int(t[i, j])) * f[mult[i, j]]:
                return False
    return True


def _mono_dense_mul(A: MonomialMatrix, M: DenseMatrix) -> DenseMatrix:
    # (A M)[i][j] = u_i M[s(i)][j]
    n = M.size
    s, u = A.perm, A.units
    return DenseMatrix([[u[i] * M.entries[s(i)][j] for j in range(n)] for i in range(n)])


def _dense_mono_mul(M: DenseMatrix, A: MonomialMatrix) -> DenseMatrix:
    # (M A)[i][j] = M[i][s^-1(j)] u_{s^-1(j)}
    n = M.size
    si = A.perm.inverse()
    u = A.units
    return DenseMatrix([[M.entries[i][si(j)] * u[si(j)] for j in range(n)]
                        for i in range(n)])


def development_roundtrip_checks(G: PermGroup, rng, samples: int = 10,
                                 ext: CentralExtension | None = None) -> list[str]:
    """Both directions of the development correspondences on random
    instances; returns a list of counterexample descriptions (must be empty).

    Group case: M strictly developed iff M N lies in C(R) (checked both
    ways). Extension case: M strictly cocyclic iff R(a,g) M L(a,g)* = M for
    all elements, and then M N* lies in C(R); conversely random members of
    C(R) pull back to strictly cocyclic matrices as (M N)."""
    failures = []
    n = G.order
    roots = [CyclotomicNumber.zeta(8, k) for k in range(8)]
    if ext is None:
        R, L, N = regular_reps(G)
        rgens = [R(g) for g in (G.generators or [G.identity()])]
        for trial in range(samples):
            f = [roots[rng.randrange(8)] for _ in range(n)]
            M = group_developed(G, f)
            MN = _dense_mono_mul(M, N)
            if not all(_commutes(MN, rg) for rg in rgens):
                failures.append(f"developed matrix failed membership (trial {trial})")
        for trial in range(samples):
            coeffs = [roots[rng.randrange(8)] for _ in range(n)]
            M = _regular_centraliser_member(G, coeffs)
            MN = _dense_mono_mul(M, N)
            if not is_strictly_group_developed(MN, G):
                failures.append(f"centraliser member failed development (trial {trial})")
        return failures

    R, L, N = extension_reps(ext)
    elements = [(a, g) for a in range(ext.modulus) for g in G.elements]
    rgens = [R(1, G.identity())] + [R(0, g) for g in (G.generators or [G.identity()])]
    Nstar = N.conjugate_transpose()
    for trial in range(samples):
        phi = [roots[rng.randrange(8)] for _ in range(n)]
        M = cocyclic_matrix(ext, phi)
        for a, g in elements:
            left = _mono_dense_mul(R(a, g), M)
            if _dense_mono_mul(left, L(a, g).conjugate_transpose()) != M:
                failures.append(f"R M L* identity failed at trial {trial}")
                break
        MNs = _dense_mono_mul(M, Nstar)
        if not all(_commutes(MNs, rg) for rg in rgens):
            failures.append(f"cocyclic matrix failed membership (trial {trial})")
    for trial in range(samples):
        coeffs = [roots[rng.randrange(8)] for _ in range(n * ext.modulus)]
        M = _extension_centraliser_member(ext, R, coeffs, rng)
        MN = _dense_mono_mul(M, N)
        if not is_strictly_cocyclic(MN, ext):
            failures.append(f"extension centraliser member failed development (trial {trial})")
    return failures


def _commutes(M: DenseMatrix, A: MonomialMatrix) -> bool:
    return _mono_dense_mul(A, M) == _dense_mono_mul(M, A)


def _regular_centraliser_member(G: PermGroup, coeffs) -> DenseMatrix:
    """sum_h c_h L(h): left multiplications commute with the right regular
    representation and span its centraliser."""
    n = G.order
    idx = G.index_of
    out = [[ZERO] * n for _ in range(n)]
    for c, h in zip(coeffs, G.elements):
        hi = h.inverse()
        for x in range(n):
            y = idx(hi * G.elements[x])
            out[x][y] = out[x][y] + c
    return DenseMatrix(out)


def _extension_centraliser_member(ext: CentralExtension, R, coeffs, rng) -> DenseMatrix:
    """sum_h c_h L(0, h): the cocycle identity makes every L(b, h) commute
    with every R(a, g), and the L(0, h) span the centraliser of R."""
    G = ext.base
    _, L, _ = extension_reps(ext)
    n = G.order
    out = [[ZERO] * n for _ in range(n)]
    for c, g in zip(coeffs, G.elements):
        mat = L(0, g)
        s, u = mat.perm, mat.units
        for i in range(n):
            out[i][s(i)] = out[i][s(i)] + c * u[i]
    return DenseMatrix(out)


# -- reference constructions -----------------------------------------------------


def paley_I(q: int) -> DenseMatrix:
    """The (q+1) x (q+1) Paley I Hadamard matrix with the bordered block
    form over F_q; q must be a prime congruent to 3 mod 4."""
    if q < 3 or any(q % d == 0 for d in range(2, int(math.isqrt(q)) + 1)):
        raise UnsupportedFieldSize("prime fields only")
    if q % 4 != 3:
        raise UnsupportedFieldSize("Paley I requires q = 3 mod 4")
    minus = -ONE
    n = q + 1
    out = [[ZERO] * n for _ in range(n)]
    out[0][0] = ONE
    for j in range(q):
        out[0][j + 1] = ONE
        out[j + 1][0] = minus
    for i in range(q):
        for j in range(q):
            if i == j:
                out[i + 1][j + 1] = ONE
            else:
                out[i + 1][j + 1] = CyclotomicNumber.from_rational(
                    legendre_symbol(i - j, q))
    return DenseMatrix(out)


def sylvester(k: int) -> DenseMatrix:
    """The 2^k x 2^k Sylvester matrix [(-1)^(x . y)] over F_2 vectors."""
    if k < 1:
        raise ValueError("k must be at least 1")
    n = 2 ** k
    out = []
    for x in range(n):
        row = []
        for y in range(n):
            dot = bin(x & y).count("1") & 1
            row.append(-ONE if dot else ONE)
        out.append(row)
    return DenseMatrix(out)


def row_sum_square_check(M: DenseMatrix) -> int:
    """Extract the constant row/column sum s and confirm n = s^2."""
    n = M.size
    sums = []
    for row in M.entries:
        total = ZERO
        for v in row:
            total = total + v
        sums.append(total)
    if any(s != sums[0] for s in sums):
        raise NotConstantRowSum("row sums are not constant")
    for j in range(n):
        total = ZERO
        for i in range(n):
            total = total + M.entries[i][j]
        if total != sums[0]:
            raise NotConstantRowSum("column sums differ from row sums")
    s = sums[0]
    if not (s * s == n):
        raise NotConstantRowSum(f"row sum squared does not equal the size {n}")
    return int(s.as_rational())


# -- monomial equivalence ---------------------------------------------------------


def monomially_equivalent(A: DenseMatrix, B: DenseMatrix) -> bool:
    """Is B = P A Q* for monomial P, Q? Exact entries only.

    Backtracking over the row bijection with unit-scale propagation through
    the support graph; support profiles prune the search."""
    if A.size != B.size:
        return False
    n = A.size
    a_sup = [[not _is_zero(v) for v in row] for row in A.entries]
    b_sup = [[not _is_zero(v) for v in row] for row in B.entries]
    a_rows = [sum(r) for r in a_sup]
    b_rows = [sum(r) for r in b_sup]
    a_cols = [sum(a_sup[i][j] for i in range(n)) for j in range(n)]
    b_cols = [sum(b_sup[i][j] for i in range(n)) for j in range(n)]
    if sorted(a_rows) != sorted(b_rows) or sorted(a_cols) != sorted(b_cols):
        return False

    # state: row_map[i] = image row in B, col_map, row scale p (B = P A Q*):
    # B[row_map[i]][col_map[j]] = p_i * A[i][j] * qbar_j
    row_map = [None] * n
    col_map = [None] * n
    row_used = [False] * n
    col_used = [False] * n
    p_scale: list = [None] * n
    q_scale: list = [None] * n

    def try_assign_col(j, jj, scale) -> list | None:
        """Map column j -> jj with qbar_j = scale; verify all edges between
        mapped rows and this column. Returns None on conflict."""
        for i in range(n):
            if row_map[i] is None:
                continue
            av = A.entries[i][j]
            bv = B.entries[row_map[i]][jj]
            if _is_zero(av) != _is_zero(bv):
                return None
            if not _is_zero(av):
                if bv != p_scale[i] * av * scale:
                    return None
        return [j, jj, scale]

    col_profile_a = [tuple(sorted(a_sup[x][j] for x in range(n))) for j in range(n)]
    col_profile_b = [tuple(sorted(b_sup[x][j] for x in range(n))) for j in range(n)]

    def verify_row(i: int, r: int) -> bool:
        for j in range(n):
            jj = col_map[j]
            if jj is None:
                continue
            av, bv = A.entries[i][j], B.entries[r][jj]
            if _is_zero(av) != _is_zero(bv):
                return False
            if not _is_zero(av) and bv != p_scale[i] * av * q_scale[j]:
                return False
        return True

    def assign_cols(i: int, r: int, cols: list, k: int) -> bool:
        if k == len(cols):
            return extend(i + 1)
        j = cols[k]
        for jj in range(n):
            if col_used[jj] or not b_sup[r][jj]:
                continue
            if col_profile_a[j] != col_profile_b[jj]:
                continue
            scale = B.entries[r][jj] / (p_scale[i] * A.entries[i][j])
            if try_assign_col(j, jj, scale) is None:
                continue
            col_map[j] = jj
            col_used[jj] = True
            q_scale[j] = scale
            if assign_cols(i, r, cols, k + 1):
                return True
            col_used[jj] = False
            col_map[j] = None
            q_scale[j] = None
        return False

    def extend(i: int) -> bool:
        if i == n:
            return True
        for r in range(n):
            if row_used[r] or b_rows[r] != a_rows[i]:
                continue
            if any(col_map[j] is not None and a_sup[i][j] != b_sup[r][col_map[j]]
                   for j in range(n)):
                continue
            anchor = next((j for j in range(n)
                           if col_map[j] is not None and a_sup[i][j]), None)
            row_map[i] = r
            row_used[r] = True
            if anchor is None:
                p_scale[i] = ONE  # gauge freedom within each component
            else:
                p_scale[i] = (B.entries[r][col_map[anchor]]
                              / (A.entries[i][anchor] * q_scale[anchor]))
            if verify_row(i, r):
                cols = [j for j in range(n) if a_sup[i][j] and col_map[j] is None]
                if assign_cols(i, r, cols, 0):
                    return True
            row_map[i] = None
            row_used[r] = False
            p_scale[i] = None
        return False

    return extend(0)


def _is_zero(v) -> bool:
    if isinstance(v, CyclotomicNumber):
        return v.is_zero()
    return v == 0
