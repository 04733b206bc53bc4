"""Exact arithmetic in cyclotomic fields Q(zeta_m), simple extensions of them,
and complex ball arithmetic for the numeric tier.

Values of ``CyclotomicNumber`` are stored in the reduced power basis
1, zeta, ..., zeta^(phi(m)-1) of Q(zeta_m); the representation is canonical,
so structural equality coincides with value equality at a common order.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DivisionByZero, PrecisionInsufficient

Rat = Fraction

_BALL_GUARD_BITS = 16


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending."""
    if m < 1:
        raise ValueError("order must be positive")
    # Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact division.
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _zpoly_exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _zpoly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1] // den[-1]
        q[k] = c
        for i, dc in enumerate(den):
            num[k + i] -= c * dc
    assert all(c == 0 for c in num), "non-exact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


@lru_cache(maxsize=None)
def _reduction_rows(m: int) -> tuple[dict[int, Rat], ...]:
    """Sparse vectors of x^e mod Phi_m for 0 <= e <= max(m-1, 2*phi-2)."""
    phi = euler_phi(m)
    top = {i: -Rat(c) for i, c in enumerate(cyclotomic_polynomial(m)[:-1]) if c}
    rows: list[dict[int, Rat]] = [{e: Rat(1)} for e in range(phi)]
    limit = max(m - 1, 2 * phi - 2)
    for _ in range(phi, limit + 1):
        prev = rows[-1]
        nxt: dict[int, Rat] = {}
        for e, c in prev.items():
            if e + 1 < phi:
                nxt[e + 1] = nxt.get(e + 1, Rat(0)) + c
            else:
                for te, tc in top.items():
                    v = nxt.get(te, Rat(0)) + c * tc
                    if v:
                        nxt[te] = v
                    elif te in nxt:
                        del nxt[te]
        rows.append({e: c for e, c in nxt.items() if c})
    return tuple(rows)


def _reduce_exponents(m: int, mapping: dict[int, Rat]) -> dict[int, Rat]:
    rows = _reduction_rows(m)
    out: dict[int, Rat] = {}
    for e, c in mapping.items():
        if not c:
            continue
        for be, bc in rows[e % m if e >= len(rows) else e].items():
            v = out.get(be, Rat(0)) + c * bc
            if v:
                out[be] = v
            elif be in out:
                del out[be]
    return out


class CyclotomicNumber:
    """An exact element of Q(zeta_m), reduced to the canonical power basis."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs: dict[int, Rat | int]):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        mapping: dict[int, Rat] = {}
        for e, c in coeffs.items():
            if c:
                e %= order
                v = mapping.get(e, Rat(0)) + Rat(c)
                if v:
                    mapping[e] = v
                elif e in mapping:
                    del mapping[e]
        phi = euler_phi(order)
        if any(e >= phi for e in mapping):
            mapping = _reduce_exponents(order, mapping)
        self.coeffs: dict[int, Rat] = mapping
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rational(cls, q: Rat | int) -> CyclotomicNumber:
        return cls(1, {0: Rat(q)})

    @classmethod
    def zero(cls) -> CyclotomicNumber:
        return cls(1, {})

    @classmethod
    def one(cls) -> CyclotomicNumber:
        return cls(1, {0: Rat(1)})

    @classmethod
    def zeta(cls, m: int, e: int = 1) -> CyclotomicNumber:
        """The root of unity zeta_m^e."""
        return cls(m, {e % m: Rat(1)})

    @classmethod
    def gauss_sum(cls, p: int) -> CyclotomicNumber:
        """Quadratic Gauss sum over F_p: sqrt(p) for p = 1 mod 4, i*sqrt(p) for p = 3 mod 4."""
        if p < 3 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
            raise ValueError("p must be an odd prime")
        coeffs = {a: Rat(legendre_symbol(a, p)) for a in range(1, p)}
        return cls(p, coeffs)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_rational(self) -> bool:
        return all(e == 0 for e in self.coeffs) or self._canonical().order == 1

    def as_rational(self) -> Rat:
        c = self._canonical()
        if c.order != 1:
            raise ValueError("not a rational number")
        return c.coeffs.get(0, Rat(0))

    def lift(self, order: int) -> CyclotomicNumber:
        """The same value expressed in Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError("can only lift to a multiple order")
        k = order // self.order
        return CyclotomicNumber(order, {e * k: c for e, c in self.coeffs.items()})

    def _common(self, other: CyclotomicNumber) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if self.order == other.order:
            return self, other
        m = self.order * other.order // math.gcd(self.order, other.order)
        return self.lift(m), other.lift(m)

    def minimal_order(self) -> int:
        """Smallest d with this value in Q(zeta_d); d is never 2 mod 4."""
        return self._canonical().order

    def _canonical(self) -> CyclotomicNumber:
        m = self.order
        if m == 1 or not self.coeffs:
            return CyclotomicNumber(1, self.coeffs)
        for d in sorted(_divisors(m)):
            if d % 4 == 2:
                continue
            if self._fixed_by_subgroup(d):
                return self._rewrite_at(d)
        return self

    def _fixed_by_subgroup(self, d: int) -> bool:
        m = self.order
        for j in range(1, m):
            if j % d == 1 % d and math.gcd(j, m) == 1:
                if self.galois(j) != self:
                    return False
        return True

    def _rewrite_at(self, d: int) -> CyclotomicNumber:
        if d == self.order:
            return self
        # Solve for coordinates over the lifted basis of Q(zeta_d).
        m, k = self.order, self.order // d
        phi_d, phi_m = euler_phi(d), euler_phi(m)
        cols = [CyclotomicNumber(m, {(i * k): Rat(1)}) for i in range(phi_d)]
        mat = [[cols[j].coeffs.get(r, Rat(0)) for j in range(phi_d)] for r in range(phi_m)]
        rhs = [self.coeffs.get(r, Rat(0)) for r in range(phi_m)]
        sol = _solve_rational_system(mat, rhs)
        if sol is None:
            return self
        return CyclotomicNumber(d, {i: sol[i] for i in range(phi_d)})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.from_rational(other)
        return None

    def __add__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        out = dict(a.coeffs)
        for e, c in b.coeffs.items():
            v = out.get(e, Rat(0)) + c
            if v:
                out[e] = v
            elif e in out:
                del out[e]
        return CyclotomicNumber(a.order, out)

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber(self.order, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CyclotomicNumber:
        return (-self) + other

    def __mul__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        out: dict[int, Rat] = {}
        for e1, c1 in a.coeffs.items():
            for e2, c2 in b.coeffs.items():
                e = e1 + e2
                v = out.get(e, Rat(0)) + c1 * c2
                if v:
                    out[e] = v
                elif e in out:
                    del out[e]
        return CyclotomicNumber(a.order, out)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        m, phi = self.order, euler_phi(self.order)
        a = [self.coeffs.get(e, Rat(0)) for e in range(phi)]
        mod = [Rat(c) for c in cyclotomic_polynomial(m)]
        g, s = _qpoly_half_ext_gcd(a, mod)
        if len(g) != 1:
            raise DivisionByZero("element is a zero divisor (non-reduced order)")
        inv = [c / g[0] for c in s]
        return CyclotomicNumber(m, {e: c for e, c in enumerate(inv)})

    def __truediv__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> CyclotomicNumber:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> CyclotomicNumber:
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            c = self._canonical()
            self._hash = hash((c.order, tuple(sorted(c.coeffs.items()))))
        return self._hash

    # -- Galois action and norms --------------------------------------------

    def galois(self, j: int) -> CyclotomicNumber:
        """Image under zeta_m -> zeta_m^j; requires gcd(j, m) = 1."""
        m = self.order
        if math.gcd(j, m) != 1:
            raise ValueError("galois exponent must be coprime to the order")
        return CyclotomicNumber(m, {(e * j) % m: c for e, c in self.coeffs.items()})

    def conjugate(self) -> CyclotomicNumber:
        """Complex conjugation: zeta_m -> zeta_m^(m-1)."""
        if self.order == 1:
            return self
        return self.galois(self.order - 1)

    def has_unit_norm(self) -> bool:
        return self * self.conjugate() == 1

    def is_root_of_unity(self) -> bool:
        if not self.has_unit_norm():
            return False
        k = self.order if self.order % 2 == 0 else 2 * self.order
        return self ** k == 1

    def root_order(self) -> int:
        """Multiplicative order, for roots of unity."""
        if not self.is_root_of_unity():
            raise ValueError("not a root of unity")
        k = self.order if self.order % 2 == 0 else 2 * self.order
        for d in sorted(_divisors(k)):
            if self ** d == 1:
                return d
        raise AssertionError("unreachable")

    # -- numeric tier --------------------------------------------------------

    def embed(self, bits: int = 128) -> ComplexBall:
        """A ball containing the image under zeta_m -> exp(2*pi*i/m)."""
        if bits < 32:
            raise ValueError("need at least 32 bits")
        if self.is_zero():
            return ComplexBall(mpmath.mpc(0), mpmath.mpf(0), bits)
        wp = bits + _BALL_GUARD_BITS
        m = self.order
        with mpmath.workprec(wp):
            total = mpmath.mpc(0)
            size = Rat(0)
            for e, c in self.coeffs.items():
                term = mpmath.expjpi(mpmath.mpf(2 * e) / m) * _frac_to_mpf(c, wp)
                total += term
                size += abs(c)
            # Each term carries a few ulps of rounding error; bound them all
            # by a scaled slop on the total coefficient mass.
            rad = _frac_to_mpf(size, wp) * mpmath.mpf(2) ** (4 - wp) * (len(self.coeffs) + 1)
        return ComplexBall(total, rad, bits)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "coeffs": [[e, f"{c.numerator}/{c.denominator}"] for e, c in sorted(self.coeffs.items())],
        }

    @classmethod
    def from_json(cls, data: dict) -> CyclotomicNumber:
        coeffs = {int(e): Fraction(s) for e, s in data["coeffs"]}
        return cls(int(data["order"]), coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "Cyc(0)"
        parts = []
        for e, c in sorted(self.coeffs.items()):
            if e == 0:
                parts.append(str(c))
            else:
                parts.append(f"{c}*z{self.order}^{e}" if c != 1 else f"z{self.order}^{e}")
        return "Cyc(" + " + ".join(parts) + ")"


ZERO = CyclotomicNumber.zero()
ONE = CyclotomicNumber.one()


def conjugate(a: CyclotomicNumber) -> CyclotomicNumber:
    return a.conjugate()


def has_unit_norm(a, bits: int = 128) -> bool:
    """Exact unit-norm test for cyclotomic values, certified-ball test otherwise."""
    if isinstance(a, CyclotomicNumber):
        return a.has_unit_norm()
    return a.has_unit_norm(bits)


def embed(a: CyclotomicNumber, bits: int = 128) -> ComplexBall:
    return a.embed(bits)


@lru_cache(maxsize=None)
def _divisors(m: int) -> tuple[int, ...]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return tuple(out)


def legendre_symbol(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


# -- rational dense-polynomial helpers (ascending coefficient lists) ----------


def _qpoly_trim(p: list[Rat]) -> list[Rat]:
    while p and not p[-1]:
        p.pop()
    return p


def _qpoly_divmod(a: list[Rat], b: list[Rat]) -> tuple[list[Rat], list[Rat]]:
    a = a[:]
    q = [Rat(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        _qpoly_trim(a)
    return q, a


def _qpoly_half_ext_gcd(a: list[Rat], m: list[Rat]) -> tuple[list[Rat], list[Rat]]:
    """gcd g and s with s*a = g (mod m), over Q."""
    r0, r1 = _qpoly_trim(m[:]), _qpoly_trim(a[:])
    s0, s1 = [Rat(0)], [Rat(1)]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _qpoly_mul(q, s1)
        s0, s1 = s1, _qpoly_trim([x - y for x, y in _zip_pad(s0, qs)])
    return r0, s0


def _qpoly_mul(a: list[Rat], b: list[Rat]) -> list[Rat]:
    if not a or not b:
        return []
    out = [Rat(0)] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if not ac:
            continue
        for j, bc in enumerate(b):
            out[i + j] += ac * bc
    return _qpoly_trim(out)


def _zip_pad(a: list[Rat], b: list[Rat]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else Rat(0), b[i] if i < len(b) else Rat(0))


def _solve_rational_system(mat: list[list[Rat]], rhs: list[Rat]) -> list[Rat] | None:
    """Solve mat*x = rhs exactly; None if inconsistent. mat is tall or square."""
    rows = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1]:
            return None
    if len(pivots) < ncols:
        return None
    sol = [Rat(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol


# -- complex ball arithmetic ---------------------------------------------------


def _frac_to_mpf(q: Rat, wp: int) -> mpmath.mpf:
    with mpmath.workprec(wp):
        return mpmath.mpf(q.numerator) / q.denominator


class ComplexBall:
    """Midpoint-radius complex interval; radii are propagated conservatively."""

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad=0, prec: int = 128):
        self.prec = prec
        with mpmath.workprec(prec + _BALL_GUARD_BITS):
            self.mid = mpmath.mpc(mid)
            self.rad = mpmath.mpf(rad)
        if self.rad < 0:
            raise ValueError("negative radius")

    @classmethod
    def exact(cls, value, prec: int = 128) -> ComplexBall:
        return cls(value, 0, prec)

    def _wp(self, other=None) -> int:
        p = self.prec if other is None else max(self.prec, other.prec)
        return p + _BALL_GUARD_BITS

    def _slop(self, mid, wp: int):
        return (abs(mid) + 1) * mpmath.mpf(2) ** (4 - wp)

    def __add__(self, other) -> ComplexBall:
        other = _as_ball(other, self.prec)
        wp = self._wp(other)
        with mpmath.workprec(wp):
            mid = self.mid + other.mid
            rad = self.rad + other.rad + self._slop(mid, wp)
        return ComplexBall(mid, rad, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self) -> ComplexBall:
        return ComplexBall(-self.mid, self.rad, self.prec)

    def __sub__(self, other) -> ComplexBall:
        return self + (-_as_ball(other, self.prec))

    def __rsub__(self, other) -> ComplexBall:
        return (-self) + other

    def __mul__(self, other) -> ComplexBall:
        other = _as_ball(other, self.prec)
        wp = self._wp(other)
        with mpmath.workprec(wp):
            mid = self.mid * other.mid
            rad = (abs(self.mid) * other.rad + abs(other.mid) * self.rad
                   + self.rad * other.rad + self._slop(mid, wp))
        return ComplexBall(mid, rad, min(self.prec, other.prec))

    __rmul__ = __mul__

    def __truediv__(self, other) -> ComplexBall:
        other = _as_ball(other, self.prec)
        return self * other.inverse()

    def __rtruediv__(self, other) -> ComplexBall:
        return _as_ball(other, self.prec) * self.inverse()

    def inverse(self) -> ComplexBall:
        wp = self._wp()
        with mpmath.workprec(wp):
            d = abs(self.mid)
            if d <= self.rad:
                raise PrecisionInsufficient("ball contains zero, cannot invert")
            mid = 1 / self.mid
            rad = self.rad / (d * (d - self.rad)) + self._slop(mid, wp)
        return ComplexBall(mid, rad, self.prec)

    def conjugate(self) -> ComplexBall:
        return ComplexBall(mpmath.conj(self.mid), self.rad, self.prec)

    def sqrt(self) -> ComplexBall:
        wp = self._wp()
        with mpmath.workprec(wp):
            mid = mpmath.sqrt(self.mid)
            d = abs(self.mid)
            if d <= self.rad:
                # crude bound through 0: |sqrt(z)-sqrt(w)| <= sqrt(|z-w|)
                rad = mpmath.sqrt(self.rad) + self._slop(mid, wp)
            else:
                rad = self.rad / (2 * mpmath.sqrt(d - self.rad)) + self._slop(mid, wp)
        return ComplexBall(mid, rad, self.prec)

    def abs_squared(self) -> ComplexBall:
        return self * self.conjugate()

    def contains_zero(self) -> bool:
        return abs(self.mid) <= self.rad

    def contains(self, value) -> bool:
        with mpmath.workprec(self._wp()):
            return abs(self.mid - mpmath.mpc(value)) <= self.rad

    def overlaps(self, other: ComplexBall) -> bool:
        with mpmath.workprec(self._wp(other)):
            return abs(self.mid - other.mid) <= self.rad + other.rad

    def is_nonzero(self) -> bool:
        return abs(self.mid) > self.rad

    def __repr__(self) -> str:
        return f"Ball({mpmath.nstr(self.mid, 12)} +/- {mpmath.nstr(self.rad, 3)})"


def _as_ball(x, prec: int) -> ComplexBall:
    if isinstance(x, ComplexBall):
        return x
    if isinstance(x, CyclotomicNumber):
        return x.embed(prec)
    if isinstance(x, Fraction):
        return ComplexBall(_frac_to_mpf(x, prec + _BALL_GUARD_BITS), 0, prec)
    return ComplexBall(x, 0, prec)


# -- one-step extension fields -------------------------------------------------

_VERIFIED_MODULI: set[tuple] = set()


def _modulus_key(base_order: int, modulus: tuple[CyclotomicNumber, ...]) -> tuple:
    return (base_order, tuple((c.order, tuple(sorted(c.coeffs.items()))) for c in modulus))


class NumberFieldElement:
    """Residue class in Q(zeta_m)[x]/(p) with a fixed complex embedding.

    The embedding is pinned at construction to the root of ``modulus``
    nearest the supplied hint, so Galois conjugates stay distinguishable.
    Moduli are verified irreducible once per distinct polynomial.
    """

    __slots__ = ("base_order", "modulus", "coeffs", "hint")

    def __init__(self, base_order: int, modulus: tuple[CyclotomicNumber, ...],
                 coeffs: tuple[CyclotomicNumber, ...], hint: complex,
                 _skip_check: bool = False):
        if not modulus or modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        if len(modulus) < 3:
            raise ValueError("modulus must have degree at least 2")
        self.base_order = base_order
        self.modulus = tuple(c.lift(base_order) if c.order != base_order else c for c in modulus)
        deg = len(modulus) - 1
        cs = list(coeffs) + [ZERO] * (deg - len(coeffs))
        self.coeffs = tuple(cs[:deg])
        self.hint = complex(hint)
        key = _modulus_key(base_order, self.modulus)
        if not _skip_check and key not in _VERIFIED_MODULI:
            from .solve import assert_irreducible  # deferred: solve builds on cyclo

            assert_irreducible(base_order, self.modulus)
            _VERIFIED_MODULI.add(key)

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @classmethod
    def generator(cls, base_order: int, modulus, hint: complex) -> NumberFieldElement:
        mod = tuple(modulus)
        deg = len(mod) - 1
        coeffs = tuple([ZERO, ONE] + [ZERO] * (deg - 2))
        return cls(base_order, mod, coeffs, hint)

    def _compatible(self, other: NumberFieldElement) -> None:
        if self.base_order != other.base_order or self.modulus != other.modulus:
            raise ValueError("elements live in different number fields")

    def _make(self, coeffs) -> NumberFieldElement:
        return NumberFieldElement(self.base_order, self.modulus, tuple(coeffs),
                                  self.hint, _skip_check=True)

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            self._compatible(other)
            return other
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(other)
        if isinstance(other, CyclotomicNumber):
            return self._make([other] + [ZERO] * (self.degree - 1))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._make([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._make([-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod = [ZERO] * (2 * self.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        red = _kpoly_mod(prod, list(self.modulus))
        red += [ZERO] * (self.degree - len(red))
        return self._make(red)

    __rmul__ = __mul__

    def inverse(self) -> NumberFieldElement:
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        g, s = _kpoly_half_ext_gcd(list(self.coeffs), list(self.modulus))
        if len(g) != 1:
            raise DivisionByZero("element not invertible modulo the modulus")
        inv = [c / g[0] for c in s]
        inv += [ZERO] * (self.degree - len(inv))
        return self._make(inv[: self.degree])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, n: int) -> NumberFieldElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = self._make([ONE] + [ZERO] * (self.degree - 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.base_order, tuple(self.coeffs)))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    # -- embedding ----------------------------------------------------------

    def root_ball(self, bits: int = 128) -> ComplexBall:
        """A certified ball around the pinned root of the modulus."""
        wp = bits + 32
        with mpmath.workprec(wp):
            poly = [c.embed(wp).mid for c in reversed(self.modulus)]
            roots, err = mpmath.polyroots(poly, maxsteps=200, extraprec=wp, error=True)
            root = min(roots, key=lambda r: abs(r - mpmath.mpc(self.hint)))
            others = [r for r in roots if r is not root]
            sep = min((abs(root - r) for r in others), default=mpmath.mpf(1))
            rad = mpmath.mpf(err) * 8 + mpmath.mpf(2) ** (8 - wp) * (abs(root) + 1)
            if others and rad > sep / 4:
                raise PrecisionInsufficient("cannot isolate the pinned root")
        return ComplexBall(root, rad, bits)

    def embed(self, bits: int = 128) -> ComplexBall:
        root = self.root_ball(bits)
        acc = ComplexBall(0, 0, bits)
        for c in reversed(self.coeffs):
            acc = acc * root + c.embed(bits)
        return acc

    def conjugate_ball(self, bits: int = 128) -> ComplexBall:
        return self.embed(bits).conjugate()

    def has_unit_norm(self, bits: int = 128) -> bool:
        b = bits
        while b <= 2048:
            ball = self.embed(b).abs_squared() - 1
            if ball.is_nonzero():
                return False
            if ball.rad < mpmath.mpf(2) ** (-(b - _BALL_GUARD_BITS)):
                return True
            b *= 2
        raise PrecisionInsufficient("cannot separate |a|^2 from 1")

    def minimal_polynomial(self) -> tuple[CyclotomicNumber, ...]:
        """Monic minimal polynomial of this element over Q(zeta_base_order)."""
        d = self.degree
        powers = [self._make([ONE] + [ZERO] * (d - 1))]
        for _ in range(d):
            powers.append(powers[-1] * self)
        # first linear dependency among 1, a, a^2, ...
        for k in range(1, d + 1):
            mat = [[powers[j].coeffs[r] for j in range(k)] for r in range(d)]
            rhs = [powers[k].coeffs[r] for r in range(d)]
            sol = _ksolve(mat, rhs)
            if sol is not None:
                return tuple([-c for c in sol] + [ONE])
        raise AssertionError("no dependency found below field degree")

    def to_json(self) -> dict:
        return {
            "base_order": self.base_order,
            "modulus": [c.to_json() for c in self.modulus],
            "coeffs": [c.to_json() for c in self.coeffs],
            "embedding_hint": [self.hint.real, self.hint.imag],
        }

    @classmethod
    def from_json(cls, data: dict) -> NumberFieldElement:
        return cls(
            int(data["base_order"]),
            tuple(CyclotomicNumber.from_json(c) for c in data["modulus"]),
            tuple(CyclotomicNumber.from_json(c) for c in data["coeffs"]),
            complex(data["embedding_hint"][0], data["embedding_hint"][1]),
        )

    def __repr__(self) -> str:
        return f"NFElt(deg {self.degree} over Q(z{self.base_order}), {list(self.coeffs)})"


# -- dense polynomials over cyclotomic coefficient fields ----------------------


def _kpoly_trim(p: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    while p and p[-1].is_zero():
        p.pop()
    return p


def _kpoly_mod(a: list[CyclotomicNumber], b: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    a = _kpoly_trim(a[:])
    b = _kpoly_trim(b[:])
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - c * bc
        _kpoly_trim(a)
    return a


def _kpoly_divmod(a, b):
    a = _kpoly_trim(a[:])
    b = _kpoly_trim(b[:])
    q = [ZERO] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - c * bc
        _kpoly_trim(a)
    return q, a


def _kpoly_mul(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac.is_zero():
            continue
        for j, bc in enumerate(b):
            if not bc.is_zero():
                out[i + j] = out[i + j] + ac * bc
    return _kpoly_trim(out)


def _kpoly_half_ext_gcd(a, m):
    r0, r1 = _kpoly_trim(m[:]), _kpoly_trim(a[:])
    s0, s1 = [ZERO], [ONE]
    while r1:
        q, r = _kpoly_divmod(r0, r1)
        r0, r1 = r1, r
        qs = _kpoly_mul(q, s1)
        n = max(len(s0), len(qs))
        s0p = s0 + [ZERO] * (n - len(s0))
        qsp = qs + [ZERO] * (n - len(qs))
        s0, s1 = s1, _kpoly_trim([x - y for x, y in zip(s0p, qsp)])
    return r0, s0


def _ksolve(mat, rhs):
    """Solve over a cyclotomic field, exactly; None if inconsistent."""
    rows = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    if not rows or not rows[0][:-1]:
        return None if any(not r[-1].is_zero() for r in rows) else []
    ncols = len(rows[0]) - 1
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if not rows[i][-1].is_zero():
            return None
    if len(pivots) < ncols:
        return None
    sol = [ZERO] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    return sol
