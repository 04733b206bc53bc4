"""Quadratic norm ideals from an algebra character table, lex Groebner bases,
triangular decomposition into solved components, and enumeration of verified
algebraic solutions.

Coefficients live in Q(zeta_m) or in one simple extension of it. Univariate
factorizations are obtained through sympy as hints and certified by exact
multiplication before use; nothing downstream depends on uncertified data.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from .chartable import AlgebraCharacterTable
from .cyclo import (ComplexBall, CyclotomicNumber, NumberFieldElement, ONE,
                    Rat, ZERO, euler_phi)
from .errors import ResourceBudgetExceeded, UnresolvedFactor

DEFAULT_PAIR_BUDGET = 1_000_000
DEFAULT_DEGREE_CAP = 40


# -- coefficient fields --------------------------------------------------------


class FieldSpec:
    """Coefficient domain: the cyclotomic field Q(zeta_order), or one
    extension step Q(zeta_order)[y]/(modulus) with a pinned embedding."""

    def __init__(self, order: int = 1, modulus: tuple | None = None,
                 hint: complex | None = None):
        self.order = order
        self.modulus = modulus
        self.hint = hint

    @property
    def is_extension(self) -> bool:
        return self.modulus is not None

    def zero(self):
        return self.promote(ZERO)

    def one(self):
        return self.promote(ONE)

    def promote(self, value):
        """Lift a rational or cyclotomic value into this field."""
        if isinstance(value, (int, Fraction)):
            value = CyclotomicNumber.from_rational(value)
        if isinstance(value, NumberFieldElement):
            if not self.is_extension:
                raise ValueError("cannot demote an extension element")
            return value
        if not self.is_extension:
            return value
        if self.order % value.minimal_order():
            raise UnresolvedFactor(
                "coefficient outside the extension base field; widen the base order")
        v = value._canonical()
        return NumberFieldElement(self.order, self.modulus,
                                  (v.lift(self.order) if v.order != self.order else v,),
                                  self.hint, _skip_check=True)

    def generator(self):
        if not self.is_extension:
            raise ValueError("base field has no extension generator")
        return NumberFieldElement.generator(self.order, self.modulus, self.hint)

    def embed(self, value, bits: int) -> ComplexBall:
        return value.embed(bits)

    def extend(self, modulus, hint: complex, certified: bool = False) -> FieldSpec:
        if self.is_extension:
            raise UnresolvedFactor("field towers beyond one extension are out of scope")
        modulus = tuple(modulus)
        if certified:
            from .cyclo import _VERIFIED_MODULI, _modulus_key

            lifted = tuple(c.lift(_lcm(c.order, self.order)) if self.order % c.order == 0
                           else c for c in modulus)
            _VERIFIED_MODULI.add(_modulus_key(self.order, lifted))
        return FieldSpec(self.order, modulus, hint)

    def __repr__(self) -> str:
        if self.is_extension:
            return f"FieldSpec(Q(z{self.order})[y]/deg{len(self.modulus)-1})"
        return f"FieldSpec(Q(z{self.order}))"


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# -- multivariate polynomials ----------------------------------------------------


class Poly:
    """Multivariate polynomial with a fixed variable list, pure lex order
    (variable 0 highest)."""

    __slots__ = ("nvars", "terms", "field")

    def __init__(self, nvars: int, terms: dict, field: FieldSpec):
        self.nvars = nvars
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def constant(cls, nvars: int, value, field: FieldSpec) -> Poly:
        v = field.promote(value)
        return cls(nvars, {(0,) * nvars: v}, field)

    @classmethod
    def variable(cls, nvars: int, i: int, field: FieldSpec) -> Poly:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): field.one()}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def leading_monomial(self) -> tuple:
        return max(self.terms)

    def leading_coeff(self):
        return self.terms[max(self.terms)]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def variables_used(self) -> set[int]:
        out = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def main_variable(self) -> int | None:
        """Highest-priority variable occurring (smallest index)."""
        used = self.variables_used()
        return min(used) if used else None

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return Poly(self.nvars, out, self.field)

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e)
                s = c1 * c2 if s is None else s + c1 * c2
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return Poly(self.nvars, out, self.field)

    def scale(self, c) -> Poly:
        c = self.field.promote(c) if isinstance(c, (int, Fraction, CyclotomicNumber)) else c
        return Poly(self.nvars, {e: c * v for e, v in self.terms.items()}, self.field)

    def term_mul(self, exp: tuple, coeff) -> Poly:
        return Poly(self.nvars,
                    {tuple(a + b for a, b in zip(e, exp)): coeff * c
                     for e, c in self.terms.items()}, self.field)

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        lc = self.leading_coeff()
        inv = lc.inverse()
        return Poly(self.nvars, {e: inv * c for e, c in self.terms.items()}, self.field)

    def content_normalized(self) -> Poly:
        """Scale by a rational so coefficients are integral with content 1."""
        if self.is_zero():
            return self
        nums: list[int] = []
        dens: list[int] = []
        for c in self.terms.values():
            for q in _rational_parts(c):
                nums.append(abs(q.numerator))
                dens.append(q.denominator)
        if not nums:
            return self
        g = 0
        for x in nums:
            g = math.gcd(g, x)
        l = 1
        for x in dens:
            l = l * x // math.gcd(l, x)
        factor = Fraction(l, g if g else 1)
        if factor == 1:
            return self
        return self.scale(Fraction(factor))

    def reduce(self, basis: list[Poly], budget=None) -> Poly:
        """Full multivariate division remainder."""
        rem: dict = {}
        work = dict(self.terms)
        while work:
            e = max(work)
            c = work.pop(e)
            for b in basis:
                lm = b.leading_monomial()
                if all(x >= y for x, y in zip(e, lm)):
                    if budget is not None:
                        budget.step()
                    q = c * b.leading_coeff().inverse()
                    shift = tuple(x - y for x, y in zip(e, lm))
                    for be, bc in b.terms.items():
                        te = tuple(a + b2 for a, b2 in zip(be, shift))
                        s = work.get(te)
                        s = -(q * bc) if s is None else s - q * bc
                        if te == e:
                            continue
                        if s.is_zero():
                            work.pop(te, None)
                        else:
                            work[te] = s
                    break
            else:
                rem[e] = c
        return Poly(self.nvars, rem, self.field)

    def substitute(self, i: int, value) -> Poly:
        """Substitute variable i by a field value."""
        value = self.field.promote(value) if isinstance(value, (int, Fraction, CyclotomicNumber)) else value
        out: dict = {}
        for e, c in self.terms.items():
            v = c
            for _ in range(e[i]):
                v = v * value
            te = tuple(0 if k == i else x for k, x in enumerate(e))
            s = out.get(te)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(te, None)
            else:
                out[te] = s
        return Poly(self.nvars, out, self.field)

    def map_coefficients(self, fn, new_field: FieldSpec) -> Poly:
        return Poly(self.nvars, {e: fn(c) for e, c in self.terms.items()}, new_field)

    def univariate_in(self) -> int | None:
        used = self.variables_used()
        return next(iter(used)) if len(used) == 1 else None

    def univariate_coeffs(self, i: int) -> list:
        d = self.degree_in(i)
        out = [self.field.zero() for _ in range(d + 1)]
        for e, c in self.terms.items():
            out[e[i]] = out[e[i]] + c
        return out

    def evaluate(self, values: list) -> object:
        """Evaluate at a full point (list of field values)."""
        total = self.field.zero()
        for e, c in self.terms.items():
            v = c
            for i, x in enumerate(e):
                for _ in range(x):
                    v = v * values[i]
            total = total + v
        return total

    def evaluate_ball(self, balls: list[ComplexBall], bits: int) -> ComplexBall:
        total = ComplexBall(0, 0, bits)
        for e, c in self.terms.items():
            v = c.embed(bits)
            for i, x in enumerate(e):
                for _ in range(x):
                    v = v * balls[i]
            total = total + v
        return total

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset((e, _coeff_key(c)) for e, c in self.terms.items()))

    def pretty(self, names: list[str]) -> str:
        if self.is_zero():
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{names[i]}^{x}" if x > 1 else names[i]
                            for i, x in enumerate(e) if x)
            cs = repr(c)
            if isinstance(c, CyclotomicNumber) and c.is_rational():
                cs = str(c.as_rational())
            bits.append(f"({cs})*{mono}" if mono else f"({cs})")
        return " + ".join(bits)

    def __repr__(self) -> str:
        return f"Poly({len(self.terms)} terms, {self.nvars} vars)"


def _rational_parts(c) -> list[Fraction]:
    if isinstance(c, CyclotomicNumber):
        return list(c.coeffs.values())
    out = []
    for cc in c.coeffs:
        out.extend(cc.coeffs.values())
    return out


def _coeff_key(c):
    if isinstance(c, CyclotomicNumber):
        cc = c._canonical()
        return (cc.order, tuple(sorted(cc.coeffs.items())))
    return tuple(_coeff_key(x) for x in c.coeffs)


# -- Buchberger ------------------------------------------------------------------


class _Budget:
    def __init__(self, steps: int, degree_cap: int):
        self.remaining = steps
        self.degree_cap = degree_cap

    def step(self, k: int = 1):
        self.remaining -= k
        if self.remaining < 0:
            raise ResourceBudgetExceeded("reduction budget exhausted")

    def check_degree(self, p: Poly):
        for e in p.terms:
            if any(x > self.degree_cap for x in e):
                raise ResourceBudgetExceeded("degree cap exceeded")


def _lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _disjoint(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, lg = f.leading_monomial(), g.leading_monomial()
    l = _lcm_exp(lf, lg)
    cf, cg = f.leading_coeff(), g.leading_coeff()
    tf = tuple(x - y for x, y in zip(l, lf))
    tg = tuple(x - y for x, y in zip(l, lg))
    return f.term_mul(tf, cg) - g.term_mul(tg, cf)


def buchberger(generators: list[Poly], pair_budget: int = DEFAULT_PAIR_BUDGET,
               degree_cap: int = DEFAULT_DEGREE_CAP) -> list[Poly]:
    """Reduced lex Groebner basis with content normalization after every
    reduction and hard pair/degree budgets."""
    budget = _Budget(pair_budget, degree_cap)
    basis = [g.content_normalized() for g in generators if not g.is_zero()]
    if not basis:
        return []
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        pairs.sort(key=lambda p: sum(_lcm_exp(basis[p[0]].leading_monomial(),
                                              basis[p[1]].leading_monomial())),
                   reverse=True)
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        if _disjoint(f.leading_monomial(), g.leading_monomial()):
            continue
        l = _lcm_exp(f.leading_monomial(), g.leading_monomial())
        # chain criterion
        skip = False
        for k, h in enumerate(basis):
            if k in (i, j):
                continue
            lk = h.leading_monomial()
            if all(x >= y for x, y in zip(l, lk)):
                if (min(i, k), max(i, k)) not in _pairset(pairs) and \
                   (min(j, k), max(j, k)) not in _pairset(pairs):
                    skip = True
                    break
        if skip:
            continue
        s = s_polynomial(f, g).reduce(basis, budget)
        if s.is_zero():
            continue
        s = s.content_normalized()
        budget.check_degree(s)
        basis.append(s)
        new_idx = len(basis) - 1
        pairs.extend((new_idx, k) for k in range(new_idx))
    # inter-reduce to the reduced basis
    reduced: list[Poly] = []
    for i, f in enumerate(basis):
        others = [g for k, g in enumerate(basis) if k != i]
        r = f.reduce(others, budget)
        if not r.is_zero():
            reduced.append(r.monic())
    # dedupe and sort ascending by leading monomial
    seen = {}
    for f in reduced:
        seen[f.leading_monomial()] = f
    out = [seen[lm] for lm in sorted(seen)]
    # final cleanup pass: tail-reduce each element by the others
    final = []
    for i, f in enumerate(out):
        others = [g for k, g in enumerate(out) if k != i]
        r = f.reduce(others, budget)
        if not r.is_zero():
            final.append(r.monic())
    return sorted(final, key=lambda p: p.leading_monomial())


def _pairset(pairs) -> set:
    return {(min(i, j), max(i, j)) for i, j in pairs}


# -- norm ideal -------------------------------------------------------------------


@dataclass
class NormIdeal:
    """Unit-norm conditions P_i = a_i a_ic - 1 and eigenvalue-norm conditions
    Q_j = (row_j . alpha)(conj row_j . alpha_c) - n, with alpha_1 = 1."""

    table: AlgebraCharacterTable
    order_n: int
    generators: list[Poly]
    names: list[str]
    field: FieldSpec
    defining_values: list = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return 2 * (self.table.rank - 1)


def build_norm_ideal(table: AlgebraCharacterTable, n: int) -> NormIdeal:
    if not table.exact:
        raise ValueError("norm ideal needs the exact character table")
    r = table.rank
    d = 1
    for row in table.rows:
        for v in row:
            d = _lcm(d, v.minimal_order())
    fieldspec = FieldSpec(d)
    nvars = 2 * (r - 1)
    names = []
    for i in range(2, r + 1):
        names.extend([f"a{i}", f"a{i}c"])
    gens: list[Poly] = []
    one = Poly.constant(nvars, 1, fieldspec)
    for i in range(r - 1):
        ai = Poly.variable(nvars, 2 * i, fieldspec)
        aic = Poly.variable(nvars, 2 * i + 1, fieldspec)
        gens.append(ai * aic - one)
    for j in range(r):
        row = table.rows[j]
        lin = Poly.constant(nvars, row[0], fieldspec)
        linc = Poly.constant(nvars, row[0].conjugate(), fieldspec)
        for i in range(r - 1):
            coeff = Poly.constant(nvars, row[i + 1], fieldspec)
            coeffc = Poly.constant(nvars, row[i + 1].conjugate(), fieldspec)
            lin = lin + coeff * Poly.variable(nvars, 2 * i, fieldspec)
            linc = linc + coeffc * Poly.variable(nvars, 2 * i + 1, fieldspec)
        gens.append(lin * linc - Poly.constant(nvars, n, fieldspec))
    defining = [v for g in gens for v in g.terms.values()]
    return NormIdeal(table, n, gens, names, fieldspec, defining)


# -- sympy-backed, exactly certified factorization --------------------------------


def _poly_gcd_univ(a: list, b: list, field: FieldSpec) -> list:
    """Monic gcd of univariate coefficient lists over the field."""
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod_univ(a, b, field)
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [inv * c for c in a]
    return a


def _trim(p: list) -> list:
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def _divmod_univ(a: list, b: list, field: FieldSpec):
    a = _trim(a)
    b = _trim(b)
    q = [field.zero()] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * b[-1].inverse()
        k = len(a) - len(b)
        q[k] = q[k] + c
        for i, bc in enumerate(b):
            a[k + i] = a[k + i] - c * bc
        a = _trim(a)
    return q, a


def _derivative_univ(p: list, field: FieldSpec) -> list:
    return [field.promote(k) * c for k, c in enumerate(p)][1:]


@dataclass
class FactorizationResult:
    factors: list  # (coefficient list ascending, multiplicity), certified irreducible
    unresolved: list  # (coefficient list, multiplicity) that could not be certified
    unit: object  # leading scalar so that unit * prod factors^mult = input


def verified_univariate_factor(coeffs: list, field: FieldSpec,
                               floor: int | None = None,
                               floor_values=()) -> FactorizationResult:
    """Factor a univariate polynomial over the field into certified
    irreducible factors with multiplicity.

    sympy supplies candidate factorizations over the subfield generated by
    the coefficients together with Q(zeta_floor) (floor defaults to the
    declared field order); every candidate is certified by exact
    multiplication before it is returned. Parts that cannot be certified are
    reported unresolved, never guessed.
    """
    coeffs = _trim([field.promote(c) if isinstance(c, (int, Fraction, CyclotomicNumber)) else c
                    for c in coeffs])
    if not coeffs:
        raise ValueError("zero polynomial")
    unit = coeffs[-1]
    monic = [c * unit.inverse() for c in coeffs]
    if len(monic) == 1:
        return FactorizationResult([], [], unit)
    if field.is_extension:
        return _factor_over_extension(monic, unit, field)

    bridge = _CoeffBridge([c for c in monic], field.order if floor is None else floor,
                          floor_values)
    x = sympy.Symbol("x")
    try:
        dom_coeffs = [bridge.domain_coeff(c) for c in reversed(monic)]
        p = sympy.Poly(dom_coeffs, x, domain=bridge.sympy_domain())
        _, fl = p.factor_list()
    except Exception:
        if os.environ.get("CENTALG_DEBUG"):
            raise
        return FactorizationResult([], [(monic, 1)], unit)

    factors = []
    rebuilt = [field.one()]
    for fp, mult in fl:
        mine = [bridge.from_domain(v) for v in fp.rep.to_list()[::-1]]
        if any(c is None for c in mine):
            if os.environ.get("CENTALG_DEBUG"):
                raise AssertionError("factor coefficient conversion failed")
            return FactorizationResult([], [(monic, 1)], unit)
        lead = mine[-1]
        mine = [c * lead.inverse() for c in mine]
        factors.append((mine, int(mult)))
        for _ in range(int(mult)):
            rebuilt = _mul_univ(rebuilt, mine, field)
    if _trim(rebuilt) != _trim(monic):
        return FactorizationResult([], [(monic, 1)], unit)
    return FactorizationResult(factors, [], unit)


class _CoeffBridge:
    """Exact two-way bridge between the subfield of Q(zeta_m) generated by
    given coefficients (over a floor field Q(zeta_floor)) and a sympy
    algebraic field on a computed primitive element.

    Factoring over the generated subfield keeps Trager norms small: the norm
    degree is deg(f) * [F : Q] instead of deg(f) * phi(m)."""

    def __init__(self, values, floor_order: int, floor_values=()):
        m = max(floor_order, 1)
        vals = []
        for v in list(values) + list(floor_values):
            vc = v._canonical()
            m = _lcm(m, vc.order)
            vals.append(vc)
        self.m = m
        units = [j for j in range(1, m + 1) if math.gcd(j, m) == 1]
        lifted = [v.lift(m) if v.order != m else v for v in vals]
        stab = []
        for j in units:
            if floor_order > 2 and j % floor_order != 1 % floor_order:
                continue
            if all(v.galois(j) == v for v in lifted):
                stab.append(j)
        self.stab = stab
        phi = len(units)
        self.degree = phi // len(stab)
        self._domain = None
        if self.degree == 1:
            self.gamma = None
            self.alpha = None
            return
        gamma = None
        if len(stab) == 1:
            gamma = CyclotomicNumber.zeta(m)
        else:
            for k in range(1, m + 1):
                cand = CyclotomicNumber(m, {(j * k) % m: Fraction(1) for j in stab})
                cstab = [j for j in units if cand.galois(j) == cand]
                if cstab == stab:
                    gamma = cand
                    break
        if gamma is None:
            # fall back to the full cyclotomic field
            gamma = CyclotomicNumber.zeta(m)
            self.stab = [1]
            self.degree = phi
        self.gamma = gamma
        # power basis of Q(gamma) and exact coordinates of each gamma power
        self.powers = [CyclotomicNumber.one()]
        for _ in range(self.degree - 1):
            self.powers.append(self.powers[-1] * gamma)
        phi_m = euler_phi(m)
        self._basis_mat = [[self.powers[c].lift(m).coeffs.get(r, Fraction(0))
                            for c in range(self.degree)] for r in range(phi_m)]
        # minimal polynomial of gamma over Q: product over the Galois orbit
        orbit = {}
        for j in units:
            w = gamma.galois(j)
            orbit[_coeff_key(w)] = w
        poly = [ONE]
        for w in orbit.values():
            poly = _mul_univ(poly, [-w, ONE], FieldSpec(m))
        rational = []
        for c in poly:
            q = c.as_rational()
            rational.append(q)
        assert len(rational) == self.degree + 1
        x = sympy.Symbol("x")
        pexpr = sum(sympy.Rational(q.numerator, q.denominator) * x ** k
                    for k, q in enumerate(rational))
        target = gamma.embed(96)
        best, best_d = None, None
        for i in range(self.degree):
            root = sympy.CRootOf(pexpr, i)
            rv = complex(root.evalf(30))
            d = abs(complex(target.mid) - rv)
            if best_d is None or d < best_d:
                best, best_d = root, d
        self.alpha = best

    def sympy_domain(self):
        if self.degree == 1:
            return sympy.QQ
        if self._domain is None:
            self._domain = sympy.QQ.algebraic_field(self.alpha)
        return self._domain

    def coordinates(self, c: CyclotomicNumber) -> list[Fraction]:
        from .cyclo import _solve_rational_system

        if self.degree == 1:
            return [c.as_rational()]
        cc = c._canonical()
        if self.m % cc.order:
            raise UnresolvedFactor("coefficient outside the generated subfield")
        cc = cc.lift(self.m) if cc.order != self.m else cc
        phi_m = len(self._basis_mat)
        rhs = [cc.coeffs.get(r, Fraction(0)) for r in range(phi_m)]
        sol = _solve_rational_system([row[:] for row in self._basis_mat], rhs)
        if sol is None:
            raise UnresolvedFactor("coefficient outside the generated subfield")
        return sol

    def to_sympy(self, c: CyclotomicNumber):
        coords = self.coordinates(c)
        if self.degree == 1:
            q = coords[0]
            return sympy.Rational(q.numerator, q.denominator)
        expr = sympy.Integer(0)
        for i, q in enumerate(coords):
            if q:
                expr += sympy.Rational(q.numerator, q.denominator) * self.alpha ** i
        return expr

    def domain_coeff(self, c: CyclotomicNumber):
        """The coefficient as an element of sympy_domain()."""
        coords = self.coordinates(c)
        if self.degree == 1:
            q = coords[0]
            return sympy.Rational(q.numerator, q.denominator)
        K = self.sympy_domain()
        expr = sympy.Integer(0)
        for i, q in enumerate(coords):
            if q:
                expr += sympy.Rational(q.numerator, q.denominator) * K.ext.as_expr() ** i
        return K.from_sympy(expr)

    def from_domain(self, v) -> CyclotomicNumber | None:
        """Domain element (ANP over alpha, or rational) back to an exact value."""
        try:
            lst = None
            if hasattr(v, "to_list"):
                lst = v.to_list()
            elif hasattr(v, "rep"):
                lst = v.rep.to_list() if hasattr(v.rep, "to_list") else list(v.rep)
            if lst is not None:
                out = CyclotomicNumber.zero()
                deg = len(lst) - 1
                for k, q in enumerate(lst):
                    fq = Fraction(int(q.numerator), int(q.denominator))
                    if fq:
                        out = out + self.powers[deg - k] * fq
                return out
            fq = Fraction(int(v.numerator), int(v.denominator))
            return CyclotomicNumber.from_rational(fq)
        except (AttributeError, TypeError, IndexError):
            return None


def _factor_over_extension(monic: list, unit, field: FieldSpec) -> FactorizationResult:
    """Over a one-step extension only squarefree splitting and linear factors
    are attempted; deeper factorizations are reported unresolved."""
    parts = _squarefree_split(monic, field)
    factors = []
    unresolved = []
    for sq, mult in parts:
        if len(sq) == 2:
            factors.append((sq, mult))
        else:
            unresolved.append((sq, mult))
    return FactorizationResult(factors, unresolved, unit)


def _squarefree_split(monic: list, field: FieldSpec) -> list:
    """Yun decomposition: [(squarefree factor, multiplicity)...]."""
    g = _poly_gcd_univ(monic, _derivative_univ(monic, field), field)
    w, r = _divmod_univ(monic, g, field)
    assert not r
    out = []
    i = 1
    while len(w) > 1:
        y = _poly_gcd_univ(w, g, field)
        part, r = _divmod_univ(w, y, field)
        assert not r
        if len(part) > 1:
            out.append((part, i))
        w = y
        g, r = _divmod_univ(g, y, field)
        assert not r
        i += 1
    return out


def _mul_univ(a: list, b: list, field: FieldSpec) -> list:
    if not a or not b:
        return []
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, ac in enumerate(a):
        if ac.is_zero():
            continue
        for j, bc in enumerate(b):
            if not bc.is_zero():
                out[i + j] = out[i + j] + ac * bc
    return out


def assert_irreducible(base_order: int, modulus: tuple) -> None:
    """Certify that a monic polynomial over Q(zeta_base_order) is irreducible."""
    field = FieldSpec(base_order)
    res = verified_univariate_factor(list(modulus), field)
    if res.unresolved or len(res.factors) != 1 or res.factors[0][1] != 1:
        raise UnresolvedFactor("modulus could not be certified irreducible")
    if len(res.factors[0][0]) != len(modulus):
        raise UnresolvedFactor("modulus is reducible")


# -- multivariate factor oracle (certified) ----------------------------------------


def _multivariate_factor(p: Poly, timeout_s: int = 20) -> list[tuple[Poly, int]] | None:
    """Certified nontrivial factorization of p, or None. sympy provides the
    hint; the product is re-verified exactly. Factorizations over nontrivial
    extensions run under a wall-clock guard because sympy can stall there."""
    field = p.field
    if field.is_extension:
        return None
    bridge = _CoeffBridge(list(p.terms.values()), 1)
    syms = [sympy.Symbol(f"x{i}") for i in range(p.nvars)]
    try:
        K = bridge.sympy_domain()
        rep = {e: bridge.domain_coeff(c) for e, c in p.terms.items()}
        sp = sympy.Poly.from_dict(rep, *syms, domain=K)
        if bridge.degree == 1:
            _, fl = sp.factor_list()
        else:
            with _time_guard(timeout_s):
                _, fl = sp.factor_list()
    except Exception:
        if os.environ.get("CENTALG_DEBUG"):
            raise
        return None
    nontrivial = [(f, mult) for f, mult in fl if sympy.total_degree(f.as_expr()) > 0]
    if len(nontrivial) < 2 and all(mult == 1 for _, mult in nontrivial):
        return None
    out = []
    rebuilt = Poly.constant(p.nvars, 1, field)
    for f, mult in nontrivial:
        fp = _sympy_poly_to_poly(f, bridge, p.nvars, field)
        if fp is None:
            return None
        fp = fp.monic()
        out.append((fp, int(mult)))
        for _ in range(int(mult)):
            rebuilt = rebuilt * fp
    if rebuilt.monic() != p.monic():
        return None
    return out


def _sympy_poly_to_poly(sp, bridge: _CoeffBridge, nvars: int, field: FieldSpec) -> Poly | None:
    terms = {}
    try:
        for mono, coeff in sp.rep.to_dict().items():
            c = bridge.from_domain(coeff)
            if c is None:
                return None
            terms[tuple(mono)] = c
    except (AttributeError, TypeError):
        return None
    return Poly(nvars, terms, field)


class _time_guard:
    """SIGALRM-based wall-clock guard for library calls that may stall;
    no-op off the main thread."""

    def __init__(self, seconds: int):
        self.seconds = seconds
        self.armed = False

    def __enter__(self):
        import signal
        import threading

        if threading.current_thread() is threading.main_thread():
            def _raise(signum, frame):
                raise TimeoutError("factorization timed out")

            self._old = signal.signal(signal.SIGALRM, _raise)
            signal.alarm(self.seconds)
            self.armed = True
        return self

    def __exit__(self, *exc):
        if self.armed:
            import signal

            signal.alarm(0)
            signal.signal(signal.SIGALRM, self._old)
        return False


# -- triangular decomposition -------------------------------------------------------


@dataclass
class TriangularComponent:
    """A solved branch of the variety: one relation per bound variable,
    deeper variables first in back-substitution order; pairs constrained only
    by a_i * a_ic = 1 are free unit parameters."""

    relations: list
    names: list[str]
    field: FieldSpec
    free_pairs: list[tuple[int, int]]
    groebner: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.free_pairs)

    def signature(self):
        return tuple(sorted(hash(p) for p in self.groebner))

    def describe(self) -> list[str]:
        return [p.pretty(self.names) for p in self.relations]


def _is_pair_relation(p: Poly, i: int) -> bool:
    """Is p exactly a_i * a_ic - 1 for the variable pair (i, i+1)?"""
    if i % 2:
        return False
    e = [0] * p.nvars
    e[i] = 1
    e[i + 1] = 1
    want = {tuple(e), (0,) * p.nvars}
    if set(p.terms) != want:
        return False
    return p.terms[tuple(e)] == p.field.one() and p.terms[(0,) * p.nvars] == -p.field.one()


def _extract_component(gb: list[Poly], names, fieldspec) -> TriangularComponent | None:
    """Try to read a triangular component off a Groebner basis; None if the
    basis is not in solved shape."""
    by_main: dict[int, Poly] = {}
    for p in gb:
        mv = p.main_variable()
        if mv is None:
            return None
        if mv in by_main:
            return None
        by_main[mv] = p
    nvars = gb[0].nvars
    free_pairs = []
    for i in range(0, nvars, 2):
        lo, hi = i, i + 1
        has_lo, has_hi = lo in by_main, hi in by_main
        if has_lo and not has_hi:
            if not _is_pair_relation(by_main[lo], lo):
                return None
            free_pairs.append((lo, hi))
    bound = set(by_main)
    for i in range(nvars):
        part_of_pair = any(i in pr for pr in free_pairs)
        if i not in bound and not part_of_pair:
            return None
    relations = [by_main[v] for v in sorted(by_main, reverse=True)]
    return TriangularComponent(relations, list(names), fieldspec, free_pairs, groebner=gb)


def triangular_decompose(ideal: NormIdeal, pair_budget: int = DEFAULT_PAIR_BUDGET,
                         degree_cap: int = DEFAULT_DEGREE_CAP) -> list[TriangularComponent]:
    """Recursive factor-and-branch decomposition over the base field.

    Branch on any certified factorization of a basis element; leaves are
    triangular components whose union covers the variety. Leaves are deduped,
    pruned when contained in another leaf, and each is verified to contain
    the original variety slice (every input generator reduces to zero)."""
    nonzero = [g for g in ideal.generators if not g.is_zero()]
    if not nonzero:
        # no constraints at all: one component spanning the whole space
        return [TriangularComponent([], ideal.names, ideal.field, [],
                                    groebner=[])]
    leaves: list[list[Poly]] = []

    def walk(gens: list[Poly], depth: int) -> None:
        if depth > 64:
            raise UnresolvedFactor("decomposition recursion too deep")
        gb = buchberger(gens, pair_budget, degree_cap)
        if not gb:
            return
        if any(p.is_constant() for p in gb):
            return  # empty variety
        for p in sorted(gb, key=lambda q: q.leading_monomial()):
            uv = p.univariate_in()
            if uv is not None:
                res = verified_univariate_factor(p.univariate_coeffs(uv), ideal.field,
                                                 floor=1, floor_values=ideal.defining_values)
                pieces = res.factors + res.unresolved
                if len(pieces) > 1 or (pieces and pieces[0][1] > 1 and len(res.unresolved) == 0):
                    if res.unresolved and res.factors:
                        raise UnresolvedFactor("partially resolved univariate in decomposition")
                    for fac, _mult in pieces:
                        fpoly = _univ_to_poly(fac, uv, p.nvars, ideal.field)
                        walk(gb + [fpoly], depth + 1)
                    return
                continue
            mf = _multivariate_factor(p)
            if mf is not None and (len(mf) > 1 or mf[0][1] > 1):
                for fac, _mult in mf:
                    walk(gb + [fac], depth + 1)
                return
        leaves.append(gb)

    walk(nonzero, 0)

    # dedupe identical bases
    uniq: list[list[Poly]] = []
    sigs = set()
    for gb in leaves:
        sig = tuple(sorted(hash(p) for p in gb))
        if sig not in sigs:
            sigs.add(sig)
            uniq.append(gb)
    # prune leaves whose variety is contained in another leaf
    budget = _Budget(pair_budget, degree_cap)
    keep = []
    for i, A in enumerate(uniq):
        redundant = False
        for j, B in enumerate(uniq):
            if i == j:
                continue
            b_in_a = all(q.reduce(A, budget).is_zero() for q in B)
            a_in_b = all(q.reduce(B, budget).is_zero() for q in A)
            if b_in_a and not a_in_b:
                redundant = True
                break
            if b_in_a and a_in_b and j < i:
                redundant = True
                break
        if not redundant:
            keep.append(A)
    comps = []
    for gb in keep:
        for g in ideal.generators:
            assert g.reduce(gb, budget).is_zero(), "leaf does not contain the variety slice"
        comp = _extract_component(gb, ideal.names, ideal.field)
        if comp is None:
            raise UnresolvedFactor("a branch did not reach triangular shape")
        comps.append(comp)
    comps.sort(key=lambda c: tuple(sorted(tuple(sorted(p.terms)) for p in c.groebner)))
    return comps


def _univ_to_poly(coeffs: list, var: int, nvars: int, fieldspec: FieldSpec) -> Poly:
    terms = {}
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            e = [0] * nvars
            e[var] = k
            terms[tuple(e)] = c
    return Poly(nvars, terms, fieldspec)


# -- solutions ----------------------------------------------------------------------


UNIT_WITNESS_NUM = CyclotomicNumber(4, {0: Fraction(3, 5), 1: Fraction(4, 5)})  # (3+4i)/5


@dataclass
class AlgebraicSolution:
    """One point (or witness on a parametric family) of the norm variety."""

    names: list[str]
    exact_values: list  # CyclotomicNumber | NumberFieldElement | None per variable
    balls: list[ComplexBall]
    conjugate_verified: bool
    parametric: bool
    free_pairs: list[tuple[int, int]]
    component: TriangularComponent
    minimal_polynomials: dict = field(default_factory=dict)

    def is_exact(self) -> bool:
        return all(v is not None for v in self.exact_values)

    def alpha(self) -> list:
        """Coefficient vector (alpha_1 = 1, alpha_2, ..., alpha_r)."""
        out = [ONE]
        for k in range(0, len(self.names), 2):
            out.append(self.exact_values[k] if self.exact_values[k] is not None
                       else self.balls[k])
        return out

    def residuals(self, generators: list[Poly], bits: int = 128) -> list[ComplexBall]:
        return [g.evaluate_ball(self.balls, bits) for g in generators]

    def to_json(self) -> dict:
        coords = []
        for name, ex, b in zip(self.names, self.exact_values, self.balls):
            entry = {"name": name,
                     "ball": [float(b.mid.real), float(b.mid.imag), float(b.rad)]}
            if isinstance(ex, CyclotomicNumber):
                entry["exact"] = ex.to_json()
            elif isinstance(ex, NumberFieldElement):
                entry["exact"] = ex.to_json()
            if name in self.minimal_polynomials:
                entry["minpoly"] = [c.to_json() for c in self.minimal_polynomials[name]]
            coords.append(entry)
        return {
            "coordinates": coords,
            "conjugate_verified": self.conjugate_verified,
            "parametric": self.parametric,
            "free_pairs": [[self.names[i], self.names[j]] for i, j in self.free_pairs],
        }


def enumerate_solutions(components: list[TriangularComponent], ideal: NormIdeal,
                        precision: int = 128) -> list[AlgebraicSolution]:
    """Back-substitute every component. Zero-dimensional branches yield all
    points (adjoining one simple extension where needed); parametric branches
    yield an exact unit witness on each free pair. The conjugate-pair filter
    is evaluated and recorded on every solution."""
    out = []
    for comp in components:
        out.extend(_solve_component(comp, ideal, precision))

    def _key(sol: AlgebraicSolution):
        return tuple((mpmath.nstr(b.mid.real, 16), mpmath.nstr(b.mid.imag, 16))
                     for b in sol.balls)

    out.sort(key=_key)
    return out


def _solve_component(comp: TriangularComponent, ideal: NormIdeal,
                     precision: int) -> list[AlgebraicSolution]:
    nvars = len(comp.names)
    free_vars = {v for pr in comp.free_pairs for v in pr}
    partial: list[tuple[dict, FieldSpec]] = [({}, comp.field)]
    for i, j in comp.free_pairs:
        for assign, _f in partial:
            assign[i] = UNIT_WITNESS_NUM
            assign[j] = UNIT_WITNESS_NUM.conjugate()

    for rel in comp.relations:  # deepest variable first
        mv = rel.main_variable()
        if mv in free_vars:
            continue  # the pair relation itself; both endpoints already set
        nxt = []
        for assign, fld in partial:
            p = rel
            for v, val in assign.items():
                if v in p.variables_used():
                    p = p.substitute(v, fld.promote(val) if not isinstance(val, NumberFieldElement) else val)
            if p.field is not fld:
                p = p.map_coefficients(fld.promote, fld) if fld.is_extension else p
            uv = p.univariate_in()
            if p.is_zero():
                raise UnresolvedFactor("relation degenerates to zero under substitution")
            if uv is None or uv != mv:
                raise UnresolvedFactor("relation not univariate after substitution")
            coeffs = _trim([fld.promote(c) if isinstance(c, (int, Fraction, CyclotomicNumber)) else c
                            for c in p.univariate_coeffs(uv)])
            if len(coeffs) == 2:
                val = -(coeffs[0] * coeffs[1].inverse())
                new = dict(assign)
                new[mv] = val
                nxt.append((new, fld))
                continue
            if fld.is_extension:
                raise UnresolvedFactor("nested extensions are out of scope")
            res = verified_univariate_factor(coeffs, fld, floor=1,
                                             floor_values=ideal.defining_values)
            if res.unresolved:
                raise UnresolvedFactor("uncertified factor while enumerating")
            for fac, _m in res.factors:
                if len(fac) == 2:
                    val = -(fac[0] * fac[1].inverse())
                    new = dict(assign)
                    new[mv] = val
                    nxt.append((new, fld))
                else:
                    for hint in _numeric_roots(fac, fld, precision):
                        ext = fld.extend(tuple(fac), hint, certified=True)
                        theta = ext.generator()
                        new = {k: (v if isinstance(v, NumberFieldElement) else v)
                               for k, v in assign.items()}
                        new[mv] = theta
                        nxt.append((new, ext))
        partial = nxt

    sols = []
    for assign, fld in partial:
        exact = []
        balls = []
        for v in range(nvars):
            val = assign[v]
            exact.append(val)
            balls.append(val.embed(precision))
        conj_ok = _conjugate_check(exact, balls, precision)
        minpolys = {}
        for v in range(nvars):
            if isinstance(exact[v], CyclotomicNumber):
                minpolys[comp.names[v]] = [-exact[v], ONE]
            else:
                minpolys[comp.names[v]] = list(exact[v].minimal_polynomial())
        sols.append(AlgebraicSolution(comp.names, exact, balls, conj_ok,
                                      comp.dimension > 0, comp.free_pairs, comp,
                                      minpolys))
    return sols


def _numeric_roots(coeffs: list, fld: FieldSpec, precision: int):
    wp = precision + 32
    with mpmath.workprec(wp):
        poly = [c.embed(wp).mid for c in reversed(coeffs)]
        roots = mpmath.polyroots(poly, maxsteps=200, extraprec=wp)
        return [complex(r) for r in roots]


def _conjugate_check(exact: list, balls: list[ComplexBall], precision: int) -> bool:
    """Check a_ic = conj(a_i) per pair: exactly for cyclotomic pairs, by
    certified balls otherwise (sound rejection; acceptance at ball radius)."""
    for k in range(0, len(exact), 2):
        a, ac = exact[k], exact[k + 1]
        if isinstance(a, CyclotomicNumber) and isinstance(ac, CyclotomicNumber):
            if ac != a.conjugate():
                return False
            continue
        d = balls[k + 1] - balls[k].conjugate()
        if d.is_nonzero():
            return False
        with mpmath.workprec(precision + 16):
            if d.rad > mpmath.mpf(2) ** (-(precision // 2)):
                from .errors import PrecisionInsufficient

                raise PrecisionInsufficient("conjugacy test needs more precision")
    return True


# -- minimal polynomials over a coefficient subfield ----------------------------------


def _galois_group_elements(L: int, d: int) -> list[int]:
    """Exponents j with zeta_L -> zeta_L^j fixing Q(zeta_d)."""
    return [j for j in range(1, L + 1)
            if math.gcd(j, L) == 1 and (j % d == 1 % d if d > 1 else True)]


def minimal_polynomial_over(value, d: int, precision: int = 192) -> list[CyclotomicNumber]:
    """Monic minimal polynomial over Q(zeta_d) of an exact value (cyclotomic
    or one-step extension element with a pinned embedding).

    The Galois-orbit product supplies a Q(zeta_d)-polynomial vanishing at the
    value; certified factorization plus ball separation then isolates the
    irreducible factor. Returned coefficients lie in Q(zeta_d)."""
    if isinstance(value, CyclotomicNumber):
        M = value.minimal_order()
        L = _lcm(M, d)
        lifted = value.lift(L) if L != M else value
        orbit = {}
        for j in _galois_group_elements(L, d):
            w = lifted.galois(j)
            orbit[_coeff_key(w)] = w
        coeffs = [ONE]
        for w in orbit.values():
            coeffs = _mul_univ(coeffs, [-w, ONE], FieldSpec(L))
        return [_into_subfield(c, d) for c in coeffs]

    base = value.base_order
    p_K = list(value.minimal_polynomial())
    L = _lcm(base, d)
    images = {}
    for j in _galois_group_elements(L, d):
        img = tuple(c.lift(L).galois(j) for c in p_K)
        images[tuple(_coeff_key(c) for c in img)] = img
    prod = [ONE]
    for img in images.values():
        prod = _mul_univ(prod, list(img), FieldSpec(L))
    prod_d = [_into_subfield(c, d) for c in prod]
    res = verified_univariate_factor(prod_d, FieldSpec(d))
    if res.unresolved:
        raise UnresolvedFactor("cannot certify factors of the norm product")
    candidates = [f for f, _m in res.factors]
    bits = precision
    while bits <= 4096:
        vball = value.embed(bits)
        hits = []
        for f in candidates:
            acc = ComplexBall(0, 0, bits)
            for c in reversed(f):
                acc = acc * vball + c.embed(bits)
            hits.append(not acc.is_nonzero())
        if sum(hits) == 1:
            return candidates[hits.index(True)]
        bits *= 2
    raise UnresolvedFactor("could not separate the vanishing factor numerically")


def _into_subfield(c: CyclotomicNumber, d: int) -> CyclotomicNumber:
    m = c.minimal_order()
    cc = c._canonical()
    if d % m == 0:
        return cc.lift(d) if d != m else cc
    if m % 4 != 2 and d % (2 * m) == 0:
        return cc.lift(d)
    raise UnresolvedFactor(f"coefficient of order {m} does not lie in Q(zeta_{d})")
