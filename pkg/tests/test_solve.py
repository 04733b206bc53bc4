from fractions import Fraction

import mpmath
import pytest

from centalg.chartable import AlgebraCharacterTable, ct_exact
from centalg.cyclo import CyclotomicNumber as Cyc, ONE, ZERO
from centalg.induce import centraliser_basis, induce_representation
from centalg.perm import PermGroup, point_stabiliser
from centalg.solve import (FieldSpec, Poly, build_norm_ideal, buchberger,
                           enumerate_solutions, minimal_polynomial_over,
                           triangular_decompose, verified_univariate_factor)
from centalg.structure import character_table_dixon, linear_characters
from tests.groups import frobenius21, frobenius80, klein_four


def table_from_rows(rows, mults):
    return AlgebraCharacterTable(None, rows, mults, exact=True,
                                 field_order=None)


def klein_table():
    q = Cyc.from_rational
    rows = [[q(1), q(1), q(1), q(1)],
            [q(1), q(-1), q(1), q(-1)],
            [q(1), q(1), q(-1), q(-1)],
            [q(1), q(-1), q(-1), q(1)]]
    return table_from_rows(rows, [1, 1, 1, 1])


def c7c3_pipeline():
    G = frobenius21()
    H = point_stabiliser(G, 1)
    CT = character_table_dixon(G)
    chi = linear_characters(H)[1]
    rep = induce_representation(G, H, chi)
    basis = centraliser_basis(rep)
    return ct_exact(basis, CT), basis


# -- norm ideal -------------------------------------------------------------------


def test_build_norm_ideal_klein():
    ideal = build_norm_ideal(klein_table(), 4)
    assert len(ideal.generators) == 7
    assert ideal.names == ["a2", "a2c", "a3", "a3c", "a4", "a4c"]
    # P_i = a_i a_ic - 1 appear verbatim
    texts = {g.pretty(ideal.names) for g in ideal.generators}
    assert "(1)*a2*a2c + (-1)" in texts
    assert "(1)*a3*a3c + (-1)" in texts
    assert "(1)*a4*a4c + (-1)" in texts
    # each Q has constant term 1*1 - 4 = -3
    zero_exp = (0,) * 6
    q_consts = [g.terms.get(zero_exp) for g in ideal.generators
                if len(g.terms) > 2]
    assert all(c == -3 for c in q_consts) and len(q_consts) == 4


def test_build_norm_ideal_rank2():
    q = Cyc.from_rational
    T = table_from_rows([[q(1), q(1)], [q(1), q(-1)]], [1, 1])
    ideal = build_norm_ideal(T, 2)
    assert len(ideal.generators) == 3
    comps = triangular_decompose(ideal)
    sols = enumerate_solutions(comps, ideal, 128)
    kept = [s for s in sols if s.conjugate_verified]
    assert len(kept) == 2
    # alpha_2 = +-i: over the rational field of definition these arrive as
    # degree-2 extension elements; identify them by minimal polynomial and
    # certified embedding
    hit = set()
    for s in kept:
        v = s.exact_values[0]
        mp = minimal_polynomial_over(v, 1)
        assert [c.as_rational() for c in mp] == [1, 0, 1]  # x^2 + 1
        ball = s.balls[0]
        for sign in (1, -1):
            if ball.contains(mpmath.mpc(0, sign)):
                hit.add(sign)
    assert hit == {1, -1}


def test_build_norm_ideal_rank1():
    T = table_from_rows([[ONE]], [1])
    ideal = build_norm_ideal(T, 1)
    assert len(ideal.generators) == 1 and ideal.generators[0].is_zero()
    comps = triangular_decompose(ideal)
    # consistent system with no variables: a single empty component
    assert len(comps) == 1 and comps[0].dimension == 0
    # inconsistent 1x1 case: lambda norm cannot equal 2
    T2 = table_from_rows([[ONE]], [1])
    bad = build_norm_ideal(T2, 2)
    assert triangular_decompose(bad) == []


# -- buchberger -------------------------------------------------------------------


def test_buchberger_linear():
    F = FieldSpec(1)
    x = Poly.variable(2, 0, F)  # y > x ordering: index 0 is higher
    y = Poly.variable(2, 1, F)
    one = Poly.constant(2, 1, F)
    # <y - 1, x - y> in variables (x higher than y): use index 0 = x
    gb = buchberger([y - one, x - y])
    texts = sorted(p.pretty(["x", "y"]) for p in gb)
    assert texts == ["(1)*x + (-1)", "(1)*y + (-1)"]


def test_buchberger_principal():
    F = FieldSpec(1)
    x = Poly.variable(1, 0, F)
    p = (x * x + Poly.constant(1, 3, F)).scale(Fraction(2))
    gb = buchberger([p])
    assert len(gb) == 1 and gb[0].leading_coeff() == 1


def test_buchberger_order_independence():
    # reducing one run's basis by another run's basis gives zero
    act, _ = c7c3_pipeline()
    ideal = build_norm_ideal(act, 7)
    gb1 = buchberger(ideal.generators)
    gb2 = buchberger(list(reversed(ideal.generators)))
    for p in gb1:
        assert p.reduce(gb2).is_zero()
    for p in gb2:
        assert p.reduce(gb1).is_zero()


# -- factorization ----------------------------------------------------------------


def test_verified_factor_over_extension_field():
    F4 = FieldSpec(4)
    res = verified_univariate_factor([ONE, ZERO, ONE], F4)  # x^2 + 1
    assert len(res.factors) == 2
    roots = {(-f[0]) for f, _ in res.factors}
    assert roots == {Cyc.zeta(4), Cyc.zeta(4, 3)}
    res_q = verified_univariate_factor([ONE, ZERO, ONE], FieldSpec(1))
    assert len(res_q.factors) == 1 and len(res_q.factors[0][0]) == 3


def test_verified_factor_table1_n7_poly():
    # x^2 + (3/2) x + 1 irreducible over Q(zeta_3)
    F3 = FieldSpec(3)
    res = verified_univariate_factor(
        [ONE, Cyc.from_rational(Fraction(3, 2)), ONE], F3)
    assert res.factors == [([ONE, Cyc.from_rational(Fraction(3, 2)), ONE], 1)]
    assert not res.unresolved


def test_verified_factor_multiplicities():
    F = FieldSpec(1)

    def mul(a, b):
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return out

    pol = mul(mul([-ONE, ONE], [-ONE, ONE]), [ONE, ONE])  # (x-1)^2 (x+1)
    res = verified_univariate_factor(pol, F)
    assert sorted((len(f) - 1, m) for f, m in res.factors) == [(1, 1), (1, 2)]


# -- decomposition: the Klein system ------------------------------------------------


def klein_expected_components(field):
    """The six circle components, as generator lists."""
    F = field
    n = 6

    def var(i):
        return Poly.variable(n, i, F)

    def const(c):
        return Poly.constant(n, c, F)

    a2, a2c, a3, a3c, a4, a4c = (var(i) for i in range(6))
    J = [a2 - const(1), a2c - const(1), a3 + a4, a3c + a4c, a4 * a4c - const(1)]
    perm23 = [a3 - const(1), a3c - const(1), a2 + a4, a2c + a4c, a4 * a4c - const(1)]
    perm24 = [a4 - const(1), a4c - const(1), a2 + a3, a2c + a3c, a3 * a3c - const(1)]
    tw2 = [a2 + const(1), a2c + const(1), a3 - a4, a3c - a4c, a4 * a4c - const(1)]
    tw3 = [a3 + const(1), a3c + const(1), a2 - a4, a2c - a4c, a4 * a4c - const(1)]
    tw4 = [a4 + const(1), a4c + const(1), a2 - a3, a2c - a3c, a3 * a3c - const(1)]
    return {"J": J, "perm23": perm23, "perm24": perm24,
            "tw2": tw2, "tw3": tw3, "tw4": tw4}


def same_ideal(gens_a, basis_b):
    return all(g.reduce(basis_b).is_zero() for g in gens_a)


def test_klein_decomposition():
    ideal = build_norm_ideal(klein_table(), 4)
    comps = triangular_decompose(ideal)
    assert len(comps) == 6
    assert all(c.dimension == 1 for c in comps)
    expected = klein_expected_components(ideal.field)
    matched = {}
    for name, gens in expected.items():
        hit = [c for c in comps
               if same_ideal(gens, c.groebner)
               and all(p.reduce(buchberger(gens)).is_zero() for p in c.groebner)]
        assert len(hit) == 1, f"component {name} not matched exactly once"
        matched[name] = hit[0]
    assert len({id(c) for c in matched.values()}) == 6


def test_klein_solutions_verify():
    ideal = build_norm_ideal(klein_table(), 4)
    comps = triangular_decompose(ideal)
    sols = enumerate_solutions(comps, ideal, 128)
    assert len(sols) == 6
    for s in sols:
        assert s.parametric and s.conjugate_verified
        # exact witness satisfies every generator exactly
        for g in ideal.generators:
            assert g.evaluate(s.exact_values).is_zero()


# -- zero-dimensional: C7:C3 ---------------------------------------------------------


def test_c7c3_solutions():
    act, basis = c7c3_pipeline()
    ideal = build_norm_ideal(act, 7)
    comps = triangular_decompose(ideal)
    sols = enumerate_solutions(comps, ideal, 128)
    kept = [s for s in sols if s.conjugate_verified]
    assert len(kept) == 4
    g = Cyc.gauss_sum(7)
    u = (-3 + g) / 4
    uc = (-3 - g) / 4
    points = {tuple(s.exact_values[k] for k in (0, 2)) for s in kept}
    assert points == {(u, ONE), (uc, ONE), (ONE, u), (ONE, uc)}
    dropped = [s for s in sols if not s.conjugate_verified]
    assert dropped, "the conjugate filter must have a negative case here"


def test_minimal_polynomial_over_subfields():
    g = Cyc.gauss_sum(7)
    u = (-3 + g) / 4
    mp3 = minimal_polynomial_over(u, 3)
    assert [c.as_rational() for c in mp3] == [Fraction(1), Fraction(3, 2), Fraction(1)]
    mp1 = minimal_polynomial_over(u, 1)
    assert [c.as_rational() for c in mp1] == [Fraction(1), Fraction(3, 2), Fraction(1)]
    # value already in Q(zeta_7): linear over Q(zeta_7)
    mp7 = minimal_polynomial_over(u, 7)
    assert len(mp7) == 2 and mp7[1] == 1 and mp7[0] == -u


def test_solution_export():
    act, basis = c7c3_pipeline()
    ideal = build_norm_ideal(act, 7)
    comps = triangular_decompose(ideal)
    sols = enumerate_solutions(comps, ideal, 128)
    data = sols[0].to_json()
    assert "coordinates" in data and "conjugate_verified" in data
    assert all("ball" in c for c in data["coordinates"])
