"""The five-step classification pipeline: cover, characters, centraliser
basis, algebra character table (exact, cross-validated numerically), norm
ideal, solutions, and verified Hadamard matrices."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from . import __version__
from .chartable import (AlgebraCharacterTable, cross_validate, ct_exact,
                        ct_numeric, minimal_field_order)
from .cyclo import ComplexBall, CyclotomicNumber, NumberFieldElement
from .errors import (CentalgError, CoverUnavailable, EigenvalueCollision,
                     NotCommutative, NotTransitive, PrecisionInsufficient,
                     ResourceBudgetExceeded, UnresolvedFactor)
from .extension import (CentralExtension, Cocycle, MonomialCover, cocycle_space,
                        extension_from_cocycle, H2_GROUP_BOUND)
from .hadamard import assemble, is_complex_hadamard, monomially_equivalent
from .induce import centraliser_basis, centraliser_basis_from_generators, \
    induce_representation
from .perm import (DoubleCosetDecomposition, PermGroup, commutator_subgroup,
                   point_stabiliser)
from .solve import (build_norm_ideal, enumerate_solutions, minimal_polynomial_over,
                    triangular_decompose)
from .structure import character_table_dixon, linear_characters


@dataclass
class CharacterResult:
    index: int
    character_order: int
    central_order: int
    rank: int
    commutative: bool
    subdegrees: list[int]
    field_order: int | None = None
    table: AlgebraCharacterTable | None = None
    component_count: int = 0
    component_dims: list[int] = field(default_factory=list)
    solutions: list = field(default_factory=list)
    minimal_polynomials: list = field(default_factory=list)  # per solution
    hadamard_verified: list = field(default_factory=list)
    skipped: str | None = None

    def to_json(self) -> dict:
        out = {
            "index": self.index,
            "character_order": self.character_order,
            "central_order": self.central_order,
            "rank": self.rank,
            "commutative": self.commutative,
            "subdegrees": self.subdegrees,
            "field_order": self.field_order,
            "component_count": self.component_count,
            "component_dims": self.component_dims,
            "solutions": [s.to_json() for s in self.solutions],
            "minimal_polynomials": [[[c.to_json() for c in mp] for mp in sol]
                                    for sol in self.minimal_polynomials],
            "hadamard_verified": self.hadamard_verified,
        }
        if self.table is not None:
            out["table"] = self.table.to_json()
        if self.skipped:
            out["skipped"] = self.skipped
        return out


@dataclass
class ClassificationReport:
    group_name: str
    degree: int
    group_order: int
    route: str
    completeness: bool
    subdegrees: list[int]
    characters: list[CharacterResult]
    precision: int
    seed: int

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "group": self.group_name,
            "degree": self.degree,
            "group_order": self.group_order,
            "route": self.route,
            "completeness": self.completeness,
            "subdegrees": self.subdegrees,
            "precision": self.precision,
            "seed": self.seed,
            "characters": [c.to_json() for c in self.characters],
        }

    @property
    def exit_status(self) -> int:
        return 2 if any(c.skipped for c in self.characters) else 0


def is_perfect(G: PermGroup) -> bool:
    return commutator_subgroup(G).order == G.order


def _character_d(chi) -> int:
    return chi.order()


def run_character(G_deg: int, group: PermGroup, H: PermGroup, chi, table_G,
                  index: int, central_order: int, precision: int, seed: int,
                  subdegrees: list[int]) -> CharacterResult:
    """One character through basis, tables, norm system, and verification."""
    rep = induce_representation(group, H, chi)
    dc = DoubleCosetDecomposition(group, H, rep.transversal)
    basis = centraliser_basis(rep, dc)
    result = CharacterResult(index, _character_d(chi), central_order,
                             basis.rank, basis.commutative, subdegrees)
    if not basis.commutative:
        result.skipped = "non-commutative centraliser algebra"
        return result
    act = ct_exact(basis, table_G, dc)
    result.table = act
    result.field_order = act.field_order
    num = ct_numeric(basis, bits=max(precision, 128), seed=seed)
    if not cross_validate(act, num):
        raise CentalgError("numeric character table does not match the exact table")
    ideal = build_norm_ideal(act, G_deg)
    comps = triangular_decompose(ideal)
    result.component_count = len(comps)
    result.component_dims = [c.dimension for c in comps]
    sols = enumerate_solutions(comps, ideal, precision)
    kept = [s for s in sols if s.conjugate_verified]
    result.solutions = kept
    for s in kept:
        mats = assemble(basis, _alpha_for_assembly(s, precision))
        result.hadamard_verified.append(is_complex_hadamard(mats, bits=precision))
        polys = []
        d = _character_d(chi)
        for k in range(0, len(s.names), 2):
            val = s.exact_values[k]
            if val is None:
                polys.append(None)
                continue
            polys.append(minimal_polynomial_over(val, d, precision))
        result.minimal_polynomials.append(polys)
    return result


def _alpha_for_assembly(sol, precision: int):
    alpha = sol.alpha()
    if all(not isinstance(a, ComplexBall) for a in alpha) and \
            all(not isinstance(a, NumberFieldElement) for a in alpha):
        return alpha
    return [a if isinstance(a, ComplexBall)
            else a.embed(precision) if isinstance(a, NumberFieldElement)
            else a.embed(precision)
            for a in alpha]


def classify(group: PermGroup, name: str = "", cover: MonomialCover | None = None,
             characters=None, precision: int = 128, seed: int = 0,
             h2_limit: int = 64, max_group_order: int = 100_000) -> ClassificationReport:
    """Classify the complex Hadamard matrices in the centraliser algebras of
    the monomial covers of a transitive permutation group."""
    if not group.is_transitive():
        raise NotTransitive("classification needs a transitive group")
    if group.order > max_group_order:
        raise CentalgError("group exceeds the configured order bound")
    H = point_stabiliser(group, 1)
    dc = DoubleCosetDecomposition(group, H)
    subdegrees = [s // H.order for s in dc.sizes]
    results: list[CharacterResult] = []

    def run_with(Ghat: PermGroup, Hhat: PermGroup, central_order_of, route_label):
        table_G = character_table_dixon(Ghat, seed=seed)
        chars = linear_characters(Hhat)
        for idx, chi in enumerate(chars):
            if characters is not None and idx not in characters:
                continue
            central = central_order_of(chi)
            if route_label != "split" and central == 1:
                # factors through the base group; the split route covers it
                continue
            try:
                results.append(run_character(group.degree, Ghat, Hhat, chi, table_G,
                                             len(results), central, precision, seed,
                                             subdegrees))
            except (ResourceBudgetExceeded, PrecisionInsufficient, UnresolvedFactor,
                    EigenvalueCollision, NotCommutative) as exc:
                res = CharacterResult(len(results), chi.order(), central, 0, False,
                                      subdegrees)
                res.skipped = f"{type(exc).__name__}: {exc}"
                results.append(res)

    if cover is not None:
        Ghat = cover.permutation_group()
        Hhat, verbatim_chi = cover.block_character_data(Ghat)
        gauge_basis = centraliser_basis_from_generators(cover.generator_matrices())
        rep = induce_representation(Ghat, Hhat, verbatim_chi)
        route_basis = centraliser_basis(rep)
        assert gauge_basis.rank == route_basis.rank, \
            "cover route and induced route disagree on the centraliser rank"
        n = cover.degree

        def central_of(chi):
            # order of chi on the scalar generator block
            scal = next((g for g in Hhat.elements
                         if g(0) // n == 1 and g(0) % n == 0 and
                         all(g(i) % n == i for i in range(n))), None)
            if scal is None:
                return chi.order()
            return chi(scal).root_order() if not chi(scal).is_zero() else 1

        run_with(Ghat, Hhat, central_of, "cover")
        completeness = is_perfect(group) and is_perfect(Ghat)
        route = "cover"
    else:
        run_with(group, H, lambda chi: 1, "split")
        route = "split"
        completeness = False
        if group.order <= H2_GROUP_BOUND:
            space = cocycle_space(group, group.degree)
            if space.h2_order > h2_limit:
                raise CoverUnavailable(
                    f"H^2 has {space.h2_order} classes; supply a cover file")
            reps = space.class_representatives(h2_limit)
            for psi in reps[1:]:  # trivial class = split route above
                ext = extension_from_cocycle(group, psi)
                Ghat = ext.permutation_group()
                n = group.order

                def central_of(chi, _n=n, _G=group):
                    scal = next(g for g in Ghat.elements
                                if g(0) == _n)  # the element (1, identity)
                    v = chi(scal)
                    return v.root_order()

                Hfilter = [g for g in Ghat.elements
                           if H.contains(group.elements[g(0) % n])]
                Hhat = PermGroup.from_elements(Ghat.degree, Hfilter)
                run_with(Ghat, Hhat, central_of, "h2")
            route = "h2"
            completeness = True
    return ClassificationReport(name, group.degree, group.order, route,
                                completeness, subdegrees, results, precision, seed)
