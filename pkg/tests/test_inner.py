import random
from fractions import Fraction

import pytest

from leavitt import (
    AlgebraConfig,
    DerivationSpec,
    Element,
    ObstructionVerdict,
    ad,
    build_witness_problem,
    check_relations,
    classify_by_obstruction,
    complete_from_edge_values,
    enumerate_basis,
    find_inner_witness,
    obstruction_coefficients,
    parse_element,
)
from leavitt.linsolve import solve_linear_system
from conftest import random_element

C1 = AlgebraConfig(1)
C2 = AlgebraConfig(2)
C3 = AlgebraConfig(3)


def ddt():
    return complete_from_edge_values(C1, [Element.unit(C1)])


def test_ad_of_the_vertex_vanishes():
    spec = ad(C2, Element.unit(C2))
    assert all(spec.value(g).is_zero() for g in C2.generators())


def test_ad_commutator_values():
    spec = ad(C2, parse_element("e1", C2))
    assert spec.value(2) == parse_element("e1 e2 - e2 e1", C2)
    assert spec.value(1).is_zero()
    assert spec.value(-1) == parse_element("-e2 e2'", C2)


def test_single_loop_algebra_is_commutative():
    for m in enumerate_basis(C1, 6):
        spec = ad(C1, Element.monomial(C1, m))
        assert all(spec.value(g).is_zero() for g in C1.generators())


def test_ad_is_a_derivation_on_random_elements():
    rng = random.Random(3)
    for cfg in (C1, C2, C3):
        for _ in range(15):
            lam = random_element(rng, cfg, max_word_len=5)
            assert check_relations(ad(cfg, lam)).empty


def test_ad_is_linear():
    rng = random.Random(13)
    lam = random_element(rng, C2)
    mu = random_element(rng, C2)
    a, b = Fraction(2), Fraction(-7, 3)
    left = ad(C2, a * lam + b * mu)
    for g in C2.generators():
        assert left.value(g) == a * ad(C2, lam).value(g) + b * ad(C2, mu).value(g)


def test_trivial_word_obstructions_vanish_on_commutators():
    # The length-2 scalars (index word e1 e1) cancel identically in
    # ad of every basis monomial, hence by linearity in every commutator.
    for cfg in (C2, C3):
        for m in enumerate_basis(cfg, 4)[1:]:
            spec = ad(cfg, Element.monomial(cfg, m))
            report = obstruction_coefficients(spec, include_trivial_p=True)
            assert not [e for e in report if len(e.word) == 2], m


def test_longer_obstruction_words_do_occur_on_commutators():
    # ad(e1 e2) is inner by construction, yet its value on e1 is the
    # basis path difference e1 e2 e1 - e1 e1 e2, so the scan flags it.
    spec = ad(C2, parse_element("e1 e2", C2))
    report = obstruction_coefficients(spec, include_trivial_p=False)
    assert [(e.family, e.generator, e.word, e.value) for e in report] \
        == [("beta", 1, (1, 2, 1), Fraction(1))]
    witness = find_inner_witness(spec, 2)
    assert witness is not None and ad(C2, witness) == spec


def test_laurent_derivative_obstruction_entry():
    report = obstruction_coefficients(ddt(), include_trivial_p=True)
    assert [(e.family, e.generator, e.word, e.value) for e in report] \
        == [("gamma", -1, (1, 1), Fraction(-1))]
    assert obstruction_coefficients(ddt(), include_trivial_p=False).empty


def test_zero_derivation_has_no_obstructions():
    assert obstruction_coefficients(DerivationSpec.zero(C2)).empty


def test_classification():
    assert classify_by_obstruction(ad(C2, parse_element("e1 e2'", C2))) \
        is ObstructionVerdict.INNER_BY_VANISHING
    assert classify_by_obstruction(ddt(), include_trivial_p=True) \
        is ObstructionVerdict.OUTER_BY_OBSTRUCTION
    assert classify_by_obstruction(DerivationSpec.zero(C1)) \
        is ObstructionVerdict.INNER_BY_VANISHING


def test_classification_rejects_non_derivations():
    broken = DerivationSpec(C1, [Element.unit(C1)],
                            [parse_element("e1' e1'", C1)])
    with pytest.raises(ValueError, match="violate"):
        classify_by_obstruction(broken)
    with pytest.raises(ValueError, match="violate"):
        find_inner_witness(broken, 2)


def test_witness_for_a_generator_commutator():
    spec = ad(C2, parse_element("e1", C2))
    witness = find_inner_witness(spec, 1)
    assert witness == parse_element("e1", C2)


def test_witness_roundtrip_on_random_inner_derivations():
    rng = random.Random(29)
    for cfg in (C2, C3):
        basis = enumerate_basis(cfg, 3)[1:]
        for _ in range(8):
            lam = Element(cfg, [
                (rng.choice(basis), Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
                for _ in range(rng.randint(1, 3))])
            spec = ad(cfg, lam)
            witness = find_inner_witness(spec, max(1, lam.max_word_length()))
            assert witness is not None
            assert ad(cfg, witness) == spec


def test_witness_has_no_vertex_component():
    lam = Element.unit(C2) + parse_element("e2", C2)
    witness = find_inner_witness(ad(C2, lam), 1)
    assert witness == parse_element("e2", C2)


def test_no_witness_for_the_laurent_derivative():
    for bound in (2, 4, 6):
        assert find_inner_witness(ddt(), bound) is None


def test_zero_derivation_witness_is_zero():
    witness = find_inner_witness(DerivationSpec.zero(C2), 3)
    assert witness is not None and witness.is_zero()


def test_witness_problem_shape_and_direct_solve():
    spec = ad(C2, parse_element("e1 - 2*e2'", C2))
    problem = build_witness_problem(spec, 2)
    assert all(m.kind != "vertex" for m in problem.columns)
    assert len(problem.rows) == len(problem.rhs) == len(problem.row_labels)
    solution = solve_linear_system(problem.rows, problem.rhs, len(problem.columns))
    assert solution is not None
    witness = Element(spec.cfg, [
        (problem.columns[c], x) for c, x in enumerate(solution) if x])
    assert ad(spec.cfg, witness) == spec


def test_witness_problem_direct_solve_agrees_on_inconsistency():
    problem = build_witness_problem(ddt(), 4)
    assert solve_linear_system(problem.rows, problem.rhs, len(problem.columns)) is None


def test_witness_requires_positive_bound():
    with pytest.raises(ValueError, match="max_len"):
        find_inner_witness(DerivationSpec.zero(C1), 0)
