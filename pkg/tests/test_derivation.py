import json
import random
from fractions import Fraction

import pytest

from leavitt import (
    AlgebraConfig,
    BasisMonomial,
    DerivationSpec,
    Element,
    check_coefficient_equations,
    check_relations,
    coefficients,
    complete_from_dual_values,
    complete_from_edge_values,
    derivation_from_dict,
    extend,
    load_derivation_file,
    parse_element,
)
from conftest import random_derivation, random_element

C1 = AlgebraConfig(1)
C2 = AlgebraConfig(2)
C3 = AlgebraConfig(3)


def ddt():
    """The loop-count-one derivation with D(e) = v (d/dt on Laurent series)."""
    return complete_from_edge_values(C1, [Element.unit(C1)])


def test_completion_reproduces_the_laurent_derivative():
    spec = ddt()
    assert spec.value(-1) == parse_element("-e1' e1'", C1)
    assert check_relations(spec).empty


def test_dual_side_completion_reproduces_the_inverse_derivative():
    spec = complete_from_dual_values(C1, [Element.unit(C1)])
    assert spec.value(1) == parse_element("-e1 e1", C1)
    assert check_relations(spec).empty


def test_two_loop_scalar_completion():
    a1, a2 = Fraction(2), Fraction(-3)
    spec = complete_from_edge_values(
        C2, [a1 * Element.unit(C2), a2 * Element.unit(C2)])
    assert spec.value(-1) == -a1 * parse_element("e1' e1'", C2) \
        - a2 * parse_element("e1' e2'", C2)
    assert spec.value(-2) == -a1 * parse_element("e2' e1'", C2) \
        - a2 * parse_element("e2' e2'", C2)


def test_completion_satisfies_relations_for_random_values():
    rng = random.Random(11)
    for cfg in (C1, C2, C3):
        for _ in range(25):
            values = [random_element(rng, cfg) for _ in cfg.edge_indices()]
            assert check_relations(complete_from_edge_values(cfg, values)).empty
            assert check_relations(complete_from_dual_values(cfg, values)).empty


def test_extend_examples():
    spec = ddt()
    assert extend(spec, parse_element("e1'", C1)) == parse_element("-e1' e1'", C1)
    assert extend(spec, parse_element("v", C1)).is_zero()
    assert extend(spec, parse_element("e1 e1", C1)) == parse_element("2*e1", C1)


def test_extend_is_linear():
    rng = random.Random(23)
    spec = random_derivation(rng, C2)
    a = random_element(rng, C2)
    b = random_element(rng, C2)
    c = Fraction(5, 3)
    assert extend(spec, a + c * b) == extend(spec, a) + c * extend(spec, b)


def test_extend_satisfies_leibniz_on_random_pairs():
    rng = random.Random(31)
    for cfg in (C1, C2, C3):
        for _ in range(8):
            spec = random_derivation(rng, cfg)
            for _ in range(5):
                a = random_element(rng, cfg)
                b = random_element(rng, cfg)
                left = extend(spec, a * b)
                right = extend(spec, a) * b + a * extend(spec, b)
                assert left == right


def flipped_sign_spec():
    return DerivationSpec(C1, [Element.unit(C1)], [parse_element("e1' e1'", C1)])


def test_extend_refuses_broken_specs():
    spec = flipped_sign_spec()
    with pytest.raises(ValueError, match="not well defined"):
        extend(spec, parse_element("e1", C1))
    # unchecked mode still folds, for diagnostics
    assert extend(spec, parse_element("e1", C1), unchecked=True) == Element.unit(C1)


def test_check_relations_flags_the_flipped_sign():
    report = check_relations(flipped_sign_spec())
    assert not report.empty
    by_eq = {(v.equation, v.indices): v.residual for v in report}
    residual = by_eq[("rel-dual-edge", (1, 1))]
    assert residual == 2 * parse_element("e1'", C1)


def test_check_relations_accepts_zero():
    assert check_relations(DerivationSpec.zero(C3)).empty
    assert check_coefficient_equations(DerivationSpec.zero(C3)).empty


def test_coefficient_table_buckets():
    a1, a2 = Fraction(1), Fraction(4)
    spec = complete_from_edge_values(
        C2, [a1 * Element.unit(C2), a2 * Element.unit(C2)])
    table = coefficients(spec)
    assert table.alpha_v(1) == a1
    assert table.alpha_v(2) == a2
    assert table.gamma_p(-1, (1, 1)) == -a1
    assert table.gamma_p(-1, (2, 1)) == -a2
    assert table.gamma_p(-2, (1, 2)) == -a1
    assert table.beta_p(1, (1,)) == 0
    assert table.rho_wh(1, (1,), (2,)) == 0


def test_coefficient_table_single_loop_edge_value():
    spec = complete_from_edge_values(C1, [parse_element("e1", C1)])
    table = coefficients(spec)
    assert table.beta_p(1, (1,)) == 1
    assert table.gamma_p(-1, (1,)) == -1


def test_coefficient_equations_hold_for_random_completions():
    rng = random.Random(47)
    for cfg in (C1, C2, C3):
        for _ in range(15):
            spec = random_derivation(rng, cfg)
            assert check_coefficient_equations(spec).empty


def test_coefficient_equations_flag_invalid_spec_exactly():
    spec = DerivationSpec(C1, [parse_element("e1", C1)], [Element.zero(C1)])
    report = check_coefficient_equations(spec)
    assert [(v.equation, v.indices, v.residual) for v in report] \
        == [("coeff-1", (1, 1), Fraction(1))]


def test_relation_and_coefficient_checks_agree_on_random_specs():
    # The coefficient families are the componentwise expansion of the
    # relation system, so the two checks must flag the same specs.
    rng = random.Random(53)
    for _ in range(40):
        cfg = rng.choice((C1, C2, C3))
        values = [random_element(rng, cfg) for _ in cfg.edge_indices()]
        duals = [random_element(rng, cfg) for _ in cfg.edge_indices()]
        spec = DerivationSpec(cfg, values, duals)  # usually invalid
        assert check_relations(spec).empty == check_coefficient_equations(spec).empty


def test_mixed_coefficient_equations_flag_rho_families():
    # An arbitrary rho entry with everything else zero trips coeff-8.
    value = Element.monomial(C2, BasisMonomial((2, 1), (2, 2)))
    spec = DerivationSpec(C2, [value, Element.zero(C2)],
                          [Element.zero(C2), Element.zero(C2)])
    equations = {v.equation for v in check_coefficient_equations(spec)}
    assert "coeff-8" in equations


# --- derivation files -------------------------------------------------------

def test_derivation_from_dict_completes_missing_duals():
    spec = derivation_from_dict({"loops": 1, "values": {"e1": "v"}})
    assert spec == ddt()


def test_derivation_from_dict_completes_missing_edges():
    spec = derivation_from_dict({"loops": 1, "values": {"e1'": "v"}})
    assert spec.value(1) == parse_element("-e1 e1", C1)


def test_derivation_from_dict_keeps_explicit_values():
    doc = {"loops": 1, "values": {"e1": "v", "e1'": "e1' e1'"}}
    spec = derivation_from_dict(doc)
    assert spec.value(-1) == parse_element("e1' e1'", C1)
    assert not check_relations(spec).empty


def test_derivation_from_dict_defaults_unnamed_edges_to_zero():
    spec = derivation_from_dict({"loops": 2, "values": {"e2": "v"}})
    assert spec.value(1).is_zero()
    assert spec.value(-1) == parse_element("-e1' e2'", C2)


def test_derivation_from_dict_rejects_nonzero_vertex_value():
    with pytest.raises(ValueError, match="vanishes on v"):
        derivation_from_dict({"loops": 1, "values": {"v": "e1"}})
    # a vertex entry that lowers to zero is fine
    spec = derivation_from_dict({"loops": 1, "values": {"v": "0", "e1": "v"}})
    assert spec == ddt()


def test_derivation_from_dict_rejects_bad_names_and_documents():
    with pytest.raises(ValueError, match="unknown generator"):
        derivation_from_dict({"loops": 1, "values": {"f1": "v"}})
    with pytest.raises(ValueError, match="unknown generator"):
        derivation_from_dict({"loops": 1, "values": {"e2": "v"}})
    with pytest.raises(ValueError, match="loops"):
        derivation_from_dict({"values": {}})


def test_load_derivation_file(tmp_path):
    path = tmp_path / "deriv.json"
    path.write_text(json.dumps({"loops": 1, "values": {"e1": "v"}}))
    assert load_derivation_file(path) == ddt()
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(ValueError, match="JSON"):
        load_derivation_file(bad)
