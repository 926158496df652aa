import json
from itertools import product as cartesian

import pytest
from hypothesis import given

from src.modules.algebra.domain.builtin import stone3
from src.modules.algebra.domain.entity.product import power
from src.modules.algebra.domain.entity.signature import Signature
from src.modules.definability.application.dto.verdict import VerdictDto
from src.modules.definability.domain.entity.query import DefinabilityQuery
from src.modules.definability.domain.enums import VerdictKind
from src.modules.definability.domain.errors import QueryMismatch
from src.modules.formulas.domain.enums import CLASS_INCLUSIONS, SyntacticClass
from tests.conftest import Printer, unary
from tests.units.definability.strategies import binary_tables, small_structures

DOUBLE_STAR = (0, 2, 2)
CONSTANT_HALF = (1, 1, 1)
NOT_A_TERM = (0, 0, 2)
SWAP = (0, 2, 1, 3)


def query(host, cls, settings, **options) -> DefinabilityQuery:
    return DefinabilityQuery.create([host], "f", cls, settings=settings, **options)


def test_double_star_is_primitive_positive(definability_service, formula_service, stone, app_settings):
    # given
    q = query(unary(stone, "f", DOUBLE_STAR), "pp", app_settings)

    # when
    verdict = definability_service.check(q)

    # then
    assert verdict.kind == VerdictKind.DEFINABLE
    assert verdict.verified
    assert SyntacticClass.PP in formula_service.classify(verdict.witness)
    assert formula_service.defines(q.members, verdict.witness, q.target)
    assert definability_service.verify(q, verdict)


def test_constant_half_is_not_primitive_positive(definability_service, stone, app_settings):
    # given
    q = query(unary(stone, "f", CONSTANT_HALF), "pp", app_settings)

    # when
    verdict = definability_service.check(q)

    # then
    assert verdict.kind == VerdictKind.NOT_DEFINABLE
    counterexample = verdict.counterexample
    assert counterexample.sigma.as_dict == {0: 0, 1: 2, 2: 2}
    assert counterexample.verify(q)
    assert verdict.exit_code == 1


def test_constant_half_is_open_but_not_positive_open(definability_service, formula_service, stone, app_settings):
    # given
    host = unary(stone, "f", CONSTANT_HALF)
    open_query = query(host, "open", app_settings)
    positive_query = query(host, "pos-open", app_settings)

    # when
    open_verdict = definability_service.check(open_query)
    positive_verdict = definability_service.check(positive_query)

    # then
    assert open_verdict.is_definable
    assert formula_service.defines([host], open_verdict.witness, open_query.target)
    assert positive_verdict.kind == VerdictKind.NOT_DEFINABLE
    assert positive_verdict.counterexample.verify(positive_query)


@pytest.mark.parametrize("cls", ["open-horn", "open-strict-horn", "exist", "exist-pos", "exist-horn"])
def test_every_verdict_on_stone3_is_sound(definability_service, stone, app_settings, cls):
    for values in (DOUBLE_STAR, CONSTANT_HALF, (0, 0, 0), (2, 1, 0)):
        # given
        q = query(unary(stone, "f", values), cls, app_settings)

        # when
        verdict = definability_service.check(q)

        # then
        assert definability_service.verify(q, verdict)


def test_negation_is_an_atomic_conjunction_over_bounded_lattices(definability_service, formula_service, boolean):
    # given
    q = DefinabilityQuery.create([boolean], "neg", "atomic-conj", language=["join", "meet", "zero", "one"])

    # when
    verdict = definability_service.check(q)

    # then
    assert verdict.is_definable
    assert formula_service.classify(verdict.witness) >= {SyntacticClass.ATOMIC_CONJ}
    assert formula_service.defines(q.members, verdict.witness, q.target)


def test_empty_relation_is_defined_by_contradiction(definability_service, formula_service, stone):
    # given
    host = stone.with_relation("R", 1, [])
    q = DefinabilityQuery.create([host], "R", "pp")

    # when
    verdict = definability_service.check(q)

    # then
    assert verdict.is_definable
    assert not any(formula_service.evaluate(host, verdict.witness, [a]) for a in host.universe)


def test_empty_relation_without_constants_is_not_positively_definable(definability_service, boolean):
    # given
    host = boolean.with_relation("R", 1, [])
    positive = DefinabilityQuery.create([host], "R", "pp", language=["join", "meet"])
    full = DefinabilityQuery.create([host], "R", "open", language=["join", "meet"])

    # when
    positive_verdict = definability_service.check(positive)
    open_verdict = definability_service.check(full)

    # then
    assert positive_verdict.kind == VerdictKind.NOT_DEFINABLE
    assert positive_verdict.reason
    assert open_verdict.is_definable


def test_bounded_search_reports_resource_exceeded(definability_service, stone, app_settings):
    # given
    q = query(unary(stone, "f", DOUBLE_STAR), "pp", app_settings, max_product_coords=0)

    # when
    verdict = definability_service.check(q)

    # then
    assert verdict.kind == VerdictKind.RESOURCE_EXCEEDED
    assert verdict.report["bound"] == "MAX_PRODUCT_COORDS"
    assert verdict.exit_code == 3


def test_target_inside_the_sublanguage_is_rejected(stone):
    with pytest.raises(QueryMismatch):
        DefinabilityQuery.create([stone], "star", "pp", language=["star", "join"])


def test_identical_members_are_kept_once(stone):
    # when
    q = DefinabilityQuery.create([stone, stone], "star", "open")

    # then
    assert len(q.members) == 1


def test_translate_open_formula_to_equations(definability_service, formula_service, boolean):
    # given
    formula = formula_service.parse("(not (= x1 zero))", boolean.signature)

    # when
    verdict = definability_service.translate_to_equations([boolean], formula, boolean.signature)

    # then
    assert verdict.is_definable
    assert SyntacticClass.ATOMIC_CONJ in formula_service.classify(verdict.witness)
    assert [formula_service.evaluate(boolean, verdict.witness, [a]) for a in boolean.universe] == [False, True]


def test_inequality_has_no_equational_translation(definability_service, formula_service, two_element_set):
    # given
    formula = formula_service.parse("(not (= x1 x2))", two_element_set.signature)

    # when
    verdict = definability_service.translate_to_equations([two_element_set], formula, Signature())

    # then
    assert verdict.kind == VerdictKind.NOT_DEFINABLE


def test_commutation_with_endomorphisms(definability_service, stone, app_settings):
    # given
    good = query(unary(stone, "f", DOUBLE_STAR), "pp", app_settings)
    bad = query(unary(stone, "f", CONSTANT_HALF), "pp", app_settings)

    # then
    assert definability_service.commutes_with_endomorphisms(good) is None
    assert definability_service.commutes_with_endomorphisms(bad).verify(bad)


def test_oracle_agrees_with_the_decision(definability_service, formula_service, stone, app_settings):
    # given
    host = unary(stone, "f", CONSTANT_HALF)
    open_query = query(host, "open", app_settings)
    conj_query = query(host, "atomic-conj", app_settings)

    # when
    found = definability_service.oracle_search(open_query)
    missing = definability_service.oracle_search(conj_query)

    # then
    assert found.found
    assert formula_service.defines([host], found.witness, open_query.target)
    assert not missing.found
    assert not definability_service.check(conj_query).is_definable


def test_verdict_json_document(definability_service, stone, app_settings):
    # given
    q = query(unary(stone, "f", DOUBLE_STAR), "pp", app_settings)
    verdict = definability_service.check(q)

    # when
    document = json.loads(VerdictDto.from_domain(q, verdict, app_settings.JSON_SCHEMA_VERSION).to_json())

    # then
    assert document["verdict"] == "definable"
    assert document["class"] == "pp"
    assert document["query"]["target"] == ["f"]
    assert "counterexample" not in document
    assert verdict.render().splitlines()[0] == "definable [pp]"


def test_counterexample_json_names_the_map(definability_service, stone, app_settings):
    # given
    q = query(unary(stone, "f", CONSTANT_HALF), "pp", app_settings)
    verdict = definability_service.check(q)

    # when
    document = json.loads(VerdictDto.from_domain(q, verdict, app_settings.JSON_SCHEMA_VERSION).to_json())

    # then
    assert document["verdict"] == "not-definable"
    assert document["counterexample"]["sigma"] == [["0", "0"], ["1/2", "1"], ["1", "1"]]


@pytest.mark.slow
@pytest.mark.parametrize("assume_cd", [True, False])
def test_de_morgan_unary_pp_functions_commute_with_the_atom_swap(
    definability_service, formula_service, demorgan, app_settings, assume_cd
):
    checked = 0
    for values in cartesian(demorgan.universe, repeat=demorgan.size):
        # given
        host = unary(demorgan, "f", values)
        q = query(host, "pp", app_settings, assume_cd=assume_cd)
        commutes = all(SWAP[values[a]] == values[SWAP[a]] for a in demorgan.universe)

        # when
        verdict = definability_service.check(q)

        # then
        assert verdict.is_definable == commutes, values
        if verdict.is_definable:
            assert formula_service.defines([host, power(host, 2)], verdict.witness, q.target)
        checked += commutes
    Printer.sweep(f"demorganM unary pp functions {checked}/16 (assume_cd={assume_cd})")
    assert checked == 16


def test_verdict_json_parses_back(definability_service, stone, app_settings):
    # given
    q = query(unary(stone, "f", CONSTANT_HALF), "pp", app_settings)
    dto = VerdictDto.from_domain(q, definability_service.check(q), app_settings.JSON_SCHEMA_VERSION)

    # when
    parsed = VerdictDto.model_validate_json(dto.to_json())

    # then
    assert parsed == dto


@pytest.mark.slow
def test_stone_unary_pp_verdicts_follow_the_double_star_criterion(
    definability_service, formula_service, stone, app_settings
):
    definable = 0
    for values in cartesian(stone.universe, repeat=stone.size):
        # given
        q = query(unary(stone, "f", values), "pp", app_settings)
        commutes = all(values[DOUBLE_STAR[a]] == DOUBLE_STAR[values[a]] for a in stone.universe)

        # when
        verdict = definability_service.check(q)

        # then
        assert verdict.is_definable == commutes, values
        assert (definability_service.commutes_with_endomorphisms(q) is None) == commutes
        assert definability_service.verify(q, verdict)
        if verdict.is_definable:
            assert formula_service.defines(q.members, verdict.witness, q.target)
        definable += commutes
    Printer.sweep(f"stone3 unary pp functions {definable}/27 definable")
    assert definable == 6


@pytest.mark.slow
@given(binary_tables())
def test_stone_binary_pp_verdicts_follow_the_double_star_criterion(container, app_settings, table):
    # given
    service = container.definability.service()
    host = stone3().with_operation("f", 2, table)
    q = query(host, "pp", app_settings)
    commutes = all(
        table[DOUBLE_STAR[a] * 3 + DOUBLE_STAR[b]] == DOUBLE_STAR[table[a * 3 + b]]
        for a, b in cartesian(host.universe, repeat=2)
    )

    # when
    verdict = service.check(q)

    # then
    assert verdict.is_definable == commutes, table
    assert service.verify(q, verdict)


@pytest.mark.slow
@given(small_structures())
def test_random_queries_agree_with_the_oracle_and_class_inclusions(container, app_settings, structure):
    # given
    service = container.definability.service()
    kinds = {}

    # when
    for cls in SyntacticClass:
        q = DefinabilityQuery.create([structure], "R", cls, settings=app_settings)
        verdict = service.check(q)

        # then
        assert service.verify(q, verdict), cls
        kinds[cls] = verdict.kind
        if cls.is_open and service.oracle_search(q).found:
            assert verdict.kind == VerdictKind.DEFINABLE, cls
    for smaller, larger in CLASS_INCLUSIONS:
        if kinds[smaller] == VerdictKind.DEFINABLE:
            assert kinds[larger] != VerdictKind.NOT_DEFINABLE, (smaller, larger)


@pytest.mark.parametrize("cls", list(SyntacticClass))
def test_repeated_checks_give_identical_documents(container, stone, app_settings, cls):
    version = app_settings.JSON_SCHEMA_VERSION
    for values in (DOUBLE_STAR, CONSTANT_HALF, NOT_A_TERM):
        # given
        q = query(unary(stone, "f", values), cls, app_settings)

        # when
        documents = {
            VerdictDto.from_domain(q, container.definability.service().check(q), version).to_json() for _ in range(2)
        }

        # then
        assert len(documents) == 1
