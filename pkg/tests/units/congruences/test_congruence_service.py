from itertools import product as cartesian

import pytest

from src.core.domain.errors import ResourceExceeded
from src.modules.algebra.domain.errors import SignatureMismatch
from src.modules.congruences.application.dto.congruence import CongruenceDto, PropertyReportDto
from src.modules.congruences.domain.entity.congruence import Congruence
from src.modules.congruences.domain.entity.context import FraserHornFailure, RelCongruenceContext
from src.modules.congruences.domain.errors import PairOutOfRange, SizeMismatch
from src.modules.definability.domain.errors import PreconditionFailed
from src.modules.formulas.domain.entity.target import Target
from src.modules.formulas.domain.enums import SyntacticClass

HALF_AND_ONE = ((0,), (1, 2))


def test_principal_congruence_of_stone3(congruence_service, stone):
    # when
    theta = congruence_service.principal_congruence(stone, 1, 2)

    # then
    assert theta.blocks == HALF_AND_ONE
    assert theta.is_compatible()
    assert theta.render() == "{{0}, {1/2,1}}"


def test_principal_congruence_collapsing_zero(congruence_service, stone):
    # then
    assert congruence_service.principal_congruence(stone, 0, 1).is_total


def test_pair_outside_the_universe(congruence_service, stone):
    with pytest.raises(PairOutOfRange):
        congruence_service.principal_congruence(stone, 0, 3)


def test_congruence_lattice_of_stone3(congruence_service, stone):
    # when
    lattice = congruence_service.congruence_lattice(stone)

    # then
    assert [theta.blocks for theta in lattice] == [((0,), (1,), (2,)), HALF_AND_ONE, ((0, 1, 2),)]
    assert lattice[0] <= lattice[1] <= lattice[2]


def test_de_morgan_m_is_simple(congruence_service, demorgan):
    # when
    lattice = congruence_service.congruence_lattice(demorgan)

    # then
    assert len(lattice) == 2
    assert lattice[0].is_identity and lattice[1].is_total


def test_lattice_bound(congruence_service, stone):
    # when
    with pytest.raises(ResourceExceeded) as error:
        congruence_service.congruence_lattice(stone, limit=2)

    # then
    assert error.value.report["bound"] == "LATTICE_MAX_UNIVERSE"


def test_meet_join_and_quotient(congruence_service, stone):
    # given
    theta = congruence_service.principal_congruence(stone, 1, 2)
    identity = Congruence.identity(stone)

    # when
    quotient = congruence_service.quotient(theta)

    # then
    assert congruence_service.meet(theta, identity) == identity
    assert congruence_service.join(theta, identity) == theta
    assert quotient.size == 2
    assert quotient.elements == ("{0}", "{1/2,1}")
    assert quotient.apply("star", [0]) == 1


def test_congruences_on_different_universes_do_not_meet(stone, boolean):
    with pytest.raises(SizeMismatch):
        Congruence.identity(stone).meet(Congruence.identity(boolean))


def test_relative_principal_congruence(congruence_service, stone):
    # given
    ctx = RelCongruenceContext.create([stone])

    # when
    theta = congruence_service.relative_principal_congruence(ctx, stone, 1, 2)
    collapse = congruence_service.relative_principal_congruence(ctx, stone, 0, 1)

    # then
    assert theta.blocks == HALF_AND_ONE
    assert collapse.is_total


def test_quasivariety_membership(congruence_service, stone):
    # given
    two = congruence_service.quotient(congruence_service.principal_congruence(stone, 1, 2))
    ctx = RelCongruenceContext.create([two])
    stone_ctx = RelCongruenceContext.create([stone])

    # then
    assert congruence_service.quasivariety_membership(stone_ctx, stone)
    assert congruence_service.quasivariety_membership(stone_ctx, two)
    assert not congruence_service.quasivariety_membership(ctx, stone)
    assert [theta.blocks for theta in congruence_service.relative_congruences(stone_ctx, stone)] == [
        ((0,), (1,), (2,)),
        HALF_AND_ONE,
        ((0, 1, 2),),
    ]


def test_stone3_has_the_congruence_extension_property(congruence_service, stone):
    # when
    report = congruence_service.check_cep([stone])

    # then
    assert report.holds
    assert report.checked == 1
    assert PropertyReportDto.from_domain(report).failure is None


def test_bool2_has_the_fraser_horn_property(congruence_service, boolean):
    # when
    report = congruence_service.check_fraser_horn([boolean])

    # then
    assert report.holds
    assert report.exit_code == 0


def test_bare_set_fails_fraser_horn(congruence_service, two_element_set):
    # when
    report = congruence_service.check_fraser_horn([two_element_set])

    # then
    assert not report.holds
    assert isinstance(report.failure, FraserHornFailure)
    assert report.failure.factors == ("set2", "set2")
    assert PropertyReportDto.from_domain(report).failure.startswith("product: set2 x set2")


def test_skew_congruences(congruence_service, two_element_set, boolean):
    # when
    skew = congruence_service.find_skew_congruences(two_element_set, two_element_set)

    # then
    assert len(skew) == 11
    assert congruence_service.find_skew_congruences(boolean, boolean) == []


def test_dpc_formula_needs_fraser_horn(congruence_service, two_element_set):
    # given
    ctx = RelCongruenceContext.create([two_element_set])

    # then
    with pytest.raises(PreconditionFailed):
        congruence_service.synthesize_dpc_formula(ctx, SyntacticClass.PP)


def test_congruence_dto(congruence_service, stone):
    # when
    dto = CongruenceDto.from_domain(congruence_service.principal_congruence(stone, 1, 2))

    # then
    assert dto.model_dump() == {"host": "stone3", "blocks": [["0"], ["1/2", "1"]]}


@pytest.mark.slow
def test_positive_open_dpc_formula_for_stone3(congruence_service, formula_service, stone):
    # given
    ctx = RelCongruenceContext.create([stone])

    # when
    formula = congruence_service.synthesize_dpc_formula(ctx)

    # then
    assert SyntacticClass.POSITIVE_OPEN in formula_service.classify(formula)
    expanded = congruence_service.congruence_expansion(ctx, stone)
    for a, b, c, d in expanded.relations["theta"]:
        assert formula_service.evaluate(stone, formula, [a, b, c, d])


def test_quasivariety_membership_needs_a_shared_signature(congruence_service, stone, boolean):
    # given
    ctx = RelCongruenceContext.create([boolean])

    # then
    with pytest.raises(SignatureMismatch):
        congruence_service.quasivariety_membership(ctx, stone)
    with pytest.raises(SignatureMismatch):
        RelCongruenceContext.create([stone, boolean])


def test_dpc_formula_for_a_bare_set(congruence_service, formula_service, two_element_set):
    # given
    ctx = RelCongruenceContext.create([two_element_set])
    expanded = congruence_service.congruence_expansion(ctx, two_element_set)
    known = formula_service.parse(
        "(or (= x3 x4) (and (= x1 x3) (= x2 x4)) (and (= x1 x4) (= x2 x3)))", expanded.signature
    )

    # when
    formula = congruence_service.synthesize_dpc_formula(ctx)

    # then
    assert SyntacticClass.POSITIVE_OPEN in formula_service.classify(formula)
    theta = expanded.relations["theta"]
    for quad in cartesian(two_element_set.universe, repeat=4):
        assert formula_service.evaluate(two_element_set, formula, list(quad)) == (quad in theta)
    assert formula_service.defines([expanded], known, Target.relation("theta", 4))
