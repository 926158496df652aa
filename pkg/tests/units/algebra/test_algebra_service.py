import json

import pytest

from src.core.domain.errors import ParseError, ValidationError
from src.core.utils.encoder import canonical_dumps
from src.modules.algebra.domain.entity.signature import OpSymbol
from src.modules.algebra.domain.errors import UnknownAlgebra
from src.modules.subpowers.domain.enums import MapKind

CHAIN = {
    "name": "chain2",
    "size": 2,
    "elements": ["lo", "hi"],
    "operations": {"join": {"arity": 2, "table": [0, 1, 1, 1]}, "top": {"arity": 0, "table": [1]}},
    "relations": {"le": {"arity": 2, "tuples": [[0, 0], [0, 1], [1, 1]]}},
}


def test_parse_algebra_file(algebra_service):
    # when
    structure = algebra_service.parse(json.dumps(CHAIN))

    # then
    assert structure.name == "chain2"
    assert structure.apply("join", [0, 1]) == 1
    assert structure.constant("top") == 1
    assert structure.holds("le", (0, 1))
    assert not structure.holds("le", (1, 0))


def test_dump_then_parse_keeps_the_structure(algebra_service, demorgan):
    # when
    again = algebra_service.parse(algebra_service.dump(demorgan))

    # then
    assert again.fingerprint == demorgan.fingerprint
    assert again.elements == demorgan.elements


def test_json_syntax_error_has_position(algebra_service):
    # given
    text = '{\n  "name": "broken",\n  "size": 2,,\n}'

    # when
    with pytest.raises(ParseError) as error:
        algebra_service.parse(text)

    # then
    assert error.value.line == 3
    assert error.value.column is not None
    assert error.value.exit_code == 2


def test_schema_violation_names_the_field(algebra_service):
    # given
    broken = {**CHAIN, "operations": {"join": {"arity": 2, "table": [0, 1, 1]}}}

    # when
    with pytest.raises(ValidationError) as error:
        algebra_service.parse(json.dumps(broken))

    # then
    assert "operations.join.table" in error.value.message


def test_load_builtin_and_alg_alias(algebra_service):
    # when
    by_name = algebra_service.load("stone3")
    by_file_name = algebra_service.load("stone3.alg")

    # then
    assert by_name.fingerprint == by_file_name.fingerprint


def test_load_from_file(algebra_service, tmp_path):
    # given
    path = tmp_path / "chain2.alg"
    path.write_text(json.dumps(CHAIN), encoding="utf-8")

    # when
    structure = algebra_service.load(str(path))

    # then
    assert structure.size == 2
    assert algebra_service.digest(str(path)) == algebra_service.digest(str(path))


def test_missing_file_is_reported(algebra_service, tmp_path):
    with pytest.raises(UnknownAlgebra):
        algebra_service.load(str(tmp_path / "absent.alg"))


def test_builtin_digest_is_stable(algebra_service):
    # when
    first = algebra_service.digest("bool2")
    second = algebra_service.digest("bool2.alg")

    # then
    assert first == second
    assert len(first) == 64
    assert first != algebra_service.digest("stone3")


def test_canonical_dumps_of_domain_values():
    # given
    value = {"sig": OpSymbol("join", 2), "kinds": frozenset({MapKind.HOM})}

    # when
    text = canonical_dumps(value)

    # then
    assert text == '{"kinds":["hom"],"sig":{"arity":2,"name":"join"}}'
