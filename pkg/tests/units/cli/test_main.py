import json

import pytest
from typer.testing import CliRunner

from src.cli.main import app
from src.modules.algebra.application.dto.algebra_file import AlgebraFileDto
from src.modules.algebra.domain.builtin import stone3
from tests.conftest import unary

runner = CliRunner()


@pytest.fixture
def algebra_file(tmp_path):
    def write(values, name="stone3f"):
        structure = unary(stone3(), "f", values).renamed(name)
        path = tmp_path / f"{name}.json"
        path.write_text(AlgebraFileDto.from_structure(structure).model_dump_json(indent=2))
        return str(path)

    return write


def test_check_definable_function(algebra_file):
    # when
    result = runner.invoke(app, ["check", algebra_file((0, 2, 2)), "--class", "pp", "--target", "f"])

    # then
    assert result.exit_code == 0
    assert result.stdout.startswith("definable [pp]")


def test_check_emits_only_the_witness(algebra_file):
    # when
    result = runner.invoke(app, ["check", algebra_file((0, 2, 2)), "--class", "pp", "--target", "f", "--emit-witness"])

    # then
    assert result.exit_code == 0
    assert len(result.stdout.strip().splitlines()) == 1
    assert result.stdout.startswith("(")


def test_check_not_definable_as_json(algebra_file):
    # when
    result = runner.invoke(
        app, ["check", algebra_file((1, 1, 1)), "--class", "pp", "--target", "f", "--format", "json"]
    )

    # then
    assert result.exit_code == 1
    document = json.loads(result.stdout)
    assert document["verdict"] == "not-definable"
    assert document["counterexample"]["kind"] == "hom"


def test_check_with_oracle(algebra_file):
    # when
    result = runner.invoke(
        app, ["check", algebra_file((1, 1, 1)), "--class", "open", "--target", "f", "--oracle-depth", "2"]
    )

    # then
    assert result.exit_code == 0
    assert "oracle[depth=2" in result.stdout


def test_check_reports_exceeded_bounds(algebra_file):
    # when
    result = runner.invoke(
        app,
        ["check", algebra_file((0, 2, 2)), "--class", "pp", "--target", "f", "--max-product-coords", "1"],
    )

    # then
    assert result.exit_code == 3
    assert result.stdout.startswith("resource-exceeded [pp]")
    assert "MAX_PRODUCT_COORDS" in result.stdout


def test_manifest_body_is_reproducible(algebra_file, tmp_path):
    # given
    source = algebra_file((0, 2, 2))
    first, second = tmp_path / "first.json", tmp_path / "second.json"

    # when
    for path in (first, second):
        runner.invoke(app, ["check", source, "--class", "pp", "--target", "f", "--manifest", str(path)])

    # then
    left, right = json.loads(first.read_text()), json.loads(second.read_text())
    left.pop("wall_time_seconds")
    right.pop("wall_time_seconds")
    assert left == right
    assert left["verdict"] == "definable"
    assert len(left["inputs"][source]) == 64


def test_sublanguage_containing_the_target_is_rejected():
    # when
    result = runner.invoke(app, ["check", "stone3", "--class", "pp", "--target", "star", "--sublanguage", "star"])

    # then
    assert result.exit_code == 2


def test_malformed_algebra_file(tmp_path):
    # given
    path = tmp_path / "broken.json"
    path.write_text('{"name": "broken", "size": 2, "operations": {"f": {"arity": 1, "table": [0, 5]}}}')

    # when
    result = runner.invoke(app, ["subalg", str(path), "--all"])

    # then
    assert result.exit_code == 2


def test_translate():
    # when
    result = runner.invoke(app, ["translate", "bool2", "--formula", "(not (= x1 zero))", "--format", "json"])

    # then
    assert result.exit_code == 0
    assert json.loads(result.stdout)["result"]["verdict"] == "definable"


def test_discriminator_term():
    # when
    result = runner.invoke(app, ["term", "bool2", "--discriminator"])

    # then
    assert result.exit_code == 0
    assert "quaternary:" in result.stdout


def test_no_discriminator_on_stone3():
    # when
    result = runner.invoke(app, ["term", "stone3", "--discriminator"])

    # then
    assert result.exit_code == 1


def test_term_needs_exactly_one_question():
    # when
    result = runner.invoke(app, ["term", "bool2", "--majority", "--pixley"])

    # then
    assert result.exit_code == 2


def test_cases_without_a_discriminator_to_merge_them():
    # when
    result = runner.invoke(app, ["cases", "bool2", "--target", "neg", "--format", "json"])
    merged = runner.invoke(app, ["cases", "bool2", "--target", "neg", "--merge"])

    # then
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["result"]["cases"]) >= 2
    assert merged.exit_code == 1
    assert merged.stdout.startswith("no discriminator term")


def test_principal_congruence_by_position():
    # when
    result = runner.invoke(app, ["cong", "stone3.alg", "--principal", "1", "2"])

    # then
    assert result.exit_code == 0
    assert "{{0}, {1/2,1}}" in result.stdout


def test_principal_congruence_by_label():
    # when
    result = runner.invoke(app, ["cong", "demorganM", "--principal", "a", "b", "--format", "json"])

    # then
    assert json.loads(result.stdout)["result"]["blocks"] == [["0", "a", "b", "1"]]


def test_congruence_lattice_and_cep():
    # when
    lattice = runner.invoke(app, ["cong", "demorganM", "--lattice"])
    cep = runner.invoke(app, ["cong", "stone3", "--cep"])

    # then
    assert lattice.exit_code == 0
    assert lattice.stdout.startswith("2 congruence(s)")
    assert cep.exit_code == 0


def test_subuniverses_of_de_morgan_m():
    # when
    result = runner.invoke(app, ["subalg", "demorganM", "--all", "--format", "json"])

    # then
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["result"]["subuniverses"]) == 4


def test_generated_subuniverse():
    # when
    result = runner.invoke(app, ["subalg", "demorganM", "--generate", "a"])

    # then
    assert result.exit_code == 0
    assert "{0, a, 1}" in result.stdout


def test_automorphisms_of_de_morgan_m():
    # when
    result = runner.invoke(app, ["hom", "demorganM", "--kind", "iso"])

    # then
    assert result.exit_code == 0
    assert result.stdout.startswith("2 iso map(s)")
