import pytest

from src.modules.algebra.domain.entity.product import power
from src.modules.algebra.domain.errors import SignatureMismatch
from src.modules.subpowers.domain.entity.subuniverse import Subuniverse
from src.modules.subpowers.domain.enums import MapKind
from src.modules.subpowers.domain.errors import ElementOutOfRange
from tests.conftest import unary


def test_stone_has_two_subuniverses(subpower_service, stone):
    # when
    found = subpower_service.all_subuniverses(stone)

    # then
    assert [sub.labels for sub in found] == [["0", "1"], ["0", "1/2", "1"]]


def test_demorgan_subuniverses(subpower_service, demorgan):
    # when
    found = subpower_service.all_subuniverses(demorgan)

    # then
    assert [sub.labels for sub in found] == [
        ["0", "1"],
        ["0", "a", "1"],
        ["0", "b", "1"],
        ["0", "a", "b", "1"],
    ]
    assert all(sub.is_closed() for sub in found)


def test_subuniverses_of_square_are_closed(subpower_service, stone):
    # given
    square = power(stone, 2)

    # when
    found = subpower_service.all_subuniverses(square)

    # then
    assert all(sub.is_closed() for sub in found)
    assert len({sub.mask for sub in found}) == len(found)
    diagonal = Subuniverse.create(square, [square.elements.index(f"({e},{e})") for e in ("0", "1/2", "1")])
    assert diagonal in found


def test_generated_subuniverse(subpower_service, demorgan):
    # when
    sub = subpower_service.generated_subuniverse(demorgan, [demorgan.element_index("a")])

    # then
    assert sub.labels == ["0", "a", "1"]
    assert sub.generators == (1,)


def test_generator_out_of_range(subpower_service, stone):
    with pytest.raises(ElementOutOfRange):
        subpower_service.generated_subuniverse(stone, [5])


def test_endomorphisms_of_stone(subpower_service, stone):
    # given
    full = Subuniverse.full(stone)

    # when
    homs = subpower_service.find_maps(full, full, MapKind.HOM)
    isos = subpower_service.find_maps(full, full, MapKind.ISOMORPHISM)

    # then
    assert sorted(sigma.render() for sigma in homs) == ["0->0, 1/2->1, 1->1", "0->0, 1/2->1/2, 1->1"]
    assert [sigma.render() for sigma in isos] == ["0->0, 1/2->1/2, 1->1"]
    assert all(sigma.verify() for sigma in homs)


def test_demorgan_swaps_its_atoms(subpower_service, demorgan):
    # given
    full = Subuniverse.full(demorgan)

    # when
    isos = subpower_service.find_maps(full, full, MapKind.ISOMORPHISM)

    # then
    assert sorted(sigma.render() for sigma in isos) == ["0->0, a->a, b->b, 1->1", "0->0, a->b, b->a, 1->1"]


def test_lattice_homomorphisms_onto_two_element_chain(subpower_service, stone, boolean):
    # given
    lattice = stone.signature.restrict(["join", "meet", "zero", "one"])
    source = Subuniverse.full(stone.reduct(lattice))
    target = Subuniverse.full(boolean.reduct(lattice))

    # when
    homs = subpower_service.find_maps(source, target, MapKind.HOM)
    embeddings = subpower_service.find_maps(source, target, MapKind.EMBEDDING)

    # then
    assert len(homs) == 2
    assert embeddings == []


def test_pointed_types_of_stone(subpower_service, stone):
    # when
    types = subpower_service.pointed_types([stone], 1)

    # then
    assert [t.size for t in types] == [2, 2, 3]
    assert sum(len(t.members) for t in types) == 3


def test_heyting_square_subuniverse_generated_by_two_points(subpower_service, heyting):
    # given
    square = power(heyting, 2)
    generators = [square.element_index("(1,1/2)"), square.element_index("(1/2,1)")]

    # when
    sub = subpower_service.generated_subuniverse(square, generators)

    # then
    assert set(sub.labels) == {"(0,0)", "(1/2,1/2)", "(1,1/2)", "(1/2,1)", "(1,1)"}
    assert sub in subpower_service.all_subuniverses(square)


def test_subuniverses_of_de_morgan_square_with_the_atom_swap(subpower_service, demorgan):
    # given
    swap = {"0": "0", "a": "b", "b": "a", "1": "1"}
    square = power(unary(demorgan, "circ", (0, 2, 1, 3)), 2)
    expected = [
        {f"({u},{v})" for u in ("0", "1") for v in ("0", "1")},
        {f"({u},{v})" for u in swap for v in swap},
        {f"({u},{swap[u]})" for u in swap},
        {f"({u},{u})" for u in swap},
        {"(0,0)", "(1,1)"},
    ]

    # when
    subuniverses = subpower_service.all_subuniverses(square)

    # then
    found = [set(sub.labels) for sub in subuniverses]
    for subuniverse in expected:
        assert subuniverse in found
    assert all(sub.is_closed() for sub in subuniverses)


def test_maps_need_the_source_symbols_on_the_target(subpower_service, stone, boolean):
    with pytest.raises(SignatureMismatch):
        subpower_service.find_maps(Subuniverse.full(stone), Subuniverse.full(boolean), MapKind.HOM)
