import pytest

from conftest import COUNTER_CELLS
from tropical_mechanisms.controller.analysis import MechanismAnalyzer, summary_markdown
from tropical_mechanisms.controller.serialization import lifting_from_json, mechanism_from_json
from tropical_mechanisms.model.common.errors import MalformedInputError, SizeGuardError
from tropical_mechanisms.model.geometry.point_config import cube_config
from tropical_mechanisms.model.geometry.subdivision import Subdivision, regular_subdivision
from tropical_mechanisms.model.mechanism.mechanism import mechanism_subdivision


@pytest.fixture
def analyzer():
    return MechanismAnalyzer()


def test_counter_report(analyzer, counter_mechanism):
    report = analyzer.analyze(counter_mechanism)
    assert report["schema_version"] == "1.0"
    assert report["kind"] == "mechanism-analysis"
    assert report["cells"] == [list(c) for c in COUNTER_CELLS]
    assert report["facets"][0] == ["000", "001", "010", "100"]
    assert report["nondegenerate"]
    assert report["regular"]
    assert len(report["witness"]) == 8
    assert report["sensitivity"] == {"cardinality": 2, "hamming": 2}
    assert report["tight_span"]["edges"] == [[0, 2], [1, 2], [2, 3], [2, 4]]
    assert report["intersection_check"] is True
    assert report["zero_cycles"]["price_identity"]
    assert report["mechanism"]["payments"]["011"] == "2/3"


def test_degenerate_report(analyzer, additive_mechanism):
    report = analyzer.analyze(additive_mechanism)
    assert not report["nondegenerate"]
    assert report["cells"] == [[0, 1, 2, 3]]
    assert report["sensitivity"]["hamming"] == 2


def test_constructed_mechanism_round_trip(analyzer):
    document = analyzer.construct("cardinality", 3)
    report = analyzer.analyze(mechanism_from_json(document))
    assert report["sensitivity"]["cardinality"] == 1


@pytest.mark.slow
def test_large_mechanism_skips_lp_checks(analyzer):
    report = analyzer.analyze(mechanism_from_json(analyzer.construct("cardinality", 5)))
    assert report["intersection_check"] is None
    assert report["zero_cycles"] is None
    assert report["sensitivity"]["cardinality"] == 1


@pytest.mark.parametrize("items", [2, 3, 4])
def test_hamming_document_carries_lifting_and_cells(analyzer, items):
    document = analyzer.construct("hamming", items)
    config = cube_config(items)
    assert len(document["lifting"]) == 2 ** items
    lifted = regular_subdivision(config, lifting_from_json({"heights": document["lifting"]}))
    cells = Subdivision.of(config, document["cells"]).cells
    assert Subdivision.of(config, lifted.cells).cells == cells
    mech = mechanism_from_json(document)
    assert Subdivision.of(config, mechanism_subdivision(mech).cells).cells == cells


def test_constructions(analyzer):
    hamming = analyzer.construct("hamming", 3)
    assert hamming["payments"]["001"] == "1"
    assert hamming["payments"]["011"] == "0"
    assert len(hamming["cells"]) == 5
    assert hamming["lifting"][:2] == ["0", "-1"]
    multiplayer = analyzer.construct("multiplayer", 2, players=3)
    assert multiplayer["players"] == 3
    assert len(multiplayer["biases"]) == 9
    with pytest.raises(MalformedInputError):
        analyzer.construct("multiplayer", 2)
    with pytest.raises(MalformedInputError):
        analyzer.construct("parity", 2)


def test_enumerate_square(analyzer):
    plain = analyzer.enumerate("cube:2")
    assert (plain["total"], plain["count"]) == (2, 2)
    assert plain["group"] is None

    full = analyzer.enumerate("cube:2", orbits="full")
    assert full["count"] == 1
    assert full["orbit_sizes"] == [2]
    assert full["group"] == "full-cube"

    regular = analyzer.enumerate("cube:2", regular_only=True, orbits="sym")
    assert regular["regular"] == 2
    assert regular["count"] == 2


def test_enumerate_errors(analyzer):
    with pytest.raises(MalformedInputError):
        analyzer.enumerate("cube:2", orbits="all")
    with pytest.raises(SizeGuardError):
        analyzer.enumerate("cube:4")


def test_check(analyzer, twisted_triangulation):
    report = analyzer.check(twisted_triangulation)
    assert report["triangulation"]
    assert not report["regular"]
    assert report["witness"] is None
    assert report["subdivision"]["config"]["dimension"] == 2

    diagonal = Subdivision.of(cube_config(2), [(0, 1, 3), (0, 2, 3)])
    report = analyzer.check(diagonal)
    assert report["regular"]
    assert report["subdivision"]["config"] == "cube:2"


def test_affine_report(analyzer, affine_2x2):
    report = analyzer.affine(affine_2x2)
    assert report["kind"] == "affine-analysis"
    assert report["facets"] == [["10|10", "10|01", "01|10"], ["10|01", "01|10", "01|01"]]
    assert report["nondegenerate"]
    assert report["sensitivity"] == {"multiplayer_cardinality": 1}
    assert report["lineality"] == {
        "direction": ["1", "1", "1", "1"],
        "normalized": [1, 3],
        "reduced_dimension": 2,
    }


def test_summary_markdown(analyzer, counter_mechanism):
    text = summary_markdown(analyzer.analyze(counter_mechanism))
    assert "| 1 | 000, 001, 010, 100 |" in text
    assert "| hamming | 2 |" in text
    assert "**Regular:** False" in summary_markdown(
        {"kind": "regularity-check", "regular": False}
    )
