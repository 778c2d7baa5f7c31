"""Instance file schema: exact numerals, validation paths, round trips."""

import json
from fractions import Fraction

import pytest

from maxminconv.core import DomainError, UNIT
from maxminconv.geometry import point
from maxminconv.instance import (
    Instance,
    dumps_instance,
    instance_from_dict,
    loads_instance,
    parse_raw,
)

FULL_DOC = """
{
  "schema": 1,
  "dimension": 2,
  "points": {"p": ["0.5", "0.3"], "q": [0.1, "2/5"]},
  "pointsets": {"cloud": [["0.1", "0.2"], ["0.1", "0.2"], ["0.9", "0.8"]]},
  "polytopes": {
    "X": [["0.2", "0.8"], ["0.8", "0.2"]],
    "Y": [["0.5", "0.5"]]
  },
  "boxes": {"B": {"lower": ["0.1", "0.2"], "upper": ["0.4", "0.6"]}},
  "matrices": {"A": [["0.9", "0.1"], ["0.8", "0.3"], ["0.5", "0.4"]]},
  "hyperplanes": {"H": {"a": ["0.6", "0", "0.2"], "b": ["0", "0.6", "0.2"]}},
  "families": {"F": ["X", "Y", "X"]},
  "colorings": {"C": [[["0", "0"]], [["1", "0.2"]], [["0.2", "1"]]]}
}
"""


def test_full_document_parses():
    inst = loads_instance(FULL_DOC)
    assert inst.tnorm.is_min
    assert inst.bounds == UNIT
    assert inst.dimension == 2
    assert inst.points["p"] == point("0.5", "0.3")
    assert inst.points["q"] == point("0.1", "0.4")
    assert len(inst.pointsets["cloud"]) == 3
    assert len(inst.polytopes["X"].generators) == 2
    assert inst.boxes["B"].lower == point("0.1", "0.2")
    assert inst.matrices["A"].rows[2] == (Fraction(1, 2), Fraction(2, 5))
    assert inst.hyperplanes["H"].dim == 2
    assert inst.families["F"] == ("X", "Y", "X")
    assert len(inst.colorings["C"]) == 3


def test_bare_float_literal_is_exact():
    """JSON 0.1 must arrive as one tenth, not the nearest double."""
    inst = loads_instance('{"schema": 1, "points": {"p": [0.1]}}')
    assert inst.points["p"][0] == Fraction(1, 10)


def test_fraction_strings():
    inst = loads_instance('{"schema": 1, "points": {"p": ["3/20", "1"]}}')
    assert inst.points["p"].coords == (Fraction(3, 20), Fraction(1))


def test_defaults():
    inst = loads_instance('{"schema": 1}')
    assert inst.tnorm.is_min and inst.bounds == UNIT
    assert inst.dimension is None and inst.grid_step is None
    assert inst.points == {} and inst.polytopes == {}


def test_tnorm_and_grid_step_sections():
    inst = loads_instance('{"schema": 1, "tnorm": "product", "grid_step": "1/50"}')
    assert inst.tnorm.tag == "product"
    assert inst.grid_step == Fraction(1, 50)


def test_custom_bounds():
    inst = loads_instance('{"schema": 1, "bounds": ["-1", "2"], "points": {"p": ["1.5"]}}')
    assert inst.bounds.lo == -1 and inst.bounds.hi == 2
    assert inst.points["p"][0] == Fraction(3, 2)


# ---------------------------------------------------------------------------
# validation diagnostics
# ---------------------------------------------------------------------------


def test_unknown_section():
    with pytest.raises(DomainError, match="polygon: unknown section"):
        loads_instance('{"schema": 1, "polygon": {}}')


def test_schema_version_required():
    with pytest.raises(DomainError, match="schema: expected 1, got None"):
        loads_instance('{"points": {}}')
    with pytest.raises(DomainError, match="schema: expected 1, got 2"):
        loads_instance('{"schema": 2}')


def test_bad_numeral_reports_path():
    with pytest.raises(DomainError, match=r"points\.p\[1\]"):
        loads_instance('{"schema": 1, "points": {"p": ["0.5", "zebra"]}}')


def test_bounds_shape():
    with pytest.raises(DomainError, match=r"bounds: expected \[lo, hi\]"):
        loads_instance('{"schema": 1, "bounds": ["0"]}')
    with pytest.raises(DomainError, match="bounds"):
        loads_instance('{"schema": 1, "bounds": ["1", "0"]}')


def test_unknown_tnorm():
    with pytest.raises(DomainError, match="tnorm"):
        loads_instance('{"schema": 1, "tnorm": "drastic"}')


def test_non_min_tnorm_needs_unit_bounds():
    with pytest.raises(DomainError, match="tnorm"):
        loads_instance('{"schema": 1, "tnorm": "product", "bounds": ["0", "2"]}')


def test_dimension_declared_mismatch():
    doc = '{"schema": 1, "dimension": 3, "points": {"p": ["0.5", "0.3"]}}'
    with pytest.raises(DomainError, match=r"points\.p: expected dimension 3, got 2"):
        loads_instance(doc)


def test_dimension_inferred_mismatch():
    doc = (
        '{"schema": 1, "points": {"p": ["0.5", "0.3"]},'
        ' "polytopes": {"X": [["0.1"]]}}'
    )
    with pytest.raises(DomainError, match=r"polytopes\.X\[0\]: expected dimension 2"):
        loads_instance(doc)


def test_dimension_must_be_positive_integer():
    with pytest.raises(DomainError, match="dimension"):
        loads_instance('{"schema": 1, "dimension": 0}')
    with pytest.raises(DomainError, match="dimension"):
        loads_instance('{"schema": 1, "dimension": "two"}')


def test_grid_step_positive():
    with pytest.raises(DomainError, match="grid_step: must be positive"):
        loads_instance('{"schema": 1, "grid_step": "0"}')


def test_empty_point_rejected():
    with pytest.raises(DomainError, match="empty point"):
        loads_instance('{"schema": 1, "points": {"p": []}}')


def test_empty_polytope_rejected():
    with pytest.raises(DomainError, match="at least one generator"):
        loads_instance('{"schema": 1, "polytopes": {"X": []}}')


def test_box_requires_lower_and_upper():
    with pytest.raises(DomainError, match=r"boxes\.B: expected"):
        loads_instance('{"schema": 1, "boxes": {"B": {"lower": ["0.1"]}}}')


def test_box_ordering_enforced():
    doc = '{"schema": 1, "boxes": {"B": {"lower": ["0.7"], "upper": ["0.2"]}}}'
    with pytest.raises(DomainError, match=r"boxes\.B"):
        loads_instance(doc)


def test_matrix_ragged_rows():
    doc = '{"schema": 1, "matrices": {"A": [["0.1", "0.2"], ["0.3"]]}}'
    with pytest.raises(DomainError, match="ragged"):
        loads_instance(doc)


def test_matrix_shape_enforced():
    doc = '{"schema": 1, "matrices": {"A": [["0.1", "0.2"], ["0.3", "0.4"]]}}'
    with pytest.raises(DomainError, match=r"matrices\.A"):
        loads_instance(doc)


def test_hyperplane_requires_a_and_b():
    doc = '{"schema": 1, "hyperplanes": {"H": {"a": ["0.1", "0.2"]}}}'
    with pytest.raises(DomainError, match=r"hyperplanes\.H: expected"):
        loads_instance(doc)


def test_hyperplane_length_mismatch():
    doc = '{"schema": 1, "hyperplanes": {"H": {"a": ["0.1", "0.2"], "b": ["0.3"]}}}'
    with pytest.raises(DomainError, match=r"hyperplanes\.H"):
        loads_instance(doc)


def test_family_member_must_exist():
    doc = '{"schema": 1, "polytopes": {"X": [["0.1"]]}, "families": {"F": ["X", "Z"]}}'
    with pytest.raises(DomainError, match=r"families\.F\[1\].*unknown polytope 'Z'"):
        loads_instance(doc)


def test_coloring_empty_class():
    doc = '{"schema": 1, "colorings": {"C": [[["0.1"]], []]}}'
    with pytest.raises(DomainError, match=r"colorings\.C\[1\]"):
        loads_instance(doc)


def test_coordinate_outside_bounds():
    with pytest.raises(DomainError, match="outside bounds"):
        loads_instance('{"schema": 1, "points": {"p": ["1.5"]}}')


def test_section_entries_must_be_named():
    with pytest.raises(DomainError, match="expected an object"):
        loads_instance('{"schema": 1, "points": [["0.1"]]}')


def test_invalid_json_reports_position():
    with pytest.raises(DomainError, match="invalid JSON at line"):
        parse_raw('{"schema": 1,}')


def test_top_level_must_be_object():
    with pytest.raises(DomainError, match="JSON object"):
        parse_raw("[1, 2]")


# ---------------------------------------------------------------------------
# lookup
# ---------------------------------------------------------------------------


def test_lookup_by_name_and_sole_entry():
    inst = loads_instance(FULL_DOC)
    assert inst.lookup("points", "p") == point("0.5", "0.3")
    assert inst.lookup("boxes", None).upper == point("0.4", "0.6")


def test_lookup_missing_name_lists_available():
    inst = loads_instance(FULL_DOC)
    with pytest.raises(DomainError, match=r"no 'r' in section points.*'p', 'q'"):
        inst.lookup("points", "r")


def test_lookup_unnamed_needs_single_entry():
    inst = loads_instance(FULL_DOC)
    with pytest.raises(DomainError, match="section points has 2 entries"):
        inst.lookup("points", None)


def test_family_polytopes_resolves_names():
    inst = loads_instance(FULL_DOC)
    fam = inst.family_polytopes("F")
    assert len(fam) == 3
    assert fam[0] is fam[2]


# ---------------------------------------------------------------------------
# round trip
# ---------------------------------------------------------------------------


def test_round_trip_identity():
    inst = loads_instance(FULL_DOC)
    again = loads_instance(dumps_instance(inst))
    assert again == inst


def test_round_trip_preserves_settings():
    doc = (
        '{"schema": 1, "tnorm": "lukasiewicz", "grid_step": "1/20",'
        ' "points": {"p": ["0.15"]}}'
    )
    inst = loads_instance(doc)
    again = loads_instance(dumps_instance(inst))
    assert again == inst
    assert again.tnorm.tag == "lukasiewicz"
    assert again.grid_step == Fraction(1, 20)


def test_round_trip_custom_bounds():
    doc = '{"schema": 1, "bounds": ["-1", "2"], "points": {"p": ["1.5", "-0.25"]}}'
    inst = loads_instance(doc)
    assert loads_instance(dumps_instance(inst)) == inst


def test_dump_is_valid_json_with_schema():
    inst = loads_instance(FULL_DOC)
    doc = json.loads(dumps_instance(inst))
    assert doc["schema"] == 1
    assert set(doc["polytopes"]) == {"X", "Y"}


def test_instance_from_dict_directly():
    inst = instance_from_dict({"schema": 1, "points": {"p": ["0.5"]}})
    assert isinstance(inst, Instance)
    assert inst.points["p"] == point("0.5")
