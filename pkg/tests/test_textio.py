import json

import pytest

from conftest import REF_CYCLE
from sbham import textio
from sbham.core import FeedbackTable, Params
from sbham.errors import FormatError
from sbham.necklace import counting_report


def test_parse_symbols():
    assert textio.parse_symbols("0a z", 36) == (0, 10, 35)
    assert textio.format_symbols((0, 10, 35), 36) == "0az"
    with pytest.raises(FormatError):
        textio.parse_symbols("013", 3)
    with pytest.raises(FormatError):
        textio.parse_symbols("0", 37)


def test_choice_set_suffixes(ref_b, tmp_path):
    doc = textio.choice_set_to_dict(ref_b)
    assert doc == {"m": 3, "n": 3, "suffixes": ["01", "02", "10", "12"]}
    path = tmp_path / "s.json"
    textio.save_choice_set(ref_b, path)
    assert textio.load_choice_set(path) == ref_b


def test_choice_set_mask(ref_b):
    doc = textio.choice_set_to_dict(ref_b, "mask_hex")
    # b = 1 at prefixes 00, 11, 20, 21, 22 -> bits 0, 4, 6, 7, 8
    assert doc["mask_hex"] == "1d1"
    assert textio.choice_set_from_dict(doc) == ref_b


def test_mask_little_endian():
    b = textio.choice_set_from_dict({"m": 2, "n": 4, "mask_hex": "01"})
    assert b.bits.tolist() == [1, 0, 0, 0, 0, 0, 0, 0]
    b = textio.choice_set_from_dict({"m": 2, "n": 5, "mask_hex": "8000"})
    assert b.bits.tolist()[15] == 1 and b.weight == 1


@pytest.mark.parametrize("doc", [
    {"m": 3, "n": 3},
    {"m": 3, "n": 3, "suffixes": [], "mask_hex": "000"},
    {"m": 3, "n": 3, "suffixes": ["0"]},
    {"m": 3, "n": 3, "suffixes": ["03"]},
    {"m": 3, "n": 3, "suffixes": ["01", "01"]},
    {"m": 3, "n": 3, "mask_hex": "00"},
    {"m": 3, "n": 3, "mask_hex": "fff"},
    {"m": 3, "n": 3, "mask_hex": "xyz"},
    {"n": 3, "suffixes": []},
])
def test_choice_set_rejects(doc):
    with pytest.raises(FormatError):
        textio.choice_set_from_dict(doc)


def test_n1_choice_set():
    p = Params(3, 1)
    assert textio.choice_set_from_dict({"m": 3, "n": 1, "suffixes": [""]}) == FeedbackTable.constant(p, 0)
    assert textio.choice_set_to_dict(FeedbackTable.constant(p, 1), "mask_hex")["mask_hex"] == "1"


def test_load_bad_json(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    with pytest.raises(FormatError):
        textio.load_choice_set(path)


def test_burnside_csv():
    assert textio.burnside_csv(counting_report(3, 4)) == (
        "k,fix_rotation,fix_reflection\n"
        "0,81,9\n1,3,27\n2,9,9\n3,3,27\n"
        "N,24,\ndihedral_orbits,21,\nrfix,18,\n"
    )


def test_json_stable():
    a = textio.to_json("x", {"b": 1, "a": [1, 2]})
    assert a == textio.to_json("x", {"a": [1, 2], "b": 1})
    assert json.loads(a)["schema_version"] == textio.SCHEMA_VERSION


def test_text_and_csv():
    assert "valid  True" in textio.to_text({"valid": True, "m": 3})
    assert textio.to_csv([{"a": 1, "b": [1]}]) == 'a,b\n1,[1]\n'
