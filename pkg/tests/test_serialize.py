"""Wire format: round trips, closed schema, parse errors."""

import json

import pytest

from crittermine.blocks import CritterProgram
from crittermine.fixtures import ridge_cut, tutorial_cut, tutorial_prescribed_mines
from crittermine.serialize import (
    ParseError,
    SchemaError,
    dumps,
    loads,
    path_from_doc,
    path_to_doc,
    program_from_doc,
    program_to_doc,
)
from crittermine.blocks import path

from gen import ProgramGen


def test_roundtrip_tutorial_cut():
    cut = tutorial_cut()
    assert program_from_doc(program_to_doc(cut)) == cut


def test_roundtrip_through_text():
    cut = ridge_cut()
    assert loads(dumps(cut)) == cut


def test_roundtrip_test_programs():
    for mine in tutorial_prescribed_mines():
        assert program_from_doc(program_to_doc(mine.test)) == mine.test


def test_empty_loop_is_valid():
    program = program_from_doc({"init": [], "loop": []})
    assert program == CritterProgram()


def test_unknown_statement_kind_rejected():
    with pytest.raises(SchemaError):
        program_from_doc({"init": [], "loop": [{"kind": "while", "cond": {}, "body": []}]})


def test_unknown_key_rejected():
    doc = program_to_doc(tutorial_cut())
    doc["loop"][0]["sneaky"] = True
    with pytest.raises(SchemaError) as err:
        program_from_doc(doc)
    assert "sneaky" in str(err.value)


def test_wrong_top_level_keys_rejected():
    with pytest.raises(SchemaError):
        program_from_doc({"init": [], "loop": [], "extra": 1})
    with pytest.raises(SchemaError):
        program_from_doc({"init": []})


def test_parse_error_carries_location():
    with pytest.raises(ParseError) as err:
        loads("{'not': json}")
    assert err.value.line == 1
    assert err.value.column is not None


def test_bool_not_accepted_as_int():
    with pytest.raises(SchemaError):
        program_from_doc({"init": [], "loop": [
            {"kind": "assign",
             "target": {"kind": "attr", "name": "size"},
             "value": {"kind": "int", "value": True}}]})


def test_path_roundtrip():
    p = path("loop", 0, 1, 2)
    assert path_from_doc(path_to_doc(p)) == p
    with pytest.raises(SchemaError):
        path_from_doc({"section": "loops", "indices": []})
    with pytest.raises(SchemaError):
        path_from_doc({"section": "loop", "indices": [-1]})


def test_roundtrip_generated_programs():
    gen = ProgramGen(101)
    for _ in range(200):
        program = gen.critter_program()
        assert program_from_doc(json.loads(dumps(program))) == program
        test = gen.test_program()
        assert program_from_doc(json.loads(dumps(test))) == test
