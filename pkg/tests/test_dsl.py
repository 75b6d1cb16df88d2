"""AST sizes, canonical syntax printer, and the parser."""

import random

import pytest

from batchlens.dsl import (
    Action,
    All,
    Builtin,
    Complement,
    Filter,
    Find,
    Intersect,
    Is,
    Program,
    SyntaxParseError,
    Union,
    extractor_to_text,
    parse_extractor,
    parse_program,
    program_to_text,
)
from batchlens.symbolic import (
    Face,
    FaceObject,
    ObjectIs,
    Price,
    PhoneNumber,
    Smiling,
    Text,
    TextObject,
)
from helpers import random_extractor

# sizes of known benchmark programs, hand-counted under the node metric
SIZE_TABLE = [
    ("Complement(Is(Object(car)))", 4),
    ("Union(Is(Price), Is(PhoneNumber))", 5),
    ("Is(Smiling)", 2),
    ("Find(Is(FaceObject), FaceObject, GetAbove)", 5),
    ("Intersect(Is(Text(\"total\")), Is(Price))", 6),
    ("Filter(Is(Object(car)), TextObject)", 5),
    ("Union(Is(Object(guitar)), Find(Is(Object(guitar)), FaceObject, GetAbove))", 10),
    ("Intersect(Is(Price), Complement(Find(Is(Text(\"total\")), TextObject, GetRight)))", 10),
]


@pytest.mark.parametrize("text,size", SIZE_TABLE)
def test_size_metric(text, size):
    assert parse_extractor(text).size == size


def test_depth():
    assert All().depth == 1
    assert Is(Smiling).depth == 2
    assert Complement(Is(Smiling)).depth == 3
    assert Find(All(), FaceObject, Builtin.GetAbove).depth == 3
    assert Union(All(), Complement(All())).depth == 3


def test_printer_canonical_forms():
    assert extractor_to_text(Is(ObjectIs("car"))) == "Is(Object(car))"
    assert extractor_to_text(Is(Text("Total:"))) == 'Is(Text("total"))'
    assert extractor_to_text(Is(Face(8))) == "Is(Face(8))"
    assert (extractor_to_text(Find(All(), FaceObject, Builtin.GetLeft))
            == "Find(All, FaceObject, GetLeft)")


def test_round_trip_fixed():
    for text, _ in SIZE_TABLE:
        e = parse_extractor(text)
        assert parse_extractor(extractor_to_text(e)) == e


def test_round_trip_random():
    rng = random.Random(411)
    preds = [FaceObject, TextObject, Smiling, Price, PhoneNumber,
             Face(8), ObjectIs("car"), Text("total")]
    for _ in range(1000):
        e = random_extractor(rng, preds, depth=4)
        assert parse_extractor(extractor_to_text(e)) == e


def test_nary_sugar_folds_right():
    e = parse_extractor("Union(Is(Price), Is(PhoneNumber), Is(Smiling))")
    assert e == Union(Is(Price), Union(Is(PhoneNumber), Is(Smiling)))
    e = parse_extractor("Intersect(All, All, All, All)")
    assert e == Intersect(All(), Intersect(All(), Intersect(All(), All())))


def test_word_alias():
    assert parse_extractor('Is(Word("Total"))') == Is(Text("total"))
    assert parse_extractor("Is(Word(total))") == Is(Text("total"))


def test_program_syntax():
    p = parse_program('{ Is(Smiling) -> Blur, All -> Crop }')
    assert p.guards == ((Is(Smiling), Action.Blur), (All(), Action.Crop))
    assert parse_program(program_to_text(p)) == p
    assert parse_program("{ }") == Program(())
    assert p.size == 3


def test_program_one_guard_per_action():
    with pytest.raises(ValueError):
        Program(((All(), Action.Blur), (Is(Smiling), Action.Blur)))


@pytest.mark.parametrize("bad", [
    "Is()", "Union(All)", "Is(Smiling", "Frob(All)", "Is(Face(x))",
    "All extra", "{ All -> Shrink }", "Find(All, FaceObject, GetSideways)",
    "Complement(All))",
])
def test_parse_errors(bad):
    with pytest.raises(SyntaxParseError):
        parse_program(bad) if bad.startswith("{") else parse_extractor(bad)
