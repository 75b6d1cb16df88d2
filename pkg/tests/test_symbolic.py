"""Symbolic image layer: objects, predicates, entailment, merging."""

import random

import pytest

from batchlens.symbolic import (
    AboveAge,
    BelowAge,
    BoundingBox,
    EMPTY_IMAGE,
    Face,
    FaceObject,
    IngestionError,
    Object,
    ObjectIs,
    Predicate,
    Price,
    PhoneNumber,
    Smiling,
    SymbolicImage,
    Text,
    TextObject,
    entails,
    is_phone_number,
    is_price,
    make_text_object,
    merge_images,
    normalize_word,
)

BOX = BoundingBox(0, 10, 0, 10)


def face(oid="f", **props):
    return Object(oid, {"objectType": "face", **props}, BOX)


def test_object_requires_type():
    with pytest.raises(IngestionError):
        Object("x", {}, BOX)


def test_attr_type_restrictions():
    with pytest.raises(IngestionError):
        Object("x", {"objectType": "car", "Smiling": True}, BOX)
    with pytest.raises(IngestionError):
        Object("x", {"objectType": "face", "textBody": "hi"}, BOX)
    # faces may carry face attrs, text may carry text attrs
    face("ok", Smiling=True)
    make_text_object("t", "word", BOX)


def test_object_identity_semantics():
    a = Object("x", {"objectType": "car"}, BOX, "img")
    b = Object("x", {"objectType": "cat"}, BoundingBox(1, 2, 1, 2), "img")
    c = Object("x", {"objectType": "car"}, BOX, "other")
    assert a == b and hash(a) == hash(b)
    assert a != c


def test_bounding_box_validation():
    with pytest.raises(ValueError):
        BoundingBox(5, 5, 0, 1)
    with pytest.raises(ValueError):
        BoundingBox(-1, 5, 0, 1)
    assert BoundingBox(0, 10, 0, 10).contains(BoundingBox(2, 8, 2, 8))
    assert BoundingBox(0, 10, 0, 10).contains(BoundingBox(0, 10, 0, 10))
    assert not BoundingBox(2, 8, 2, 8).contains(BoundingBox(0, 10, 0, 10))
    assert BoundingBox(0, 4, 0, 5).area == 20


def test_normalize_word():
    assert normalize_word('  "Total:" ') == "total"
    assert normalize_word("3.50") == "3.50"
    assert normalize_word("!!!") == ""


def test_price_and_phone_regexes():
    for s in ("3.50", "$3.50", "12", "€4.99", "£0.10"):
        assert is_price(s), s
    for s in ("3.5", "3.505", "a3", "", "1,50"):
        assert not is_price(s), s
    for s in ("555-301-4422", "(555)301-4422", "555 301 4422", "555.301.4422",
              "5553014422"):
        assert is_phone_number(s), s
    for s in ("55-301-4422", "555-301-442", "phone", ""):
        assert not is_phone_number(s), s


def test_entailment_table():
    f = face(faceId=8, Smiling=True, EyesOpen=False, ageLow=25, ageHigh=35)
    kid = face("k", ageLow=8, ageHigh=12)
    bare = face("b")
    t = make_text_object("t", "Total:", BOX)
    price = make_text_object("p", "3.50", BOX)
    car = Object("c", {"objectType": "car"}, BOX)

    assert entails(f, FaceObject) and not entails(car, FaceObject)
    assert entails(t, TextObject) and not entails(f, TextObject)
    assert entails(car, ObjectIs("car")) and not entails(car, ObjectIs("cat"))
    assert entails(f, Face(8)) and not entails(f, Face(9))
    assert entails(f, Smiling)
    assert not entails(f, Predicate("EyesOpen"))  # False attr
    assert not entails(bare, Smiling)  # missing attr is false
    # BelowAge n: ageHigh < n; AboveAge n: ageLow >= n
    assert entails(kid, BelowAge(18)) and not entails(kid, BelowAge(12))
    assert entails(f, AboveAge(18)) and entails(f, AboveAge(25))
    assert not entails(f, AboveAge(26)) and not entails(f, BelowAge(18))
    assert not entails(bare, BelowAge(100)) and not entails(bare, AboveAge(0))
    assert entails(t, Text("total")) and entails(t, Text('"TOTAL"'))
    assert not entails(t, Text("tax"))
    assert entails(price, Price) and not entails(price, PhoneNumber)
    assert not entails(t, Price)


def test_predicate_arity_checks():
    with pytest.raises(ValueError):
        Predicate("Smiling", 1)
    with pytest.raises(ValueError):
        Predicate("Face")
    with pytest.raises(ValueError):
        Predicate("Nope")


def test_predicate_sizes_and_order():
    assert FaceObject.size == 1
    assert Face(8).size == 2
    assert ObjectIs("car").size == 2
    assert sorted([Face(8), FaceObject, Text("a")])[0] == FaceObject


def test_symbolic_image_set_algebra():
    a, b, c = face("a"), face("b"), face("c")
    x = SymbolicImage([a, b])
    y = SymbolicImage([b, c])
    assert (x | y).ids() == SymbolicImage([a, b, c]).ids()
    assert (x & y).ids() == SymbolicImage([b]).ids()
    assert (x - y).ids() == SymbolicImage([a]).ids()
    assert SymbolicImage([b]) <= x and not (x <= y)
    assert not EMPTY_IMAGE and len(x) == 2 and a in x


def test_symbolic_image_identity_dedup():
    # equality is by (image_id, id), so same-id objects collapse to one
    img = SymbolicImage([face("a"), face("a", Smiling=True)])
    assert len(img) == 1


def test_merge_images_namespaces_ids():
    img1 = [face("f"), Object("c", {"objectType": "car"}, BOX)]
    img2 = [face("f", Smiling=True)]
    merged = merge_images([("i1", img1), ("i2", img2)])
    ids = {o.id for o in merged}
    assert ids == {"i1/f", "i1/c", "i2/f"}
    assert {o.image_id for o in merged} == {"i1", "i2"}
    f2 = merged.by_id("i2/f")
    assert entails(f2, Smiling)


def test_merge_rejects_duplicate_local_ids():
    with pytest.raises(IngestionError):
        merge_images([("i1", [face("f"), face("f")])])


def test_make_text_object_derives_attrs():
    p = make_text_object("p", "$4.20", BOX)
    assert p.props["isPrice"] and not p.props["isPhoneNumber"]
    n = make_text_object("n", "555-301-4422", BOX)
    assert n.props["isPhoneNumber"] and not n.props["isPrice"]


def test_entailment_is_total_random():
    # entails never raises and is pure on arbitrary generated objects
    from helpers import random_image

    rng = random.Random(20260823)
    preds = [FaceObject, TextObject, Smiling, Price, PhoneNumber, Face(1),
             ObjectIs("car"), BelowAge(18), AboveAge(18), Text("total")]
    for _ in range(1000):
        img = random_image(rng)
        for o in img:
            for p in preds:
                assert entails(o, p) == entails(o, p)
