"""A tour of symbolic images and the extractor language.

Builds the street scene used throughout the test suite (a person with a
face, a car with a license plate) and walks through evaluating a few
extractors against it.
"""

from batchlens.dsl import Complement, Filter, Find, Builtin, Is, parse_extractor
from batchlens.interp import eval_extractor
from batchlens.symbolic import (
    BoundingBox,
    FaceObject,
    Object,
    ObjectIs,
    SymbolicImage,
    TextObject,
    make_text_object,
)

scene = SymbolicImage([
    Object("p1", {"objectType": "person"}, BoundingBox(10, 40, 10, 90)),
    Object("p2", {"objectType": "face", "faceId": 1,
                  "Smiling": True, "EyesOpen": True},
           BoundingBox(18, 32, 12, 26)),
    Object("p3", {"objectType": "car"}, BoundingBox(50, 120, 40, 90)),
    make_text_object("p4", "kx319", BoundingBox(80, 105, 70, 84)),
])


def show(label, extractor):
    out = eval_extractor(extractor, scene)
    print(f"{label:50s} -> {sorted(o.id for o in out)}")


print("the scene:", sorted(o.id for o in scene))
print()

# simple predicate queries
show("Is(FaceObject)", Is(FaceObject))
show("Is(Object(car))", Is(ObjectIs("car")))

# everything that is not a car
show("Complement(Is(Object(car)))", Complement(Is(ObjectIs("car"))))

# the license plate: text contained in a car
show("Filter(Is(Object(car)), Text)",
     Filter(Is(ObjectIs("car")), TextObject))

# the other direction: the car that contains the plate
show("Find(Is(Text), Object(car), GetParents)",
     Find(Is(TextObject), ObjectIs("car"), Builtin.GetParents))

# the same programs round-trip through the concrete syntax
e = parse_extractor("Filter(Is(Object(car)), TextObject)")
print()
print("parsed:", e)
print("same result:", eval_extractor(e, scene) ==
      eval_extractor(Filter(Is(ObjectIs("car")), TextObject), scene))
