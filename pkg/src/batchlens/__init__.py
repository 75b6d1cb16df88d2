"""batchlens: batch image editing by demonstration.

A symbolic-image DSL with a reference interpreter, a goal-directed
worklist synthesizer that learns extractor programs from demonstrated
edits, raster kernels that apply the resulting edits, and a benchmark
harness plus HTTP service on top.
"""

from .symbolic import (
    AboveAge,
    BelowAge,
    BoundingBox,
    EMPTY_IMAGE,
    Face,
    FaceObject,
    IngestionError,
    MouthOpen,
    EyesOpen,
    Object,
    ObjectIs,
    PhoneNumber,
    Predicate,
    Price,
    Smiling,
    SymbolicImage,
    Text,
    TextObject,
    entails,
    make_text_object,
    merge_images,
)
from .dsl import (
    Action,
    All,
    Builtin,
    Complement,
    EMPTY_PROGRAM,
    Extractor,
    Filter,
    Find,
    Intersect,
    Is,
    Program,
    Union,
    extractor_to_text,
    parse_extractor,
    parse_program,
    program_to_text,
)
from .interp import (
    Edit,
    contents,
    eval_extractor,
    eval_program,
    first_match,
    spatial,
)
from .synth import (
    Goal,
    SearchConfig,
    SearchReport,
    Spec,
    SynthesisFailure,
    SynthesisTimeout,
    synthesize,
    synthesize_extractor,
)

__version__ = "0.1.0"
