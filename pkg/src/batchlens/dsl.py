"""Extractor/program AST and the canonical concrete syntax.

Node sizes follow the convention used throughout the synthesizer: every
constructor, builtin leaf, and nullary predicate counts one node, and a
parameterized predicate counts two (the constructor plus its constant).
Guards add no extra nodes, so a program's size is the sum of its
extractors' sizes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .symbolic import (
    AboveAge,
    BelowAge,
    Face,
    ObjectIs,
    Predicate,
    Text,
)
from . import symbolic


class Builtin(Enum):
    GetLeft = "GetLeft"
    GetRight = "GetRight"
    GetAbove = "GetAbove"
    GetBelow = "GetBelow"
    GetParents = "GetParents"


class Action(Enum):
    # Declaration order is also the canonical application order (Crop last).
    Blur = "Blur"
    Blackout = "Blackout"
    Sharpen = "Sharpen"
    Brighten = "Brighten"
    Recolor = "Recolor"
    Crop = "Crop"


class Extractor:
    """Base class for extractor AST nodes (frozen dataclass subclasses)."""

    __slots__ = ()

    @property
    def size(self) -> int:
        raise NotImplementedError

    @property
    def depth(self) -> int:
        raise NotImplementedError

    def children(self) -> tuple["Extractor", ...]:
        return ()


@dataclass(frozen=True)
class All(Extractor):
    size = 1
    depth = 1

    def __repr__(self):
        return "All"


@dataclass(frozen=True)
class Is(Extractor):
    pred: Predicate

    @property
    def size(self):
        return 1 + self.pred.size

    @property
    def depth(self):
        return 2

    def __repr__(self):
        return f"Is({self.pred!r})"


@dataclass(frozen=True)
class Complement(Extractor):
    e: Extractor

    @property
    def size(self):
        return 1 + self.e.size

    @property
    def depth(self):
        return 1 + self.e.depth

    def children(self):
        return (self.e,)

    def __repr__(self):
        return f"Complement({self.e!r})"


@dataclass(frozen=True)
class Union(Extractor):
    a: Extractor
    b: Extractor

    @property
    def size(self):
        return 1 + self.a.size + self.b.size

    @property
    def depth(self):
        return 1 + max(self.a.depth, self.b.depth)

    def children(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"Union({self.a!r}, {self.b!r})"


@dataclass(frozen=True)
class Intersect(Extractor):
    a: Extractor
    b: Extractor

    @property
    def size(self):
        return 1 + self.a.size + self.b.size

    @property
    def depth(self):
        return 1 + max(self.a.depth, self.b.depth)

    def children(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"Intersect({self.a!r}, {self.b!r})"


@dataclass(frozen=True)
class Find(Extractor):
    e: Extractor
    pred: Predicate
    func: Builtin

    @property
    def size(self):
        return 1 + self.e.size + self.pred.size + 1

    @property
    def depth(self):
        return 1 + max(self.e.depth, 2)

    def children(self):
        return (self.e,)

    def __repr__(self):
        return f"Find({self.e!r}, {self.pred!r}, {self.func.value})"


@dataclass(frozen=True)
class Filter(Extractor):
    e: Extractor
    pred: Predicate

    @property
    def size(self):
        return 1 + self.e.size + self.pred.size

    @property
    def depth(self):
        return 1 + max(self.e.depth, 2)

    def children(self):
        return (self.e,)

    def __repr__(self):
        return f"Filter({self.e!r}, {self.pred!r})"


@dataclass(frozen=True)
class Program:
    """An ordered list of guarded actions, at most one guard per action."""

    guards: tuple[tuple[Extractor, Action], ...]

    def __post_init__(self):
        actions = [a for _, a in self.guards]
        if len(set(actions)) != len(actions):
            raise ValueError("more than one guard for the same action")

    @property
    def size(self) -> int:
        return sum(e.size for e, _ in self.guards)

    def __repr__(self):
        return program_to_text(self)


EMPTY_PROGRAM = Program(())


# -- concrete syntax ------------------------------------------------------

def predicate_to_text(p: Predicate) -> str:
    if p.kind == "ObjectIs":
        return f"Object({p.arg})"
    if p.kind == "Text":
        return f'Text("{p.arg}")'
    if p.arg is not None:
        return f"{p.kind}({p.arg})"
    return p.kind


def extractor_to_text(e: Extractor) -> str:
    if isinstance(e, All):
        return "All"
    if isinstance(e, Is):
        return f"Is({predicate_to_text(e.pred)})"
    if isinstance(e, Complement):
        return f"Complement({extractor_to_text(e.e)})"
    if isinstance(e, Union):
        return f"Union({extractor_to_text(e.a)}, {extractor_to_text(e.b)})"
    if isinstance(e, Intersect):
        return f"Intersect({extractor_to_text(e.a)}, {extractor_to_text(e.b)})"
    if isinstance(e, Find):
        return (f"Find({extractor_to_text(e.e)}, "
                f"{predicate_to_text(e.pred)}, {e.func.value})")
    if isinstance(e, Filter):
        return f"Filter({extractor_to_text(e.e)}, {predicate_to_text(e.pred)})"
    raise TypeError(e)


def program_to_text(p: Program) -> str:
    body = ", ".join(f"{extractor_to_text(e)} -> {a.value}" for e, a in p.guards)
    return "{ " + body + " }"


class SyntaxParseError(ValueError):
    pass


_TOKEN_RE = re.compile(
    r'\s*(?:(?P<str>"[^"]*")|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)'
    r"|(?P<punct>->|[{}(),]))"
)


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise SyntaxParseError(f"unexpected input at offset {pos}: {text[pos:pos+20]!r}")
            break
        tokens.append(m.group(m.lastgroup))  # type: ignore[arg-type]
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise SyntaxParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise SyntaxParseError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def parse_program(self) -> Program:
        self.take("{")
        guards = []
        if self.peek() != "}":
            while True:
                e = self.parse_extractor()
                self.take("->")
                name = self.take()
                try:
                    action = Action(name)
                except ValueError:
                    raise SyntaxParseError(f"unknown action {name!r}") from None
                guards.append((e, action))
                if self.peek() == ",":
                    self.take(",")
                    continue
                break
        self.take("}")
        if self.peek() is not None:
            raise SyntaxParseError(f"trailing input after program: {self.peek()!r}")
        return Program(tuple(guards))

    def parse_extractor(self) -> Extractor:
        name = self.take()
        if name == "All":
            return All()
        if name == "Is":
            self.take("(")
            p = self.parse_predicate()
            self.take(")")
            return Is(p)
        if name == "Complement":
            self.take("(")
            e = self.parse_extractor()
            self.take(")")
            return Complement(e)
        if name in ("Union", "Intersect"):
            self.take("(")
            operands = [self.parse_extractor()]
            while self.peek() == ",":
                self.take(",")
                operands.append(self.parse_extractor())
            self.take(")")
            if len(operands) < 2:
                raise SyntaxParseError(f"{name} needs at least two operands")
            cls = Union if name == "Union" else Intersect
            # N-ary sugar folds to right-nested binary nodes.
            e = operands[-1]
            for op in reversed(operands[:-1]):
                e = cls(op, e)
            return e
        if name == "Find":
            self.take("(")
            e = self.parse_extractor()
            self.take(",")
            p = self.parse_predicate()
            self.take(",")
            fname = self.take()
            try:
                func = Builtin(fname)
            except ValueError:
                raise SyntaxParseError(f"unknown builtin {fname!r}") from None
            self.take(")")
            return Find(e, p, func)
        if name == "Filter":
            self.take("(")
            e = self.parse_extractor()
            self.take(",")
            p = self.parse_predicate()
            self.take(")")
            return Filter(e, p)
        raise SyntaxParseError(f"unknown extractor {name!r}")

    def parse_predicate(self) -> Predicate:
        name = self.take()
        if name in ("FaceObject", "TextObject", "Smiling", "EyesOpen",
                    "MouthOpen", "Price", "PhoneNumber"):
            return Predicate(name)
        if name == "Object":
            self.take("(")
            cls = self.take()
            self.take(")")
            return ObjectIs(cls)
        if name in ("Face", "BelowAge", "AboveAge"):
            self.take("(")
            num = self.take()
            if not num.isdigit():
                raise SyntaxParseError(f"{name} expects an integer, found {num!r}")
            self.take(")")
            ctor = {"Face": Face, "BelowAge": BelowAge, "AboveAge": AboveAge}[name]
            return ctor(int(num))
        if name in ("Text", "Word"):  # Word() accepted as an input alias
            self.take("(")
            word = self.take()
            if word.startswith('"'):
                word = word[1:-1]
            self.take(")")
            return Text(word)
        raise SyntaxParseError(f"unknown predicate {name!r}")


def parse_extractor(text: str) -> Extractor:
    parser = _Parser(_tokenize(text))
    e = parser.parse_extractor()
    if parser.peek() is not None:
        raise SyntaxParseError(f"trailing input: {parser.peek()!r}")
    return e


def parse_program(text: str) -> Program:
    return _Parser(_tokenize(text)).parse_program()


__all__ = [
    "Action", "All", "Builtin", "Complement", "Extractor", "Filter", "Find",
    "Intersect", "Is", "Program", "EMPTY_PROGRAM", "Union",
    "SyntaxParseError", "extractor_to_text", "parse_extractor",
    "parse_program", "predicate_to_text", "program_to_text",
]
