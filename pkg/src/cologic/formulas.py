"""The formula language: AST, parser and printer.

Formulas live in a context, a natural number counting the entries of the
tuples they speak about.  The core grammar is falsity (annotated with its
context), a graph atom naming the expected nerve exactly, negation,
disjunction, and a refinement quantifier along an arrangement.  The surface
syntax also offers `true@n`, conjunction, implication and the universal
quantifier; those are elaborated to the core connectives while parsing, so
every AST is already in core form.

Surface grammar (whitespace insensitive)::

    formula := 'false@' nat | 'true@' nat
             | 'graph{' nat ';' [edge (',' edge)*] '}'
             | '!' formula
             | '(' formula ('|' | '&' | '->') formula ')'
             | ('some' | 'all') '[' nat (',' nat)* ']' '.' formula
    edge    := nat '-' nat            (with the smaller endpoint first)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from cologic.covers import Arrangement
from cologic.graphs import FiniteGraph, GraphFormatError


class ParseError(ValueError):
    """Syntax or context error in formula text, with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Bottom:
    """Falsity, annotated with its context so inference stays one-pass."""

    context: int

    def __post_init__(self) -> None:
        if self.context < 1:
            raise ValueError(f"context must be positive, got {self.context}")


@dataclass(frozen=True)
class GraphAtom:
    """Asserts that the nerve of the tuple equals this graph exactly."""

    graph: FiniteGraph

    def __post_init__(self) -> None:
        if self.graph.vertex_count < 1:
            raise ValueError("graph atom needs at least one vertex")

    @property
    def context(self) -> int:
        return self.graph.vertex_count


@dataclass(frozen=True)
class Not:
    child: "Formula"

    @property
    def context(self) -> int:
        return self.child.context


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __post_init__(self) -> None:
        if self.left.context != self.right.context:
            raise ValueError(
                f"context mismatch: {self.left.context} vs {self.right.context}"
            )

    @property
    def context(self) -> int:
        return self.left.context


@dataclass(frozen=True)
class Exists:
    """There is a refinement along the arrangement satisfying the child.

    The child formula speaks about tuples of length `refinement.source`; the
    node itself lives in context `refinement.target`.
    """

    refinement: Arrangement
    child: "Formula"

    def __post_init__(self) -> None:
        if self.child.context != self.refinement.source:
            raise ValueError(
                f"context mismatch: quantifier over {self.refinement.source} "
                f"entries, child context {self.child.context}"
            )

    @property
    def context(self) -> int:
        return self.refinement.target


Formula = Union[Bottom, GraphAtom, Not, Or, Exists]


def true_(context: int) -> Formula:
    return Not(Bottom(context))


def and_(left: Formula, right: Formula) -> Formula:
    return Not(Or(Not(left), Not(right)))


def implies_(left: Formula, right: Formula) -> Formula:
    return Or(Not(left), right)


def forall_(refinement: Arrangement, child: Formula) -> Formula:
    return Not(Exists(refinement, Not(child)))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, position: int | None = None) -> ParseError:
        return ParseError(message, self.pos if position is None else position)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            raise self.error(f"expected {literal!r}")
        self.pos += len(literal)

    def try_literal(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])

    def nat_list(self) -> list[int]:
        values = [self.nat()]
        while self.try_literal(","):
            values.append(self.nat())
        return values

    def formula(self) -> Formula:
        self.skip_ws()
        start = self.pos
        if self.try_literal("false"):
            self.expect("@")
            context = self.nat()
            try:
                return Bottom(context)
            except ValueError as exc:
                raise self.error(str(exc), start) from None
        if self.try_literal("true"):
            self.expect("@")
            context = self.nat()
            try:
                return true_(context)
            except ValueError as exc:
                raise self.error(str(exc), start) from None
        if self.try_literal("graph"):
            self.expect("{")
            return self.graph_atom(start)
        if self.try_literal("!"):
            return Not(self.formula())
        if self.try_literal("("):
            return self.binary(start)
        quantifier = None
        if self.try_literal("some"):
            quantifier = "some"
        elif self.try_literal("all"):
            quantifier = "all"
        if quantifier is not None:
            self.expect("[")
            images = self.nat_list()
            self.expect("]")
            self.expect(".")
            child = self.formula()
            try:
                arrangement = Arrangement(tuple(images), max(images) + 1)
                if quantifier == "some":
                    return Exists(arrangement, child)
                return forall_(arrangement, child)
            except ValueError as exc:
                raise self.error(str(exc), start) from None
        raise self.error("expected a formula")

    def binary(self, start: int) -> Formula:
        left = self.formula()
        self.skip_ws()
        if self.try_literal("->"):
            op = "->"
        elif self.try_literal("|"):
            op = "|"
        elif self.try_literal("&"):
            op = "&"
        else:
            raise self.error("expected '|', '&' or '->'")
        right = self.formula()
        self.expect(")")
        try:
            if op == "|":
                return Or(left, right)
            if op == "&":
                return and_(left, right)
            return implies_(left, right)
        except ValueError as exc:
            raise self.error(str(exc), start) from None

    def graph_atom(self, start: int) -> Formula:
        vertices = self.nat()
        self.expect(";")
        edges: list[tuple[int, int]] = []
        if self.peek() != "}":
            while True:
                edge_start = self.pos
                i = self.nat()
                self.expect("-")
                j = self.nat()
                if not i < j:
                    raise self.error(
                        f"edge {i}-{j} must name the smaller vertex first", edge_start
                    )
                if (i, j) in edges:
                    raise self.error(f"duplicate edge {i}-{j}", edge_start)
                edges.append((i, j))
                if not self.try_literal(","):
                    break
        self.expect("}")
        try:
            return GraphAtom(FiniteGraph(vertices, frozenset(edges)))
        except (GraphFormatError, ValueError) as exc:
            raise self.error(str(exc), start) from None


def parse(text: str) -> Formula:
    """Parse surface syntax into a core AST; contexts are checked on the way.

    Raises ParseError with a character position for syntax errors and for
    context mismatches (unequal disjunct contexts, non-surjective quantifier
    maps, quantifier/child context disagreements).
    """
    parser = _Parser(text)
    result = parser.formula()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input after formula")
    return result


def print_formula(formula: Formula) -> str:
    """Render a core AST; the text parses back to an identical AST."""
    if isinstance(formula, Bottom):
        return f"false@{formula.context}"
    if isinstance(formula, GraphAtom):
        edges = ",".join(f"{i}-{j}" for i, j in formula.graph.edge_list())
        if edges:
            return f"graph{{{formula.graph.vertex_count}; {edges}}}"
        return f"graph{{{formula.graph.vertex_count};}}"
    if isinstance(formula, Not):
        return f"!{print_formula(formula.child)}"
    if isinstance(formula, Or):
        return f"({print_formula(formula.left)} | {print_formula(formula.right)})"
    if isinstance(formula, Exists):
        images = ",".join(str(v) for v in formula.refinement.images)
        return f"some[{images}]. {print_formula(formula.child)}"
    raise TypeError(f"not a formula: {formula!r}")
