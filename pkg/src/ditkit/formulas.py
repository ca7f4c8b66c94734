"""Propositional formulas: syntax tree, text parser, evaluation.

Connectives from loosest to tightest binding: <-> , -> , | , & , ~ .
Implication associates to the right, the other binary connectives to
the left. Tokens are ~ & | -> <-> T F ( ) plus variable names matching
[A-Za-z][A-Za-z0-9_]* (T and F themselves are the constants).

The same tree evaluates two ways: under subset semantics each variable
denotes a subset of the universe, and under partition semantics each
variable denotes a partition, with every connective lifted through
distinction sets.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .errors import (
    FormulaSyntaxError,
    UnbalancedParensError,
    UnboundVariableError,
    UniverseMismatchError,
    UniverseTooSmallError,
)
from .partitions import Connective, Partition, lift_connective
from .relations import Subset, _check_n


class Formula:
    """Base class for formula nodes; instances are immutable."""

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool  # True is the top constant T, False the bottom constant F


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


_BINARY_CONNECTIVE = {
    And: Connective.AND,
    Or: Connective.OR,
    Implies: Connective.IMPLIES,
    Iff: Connective.IFF,
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    length = len(text)
    while i < length:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("<->", i):
            tokens.append(("IFF", "<->", i))
            i += 3
        elif text.startswith("->", i):
            tokens.append(("IMPLIES", "->", i))
            i += 2
        elif ch == "~":
            tokens.append(("NOT", "~", i))
            i += 1
        elif ch == "&":
            tokens.append(("AND", "&", i))
            i += 1
        elif ch == "|":
            tokens.append(("OR", "|", i))
            i += 1
        elif ch == "(":
            tokens.append(("LPAREN", "(", i))
            i += 1
        elif ch == ")":
            tokens.append(("RPAREN", ")", i))
            i += 1
        elif ch.isalpha():
            j = i + 1
            while j < length and (text[j].isalnum() or text[j] == "_"):
                j += 1
            name = text[i:j]
            if name == "T":
                tokens.append(("CONST", "T", i))
            elif name == "F":
                tokens.append(("CONST", "F", i))
            else:
                tokens.append(("VAR", name, i))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("END", "", length))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> Formula:
        formula = self.iff()
        kind, lexeme, position = self.peek()
        if kind == "RPAREN":
            raise UnbalancedParensError("unmatched ')'", position)
        if kind != "END":
            raise FormulaSyntaxError(f"unexpected {lexeme!r} after formula", position)
        return formula

    def iff(self) -> Formula:
        formula = self.implies()
        while self.peek()[0] == "IFF":
            self.advance()
            formula = Iff(formula, self.implies())
        return formula

    def implies(self) -> Formula:
        formula = self.disjunction()
        if self.peek()[0] == "IMPLIES":
            self.advance()
            return Implies(formula, self.implies())
        return formula

    def disjunction(self) -> Formula:
        formula = self.conjunction()
        while self.peek()[0] == "OR":
            self.advance()
            formula = Or(formula, self.conjunction())
        return formula

    def conjunction(self) -> Formula:
        formula = self.unary()
        while self.peek()[0] == "AND":
            self.advance()
            formula = And(formula, self.unary())
        return formula

    def unary(self) -> Formula:
        if self.peek()[0] == "NOT":
            self.advance()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, lexeme, position = self.advance()
        if kind == "VAR":
            return Var(lexeme)
        if kind == "CONST":
            return Const(lexeme == "T")
        if kind == "LPAREN":
            formula = self.iff()
            closing_kind, _, closing_pos = self.peek()
            if closing_kind != "RPAREN":
                raise UnbalancedParensError("expected ')'", closing_pos)
            self.advance()
            return formula
        if kind == "END":
            raise FormulaSyntaxError("unexpected end of input", position)
        raise FormulaSyntaxError(f"unexpected {lexeme!r}", position)


def parse(text: str) -> Formula:
    """Parse formula text; raises FormulaSyntaxError with a position."""
    return _Parser(text).parse()


_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OP_TEXT = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_NOT_PREC = 5
_ATOM_PREC = 6


def _render(f: Formula) -> tuple[str, int]:
    if isinstance(f, Var):
        return f.name, _ATOM_PREC
    if isinstance(f, Const):
        return ("T" if f.value else "F"), _ATOM_PREC
    if isinstance(f, Not):
        text, prec = _render(f.child)
        if prec < _NOT_PREC:
            text = f"({text})"
        return "~" + text, _NOT_PREC
    prec = _PREC[type(f)]
    left_text, left_prec = _render(f.left)
    right_text, right_prec = _render(f.right)
    if type(f) is Implies:
        # right-associative: parenthesize an equal-strength left child
        if left_prec <= prec:
            left_text = f"({left_text})"
        if right_prec < prec:
            right_text = f"({right_text})"
    else:
        if left_prec < prec:
            left_text = f"({left_text})"
        if right_prec <= prec:
            right_text = f"({right_text})"
    return f"{left_text} {_OP_TEXT[type(f)]} {right_text}", prec


def format_formula(f: Formula) -> str:
    """Render to concrete syntax; parse(format_formula(f)) rebuilds f."""
    return _render(f)[0]


def formula_to_json(f: Formula) -> dict:
    """Plain-dict syntax tree: node kind plus children."""
    if isinstance(f, Var):
        return {"kind": "var", "name": f.name}
    if isinstance(f, Const):
        return {"kind": "const", "value": "T" if f.value else "F"}
    if isinstance(f, Not):
        return {"kind": "not", "children": [formula_to_json(f.child)]}
    kind = _BINARY_CONNECTIVE[type(f)].value
    return {"kind": kind, "children": [formula_to_json(f.left), formula_to_json(f.right)]}


def free_variables(f: Formula) -> tuple[str, ...]:
    """Variable names occurring in f, sorted, without duplicates."""
    names: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            names.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, (And, Or, Implies, Iff)):
            stack.append(node.left)
            stack.append(node.right)
    return tuple(sorted(names))


@dataclass(frozen=True)
class SubsetAssignment:
    """Maps variable names to subsets of a shared universe."""

    n: int
    values: Mapping[str, Subset]

    def __post_init__(self) -> None:
        _check_n(self.n)
        values = dict(self.values)
        object.__setattr__(self, "values", values)
        for name, subset in values.items():
            if subset.n != self.n:
                raise UniverseMismatchError(
                    f"value for {name!r} lives on n={subset.n}, expected {self.n}"
                )


@dataclass(frozen=True)
class PartitionAssignment:
    """Maps variable names to partitions of a shared universe."""

    n: int
    values: Mapping[str, Partition]

    def __post_init__(self) -> None:
        _check_n(self.n)
        values = dict(self.values)
        object.__setattr__(self, "values", values)
        for name, partition in values.items():
            if partition.n != self.n:
                raise UniverseMismatchError(
                    f"value for {name!r} lives on n={partition.n}, expected {self.n}"
                )


def _eval_subset_members(f: Formula, n: int, env: Mapping[str, frozenset[int]]) -> frozenset[int]:
    if isinstance(f, Var):
        try:
            return env[f.name]
        except KeyError:
            raise UnboundVariableError(f"variable {f.name!r} has no value") from None
    if isinstance(f, Const):
        return frozenset(range(n)) if f.value else frozenset()
    if isinstance(f, Not):
        return frozenset(range(n)) - _eval_subset_members(f.child, n, env)
    left = _eval_subset_members(f.left, n, env)
    right = _eval_subset_members(f.right, n, env)
    if isinstance(f, And):
        return left & right
    if isinstance(f, Or):
        return left | right
    if isinstance(f, Implies):
        return (frozenset(range(n)) - left) | right
    return (left & right) | (frozenset(range(n)) - (left | right))


def eval_subset(f: Formula, assignment: SubsetAssignment) -> Subset:
    """Evaluate under subset semantics; the result is a subset of the
    assignment's universe."""
    env = {name: subset.members for name, subset in assignment.values.items()}
    return Subset(assignment.n, _eval_subset_members(f, assignment.n, env))


def _eval_partition_env(f: Formula, n: int, env: Mapping[str, Partition]) -> Partition:
    if isinstance(f, Var):
        try:
            return env[f.name]
        except KeyError:
            raise UnboundVariableError(f"variable {f.name!r} has no value") from None
    if isinstance(f, Const):
        tag = Connective.TOP if f.value else Connective.BOTTOM
        return lift_connective(tag, (), n=n)
    if isinstance(f, Not):
        return lift_connective(Connective.NOT, (_eval_partition_env(f.child, n, env),))
    left = _eval_partition_env(f.left, n, env)
    right = _eval_partition_env(f.right, n, env)
    return lift_connective(_BINARY_CONNECTIVE[type(f)], (left, right))


def eval_partition(f: Formula, assignment: PartitionAssignment) -> Partition:
    """Evaluate under partition semantics via lifted connectives."""
    if assignment.n < 2:
        raise UniverseTooSmallError(
            f"partition semantics needs n >= 2, got n={assignment.n}"
        )
    return _eval_partition_env(f, assignment.n, assignment.values)


def random_formula(
    rng: random.Random,
    variables: tuple[str, ...] = ("p", "q", "r"),
    max_depth: int = 8,
) -> Formula:
    """Draw a random formula tree, fully determined by rng's state."""
    roll = rng.random()
    if max_depth <= 0 or roll < 0.32:
        if rng.random() < 0.12:
            return Const(rng.random() < 0.5)
        return Var(rng.choice(list(variables)))
    if roll < 0.47:
        return Not(random_formula(rng, variables, max_depth - 1))
    shape = rng.choice((And, Or, Implies, Iff))
    return shape(
        random_formula(rng, variables, max_depth - 1),
        random_formula(rng, variables, max_depth - 1),
    )
