from dataclasses import dataclass
from enum import Enum

from src.modules.algebra.domain.entity.signature import Signature, is_variable_name
from src.modules.algebra.domain.entity.term import App, Term, Var
from src.modules.formulas.domain.entity.formula import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Or,
    Rel,
    all_variables,
    free_variables,
)
from src.modules.formulas.domain.errors import FormulaSyntaxError

CONNECTIVES = ("=", "rel", "not", "and", "or", "implies", "exists", "forall")


class TokenType(int, Enum):
    OPEN = 1
    CLOSE = 2
    SYMBOL = 3
    EOF = 4


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: str
    line: int
    column: int


@dataclass
class Node:
    """An s-expression: a symbol leaf or a parenthesised list."""

    value: str | list["Node"]
    line: int
    column: int

    @property
    def is_list(self) -> bool:
        return isinstance(self.value, list)


class Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.position = 0
        self.line_no = 1
        self.column = 1

    def _advance(self) -> str:
        c = self.text[self.position]
        self.position += 1
        if c == "\n":
            self.line_no += 1
            self.column = 1
        else:
            self.column += 1
        return c

    def tokens(self) -> list[Token]:
        found = []
        while self.position < len(self.text):
            c = self.text[self.position]
            line, column = self.line_no, self.column
            if c in " \t\r\n":
                self._advance()
            elif c == ";":
                while self.position < len(self.text) and self.text[self.position] != "\n":
                    self._advance()
            elif c == "(":
                self._advance()
                found.append(Token(TokenType.OPEN, c, line, column))
            elif c == ")":
                self._advance()
                found.append(Token(TokenType.CLOSE, c, line, column))
            else:
                chars = []
                while self.position < len(self.text) and self.text[self.position] not in " \t\r\n;()":
                    chars.append(self._advance())
                found.append(Token(TokenType.SYMBOL, "".join(chars), line, column))
        found.append(Token(TokenType.EOF, "", self.line_no, self.column))
        return found


class FormulaParser:
    """
    Parser for the s-expression formula language.

    Bound variables are standardized apart deterministically: a quantified
    variable keeps its name unless it is free elsewhere or already bound,
    in which case it becomes the least unused ``u<k>``.
    """

    def __init__(self, signature: Signature | None = None):
        self.signature = signature

    def parse(self, text: str) -> Formula:
        node = self._read(text)
        formula = self._formula(node)
        return self._standardize(formula)

    def parse_term(self, text: str) -> Term:
        return self._term(self._read(text))

    def _read(self, text: str) -> Node:
        tokens = Tokenizer(text).tokens()
        node, position = self._node(tokens, 0)
        if tokens[position].type != TokenType.EOF:
            token = tokens[position]
            raise FormulaSyntaxError(f"unexpected {token.value!r} after expression", token.line, token.column)
        return node

    def _node(self, tokens: list[Token], position: int) -> tuple[Node, int]:
        token = tokens[position]
        match token.type:
            case TokenType.EOF:
                raise FormulaSyntaxError("unexpected end of input", token.line, token.column)
            case TokenType.CLOSE:
                raise FormulaSyntaxError("unexpected )", token.line, token.column)
            case TokenType.SYMBOL:
                return Node(token.value, token.line, token.column), position + 1
        children = []
        position += 1
        while tokens[position].type != TokenType.CLOSE:
            if tokens[position].type == TokenType.EOF:
                raise FormulaSyntaxError("end of input inside list", token.line, token.column)
            child, position = self._node(tokens, position)
            children.append(child)
        return Node(children, token.line, token.column), position + 1

    @staticmethod
    def _fail(node: Node, message: str):
        raise FormulaSyntaxError(message, node.line, node.column)

    def _check_symbol(self, node: Node, name: str, arity: int, relation: bool):
        if name in CONNECTIVES:
            self._fail(node, f"{name!r} cannot be used as a symbol")
        if self.signature is None:
            return
        if name not in self.signature:
            self._fail(node, f"unknown symbol {name!r}")
        if self.signature.is_relation(name) != relation:
            self._fail(node, f"{name!r} used as {'relation' if relation else 'operation'}")
        if self.signature.arity(name) != arity:
            self._fail(node, f"{name!r} expects {self.signature.arity(name)} arguments, got {arity}")

    def _term(self, node: Node) -> Term:
        if not node.is_list:
            if is_variable_name(node.value):
                return Var(node.value)
            self._check_symbol(node, node.value, 0, relation=False)
            return App(node.value)
        if len(node.value) < 2 or node.value[0].is_list:
            self._fail(node, "a compound term is (symbol term ...)")
        head = node.value[0].value
        if is_variable_name(head):
            self._fail(node, f"variable {head!r} applied as an operation")
        args = tuple(self._term(child) for child in node.value[1:])
        self._check_symbol(node, head, len(args), relation=False)
        return App(head, args)

    def _formula(self, node: Node) -> Formula:
        if not node.is_list or not node.value or node.value[0].is_list:
            self._fail(node, "expected a formula (connective ...)")
        head, rest = node.value[0].value, node.value[1:]
        match head:
            case "=":
                if len(rest) != 2:
                    self._fail(node, "= takes exactly two terms")
                return Eq(self._term(rest[0]), self._term(rest[1]))
            case "rel":
                if not rest or rest[0].is_list:
                    self._fail(node, "rel takes a relation symbol and its arguments")
                args = tuple(self._term(child) for child in rest[1:])
                if not args:
                    self._fail(node, "relations have positive arity")
                self._check_symbol(rest[0], rest[0].value, len(args), relation=True)
                return Rel(rest[0].value, args)
            case "not":
                if len(rest) != 1:
                    self._fail(node, "not takes exactly one formula")
                return Not(self._formula(rest[0]))
            case "and" | "or":
                if not rest:
                    self._fail(node, f"empty {head} is not allowed")
                parts = tuple(self._formula(child) for child in rest)
                return And(parts) if head == "and" else Or(parts)
            case "implies":
                if len(rest) != 2:
                    self._fail(node, "implies takes exactly two formulas")
                return Implies(self._formula(rest[0]), self._formula(rest[1]))
            case "exists" | "forall":
                if len(rest) != 2 or not rest[0].is_list or not rest[0].value:
                    self._fail(node, f"{head} takes a non-empty variable list and a body")
                bound = []
                for child in rest[0].value:
                    if child.is_list or not is_variable_name(child.value):
                        self._fail(child, "quantified names must be variables")
                    bound.append(Var(child.value))
                body = self._formula(rest[1])
                return Exists(tuple(bound), body) if head == "exists" else Forall(tuple(bound), body)
        self._fail(node, f"unknown connective {head!r}")

    @staticmethod
    def _standardize(formula: Formula) -> Formula:
        used = {v.name for v in all_variables(formula)}
        free = {v.name for v in free_variables(formula)}
        taken = set(free)
        counter = [0]

        def fresh() -> Var:
            while True:
                counter[0] += 1
                name = f"u{counter[0]}"
                if name not in used and name not in taken:
                    return Var(name)

        def term(t: Term, env: dict) -> Term:
            if isinstance(t, Var):
                return env.get(t.name, t)
            return App(t.symbol, tuple(term(a, env) for a in t.args)) if t.args else t

        def walk(f: Formula, env: dict) -> Formula:
            match f:
                case Eq(left=left, right=right):
                    return Eq(term(left, env), term(right, env))
                case Rel(symbol=symbol, args=args):
                    return Rel(symbol, tuple(term(a, env) for a in args))
                case Not(body=body):
                    return Not(walk(body, env))
                case And(parts=parts):
                    return And(tuple(walk(p, env) for p in parts))
                case Or(parts=parts):
                    return Or(tuple(walk(p, env) for p in parts))
                case Implies(premise=premise, conclusion=conclusion):
                    return Implies(walk(premise, env), walk(conclusion, env))
                case Exists(variables=vs, body=body) | Forall(variables=vs, body=body):
                    inner = dict(env)
                    renamed = []
                    for v in vs:
                        target = v if v.name not in taken else fresh()
                        taken.add(target.name)
                        inner[v.name] = target
                        renamed.append(target)
                    cls = Exists if isinstance(f, Exists) else Forall
                    return cls(tuple(renamed), walk(body, inner))
            return f

        return walk(formula, {})
