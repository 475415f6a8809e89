"""
Модуль разбора выражений (Pratt-парсер).

Грамматика (EBNF):

    expr    = term , { ("+" | "-") , term } ;
    term    = unary , { ("*" | "/") , unary } ;
    unary   = "-" , unary | "+" , unary | power ;
    power   = atom , [ ("^" | "**") , unary ] ;       (* правоассоциативно *)
    atom    = number | name | name , "(" , expr , ")" | "(" , expr , ")" ;
    number  = digits , [ "." , digits ] , [ ("e" | "E") , [ "+" | "-" ] , digits ] ;
    name    = letter , { letter | digit | "_" } ;

Имена x, y1, y2 - переменные, exp/ln/sqrt - функции, остальные - параметры.
"""
import re
from dataclasses import dataclass
from typing import Iterator, Optional

from expressions.nodes import FUNCTIONS, PRECEDENCE, VARIABLES, Binary, Call, Expr, Neg, Num, Param, Var
from utils.errors import ExprSyntaxError, UnknownFunctionError

TOKEN_PATTERN = re.compile(
    r"(?P<space>[ \t\r]+)"
    r"|(?P<newline>\n)"
    r"|(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()])"
)

# Сила связывания слева для инфиксных операций
BINDING = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 30, "**": 30}


@dataclass(frozen=True)
class Token:
    """Лексема с позицией в исходном тексте."""

    kind: str
    text: str
    line: int
    column: int


def tokenize(source: str) -> Iterator[Token]:
    """
    Разбивает текст на лексемы.

    Args:
        source: Исходный текст

    Returns:
        Iterator[Token]: Поток лексем, завершающийся лексемой end
    """
    position = 0
    line, line_start = 1, 0
    while position < len(source):
        match = TOKEN_PATTERN.match(source, position)
        if match is None:
            raise ExprSyntaxError(
                f"Недопустимый символ '{source[position]}'", line, position - line_start + 1
            )
        kind = match.lastgroup
        if kind == "newline":
            line += 1
            line_start = match.end()
        elif kind != "space":
            yield Token(kind, match.group(), line, match.start() - line_start + 1)
        position = match.end()
    yield Token("end", "", line, position - line_start + 1)


class _Parser:
    """Разбор потока лексем в дерево."""

    def __init__(self, source: str):
        self.tokens = list(tokenize(source))
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        current = self.token
        self.index += 1
        return current

    def error(self, message: str, token: Optional[Token] = None) -> ExprSyntaxError:
        token = token or self.token
        return ExprSyntaxError(message, token.line, token.column)

    def binding(self, token: Token) -> int:
        if token.kind == "op":
            return BINDING.get(token.text, 0)
        return 0

    def expression(self, rbp: int = 0) -> Expr:
        token = self.advance()
        left = self.nud(token)
        while rbp < self.binding(self.token):
            token = self.advance()
            left = self.led(token, left)
        return left

    def nud(self, token: Token) -> Expr:
        if token.kind == "number":
            return Num(float(token.text))
        if token.kind == "name":
            if self.token.kind == "op" and self.token.text == "(":
                if token.text not in FUNCTIONS:
                    raise UnknownFunctionError(
                        f"Неизвестная функция '{token.text}'", token.line, token.column
                    )
                self.advance()
                argument = self.expression()
                self.expect(")")
                return Call(token.text, argument)
            if token.text in FUNCTIONS:
                raise self.error(f"После имени функции '{token.text}' ожидается '('", token)
            if token.text in VARIABLES:
                return Var(token.text)
            return Param(token.text)
        if token.kind == "op":
            if token.text == "(":
                inner = self.expression()
                self.expect(")")
                return inner
            if token.text == "-":
                return Neg(self.expression(PRECEDENCE["neg"]))
            if token.text == "+":
                return self.expression(PRECEDENCE["neg"])
        if token.kind == "end":
            raise self.error("Неожиданный конец выражения", token)
        raise self.error(f"Неожиданная лексема '{token.text}'", token)

    def led(self, token: Token, left: Expr) -> Expr:
        op = "^" if token.text == "**" else token.text
        if op == "^":
            # Правая ассоциативность
            return Binary("^", left, self.expression(BINDING["^"] - 1))
        return Binary(op, left, self.expression(BINDING[op]))

    def expect(self, text: str) -> None:
        if self.token.kind != "op" or self.token.text != text:
            found = self.token.text or "конец выражения"
            raise self.error(f"Ожидалось '{text}', найдено '{found}'")
        self.advance()


def parse(source: str) -> Expr:
    """
    Разбирает выражение.

    Args:
        source: Текст выражения, например "a*y1^2 + b*y1*y2"

    Returns:
        Expr: Корень дерева
    """
    if not source or not source.strip():
        raise ExprSyntaxError("Пустое выражение", 1, 1)
    parser = _Parser(source)
    tree = parser.expression()
    if parser.token.kind != "end":
        raise parser.error(f"Лишний текст после выражения: '{parser.token.text}'")
    return tree
