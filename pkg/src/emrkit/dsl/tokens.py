"""Tokenizer for the EMR DSL.

Hand-rolled: the language is small and a hand-written lexer gives exact
line/column positions, which diagnostics and the repair pass depend on.
Comments are kept in the token stream because trailing ``//`` comments carry
the per-statement explanations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IllegalCharacter

KEYWORDS = frozenset({"MR", "for", "if", "continue", "var", "true", "false"})

# Longest match first: '&&' must win over '&', '{{' over '{'.
PUNCTUATION = (
    "{{",
    "}}",
    "&&",
    "||",
    "{",
    "}",
    "(",
    ")",
    ",",
    ";",
    ":",
    ".",
    "!",
    "&",
    "=",
)

_WS = " \t\r\n"


@dataclass
class Token:
    kind: str  # keyword | identifier | integer-literal | string-literal | punctuation | comment | eof
    lexeme: str
    line: int
    column: int
    # Whitespace between the previous token and this one; lets callers
    # reconstruct the original source byte-for-byte.
    leading_trivia: str = field(default="", compare=False)

    def is_punct(self, lexeme: str) -> bool:
        return self.kind == "punctuation" and self.lexeme == lexeme


def tokenize(source: str) -> list[Token]:
    """Lex ``source`` into tokens, ending with a single ``eof`` token.

    Raises IllegalCharacter for any byte outside the grammar's alphabet.
    """
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)
    trivia_start = 0

    def emit(kind: str, lexeme: str, tline: int, tcol: int) -> None:
        nonlocal trivia_start
        tokens.append(Token(kind, lexeme, tline, tcol, source[trivia_start : i - len(lexeme)]))
        trivia_start = i

    while i < n:
        ch = source[i]
        if ch in _WS:
            if ch == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1
            continue
        start_line, start_col = line, col
        if source.startswith("//", i):
            j = source.find("\n", i)
            if j == -1:
                j = n
            lexeme = source[i:j]
            i = j
            col += len(lexeme)
            emit("comment", lexeme, start_line, start_col)
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            lexeme = source[i:j]
            i = j
            col += len(lexeme)
            emit("keyword" if lexeme in KEYWORDS else "identifier", lexeme, start_line, start_col)
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            lexeme = source[i:j]
            i = j
            col += len(lexeme)
            emit("integer-literal", lexeme, start_line, start_col)
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] != '"':
                if source[j] == "\n":
                    raise IllegalCharacter("\n", line, col + (j - i))
                if source[j] == "\\" and j + 1 < n:
                    j += 1
                j += 1
            if j >= n:
                raise IllegalCharacter('"', start_line, start_col)
            lexeme = source[i : j + 1]
            i = j + 1
            col += len(lexeme)
            emit("string-literal", lexeme, start_line, start_col)
            continue
        for p in PUNCTUATION:
            if source.startswith(p, i):
                i += len(p)
                col += len(p)
                emit("punctuation", p, start_line, start_col)
                break
        else:
            raise IllegalCharacter(ch, line, col)

    tokens.append(Token("eof", "", line, col, source[trivia_start:]))
    return tokens


def reconstruct(tokens: list[Token]) -> str:
    """Inverse of tokenize: concatenated trivia + lexemes give back the source."""
    return "".join(t.leading_trivia + t.lexeme for t in tokens)


def string_value(lexeme: str) -> str:
    """Decode a string-literal lexeme (strip quotes, resolve \\" and \\\\)."""
    body = lexeme[1:-1]
    return body.replace('\\"', '"').replace("\\\\", "\\")


def string_lexeme(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
