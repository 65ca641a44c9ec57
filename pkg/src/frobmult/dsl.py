"""Task-file DSL.

::

    ring { p = 2; vars = [x, y]; relations = [x^2*y^2]; }
    analyze { q = [x + y]; }
    closure { q = [x + y]; e_max = 6; }

A file is one ``ring`` block followed by task blocks ``name { key = value; }``.
Values are integers, identifiers, polynomials or bracketed lists of those.
Polynomials are stored in canonical printed form, so two task files that
parse to equal values describe the same computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._lexer import Token, tokenize
from .errors import DSLSyntaxError, NonPrimeModulus
from .ffpoly import PolyRing, is_prime, parse_polynomial
from .invariants import KNOWN_FLAGS

# key -> value kind, per task
TASK_SCHEMA: dict[str, dict[str, str]] = {
    "analyze": {"q": "polys", "flags": "idents", "e_max": "int", "n_cap": "int", "patience": "int",
                "l": "int", "Q": "int"},
    "closure": {"q": "polys", "e_max": "int", "patience": "int", "fte_bound": "int"},
    "bounds": {"q": "polys", "flags": "idents", "l": "int", "Q": "int", "e_max": "int"},
    "family": {"name": "ident", "p": "int", "a": "int", "n_vars": "int", "max_deg": "int", "seed": "int",
               "free": "int", "trials": "int", "e_max": "int"},
    "sample_fte": {"trials": "int", "seed": "int", "e_max": "int", "patience": "int"},
}
REQUIRED = {"closure": ("q",), "family": ("name",)}


@dataclass
class Task:
    name: str
    params: dict = field(default_factory=dict)
    line: int = 0
    col: int = 0

    def __eq__(self, other):
        return isinstance(other, Task) and (self.name, self.params) == (other.name, other.params)


@dataclass
class TaskFile:
    p: int
    variables: tuple[str, ...]
    relations: tuple[str, ...]
    tasks: list[Task] = field(default_factory=list)

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.p, self.variables)

    def to_dsl(self) -> str:
        lines = [f"ring {{ p = {self.p}; vars = [{', '.join(self.variables)}]; "
                 f"relations = [{', '.join(self.relations)}]; }}"]
        for task in self.tasks:
            body = " ".join(f"{k} = {_render_value(v)};" for k, v in task.params.items())
            lines.append(f"{task.name} {{ {body} }}" if body else f"{task.name} {{ }}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"ring": {"p": self.p, "vars": list(self.variables), "relations": list(self.relations)},
                "tasks": [{"name": t.name, "params": t.params} for t in self.tasks]}


def _render_value(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    return str(v)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.peek()
        raise DSLSyntaxError(msg, tok.line, tok.col, tok.text)

    def expect(self, text: str | None = None, kind: str | None = None) -> Token:
        tok = self.peek()
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            self.error(f"expected {text or kind}")
        return self.take()

    def value_tokens(self) -> list[Token]:
        """Tokens of one value up to the terminating ';' (brackets balanced)."""
        out: list[Token] = []
        depth = 0
        while True:
            tok = self.peek()
            if tok.kind == "EOF":
                self.error("unterminated value")
            if tok.text in "([" and tok.kind == "OP":
                depth += 1
            elif tok.text in ")]" and tok.kind == "OP":
                depth -= 1
                if depth < 0:
                    self.error("unbalanced bracket")
            elif tok.text in ";{}" and tok.kind == "OP" and depth == 0:
                break
            out.append(self.take())
        if not out:
            self.error("missing value")
        return out

    def entries(self) -> list[tuple[Token, list[Token]]]:
        """``{ key = value; ... }`` as (key token, value tokens) pairs."""
        self.expect("{")
        out = []
        while self.peek().text != "}":
            key = self.expect(kind="IDENT")
            self.expect("=")
            out.append((key, self.value_tokens()))
            self.expect(";")
        self.expect("}")
        return out


def _split_list(parser: _Parser, toks: list[Token]) -> list[list[Token]]:
    if toks[0].text != "[" or toks[-1].text != "]":
        parser.error("expected a [...] list", toks[0])
    inner = toks[1:-1]
    if not inner:
        return []
    items: list[list[Token]] = [[]]
    depth = 0
    for tok in inner:
        if tok.kind == "OP" and tok.text in "([":
            depth += 1
        elif tok.kind == "OP" and tok.text in ")]":
            depth -= 1
        if tok.kind == "OP" and tok.text == "," and depth == 0:
            items.append([])
            continue
        items[-1].append(tok)
    for item in items:
        if not item:
            parser.error("empty list item", toks[0])
    return items


def _ident(parser: _Parser, toks: list[Token]) -> str:
    if len(toks) > 1:
        parser.error("unexpected token (missing separator?)", toks[1])
    if toks[0].kind != "IDENT":
        parser.error("expected an identifier", toks[0])
    return toks[0].text


def _int(parser: _Parser, toks: list[Token]) -> int:
    if len(toks) > 1:
        parser.error("unexpected token (missing separator?)", toks[1])
    if toks[0].kind != "INT":
        parser.error("expected an integer", toks[0])
    return int(toks[0].text)


def _poly(ring: PolyRing, toks: list[Token]) -> str:
    return str(parse_polynomial(ring, toks))


def parse_taskfile(text: str) -> TaskFile:
    """Parse task-file text; errors carry line and column."""
    ps = _Parser(text)
    head = ps.expect(kind="IDENT")
    if head.text != "ring":
        ps.error("file must start with a ring block", head)
    raw: dict[str, tuple[Token, list[Token]]] = {}
    for key, toks in ps.entries():
        if key.text not in ("p", "vars", "relations"):
            ps.error(f"unknown ring key {key.text!r}", key)
        if key.text in raw:
            ps.error(f"duplicate ring key {key.text!r}", key)
        raw[key.text] = (key, toks)
        if key.text == "p":
            p = _int(ps, toks)
            if not is_prime(p):
                raise NonPrimeModulus(f"{p} is not prime (line {toks[0].line}, column {toks[0].col})")
        elif key.text == "vars":
            names = tuple(_ident(ps, item) for item in _split_list(ps, toks))
            if not names:
                ps.error("vars must be nonempty", key)
            if len(set(names)) != len(names):
                ps.error("duplicate variable name", toks[0])
    for need in ("p", "vars", "relations"):
        if need not in raw:
            ps.error(f"ring block lacks {need!r}", head)
    ring = PolyRing(p, names)
    relations = tuple(_poly(ring, item) for item in _split_list(ps, raw["relations"][1]))
    tasks = []
    while ps.peek().kind != "EOF":
        name_tok = ps.expect(kind="IDENT")
        if name_tok.text not in TASK_SCHEMA:
            ps.error(f"unknown task {name_tok.text!r}", name_tok)
        schema = TASK_SCHEMA[name_tok.text]
        params: dict = {}
        for key, toks in ps.entries():
            kind = schema.get(key.text)
            if kind is None:
                ps.error(f"unknown key {key.text!r} for task {name_tok.text!r}", key)
            if key.text in params:
                ps.error(f"duplicate key {key.text!r}", key)
            if kind == "int":
                params[key.text] = _int(ps, toks)
            elif kind == "ident":
                params[key.text] = _ident(ps, toks)
            elif kind == "idents":
                items = _split_list(ps, toks)
                params[key.text] = [_ident(ps, item) for item in items]
                if key.text == "flags":
                    for item, flag in zip(items, params[key.text]):
                        if flag not in KNOWN_FLAGS:
                            ps.error(f"unknown flag {flag!r}; known: {', '.join(KNOWN_FLAGS)}", item[0])
            else:
                params[key.text] = [_poly(ring, item) for item in _split_list(ps, toks)]
        for need in REQUIRED.get(name_tok.text, ()):
            if need not in params:
                ps.error(f"task {name_tok.text!r} needs {need!r}", name_tok)
        tasks.append(Task(name_tok.text, params, name_tok.line, name_tok.col))
    return TaskFile(p, names, relations, tasks)
