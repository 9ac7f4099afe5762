"""Line-oriented text formats for Sullivan models, Lie models and graphs.

Sullivan::

    algebra sullivan
    generator x 2
    generator y 3
    d x = 0
    d y = x^2

Lie::

    algebra lie
    generator a 3
    generator b 3
    generator c 7
    d c = [a, b]

Graph::

    vertex 1
    vertex 2
    edge 1 2
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from ratmodels.cdga import Generator, ModelError, Polynomial, SullivanModel, word_product


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(rf"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>{_NAME})|(?P<op>[-+*^\[\],]))")


def _tokens(text: str, line: int, offset: int):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[0]!r}", line,
                             offset + len(text[:pos]) + (len(text[pos:]) - len(text[pos:].lstrip())) + 1)
        kind = m.lastgroup
        out.append((kind, m.group(kind), offset + m.start(kind) + 1))
        pos = m.end()
    out.append(("end", "", offset + len(text) + 1))
    return out


class _Cursor:
    def __init__(self, toks, line):
        self.toks = toks
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.next()
        if t[1] != value:
            raise ParseError(f"expected {value!r}, found {t[1] or 'end of line'!r}", self.line, t[2])
        return t

    def fail(self, msg):
        raise ParseError(msg, self.line, self.peek()[2])


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield no, body


def _header(text: str) -> str | None:
    for no, body in _lines(text):
        parts = body.split()
        if parts[0] == "algebra":
            if len(parts) != 2 or parts[1] not in ("sullivan", "lie"):
                raise ParseError("expected 'algebra sullivan' or 'algebra lie'", no, 1)
            return parts[1]
        return None
    return None


def _signed_terms(cur: _Cursor, parse_term):
    terms = []
    sign = 1
    t = cur.peek()
    if t[1] in "+-" and t[0] == "op":
        cur.next()
        sign = -1 if t[1] == "-" else 1
    while True:
        coeff, body = parse_term(cur)
        terms.append((sign * coeff, body))
        t = cur.peek()
        if t[0] == "end":
            return terms
        if t[1] not in "+-" or t[0] != "op":
            cur.fail(f"expected '+' or '-', found {t[1]!r}")
        cur.next()
        sign = -1 if t[1] == "-" else 1


def _coefficient(cur: _Cursor):
    t = cur.peek()
    if t[0] == "num":
        cur.next()
        c = Fraction(t[1])
        if cur.peek()[1] == "*":
            cur.next()
            return c, True
        return c, False
    return Fraction(1), True


def _declarations(text: str, kind: str):
    gens: dict[str, int] = {}
    diffs: dict[str, tuple[int, str, int]] = {}
    for no, body in _lines(text):
        parts = body.split()
        head = parts[0]
        if head == "algebra":
            continue
        if head == "generator":
            if len(parts) != 3 or not re.fullmatch(_NAME, parts[1]) or not re.fullmatch(r"-?\d+", parts[2]):
                raise ParseError("expected 'generator <name> <degree>'", no, 1)
            if parts[1] in gens:
                raise ParseError(f"duplicate generator {parts[1]!r}", no, body.index(parts[1]) + 1)
            gens[parts[1]] = int(parts[2])
        elif head == "d":
            m = re.match(rf"\s*d\s+({_NAME})\s*=", body)
            if not m:
                raise ParseError("expected 'd <name> = <expression>'", no, 1)
            name = m.group(1)
            if name in diffs:
                raise ParseError(f"differential of {name!r} given twice", no, m.start(1) + 1)
            diffs[name] = (no, body[m.end():], m.end())
        else:
            raise ParseError(f"unknown directive {head!r} in {kind} model", no, body.index(head) + 1)
    return gens, diffs


def parse_sullivan(text: str, name: str | None = None, check: bool = True) -> SullivanModel:
    gens, diffs = _declarations(text, "sullivan")
    degrees = dict(gens)

    def term(cur: _Cursor):
        coeff, need_factor = _coefficient(cur)
        w, sign = (), 1
        if not need_factor:
            cur.fail("constant terms are not allowed in a differential")
        while True:
            t = cur.next()
            if t[0] != "name":
                raise ParseError(f"expected generator name, found {t[1] or 'end of line'!r}", cur.line, t[2])
            if t[1] not in degrees:
                raise ParseError(f"unknown generator {t[1]!r}", cur.line, t[2])
            exp = 1
            if cur.peek()[1] == "^":
                cur.next()
                e = cur.next()
                if e[0] != "num" or "/" in e[1]:
                    raise ParseError("expected integer exponent", cur.line, e[2])
                exp = int(e[1])
            for _ in range(exp):
                r = word_product(w, ((degrees[t[1]], t[1], 1),))
                if r is None:
                    w = None
                    break
                w, s = r
                sign *= s
            if w is None:
                raise ParseError(f"odd generator {t[1]!r} squared", cur.line, t[2])
            if cur.peek()[1] == "*":
                cur.next()
                continue
            return coeff * sign, w

    differential = {}
    for gname, (no, expr, off) in diffs.items():
        if gname not in gens:
            raise ParseError(f"differential of undeclared generator {gname!r}", no, 3)
        if expr.strip() == "0":
            differential[gname] = Polynomial()
            continue
        cur = _Cursor(_tokens(expr, no, off), no)
        differential[gname] = Polynomial(((w, c) for c, w in _signed_terms(cur, term)))
    model = SullivanModel([Generator(n, d) for n, d in gens.items()], differential, name=name)
    if check:
        model.check_d_squared()
    return model


def format_sullivan(m: SullivanModel) -> str:
    from ratmodels.cdga import format_polynomial

    lines = ["algebra sullivan"]
    lines += [f"generator {g.name} {g.degree}" for g in m.generators]
    lines += [f"d {g.name} = {format_polynomial(m.differential[g.name])}" for g in m.generators]
    return "\n".join(lines) + "\n"


def parse_lie(text: str, name: str | None = None, check: bool = True):
    from ratmodels.dgl import FreeLieModel, LieGenerator

    gens, diffs = _declarations(text, "lie")

    def tree(cur: _Cursor):
        t = cur.next()
        if t[0] == "name":
            if t[1] not in gens:
                raise ParseError(f"unknown generator {t[1]!r}", cur.line, t[2])
            return t[1]
        if t[1] == "[":
            left = tree(cur)
            cur.expect(",")
            right = tree(cur)
            cur.expect("]")
            return (left, right)
        raise ParseError(f"expected generator or '[', found {t[1] or 'end of line'!r}", cur.line, t[2])

    def term(cur: _Cursor):
        coeff, need = _coefficient(cur)
        if not need:
            cur.fail("constant terms are not allowed in a differential")
        return coeff, tree(cur)

    differential = {}
    for gname, (no, expr, off) in diffs.items():
        if gname not in gens:
            raise ParseError(f"differential of undeclared generator {gname!r}", no, 3)
        if expr.strip() == "0":
            differential[gname] = []
            continue
        cur = _Cursor(_tokens(expr, no, off), no)
        differential[gname] = _signed_terms(cur, term)
    model = FreeLieModel([LieGenerator(n, d) for n, d in gens.items()], differential, name=name)
    if check:
        model.check_d_squared()
    return model


def format_lie(m) -> str:
    from ratmodels.dgl import format_lie_element

    lines = ["algebra lie"]
    lines += [f"generator {g.name} {g.degree}" for g in m.generators]
    lines += [f"d {g.name} = {format_lie_element(m.expressions[g.name])}" for g in m.generators]
    return "\n".join(lines) + "\n"


def parse_model(text: str, name: str | None = None, check: bool = True):
    kind = _header(text)
    if kind == "lie":
        return parse_lie(text, name, check)
    if kind is None:
        raise ParseError("missing 'algebra sullivan|lie' header", 1, 1)
    return parse_sullivan(text, name, check)


def load_model(path: str | Path, check: bool = True):
    path = Path(path)
    return parse_model(path.read_text(encoding="utf-8"), name=path.stem, check=check)


def parse_graph(text: str):
    from ratmodels.catalog import Graph

    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for no, body in _lines(text):
        parts = body.split()
        if parts[0] == "vertex" and len(parts) == 2:
            if parts[1] in vertices:
                raise ParseError(f"duplicate vertex {parts[1]!r}", no, body.index(parts[1]) + 1)
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 3:
            for v in parts[1:]:
                if v not in vertices:
                    raise ParseError(f"edge references unknown vertex {v!r}", no, body.index(v) + 1)
            if parts[1] == parts[2]:
                raise ParseError("self-loops are not allowed", no, 1)
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError("expected 'vertex <name>' or 'edge <name> <name>'", no, 1)
    return Graph(vertices, edges)


def format_graph(g) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {a} {b}" for a, b in g.edges]
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseError", "ModelError", "parse_sullivan", "format_sullivan", "parse_lie", "format_lie",
    "parse_model", "load_model", "parse_graph", "format_graph",
]
