"""Text syntax for morphisms.

Grammar::

    lincomb := term (('+'|'-') term)*
    term    := [coeff '*'] diagram
    coeff   := '(' polynomial ')' | integer | 'i'
    diagram := factor (';' factor)*        top-to-bottom composition
    factor  := atom ('|' atom)*            tensor, left to right
    atom    := mC|dC|uC|eC|mW|dW|uW|eW|z|zs|id:OBJ|sw:BB|'(' diagram ')'
    OBJ     := [01]+ | '-'
"""
from __future__ import annotations

import re

from .diagram import (BY_NAME, Diagram, DiagramTypeError, LinComb, compose, gen,
                      identity, obj_str, parse_obj, swap, tensor)
from .ring import I, ONE, RingPoly, parse_poly


class DslError(ValueError):
    def __init__(self, kind: str, msg: str, pos: int, text: str = ""):
        self.kind = kind
        self.pos = pos
        self.msg = msg
        where = ""
        if text:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            where = f" (line {line}, column {col})"
        super().__init__(f"{kind} error at offset {pos}{where}: {msg}")


_TOKEN = re.compile(
    r"(?P<id>id:(?:[01]+|-))"
    r"|(?P<sw>sw:[01][01])"
    r"|(?P<gen>mC|dC|uC|eC|mW|dW|uW|eW|zs|z)(?![A-Za-z0-9_:])"
    r"|(?P<int>\d+)"
    r"|(?P<i>i)(?![A-Za-z0-9_:])"
    r"|(?P<poly>[ah](?![A-Za-z0-9_:])|\^)"
    r"|(?P<punct>[();|+\-*])"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            end = pos
            while end < n and (text[end].isalnum() or text[end] in ":_"):
                end += 1
            bad = text[pos:max(end, pos + 1)]
            raise DslError("lexical", f"unknown token {bad!r}", pos, text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), pos))
        pos = m.end()
    toks.append(("eof", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.k = 0

    def peek(self, ahead: int = 0):
        return self.toks[min(self.k + ahead, len(self.toks) - 1)]

    def err(self, msg: str, tok=None):
        tok = tok or self.peek()
        return DslError("syntax", msg, tok[2], self.text)

    def expect(self, val: str):
        t = self.peek()
        if t[1] != val or t[0] == "eof":
            raise self.err(f"expected {val!r}, found {t[1] or 'end of input'!r}")
        self.k += 1
        return t

    # lincomb := term (('+'|'-') term)*
    def lincomb(self) -> LinComb:
        start = self.peek()
        coeff, d = self.term()
        terms = [(coeff, d)]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "punct":
            sign = self.peek()
            self.k += 1
            c, e = self.term()
            if (e.dom, e.cod) != (d.dom, d.cod):
                raise DslError("type",
                               f"term has type {obj_str(e.dom)}->{obj_str(e.cod)}, expected "
                               f"{obj_str(d.dom)}->{obj_str(d.cod)}", sign[2], self.text)
            terms.append((c if sign[1] == "+" else -c, e))
        t = self.peek()
        if t[0] != "eof":
            raise self.err(f"unexpected {t[1]!r}")
        del start
        return LinComb(d.dom, d.cod, tuple(terms))

    def _matching_paren(self) -> int:
        depth = 0
        for j in range(self.k, len(self.toks)):
            v = self.toks[j][1]
            if self.toks[j][0] == "punct" and v == "(":
                depth += 1
            elif self.toks[j][0] == "punct" and v == ")":
                depth -= 1
                if depth == 0:
                    return j
        return -1

    def term(self):
        t = self.peek()
        nxt = self.peek(1)
        if t[0] == "int" and nxt[1] == "*":
            self.k += 2
            return RingPoly.const(int(t[1])), self.diagram()
        if t[0] == "int":
            raise self.err("expected '*' after coefficient", nxt)
        if t[0] == "i":
            if nxt[1] != "*":
                raise self.err("expected '*' after coefficient", nxt)
            self.k += 2
            return I, self.diagram()
        if t[0] == "punct" and t[1] == "(":
            close = self._matching_paren()
            if close < 0:
                raise self.err("unbalanced '('")
            after = self.toks[close + 1]
            if after[0] == "punct" and after[1] == "*":
                lo = t[2] + 1
                hi = self.toks[close][2]
                try:
                    c = parse_poly(self.text[lo:hi], offset=lo)
                except ValueError as exc:
                    pos = getattr(exc, "pos", lo)
                    raise DslError("syntax", f"bad coefficient: {exc}", pos, self.text) from None
                self.k = close + 2
                return c, self.diagram()
        return ONE, self.diagram()

    def diagram(self) -> Diagram:
        d = self.factor()
        while self.peek()[0] == "punct" and self.peek()[1] == ";":
            semi = self.peek()
            self.k += 1
            e = self.factor()
            if d.cod != e.dom:
                raise DslError("type",
                               f"cannot compose: top has codomain {obj_str(d.cod)}, "
                               f"bottom has domain {obj_str(e.dom)}", semi[2], self.text)
            d = compose(d, e)
        return d

    def factor(self) -> Diagram:
        d = self.atom()
        while self.peek()[0] == "punct" and self.peek()[1] == "|":
            self.k += 1
            d = tensor(d, self.atom())
        return d

    def atom(self) -> Diagram:
        t = self.peek()
        if t[0] == "gen":
            self.k += 1
            return gen(BY_NAME[t[1]])
        if t[0] == "id":
            self.k += 1
            return identity(parse_obj(t[1][3:]))
        if t[0] == "sw":
            self.k += 1
            return gen(swap(int(t[1][3]), int(t[1][4])))
        if t[0] == "punct" and t[1] == "(":
            self.k += 1
            d = self.diagram()
            self.expect(")")
            return d
        raise self.err(f"expected a generator, found {t[1] or 'end of input'!r}")


def parse(text: str) -> LinComb:
    if not text.strip():
        raise DslError("syntax", "empty input", 0, text)
    try:
        return _Parser(text).lincomb()
    except DiagramTypeError as exc:
        raise DslError("type", str(exc), 0, text) from None


def parse_diagram(text: str) -> Diagram:
    """Parse a single coefficient-free term."""
    lc = parse(text)
    if len(lc.terms) != 1 or lc.terms[0][0] != ONE:
        raise DslError("syntax", "expected a single diagram without coefficient", 0, text)
    return lc.terms[0][1]


# -- printing -------------------------------------------------------------------

def print_diagram(d: Diagram) -> str:
    if not d.slices:
        return f"id:{obj_str(d.dom)}"
    parts = []
    for (pos, g), cur in zip(d.slices, d.interfaces):
        cells = []
        if pos:
            cells.append(f"id:{obj_str(cur[:pos])}")
        cells.append(str(g))
        rest = cur[pos + len(g.dom):]
        if rest:
            cells.append(f"id:{obj_str(rest)}")
        parts.append(" | ".join(cells))
    return " ; ".join(parts)


def _coeff_prefix(c: RingPoly, first: bool) -> tuple[str, str]:
    """(sign joiner, coefficient text) for a term."""
    if c == ONE:
        return "+", ""
    if c == -ONE:
        return ("+", "(-1) * ") if first else ("-", "")
    const = c.constant()
    if const is not None and const.im == 0:
        if const.re > 0:
            return "+", f"{const.re} * "
        if not first:
            return "-", f"{-const.re} * "
    if c == I:
        return "+", "i * "
    if c == -I and not first:
        return "-", "i * "
    text = str(c)
    if const is not None and text.startswith("("):
        return "+", f"{text} * "          # Gaussian constants print with their own parentheses
    return "+", f"({text}) * "


def print_lincomb(lc: LinComb) -> str:
    if not lc.terms:
        if lc.dom == lc.cod:
            return f"0 * id:{obj_str(lc.dom)}"
        # any term of the right type will do: cap every input, then create every output
        d = identity(())
        for b in lc.dom:
            d = tensor(d, gen(BY_NAME["eW" if b else "eC"]))
        for b in lc.cod:
            d = compose(d, tensor(identity(d.cod), gen(BY_NAME["uW" if b else "uC"])))
        return f"0 * {print_diagram(d)}"
    out = []
    for k, (c, d) in enumerate(lc.terms):
        sign, coeff = _coeff_prefix(c, k == 0)
        body = coeff + print_diagram(d)
        if k == 0:
            out.append(body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
