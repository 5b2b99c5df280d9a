"""Parser for polynomial expressions such as ``2*x[1,1]^2 - (x[1,2] + h)*t[1]``.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*      # "/" only by a nonzero constant
    factor := ("+" | "-") factor | power
    power  := atom ("^" INT)?
    atom   := NUMBER | "x[" INT "," INT ("," INT)? "]" | "t[" INT "]" | "h" | "(" expr ")"

``h`` stands for hbar; the caller supplies it as a polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import MultiPoly, PolyError, tvar, xvar


class ParseError(PolyError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos + 1}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|(x\[[^\]]*\]|t\[[^\]]*\])|(h)\b|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        kind = ("num", "var", "h", "op")[m.lastindex - 1]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, hbar: MultiPoly | None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.hbar = hbar

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.text, tok[2])

    def parse(self) -> MultiPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        out = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return out

    def expr(self):
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            if op[1] == "*":
                out = out * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    self.fail("division is only allowed by a nonzero constant", op)
                out = out.scale(Fraction(1) / Fraction(rhs.constant_term()))
        return out

    def factor(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            inner = self.factor()
            return inner if tok[1] == "+" else -inner
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.fail("exponent must be a nonnegative integer", tok)
            base = base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return MultiPoly.const(Fraction(val))
        if kind == "h":
            if self.hbar is None:
                self.fail("'h' needs a quiver with a validated hbar", tok)
            return self.hbar
        if kind == "var":
            return MultiPoly.var(self._variable(tok))
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return inner
        self.fail(f"unexpected {val!r}" if kind != "end" else "unexpected end of input", tok)

    def _variable(self, tok):
        val = tok[1]
        head, body = val[0], val[2:-1]
        try:
            idx = [int(p) for p in body.split(",")]
        except ValueError:
            self.fail(f"bad index in {val!r}", tok)
        if any(k < 1 for k in idx):
            self.fail(f"indices in {val!r} are 1-based", tok)
        if head == "t" and len(idx) == 1:
            return tvar(idx[0])
        if head == "x" and len(idx) == 2:
            return xvar(idx[0] - 1, idx[1])
        if head == "x" and len(idx) == 3 and idx[0] in (1, 2):
            return xvar(idx[1] - 1, idx[2], idx[0])
        self.fail(f"bad variable {val!r}", tok)


def parse_poly(text: str, hbar: MultiPoly | None = None) -> MultiPoly:
    """Parse ``text``; ``h`` is replaced by ``hbar`` (an error when ``hbar`` is None)."""
    return _Parser(text, hbar).parse()
