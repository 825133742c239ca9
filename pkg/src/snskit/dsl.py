"""Text syntax for elements and tensors, and the canonical printer.

Grammar::

    element    := term (('+' | '-') term)*  |  '0'
    term       := ['-'] [rational '*'] basis
    basis      := ('L' | 'G' | 'Y' | 'M') '[' halfint ']'
    halfint    := ['-'] digits ['/' '2']
    rational   := digits ['/' digits]
    tensor     := tterm (('+' | '-') tterm)*  |  '0'
    tterm      := term '(x)' term ['(x)' term]

``(x)`` joins single monomials; sums inside a factor are not distributed, with
one exception: a run of plain terms written directly before a tensor term is
added into that term's first factor, so ``2*L[1] - G[1/2] (x) M[0]`` reads as
``2*L[1] (x) M[0] - G[1/2] (x) M[0]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import BasisVector, Element, IndexDomain, LinComb, make_basis
from .tensors import Tensor3, TensorElement


@dataclass(frozen=True)
class SourceSpan:
    begin: int
    end: int

    def __post_init__(self):
        if self.begin > self.end:
            raise ValueError("span begin must not exceed end")


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan, expected: str | None = None):
        self.message = message
        self.span = span
        self.expected = expected
        hint = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at {span.begin}:{span.end}{hint}")


class IndexDomainError(ParseError, IndexDomain):
    """An index outside its family's domain, located in the source text."""


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<tensor>\(x\))
  | (?P<num>\d+)
  | (?P<fam>[LGYM])
  | (?P<op>[-+*/\[\]])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    begin: int
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = text[pos]
            hint = "'/2' for half-integers" if bad == "." else None
            raise ParseError(f"unexpected character {bad!r}", SourceSpan(pos, pos + 1), hint)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.tok
        if t.text != text:
            raise ParseError(f"unexpected {t.text or 'end of input'!r}",
                             SourceSpan(t.begin, t.end), repr(text))
        return self.take()

    def number(self) -> tuple[int, _Tok]:
        t = self.tok
        if t.kind != "num":
            raise ParseError(f"unexpected {t.text or 'end of input'!r}",
                             SourceSpan(t.begin, t.end), "digits")
        self.take()
        return int(t.text), t

    def rational(self) -> Fraction:
        num, t = self.number()
        if self.tok.text == "/":
            self.take()
            den, dt = self.number()
            if den == 0:
                raise ParseError("zero denominator", SourceSpan(dt.begin, dt.end))
            return Fraction(num, den)
        return Fraction(num)

    def halfint(self) -> tuple[int, SourceSpan]:
        begin = self.tok.begin
        neg = False
        if self.tok.text == "-":
            self.take()
            neg = True
        num, t = self.number()
        twice = 2 * num
        end = t.end
        if self.tok.text == "/":
            self.take()
            den, dt = self.number()
            end = dt.end
            if den != 2:
                raise ParseError("half-integer indices take denominator 2",
                                 SourceSpan(dt.begin, dt.end), "'2'")
            twice = num
        return (-twice if neg else twice), SourceSpan(begin, end)

    def basis(self) -> BasisVector:
        t = self.tok
        if t.kind != "fam":
            raise ParseError(f"unexpected {t.text or 'end of input'!r}",
                             SourceSpan(t.begin, t.end), "one of L, G, Y, M")
        self.take()
        self.expect("[")
        twice, span = self.halfint()
        close = self.expect("]")
        try:
            return make_basis(t.text, Fraction(twice, 2))
        except IndexDomain as exc:
            raise IndexDomainError(str(exc), SourceSpan(t.begin, close.end)) from None

    def term(self, allow_sign: bool) -> tuple[Fraction, BasisVector]:
        coef = Fraction(1)
        if allow_sign and self.tok.text == "-":
            self.take()
            coef = -coef
        if self.tok.kind == "num":
            coef *= self.rational()
            self.expect("*")
        return coef, self.basis()

    def at_zero(self) -> bool:
        return (self.tok.kind == "num" and self.tok.text == "0"
                and self.toks[self.i + 1].kind == "eof")

    def product_terms(self) -> list[tuple[int, Fraction, Fraction, tuple]]:
        """Signed top-level terms as ``(start, lead coef, tail coef, factors)``."""
        out = []
        first = True
        while True:
            start = self.tok.begin
            s = 1
            if not first:
                op = self.tok
                if op.kind != "op" or op.text not in ("+", "-"):
                    raise ParseError(f"unexpected {op.text or 'end of input'!r}",
                                     SourceSpan(op.begin, op.end), "'+', '-' or end of input")
                self.take()
                s = -1 if op.text == "-" else 1
            lead, b = self.term(allow_sign=first)
            factors = [b]
            tail = Fraction(1)
            while self.tok.kind == "tensor":
                self.take()
                c2, b2 = self.term(allow_sign=False)
                tail *= c2
                factors.append(b2)
            out.append((start, s * lead, tail, tuple(factors)))
            first = False
            if self.tok.kind == "eof":
                return out


def _parse(text: str, arity: int) -> LinComb:
    p = _Parser(text)
    if p.tok.kind == "eof":
        raise ParseError("empty input", SourceSpan(0, 0), "an element")
    target = {1: Element, 2: TensorElement, 3: Tensor3}[arity]
    if p.at_zero():
        return target()
    out: dict = {}
    pending: list = []
    for start, lead, tail, factors in p.product_terms():
        if len(factors) == 1 and arity > 1:
            pending.append((start, lead, factors[0]))
            continue
        if len(factors) != arity:
            raise ParseError(f"term has {len(factors)} tensor factors, expected {arity}",
                             SourceSpan(start, len(text)))
        key = factors[0] if arity == 1 else factors
        out[key] = out.get(key, 0) + lead * tail
        for _, pc, pb in pending:
            k2 = (pb,) + factors[1:]
            out[k2] = out.get(k2, 0) + pc * tail
        pending = []
    if pending:
        raise ParseError(f"expected {arity} tensor factors",
                         SourceSpan(pending[0][0], len(text)), "'(x)'")
    return target({k: c for k, c in out.items() if c})


def parse_element(text: str) -> Element:
    return _parse(text, 1)


def parse_tensor(text: str) -> TensorElement:
    return _parse(text, 2)


def parse_tensor3(text: str) -> Tensor3:
    return _parse(text, 3)


def parse_any(text: str) -> LinComb:
    """Parse an element, tensor square or tensor cube, whichever the text is."""
    last = None
    for arity in (1, 2, 3):
        try:
            return _parse(text, arity)
        except IndexDomainError:
            raise
        except ParseError as exc:
            if "tensor factors" not in exc.message:
                raise
            last = exc
    raise last


# ---------------------------------------------------------------------------
# Printing


def _fmt_basis(b: BasisVector) -> str:
    return str(b)


def _fmt_key(key) -> str:
    if isinstance(key, BasisVector):
        return _fmt_basis(key)
    return " (x) ".join(_fmt_basis(b) for b in key)


def format_any(x: LinComb) -> str:
    items = x.items()
    if not items:
        return "0"
    parts = []
    for i, (key, c) in enumerate(items):
        neg = c < 0
        mag = -c if neg else c
        body = _fmt_key(key) if mag == 1 else f"{mag}*{_fmt_key(key)}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def format_element(e: Element) -> str:
    return format_any(e)


def format_tensor(t: TensorElement) -> str:
    return format_any(t)


def format_tensor3(t: Tensor3) -> str:
    return format_any(t)
