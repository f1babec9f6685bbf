"""Text formats: database documents, s-expression queries, domains and answers.

A database document looks like::

    #lang pcl
    #global _e:R1 NTPP "x >= 6 && x <= 23 && y >= 8 && y <= 19" .
    <fire1> <type> <Fire> .
    <fire1> <occurredIn> _e:R1 { _e:R1 NTPP "x >= 0 && x <= 30 && y >= 0 && y <= 30" } .

E-literals may be written ``_e:R1`` or ``_R1``; the serializers use the short
form, which is also how conditions print.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (AndPattern, ConditionalMapping, FilterPattern, OptPattern, TriplePattern,
                      UnionPattern)
from .backends.geometry import Polygon
from .errors import IllFormedConstant, ParseError, UnknownDatatype, UnsupportedFragment
from .formulas import (COORD_FUNCTIONS, FALSE, REL_PREDICATES, TRUE, Coord, Diff, Rel, conj, disj,
                       neg)
from .model import ConditionalTriple, Database, ETriple, mk_database
from .query import ConstructQuery, SelectAnswer, SelectQuery, check_well_designed, fragment
from .terms import (SORTS, Blank, CLiteral, ELiteral, Iri, PlainLiteral, Variable, is_rdf_term,
                    sort_key)

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<pragma>\#(?:lang|global)\b)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><[^<>\s"{}|^`\\]+>)
  | (?P<string>"(?:[^"\\]|\\.)*"(?:\^\^<[^<>\s]+>)?)
  | (?P<blank>_:[A-Za-z0-9_-]+)
  | (?P<elit>_e:[A-Za-z0-9_]+|_[A-Za-z0-9][A-Za-z0-9_]*)
  | (?P<var>\?[A-Za-z_][A-Za-z0-9_]*(?:!s)?)
  | (?P<number>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<op>&&|\|\||!=|<=|>=|[!<>=(){}.,|\-*+]|[∧∨¬≤≥])
  | (?P<word>[A-Za-z][A-Za-z0-9_]*)
""", re.VERBOSE)

_UNICODE = {"∧": "&&", "∨": "||", "¬": "!", "≤": "<=", "≥": ">="}
_CMP = ("<", "<=", "=", ">=", ">")
_DIFF_LANGS = ("dipcl", "depcl", "rcl")
_BARE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_KEYWORDS = set(REL_PREDICATES) | set(COORD_FUNCTIONS) | {"true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind, lexeme = m.lastgroup, m.group()
        if kind not in ("ws", "comment"):
            out.append(Token(kind, _UNICODE.get(lexeme, lexeme), line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    return out


def _unescape(body: str) -> str:
    return re.sub(r"\\(.)", r"\1", body)


# -- polygon constants ---------------------------------------------------------

_LIN_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?(?:/\d+)?)|([xy])|(<=|>=|≤|≥|=)|([-+*]))")


def _linear_side(tokens: list) -> tuple[Fraction, Fraction, Fraction] | None:
    """Parse ``[+-] term (+- term)*`` into coefficients of x, y and the constant."""
    coef = {"x": Fraction(0), "y": Fraction(0), "": Fraction(0)}
    i, sign, expect_term = 0, 1, True
    while i < len(tokens):
        kind, val = tokens[i]
        if kind == "sign":
            if val == "*":
                return None
            sign = sign * (-1 if val == "-" else 1)
            expect_term = True
            i += 1
            continue
        if not expect_term:
            return None
        if kind == "num":
            n = Fraction(val)
            if i + 1 < len(tokens) and tokens[i + 1] == ("sign", "*"):
                i += 1
            if i + 1 < len(tokens) and tokens[i + 1][0] == "var":
                coef[tokens[i + 1][1]] += sign * n
                i += 2
            else:
                coef[""] += sign * n
                i += 1
        elif kind == "var":
            coef[val] += sign
            i += 1
        else:
            return None
        sign, expect_term = 1, False
    if expect_term:
        return None
    return coef["x"], coef["y"], coef[""]


def parse_linear_conjunction(text: str):
    """Half-planes ``(a, b, c)`` meaning ``a*x + b*y <= c``, or ``None`` if ``text`` is not one."""
    planes = []
    for part in re.split(r"&&|∧", text):
        tokens, pos = [], 0
        part = part.strip()
        while pos < len(part):
            m = _LIN_TOKEN.match(part, pos)
            if m is None or m.end() == pos:
                return None
            num, var, cmp, sign = m.groups()
            if num:
                tokens.append(("num", num))
            elif var:
                tokens.append(("var", var))
            elif cmp:
                tokens.append(("cmp", {"≤": "<=", "≥": ">="}.get(cmp, cmp)))
            else:
                tokens.append(("sign", sign))
            pos = m.end()
        cmps = [i for i, t in enumerate(tokens) if t[0] == "cmp"]
        if len(cmps) != 1:
            return None
        k = cmps[0]
        lhs, rhs = _linear_side(tokens[:k]), _linear_side(tokens[k + 1:])
        if lhs is None or rhs is None:
            return None
        a, b, c = lhs[0] - rhs[0], lhs[1] - rhs[1], rhs[2] - lhs[2]
        op = tokens[k][1]
        if op in ("<=", "="):
            planes.append((a, b, c))
        if op in (">=", "="):
            planes.append((-a, -b, -c))
    return planes or None


# -- recursive descent ---------------------------------------------------------

class _Parser:
    def __init__(self, text: str, language: str | None = None, bare_iris: bool = False):
        self.tokens = tokenize(text)
        self.pos = 0
        self.language = language
        self.bare_iris = bare_iris

    # -- token helpers -------------------------------------------------------
    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def at(self, text: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.kind in ("op", "word", "pragma") and t.text == text

    def next(self) -> Token:
        t = self.peek()
        if t is None:
            self.fail("unexpected end of input")
        self.pos += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t is None or t.text != text or t.kind == "string":
            self.fail(f"expected {text!r}")
        self.pos += 1
        return t

    def fail(self, message: str, token: Token | None = None):
        t = token or self.peek()
        if t is None:
            last = self.tokens[-1] if self.tokens else None
            line, col = (last.line, last.column + len(last.text)) if last else (1, 1)
            raise ParseError(message + " at end of input", line, col)
        raise ParseError(f"{message}, found {t.text!r}", t.line, t.column)

    def done(self) -> None:
        if self.peek() is not None:
            self.fail("unexpected trailing input")

    @property
    def sort(self) -> str | None:
        return SORTS.get(self.language) if self.language else None

    # -- terms ---------------------------------------------------------------
    def number(self) -> Fraction:
        sign = 1
        if self._is_number_next() and self.at("-"):
            self.next()
            sign = -1
        t = self.next()
        if t.kind != "number":
            self.fail("expected a number", t)
        return sign * Fraction(t.text)

    def constant(self, value: Fraction, t: Token) -> CLiteral:
        sort = self.sort
        if sort not in ("const", "integer", "rational"):
            raise UnknownDatatype(f"line {t.line}, column {t.column}: number {t.text} "
                                  f"is not a {self.language} constant")
        if sort == "integer" and value.denominator != 1:
            raise IllFormedConstant(f"line {t.line}, column {t.column}: {t.text} is not an integer")
        return CLiteral(value, sort)

    def string_term(self, t: Token):
        m = re.fullmatch(r'"((?:[^"\\]|\\.)*)"(?:\^\^<([^<>\s]+)>)?', t.text)
        lexical, datatype = _unescape(m.group(1)), m.group(2)
        if datatype is None and self.sort in ("region", "box"):
            planes = parse_linear_conjunction(lexical)
            if planes is not None:
                poly = Polygon(planes)
                if self.sort == "box" and not poly.is_rectangle:
                    raise IllFormedConstant(f"line {t.line}, column {t.column}: "
                                            f"{lexical!r} is not an axis-aligned box")
                return CLiteral(poly, self.sort)
        return PlainLiteral(lexical, datatype)

    def term(self, allow_var: bool = True):
        t = self.peek()
        if t is None:
            self.fail("expected a term")
        if self._is_number_next():
            start = self.peek()
            return self.constant(self.number(), start)
        self.next()
        if t.kind == "iri":
            return Iri(t.text[1:-1])
        if t.kind == "blank":
            return Blank(t.text[2:])
        if t.kind == "elit":
            name = t.text[3:] if t.text.startswith("_e:") else t.text[1:]
            if self.sort is None:
                self.fail("e-literal outside a typed document", t)
            return ELiteral(name, self.sort)
        if t.kind == "string":
            return self.string_term(t)
        if t.kind == "var":
            if not allow_var:
                self.fail("variables are not allowed here", t)
            special = t.text.endswith("!s")
            return Variable(t.text[1:-2] if special else t.text[1:], special)
        if t.kind == "word" and self.bare_iris:
            return Iri(t.text)
        self.fail("expected a term", t)

    # -- formulas --------------------------------------------------------------
    def formula(self):
        items = [self.conjunction()]
        while self.at("||"):
            self.next()
            items.append(self.conjunction())
        return disj(*items)

    def conjunction(self):
        items = [self.unary()]
        while self.at("&&"):
            self.next()
            items.append(self.unary())
        return conj(*items)

    def unary(self):
        if self.at("!"):
            self.next()
            return neg(self.unary())
        if self.at("("):
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if self.at("true"):
            self.next()
            return TRUE
        if self.at("false"):
            self.next()
            return FALSE
        return self.atom()

    def operand(self):
        t = self.peek()
        if t is not None and t.kind == "word" and t.text in COORD_FUNCTIONS:
            self.next()
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return Coord(t.text, arg)
        return self.term()

    def _is_number_next(self) -> bool:
        t = self.peek()
        if t is None:
            return False
        if t.kind == "number":
            return True
        return self.at("-") and self.peek(1) is not None and self.peek(1).kind == "number"

    def atom(self):
        start = self.peek()
        left = self.operand()
        t = self.peek()
        if t is None:
            self.fail("expected a relation")
        if t.kind == "word" and t.text in REL_PREDICATES:
            self.next()
            return Rel(t.text, left, self.operand())
        if self.at("!="):
            self.next()
            return Rel("NEQ", left, self.operand())
        diff_lang = self.language in _DIFF_LANGS
        if self.at("=") and not diff_lang:
            self.next()
            return Rel("EQ", left, self.operand())
        if self.at("-"):
            self.next()
            right = self.operand()
            op = self.comparison()
            return Diff(op, left, right, self.number())
        if t.kind == "op" and t.text in _CMP:
            op = self.comparison()
            if self._is_number_next():
                return Diff(op, left, None, self.number())
            right = self.operand()
            if op == "=" and any(_rdf_side(o) for o in (left, right)):
                return Rel("EQ", left, right)
            return Diff(op, left, right, Fraction(0))
        self.fail(f"expected a relation after {start.text!r}")

    def comparison(self) -> str:
        t = self.next()
        if t.kind != "op" or t.text not in _CMP:
            self.fail("expected a comparison", t)
        return t.text

    # -- documents ---------------------------------------------------------------
    def pragma_language(self) -> str:
        self.expect("#lang")
        t = self.next()
        if t.kind != "word" or t.text not in SORTS:
            self.fail(f"unknown constraint language; expected one of {', '.join(SORTS)}", t)
        return t.text

    def database(self) -> Database:
        self.language = self.pragma_language()
        phi = TRUE
        if self.at("#global"):
            self.next()
            phi = self.formula()
            self.expect(".")
        triples = []
        while self.peek() is not None:
            if self.at("#lang") or self.at("#global"):
                self.fail("pragma out of place")
            s, p, o = self.term(False), self.term(False), self.term(False)
            cond = TRUE
            if self.at("{"):
                self.next()
                cond = self.formula()
                self.expect("}")
            self.expect(".")
            triples.append(ConditionalTriple(ETriple(s, p, o), cond))
        return mk_database(triples, phi, self.language)

    # -- queries ---------------------------------------------------------------
    def keyword(self) -> str:
        t = self.next()
        if t.kind != "word":
            self.fail("expected a keyword", t)
        return t.text

    def pattern(self):
        open_tok = self.expect("(")
        kind = self.keyword()
        if kind == "triple":
            s, p, o = self.term(), self.term(), self.term()
            for x in (s, p, o):
                if isinstance(x, Blank):
                    self.fail("blank nodes are not allowed in triple patterns", open_tok)
            self.expect(")")
            return TriplePattern(s, p, o)
        if kind in ("and", "union"):
            parts = [self.pattern()]
            while not self.at(")"):
                parts.append(self.pattern())
            if len(parts) < 2:
                self.fail(f"({kind} ...) takes at least two patterns", open_tok)
            self.expect(")")
            out = parts[0]
            for p in parts[1:]:
                out = AndPattern(out, p) if kind == "and" else UnionPattern(out, p)
            return out
        if kind == "opt":
            left, right = self.pattern(), self.pattern()
            if not self.at(")"):
                self.fail("(opt ...) takes exactly two patterns", open_tok)
            self.expect(")")
            return OptPattern(left, right)
        if kind == "filter":
            inner = self.pattern()
            cond = self.formula()
            if not self.at(")"):
                self.fail("(filter ...) takes a pattern and one condition", open_tok)
            self.expect(")")
            return FilterPattern(inner, cond)
        self.fail(f"unknown pattern operator {kind!r}", open_tok)

    def query(self):
        self.expect("(")
        kind = self.keyword()
        if kind == "select":
            self.expect("(")
            vs = []
            while not self.at(")"):
                v = self.term()
                if not isinstance(v, Variable):
                    self.fail("expected a variable in the projection")
                vs.append(v)
            self.expect(")")
            q = SelectQuery(tuple(vs), self.pattern())
        elif kind == "construct":
            self.expect("(")
            template = []
            while not self.at(")"):
                self.expect("(")
                template.append(TriplePattern(self.term(), self.term(), self.term()))
                self.expect(")")
            self.expect(")")
            q = ConstructQuery(tuple(template), self.pattern())
        else:
            self.fail(f"unknown query form {kind!r}")
        self.expect(")")
        return q


def _rdf_side(o) -> bool:
    return is_rdf_term(o) or (isinstance(o, Variable) and not o.special)


# -- public parsers ------------------------------------------------------------

def _run(parser: _Parser, method: str):
    out = getattr(parser, method)()
    parser.done()
    return out


def parse_database(text: str) -> Database:
    return _run(_Parser(text), "database")


def parse_query(text: str, language: str = "pcl", require_wd: bool = False):
    """Parse an s-expression query; constants are read as ``language`` constants."""
    q = _run(_Parser(text, language), "query")
    if require_wd and fragment(q.pattern) == "OTHER":
        check_well_designed(q.pattern)  # raises NotAfoFragment when UNION is present
        raise UnsupportedFragment("pattern is not well-designed")
    return q


def parse_formula(text: str, language: str):
    return _run(_Parser(text, language), "formula")


def parse_term(text: str, language: str):
    return _run(_Parser(text, language), "term")


def parse_graph(text: str, language: str) -> frozenset:
    """Ground triples, one per line, as ``s p o .`` or ``(s, p, o)`` with bare IRIs."""
    p = _Parser(text, language, bare_iris=True)
    out = set()
    if p.at("#lang"):
        p.pragma_language()
    while p.peek() is not None:
        if p.at("("):
            p.next()
            s = p.term(False)
            p.expect(",")
            pr = p.term(False)
            p.expect(",")
            o = p.term(False)
            p.expect(")")
        else:
            s, pr, o = p.term(False), p.term(False), p.term(False)
            p.expect(".")
        out.add(ETriple(s, pr, o))
    return frozenset(out)


def parse_domain(text: str, language: str) -> dict:
    """Candidate constants per e-literal: lines ``_e:name = c1 | c2 | ...``."""
    p = _Parser(text, language)
    dom: dict = {}
    while p.peek() is not None:
        t = p.peek()
        lit = p.term(False)
        if not isinstance(lit, ELiteral):
            p.fail("expected an e-literal", t)
        p.expect("=")
        values = [p.term(False)]
        while p.at("|"):
            p.next()
            values.append(p.term(False))
        for v in values:
            if not isinstance(v, CLiteral):
                p.fail(f"domain of {lit} must list {language} constants")
        dom.setdefault(lit, [])
        dom[lit].extend(v for v in values if v not in dom[lit])
    return dom


# -- serializers ---------------------------------------------------------------

def serialize_database(db: Database) -> str:
    lines = [f"#lang {db.language}"]
    if db.global_constraint != TRUE:
        lines.append(f"#global {db.global_constraint} .")
    for ct in db.sorted_graph():
        cond = "" if ct.condition == TRUE else f" {{ {ct.condition} }}"
        lines.append(f"{ct.triple}{cond} .")
    return "\n".join(lines) + "\n"


def serialize_pattern(p) -> str:
    if isinstance(p, TriplePattern):
        return f"(triple {p.s} {p.p} {p.o})"
    if isinstance(p, FilterPattern):
        return f"(filter {serialize_pattern(p.inner)} ({p.condition}))"
    name = {AndPattern: "and", UnionPattern: "union", OptPattern: "opt"}[type(p)]
    return f"({name} {serialize_pattern(p.left)} {serialize_pattern(p.right)})"


def serialize_query(q) -> str:
    if isinstance(q, SelectQuery):
        return f"(select ({' '.join(map(str, q.variables))}) {serialize_pattern(q.pattern)})"
    template = " ".join(f"({t.s} {t.p} {t.o})" for t in q.template)
    return f"(construct ({template}) {serialize_pattern(q.pattern)})"


def _sorted_solutions(solutions) -> list[ConditionalMapping]:
    return sorted(solutions, key=lambda m: ([(str(v), str(t)) for v, t in m.binding], str(m.condition)))


def format_certain_term(t) -> str:
    if isinstance(t, Iri) and _BARE.fullmatch(t.value) and t.value not in _KEYWORDS:
        return t.value
    return str(t)


def format_certain(triples) -> list[str]:
    lines = [f"({', '.join(format_certain_term(x) for x in t)})" for t in triples]
    return sorted(lines)


def serialize_answers(answer, fmt: str = "text") -> str:
    """Render a SELECT answer, a CONSTRUCT answer database or a set of certain triples."""
    if isinstance(answer, SelectAnswer):
        sols = _sorted_solutions(answer.solutions)
        if fmt == "json":
            doc = {"language": answer.language, "global": str(answer.global_constraint),
                   "solutions": [{"bindings": {str(v): str(t) for v, t in m.binding},
                                  "condition": str(m.condition)} for m in sols]}
            return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        lines = [f"global: {answer.global_constraint}"]
        for m in sols:
            binding = ", ".join(f"{v} -> {t}" for v, t in m.binding)
            lines.append(f"{{{binding}}} if {m.condition}")
        return "\n".join(lines) + "\n"
    if isinstance(answer, Database):
        if fmt == "json":
            doc = {"language": answer.language, "global": str(answer.global_constraint),
                   "triples": [{"subject": str(ct.triple.subject),
                                "predicate": str(ct.triple.predicate),
                                "object": str(ct.triple.object),
                                "condition": str(ct.condition)} for ct in answer.sorted_graph()]}
            return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
        return serialize_database(answer)
    triples = sorted(answer, key=lambda t: tuple(sort_key(x) for x in t))
    if fmt == "json":
        doc = {"triples": [[str(x) for x in t] for t in triples]}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    lines = format_certain(triples)
    return "".join(line + "\n" for line in lines)


def parse_answers_json(text: str, language: str | None = None):
    """Inverse of the JSON form of ``serialize_answers``."""
    doc = json.loads(text)
    lang = doc.get("language", language)
    if "triples" in doc and "global" not in doc:
        return frozenset(ETriple(*(parse_term(x, lang) for x in t)) for t in doc["triples"])
    phi = parse_formula(doc["global"], lang)
    if "solutions" in doc:
        sols = frozenset(
            ConditionalMapping.of({parse_term(v, lang): parse_term(t, lang)
                                   for v, t in s["bindings"].items()},
                                  parse_formula(s["condition"], lang))
            for s in doc["solutions"])
        return SelectAnswer(sols, phi, lang)
    graph = frozenset(
        ConditionalTriple(ETriple(parse_term(t["subject"], lang), parse_term(t["predicate"], lang),
                                  parse_term(t["object"], lang)),
                          parse_formula(t["condition"], lang))
        for t in doc["triples"])
    return Database(graph, phi, lang)


def serialize_domain(dom: dict) -> str:
    lines = []
    for lit in sorted(dom, key=lambda e: e.name):
        lines.append(f"{lit} = {' | '.join(str(c) for c in dom[lit])}")
    return "\n".join(lines) + "\n"


__all__ = ["Token", "format_certain", "parse_answers_json", "parse_database", "parse_domain",
           "parse_formula", "parse_graph", "parse_linear_conjunction", "parse_query", "parse_term",
           "serialize_answers", "serialize_database", "serialize_domain", "serialize_pattern",
           "serialize_query", "tokenize"]
