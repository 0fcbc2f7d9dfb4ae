"""Concrete syntax: terms, declaration files, formulas, and the printer.

Term surface syntax mirrors the usual notation: ``Pi (x:A) B``,
``lam (x:A) t``, juxtaposition (or ``ap f a``) for application, ``A -> B``
/ ``A * B`` / ``A + B`` sugar for the non-dependent formers, eliminators
with mandatory brace-delimited motives (``Nrec {(n:N). C} c base {x y. e}``)
and codes ``c_pi a b`` / equivalences ``ceq_pi a b``.  Unicode aliases
(Π Σ λ → ∀ ∃ ∈ ≐ ⊥) are accepted; the printer emits ASCII.

Unary numerals parse and print as decimal literals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import formulas as F
from .terms import (
    App, Ceq, Code, Const, Decl, El, ExtEq, Family, Fin, FinLit, FinRec,
    Funext, Id, Inl, Inr, J, Lam, NAT, Nat, NatRec, Pair, Pi, Refl, Sigma,
    SigElim, Succ, Sum, SumElim, Sup, Term, U, UNIV, Var, W, WRec, Zero,
    ZERO, shift, subst,
)


@dataclass
class ParseError(Exception):
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


_PUNCT2 = ("->", ":=", "/\\", "\\/")
_PUNCT1 = "(){}:.*+=`,"

_UNICODE = {
    "→": "->", "Π": "Pi", "Σ": "Sig", "λ": "lam", "∈": "in", "≐": "=",
    "∀": "all", "∃": "ex", "⊥": "false",
}

KEYWORDS = {
    "Pi", "Sig", "lam", "ap", "Id", "refl", "J", "W", "sup", "Trec", "N",
    "s", "Nrec", "Srec", "Drec", "Frec", "Fin", "fin", "U", "El", "ExtEq",
    "funext", "c_pi", "c_sig", "c_plus", "c_id", "c_nat", "c_fin", "c_w",
    "ceq_pi", "ceq_sig", "ceq_plus", "ceq_id", "ceq_nat", "ceq_fin", "ceq_w",
    "inl", "inr", "def", "postulate", "type", "all", "ex", "in", "false",
}

_CODE_KEYWORDS = {
    "c_pi": ("pi", 2), "c_sig": ("sigma", 2), "c_plus": ("plus", 2),
    "c_id": ("id", 3), "c_nat": ("nat", 0), "c_w": ("w", 2),
}
_CEQ_KEYWORDS = {
    "ceq_pi": ("pi", 2), "ceq_sig": ("sigma", 2), "ceq_plus": ("plus", 2),
    "ceq_id": ("id", 3), "ceq_nat": ("nat", 0), "ceq_w": ("w", 2),
}
_FORMER_TO_KEYWORD = {
    "pi": "pi", "sigma": "sig", "plus": "plus", "id": "id", "nat": "nat",
    "fin": "fin", "w": "w",
}


@dataclass
class Tok:
    kind: str       # name | int | punct | eof
    text: str
    line: int
    col: int


def _tokenize(src: str) -> List[Tok]:
    toks: List[Tok] = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if c in _UNICODE:
            alias = _UNICODE[c]
            kind = "punct" if alias in _PUNCT2 or alias in _PUNCT1 else "name"
            if alias == "->":
                kind = "punct"
            toks.append(Tok(kind, alias, line, col))
            i += 1
            col += 1
            continue
        two = src[i:i + 2]
        if two in _PUNCT2:
            toks.append(Tok("punct", two, line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT1:
            toks.append(Tok("punct", c, line, col))
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(Tok("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] in "_'"):
                j += 1
            toks.append(Tok("name", src[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(line, col, f"unexpected character {c!r}")
    toks.append(Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, src: str, known: Optional[Set[str]] = None):
        self.toks = _tokenize(src)
        self.pos = 0
        self.known = known
        self.binders: List[str] = []

    # -- token plumbing ------------------------------------------------------

    def peek(self) -> Tok:
        return self.toks[self.pos]

    def next(self) -> Tok:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg: str, tok: Optional[Tok] = None):
        t = tok or self.peek()
        raise ParseError(t.line, t.col, msg)

    def expect(self, kind: str, text: Optional[str] = None) -> Tok:
        t = self.next()
        if t.kind != kind or (text is not None and t.text != text):
            want = text or kind
            raise ParseError(t.line, t.col, f"expected {want!r}, found {t.text!r}")
        return t

    def at_punct(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.text == text

    def eat_punct(self, text: str) -> bool:
        if self.at_punct(text):
            self.pos += 1
            return True
        return False

    def at_name(self, text: str) -> bool:
        t = self.peek()
        return t.kind == "name" and t.text == text

    # -- term grammar --------------------------------------------------------

    def term(self) -> Term:
        return self.arrow()

    def arrow(self) -> Term:
        left = self.tsum()
        if self.eat_punct("->"):
            right = self.arrow()
            return Pi("_", left, shift(right, 1))
        return left

    def tsum(self) -> Term:
        left = self.tprod()
        if self.eat_punct("+"):
            return Sum(left, self.tsum())
        return left

    def tprod(self) -> Term:
        left = self.application()
        if self.eat_punct("*"):
            return Sigma("_", left, shift(self.tprod(), 1))
        return left

    def _starts_arg(self) -> bool:
        t = self.peek()
        if t.kind == "int":
            return True
        if t.kind == "punct":
            return t.text == "("
        if t.kind == "name":
            return t.text not in KEYWORDS or t.text in ("N", "U", "c_nat", "ceq_nat")
        return False

    def application(self) -> Term:
        head = self.atom()
        while self._starts_arg():
            head = App(head, self.arg_atom())
        return head

    def arg_atom(self) -> Term:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return _nat(int(t.text))
        if t.kind == "punct" and t.text == "(":
            self.next()
            inner = self.term()
            if self.eat_punct(","):
                second = self.term()
                self.expect("punct", ")")
                return Pair(inner, second)
            self.expect("punct", ")")
            return inner
        if t.kind == "name":
            if t.text == "N":
                self.next()
                return NAT
            if t.text == "U":
                self.next()
                return UNIV
            if t.text == "c_nat":
                self.next()
                return Code("nat")
            if t.text == "ceq_nat":
                self.next()
                return Ceq("nat")
            if t.text not in KEYWORDS:
                self.next()
                return self.name_ref(t)
        self.fail(f"expected an argument, found {t.text!r}")

    def name_ref(self, t: Tok) -> Term:
        name = t.text
        for depth, b in enumerate(reversed(self.binders)):
            if b == name:
                return Var(depth)
        if self.known is not None and name not in self.known:
            raise ParseError(t.line, t.col, f"unbound identifier {name!r}")
        return Const(name)

    def binder_group(self) -> List[Tuple[str, Term]]:
        """Parse ``(x y : A)`` without pushing the binders."""
        self.expect("punct", "(")
        names = []
        while self.peek().kind == "name" and not self.at_punct(":"):
            tok = self.next()
            if tok.text in KEYWORDS:
                self.fail(f"{tok.text!r} is reserved", tok)
            names.append(tok.text)
        if not names:
            self.fail("expected binder name")
        self.expect("punct", ":")
        ty = self.term()
        self.expect("punct", ")")
        return [(nm, ty) for nm in names]

    def binder_form(self, ctor) -> Term:
        groups: List[Tuple[str, Term]] = []
        while self.at_punct("("):
            start = self.pos
            try:
                g = self.binder_group()
            except ParseError:
                self.pos = start
                break
            groups.extend(g)
            for nm, _ in g:
                self.binders.append(nm)
        if not groups:
            self.fail("expected a binder like (x:A)")
        body = self.term()
        for nm, ty in reversed(groups):
            self.binders.pop()
            body = ctor(nm, ty, body)
        return body

    def motive(self) -> Family:
        self.expect("punct", "{")
        binders: List[Tuple[str, Term]] = []
        while self.at_punct("("):
            for nm, ty in self.binder_group():
                binders.append((nm, ty))
                self.binders.append(nm)
        if not binders:
            self.fail("motive needs at least one binder")
        self.expect("punct", ".")
        body = self.term()
        self.expect("punct", "}")
        for _ in binders:
            self.binders.pop()
        return Family(tuple(binders), body)

    def branch(self, arity: int) -> Term:
        self.expect("punct", "{")
        names = []
        while self.peek().kind == "name" and not self.at_punct("."):
            tok = self.next()
            if tok.text in KEYWORDS:
                self.fail(f"{tok.text!r} is reserved", tok)
            names.append(tok.text)
        if len(names) != arity:
            self.fail(f"branch binds {len(names)} names, expected {arity}")
        self.expect("punct", ".")
        self.binders.extend(names)
        body = self.term()
        self.expect("punct", "}")
        for _ in names:
            self.binders.pop()
        return body

    def _int(self) -> int:
        t = self.expect("int")
        return int(t.text)

    def atom(self) -> Term:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return _nat(int(t.text))
        if t.kind == "punct" and t.text == "(":
            self.next()
            inner = self.term()
            if self.eat_punct(","):
                second = self.term()
                self.expect("punct", ")")
                return Pair(inner, second)
            self.expect("punct", ")")
            return inner
        if t.kind != "name":
            self.fail(f"unexpected {t.text!r}")
        name = t.text
        if name == "Pi":
            self.next()
            return self.binder_form(lambda n, ty, b: Pi(n, ty, b))
        if name == "Sig":
            self.next()
            return self.binder_form(lambda n, ty, b: Sigma(n, ty, b))
        if name == "lam":
            self.next()
            return self.binder_form(lambda n, ty, b: Lam(n, ty, b))
        if name == "W":
            self.next()
            return self.binder_form(lambda n, ty, b: W(n, ty, b))
        if name == "funext":
            self.next()
            return self.binder_form(lambda n, ty, b: Funext(n, ty, b))
        if name == "ap":
            self.next()
            return App(self.arg_atom(), self.arg_atom())
        if name == "Id":
            self.next()
            return Id(self.arg_atom(), self.arg_atom(), self.arg_atom())
        if name == "refl":
            self.next()
            return Refl(self.arg_atom())
        if name == "s":
            self.next()
            return Succ(self.arg_atom())
        if name == "El":
            self.next()
            return El(self.arg_atom())
        if name == "ExtEq":
            self.next()
            return ExtEq(self.arg_atom(), self.arg_atom())
        if name == "sup":
            self.next()
            return Sup(self.arg_atom(), self.arg_atom())
        if name == "inl":
            self.next()
            return Inl(self.arg_atom())
        if name == "inr":
            self.next()
            return Inr(self.arg_atom())
        if name == "N":
            self.next()
            return NAT
        if name == "U":
            self.next()
            return UNIV
        if name == "Fin":
            self.next()
            return Fin(self._int())
        if name == "fin":
            self.next()
            m = self._int()
            k = self._int()
            try:
                return FinLit(m, k)
            except ValueError as e:
                self.fail(str(e), t)
        if name in _CODE_KEYWORDS:
            self.next()
            former, arity = _CODE_KEYWORDS[name]
            return Code(former, tuple(self.arg_atom() for _ in range(arity)))
        if name == "c_fin":
            self.next()
            k = self._int()
            if k not in (0, 1, 2):
                self.fail("c_fin takes sizes 0, 1 or 2", t)
            return Code("fin", (), k)
        if name in _CEQ_KEYWORDS:
            self.next()
            former, arity = _CEQ_KEYWORDS[name]
            return Ceq(former, tuple(self.arg_atom() for _ in range(arity)))
        if name == "ceq_fin":
            self.next()
            k = self._int()
            if k not in (0, 1, 2):
                self.fail("ceq_fin takes sizes 0, 1 or 2", t)
            return Ceq("fin", (), k)
        if name == "J":
            self.next()
            motive = self.motive()
            base = self.branch(1)
            return J(motive, base, self.arg_atom(), self.arg_atom(), self.arg_atom())
        if name == "Trec":
            self.next()
            motive = self.motive()
            scrut = self.arg_atom()
            step = self.branch(3)
            return WRec(motive, scrut, step)
        if name == "Nrec":
            self.next()
            motive = self.motive()
            scrut = self.arg_atom()
            base = self.arg_atom()
            step = self.branch(2)
            return NatRec(motive, scrut, base, step)
        if name == "Srec":
            self.next()
            motive = self.motive()
            scrut = self.arg_atom()
            br = self.branch(2)
            return SigElim(motive, scrut, br)
        if name == "Drec":
            self.next()
            motive = self.motive()
            scrut = self.arg_atom()
            onl = self.branch(1)
            onr = self.branch(1)
            return SumElim(motive, scrut, onl, onr)
        if name == "Frec":
            self.next()
            k = self._int()
            motive = self.motive()
            scrut = self.arg_atom()
            branches = tuple(self.arg_atom() for _ in range(k))
            return FinRec(motive, scrut, branches)
        if name in KEYWORDS:
            self.fail(f"keyword {name!r} cannot start a term here")
        self.next()
        return self.name_ref(t)

    # -- declarations --------------------------------------------------------

    def source_file(self) -> List[Decl]:
        decls: List[Decl] = []
        seen: Set[str] = set(self.known or ())
        while self.peek().kind != "eof":
            t = self.next()
            if t.kind != "name" or t.text not in ("def", "postulate", "type"):
                self.fail("expected 'def', 'postulate' or 'type'", t)
            name_tok = self.expect("name")
            if name_tok.text in KEYWORDS:
                self.fail(f"{name_tok.text!r} is reserved", name_tok)
            if name_tok.text in seen:
                self.fail(f"duplicate name {name_tok.text!r}", name_tok)
            if t.text == "type":
                self.expect("punct", ":=")
                body = self.term()
                decls.append(Decl(name_tok.text, "typealias", None, body))
            elif t.text == "postulate":
                self.expect("punct", ":")
                ty = self.term()
                decls.append(Decl(name_tok.text, "postulate", ty, None))
            else:
                self.expect("punct", ":")
                ty = self.term()
                self.expect("punct", ":=")
                body = self.term()
                decls.append(Decl(name_tok.text, "def", ty, body))
            seen.add(name_tok.text)
            if self.known is not None:
                self.known.add(name_tok.text)
        return decls

    # -- formulas -------------------------------------------------------------

    def formula(self, params: Optional[Set[str]]) -> F.Formula:
        self.fvars: List[str] = []
        self.fparams = params
        phi = self.f_imp()
        return phi

    def f_imp(self) -> F.Formula:
        if self.at_name("all") or self.at_name("ex"):
            return self.f_quant()
        left = self.f_or()
        if self.eat_punct("->"):
            return F.Imp(left, self.f_imp())
        return left

    def f_quant(self) -> F.Formula:
        q = self.next().text
        var = self.expect("name")
        if var.text in KEYWORDS:
            self.fail(f"{var.text!r} is reserved", var)
        bound = None
        if self.at_name("in"):
            self.next()
            bound = self.set_expr()
        self.expect("punct", ".")
        self.fvars.append(var.text)
        body = self.f_imp()
        self.fvars.pop()
        if bound is not None:
            return (F.BForall if q == "all" else F.BExists)(var.text, bound, body)
        return (F.Forall if q == "all" else F.Exists)(var.text, body)

    def f_or(self) -> F.Formula:
        left = self.f_and()
        if self.eat_punct("\\/"):
            return F.Or(left, self.f_or())
        return left

    def f_and(self) -> F.Formula:
        left = self.f_atom()
        if self.eat_punct("/\\"):
            return F.And(left, self.f_and())
        return left

    def f_atom(self) -> F.Formula:
        if self.at_name("false"):
            self.next()
            return F.Bot()
        if self.at_punct("("):
            self.next()
            inner = self.f_imp()
            self.expect("punct", ")")
            return inner
        lhs = self.set_expr()
        t = self.next()
        if t.kind == "punct" and t.text == "=":
            return F.Eq(lhs, self.set_expr())
        if t.kind == "name" and t.text == "in":
            return F.Mem(lhs, self.set_expr())
        self.fail("expected '=' or 'in'", t)

    def set_expr(self) -> F.SetExpr:
        if self.eat_punct("`"):
            name = self.expect("name")
            if self.known is not None and name.text not in self.known:
                raise ParseError(name.line, name.col,
                                 f"unknown set constant {name.text!r}")
            return F.SetConst(name.text, Const(name.text))
        t = self.expect("name")
        if t.text in KEYWORDS:
            self.fail(f"{t.text!r} is reserved", t)
        if t.text not in self.fvars and self.fparams is not None \
                and t.text not in self.fparams:
            raise ParseError(t.line, t.col, f"unbound set variable {t.text!r}")
        return F.SetVar(t.text)


def _nat(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def parse_term(text: str, known: Optional[Set[str]] = None) -> Term:
    p = _Parser(text, known)
    t = p.term()
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(tok.line, tok.col, f"trailing input {tok.text!r}")
    return t


def parse_source(text: str, known: Optional[Set[str]] = None) -> List[Decl]:
    p = _Parser(text, set(known) if known is not None else None)
    return p.source_file()


def parse_formula(text: str, known: Optional[Set[str]] = None,
                  params: Optional[Set[str]] = None) -> F.Formula:
    p = _Parser(text, known)
    phi = p.formula(params)
    tok = p.peek()
    if tok.kind != "eof":
        raise ParseError(tok.line, tok.col, f"trailing input {tok.text!r}")
    return phi


# ---------------------------------------------------------------------------
# Printer


_ARROW, _SUM, _PROD, _APP, _ATOM = 0, 1, 2, 3, 4


def _occurs(t: Term, ix: int, depth: int = 0) -> bool:
    if t.mfv <= depth + ix:
        return False
    if isinstance(t, Var):
        return t.ix == depth + ix
    for name, binders in t._shape:
        v = getattr(t, name)
        if isinstance(v, Term):
            if _occurs(v, ix, depth + binders):
                return True
        elif isinstance(v, Family):
            for i, (_, ty) in enumerate(v.binders):
                if _occurs(ty, ix, depth + i):
                    return True
            if _occurs(v.body, ix, depth + v.arity):
                return True
        elif isinstance(v, tuple):
            for x in v:
                if _occurs(x, ix, depth + binders):
                    return True
    return False


def _as_numeral(t: Term) -> Optional[int]:
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    if isinstance(t, Zero):
        return n
    return None


def _fresh(hint: str, used: Sequence[str], needed: bool) -> str:
    if hint == "_" and not needed:
        return "_"
    base = hint if hint and hint != "_" and hint not in KEYWORDS and hint[0].isalpha() else "x"
    if base not in used and base not in KEYWORDS:
        return base
    i = 1
    while f"{base}{i}" in used or f"{base}{i}" in KEYWORDS:
        i += 1
    return f"{base}{i}"


class _Printer:
    def __init__(self):
        self.names: List[str] = []

    def var(self, ix: int) -> str:
        if ix < len(self.names):
            nm = self.names[-1 - ix]
            if nm != "_":
                return nm
        return f"!{ix}"  # dangling index; printable for diagnostics only

    def parens(self, s: str, level: int, want: int) -> str:
        return f"({s})" if level < want else s

    def binder(self, keyword: str, hint: str, dom: Term, cod: Term,
               want: int, needed: bool) -> str:
        nm = _fresh(hint, self.names, needed)
        dom_s = self.show(dom, _ARROW)
        self.names.append(nm)
        body = self.show(cod, _ARROW)
        self.names.pop()
        return self.parens(f"{keyword} ({nm}:{dom_s}) {body}", _ARROW, want)

    def family(self, fam: Family) -> str:
        parts = []
        pushed = 0
        for hint, ty in fam.binders:
            ty_s = self.show(ty, _ARROW)
            nm = _fresh(hint, self.names, True)
            parts.append(f"({nm}:{ty_s})")
            self.names.append(nm)
            pushed += 1
        body = self.show(fam.body, _ARROW)
        for _ in range(pushed):
            self.names.pop()
        return "{" + " ".join(parts) + ". " + body + "}"

    def branch(self, body: Term, hints: Sequence[str]) -> str:
        names = []
        for i, h in enumerate(hints):
            needed = _occurs(body, len(hints) - 1 - i)
            names.append(_fresh(h, self.names + names, needed))
        self.names.extend(names)
        body_s = self.show(body, _ARROW)
        for _ in names:
            self.names.pop()
        return "{" + " ".join(names) + ". " + body_s + "}"

    def show(self, t: Term, want: int) -> str:
        num = _as_numeral(t)
        if num is not None:
            return str(num)
        if isinstance(t, Var):
            return self.var(t.ix)
        if isinstance(t, Const):
            return t.name
        if isinstance(t, Nat):
            return "N"
        if isinstance(t, U):
            return "U"
        if isinstance(t, Zero):
            return "0"
        if isinstance(t, Succ):
            return self.parens(f"s {self.show(t.arg, _ATOM)}", _APP, want)
        if isinstance(t, Pi):
            if not _occurs(t.cod, 0):
                left = self.show(t.dom, _SUM)
                right = self.show(shift(t.cod, -1, 1), _ARROW)
                return self.parens(f"{left} -> {right}", _ARROW, want)
            return self.binder("Pi", t.hint, t.dom, t.cod, want, True)
        if isinstance(t, Sigma):
            if not _occurs(t.snd, 0):
                left = self.show(t.fst, _APP)
                right = self.show(shift(t.snd, -1, 1), _PROD)
                return self.parens(f"{left} * {right}", _PROD, want)
            return self.binder("Sig", t.hint, t.fst, t.snd, want, True)
        if isinstance(t, Lam):
            return self.binder("lam", t.hint, t.dom, t.body, want,
                               _occurs(t.body, 0))
        if isinstance(t, W):
            return self.binder("W", t.hint, t.dom, t.cod, want,
                               _occurs(t.cod, 0))
        if isinstance(t, Funext):
            return self.binder("funext", t.hint, t.dom, t.cod, want,
                               _occurs(t.cod, 0))
        if isinstance(t, Sum):
            left = self.show(t.left, _PROD)
            right = self.show(t.right, _SUM)
            return self.parens(f"{left} + {right}", _SUM, want)
        if isinstance(t, App):
            return self.parens(
                f"{self.show(t.fn, _APP)} {self.show(t.arg, _ATOM)}", _APP, want)
        if isinstance(t, Pair):
            # no surface pair literal; pairs print as a checked Srec-compatible
            # tuple via parentheses-comma
            return f"({self.show(t.a, _ARROW)}, {self.show(t.b, _ARROW)})"
        if isinstance(t, Inl):
            return self.parens(f"inl {self.show(t.arg, _ATOM)}", _APP, want)
        if isinstance(t, Inr):
            return self.parens(f"inr {self.show(t.arg, _ATOM)}", _APP, want)
        if isinstance(t, Id):
            parts = (self.show(t.ty, _ATOM), self.show(t.lhs, _ATOM),
                     self.show(t.rhs, _ATOM))
            return self.parens("Id " + " ".join(parts), _APP, want)
        if isinstance(t, Refl):
            return self.parens(f"refl {self.show(t.arg, _ATOM)}", _APP, want)
        if isinstance(t, El):
            return self.parens(f"El {self.show(t.code, _ATOM)}", _APP, want)
        if isinstance(t, ExtEq):
            return self.parens(
                f"ExtEq {self.show(t.lhs, _ATOM)} {self.show(t.rhs, _ATOM)}",
                _APP, want)
        if isinstance(t, Sup):
            return self.parens(
                f"sup {self.show(t.label, _ATOM)} {self.show(t.branch, _ATOM)}",
                _APP, want)
        if isinstance(t, Fin):
            return self.parens(f"Fin {t.k}", _APP, want)
        if isinstance(t, FinLit):
            return self.parens(f"fin {t.m} {t.k}", _APP, want)
        if isinstance(t, (Code, Ceq)):
            prefix = "c_" if isinstance(t, Code) else "ceq_"
            kw = prefix + _FORMER_TO_KEYWORD[t.former]
            if t.former == "fin":
                return self.parens(f"{kw} {t.k}", _APP, want)
            if not t.args:
                return kw
            args = " ".join(self.show(a, _ATOM) for a in t.args)
            return self.parens(f"{kw} {args}", _APP, want)
        if isinstance(t, SigElim):
            s = (f"Srec {self.family(t.motive)} {self.show(t.scrut, _ATOM)} "
                 f"{self.branch(t.branch, ('x', 'y'))}")
            return self.parens(s, _APP, want)
        if isinstance(t, SumElim):
            s = (f"Drec {self.family(t.motive)} {self.show(t.scrut, _ATOM)} "
                 f"{self.branch(t.onl, ('x',))} {self.branch(t.onr, ('y',))}")
            return self.parens(s, _APP, want)
        if isinstance(t, J):
            s = (f"J {self.family(t.motive)} {self.branch(t.base, ('z',))} "
                 f"{self.show(t.x, _ATOM)} {self.show(t.y, _ATOM)} "
                 f"{self.show(t.p, _ATOM)}")
            return self.parens(s, _APP, want)
        if isinstance(t, NatRec):
            s = (f"Nrec {self.family(t.motive)} {self.show(t.scrut, _ATOM)} "
                 f"{self.show(t.base, _ATOM)} {self.branch(t.step, ('x', 'y'))}")
            return self.parens(s, _APP, want)
        if isinstance(t, FinRec):
            k = len(t.branches)
            brs = " ".join(self.show(b, _ATOM) for b in t.branches)
            s = f"Frec {k} {self.family(t.motive)} {self.show(t.scrut, _ATOM)}"
            if brs:
                s += " " + brs
            return self.parens(s, _APP, want)
        if isinstance(t, WRec):
            s = (f"Trec {self.family(t.motive)} {self.show(t.scrut, _ATOM)} "
                 f"{self.branch(t.step, ('x', 'y', 'z'))}")
            return self.parens(s, _APP, want)
        raise ValueError(f"unprintable term {t!r}")


def print_term(t: Term) -> str:
    return _Printer().show(t, _ARROW)


def print_decl(d: Decl) -> str:
    if d.kind == "typealias":
        return f"type {d.name} := {print_term(d.body)}"
    if d.kind == "postulate":
        return f"postulate {d.name} : {print_term(d.ty)}"
    return f"def {d.name} : {print_term(d.ty)} :=\n  {print_term(d.body)}"


def _show_setexpr(e: F.SetExpr) -> str:
    if isinstance(e, F.SetConst):
        return f"`{e.name}"
    return e.name


def print_formula(phi: F.Formula) -> str:
    def go(p: F.Formula, level: int) -> str:
        # level 0 = imp, 1 = or, 2 = and, 3 = atom
        if isinstance(p, F.Bot):
            return "false"
        if isinstance(p, F.Eq):
            return f"{_show_setexpr(p.lhs)} = {_show_setexpr(p.rhs)}"
        if isinstance(p, F.Mem):
            return f"{_show_setexpr(p.lhs)} in {_show_setexpr(p.rhs)}"
        if isinstance(p, (F.Forall, F.Exists, F.BForall, F.BExists)):
            q = "all" if isinstance(p, (F.Forall, F.BForall)) else "ex"
            if isinstance(p, (F.BForall, F.BExists)):
                s = f"{q} {p.var} in {_show_setexpr(p.bound)}. {go(p.body, 0)}"
            else:
                s = f"{q} {p.var}. {go(p.body, 0)}"
            return f"({s})" if level > 0 else s
        if isinstance(p, F.Imp):
            s = f"{go(p.lhs, 1)} -> {go(p.rhs, 0)}"
            return f"({s})" if level > 0 else s
        if isinstance(p, F.Or):
            s = f"{go(p.lhs, 2)} \\/ {go(p.rhs, 1)}"
            return f"({s})" if level > 1 else s
        if isinstance(p, F.And):
            s = f"{go(p.lhs, 3)} /\\ {go(p.rhs, 2)}"
            return f"({s})" if level > 2 else s
        raise ValueError(f"unprintable formula {p!r}")

    return go(phi, 0)
