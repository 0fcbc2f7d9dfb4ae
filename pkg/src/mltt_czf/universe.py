"""Universe codes, their postulated equivalences, and small reflection.

The code set is {pi, sigma, plus, id, nat, fin0, fin1, fin2, w}: exactly
what the set-theoretic constructions consume (sigma in union, plus and fin
in infinity and successors, pi with a constant family as exp in subset
collection, w in regular extensions).

Small reflection derives, for each restricted formula, a universe code
whose El is equivalent to the formula's interpretation.  The disjunction
and implication cases go through the sum/arrow congruence equivalences:
an implication (A → B) ≃ (El c → El d) factors as codomain congruence
(pi over the fixed domain A, pointwise B ≃ El d, via function
extensionality) followed by precomposition with a quasi-inverse of
A ≃ El c; disjunctions lift the component equivalences through + by case
analysis, with ap along the injections rebuilding the homotopies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

from . import hott
from .hoas import app, arrow, bind, lam, pi, prod, sigma
from .kernel import Checker, TypeCheckError, ceq_statement, equiv_type
from .terms import (
    Ceq, Code, Const, El, ExtEq, Fin, FinRec, Id, Pair, Pi, Sigma, Sum,
    Sup, Term, UNIV, W, WRec, shift,
)
from .hott import NamedLemma


@dataclass(frozen=True)
class CodeFormer:
    tag: str
    arity: int
    k: Optional[int] = None

    @property
    def display(self) -> str:
        return f"fin{self.k}" if self.tag == "fin" else self.tag


CODE_FORMERS: Tuple[CodeFormer, ...] = (
    CodeFormer("pi", 2),
    CodeFormer("sigma", 2),
    CodeFormer("plus", 2),
    CodeFormer("id", 3),
    CodeFormer("nat", 0),
    CodeFormer("fin", 0, 0),
    CodeFormer("fin", 0, 1),
    CodeFormer("fin", 0, 2),
    CodeFormer("w", 2),
)


class NotRestricted(Exception):
    """Raised when reflection meets an unbounded quantifier."""


def mk_code(ck: Checker, former: str, args: Tuple[Term, ...] = (),
            k: Optional[int] = None) -> Term:
    code = Code(former, args, k)
    ck.infer(code)  # validates the arguments against the former's schema
    return code


def ceq_term(former: str, args: Tuple[Term, ...] = (),
             k: Optional[int] = None) -> Tuple[Term, Term]:
    """The postulated canonical equivalence and its type."""
    c = Ceq(former, args, k)
    return c, ceq_statement(former, args, k)


def external_of(former: str, args: Tuple[Term, ...], k: Optional[int]) -> Term:
    """The external type El(code) is equivalent to."""
    if former == "pi":
        a, b = args
        return pi("x", El(a), lambda x: El(app(b, x)))
    if former == "sigma":
        a, b = args
        return sigma("x", El(a), lambda x: El(app(b, x)))
    if former == "plus":
        return Sum(El(args[0]), El(args[1]))
    if former == "id":
        a, x, y = args
        return Id(El(a), x, y)
    if former == "nat":
        from .terms import NAT
        return NAT
    if former == "fin":
        return Fin(k)
    if former == "w":
        a, b = args
        from .hoas import wtype
        return wtype("x", El(a), lambda x: El(app(b, x)))
    raise ValueError(former)


def _code_equiv_parts(former, args, k):
    code = Code(former, args, k)
    ext = external_of(former, args, k)
    return El(code), ext, Ceq(former, args, k)


def ceq_fwd(former: str, args: Tuple[Term, ...] = (), k: Optional[int] = None) -> Term:
    a, b, e = _code_equiv_parts(former, args, k)
    return hott.equiv_fwd(a, b, e)


def ceq_linv(former: str, args: Tuple[Term, ...] = (), k: Optional[int] = None) -> Term:
    a, b, e = _code_equiv_parts(former, args, k)
    return hott.equiv_linv(a, b, e)


def ceq_linv_hom(former: str, args: Tuple[Term, ...] = (), k=None) -> Term:
    a, b, e = _code_equiv_parts(former, args, k)
    return hott.equiv_linv_hom(a, b, e)


def ceq_rinv(former: str, args: Tuple[Term, ...] = (), k: Optional[int] = None) -> Term:
    a, b, e = _code_equiv_parts(former, args, k)
    return hott.equiv_rinv(a, b, e)


def ceq_rinv_hom(former: str, args: Tuple[Term, ...] = (), k=None) -> Term:
    a, b, e = _code_equiv_parts(former, args, k)
    return hott.equiv_rinv_hom(a, b, e)


def ceq_sym_equiv(former: str, args: Tuple[Term, ...] = (), k=None) -> Term:
    """Equiv(external, El code), the orientation reflection composes with."""
    a, b, e = _code_equiv_parts(former, args, k)
    return hott.equiv_sym(a, b, e)


def absurd_from_fin0(target: Term, witness: Term) -> Term:
    """Eliminate El(c_fin0) into any type through the fin0 equivalence."""
    from .hoas import fam
    motive = fam([("m", Fin(0))], lambda m: target)
    return FinRec(motive, app(ceq_fwd("fin", (), 0), witness), ())


# ---------------------------------------------------------------------------
# Small reflection


VCONST = Const("V")


def _vbar(t: Term) -> Term:
    return app(Const("Vbar"), t)


def _vtilde(t: Term) -> Term:
    return app(Const("Vtilde"), t)


def _sr_sigma_cell() -> NamedLemma:
    """(Σu:El b) (f u ≐ g u) is equivalent to El(sigma(b,e)) whenever each
    cell reflects pointwise.  Quantifying the set-valued functions keeps the
    heavy congruence term in the environment exactly once."""
    stmt = pi("b", UNIV, lambda b: pi(
        "f", arrow(El(b), VCONST), lambda f: pi(
            "g", arrow(El(b), VCONST), lambda g: pi(
                "e", arrow(El(b), UNIV), lambda e: arrow(
                    pi("u", El(b), lambda u: equiv_type(
                        ExtEq(app(f, u), app(g, u)), El(app(e, u)))),
                    equiv_type(
                        sigma("u", El(b),
                              lambda u: ExtEq(app(f, u), app(g, u))),
                        El(Code("sigma", (b, lam("u", El(b),
                                               lambda u: app(e, u)))))))))))

    def body(b, f, g, e, q):
        src_fam = lambda u: ExtEq(app(f, u), app(g, u))
        mid_fam = lambda u: El(app(e, u))
        code = Code("sigma", (b, lam("u", El(b), lambda u: app(e, u))))
        cong = hott.sigma_congruence(El(b), src_fam, mid_fam,
                                     lambda u: app(q, u))
        close = hott.equiv_sym(El(code), sigma("u", El(b), mid_fam),
                               Ceq("sigma", (b, lam("u", El(b),
                                                    lambda u: app(e, u)))))
        return hott.equiv_compose(sigma("u", El(b), src_fam),
                                  sigma("u", El(b), mid_fam),
                                  El(code), cong, close)

    wit = lam("b", UNIV, lambda b: lam(
        "f", arrow(El(b), VCONST), lambda f: lam(
            "g", arrow(El(b), VCONST), lambda g: lam(
                "e", arrow(El(b), UNIV), lambda e: lam(
                    "q", pi("u", El(b), lambda u: equiv_type(
                        ExtEq(app(f, u), app(g, u)), El(app(e, u)))),
                    lambda q: body(b, f, g, e, q))))))
    return NamedLemma("reflect_sigma_cell", stmt, wit)


def _sr_pisig(side: str) -> NamedLemma:
    """(Πv:El x)(Σu:El b) ExtEq(…) reflects, where the ExtEq arguments come
    from the Π-variable first ("left") or second ("right")."""
    name = "reflect_pi_sigma_" + side

    def ext(fv, gu):
        return ExtEq(fv, gu) if side == "left" else ExtEq(gu, fv)

    def hyp_ty(x, b, f, g, e):
        return pi("v", El(x), lambda v: pi(
            "u", El(b),
            lambda u: equiv_type(ext(app(f, v), app(g, u)),
                                 El(app(e, v, u)))))

    def goal_ty(x, b, f, g, e):
        src = pi("v", El(x), lambda v: sigma(
            "u", El(b), lambda u: ext(app(f, v), app(g, u))))
        code = Code("pi", (x, lam("v", El(x), lambda v: Code(
            "sigma", (b, lam("u", El(b), lambda u: app(e, v, u)))))))
        return equiv_type(src, El(code))

    def quantified(mk):
        return pi("x", UNIV, lambda x: pi(
            "b", UNIV, lambda b: pi(
                "f", arrow(El(x), VCONST), lambda f: pi(
                    "g", arrow(El(b), VCONST), lambda g: pi(
                        "e", pi("v", El(x), lambda v: arrow(El(b), UNIV)),
                        lambda e: mk(x, b, f, g, e))))))

    stmt = quantified(lambda x, b, f, g, e: arrow(
        hyp_ty(x, b, f, g, e), goal_ty(x, b, f, g, e)))

    def body(x, b, f, g, e, q):
        cell = Const("reflect_sigma_cell")

        def inner_raw(v):
            if side == "left":
                ff = lam("u", El(b), lambda _u: app(f, v))
                gg = g
            else:
                ff = g
                gg = lam("u", El(b), lambda _u: app(f, v))
            return app(cell, b, ff, gg,
                       lam("u", El(b), lambda u: app(e, v, u)),
                       lam("u", El(b), lambda u: app(q, v, u)))

        inner = hott._memo_by_id(inner_raw)

        src_fam = lambda v: sigma("u", El(b),
                                  lambda u: ext(app(f, v), app(g, u)))
        sig_code = lambda v: Code("sigma", (b, lam("u", El(b),
                                                   lambda u: app(e, v, u))))
        mid_fam = lambda v: El(sig_code(v))
        pi_code = Code("pi", (x, lam("v", El(x), sig_code)))
        cong = hott.pi_congruence(El(x), src_fam, mid_fam, inner)
        close = hott.equiv_sym(El(pi_code), pi("v", El(x), mid_fam),
                               Ceq("pi", (x, lam("v", El(x), sig_code))))
        return hott.equiv_compose(pi("v", El(x), src_fam),
                                  pi("v", El(x), mid_fam),
                                  El(pi_code), cong, close)

    wit = lam("x", UNIV, lambda x: lam(
        "b", UNIV, lambda b: lam(
            "f", arrow(El(x), VCONST), lambda f: lam(
                "g", arrow(El(b), VCONST), lambda g: lam(
                    "e", pi("v", El(x), lambda v: arrow(El(b), UNIV)),
                    lambda e: lam(
                        "q", hyp_ty(x, b, f, g, e),
                        lambda q: body(x, b, f, g, e, q)))))))
    return NamedLemma(name, stmt, wit)


def _sr_step() -> NamedLemma:
    """One unfolding of the bisimulation reflects: packaged as a closed
    lemma so the recursion step is a small application term."""
    def halves(x, b, f, g):
        p1 = pi("v", El(x), lambda v: sigma(
            "u", El(b), lambda u: ExtEq(app(f, v), app(g, u))))
        p2 = pi("u", El(b), lambda u: sigma(
            "v", El(x), lambda v: ExtEq(app(f, v), app(g, u))))
        return p1, p2

    def codes(x, b, e):
        c1 = Code("pi", (x, lam("v", El(x), lambda v: Code(
            "sigma", (b, lam("u", El(b), lambda u: app(e, v, u)))))))
        c2 = Code("pi", (b, lam("u", El(b), lambda u: Code(
            "sigma", (x, lam("v", El(x), lambda v: app(e, v, u)))))))
        c = Code("sigma", (c1, lam("h", El(c1), lambda _h: c2)))
        return c1, c2, c

    stmt = pi("x", UNIV, lambda x: pi(
        "b", UNIV, lambda b: pi(
            "f", arrow(El(x), VCONST), lambda f: pi(
                "g", arrow(El(b), VCONST), lambda g: pi(
                    "e", pi("v", El(x), lambda v: arrow(El(b), UNIV)),
                    lambda e: arrow(
                        pi("v", El(x), lambda v: pi(
                            "u", El(b), lambda u: equiv_type(
                                ExtEq(app(f, v), app(g, u)),
                                El(app(e, v, u))))),
                        sigma("c", UNIV, lambda c: equiv_type(
                            prod(halves(x, b, f, g)[0], halves(x, b, f, g)[1]),
                            El(c)))))))))

    def body(x, b, f, g, e, q):
        p1, p2 = halves(x, b, f, g)
        c1, c2, c = codes(x, b, e)
        half1 = app(Const("reflect_pi_sigma_left"), x, b, f, g, e, q)
        flip_e = lam("u", El(b), lambda u: lam("v", El(x), lambda v: app(e, v, u)))
        flip_q = lam("u", El(b), lambda u: lam("v", El(x), lambda v: app(q, v, u)))
        half2 = app(Const("reflect_pi_sigma_right"), b, x, g, f, flip_e, flip_q)
        pair_cong = hott.prod_congruence(p1, El(c1), p2, El(c2), half1, half2)
        close = hott.equiv_sym(El(c), prod(El(c1), El(c2)),
                               Ceq("sigma", (c1, lam("h", El(c1),
                                                     lambda _h: c2))))
        full = hott.equiv_compose(prod(p1, p2), prod(El(c1), El(c2)),
                                  El(c), pair_cong, close)
        return Pair(c, full)

    wit = lam("x", UNIV, lambda x: lam(
        "b", UNIV, lambda b: lam(
            "f", arrow(El(x), VCONST), lambda f: lam(
                "g", arrow(El(b), VCONST), lambda g: lam(
                    "e", pi("v", El(x), lambda v: arrow(El(b), UNIV)),
                    lambda e: lam(
                        "q", pi("v", El(x), lambda v: pi(
                            "u", El(b), lambda u: equiv_type(
                                ExtEq(app(f, v), app(g, u)),
                                El(app(e, v, u))))),
                        lambda q: body(x, b, f, g, e, q)))))))
    return NamedLemma("reflect_step", stmt, wit)


def build_small_reflection() -> Tuple[NamedLemma, ...]:
    """Helper lemmas plus smallRefl for the two atoms.

    The equality atom runs a double transfinite recursion; its step applies
    reflect_step to the outer induction hypothesis's codes and equivalences.
    Membership reduces to the sigma cell lemma over the equality atom.
    """
    v = VCONST
    helpers = (_sr_sigma_cell(), _sr_pisig("left"), _sr_pisig("right"),
               _sr_step())

    from .hoas import binder3, fam

    def step(x, y, z, b, g):
        pair_fn = lambda vv, u: app(z, vv, app(g, u))
        snd_fn = lambda vv, u: (
            lambda e: equiv_type(ExtEq(app(y, vv), app(g, u)), El(e)))
        e_fn = lam("v", El(x), lambda vv: lam(
            "u", El(b),
            lambda u: hott.proj1(UNIV, snd_fn(vv, u), pair_fn(vv, u))))
        q_fn = lam("v", El(x), lambda vv: lam(
            "u", El(b),
            lambda u: hott.proj2(UNIV, snd_fn(vv, u), pair_fn(vv, u))))
        return app(Const("reflect_step"), x, b, y, g, e_fn, q_fn)

    outer_motive = fam(
        [("al", v)],
        lambda al: pi("be", v, lambda be: sigma(
            "e", UNIV, lambda e: equiv_type(ExtEq(al, be), El(e)))))
    inner_motive_fn = lambda x, y, z: fam(
        [("be", v)],
        lambda be: sigma("e", UNIV,
                         lambda e: equiv_type(ExtEq(Sup(x, y), be), El(e))))

    wit = lam("al", v, lambda al: WRec(
        outer_motive, al,
        binder3(lambda x, y, z: lam(
            "be", v,
            lambda be: WRec(
                inner_motive_fn(x, y, z), be,
                binder3(lambda b, g, w: step(x, y, z, b, g)))))))

    stmt = pi("al", v, lambda al: pi("be", v, lambda be: sigma(
        "e", UNIV, lambda e: equiv_type(ExtEq(al, be), El(e)))))
    eq_lemma = NamedLemma("small_reflect_eq", stmt, wit)

    # membership: (Σ u : El(β̄)) (α ≐ β̃ u) is a sigma of equality cells
    sre = Const("small_reflect_eq")

    def mem_pair(al, be):
        bar = _vbar(be)
        snd_fn = lambda u: (
            lambda e: equiv_type(ExtEq(al, app(_vtilde(be), u)), El(e)))
        cell = lambda u: app(sre, al, app(_vtilde(be), u))
        e_fn = lam("u", El(bar), lambda u: hott.proj1(UNIV, snd_fn(u), cell(u)))
        q_fn = lam("u", El(bar), lambda u: hott.proj2(UNIV, snd_fn(u), cell(u)))
        code = Code("sigma", (bar, e_fn))
        equiv = app(Const("reflect_sigma_cell"), bar,
                    lam("u", El(bar), lambda _u: al), app(Const("Vtilde"), be),
                    e_fn, q_fn)
        return Pair(code, equiv)

    mem_stmt = pi("al", v, lambda al: pi("be", v, lambda be: sigma(
        "e", UNIV, lambda e: equiv_type(
            sigma("u", El(_vbar(be)),
                  lambda u: ExtEq(al, app(_vtilde(be), u))),
            El(e)))))
    mem_wit = lam("al", v, lambda al: lam("be", v, lambda be: mem_pair(al, be)))
    mem_lemma = NamedLemma("small_reflect_mem", mem_stmt, mem_wit)
    return helpers + (eq_lemma, mem_lemma)


# ---------------------------------------------------------------------------
# Reflection of restricted formulas


def reflect_restricted(phi, rho: Dict[str, Term], ck: Checker) -> Tuple[Term, Term]:
    """(code, equiv) with equiv : Equiv(⟦phi⟧ρ, El code).

    Rejects unbounded quantifiers.  The environment must contain the
    prelude and the two small-reflection lemmas.
    """
    from . import formulas as F
    from .czf import interpret, resolve_setexpr

    def go(p, rho) -> Tuple[Term, Term]:
        if isinstance(p, (F.Forall, F.Exists)):
            raise NotRestricted("unbounded quantifier is not restricted")
        if isinstance(p, F.Bot):
            code = Code("fin", (), 0)
            return code, ceq_sym_equiv("fin", (), 0)
        if isinstance(p, F.Eq):
            t1 = resolve_setexpr(p.lhs, rho)
            t2 = resolve_setexpr(p.rhs, rho)
            pair = app(Const("small_reflect_eq"), t1, t2)
            snd_fn = lambda e: equiv_type(ExtEq(t1, t2), El(e))
            return (hott.proj1(UNIV, snd_fn, pair),
                    hott.proj2(UNIV, snd_fn, pair))
        if isinstance(p, F.Mem):
            t1 = resolve_setexpr(p.lhs, rho)
            t2 = resolve_setexpr(p.rhs, rho)
            pair = app(Const("small_reflect_mem"), t1, t2)
            mem_ty = interpret(p, rho)
            snd_fn = lambda e: equiv_type(mem_ty, El(e))
            return (hott.proj1(UNIV, snd_fn, pair),
                    hott.proj2(UNIV, snd_fn, pair))
        if isinstance(p, F.And):
            c1, e1 = go(p.lhs, rho)
            c2, e2 = go(p.rhs, rho)
            t1 = interpret(p.lhs, rho)
            t2 = interpret(p.rhs, rho)
            from .hoas import prod
            code = Code("sigma", (c1, lam("x", El(c1), lambda _x: c2)))
            cong = hott.prod_congruence(t1, El(c1), t2, El(c2), e1, e2)
            close = hott.equiv_sym(El(code), prod(El(c1), El(c2)),
                                   Ceq("sigma", (c1, lam("x", El(c1), lambda _x: c2))))
            return code, hott.equiv_compose(prod(t1, t2),
                                            prod(El(c1), El(c2)),
                                            El(code), cong, close)
        if isinstance(p, F.Or):
            c1, e1 = go(p.lhs, rho)
            c2, e2 = go(p.rhs, rho)
            t1 = interpret(p.lhs, rho)
            t2 = interpret(p.rhs, rho)
            code = Code("plus", (c1, c2))
            cong = hott.sum_congruence(t1, El(c1), t2, El(c2), e1, e2)
            close = hott.equiv_sym(El(code), Sum(El(c1), El(c2)),
                                   Ceq("plus", (c1, c2)))
            return code, hott.equiv_compose(Sum(t1, t2),
                                            Sum(El(c1), El(c2)),
                                            El(code), cong, close)
        if isinstance(p, F.Imp):
            c1, e1 = go(p.lhs, rho)
            c2, e2 = go(p.rhs, rho)
            t1 = interpret(p.lhs, rho)
            t2 = interpret(p.rhs, rho)
            code = Code("pi", (c1, lam("x", El(c1), lambda _x: c2)))
            cong = hott.arrow_congruence(t1, El(c1), t2, El(c2), e1, e2)
            close = hott.equiv_sym(El(code), arrow(El(c1), El(c2)),
                                   Ceq("pi", (c1, lam("x", El(c1), lambda _x: c2))))
            return code, hott.equiv_compose(arrow(t1, t2),
                                            arrow(El(c1), El(c2)),
                                            El(code), cong, close)
        if isinstance(p, (F.BForall, F.BExists)):
            bound = resolve_setexpr(p.bound, rho)
            bar = _vbar(bound)

            def cell_code(u):
                rho2 = dict(rho)
                rho2[p.var] = app(_vtilde(bound), u)
                return go(p.body, rho2)[0]

            def cell_equiv(u):
                rho2 = dict(rho)
                rho2[p.var] = app(_vtilde(bound), u)
                return go(p.body, rho2)[1]

            def cell_src(u):
                rho2 = dict(rho)
                rho2[p.var] = app(_vtilde(bound), u)
                return interpret(p.body, rho2)

            former = "pi" if isinstance(p, F.BForall) else "sigma"
            code = Code(former, (bar, lam("u", El(bar), cell_code)))
            mid_fam = lambda u: El(cell_code(u))
            if former == "pi":
                cong = hott.pi_congruence(El(bar), cell_src, mid_fam, cell_equiv)
                src = pi("u", El(bar), cell_src)
                mid = pi("u", El(bar), mid_fam)
            else:
                cong = hott.sigma_congruence(El(bar), cell_src, mid_fam, cell_equiv)
                src = sigma("u", El(bar), cell_src)
                mid = sigma("u", El(bar), mid_fam)
            close = hott.equiv_sym(El(code), mid,
                                   Ceq(former, (bar, lam("u", El(bar), cell_code))))
            return code, hott.equiv_compose(src, mid, El(code), cong, close)
        raise ValueError(f"unknown formula {p!r}")

    code, equiv = go(phi, rho)
    return code, equiv
