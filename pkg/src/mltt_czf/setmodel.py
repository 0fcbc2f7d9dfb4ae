"""The type of iterative sets: projections, extensional equality algebra,
and the hereditarily finite oracle.

Extensional equality's symmetry needs a double transfinite recursion and
transitivity a triple one; in both, only the outermost induction
hypothesis is consumed (the motive generalizes the remaining arguments as
Π's over the set type), the inner recursions merely rewrite the arguments
to canonical sup form so the bisimulation unfolds.  Transitivity's outer
motive is (Πβ γ) (α≐β × β≐γ → α≐γ), i.e. the middle and right arguments
stay generalized, which is what lets the step use its hypothesis at
arbitrary later sets.

The oracle evaluates branch functions by applying them to images of the
codes' right inverses and collapsing fwd∘rinv pairs of the same canonical
equivalence; that rewrite is denotation-sound because the composite is
pointwise propositionally the identity, and extensionally equal sets have
equal hereditarily finite values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from . import hott
from .hoas import app, arrow, bind, binder2, binder3, fam, lam, pi, prod, sigma
from .kernel import Checker, Fuel, TypeCheckError, whnf
from .terms import (
    App, Ceq, Code, Const, Decl, El, Environment, ExtEq, Family, Fin, FinLit,
    FinRec, Id, Inl, Inr, Lam, Pair, Pi, Refl, Sigma, SigElim, Sum, SumElim,
    Sup, Term, UNIV, Var, W, WRec, alpha_equal, fields, shift, subst,
)
from .hott import NamedLemma
from .universe import absurd_from_fin0, ceq_fwd, ceq_rinv, external_of

VCONST = Const("V")
TAU = Const("tau")
VBAR = Const("Vbar")
VTILDE = Const("Vtilde")
EMPTY = Const("emptyset")

R0 = Const("exteq_refl")
SYM = Const("exteq_sym")
TRANS = Const("exteq_trans")
CANON = Const("exteq_canon")


def vbar(t: Term) -> Term:
    return app(VBAR, t)


def vtilde(t: Term) -> Term:
    return app(VTILDE, t)


def mem_type(a: Term, b: Term) -> Term:
    """⟦a ∈ b⟧ = (Σ u : El(b̄)) (a ≐ b̃ u)."""
    return sigma("u", El(vbar(b)), lambda u: ExtEq(a, app(vtilde(b), u)))


def r0(t: Term) -> Term:
    return app(R0, t)


def exteq_sym(a: Term, b: Term, e: Term) -> Term:
    return app(SYM, a, b, e)


def exteq_trans(a: Term, b: Term, c: Term, e1: Term, e2: Term) -> Term:
    return app(TRANS, a, b, c, Pair(e1, e2))


def exteq_chain(points: List[Term], links: List[Term]) -> Term:
    assert len(points) == len(links) + 1 and links
    acc = links[0]
    for i in range(1, len(links)):
        acc = exteq_trans(points[0], points[i], points[i + 1], acc, links[i])
    return acc


def canon(t: Term) -> Term:
    """t ≐ sup(t̄, t̃)."""
    return app(CANON, t)


def indisc(a_ty: Term, f: Term, x: Term, y: Term, p: Term) -> Term:
    """Identity proofs transfer along any map into the set type.

    f : A → V, p : Id(A,x,y) gives f x ≐ f y, computing to the reflexivity
    witness on refl.
    """
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: ExtEq(app(f, x1), app(f, y1)))
    return J(motive, bind(lambda z: r0(app(f, z))), x, y, p)


from .terms import J  # noqa: E402  (used by indisc above)


# ---------------------------------------------------------------------------
# Prelude declarations for the set layer


def sig_uv() -> Term:
    return sigma("x", UNIV, lambda x: arrow(El(x), VCONST))


def core_decls() -> List[Decl]:
    """V, the sup-splitting function tau, its projections, and ∅."""
    decls: List[Decl] = []
    decls.append(Decl("V", "typealias", None, W("x", UNIV, El(Var(0)))))

    tau_body = lam("al", VCONST, lambda al: WRec(
        fam([("c", VCONST)], lambda c: sig_uv()),
        al,
        binder3(lambda x, y, z: Pair(x, y))))
    decls.append(Decl("tau", "def", arrow(VCONST, sig_uv()), tau_body))

    vbar_body = lam("al", VCONST, lambda al: hott.proj1(
        UNIV, lambda x: arrow(El(x), VCONST), app(TAU, al)))
    decls.append(Decl("Vbar", "def", arrow(VCONST, UNIV), vbar_body))

    vtilde_ty = pi("al", VCONST, lambda al: arrow(El(vbar(al)), VCONST))
    vtilde_body = lam("al", VCONST, lambda al: hott.proj2(
        UNIV, lambda x: arrow(El(x), VCONST), app(TAU, al)))
    decls.append(Decl("Vtilde", "def", vtilde_ty, vtilde_body))

    empty_branch = lam("u", El(Code("fin", (), 0)),
                       lambda u: absurd_from_fin0(VCONST, u))
    decls.append(Decl("empty_branch", "def",
                      arrow(El(Code("fin", (), 0)), VCONST), empty_branch))
    decls.append(Decl("emptyset", "def", VCONST,
                      Sup(Code("fin", (), 0), Const("empty_branch"))))
    return decls


def exteq_decls() -> List[Decl]:
    """Reflexivity, symmetry, transitivity of ≐, canonicity, as checked defs."""
    v = VCONST
    decls: List[Decl] = []

    refl_wit = lam("al", v, lambda al: WRec(
        fam([("c", v)], lambda c: ExtEq(c, c)),
        al,
        binder3(lambda x, y, z: Pair(
            lam("v", El(x), lambda u: Pair(u, app(z, u))),
            lam("w", El(x), lambda u: Pair(u, app(z, u)))))))
    decls.append(Decl("exteq_refl", "def",
                      pi("al", v, lambda al: ExtEq(al, al)), refl_wit))

    def sym_body():
        def inner_step(a, f, z, b, g):
            # e : ExtEq(sup(a,f), sup(b,g)) |- ExtEq(sup(b,g), sup(a,f))
            e_ty = ExtEq(Sup(a, f), Sup(b, g))
            half1 = lambda: pi("v", El(a), lambda u: sigma(
                "w", El(b), lambda w: ExtEq(app(f, u), app(g, w))))
            half2 = lambda: pi("w", El(b), lambda w: sigma(
                "v", El(a), lambda u: ExtEq(app(f, u), app(g, w))))

            def body(e):
                e1 = hott.proj1(half1(), lambda _h: half2(), e)
                e2 = hott.proj2(half1(), lambda _h: half2(), e)
                comp1 = lam("w", El(b), lambda w: SigElim(
                    fam([("s", sigma("v", El(a),
                                     lambda u: ExtEq(app(f, u), app(g, w))))],
                        lambda s: sigma("v", El(a),
                                        lambda u: ExtEq(app(g, w), app(f, u)))),
                    app(e2, w),
                    binder2(lambda u, d: Pair(
                        u, app(z, u, app(g, w), d)))))
                comp2 = lam("v", El(a), lambda u: SigElim(
                    fam([("s", sigma("w", El(b),
                                     lambda w: ExtEq(app(f, u), app(g, w))))],
                        lambda s: sigma("w", El(b),
                                        lambda w: ExtEq(app(g, w), app(f, u)))),
                    app(e1, u),
                    binder2(lambda w, d: Pair(
                        w, app(z, u, app(g, w), d)))))
                return Pair(comp1, comp2)

            return lam("e", e_ty, body)

        return lam("al", v, lambda al: WRec(
            fam([("c", v)],
                lambda c: pi("be", v, lambda be: arrow(ExtEq(c, be),
                                                       ExtEq(be, c)))),
            al,
            binder3(lambda a, f, z: lam("be", v, lambda be: WRec(
                fam([("c2", v)],
                    lambda c2: arrow(ExtEq(Sup(a, f), c2), ExtEq(c2, Sup(a, f)))),
                be,
                binder3(lambda b, g, w: inner_step(a, f, z, b, g)))))))

    decls.append(Decl(
        "exteq_sym", "def",
        pi("al", v, lambda al: pi("be", v, lambda be: arrow(
            ExtEq(al, be), ExtEq(be, al)))),
        sym_body()))

    def trans_body():
        def inner_step(a, f, z, b, g, c, h):
            hyp_ty = prod(ExtEq(Sup(a, f), Sup(b, g)), ExtEq(Sup(b, g), Sup(c, h)))

            def body(pq):
                p = hott.proj1(ExtEq(Sup(a, f), Sup(b, g)),
                               lambda _x: ExtEq(Sup(b, g), Sup(c, h)), pq)
                q = hott.proj2(ExtEq(Sup(a, f), Sup(b, g)),
                               lambda _x: ExtEq(Sup(b, g), Sup(c, h)), pq)
                p_half1 = pi("v", El(a), lambda u: sigma(
                    "w", El(b), lambda w: ExtEq(app(f, u), app(g, w))))
                p_half2 = pi("w", El(b), lambda w: sigma(
                    "v", El(a), lambda u: ExtEq(app(f, u), app(g, w))))
                q_half1 = pi("v", El(b), lambda u: sigma(
                    "w", El(c), lambda w: ExtEq(app(g, u), app(h, w))))
                q_half2 = pi("w", El(c), lambda w: sigma(
                    "v", El(b), lambda u: ExtEq(app(g, u), app(h, w))))
                p1 = hott.proj1(p_half1, lambda _h: p_half2, p)
                p2 = hott.proj2(p_half1, lambda _h: p_half2, p)
                q1 = hott.proj1(q_half1, lambda _h: q_half2, q)
                q2 = hott.proj2(q_half1, lambda _h: q_half2, q)

                # (Πx:El a)(Σw:El c) f x ≐ h w
                comp1 = lam("x", El(a), lambda x: SigElim(
                    fam([("s", sigma("w", El(b),
                                     lambda w: ExtEq(app(f, x), app(g, w))))],
                        lambda s: sigma("w", El(c),
                                        lambda w: ExtEq(app(f, x), app(h, w)))),
                    app(p1, x),
                    binder2(lambda y, d1: SigElim(
                        fam([("s2", sigma("w", El(c),
                                          lambda w: ExtEq(app(g, y), app(h, w))))],
                            lambda s2: sigma(
                                "w", El(c),
                                lambda w: ExtEq(app(f, x), app(h, w)))),
                        app(q1, y),
                        binder2(lambda w, d2: Pair(
                            w, app(z, x, app(g, y), app(h, w),
                                   Pair(d1, d2))))))))
                comp2 = lam("x", El(c), lambda x: SigElim(
                    fam([("s", sigma("v", El(b),
                                     lambda u: ExtEq(app(g, u), app(h, x))))],
                        lambda s: sigma("v", El(a),
                                        lambda u: ExtEq(app(f, u), app(h, x)))),
                    app(q2, x),
                    binder2(lambda y, d2: SigElim(
                        fam([("s2", sigma("v", El(a),
                                          lambda u: ExtEq(app(f, u), app(g, y))))],
                            lambda s2: sigma(
                                "v", El(a),
                                lambda u: ExtEq(app(f, u), app(h, x)))),
                        app(p2, y),
                        binder2(lambda u, d1: Pair(
                            u, app(z, u, app(g, y), app(h, x),
                                   Pair(d1, d2))))))))
                return Pair(comp1, comp2)

            return lam("pq", hyp_ty, body)

        return lam("al", v, lambda al: WRec(
            fam([("c0", v)],
                lambda c0: pi("be", v, lambda be: pi(
                    "ga", v, lambda ga: arrow(
                        prod(ExtEq(c0, be), ExtEq(be, ga)), ExtEq(c0, ga))))),
            al,
            binder3(lambda a, f, z: lam("be", v, lambda be: WRec(
                fam([("c1", v)],
                    lambda c1: pi("ga", v, lambda ga: arrow(
                        prod(ExtEq(Sup(a, f), c1), ExtEq(c1, ga)),
                        ExtEq(Sup(a, f), ga)))),
                be,
                binder3(lambda b, g, w: lam("ga", v, lambda ga: WRec(
                    fam([("c2", v)],
                        lambda c2: arrow(
                            prod(ExtEq(Sup(a, f), Sup(b, g)),
                                 ExtEq(Sup(b, g), c2)),
                            ExtEq(Sup(a, f), c2))),
                    ga,
                    binder3(lambda c, h, u: inner_step(a, f, z, b, g, c, h))))))))))

    decls.append(Decl(
        "exteq_trans", "def",
        pi("al", v, lambda al: pi("be", v, lambda be: pi(
            "ga", v, lambda ga: arrow(
                prod(ExtEq(al, be), ExtEq(be, ga)), ExtEq(al, ga))))),
        trans_body()))

    # canonicity: al ≐ sup(Vbar al, Vtilde al), via the identity
    # Id(sup(Vbar al, Vtilde al), al) on canonical elements.
    def canon_body():
        idpath = lambda al: WRec(
            fam([("c", v)],
                lambda c: Id(v, Sup(vbar(c), vtilde(c)), c)),
            al,
            binder3(lambda x, y, z: Refl(Sup(x, y))))
        return lam("al", v, lambda al: hott.transport(
            v, lambda c: ExtEq(al, c),
            al, Sup(vbar(al), vtilde(al)),
            hott.inverse(v, Sup(vbar(al), vtilde(al)), al, idpath(al)),
            r0(al)))

    decls.append(Decl(
        "exteq_canon", "def",
        pi("al", v, lambda al: ExtEq(al, Sup(vbar(al), vtilde(al)))),
        canon_body()))
    return decls


def build_v_api() -> List[NamedLemma]:
    """Named forms of the projection laws and the subset/membership remarks."""
    v = VCONST
    out: List[NamedLemma] = []
    out.append(NamedLemma(
        "star",
        pi("al", v, lambda al: pi(
            "u", El(vbar(al)),
            lambda u: mem_type(app(vtilde(al), u), al))),
        lam("al", v, lambda al: lam(
            "u", El(vbar(al)),
            lambda u: Pair(u, r0(app(vtilde(al), u)))))))
    # u ≐ v ⇔ mutual membership of the branches; the two directions of the
    # remark, each as a checked instance over canonical pairs
    out.append(NamedLemma(
        "exteq_to_sub",
        pi("al", v, lambda al: pi("be", v, lambda be: arrow(
            ExtEq(al, be),
            pi("u", El(vbar(al)),
               lambda u: mem_type(app(vtilde(al), u), be))))),
        lam("al", v, lambda al: lam("be", v, lambda be: lam(
            "e", ExtEq(al, be),
            lambda e: lam("u", El(vbar(al)), lambda u: mem_transport_right(
                app(vtilde(al), u), al, be, e,
                Pair(u, r0(app(vtilde(al), u))))))))))
    return out


def alpha_star(alpha: Term, name: str = "star_instance") -> NamedLemma:
    """⟦(∀x∈α)(x∈α)⟧ for a particular checked set."""
    stmt = pi("u", El(vbar(alpha)),
              lambda u: mem_type(app(vtilde(alpha), u), alpha))
    wit = lam("u", El(vbar(alpha)),
              lambda u: Pair(u, r0(app(vtilde(alpha), u))))
    return NamedLemma(name, stmt, wit)


# ---------------------------------------------------------------------------
# Membership transport macros (the workhorses of every axiom witness)


def exteq_halves(a_label: Term, a_branch: Term, b_label: Term, b_branch: Term,
                 e: Term) -> Tuple[Term, Term]:
    """Split e : ExtEq(sup(a,f), sup(b,g)) into its two Π-halves."""
    half1 = pi("v", El(a_label), lambda u: sigma(
        "w", El(b_label), lambda w: ExtEq(app(a_branch, u), app(b_branch, w))))
    half2 = pi("w", El(b_label), lambda w: sigma(
        "v", El(a_label), lambda u: ExtEq(app(a_branch, u), app(b_branch, w))))
    return (hott.proj1(half1, lambda _h: half2, e),
            hott.proj2(half1, lambda _h: half2, e))


def canonical_exteq(a: Term, b: Term, e: Term) -> Term:
    """Rewrite e : a ≐ b to sup(ā,ã) ≐ sup(b̄,b̃) through canonicity."""
    sa = Sup(vbar(a), vtilde(a))
    sb = Sup(vbar(b), vtilde(b))
    return exteq_chain(
        [sa, a, b, sb],
        [exteq_sym(a, sa, canon(a)), e, canon(b)])


def mem_transport_right(x: Term, a: Term, b: Term, e: Term, m: Term) -> Term:
    """x ∈ a and a ≐ b give x ∈ b."""
    e2 = canonical_exteq(a, b, e)
    fwd_half, _ = exteq_halves(vbar(a), vtilde(a), vbar(b), vtilde(b), e2)
    target = mem_type(x, b)
    return SigElim(
        fam([("m1", mem_type(x, a))], lambda m1: target),
        m,
        binder2(lambda u, d: SigElim(
            fam([("s", sigma("w", El(vbar(b)),
                             lambda w: ExtEq(app(vtilde(a), u),
                                             app(vtilde(b), w))))],
                lambda s: target),
            app(fwd_half, u),
            binder2(lambda w, t: Pair(
                w, exteq_trans(x, app(vtilde(a), u), app(vtilde(b), w), d, t))))))


def mem_transport_left(x: Term, y: Term, a: Term, e: Term, m: Term) -> Term:
    """x ≐ y and x ∈ a give y ∈ a."""
    return SigElim(
        fam([("m1", mem_type(x, a))], lambda m1: mem_type(y, a)),
        m,
        binder2(lambda u, d: Pair(
            u, exteq_trans(y, x, app(vtilde(a), u),
                           exteq_sym(x, y, e), d))))


# ---------------------------------------------------------------------------
# Hereditarily finite oracle


class NotFinitary(Exception):
    pass


HF = FrozenSet


def hf_rank(s: HF) -> int:
    return 0 if not s else 1 + max(hf_rank(c) for c in s)


def _find_ceq(t: Term) -> Optional[Ceq]:
    while isinstance(t, SigElim):
        t = t.scrut
    return t if isinstance(t, Ceq) else None


class Oracle:
    """Evaluates finitary set terms to hereditarily finite values."""

    def __init__(self, ck: Checker):
        self.ck = ck
        self._fwd_cache: Dict[Term, Term] = {}
        self._rinv_cache: Dict[Term, Term] = {}

    def _fwd_of(self, c: Ceq) -> Term:
        if c not in self._fwd_cache:
            self._fwd_cache[c] = ceq_fwd(c.former, c.args, c.k)
        return self._fwd_cache[c]

    def _rinv_of(self, c: Ceq) -> Term:
        if c not in self._rinv_cache:
            self._rinv_cache[c] = ceq_rinv(c.former, c.args, c.k)
        return self._rinv_cache[c]

    def _collapse(self, t: Term) -> Term:
        """Rewrite fwd(rinv(v)) → v anywhere; denotation-sound."""
        if isinstance(t, App):
            fn = self._collapse(t.fn)
            arg = self._collapse(t.arg)
            c1 = _find_ceq(fn)
            if c1 is not None and isinstance(arg, App):
                c2 = _find_ceq(arg.fn)
                if c2 is not None and alpha_equal(c1, c2) \
                        and alpha_equal(fn, self._fwd_of(c1)) \
                        and alpha_equal(arg.fn, self._rinv_of(c1)):
                    return arg.arg
            return t if (fn is t.fn and arg is t.arg) else App(fn, arg)
        changed = False
        new_values = {}
        for name, binders in t._shape:
            val = getattr(t, name)
            if isinstance(val, Term):
                nv = self._collapse(val)
            elif isinstance(val, tuple):
                items = tuple(self._collapse(x) for x in val)
                nv = val if all(a is b for a, b in zip(items, val)) else items
            else:
                nv = val
            if nv is not val:
                changed = True
            new_values[name] = nv
        if not changed:
            return t
        nv = dict(new_values)
        return type(t)(*[nv.get(name, getattr(t, name))
                         for name in t._ctor_fields])

    def eval(self, t: Term) -> Term:
        while True:
            t = self.ck.whnf(t)
            t2 = self._collapse(t)
            if t2 is t or alpha_equal(t2, t):
                return t
            t = t2

    def enumerate_el(self, code: Term) -> List[Term]:
        """Canonical inhabitants of El(code) for the finitary formers,
        as right-inverse images of external canonical values."""
        code = self.eval(code)
        if not isinstance(code, Code):
            raise NotFinitary(f"not a code: {code!r}")
        rinv = ceq_rinv(code.former, code.args, code.k)
        if code.former == "fin":
            return [app(rinv, FinLit(m, code.k)) for m in range(code.k)]
        if code.former == "plus":
            a, b = code.args
            vals = [Inl(x) for x in self.enumerate_el(a)]
            vals += [Inr(y) for y in self.enumerate_el(b)]
            return [app(rinv, v) for v in vals]
        if code.former == "sigma":
            a, b = code.args
            out = []
            for xa in self.enumerate_el(a):
                cb = self.eval(App(b, xa))
                for xb in self.enumerate_el(cb):
                    out.append(app(rinv, Pair(xa, xb)))
            return out
        raise NotFinitary(f"non-finitary code former {code.former!r}")

    def denote(self, t: Term, depth: int = 0) -> HF:
        if depth > 64:
            raise NotFinitary("rank bound exceeded")
        t = self.eval(t)
        if not isinstance(t, Sup):
            raise NotFinitary(f"not a canonical set: {type(t).__name__}")
        members = []
        for u in self.enumerate_el(t.label):
            members.append(self.denote(App(t.branch, u), depth + 1))
        return frozenset(members)


def denote_hf(ck: Checker, t: Term) -> HF:
    return Oracle(ck).denote(t)


def hf_of_lists(x) -> HF:
    """Meta-level helper: build an HF value from nested lists/sets."""
    return frozenset(hf_of_lists(c) for c in x)


# ---------------------------------------------------------------------------
# Finitary set construction and equality witnesses


def fin_set(children: List[Term]) -> Term:
    """The canonical fin-indexed set with the given (checked) members."""
    k = len(children)
    if k > 2:
        raise ValueError("fin-indexed sets here carry at most two members")
    if k == 0:
        return EMPTY
    code = Code("fin", (), k)
    fprime = lam("t", Fin(k), lambda t: FinRec(
        fam([("m", Fin(k))], lambda m: VCONST), t, tuple(children)))
    branch = lam("u", El(code),
                 lambda u: app(fprime, app(ceq_fwd("fin", (), k), u)))
    return Sup(code, branch)


def _split_tau_branch(ck: Checker, branch: Term):
    """Recognize λu. f'(fwd u) branches; returns (f', code) or None."""
    b = ck.whnf(branch)
    if not isinstance(b, Lam):
        return None
    body = b.body
    if isinstance(body, App) and isinstance(body.arg, App) \
            and isinstance(body.arg.arg, Var) and body.arg.arg.ix == 0:
        fp = body.fn
        inner = body.arg.fn
        c = _find_ceq(inner)
        if c is not None and alpha_equal(inner, ceq_fwd(c.former, c.args, c.k)) \
                and fp.mfv == 0:
            return fp, c
    return None


def exteq_witness_hf(ck: Checker, a: Term, b: Term) -> Optional[Term]:
    """A checked term of ExtEq(a, b) when the HF denotations agree, else None.

    Works on fin-indexed canonical sets as produced by fin_set; pairs each
    index with an extensionally matching index on the other side plus a
    recursive witness, case-analyzing the opaque El(fin k) elements through
    the forward map.
    """
    oracle = Oracle(ck)
    if oracle.denote(a) != oracle.denote(b):
        return None
    return _witness(ck, oracle, a, b)


def _witness(ck: Checker, oracle: Oracle, a: Term, b: Term) -> Term:
    wa = oracle.eval(a)
    wb = oracle.eval(b)
    if not (isinstance(wa, Sup) and isinstance(wb, Sup)):
        raise NotFinitary("witness construction needs canonical sets")
    ka, kb = _fin_k(wa.label), _fin_k(wb.label)

    if ka == 0 and kb == 0:
        # both empty: each half eliminates its (empty) index type
        comp1 = lam("u", El(Code("fin", (), 0)), lambda u: absurd_from_fin0(
            sigma("w", El(wb.label),
                  lambda w: ExtEq(app(wa.branch, u), app(wb.branch, w))),
            u))
        comp2 = lam("w", El(Code("fin", (), 0)), lambda w: absurd_from_fin0(
            sigma("u", El(wa.label),
                  lambda u: ExtEq(app(wa.branch, u), app(wb.branch, w))),
            w))
        return Pair(comp1, comp2)

    split_a = _split_tau_branch(ck, wa.branch)
    split_b = _split_tau_branch(ck, wb.branch)
    if split_a is None or split_b is None:
        raise NotFinitary("branches are not in tau-composed form")
    fpa, _ = split_a
    fpb, _ = split_b
    kids_a = [ck.whnf(App(fpa, FinLit(m, ka))) for m in range(ka)]
    kids_b = [ck.whnf(App(fpb, FinLit(m, kb))) for m in range(kb)]
    hfs_a = [oracle.denote(t) for t in kids_a]
    hfs_b = [oracle.denote(t) for t in kids_b]

    def shiftlink(kd: int, fpd: Term, branch_d: Term, j: int) -> Term:
        """branch_d(θ lit_j) ≐ kid_d[j], from the right-inverse homotopy."""
        idx = app(ceq_rinv("fin", (), kd), FinLit(j, kd))
        return indisc(Fin(kd), fpd,
                      app(ceq_fwd("fin", (), kd), idx), FinLit(j, kd),
                      app(ceq_rinv_hom_cached(kd), FinLit(j, kd))), idx

    # comp1: λu:El(fin ka). case fwd u of lit m ↦ (θ_b lit_j, kid_a m ≐ branch_b (θ_b lit_j))
    def leaf1(m: int) -> Term:
        j = hfs_b.index(hfs_a[m])
        rec = _witness(ck, oracle, kids_a[m], kids_b[j])
        link, idx = shiftlink(kb, fpb, wb.branch, j)
        proof = exteq_chain(
            [kids_a[m], kids_b[j], app(wb.branch, idx)],
            [rec, exteq_sym(app(wb.branch, idx), kids_b[j], link)])
        return Pair(idx, proof)

    comp1 = lam("u", El(Code("fin", (), ka)), lambda u: FinRec(
        fam([("t", Fin(ka))],
            lambda t: sigma("w", El(Code("fin", (), kb)),
                            lambda w: ExtEq(app(fpa, t), app(wb.branch, w)))),
        app(ceq_fwd("fin", (), ka), u),
        tuple(leaf1(m) for m in range(ka))))

    # comp2: λw:El(fin kb). case fwd w of lit m ↦ (θ_a lit_j, branch_a (θ_a lit_j) ≐ kid_b m)
    def leaf2(m: int) -> Term:
        j = hfs_a.index(hfs_b[m])
        rec = _witness(ck, oracle, kids_a[j], kids_b[m])
        link, idx = shiftlink(ka, fpa, wa.branch, j)
        proof = exteq_chain(
            [app(wa.branch, idx), kids_a[j], kids_b[m]],
            [link, rec])
        return Pair(idx, proof)

    comp2 = lam("w", El(Code("fin", (), kb)), lambda w: FinRec(
        fam([("t", Fin(kb))],
            lambda t: sigma("u", El(Code("fin", (), ka)),
                            lambda u: ExtEq(app(wa.branch, u), app(fpb, t)))),
        app(ceq_fwd("fin", (), kb), w),
        tuple(leaf2(m) for m in range(kb))))

    return Pair(comp1, comp2)


def ceq_rinv_hom_cached(k: int) -> Term:
    from .universe import ceq_rinv_hom
    return ceq_rinv_hom("fin", (), k)


def _fin_k(code: Term) -> int:
    if isinstance(code, Code) and code.former == "fin":
        return code.k
    raise NotFinitary("index type is not a finite code")


EMPTY_SUP = Sup(Code("fin", (), 0), Const("empty_branch"))


def enumerate_finitary(max_rank: int = 3, max_width: int = 2) -> List[Term]:
    """All fin-indexed sets of the given rank with index size ≤ max_width."""
    levels: List[List[Term]] = [[EMPTY]]
    for _ in range(max_rank):
        prev = [t for level in levels for t in level]
        fresh: List[Term] = []
        for k in range(1, max_width + 1):
            for combo in itertools.product(prev, repeat=k):
                fresh.append(fin_set(list(combo)))
        levels.append(fresh)
    return [t for level in levels for t in level]
