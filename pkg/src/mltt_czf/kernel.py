"""Bidirectional type checker and normalizer.

Reduction implements exactly: β for Π, the eliminator ι-rules for Σ, +,
Id, ℕ, finite types and W, δ-unfolding of environment definitions, the
ι-rule for the primitive extensional equality on iterative sets, and
definitional η for Π inside conversion.  Universe codes and the postulated
equivalence/extensionality constants are opaque.  See docs/kernel-rules.md
for the clause-by-clause inventory.

Checking is bidirectional: introductions (λ with annotation aside, pairs,
injections, refl, sup) check against a supplied type, everything else
infers.  Eliminators carry explicit motives, so no unification is needed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field, fields
from typing import List, Optional, Tuple

from . import hoas
from .hoas import app, arrow, lam, pi, prod, sigma
from .terms import (
    App, Ceq, Code, Const, Context, Decl, EMPTY, El, Environment, ExtEq,
    Family, Fin, FinLit, FinRec, Funext, Id, Inl, Inr, J, Lam, NAT, Nat,
    NatRec, Pair, Pi, Refl, Sigma, SigElim, Succ, Sum, SumElim, Sup, Term,
    U, UNIV, Var, W, WRec, Zero, ZERO, alpha_equal, check_scope,
    family_at, instantiate, shift, shift_family, subst,
)

DEFAULT_FUEL = 10_000_000

# The type of iterative sets, fixed structurally; the prelude aliases it as V.
VTYPE = W("x", UNIV, El(Var(0)))


class FuelExhausted(Exception):
    """Reduction step budget ran out: either a kernel bug or a huge compute."""


class Fuel:
    """Step budget plus per-call memo tables.

    The memos are keyed by object identity; ``keep`` pins the keys so ids
    cannot be recycled while the table lives.  Scope is one public kernel
    call, which is where conversion revisits the same subterms heavily.
    """

    __slots__ = ("left", "whnf_memo", "conv_memo", "keep")

    def __init__(self, steps: int = DEFAULT_FUEL):
        self.left = steps
        self.whnf_memo: dict = {}
        self.conv_memo: dict = {}
        self.keep: list = []

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted("reduction fuel exhausted")


def default_fuel() -> int:
    env = os.environ.get("MLTT_FUEL")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_FUEL


@dataclass
class TypeCheckError(Exception):
    """A reproducible checking failure: (environment, context, term) determine it."""

    kind: str                      # mismatch | not-a-function | unbound | motive-arity
    #                              # | universe-violation | scope | not-a-type | no-infer
    message: str
    expected: Optional[Term] = None
    found: Optional[Term] = None
    location: Tuple[str, ...] = ()

    def __str__(self):
        where = "/".join(self.location) or "top"
        s = f"[{self.kind}] {self.message} (at {where})"
        return s

    def to_json(self):
        from .parser import print_term
        d = {"kind": self.kind, "message": self.message,
             "location": list(self.location)}
        if self.expected is not None:
            d["expected"] = print_term(self.expected)
        if self.found is not None:
            d["found"] = print_term(self.found)
        return d


def _err(kind, message, path, expected=None, found=None):
    raise TypeCheckError(kind, message, expected, found, tuple(path))


# ---------------------------------------------------------------------------
# Structural shorthand for the postulated constants' types.
#
# Equiv/isequiv are *defined* notions in the prelude; the kernel only needs
# their unfolded Σ/Π/Id shape to type Ceq and Funext nodes.  Conversion makes
# the prelude names and these raw forms interchangeable.


def homotopy_type(dom: Term, cod_fn, f: Term, g: Term) -> Term:
    """(Πx:dom) Id(cod(x), f x, g x); ``cod_fn`` maps the bound var to a type."""
    return pi("x", dom, lambda x: Id(cod_fn(x), App(shift(f, 1), x), App(shift(g, 1), x)))


def isequiv_type(a: Term, b: Term, f: Term) -> Term:
    left = sigma(
        "g", arrow(b, a),
        lambda g: pi("x", a, lambda x: Id(a, app(g, app(f, x)), x)))
    right = sigma(
        "h", arrow(b, a),
        lambda h: pi("y", b, lambda y: Id(b, app(f, app(h, y)), y)))
    return prod(left, right)


def equiv_type(a: Term, b: Term) -> Term:
    return sigma("f", arrow(a, b), lambda f: isequiv_type(a, b, f))


def funext_type(hint: str, dom: Term, cod: Term) -> Term:
    """Type of Funext(hint, dom, cod): happly is an equivalence at that Π."""
    pi_ab = Pi(hint, dom, cod)
    return pi(
        "f", pi_ab,
        lambda f: pi(
            "g", pi_ab,
            lambda g: equiv_type(
                Id(pi_ab, f, g),
                pi("x", dom, lambda x: Id(subst(cod, 0, x), app(f, x), app(g, x))))))


def exteq_expansion(a: Term, f: Term, b: Term, g: Term) -> Term:
    """One unfolding of the bisimulation: both mutual-surjection halves."""
    p1 = pi("x", El(a), lambda x: sigma(
        "y", El(b), lambda y: ExtEq(app(f, x), app(g, y))))
    p2 = pi("y", El(b), lambda y: sigma(
        "x", El(a), lambda x: ExtEq(app(f, x), app(g, y))))
    return prod(p1, p2)


def ceq_statement(former: str, args: Tuple[Term, ...], k) -> Term:
    code = Code(former, args, k)
    if former == "pi":
        a, b = args
        return equiv_type(El(code), pi("x", El(a), lambda x: El(app(b, x))))
    if former == "sigma":
        a, b = args
        return equiv_type(El(code), sigma("x", El(a), lambda x: El(app(b, x))))
    if former == "plus":
        a, b = args
        return equiv_type(El(code), Sum(El(a), El(b)))
    if former == "id":
        a, x, y = args
        return equiv_type(El(code), Id(El(a), x, y))
    if former == "nat":
        return equiv_type(El(code), NAT)
    if former == "fin":
        return equiv_type(El(code), Fin(k))
    if former == "w":
        a, b = args
        return equiv_type(El(code), hoas.wtype("x", El(a), lambda x: El(app(b, x))))
    raise ValueError(former)


# ---------------------------------------------------------------------------
# Reduction


def _unfoldable(env: Environment, name: str) -> Optional[Term]:
    d = env.lookup(name)
    if d is not None and d.body is not None:
        return d.body
    return None


def whnf(env: Environment, t: Term, fuel: Optional[Fuel] = None) -> Term:
    """Reduce to weak head normal form (leftmost-outermost at the head)."""
    if fuel is None:
        fuel = Fuel(default_fuel())
    cached = fuel.whnf_memo.get(id(t))
    if cached is not None:
        return cached
    original = t
    result = _whnf_loop(env, t, fuel)
    fuel.whnf_memo[id(original)] = result
    fuel.whnf_memo[id(result)] = result
    fuel.keep.append(original)
    fuel.keep.append(result)
    return result


def _whnf_loop(env: Environment, t: Term, fuel: Fuel) -> Term:
    while True:
        if isinstance(t, App):
            f = whnf(env, t.fn, fuel)
            if isinstance(f, Lam):
                fuel.tick()
                t = subst(f.body, 0, t.arg)
                continue
            return t if f is t.fn else App(f, t.arg)
        if isinstance(t, Const):
            body = _unfoldable(env, t.name)
            if body is not None:
                fuel.tick()
                t = body
                continue
            return t
        if isinstance(t, SigElim):
            s = whnf(env, t.scrut, fuel)
            if isinstance(s, Pair):
                fuel.tick()
                t = instantiate(t.branch, s.a, s.b)
                continue
            return t if s is t.scrut else SigElim(t.motive, s, t.branch)
        if isinstance(t, SumElim):
            s = whnf(env, t.scrut, fuel)
            if isinstance(s, Inl):
                fuel.tick()
                t = subst(t.onl, 0, s.arg)
                continue
            if isinstance(s, Inr):
                fuel.tick()
                t = subst(t.onr, 0, s.arg)
                continue
            return t if s is t.scrut else SumElim(t.motive, s, t.onl, t.onr)
        if isinstance(t, J):
            p = whnf(env, t.p, fuel)
            if isinstance(p, Refl):
                fuel.tick()
                t = subst(t.base, 0, p.arg)
                continue
            return t if p is t.p else J(t.motive, t.base, t.x, t.y, p)
        if isinstance(t, NatRec):
            s = whnf(env, t.scrut, fuel)
            if isinstance(s, Zero):
                fuel.tick()
                t = t.base
                continue
            if isinstance(s, Succ):
                fuel.tick()
                rec = NatRec(t.motive, s.arg, t.base, t.step)
                t = instantiate(t.step, s.arg, rec)
                continue
            return t if s is t.scrut else NatRec(t.motive, s, t.base, t.step)
        if isinstance(t, FinRec):
            s = whnf(env, t.scrut, fuel)
            if isinstance(s, FinLit):
                if s.m < len(t.branches):
                    fuel.tick()
                    t = t.branches[s.m]
                    continue
            return t if s is t.scrut else FinRec(t.motive, s, t.branches)
        if isinstance(t, WRec):
            s = whnf(env, t.scrut, fuel)
            if isinstance(s, Sup):
                wty = whnf(env, t.motive.binders[0][1], fuel)
                if isinstance(wty, W):
                    fuel.tick()
                    dom_b = subst(wty.cod, 0, s.label)
                    motive, step, br = t.motive, t.step, s.branch
                    rec = lam(
                        "v", dom_b,
                        lambda v: WRec(motive, app(br, v), step))
                    t = instantiate(t.step, s.label, s.branch, rec)
                    continue
            return t if s is t.scrut else WRec(t.motive, s, t.step)
        if isinstance(t, ExtEq):
            l = whnf(env, t.lhs, fuel)
            r = whnf(env, t.rhs, fuel)
            if isinstance(l, Sup) and isinstance(r, Sup):
                fuel.tick()
                return whnf(env, exteq_expansion(l.label, l.branch, r.label, r.branch), fuel)
            return t if (l is t.lhs and r is t.rhs) else ExtEq(l, r)
        return t


def head_step(env: Environment, t: Term) -> Optional[Term]:
    """One honest head reduction step, or None when head-normal.

    Used by the subject-reduction suite; ``whnf`` is the fused fast path.
    """
    if isinstance(t, App):
        if isinstance(t.fn, Lam):
            return subst(t.fn.body, 0, t.arg)
        f = head_step(env, t.fn)
        return None if f is None else App(f, t.arg)
    if isinstance(t, Const):
        return _unfoldable(env, t.name)
    if isinstance(t, SigElim):
        if isinstance(t.scrut, Pair):
            return instantiate(t.branch, t.scrut.a, t.scrut.b)
        s = head_step(env, t.scrut)
        return None if s is None else SigElim(t.motive, s, t.branch)
    if isinstance(t, SumElim):
        if isinstance(t.scrut, Inl):
            return subst(t.onl, 0, t.scrut.arg)
        if isinstance(t.scrut, Inr):
            return subst(t.onr, 0, t.scrut.arg)
        s = head_step(env, t.scrut)
        return None if s is None else SumElim(t.motive, s, t.onl, t.onr)
    if isinstance(t, J):
        if isinstance(t.p, Refl):
            return subst(t.base, 0, t.p.arg)
        p = head_step(env, t.p)
        return None if p is None else J(t.motive, t.base, t.x, t.y, p)
    if isinstance(t, NatRec):
        if isinstance(t.scrut, Zero):
            return t.base
        if isinstance(t.scrut, Succ):
            rec = NatRec(t.motive, t.scrut.arg, t.base, t.step)
            return instantiate(t.step, t.scrut.arg, rec)
        s = head_step(env, t.scrut)
        return None if s is None else NatRec(t.motive, s, t.base, t.step)
    if isinstance(t, FinRec):
        if isinstance(t.scrut, FinLit) and t.scrut.m < len(t.branches):
            return t.branches[t.scrut.m]
        s = head_step(env, t.scrut)
        return None if s is None else FinRec(t.motive, s, t.branches)
    if isinstance(t, WRec):
        if isinstance(t.scrut, Sup):
            wty = whnf(env, t.motive.binders[0][1])
            if isinstance(wty, W):
                dom_b = subst(wty.cod, 0, t.scrut.label)
                motive, step, br = t.motive, t.step, t.scrut.branch
                rec = lam("v", dom_b, lambda v: WRec(motive, app(br, v), step))
                return instantiate(t.step, t.scrut.label, t.scrut.branch, rec)
            return None
        s = head_step(env, t.scrut)
        return None if s is None else WRec(t.motive, s, t.step)
    if isinstance(t, ExtEq):
        if isinstance(t.lhs, Sup) and isinstance(t.rhs, Sup):
            return exteq_expansion(t.lhs.label, t.lhs.branch, t.rhs.label, t.rhs.branch)
        l = head_step(env, t.lhs)
        if l is not None:
            return ExtEq(l, t.rhs)
        r = head_step(env, t.rhs)
        return None if r is None else ExtEq(t.lhs, r)
    return None


def normalize(env: Environment, t: Term, fuel: Optional[Fuel] = None) -> Term:
    """β δ ι normal form; idempotent on well-typed terms."""
    if fuel is None:
        fuel = Fuel(default_fuel())
    t = whnf(env, t, fuel)
    changed = False
    new_values = []
    shaped = t._shape
    si = 0
    for name in t._ctor_fields:
        v = getattr(t, name)
        if si < len(shaped) and shaped[si][0] == name:
            si += 1
            if isinstance(v, Term):
                nv = normalize(env, v, fuel)
            elif isinstance(v, Family):
                nb = tuple((h, normalize(env, ty, fuel)) for h, ty in v.binders)
                nbody = normalize(env, v.body, fuel)
                nv = v if (nbody is v.body and all(a is ty for (_, a), (_, ty) in zip(nb, v.binders))) \
                    else Family(nb, nbody)
            else:
                items = tuple(normalize(env, x, fuel) for x in v)
                nv = v if all(a is b for a, b in zip(items, v)) else items
            if nv is not v:
                changed = True
            new_values.append(nv)
        else:
            new_values.append(v)
    if not changed:
        return t
    return type(t)(*new_values)


# ---------------------------------------------------------------------------
# Conversion


def conv(env: Environment, ctx: Context, t1: Term, t2: Term,
         ty: Optional[Term] = None, fuel: Optional[Fuel] = None) -> bool:
    """Decide βδιη(Π)-convertibility; type-directed η at Π-types."""
    if fuel is None:
        fuel = Fuel(default_fuel())
    if ty is not None:
        wty = whnf(env, ty, fuel)
        if isinstance(wty, Pi):
            b1 = App(shift(t1, 1), Var(0))
            b2 = App(shift(t2, 1), Var(0))
            return conv(env, ctx, b1, b2, wty.cod, fuel)
    return _conv(env, t1, t2, fuel)


def _conv(env: Environment, t1: Term, t2: Term, fuel: Fuel) -> bool:
    if t1 is t2:
        return True
    key = (id(t1), id(t2))
    cached = fuel.conv_memo.get(key)
    if cached is not None:
        return cached
    result = _conv_work(env, t1, t2, fuel)
    fuel.conv_memo[key] = result
    fuel.keep.append((t1, t2))
    return result


def _spine(t: Term):
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def _conv_work(env: Environment, t1: Term, t2: Term, fuel: Fuel) -> bool:
    if alpha_equal(t1, t2):
        return True
    # same-constant application spines usually agree argumentwise; try that
    # before unfolding the (possibly large) definition.
    h1, sp1 = _spine(t1)
    h2, sp2 = _spine(t2)
    if sp1 and isinstance(h1, Const) and isinstance(h2, Const) \
            and h1.name == h2.name and len(sp1) == len(sp2):
        if all(_conv(env, a, b, fuel) for a, b in zip(sp1, sp2)):
            return True
    w1 = whnf(env, t1, fuel)
    w2 = whnf(env, t2, fuel)
    if isinstance(w1, Lam) and not isinstance(w2, Lam):
        return _conv(env, w1.body, App(shift(w2, 1), Var(0)), fuel)
    if isinstance(w2, Lam) and not isinstance(w1, Lam):
        return _conv(env, App(shift(w1, 1), Var(0)), w2.body, fuel)
    if type(w1) is not type(w2):
        return False
    for f in fields(w1):
        if f.name in ("mfv", "hint"):
            continue
        v1, v2 = getattr(w1, f.name), getattr(w2, f.name)
        if isinstance(v1, Term):
            if not _conv(env, v1, v2, fuel):
                return False
        elif isinstance(v1, Family):
            if not isinstance(v2, Family) or v1.arity != v2.arity:
                return False
            for (_, a), (_, b) in zip(v1.binders, v2.binders):
                if not _conv(env, a, b, fuel):
                    return False
            if not _conv(env, v1.body, v2.body, fuel):
                return False
        elif isinstance(v1, tuple):
            if len(v1) != len(v2):
                return False
            for a, b in zip(v1, v2):
                if not _conv(env, a, b, fuel):
                    return False
        else:
            if v1 != v2:
                return False
    return True


# ---------------------------------------------------------------------------
# Typing


_CODE_ARG_KINDS = {
    "pi": "fam", "sigma": "fam", "w": "fam",
    "plus": "two", "id": "id", "nat": "none", "fin": "none",
}


class Checker:
    """Typing façade over one environment.  Stateless between calls."""

    def __init__(self, env: Optional[Environment] = None, fuel_steps: Optional[int] = None):
        self.env = env if env is not None else Environment()
        self.fuel_steps = fuel_steps if fuel_steps is not None else default_fuel()
        # typing memos: macro-built terms share subterm objects heavily, so
        # identity-keyed results collapse the redundant revisits.
        self._infer_memo: dict = {}
        self._check_memo: set = set()
        self._istype_memo: set = set()
        self._keep: list = []

    def _fuel(self) -> Fuel:
        return Fuel(self.fuel_steps)

    @staticmethod
    def _ctx_key(ctx: Context):
        return tuple(id(ty) for _, ty in ctx.entries)

    # -- public API ---------------------------------------------------------

    def whnf(self, t: Term) -> Term:
        return whnf(self.env, t, self._fuel())

    def normalize(self, t: Term) -> Term:
        return normalize(self.env, t, self._fuel())

    def conv(self, t1: Term, t2: Term, ty: Optional[Term] = None,
             ctx: Context = EMPTY) -> bool:
        return conv(self.env, ctx, t1, t2, ty, self._fuel())

    def infer(self, t: Term, ctx: Context = EMPTY) -> Term:
        return self._infer(ctx, t, [])

    def check(self, t: Term, ty: Term, ctx: Context = EMPTY) -> None:
        self._check(ctx, t, ty, [])

    def is_type(self, t: Term, ctx: Context = EMPTY) -> None:
        self._is_type(ctx, t, [])

    # -- helpers ------------------------------------------------------------

    def _conv_or_fail(self, ctx, got, want, path, what="type mismatch"):
        if not conv(self.env, ctx, got, want, None, self._fuel()):
            _err("mismatch", what, path, expected=want, found=got)

    def _whnf(self, t):
        return whnf(self.env, t, self._fuel())

    # -- typing -------------------------------------------------------------

    def _is_type(self, ctx: Context, t: Term, path: List[str]) -> None:
        key = (id(t), self._ctx_key(ctx))
        if key in self._istype_memo:
            return
        self._is_type_work(ctx, t, path)
        self._istype_memo.add(key)
        self._keep.append((t, ctx.entries))

    def _is_type_work(self, ctx: Context, t: Term, path: List[str]) -> None:
        if isinstance(t, U):
            return
        if isinstance(t, (Nat, Fin)):
            return
        if isinstance(t, (Pi, W)):
            self._is_type(ctx, t.dom, path + ["dom"])
            self._is_type(ctx.extend(t.hint, t.dom), t.cod, path + ["cod"])
            return
        if isinstance(t, Sigma):
            self._is_type(ctx, t.fst, path + ["fst"])
            self._is_type(ctx.extend(t.hint, t.fst), t.snd, path + ["snd"])
            return
        if isinstance(t, Sum):
            self._is_type(ctx, t.left, path + ["left"])
            self._is_type(ctx, t.right, path + ["right"])
            return
        if isinstance(t, Id):
            self._is_type(ctx, t.ty, path + ["ty"])
            self._check(ctx, t.lhs, t.ty, path + ["lhs"])
            self._check(ctx, t.rhs, t.ty, path + ["rhs"])
            return
        if isinstance(t, El):
            self._check(ctx, t.code, UNIV, path + ["code"])
            return
        if isinstance(t, ExtEq):
            self._check(ctx, t.lhs, VTYPE, path + ["lhs"])
            self._check(ctx, t.rhs, VTYPE, path + ["rhs"])
            return
        if isinstance(t, Const):
            d = self.env.lookup(t.name)
            if d is None:
                _err("unbound", f"unknown constant {t.name!r}", path)
            if d.kind == "typealias":
                return
            _err("not-a-type", f"constant {t.name!r} is a term, not a type", path)
        w = self._whnf(t)
        if w is not t and not alpha_equal(w, t):
            return self._is_type(ctx, w, path)
        _err("not-a-type", "expected a type", path, found=t)

    def _infer(self, ctx: Context, t: Term, path: List[str]) -> Term:
        key = (id(t), self._ctx_key(ctx))
        hit = self._infer_memo.get(key)
        if hit is not None:
            return hit
        result = self._infer_work(ctx, t, path)
        self._infer_memo[key] = result
        self._keep.append((t, ctx.entries))
        return result

    def _infer_work(self, ctx: Context, t: Term, path: List[str]) -> Term:
        if isinstance(t, Var):
            if t.ix >= len(ctx):
                _err("scope", f"variable index {t.ix} out of scope", path)
            return ctx.lookup(t.ix)
        if isinstance(t, Const):
            d = self.env.lookup(t.name)
            if d is None:
                _err("unbound", f"unknown constant {t.name!r}", path)
            if d.kind == "typealias":
                _err("universe-violation",
                     f"type alias {t.name!r} used as a term", path)
            return d.ty
        if isinstance(t, Lam):
            self._is_type(ctx, t.dom, path + ["dom"])
            body_ty = self._infer(ctx.extend(t.hint, t.dom), t.body, path + ["body"])
            return Pi(t.hint, t.dom, body_ty)
        if isinstance(t, App):
            fn_ty = self._whnf(self._infer(ctx, t.fn, path + ["fn"]))
            if not isinstance(fn_ty, Pi):
                _err("not-a-function", "application head is not a function",
                     path, found=fn_ty)
            self._check(ctx, t.arg, fn_ty.dom, path + ["arg"])
            return subst(fn_ty.cod, 0, t.arg)
        if isinstance(t, Zero):
            return NAT
        if isinstance(t, Succ):
            self._check(ctx, t.arg, NAT, path + ["arg"])
            return NAT
        if isinstance(t, FinLit):
            return Fin(t.k)
        if isinstance(t, Refl):
            a_ty = self._infer(ctx, t.arg, path + ["arg"])
            return Id(a_ty, t.arg, t.arg)
        if isinstance(t, SigElim):
            s_ty = self._whnf(self._infer(ctx, t.scrut, path + ["scrut"]))
            if not isinstance(s_ty, Sigma):
                _err("mismatch", "Σ-eliminator scrutinee is not a pair type",
                     path, found=s_ty)
            self._check_motive(ctx, t.motive, [s_ty], path)
            a, b = s_ty.fst, s_ty.snd
            ctx2 = ctx.extend(s_ty.hint, a).extend("y", b)
            expected = family_at(shift_family(t.motive, 2), Pair(Var(1), Var(0)))
            self._check(ctx2, t.branch, expected, path + ["branch"])
            return family_at(t.motive, t.scrut)
        if isinstance(t, SumElim):
            s_ty = self._whnf(self._infer(ctx, t.scrut, path + ["scrut"]))
            if not isinstance(s_ty, Sum):
                _err("mismatch", "+-eliminator scrutinee is not a sum type",
                     path, found=s_ty)
            self._check_motive(ctx, t.motive, [s_ty], path)
            m1 = shift_family(t.motive, 1)
            self._check(ctx.extend("x", s_ty.left), t.onl,
                        family_at(m1, Inl(Var(0))), path + ["onl"])
            self._check(ctx.extend("y", s_ty.right), t.onr,
                        family_at(m1, Inr(Var(0))), path + ["onr"])
            return family_at(t.motive, t.scrut)
        if isinstance(t, J):
            p_ty = self._whnf(self._infer(ctx, t.p, path + ["p"]))
            if not isinstance(p_ty, Id):
                _err("mismatch", "J applied to a non-identity proof",
                     path, found=p_ty)
            a = p_ty.ty
            self._check(ctx, t.x, a, path + ["x"])
            self._check(ctx, t.y, a, path + ["y"])
            self._conv_or_fail(ctx, t.x, p_ty.lhs, path + ["x"],
                               "J endpoint differs from proof's left endpoint")
            self._conv_or_fail(ctx, t.y, p_ty.rhs, path + ["y"],
                               "J endpoint differs from proof's right endpoint")
            expected_binders = [a, shift(a, 1), Id(shift(a, 2), Var(1), Var(0))]
            self._check_motive(ctx, t.motive, expected_binders, path)
            m1 = shift_family(t.motive, 1)
            base_ty = family_at(m1, Var(0), Var(0), Refl(Var(0)))
            self._check(ctx.extend("z", a), t.base, base_ty, path + ["base"])
            return family_at(t.motive, t.x, t.y, t.p)
        if isinstance(t, NatRec):
            self._check(ctx, t.scrut, NAT, path + ["scrut"])
            self._check_motive(ctx, t.motive, [NAT], path)
            self._check(ctx, t.base, family_at(t.motive, ZERO), path + ["base"])
            m1 = shift_family(t.motive, 1)
            ctx2 = ctx.extend("x", NAT).extend("y", family_at(m1, Var(0)))
            m2 = shift_family(t.motive, 2)
            self._check(ctx2, t.step, family_at(m2, Succ(Var(1))), path + ["step"])
            return family_at(t.motive, t.scrut)
        if isinstance(t, FinRec):
            s_ty = self._whnf(self._infer(ctx, t.scrut, path + ["scrut"]))
            if not isinstance(s_ty, Fin):
                _err("mismatch", "finite eliminator scrutinee is not a finite type",
                     path, found=s_ty)
            if len(t.branches) != s_ty.k:
                _err("motive-arity",
                     f"Fin {s_ty.k} eliminator needs {s_ty.k} branches, got {len(t.branches)}",
                     path)
            self._check_motive(ctx, t.motive, [s_ty], path)
            for i, br in enumerate(t.branches):
                self._check(ctx, br, family_at(t.motive, FinLit(i, s_ty.k)),
                            path + [f"branch{i}"])
            return family_at(t.motive, t.scrut)
        if isinstance(t, WRec):
            s_ty = self._whnf(self._infer(ctx, t.scrut, path + ["scrut"]))
            if not isinstance(s_ty, W):
                _err("mismatch", "W-eliminator scrutinee is not a W-type",
                     path, found=s_ty)
            self._check_motive(ctx, t.motive, [s_ty], path)
            a, b = s_ty.dom, s_ty.cod
            wty = W(s_ty.hint, a, b)
            # y : B(x) -> W lives under the x binder; its Π codomain sits under
            # both x and the Π's own binder, hence the shift by 2.
            y_ty = Pi("_", b, shift(wty, 2))
            ctx2 = ctx.extend("x", a).extend("y", y_ty)
            m3 = shift_family(t.motive, 3)
            z_ty = Pi("v", shift(b, 1), family_at(m3, App(Var(1), Var(0))))
            ctx3 = ctx2.extend("z", z_ty)
            self._check(ctx3, t.step, family_at(m3, Sup(Var(2), Var(1))),
                        path + ["step"])
            return family_at(t.motive, t.scrut)
        if isinstance(t, Code):
            self._check_code_args(ctx, t, path)
            return UNIV
        if isinstance(t, Ceq):
            self._check_code_args(ctx, t, path)
            return ceq_statement(t.former, t.args, t.k)
        if isinstance(t, Funext):
            self._is_type(ctx, Pi(t.hint, t.dom, t.cod), path)
            return funext_type(t.hint, t.dom, t.cod)
        if isinstance(t, U):
            _err("universe-violation", "U is a type, not a term (and U : U is refused)", path)
        if isinstance(t, (Pi, Sigma, Sum, Id, Nat, Fin, W, El, ExtEq)):
            _err("universe-violation",
                 f"{type(t).__name__} forms a type; types are not terms here", path)
        if isinstance(t, (Pair, Inl, Inr, Sup)):
            _err("no-infer",
                 f"{type(t).__name__} has no principal type; check it against one", path)
        _err("no-infer", f"cannot infer type of {type(t).__name__}", path)

    def _check(self, ctx: Context, t: Term, ty: Term, path: List[str]) -> None:
        key = (id(t), id(ty), self._ctx_key(ctx))
        if key in self._check_memo:
            return
        self._check_work(ctx, t, ty, path)
        self._check_memo.add(key)
        self._keep.append((t, ty, ctx.entries))

    def _check_work(self, ctx: Context, t: Term, ty: Term, path: List[str]) -> None:
        w = self._whnf(ty)
        if isinstance(t, Lam) and isinstance(w, Pi):
            self._is_type(ctx, t.dom, path + ["dom"])
            self._conv_or_fail(ctx, t.dom, w.dom, path + ["dom"],
                               "λ annotation differs from expected domain")
            self._check(ctx.extend(t.hint, w.dom), t.body, w.cod, path + ["body"])
            return
        if isinstance(t, Pair) and isinstance(w, Sigma):
            self._check(ctx, t.a, w.fst, path + ["fst"])
            self._check(ctx, t.b, subst(w.snd, 0, t.a), path + ["snd"])
            return
        if isinstance(t, Inl) and isinstance(w, Sum):
            self._check(ctx, t.arg, w.left, path + ["arg"])
            return
        if isinstance(t, Inr) and isinstance(w, Sum):
            self._check(ctx, t.arg, w.right, path + ["arg"])
            return
        if isinstance(t, Refl) and isinstance(w, Id):
            self._check(ctx, t.arg, w.ty, path + ["arg"])
            self._conv_or_fail(ctx, t.arg, w.lhs, path,
                               "refl does not prove this equation")
            self._conv_or_fail(ctx, t.arg, w.rhs, path,
                               "refl does not prove this equation")
            return
        if isinstance(t, Sup) and isinstance(w, W):
            self._check(ctx, t.label, w.dom, path + ["label"])
            branch_ty = Pi("_", subst(w.cod, 0, t.label), shift(w, 1))
            self._check(ctx, t.branch, branch_ty, path + ["branch"])
            return
        if isinstance(t, (Pair, Inl, Inr, Sup)):
            _err("mismatch",
                 f"{type(t).__name__} checked against incompatible type",
                 path, expected=w, found=None)
        got = self._infer(ctx, t, path)
        if not conv(self.env, ctx, got, ty, None, self._fuel()):
            _err("mismatch", "inferred type does not match expected type",
                 path, expected=ty, found=got)

    def _check_motive(self, ctx: Context, m: Family, binder_tys: List[Term],
                      path: List[str]) -> None:
        if m.arity != len(binder_tys):
            _err("motive-arity",
                 f"motive binds {m.arity} variables, eliminator needs {len(binder_tys)}",
                 path + ["motive"])
        c = ctx
        for i, ((hint, declared), expected) in enumerate(zip(m.binders, binder_tys)):
            # conversion with the (known well-formed) expected type also
            # certifies the declared annotation as a type
            self._conv_or_fail(c, declared, expected, path + ["motive", f"binder{i}"],
                               "motive binder type differs from the eliminated type")
            c = c.extend(hint, declared)
        self._is_type(c, m.body, path + ["motive", "body"])

    def _check_code_args(self, ctx: Context, t, path: List[str]) -> None:
        kind = _CODE_ARG_KINDS[t.former]
        if kind == "fam":
            a, b = t.args
            self._check(ctx, a, UNIV, path + ["args0"])
            self._check(ctx, b, Pi("_", El(a), UNIV), path + ["args1"])
        elif kind == "two":
            self._check(ctx, t.args[0], UNIV, path + ["args0"])
            self._check(ctx, t.args[1], UNIV, path + ["args1"])
        elif kind == "id":
            a, x, y = t.args
            self._check(ctx, a, UNIV, path + ["args0"])
            self._check(ctx, x, El(a), path + ["args1"])
            self._check(ctx, y, El(a), path + ["args2"])
        # "none": nothing to do


# ---------------------------------------------------------------------------
# Declaration loading


@dataclass
class LoadResult:
    env: Environment
    warnings: List[str] = dc_field(default_factory=list)


def load_decls(decls, env: Optional[Environment] = None,
               fuel_steps: Optional[int] = None) -> LoadResult:
    """Check declarations in order, building up an environment.

    Raises TypeCheckError naming the first failing declaration; postulates
    are admitted but reported on the warning channel.
    """
    result = LoadResult(env if env is not None else Environment())
    ck = Checker(result.env, fuel_steps)
    for d in decls:
        if d.name in result.env:
            raise TypeCheckError("unbound", f"duplicate declaration {d.name!r}",
                                 location=(d.name,))
        try:
            if d.kind == "typealias":
                ck.is_type(d.body)
            elif d.kind == "postulate":
                ck.is_type(d.ty)
                result.warnings.append(f"postulate admitted: {d.name}")
            else:
                ck.is_type(d.ty)
                ck.check(d.body, d.ty)
        except TypeCheckError as e:
            raise TypeCheckError(e.kind, f"in declaration {d.name!r}: {e.message}",
                                 e.expected, e.found, (d.name,) + e.location)
        result.env.add(d)
    return result
