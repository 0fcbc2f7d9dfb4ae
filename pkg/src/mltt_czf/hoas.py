"""Helpers for building nameless terms with Python-level binders.

Binder-taking constructors here accept a Python function; it is applied to
a fresh placeholder node, and the placeholder occurrences are abstracted
into de Bruijn indices afterwards.  Placeholders report ``mfv = 0`` so that
splicing prebuilt subterms under new binders never disturbs them: levels
are absolute until abstraction.

Terms passed into these builders must be closed or built within the same
builder expression; raw open de Bruijn terms would need manual shifting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, fields
from typing import Callable, Sequence, Tuple

from .terms import (
    App, Family, Fin, FinLit, FinRec, Funext, Id, Inl, Inr, J, Lam, NAT,
    NatRec, Pair, Pi, Refl, Sigma, SigElim, Succ, Sum, SumElim, Sup, Term,
    U, UNIV, Var, W, WRec, ZERO, shift,
)

_uids = itertools.count()


@dataclass(frozen=True)
class Hole(Term):
    """Placeholder for a pending binder.  Never appears in checked terms."""

    uid: int
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()
    _ctor_fields = ("uid",)

    def __post_init__(self):
        object.__setattr__(self, "mfv", 0)
        object.__setattr__(self, "nholes", 1)


def _abstract(t: Term, uid: int, depth: int) -> Term:
    if t.nholes == 0 and t.mfv <= depth:
        return t
    if isinstance(t, Hole):
        if t.uid == uid:
            return Var(depth)
        return t
    if isinstance(t, Var):
        # raw indices below the new binder must skip over it
        return Var(t.ix + 1) if t.ix >= depth else t
    changed = False
    new_values = {}
    for name, binders in t._shape:
        v = getattr(t, name)
        if isinstance(v, Term):
            nv = _abstract(v, uid, depth + binders)
        elif isinstance(v, Family):
            nb = []
            fam_changed = False
            for i, (hint, ty) in enumerate(v.binders):
                nty = _abstract(ty, uid, depth + i)
                fam_changed |= nty is not ty
                nb.append((hint, nty))
            nbody = _abstract(v.body, uid, depth + v.arity)
            fam_changed |= nbody is not v.body
            nv = Family(tuple(nb), nbody) if fam_changed else v
        elif isinstance(v, tuple):
            items = tuple(_abstract(x, uid, depth + binders) for x in v)
            nv = v if all(a is b for a, b in zip(items, v)) else items
        else:
            nv = v
        if nv is not v:
            changed = True
        new_values[name] = nv
    if not changed:
        return t
    ctor_args = []
    nv = dict(new_values)
    for name in t._ctor_fields:
        ctor_args.append(nv.get(name, getattr(t, name)))
    return type(t)(*ctor_args)


def bind(fn: Callable[[Term], Term]) -> Term:
    """Run ``fn`` on a fresh placeholder and abstract it to ``Var(0)``."""
    uid = next(_uids)
    return _abstract(fn(Hole(uid)), uid, 0)


def lam(hint: str, dom: Term, fn) -> Term:
    return Lam(hint, dom, bind(fn))


def pi(hint: str, dom: Term, fn) -> Term:
    return Pi(hint, dom, bind(fn))


def sigma(hint: str, fst: Term, fn) -> Term:
    return Sigma(hint, fst, bind(fn))


def wtype(hint: str, dom: Term, fn) -> Term:
    return W(hint, dom, bind(fn))


def funext_at(hint: str, dom: Term, fn) -> Term:
    return Funext(hint, dom, bind(fn))


def arrow(a: Term, b: Term) -> Term:
    return Pi("_", a, shift(b, 1))


def prod(a: Term, b: Term) -> Term:
    return Sigma("_", a, shift(b, 1))


def fam(binders: Sequence[Tuple[str, Term]], fn) -> Family:
    """Build a motive; ``fn`` receives one placeholder per binder.

    Binder types may themselves be functions of the earlier placeholders.
    """
    uids = []
    holes = []
    out_binders = []
    for hint, ty in binders:
        if callable(ty):
            ty = ty(*holes)
        uid = next(_uids)
        uids.append(uid)
        holes.append(Hole(uid))
        out_binders.append((hint, ty))
    body = fn(*holes)
    # abstract innermost binder first; each pass also fixes earlier types
    n = len(uids)
    for i in range(n - 1, -1, -1):
        body = _abstract(body, uids[i], n - 1 - i)
        for j in range(i + 1, n):
            hint, ty = out_binders[j]
            out_binders[j] = (hint, _abstract(ty, uids[i], j - 1 - i))
    return Family(tuple(out_binders), body)


def binder2(fn) -> Term:
    """Two-binder branch body (SigElim branches, NatRec steps)."""
    u1, u2 = next(_uids), next(_uids)
    body = fn(Hole(u1), Hole(u2))
    body = _abstract(body, u2, 0)
    body = _abstract(body, u1, 1)
    return body


def binder3(fn) -> Term:
    u1, u2, u3 = next(_uids), next(_uids), next(_uids)
    body = fn(Hole(u1), Hole(u2), Hole(u3))
    body = _abstract(body, u3, 0)
    body = _abstract(body, u2, 1)
    body = _abstract(body, u1, 2)
    return body


def app(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


def nat_lit(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Succ(t)
    return t
