"""Abstract syntax of set-theoretic formulas over the language with
one constant per checked iterative-set term.

Set variables are named; quantifiers bind names.  A ``SetConst`` embeds an
object-level term which must check at the type of iterative sets (callers
certify this; the interpreter re-checks).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .terms import Term


@dataclass(frozen=True)
class SetVar:
    name: str


@dataclass(frozen=True)
class SetConst:
    name: str          # display name; also the environment constant when loaded
    term: Term


SetExpr = Union[SetVar, SetConst]


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Or(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Imp(Formula):
    lhs: Formula
    rhs: Formula


@dataclass(frozen=True)
class Eq(Formula):
    lhs: SetExpr
    rhs: SetExpr


@dataclass(frozen=True)
class Mem(Formula):
    lhs: SetExpr
    rhs: SetExpr


@dataclass(frozen=True)
class BForall(Formula):
    var: str
    bound: SetExpr
    body: Formula


@dataclass(frozen=True)
class BExists(Formula):
    var: str
    bound: SetExpr
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


def free_vars(phi: Formula) -> Tuple[str, ...]:
    """Free set variables in order of first occurrence."""
    seen: list[str] = []

    def expr(e: SetExpr, bound):
        if isinstance(e, SetVar) and e.name not in bound and e.name not in seen:
            seen.append(e.name)

    def walk(p: Formula, bound: frozenset):
        if isinstance(p, (Eq, Mem)):
            expr(p.lhs, bound)
            expr(p.rhs, bound)
        elif isinstance(p, (And, Or, Imp)):
            walk(p.lhs, bound)
            walk(p.rhs, bound)
        elif isinstance(p, (BForall, BExists)):
            expr(p.bound, bound)
            walk(p.body, bound | {p.var})
        elif isinstance(p, (Forall, Exists)):
            walk(p.body, bound | {p.var})

    walk(phi, frozenset())
    return tuple(seen)


def is_restricted(phi: Formula) -> bool:
    """True when every quantifier is bounded."""
    if isinstance(phi, (Forall, Exists)):
        return False
    if isinstance(phi, (And, Or, Imp)):
        return is_restricted(phi.lhs) and is_restricted(phi.rhs)
    if isinstance(phi, (BForall, BExists)):
        return is_restricted(phi.body)
    return True


def subst_var(phi: Formula, name: str, repl: SetExpr) -> Formula:
    """Capture-avoiding substitution of a set expression for a free variable.

    Replacement constants cannot be captured; replacement *variables* must
    not collide with binders (raises if they would).
    """

    def expr(e: SetExpr) -> SetExpr:
        if isinstance(e, SetVar) and e.name == name:
            return repl
        return e

    def walk(p: Formula) -> Formula:
        if isinstance(p, Eq):
            return Eq(expr(p.lhs), expr(p.rhs))
        if isinstance(p, Mem):
            return Mem(expr(p.lhs), expr(p.rhs))
        if isinstance(p, And):
            return And(walk(p.lhs), walk(p.rhs))
        if isinstance(p, Or):
            return Or(walk(p.lhs), walk(p.rhs))
        if isinstance(p, Imp):
            return Imp(walk(p.lhs), walk(p.rhs))
        if isinstance(p, (BForall, BExists)):
            bound = expr(p.bound)
            if p.var == name:
                return type(p)(p.var, bound, p.body)
            if isinstance(repl, SetVar) and repl.name == p.var:
                raise ValueError(f"substitution would capture {repl.name!r}")
            return type(p)(p.var, bound, walk(p.body))
        if isinstance(p, (Forall, Exists)):
            if p.var == name:
                return p
            if isinstance(repl, SetVar) and repl.name == p.var:
                raise ValueError(f"substitution would capture {repl.name!r}")
            return type(p)(p.var, walk(p.body))
        return p

    return walk(phi)


# ---------------------------------------------------------------------------
# Derived formula macros used by the strong infinity axiom and collection.


def zero_formula(x: str) -> Formula:
    """x is empty."""
    return BForall("y", SetVar(x), Bot())


def succ_formula(x: str, y: str) -> Formula:
    """y is the successor of x, i.e. y = x ∪ {x}."""
    return And(
        And(BForall("z", SetVar(x), Mem(SetVar("z"), SetVar(y))),
            Mem(SetVar(x), SetVar(y))),
        BForall("z", SetVar(y),
                Or(Mem(SetVar("z"), SetVar(x)), Eq(SetVar("z"), SetVar(x)))))


def nat_formula(z: str) -> Formula:
    """z is the least inductive set: every element is zero or a successor,
    zero is present, and successors stay inside."""
    x, y = "x", "y"
    each = BForall(x, SetVar(z),
                   Or(zero_formula(x),
                      BExists(y, SetVar(z), succ_formula(y, x))))
    has_zero = BExists(x, SetVar(z), zero_formula(x))
    closed = BForall(x, SetVar(z), BExists(y, SetVar(z), succ_formula(x, y)))
    return And(And(each, has_zero), closed)


def phi_prime(phi: Formula, x: str, y: str, a: SetExpr, b: SetExpr) -> Formula:
    """Mutual-image strengthening of a binary formula: both projections onto
    ``a`` and ``b`` are covered."""
    fresh_x, fresh_y = x, y
    fwd = BForall(fresh_x, a, BExists(fresh_y, b, phi))
    bwd = BForall(fresh_y, b, BExists(fresh_x, a, phi))
    return And(fwd, bwd)
