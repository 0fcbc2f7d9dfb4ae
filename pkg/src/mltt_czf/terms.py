"""Core term syntax: nameless (de Bruijn) terms, contexts, environments.

Every node is immutable and hashable.  Binding is by index; name hints are
kept only so the printer can produce readable output, and they are ignored
by ``alpha_equal``.  Eliminators carry their motives as ``Family`` literals
(a binder telescope plus a type body) rather than first-class functions,
since the theory has a single universe and no type of type families.

Each node caches ``mfv`` (one past the largest free index), which lets
``shift`` and ``subst`` return shared subterms untouched whenever a term is
closed below the cutoff.  That shortcut is what keeps large proof terms
cheap to splice.
"""

from __future__ import annotations

from dataclasses import MISSING, dataclass, field, fields
from typing import Iterator, Optional, Tuple


class Term:
    """Base class for all term and type nodes."""

    __slots__ = ()
    # (field name, binder count) for Term-valued fields, in order.
    _shape: Tuple[Tuple[str, int], ...] = ()

    mfv: int     # one past the largest free index; set in __post_init__
    nholes: int  # builder placeholders below this node; set in __post_init__


def _mfv_of(value, binders: int) -> int:
    if isinstance(value, Term):
        return max(value.mfv - binders, 0)
    if isinstance(value, Family):
        return value.mfv
    if isinstance(value, tuple):
        m = 0
        for v in value:
            m = max(m, _mfv_of(v, binders))
        return m
    return 0


def _holes_of(value) -> int:
    if isinstance(value, (Term, Family)):
        return value.nholes
    if isinstance(value, tuple):
        return sum(v.nholes for v in value)
    return 0


_intern: dict = {}


def _key_of(a):
    if isinstance(a, (Term, Family)):
        return id(a)
    if isinstance(a, tuple):
        return tuple(_key_of(x) for x in a)
    return a


def _intern_key(cls, args):
    out = [cls]
    for a in args:
        out.append(_key_of(a))
    return tuple(out)


def _node(cls):
    """Decorate a term dataclass: freeze, cache mfv/hole counts, intern.

    Interning is bottom-up hash-consing: children are already interned, so
    identity of the argument objects determines structural identity and
    equal trees collapse to one object.  That makes the kernel's
    identity-keyed memo tables effective.
    """
    if "__post_init__" not in cls.__dict__:
        shape = cls._shape

        def _post(self):
            if "mfv" in self.__dict__:
                return  # interned instance being re-initialized
            m = 0
            h = 0
            for name, binders in shape:
                v = getattr(self, name)
                m = max(m, _mfv_of(v, binders))
                h += _holes_of(v)
            object.__setattr__(self, "mfv", m)
            object.__setattr__(self, "nholes", h)

        cls.__post_init__ = _post
    cls = dataclass(frozen=True)(cls)
    # positional constructor argument order, used by the traversals
    cls._ctor_fields = tuple(
        f.name for f in fields(cls) if f.name not in ("mfv", "nholes"))

    ctor_fields = cls._ctor_fields

    defaults = {}
    for f in fields(cls):
        if f.name in ("mfv", "nholes"):
            continue
        if f.default is not MISSING:
            defaults[f.name] = f.default

    def __new__(kls, *args, **kwargs):
        if kwargs or len(args) < len(ctor_fields):
            merged = list(args)
            for name in ctor_fields[len(args):]:
                if name in kwargs:
                    merged.append(kwargs[name])
                elif name in defaults:
                    merged.append(defaults[name])
            key_args = merged
        else:
            key_args = args
        key = _intern_key(kls, key_args)
        hit = _intern.get(key)
        if hit is not None:
            return hit
        obj = object.__new__(kls)
        _intern[key] = obj
        return obj

    cls.__new__ = __new__
    return cls


@dataclass(frozen=True)
class Family:
    """A motive: binder telescope ``(hint, type)`` entries plus a type body.

    Binder ``i``'s type lives under the preceding ``i`` binders; the body
    lives under all of them.
    """

    binders: Tuple[Tuple[str, Term], ...]
    body: Term
    mfv: int = field(init=False, compare=False, repr=False)

    def __new__(cls, binders, body):
        key = _intern_key(cls, (binders, body))
        hit = _intern.get(key)
        if hit is not None:
            return hit
        obj = object.__new__(cls)
        _intern[key] = obj
        return obj

    def __post_init__(self):
        if "mfv" in self.__dict__:
            return
        m = 0
        for i, (_, ty) in enumerate(self.binders):
            m = max(m, max(ty.mfv - i, 0))
        m = max(m, max(self.body.mfv - len(self.binders), 0))
        object.__setattr__(self, "mfv", m)
        h = sum(ty.nholes for _, ty in self.binders) + self.body.nholes
        object.__setattr__(self, "nholes", h)

    @property
    def arity(self) -> int:
        return len(self.binders)


@_node
class Var(Term):
    ix: int
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()

    def __post_init__(self):
        if "mfv" in self.__dict__:
            return
        object.__setattr__(self, "mfv", self.ix + 1)
        object.__setattr__(self, "nholes", 0)


@_node
class Pi(Term):
    hint: str
    dom: Term
    cod: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("dom", 0), ("cod", 1))


@_node
class Lam(Term):
    hint: str
    dom: Term
    body: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("dom", 0), ("body", 1))


@_node
class App(Term):
    fn: Term
    arg: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("fn", 0), ("arg", 0))


@_node
class Sigma(Term):
    hint: str
    fst: Term
    snd: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("fst", 0), ("snd", 1))


@_node
class Pair(Term):
    a: Term
    b: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("a", 0), ("b", 0))


@_node
class SigElim(Term):
    motive: Family            # one binder, over the Σ type
    scrut: Term
    branch: Term              # two binders: x : A, y : B(x)
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("motive", 0), ("scrut", 0), ("branch", 2))


@_node
class Sum(Term):
    left: Term
    right: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("left", 0), ("right", 0))


@_node
class Inl(Term):
    arg: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("arg", 0),)


@_node
class Inr(Term):
    arg: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("arg", 0),)


@_node
class SumElim(Term):
    motive: Family            # one binder, over the sum type
    scrut: Term
    onl: Term                 # one binder: x : A
    onr: Term                 # one binder: y : B
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("motive", 0), ("scrut", 0), ("onl", 1), ("onr", 1))


@_node
class Id(Term):
    ty: Term
    lhs: Term
    rhs: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("ty", 0), ("lhs", 0), ("rhs", 0))


@_node
class Refl(Term):
    arg: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("arg", 0),)


@_node
class J(Term):
    motive: Family            # three binders: x, y : A, p : Id(A,x,y)
    base: Term                # one binder: z : A
    x: Term
    y: Term
    p: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("motive", 0), ("base", 1), ("x", 0), ("y", 0), ("p", 0))


@_node
class Nat(Term):
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()


@_node
class Zero(Term):
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()


@_node
class Succ(Term):
    arg: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("arg", 0),)


@_node
class NatRec(Term):
    motive: Family            # one binder, over N
    scrut: Term
    base: Term
    step: Term                # two binders: x : N, y : C(x)
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("motive", 0), ("scrut", 0), ("base", 0), ("step", 2))


@_node
class Fin(Term):
    k: int
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()


@_node
class FinLit(Term):
    m: int
    k: int
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()

    def __post_init__(self):
        if "mfv" in self.__dict__:
            return
        if not (0 <= self.m < self.k):
            raise ValueError(f"finite literal {self.m} out of range for Fin {self.k}")
        object.__setattr__(self, "mfv", 0)
        object.__setattr__(self, "nholes", 0)


@_node
class FinRec(Term):
    motive: Family            # one binder, over Fin k
    scrut: Term
    branches: Tuple[Term, ...]
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("motive", 0), ("scrut", 0), ("branches", 0))


@_node
class W(Term):
    hint: str
    dom: Term
    cod: Term                 # one binder: the branching family
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("dom", 0), ("cod", 1))


@_node
class Sup(Term):
    label: Term
    branch: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("label", 0), ("branch", 0))


@_node
class WRec(Term):
    motive: Family            # one binder, over the W type
    scrut: Term
    step: Term                # three binders: x : A, y : B(x) -> W, z : (Пv)C(y v)
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("motive", 0), ("scrut", 0), ("step", 3))


@_node
class U(Term):
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()


@_node
class El(Term):
    code: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("code", 0),)


CODE_FORMERS = ("pi", "sigma", "plus", "id", "nat", "fin", "w")
_CODE_ARITY = {"pi": 2, "sigma": 2, "plus": 2, "id": 3, "nat": 0, "fin": 0, "w": 2}


def _check_code(former: str, args, k):
    if former not in CODE_FORMERS:
        raise ValueError(f"unknown code former {former!r}")
    if len(args) != _CODE_ARITY[former]:
        raise ValueError(f"code former {former} takes {_CODE_ARITY[former]} args, got {len(args)}")
    if former == "fin":
        if k not in (0, 1, 2):
            raise ValueError(f"fin code arity must be 0, 1 or 2, got {k}")
    elif k is not None:
        raise ValueError(f"code former {former} takes no size index")


@_node
class Code(Term):
    former: str
    args: Tuple[Term, ...] = ()
    k: Optional[int] = None
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("args", 0),)

    def __post_init__(self):
        if "mfv" in self.__dict__:
            return
        _check_code(self.former, self.args, self.k)
        object.__setattr__(self, "mfv", _mfv_of(self.args, 0))
        object.__setattr__(self, "nholes", _holes_of(self.args))


@_node
class Ceq(Term):
    former: str
    args: Tuple[Term, ...] = ()
    k: Optional[int] = None
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("args", 0),)

    def __post_init__(self):
        if "mfv" in self.__dict__:
            return
        _check_code(self.former, self.args, self.k)
        object.__setattr__(self, "mfv", _mfv_of(self.args, 0))
        object.__setattr__(self, "nholes", _holes_of(self.args))


@_node
class Funext(Term):
    """Function extensionality at the Π-type ``Pi(hint, dom, cod)``.

    Inhabits (Π f,g : Π(hint:dom).cod) Equiv(Id(f,g), (Πx) Id(f x, g x)).
    Opaque: no reduction rule.
    """

    hint: str
    dom: Term
    cod: Term                 # one binder
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("dom", 0), ("cod", 1))


@_node
class ExtEq(Term):
    """Bisimulation equality on the type of iterative sets."""

    lhs: Term
    rhs: Term
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = (("lhs", 0), ("rhs", 0))


@_node
class Const(Term):
    name: str
    mfv: int = field(init=False, compare=False, repr=False)
    _shape = ()


NAT = Nat()
ZERO = Zero()
UNIV = U()


# ---------------------------------------------------------------------------
# Traversal: shift / subst / scope checking


def _map_children(t: Term, depth: int, on_var, floor: int = -1):
    """Rebuild ``t`` applying ``on_var(ix, depth)`` to every variable.

    Returns ``t`` itself when nothing changed, preserving sharing.  When
    ``floor`` is non-negative, subtrees with ``mfv <= depth + floor`` are
    known fixpoints and returned untouched.
    """
    if floor >= 0 and t.mfv <= depth + floor:
        return t
    if type(t) is Var:
        return on_var(t, depth)
    changed = False
    new_values = []
    shaped = t._shape
    si = 0
    for name in t._ctor_fields:
        if si < len(shaped) and shaped[si][0] == name:
            binders = shaped[si][1]
            si += 1
            v = getattr(t, name)
            if isinstance(v, Term):
                nv = _map_children(v, depth + binders, on_var, floor)
            elif isinstance(v, Family):
                nv = _map_family(v, depth, on_var, floor)
            else:  # tuple of terms
                items = tuple(_map_children(x, depth + binders, on_var, floor)
                              for x in v)
                nv = v if all(a is b for a, b in zip(items, v)) else items
            if nv is not v:
                changed = True
            new_values.append(nv)
        else:
            new_values.append(getattr(t, name))
    if not changed:
        return t
    return type(t)(*new_values)


def _map_family(fam: Family, depth: int, on_var, floor: int = -1) -> Family:
    if floor >= 0 and fam.mfv <= depth + floor:
        return fam
    binders = []
    changed = False
    for i, (hint, ty) in enumerate(fam.binders):
        nty = _map_children(ty, depth + i, on_var, floor)
        if nty is not ty:
            changed = True
        binders.append((hint, nty))
    body = _map_children(fam.body, depth + fam.arity, on_var, floor)
    if body is not fam.body:
        changed = True
    if not changed:
        return fam
    return Family(tuple(binders), body)


def shift(t: Term, by: int, cutoff: int = 0) -> Term:
    """Add ``by`` to every free index >= ``cutoff``."""
    if by == 0 or t.mfv <= cutoff:
        return t

    def on_var(v: Var, depth: int) -> Term:
        if v.ix >= depth + cutoff:
            return Var(v.ix + by)
        return v

    return _map_children(t, 0, on_var, cutoff)


def shift_family(fam: Family, by: int, cutoff: int = 0) -> Family:
    if by == 0 or fam.mfv <= cutoff:
        return fam

    def on_var(v: Var, depth: int) -> Term:
        if v.ix >= depth + cutoff:
            return Var(v.ix + by)
        return v

    return _map_family(fam, 0, on_var, cutoff)


def subst(t: Term, depth: int, s: Term) -> Term:
    """Replace ``Var(depth)`` by ``s`` in ``t``, rebalancing indices.

    ``s`` is shifted on the way in, so the substitution is capture free.
    """
    if t.mfv <= depth:
        return t

    def on_var(v: Var, d: int) -> Term:
        ix = v.ix
        if ix == d + depth:
            return shift(s, d + depth)
        if ix > d + depth:
            return Var(ix - 1)
        return v

    return _map_children(t, 0, on_var, depth)


def subst_family(fam: Family, depth: int, s: Term) -> Family:
    if fam.mfv <= depth:
        return fam

    def on_var(v: Var, d: int) -> Term:
        ix = v.ix
        if ix == d + depth:
            return shift(s, d + depth)
        if ix > d + depth:
            return Var(ix - 1)
        return v

    return _map_family(fam, 0, on_var, depth)


def instantiate(body: Term, *args: Term) -> Term:
    """Substitute a binder telescope at once: last arg fills the innermost binder.

    Arguments live at ambient scope; ``subst`` already shifts them past the
    binders still pending, so no pre-shifting here.
    """
    n = len(args)
    t = body
    for i, a in enumerate(args):
        # after i substitutions the target binder for args[i] sits at n-1-i
        t = subst(t, n - 1 - i, a)
    return t


def family_at(fam: Family, *args: Term) -> Term:
    if len(args) != fam.arity:
        raise ValueError(f"motive expects {fam.arity} arguments, got {len(args)}")
    return instantiate(fam.body, *args)


@dataclass
class ScopeError:
    path: Tuple[str, ...]
    ix: int
    depth: int

    def __str__(self):
        where = ".".join(self.path) or "root"
        return f"unbound index {self.ix} (depth {self.depth}) at {where}"


def check_scope(t: Term, depth: int = 0) -> Optional[ScopeError]:
    """Return the first out-of-range variable, or None when well-scoped."""

    def walk(t: Term, d: int, path) -> Optional[ScopeError]:
        if isinstance(t, Var):
            if t.ix >= d:
                return ScopeError(tuple(path), t.ix, d)
            return None
        if t.mfv <= d:
            return None
        for name, binders in t._shape:
            v = getattr(t, name)
            if isinstance(v, Term):
                err = walk(v, d + binders, path + [name])
                if err:
                    return err
            elif isinstance(v, Family):
                for i, (_, ty) in enumerate(v.binders):
                    err = walk(ty, d + i, path + [name, f"binder{i}"])
                    if err:
                        return err
                err = walk(v.body, d + v.arity, path + [name, "body"])
                if err:
                    return err
            elif isinstance(v, tuple):
                for i, x in enumerate(v):
                    err = walk(x, d + binders, path + [name, str(i)])
                    if err:
                        return err
        return None

    return walk(t, depth, [])


def alpha_equal(t1: Term, t2: Term) -> bool:
    """Structural equality up to name hints."""
    if t1 is t2:
        return True
    if type(t1) is not type(t2):
        return False
    if isinstance(t1, Var):
        return t1.ix == t2.ix
    for f in fields(t1):
        if f.name in ("mfv", "hint"):
            continue
        v1, v2 = getattr(t1, f.name), getattr(t2, f.name)
        if isinstance(v1, Term):
            if not alpha_equal(v1, v2):
                return False
        elif isinstance(v1, Family):
            if not _alpha_family(v1, v2):
                return False
        elif isinstance(v1, tuple):
            if len(v1) != len(v2):
                return False
            for a, b in zip(v1, v2):
                if not alpha_equal(a, b):
                    return False
        else:
            if v1 != v2:
                return False
    return True


def _alpha_family(f1: Family, f2: Family) -> bool:
    if f1.arity != f2.arity:
        return False
    for (_, a), (_, b) in zip(f1.binders, f2.binders):
        if not alpha_equal(a, b):
            return False
    return alpha_equal(f1.body, f2.body)


def subterms(t: Term) -> Iterator[Term]:
    """Pre-order walk over all term nodes (motives included)."""
    stack = [t]
    while stack:
        cur = stack.pop()
        yield cur
        for name, _ in cur._shape:
            v = getattr(cur, name)
            if isinstance(v, Term):
                stack.append(v)
            elif isinstance(v, Family):
                stack.extend(ty for _, ty in v.binders)
                stack.append(v.body)
            elif isinstance(v, tuple):
                stack.extend(v)


# ---------------------------------------------------------------------------
# Contexts and environments


@dataclass(frozen=True)
class Context:
    """Telescope of (hint, type) entries; entry 0 is the innermost binder."""

    entries: Tuple[Tuple[str, Term], ...] = ()

    def extend(self, hint: str, ty: Term) -> "Context":
        return Context(((hint, ty),) + self.entries)

    def lookup(self, ix: int) -> Term:
        if ix >= len(self.entries):
            raise IndexError(f"variable {ix} not in context of length {len(self.entries)}")
        # stored in its own prefix; shift into the full context
        return shift(self.entries[ix][1], ix + 1)

    def hint(self, ix: int) -> str:
        return self.entries[ix][0]

    def __len__(self):
        return len(self.entries)


EMPTY = Context()


@dataclass(frozen=True)
class Decl:
    """One environment entry.

    ``kind`` is "def" (type + body), "postulate" (type only) or
    "typealias" (body only; the body is a type expression).
    """

    name: str
    kind: str
    ty: Optional[Term] = None
    body: Optional[Term] = None


class Environment:
    """Ordered map from names to checked declarations."""

    def __init__(self):
        self._decls: dict[str, Decl] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._decls

    def __iter__(self):
        return iter(self._decls.values())

    def lookup(self, name: str) -> Optional[Decl]:
        return self._decls.get(name)

    def names(self):
        return set(self._decls)

    def add(self, decl: Decl):
        if decl.name in self._decls:
            raise ValueError(f"duplicate declaration {decl.name!r}")
        self._decls[decl.name] = decl

    def body_of(self, name: str) -> Optional[Term]:
        d = self._decls.get(name)
        return d.body if d else None
