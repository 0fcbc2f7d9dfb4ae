"""Path algebra and equivalence toolkit.

Everything here is a *term macro*: a Python function assembling a proof
term from argument terms, with the kernel as the only judge.  The macros
work at arbitrary types (including the large ones: the iterative-set type
and interpreted formulas); ``build_path_library`` / ``build_equiv_library``
additionally package universe-generic instances as named, closed,
re-checkable lemmas.

Conventions, fixed once:
  * equivalence = bi-invertibility: (Σg)(g∘f ∼ 1) × (Σh)(f∘h ∼ 1);
  * a quasi-inverse upgrades via ``equiv_of_qinv``, the only isequiv
    constructor used downstream;
  * concatenation chains associate to the left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

from .hoas import app, arrow, bind, binder2, binder3, fam, lam, pi, prod, sigma
from .kernel import equiv_type, isequiv_type
from .terms import (
    App, Family, Funext, Id, J, Lam, Pair, Pi, Refl, Sigma, SigElim, Sum,
    SumElim, Term, UNIV, Var, El, shift, subst,
)

TermFn = Callable[[Term], Term]


@dataclass(frozen=True)
class NamedLemma:
    name: str
    statement: Term     # a closed type
    witness: Term       # a closed term; check(witness, statement) holds


# ---------------------------------------------------------------------------
# Σ projections with explicit motives


def proj1(fst_ty: Term, snd_fn: TermFn, pair: Term) -> Term:
    if isinstance(pair, Pair):
        return pair.a
    sig = sigma("x", fst_ty, snd_fn)
    motive = fam([("c", sig)], lambda c: fst_ty)
    return SigElim(motive, pair, binder2(lambda x, y: x))


def proj2(fst_ty: Term, snd_fn: TermFn, pair: Term) -> Term:
    if isinstance(pair, Pair):
        return pair.b
    sig = sigma("x", fst_ty, snd_fn)
    motive = fam([("c", sig)], lambda c: snd_fn(proj1(fst_ty, snd_fn, c)))
    return SigElim(motive, pair, binder2(lambda x, y: y))


# ---------------------------------------------------------------------------
# Path algebra


def inverse(a_ty: Term, x: Term, y: Term, p: Term) -> Term:
    """p ⁻¹ : Id(y,x); inverse(refl) reduces to refl."""
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: Id(a_ty, y1, x1))
    return J(motive, bind(lambda z: Refl(z)), x, y, p)


def concat(a_ty: Term, x: Term, y: Term, z: Term, p: Term, q: Term) -> Term:
    """p · q : Id(x,z); refl·refl reduces to refl (double induction)."""
    inner_motive = fam(
        [("u", a_ty), ("w", a_ty), ("q", lambda u, w: Id(a_ty, u, w))],
        lambda u, w, q1: Id(a_ty, u, w))
    outer_motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: pi("z", a_ty, lambda z1: arrow(Id(a_ty, y1, z1),
                                                          Id(a_ty, x1, z1))))
    outer_base = bind(
        lambda w: lam("z", a_ty, lambda z1: lam(
            "q", Id(a_ty, w, z1),
            lambda q1: J(inner_motive, bind(lambda v: Refl(v)), w, z1, q1))))
    return app(J(outer_motive, outer_base, x, y, p), z, q)


def chain(a_ty: Term, points: List[Term], paths: List[Term]) -> Term:
    """Left-associated concatenation of consecutive paths."""
    assert len(points) == len(paths) + 1 and paths
    acc = paths[0]
    for i in range(1, len(paths)):
        acc = concat(a_ty, points[0], points[i], points[i + 1], acc, paths[i])
    return acc


def ap_path(a_ty: Term, b_ty: Term, f: Term, x: Term, y: Term, p: Term) -> Term:
    """ap_f p : Id(B, f x, f y); ap_f(refl x) reduces to refl(f x)."""
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: Id(b_ty, app(f, x1), app(f, y1)))
    return J(motive, bind(lambda z: Refl(app(f, z))), x, y, p)


def transport(a_ty: Term, fam_fn: TermFn, x: Term, y: Term, p: Term,
              w: Term) -> Term:
    """p_* w : fam(y); transport along refl is the identity."""
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: arrow(fam_fn(x1), fam_fn(y1)))
    base = bind(lambda z: lam("w", fam_fn(z), lambda v: v))
    return app(J(motive, base, x, y, p), w)


def happly(a_ty: Term, cod_fn: TermFn, f: Term, g: Term, p: Term) -> Term:
    """Pointwise application of a path between functions."""
    pi_ty = pi("x", a_ty, cod_fn)
    motive = fam(
        [("f", pi_ty), ("g", pi_ty), ("p", lambda f1, g1: Id(pi_ty, f1, g1))],
        lambda f1, g1, p1: pi("x", a_ty, lambda x: Id(cod_fn(x), app(f1, x),
                                                      app(g1, x))))
    base = bind(lambda h: lam("x", a_ty, lambda x: Refl(app(h, x))))
    return J(motive, base, f, g, p)


def funext_path(hint: str, a_ty: Term, cod_fn: TermFn, f: Term, g: Term,
                pointwise: Term) -> Term:
    """Turn a pointwise homotopy into an identity of functions."""
    pi_ty = pi(hint, a_ty, cod_fn)
    hom = pi("x", a_ty, lambda x: Id(cod_fn(x), app(f, x), app(g, x)))
    fx = Funext(hint, a_ty, bind(cod_fn))
    e = app(fx, f, g)
    return app(equiv_rinv(Id(pi_ty, f, g), hom, e), pointwise)


# ---------------------------------------------------------------------------
# Equivalences


def equiv_of_qinv(f: Term, g: Term, eta: Term, eps: Term) -> Term:
    """Package a quasi-inverse as a bi-invertible map.

    eta : (Πx:A) Id(A, g (f x), x); eps : (Πy:B) Id(B, f (g y), y).
    """
    return Pair(f, Pair(Pair(g, eta), Pair(g, eps)))


def equiv_parts(a_ty: Term, b_ty: Term, e: Term) -> Tuple[Term, Term, Term, Term, Term]:
    """(f, g, η, h, ε) from an equivalence term.

    When ``e`` is a literal pair built by ``equiv_of_qinv`` the components
    are taken syntactically, keeping derived terms small; otherwise stuck
    Σ-eliminations are emitted.
    """
    if isinstance(e, Pair) and isinstance(e.b, Pair) \
            and isinstance(e.b.a, Pair) and isinstance(e.b.b, Pair):
        f = e.a
        g, eta = e.b.a.a, e.b.a.b
        h, eps = e.b.b.a, e.b.b.b
        return f, g, eta, h, eps
    ab = arrow(a_ty, b_ty)
    ba = arrow(b_ty, a_ty)
    iseq_fn = lambda f1: isequiv_type(a_ty, b_ty, f1)
    f = proj1(ab, iseq_fn, e)
    iseq = proj2(ab, iseq_fn, e)
    linv_sig_fn = lambda f1: sigma(
        "g", ba, lambda g1: pi("x", a_ty, lambda x: Id(a_ty, app(g1, app(f1, x)), x)))
    rinv_sig_fn = lambda f1: sigma(
        "h", ba, lambda h1: pi("y", b_ty, lambda y: Id(b_ty, app(f1, app(h1, y)), y)))
    left = proj1(linv_sig_fn(f), lambda _l: rinv_sig_fn(f), iseq)
    right = proj2(linv_sig_fn(f), lambda _l: rinv_sig_fn(f), iseq)
    g = proj1(ba, lambda g1: pi("x", a_ty, lambda x: Id(a_ty, app(g1, app(f, x)), x)), left)
    eta = proj2(ba, lambda g1: pi("x", a_ty, lambda x: Id(a_ty, app(g1, app(f, x)), x)), left)
    h = proj1(ba, lambda h1: pi("y", b_ty, lambda y: Id(b_ty, app(f, app(h1, y)), y)), right)
    eps = proj2(ba, lambda h1: pi("y", b_ty, lambda y: Id(b_ty, app(f, app(h1, y)), y)), right)
    return f, g, eta, h, eps


def equiv_fwd(a_ty: Term, b_ty: Term, e: Term) -> Term:
    return equiv_parts(a_ty, b_ty, e)[0]


def equiv_linv(a_ty: Term, b_ty: Term, e: Term) -> Term:
    return equiv_parts(a_ty, b_ty, e)[1]


def equiv_linv_hom(a_ty: Term, b_ty: Term, e: Term) -> Term:
    return equiv_parts(a_ty, b_ty, e)[2]


def equiv_rinv(a_ty: Term, b_ty: Term, e: Term) -> Term:
    return equiv_parts(a_ty, b_ty, e)[3]


def equiv_rinv_hom(a_ty: Term, b_ty: Term, e: Term) -> Term:
    return equiv_parts(a_ty, b_ty, e)[4]


def qinv_parts(a_ty: Term, b_ty: Term, e: Term) -> Tuple[Term, Term, Term, Term]:
    """(f, g, η, ε̂): a single two-sided inverse.

    ε̂ corrects the right-inverse homotopy onto g:
    f(g y) ← f(g(f(h y))) → f(h y) → y.
    """
    f, g, eta, h, eps = equiv_parts(a_ty, b_ty, e)
    if g is h:
        return f, g, eta, eps
    fg = lam("y", b_ty, lambda y: app(f, app(g, y)))
    eps_hat = lam("y", b_ty, lambda y: chain(
        b_ty,
        [app(f, app(g, y)), app(f, app(g, app(f, app(h, y)))),
         app(f, app(h, y)), y],
        [inverse(b_ty, app(f, app(g, app(f, app(h, y)))), app(f, app(g, y)),
                 ap_path(b_ty, b_ty, fg, app(f, app(h, y)), y, app(eps, y))),
         ap_path(a_ty, b_ty, f, app(g, app(f, app(h, y))), app(h, y),
                 app(eta, app(h, y))),
         app(eps, y)]))
    return f, g, eta, eps_hat


def equiv_refl(a_ty: Term) -> Term:
    idf = lam("x", a_ty, lambda x: x)
    hom = lam("x", a_ty, lambda x: Refl(x))
    return equiv_of_qinv(idf, idf, hom, hom)


def equiv_sym(a_ty: Term, b_ty: Term, e: Term) -> Term:
    f, g, eta, eps_hat = qinv_parts(a_ty, b_ty, e)
    return equiv_of_qinv(g, f, eps_hat, eta)


def equiv_compose(a_ty: Term, b_ty: Term, c_ty: Term, e1: Term, e2: Term) -> Term:
    """Equiv(A,B) → Equiv(B,C) → Equiv(A,C)."""
    f1, g1, eta1, eps1 = qinv_parts(a_ty, b_ty, e1)
    f2, g2, eta2, eps2 = qinv_parts(b_ty, c_ty, e2)
    f = lam("x", a_ty, lambda x: app(f2, app(f1, x)))
    g = lam("z", c_ty, lambda z: app(g1, app(g2, z)))
    eta = lam("x", a_ty, lambda x: chain(
        a_ty,
        [app(g1, app(g2, app(f2, app(f1, x)))), app(g1, app(f1, x)), x],
        [ap_path(b_ty, a_ty, g1, app(g2, app(f2, app(f1, x))), app(f1, x),
                 app(eta2, app(f1, x))),
         app(eta1, x)]))
    eps = lam("z", c_ty, lambda z: chain(
        c_ty,
        [app(f2, app(f1, app(g1, app(g2, z)))), app(f2, app(g2, z)), z],
        [ap_path(b_ty, c_ty, f2, app(f1, app(g1, app(g2, z))), app(g2, z),
                 app(eps1, app(g2, z))),
         app(eps2, z)]))
    return equiv_of_qinv(f, g, eta, eps)


# ---------------------------------------------------------------------------
# Identity of Σ-types (the structural theorem behind Σ congruence)


def _transport_term(a_ty: Term, fam_fn: TermFn, x: Term, y: Term, p: Term) -> Term:
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: arrow(fam_fn(x1), fam_fn(y1)))
    base = bind(lambda z: lam("w", fam_fn(z), lambda v: v))
    return J(motive, base, x, y, p)


def transport_const(a_ty: Term, b_ty: Term, x: Term, y: Term, p: Term,
                    w: Term) -> Term:
    """Id(B, p_* w, w) for a constant family: transport does nothing."""
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: pi(
            "w", b_ty,
            lambda w1: Id(b_ty,
                          app(_transport_term(a_ty, lambda _t: b_ty, x1, y1, p1),
                              w1),
                          w1)))
    base = bind(lambda z: lam("w", b_ty, lambda w1: Refl(w1)))
    return app(J(motive, base, x, y, p), w)


def pair_path(a_ty: Term, fam_fn: TermFn, x: Term, y: Term, b: Term, b2: Term,
              i1: Term, i2: Term) -> Term:
    """Id in a Σ-type from a base path and a fibre path over its transport.

    i1 : Id(A, x, y);  i2 : Id(B y, i1_*(b), b2);
    result : Id((Σx:A)B, (x,b), (y,b2)).  Computes to refl on (refl, refl).
    """
    sig = sigma("x", a_ty, fam_fn)
    outer = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: pi(
            "u", fam_fn(x1),
            lambda u: pi(
                "v", fam_fn(y1),
                lambda v: arrow(
                    Id(fam_fn(y1),
                       app(_transport_term(a_ty, fam_fn, x1, y1, p1), u), v),
                    Id(sig, Pair(x1, u), Pair(y1, v))))))
    base = bind(lambda z: lam(
        "u", fam_fn(z),
        lambda u: lam(
            "v", fam_fn(z),
            lambda v: lam(
                "q",
                Id(fam_fn(z),
                   app(_transport_term(a_ty, fam_fn, z, z, Refl(z)), u), v),
                lambda q: J(
                    fam([("u1", fam_fn(z)), ("v1", fam_fn(z)),
                         ("q1", lambda u1, v1: Id(fam_fn(z), u1, v1))],
                        lambda u1, v1, q1: Id(sig, Pair(z, u1), Pair(z, v1))),
                    bind(lambda m: Refl(Pair(z, m))),
                    u, v, q)))))
    return app(J(outer, base, x, y, i1), b, b2, i2)


def sigma_path_data_ty(a_ty: Term, fam_fn: TermFn, w: Term, w2: Term) -> Term:
    """(Σ i : Id(A, p w, p w')) Id(B (p w'), i_*(q w), q w')."""
    pw = proj1(a_ty, fam_fn, w)
    pw2 = proj1(a_ty, fam_fn, w2)
    qw = proj2(a_ty, fam_fn, w)
    qw2 = proj2(a_ty, fam_fn, w2)
    return sigma(
        "i", Id(a_ty, pw, pw2),
        lambda i: Id(fam_fn(pw2),
                     app(_transport_term(a_ty, fam_fn, pw, pw2, i), qw), qw2))


def sigma_path_equiv(a_ty: Term, fam_fn: TermFn, w: Term, w2: Term) -> Term:
    """Equiv(Id(Σ, w, w'), Σ-path data).  The Σ-identity characterization."""
    sig = sigma("x", a_ty, fam_fn)

    def split_fn(w1: Term, w2_: Term) -> Term:
        # forward: path induction, sending refl z to (refl (p z), refl (q z))
        motive = fam(
            [("w1", sig), ("w2", sig), ("pp", lambda u, v: Id(sig, u, v))],
            lambda u, v, pp: sigma_path_data_ty(a_ty, fam_fn, u, v))
        base = bind(lambda z: Pair(Refl(proj1(a_ty, fam_fn, z)),
                                   Refl(proj2(a_ty, fam_fn, z))))
        return lam("pp", Id(sig, w1, w2_),
                   lambda pp: J(motive, base, w1, w2_, pp))

    def glue_pairs(x: Term, b: Term, y: Term, c: Term) -> Term:
        # both endpoints in canonical form: rebuild the path directly
        return lam(
            "r", sigma_path_data_ty(a_ty, fam_fn, Pair(x, b), Pair(y, c)),
            lambda r: SigElim(
                fam([("r1", sigma_path_data_ty(a_ty, fam_fn, Pair(x, b),
                                               Pair(y, c)))],
                    lambda r1: Id(sig, Pair(x, b), Pair(y, c))),
                r,
                binder2(lambda i1, i2: pair_path(
                    a_ty, fam_fn, x, y, b, c, i1, i2))))

    def glue_fn(w1: Term, w2_: Term) -> Term:
        # backward: split both pairs, then rebuild the path.  Literal pairs
        # are split at build time so the term stays inferable and small.
        def inner(x: Term, b: Term) -> Term:
            if isinstance(w2_, Pair):
                return glue_pairs(x, b, w2_.a, w2_.b)
            mot2 = fam(
                [("w2", sig)],
                lambda v: arrow(sigma_path_data_ty(a_ty, fam_fn, Pair(x, b), v),
                                Id(sig, Pair(x, b), v)))
            branch2 = binder2(lambda y, c: glue_pairs(x, b, y, c))
            return SigElim(mot2, w2_, branch2)

        if isinstance(w1, Pair):
            return inner(w1.a, w1.b)
        mot1 = fam(
            [("w1", sig)],
            lambda u: arrow(sigma_path_data_ty(a_ty, fam_fn, u, w2_),
                            Id(sig, u, w2_)))
        branch1 = binder2(inner)
        return SigElim(mot1, w1, branch1)

    f = split_fn(w, w2)
    g = glue_fn(w, w2)

    # g (f pp) ∼ pp by path induction; the base Σ-splits its endpoint so
    # that both eliminations compute.
    eta_motive = fam(
        [("w1", sig), ("w2", sig), ("pp", lambda u, v: Id(sig, u, v))],
        lambda u, v, pp: Id(Id(sig, u, v),
                            app(glue_fn(u, v), app(split_fn(u, v), pp)), pp))
    eta_base = bind(lambda z: SigElim(
        fam([("z1", sig)],
            lambda z1: Id(Id(sig, z1, z1),
                          app(glue_fn(z1, z1), app(split_fn(z1, z1), Refl(z1))),
                          Refl(z1))),
        z,
        binder2(lambda x, b: Refl(Refl(Pair(x, b))))))
    eta = lam("pp", Id(sig, w, w2),
              lambda pp: J(eta_motive, eta_base, w, w2, pp))

    # f (g r) ∼ r: split everything, then double path induction.
    def eps_fn() -> Term:
        def for_pairs(x: Term, b: Term, y: Term, c: Term) -> Term:
            data = sigma_path_data_ty(a_ty, fam_fn, Pair(x, b), Pair(y, c))

            mot_i1 = fam(
                [("x1", a_ty), ("y1", a_ty),
                 ("i1", lambda x1, y1: Id(a_ty, x1, y1))],
                lambda x1, y1, i1: pi(
                    "b1", fam_fn(x1),
                    lambda b1: pi(
                        "c1", fam_fn(y1),
                        lambda c1: pi(
                            "i2",
                            Id(fam_fn(y1),
                               app(_transport_term(a_ty, fam_fn, x1, y1, i1), b1),
                               c1),
                            lambda i2: Id(
                                sigma_path_data_ty(a_ty, fam_fn,
                                                   Pair(x1, b1), Pair(y1, c1)),
                                app(split_fn(Pair(x1, b1), Pair(y1, c1)),
                                    app(glue_fn(Pair(x1, b1), Pair(y1, c1)),
                                        Pair(i1, i2))),
                                Pair(i1, i2))))))
            base_i1 = bind(lambda z1: lam(
                "b1", fam_fn(z1),
                lambda b1: lam(
                    "c1", fam_fn(z1),
                    lambda c1: lam(
                        "i2",
                        Id(fam_fn(z1),
                           app(_transport_term(a_ty, fam_fn, z1, z1, Refl(z1)), b1),
                           c1),
                        lambda i2: J(
                            fam([("b2", fam_fn(z1)), ("c2", fam_fn(z1)),
                                 ("i2b", lambda b2, c2: Id(fam_fn(z1), b2, c2))],
                                lambda b2, c2, i2b: Id(
                                    sigma_path_data_ty(a_ty, fam_fn,
                                                       Pair(z1, b2), Pair(z1, c2)),
                                    app(split_fn(Pair(z1, b2), Pair(z1, c2)),
                                        app(glue_fn(Pair(z1, b2), Pair(z1, c2)),
                                            Pair(Refl(z1), i2b))),
                                    Pair(Refl(z1), i2b))),
                            bind(lambda m: Refl(Pair(Refl(z1), Refl(m)))),
                            b1, c1, i2)))))
            return lam(
                "r", data,
                lambda r: SigElim(
                    fam([("r1", data)],
                        lambda r1: Id(data,
                                      app(split_fn(Pair(x, b), Pair(y, c)),
                                          app(glue_fn(Pair(x, b), Pair(y, c)), r1)),
                                      r1)),
                    r,
                    binder2(lambda i1, i2: app(
                        J(mot_i1, base_i1, x, y, i1), b, c, i2))))

        mot_w = fam(
            [("w1", sig)],
            lambda u: pi(
                "r", sigma_path_data_ty(a_ty, fam_fn, u, w2),
                lambda r: Id(sigma_path_data_ty(a_ty, fam_fn, u, w2),
                             app(split_fn(u, w2), app(glue_fn(u, w2), r)), r)))
        br_w = binder2(lambda x, b: SigElim(
            fam([("w2b", sig)],
                lambda v: pi(
                    "r", sigma_path_data_ty(a_ty, fam_fn, Pair(x, b), v),
                    lambda r: Id(sigma_path_data_ty(a_ty, fam_fn, Pair(x, b), v),
                                 app(split_fn(Pair(x, b), v),
                                     app(glue_fn(Pair(x, b), v), r)),
                                 r))),
            w2,
            binder2(lambda y, c: for_pairs(x, b, y, c))))
        return SigElim(mot_w, w, br_w)

    eps = eps_fn()
    return equiv_of_qinv(f, g, eta, eps)


# ---------------------------------------------------------------------------
# Congruence equivalences for the type formers



def _memo_by_id(fn):
    """Cache macro output per argument object so repeated use sites share
    one term object (and the checker's identity memos can hit)."""
    cache = {}
    keep = []

    def wrapped(x):
        r = cache.get(id(x))
        if r is None:
            r = fn(x)
            cache[id(x)] = r
            keep.append(x)
        return r

    return wrapped


def pi_congruence(a_ty: Term, b_fn: TermFn, c_fn: TermFn, e_fn: TermFn) -> Term:
    """Lift pointwise Equiv(B x, C x) through (Πx:A); function extensionality
    rebuilds the two homotopies from their pointwise versions."""
    pib = pi("x", a_ty, b_fn)
    pic = pi("x", a_ty, c_fn)
    b_fn = _memo_by_id(b_fn)
    c_fn = _memo_by_id(c_fn)

    parts = _memo_by_id(lambda x: qinv_parts(b_fn(x), c_fn(x), e_fn(x)))

    fwd = lam("h", pib, lambda h: lam("x", a_ty, lambda x: app(parts(x)[0], app(h, x))))
    back = lam("k", pic, lambda k: lam("x", a_ty, lambda x: app(parts(x)[1], app(k, x))))
    eta = lam("h", pib, lambda h: funext_path(
        "x", a_ty, b_fn,
        lam("x", a_ty, lambda x: app(parts(x)[1], app(parts(x)[0], app(h, x)))),
        h,
        lam("x", a_ty, lambda x: app(parts(x)[2], app(h, x)))))
    eps = lam("k", pic, lambda k: funext_path(
        "x", a_ty, c_fn,
        lam("x", a_ty, lambda x: app(parts(x)[0], app(parts(x)[1], app(k, x)))),
        k,
        lam("x", a_ty, lambda x: app(parts(x)[3], app(k, x)))))
    return equiv_of_qinv(fwd, back, eta, eps)


def sigma_congruence(a_ty: Term, b_fn: TermFn, c_fn: TermFn, e_fn: TermFn) -> Term:
    """Lift pointwise Equiv(B x, C x) through (Σx:A); the Σ-identity
    characterization supplies the homotopies (its pair_path constructor)."""
    sigb = sigma("x", a_ty, b_fn)
    sigc = sigma("x", a_ty, c_fn)
    b_fn = _memo_by_id(b_fn)
    c_fn = _memo_by_id(c_fn)

    parts = _memo_by_id(lambda x: qinv_parts(b_fn(x), c_fn(x), e_fn(x)))

    fwd = lam("s", sigb, lambda s: SigElim(
        fam([("s1", sigb)], lambda s1: sigc), s,
        binder2(lambda x, b: Pair(x, app(parts(x)[0], b)))))
    back = lam("s", sigc, lambda s: SigElim(
        fam([("s1", sigc)], lambda s1: sigb), s,
        binder2(lambda x, c: Pair(x, app(parts(x)[1], c)))))
    eta = lam("s", sigb, lambda s: SigElim(
        fam([("s1", sigb)],
            lambda s1: Id(sigb, app(back, app(fwd, s1)), s1)),
        s,
        binder2(lambda x, b: pair_path(
            a_ty, b_fn, x, x,
            app(parts(x)[1], app(parts(x)[0], b)), b,
            Refl(x), app(parts(x)[2], b)))))
    eps = lam("s", sigc, lambda s: SigElim(
        fam([("s1", sigc)],
            lambda s1: Id(sigc, app(fwd, app(back, s1)), s1)),
        s,
        binder2(lambda x, c: pair_path(
            a_ty, c_fn, x, x,
            app(parts(x)[0], app(parts(x)[1], c)), c,
            Refl(x), app(parts(x)[3], c)))))
    return equiv_of_qinv(fwd, back, eta, eps)


def prod_congruence(a1: Term, a2: Term, b1: Term, b2: Term,
                    ea: Term, eb: Term) -> Term:
    """Equiv(A₁ × B₁, A₂ × B₂) from component equivalences."""
    fa, ga, etaa, epsa = qinv_parts(a1, a2, ea)
    fb, gb, etab, epsb = qinv_parts(b1, b2, eb)
    p1 = prod(a1, b1)
    p2 = prod(a2, b2)
    fwd = lam("s", p1, lambda s: SigElim(
        fam([("s1", p1)], lambda s1: p2), s,
        binder2(lambda x, y: Pair(app(fa, x), app(fb, y)))))
    back = lam("s", p2, lambda s: SigElim(
        fam([("s1", p2)], lambda s1: p1), s,
        binder2(lambda x, y: Pair(app(ga, x), app(gb, y)))))
    def fixed_i2(a_ty, b_ty, x0, x1, i1, w, w1, i2):
        # Id(B, i1_* w, w1) from Id(B, w, w1): transport in a constant family
        # is propositionally trivial but not definitionally for neutral i1.
        return concat(
            b_ty, app(_transport_term(a_ty, lambda _t: b_ty, x0, x1, i1), w),
            w, w1, transport_const(a_ty, b_ty, x0, x1, i1, w), i2)

    eta = lam("s", p1, lambda s: SigElim(
        fam([("s1", p1)], lambda s1: Id(p1, app(back, app(fwd, s1)), s1)),
        s,
        binder2(lambda x, y: pair_path(
            a1, lambda _u: b1, app(ga, app(fa, x)), x,
            app(gb, app(fb, y)), y, app(etaa, x),
            fixed_i2(a1, b1, app(ga, app(fa, x)), x, app(etaa, x),
                     app(gb, app(fb, y)), y, app(etab, y))))))
    eps = lam("s", p2, lambda s: SigElim(
        fam([("s1", p2)], lambda s1: Id(p2, app(fwd, app(back, s1)), s1)),
        s,
        binder2(lambda x, y: pair_path(
            a2, lambda _u: b2, app(fa, app(ga, x)), x,
            app(fb, app(gb, y)), y, app(epsa, x),
            fixed_i2(a2, b2, app(fa, app(ga, x)), x, app(epsa, x),
                     app(fb, app(gb, y)), y, app(epsb, y))))))
    return equiv_of_qinv(fwd, back, eta, eps)


def ap_inl(a_ty: Term, b_ty: Term, x: Term, y: Term, p: Term) -> Term:
    """Id(A,x,y) → Id(A+B, inl x, inl y)."""
    from .terms import Inl
    motive = fam(
        [("x", a_ty), ("y", a_ty), ("p", lambda x1, y1: Id(a_ty, x1, y1))],
        lambda x1, y1, p1: Id(Sum(a_ty, b_ty), Inl(x1), Inl(y1)))
    return J(motive, bind(lambda z: Refl(Inl(z))), x, y, p)


def ap_inr(a_ty: Term, b_ty: Term, x: Term, y: Term, p: Term) -> Term:
    """Id(B,x,y) → Id(A+B, inr x, inr y)."""
    from .terms import Inr
    motive = fam(
        [("x", b_ty), ("y", b_ty), ("p", lambda x1, y1: Id(b_ty, x1, y1))],
        lambda x1, y1, p1: Id(Sum(a_ty, b_ty), Inr(x1), Inr(y1)))
    return J(motive, bind(lambda z: Refl(Inr(z))), x, y, p)


def sum_congruence(a1: Term, a2: Term, b1: Term, b2: Term,
                   ea: Term, eb: Term) -> Term:
    """Equiv(A₁ + B₁, A₂ + B₂) from component equivalences."""
    from .terms import Inl, Inr
    fa, ga, etaa, epsa = qinv_parts(a1, a2, ea)
    fb, gb, etab, epsb = qinv_parts(b1, b2, eb)
    s1 = Sum(a1, b1)
    s2 = Sum(a2, b2)
    fwd = lam("s", s1, lambda s: SumElim(
        fam([("c", s1)], lambda c: s2), s,
        bind(lambda x: Inl(app(fa, x))), bind(lambda y: Inr(app(fb, y)))))
    back = lam("s", s2, lambda s: SumElim(
        fam([("c", s2)], lambda c: s1), s,
        bind(lambda x: Inl(app(ga, x))), bind(lambda y: Inr(app(gb, y)))))
    eta = lam("s", s1, lambda s: SumElim(
        fam([("c", s1)], lambda c: Id(s1, app(back, app(fwd, c)), c)),
        s,
        bind(lambda x: ap_inl(a1, b1, app(ga, app(fa, x)), x, app(etaa, x))),
        bind(lambda y: ap_inr(a1, b1, app(gb, app(fb, y)), y, app(etab, y)))))
    eps = lam("s", s2, lambda s: SumElim(
        fam([("c", s2)], lambda c: Id(s2, app(fwd, app(back, c)), c)),
        s,
        bind(lambda x: ap_inl(a2, b2, app(fa, app(ga, x)), x, app(epsa, x))),
        bind(lambda y: ap_inr(a2, b2, app(fb, app(gb, y)), y, app(epsb, y)))))
    return equiv_of_qinv(fwd, back, eta, eps)


def dom_change(d1: Term, d2: Term, r_ty: Term, e: Term) -> Term:
    """Equiv(D₁ → R, D₂ → R) by precomposition with a quasi-inverse of e."""
    f, g, eta, eps = qinv_parts(d1, d2, e)
    t1 = arrow(d1, r_ty)
    t2 = arrow(d2, r_ty)
    fwd = lam("h", t1, lambda h: lam("x", d2, lambda x: app(h, app(g, x))))
    back = lam("k", t2, lambda k: lam("x", d1, lambda x: app(k, app(f, x))))
    eta2 = lam("h", t1, lambda h: funext_path(
        "x", d1, lambda _x: r_ty,
        lam("x", d1, lambda x: app(h, app(g, app(f, x)))), h,
        lam("x", d1, lambda x: ap_path(d1, r_ty, h, app(g, app(f, x)), x,
                                       app(eta, x)))))
    eps2 = lam("k", t2, lambda k: funext_path(
        "x", d2, lambda _x: r_ty,
        lam("x", d2, lambda x: app(k, app(f, app(g, x)))), k,
        lam("x", d2, lambda x: ap_path(d2, r_ty, k, app(f, app(g, x)), x,
                                       app(eps, x)))))
    return equiv_of_qinv(fwd, back, eta2, eps2)


def arrow_congruence(d1: Term, d2: Term, r1: Term, r2: Term,
                     ed: Term, er: Term) -> Term:
    """Equiv(D₁ → R₁, D₂ → R₂): codomain congruence then domain change."""
    step1 = pi_congruence(d1, lambda _x: r1, lambda _x: r2, lambda _x: er)
    step2 = dom_change(d1, d2, r2, ed)
    return equiv_compose(arrow(d1, r1), arrow(d1, r2), arrow(d2, r2),
                         step1, step2)


# ---------------------------------------------------------------------------
# The named, re-checkable library (universe-generic instances)


def _el_fam(b: Term) -> TermFn:
    return lambda x: El(app(b, x))


def build_path_library() -> List[NamedLemma]:
    lemmas: List[NamedLemma] = []

    stmt = pi("a", UNIV, lambda a: pi(
        "x", El(a), lambda x: pi(
            "y", El(a), lambda y: arrow(Id(El(a), x, y), Id(El(a), y, x)))))
    wit = lam("a", UNIV, lambda a: lam(
        "x", El(a), lambda x: lam(
            "y", El(a), lambda y: lam(
                "p", Id(El(a), x, y), lambda p: inverse(El(a), x, y, p)))))
    lemmas.append(NamedLemma("path_inverse", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "x", El(a), lambda x: pi(
            "y", El(a), lambda y: pi(
                "z", El(a), lambda z: arrow(
                    Id(El(a), x, y),
                    arrow(Id(El(a), y, z), Id(El(a), x, z)))))))
    wit = lam("a", UNIV, lambda a: lam(
        "x", El(a), lambda x: lam(
            "y", El(a), lambda y: lam(
                "z", El(a), lambda z: lam(
                    "p", Id(El(a), x, y), lambda p: lam(
                        "q", Id(El(a), y, z),
                        lambda q: concat(El(a), x, y, z, p, q)))))))
    lemmas.append(NamedLemma("path_concat", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", UNIV, lambda b: pi(
            "f", arrow(El(a), El(b)), lambda f: pi(
                "x", El(a), lambda x: pi(
                    "y", El(a), lambda y: arrow(
                        Id(El(a), x, y), Id(El(b), app(f, x), app(f, y))))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", UNIV, lambda b: lam(
            "f", arrow(El(a), El(b)), lambda f: lam(
                "x", El(a), lambda x: lam(
                    "y", El(a), lambda y: lam(
                        "p", Id(El(a), x, y),
                        lambda p: ap_path(El(a), El(b), f, x, y, p)))))))
    lemmas.append(NamedLemma("path_ap", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", arrow(El(a), UNIV), lambda b: pi(
            "x", El(a), lambda x: pi(
                "y", El(a), lambda y: arrow(
                    Id(El(a), x, y),
                    arrow(El(app(b, x)), El(app(b, y))))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", arrow(El(a), UNIV), lambda b: lam(
            "x", El(a), lambda x: lam(
                "y", El(a), lambda y: lam(
                    "p", Id(El(a), x, y), lambda p: lam(
                        "w", El(app(b, x)),
                        lambda w: transport(El(a), _el_fam(b), x, y, p, w)))))))
    lemmas.append(NamedLemma("path_transport", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", arrow(El(a), UNIV), lambda b: pi(
            "f", pi("x", El(a), _el_fam(b)), lambda f: pi(
                "g", pi("x", El(a), _el_fam(b)), lambda g: arrow(
                    Id(pi("x", El(a), _el_fam(b)), f, g),
                    pi("x", El(a), lambda x: Id(El(app(b, x)), app(f, x),
                                                app(g, x))))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", arrow(El(a), UNIV), lambda b: lam(
            "f", pi("x", El(a), _el_fam(b)), lambda f: lam(
                "g", pi("x", El(a), _el_fam(b)), lambda g: lam(
                    "p", Id(pi("x", El(a), _el_fam(b)), f, g),
                    lambda p: happly(El(a), _el_fam(b), f, g, p))))))
    lemmas.append(NamedLemma("happly", stmt, wit))

    # groupoid laws, all by path induction with definitional base cases
    def id2(a, x, y, lhs, rhs, p):
        return Id(Id(El(a), x, y), lhs, rhs)

    stmt = pi("a", UNIV, lambda a: pi(
        "x", El(a), lambda x: pi(
            "y", El(a), lambda y: pi(
                "p", Id(El(a), x, y),
                lambda p: id2(a, x, y, p,
                              concat(El(a), x, y, y, p, Refl(y)), p)))))
    wit = lam("a", UNIV, lambda a: lam(
        "x", El(a), lambda x: lam(
            "y", El(a), lambda y: lam(
                "p", Id(El(a), x, y),
                lambda p: J(
                    fam([("x1", El(a)), ("y1", El(a)),
                         ("p1", lambda x1, y1: Id(El(a), x1, y1))],
                        lambda x1, y1, p1: Id(Id(El(a), x1, y1), p1,
                                              concat(El(a), x1, y1, y1, p1,
                                                     Refl(y1)))),
                    bind(lambda z: Refl(Refl(z))),
                    x, y, p)))))
    lemmas.append(NamedLemma("concat_refl_right", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "x", El(a), lambda x: pi(
            "y", El(a), lambda y: pi(
                "p", Id(El(a), x, y),
                lambda p: Id(Id(El(a), y, y),
                             concat(El(a), y, x, y, inverse(El(a), x, y, p), p),
                             Refl(y))))))
    wit = lam("a", UNIV, lambda a: lam(
        "x", El(a), lambda x: lam(
            "y", El(a), lambda y: lam(
                "p", Id(El(a), x, y),
                lambda p: J(
                    fam([("x1", El(a)), ("y1", El(a)),
                         ("p1", lambda x1, y1: Id(El(a), x1, y1))],
                        lambda x1, y1, p1: Id(
                            Id(El(a), y1, y1),
                            concat(El(a), y1, x1, y1,
                                   inverse(El(a), x1, y1, p1), p1),
                            Refl(y1))),
                    bind(lambda z: Refl(Refl(z))),
                    x, y, p)))))
    lemmas.append(NamedLemma("concat_inverse_left", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "x", El(a), lambda x: pi(
            "y", El(a), lambda y: pi(
                "p", Id(El(a), x, y),
                lambda p: Id(Id(El(a), x, y),
                             inverse(El(a), y, x, inverse(El(a), x, y, p)),
                             p)))))
    wit = lam("a", UNIV, lambda a: lam(
        "x", El(a), lambda x: lam(
            "y", El(a), lambda y: lam(
                "p", Id(El(a), x, y),
                lambda p: J(
                    fam([("x1", El(a)), ("y1", El(a)),
                         ("p1", lambda x1, y1: Id(El(a), x1, y1))],
                        lambda x1, y1, p1: Id(
                            Id(El(a), x1, y1),
                            inverse(El(a), y1, x1,
                                    inverse(El(a), x1, y1, p1)),
                            p1)),
                    bind(lambda z: Refl(Refl(z))),
                    x, y, p)))))
    lemmas.append(NamedLemma("inverse_involution", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "x", El(a), lambda x: pi(
            "y", El(a), lambda y: pi(
                "z", El(a), lambda z: pi(
                    "w", El(a), lambda w: pi(
                        "p", Id(El(a), x, y), lambda p: pi(
                            "q", Id(El(a), y, z), lambda q: pi(
                                "r", Id(El(a), z, w),
                                lambda r: Id(
                                    Id(El(a), x, w),
                                    concat(El(a), x, y, w, p,
                                           concat(El(a), y, z, w, q, r)),
                                    concat(El(a), x, z, w,
                                           concat(El(a), x, y, z, p, q),
                                           r))))))))))

    def assoc_wit():
        def r_motive(a):
            # both arguments already refl; fully parametric in r's endpoints
            return fam(
                [("z3", El(a)), ("w3", El(a)),
                 ("r3", lambda z3, w3: Id(El(a), z3, w3))],
                lambda z3, w3, r3: Id(
                    Id(El(a), z3, w3),
                    concat(El(a), z3, z3, w3, Refl(z3),
                           concat(El(a), z3, z3, w3, Refl(z3), r3)),
                    concat(El(a), z3, z3, w3,
                           concat(El(a), z3, z3, z3, Refl(z3), Refl(z3)),
                           r3)))

        def q_motive(a):
            return fam(
                [("y2", El(a)), ("z2", El(a)),
                 ("q2", lambda y2, z2: Id(El(a), y2, z2))],
                lambda y2, z2, q2: pi(
                    "w2", El(a), lambda w2: pi(
                        "r2", Id(El(a), z2, w2),
                        lambda r2: Id(
                            Id(El(a), y2, w2),
                            concat(El(a), y2, y2, w2, Refl(y2),
                                   concat(El(a), y2, z2, w2, q2, r2)),
                            concat(El(a), y2, z2, w2,
                                   concat(El(a), y2, y2, z2, Refl(y2), q2),
                                   r2)))))

        def p_motive(a):
            return fam(
                [("x1", El(a)), ("y1", El(a)),
                 ("p1", lambda x1, y1: Id(El(a), x1, y1))],
                lambda x1, y1, p1: pi(
                    "z1", El(a), lambda z1: pi(
                        "w1", El(a), lambda w1: pi(
                            "q1", Id(El(a), y1, z1), lambda q1: pi(
                                "r1", Id(El(a), z1, w1),
                                lambda r1: Id(
                                    Id(El(a), x1, w1),
                                    concat(El(a), x1, y1, w1, p1,
                                           concat(El(a), y1, z1, w1, q1, r1)),
                                    concat(El(a), x1, z1, w1,
                                           concat(El(a), x1, y1, z1, p1, q1),
                                           r1)))))))

        return lam("a", UNIV, lambda a: lam(
            "x", El(a), lambda x: lam(
                "y", El(a), lambda y: lam(
                    "z", El(a), lambda z: lam(
                        "w", El(a), lambda w: lam(
                            "p", Id(El(a), x, y), lambda p: lam(
                                "q", Id(El(a), y, z), lambda q: lam(
                                    "r", Id(El(a), z, w),
                                    lambda r: app(
                                        J(p_motive(a),
                                          bind(lambda v: lam(
                                              "z1", El(a), lambda z1: lam(
                                                  "w1", El(a), lambda w1: lam(
                                                      "q1", Id(El(a), v, z1),
                                                      lambda q1: lam(
                                                          "r1", Id(El(a), z1, w1),
                                                          lambda r1: app(
                                                              J(q_motive(a),
                                                                bind(lambda v2: lam(
                                                                    "w2", El(a), lambda w2: lam(
                                                                        "r2", Id(El(a), v2, w2),
                                                                        lambda r2: J(
                                                                            r_motive(a),
                                                                            bind(lambda v3: Refl(Refl(v3))),
                                                                            v2, w2, r2)))),
                                                                v, z1, q1),
                                                              w1, r1)))))),
                                          x, y, p),
                                        z, w, q, r)))))))))

    lemmas.append(NamedLemma("concat_assoc", stmt, assoc_wit()))
    return lemmas


def build_equiv_library() -> List[NamedLemma]:
    lemmas: List[NamedLemma] = []

    stmt = pi("a", UNIV, lambda a: equiv_type(El(a), El(a)))
    wit = lam("a", UNIV, lambda a: equiv_refl(El(a)))
    lemmas.append(NamedLemma("equiv_id", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", UNIV, lambda b: pi(
            "c", UNIV, lambda c: arrow(
                equiv_type(El(a), El(b)),
                arrow(equiv_type(El(b), El(c)), equiv_type(El(a), El(c)))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", UNIV, lambda b: lam(
            "c", UNIV, lambda c: lam(
                "e1", equiv_type(El(a), El(b)), lambda e1: lam(
                    "e2", equiv_type(El(b), El(c)),
                    lambda e2: equiv_compose(El(a), El(b), El(c), e1, e2))))))
    lemmas.append(NamedLemma("equiv_compose", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", UNIV, lambda b: arrow(equiv_type(El(a), El(b)),
                                   equiv_type(El(b), El(a)))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", UNIV, lambda b: lam(
            "e", equiv_type(El(a), El(b)),
            lambda e: equiv_sym(El(a), El(b), e))))
    lemmas.append(NamedLemma("equiv_sym", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", UNIV, lambda b: pi(
            "f", arrow(El(a), El(b)), lambda f: pi(
                "g", arrow(El(b), El(a)), lambda g: arrow(
                    pi("x", El(a), lambda x: Id(El(a), app(g, app(f, x)), x)),
                    arrow(
                        pi("y", El(b), lambda y: Id(El(b), app(f, app(g, y)), y)),
                        equiv_type(El(a), El(b))))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", UNIV, lambda b: lam(
            "f", arrow(El(a), El(b)), lambda f: lam(
                "g", arrow(El(b), El(a)), lambda g: lam(
                    "eta",
                    pi("x", El(a), lambda x: Id(El(a), app(g, app(f, x)), x)),
                    lambda eta: lam(
                        "eps",
                        pi("y", El(b), lambda y: Id(El(b), app(f, app(g, y)), y)),
                        lambda eps: equiv_of_qinv(f, g, eta, eps)))))))
    lemmas.append(NamedLemma("equiv_of_qinv", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", arrow(El(a), UNIV), lambda b: pi(
            "w", sigma("x", El(a), _el_fam(b)), lambda w: pi(
                "w2", sigma("x", El(a), _el_fam(b)),
                lambda w2: equiv_type(
                    Id(sigma("x", El(a), _el_fam(b)), w, w2),
                    sigma_path_data_ty(El(a), _el_fam(b), w, w2))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", arrow(El(a), UNIV), lambda b: lam(
            "w", sigma("x", El(a), _el_fam(b)), lambda w: lam(
                "w2", sigma("x", El(a), _el_fam(b)),
                lambda w2: sigma_path_equiv(El(a), _el_fam(b), w, w2)))))
    lemmas.append(NamedLemma("sigma_path_equiv", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", arrow(El(a), UNIV), lambda b: pi(
            "c", arrow(El(a), UNIV), lambda c: arrow(
                pi("x", El(a), lambda x: equiv_type(El(app(b, x)), El(app(c, x)))),
                equiv_type(pi("x", El(a), _el_fam(b)),
                           pi("x", El(a), _el_fam(c)))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", arrow(El(a), UNIV), lambda b: lam(
            "c", arrow(El(a), UNIV), lambda c: lam(
                "e", pi("x", El(a), lambda x: equiv_type(El(app(b, x)),
                                                         El(app(c, x)))),
                lambda e: pi_congruence(El(a), _el_fam(b), _el_fam(c),
                                        lambda x: app(e, x))))))
    lemmas.append(NamedLemma("pi_congruence", stmt, wit))

    stmt = pi("a", UNIV, lambda a: pi(
        "b", arrow(El(a), UNIV), lambda b: pi(
            "c", arrow(El(a), UNIV), lambda c: arrow(
                pi("x", El(a), lambda x: equiv_type(El(app(b, x)), El(app(c, x)))),
                equiv_type(sigma("x", El(a), _el_fam(b)),
                           sigma("x", El(a), _el_fam(c)))))))
    wit = lam("a", UNIV, lambda a: lam(
        "b", arrow(El(a), UNIV), lambda b: lam(
            "c", arrow(El(a), UNIV), lambda c: lam(
                "e", pi("x", El(a), lambda x: equiv_type(El(app(b, x)),
                                                         El(app(c, x)))),
                lambda e: sigma_congruence(El(a), _el_fam(b), _el_fam(c),
                                           lambda x: app(e, x))))))
    lemmas.append(NamedLemma("sigma_congruence", stmt, wit))

    stmt = pi("a1", UNIV, lambda a1: pi(
        "a2", UNIV, lambda a2: pi(
            "b1", UNIV, lambda b1: pi(
                "b2", UNIV, lambda b2: arrow(
                    equiv_type(El(a1), El(a2)),
                    arrow(equiv_type(El(b1), El(b2)),
                          equiv_type(Sum(El(a1), El(b1)),
                                     Sum(El(a2), El(b2)))))))))
    wit = lam("a1", UNIV, lambda a1: lam(
        "a2", UNIV, lambda a2: lam(
            "b1", UNIV, lambda b1: lam(
                "b2", UNIV, lambda b2: lam(
                    "ea", equiv_type(El(a1), El(a2)), lambda ea: lam(
                        "eb", equiv_type(El(b1), El(b2)),
                        lambda eb: sum_congruence(El(a1), El(a2), El(b1),
                                                  El(b2), ea, eb)))))))
    lemmas.append(NamedLemma("sum_congruence", stmt, wit))

    stmt = pi("a1", UNIV, lambda a1: pi(
        "a2", UNIV, lambda a2: pi(
            "b1", UNIV, lambda b1: pi(
                "b2", UNIV, lambda b2: arrow(
                    equiv_type(El(a1), El(a2)),
                    arrow(equiv_type(El(b1), El(b2)),
                          equiv_type(arrow(El(a1), El(b1)),
                                     arrow(El(a2), El(b2)))))))))
    wit = lam("a1", UNIV, lambda a1: lam(
        "a2", UNIV, lambda a2: lam(
            "b1", UNIV, lambda b1: lam(
                "b2", UNIV, lambda b2: lam(
                    "ea", equiv_type(El(a1), El(a2)), lambda ea: lam(
                        "eb", equiv_type(El(b1), El(b2)),
                        lambda eb: arrow_congruence(El(a1), El(a2), El(b1),
                                                    El(b2), ea, eb)))))))
    lemmas.append(NamedLemma("arrow_congruence", stmt, wit))
    return lemmas
