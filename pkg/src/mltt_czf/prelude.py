"""The checked prelude: core set-layer definitions plus the named lemma
libraries, assembled programmatically and serializable to prelude.mltt so
the CLI can re-check it from source alone.
"""

from __future__ import annotations

import os
from functools import lru_cache
from typing import List, Optional, Tuple

from . import hott, setmodel, universe
from .hoas import arrow, binder2, fam, lam, nat_lit
from .kernel import Checker, LoadResult, load_decls
from .terms import Decl, Environment, NAT, NatRec, Succ, Term, Var

PRELUDE_FILENAME = os.path.join(os.path.dirname(__file__), "prelude.mltt")


def _add_decl() -> Decl:
    body = lam("m", NAT, lambda m: lam("n", NAT, lambda n: NatRec(
        fam([("k", NAT)], lambda k: NAT), m, n,
        binder2(lambda x, y: Succ(y)))))
    return Decl("add", "def", arrow(NAT, arrow(NAT, NAT)), body)


def build_prelude_decls() -> List[Decl]:
    decls: List[Decl] = []
    decls.extend(setmodel.core_decls())
    decls.extend(setmodel.exteq_decls())
    decls.append(_add_decl())
    for lemma in hott.build_path_library():
        decls.append(Decl(lemma.name, "def", lemma.statement, lemma.witness))
    for lemma in hott.build_equiv_library():
        decls.append(Decl(lemma.name, "def", lemma.statement, lemma.witness))
    for lemma in setmodel.build_v_api():
        decls.append(Decl(lemma.name, "def", lemma.statement, lemma.witness))
    for lemma in universe.build_small_reflection():
        decls.append(Decl(lemma.name, "def", lemma.statement, lemma.witness))
    return decls


@lru_cache(maxsize=1)
def _standard() -> Tuple[Environment, Tuple[str, ...]]:
    result = load_decls(build_prelude_decls())
    return result.env, tuple(result.warnings)


def standard_env() -> Environment:
    """A fully checked environment with the prelude loaded (cached)."""
    return _standard()[0]


def standard_checker(fuel_steps: Optional[int] = None) -> Checker:
    return Checker(standard_env(), fuel_steps)


def prelude_source() -> str:
    from .parser import print_decl
    lines = ["# Generated prelude: core set layer, path algebra, equivalence",
             "# lemmas, and small reflection.  Regenerate with:",
             "#   python -m mltt_czf.prelude",
             ""]
    for d in build_prelude_decls():
        lines.append(print_decl(d))
        lines.append("")
    return "\n".join(lines)


def write_prelude(path: Optional[str] = None) -> str:
    path = path or PRELUDE_FILENAME
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(prelude_source())
    return path


if __name__ == "__main__":
    out = write_prelude()
    print(f"wrote {out}")
