"""The twin TQFT functor: diagrams to exact matrices.

Evaluation walks the sliding form one cell at a time and keeps, for each
domain basis vector, a sparse image vector over the current interface.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from . import linalg as la
from .algebra import TwinAlgebraPresentation, Verdict, truncated_twin, universal_twin
from .diagram import Diagram, Gen, LinComb, obj_str
from .dsl import parse_diagram
from .ring import A, H, I, ONE, ZERO, RingPoly

DEFAULT_WIDTH_CAP = 12


class EvalError(ValueError):
    pass


def generator_matrix(g: Gen, t: TwinAlgebraPresentation) -> la.Matrix:
    rc, rw = t.C.rank, t.W.rank
    table = {
        "mC": t.C.m, "dC": t.C.delta, "uC": t.C.eta, "eC": t.C.eps,
        "mW": t.W.m, "dW": t.W.delta, "uW": t.W.eta, "eW": t.W.eps,
        "z": t.z, "zs": t.zstar,
    }
    if g.kind in table:
        return table[g.kind]
    ranks = (rc, rw)
    if g.is_swap:
        return la.swap(ranks[g.dom[0]], ranks[g.dom[1]])
    if g.is_identity:
        return la.identity(ranks[g.dom[0]])
    raise EvalError(f"no matrix for generator {g}")


def _basis(obj, ranks) -> list[tuple[int, ...]]:
    return list(product(*(range(ranks[b]) for b in obj)))


def _flat(idx, obj, ranks) -> int:
    k = 0
    for i, b in zip(idx, obj):
        k = k * ranks[b] + i
    return k


def _unflat(k: int, obj, ranks) -> tuple[int, ...]:
    out = []
    for b in reversed(obj):
        k, r = divmod(k, ranks[b])
        out.append(r)
    return tuple(reversed(out))


def _sparse_columns(g: Gen, t: TwinAlgebraPresentation):
    """local input tuple -> [(local output tuple, coefficient)]"""
    ranks = (t.C.rank, t.W.rank)
    m = generator_matrix(g, t)
    cols = {}
    for c, inp in enumerate(_basis(g.dom, ranks)):
        cols[inp] = [(_unflat(r, g.cod, ranks), m[r][c]) for r in range(len(m)) if m[r][c]]
    return cols


def evaluate(d: Diagram, t: TwinAlgebraPresentation, width_cap: int = DEFAULT_WIDTH_CAP) -> la.Matrix:
    """Matrix of ``d`` (rows: codomain basis, columns: domain basis)."""
    ranks = (t.C.rank, t.W.rank)
    for n in d.interfaces:
        if len(n) > width_cap:
            raise EvalError(f"interface {obj_str(n)} exceeds the width cap of {width_cap} strands")
    cache = {}
    dom_basis = _basis(d.dom, ranks)
    images = [{b: ONE} for b in dom_basis]
    for pos, g in d.slices:
        if g not in cache:
            cache[g] = _sparse_columns(g, t)
        cols = cache[g]
        k = len(g.dom)
        for col, vec in enumerate(images):
            new: dict = {}
            for idx, c in vec.items():
                for out, x in cols[idx[pos:pos + k]]:
                    key = idx[:pos] + out + idx[pos + k:]
                    v = new.get(key, ZERO) + c * x
                    if v:
                        new[key] = v
                    else:
                        new.pop(key, None)
            images[col] = new
    rows = len(_basis(d.cod, ranks))
    dense = [[ZERO] * len(dom_basis) for _ in range(rows)]
    for col, vec in enumerate(images):
        for idx, c in vec.items():
            dense[_flat(idx, d.cod, ranks)][col] = c
    return tuple(tuple(r) for r in dense)


def eval_lincomb(lc: LinComb, t: TwinAlgebraPresentation) -> la.Matrix:
    ranks = (t.C.rank, t.W.rank)
    acc = la.zeros(len(_basis(lc.cod, ranks)), len(_basis(lc.dom, ranks)))
    for c, d in lc.terms:
        acc = la.add(acc, la.scale(c, evaluate(d, t)))
    return acc


def proportional_unit(m1: la.Matrix, m2: la.Matrix) -> RingPoly | None:
    """The unit u in {1, i, -1, -i} with m1 = u*m2, if any (None when m2 = 0)."""
    if la.is_zero(m2):
        return None
    for u in (ONE, I, -ONE, -I):
        if la.scale(u, m2) == m1:
            return u
    return None


# -- suites ---------------------------------------------------------------------

def relation_suite(t: TwinAlgebraPresentation) -> list[Verdict]:
    from .rules import rule_catalog
    out = []
    for rule in rule_catalog():
        lhs = evaluate(rule.lhs, t)
        rhs = evaluate(rule.rhs, t)
        out.append(Verdict(rule.name, lhs == la.scale(rule.scalar, rhs)))
    return out


FOAM_TERMS = {
    "sphere": ("uC ; eC", ZERO),
    "singular-sphere": ("uW ; eW", ZERO),
    "torus": ("uC ; dC ; mC ; eC", RingPoly.const(2)),
    "ufo": ("uC ; dC ; mC ; z ; eW", -2 * I),
}


@lru_cache(maxsize=None)
def _foam_diagram(text: str) -> Diagram:
    return parse_diagram(text)


def foam_identities(t: TwinAlgebraPresentation | None = None) -> list[Verdict]:
    """Closed-surface values and the double handle, for the universal algebra."""
    t = t or universal_twin()
    out = []
    for name, (text, value) in FOAM_TERMS.items():
        m = evaluate(_foam_diagram(text), t)
        out.append(Verdict(name, m == ((value,),)))
    gg = evaluate(_foam_diagram("dC ; mC ; dC ; mC"), t)
    out.append(Verdict("double-genus", gg == la.scale(H * H + 4 * A, la.identity(t.C.rank))))
    return out


def resolve_algebra(selector: str) -> TwinAlgebraPresentation:
    """``universal``, ``trunc:N`` or a path to a JSON algebra file."""
    if selector == "universal":
        return universal_twin()
    if selector.startswith("trunc:"):
        try:
            n = int(selector[6:])
        except ValueError:
            raise ValueError(f"bad algebra selector {selector!r}") from None
        return truncated_twin(n)
    from .algebra import loads_twin
    with open(selector, encoding="utf-8") as fh:
        return loads_twin(fh.read(), name=selector)
