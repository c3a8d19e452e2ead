"""Relations of the singular cobordism category as rewrite rules.

A rule states ``lhs = scalar * rhs``.  Matching works on sliding forms: a
pattern with slices ``(q_i, g_i)`` occurs at site ``(k, p)`` of a diagram when
the diagram's slices ``k, k+1, ...`` are ``(p + q_i, g_i)``.  Patterns without
cells (identities) occur wherever their object sits in an interface.

The interchange law is handled by a dedicated move that exchanges two adjacent
slices acting on disjoint strands.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .diagram import (GENERATORS, Diagram, Gen, compose_all, gen, identity,
                      permutation_diagram, tensor_all)
from .dsl import parse_diagram
from .ring import I, ONE, RingPoly, unit_inverse

# rules whose eval identity involves a scalar; everything else is scalar 1
_SCALAR_RULES = {
    "local-zip-cozip": -I,
    "local-cozip-zip": -I,
    "genus-one-sign": -ONE,
    "remove-sing-genus-below": -ONE,
    "remove-sing-genus-above": -ONE,
}

_TEXT_RULES = [
    # commutative Frobenius algebra on circles
    ("c-assoc", "(mC|id:0) ; mC", "(id:0|mC) ; mC"),
    ("c-unit-left", "(uC|id:0) ; mC", "id:0"),
    ("c-unit-right", "(id:0|uC) ; mC", "id:0"),
    ("c-coassoc", "dC ; (dC|id:0)", "dC ; (id:0|dC)"),
    ("c-counit-left", "dC ; (eC|id:0)", "id:0"),
    ("c-counit-right", "dC ; (id:0|eC)", "id:0"),
    ("c-frobenius-left", "(dC|id:0) ; (id:0|mC)", "mC ; dC"),
    ("c-frobenius-right", "(id:0|dC) ; (mC|id:0)", "mC ; dC"),
    ("c-commutative", "sw:00 ; mC", "mC"),
    ("c-cocommutative", "dC ; sw:00", "dC"),
    # symmetric Frobenius algebra on bi-webs
    ("w-assoc", "(mW|id:1) ; mW", "(id:1|mW) ; mW"),
    ("w-unit-left", "(uW|id:1) ; mW", "id:1"),
    ("w-unit-right", "(id:1|uW) ; mW", "id:1"),
    ("w-coassoc", "dW ; (dW|id:1)", "dW ; (id:1|dW)"),
    ("w-counit-left", "dW ; (eW|id:1)", "id:1"),
    ("w-counit-right", "dW ; (id:1|eW)", "id:1"),
    ("w-frobenius-left", "(dW|id:1) ; (id:1|mW)", "mW ; dW"),
    ("w-frobenius-right", "(id:1|dW) ; (mW|id:1)", "mW ; dW"),
    ("w-symmetric", "sw:11 ; mW ; eW", "mW ; eW"),
    ("w-cosymmetric", "uW ; dW ; sw:11", "uW ; dW"),
    # zipper and cozipper
    ("zipper-alghom", "(z|z) ; mW", "mC ; z"),
    ("zipper-unit", "uC ; z", "uW"),
    ("cozipper-dual", "(id:0|zs) ; mC ; eC", "(z|id:1) ; mW ; eW"),
    ("center", "(id:1|z) ; mW", "(id:1|z) ; sw:11 ; mW"),
    ("local-zip-cozip", "z ; zs", "id:0"),
    ("local-cozip-zip", "zs ; z", "id:1"),
    ("cozipper-coalghom", "zs ; dC", "dW ; (zs|zs)"),
    ("cozipper-counit", "zs ; eC", "eW"),
    # zig-zags
    ("w-zig-zag-left", "((uW;dW)|id:1) ; (id:1|(mW;eW))", "id:1"),
    ("w-zig-zag-right", "(id:1|(uW;dW)) ; ((mW;eW)|id:1)", "id:1"),
    ("c-zig-zag-left", "((uC;dC)|id:0) ; (id:0|(mC;eC))", "id:0"),
    ("c-zig-zag-right", "(id:0|(uC;dC)) ; ((mC;eC)|id:0)", "id:0"),
    # pairings and copairings across the zipper
    ("cozipper-pairing", "(zs|id:0) ; mC ; eC", "(id:1|z) ; mW ; eW"),
    ("cozipper-copairing-left", "uC ; dC ; (id:0|z)", "uW ; dW ; (zs|id:1)"),
    ("cozipper-copairing-right", "uC ; dC ; (z|id:0)", "uW ; dW ; (id:1|zs)"),
    # (co)multiplications through (co)pairings
    ("singcomult-equiv", "dW", "((uW;dW)|id:1) ; (id:1|mW)"),
    ("comult-equiv", "dC", "((uC;dC)|id:0) ; (id:0|mC)"),
    ("singmult-equiv", "mW", "(id:1|dW) ; ((mW;eW)|id:1)"),
    ("mult-equiv", "mC", "(id:0|dC) ; ((mC;eC)|id:0)"),
    ("weak-com", "(z|id:1) ; mW", "(z|id:1) ; sw:11 ; mW"),
    ("weak-cocom", "dW ; (zs|id:1)", "dW ; sw:11 ; (zs|id:1)"),
    # handles
    ("w-genus-one-comult", "dW ; mW ; dW", "dW ; ((dW;mW)|id:1)"),
    ("w-genus-one-mult", "mW ; dW ; mW", "((dW;mW)|id:1) ; mW"),
    ("c-genus-one-comult", "dC ; mC ; dC", "dC ; ((dC;mC)|id:0)"),
    ("c-genus-one-mult", "mC ; dC ; mC", "((dC;mC)|id:0) ; mC"),
    ("genus-one-sign", "dW ; mW", "zs ; dC ; mC ; z"),
    ("remove-sing-genus-below", "dW ; mW ; zs", "zs ; dC ; mC ; z ; zs"),
    ("remove-sing-genus-above", "z ; dW ; mW", "z ; zs ; dC ; mC ; z"),
]


@dataclass(frozen=True)
class RewriteRule:
    name: str
    lhs: Diagram
    rhs: Diagram
    scalar: RingPoly = ONE
    structural: bool = False

    def __post_init__(self):
        if (self.lhs.dom, self.lhs.cod) != (self.rhs.dom, self.rhs.cod):
            raise ValueError(f"rule {self.name}: sides have different types")


class NoMatch(ValueError):
    pass


def _braid(u, v) -> Diagram:
    """Symmetry u (x) v -> v (x) u as adjacent swaps."""
    n = len(u) + len(v)
    sigma = tuple(j + len(v) for j in range(len(u))) + tuple(range(len(v)))
    return permutation_diagram(sigma, tuple(u) + tuple(v)) if n else identity(())


def _structural_rules() -> list[RewriteRule]:
    out = []
    for x in (0, 1):
        for y in (0, 1):
            out.append(RewriteRule(
                f"swap-involution-{x}{y}",
                parse_diagram(f"sw:{x}{y} ; sw:{y}{x}"), identity((x, y)), structural=True))
    for g in GENERATORS:
        for y in (0, 1):
            idy = identity((y,))
            out.append(RewriteRule(
                f"naturality-left-{g.kind}-{y}",
                compose_all(tensor_all(gen(g), idy), _braid(g.cod, (y,))),
                compose_all(_braid(g.dom, (y,)), tensor_all(idy, gen(g))), structural=True))
            out.append(RewriteRule(
                f"naturality-right-{g.kind}-{y}",
                compose_all(tensor_all(idy, gen(g)), _braid((y,), g.cod)),
                compose_all(_braid((y,), g.dom), tensor_all(gen(g), idy)), structural=True))
    for x in (0, 1):
        for y in (0, 1):
            for z in (0, 1):
                out.append(RewriteRule(
                    f"yang-baxter-{x}{y}{z}",
                    parse_diagram(f"(sw:{x}{y}|id:{z}) ; (id:{y}|sw:{x}{z}) ; (sw:{y}{z}|id:{x})"),
                    parse_diagram(f"(id:{x}|sw:{y}{z}) ; (sw:{x}{z}|id:{y}) ; (id:{z}|sw:{x}{y})"),
                    structural=True))
    # a representative instance of the interchange law; the general move is slide()
    out.append(RewriteRule("interchange", parse_diagram("(mC|id:1) ; (id:0|zs)"),
                           Diagram.from_slices((0, 0, 1), [(2, Gen("zs", (1,), (0,))),
                                                           (0, Gen("mC", (0, 0), (0,)))]),
                           structural=True))
    return out


@lru_cache(maxsize=None)
def _catalog() -> tuple[RewriteRule, ...]:
    rules = [RewriteRule(name, parse_diagram(lhs), parse_diagram(rhs),
                         _SCALAR_RULES.get(name, ONE))
             for name, lhs, rhs in _TEXT_RULES]
    return tuple(rules + _structural_rules())


def rule_catalog() -> list[RewriteRule]:
    return list(_catalog())


def rule_by_name(name: str) -> RewriteRule:
    for r in _catalog():
        if r.name == name:
            return r
    raise KeyError(name)


# -- matching and application ----------------------------------------------------

Site = tuple[int, int]  # (slice index, wire offset)


def _sides(rule: RewriteRule, reverse: bool):
    if reverse:
        return rule.rhs, rule.lhs, unit_inverse(rule.scalar)
    return rule.lhs, rule.rhs, rule.scalar


def matches_at(d: Diagram, pattern: Diagram, site: Site) -> bool:
    k, p = site
    if p < 0 or k < 0 or k > len(d.slices):
        return False
    cur = d.interfaces[k]
    if cur[p:p + len(pattern.dom)] != pattern.dom:
        return False
    pat = pattern.slices
    if k + len(pat) > len(d.slices):
        return False
    return all(d.slices[k + j] == (p + q, g) for j, (q, g) in enumerate(pat))


def find_sites(d: Diagram, pattern: Diagram) -> list[Site]:
    pat = pattern.slices
    out = []
    if not pat:
        w = len(pattern.dom)
        for k, cur in enumerate(d.interfaces):
            for p in range(len(cur) - w + 1):
                if cur[p:p + w] == pattern.dom:
                    out.append((k, p))
        return out
    q0, g0 = pat[0]
    for k, (pos, g) in enumerate(d.slices):
        if g == g0 and matches_at(d, pattern, (k, pos - q0)):
            out.append((k, pos - q0))
    return out


def _substitute(d: Diagram, pattern: Diagram, repl: Diagram, site: Site) -> Diagram:
    k, p = site
    new = d.slices[:k] + tuple((p + q, g) for q, g in repl.slices) + d.slices[k + len(pattern.slices):]
    return Diagram.from_slices(d.dom, new)


def rewrite_apply(d: Diagram, rule: RewriteRule, site: Site, reverse: bool = False) -> tuple[Diagram, RingPoly]:
    """Replace an occurrence of one side by the other.

    Returns ``(d_new, s)`` with ``d = s * d_new`` in the quotient category.
    """
    if rule.name == "interchange":
        return slide(d, site[0]), ONE
    pattern, repl, s = _sides(rule, reverse)
    if not matches_at(d, pattern, site):
        raise NoMatch(f"rule {rule.name} does not match at slice {site[0]}, wire {site[1]}")
    return _substitute(d, pattern, repl, site), s


# -- interchange ------------------------------------------------------------------

def independent(d: Diagram, k: int) -> bool:
    """Slices k and k+1 act on disjoint strands."""
    if k < 0 or k + 1 >= len(d.slices):
        return False
    (p1, g1), (p2, g2) = d.slices[k], d.slices[k + 1]
    return p2 + len(g2.dom) <= p1 or p2 >= p1 + len(g1.cod)


def slide(d: Diagram, k: int) -> Diagram:
    """Exchange the independent slices k and k+1."""
    if not independent(d, k):
        raise NoMatch(f"slices {k} and {k + 1} are not independent")
    (p1, g1), (p2, g2) = d.slices[k], d.slices[k + 1]
    if p2 + len(g2.dom) <= p1:
        pair = ((p2, g2), (p1 + len(g2.cod) - len(g2.dom), g1))
    else:
        pair = ((p2 - len(g1.cod) + len(g1.dom), g2), (p1, g1))
    return Diagram.from_slices(d.dom, d.slices[:k] + pair + d.slices[k + 2:])


def _slices_key(slices):
    return len(slices), [(p, g.kind, g.dom, g.cod) for p, g in slices]


def structural_normalize(d: Diagram, max_passes: int = 10_000, prefer: str = "left") -> Diagram:
    """Move left (or right) cells up through independent neighbours and cancel double swaps."""
    slices = list(d.slices)
    history: dict[tuple, int] = {}
    for npass in range(max_passes):
        state = tuple(slices)
        if state in history:
            # floating pieces can circulate; settle on the least state of the cycle
            cycle = [s for s, j in history.items() if j >= history[state]]
            slices = list(min(cycle, key=_slices_key))
            break
        history[state] = npass
        changed = False
        k = 0
        while k + 1 < len(slices):
            (p1, g1), (p2, g2) = slices[k], slices[k + 1]
            if g1.is_swap and g2.is_swap and p1 == p2:
                del slices[k:k + 2]
                changed = True
                k = max(k - 1, 0)
                continue
            # a unit directly above a counit may be drawn on either side of it;
            # put it on the preferred side
            tie = not g1.dom and not g2.cod
            if prefer == "left" and tie and p2 + len(g2.dom) == p1:
                slices[k] = (p2, g1)
                slices[k + 1] = (p2 + len(g1.cod), g2)
                changed = True
            elif prefer == "right" and tie and p2 == p1 + len(g1.cod):
                slices[k] = (p1 + len(g2.dom), g1)
                slices[k + 1] = (p1, g2)
                changed = True
            elif prefer == "left" and p2 + len(g2.dom) <= p1:
                slices[k] = (p2, g2)
                slices[k + 1] = (p1 + len(g2.cod) - len(g2.dom), g1)
                changed = True
            elif prefer == "right" and p2 >= p1 + len(g1.cod):
                slices[k] = (p2 - len(g1.cod) + len(g1.dom), g2)
                slices[k + 1] = (p1, g1)
                changed = True
            k += 1
        if not changed:
            break
    return Diagram.from_slices(d.dom, slices)


def _exchanges(slices, k):
    """Every way of exchanging slices k and k+1 by the interchange law."""
    (p1, g1), (p2, g2) = slices[k], slices[k + 1]
    out = []
    if p2 + len(g2.dom) <= p1:
        out.append(((p2, g2), (p1 + len(g2.cod) - len(g2.dom), g1)))
    if p2 >= p1 + len(g1.cod):
        out.append(((p2 - len(g1.cod) + len(g1.dom), g2), (p1, g1)))
    return out


def interchange_class(d: Diagram, limit: int = 20_000) -> set[Diagram]:
    """Structural normal forms reachable by one interchange move and renormalizing.

    ``structural_normalize`` alone can stop at different terms when pieces
    float freely past each other (a unit next to a counit, closed
    components); this closes its image under single exchanges.
    """
    start = structural_normalize(d)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        sl = cur.slices
        for k in range(len(sl) - 1):
            for pair in _exchanges(sl, k):
                e = structural_normalize(Diagram.from_slices(cur.dom, sl[:k] + pair + sl[k + 2:]))
                if e not in seen:
                    seen.add(e)
                    todo.append(e)
                    if len(seen) > limit:
                        raise RuntimeError(f"interchange class exceeds {limit} terms")
    return seen


def interchange_canonical(d: Diagram, limit: int = 20_000) -> Diagram:
    """Least member of ``interchange_class``: fewest cells, then lexicographic."""
    return min(interchange_class(d, limit), key=lambda e: _slices_key(e.slices))


# -- random walks -------------------------------------------------------------------

@lru_cache(maxsize=None)
def _moves():
    """(rule, reverse) pairs indexed by the first cell of the pattern; None = cell-free."""
    index: dict = {}
    for rule in _catalog():
        if rule.name == "interchange":
            continue
        for reverse in (False, True):
            pattern = rule.rhs if reverse else rule.lhs
            key = pattern.slices[0][1] if pattern.slices else None
            index.setdefault(key, []).append((rule, reverse))
    return index


def _candidate_moves(d: Diagram):
    index = _moves()
    found: dict = {}
    for k, (pos, g) in enumerate(d.slices):
        for rule, rev in index.get(g, ()):
            pattern = rule.rhs if rev else rule.lhs
            q0 = pattern.slices[0][0]
            if matches_at(d, pattern, (k, pos - q0)):
                found.setdefault((rule.name, rev), (rule, rev, []))[2].append((k, pos - q0))
    for rule, rev in index.get(None, ()):
        pattern = rule.rhs if rev else rule.lhs
        sites = find_sites(d, pattern)
        if sites:
            found[(rule.name, rev)] = (rule, rev, sites)
    slides = [k for k in range(len(d.slices) - 1) if independent(d, k)]
    if slides:
        found[("interchange", False)] = (rule_by_name("interchange"), False, [(k, 0) for k in slides])
    return [found[key] for key in sorted(found, key=lambda x: (x[0], x[1]))]


def max_width(d: Diagram) -> int:
    return max(len(n) for n in d.interfaces)


@dataclass(frozen=True)
class Step:
    rule: str
    reverse: bool
    site: Site
    scalar: RingPoly      # the new diagram equals scalar * the old one


def random_walk(d: Diagram, steps: int, seed: int, width_cap: int | None = None,
                size_cap: int = 60) -> tuple[Diagram, list[Step]]:
    """``steps`` random rewrites in random orientations, deterministic in ``seed``.

    Moves that would push the width beyond ``width_cap`` (default: the
    input's width + 2) or the cell count beyond ``size_cap`` are not offered;
    a step with no admissible move is skipped.
    """
    rng = random.Random(seed)
    cap = width_cap if width_cap is not None else max_width(d) + 2
    trail = []
    for _ in range(steps):
        options = _candidate_moves(d)
        rng.shuffle(options)
        for rule, rev, sites in options:
            site = rng.choice(sites)
            new, s = rewrite_apply(d, rule, site, rev)
            if max_width(new) > cap or new.size > size_cap:
                continue
            d = new
            trail.append(Step(rule.name, rev, site, unit_inverse(s)))
            break
    return d, trail


def random_equivalent(d: Diagram, steps: int, seed: int, **caps) -> tuple[Diagram, RingPoly]:
    """Returns ``(d2, s)`` with ``d2 = s * d``; ``s`` is the product of the step scalars."""
    d2, trail = random_walk(d, steps, seed, **caps)
    s = ONE
    for st in trail:
        s = s * st.scalar
    return d2, s
