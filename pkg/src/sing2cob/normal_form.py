"""Normal forms and equivalence of singular cobordisms.

Two constructions live here.  ``nf_build`` assembles the block form

    permutation(conjugator) ; cycle blocks A(q) ; circle comb B ; handles G^g ; comb D

from a descriptor, and ``block_normal_form`` uses it per component with the
component's own singular permutation.  ``nf_of`` is the decision procedure:
the local relations trade any singular permutation for any other at the cost
of a unit, so it fixes one small representative per (boundary, genus) class
and reads off the unit scalar from the universal evaluation.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg as la
from . import perm as P
from .algebra import TwinAlgebraPresentation, universal_twin
from .diagram import (DC, DW, EC, EW, MC, MW, UC, UW, Z, ZS, Diagram, LinComb, Obj,
                      compose_all, gen, identity, permutation_diagram, tensor_all)
from .evaluate import evaluate, proportional_unit
from .ring import ONE, UNITS, RingPoly
from .topology import components, singular_permutation, split_components


class DescriptorError(ValueError):
    pass


class NormalFormError(RuntimeError):
    pass


class ScalarIndeterminate(NormalFormError):
    """The normal form evaluates to zero, so no scalar can be read off."""

    def __init__(self, diagram_matrix: la.Matrix, nf_matrix: la.Matrix):
        super().__init__("normal form evaluates to zero; scalar is indeterminate")
        self.diagram_matrix = diagram_matrix
        self.nf_matrix = nf_matrix


@dataclass(frozen=True)
class NormalFormDescriptor:
    cycles: tuple[tuple[int, ...], ...]   # members of each cycle, in cycle order, block order
    genus: int
    out_circles: int
    conjugator: P.Perm
    scalar: RingPoly = field(default=ONE)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.cycles)

    @property
    def size(self) -> int:
        return sum(self.lengths)

    def check(self) -> None:
        l = self.size
        if self.genus < 0 or self.out_circles < 0:
            raise DescriptorError("genus and circle count must be nonnegative")
        if len(self.conjugator) != l or not P.is_perm(self.conjugator):
            raise DescriptorError(f"conjugator must permute {l} bi-webs")
        if any(q < 1 for q in self.lengths):
            raise DescriptorError("empty cycle")
        start = 0
        for cyc in self.cycles:
            for i, x in enumerate(cyc):
                if not 0 <= x < l or self.conjugator[x] != start + i:
                    raise DescriptorError(f"cycle {cyc} is not carried onto its block by the conjugator")
            start += len(cyc)

    def sigma(self) -> P.Perm:
        """The singular permutation the descriptor stands for."""
        perm = [0] * self.size
        for cyc in self.cycles:
            for i, x in enumerate(cyc):
                perm[x] = cyc[(i + 1) % len(cyc)]
        return tuple(perm)


def _comb(slices: list, g, count: int):
    slices.extend((0, g) for _ in range(count))


def block_diagram(lengths, genus: int, out_circles: int) -> Diagram:
    """D ; C ; B ; (A(q_1) | ... | A(q_r)) without the permutation block."""
    slices = []
    for k, q in enumerate(lengths):
        slices.extend((k, MW) for _ in range(q - 1))
        slices.append((k, ZS))
    r = len(lengths)
    if r == 0:
        slices.append((0, UC))
    else:
        _comb(slices, MC, r - 1)
    for _ in range(genus):
        slices += [(0, DC), (0, MC)]
    if out_circles == 0:
        slices.append((0, EC))
    else:
        _comb(slices, DC, out_circles - 1)
    return Diagram.from_slices((1,) * sum(lengths), slices)


def standard_tau(lengths) -> P.Perm:
    """Measured singular permutation of the block form for these cycle lengths."""
    if not isinstance(lengths, (tuple, list)):
        lengths = lengths.lengths
    sigma, _ = singular_permutation(block_diagram(tuple(lengths), 0, 1))
    return sigma


def nf_build(desc: NormalFormDescriptor) -> Diagram:
    desc.check()
    l = desc.size
    top = permutation_diagram(desc.conjugator, (1,) * l)
    return compose_all(top, block_diagram(desc.lengths, desc.genus, desc.out_circles))


def conjugator(sigma: P.Perm, cycles: list[tuple[int, ...]]) -> P.Perm:
    """Lexicographically smallest p with p . sigma . p^-1 = tau.

    ``tau`` is the block form of the cycles taken in the given order; a cycle
    may go to any unused block of its length.
    """
    lengths = [len(c) for c in cycles]
    starts = [sum(lengths[:k]) for k in range(len(lengths))]
    used = [False] * len(lengths)
    out = [None] * len(sigma)
    for x in range(len(sigma)):
        if out[x] is not None:
            continue
        q = next(len(c) for c in cycles if x in c)
        b = next(k for k in range(len(lengths)) if not used[k] and lengths[k] == q)
        used[b] = True
        y = x
        for i in range(q):
            out[y] = starts[b] + i
            y = sigma[y]
    return tuple(out)


def descriptor_from_sigma(sigma: P.Perm, genus: int, out_circles: int) -> NormalFormDescriptor:
    cycles = P.cycles(sigma)            # ordered by smallest member
    p = conjugator(sigma, cycles)
    # list cycles in block order so that the descriptor is self-consistent
    by_block = sorted(cycles, key=lambda c: p[c[0]])
    return NormalFormDescriptor(tuple(by_block), genus, out_circles, p)


def random_descriptor(rng: random.Random, max_biwebs: int = 6, max_genus: int = 3,
                      max_circles: int = 4) -> NormalFormDescriptor:
    l = rng.randint(0, max_biwebs)
    lengths = []
    left = l
    while left:
        q = rng.randint(1, left)
        lengths.append(q)
        left -= q
    p = list(range(l))
    rng.shuffle(p)
    p = tuple(p)
    inv = P.inverse(p)
    cycles, start = [], 0
    for q in lengths:
        cycles.append(tuple(inv[start + i] for i in range(q)))
        start += q
    return NormalFormDescriptor(tuple(cycles), rng.randint(0, max_genus),
                                rng.randint(0, max_circles), p)


# -- bending -----------------------------------------------------------------------

Profile = tuple[Obj, Obj]


def _positions(n: Obj, bit: int) -> list[int]:
    return [j for j, b in enumerate(n) if b == bit]


def _perm_to(targets: list[int], n: Obj) -> Diagram:
    return permutation_diagram(tuple(targets), n)


def _copies(d: Diagram, k: int) -> Diagram:
    return tensor_all(*([d] * k))


PAIRING_C = compose_all(gen(MC), gen(EC))
PAIRING_W = compose_all(gen(MW), gen(EW))
COPAIRING_C = compose_all(gen(UC), gen(DC))
COPAIRING_W = compose_all(gen(UW), gen(DW))


def bend(d: Diagram) -> tuple[Diagram, Profile]:
    """Turn source circles into target circles and target bi-webs into source bi-webs.

    Source circles get a copairing, target bi-webs a singular pairing.  The
    result goes from (source bi-webs, target bi-webs) to (target circles,
    source circles).
    """
    n, m = d.dom, d.cod
    nb, nc = _positions(n, 1), _positions(n, 0)
    mb, mc = _positions(m, 1), _positions(m, 0)
    top = tensor_all(identity((1,) * len(nb)), _copies(COPAIRING_C, len(nc)), identity((1,) * len(mb)))
    x1 = top.cod
    p1 = list(nb) + [None] * (2 * len(nc)) + [len(n) + len(nc) + i for i in range(len(mb))]
    for c, pos in enumerate(nc):
        p1[len(nb) + 2 * c] = pos
        p1[len(nb) + 2 * c + 1] = len(n) + c
    extras = (0,) * len(nc) + (1,) * len(mb)
    middle = tensor_all(d, identity(extras))
    y = m + extras
    p2 = [0] * len(y)
    for c, pos in enumerate(mc):
        p2[pos] = c
    for i, pos in enumerate(mb):
        p2[pos] = len(mc) + len(nc) + 2 * i
    for c in range(len(nc)):
        p2[len(m) + c] = len(mc) + c
    for i in range(len(mb)):
        p2[len(m) + len(nc) + i] = len(mc) + len(nc) + 2 * i + 1
    bottom = tensor_all(identity((0,) * (len(mc) + len(nc))), _copies(PAIRING_W, len(mb)))
    bent = compose_all(top, _perm_to(p1, x1), middle, _perm_to(p2, y), bottom)
    return bent, (n, m)


def unbend(e: Diagram, profile: Profile) -> Diagram:
    """Inverse of ``bend`` for a diagram of the bent shape recorded in ``profile``."""
    n, m = profile
    nb, nc = _positions(n, 1), _positions(n, 0)
    mb, mc = _positions(m, 1), _positions(m, 0)
    want_dom = (1,) * (len(nb) + len(mb))
    want_cod = (0,) * (len(mc) + len(nc))
    if e.dom != want_dom or e.cod != want_cod:
        raise ValueError("diagram does not have the bent shape of the profile")
    top = tensor_all(identity(n), _copies(COPAIRING_W, len(mb)))
    x1 = top.cod
    q1 = [0] * len(x1)
    for i, pos in enumerate(nb):
        q1[pos] = i
    for c, pos in enumerate(nc):
        q1[pos] = len(nb) + len(mb) + c
    for i in range(len(mb)):
        q1[len(n) + 2 * i] = len(nb) + i
        q1[len(n) + 2 * i + 1] = len(nb) + len(mb) + len(nc) + i
    rest = (0,) * len(nc) + (1,) * len(mb)
    middle = tensor_all(e, identity(rest))
    y = e.cod + rest
    q2 = list(range(len(y)))
    for c in range(len(nc)):
        q2[len(mc) + c] = len(mc) + 2 * c
        q2[len(mc) + len(nc) + c] = len(mc) + 2 * c + 1
    pairs = tensor_all(identity((0,) * len(mc)), _copies(PAIRING_C, len(nc)), identity((1,) * len(mb)))
    z = pairs.cod
    q3 = list(mc) + list(mb)
    return compose_all(top, _perm_to(q1, x1), middle, _perm_to(q2, y), pairs, _perm_to(q3, z))


# -- normal forms -----------------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    scalar: RingPoly
    diagram: Diagram


def _assemble(d: Diagram, parts: list[tuple[tuple[int, ...], Diagram]]) -> Diagram:
    """P_in ; (component diagrams side by side) ; P_out."""
    n = len(d.dom)
    order_in = [j for bnd, _ in parts for j in bnd if j < n]
    order_out = [j - n for bnd, _ in parts for j in bnd if j >= n]
    p_in = [0] * n
    for slot, j in enumerate(order_in):
        p_in[j] = slot
    middle = tensor_all(*(sub for _, sub in parts)) if parts else identity(())
    p_out = list(order_out)
    return compose_all(permutation_diagram(tuple(p_in), d.dom), middle,
                       permutation_diagram(tuple(p_out), middle.cod))


def _frobenius_form(n: int, m: int, genus: int, bit: int) -> Diagram:
    """One kind of strand: multiply everything together, add handles, split."""
    mult, comult, unit, counit = (MC, DC, UC, EC) if bit == 0 else (MW, DW, UW, EW)
    slices = [(0, unit)] if n == 0 else [(0, mult)] * (n - 1)
    slices += [(0, comult), (0, mult)] * genus
    slices += [(0, counit)] if m == 0 else [(0, comult)] * (m - 1)
    return Diagram.from_slices((bit,) * n, slices)


def _grouping(n: Obj) -> P.Perm:
    """Send circles to the left and bi-webs to the right, keeping their order."""
    order = [j for j, b in enumerate(n) if b == 0] + [j for j, b in enumerate(n) if b == 1]
    sigma = [0] * len(n)
    for slot, j in enumerate(order):
        sigma[j] = slot
    return tuple(sigma)


@lru_cache(maxsize=None)
def _canonical_component(dom: Obj, cod: Obj, genus: int) -> Diagram:
    """Canonical connected representative for a boundary type and genus.

    Singular permutations are not part of the key: the local relations
    relate any two of them up to a unit.
    """
    kinds = set(dom + cod)
    if kinds != {0, 1}:
        bit = kinds.pop() if kinds else 0
        return _frobenius_form(len(dom), len(cod), genus, bit)
    c_in, w_in = dom.count(0), dom.count(1)
    c_out, w_out = cod.count(0), cod.count(1)
    slices = []
    if w_in:
        slices += [(c_in, MW)] * (w_in - 1) + [(c_in, ZS)]
    circles = c_in + (1 if w_in else 0)
    slices += [(0, UC)] if circles == 0 else [(0, MC)] * (circles - 1)
    slices += [(0, DC), (0, MC)] * genus
    outs = c_out + (1 if w_out else 0)
    slices += [(0, EC)] if outs == 0 else [(0, DC)] * (outs - 1)
    if w_out:
        slices += [(c_out, Z)] + [(c_out, DW)] * (w_out - 1)
    grouped_in = (0,) * c_in + (1,) * w_in
    core = Diagram.from_slices(grouped_in, slices)
    sort_out = _grouping(cod)
    return compose_all(permutation_diagram(_grouping(dom), dom), core,
                       permutation_diagram(P.inverse(sort_out), core.cod))


def _types(d: Diagram, boundary) -> tuple[Obj, Obj]:
    n = len(d.dom)
    types = d.dom + d.cod
    return (tuple(types[j] for j in boundary if j < n),
            tuple(types[j] for j in boundary if j >= n))


def nf_term(d: Diagram) -> Diagram:
    """The canonical representative of the class of ``d``, without scalar."""
    parts = []
    for comp in components(d):
        dom, cod = _types(d, comp.boundary)
        parts.append((comp.boundary, _canonical_component(dom, cod, comp.genus)))
    return _assemble(d, parts)


def resolve_scalar(d: Diagram, nf: Diagram, t: TwinAlgebraPresentation | None = None) -> RingPoly:
    """The unit s with eval(d) = s * eval(nf)."""
    t = t or universal_twin()
    md, mn = evaluate(d, t), evaluate(nf, t)
    if la.is_zero(mn):
        raise ScalarIndeterminate(md, mn)
    s = proportional_unit(md, mn)
    if s is None:
        raise NormalFormError("diagram is not a unit multiple of its normal form")
    return s


def nf_of(d: Diagram) -> NormalForm:
    nf = nf_term(d)
    return NormalForm(resolve_scalar(d, nf), nf)


def block_normal_form(d: Diagram) -> NormalForm:
    """Block normal form per component using the component's own singular permutation."""
    parts = []
    for comp, sub in split_components(d):
        bent, profile = bend(sub)
        sigma, _ = singular_permutation(bent)
        desc = descriptor_from_sigma(sigma, comp.genus, len(bent.cod))
        parts.append((comp.boundary, unbend(nf_build(desc), profile)))
    nf = _assemble(d, parts)
    return NormalForm(resolve_scalar(d, nf), nf)


# -- equivalence ----------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    kind: str                      # equal | equal-up-to-scalar | not-equal
    scalar: RingPoly | None = None  # s with first = s * second

    def __str__(self):
        if self.kind == "equal-up-to-scalar":
            return f"equal-up-to-scalar {self.scalar}"
        return self.kind


def _normalize_lincomb(lc: LinComb) -> LinComb:
    terms = []
    for c, d in lc.terms:
        nf = nf_of(d)
        terms.append((c * nf.scalar, nf.diagram))
    return LinComb(lc.dom, lc.cod, tuple(terms))


def _as_lincomb(x) -> LinComb:
    return x if isinstance(x, LinComb) else LinComb.of(x)


def equivalent(x, y) -> Verdict:
    """Compare two diagrams or linear combinations with the same boundary."""
    if (x.dom, x.cod) != (y.dom, y.cod):
        raise ValueError("morphisms have different source or target")
    if isinstance(x, Diagram) and isinstance(y, Diagram):
        if x == y:
            return Verdict("equal", ONE)
        if nf_term(x) != nf_term(y):
            return Verdict("not-equal")
        s = resolve_scalar(x, y)
        return Verdict("equal", ONE) if s == ONE else Verdict("equal-up-to-scalar", s)
    a, b = _normalize_lincomb(_as_lincomb(x)), _normalize_lincomb(_as_lincomb(y))
    ca = {d: c for c, d in a.terms}
    cb = {d: c for c, d in b.terms}
    if ca.keys() != cb.keys():
        return Verdict("not-equal")
    for u in UNITS:
        if all(ca[d] == u * cb[d] for d in ca):
            return Verdict("equal", ONE) if u == ONE else Verdict("equal-up-to-scalar", u)
    return Verdict("not-equal")
