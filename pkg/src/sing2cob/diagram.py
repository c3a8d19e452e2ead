"""Terms for singular 2-cobordisms.

Objects are tuples over {0, 1} (0 = circle, 1 = bi-web).  A diagram is a list
of layers applied top to bottom; each layer is a row of generator cells
placed side by side.  Two diagrams are equal when their *sliding forms* agree:
the sliding form splits every layer into single-cell slices, left cell first,
and drops identity cells.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import perm as P
from .ring import ONE, RingPoly

Obj = tuple[int, ...]


def obj_str(n: Obj) -> str:
    return "".join(map(str, n)) or "-"


def parse_obj(s: str) -> Obj:
    if s == "-":
        return ()
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"bad object {s!r}")
    return tuple(int(ch) for ch in s)


@dataclass(frozen=True)
class Gen:
    kind: str
    dom: Obj
    cod: Obj

    @property
    def is_identity(self) -> bool:
        return self.kind == "id"

    @property
    def is_swap(self) -> bool:
        return self.kind == "sw"

    def __str__(self):
        if self.kind == "id":
            return f"id:{obj_str(self.dom)}"
        if self.kind == "sw":
            return f"sw:{self.dom[0]}{self.dom[1]}"
        return self.kind

    __repr__ = __str__


MC = Gen("mC", (0, 0), (0,))
DC = Gen("dC", (0,), (0, 0))
UC = Gen("uC", (), (0,))
EC = Gen("eC", (0,), ())
MW = Gen("mW", (1, 1), (1,))
DW = Gen("dW", (1,), (1, 1))
UW = Gen("uW", (), (1,))
EW = Gen("eW", (1,), ())
Z = Gen("z", (0,), (1,))
ZS = Gen("zs", (1,), (0,))
IDC = Gen("id", (0,), (0,))
IDW = Gen("id", (1,), (1,))

GENERATORS = (MC, DC, UC, EC, MW, DW, UW, EW, Z, ZS)
BY_NAME = {g.kind: g for g in GENERATORS}


def swap(x: int, y: int) -> Gen:
    return Gen("sw", (x, y), (y, x))


SWAPS = tuple(swap(x, y) for x in (0, 1) for y in (0, 1))
ALPHABET = GENERATORS + SWAPS


def id_cell(bit: int) -> Gen:
    return IDW if bit else IDC


class DiagramTypeError(TypeError):
    """Layer interfaces do not match."""

    def __init__(self, msg: str, interface: int | None = None, expected=None, actual=None):
        super().__init__(msg)
        self.interface = interface
        self.expected = expected
        self.actual = actual


@dataclass(frozen=True)
class Layer:
    cells: tuple[Gen, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))
        if not self.cells:
            raise ValueError("a layer needs at least one cell")

    @property
    def dom(self) -> Obj:
        return tuple(b for g in self.cells for b in g.dom)

    @property
    def cod(self) -> Obj:
        return tuple(b for g in self.cells for b in g.cod)

    def __str__(self):
        return " | ".join(map(str, self.cells))


Slice = tuple[int, Gen]  # (offset in the current interface, non-identity cell)


def _identity_cells(n: Obj) -> tuple[Gen, ...]:
    return tuple(id_cell(b) for b in n)


def _apply_slice(n: Obj, pos: int, g: Gen) -> Obj:
    return n[:pos] + g.cod + n[pos + len(g.dom):]


@dataclass(frozen=True, eq=False)
class Diagram:
    dom: Obj
    cod: Obj
    layers: tuple[Layer, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "layers", tuple(
            lay if isinstance(lay, Layer) else Layer(lay) for lay in self.layers))

    # -- sliding form -------------------------------------------------------
    @cached_property
    def slices(self) -> tuple[Slice, ...]:
        out = []
        for lay in self.layers:
            pos = 0
            for g in lay.cells:
                if not g.is_identity:
                    out.append((pos, g))
                pos += len(g.cod)
        return tuple(out)

    @cached_property
    def interfaces(self) -> tuple[Obj, ...]:
        """Objects between consecutive slices: ``interfaces[0] == dom``."""
        out = [self.dom]
        cur = self.dom
        for pos, g in self.slices:
            if cur[pos:pos + len(g.dom)] != g.dom:
                raise DiagramTypeError(f"slice {pos}:{g} does not fit {obj_str(cur)}")
            cur = _apply_slice(cur, pos, g)
            out.append(cur)
        return tuple(out)

    @classmethod
    def from_slices(cls, dom: Obj, slices: Iterable[Slice]) -> "Diagram":
        dom = tuple(dom)
        cur = dom
        layers = []
        for pos, g in slices:
            if pos < 0 or cur[pos:pos + len(g.dom)] != g.dom:
                raise DiagramTypeError(
                    f"{g} at wire {pos} does not fit interface {obj_str(cur)}",
                    len(layers), g.dom, cur[pos:pos + len(g.dom)])
            layers.append(Layer(_identity_cells(cur[:pos]) + (g,)
                                + _identity_cells(cur[pos + len(g.dom):])))
            cur = _apply_slice(cur, pos, g)
        return cls(dom, cur, tuple(layers))

    def slid(self) -> "Diagram":
        return Diagram.from_slices(self.dom, self.slices)

    @property
    def size(self) -> int:
        return len(self.slices)

    def key(self):
        return (self.dom, self.cod, self.slices)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        from .dsl import print_diagram
        return print_diagram(self)

    def __repr__(self):
        return f"Diagram({self!s})"

    # -- combinators ----------------------------------------------------------
    def then(self, other: "Diagram") -> "Diagram":
        return compose(self, other)

    def __rshift__(self, other: "Diagram") -> "Diagram":
        return compose(self, other)

    def __matmul__(self, other: "Diagram") -> "Diagram":
        return tensor(self, other)


def identity(n: Sequence[int]) -> Diagram:
    n = tuple(n)
    return Diagram(n, n, ())


def gen(g: Gen) -> Diagram:
    return Diagram(g.dom, g.cod, (Layer((g,)),))


def validate(d: Diagram) -> None:
    """Raise DiagramTypeError at the first interface mismatch."""
    cur = d.dom
    for k, lay in enumerate(d.layers):
        if lay.dom != cur:
            raise DiagramTypeError(
                f"interface {k}: layer expects {obj_str(lay.dom)}, got {obj_str(cur)}",
                k, lay.dom, cur)
        cur = lay.cod
    if cur != d.cod:
        n = len(d.layers)
        raise DiagramTypeError(
            f"interface {n}: declared codomain {obj_str(d.cod)}, got {obj_str(cur)}",
            n, d.cod, cur)


def is_valid(d: Diagram) -> bool:
    try:
        validate(d)
    except DiagramTypeError:
        return False
    return True


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    """``d1`` on top of ``d2``."""
    if d1.cod != d2.dom:
        bad = next((k for k, (x, y) in enumerate(zip(d1.cod, d2.dom)) if x != y),
                   min(len(d1.cod), len(d2.dom)))
        raise DiagramTypeError(
            f"cannot compose: codomain {obj_str(d1.cod)} vs domain {obj_str(d2.dom)} "
            f"(first difference at strand {bad})", bad, d2.dom, d1.cod)
    return Diagram(d1.dom, d2.cod, d1.layers + d2.layers)


def compose_all(*ds: Diagram) -> Diagram:
    out = ds[0]
    for d in ds[1:]:
        out = compose(out, d)
    return out


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Side by side; the shorter layer list is padded with identity layers at the end."""
    layers = []
    c1, c2 = d1.dom, d2.dom
    for k in range(max(len(d1.layers), len(d2.layers))):
        if k < len(d1.layers):
            left = d1.layers[k].cells
            c1 = d1.layers[k].cod
        else:
            left = _identity_cells(c1)
        if k < len(d2.layers):
            right = d2.layers[k].cells
            c2 = d2.layers[k].cod
        else:
            right = _identity_cells(c2)
        layers.append(Layer(left + right))
    return Diagram(d1.dom + d2.dom, d1.cod + d2.cod, tuple(layers))


def tensor_all(*ds: Diagram) -> Diagram:
    out = identity(())
    for d in ds:
        out = tensor(out, d)
    return out


def act(sigma: P.Perm, n: Obj) -> Obj:
    """``sigma * n``: the strand at position j moves to position sigma[j]."""
    inv = P.inverse(sigma)
    return tuple(n[inv[k]] for k in range(len(n)))


def permutation_diagram(sigma: Sequence[int], n: Sequence[int]) -> Diagram:
    """Diagram n -> sigma*n made of adjacent swaps (insertion sort, left to right)."""
    sigma, n = tuple(sigma), tuple(n)
    if len(sigma) != len(n) or not P.is_perm(sigma):
        raise ValueError(f"permutation of size {len(sigma)} does not act on {obj_str(n)}")
    cur = n
    slices = []
    for k in P.adjacent_transpositions(sigma):
        slices.append((k, swap(cur[k], cur[k + 1])))
        cur = cur[:k] + (cur[k + 1], cur[k]) + cur[k + 2:]
    return Diagram.from_slices(n, slices)


# -- linear combinations -----------------------------------------------------

@dataclass(frozen=True)
class LinComb:
    dom: Obj
    cod: Obj
    terms: tuple[tuple[RingPoly, Diagram], ...] = field(default=())

    def __post_init__(self):
        merged: dict[Diagram, RingPoly] = {}
        order = []
        for c, d in self.terms:
            c = RingPoly.coerce(c)
            if d.dom != self.dom or d.cod != self.cod:
                raise DiagramTypeError(
                    f"term {obj_str(d.dom)}->{obj_str(d.cod)} in a combination "
                    f"{obj_str(self.dom)}->{obj_str(self.cod)}")
            if d in merged:
                merged[d] = merged[d] + c
            else:
                merged[d] = c
                order.append(d)
        object.__setattr__(self, "dom", tuple(self.dom))
        object.__setattr__(self, "cod", tuple(self.cod))
        object.__setattr__(self, "terms", tuple((merged[d], d) for d in order if merged[d]))

    @classmethod
    def of(cls, d: Diagram, coeff=ONE) -> "LinComb":
        return cls(d.dom, d.cod, ((RingPoly.coerce(coeff), d),))

    def __add__(self, other: "LinComb") -> "LinComb":
        return LinComb(self.dom, self.cod, self.terms + other.terms)

    def __neg__(self) -> "LinComb":
        return LinComb(self.dom, self.cod, tuple((-c, d) for c, d in self.terms))

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, s) -> "LinComb":
        s = RingPoly.coerce(s)
        return LinComb(self.dom, self.cod, tuple((s * c, d) for c, d in self.terms))

    def __str__(self):
        from .dsl import print_lincomb
        return print_lincomb(self)
