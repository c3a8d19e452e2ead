"""Topological invariants of diagrams.

Every diagram is read as a port graph: strands between slices are wires,
non-identity cells are nodes (swaps only reorder wires).  Bi-web wires carry
two singular arcs, one running down and one running up, and each W-type cell
reconnects the arcs arriving at it according to a fixed routing table.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import perm as P
from .diagram import Diagram, Gen

# arc label: (wire id, 'd' | 'u') = the arc segment running down/up along that wire

# Euler characteristic of each cell, by kind
EULER_CONTRIBUTION = {
    "uC": 1, "eC": 1, "uW": 1, "eW": 1,
    "mC": -1, "dC": -1, "mW": -1, "dW": -1,
    "z": 0, "zs": 0, "sw": 0, "id": 0,
}


class TopologyError(RuntimeError):
    """A diagram produced a surface with impossible invariants."""


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass
class CellNode:
    index: int           # slice index
    gen: Gen
    ins: tuple[int, ...]   # wire ids, left to right
    outs: tuple[int, ...]


@dataclass
class PortGraph:
    dom_wires: tuple[int, ...]
    cod_wires: tuple[int, ...]
    wire_type: dict[int, int]
    cells: list[CellNode]
    producer: dict[int, int] = field(default_factory=dict)   # wire -> cell index
    consumer: dict[int, int] = field(default_factory=dict)


def port_graph(d: Diagram) -> PortGraph:
    cur = list(range(len(d.dom)))
    wire_type = {w: b for w, b in zip(cur, d.dom)}
    next_id = len(cur)
    cells = []
    pg = PortGraph(tuple(cur), (), wire_type, cells)
    for k, (pos, g) in enumerate(d.slices):
        ins = tuple(cur[pos:pos + len(g.dom)])
        if g.is_swap:
            cur[pos], cur[pos + 1] = cur[pos + 1], cur[pos]
            continue
        outs = tuple(range(next_id, next_id + len(g.cod)))
        next_id += len(g.cod)
        for w, b in zip(outs, g.cod):
            wire_type[w] = b
        node = CellNode(k, g, ins, outs)
        for w in ins:
            pg.consumer[w] = len(cells)
        for w in outs:
            pg.producer[w] = len(cells)
        cells.append(node)
        cur[pos:pos + len(g.dom)] = outs
    pg.cod_wires = tuple(cur)
    return pg


# -- components and genus ------------------------------------------------------

@dataclass(frozen=True)
class Component:
    boundary: tuple[int, ...]      # boundary strand indices: source 0.., then target
    genus: int
    biwebs: tuple[int, ...]        # subset of ``boundary`` that are bi-webs
    cells: tuple[int, ...]         # slice indices of the component's cells
    euler: int

    @property
    def closed(self) -> bool:
        return not self.boundary


def _boundary_index(pg: PortGraph) -> dict[int, list[int]]:
    """wire id -> boundary strand indices it touches (a wire may be both source and target)."""
    out: dict[int, list[int]] = {}
    for j, w in enumerate(pg.dom_wires):
        out.setdefault(w, []).append(j)
    n = len(pg.dom_wires)
    for j, w in enumerate(pg.cod_wires):
        out.setdefault(w, []).append(n + j)
    return out


def _connectivity(pg: PortGraph) -> _UnionFind:
    uf = _UnionFind()
    for w in pg.wire_type:
        uf.add(("w", w))
    for ci, node in enumerate(pg.cells):
        uf.add(("c", ci))
        for w in node.ins + node.outs:
            uf.union(("c", ci), ("w", w))
    return uf


def components(d: Diagram) -> list[Component]:
    """Connected components in canonical order (smallest source index, then target; closed last)."""
    return [c for c, _ in _components_with_roots(d)[0]]


def _components_with_roots(d: Diagram):
    pg = port_graph(d)
    uf = _connectivity(pg)
    bidx = _boundary_index(pg)
    dom_len = len(d.dom)
    groups: dict = {}
    for w, idxs in bidx.items():
        groups.setdefault(uf.find(("w", w)), {"b": [], "c": []})["b"].extend(idxs)
    for ci in range(len(pg.cells)):
        groups.setdefault(uf.find(("c", ci)), {"b": [], "c": []})["c"].append(ci)
    types = d.dom + d.cod
    out = []
    for root, grp in groups.items():
        boundary = tuple(sorted(grp["b"]))
        chi = sum(EULER_CONTRIBUTION[pg.cells[ci].gen.kind] for ci in grp["c"])
        twice_g = 2 - chi - len(boundary)
        if twice_g < 0 or twice_g % 2:
            raise TopologyError(f"component with chi={chi}, b={len(boundary)} has no valid genus")
        out.append((Component(
            boundary=boundary,
            genus=twice_g // 2,
            biwebs=tuple(j for j in boundary if types[j] == 1),
            cells=tuple(sorted(pg.cells[ci].index for ci in grp["c"])),
            euler=chi,
        ), root))
    out.sort(key=lambda cr: _component_key(cr[0], dom_len))
    return out, pg, uf


def split_components(d: Diagram) -> list[tuple[Component, Diagram]]:
    """Each component with its own sub-diagram.

    Cells of other components are dropped and swaps crossing between
    components disappear, so the sub-diagram's boundary keeps the component's
    strands in their left-to-right order.
    """
    comps, pg, uf = _components_with_roots(d)
    cell_of_slice = {node.index: ci for ci, node in enumerate(pg.cells)}
    out = []
    for comp, root in comps:
        mine = [uf.find(("w", w)) == root for w in pg.dom_wires]
        slices = []
        for k, (pos, g) in enumerate(d.slices):
            width = len(g.dom)
            local = sum(mine[:pos])
            if g.is_swap:
                a, b = mine[pos], mine[pos + 1]
                if a and b:
                    slices.append((local, g))
                mine[pos], mine[pos + 1] = b, a
                continue
            inside = uf.find(("c", cell_of_slice[k])) == root
            if inside:
                slices.append((local, g))
            mine[pos:pos + width] = [inside] * len(g.cod)
        sub_dom = tuple(b for j, b in enumerate(d.dom) if j in comp.boundary)
        out.append((comp, Diagram.from_slices(sub_dom, slices)))
    return out


def _component_key(c: Component, dom_len: int):
    src = [j for j in c.boundary if j < dom_len]
    tgt = [j for j in c.boundary if j >= dom_len]
    if src:
        return (0, src[0], tgt[0] if tgt else -1, c.cells)
    if tgt:
        return (1, tgt[0], 0, c.cells)
    return (2, c.cells[0] if c.cells else 0, 0, c.cells)


def euler_characteristic(d: Diagram) -> int:
    """Total Euler characteristic from the per-cell contribution table."""
    return sum(EULER_CONTRIBUTION[g.kind] for _, g in d.slices)


def euler_genus(d: Diagram) -> list[int]:
    return [c.genus for c in components(d)]


# -- singular arcs ---------------------------------------------------------------

def _arc_routing(node: CellNode) -> list[tuple[tuple[int, str], tuple[int, str]]]:
    """Pairs (arriving arc, departing arc) inside one cell."""
    def out(w, is_input):       # arc arriving at the cell from wire w
        return (w, "d") if is_input else (w, "u")

    def inn(w, is_input):       # arc leaving the cell along wire w
        return (w, "u") if is_input else (w, "d")

    kind = node.gen.kind
    if kind == "mW":
        i1, i2 = node.ins
        (o,) = node.outs
        return [(out(i1, 1), inn(o, 0)), (out(o, 0), inn(i2, 1)), (out(i2, 1), inn(i1, 1))]
    if kind == "dW":
        (i,) = node.ins
        o2, o3 = node.outs
        return [(out(i, 1), inn(o2, 0)), (out(o2, 0), inn(o3, 0)), (out(o3, 0), inn(i, 1))]
    if kind in ("z", "uW"):
        (o,) = node.outs
        return [(out(o, 0), inn(o, 0))]
    if kind in ("zs", "eW"):
        (i,) = node.ins
        return [(out(i, 1), inn(i, 1))]
    return []


def arc_successors(pg: PortGraph) -> dict[tuple[int, str], tuple[int, str]]:
    succ = {}
    for node in pg.cells:
        for a, b in _arc_routing(node):
            succ[a] = b
    return succ


def singular_permutation(d: Diagram) -> tuple[P.Perm, int]:
    """(sigma on the boundary bi-webs, number of closed singular circles).

    Bi-webs are numbered source first, then target, left to right.  An arc
    leaves a source bi-web running down and a target bi-web running up;
    ``sigma[j] = k`` when the arc arriving at bi-web ``j`` started at bi-web ``k``.
    """
    pg = port_graph(d)
    succ = arc_successors(pg)
    types = d.dom + d.cod
    n = len(d.dom)
    biweb_of = {}
    outlets = []
    for j, b in enumerate(types):
        if b != 1:
            continue
        k = len(outlets)
        if j < n:
            w = pg.dom_wires[j]
            outlets.append((w, "d"))
            biweb_of[(w, "u")] = k   # inlet of a source bi-web
        else:
            w = pg.cod_wires[j - n]
            outlets.append((w, "u"))
            biweb_of[(w, "d")] = k
    reached = []
    used = set()
    for start in outlets:
        label = start
        used.add(label)
        while label in succ:
            label = succ[label]
            used.add(label)
        reached.append(biweb_of[label])
    # reached[k] = bi-web where the arc from k ends; sigma maps the end back to its start
    sigma = P.inverse(tuple(reached)) if reached else ()
    loops = 0
    for label in succ:
        if label in used:
            continue
        loops += 1
        while label not in used:
            used.add(label)
            label = succ[label]
    return sigma, loops


@dataclass(frozen=True)
class Invariants:
    components: tuple[Component, ...]
    sigma: P.Perm
    singular_circles: int

    def to_dict(self) -> dict:
        return {
            "components": [
                {"boundary": list(c.boundary), "genus": c.genus,
                 "biwebs": list(c.biwebs), "closed": c.closed}
                for c in self.components
            ],
            "sigma": P.to_cycle_str(self.sigma),
            "singular_circles": self.singular_circles,
        }


def invariants(d: Diagram) -> Invariants:
    sigma, loops = singular_permutation(d)
    return Invariants(tuple(components(d)), sigma, loops)


# -- independent cell-complex count ------------------------------------------------

def cw_euler_characteristic(d: Diagram) -> int:
    """V - E + F of an explicit cell structure on the surface.

    Each strand at each interface is a circle (one vertex and edge) or a
    bi-web (two vertices and edges).  Between interfaces every piece is a
    sphere with holes, cut open by seams joining its boundary circles and
    further cut by its singular arcs.
    """
    def ring_cells(bit):
        return 2 if bit else 1

    V = E = F = 0
    for cur in d.interfaces:
        for b in cur:
            V += ring_cells(b)
            E += ring_cells(b)
    pg = port_graph(d)
    node_by_slice = {node.index: node for node in pg.cells}

    def piece(n_circles, chords):
        nonlocal E, F
        E += (n_circles - 1) + chords
        F += 1 + chords

    for k, ((pos, g), cur) in enumerate(zip(d.slices, d.interfaces)):
        for j, b in enumerate(cur):
            if pos <= j < pos + len(g.dom):
                continue
            piece(2, 2 if b else 0)          # straight cylinder
        if g.is_swap:
            for b in g.dom:
                piece(2, 2 if b else 0)
            continue
        node = node_by_slice[k]
        piece(len(g.dom) + len(g.cod), len(_arc_routing(node)))
    return V - E + F
