"""Random diagrams and the seeded soundness harness."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import ALPHABET, Diagram, Obj
from .normal_form import NormalFormError, nf_of
from .rules import random_walk
from .ring import ONE
from .topology import components, invariants


def random_object(rng: random.Random, max_len: int = 3) -> Obj:
    return tuple(rng.randint(0, 1) for _ in range(rng.randint(0, max_len)))


def random_diagram(rng: random.Random, max_cells: int = 10, max_width: int = 4,
                   dom: Obj | None = None, alphabet=ALPHABET) -> Diagram:
    cur = random_object(rng) if dom is None else tuple(dom)
    start = cur
    slices = []
    for _ in range(rng.randint(1, max_cells)):
        options = [(pos, g) for g in alphabet
                   for pos in range(len(cur) - len(g.dom) + 1)
                   if cur[pos:pos + len(g.dom)] == g.dom
                   and len(cur) - len(g.dom) + len(g.cod) <= max_width]
        if not options:
            break
        pos, g = rng.choice(options)
        slices.append((pos, g))
        cur = cur[:pos] + g.cod + cur[pos + len(g.dom):]
    return Diagram.from_slices(start, slices)


def has_nonzero_value(d: Diagram) -> bool:
    """False when a closed component of even genus forces the evaluation to vanish."""
    return not any(c.closed and c.genus % 2 == 0 for c in components(d))


def fuzz_diagram(rng: random.Random, max_cells: int = 10, max_width: int = 4) -> Diagram:
    while True:
        d = random_diagram(rng, max_cells, max_width)
        if d.size and has_nonzero_value(d):
            return d


def _inv_key(d: Diagram):
    inv = invariants(d)
    return inv.sigma, tuple((c.boundary, c.genus) for c in inv.components)


@dataclass
class FuzzResult:
    case: int
    diagram: str
    rewritten: str
    scalar: str
    steps: int
    scalar_one: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"case": self.case, "ok": self.ok, "diagram": self.diagram,
                "rewritten": self.rewritten, "scalar": self.scalar, "steps": self.steps,
                "failures": list(self.failures)}


def fuzz_case(case: int, seed: int, steps: int) -> FuzzResult:
    rng = random.Random(f"{seed}:{case}")
    d = fuzz_diagram(rng)
    d2, trail = random_walk(d, steps, rng.randrange(2**32))
    s = ONE
    for st in trail:
        s = s * st.scalar
    scalar_one = all(st.scalar == ONE for st in trail)
    res = FuzzResult(case, str(d), str(d2), str(s), len(trail), scalar_one)
    if scalar_one and _inv_key(d) != _inv_key(d2):
        res.failures.append("invariants changed along a scalar-1 trajectory")
    try:
        n1, n2 = nf_of(d), nf_of(d2)
    except NormalFormError as exc:
        res.failures.append(f"normal form: {exc}")
        return res
    if n1.diagram != n2.diagram:
        res.failures.append("normal-form terms differ")
    if n2.scalar != s * n1.scalar:
        res.failures.append(f"scalar mismatch: {n2.scalar} != {s} * {n1.scalar}")
    return res


def run_fuzz(seed: int = 0, steps: int = 20, count: int = 200) -> list[FuzzResult]:
    return [fuzz_case(k, seed, steps) for k in range(count)]
