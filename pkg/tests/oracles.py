"""Independent reference computations used by the tests."""
from __future__ import annotations

import random

import sympy

from sing2cob import linalg as la
from sing2cob.diagram import id_cell
from sing2cob.evaluate import generator_matrix
from sing2cob.ring import RingPoly

a_sym, h_sym = sympy.symbols("a h")


def to_sympy(p: RingPoly):
    return sympy.expand(sum((c.re + sympy.I * c.im) * a_sym**i * h_sym**j
                            for (i, j), c in p.terms.items()))


def dense_eval(d, t):
    """Layer by layer: Kronecker product of cell matrices, then matrix product."""
    ranks = (t.C.rank, t.W.rank)
    dim = 1
    for b in d.dom:
        dim *= ranks[b]
    m = la.identity(dim)
    for layer in d.layers:
        cells = [generator_matrix(g if not g.is_identity else id_cell(g.dom[0]), t)
                 for g in layer.cells]
        m = la.matmul(la.kron_all(*cells), m)
    return m


def random_poly(rng: random.Random, terms: int = 3, deg: int = 2, coeff: int = 3) -> RingPoly:
    out = RingPoly()
    for _ in range(rng.randint(0, terms)):
        c = (rng.randint(-coeff, coeff), rng.randint(-coeff, coeff))
        out = out + RingPoly({(rng.randint(0, deg), rng.randint(0, deg)): c})
    return out
