import random

import pytest
from hypothesis import given, settings, strategies as st

from sing2cob.diagram import (DC, EC, IDC, MC, MW, UC, UW, Z, ZS, Diagram, DiagramTypeError,
                              Layer, LinComb, act, compose, gen, identity, is_valid,
                              permutation_diagram, swap, tensor, validate)
from sing2cob.dsl import parse_diagram
from sing2cob.fuzz import random_diagram
from sing2cob.ring import I, ONE
from sing2cob.topology import singular_permutation


def test_compose_with_identity():
    d = gen(MC)
    assert compose(identity((0, 0)), d) == d
    assert compose(d, identity((0,))) == d
    assert compose(identity((0, 0)), d).layers == d.layers


def test_compose_zip_cozip():
    d = compose(gen(Z), gen(ZS))
    assert (d.dom, d.cod, len(d.layers)) == ((0,), (0,), 2)


def test_sphere():
    d = compose(gen(UC), gen(EC))
    assert (d.dom, d.cod, d.size) == ((), (), 2)


def test_compose_mismatch_names_strand():
    with pytest.raises(DiagramTypeError) as err:
        compose(gen(DC), gen(MW))
    assert err.value.interface == 0
    assert err.value.expected == (1, 1) and err.value.actual == (0, 0)


def test_tensor_shapes():
    assert tensor(identity((0,)), identity((1,))) == identity((0, 1))
    d = tensor(gen(UC), gen(UW))
    assert (d.dom, d.cod) == ((), (0, 1))
    d = tensor(gen(MW), identity((1,)))
    assert (d.dom, d.cod) == ((1, 1, 1), (1, 1))


def test_tensor_pads_second_below():
    d = tensor(compose(gen(MC), gen(DC)), gen(Z))
    assert len(d.layers) == 2
    assert d.layers[1].cells[0] == DC
    assert [g.kind for g in d.layers[0].cells] == ["mC", "z"]
    assert d.layers[1].cells[1].is_identity


def test_validate():
    validate(parse_diagram("dC ; mC ; dC ; mC"))
    validate(identity((0, 1, 1)))
    bad = Diagram((0, 0), (0,), (Layer((MC,)), Layer((MC,))))
    with pytest.raises(DiagramTypeError) as err:
        validate(bad)
    assert err.value.interface == 1
    assert not is_valid(bad)
    with pytest.raises(DiagramTypeError):
        validate(Diagram((0,), (1,), (Layer((IDC,)),)))


def test_permutation_diagram_examples():
    assert permutation_diagram((0, 1, 2), (0, 1, 0)) == identity((0, 1, 0))
    d = permutation_diagram((1, 0), (0, 1))
    assert d.slices == ((0, swap(0, 1)),)
    # (12)(354), zero-based: 0<->1, 2->4->3->2
    sigma = (1, 0, 4, 2, 3)
    n = (0, 1, 1, 0, 1)
    d = permutation_diagram(sigma, n)
    assert d.dom == n and d.cod == act(sigma, n)
    with pytest.raises(ValueError):
        permutation_diagram((1, 0), (0, 1, 1))


def _perm_of_swaps(d):
    """Follow each strand through a swap-only diagram."""
    where = list(range(len(d.dom)))
    for pos, g in d.slices:
        for k, w in enumerate(where):
            if w == pos:
                where[k] = pos + 1
            elif w == pos + 1:
                where[k] = pos
    return tuple(where)


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(6)), st.lists(st.integers(0, 1), min_size=6, max_size=6))
def test_permutation_diagram_realizes_sigma(sigma, bits):
    sigma = tuple(sigma)
    d = permutation_diagram(sigma, bits)
    assert all(g.is_swap for _, g in d.slices)
    assert _perm_of_swaps(d) == sigma
    assert d.cod == act(sigma, tuple(bits))


def test_permutation_diagram_singular_permutation():
    # crossing two bi-web strands swaps which arcs are joined
    assert singular_permutation(identity((1,)))[0] == (1, 0)
    d = permutation_diagram((1, 0), (1, 1))
    assert singular_permutation(d) == ((3, 2, 1, 0), 0)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_sliding_is_idempotent_and_equal(seed):
    d = random_diagram(random.Random(seed), 8, 4)
    assert d.slid() == d
    assert d.slid().slid().layers == d.slid().layers
    assert all(sum(not g.is_identity for g in lay.cells) == 1 for lay in d.slid().layers)


def test_tensor_then_compose_interfaces():
    d = tensor(gen(MC), gen(MC))
    assert d.size == 2 and len(d.interfaces) == 3
    assert d.interfaces == ((0, 0, 0, 0), (0, 0, 0), (0, 0))


def test_lincomb_merges_and_drops_zero():
    d = gen(Z)
    lc = LinComb((0,), (1,), ((ONE, d), (I, d)))
    assert lc.terms == ((ONE + I, d),)
    assert (lc - lc).terms == ()
    with pytest.raises(DiagramTypeError):
        LinComb((0,), (0,), ((ONE, d),))


def test_layer_needs_cells():
    with pytest.raises(ValueError):
        Layer(())
