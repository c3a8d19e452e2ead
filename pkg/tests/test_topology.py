import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from sing2cob import perm as P
from sing2cob.diagram import ALPHABET, Diagram, compose, permutation_diagram
from sing2cob.dsl import parse_diagram
from sing2cob.fuzz import random_diagram
from sing2cob.rules import rule_catalog
from sing2cob.topology import (components, cw_euler_characteristic, euler_characteristic,
                               euler_genus, invariants, singular_permutation, split_components)


def inv(text):
    return invariants(parse_diagram(text))


def test_component_examples():
    assert len(components(parse_diagram("uC | uC"))) == 2
    (c,) = components(parse_diagram("mC"))
    assert c.boundary == (0, 1, 2)
    cs = components(parse_diagram("(uC ; eC) | id:0"))
    assert len(cs) == 2 and sum(c.closed for c in cs) == 1


def test_genus_examples():
    assert euler_genus(parse_diagram("uC ; dC ; mC ; eC")) == [1]
    assert euler_characteristic(parse_diagram("uC ; dC ; mC ; eC")) == 0
    assert euler_genus(parse_diagram("id:0")) == [0]
    assert euler_genus(parse_diagram("dC ; mC")) == [1]
    assert euler_characteristic(parse_diagram("dC ; mC")) == -2
    assert euler_genus(parse_diagram("dC ; mC ; dC ; mC ; z ; dW ; mW ; eW")) == [3]


@pytest.mark.parametrize("text,cycles,loops", [
    ("id:1", "(1 2)", 0),
    ("z", "()", 0),
    ("z ; zs", "()", 1),
    ("mW", "(1 2 3)", 0),
    ("dW", "(1 3 2)", 0),
    ("sw:11", "(1 4)(2 3)", 0),
    ("uW ; eW", "()", 1),
    ("sw:01", "(1 2)", 0),
])
def test_singular_permutation_examples(text, cycles, loops):
    i = inv(text)
    assert P.to_cycle_str(i.sigma) == cycles
    assert i.singular_circles == loops


def test_biweb_numbering_source_first():
    # a bi-web only in the target comes after all source bi-webs
    i = inv("id:1 | uW")
    assert i.sigma == (1, 0, 2)    # the new unit's arc returns to its own bi-web


def test_invariants_report():
    d = inv("dC ; mC").to_dict()
    assert d == {"components": [{"boundary": [0, 1], "genus": 1, "biwebs": [], "closed": False}],
                 "sigma": "()", "singular_circles": 0}


def test_chi_additivity():
    rng = random.Random(3)
    for _ in range(200):
        d1 = random_diagram(rng, 6, 4)
        d2 = random_diagram(rng, 6, 4, dom=d1.cod)
        both = compose(d1, d2)
        assert euler_characteristic(both) == euler_characteristic(d1) + euler_characteristic(d2)
        assert cw_euler_characteristic(both) == euler_characteristic(both)


def _all_short_diagrams(max_len=2, depth=3):
    for n in range(max_len + 1):
        for dom in itertools.product((0, 1), repeat=n):
            frontier = [(dom, ())]
            for _ in range(depth):
                nxt = []
                for cur, slices in frontier:
                    for g in ALPHABET:
                        for pos in range(len(cur) - len(g.dom) + 1):
                            if cur[pos:pos + len(g.dom)] == g.dom:
                                new = cur[:pos] + g.cod + cur[pos + len(g.dom):]
                                nxt.append((new, slices + ((pos, g),)))
                frontier = nxt
                for _, slices in frontier:
                    yield Diagram.from_slices(dom, slices)


def test_cw_oracle_exhaustive():
    count = 0
    for d in _all_short_diagrams():
        assert cw_euler_characteristic(d) == euler_characteristic(d), str(d)
        count += 1
    assert count > 10000


def test_cw_oracle_random():
    rng = random.Random(5)
    for _ in range(500):
        d = random_diagram(rng, 10, 5)
        assert cw_euler_characteristic(d) == euler_characteristic(d), str(d)


def test_genus_nonnegative_integer():
    rng = random.Random(9)
    for _ in range(300):
        for c in components(random_diagram(rng, 10, 4)):
            assert c.genus >= 0


def _cylinder_sigma(pi, n):
    """Each source bi-web pairs with the target bi-web its strand is carried to."""
    src = [j for j, b in enumerate(n) if b]
    l = len(src)
    cod_pos = {j: pi[j] for j in src}
    tgt_order = sorted(src, key=lambda j: cod_pos[j])
    sigma = [0] * (2 * l)
    for k, j in enumerate(src):
        t = l + tgt_order.index(j)
        sigma[k], sigma[t] = t, k
    return tuple(sigma)


@settings(max_examples=200, deadline=None)
@given(st.permutations(range(5)), st.lists(st.integers(0, 1), min_size=5, max_size=5))
def test_permutation_diagram_sigma(pi, bits):
    d = permutation_diagram(tuple(pi), bits)
    sigma, loops = singular_permutation(d)
    assert loops == 0
    assert sigma == _cylinder_sigma(tuple(pi), bits)


def _key(d):
    i = invariants(d)
    return i.sigma, sorted((c.boundary, c.genus) for c in i.components)


def test_sigma_invariant_under_scalar_one_rules():
    for rule in rule_catalog():
        same = _key(rule.lhs) == _key(rule.rhs)
        if rule.scalar == 1:
            assert same, rule.name


def test_sigma_changing_rules_are_scalar_carrying():
    changed = {r.name for r in rule_catalog() if _key(r.lhs) != _key(r.rhs)}
    assert changed == {r.name for r in rule_catalog() if r.scalar != 1
                       and invariants(r.lhs).sigma != invariants(r.rhs).sigma}
    assert "local-cozip-zip" in changed


def test_genus_invariant_under_all_rules():
    for rule in rule_catalog():
        g1 = sorted(c.genus for c in components(rule.lhs) if not c.closed)
        g2 = sorted(c.genus for c in components(rule.rhs) if not c.closed)
        assert g1 == g2, rule.name


def test_split_components_reassemble():
    rng = random.Random(13)
    for _ in range(100):
        d = random_diagram(rng, 8, 4)
        parts = split_components(d)
        assert len(parts) == len(components(d))
        total = sum(euler_characteristic(sub) for _, sub in parts)
        assert total == euler_characteristic(d)
        for c, sub in parts:
            assert [x.genus for x in components(sub)] == [c.genus]
