import random

import pytest

from sing2cob.diagram import LinComb, identity
from sing2cob.dsl import DslError, parse, parse_diagram, print_diagram, print_lincomb
from sing2cob.fuzz import random_diagram
from sing2cob.ring import I, ONE, RingPoly, parse_poly
from oracles import random_poly


def test_examples():
    d = parse_diagram("uC ; eC")
    assert (d.dom, d.cod, d.size) == ((), (), 2)
    d = parse_diagram("z ; zs")
    assert (d.dom, d.cod) == ((0,), (0,))
    d = parse_diagram("(mW|id:1) ; mW")
    assert (d.dom, d.cod) == ((1, 1, 1), (1,))


def test_print_examples():
    assert print_diagram(parse_diagram("uC ; eC")) == "uC ; eC"
    assert print_diagram(identity((0, 1))) == "id:01"
    assert print_diagram(identity(())) == "id:-"
    assert print_diagram(parse_diagram("mC|mC")) == "mC | id:00 ; id:0 | mC"


def test_coefficients():
    lc = parse("2 * z - i * z + (a^2 - 3*h) * z")
    assert len(lc.terms) == 1
    assert lc.terms[0][0] == parse_poly("a^2 - 3*h + 2 - i")
    lc = parse("i * uC - uC")
    assert lc.terms[0][0] == I - ONE
    assert parse("0 * z").terms == ()


MALFORMED = [
    # (text, kind, offending substring)
    ("mC ; foo", "lexical", "foo"),
    ("id:2", "lexical", "id:2"),
    ("sw:12", "lexical", "sw:12"),
    ("zz", "lexical", "zz"),
    ("mC # dC", "lexical", "#"),
    ("mC)", "syntax", ")"),
    ("(mC", "syntax", "("),
    ("3 mC", "syntax", "mC"),
    ("i mC", "syntax", "mC"),
    ("uC ; eC ; ! eC", "lexical", "!"),
    ("mC ; (dC ; ) ; mC", "syntax", ") ;"),
    ("(a + ) * mC", "syntax", ")"),
    ("((a) * mC", "syntax", "("),
    ("z ; z", "type", ";"),
    ("mW ; mC", "type", ";"),
    ("z + mC", "type", "+"),
    ("uC - uW", "type", "-"),
]


@pytest.mark.parametrize("text,kind,token", MALFORMED)
def test_malformed_positions(text, kind, token):
    with pytest.raises(DslError) as err:
        parse(text)
    e = err.value
    assert e.kind == kind
    start = text.index(token)
    assert start <= e.pos < start + len(token), (e.pos, str(e))
    assert "column" in str(e)


@pytest.mark.parametrize("text", ["", "mC ;", "mC | ", "   "])
def test_truncated_input(text):
    with pytest.raises(DslError) as err:
        parse(text)
    assert err.value.pos <= len(text)


def test_error_line_and_column():
    with pytest.raises(DslError) as err:
        parse("mC ;\n  foo")
    assert "line 2, column 3" in str(err.value)


def test_round_trip_random_diagrams():
    rng = random.Random(7)
    for _ in range(1000):
        d = random_diagram(rng, 10, 5)
        text = print_diagram(d)
        again = parse_diagram(text)
        assert again == d
        assert print_diagram(again) == text


def test_round_trip_lincombs():
    rng = random.Random(11)
    for _ in range(200):
        d0 = random_diagram(rng, 6, 4)
        terms = [(random_poly(rng), d0)]
        for _ in range(rng.randint(0, 3)):
            d = random_diagram(rng, 6, 4, dom=d0.dom)
            if d.cod == d0.cod:
                terms.append((random_poly(rng), d))
        lc = LinComb(d0.dom, d0.cod, tuple(terms))
        again = parse(print_lincomb(lc))
        assert again == lc


def test_zero_combination_prints():
    lc = LinComb((0, 1), (1,), ())
    again = parse(print_lincomb(lc))
    assert again.terms == () and (again.dom, again.cod) == ((0, 1), (1,))


def test_negative_and_unit_coefficients_print():
    d = parse_diagram("z")
    for c in (ONE, -ONE, I, -I, RingPoly.const(-3), parse_poly("a - h")):
        lc = LinComb.of(d, c)
        assert parse(print_lincomb(lc)) == lc
    lc = LinComb((0,), (1,), ((ONE, d), (-I, parse_diagram("dC ; mC ; z"))))
    assert print_lincomb(lc) == "z - i * dC ; mC ; z"
