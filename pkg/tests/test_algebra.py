import json
import random
from dataclasses import replace

import pytest

from sing2cob import linalg as la
from sing2cob.algebra import (AlgebraShapeError, FrobeniusPresentation, TwinAlgebraPresentation,
                              TwinStructureError, all_pass, axiom_report, check_frobenius,
                              check_twin, dumps_twin, loads_twin, truncated_twin, twin_tensor,
                              universal_twin)
from sing2cob.ring import A, H, I, ONE, ZERO


def names_failed(verdicts):
    return {v.name for v in verdicts if not v.passed}


def test_universal_passes_everything():
    t = universal_twin()
    assert all_pass(check_frobenius(t.C))
    assert all_pass(check_frobenius(t.W))
    assert all_pass(check_twin(t))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_truncated_passes_everything(n):
    assert all_pass(axiom_report(truncated_twin(n)))


def test_rank_one_trivial_algebra():
    p = FrobeniusPresentation(1, [[[1]]], [1], [[[1]]], [1])
    assert all_pass(check_frobenius(p))


def test_dropping_a_breaks_frobenius():
    C = universal_twin().C
    mult = [[list(row) for row in plane] for plane in C.mult]
    mult[1][1][0] = ZERO                 # X*X = hX instead of hX + a
    bad = replace(C, mult=mult)
    failed = names_failed(check_frobenius(bad))
    assert "frobenius-left" in failed or "frobenius-right" in failed


def test_scaled_zstar_breaks_isomorphism():
    t = universal_twin()
    bad = replace(t, zstar=la.scale(2, t.zstar))
    failed = names_failed(check_twin(bad))
    assert {"isomorphism-C", "isomorphism-W"} <= failed
    assert "z-multiplicative" not in failed


def test_universal_structure_values():
    t = universal_twin()
    # Delta_W(1) = i(1(x)X + X(x)1 - h 1(x)1)
    assert t.W.comult[0] == ((-I * H, I), (I, ZERO))
    assert la.matmul(t.z, ((ZERO,), (ONE,))) == ((ZERO,), (ONE,))   # z(X) = X
    assert t.W.counit[0] == ZERO
    assert t.C.counit[1] == ONE and t.W.counit[1] == -I
    assert t.C.mult[1][1] == (A, H)
    assert la.compose(t.z, la.scale(I, t.zstar)) == la.identity(2)


def test_truncated_structure_values():
    t2 = truncated_twin(2)
    assert t2.C.comult[1] == ((ZERO, ZERO), (ZERO, ONE))     # Delta(x) = x(x)x
    assert t2.C.comult[0] == ((ZERO, ONE), (ONE, ZERO))      # Delta(1) = 1(x)x + x(x)1
    assert truncated_twin(3).W.counit == (ZERO, ZERO, -I)
    with pytest.raises(ValueError):
        truncated_twin(1)


def _constant_slots(t):
    slots = []
    for alg in ("C", "W"):
        r = getattr(t, alg).rank
        for i in range(r):
            for j in range(r):
                for k in range(r):
                    slots += [(alg, "mult", (i, j, k)), (alg, "comult", (i, j, k))]
            slots += [(alg, "unit", (i,)), (alg, "counit", (i,))]
    for i in range(t.W.rank):
        for j in range(t.C.rank):
            slots += [("z", None, (i, j)), ("zstar", None, (j, i))]
    return slots


def _bump(t, slot):
    alg, field, idx = slot

    def bumped(arr, idx):
        arr = [bumped(x, idx[1:]) if k == idx[0] and len(idx) > 1 else x for k, x in enumerate(arr)]
        if len(idx) == 1:
            arr[idx[0]] = arr[idx[0]] + ONE
        return arr

    if field is None:
        return replace(t, **{alg: bumped([list(r) for r in getattr(t, alg)], idx)})
    p = getattr(t, alg)
    return replace(t, **{alg: replace(p, **{field: bumped(list(getattr(p, field)), idx)})})


def test_mutations_are_detected():
    t = universal_twin()
    slots = random.Random(2024).sample(_constant_slots(t), 10)
    for slot in slots:
        assert not all_pass(axiom_report(_bump(t, slot))), slot


def test_every_single_mutation_is_detected():
    t = universal_twin()
    missed = [s for s in _constant_slots(t) if all_pass(axiom_report(_bump(t, s)))]
    assert missed == []


def test_check_twin_precondition():
    t = universal_twin()
    mult = [[list(row) for row in plane] for plane in t.C.mult]
    mult[0][1][1] = ZERO
    with pytest.raises(TwinStructureError) as err:
        check_twin(replace(t, C=replace(t.C, mult=mult)))
    assert err.value.failed


def test_tensor_of_twins():
    u = universal_twin()
    tt = twin_tensor(u, u)
    assert tt.C.rank == 4 and tt.W.rank == 4
    assert tt.C.unit == tuple(x * y for x in u.C.unit for y in u.C.unit)
    failed = names_failed(axiom_report(tt))
    assert failed == {"isomorphism-C", "isomorphism-W"}


def test_tensor_duality_by_basis_enumeration():
    u = universal_twin()
    t = twin_tensor(u, u)
    r = t.C.rank

    def mult_vec(p, x, y):
        out = [ZERO] * r
        for i in range(r):
            for j in range(r):
                if x[i] and y[j]:
                    for k in range(r):
                        out[k] = out[k] + x[i] * y[j] * p.mult[i][j][k]
        return out

    def apply(m, x):
        return [sum((m[i][j] * x[j] for j in range(r)), ZERO) for i in range(r)]

    def counit(p, x):
        return sum((p.counit[k] * x[k] for k in range(r)), ZERO)

    for a in range(r):
        for b in range(r):
            ea = [ONE if k == a else ZERO for k in range(r)]
            eb = [ONE if k == b else ZERO for k in range(r)]
            lhs = counit(t.C, mult_vec(t.C, ea, apply(t.zstar, eb)))
            rhs = counit(t.W, mult_vec(t.W, apply(t.z, ea), eb))
            assert lhs == rhs


def test_json_round_trip_is_bit_exact():
    for t in (universal_twin(), truncated_twin(3)):
        text = dumps_twin(t)
        again = loads_twin(text)
        assert dumps_twin(again) == text
        assert again.C == t.C and again.W == t.W


def test_json_errors():
    doc = json.loads(dumps_twin(universal_twin()))
    del doc["zstar"]
    with pytest.raises(AlgebraShapeError):
        loads_twin(json.dumps(doc))
    doc = json.loads(dumps_twin(universal_twin()))
    doc["C"]["unit"] = ["1"]
    with pytest.raises(AlgebraShapeError):
        loads_twin(json.dumps(doc))
    doc = json.loads(dumps_twin(universal_twin()))
    del doc["W"]["comult"]
    with pytest.raises(AlgebraShapeError, match="W: missing fields: comult"):
        loads_twin(json.dumps(doc))
    with pytest.raises(AlgebraShapeError):
        loads_twin("[1, 2]")
    doc = json.loads(dumps_twin(universal_twin()))
    doc["rank_C"] = "two"
    with pytest.raises(AlgebraShapeError):
        loads_twin(json.dumps(doc))
    doc = json.loads(dumps_twin(universal_twin()))
    doc["z"][0][0] = "1 +"
    with pytest.raises(AlgebraShapeError):
        loads_twin(json.dumps(doc))


def test_shape_errors():
    with pytest.raises(AlgebraShapeError):
        FrobeniusPresentation(0, [], [], [], [])
    u = universal_twin()
    with pytest.raises(AlgebraShapeError):
        TwinAlgebraPresentation(u.C, u.W, la.identity(3), u.zstar)
