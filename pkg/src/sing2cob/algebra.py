"""Frobenius and twin Frobenius algebras given by structure constants.

Index conventions (basis e_0 .. e_{r-1}):

* ``mult[i][j][k]``   coefficient of e_k in m(e_i (x) e_j)
* ``unit[k]``         coefficient of e_k in the unit
* ``comult[i][j][k]`` coefficient of e_j (x) e_k in Delta(e_i)
* ``counit[i]``       epsilon(e_i)
* ``z[w][c]``         coefficient of f_w in z(e_c)       (rank_W x rank_C)
* ``zstar[c][w]``     coefficient of e_c in z*(f_w)      (rank_C x rank_W)
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import linalg as la
from .ring import I, ONE, ZERO, A, H, RingPoly, parse_poly

Tensor3 = tuple[tuple[tuple[RingPoly, ...], ...], ...]
Vector = tuple[RingPoly, ...]


class AlgebraShapeError(ValueError):
    """Structure-constant arrays do not have the declared rank."""


class TwinStructureError(ValueError):
    """A twin-algebra check was run on inputs violating its preconditions."""

    def __init__(self, failed: Sequence[str]):
        self.failed = list(failed)
        super().__init__("twin algebra prerequisites failed: " + ", ".join(self.failed))


@dataclass(frozen=True)
class Verdict:
    name: str
    passed: bool

    def __str__(self):
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}"


def _tensor3(x, r: int, what: str) -> Tensor3:
    try:
        t = tuple(tuple(tuple(RingPoly.coerce(v) for v in row) for row in plane) for plane in x)
    except TypeError as exc:
        raise AlgebraShapeError(f"{what}: {exc}") from None
    if len(t) != r or any(len(p) != r or any(len(row) != r for row in p) for p in t):
        raise AlgebraShapeError(f"{what} must be a {r}x{r}x{r} array")
    return t


def _vector(x, r: int, what: str) -> Vector:
    v = tuple(RingPoly.coerce(e) for e in x)
    if len(v) != r:
        raise AlgebraShapeError(f"{what} must have length {r}")
    return v


@dataclass(frozen=True)
class FrobeniusPresentation:
    rank: int
    mult: Tensor3
    unit: Vector
    comult: Tensor3
    counit: Vector

    def __post_init__(self):
        if self.rank < 1:
            raise AlgebraShapeError("rank must be at least 1")
        r = self.rank
        object.__setattr__(self, "mult", _tensor3(self.mult, r, "mult"))
        object.__setattr__(self, "comult", _tensor3(self.comult, r, "comult"))
        object.__setattr__(self, "unit", _vector(self.unit, r, "unit"))
        object.__setattr__(self, "counit", _vector(self.counit, r, "counit"))

    # matrices of the four structure maps
    @cached_property
    def m(self) -> la.Matrix:
        r = self.rank
        return tuple(tuple(self.mult[i][j][k] for i in range(r) for j in range(r)) for k in range(r))

    @cached_property
    def eta(self) -> la.Matrix:
        return tuple((u,) for u in self.unit)

    @cached_property
    def delta(self) -> la.Matrix:
        r = self.rank
        return tuple(tuple(self.comult[i][j][k] for i in range(r)) for j in range(r) for k in range(r))

    @cached_property
    def eps(self) -> la.Matrix:
        return (tuple(self.counit),)

    @cached_property
    def id(self) -> la.Matrix:
        return la.identity(self.rank)

    @cached_property
    def tau(self) -> la.Matrix:
        return la.swap(self.rank, self.rank)


@dataclass(frozen=True)
class TwinAlgebraPresentation:
    C: FrobeniusPresentation
    W: FrobeniusPresentation
    z: la.Matrix
    zstar: la.Matrix
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        z = la.from_rows(self.z)
        zs = la.from_rows(self.zstar)
        if la.shape(z) != (self.W.rank, self.C.rank):
            raise AlgebraShapeError(f"z must be {self.W.rank}x{self.C.rank}")
        if la.shape(zs) != (self.C.rank, self.W.rank):
            raise AlgebraShapeError(f"zstar must be {self.C.rank}x{self.W.rank}")
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "zstar", zs)


# -- axiom checks -----------------------------------------------------------

def check_frobenius(p: FrobeniusPresentation) -> list[Verdict]:
    m, eta, d, eps, one, tau = p.m, p.eta, p.delta, p.eps, p.id, p.tau
    c = la.compose
    k = la.kron
    dm = c(m, d)
    return [
        Verdict("associativity", c(k(m, one), m) == c(k(one, m), m)),
        Verdict("left-unit", c(k(eta, one), m) == one),
        Verdict("right-unit", c(k(one, eta), m) == one),
        Verdict("coassociativity", c(d, k(d, one)) == c(d, k(one, d))),
        Verdict("left-counit", c(d, k(eps, one)) == one),
        Verdict("right-counit", c(d, k(one, eps)) == one),
        Verdict("frobenius-left", c(k(one, d), k(m, one)) == dm),
        Verdict("frobenius-right", c(k(d, one), k(one, m)) == dm),
        Verdict("commutativity", c(tau, m) == m),
        Verdict("symmetry", c(m, eps) == c(tau, m, eps)),
    ]


def _twin_prerequisites(t: TwinAlgebraPresentation) -> tuple[list[Verdict], list[str]]:
    verdicts = []
    failed = []
    for label, alg, required in (("C", t.C, "commutativity"), ("W", t.W, "symmetry")):
        for v in check_frobenius(alg):
            if v.name == "commutativity" and label == "W":
                continue  # W only needs to be symmetric
            if v.name == "symmetry" and label == "C":
                continue  # implied by commutativity
            verdicts.append(Verdict(f"{label}.{v.name}", v.passed))
            if not v.passed:
                failed.append(f"{label}.{v.name}")
    return verdicts, failed


def _twin_verdicts(t: TwinAlgebraPresentation) -> list[Verdict]:
    C, W, z, zs = t.C, t.W, t.z, t.zstar
    c, k = la.compose, la.kron
    iz = la.scale(I, zs)
    wz = c(k(W.id, z), W.m)
    return [
        Verdict("z-multiplicative", c(C.m, z) == c(k(z, z), W.m)),
        Verdict("z-unital", c(C.eta, z) == W.eta),
        Verdict("duality", c(k(C.id, zs), C.m, C.eps) == c(k(z, W.id), W.m, W.eps)),
        Verdict("centrality", wz == c(k(W.id, z), W.tau, W.m)),
        Verdict("isomorphism-C", c(z, iz) == C.id),
        Verdict("isomorphism-W", c(iz, z) == W.id),
    ]


def check_twin(t: TwinAlgebraPresentation) -> list[Verdict]:
    """Twin axioms; raises TwinStructureError if C or W is not a valid Frobenius algebra."""
    _, failed = _twin_prerequisites(t)
    if failed:
        raise TwinStructureError(failed)
    return _twin_verdicts(t)


def axiom_report(t: TwinAlgebraPresentation) -> list[Verdict]:
    """Every verdict (Frobenius parts and twin parts) without raising."""
    pre, _ = _twin_prerequisites(t)
    return pre + _twin_verdicts(t)


def all_pass(verdicts: Sequence[Verdict]) -> bool:
    return all(v.passed for v in verdicts)


# -- concrete algebras ------------------------------------------------------

def _scaled3(s, t) -> Tensor3:
    return tuple(tuple(tuple(s * x for x in row) for row in p) for p in t)


def universal_twin() -> TwinAlgebraPresentation:
    """A = R[X]/(X^2 - hX - a) on basis {1, X}, C and W differing by the twist -i."""
    mult = (((ONE, ZERO), (ZERO, ONE)),
            ((ZERO, ONE), (A, H)))
    comult_c = (((-H, ONE), (ONE, ZERO)),   # Delta(1) = 1(x)X + X(x)1 - h 1(x)1
                ((A, ZERO), (ZERO, ONE)))   # Delta(X) = X(x)X + a 1(x)1
    C = FrobeniusPresentation(2, mult, (ONE, ZERO), comult_c, (ZERO, ONE))
    W = FrobeniusPresentation(2, mult, (ONE, ZERO), _scaled3(I, comult_c), (ZERO, -I))
    return TwinAlgebraPresentation(C, W, la.identity(2), la.scale(-I, la.identity(2)),
                                   name="universal")


def truncated_twin(n: int) -> TwinAlgebraPresentation:
    """C = S[x]/(x^n), W = S[y]/(y^n) over S = Z[i]."""
    if n < 2:
        raise ValueError("truncated_twin needs n >= 2")
    mult = tuple(tuple(tuple(ONE if i + j == k else ZERO for k in range(n))
                       for j in range(n)) for i in range(n))
    comult = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for j in range(n - k):
            comult[k][j + k][n - 1 - j] = comult[k][j + k][n - 1 - j] + ONE
    unit = tuple(ONE if k == 0 else ZERO for k in range(n))
    counit = tuple(ONE if k == n - 1 else ZERO for k in range(n))
    C = FrobeniusPresentation(n, mult, unit, comult, counit)
    W = FrobeniusPresentation(n, mult, unit, _scaled3(I, comult), tuple(-I * x for x in counit))
    return TwinAlgebraPresentation(C, W, la.identity(n), la.scale(-I, la.identity(n)),
                                   name=f"trunc:{n}")


def _kron3(t1: Tensor3, t2: Tensor3, r1: int, r2: int) -> Tensor3:
    r = r1 * r2
    out = [[[ZERO] * r for _ in range(r)] for _ in range(r)]
    for i1 in range(r1):
        for i2 in range(r2):
            for j1 in range(r1):
                for j2 in range(r2):
                    for k1 in range(r1):
                        for k2 in range(r2):
                            out[i1 * r2 + i2][j1 * r2 + j2][k1 * r2 + k2] = \
                                t1[i1][j1][k1] * t2[i2][j2][k2]
    return tuple(tuple(tuple(row) for row in p) for p in out)


def frobenius_tensor(p: FrobeniusPresentation, q: FrobeniusPresentation) -> FrobeniusPresentation:
    r1, r2 = p.rank, q.rank
    return FrobeniusPresentation(
        r1 * r2,
        _kron3(p.mult, q.mult, r1, r2),
        tuple(a * b for a in p.unit for b in q.unit),
        _kron3(p.comult, q.comult, r1, r2),
        tuple(a * b for a in p.counit for b in q.counit),
    )


def twin_tensor(t1: TwinAlgebraPresentation, t2: TwinAlgebraPresentation) -> TwinAlgebraPresentation:
    return TwinAlgebraPresentation(
        frobenius_tensor(t1.C, t2.C),
        frobenius_tensor(t1.W, t2.W),
        la.kron(t1.z, t2.z),
        la.kron(t1.zstar, t2.zstar),
        name=f"({t1.name})x({t2.name})",
    )


# -- file format -------------------------------------------------------------

def _frob_json(p: FrobeniusPresentation) -> dict:
    s = str
    return {
        "mult": [[[s(x) for x in row] for row in plane] for plane in p.mult],
        "unit": [s(x) for x in p.unit],
        "comult": [[[s(x) for x in row] for row in plane] for plane in p.comult],
        "counit": [s(x) for x in p.counit],
    }


def twin_to_dict(t: TwinAlgebraPresentation) -> dict:
    return {
        "rank_C": t.C.rank,
        "rank_W": t.W.rank,
        "C": _frob_json(t.C),
        "W": _frob_json(t.W),
        "z": la.to_strings(t.z),
        "zstar": la.to_strings(t.zstar),
    }


def dumps_twin(t: TwinAlgebraPresentation) -> str:
    return json.dumps(twin_to_dict(t), indent=2) + "\n"


def _parse_nested(x, where: str):
    if isinstance(x, list):
        return [_parse_nested(v, f"{where}[{k}]") for k, v in enumerate(x)]
    if isinstance(x, int) and not isinstance(x, bool):
        return RingPoly.const(x)
    if isinstance(x, str):
        try:
            return parse_poly(x)
        except ValueError as exc:
            raise AlgebraShapeError(f"{where}: {exc}") from None
    raise AlgebraShapeError(f"{where}: expected polynomial string, got {x!r}")


def twin_from_dict(doc: dict, name: str = "custom") -> TwinAlgebraPresentation:
    if not isinstance(doc, dict):
        raise AlgebraShapeError("expected a JSON object at the top level")
    missing = [k for k in ("rank_C", "rank_W", "C", "W", "z", "zstar") if k not in doc]
    if missing:
        raise AlgebraShapeError("missing fields: " + ", ".join(missing))
    frobs = []
    for label, rk in (("C", doc["rank_C"]), ("W", doc["rank_W"])):
        if not isinstance(rk, int) or isinstance(rk, bool):
            raise AlgebraShapeError(f"rank_{label}: expected an integer, got {rk!r}")
        part = doc[label]
        if not isinstance(part, dict):
            raise AlgebraShapeError(f"{label}: expected an object")
        gone = [k for k in ("mult", "unit", "comult", "counit") if k not in part]
        if gone:
            raise AlgebraShapeError(f"{label}: missing fields: " + ", ".join(gone))
        frobs.append(FrobeniusPresentation(
            rk,
            _parse_nested(part["mult"], f"{label}.mult"),
            _parse_nested(part["unit"], f"{label}.unit"),
            _parse_nested(part["comult"], f"{label}.comult"),
            _parse_nested(part["counit"], f"{label}.counit"),
        ))
    return TwinAlgebraPresentation(frobs[0], frobs[1],
                                   _parse_nested(doc["z"], "z"),
                                   _parse_nested(doc["zstar"], "zstar"), name=name)


def loads_twin(text: str, name: str = "custom") -> TwinAlgebraPresentation:
    return twin_from_dict(json.loads(text), name=name)
