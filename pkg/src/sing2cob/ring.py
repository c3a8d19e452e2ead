"""Exact arithmetic in R = Z[i][a, h].

Elements are sparse maps from exponent pairs ``(deg_a, deg_h)`` to Gaussian
integer coefficients.  Zero coefficients are never stored, so two values are
equal exactly when their term maps are equal.
"""
from __future__ import annotations

import re
from typing import Dict, Iterable, NamedTuple, Tuple, Union

Monomial = Tuple[int, int]


class GaussianInteger(NamedTuple):
    re: int
    im: int

    def __add__(self, other):  # type: ignore[override]
        other = _gauss(other)
        return GaussianInteger(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInteger(-self.re, -self.im)

    def __sub__(self, other):
        other = _gauss(other)
        return GaussianInteger(self.re - other.re, self.im - other.im)

    def __mul__(self, other):  # type: ignore[override]
        other = _gauss(other)
        return GaussianInteger(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.re or self.im)

    def conjugate(self) -> "GaussianInteger":
        return GaussianInteger(self.re, -self.im)

    def __str__(self):
        return _coeff_text(self)


def _gauss(x) -> GaussianInteger:
    if isinstance(x, GaussianInteger):
        return x
    if isinstance(x, int):
        return GaussianInteger(x, 0)
    raise TypeError(f"cannot coerce {x!r} to a Gaussian integer")


Scalar = Union["RingPoly", GaussianInteger, int]


class RingPoly:
    """Immutable polynomial in ``a`` and ``h`` over the Gaussian integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Dict[Monomial, Tuple[int, int]] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _gauss(c) if not isinstance(c, tuple) else GaussianInteger(*c)
                if c.re or c.im:
                    if mono[0] < 0 or mono[1] < 0:
                        raise ValueError(f"negative exponent in {mono}")
                    clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, GaussianInteger]) -> "RingPoly":
        # caller guarantees canonical form
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, c) -> "RingPoly":
        c = _gauss(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def coerce(cls, x: Scalar) -> "RingPoly":
        if isinstance(x, RingPoly):
            return x
        return cls.const(x)

    @property
    def terms(self) -> Dict[Monomial, GaussianInteger]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, GaussianInteger)):
            other = RingPoly.const(other)
        if not isinstance(other, RingPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: Scalar) -> "RingPoly":
        other = RingPoly.coerce(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            prev = out.get(mono)
            if prev is None:
                out[mono] = c
            else:
                s = GaussianInteger(prev.re + c.re, prev.im + c.im)
                if s.re or s.im:
                    out[mono] = s
                else:
                    del out[mono]
        return RingPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "RingPoly":
        return RingPoly._raw({m: GaussianInteger(-c.re, -c.im) for m, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> "RingPoly":
        return self + (-RingPoly.coerce(other))

    def __rsub__(self, other: Scalar) -> "RingPoly":
        return RingPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "RingPoly":
        other = RingPoly.coerce(other)
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Monomial, GaussianInteger] = {}
        for (a1, h1), c1 in self._terms.items():
            for (a2, h2), c2 in other._terms.items():
                mono = (a1 + a2, h1 + h2)
                re_ = c1.re * c2.re - c1.im * c2.im
                im_ = c1.re * c2.im + c1.im * c2.re
                prev = out.get(mono)
                if prev is not None:
                    re_ += prev.re
                    im_ += prev.im
                out[mono] = GaussianInteger(re_, im_)
        return RingPoly._raw({m: c for m, c in out.items() if c.re or c.im})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RingPoly":
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def constant(self) -> GaussianInteger | None:
        """The coefficient if this is a constant, else ``None``."""
        if not self._terms:
            return GaussianInteger(0, 0)
        if set(self._terms) == {(0, 0)}:
            return self._terms[(0, 0)]
        return None

    def sorted_terms(self) -> list[tuple[Monomial, GaussianInteger]]:
        # graded lexicographic, highest first
        return sorted(self._terms.items(),
                      key=lambda t: (t[0][0] + t[0][1], t[0][0], t[0][1]),
                      reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"RingPoly({format_poly(self)!r})"


ZERO = RingPoly._raw({})
ONE = RingPoly._raw({(0, 0): GaussianInteger(1, 0)})
I = RingPoly._raw({(0, 0): GaussianInteger(0, 1)})
A = RingPoly._raw({(1, 0): GaussianInteger(1, 0)})
H = RingPoly._raw({(0, 1): GaussianInteger(1, 0)})
UNITS = (ONE, I, -ONE, -I)


def ring_add(p: Scalar, q: Scalar) -> RingPoly:
    return RingPoly.coerce(p) + q


def ring_mul(p: Scalar, q: Scalar) -> RingPoly:
    return RingPoly.coerce(p) * q


def ring_neg(p: Scalar) -> RingPoly:
    return -RingPoly.coerce(p)


def ring_eq(p: Scalar, q: Scalar) -> bool:
    return RingPoly.coerce(p) == RingPoly.coerce(q)


def unit_power(u: RingPoly) -> int | None:
    """Return k with u == i**k (k in 0..3), or None if u is not a unit."""
    for k, v in enumerate(UNITS):
        if u == v:
            return k
    return None


def unit_inverse(u: RingPoly) -> RingPoly:
    k = unit_power(u)
    if k is None:
        raise ValueError(f"{u} is not a unit")
    return UNITS[(-k) % 4]


# -- text syntax -----------------------------------------------------------

def _mono_text(mono: Monomial) -> str:
    parts = []
    for sym, d in zip("ah", mono):
        if d == 1:
            parts.append(sym)
        elif d > 1:
            parts.append(f"{sym}^{d}")
    return "*".join(parts)


def _coeff_text(c: GaussianInteger) -> str:
    if c.im == 0:
        return str(c.re)
    im = "i" if c.im == 1 else "-i" if c.im == -1 else f"{c.im}*i"
    if c.re == 0:
        return im
    sign = "+" if c.im > 0 else "-"
    mag = "i" if abs(c.im) == 1 else f"{abs(c.im)}*i"
    return f"({c.re}{sign}{mag})"


def format_poly(p: RingPoly) -> str:
    """Canonical text: graded-lex order, ``+``/``-`` separated terms."""
    if not p._terms:
        return "0"
    out = []
    for mono, c in p.sorted_terms():
        neg = False
        if c.im == 0 and c.re < 0:
            neg, c = True, GaussianInteger(-c.re, 0)
        elif c.re == 0 and c.im < 0:
            neg, c = True, GaussianInteger(0, -c.im)
        mtext = _mono_text(mono)
        if not mtext:
            body = _coeff_text(c)
        elif c == (1, 0):
            body = mtext
        else:
            body = f"{_coeff_text(c)}*{mtext}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class PolySyntaxError(ValueError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at offset {pos}")
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([iah])|([-+*^()]))")


def _tokenize(text: str, base: int = 0) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            ws = len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[pos + ws]!r}", base + pos + ws)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), base + start))
        elif m.group(2):
            toks.append(("sym", m.group(2), base + start))
        else:
            toks.append(("op", m.group(3), base + start))
        pos = m.end()
    toks.append(("eof", "", base + len(text)))
    return toks


class _PolyParser:
    def __init__(self, toks):
        self.toks = toks
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self, kind=None, val=None):
        t = self.toks[self.k]
        if (kind and t[0] != kind) or (val is not None and t[1] != val):
            want = val or kind
            raise PolySyntaxError(f"expected {want!r}, found {t[1] or 'end of input'!r}", t[2])
        self.k += 1
        return t

    def expr(self) -> RingPoly:
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.k += 1
            val = self.term()
            if t[1] == "-":
                val = -val
        else:
            val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> RingPoly:
        val = self.power()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.k += 1
            val = val * self.power()
        return val

    def power(self) -> RingPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.k += 1
            exp = int(self.take("int")[1])
            return base ** exp
        return base

    def atom(self) -> RingPoly:
        t = self.peek()
        if t[0] == "int":
            self.k += 1
            return RingPoly.const(int(t[1]))
        if t[0] == "sym":
            self.k += 1
            return {"i": I, "a": A, "h": H}[t[1]]
        if t[0] == "op" and t[1] == "(":
            self.k += 1
            val = self.expr()
            self.take("op", ")")
            return val
        if t[0] == "op" and t[1] == "-":
            self.k += 1
            return -self.power()
        raise PolySyntaxError(f"unexpected {t[1] or 'end of input'!r}", t[2])


def parse_poly(text: str, offset: int = 0) -> RingPoly:
    """Parse e.g. ``"h^2 + 4*a"`` or ``"-2*i"``.  ``offset`` shifts error positions."""
    p = _PolyParser(_tokenize(text, offset))
    val = p.expr()
    t = p.peek()
    if t[0] != "eof":
        raise PolySyntaxError(f"unexpected {t[1]!r}", t[2])
    return val


def poly_sum(items: Iterable[RingPoly]) -> RingPoly:
    total = ZERO
    for x in items:
        total = total + x
    return total
