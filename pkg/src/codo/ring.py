"""Exact differential coefficient towers.

A tower is a field of rational functions in named parameters and the
variable x, optionally extended by three kinds of generators:

* ``Exponential(t, r)``: relation-free and invertible, with d(t) = r*t.
  Hyperbolic functions are encoded through (t + 1/t)/2 and (t - 1/t)/2.
* ``EllipticType(u, u', E)``: u is free, u' carries the relation
  (u')^2 = E(u) and the rules d(u) = u', d(u') = E'(u)/2.
* ``SqrtAlgebraic(p, f)``: p^2 = f with f strictly below p, d(p) = d(f)/(2p).

Elements are canonical fractions of multivariate polynomials over Q,
reduced modulo all quadratic relations, with a square-root-free monic
denominator and numerator/denominator in lowest terms.  Equality is
therefore a plain comparison of normal forms, which is what makes every
residual check in the package decidable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import QQ
from sympy.polys.rings import ring as _sympy_ring

from .errors import (
    DivisionByZero,
    DuplicateName,
    IllFoundedExtension,
    ParseError,
    TowerMismatch,
    ZeroDivisorInTower,
)

__all__ = [
    "Exponential",
    "EllipticType",
    "SqrtAlgebraic",
    "TowerSpec",
    "Tower",
    "tower_build",
    "RingElement",
    "arith",
    "derive",
    "parse_element",
    "format_element",
    "format_poly",
]


@dataclass(frozen=True)
class Exponential:
    """Invertible generator with d(name) = rate*name; rate uses earlier names."""

    name: str
    rate: str


@dataclass(frozen=True)
class EllipticType:
    """Pair (name, dname) with (dname)^2 = cubic(name) and d(name) = dname."""

    name: str
    dname: str
    cubic: str


@dataclass(frozen=True)
class SqrtAlgebraic:
    """Generator with name^2 = radicand, radicand strictly below."""

    name: str
    radicand: str


Extension = Union[Exponential, EllipticType, SqrtAlgebraic]


@dataclass(frozen=True)
class TowerSpec:
    parameters: tuple = ()
    extensions: tuple = ()
    x_name: str = "x"


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# generator kinds
_PARAM = "param"
_X = "x"
_EXP = "exp"
_FREE = "free"     # elliptic u: transcendental with d(u) = u'
_QUAD = "quad"     # generator g with g^2 = radicand


class Tower:
    """Handle for one coefficient tower; build it through :func:`tower_build`."""

    def __init__(self, spec: TowerSpec):
        params = tuple(spec.parameters)
        names = list(params) + [spec.x_name]
        kinds = [_PARAM] * len(params) + [_X]
        payload = [None] * len(names)
        for ext in spec.extensions:
            if isinstance(ext, Exponential):
                names.append(ext.name)
                kinds.append(_EXP)
                payload.append(("rate", ext.rate, len(names) - 1))
            elif isinstance(ext, EllipticType):
                names.append(ext.name)
                kinds.append(_FREE)
                payload.append(None)
                names.append(ext.dname)
                kinds.append(_QUAD)
                # the cubic may use the u generator itself, hence limit idx(u)+1
                payload.append(("cubic", ext.cubic, len(names) - 1))
            elif isinstance(ext, SqrtAlgebraic):
                names.append(ext.name)
                kinds.append(_QUAD)
                payload.append(("radicand", ext.radicand, len(names) - 1))
            else:
                raise TypeError(f"unknown extension descriptor: {ext!r}")

        seen = set()
        for n in names:
            if not _NAME_RE.match(n):
                raise ParseError(f"invalid generator name: {n!r}")
            if n in seen:
                raise DuplicateName(f"generator name used twice: {n!r}")
            seen.add(n)

        self.spec = spec
        self.names = tuple(names)
        self.kinds = tuple(kinds)
        self.x_name = spec.x_name
        self.parameters = params
        self._index = {n: i for i, n in enumerate(names)}
        self.ring, *gens = _sympy_ring(",".join(names), QQ, order="grlex")
        self.gens = tuple(gens)
        self._rate = {}       # exp index -> rate polynomial
        self._quad = {}       # quad index -> radicand polynomial
        self._ell_du = {}     # free index -> index of its derivative generator
        self._quad_indices = []
        self._dgen_cache = {}

        for i, item in enumerate(payload):
            if item is None:
                continue
            role, text, limit = item
            p = self._parse_payload(text, limit, role)
            if role == "rate":
                self._rate[i] = p
            elif role == "cubic":
                self._quad[i] = p
                self._quad_indices.append(i)
                self._ell_du[i - 1] = i
            else:
                self._quad[i] = p
                self._quad_indices.append(i)

        self._sig = (
            self.names,
            self.kinds,
            tuple(sorted((i, tuple(sorted(p.items()))) for i, p in self._quad.items())),
            tuple(sorted((i, tuple(sorted(p.items()))) for i, p in self._rate.items())),
        )
        self.zero = RingElement(self, self.ring.zero, self.ring.one)
        self.one = RingElement(self, self.ring.one, self.ring.one)

    # -- construction helpers ------------------------------------------------

    def _parse_payload(self, text, limit, role):
        try:
            e = parse_element(self, text, limit=limit)
        except TowerMismatch:
            raise
        except ParseError as exc:
            raise IllFoundedExtension(f"cannot parse {role} {text!r}: {exc}") from exc
        if e.den != self.ring.one:
            raise IllFoundedExtension(f"{role} {text!r} must be polynomial")
        return e.num

    def __repr__(self):
        return f"Tower({', '.join(self.names)})"

    def compatible(self, other: "Tower") -> bool:
        return self is other or self._sig == other._sig

    # -- element constructors -------------------------------------------------

    def el(self, value) -> "RingElement":
        """Coerce an int, Fraction, generator name, or grammar string."""
        if isinstance(value, RingElement):
            if not self.compatible(value.tower):
                raise TowerMismatch("element from a different tower")
            return value
        if isinstance(value, int):
            return RingElement(self, self.ring.ground_new(QQ(value)), self.ring.one)
        if isinstance(value, Fraction):
            q = QQ(value.numerator, value.denominator)
            return RingElement(self, self.ring.ground_new(q), self.ring.one)
        if isinstance(value, str):
            return parse_element(self, value)
        raise TypeError(f"cannot build a ring element from {value!r}")

    def gen(self, name: str) -> "RingElement":
        i = self._index.get(name)
        if i is None:
            raise TowerMismatch(f"no generator named {name!r}")
        return RingElement(self, self.gens[i], self.ring.one)

    @property
    def x(self) -> "RingElement":
        return self.gen(self.x_name)

    # -- extension and embedding ----------------------------------------------

    def extend(self, parameters: Sequence[str] = (), extensions: Sequence[Extension] = ()) -> "Tower":
        spec = TowerSpec(
            parameters=tuple(self.spec.parameters) + tuple(parameters),
            extensions=tuple(self.spec.extensions) + tuple(extensions),
            x_name=self.x_name,
        )
        return Tower(spec)

    def embed(self, e: "RingElement") -> "RingElement":
        """Map an element of a sub-tower (same names, same rules) into self."""
        if self.compatible(e.tower):
            return RingElement(self, self._remap(e.num, e.tower), self._remap(e.den, e.tower))
        missing = [n for n in e.tower.names if n not in self._index]
        if missing:
            raise TowerMismatch(f"cannot embed, unknown generators: {missing}")
        return self._normalize(self._remap(e.num, e.tower), self._remap(e.den, e.tower))

    def project(self, e: "RingElement") -> "RingElement":
        """Map an element down from a super-tower; it must not use the extra gens."""
        src = e.tower
        idx = []
        for pos, name in enumerate(src.names):
            j = self._index.get(name)
            if j is None:
                g = src.gens[pos]
                if (e.num and e.num.degree(g) > 0) or e.den.degree(g) > 0:
                    raise TowerMismatch(f"element uses {name!r} outside the target tower")
            idx.append(j)

        def remap(p):
            out = {}
            for monom, coeff in p.items():
                new = [0] * len(self.names)
                for pos, ee in enumerate(monom):
                    if ee:
                        new[idx[pos]] = ee
                out[tuple(new)] = coeff
            return self.ring.from_dict(out)

        return self._normalize(remap(e.num), remap(e.den))

    def _remap(self, p, src: "Tower"):
        if src.ring == self.ring:
            return self.ring.from_dict(dict(p.items()))
        idx = [self._index[n] for n in src.names]
        n = len(self.names)
        out = {}
        for monom, coeff in p.items():
            new = [0] * n
            for pos, e in enumerate(monom):
                if e:
                    new[idx[pos]] = e
            out[tuple(new)] = coeff
        return self.ring.from_dict(out)

    # -- normal form ------------------------------------------------------------

    def _reduce(self, p):
        """Rewrite every quadratic generator to exponent <= 1."""
        for i in reversed(self._quad_indices):
            if p and p.degree(self.gens[i]) >= 2:
                p = self._reduce_quad(p, i)
        return p

    def _reduce_quad(self, p, i):
        rad = self._quad[i]
        ring = self.ring
        out = ring.zero
        pows = {0: ring.one}
        for monom, coeff in p.items():
            e = monom[i]
            if e < 2:
                out += ring.from_dict({monom: coeff})
                continue
            k, r = divmod(e, 2)
            if k not in pows:
                pows[k] = rad ** k
            base = list(monom)
            base[i] = r
            out += ring.from_dict({tuple(base): coeff}) * pows[k]
        return out

    def _split_quad(self, p, i):
        """Return (A, B) with p = A + B*g_i and both parts g_i-free."""
        ring = self.ring
        a = {}
        b = {}
        for monom, coeff in p.items():
            if monom[i]:
                m = list(monom)
                m[i] = 0
                b[tuple(m)] = coeff
            else:
                a[monom] = coeff
        return ring.from_dict(a), ring.from_dict(b)

    def _normalize(self, num, den) -> "RingElement":
        num = self._reduce(num)
        den = self._reduce(den)
        if not den:
            raise DivisionByZero("denominator is zero")
        # clear quadratic generators out of the denominator by conjugation
        while True:
            qi = None
            for i in reversed(self._quad_indices):
                if den.degree(self.gens[i]) >= 1:
                    qi = i
                    break
            if qi is None:
                break
            a, b = self._split_quad(den, qi)
            conj = a - b * self.gens[qi]
            num = self._reduce(num * conj)
            den = self._reduce(den * conj)
            if not den:
                raise ZeroDivisorInTower(
                    f"radicand of {self.names[qi]} is a square in the layer below"
                )
        if not num:
            return RingElement(self, self.ring.zero, self.ring.one)
        g = num.gcd(den)
        if g != self.ring.one:
            num = num.quo(g)
            den = den.quo(g)
        lc = den.LC
        if lc != QQ(1):
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RingElement(self, num, den)

    # -- derivation --------------------------------------------------------------

    def _dgen(self, i) -> "RingElement":
        out = self._dgen_cache.get(i)
        if out is not None:
            return out
        kind = self.kinds[i]
        if kind == _PARAM:
            out = self.zero
        elif kind == _X:
            out = self.one
        elif kind == _EXP:
            out = RingElement(self, self._rate[i] * self.gens[i], self.ring.one)
        elif kind == _FREE:
            out = RingElement(self, self.gens[self._ell_du[i]], self.ring.one)
        elif self._ell_du and i in self._ell_du.values():
            # elliptic derivative generator: d(u') = E'(u)/2
            u = next(k for k, v in self._ell_du.items() if v == i)
            out = RingElement(self, self._quad[i].diff(self.gens[u]).quo_ground(QQ(2)), self.ring.one)
        else:
            # adjoined square root: d(g) = d(f)*g/(2f)
            rad = self._quad[i]
            drad = self._poly_derive(rad)
            g = RingElement(self, self.gens[i], self.ring.one)
            f = RingElement(self, rad, self.ring.one)
            out = drad * g / (f + f)
        self._dgen_cache[i] = out
        return out

    def _poly_derive(self, p) -> "RingElement":
        out = self.zero
        for i, g in enumerate(self.gens):
            if self.kinds[i] == _PARAM:
                continue
            dp = p.diff(g)
            if dp:
                out = out + RingElement(self, dp, self.ring.one) * self._dgen(i)
        return out


def tower_build(spec: TowerSpec) -> Tower:
    """Construct a tower; raises DuplicateName / IllFoundedExtension."""
    return Tower(spec)


class RingElement:
    """Canonical fraction over a tower.  Immutable; all operators are exact."""

    __slots__ = ("tower", "num", "den")

    def __init__(self, tower: Tower, num, den):
        self.tower = tower
        self.num = num
        self.den = den

    # -- basic protocol ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.tower.el(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        if not self.tower.compatible(other.tower):
            return False
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    __hash__ = None

    def __repr__(self):
        return f"<{format_element(self)}>"

    def __str__(self):
        return format_element(self)

    # -- arithmetic ---------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if not self.tower.compatible(other.tower):
                raise TowerMismatch("operands from different towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.el(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return self.tower._normalize(self.num + o.num, self.den)
        return self.tower._normalize(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.tower, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__add__(-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__add__(-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.tower._normalize(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise DivisionByZero("division by zero element")
        return self.tower._normalize(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (self.tower.one / self) ** (-k)
        return self.tower._normalize(self.num ** k, self.den ** k)

    # -- calculus and structure -----------------------------------------------------

    def derive(self) -> "RingElement":
        """d/dx with d(x) = 1, d(parameter) = 0 and the declared extension rules."""
        t = self.tower
        dn = t._poly_derive(self.num)
        if self.den == t.ring.one:
            return dn
        dd = t._poly_derive(self.den)
        den_el = RingElement(t, self.den, t.ring.one)
        num_el = RingElement(t, self.num, t.ring.one)
        return (dn * den_el - num_el * dd) / (den_el * den_el)

    def involves(self, name: str) -> bool:
        i = self.tower._index.get(name)
        if i is None:
            return False
        g = self.tower.gens[i]
        return bool(self.num and self.num.degree(g) > 0) or bool(self.den.degree(g) > 0)

    def degree_in(self, name: str) -> int:
        """Numerator degree in one generator (denominator must be free of it)."""
        i = self.tower._index[name]
        g = self.tower.gens[i]
        if self.den.degree(g) > 0:
            raise ValueError(f"denominator involves {name}")
        if not self.num:
            return -1
        return self.num.degree(g)

    def coeffs_by(self, names: Sequence[str]) -> dict:
        """Split into {exponent tuple: element} along `names`.

        The denominator must not involve any of the names; the returned
        coefficients are elements of the same tower.
        """
        t = self.tower
        idx = [t._index[n] for n in names]
        for i in idx:
            if self.den.degree(t.gens[i]) > 0:
                raise ValueError(f"denominator involves {t.names[i]}")
        buckets = {}
        for monom, coeff in self.num.items():
            key = tuple(monom[i] for i in idx)
            rest = list(monom)
            for i in idx:
                rest[i] = 0
            buckets.setdefault(key, {})[tuple(rest)] = coeff
        out = {}
        for key, d in buckets.items():
            out[key] = t._normalize(t.ring.from_dict(d), self.den)
        return out

    def constant_value(self) -> Fraction:
        """Value as an exact rational; fails if any generator is present."""
        if self.den != self.tower.ring.one or (self.num and self.num != self.num.const()):
            raise ValueError(f"not a rational constant: {self}")
        if not self.num:
            return Fraction(0)
        c = self.num.LC
        return Fraction(int(c.numerator), int(c.denominator))


def arith(e1: RingElement, e2: RingElement, op: str) -> RingElement:
    """Named-operation wrapper: op in {add, sub, mul, div}."""
    if op == "add":
        return e1 + e2
    if op == "sub":
        return e1 - e2
    if op == "mul":
        return e1 * e2
    if op == "div":
        return e1 / e2
    raise ValueError(f"unknown operation {op!r}")


def derive(e: RingElement) -> RingElement:
    return e.derive()


# --------------------------------------------------------------------------
# element grammar: rationals n/d, names, + - * / ^ and parentheses
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[()+\-*/^]))"
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"bad character at {text[pos:pos + 10]!r}")
            break
        pos = m.end()
        if m.group("int"):
            out.append(("int", int(m.group("int"))))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            op = m.group("op")
            out.append(("op", "^" if op == "**" else op))
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tower: Tower, tokens, limit=None):
        self.tower = tower
        self.toks = tokens
        self.i = 0
        self.limit = limit

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse(self) -> RingElement:
        e = self.expr()
        kind, val = self.next()
        if kind != "end":
            raise ParseError(f"trailing input near {val!r}")
        return e

    def expr(self) -> RingElement:
        e = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                e = e + rhs if val == "+" else e - rhs
            else:
                return e

    def term(self) -> RingElement:
        e = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.unary()
                e = e * rhs if val == "*" else e / rhs
            else:
                return e

    def unary(self) -> RingElement:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.unary()
        if kind == "op" and val == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> RingElement:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val == "-":
                self.next()
                sign = -1
            kind, val = self.next()
            if kind != "int":
                raise ParseError("exponent must be an integer")
            return base ** (sign * val)
        return base

    def atom(self) -> RingElement:
        kind, val = self.next()
        if kind == "int":
            return self.tower.el(val)
        if kind == "name":
            i = self.tower._index.get(val)
            if i is None:
                raise ParseError(f"unknown name {val!r}")
            if self.limit is not None and i >= self.limit:
                raise IllFoundedExtension(
                    f"{val!r} refers to a later tower layer"
                )
            return RingElement(self.tower, self.tower.gens[i], self.tower.ring.one)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ParseError(f"unexpected token {val!r}")


def parse_element(tower: Tower, text: str, limit=None) -> RingElement:
    """Parse the element grammar; parse(format_element(e)) == e."""
    return _Parser(tower, _tokenize(text), limit=limit).parse()


# --------------------------------------------------------------------------
# canonical printing
# --------------------------------------------------------------------------

def _fmt_rational(c) -> str:
    n = int(c.numerator)
    d = int(c.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def _fmt_monomial(tower: Tower, monom) -> str:
    parts = []
    for i, e in enumerate(monom):
        if e == 0:
            continue
        n = tower.names[i]
        parts.append(n if e == 1 else f"{n}^{e}")
    return "*".join(parts)


def format_poly(tower: Tower, p) -> str:
    if not p:
        return "0"
    order = tower.ring.order
    items = sorted(p.items(), key=lambda mv: order(mv[0]), reverse=True)
    pieces = []
    for monom, coeff in items:
        mono = _fmt_monomial(tower, monom)
        neg = coeff < 0
        ac = -coeff if neg else coeff
        cstr = _fmt_rational(ac)
        if mono and cstr == "1":
            body = mono
        elif mono:
            body = f"{cstr}*{mono}"
        else:
            body = cstr
        if not pieces:
            pieces.append(f"-{body}" if neg else body)
        else:
            pieces.append(f" - {body}" if neg else f" + {body}")
    return "".join(pieces)


def format_element(e: RingElement) -> str:
    t = e.tower
    if e.den == t.ring.one:
        return format_poly(t, e.num)
    return f"({format_poly(t, e.num)})/({format_poly(t, e.den)})"
