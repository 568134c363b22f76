"""Operator text format and fixture file parsing.

Operators print as `(coeff)*D^k + ...` with coefficients in the element
grammar; `D` is the derivation symbol.  Tower description files use one
declaration per line:

    params: a gamma z
    exp: t rate=a
    elliptic: u du cubic=4*u^3-g2*u-g3
    sqrt: p radicand=h2^2-x^2
    op: D^2 + u

Blank lines and `#` comments are ignored.
"""

from __future__ import annotations

from typing import List, Tuple

from .diffop import DiffOp
from .errors import ParseError
from .ring import (
    EllipticType,
    Exponential,
    RingElement,
    SqrtAlgebraic,
    Tower,
    TowerSpec,
    format_element,
    parse_element,
    tower_build,
)

__all__ = [
    "format_operator",
    "parse_operator",
    "parse_ops_file",
    "format_ops_file",
]

_DSYM = "__D__"


def format_operator(op: DiffOp) -> str:
    if op.is_zero():
        return "0"
    parts = []
    for i in range(op.order, -1, -1):
        c = op.coeff(i)
        if c.is_zero():
            continue
        if i == 0:
            parts.append(f"({format_element(c)})")
        elif i == 1:
            parts.append(f"({format_element(c)})*D")
        else:
            parts.append(f"({format_element(c)})*D^{i}")
    return " + ".join(parts)


def parse_operator(tower: Tower, text: str) -> DiffOp:
    """Parse `D^k` polynomials with element-grammar coefficients."""
    ext = tower.extend(parameters=(_DSYM,))
    try:
        e = parse_element(ext, text.replace("D", _DSYM))
    except ParseError as exc:
        raise ParseError(f"bad operator text {text!r}: {exc}") from exc
    if e.den != ext.ring.one and e.den.degree(ext.gens[ext._index[_DSYM]]) > 0:
        raise ParseError("the derivation symbol D cannot appear in denominators")
    buckets = e.coeffs_by((_DSYM,))
    n = max(k[0] for k in buckets) if buckets else 0
    coeffs = []
    for i in range(n + 1):
        c = buckets.get((i,))
        coeffs.append(tower.zero if c is None else tower.project(c))
    return DiffOp(tower, coeffs)


def parse_ops_file(text: str) -> Tuple[Tower, List[DiffOp]]:
    """Parse a tower description plus operator lines."""
    params: List[str] = []
    extensions: list = []
    op_lines: List[str] = []
    x_name = "x"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value' line, got {line!r}")
        key, rest = line.split(":", 1)
        key = key.strip().lower()
        rest = rest.strip()
        if key == "params":
            params.extend(rest.split())
        elif key == "x":
            x_name = rest
        elif key == "exp":
            name, _, rate = rest.partition("rate=")
            if not rate:
                raise ParseError(f"exp line needs rate=...: {line!r}")
            extensions.append(Exponential(name.strip(), rate.strip()))
        elif key == "elliptic":
            head, _, cubic = rest.partition("cubic=")
            if not cubic:
                raise ParseError(f"elliptic line needs cubic=...: {line!r}")
            names = head.split()
            if len(names) != 2:
                raise ParseError(f"elliptic line needs two names: {line!r}")
            extensions.append(EllipticType(names[0], names[1], cubic.strip()))
        elif key == "sqrt":
            name, _, rad = rest.partition("radicand=")
            if not rad:
                raise ParseError(f"sqrt line needs radicand=...: {line!r}")
            extensions.append(SqrtAlgebraic(name.strip(), rad.strip()))
        elif key == "op":
            op_lines.append(rest)
        else:
            raise ParseError(f"unknown declaration {key!r}")
    tower = tower_build(TowerSpec(parameters=tuple(params), extensions=tuple(extensions), x_name=x_name))
    return tower, [parse_operator(tower, s) for s in op_lines]


def format_ops_file(tower: Tower, ops: List[DiffOp]) -> str:
    lines = []
    if tower.parameters:
        lines.append("params: " + " ".join(tower.parameters))
    if tower.x_name != "x":
        lines.append(f"x: {tower.x_name}")
    from .ring import format_poly

    for ext in tower.spec.extensions:
        if isinstance(ext, Exponential):
            lines.append(f"exp: {ext.name} rate={ext.rate}")
        elif isinstance(ext, EllipticType):
            lines.append(f"elliptic: {ext.name} {ext.dname} cubic={ext.cubic}")
        else:
            lines.append(f"sqrt: {ext.name} radicand={ext.radicand}")
    for op in ops:
        lines.append("op: " + format_operator(op))
    return "\n".join(lines) + "\n"
