"""Versioned ASCII file formats: polynomials, matrices, Waring data, ABPs.

Every format is line oriented with bit-exact rationals (`Fraction`
string form), so emitted artifacts are stable golden files.

polynomial file:   `vars: x1 x2 ...` header, then the expression text
matrix block:      `rows cols` line, then row-major rationals
waring file:       `waring d=<d> n=<n>` header, lines `c: a1 a2 ... an`
abp file:          `abp v1` magic, `kind:`/`width:`/`vars:`/`order:`/
                   `u:`/`v:` headers, then `layer <var> power <k>`
                   blocks each followed by width rows of width rationals.
                   For set-multilinear programs the order line groups
                   part variables with '|': `order: a,b|c,d`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .abp import Abp, Layer
from .construct import WaringDecomposition
from .linalg import QMatrix
from .poly import Poly, parse_poly


# ---------------------------------------------------------------------------
# polynomial files
# ---------------------------------------------------------------------------

def format_poly_file(p: Poly) -> str:
    return f"vars: {' '.join(p.vars)}\n{p}\n"


def parse_poly_file(text: str, default_vars: Sequence[str] | None = None) -> Poly:
    """Parse a polynomial file; a missing `vars:` header falls back to default_vars."""
    lines = [line for line in text.splitlines() if line.strip()]
    if lines and lines[0].strip().startswith("vars:"):
        vars = tuple(lines[0].strip()[len("vars:"):].split())
        body = " ".join(lines[1:])
    elif default_vars is not None:
        vars = tuple(default_vars)
        body = " ".join(lines)
    else:
        raise ValueError("polynomial file lacks a 'vars:' header and no variable order was given")
    if not vars:
        raise ValueError("empty variable list")
    if not body.strip():
        raise ValueError("polynomial file has no expression")
    return parse_poly(body, vars)


# ---------------------------------------------------------------------------
# matrix blocks
# ---------------------------------------------------------------------------

def format_matrix(m: QMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in m.data)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> QMatrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text too short")
    rows, cols = int(tokens[0]), int(tokens[1])
    values = tokens[2:]
    if len(values) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(values)}")
    it = iter(values)
    return QMatrix([[Fraction(next(it)) for _ in range(cols)] for _ in range(rows)])


# ---------------------------------------------------------------------------
# Waring files
# ---------------------------------------------------------------------------

def format_waring_file(w: WaringDecomposition) -> str:
    lines = [f"waring d={w.degree} n={w.arity}"]
    for coeff, form in w.terms:
        lines.append(f"{coeff}: {' '.join(str(a) for a in form)}")
    return "\n".join(lines) + "\n"


def parse_waring_file(text: str) -> WaringDecomposition:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("waring"):
        raise ValueError("missing 'waring' header")
    fields = dict(part.split("=", 1) for part in lines[0].split()[1:])
    try:
        degree, arity = int(fields["d"]), int(fields["n"])
    except KeyError as missing:
        raise ValueError(f"waring header lacks {missing}") from None
    terms = []
    for line in lines[1:]:
        if ":" not in line:
            raise ValueError(f"malformed waring term {line!r}")
        head, tail = line.split(":", 1)
        form = tuple(Fraction(tok) for tok in tail.split())
        if len(form) != arity:
            raise ValueError(f"term has {len(form)} coordinates, expected {arity}")
        terms.append((Fraction(head.strip()), form))
    return WaringDecomposition(degree=degree, terms=tuple(terms))


# ---------------------------------------------------------------------------
# ABP files
# ---------------------------------------------------------------------------

def format_abp(abp: Abp) -> str:
    lines = ["abp v1", f"kind: {abp.kind}", f"width: {abp.width}",
             f"vars: {' '.join(abp.vars)}"]
    groups = []
    for idx in abp.order:
        layer = abp.layers[idx]
        names = [abp.vars[var] for var in sorted(layer.variables())]
        groups.append(",".join(names))
    separator = "|" if abp.kind == "set_multilinear" else ","
    lines.append(f"order: {separator.join(groups)}")
    lines.append(f"u: {' '.join(str(x) for x in abp.u)}")
    lines.append(f"v: {' '.join(str(x) for x in abp.v)}")
    for layer in abp.layers:
        for var, power, mat in layer.terms:
            lines.append(f"layer {abp.vars[var]} power {power}")
            lines.extend(" ".join(str(x) for x in row) for row in mat.data)
    return "\n".join(lines) + "\n"


def parse_abp(text: str) -> Abp:
    lines = [line.rstrip() for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != "abp v1":
        raise ValueError("not an abp v1 file")

    headers: dict[str, str] = {}
    at = 1
    while at < len(lines) and not lines[at].startswith("layer "):
        key, _, value = lines[at].partition(":")
        headers[key.strip()] = value.strip()
        at += 1
    for required in ("kind", "width", "vars", "order", "u", "v"):
        if required not in headers:
            raise ValueError(f"abp file lacks the {required!r} header")

    kind = headers["kind"]
    width = int(headers["width"])
    vars = tuple(headers["vars"].split())
    index = {name: i for i, name in enumerate(vars)}
    u = tuple(Fraction(x) for x in headers["u"].split())
    v = tuple(Fraction(x) for x in headers["v"].split())

    # layer blocks, grouped by variable
    blocks: dict[int, list[tuple[int, QMatrix]]] = {}
    appearance: list[int] = []
    while at < len(lines):
        parts = lines[at].split()
        if len(parts) != 4 or parts[0] != "layer" or parts[2] != "power":
            raise ValueError(f"malformed layer header {lines[at]!r}")
        name, power = parts[1], int(parts[3])
        if name not in index:
            raise ValueError(f"layer for unknown variable {name!r}")
        var = index[name]
        at += 1
        rows = []
        for _ in range(width):
            if at >= len(lines):
                raise ValueError("truncated layer block")
            rows.append([Fraction(x) for x in lines[at].split()])
            at += 1
        if var not in blocks:
            appearance.append(var)
        blocks.setdefault(var, []).append((power, QMatrix(rows)))

    group_texts = headers["order"].split("|") if kind == "set_multilinear" \
        else headers["order"].split(",")
    order_groups: list[list[int]] = []
    for group in group_texts:
        names = [name.strip() for name in group.split(",") if name.strip()]
        if not names:
            raise ValueError("empty group in order header")
        order_groups.append([index[name] for name in names])

    # declaration order: sorted by first appearance of any member variable
    first_seen = {var: pos for pos, var in enumerate(appearance)}
    decl = sorted(range(len(order_groups)),
                  key=lambda g: min(first_seen.get(var, len(appearance))
                                    for var in order_groups[g]))
    layers = []
    for g in decl:
        terms: list[tuple[int, int, QMatrix]] = []
        for var in order_groups[g]:
            for power, mat in blocks.get(var, []):
                terms.append((var, power, mat))
        layers.append(Layer(terms))
    order = tuple(decl.index(g) for g in range(len(order_groups)))
    return Abp(kind=kind, vars=vars, width=width, u=u, v=v,
               layers=tuple(layers), order=order)
