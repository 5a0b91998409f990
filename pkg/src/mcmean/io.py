"""Text graph format and JSON result documents.

Graph files are line based::

    c optional comment
    p mcm <n> <m>
    a <u> <v> <w>        (m times, 1-based vertex ids, weight >= 0)
"""
import json
import random
import sys
from fractions import Fraction
from typing import Iterable, TextIO, Union

from mcmean.graph import Graph, GraphError, validate_graph


class FormatError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"{message} at line {line}" if line is not None else message)


def parse_lines(lines: Iterable[str]) -> Graph:
    header = None
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise FormatError("duplicate header", lineno)
            if len(tokens) != 4 or tokens[1] != "mcm":
                raise FormatError("malformed header (expected 'p mcm <n> <m>')", lineno)
            try:
                n, m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise FormatError("header counts must be integers", lineno) from None
            if n < 1 or m < 0:
                raise FormatError(f"invalid header counts n={n} m={m}", lineno)
            header = (n, m)
        elif kind == "a":
            if header is None:
                raise FormatError("edge line before header", lineno)
            if len(tokens) != 4:
                raise FormatError("malformed edge line (expected 'a <u> <v> <w>')", lineno)
            try:
                u, v, w = (int(tok) for tok in tokens[1:])
            except ValueError:
                raise FormatError("edge fields must be integers", lineno) from None
            if w < 0:
                raise FormatError("negative weight", lineno)
            n = header[0]
            for x in (u, v):
                if not 1 <= x <= n:
                    raise FormatError(f"vertex id {x} out of range [1, {n}]", lineno)
            if len(edges) == header[1]:
                raise FormatError(f"more than the {header[1]} declared edges", lineno)
            edges.append((u - 1, v - 1, w))
        else:
            raise FormatError(f"unknown line type {kind!r}", lineno)
    if header is None:
        raise FormatError("missing header 'p mcm <n> <m>'")
    n, m = header
    if len(edges) != m:
        raise FormatError(f"expected {m} edges, found {len(edges)}")
    return validate_graph(n, edges)


def parse_graph(source: Union[str, TextIO]) -> Graph:
    """Parse a graph from a path, ``"-"`` for stdin, or an open text stream."""
    if hasattr(source, "read"):
        return parse_lines(source)
    if source == "-":
        return parse_lines(sys.stdin)
    with open(source, encoding="utf-8") as fh:
        return parse_lines(fh)


def parse_text(text: str) -> Graph:
    return parse_lines(text.splitlines())


def emit_graph(g: Graph, comment: str = None) -> str:
    out = []
    if comment:
        out.extend(f"c {line}" for line in comment.splitlines())
    out.append(f"p mcm {g.n} {g.m}")
    out.extend(f"a {u + 1} {v + 1} {w}" for u, v, w in g.edges)
    return "\n".join(out) + "\n"


def generate_graph(n: int, m: int, W: int, seed: int) -> Graph:
    """Random instance: one edge out of every vertex, the remaining m - n uniform.

    Weights are uniform on [0, W]. Output depends only on the arguments.
    """
    if n < 1:
        raise GraphError(f"n must be >= 1, got {n}")
    if m < n:
        raise GraphError(f"m = {m} < n = {n}: every vertex needs an outgoing edge")
    if W < 0:
        raise GraphError(f"W must be >= 0, got {W}")
    rng = random.Random(seed)
    edges = [(u, rng.randrange(n), rng.randint(0, W)) for u in range(n)]
    edges += [(rng.randrange(n), rng.randrange(n), rng.randint(0, W)) for _ in range(m - n)]
    return validate_graph(n, edges)


def _frac(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def decimal(x: Fraction, digits: int = 12) -> str:
    return f"{float(x):.{digits}g}"


def result_document(g: Graph, result) -> dict:
    doc = {"n": g.n, "m": g.m, "W": g.W, "mode": result.mode}
    eps = result.params.get("epsilon")
    if eps is not None:
        doc["epsilon"] = _frac(Fraction(eps))
    for key in ("t", "R"):
        if key in result.params:
            doc[key] = result.params[key]
    doc["global"] = dict(_frac(result.global_mean), decimal=decimal(result.global_mean))
    doc["per_vertex"] = [_frac(v) for v in result.per_vertex]
    return doc


def dumps_result(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def load_result(text: str) -> dict:
    """Inverse of :func:`dumps_result`, with rationals turned back into Fractions."""
    doc = json.loads(text)
    out = dict(doc)
    if "epsilon" in doc:
        out["epsilon"] = Fraction(doc["epsilon"]["num"], doc["epsilon"]["den"])
    out["global"] = Fraction(doc["global"]["num"], doc["global"]["den"])
    out["per_vertex"] = [Fraction(v["num"], v["den"]) for v in doc["per_vertex"]]
    return out


def plain_result(result) -> str:
    x = result.global_mean
    return f"global {x.numerator}/{x.denominator} ({decimal(x)})\n"
