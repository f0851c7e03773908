"""JSON documents for every input and output kind.

A document is a JSON object with ``schema_version``, ``kind`` and, for
linear kinds, ``field`` (``"Q"`` or ``"F<p>"``).  Scalars are strings
(``"3"``, ``"-1/2"``); JSON integers are accepted on input.  Matrices are
row-major nested arrays.  :func:`dumps` writes a canonical form, so a
parsed canonical file serializes back to the same bytes.

Parse errors carry a position: ``line:col`` for JSON syntax and a JSON
path such as ``$.coalgebras[1].delta[3]`` for schema problems.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any

from .coalg import Coalgebra
from .groupoid import FinCategory, FinGraph
from .hopf import Antipode
from .kernel import ExactMatrix, FieldSpec, IntMatrix
from .modflat import FgModule, ModMap
from .vcat import SemiHopfCategory, VCategory
from .vgraph import VGraph, VGraphMorphism

__all__ = [
    "SCHEMA_VERSION",
    "KINDS",
    "ParseError",
    "Document",
    "HopfDocument",
    "LinearMap",
    "load",
    "loads",
    "dumps",
    "to_json",
    "write_atomic",
]

SCHEMA_VERSION = 1
KINDS = ("vgraph", "coalgebra", "vcategory", "semihopf", "hopf", "graph", "fincategory", "fgmodule", "morphism")


class ParseError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass(frozen=True)
class HopfDocument:
    """A semi-Hopf category together with an antipode."""

    category: SemiHopfCategory
    antipode: Antipode


@dataclass(frozen=True)
class LinearMap:
    """A bare linear map, used as the ``gamma`` of a cofree factorization."""

    matrix: ExactMatrix


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any
    field: FieldSpec | None = None


# -- scalars and matrices ------------------------------------------------------


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _matrix_json(M: ExactMatrix) -> list:
    return [[_fmt(v) for v in M.row(i)] for i in range(M.rows)]


class _Reader:
    """Walks the decoded JSON with a path for error messages."""

    def __init__(self, data, path: str = "$"):
        self.data = data
        self.path = path

    def fail(self, message: str):
        raise ParseError(self.path, message)

    def get(self, key: str, default=...) -> "_Reader":
        if not isinstance(self.data, dict):
            self.fail("expected an object")
        if key not in self.data:
            if default is ...:
                self.fail(f"missing key {key!r}")
            return _Reader(default, f"{self.path}.{key}")
        return _Reader(self.data[key], f"{self.path}.{key}")

    def has(self, key: str) -> bool:
        return isinstance(self.data, dict) and key in self.data

    def items(self) -> list["_Reader"]:
        if not isinstance(self.data, list):
            self.fail("expected an array")
        return [_Reader(v, f"{self.path}[{i}]") for i, v in enumerate(self.data)]

    def entries(self) -> list[tuple[str, "_Reader"]]:
        if not isinstance(self.data, dict):
            self.fail("expected an object")
        return [(k, _Reader(v, f"{self.path}.{k}")) for k, v in self.data.items()]

    def str(self) -> str:
        if not isinstance(self.data, str):
            self.fail("expected a string")
        return self.data

    def int(self, minimum: int | None = None) -> int:
        if isinstance(self.data, bool) or not isinstance(self.data, int):
            self.fail("expected an integer")
        if minimum is not None and self.data < minimum:
            self.fail(f"expected an integer >= {minimum}")
        return self.data

    def scalar(self, field: FieldSpec):
        v = self.data
        if isinstance(v, bool) or isinstance(v, float):
            self.fail("scalars must be integers or 'p/q' strings")
        if isinstance(v, int):
            return field(v)
        if isinstance(v, str):
            try:
                return field(Fraction(v.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                self.fail(f"bad scalar {v!r}: {exc}")
        self.fail("scalars must be integers or 'p/q' strings")

    def matrix(self, field: FieldSpec, rows: int, cols: int) -> ExactMatrix:
        rs = self.items()
        if len(rs) != rows:
            self.fail(f"expected {rows} rows, got {len(rs)}")
        out = []
        for r in rs:
            cs = r.items()
            if len(cs) != cols:
                r.fail(f"expected {cols} columns, got {len(cs)}")
            out.append([c.scalar(field) for c in cs])
        return ExactMatrix.from_rows(field, out, cols)

    def int_matrix(self, rows: int, cols: int | None = None) -> IntMatrix:
        rs = self.items()
        if len(rs) != rows:
            self.fail(f"expected {rows} rows, got {len(rs)}")
        out = []
        for r in rs:
            cs = r.items()
            if cols is None:
                cols = len(cs)
            if len(cs) != cols:
                r.fail(f"expected {cols} columns, got {len(cs)}")
            out.append([c.int() for c in cs])
        return IntMatrix.from_rows(out, cols or 0) if out else IntMatrix(0, cols or 0, ())


# -- per-kind payloads ---------------------------------------------------------


def _vgraph_json(G: VGraph) -> dict:
    return {
        "objects": list(G.objects),
        "homs": [{"src": x, "tgt": y, "dim": G.dim(x, y)} for x, y in G.pairs() if G.dim(x, y)],
    }


def _read_vgraph(r: _Reader) -> VGraph:
    objs = [o.str() for o in r.get("objects").items()]
    if len(set(objs)) != len(objs):
        r.get("objects").fail("object ids must be distinct")
    dims = {}
    for h in r.get("homs").items():
        x, y = h.get("src").str(), h.get("tgt").str()
        if x not in objs or y not in objs:
            h.fail(f"hom ({x}, {y}) uses an unknown object")
        if (x, y) in dims:
            h.fail(f"hom ({x}, {y}) listed twice")
        dims[(x, y)] = h.get("dim").int(0)
    return VGraph(tuple(objs), dims)


def _coalg_json(C: Coalgebra) -> dict:
    return {"dim": C.dim, "delta": _matrix_json(C.delta), "epsilon": _matrix_json(C.epsilon)}


def _read_coalg(r: _Reader, field: FieldSpec, dim: int | None = None) -> Coalgebra:
    d = r.get("dim").int(0) if dim is None else dim
    return Coalgebra(field, d, r.get("delta").matrix(field, d * d, d), r.get("epsilon").matrix(field, 1, d))


def _vcat_json(A: VCategory) -> dict:
    g = A.graph
    out = _vgraph_json(g)
    out["compose"] = [
        {"x": x, "y": y, "z": z, "matrix": _matrix_json(A.m[(x, y, z)])}
        for x, y, z in product(g.objects, repeat=3)
        if g.dim(x, y) and g.dim(y, z) and g.dim(x, z)
    ]
    out["units"] = {x: [_fmt(v) for v in A.j[x].col(0)] for x in g.objects if g.dim(x, x)}
    return out


def _read_vcat(r: _Reader, field: FieldSpec) -> VCategory:
    g = _read_vgraph(r)
    m = {}
    for c in r.get("compose").items():
        x, y, z = (c.get(k).str() for k in "xyz")
        if any(o not in g.objects for o in (x, y, z)):
            c.fail("composition uses an unknown object")
        m[(x, y, z)] = c.get("matrix").matrix(field, g.dim(x, z), g.dim(x, y) * g.dim(y, z))
    for x, y, z in product(g.objects, repeat=3):
        if (x, y, z) not in m:
            m[(x, y, z)] = ExactMatrix.zeros(field, g.dim(x, z), g.dim(x, y) * g.dim(y, z))
    units = r.get("units")
    j = {}
    for x in g.objects:
        if g.dim(x, x):
            col = units.get(x).items()
            if len(col) != g.dim(x, x):
                units.get(x).fail(f"expected {g.dim(x, x)} entries")
            j[x] = ExactMatrix.column(field, [v.scalar(field) for v in col])
        else:
            j[x] = ExactMatrix.zeros(field, 0, 1)
    try:
        return VCategory(field, g, m, j)
    except ValueError as exc:
        r.fail(str(exc))


def _semihopf_json(A: SemiHopfCategory) -> dict:
    out = _vcat_json(A.cat)
    out["coalgebras"] = [
        {"src": x, "tgt": y, "delta": _matrix_json(A.delta(x, y)), "epsilon": _matrix_json(A.eps(x, y))}
        for x, y in A.graph.pairs()
        if A.dim(x, y)
    ]
    return out


def _read_semihopf(r: _Reader, field: FieldSpec) -> SemiHopfCategory:
    cat = _read_vcat(r, field)
    co = {}
    for c in r.get("coalgebras").items():
        x, y = c.get("src").str(), c.get("tgt").str()
        if x not in cat.objects or y not in cat.objects:
            c.fail(f"coalgebra on unknown hom ({x}, {y})")
        co[(x, y)] = _read_coalg(c, field, cat.dim(x, y))
    try:
        return SemiHopfCategory(cat, co)
    except ValueError as exc:
        r.fail(str(exc))


def _antipode_json(A: SemiHopfCategory, S: Antipode) -> list:
    return [{"src": x, "tgt": y, "matrix": _matrix_json(S[(x, y)])} for x, y in A.graph.pairs() if A.dim(x, y)]


def _read_antipode(r: _Reader, A: SemiHopfCategory) -> Antipode:
    comps = {}
    for c in r.items():
        x, y = c.get("src").str(), c.get("tgt").str()
        if x not in A.objects or y not in A.objects:
            c.fail(f"antipode on unknown hom ({x}, {y})")
        comps[(x, y)] = c.get("matrix").matrix(A.field, A.dim(y, x), A.dim(x, y))
    for x, y in A.graph.pairs():
        if (x, y) not in comps:
            if A.dim(x, y):
                r.fail(f"missing antipode component ({x}, {y})")
            comps[(x, y)] = ExactMatrix.zeros(A.field, A.dim(y, x), 0)
    return Antipode(comps)


def _graph_json(G: FinGraph) -> dict:
    return {"vertices": list(G.vertices), "edges": [list(e) for e in G.edges]}


def _read_graph(r: _Reader) -> FinGraph:
    verts = [v.str() for v in r.get("vertices").items()]
    edges = []
    for e in r.get("edges").items():
        parts = e.items()
        if len(parts) != 3:
            e.fail("an edge is [id, src, tgt]")
        edges.append(tuple(p.str() for p in parts))
    try:
        return FinGraph(tuple(verts), tuple(edges))
    except ValueError as exc:
        r.fail(str(exc))


def _fincat_json(C: FinCategory) -> dict:
    arrows = list(C.arrows)
    return {
        "objects": list(C.objects),
        "arrows": [[a, *C.arrows[a]] for a in arrows],
        "identities": {x: C.ids[x] for x in C.objects},
        "compose": [[f, g, C.comp[(f, g)]] for f in arrows for g in arrows if (f, g) in C.comp],
    }


def _read_fincat(r: _Reader) -> FinCategory:
    objs = [o.str() for o in r.get("objects").items()]
    arrows = {}
    for a in r.get("arrows").items():
        parts = a.items()
        if len(parts) != 3:
            a.fail("an arrow is [id, src, tgt]")
        name, s, t = (p.str() for p in parts)
        if name in arrows:
            a.fail(f"arrow {name!r} listed twice")
        arrows[name] = (s, t)
    ids = {x: v.str() for x, v in r.get("identities").entries()}
    comp = {}
    for c in r.get("compose").items():
        parts = c.items()
        if len(parts) != 3:
            c.fail("a composite is [f, g, f-then-g]")
        f, g, h = (p.str() for p in parts)
        comp[(f, g)] = h
    return FinCategory(tuple(objs), arrows, comp, ids)


def _ring_json(n: int) -> str:
    return "Z" if n == 0 else f"Z/{n}"


def _read_ring(r: _Reader) -> int:
    s = r.str().strip()
    if s == "Z":
        return 0
    if s.startswith("Z/") and s[2:].isdigit() and int(s[2:]) >= 2:
        return int(s[2:])
    r.fail(f"unknown ring {s!r}; expected 'Z' or 'Z/n' with n >= 2")


def _fgmodule_json(M: FgModule) -> dict:
    return {"ring": _ring_json(M.ring), "generators": M.gens, "relations": M.relations.tolist()}


def _read_fgmodule(r: _Reader) -> FgModule:
    ring = _read_ring(r.get("ring"))
    g = r.get("generators").int(0)
    rel = r.get("relations").int_matrix(g)
    return FgModule(ring, rel)


def _morphism_json(v, field: FieldSpec | None) -> dict:
    if isinstance(v, ModMap):
        return {
            "category": "fgmodule",
            "source": _fgmodule_json(v.source),
            "target": _fgmodule_json(v.target),
            "matrix": v.matrix.tolist(),
        }
    if isinstance(v, LinearMap):
        M = v.matrix
        return {"category": "linear", "rows": M.rows, "cols": M.cols, "matrix": _matrix_json(M)}
    if isinstance(v, VGraphMorphism):
        return {
            "category": "vgraph",
            "source": _vgraph_json(v.source),
            "target": _vgraph_json(v.target),
            "objects": {x: v.f0[x] for x in v.source.objects},
            "components": [
                {"src": x, "tgt": y, "matrix": _matrix_json(v.components[(x, y)])}
                for x, y in v.source.pairs()
                if v.source.dim(x, y) and v.target.dim(v.f0[x], v.f0[y])
            ],
        }
    raise TypeError(f"cannot serialize morphism {type(v).__name__}")


def _read_morphism(r: _Reader, field: FieldSpec | None):
    cat = r.get("category").str()
    if cat == "fgmodule":
        src, tgt = _read_fgmodule(r.get("source")), _read_fgmodule(r.get("target"))
        M = r.get("matrix").int_matrix(tgt.gens, src.gens)
        try:
            return ModMap(src, tgt, M)
        except ValueError as exc:
            r.fail(str(exc))
    if field is None:
        r.fail(f"morphisms of category {cat!r} need a field")
    if cat == "linear":
        rows, cols = r.get("rows").int(0), r.get("cols").int(0)
        return LinearMap(r.get("matrix").matrix(field, rows, cols))
    if cat == "vgraph":
        S, T = _read_vgraph(r.get("source")), _read_vgraph(r.get("target"))
        f0 = {x: v.str() for x, v in r.get("objects").entries()}
        comps = {}
        for c in r.get("components").items():
            x, y = c.get("src").str(), c.get("tgt").str()
            if x not in S.objects or y not in S.objects or x not in f0 or y not in f0:
                c.fail(f"component on unknown hom ({x}, {y})")
            comps[(x, y)] = c.get("matrix").matrix(field, T.dim(f0[x], f0[y]), S.dim(x, y))
        for x, y in S.pairs():
            if (x, y) not in comps and x in f0 and y in f0 and f0[x] in T.objects and f0[y] in T.objects:
                if S.dim(x, y) == 0 or T.dim(f0[x], f0[y]) == 0:
                    comps[(x, y)] = ExactMatrix.zeros(field, T.dim(f0[x], f0[y]), S.dim(x, y))
        try:
            return VGraphMorphism(S, T, f0, comps, field)
        except ValueError as exc:
            r.fail(str(exc))
    r.get("category").fail(f"unknown morphism category {cat!r}")


# -- documents -----------------------------------------------------------------

_LINEAR = {"vgraph": False, "coalgebra": True, "vcategory": True, "semihopf": True, "hopf": True}


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
    r = _Reader(data)
    if not isinstance(data, dict):
        r.fail("a document must be a JSON object")
    ver = r.get("schema_version")
    if ver.data != SCHEMA_VERSION:
        ver.fail(f"unsupported schema version {ver.data!r}; expected {SCHEMA_VERSION}")
    kind = r.get("kind").str()
    if kind not in KINDS:
        r.get("kind").fail(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    field = None
    if r.has("field"):
        try:
            field = FieldSpec.parse(r.get("field").str())
        except ValueError as exc:
            r.get("field").fail(str(exc))
    elif _LINEAR.get(kind):
        r.fail(f"documents of kind {kind!r} need a field")
    try:
        if kind == "vgraph":
            value = _read_vgraph(r)
        elif kind == "coalgebra":
            value = _read_coalg(r, field)
        elif kind == "vcategory":
            value = _read_vcat(r, field)
        elif kind == "semihopf":
            value = _read_semihopf(r, field)
        elif kind == "hopf":
            A = _read_semihopf(r, field)
            value = HopfDocument(A, _read_antipode(r.get("antipode"), A))
        elif kind == "graph":
            value = _read_graph(r)
        elif kind == "fincategory":
            value = _read_fincat(r)
        elif kind == "fgmodule":
            value = _read_fgmodule(r)
        else:
            value = _read_morphism(r, field)
    except ParseError:
        raise
    except (ValueError, TypeError) as exc:
        raise ParseError("$", str(exc)) from None
    return Document(kind, value, field)


def load(path: str) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(path, exc.strerror or str(exc)) from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: byte {exc.start}", "not valid UTF-8") from None
    try:
        return loads(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.where}", exc.message) from None


def to_json(kind: str, value, field: FieldSpec | None = None) -> dict:
    """The JSON object of a document (without the canonical text layout)."""
    if kind == "vgraph":
        body = _vgraph_json(value)
    elif kind == "coalgebra":
        body, field = _coalg_json(value), value.field
    elif kind == "vcategory":
        body, field = _vcat_json(value), value.field
    elif kind == "semihopf":
        body, field = _semihopf_json(value), value.field
    elif kind == "hopf":
        body = _semihopf_json(value.category)
        body["antipode"] = _antipode_json(value.category, value.antipode)
        field = value.category.field
    elif kind == "graph":
        body = _graph_json(value)
    elif kind == "fincategory":
        body = _fincat_json(value)
    elif kind == "fgmodule":
        body = _fgmodule_json(value)
    elif kind == "morphism":
        body = _morphism_json(value, field)
        if isinstance(value, VGraphMorphism):
            field = value.field
        elif isinstance(value, LinearMap):
            field = value.matrix.field
    else:
        raise ValueError(f"unknown kind {kind!r}")
    head = {"schema_version": SCHEMA_VERSION, "kind": kind}
    if field is not None and kind not in ("graph", "fincategory", "fgmodule") and not isinstance(value, ModMap):
        head["field"] = str(field)
    head.update(body)
    return head


def _is_flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (list, dict)) for x in v)


def _emit(v, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        parts = [f"{inner}{json.dumps(k)}: {_emit(v[k], indent + 1)}" for k in sorted(v)]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(v, list):
        if _is_flat(v):
            return "[" + ", ".join(json.dumps(x) for x in v) + "]"
        if all(_is_flat(x) for x in v):
            return "[" + ", ".join(_emit(x, indent + 1) for x in v) + "]"
        return "[\n" + ",\n".join(inner + _emit(x, indent + 1) for x in v) + "\n" + pad + "]"
    return json.dumps(v)


def dumps(obj: dict) -> str:
    """Canonical text: sorted keys, two-space indent, flat arrays on one line."""
    return _emit(obj, 0) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory and rename over the target."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".hopfcat-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
