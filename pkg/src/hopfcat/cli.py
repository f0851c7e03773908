"""Command-line front end.

Exit codes: 0 when the command succeeded and its answer is positive
(valid, flat, jointly monic, oracle equal), 1 when it ran but the answer
is negative (axiom failures, no antipode, mismatches), 2 on bad input.
Reports are JSON on standard output; ``-o`` writes a result document.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import __version__
from .coalg import check_coalgebra, cofree_factorization
from .freehopf import free_hopf_truncated
from .groupoid import (
    FinGraph,
    check_fincategory,
    core_groupoid,
    free_category_linearization,
    free_category_paths,
    free_groupoid_words,
    oracle_compare,
)
from .hopf import check_antipode_properties, flatten_weak_hopf, solve_antipode
from .kernel import ExactMatrix, Q, kernel_basis
from .modflat import FgModule, ModMap, flatness_test_finite_ring, is_jointly_monic, preserves_jointly_monic
from .serialize import Document, HopfDocument, LinearMap, ParseError, dumps, load, to_json, write_atomic
from .vcat import (
    CoalgebraGraph,
    SemiHopfCategory,
    check_semihopf,
    check_truncated,
    check_vcategory,
    free_semihopf_truncated,
    free_vcategory_truncated,
    variant,
)
from .vgraph import VGraph, VGraphMorphism, classify_morphism

__all__ = ["main", "run", "UsageError"]


class UsageError(Exception):
    """Input that parses but cannot be used by the requested command."""


def _threads() -> int:
    raw = os.environ.get("HOPFCAT_THREADS")
    if raw is None or raw.strip() == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"HOPFCAT_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"HOPFCAT_THREADS must be a positive integer, got {raw!r}")
    return n


def _emit(report: dict, out=None) -> None:
    (out or sys.stdout).write(dumps(report))


def _write(path: str | None, kind: str, value) -> None:
    if path:
        write_atomic(path, dumps(to_json(kind, value)))


def _expect(doc: Document, *kinds: str) -> None:
    if doc.kind not in kinds:
        raise UsageError(f"expected a document of kind {' or '.join(kinds)}, got {doc.kind!r}")


def _semihopf(doc: Document) -> SemiHopfCategory:
    _expect(doc, "semihopf", "hopf")
    return doc.value.category if isinstance(doc.value, HopfDocument) else doc.value


def _violations(vs) -> list[str]:
    return sorted(str(v) for v in vs)


# -- subcommands ---------------------------------------------------------------


def cmd_check(args) -> int:
    doc = load(args.file)
    v = doc.value
    report: dict = {"kind": doc.kind}
    if doc.kind == "coalgebra":
        viol = _violations(check_coalgebra(v))
    elif doc.kind == "vcategory":
        viol = _violations(check_vcategory(v))
    elif doc.kind == "semihopf":
        viol = _violations(check_semihopf(v))
    elif doc.kind == "hopf":
        viol = _violations(check_semihopf(v.category))
        if not viol:
            viol = _violations(check_antipode_properties(v.category, v.antipode))
    elif doc.kind == "fincategory":
        viol = sorted(check_fincategory(v))
    elif doc.kind == "fgmodule":
        viol = []
        report["invariant_factors"] = list(v.invariant_factors)
        report["module"] = str(v)
    elif doc.kind == "morphism" and isinstance(v, VGraphMorphism):
        viol = []
        c = classify_morphism(v)
        report.update(mono=c.mono, epi=c.epi)
    else:
        viol = []  # graphs, V-graphs, linear maps and module maps validate on load
    report["violations"] = viol
    report["valid"] = not viol
    _emit(report)
    return 0 if not viol else 1


def cmd_antipode(args) -> int:
    A = _semihopf(load(args.file))
    res = solve_antipode(A)
    report: dict = {
        "exists": res.exists,
        "unique": res.exists and res.unique,
        "kernel_dims": [{"src": x, "tgt": y, "dim": d} for (x, y), d in sorted(res.kernel_dims.items())],
    }
    if not res.exists:
        report["certificates"] = [
            {"src": x, "tgt": y, "certificate": [str(c) for c in cert]}
            for (x, y), cert in sorted(res.certificates.items())
        ]
        _emit(report)
        return 1
    report["antipode"] = to_json("hopf", HopfDocument(A, res.antipode))["antipode"]
    _write(args.output, "hopf", HopfDocument(A, res.antipode))
    _emit(report)
    return 0


def cmd_variant(args) -> int:
    A = _semihopf(load(args.file))
    B = variant(A, args.which)
    text = dumps(to_json("semihopf", B))
    if args.output:
        write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def _input_graph(doc: Document) -> VGraph:
    if doc.kind == "graph":
        return doc.value.to_vgraph()
    if doc.kind == "vgraph":
        return doc.value
    raise UsageError(f"expected a graph or vgraph document, got {doc.kind!r}")


def _bucket_rows(dims: dict) -> list[dict]:
    return [{"src": x, "tgt": y, "length": l, "dim": d} for (x, y, l), d in sorted(dims.items())]


def cmd_free_cat(args) -> int:
    doc = load(args.file)
    G = _input_graph(doc)
    T = free_vcategory_truncated(G, args.L, doc.field or Q)
    viol = _violations(check_truncated(T))
    _emit({"L": args.L, "buckets": _bucket_rows(T.bucket_dims()), "violations": viol, "valid": not viol})
    return 0 if not viol else 1


def cmd_free_shopf(args) -> int:
    doc = load(args.file)
    if doc.kind == "graph":
        T = free_category_linearization(doc.value, args.L)
    else:
        A = _semihopf(doc)
        CG = CoalgebraGraph(A.graph, {p: A.coalgebras[p] for p in A.graph.pairs() if A.dim(*p)}, A.field)
        T = free_semihopf_truncated(CG, args.L)
    viol = _violations(check_truncated(T))
    _emit({"L": args.L, "buckets": _bucket_rows(T.bucket_dims()), "violations": viol, "valid": not viol})
    return 0 if not viol else 1


def cmd_free_hopf(args) -> int:
    doc = load(args.file)
    if doc.kind == "graph":
        src = free_category_linearization(doc.value, args.L)
    else:
        src = _semihopf(doc)
    H = free_hopf_truncated(src, args.L, args.I)
    viol = _violations(H.validate())
    _emit(
        {
            "L": args.L,
            "I_max": H.I_max,
            "label": H.label,
            "buckets": _bucket_rows(H.bucket_dims),
            "violations": viol,
            "valid": not viol,
        }
    )
    return 0 if not viol else 1


def cmd_cofree_factor(args) -> int:
    cdoc, mdoc = load(args.coalgebra), load(args.map)
    _expect(cdoc, "coalgebra")
    _expect(mdoc, "morphism")
    if not isinstance(mdoc.value, LinearMap):
        raise UsageError("the map must be a morphism of category 'linear'")
    C, gamma = cdoc.value, mdoc.value.matrix
    if gamma.field != C.field:
        raise UsageError(f"map is over {gamma.field}, coalgebra over {C.field}")
    if gamma.cols != C.dim:
        raise UsageError(f"map has {gamma.cols} columns, coalgebra has dimension {C.dim}")
    F = cofree_factorization(C, gamma)
    viol = _violations(check_coalgebra(F.image))
    _write(args.output, "coalgebra", F.image)
    _emit(
        {
            "kernel": [[str(c) for c in row] for row in F.kernel.matrix().T.tolist()] if F.kernel.dim else [],
            "kernel_dim": F.kernel.dim,
            "image_dim": F.image.dim,
            "stabilization_index": F.stabilization_index,
            "jointly_monic": F.jointly_monic(),
            "violations": viol,
            "valid": not viol,
        }
    )
    return 0 if not viol and F.jointly_monic() else 1


def cmd_flatten(args) -> int:
    doc = load(args.file)
    A = _semihopf(doc)
    S = doc.value.antipode if isinstance(doc.value, HopfDocument) else None
    if S is None:
        res = solve_antipode(A)
        S = res.antipode
    W = flatten_weak_hopf(A, S)
    _emit(
        {
            "dim": W.data.dim,
            "antipode": S is not None,
            "axioms": {k: bool(v) for k, v in sorted(W.report.items())},
            "delta_one_trivial": W.delta_one_trivial,
            "degenerate": W.degenerate,
            "valid": W.ok,
        }
    )
    return 0 if W.ok else 1


def cmd_groupoid(args) -> int:
    doc = load(args.file)
    if args.action == "core":
        _expect(doc, "fincategory")
        bad = check_fincategory(doc.value)
        if bad:
            _emit({"violations": sorted(bad), "valid": False})
            return 1
        C = core_groupoid(doc.value)
        _write(args.output, "fincategory", C)
        _emit({"objects": list(C.objects), "arrows": sorted(C.arrows), "valid": True})
        return 0
    _expect(doc, "graph")
    if args.L is None:
        raise UsageError(f"groupoid {args.action} needs -L")
    G: FinGraph = doc.value
    words = free_groupoid_words(G, args.L)
    if args.action == "free":
        paths = free_category_paths(G, args.L)
        rows = [
            {"src": x, "tgt": y, "length": l, "paths": len(paths[(x, y, l)]), "reduced_words": len(w)}
            for (x, y, l), w in sorted(words.items())
        ]
        _emit({"L": args.L, "buckets": rows})
    else:
        rows = [
            {"src": x, "tgt": y, "length": l, "words": [str(w) for w in ws]}
            for (x, y, l), ws in sorted(words.items())
            if ws
        ]
        _emit({"L": args.L, "buckets": rows})
    return 0


def cmd_flat_test(args) -> int:
    doc = load(args.module)
    _expect(doc, "fgmodule")
    M: FgModule = doc.value
    if M.ring == 0:
        raise UsageError("flatness testing needs a finite base ring Z/n")
    flat, d = flatness_test_finite_ring(M)
    _emit({"module": str(M), "flat": flat, "witness_ideal": None if flat else f"({d})"})
    return 0 if flat else 1


def cmd_jointly_monic(args) -> int:
    docs = [load(p) for p in args.maps]
    for d in docs:
        _expect(d, "morphism")
    vals = [d.value for d in docs]
    if all(isinstance(v, ModMap) for v in vals):
        if args.tensor:
            tdoc = load(args.tensor)
            _expect(tdoc, "fgmodule")
            ok, w = preserves_jointly_monic(tdoc.value, vals)
        else:
            ok, w = is_jointly_monic(vals)
        _emit({"jointly_monic": ok, "witness": list(w) if w else None})
        return 0 if ok else 1
    if all(isinstance(v, LinearMap) for v in vals):
        if args.tensor:
            raise UsageError("--tensor applies to module maps only")
        mats = [v.matrix for v in vals]
        f = mats[0].field
        if any(m.field != f or m.cols != mats[0].cols for m in mats):
            raise UsageError("linear maps must share their field and source dimension")
        rows = []
        for m in mats:
            rows.extend(m.tolist())
        K = kernel_basis(ExactMatrix.from_rows(f, rows, mats[0].cols))
        _emit({"jointly_monic": not K, "witness": [str(c) for c in K[0]] if K else None})
        return 0 if not K else 1
    if all(isinstance(v, VGraphMorphism) for v in vals):
        from .vgraph import jointly_monic_graph_family

        ok = jointly_monic_graph_family(vals)
        _emit({"jointly_monic": ok, "witness": None})
        return 0 if ok else 1
    raise UsageError("all maps must be of the same category (fgmodule, linear or vgraph)")


def _oracle_one(task):
    path, L, I = task
    doc = load(path)
    _expect(doc, "graph")
    r = oracle_compare(doc.value, L, I)
    return path, r


def cmd_oracle_compare(args) -> int:
    tasks = [(p, args.L, args.I) for p in args.graphs]
    workers = min(_threads(), len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_oracle_one, tasks))
    else:
        results = [_oracle_one(t) for t in tasks]
    out = []
    for path, r in results:
        out.append(
            {
                "graph": path,
                "equal": r.equal,
                "rows": [
                    {"src": x, "tgt": y, "length": l, "free_hopf": h, "reduced_words": w}
                    for x, y, l, h, w in r.rows
                ],
            }
        )
    equal = all(r.equal for _, r in results)
    _emit({"L": args.L, "I_max": args.I, "equal": equal, "graphs": out})
    return 0 if equal else 1


# -- entry points --------------------------------------------------------------


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hopfcat", description="Exact computations with finite semi-Hopf and Hopf categories.")
    p.add_argument("--version", action="version", version=f"hopfcat {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", help="validate a document against its axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("antipode", help="solve for the antipode of a semi-Hopf category")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_antipode)

    s = sub.add_parser("variant", help="opposite, co-opposite or both")
    s.add_argument("file")
    s.add_argument("--which", choices=["op", "cop", "opcop"], required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_variant)

    for name, func, what in (
        ("free-cat", cmd_free_cat, "truncated free V-category on a graph"),
        ("free-shopf", cmd_free_shopf, "truncated free semi-Hopf category"),
    ):
        s = sub.add_parser(name, help=what)
        s.add_argument("file")
        s.add_argument("-L", type=_nonneg, required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("free-hopf", help="truncated free Hopf category (upper bounds)")
    s.add_argument("file")
    s.add_argument("-L", type=_positive, required=True)
    s.add_argument("-I", type=_positive, default=None, help="letter index bound (default: L)")
    s.set_defaults(func=cmd_free_hopf)

    s = sub.add_parser("cofree-factor", help="factor a coalgebra through the cofree coalgebra on a map")
    s.add_argument("coalgebra")
    s.add_argument("map")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cofree_factor)

    s = sub.add_parser("flatten", help="flatten to a weak bialgebra and test its axioms")
    s.add_argument("file")
    s.set_defaults(func=cmd_flatten)

    s = sub.add_parser("groupoid", help="free groupoid words and core groupoids")
    s.add_argument("action", choices=["free", "core", "words"])
    s.add_argument("file")
    s.add_argument("-L", type=_nonneg)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_groupoid)

    s = sub.add_parser("flat-test", help="ideal criterion for flatness over Z/n")
    s.add_argument("module")
    s.set_defaults(func=cmd_flat_test)

    s = sub.add_parser("jointly-monic", help="joint monicity of a family with common source")
    s.add_argument("maps", nargs="+")
    s.add_argument("--tensor", help="fgmodule to tensor the family with first")
    s.set_defaults(func=cmd_jointly_monic)

    s = sub.add_parser("oracle-compare", help="free Hopf bucket dimensions against reduced-word counts")
    s.add_argument("graphs", nargs="+")
    s.add_argument("-L", type=_positive, required=True)
    s.add_argument("-I", type=_positive, default=1, help="letter index bound (default: 1)")
    s.set_defaults(func=cmd_oracle_compare)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"hopfcat: parse error at {exc.where}: {exc.message}\n")
        return 2
    except (UsageError, ValueError, TypeError) as exc:
        sys.stderr.write(f"hopfcat: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
