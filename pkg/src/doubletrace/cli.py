"""Command-line front end: graph files in, JSON or DOT out.

Graph file format, one record per line, ``#`` comments and blank lines
ignored:

    n <vertices> [simple|multi|mixed]   header, kind defaults to simple
    e <u> <v>                           undirected edge
    a <u> <v>                           arc, tail to head (mixed only)
    E <i1> <i2> ...                     edges required antiparallel,
                                        0-based in file order

Results are printed as JSON on stdout (``--format dot`` switches built
traces to DOT); diagnostics go to stderr.  Exit codes: 0 yes/valid,
1 no/invalid, 2 bad input or usage, 3 capacity (the size limit of an
exhaustive step was hit, which is an "unknown", not a "no").
"""

from __future__ import annotations

import argparse
import itertools
import json
import multiprocessing
import os
import sys
from typing import Optional, Sequence

from .construction import (
    antiparallel_strong_trace,
    build_E_restricted_d_stable_trace,
    build_E_restricted_strong_trace,
    build_mixed_trace,
    parallel_strong_trace,
)
from .enumeration import (
    TraceQuery,
    canonical_form,
    enumerate_classes,
    enumerate_fixed_start,
    oracle_find,
    orbit_size,
)
from .errors import (
    CapacityError,
    DoubleTraceError,
    InputError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
)
from .feasibility import (
    FeasibilityAnswer,
    SpanningTreeCertificate,
    has_antiparallel_d_stable_trace,
    has_antiparallel_strong_trace,
    has_d_stable_trace,
    has_E_restricted_d_stable_trace,
    has_E_restricted_d_stable_trace_mixed,
    has_E_restricted_double_trace,
    has_E_restricted_strong_trace,
    has_E_restricted_strong_trace_mixed,
    has_parallel_d_stable_trace,
    has_parallel_strong_trace,
    has_strong_trace,
)
from .graphs import Graph, Host, MixedGraph, Multigraph, automorphisms
from .traces import (
    ClosedWalk,
    DoubleTrace,
    RestrictionSet,
    check_restriction,
    classify_directions,
    transition_system,
    validate_double_trace,
)

VARIANTS = ("strong", "dstable", "parallel", "antiparallel", "restricted", "double")

# free-direction construction sweeps candidate antiparallel sets; 2^m of them
SWEEP_MAX_EDGES = 16


# ---------------------------------------------------------------------------
# Graph files
# ---------------------------------------------------------------------------


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None


def parse_graph(text: str) -> tuple[Host, Optional[RestrictionSet]]:
    """Read one graph document; returns the host and its restriction, if any.

    Restriction indices count edge records (``e`` and ``a`` lines together)
    in file order and must name undirected edges.
    """
    kind: Optional[str] = None
    nverts: Optional[int] = None
    und: list[tuple[int, int]] = []
    arcs: list[tuple[int, int]] = []
    record_kinds: list[str] = []  # "e"/"a" per edge record, in file order
    und_seen: set[tuple[int, int]] = set()
    arc_seen: set[tuple[int, int]] = set()
    restriction_ids: Optional[list[int]] = None
    restriction_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "n":
            if nverts is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) not in (2, 3):
                raise ParseError("header must be 'n <vertices> [simple|multi|mixed]'", lineno)
            nverts = _parse_int(fields[1], lineno, "vertex count")
            if nverts < 0:
                raise ParseError("vertex count must be non-negative", lineno)
            kind = fields[2] if len(fields) == 3 else "simple"
            if kind not in ("simple", "multi", "mixed"):
                raise ParseError(f"unknown graph kind {kind!r}", lineno)
        elif tag in ("e", "a"):
            if nverts is None:
                raise ParseError("edge record before the 'n' header", lineno)
            if len(fields) != 3:
                raise ParseError(f"edge record must be '{tag} <u> <v>'", lineno)
            u = _parse_int(fields[1], lineno, "vertex")
            v = _parse_int(fields[2], lineno, "vertex")
            for x in (u, v):
                if not (0 <= x < nverts):
                    raise ParseError(f"vertex {x} out of range 0..{nverts - 1}", lineno)
            if tag == "a":
                if kind != "mixed":
                    raise ParseError("arcs require a 'mixed' header", lineno)
                if u == v:
                    raise ParseError("arcs may not be loops", lineno)
                if (u, v) in arc_seen:
                    raise ParseError(f"duplicate arc ({u}, {v})", lineno)
                arc_seen.add((u, v))
                record_kinds.append("a")
                arcs.append((u, v))
            else:
                if kind != "multi":
                    if u == v:
                        raise ParseError("loops need a 'multi' header", lineno)
                    key = (min(u, v), max(u, v))
                    if key in und_seen:
                        raise ParseError(f"duplicate edge {key}", lineno)
                    und_seen.add(key)
                record_kinds.append("e")
                und.append((u, v))
        elif tag == "E":
            if restriction_ids is not None:
                raise ParseError("duplicate restriction record", lineno)
            restriction_ids = [
                _parse_int(t, lineno, "edge index") for t in fields[1:]
            ]
            restriction_line = lineno
        else:
            raise ParseError(f"unknown record {tag!r}", lineno)

    if nverts is None:
        raise ParseError("missing 'n <vertices>' header")

    host: Host
    if kind == "simple":
        host = Graph(nverts, tuple(und))
    elif kind == "multi":
        host = Multigraph(nverts, tuple(und))
    else:
        host = MixedGraph(nverts, tuple(und), tuple(arcs))

    restriction: Optional[RestrictionSet] = None
    if restriction_ids is not None:
        mapped = []
        # position among undirected records; arcs shift later edge numbers
        und_position = [0] * len(record_kinds)
        seen_e = 0
        for i, rk in enumerate(record_kinds):
            und_position[i] = seen_e
            if rk == "e":
                seen_e += 1
        for i in restriction_ids:
            if not (0 <= i < len(record_kinds)):
                raise ParseError(f"restriction index {i} out of range", restriction_line)
            if record_kinds[i] == "a":
                raise ParseError(
                    f"restriction index {i} names an arc; arcs have fixed directions",
                    restriction_line,
                )
            mapped.append(und_position[i])
        restriction = RestrictionSet.of(mapped)
    return host, restriction


def render_graph(host: Host, restriction: Optional[RestrictionSet] = None) -> str:
    """Inverse of parse_graph: parse(render(g)) is structurally equal to g."""
    if isinstance(host, Graph):
        kind = "simple"
    elif isinstance(host, Multigraph):
        kind = "multi"
    elif isinstance(host, MixedGraph):
        kind = "mixed"
    else:
        raise InputError(f"cannot render host of type {type(host).__name__}")
    lines = [f"n {host.vertex_count} {kind}"]
    for u, v in host.edges:
        lines.append(f"e {u} {v}")
    for u, v in getattr(host, "arcs", ()):
        lines.append(f"a {u} {v}")
    if restriction is not None:
        ids = " ".join(str(i) for i in sorted(restriction.antiparallel_edges))
        lines.append(f"E {ids}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Variant dispatch
# ---------------------------------------------------------------------------


def _undirected_count(host: Host) -> int:
    return len(host.edges)


def _effective_restriction(
    variant: str, host: Host, file_restriction: Optional[RestrictionSet]
) -> Optional[RestrictionSet]:
    if variant == "parallel":
        return RestrictionSet.of(())
    if variant == "antiparallel":
        return RestrictionSet.of(range(_undirected_count(host)))
    if variant in ("restricted", "double"):
        return file_restriction if file_restriction is not None else RestrictionSet.of(())
    return None  # strong/dstable leave directions free


def _reject_d(variant: str, d: Optional[int]) -> None:
    if d is not None and variant in ("strong", "double"):
        raise InputError(f"--d does not apply to the {variant} variant")


def feasibility_answer(
    host: Host,
    variant: str,
    d: Optional[int],
    file_restriction: Optional[RestrictionSet],
) -> FeasibilityAnswer:
    """Route one query to the decision procedure that answers it."""
    if variant not in VARIANTS:
        raise InputError(f"unknown variant {variant!r}")
    _reject_d(variant, d)
    r = _effective_restriction(variant, host, file_restriction)
    if isinstance(host, MixedGraph):
        if variant != "restricted":
            raise InputError(
                "mixed graphs support only the restricted variant; arcs fix "
                "their own directions"
            )
        if d is None:
            return has_E_restricted_strong_trace_mixed(host, r)
        return has_E_restricted_d_stable_trace_mixed(host, r, d)
    if variant == "strong":
        return has_strong_trace(host)
    if variant == "dstable":
        return has_d_stable_trace(host, 1 if d is None else d)
    if variant == "parallel":
        if d is None:
            return has_parallel_strong_trace(host)
        return has_parallel_d_stable_trace(host, d)
    if variant == "antiparallel":
        if d is None:
            return has_antiparallel_strong_trace(host)
        return has_antiparallel_d_stable_trace(host, d)
    if variant == "double":
        return has_E_restricted_double_trace(host, r)
    # restricted
    if not isinstance(host, Graph):
        raise InputError("the restricted variant needs a simple graph or a mixed graph")
    if d is None:
        return has_E_restricted_strong_trace(host, r)
    return has_E_restricted_d_stable_trace(host, r, d)


def _free_direction_build(g: Graph, d: Optional[int]) -> DoubleTrace:
    """Realize a free-direction verdict by fixing a workable antiparallel set.

    Any trace fixes one, so sweeping candidate sets in (size, lex) order is
    complete.  The fragment left outside the set must be even, which prunes
    by degree parity before the full test runs.
    """
    m = g.edge_count
    if m > SWEEP_MAX_EDGES:
        raise CapacityError(
            f"free-direction construction sweeps antiparallel sets of up to "
            f"{m} edges; the limit is {SWEEP_MAX_EDGES}"
        )
    target = [g.degree(v) % 2 for v in range(g.vertex_count)]
    for k in range(m + 1):
        for combo in itertools.combinations(range(m), k):
            parity = [0] * g.vertex_count
            for i in combo:
                a, b = g.endpoints(i)
                parity[a] ^= 1
                parity[b] ^= 1
            if parity != target:
                continue
            r = RestrictionSet.of(combo)
            if d is None:
                if has_E_restricted_strong_trace(g, r).verdict:
                    return build_E_restricted_strong_trace(g, r)
            elif has_E_restricted_d_stable_trace(g, r, d).verdict:
                return build_E_restricted_d_stable_trace(g, r, d)
    raise InternalConsistencyError(
        "free-direction verdict was positive but no antiparallel set is realizable"
    )


def _oracle_build(
    host: Host, require_strong: bool, d: int, r: Optional[RestrictionSet]
) -> DoubleTrace:
    trace = oracle_find(
        TraceQuery(host, require_strong=require_strong, d=d, restriction=r)
    )
    if trace is None:
        raise InternalConsistencyError(
            "verdict was positive but the exhaustive search found no trace"
        )
    return trace


def build_trace(
    host: Host,
    variant: str,
    d: Optional[int],
    file_restriction: Optional[RestrictionSet],
) -> DoubleTrace:
    """Construct a trace behind a positive verdict for the same query.

    Callers check feasibility first; an infeasible query surfaces as a
    PreconditionError from the builders.
    """
    r = _effective_restriction(variant, host, file_restriction)
    if isinstance(host, MixedGraph):
        return build_mixed_trace(host, r, d)
    if variant == "parallel":
        # the repaired doubled tour is strong, hence d-stable whenever the
        # degree gate passed
        return parallel_strong_trace(host)
    if variant == "antiparallel":
        if d is None:
            answer = has_antiparallel_strong_trace(host)
            if not answer.verdict:
                raise PreconditionError("; ".join(answer.violated))
            return antiparallel_strong_trace(host, answer.certificate)
        if isinstance(host, Graph):
            return build_E_restricted_d_stable_trace(host, r, d)
        return _oracle_build(host, False, d, r)
    if variant == "restricted":
        if not isinstance(host, Graph):
            raise InputError("the restricted variant needs a simple graph or a mixed graph")
        if d is None:
            return build_E_restricted_strong_trace(host, r)
        return build_E_restricted_d_stable_trace(host, r, d)
    if variant == "double":
        return _oracle_build(host, False, 0, r)
    # strong / dstable: directions are free
    if isinstance(host, Graph):
        return _free_direction_build(host, d)
    if variant == "strong":
        return _oracle_build(host, True, 0, None)
    return _oracle_build(host, False, 1 if d is None else d, None)


# ---------------------------------------------------------------------------
# JSON and DOT rendering
# ---------------------------------------------------------------------------


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _certificate_json(cert: Optional[SpanningTreeCertificate]):
    if cert is None:
        return None
    return {
        "co_tree_components": [
            {
                "edges": sorted(c.edges),
                "odd": c.odd,
                "vertices": sorted(c.vertices),
                "witnessed": c.has_witness,
            }
            for c in cert.co_tree_report
        ],
        "edge_count": cert.host.edge_count,
        "tree_edges": sorted(cert.tree_edges),
        "vertex_count": cert.host.vertex_count,
    }


def _answer_json(
    answer: FeasibilityAnswer,
    variant: str,
    d: Optional[int],
    r: Optional[RestrictionSet],
):
    return {
        "certificate": _certificate_json(answer.certificate),
        "d": d,
        "even_fragment": (
            sorted(answer.even_fragment.edges)
            if answer.even_fragment is not None
            else None
        ),
        "outcome": "true" if answer.verdict else "false",
        "restriction": sorted(r.antiparallel_edges) if r is not None else None,
        "variant": variant,
        "violated": list(answer.violated),
    }


def _steps_json(host: Host, steps: Sequence[tuple[int, int]]):
    out = []
    for e, f in steps:
        a, b = host.endpoints(e)
        tail, head = (a, b) if f == 0 else (b, a)
        out.append({"edge": e, "flag": f, "from": tail, "to": head})
    return out


def _direction_labels(walk: ClosedWalk) -> list[str]:
    labels = list(classify_directions(walk))
    for i in range(walk.host.edge_count):
        if walk.host.is_arc(i):
            labels[i] = "arc"
    return labels


def _trace_json(walk: DoubleTrace, variant: str):
    return {
        "directions": _direction_labels(walk),
        "length": len(walk.steps),
        "outcome": "trace",
        "steps": _steps_json(walk.host, walk.steps),
        "variant": variant,
    }


def _trace_dot(walk: DoubleTrace) -> str:
    """Trace as a DOT digraph: one arrow per traversal, labeled with the
    edge index and the step position."""
    lines = ["digraph doubletrace {"]
    for v in range(walk.host.vertex_count):
        lines.append(f"  {v};")
    for t, (e, f) in enumerate(walk.steps):
        a, b = walk.host.endpoints(e)
        tail, head = (a, b) if f == 0 else (b, a)
        lines.append(f'  {tail} -> {head} [label="e{e} s{t}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _load_document(path: str) -> tuple[Host, Optional[RestrictionSet]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_graph(text)


def _resolve_variant(args, host: Host, file_restriction) -> str:
    if args.variant is not None:
        return args.variant
    if isinstance(host, MixedGraph) or file_restriction is not None:
        return "restricted"
    return "strong"


def _cmd_check(args) -> int:
    host, file_r = _load_document(args.file)
    variant = _resolve_variant(args, host, file_r)
    try:
        answer = feasibility_answer(host, variant, args.d, file_r)
    except PreconditionError as exc:
        answer = FeasibilityAnswer(False, violated=(str(exc),))
    r = _effective_restriction(variant, host, file_r)
    _emit(_answer_json(answer, variant, args.d, r))
    return 0 if answer.verdict else 1


def _cmd_construct(args) -> int:
    host, file_r = _load_document(args.file)
    variant = _resolve_variant(args, host, file_r)
    try:
        answer = feasibility_answer(host, variant, args.d, file_r)
    except PreconditionError as exc:
        answer = FeasibilityAnswer(False, violated=(str(exc),))
    if not answer.verdict:
        _emit({"outcome": "infeasible", "variant": variant, "violated": list(answer.violated)})
        return 1
    walk = build_trace(host, variant, args.d, file_r)
    if args.format == "dot":
        sys.stdout.write(_trace_dot(walk))
    else:
        _emit(_trace_json(walk, variant))
    return 0


def _sweep_job(item):
    g, anti, d = item
    if d is None:
        q = TraceQuery(g, require_strong=True, restriction=RestrictionSet.of(anti))
    else:
        q = TraceQuery(g, d=d, restriction=RestrictionSet.of(anti))
    return [tuple(t.steps) for t in enumerate_fixed_start(q)]


def _restriction_size_sweep(
    g: Graph, p: int, d: Optional[int], jobs: int
) -> tuple[list[tuple[tuple[int, int], ...]], list[int]]:
    """Canonical traces over every restriction of size p, deduplicated under
    the full symmetry group (which permutes the restrictions themselves)."""
    if not (0 <= p <= g.edge_count):
        raise InputError(f"--p must be between 0 and {g.edge_count}")
    work = [
        (g, frozenset(combo), d)
        for combo in itertools.combinations(range(g.edge_count), p)
    ]
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            batches = pool.map(_sweep_job, work)
    else:
        batches = [_sweep_job(item) for item in work]
    auts = automorphisms(g)
    canon_set: set[tuple[tuple[int, int], ...]] = set()
    for batch in batches:
        for seq in batch:
            canon_set.add(canonical_form(DoubleTrace(g, seq), auts))
    reps = sorted(canon_set)
    sizes = [orbit_size(DoubleTrace(g, rep), auts) for rep in reps]
    return reps, sizes


def _cmd_enumerate(args) -> int:
    host, file_r = _load_document(args.file)
    variant = _resolve_variant(args, host, file_r)
    jobs = args.jobs
    if args.p is not None:
        if not isinstance(host, Graph):
            raise InputError("--p needs a simple graph")
        if variant not in ("strong", "dstable", "restricted"):
            raise InputError(f"--p fixes the direction sets; drop --variant {variant}")
        reps, sizes = _restriction_size_sweep(host, args.p, args.d, jobs)
    elif isinstance(host, Graph):
        query = _query_for(host, variant, args.d, file_r)
        classes = enumerate_classes(query)
        reps = [c.canonical for c in classes]
        sizes = [c.size for c in classes]
    else:
        if args.classes:
            raise InputError("--classes needs a simple graph")
        query = _query_for(host, variant, args.d, file_r)
        ident = (tuple(range(host.vertex_count)),)
        reps = sorted(
            {canonical_form(t, ident) for t in enumerate_fixed_start(query)}
        )
        sizes = [orbit_size(DoubleTrace(host, rep), ident) for rep in reps]
    doc = {
        "count": len(reps),
        "p": args.p,
        "variant": variant,
    }
    if args.classes:
        doc["outcome"] = "classes"
        doc["classes"] = [
            {"size": s, "steps": _steps_json(host, rep)}
            for rep, s in zip(reps, sizes)
        ]
        doc["raw_total"] = sum(sizes)
    else:
        doc["outcome"] = "traces"
        doc["traces"] = [_steps_json(host, rep) for rep in reps]
    _emit(doc)
    return 0 if reps else 1


def _query_for(
    host: Host, variant: str, d: Optional[int], file_r: Optional[RestrictionSet]
) -> TraceQuery:
    _reject_d(variant, d)
    if isinstance(host, MixedGraph) and variant != "restricted":
        raise InputError(
            "mixed graphs support only the restricted variant; arcs fix "
            "their own directions"
        )
    r = _effective_restriction(variant, host, file_r)
    if variant == "strong":
        return TraceQuery(host, require_strong=True)
    if variant == "dstable":
        return TraceQuery(host, d=1 if d is None else d)
    if variant == "double":
        return TraceQuery(host, restriction=r)
    if d is None:
        return TraceQuery(host, require_strong=True, restriction=r)
    return TraceQuery(host, d=d, restriction=r)


def _read_trace_steps(doc, host: Host) -> tuple[tuple[int, int], ...]:
    if not isinstance(doc, dict) or not isinstance(doc.get("steps"), list):
        raise InputError("trace file must be a JSON object with a 'steps' array")
    steps = []
    for t, item in enumerate(doc["steps"]):
        if not isinstance(item, dict) or not isinstance(item.get("edge"), int):
            raise InputError(f"step {t}: expected an object with an integer 'edge'")
        e = item["edge"]
        if not (0 <= e < host.edge_count):
            raise InputError(f"step {t}: edge {e} out of range")
        a, b = host.endpoints(e)
        flag = item.get("flag")
        if flag is None:
            # fall back to the stated tail; loops cannot be recovered that way
            if a == b:
                raise InputError(f"step {t}: loop steps need an explicit 'flag'")
            tail = item.get("from")
            if tail not in (a, b):
                raise InputError(f"step {t}: 'from' must name an endpoint of edge {e}")
            flag = 0 if tail == a else 1
        if flag not in (0, 1):
            raise InputError(f"step {t}: 'flag' must be 0 or 1")
        tail, head = (a, b) if flag == 0 else (b, a)
        if "from" in item and item["from"] != tail:
            raise InputError(f"step {t}: 'from' contradicts edge {e} flag {flag}")
        if "to" in item and item["to"] != head:
            raise InputError(f"step {t}: 'to' contradicts edge {e} flag {flag}")
        steps.append((e, flag))
    return tuple(steps)


def _cmd_classify(args) -> int:
    try:
        with open(args.trace, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {args.trace}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{args.trace}: {exc}") from None
    host, file_r = _load_document(args.graph)
    walk = DoubleTrace(host, _read_trace_steps(doc, host))
    report = validate_double_trace(walk)

    directions = None
    restriction_match = None
    strong = None
    stable_order = None
    repetitions = None
    if report.ok:
        directions = _direction_labels(walk)
        if file_r is not None:
            restriction_match = check_restriction(walk, file_r)
        per_vertex = []
        min_sizes = []
        for v in range(host.vertex_count):
            ts = transition_system(walk, v)
            per_vertex.append(ts.component_count)
            if ts.components:
                min_sizes.append(ts.min_component_size())
        strong = all(c <= 1 for c in per_vertex)
        # the largest d the walk is d-stable for; null means unbounded
        stable_order = min(min_sizes) - 1 if min_sizes else None
        repetitions = {
            "per_vertex": per_vertex,
            "total": sum(c - 1 for c in per_vertex if c > 0),
        }
    _emit(
        {
            "directions": directions,
            "outcome": "report",
            "problems": list(report.problems),
            "repetitions": repetitions,
            "restriction_match": restriction_match,
            "stable_order": stable_order,
            "strong": strong,
            "valid": report.ok,
        }
    )
    return 0 if report.ok else 1


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def _default_jobs() -> int:
    raw = os.environ.get("DOUBLETRACE_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="doubletrace",
        description="Decide, construct and enumerate double traces of graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="graph file")
        p.add_argument(
            "--variant",
            choices=VARIANTS,
            default=None,
            help="trace kind; defaults to restricted when the file carries a "
            "restriction or is mixed, strong otherwise",
        )
        p.add_argument("--d", type=int, default=None, metavar="K",
                       help="require d-stability of order K")
        p.add_argument("--jobs", type=int, default=_default_jobs(),
                       help="worker processes for sweep steps (default 1, "
                       "or DOUBLETRACE_JOBS)")

    p_check = sub.add_parser("check", help="decide whether a trace exists")
    common(p_check)
    p_check.set_defaults(func=_cmd_check)

    p_con = sub.add_parser("construct", help="build a trace behind a positive verdict")
    common(p_con)
    p_con.add_argument("--format", choices=("json", "dot"), default="json")
    p_con.set_defaults(func=_cmd_construct)

    p_enum = sub.add_parser("enumerate", help="list non-equivalent traces")
    common(p_enum)
    p_enum.add_argument("--p", type=int, default=None, metavar="P",
                        help="sweep every restriction with exactly P "
                        "antiparallel edges")
    p_enum.add_argument("--classes", action="store_true",
                        help="report symmetry class sizes")
    p_enum.set_defaults(func=_cmd_enumerate)

    p_cls = sub.add_parser("classify", help="validate and describe a trace file")
    p_cls.add_argument("trace", help="trace file (construct JSON output)")
    p_cls.add_argument("graph", help="graph file")
    p_cls.set_defaults(func=_cmd_classify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except CapacityError as exc:
        _emit({"message": str(exc), "outcome": "unknown (capacity)"})
        return 3
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DoubleTraceError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
