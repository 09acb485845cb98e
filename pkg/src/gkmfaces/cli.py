"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when a check fails or
the input is semantically unusable (invalid graph, cap exceeded), 2 for
usage and parse errors.  Output is assembled in memory and flushed once,
so identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from . import complexes, formats, gkm, poset, reconstruct
from .errors import GkmFacesError, ParseError
from .matroid import flats_lattice, independence_degree


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise GkmFacesError(f"cannot read {path}: {exc.strerror}") from exc


def _face_table(p, out: list[str]) -> None:
    out.append(f"faces: {len(p.elements)}")
    for e in p.elements:
        com = p.drk[e] - p.rank[e]
        out.append(
            f"{e} rank {p.rank[e]} drk {p.drk[e]} com {com} vertices {p.labels[e]}"
        )


def _emit_poset(p, args, out: list[str]) -> None:
    if args.json:
        out.append(formats.dump_json(formats.poset_to_json(p)).rstrip("\n"))
    elif args.dot:
        out.append(formats.poset_to_dot(p).rstrip("\n"))
    else:
        out.append(formats.format_poset(p).rstrip("\n"))


# ----------------------------------------------------------------------
# matroid subcommands


def cmd_matroid_flats(args, out: list[str]) -> int:
    ws = formats.parse_matroid(_read(args.file))
    lattice = gkm.representation_face_poset(ws)
    if args.json:
        out.append(formats.dump_json(formats.poset_to_json(lattice)).rstrip("\n"))
    elif args.dot:
        out.append(formats.poset_to_dot(lattice).rstrip("\n"))
    else:
        out.append(f"flats: {len(lattice.elements)}")
        for e in lattice.elements:
            out.append(f"{lattice.labels[e]} rank {lattice.rank[e]} drk {lattice.drk[e]}")
    return 0


def cmd_matroid_check(args, out: list[str]) -> int:
    ws = formats.parse_matroid(_read(args.file))
    lattice = flats_lattice(ws)
    geometric = poset.is_geometric_lattice(lattice)
    failures = 0
    out.append(f"flats: {len(lattice.elements)}")
    out.append(
        "geometric lattice: " + ("pass" if geometric else f"fail: {geometric.reason}")
    )
    failures += 0 if geometric else 1
    if geometric:
        ranks = poset.grading_of(lattice)
        atoms = [e for e in lattice.elements if ranks[e] == 1]
        coherent = poset.check_coherent(lattice, {a: lattice.drk[a] for a in atoms})
        out.append(
            "coherent with multiplicity weights: "
            + ("pass" if coherent else f"fail at {coherent.element}")
        )
        failures += 0 if coherent else 1
    out.append(f"independence degree: {independence_degree(ws)}")
    return 1 if failures else 0


def cmd_matroid_wedge(args, out: list[str]) -> int:
    ws = formats.parse_matroid(_read(args.file))
    report = complexes.verify_wedge_prediction(ws)
    if args.json:
        payload = {
            "kind": "wedge-report",
            "rank": report.rank,
            "mobius_magnitude": report.mobius_magnitude,
            "flats_interval_betti": report.proper_betti,
            "flats_interval": (
                "skipped" if report.proper_skipped else "pass" if report.proper_ok else "fail"
            ),
            "top_h": report.top_h,
            "independence_betti": report.complex_betti,
            "independence": "pass" if report.complex_ok else "fail",
            "ok": report.ok,
        }
        payload["flats_interval_betti"] = (
            None
            if report.proper_betti is None
            else {str(d): b for d, b in report.proper_betti.items()}
        )
        payload["independence_betti"] = {str(d): b for d, b in report.complex_betti.items()}
        out.append(formats.dump_json(payload).rstrip("\n"))
    else:
        out.append(f"matroid rank: {report.rank}")
        out.append(f"mobius magnitude: {report.mobius_magnitude}")
        if report.proper_skipped:
            out.append("flats interval: skipped (rank below 2)")
        else:
            betti = " ".join(f"b~{d}={b}" for d, b in sorted(report.proper_betti.items()))
            out.append(
                f"flats interval: {'pass' if report.proper_ok else 'fail'} ({betti})"
            )
        betti = " ".join(f"b~{d}={b}" for d, b in sorted(report.complex_betti.items()))
        out.append(f"top h-number: {report.top_h}")
        out.append(
            f"independence complex: {'pass' if report.complex_ok else 'fail'} ({betti})"
        )
        out.append(f"wedge prediction: {'pass' if report.ok else 'fail'}")
    return 0 if report.ok else 1


# ----------------------------------------------------------------------
# poset subcommands


def cmd_poset_check(args, out: list[str]) -> int:
    p = formats.parse_poset(_read(args.file))
    failures = 0
    graded = poset.is_graded(p)
    out.append("graded: " + ("pass" if graded else f"fail: {graded.reason}"))
    if not graded:
        return 1
    locally = poset.is_locally_geometric(p)
    out.append(
        "locally geometric: "
        + (f"pass (rank {locally.rank})" if locally else f"fail: {locally.reason}")
    )
    failures += 0 if locally else 1
    if args.gkm_coherent:
        if not locally:
            out.append("gkm-coherent: skipped (not locally geometric)")
            failures += 1
        else:
            result = poset.check_gkm_coherent(p)
            if result:
                top = p.top()
                out.append(f"gkm-coherent: pass (drk at top = {result.drk[top]})")
            else:
                (x1, s1), (x2, s2) = result.conflict
                out.append(
                    f"gkm-coherent: fail at element {result.element}: "
                    f"sum {s1} from {x1} vs sum {s2} from {x2}"
                )
                failures += 1
    return 1 if failures else 0


def cmd_poset_compactify(args, out: list[str]) -> int:
    p = formats.parse_poset(_read(args.file))
    _emit_poset(poset.compactify(p), args, out)
    return 0


def cmd_poset_projectivize(args, out: list[str]) -> int:
    p = formats.parse_poset(_read(args.file))
    _emit_poset(poset.projectivize(p), args, out)
    return 0


def cmd_poset_glue(args, out: list[str]) -> int:
    p1 = formats.parse_poset(_read(args.file))
    p2 = formats.parse_poset(_read(args.file2))
    _emit_poset(poset.glue_top(p1, p2), args, out)
    return 0


def cmd_poset_homology(args, out: list[str]) -> int:
    p = formats.parse_poset(_read(args.file))
    if args.proper:
        p = p.proper_part()
    betti = complexes.reduced_betti(complexes.order_complex(p))
    if args.json:
        payload = {"kind": "betti", "reduced_betti": {str(d): b for d, b in betti.items()}}
        out.append(formats.dump_json(payload).rstrip("\n"))
    else:
        for degree in sorted(betti):
            out.append(f"b~{degree} = {betti[degree]}")
    return 0


# ----------------------------------------------------------------------
# gkm subcommands


def _load_graph(args):
    return formats.parse_graph_with_connection(_read(args.file))


def cmd_gkm_validate(args, out: list[str]) -> int:
    g, _ = _load_graph(args)
    report = gkm.validate_graph(g)
    if args.json:
        payload = {
            "kind": "validation",
            "ok": report.ok,
            "dimension": report.dimension,
            "rank": report.rank,
            "violations": list(report.violations),
        }
        out.append(formats.dump_json(payload).rstrip("\n"))
    elif report.ok:
        out.append(f"valid: dimension {report.dimension}, rank {report.rank}")
    else:
        out.append("invalid:")
        for violation in report.violations:
            out.append(f"  {violation}")
    return 0 if report.ok else 1


def _resolve_theta(g, theta):
    if theta is not None:
        report = gkm.check_connection(g, theta)
        if not report.ok:
            raise GkmFacesError(
                "connection in file is invalid: " + "; ".join(report.violations)
            )
        return theta
    return gkm.canonical_connection(g)


def cmd_gkm_faces(args, out: list[str]) -> int:
    g, _ = _load_graph(args)
    p = gkm.enumerate_faces(g, cap=args.cap, workers=args.workers)
    if args.json:
        out.append(formats.dump_json(formats.poset_to_json(p)).rstrip("\n"))
    elif args.dot:
        out.append(formats.poset_to_dot(p).rstrip("\n"))
    else:
        _face_table(p, out)
    return 0


def cmd_gkm_tg_faces(args, out: list[str]) -> int:
    g, theta = _load_graph(args)
    theta = _resolve_theta(g, theta)
    p = gkm.enumerate_tg_faces(g, theta, cap=args.cap, workers=args.workers)
    if args.json:
        out.append(formats.dump_json(formats.poset_to_json(p)).rstrip("\n"))
    elif args.dot:
        out.append(formats.poset_to_dot(p).rstrip("\n"))
    else:
        _face_table(p, out)
    return 0


def cmd_gkm_connection(args, out: list[str]) -> int:
    g, theta = _load_graph(args)
    if theta is not None:
        report = gkm.validate_connection(g, theta) if g.signed else gkm.check_connection(g, theta)
        if args.json:
            payload = {
                "kind": "connection-check",
                "ok": report.ok,
                "violations": list(report.violations),
            }
            out.append(formats.dump_json(payload).rstrip("\n"))
        else:
            out.append(f"connection: {'pass' if report.ok else 'fail'}")
            for violation in report.violations:
                out.append(f"  {violation}")
        return 0 if report.ok else 1
    theta = gkm.canonical_connection(g)
    if args.json:
        rows = []
        for e in g.edges:
            for tail in (e.u, e.v):
                mapping = theta.maps[(e.name, tail)]
                for source in g.star(tail):
                    if source != e.name:
                        rows.append(
                            {"via": e.name, "at": str(tail), "from": source, "to": mapping[source]}
                        )
        out.append(formats.dump_json({"kind": "connection", "rows": rows}).rstrip("\n"))
    else:
        for e in g.edges:
            for tail in (e.u, e.v):
                mapping = theta.maps[(e.name, tail)]
                for source in g.star(tail):
                    if source != e.name:
                        out.append(
                            f"connection {source} at {tail} -> {mapping[source]} via {e.name}"
                        )
    return 0


def cmd_gkm_reconstruct(args, out: list[str]) -> int:
    g, theta = _load_graph(args)
    mode = "tg" if args.mode == "tg" else "faces"
    if mode == "tg":
        theta = _resolve_theta(g, theta)
    report = reconstruct.reconstruct_face_poset(
        g, mode, connection=theta if mode == "tg" else None, cap=args.cap, workers=args.workers
    )
    galois = None
    if args.verify_galois and not report.diagnostics:
        galois = reconstruct.verify_galois(
            g, mode, connection=theta if mode == "tg" else None, cap=args.cap, workers=args.workers
        )
    if args.json:
        payload = {
            "kind": "face-report",
            "mode": report.mode,
            "faces": formats.poset_to_json(report.faces),
            "diagnostics": [d.describe() for d in report.diagnostics],
        }
        if galois is not None:
            payload["galois"] = "pass" if galois.ok else "fail"
        out.append(formats.dump_json(payload).rstrip("\n"))
    elif args.dot:
        out.append(formats.poset_to_dot(report.faces).rstrip("\n"))
    else:
        _face_table(report.faces, out)
        if report.diagnostics:
            out.append("diagnostics:")
            for d in report.diagnostics:
                out.append(f"  {d.describe()}")
        else:
            out.append("diagnostics: none")
        if galois is not None:
            out.append(f"galois: {'pass' if galois.ok else 'fail'}")
            for failure in galois.failures:
                out.append(f"  {failure}")
    if report.diagnostics:
        return 1
    if galois is not None and not galois.ok:
        return 1
    return 0


# ----------------------------------------------------------------------
# corpus helper


def cmd_corpus(args, out: list[str]) -> int:
    data = resources.files("gkmfaces") / "data"
    if args.name is None:
        out.append(str(data))
        return 0
    target = data / args.name
    if not target.is_file():
        names = ", ".join(sorted(p.name for p in data.iterdir() if p.is_file()))
        raise GkmFacesError(f"no bundled file {args.name!r}; available: {names}")
    out.append(target.read_text().rstrip("\n"))
    return 0


# ----------------------------------------------------------------------
# argument plumbing


def _output_flags(sub):
    sub.add_argument("--json", action="store_true", help="structured JSON output")
    sub.add_argument("--dot", action="store_true", help="DOT export of the resulting poset")


def _enum_flags(sub):
    sub.add_argument("--cap", type=int, default=gkm.DEFAULT_CAP, help="candidate subgraph cap")
    sub.add_argument("--workers", type=int, default=1, help="worker threads for face checks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gkmfaces",
        description="Flats lattices, locally geometric posets, and GKM face-poset reconstruction.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    matroid = top.add_parser("matroid", help="weight-system operations").add_subparsers(
        dest="subcommand", required=True
    )
    flats = matroid.add_parser("flats", help="list the flats lattice")
    flats.add_argument("file")
    _output_flags(flats)
    flats.set_defaults(handler=cmd_matroid_flats)
    check = matroid.add_parser("check", help="geometric-lattice and coherence checks")
    check.add_argument("file")
    check.set_defaults(handler=cmd_matroid_check, json=False, dot=False)
    wedge = matroid.add_parser("wedge", help="verify the sphere-wedge homology predictions")
    wedge.add_argument("file")
    wedge.add_argument("--json", action="store_true")
    wedge.set_defaults(handler=cmd_matroid_wedge, dot=False)

    posets = top.add_parser("poset", help="graded poset operations").add_subparsers(
        dest="subcommand", required=True
    )
    pcheck = posets.add_parser("check", help="gradedness, local geometricity, coherence")
    pcheck.add_argument("file")
    pcheck.add_argument("--gkm-coherent", action="store_true", dest="gkm_coherent")
    pcheck.set_defaults(handler=cmd_poset_check, json=False, dot=False)
    for name, handler in (
        ("compactify", cmd_poset_compactify),
        ("projectivize", cmd_poset_projectivize),
    ):
        sub = posets.add_parser(name, help=f"{name} a geometric lattice")
        sub.add_argument("file")
        _output_flags(sub)
        sub.set_defaults(handler=handler)
    glue = posets.add_parser("glue", help="identify the tops of two lattices")
    glue.add_argument("file")
    glue.add_argument("file2")
    _output_flags(glue)
    glue.set_defaults(handler=cmd_poset_glue)
    homology = posets.add_parser("homology", help="reduced Betti numbers of the order complex")
    homology.add_argument("file")
    homology.add_argument("--proper", action="store_true", help="strip bottom and top first")
    homology.add_argument("--json", action="store_true")
    homology.set_defaults(handler=cmd_poset_homology, dot=False)

    graphs = top.add_parser("gkm", help="GKM-graph operations").add_subparsers(
        dest="subcommand", required=True
    )
    validate = graphs.add_parser("validate", help="check the GKM-graph axioms")
    validate.add_argument("file")
    validate.add_argument("--json", action="store_true")
    validate.set_defaults(handler=cmd_gkm_validate, dot=False)
    faces = graphs.add_parser("faces", help="enumerate all faces")
    faces.add_argument("file")
    _output_flags(faces)
    _enum_flags(faces)
    faces.set_defaults(handler=cmd_gkm_faces)
    tg = graphs.add_parser("tg-faces", help="enumerate totally geodesic faces")
    tg.add_argument("file")
    _output_flags(tg)
    _enum_flags(tg)
    tg.set_defaults(handler=cmd_gkm_tg_faces)
    connection = graphs.add_parser(
        "connection", help="validate the file connection or derive the canonical one"
    )
    connection.add_argument("file")
    connection.add_argument("--json", action="store_true")
    connection.set_defaults(handler=cmd_gkm_connection, dot=False)
    rec = graphs.add_parser("reconstruct", help="recover the manifold face poset")
    rec.add_argument("file")
    rec.add_argument("--mode", choices=("faces", "tg"), default="faces")
    rec.add_argument("--verify-galois", action="store_true", dest="verify_galois")
    _output_flags(rec)
    _enum_flags(rec)
    rec.set_defaults(handler=cmd_gkm_reconstruct)

    corpus = top.add_parser("corpus", help="locate or print the bundled example files")
    corpus.add_argument("name", nargs="?", default=None)
    corpus.set_defaults(handler=cmd_corpus, json=False, dot=False)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out: list[str] = []
    try:
        code = args.handler(args, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GkmFacesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if out:
        sys.stdout.write("\n".join(out) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
