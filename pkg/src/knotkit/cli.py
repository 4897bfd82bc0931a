"""Command line front end.

Exit codes: 0 on success, 1 on a domain error (unknown name, theory
mismatch, malformed file), 2 on a usage error.  All JSON output has a
fixed field order and a format-version field, so repeated runs are
byte-identical.
"""

from __future__ import annotations

import argparse
import sys

from . import algebra, catalog, colouring, diagram, homology, invariants
from ._util import dump_json
from .errors import BadParameter, KnotKitError

_TABLE_ALIASES = {
    "q3": algebra.three_colour,
    "three_colour": algebra.three_colour,
    "bw": algebra.black_white,
    "bq1": algebra.black_white,
    "black_white": algebra.black_white,
    "i2": lambda: algebra.twist(2),
    "i3": lambda: algebra.twist(3),
    "d3": lambda: algebra.dihedral(3),
    "d5": lambda: algebra.dihedral(5),
}


def resolve_birack(spec):
    """Builtin names resolve first; anything containing '/' or '.' is read
    as a file path.  Parameterized forms: twist:N, dihedral:M,
    alexander:M:LAM:MU, and double:<spec>."""
    if "/" in spec or "." in spec:
        try:
            with open(spec, "r", encoding="utf-8") as fh:
                return algebra.loads(fh.read())
        except OSError as exc:
            raise BadParameter(f"cannot read birack file {spec!r}: {exc}") from None
    low = spec.lower()
    if low in _TABLE_ALIASES:
        return _TABLE_ALIASES[low]()
    if low.startswith("double:"):
        return algebra.double(resolve_birack(spec[len("double:"):]))
    parts = low.split(":")
    try:
        if parts[0] == "twist" and len(parts) == 2:
            return algebra.twist(int(parts[1]))
        if parts[0] == "dihedral" and len(parts) == 2:
            return algebra.dihedral(int(parts[1]))
        if parts[0] == "alexander" and len(parts) == 4:
            return algebra.alexander(int(parts[1]), int(parts[2]), int(parts[3]))
    except ValueError:
        raise BadParameter(f"bad parameters in birack spec {spec!r}") from None
    raise BadParameter(f"unknown birack {spec!r}")


def resolve_diagram(spec):
    if "/" in spec or "." in spec:
        try:
            with open(spec, "r", encoding="utf-8") as fh:
                return diagram.parse_diagram(fh.read())
        except OSError as exc:
            raise BadParameter(f"cannot read diagram file {spec!r}: {exc}") from None
    if spec in catalog.names():
        return catalog.load(spec)
    raise BadParameter(f"unknown diagram {spec!r}")


def _emit(args, payload, text):
    body = dump_json(payload) if args.json else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


def _class_scalars(classes):
    return [c[0] if len(c) == 1 else list(c) for c in classes]


def cmd_catalog(args):
    diagrams = []
    for name in catalog.names():
        d = catalog.load(name)
        diagrams.append(
            {
                "name": name,
                "classical_crossings": sum(1 for c in d.vertices if c.kind != "v"),
                "virtual_crossings": sum(1 for c in d.vertices if c.kind == "v"),
                "components": diagram.component_count(d),
            }
        )
    biracks = sorted(_TABLE_ALIASES) + ["twist:N", "dihedral:M", "alexander:M:L:U", "double:<birack>"]
    payload = {"format": "1", "diagrams": diagrams, "biracks": biracks}
    lines = ["diagrams:"]
    for info in diagrams:
        lines.append(
            "  {name}  ({classical_crossings} classical, {virtual_crossings} "
            "virtual, {components} component(s))".format(**info)
        )
    lines.append("biracks:")
    lines.extend(f"  {b}" for b in biracks)
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_axioms(args):
    table = resolve_birack(args.birack)
    report = algebra.check_axioms(table)
    payload = {
        "format": "1",
        "birack": table.name,
        "b1": {"passed": report.b1.passed, "counterexamples": [list(map(str, c)) for c in report.b1.counterexamples]},
        "b2": {"passed": report.b2.passed, "counterexamples": [list(map(str, c)) for c in report.b2.counterexamples]},
        "b3": {"passed": report.b3.passed, "counterexamples": [list(map(str, c)) for c in report.b3.counterexamples]},
        "class": report.classification,
    }
    text = (
        f"{table.name}: b1={'pass' if report.b1.passed else 'FAIL'} "
        f"b2={'pass' if report.b2.passed else 'FAIL'} "
        f"b3={'pass' if report.b3.passed else 'FAIL'} "
        f"class={report.classification}\n"
    )
    _emit(args, payload, text)
    return 0


def cmd_double(args):
    table = resolve_birack(args.birack)
    doubled = algebra.double(table)
    body = algebra.dumps(doubled)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return 0


def cmd_colour(args):
    d = resolve_diagram(args.diagram)
    table = resolve_birack(args.birack)
    colourings = colouring.enumerate_edge_colourings(d, table)
    payload = {
        "format": "1",
        "diagram": d.name,
        "birack": table.name,
        "count": len(colourings),
    }
    if args.all:
        payload["colourings"] = [
            {
                "diagram": d.name,
                "birack": table.name,
                "edge": {str(i): v for i, v in enumerate(ec.by_semiarc)},
                "faces": None,
            }
            for ec in colourings
        ]
    text = f"{d.name} by {table.name}: {len(colourings)} edge colourings\n"
    if args.all:
        for ec in colourings:
            text += "  " + " ".join(table.label(v) for v in ec.by_semiarc) + "\n"
    _emit(args, payload, text)
    return 0


def cmd_homology(args):
    table = resolve_birack(args.birack)
    basis = homology.homology_group(table, args.degree, args.theory)
    payload = {
        "format": "1",
        "birack": table.name,
        "degree": args.degree,
        "theory": args.theory,
        "free_rank": basis.group.free_rank,
        "torsion": list(basis.group.torsion),
    }
    _emit(args, payload, f"{basis.group}\n")
    return 0


def cmd_chirality(args):
    d = resolve_diagram(args.diagram)
    table = resolve_birack(args.birack) if args.birack else algebra.three_colour()
    classes = invariants.chirality_classes(d, table)
    scalars = _class_scalars(classes)
    payload = {
        "format": "1",
        "diagram": d.name,
        "birack": table.name,
        "classes": scalars,
    }
    from collections import Counter

    counts = Counter(str(s) for s in scalars)
    text = f"{d.name} by {table.name}: " + (
        ", ".join(f"{k} x{v}" for k, v in sorted(counts.items())) or "no colourings"
    ) + "\n"
    _emit(args, payload, text)
    return 0


def cmd_analyze(args):
    d = resolve_diagram(args.diagram)
    orientations = diagram.alternate_orientations(d)
    sided = diagram.two_sidedness(d)
    chess = diagram.chessboard(d)
    payload = {
        "format": "1",
        "diagram": d.name,
        "writhe": diagram.writhe(d),
        "genus": diagram.genus(d),
        "faces": len(diagram.faces(d)),
        "two_sided": sided.two_sided,
        "irreducible": sided.irreducible,
        "chessboard": chess is not None,
        "orientations": [
            {
                "colouring": list(o.colouring),
                "sinks": o.sinks,
                "sources": o.sources,
                "saddles": o.saddles,
                "good": o.good,
            }
            for o in orientations
        ],
        "gauss_code": diagram.gauss_code(d),
    }
    lines = [
        f"{d.name}: writhe {payload['writhe']}, genus {payload['genus']}, "
        f"{payload['faces']} faces",
        f"  gauss: {payload['gauss_code'] or '(empty)'}",
        f"  two-sided: {sided.two_sided}, irreducible: {sided.irreducible}, "
        f"chessboard: {chess is not None}",
        f"  alternate orientations: {len(orientations)}",
    ]
    for o in orientations:
        lines.append(
            f"    {''.join(o.colouring)}: sinks {o.sinks}, sources {o.sources}, "
            f"saddles {o.saddles}{' (good)' if o.good else ''}"
        )
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def cmd_report(args):
    d = resolve_diagram(args.diagram)
    payload = invariants.diagram_report(d)
    lines = [f"{d.name}:"]
    lines.append(f"  writhe {payload['writhe']}, genus {payload['genus']}")
    lines.append(
        "  colourings: "
        + ", ".join(f"{k}={v}" for k, v in payload["colour_counts"].items())
    )
    from collections import Counter

    counts = Counter(str(s) for s in payload["chirality_q3"])
    lines.append(
        "  chirality classes (q3): "
        + (", ".join(f"{k} x{v}" for k, v in sorted(counts.items())) or "none")
    )
    lines.append(
        f"  two-sided: {payload['two_sided']}, chessboard: {payload['chessboard']}, "
        f"good orientation: {payload['orientation']['good']}"
    )
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knotkit",
        description="Finite biracks, diagram colourings and their homology classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, diagram_arg=False, birack_arg=False):
        if diagram_arg:
            p.add_argument("--diagram", required=True, help="catalog name or file path")
        if birack_arg is True:
            p.add_argument("--birack", required=True, help="builtin name or file path")
        elif birack_arg == "optional":
            p.add_argument("--birack", default=None)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--text", dest="json", action="store_false")
        p.add_argument("--out", default=None, help="write output to a file")

    common(sub.add_parser("catalog", help="list builtin diagrams and biracks"))
    common(sub.add_parser("axioms", help="check the birack axioms"), birack_arg=True)
    common(sub.add_parser("double", help="write the doubled table"), birack_arg=True)
    p = sub.add_parser("colour", help="count (or list) edge colourings")
    common(p, diagram_arg=True, birack_arg=True)
    p.add_argument("--all", action="store_true", help="list every colouring")
    p = sub.add_parser("homology", help="homology group of a birack")
    common(p, birack_arg=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--theory", choices=homology.THEORIES, default="BR")
    common(
        sub.add_parser("chirality", help="homology classes of the crossing sums"),
        diagram_arg=True,
        birack_arg="optional",
    )
    common(sub.add_parser("analyze", help="faces, genus and orientations"), diagram_arg=True)
    common(sub.add_parser("report", help="full invariant report"), diagram_arg=True)
    return parser


_HANDLERS = {
    "catalog": cmd_catalog,
    "axioms": cmd_axioms,
    "double": cmd_double,
    "colour": cmd_colour,
    "homology": cmd_homology,
    "chirality": cmd_chirality,
    "analyze": cmd_analyze,
    "report": cmd_report,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except KnotKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
