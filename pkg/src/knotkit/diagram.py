"""Oriented knot and link diagrams as combinatorial maps.

A diagram is a list of 4-valent vertices (classical crossings, signed, or
virtual crossings) whose darts are given in counterclockwise rotation
order, plus an edge list pairing each tail dart with a head dart.  Edges
are directed: [t, h] runs from its tail at one vertex to its head at
another.  Opposite darts in the rotation belong to the same strand, so
in/out alternate across each vertex.

Conventions frozen here and relied on everywhere else:

* a classical crossing is positive when the over-strand direction is the
  underlying-strand direction turned a quarter turn clockwise; in rotation
  terms the counterclockwise dart order of a positive crossing reads
  [under-in, over-out, under-out, over-in], and of a negative crossing
  [under-in, over-in, under-out, over-out];
* faces are the orbits of (next-counterclockwise after the edge
  involution) on the darts of the abstract diagram, which forgets virtual
  crossings by splicing their through-strands;
* the face to the right of a directed semi-arc is the orbit of its tail
  dart, the face to the left the orbit of its head dart.

Semi-arcs are the strand segments between consecutive classical
crossings; virtual crossings do not cut them.  Components with no
classical crossing at all (free loops, or loops through virtual crossings
only) border a single face on both sides.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BadStrandPairing,
    Disconnected,
    InconsistentRotation,
    MalformedInput,
)

KINDS = ("+", "-", "v")


@dataclass(frozen=True)
class Crossing:
    kind: str
    darts: tuple[int, int, int, int]
    under_in: int | None

    def slot(self, dart):
        return self.darts.index(dart)


@dataclass(frozen=True)
class Diagram:
    name: str
    vertices: tuple[Crossing, ...]
    edges: tuple[tuple[int, int], ...]
    outer_face_dart: int | None = None
    free_loops: int = 0


@dataclass(frozen=True)
class SemiArc:
    id: int
    edge_ids: tuple[int, ...]   # edges traversed in order; empty for free loops
    tail: int | None            # tail dart at a classical crossing, or None
    head: int | None


@dataclass(frozen=True)
class ChordDiagram:
    circles: tuple            # per circle: tuple of (crossing index, 'O'|'U') visits
    chords: tuple             # per classical crossing: ((circle, pos), (circle, pos))

    def interior(self, crossing):
        (c1, _), (c2, _) = self.chords[crossing]
        return c1 == c2


@dataclass(frozen=True)
class OrientationAnalysis:
    colouring: tuple          # 'b' or 'w' per semi-arc
    classes: tuple            # 'sink' | 'source' | 'saddle' per classical crossing
    sinks: int
    sources: int
    saddles: int
    good: bool


@dataclass(frozen=True)
class Sidedness:
    two_sided: bool
    irreducible: bool


# ---------------------------------------------------------------------------
# parsing and validation


def parse_diagram(data):
    """Validate raw diagram data (a dict, or JSON text) into a Diagram."""
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedInput("diagram JSON must be an object")
    try:
        name = str(data["name"])
        raw_vertices = data["vertices"]
        raw_edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"missing diagram field: {exc}") from None
    outer = data.get("outer_face_dart")
    free_loops = data.get("free_loops", 0)
    if not isinstance(free_loops, int) or free_loops < 0:
        raise MalformedInput("free_loops must be a nonnegative integer")

    vertices = []
    for i, raw in enumerate(raw_vertices):
        try:
            kind = raw["kind"]
            darts = tuple(raw["darts"])
            under_in = raw["under_in"]
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"vertex {i}: missing field {exc}") from None
        if kind not in KINDS:
            raise MalformedInput(f"vertex {i}: unknown kind {kind!r}")
        if len(darts) != 4 or len(set(darts)) != 4:
            raise MalformedInput(f"vertex {i}: needs 4 distinct darts")
        if kind == "v":
            if under_in is not None:
                raise MalformedInput(f"vertex {i}: virtual crossing has no under_in")
        else:
            if under_in not in darts:
                raise MalformedInput(f"vertex {i}: under_in must be one of its darts")
        vertices.append(Crossing(kind=kind, darts=darts, under_in=under_in))

    edges = []
    for k, raw in enumerate(raw_edges):
        if not isinstance(raw, (list, tuple)) or len(raw) != 2:
            raise MalformedInput(f"edge {k}: must be a [tail, head] pair")
        edges.append((raw[0], raw[1]))

    d = Diagram(
        name=name,
        vertices=tuple(vertices),
        edges=tuple(edges),
        outer_face_dart=outer,
        free_loops=free_loops,
    )
    _validate(d)
    return d


def _validate(d):
    all_darts = [x for c in d.vertices for x in c.darts]
    if len(set(all_darts)) != len(all_darts):
        raise InconsistentRotation("a dart appears at two vertex slots")
    dart_set = set(all_darts)
    seen = set()
    for t, h in d.edges:
        for x in (t, h):
            if x not in dart_set:
                raise InconsistentRotation(f"edge end {x} is not a vertex dart")
            if x in seen:
                raise InconsistentRotation(f"dart {x} lies on two edges")
            seen.add(x)
    if seen != dart_set:
        raise InconsistentRotation("edge involution does not cover every dart")

    tails = {t for t, _ in d.edges}
    for i, c in enumerate(d.vertices):
        for s in range(2):
            a, b = c.darts[s], c.darts[s + 2]
            if (a in tails) == (b in tails):
                raise BadStrandPairing(
                    f"vertex {i}: opposite darts {a},{b} are not one-in one-out"
                )
        if c.kind != "v":
            if c.under_in in tails:
                raise BadStrandPairing(f"vertex {i}: under_in must be incoming")
            u = c.slot(c.under_in)
            over_in = next(
                x for x in (c.darts[(u + 1) % 4], c.darts[(u + 3) % 4])
                if x not in tails
            )
            derived = "+" if c.slot(over_in) == (u + 3) % 4 else "-"
            if derived != c.kind:
                raise MalformedInput(
                    f"vertex {i}: kind {c.kind!r} inconsistent with rotation "
                    f"(reads as {derived!r})"
                )
    if d.outer_face_dart is not None:
        owner = _vertex_of_dart(d).get(d.outer_face_dart)
        if owner is None or d.vertices[owner[0]].kind == "v":
            raise MalformedInput("outer_face_dart must lie on a classical crossing")


@lru_cache(maxsize=None)
def _vertex_of_dart(d):
    out = {}
    for i, c in enumerate(d.vertices):
        for s, x in enumerate(c.darts):
            out[x] = (i, s)
    return out


def _edge_maps(d):
    follow = {}       # tail dart -> (edge id, head dart)
    arrive = {}       # head dart -> (edge id, tail dart)
    for k, (t, h) in enumerate(d.edges):
        follow[t] = (k, h)
        arrive[h] = (k, t)
    return follow, arrive


def serialize(d):
    return {
        "name": d.name,
        "vertices": [
            {"kind": c.kind, "darts": list(c.darts), "under_in": c.under_in}
            for c in d.vertices
        ],
        "edges": [list(e) for e in d.edges],
        "outer_face_dart": d.outer_face_dart,
        "free_loops": d.free_loops,
    }


def dumps(d):
    return json.dumps(serialize(d), indent=1) + "\n"


# ---------------------------------------------------------------------------
# crossing geometry helpers


def crossing_sign(c):
    if c.kind == "+":
        return 1
    if c.kind == "-":
        return -1
    return 0


def writhe(d):
    return sum(crossing_sign(c) for c in d.vertices)


def _strand_ends(d, c):
    """(under_in, under_out, over_in, over_out) darts of a classical crossing."""
    tails = {t for t, _ in d.edges}
    u = c.slot(c.under_in)
    under_out = c.darts[(u + 2) % 4]
    others = (c.darts[(u + 1) % 4], c.darts[(u + 3) % 4])
    over_in = next(x for x in others if x not in tails)
    over_out = next(x for x in others if x in tails)
    return c.under_in, under_out, over_in, over_out


@lru_cache(maxsize=None)
def crossing_ends(d):
    """Per classical crossing index: its (u_in, u_out, o_in, o_out) darts."""
    return {
        i: _strand_ends(d, c)
        for i, c in enumerate(d.vertices)
        if c.kind != "v"
    }


# ---------------------------------------------------------------------------
# semi-arcs


@lru_cache(maxsize=None)
def semi_arcs(d):
    """Semi-arcs in a deterministic order: chains between classical
    crossings first (by smallest starting dart), then closed virtual-only
    chains, then one entry per free loop."""
    follow, _ = _edge_maps(d)
    where = _vertex_of_dart(d)
    classical = {
        x
        for i, c in enumerate(d.vertices)
        if c.kind != "v"
        for x in c.darts
    }
    out = []
    visited_edges = set()

    def walk(start_tail):
        chain = []
        dart = start_tail
        while True:
            edge_id, head = follow[dart]
            chain.append(edge_id)
            visited_edges.add(edge_id)
            if head in classical:
                return chain, head
            vi, slot = where[head]
            dart = d.vertices[vi].darts[(slot + 2) % 4]
            if dart == start_tail:
                return chain, None  # closed through virtual crossings only

    for tail in sorted(t for t, _ in d.edges):
        if tail in classical and follow[tail][0] not in visited_edges:
            chain, head = walk(tail)
            out.append(
                SemiArc(id=len(out), edge_ids=tuple(chain), tail=tail, head=head)
            )
    for tail in sorted(t for t, _ in d.edges):
        if follow[tail][0] not in visited_edges:
            chain, head = walk(tail)
            out.append(SemiArc(id=len(out), edge_ids=tuple(chain), tail=None, head=None))
    for _ in range(d.free_loops):
        out.append(SemiArc(id=len(out), edge_ids=(), tail=None, head=None))
    return tuple(out)


@lru_cache(maxsize=None)
def _semiarc_of_dart(d):
    follow, arrive = _edge_maps(d)
    out = {}
    for sa in semi_arcs(d):
        for e in sa.edge_ids:
            t, h = d.edges[e]
            out[t] = sa.id
            out[h] = sa.id
    return out


@lru_cache(maxsize=None)
def components(d):
    """Strand components, each a cyclic tuple of semi-arc ids."""
    sas = semi_arcs(d)
    where = _vertex_of_dart(d)
    next_sa = {}
    for sa in sas:
        if sa.head is None:
            continue
        vi, slot = where[sa.head]
        out_dart = d.vertices[vi].darts[(slot + 2) % 4]
        next_sa[sa.id] = _semiarc_of_dart(d)[out_dart]
    comps = []
    seen = set()
    for sa in sas:
        if sa.id in seen:
            continue
        if sa.head is None:
            comps.append((sa.id,))
            seen.add(sa.id)
            continue
        cycle = []
        cur = sa.id
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            cur = next_sa[cur]
        comps.append(tuple(cycle))
    return tuple(comps)


def component_count(d):
    return len(components(d))


def is_connected(d):
    """One piece: strand components joined through shared crossings; a
    free loop is only connected when it is the entire diagram."""
    comps = components(d)
    if len(comps) == 1:
        return True
    if d.free_loops:
        return False
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    of_sa = {}
    for ci, comp in enumerate(comps):
        for sa in comp:
            of_sa[sa] = ci
    sa_of_dart = _semiarc_of_dart(d)
    for c in d.vertices:
        ids = {of_sa[sa_of_dart[x]] for x in c.darts}
        ids = sorted(ids)
        for other in ids[1:]:
            parent[find(other)] = find(ids[0])
    return len({find(i) for i in range(len(comps))}) == 1


# ---------------------------------------------------------------------------
# faces of the abstract diagram


@lru_cache(maxsize=None)
def faces(d):
    """Faces as tuples of darts (orbits of next-ccw-after-involution on the
    abstract diagram).  Face 0 is the one containing outer_face_dart when
    given.  A diagram with no classical crossings has one synthetic empty
    face."""
    if not is_connected(d):
        raise Disconnected(f"{d.name}: faces need a connected diagram")
    sas = semi_arcs(d)
    endpointed = [sa for sa in sas if sa.tail is not None]
    if not endpointed:
        return ((),)
    alpha = {}
    for sa in endpointed:
        alpha[sa.tail] = sa.head
        alpha[sa.head] = sa.tail
    sigma = {}
    for c in d.vertices:
        if c.kind == "v":
            continue
        for s, x in enumerate(c.darts):
            sigma[x] = c.darts[(s + 1) % 4]
    out = []
    visited = set()
    for start in sorted(alpha):
        if start in visited:
            continue
        orbit = []
        x = start
        while x not in visited:
            visited.add(x)
            orbit.append(x)
            x = sigma[alpha[x]]
        out.append(tuple(orbit))
    if d.outer_face_dart is not None:
        out.sort(key=lambda f: (d.outer_face_dart not in f, min(f)))
    else:
        out.sort(key=min)
    return tuple(out)


@lru_cache(maxsize=None)
def _face_of_dart(d):
    out = {}
    for i, f in enumerate(faces(d)):
        for x in f:
            out[x] = i
    return out


def semiarc_sides(d, sa_id):
    """(right face, left face) of a directed semi-arc; a loop with no
    classical endpoint borders the single ambient face on both sides."""
    sa = semi_arcs(d)[sa_id]
    if sa.tail is None:
        return (0, 0)
    fo = _face_of_dart(d)
    return (fo[sa.tail], fo[sa.head])


def genus(d):
    """Genus of the thickened abstract diagram; 0 for crossingless loops."""
    fs = faces(d)
    v = sum(1 for c in d.vertices if c.kind != "v")
    if v == 0:
        return 0
    e = sum(1 for sa in semi_arcs(d) if sa.tail is not None)
    return (2 - v + e - len(fs)) // 2


def two_sidedness(d):
    faces(d)  # also enforces connectivity
    two = all(
        semiarc_sides(d, sa.id)[0] != semiarc_sides(d, sa.id)[1]
        for sa in semi_arcs(d)
    )
    if not any(c.kind != "v" for c in d.vertices):
        irreducible = True  # vacuous: no classical crossings
    else:
        fo = _face_of_dart(d)
        irreducible = all(
            len({fo[x] for x in c.darts}) == 4
            for c in d.vertices
            if c.kind != "v"
        )
    return Sidedness(two_sided=two, irreducible=irreducible)


def chessboard(d):
    """Proper 2-colouring of the faces across semi-arcs, or None."""
    fs = faces(d)
    colour = [None] * len(fs)
    adjacency = [set() for _ in fs]
    for sa in semi_arcs(d):
        r, l = semiarc_sides(d, sa.id)
        if r == l:
            return None
        adjacency[r].add(l)
        adjacency[l].add(r)
    colour[0] = 0
    queue = [0]
    while queue:
        f = queue.pop(0)
        for g in sorted(adjacency[f]):
            if colour[g] is None:
                colour[g] = 1 - colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                return None
    if any(c is None for c in colour):
        return None  # isolated faces cannot happen on a connected diagram
    return tuple(colour)


# ---------------------------------------------------------------------------
# traversal: Gauss codes and chord diagrams


@lru_cache(maxsize=None)
def _passages(d):
    """Per component, the cyclic list of (crossing, role, semi-arc-in,
    semi-arc-out) classical passages in traversal order, plus virtual
    visits interleaved as (crossing, 'V', sa, sa)."""
    follow, _ = _edge_maps(d)
    where = _vertex_of_dart(d)
    sa_of = _semiarc_of_dart(d)
    out = []
    for comp in components(d):
        first = semi_arcs(d)[comp[0]]
        if first.tail is None:
            visits = []
            if first.edge_ids:
                dart = d.edges[first.edge_ids[0]][0]
                start = dart
                while True:
                    _, head = follow[dart]
                    vi, slot = where[head]
                    visits.append((vi, "V", sa_of[head], sa_of[head]))
                    dart = d.vertices[vi].darts[(slot + 2) % 4]
                    if dart == start:
                        break
            out.append(tuple(visits))
            continue
        visits = []
        for sa_id in comp:
            sa = semi_arcs(d)[sa_id]
            for e in sa.edge_ids[:-1]:
                head = d.edges[e][1]
                vi, _ = where[head]
                visits.append((vi, "V", sa_of[head], sa_of[head]))
            head = sa.head
            vi, _ = where[head]
            c = d.vertices[vi]
            u_in, u_out, o_in, o_out = crossing_ends(d)[vi]
            role = "U" if head == u_in else "O"
            out_dart = c.darts[(c.slot(head) + 2) % 4]
            visits.append((vi, role, sa_id, sa_of[out_dart]))
        out.append(tuple(visits))
    return tuple(out)


def gauss_code(d):
    """Signed O/U Gauss code with V markers, one string per component,
    joined by '|'.  Components start at their first over-passage when one
    exists, making a mirrored diagram print the same O/U sequence."""
    parts = []
    for visits in _passages(d):
        if not any(v[1] != "V" for v in visits):
            vnames = {}
            bits = []
            for vi, _, _, _ in visits:
                if vi not in vnames:
                    vnames[vi] = len(vnames) + 1
                bits.append(f"V{vnames[vi]}")
            parts.append("".join(bits))
            continue
        start = 0
        for i, v in enumerate(visits):
            if v[1] == "O":
                start = i
                break
        ordered = visits[start:] + visits[:start]
        names = {}
        vnames = {}
        bits = []
        for vi, role, _, _ in ordered:
            if role == "V":
                if vi not in vnames:
                    vnames[vi] = len(vnames) + 1
                bits.append(f"V{vnames[vi]}")
            else:
                if vi not in names:
                    names[vi] = len(names) + 1
                sign = "+" if d.vertices[vi].kind == "+" else "-"
                bits.append(f"{role}{names[vi]}{sign}")
        parts.append("".join(bits))
    return "|".join(p for p in parts if p != "") if any(parts) else ""


def chord_diagram(d):
    """Circles of classical visits and the chord of each classical crossing."""
    circles = []
    positions = {}
    for visits in _passages(d):
        circle = []
        for vi, role, _, _ in visits:
            if role == "V":
                continue
            positions.setdefault(vi, []).append((len(circles), len(circle)))
            circle.append((vi, role))
        circles.append(tuple(circle))
    chords = {}
    for vi, pos in positions.items():
        if len(pos) == 2:
            chords[vi] = (pos[0], pos[1])
    ordered = tuple(chords[i] for i in sorted(chords))
    index_map = {vi: k for k, vi in enumerate(sorted(chords))}
    return ChordDiagram(circles=tuple(circles), chords=ordered), index_map


def _interleaved(chord_a, chord_b):
    """Do two same-circle chords interleave in the cyclic order?"""
    i, j = chord_a
    x, y = chord_b

    def inside(p):
        if i < j:
            return i < p < j
        return p > i or p < j

    return inside(x) != inside(y)


def crossing_parity(d, crossing):
    """'odd' or 'even': parity of the number of same-circle chords whose
    endpoints interleave this crossing's chord.  Chords joining different
    circles carry no interleaving count and read as even."""
    cd, index_map = chord_diagram(d)
    k = index_map[crossing]
    (c1, p1), (c2, p2) = cd.chords[k]
    if c1 != c2:
        return "even"
    count = 0
    for other, ((e1, q1), (e2, q2)) in enumerate(cd.chords):
        if other == k or e1 != c1 or e2 != c1:
            continue
        if _interleaved((p1, p2), (q1, q2)):
            count += 1
    return "odd" if count % 2 else "even"


# ---------------------------------------------------------------------------
# alternate orientations


def alternate_orientations(d):
    """All black/white alternations of the semi-arcs along each component,
    with every classical crossing classified after reversing black edges.
    Empty when some component has an odd number of classical passages."""
    comps = components(d)
    sas = semi_arcs(d)
    for visits in _passages(d):
        if sum(1 for v in visits if v[1] != "V") % 2:
            return []
    analyses = []
    ends = crossing_ends(d)
    sa_of = _semiarc_of_dart(d)
    for choice in itertools.product((0, 1), repeat=len(comps)):
        colour = [None] * len(sas)
        for comp, phase in zip(comps, choice):
            for k, sa_id in enumerate(comp):
                colour[sa_id] = "bw"[(k + phase) % 2]
        classes = []
        sinks = sources = saddles = 0
        for i, c in enumerate(d.vertices):
            if c.kind == "v":
                continue
            u_in, u_out, o_in, o_out = ends[i]
            indeg = 0
            for dart, natural_in in (
                (u_in, True), (o_in, True), (u_out, False), (o_out, False)
            ):
                reversed_ = colour[sa_of[dart]] == "b"
                if natural_in != reversed_:
                    indeg += 1
            if indeg == 4:
                classes.append("sink")
                sinks += 1
            elif indeg == 0:
                classes.append("source")
                sources += 1
            else:
                classes.append("saddle")
                saddles += 1
        if sinks != sources:
            raise AssertionError(
                f"{d.name}: alternate orientation with {sinks} sinks, "
                f"{sources} sources"
            )
        analyses.append(
            OrientationAnalysis(
                colouring=tuple(colour),
                classes=tuple(classes),
                sinks=sinks,
                sources=sources,
                saddles=saddles,
                good=(sinks == 0 and sources == 0),
            )
        )
    return analyses


# ---------------------------------------------------------------------------
# mirror


def mirror(d, name=None):
    """Swap over and under strands at every classical crossing, flipping
    all signs; the rotation system is untouched, so mirroring twice is the
    identity."""
    new_vertices = []
    for i, c in enumerate(d.vertices):
        if c.kind == "v":
            new_vertices.append(c)
            continue
        _, _, o_in, _ = crossing_ends(d)[i]
        new_vertices.append(
            Crossing(kind="+" if c.kind == "-" else "-", darts=c.darts, under_in=o_in)
        )
    return Diagram(
        name=name if name is not None else f"mirror({d.name})",
        vertices=tuple(new_vertices),
        edges=d.edges,
        outer_face_dart=d.outer_face_dart,
        free_loops=d.free_loops,
    )
