"""Edge and whole colourings of diagrams by a birack.

At a positive crossing the incoming over colour o and incoming under
colour u determine the outputs through the switch: the under strand
leaves as u^o and the over strand as o_u.  A negative crossing is the
inverse relation.  Virtual crossings do not cut semi-arcs, so colours
pass through them by construction.

A whole colouring also labels every face, subject to: along a semi-arc
coloured b, the face on its right carries some a and the face on its
left carries a^b.  Components that meet no classical crossing may only
take colours whose diagonal action is defined (always true for total
tables), which keeps counts stable under adding a curl.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import algebra, diagram
from .algebra import dihedral, double, evaluate, find_isomorphism, switch, switch_inverse
from .diagram import crossing_ends, faces, semi_arcs, semiarc_sides
from .errors import NoPreimage, UndefinedPair, WrongTable


@dataclass(frozen=True)
class EdgeColouring:
    table: object = field(compare=False)
    by_semiarc: tuple

    def colour(self, sa_id):
        return self.by_semiarc[sa_id]


@dataclass(frozen=True)
class WholeColouring:
    edge: EdgeColouring
    by_face: tuple


def crossing_rule(table, kind, in_over, in_under):
    """Colours leaving a classical crossing: (out_over, out_under)."""
    if kind == "+":
        out_under, out_over = switch(table, in_over, in_under)
        return out_over, out_under
    if kind == "-":
        out_over, out_under = switch_inverse(table, in_under, in_over)
        return out_over, out_under
    raise WrongTable(f"no crossing rule for kind {kind!r}")


def _crossing_constraints(d):
    ends = crossing_ends(d)
    sa_of = diagram._semiarc_of_dart(d)
    out = []
    for i, c in enumerate(d.vertices):
        if c.kind == "v":
            continue
        u_in, u_out, o_in, o_out = ends[i]
        out.append(
            (sa_of[o_in], sa_of[u_in], sa_of[u_out], sa_of[o_out], c.kind)
        )
    return out


def enumerate_edge_colourings(d, table):
    """All edge colourings, in lexicographic order of the semi-arc colour
    vector.  Backtracking assigns semi-arcs and propagates forced colours
    through crossings; an undefined action kills the branch silently."""
    sas = semi_arcs(d)
    constraints = _crossing_constraints(d)
    diagonal_ok = [x for x in range(table.n) if table.up[x][x] is not None]
    closed = {sa.id for sa in sas if sa.tail is None}
    col = [None] * len(sas)
    results = []

    def propagate(trail):
        progress = True
        while progress:
            progress = False
            for so, su, suo, soo, kind in constraints:
                if col[so] is None or col[su] is None:
                    continue
                try:
                    oo, uo = crossing_rule(table, kind, col[so], col[su])
                except (UndefinedPair, NoPreimage):
                    return False
                for si, v in ((suo, uo), (soo, oo)):
                    if col[si] is None:
                        col[si] = v
                        trail.append(si)
                        progress = True
                    elif col[si] != v:
                        return False
        return True

    def pick():
        best = None
        for so, su, _, _, _ in constraints:
            missing_o = col[so] is None
            missing_u = col[su] is None
            if missing_o != missing_u:
                cand = so if missing_o else su
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return best
        for i in range(len(col)):
            if col[i] is None:
                return i
        return None

    def recurse():
        i = pick()
        if i is None:
            results.append(EdgeColouring(table=table, by_semiarc=tuple(col)))
            return
        domain = diagonal_ok if i in closed else range(table.n)
        for v in domain:
            col[i] = v
            trail = []
            if propagate(trail):
                recurse()
            for j in trail:
                col[j] = None
            col[i] = None

    recurse()
    results.sort(key=lambda ec: ec.by_semiarc)
    return results


def count_colourings(d, table):
    return len(enumerate_edge_colourings(d, table))


def is_valid_edge_colouring(d, ec):
    """Closure check: re-validate the crossing rule everywhere."""
    table = ec.table
    for so, su, suo, soo, kind in _crossing_constraints(d):
        try:
            oo, uo = crossing_rule(table, kind, ec.by_semiarc[so], ec.by_semiarc[su])
        except (UndefinedPair, NoPreimage):
            return False
        if ec.by_semiarc[suo] != uo or ec.by_semiarc[soo] != oo:
            return False
    for sa in semi_arcs(d):
        if sa.tail is None:
            c = ec.by_semiarc[sa.id]
            if table.up[c][c] is None:
                return False
    return True


def extend_to_whole(d, ec, seed_face, seed_colour):
    """Transmit the seed face colour across semi-arcs; None on conflict."""
    table = ec.table
    n_faces = len(faces(d))
    sides = [semiarc_sides(d, sa.id) for sa in semi_arcs(d)]
    colours = [None] * n_faces
    colours[seed_face] = seed_colour
    progress = True
    while progress:
        progress = False
        for sa in semi_arcs(d):
            b = ec.by_semiarc[sa.id]
            r, l = sides[sa.id]
            if colours[r] is not None:
                try:
                    want = evaluate(table, "up", colours[r], b)
                except UndefinedPair:
                    return None
                if colours[l] is None:
                    colours[l] = want
                    progress = True
                elif colours[l] != want:
                    return None
            elif colours[l] is not None:
                try:
                    colours[r] = evaluate(table, "up_inv", colours[l], b)
                except NoPreimage:
                    return None
                progress = True
    if any(c is None for c in colours):
        return None
    return WholeColouring(edge=ec, by_face=tuple(colours))


def enumerate_whole_colourings(d, table, seed_face=0):
    """Whole colourings, ordered by (edge colour vector, face vector).
    Every edge colouring is tried against every seed colour of the seed
    face; inconsistent transmissions are dropped."""
    out = []
    for ec in enumerate_edge_colourings(d, table):
        for seed in range(table.n):
            wc = extend_to_whole(d, ec, seed_face, seed)
            if wc is not None:
                out.append(wc)
    out.sort(key=lambda wc: (wc.edge.by_semiarc, wc.by_face))
    return out


def count_whole_colourings(d, table):
    return len(enumerate_whole_colourings(d, table))


def whole_to_pair_colouring(d, wc):
    """The edge colouring of the diagram by the double of the base table
    equivalent to a whole colouring: each semi-arc carries the ordered
    pair (colour of its right face, its own edge colour)."""
    table = wc.edge.table
    dbl = double(table)
    pair = []
    for sa in semi_arcs(d):
        r, _ = semiarc_sides(d, sa.id)
        pair.append(wc.by_face[r] * table.n + wc.edge.by_semiarc[sa.id])
    return EdgeColouring(table=dbl, by_semiarc=tuple(pair))


_PATTERNS = ("abc", "aba", "abb", "aab", "aaa")


def triple_pattern(p, x, y):
    if p == x == y:
        return "aaa"
    if p == x:
        return "aab"
    if x == y:
        return "abb"
    if p == y:
        return "aba"
    return "abc"


@dataclass(frozen=True)
class PairTableReport:
    classes: dict
    positive_total: int
    negative_total: int
    domain_size: int


def pair_table_check(table):
    """Census of the pair colourings admitted by a single crossing when the
    colours come from the double of the 3-colour quandle.

    Each admissible positive-crossing colouring is determined by the pair
    (incoming over, incoming under) lying in the double's domain, and is
    classified by the equality pattern of (region, under colour, over
    colour).  Negative crossings admit the mirror-image set.
    """
    if find_isomorphism(table, dihedral(3)) is None:
        raise WrongTable("pair table census needs the 3-colour quandle")
    dbl = double(table)
    n = table.n
    classes = Counter()
    for o_pair, u_pair in dbl.y_pairs():
        p, x = divmod(u_pair, n)
        y = o_pair % n
        classes[triple_pattern(p, x, y)] += 1
    positive = sum(classes.values())
    negative = len(algebra._switch_inverse_map(dbl))
    return PairTableReport(
        classes={k: classes.get(k, 0) for k in _PATTERNS},
        positive_total=positive,
        negative_total=negative,
        domain_size=len(dbl.y_pairs()),
    )
