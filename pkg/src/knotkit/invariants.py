"""Diagram invariants built from coloured crossing data.

The centrepiece is the signed 3-chain of a whole colouring: each positive
classical crossing contributes +(p, u, o) where u and o are the incoming
under and over colours and p is the colour of the face to the right of
the incoming under semi-arc; a negative crossing contributes -(p, u, o)
read off its outgoing strands the same way.  Every semi-arc then appears
once entering and once leaving a crossing with cancelling boundary terms,
so the chain is a cycle, and its class in the degree-3 quandle homology
of the colouring quandle is a diagram invariant.  Over the 3-colour
quandle that class separates the two trefoils.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import diagram, homology
from ._util import parallel_map
from .algebra import black_white, evaluate, three_colour, twist
from .colouring import (
    count_colourings,
    enumerate_whole_colourings,
    is_valid_edge_colouring,
    triple_pattern,
)
from .diagram import (
    alternate_orientations,
    chessboard,
    crossing_ends,
    genus,
    semi_arcs,
    semiarc_sides,
    two_sidedness,
    writhe,
)
from .errors import NotACycle, NotWholeColoured, TheoryMismatch, WrongTable
from .homology import Chain, cycle_class


@lru_cache(maxsize=None)
def _cached_basis(table, degree, theory):
    return homology.homology_group(table, degree, theory)


def _validate_whole(d, wc):
    sas = semi_arcs(d)
    table = wc.edge.table
    if len(wc.edge.by_semiarc) != len(sas) or len(wc.by_face) != len(
        diagram.faces(d)
    ):
        raise NotWholeColoured("colouring shape does not match the diagram")
    if not is_valid_edge_colouring(d, wc.edge):
        raise NotWholeColoured("edge colouring violates a crossing rule")
    for sa in sas:
        r, l = semiarc_sides(d, sa.id)
        b = wc.edge.by_semiarc[sa.id]
        if evaluate(table, "up", wc.by_face[r], b) != wc.by_face[l]:
            raise NotWholeColoured(f"face rule fails along semi-arc {sa.id}")


def whole_cycle(d, wc):
    """The signed sum over classical crossings of (region, under, over)
    colour triples; verified to be a cycle in the quandle theory."""
    table = wc.edge.table
    if homology._classification(table) != "quandle":
        raise TheoryMismatch("crossing triples need a quandle colouring")
    _validate_whole(d, wc)
    sa_of = diagram._semiarc_of_dart(d)
    terms = {}
    for i, c in enumerate(d.vertices):
        if c.kind == "v":
            continue
        u_in, u_out, o_in, o_out = crossing_ends(d)[i]
        if c.kind == "+":
            sign, sa_u, sa_o = 1, sa_of[u_in], sa_of[o_in]
        else:
            sign, sa_u, sa_o = -1, sa_of[u_out], sa_of[o_out]
        p = wc.by_face[semiarc_sides(d, sa_u)[0]]
        key = (p, wc.edge.by_semiarc[sa_u], wc.edge.by_semiarc[sa_o])
        terms[key] = terms.get(key, 0) + sign
    chain = Chain(3, terms)
    residual = Chain(
        2,
        {
            t: c
            for t, c in homology.boundary(table, chain).items()
            if not homology.is_degenerate(t)
        },
    )
    if not residual.is_zero():
        raise NotACycle(f"crossing triple sum of {d.name} is not a cycle")
    return chain


def chirality_classes(d, table):
    """Multiset (sorted tuple) of homology-class coordinates of the
    crossing triple sums over all whole colourings of the diagram."""
    basis = _cached_basis(table, 3, "Q")
    colourings = enumerate_whole_colourings(d, table)
    classes = parallel_map(
        lambda wc: cycle_class(basis, whole_cycle(d, wc)), colourings
    )
    return tuple(sorted(classes))


def mirror_classes(classes):
    return tuple(sorted(tuple(-x for x in c) for c in classes))


# ---------------------------------------------------------------------------
# the three-strand move enumeration


_LHS_WORD = (0, 1, 0)
_RHS_WORD = (1, 0, 1)


def _propagate_strands(table, word, inbound, seed):
    """Push three rightward strands through positive crossings.

    ``inbound`` lists the lane colours top to bottom, ``seed`` colours the
    region below the bottom lane.  regions[k] is the region above lane k;
    the face right of a rightward strand is the one below it.  Returns the
    outgoing lanes, the final regions, and one (region, under, over)
    triple per crossing.
    """
    lanes = list(inbound)
    regions = [None] * (len(lanes) + 1)
    regions[-1] = seed
    for k in range(len(lanes) - 1, -1, -1):
        regions[k] = evaluate(table, "up", regions[k + 1], lanes[k])
    triples = []
    for i in word:
        under, over = lanes[i + 1], lanes[i]
        triples.append((regions[i + 2], under, over))
        lanes[i] = evaluate(table, "up", under, over)
        lanes[i + 1] = evaluate(table, "down", over, under)
        regions[i + 1] = evaluate(table, "up", regions[i + 2], lanes[i + 1])
    return lanes, regions, triples


@dataclass(frozen=True)
class MoveColouring:
    inbound: tuple
    seed: int
    lhs_triples: tuple
    rhs_triples: tuple
    outbound: tuple
    top_region: int

    def relation(self):
        terms = {}
        for t in self.lhs_triples:
            terms[t] = terms.get(t, 0) + 1
        for t in self.rhs_triples:
            terms[t] = terms.get(t, 0) - 1
        return Chain(3, terms)


def r3_whole_colourings(table):
    """Every whole colouring of the three-crossing move: free inbound lane
    colours plus a free seed region, transmitted through both sides."""
    if homology._classification(table) not in ("quandle", "biquandle"):
        raise TheoryMismatch("move colourings need at least a biquandle")
    out = []
    rng = range(table.n)
    for inbound in itertools.product(rng, repeat=3):
        for seed in rng:
            l_out, l_regions, l_triples = _propagate_strands(
                table, _LHS_WORD, inbound, seed
            )
            r_out, _, r_triples = _propagate_strands(
                table, _RHS_WORD, inbound, seed
            )
            if l_out != r_out:
                raise NotACycle(
                    "the two sides of the move disagree; the table is not "
                    "a birack"
                )
            out.append(
                MoveColouring(
                    inbound=tuple(inbound),
                    seed=seed,
                    lhs_triples=tuple(l_triples),
                    rhs_triples=tuple(r_triples),
                    outbound=tuple(l_out),
                    top_region=l_regions[0],
                )
            )
    return out


def r3_relations(table):
    """One relation chain per move colouring: left-side triples minus
    right-side triples (identical triples cancel; many are zero)."""
    return [mc.relation() for mc in r3_whole_colourings(table)]


def r3_colouring_count(table):
    """Move colourings counted up to the half-turn symmetry of the move.

    Rotating the three-strand figure by a half turn reverses the strand
    order and swaps the two sides; on boundary data it sends (inbound,
    seed) to (reversed outbound, top region).  The raw enumeration is a
    power of the carrier size, while this quotient gives the 3-colour
    quandle exactly 45 classes.
    """
    by_key = {
        (mc.inbound, mc.seed): (tuple(reversed(mc.outbound)), mc.top_region)
        for mc in r3_whole_colourings(table)
    }
    seen = set()
    count = 0
    for key in sorted(by_key):
        if key in seen:
            continue
        count += 1
        cur = key
        while cur not in seen:
            seen.add(cur)
            cur = by_key[cur]
    return count


# ---------------------------------------------------------------------------
# the crossing-invariant abelian group


@dataclass(frozen=True)
class QuotientGroup:
    group: homology.AbelianGroup
    _gens: tuple
    _u: tuple
    _factors: tuple

    def coordinates(self, chain):
        index = {g: i for i, g in enumerate(self._gens)}
        vec = [0] * len(self._gens)
        for tup, c in chain.items():
            if tup not in index:
                raise WrongTable(f"generator {tup} outside the group")
            vec[index[tup]] = c
        y = homology._mat_vec(self._u, vec)
        coords = []
        for i, dfac in enumerate(self._factors):
            if dfac >= 2:
                coords.append(homology._balanced(y[i], dfac))
        coords.extend(y[len(self._factors) :])
        return tuple(coords)

    def order_of(self, chain):
        return class_order_like(self.group, self.coordinates(chain))


def class_order_like(group, coords):
    import math

    torsion = group.torsion
    if any(coords[len(torsion):]):
        return 0
    order = 1
    for dfac, c in zip(torsion, coords):
        order = math.lcm(order, dfac // math.gcd(dfac, c % dfac))
    return order


def crossing_invariant_group(table):
    """Free abelian group on colour triples, modulo the curl patterns
    (a,b,b), (a,a,a), (a,a,b) and all move relations.  Returns the group
    and an evaluator mapping signed triple sums to its coordinates."""
    n = table.n
    gens = tuple(itertools.product(range(n), repeat=3))
    gen_index = {g: i for i, g in enumerate(gens)}
    columns = []
    seen = set()
    for g in gens:
        if triple_pattern(*g) in ("aaa", "aab", "abb"):
            col = [0] * len(gens)
            col[gen_index[g]] = 1
            columns.append(col)
    for rel in r3_relations(table):
        rel = rel.reduced()
        if rel.is_zero() or rel in seen:
            continue
        seen.add(rel)
        col = [0] * len(gens)
        for tup, c in rel.items():
            col[gen_index[tup]] = c
        columns.append(col)
    if columns:
        mat = [[columns[j][i] for j in range(len(columns))] for i in range(len(gens))]
    else:
        mat = [[0] for _ in gens]
    U, D, _, _ = homology._snf_full(mat)
    factors = []
    for i in range(min(len(D), len(D[0]))):
        if D[i][i]:
            factors.append(D[i][i])
    torsion = tuple(dfac for dfac in factors if dfac >= 2)
    group = homology.AbelianGroup(len(gens) - len(factors), torsion)
    qg = QuotientGroup(
        group=group,
        _gens=gens,
        _u=tuple(tuple(r) for r in U),
        _factors=tuple(factors),
    )
    return group, qg.coordinates


# ---------------------------------------------------------------------------
# black/white two-chains


def _is_black_white(table):
    return table == black_white()


def bw_two_cycle(d, ec):
    """Signed 2-chain of a black/white colouring and its degree-2 class.

    A positive crossing contributes +(under-in, over-out) and a negative
    one -(under-out, over-in); with the swap actions every semi-arc enters
    once with + and leaves once with -, so the chain is always a cycle.
    """
    table = ec.table
    if not _is_black_white(table):
        raise WrongTable("two-chains are built over the black/white table")
    if not is_valid_edge_colouring(d, ec):
        raise NotWholeColoured("invalid black/white colouring")
    sa_of = diagram._semiarc_of_dart(d)
    terms = {}
    for i, c in enumerate(d.vertices):
        if c.kind == "v":
            continue
        u_in, u_out, o_in, o_out = crossing_ends(d)[i]
        if c.kind == "+":
            key = (ec.by_semiarc[sa_of[u_in]], ec.by_semiarc[sa_of[o_out]])
            sign = 1
        else:
            key = (ec.by_semiarc[sa_of[u_out]], ec.by_semiarc[sa_of[o_in]])
            sign = -1
        terms[key] = terms.get(key, 0) + sign
    chain = Chain(2, terms)
    if not homology.boundary(table, chain).is_zero():
        raise NotACycle(f"black/white 2-chain of {d.name} is not a cycle")
    basis = _cached_basis(table, 2, "BR")
    return chain, cycle_class(basis, chain)


# ---------------------------------------------------------------------------
# aggregate report


_REPORT_TABLES = (
    ("q3", three_colour),
    ("bw", black_white),
    ("i2", lambda: twist(2)),
    ("i3", lambda: twist(3)),
)


def diagram_report(d):
    """Everything at once, as a JSON-ready dict with a stable field order."""
    counts = {name: count_colourings(d, make()) for name, make in _REPORT_TABLES}
    classes = chirality_classes(d, three_colour())
    orientations = alternate_orientations(d)
    sided = two_sidedness(d)
    return {
        "format": "1",
        "diagram": d.name,
        "writhe": writhe(d),
        "genus": genus(d),
        "colour_counts": counts,
        "chirality_q3": [c[0] if len(c) == 1 else list(c) for c in classes],
        "orientation": {
            "count": len(orientations),
            "good": any(o.good for o in orientations),
            "per_orientation": [
                {
                    "sinks": o.sinks,
                    "sources": o.sources,
                    "saddles": o.saddles,
                    "good": o.good,
                }
                for o in orientations
            ],
        },
        "two_sided": sided.two_sided,
        "chessboard": chessboard(d) is not None,
    }


def invariant_fields(report):
    """The subset of report fields stable under the diagram moves; used to
    compare equivalent diagrams."""
    return {
        "colour_counts": report["colour_counts"],
        "chirality_q3": report["chirality_q3"],
        "good": report["orientation"]["good"],
        "chessboard": report["chessboard"],
        "two_sided": report["two_sided"],
    }
