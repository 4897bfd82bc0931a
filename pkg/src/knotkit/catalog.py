"""Builtin diagram catalog.

Each entry is raw diagram JSON data (see diagram.parse_diagram).  Dart
numbering: edge k owns the darts 2k (tail) and 2k+1 (head), except where a
kink was spliced in and darts were appended.  All rotations were laid out
on paper and the face counts are pinned by the test suite, so any edit
here that changes a genus will be caught.
"""

from __future__ import annotations

from functools import lru_cache

from . import diagram
from .errors import BadParameter

# the right trefoil: three positive crossings, edges e0..e5 chained
#   e0 -U@C1- e1 -O@C2- e2 -U@C0- e3 -O@C1- e4 -U@C2- e5 -O@C0- e0
_TREFOIL_R = {
    "name": "trefoil_r",
    "vertices": [
        {"kind": "+", "darts": [5, 0, 6, 11], "under_in": 5},
        {"kind": "+", "darts": [1, 8, 2, 7], "under_in": 1},
        {"kind": "+", "darts": [9, 4, 10, 3], "under_in": 9},
    ],
    "edges": [[0, 1], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11]],
    "outer_face_dart": 3,
    "free_loops": 0,
}

# trefoil_r with a positive curl spliced into edge e0 (darts 12..15 added)
_TREFOIL_R_KINKED = {
    "name": "trefoil_r_kinked",
    "vertices": [
        {"kind": "+", "darts": [5, 0, 6, 11], "under_in": 5},
        {"kind": "+", "darts": [1, 8, 2, 7], "under_in": 1},
        {"kind": "+", "darts": [9, 4, 10, 3], "under_in": 9},
        {"kind": "+", "darts": [12, 15, 13, 14], "under_in": 12},
    ],
    "edges": [
        [0, 12], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11], [13, 14], [15, 1],
    ],
    "outer_face_dart": 3,
    "free_loops": 0,
}

_UNKNOT0 = {
    "name": "unknot0",
    "vertices": [],
    "edges": [],
    "outer_face_dart": None,
    "free_loops": 1,
}

# one positive curl: main edge e0 = [0, 1], curl edge e1 = [2, 3]
_UNKNOT_KINK_POS = {
    "name": "unknot_kink_pos",
    "vertices": [{"kind": "+", "darts": [1, 0, 2, 3], "under_in": 1}],
    "edges": [[0, 1], [2, 3]],
    "outer_face_dart": 1,
    "free_loops": 0,
}

# a finger poked across the strand: crossings of opposite sign
#   e0: the short under-segment between the crossings, e2: the finger tip
_UNKNOT_R2 = {
    "name": "unknot_r2",
    "vertices": [
        {"kind": "-", "darts": [0, 6, 7, 5], "under_in": 7},
        {"kind": "+", "darts": [2, 3, 1, 4], "under_in": 1},
    ],
    "edges": [[0, 1], [2, 3], [4, 5], [6, 7]],
    "outer_face_dart": 1,
    "free_loops": 0,
}

# figure-eight knot as a braid closure on three strands, writhe 0
_FIGURE8 = {
    "name": "figure8",
    "vertices": [
        {"kind": "-", "darts": [0, 6, 15, 5], "under_in": 15},
        {"kind": "+", "darts": [2, 12, 1, 11], "under_in": 11},
        {"kind": "-", "darts": [8, 14, 7, 13], "under_in": 7},
        {"kind": "+", "darts": [10, 4, 9, 3], "under_in": 3},
    ],
    "edges": [
        [0, 1], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11], [12, 13], [14, 15],
    ],
    "outer_face_dart": 7,
    "free_loops": 0,
}

# two positive classical crossings plus the one virtual crossing needed to
# draw the closure in the plane; lives on a torus (genus 1)
_VIRTUAL_TREFOIL = {
    "name": "virtual_trefoil",
    "vertices": [
        {"kind": "+", "darts": [0, 4, 11, 3], "under_in": 3},
        {"kind": "+", "darts": [2, 8, 1, 7], "under_in": 7},
        {"kind": "v", "darts": [9, 6, 10, 5], "under_in": None},
    ],
    "edges": [[0, 1], [2, 3], [4, 5], [6, 7], [8, 9], [10, 11]],
    "outer_face_dart": None,
    "free_loops": 0,
}

_RAW = {
    "unknot0": _UNKNOT0,
    "unknot_kink_pos": _UNKNOT_KINK_POS,
    "unknot_r2": _UNKNOT_R2,
    "trefoil_r": _TREFOIL_R,
    "trefoil_l": None,  # built as the mirror of trefoil_r
    "figure8": _FIGURE8,
    "virtual_trefoil": _VIRTUAL_TREFOIL,
    "trefoil_r_kinked": _TREFOIL_R_KINKED,
}

# pairs of catalog diagrams presenting the same knot
EQUIVALENCE_PAIRS = (
    ("trefoil_r", "trefoil_r_kinked"),
    ("unknot0", "unknot_r2"),
)


def names():
    return tuple(_RAW)


@lru_cache(maxsize=None)
def load(name):
    if name not in _RAW:
        raise BadParameter(f"unknown catalog diagram {name!r}")
    if name == "trefoil_l":
        return diagram.mirror(load("trefoil_r"), name="trefoil_l")
    return diagram.parse_diagram(_RAW[name])


def all_diagrams():
    return tuple(load(n) for n in names())
