"""knotkit: finite biracks, knot diagram colourings, and their homology.

The package distinguishes the two trefoil diagrams by colouring them with
pairs of three colours (equivalently, by the double of the 3-colour
quandle) and reading the class of the resulting crossing sum in the
degree-3 quandle homology: +1 for one handedness, -1 for the other.
"""

from .algebra import (
    AxiomReport,
    BirackTable,
    alexander,
    black_white,
    builtin,
    check_axioms,
    dihedral,
    double,
    evaluate,
    find_isomorphism,
    sideways,
    switch,
    switch_inverse,
    three_colour,
    twist,
)
from .catalog import EQUIVALENCE_PAIRS, load as load_catalog, names as catalog_names
from .colouring import (
    EdgeColouring,
    WholeColouring,
    count_colourings,
    crossing_rule,
    enumerate_edge_colourings,
    enumerate_whole_colourings,
    extend_to_whole,
    pair_table_check,
)
from .diagram import (
    Diagram,
    alternate_orientations,
    chessboard,
    chord_diagram,
    crossing_parity,
    faces,
    gauss_code,
    genus,
    mirror,
    parse_diagram,
    semi_arcs,
    two_sidedness,
    writhe,
)
from .errors import KnotKitError
from .homology import (
    AbelianGroup,
    Chain,
    boundary,
    boundary_matrix,
    class_order,
    cycle_class,
    homology_group,
    smith_normal_form,
)
from .invariants import (
    bw_two_cycle,
    chirality_classes,
    crossing_invariant_group,
    diagram_report,
    r3_colouring_count,
    r3_relations,
    whole_cycle,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
