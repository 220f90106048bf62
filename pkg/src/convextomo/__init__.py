"""Reconstruction of convex lattice sets from one or two X-rays.

Three pipelines share an exact integer-geometry core:

* ``hvpoly`` — HV-convex polyominoes from two X-rays via filling plus 2-SAT
  aggregation of the switching components (including the built-in
  counter-example where filling succeeds but aggregation is unsatisfiable);
* ``dagtomo1`` — digital convex sets from a single vertical X-ray via path
  search in a DAG of quads;
* ``dagtomo2`` — fat digital convex sets from both X-rays via filling plus
  path search in a DAG of octagons.

``oracle`` provides brute-force ground truth at small grid sizes.
"""

from .errors import (
    ContradictionSignal,
    EmptySetError,
    MalformedResidualError,
    NonContiguousFootError,
    OutOfGridError,
    ParseError,
    ReconstructionError,
    UnsupportedError,
)
from .hull import Point
from .lattice import (
    Axis,
    ClassFlags,
    FatKind,
    Fatness,
    Feet,
    LatticeSet,
    ThinOrientation,
    XRay,
    apply_shear,
    classify_fatness,
    classify_set,
    compute_xrays,
    feet,
    integer_hull,
    is_digital_convex,
)
from .filling import (
    Borders,
    Complete,
    Contradiction,
    FeetPlacement,
    FillMode,
    FillingOutcome,
    Partition,
    Residual,
    RowState,
    convex_fill_kernel,
    convex_fill_out,
    init_partition,
    line_fill,
    partition_borders,
    run_filling,
)
from .hvpoly import (
    BAD_GUY,
    BadGuy,
    Cnf2,
    Parity,
    Side,
    SwitchingComponent,
    build_aggregation_cnf,
    build_switching_components,
    correspondent,
    reconstruct_hv_polyomino,
    solve_2sat,
)
from .dagtomo1 import Quad, Region, build_region, reconstruct1
from .dagtomo2 import Octagon, PotentialVertices, Strips, reconstruct2
from .oracle import (
    GridSpec,
    enumerate_digital_convex,
    naive_enumerate_digital_convex,
    oracle_dt1,
    oracle_dt2,
    oracle_hv_polyomino,
)
from .render import RenderSpec, parse_set_file, render_ascii_set, render_svg_set

__version__ = "0.1.0"
