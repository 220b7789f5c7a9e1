"""Geometric (n_k) configurations: affine replication, affine switch, and bounds on N_k."""
from .bounds import (
    Realizability,
    band_adjacency_threshold,
    bar_step,
    hat_table,
    known_realizable,
    n_bound,
    table1,
)
from .configuration import (
    Configuration,
    LineRecord,
    Pencil,
    VerificationReport,
    apply_map,
    independent_pencils,
    normalize_pencils,
    pencils,
    verify,
)
from .constructions import affine_replication, affine_switch, affine_switch_band
from .geometry import AffineMap, Line, Point, intersect, line_through
from .planner import ConstructionPlan, coverage, execute, plan
from .seeds import multilateral, pappus

__version__ = "0.1.0"
