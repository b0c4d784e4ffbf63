"""Exact computation of zero-forcing style graph invariants on small graphs."""

from . import threecolor  # noqa: F401  registers the three-color rules
from .forcing import (ClosureResult, Coloring2, Coloring3, ForceRecord, is_forcing_set, psd_closure,
                      skew_closure, std_closure)
from .graph import (BlowupMap, CapacityError, Graph, Graph6Error, InputError, blowup, from_edges, generate,
                    graph6_decode, graph6_encode)
from .leafstrip import StripTrace, leaf_strip, skew_zero_test, tree_skew_number
from .rfold import ClusterProfile, rfold_psd_closure, rfold_std_closure
from .solvers import (SolverLimits, WitnessedValue, astar_plus, z_number, zf_plus_number, zminus_number,
                      zplus_number, zr_number, zr_plus_number)
from .threecolor import frac_psd_closure, skew3_closure

__version__ = "0.1.0"
