"""Exact torsion invariants of mesh Legendrians from bicolored ribbon graphs."""

from .cocycle import CyclicTriple, c_Z, euler_number_clutching, euler_number_cocycle
from .cyclotomic import Cyclotomic, cyc_equal_up_to_sign, cyclotomic_polynomial
from .errors import *  # noqa: F401,F403
from .graphio import GraphDocument, load_graph, parse_graph, render_graph
from .linalg import QQ, RR, CyclotomicField, Matrix
from .mesh import (
    EdgeLabeling,
    TorsionReport,
    Verdict,
    check_labeling,
    distinguish,
    higher_torsion_r1,
    legendrian_turaev_torsion,
    solve_edge_labels,
    verify_jks,
)
from .ribbon import NEG, POS, RibbonGraph, Vertex, invariants, mirror, random_graph, recolor, validate, winding_number
from .ring import LocalSystem, RingElem, UnitUpToSign, eval_complex, eval_cyclotomic, is_unit
from .slides import ExchangePoint, exchange_effect, verify_edge_identity, verify_vertex_identity
from .torsion import (
    ChainComplex,
    TorsionValue,
    find_contraction,
    reidemeister_class,
    suspend,
    torsion_det,
    torsion_minors,
)

__version__ = "0.1.0"
