"""Exact many-body correlators, resource certificates and LC classes of graph states."""

from graphres.certify import ResourceReport, certify
from graphres.classify import ClassDatabase, LuClass, classify, enumerate_connected, lc_orbit, load_atlas, save_atlas
from graphres.correlator import (
    CorrelatorResult,
    DirectionVector,
    E_from_gamma,
    coherence_at,
    coherence_at_mixed,
    gamma_from_E,
    maximize,
    maximize_mixed,
)
from graphres.errors import (
    AtlasError,
    CapabilityError,
    ConsistencyError,
    DomainError,
    FormulaNotApplicable,
    GraphresError,
    ParseError,
)
from graphres.formulas import gamma_cluster, gamma_star, gamma_tree, gamma_turan
from graphres.graph import (
    Graph,
    canonical_form,
    local_complement,
    make_grid,
    make_star,
    make_tree,
    make_turan,
)
from graphres.state import Axis, DensityMatrix, StateVector, dephase, graph_state, product_state

__version__ = "0.1.0"
