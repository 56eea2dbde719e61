"""Crystal operators on isomorphism classes of Dynkin quiver representations."""

from .ar_quiver import (
    ARQuiver,
    Indec,
    ModuleClass,
    build_ar,
    module_from_dim_dict,
    module_from_json,
    module_to_json,
    special_orientations,
    tau_inv_class,
    thick_vertices,
    zero_module,
)
from .crystal_graph import (
    CrystalGraph,
    check_axioms,
    compare_orientations,
    generate,
    graph_from_json,
    kostant_count,
)
from .crystal_ops import (
    Antichain,
    HomPoset,
    antichain_leq,
    antichain_score,
    antichains,
    e_tilde,
    epsilon_i,
    exchange_set,
    f_tilde,
    hom_poset,
    phi_i,
    weight_of,
)
from .dynkin import (
    Diagram,
    Quiver,
    all_orientations,
    cartan_matrix,
    coroot_pairing,
    diagram,
    parse_quiver,
    positive_roots,
    ringel_form,
    symmetrized_form,
)
from .errors import (
    DomainError,
    InvariantViolation,
    QuiverCrystalError,
    QuiverParseError,
    ResourceLimitError,
)
from .pm_graph import (
    AMorphism,
    MultiplicityGraph,
    build_pm,
    closure_H,
    closure_antichain,
    down_closure,
    enumerate_morphisms,
    eps_of,
    F_of_subset,
    is_preceq,
    is_preceq_minimal,
    min_epsilon,
    preceq_minimal_morphisms,
)

__version__ = "0.1.0"
