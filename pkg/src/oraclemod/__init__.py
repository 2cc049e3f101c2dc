"""Oracle modalities, nuclei and sheaf computations on finite Heyting frames."""

__version__ = "0.1.0"

from .containers import (
    IndexedPropContainer,
    container,
    container_sum,
    counterexample_container,
    empty_container,
    forces,
    instance_prenucleus,
    instance_reducible,
    lem_container,
    oracle_modality,
    oracle_modality_bruteforce,
    pred_of_nucleus,
    realized_container,
    validate_container,
)
from .frames import (
    Frame,
    FrameElement,
    Poset,
    downset_frame,
    heyting,
    poset_from_relation,
)
from .nuclei import (
    Nucleus,
    NucleusReport,
    canonical_nuclei,
    dense_elements,
    enumerate_nuclei,
    fixed_points_frame,
    nucleus,
    nucleus_leq,
    sup_nuclei,
    validate_nucleus,
)
from .theorems import THEOREM_IDS, Budget, TheoremReport, verify_theorems
from .trees import (
    CanonicalSheafElement,
    EquiTree,
    Leaf,
    Node,
    SetContainer,
    delta,
    equifoliate,
    membership,
    modal_eq,
    run_tree_suites,
    sheaf_classify,
    tree_bind,
)

__all__ = [name for name in dir() if not name.startswith("_")]
