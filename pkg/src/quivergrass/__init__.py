"""Combinatorics and exact linear algebra of cyclic-quiver Grassmannians.

The package implements the three equivalent fixed-point labellings (length
tuples, juggling patterns, bounded affine permutations) and their bijections,
the moment graph of the torus action with its character labels and cyclic
symmetry, equivariant-class checking over an exact polynomial ring, exact
rational subspace geometry with the automorphism action and one-parameter
limits, the embedding of fixed points into the affine flag variety with the
resulting Schubert-union description, and the rank computation for the
multilinear slice of the three-component plane degeneration.
"""

from .core import (
    DEFAULT_MAX_SIZE,
    GuardExceeded,
    Params,
    component_fixed_point,
    component_subsets,
    enumerate_length_tuples,
    jug_to_lengths,
    lengths_to_jug,
    lengths_to_perm,
    perm_length,
    perm_to_lengths,
    window_value,
)
from .moment_graph import (
    Character,
    MomentGraph,
    MoveError,
    apply_move,
    build_graph,
    check_rotation_equivariance,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    rotate_tuple,
)
from .order import (
    bruhat_covers_below,
    bruhat_lower_interval,
    cell_lower_set,
    jug_leq,
    poincare_polynomial,
    poincare_str,
    verify_order_equivalence,
)
from .gkm import (
    GkmClass,
    Polynomial,
    check_gkm_class,
    class_from_json,
    class_to_json,
    congruent_mod_linear,
    kt_shape_check,
    zn_act_class,
)
from .linear_geometry import (
    AutElement,
    RationalMatrix,
    RepPoint,
    aut_act,
    aut_compose,
    aut_matrix,
    bb_limit,
    coordinate_point,
    identity_aut,
    is_subrep,
    point_from_json,
    point_to_json,
    random_aut,
    shift_matrix,
)
from .affine_flag import (
    FlagPoint,
    PolyMatrix,
    SatoPoint,
    aut_to_iwahori,
    check_flag_point,
    embed_fixed_point,
    sato_weyl,
    schubert_union_check,
    w_of_subset,
)
from .flatness import degree111_rank

__version__ = "0.1.0"
