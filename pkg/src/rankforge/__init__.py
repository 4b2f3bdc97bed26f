"""Explicit rank condensers, dimension expanders and rank-metric codes over finite fields."""
from .gf import FElem, Field, element_order, find_element_of_order, make_field, phi
from .linalg import (FMatrix, SubspaceIter, batch_rank, count_subspaces, kernel,
                     orthogonal_complement, rank, tensor)
from .seeded import (Claim, SeededCondenser, SubspaceDesign, condenser_from_design,
                     design_from_condenser, folded_wronskian, lossless_collection, lossy_collection)
from .expander import (DimExpander, expander_from_two_source, expander_params_gamma0,
                       expander_params_general, tensor_maps, tensor_then_condense)
from .smallfield import lift_condenser, phi_lift_matrix, small_field_expander_params
from .twosource import (BilinearCondenser, RankMetricCode, bilinear_eval, code_to_condenser,
                        condense_tensor_lossless, condenser_to_code, gabidulin_code,
                        inner_condenser_search, lossy_outer_inner, min_rank_distance,
                        pruned_lossless, roth_code)
from .verify import (VerifyReport, verify, verify_design, verify_expander, verify_seeded,
                     verify_two_source)
from .bounds import bound_dim_expander, bound_lossy_seeded, bound_two_source
from .montecarlo import montecarlo_random_object

__version__ = "0.1.0"

__all__ = [
    "FElem",
    "Field",
    "element_order",
    "find_element_of_order",
    "make_field",
    "phi",
    "FMatrix",
    "SubspaceIter",
    "batch_rank",
    "count_subspaces",
    "kernel",
    "orthogonal_complement",
    "rank",
    "tensor",
    "Claim",
    "SeededCondenser",
    "SubspaceDesign",
    "condenser_from_design",
    "design_from_condenser",
    "folded_wronskian",
    "lossless_collection",
    "lossy_collection",
    "DimExpander",
    "expander_from_two_source",
    "expander_params_gamma0",
    "expander_params_general",
    "tensor_maps",
    "tensor_then_condense",
    "lift_condenser",
    "phi_lift_matrix",
    "small_field_expander_params",
    "BilinearCondenser",
    "RankMetricCode",
    "bilinear_eval",
    "code_to_condenser",
    "condense_tensor_lossless",
    "condenser_to_code",
    "gabidulin_code",
    "inner_condenser_search",
    "lossy_outer_inner",
    "min_rank_distance",
    "pruned_lossless",
    "roth_code",
    "VerifyReport",
    "verify",
    "verify_design",
    "verify_expander",
    "verify_seeded",
    "verify_two_source",
    "bound_dim_expander",
    "bound_lossy_seeded",
    "bound_two_source",
    "montecarlo_random_object",
]
