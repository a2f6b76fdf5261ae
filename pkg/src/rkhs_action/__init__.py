"""Reproducing kernels of invariant function spaces of finite group actions."""

from .decomposition import (InvariantSubspace, commutant_average, constants, decompose,
                            full_space, hermitian_eigendecomposition, is_irreducible,
                            perm_matrix, sum_subspaces)
from .function_space import inner_product, translate, verify_invariance_lemma
from .kernels import (KernelFamily, kernel_family, orthogonal_kernel_expansion,
                      projection_extremality, reproduce, verify_basic_kernel_lemmas,
                      verify_translation_laws)
from .perm_group import (FiniteGroup, Permutation, Subgroup, are_conjugate_subgroups,
                         conjugate_subgroup, coset_action, group_from_generators,
                         is_transitive, named_group, point_stabilizer,
                         subgroup_intersection, subgroup_normalizer)
from .relation import (EquivalencePartition, equivalence_partition, lambda_of, related,
                       relation_stabilizer, verify_class_nontriviality,
                       verify_kernel_equality_corollary, verify_normalizer_laws,
                       verify_stabilizer_laws, verify_tfaemain)
from .tolerances import DEFAULT_TOL, Tolerances

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "EquivalencePartition",
    "FiniteGroup",
    "InvariantSubspace",
    "KernelFamily",
    "Permutation",
    "Subgroup",
    "Tolerances",
    "are_conjugate_subgroups",
    "commutant_average",
    "conjugate_subgroup",
    "constants",
    "coset_action",
    "decompose",
    "equivalence_partition",
    "full_space",
    "group_from_generators",
    "hermitian_eigendecomposition",
    "inner_product",
    "is_irreducible",
    "is_transitive",
    "kernel_family",
    "lambda_of",
    "named_group",
    "orthogonal_kernel_expansion",
    "perm_matrix",
    "point_stabilizer",
    "projection_extremality",
    "related",
    "relation_stabilizer",
    "reproduce",
    "subgroup_intersection",
    "subgroup_normalizer",
    "sum_subspaces",
    "translate",
    "verify_basic_kernel_lemmas",
    "verify_class_nontriviality",
    "verify_invariance_lemma",
    "verify_kernel_equality_corollary",
    "verify_normalizer_laws",
    "verify_stabilizer_laws",
    "verify_tfaemain",
    "verify_translation_laws",
]
