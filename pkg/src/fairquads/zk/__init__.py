"""Z_k matrices, fair submatrices and covering quadruple systems."""
from fairquads.zk.matrix import (ZkMatrix, check_modulus, find_fair_submatrix, is_fair,
                                 random_matrix)
from fairquads.zk.quads import (CoverageReport, Profile, ProfileSet, Quad, QuadSystem,
                                covers, fair_count, family_k2, family_k3, parse_profiles,
                                quads_from_matrix, verify_profiles)
from fairquads.zk.search import local_search_minimize
from fairquads.zk.turan import (EdgeSet, product_construction, turan_extremal_graph,
                                turan_t, union_product_construction)

__all__ = [
    "ZkMatrix", "check_modulus", "find_fair_submatrix", "is_fair", "random_matrix",
    "CoverageReport", "Profile", "ProfileSet", "Quad", "QuadSystem", "covers",
    "fair_count", "family_k2", "family_k3", "parse_profiles", "quads_from_matrix",
    "verify_profiles", "local_search_minimize", "EdgeSet", "product_construction",
    "turan_extremal_graph", "turan_t", "union_product_construction",
]
