"""Exact lattice tools for embedding certificates of special cubic fourfolds."""
from .lattice import (DegenerateFormError, Lattice, Sublattice, direct_sum, discriminant_group,
                      dual_lattice, orthogonal_complement, same_abelian_group, saturation)
from .shortvec import roots, vectors_of_norm, vectors_of_norm_in_coset, vectors_up_to_norm
from .theta import ThetaTable, check_key_inequality, theta_coeffs
from .localdensity import alpha_p_direct, alpha_p_yang
from .repnum import REGISTRY, rep_number_even_rank, rep_number_odd_rank
from .embed import (EmbeddingCertificate, SearchConfig, TypeCounts, build_Kd_perp, classify_roots,
                    jprime_check, lemma68_counts, search_0mod6, search_2mod6, three_nonzero_squares,
                    verify_certificate)

__all__ = [
    "DegenerateFormError", "Lattice", "Sublattice", "direct_sum", "discriminant_group", "dual_lattice",
    "orthogonal_complement", "same_abelian_group", "saturation", "roots", "vectors_of_norm",
    "vectors_of_norm_in_coset", "vectors_up_to_norm", "ThetaTable", "check_key_inequality",
    "theta_coeffs", "alpha_p_direct", "alpha_p_yang", "REGISTRY", "rep_number_even_rank",
    "rep_number_odd_rank", "EmbeddingCertificate", "SearchConfig", "TypeCounts", "build_Kd_perp",
    "classify_roots", "jprime_check", "lemma68_counts", "search_0mod6", "search_2mod6",
    "three_nonzero_squares", "verify_certificate",
]
