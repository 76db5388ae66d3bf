"""Hilbert-Schmidt volumes of bipartite X-states and of their PPT subset."""
from .analytic import PiRational, beta, dirichlet_integral, i_min, i_zero, ratio, volume_ppt, volume_x
from .montecarlo import Estimate, Method, estimate, estimate_naive, estimate_rao_blackwell, sweep
from .ptstructure import PtClassification, classify, ppt_check, pt_permute_index
from .sampler import SampleConfig, make_rng, sample_diagonal, sample_state
from .xstate import Dims, DomainError, EigenPair, StructuralError, XState, eigenvalues, is_positive_semidefinite, validate

__all__ = [
    "Dims", "XState", "EigenPair", "DomainError", "StructuralError",
    "eigenvalues", "is_positive_semidefinite", "validate",
    "PtClassification", "classify", "ppt_check", "pt_permute_index",
    "PiRational", "beta", "dirichlet_integral", "i_zero", "i_min", "volume_x", "volume_ppt", "ratio",
    "SampleConfig", "make_rng", "sample_diagonal", "sample_state",
    "Estimate", "Method", "estimate", "estimate_naive", "estimate_rao_blackwell", "sweep",
]
