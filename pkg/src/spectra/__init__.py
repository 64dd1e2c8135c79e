# Spectral bookkeeping for intertwined Hamiltonians
from .models import BoundStateVerdict, ModeKind, NormGrowth, SpectralChain, Verdict
from .service import (SimilarityResult, chain_is_valid, chain_residuals, classify_normalizability,
                      coefficient_matrix, dependence_is_zero, diagonalizing_similarity, free_modes,
                      linear_rank, map_chain, mapped_states, norm_growth, plane_wave_image,
                      similarity)
