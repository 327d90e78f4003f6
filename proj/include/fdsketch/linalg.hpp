#pragma once

#include <cstdint>
#include <vector>

#include "fdsketch/matrix.hpp"

namespace fdsketch {

/// Symmetric eigendecomposition result. `vectors` holds one eigenvector per
/// row, ordered to match `eigenvalues` (non-increasing).
struct EighResult {
  std::vector<double> eigenvalues;
  Matrix vectors;
};

/// Thin SVD of a short-fat matrix. `right_vectors` holds one right singular
/// vector per row; rows are orthonormal, including the completed rows backing
/// zero singular values.
struct SvdResult {
  std::vector<double> singular_values;
  Matrix right_vectors;
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Rejects non-square
// or asymmetric (beyond 1e-9 relative) input. Reconstruction residual is
// bounded by 1e-9 * ||S||_F.
EighResult sym_eigh(const Matrix& s);

// Thin SVD of b with rows <= cols, via the eigendecomposition of b*bᵀ.
// Singular values are sqrt of the clamped eigenvalues; right vectors are
// v_k = u_kᵀ b / σ_k above the rank cutoff (σ_k² > 1e-12 σ₁²) and a
// Gram-Schmidt orthonormal completion below it.
SvdResult thin_svd(const Matrix& b);

// Largest absolute eigenvalue of a symmetric matrix by power iteration on s²
// from a deterministic seeded start vector. Stops at relative accuracy `tol`
// or after `max_iter` iterations, whichever comes first.
double spectral_norm_sym(const Matrix& s, double tol = 1e-6,
                         std::size_t max_iter = 20000,
                         std::uint64_t seed = 0x5eed);

}  // namespace fdsketch
