#pragma once

#include <cstdint>
#include <span>

#include "fdsketch/matrix.hpp"

namespace fdsketch {

/// Streaming Frequent-Directions sketch of a row stream.
///
/// Maintains an ell x cols buffer B whose Gram matrix BᵀB underestimates AᵀA
/// by at most ||A||_F²/ell in spectral norm (exact mode). Each incoming row
/// fills a zero buffer row; when none remain, the buffer is rotated to ΣV
/// form by a thin SVD and all squared singular values are shrunk by the
/// squared value at the shrink rank, re-zeroing at least one row.
///
/// The fast variant shrinks at rank ceil(c*ell) instead of ell, freeing at
/// least floor((1-c)*ell) rows per SVD so the SVD cost amortizes; the bound
/// weakens to ||A||_F²/(c*ell).
class FdSketch {
 public:
  // Exact mode (Algorithm 1): shrink rank = ell.
  FdSketch(std::size_t ell, std::size_t cols);

  // Fast mode: shrink rank = ceil(c*ell) with c in [1/10, 9/10].
  FdSketch(std::size_t ell, std::size_t cols, double c);

  // Exact-mode sketch with ell = ceil(1/epsilon), epsilon in (0, 1].
  static FdSketch from_epsilon(double epsilon, std::size_t cols);

  void append(std::span<const double> row);

  /// Current sketch matrix (ell x cols, zero reservoir rows included).
  Matrix sketch() const { return buffer_; }

  // Appends every row of another sketch; the merged sketch keeps the
  // combined guarantee against the concatenated input stream.
  void merge(const Matrix& src_sketch);

  // m x m projector onto the span of the top-k right singular vectors of the
  // sketch, 1 <= k <= ell.
  Matrix lowrank_projection(std::size_t k) const;

  std::size_t ell() const { return ell_; }
  std::size_t cols() const { return cols_; }
  bool fast_mode() const { return fast_mode_; }
  double shrink_c() const { return c_; }
  /// 1-based singular-value index used for the shrink amount.
  std::size_t shrink_rank_index() const { return shrink_rank_; }
  /// Sum of all shrink amounts δ_i so far.
  double delta_total() const { return delta_total_; }
  /// ||A||_F² of all rows ingested so far.
  double input_frob_sq() const { return input_frob_sq_; }
  std::size_t svd_count() const { return svd_count_; }
  /// Number of zero rows currently available in the buffer.
  std::size_t zero_rows() const { return ell_ - fill_; }

  // Checks the δ-accounting identity against a fresh scan of the buffer:
  // exact mode ell*Σδ = ||A||_F² - ||B||_F² (within rel_tol * ||A||_F²);
  // fast mode the sandwich shrink_rank*Σδ <= ||A||_F² - ||B||_F² <= ell*Σδ.
  // Throws std::logic_error on violation.
  void validate_delta_identity(double rel_tol = 1e-8) const;

 private:
  FdSketch(std::size_t ell, std::size_t cols, double c, bool fast);
  void shrink();

  std::size_t ell_ = 0;
  std::size_t cols_ = 0;
  bool fast_mode_ = false;
  double c_ = 1.0;
  std::size_t shrink_rank_ = 0;
  Matrix buffer_;
  std::size_t fill_ = 0;  // rows [0, fill_) are in use; the rest are zero
  double delta_total_ = 0.0;
  double input_frob_sq_ = 0.0;
  std::size_t svd_count_ = 0;
};

}  // namespace fdsketch
