#include "fdsketch/fd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fdsketch/linalg.hpp"

namespace fdsketch {

namespace {

// Singular values and right-vector rows of the full buffer, taken on
// whichever Gram side is smaller. Returns min(ell, m) usable directions.
SvdResult buffer_svd(const Matrix& b) {
  if (b.rows() <= b.cols()) return thin_svd(b);
  // Tall buffer (ell > m): eigendecompose BᵀB directly; its eigenvectors are
  // the right singular vectors and the remaining ell - m values are zero.
  EighResult eig = sym_eigh(gram(b));
  SvdResult out;
  out.singular_values.resize(b.cols());
  for (std::size_t k = 0; k < b.cols(); ++k) {
    out.singular_values[k] = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
  }
  out.right_vectors = std::move(eig.vectors);
  return out;
}

}  // namespace

FdSketch::FdSketch(std::size_t ell, std::size_t cols, double c, bool fast)
    : ell_(ell), cols_(cols), fast_mode_(fast), c_(c) {
  if (ell == 0 || cols == 0) {
    throw std::invalid_argument("FdSketch requires ell >= 1 and cols >= 1");
  }
  if (fast && (c < 0.1 || c > 0.9)) {
    throw std::invalid_argument("FdSketch fast mode requires c in [1/10, 9/10]");
  }
  shrink_rank_ = fast
      ? static_cast<std::size_t>(std::ceil(c * static_cast<double>(ell)))
      : ell;
  shrink_rank_ = std::max<std::size_t>(shrink_rank_, 1);
  buffer_ = Matrix(ell, cols);
}

FdSketch::FdSketch(std::size_t ell, std::size_t cols)
    : FdSketch(ell, cols, 1.0, false) {}

FdSketch::FdSketch(std::size_t ell, std::size_t cols, double c)
    : FdSketch(ell, cols, c, true) {}

FdSketch FdSketch::from_epsilon(double epsilon, std::size_t cols) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("from_epsilon requires epsilon in (0, 1]");
  }
  const auto ell = static_cast<std::size_t>(std::ceil(1.0 / epsilon));
  return FdSketch(ell, cols);
}

void FdSketch::append(std::span<const double> row) {
  if (row.size() != cols_) {
    throw std::invalid_argument("FdSketch::append row length " +
                                std::to_string(row.size()) + " != cols " +
                                std::to_string(cols_));
  }
  double row_norm_sq = 0.0;
  for (double v : row) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("FdSketch::append requires finite entries");
    }
    row_norm_sq += v * v;
  }

  std::copy(row.begin(), row.end(), buffer_.data() + fill_ * cols_);
  ++fill_;
  input_frob_sq_ += row_norm_sq;

  // While zero rows remain the shrink amount would be 0 and the rotation to
  // ΣV form leaves BᵀB unchanged, so the SVD is skipped entirely.
  if (fill_ == ell_) shrink();
}

void FdSketch::shrink() {
  const SvdResult svd = buffer_svd(buffer_);
  const std::size_t nsv = svd.singular_values.size();

  double delta = 0.0;
  if (shrink_rank_ <= nsv) {
    const double sigma = svd.singular_values[shrink_rank_ - 1];
    delta = sigma * sigma;
  }

  double frob_before = 0.0;
  double frob_after = 0.0;
  fill_ = 0;
  for (std::size_t k = 0; k < ell_; ++k) {
    double* out = buffer_.data() + k * cols_;
    const double sq = k < nsv ? svd.singular_values[k] * svd.singular_values[k]
                              : 0.0;
    frob_before += sq;
    const double shrunk_sq = std::max(sq - delta, 0.0);
    if (shrunk_sq > 0.0) {
      const double factor = std::sqrt(shrunk_sq);
      const double* v = svd.right_vectors.data() + k * cols_;
      for (std::size_t j = 0; j < cols_; ++j) out[j] = factor * v[j];
      frob_after += shrunk_sq;
      fill_ = k + 1;
    } else {
      std::fill(out, out + cols_, 0.0);
    }
  }

  delta_total_ += delta;
  ++svd_count_;

  // Runtime δ-accounting: an exact-mode shrink removes exactly ell*δ of
  // squared Frobenius mass (δ is the smallest squared singular value).
  const double removed = frob_before - frob_after;
  const double tol = 1e-8 * std::max(input_frob_sq_, 1.0);
  const double low = static_cast<double>(shrink_rank_) * delta;
  const double high = static_cast<double>(ell_) * delta;
  if (removed < low - tol || removed > high + tol) {
    throw std::logic_error("FdSketch shrink broke the delta accounting identity");
  }
}

void FdSketch::merge(const Matrix& src_sketch) {
  if (src_sketch.cols() != cols_) {
    throw std::invalid_argument("FdSketch::merge column mismatch");
  }
  for (std::size_t i = 0; i < src_sketch.rows(); ++i) {
    append(src_sketch.row(i));
  }
}

Matrix FdSketch::lowrank_projection(std::size_t k) const {
  if (k < 1 || k > ell_) {
    throw std::invalid_argument("lowrank_projection requires 1 <= k <= ell");
  }
  const SvdResult svd = buffer_svd(buffer_);
  const std::size_t use = std::min(k, svd.right_vectors.rows());
  Matrix p(cols_, cols_);
  for (std::size_t r = 0; r < use; ++r) {
    const double* v = svd.right_vectors.data() + r * cols_;
    for (std::size_t i = 0; i < cols_; ++i) {
      if (v[i] == 0.0) continue;
      double* p_row = p.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) p_row[j] += v[i] * v[j];
    }
  }
  return p;
}

void FdSketch::validate_delta_identity(double rel_tol) const {
  const double buffer_frob = frobenius_sq(buffer_);
  const double gap = input_frob_sq_ - buffer_frob;
  const double tol = rel_tol * std::max(input_frob_sq_, 1.0);
  const double low = static_cast<double>(shrink_rank_) * delta_total_;
  const double high = static_cast<double>(ell_) * delta_total_;
  if (gap < low - tol || gap > high + tol) {
    throw std::logic_error(
        "FdSketch delta accounting identity violated: ell*sum(delta)=" +
        std::to_string(high) + " vs ||A||_F^2-||B||_F^2=" + std::to_string(gap));
  }
}

}  // namespace fdsketch
