#include "fdsketch/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fdsketch/linalg.hpp"
#include "fdsketch/rng.hpp"

namespace fdsketch {

const char* baseline_name(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kNaive: return "naive";
    case BaselineMethod::kBruteForce: return "brute";
    case BaselineMethod::kSampling: return "sample";
    case BaselineMethod::kHashing: return "hash";
    case BaselineMethod::kRandomProjection: return "project";
  }
  throw std::logic_error("unknown baseline method");
}

BaselineMethod baseline_from_name(const std::string& name) {
  if (name == "naive") return BaselineMethod::kNaive;
  if (name == "brute") return BaselineMethod::kBruteForce;
  if (name == "sample") return BaselineMethod::kSampling;
  if (name == "hash") return BaselineMethod::kHashing;
  if (name == "project") return BaselineMethod::kRandomProjection;
  throw std::invalid_argument("unknown sketch method: " + name);
}

BaselineSketcher::BaselineSketcher(BaselineMethod method, std::size_t ell,
                                   std::size_t cols)
    : method_(method), ell_(ell), cols_(cols) {
  if (ell == 0 || cols == 0) {
    throw std::invalid_argument("sketcher requires ell >= 1 and cols >= 1");
  }
}

void BaselineSketcher::check_row(std::span<const double> row) const {
  if (row.size() != cols_) {
    throw std::invalid_argument("sketcher row length mismatch");
  }
}

namespace {

class NaiveSketcher final : public BaselineSketcher {
 public:
  NaiveSketcher(std::size_t ell, std::size_t cols)
      : BaselineSketcher(BaselineMethod::kNaive, ell, cols) {}

  void append(std::span<const double> row, std::size_t) override {
    check_row(row);
  }

  Matrix finalize() const override { return Matrix(ell_, cols_); }
};

// Aggregates the full Gram matrix and returns the top-ell eigenpairs, square
// rooted: the optimal ell-row sketch. Exempt from the O(ell*m) storage bound.
class BruteForceSketcher final : public BaselineSketcher {
 public:
  BruteForceSketcher(std::size_t ell, std::size_t cols)
      : BaselineSketcher(BaselineMethod::kBruteForce, ell, cols),
        gram_(cols, cols) {}

  void append(std::span<const double> row, std::size_t) override {
    check_row(row);
    for (std::size_t i = 0; i < cols_; ++i) {
      const double ri = row[i];
      if (ri == 0.0) continue;
      double* g_row = gram_.data() + i * cols_;
      for (std::size_t j = i; j < cols_; ++j) g_row[j] += ri * row[j];
    }
  }

  Matrix finalize() const override {
    Matrix full = gram_;
    for (std::size_t i = 0; i < cols_; ++i) {
      for (std::size_t j = i + 1; j < cols_; ++j) full(j, i) = full(i, j);
    }
    const EighResult eig = sym_eigh(full);
    Matrix b(ell_, cols_);
    const std::size_t take = std::min(ell_, cols_);
    for (std::size_t k = 0; k < take; ++k) {
      const double sigma = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
      for (std::size_t j = 0; j < cols_; ++j) {
        b(k, j) = sigma * eig.vectors(k, j);
      }
    }
    return b;
  }

 private:
  Matrix gram_;  // upper triangle only
};

// ell independent weighted reservoir cells. Cell j replaces its held row with
// probability ||row||²/W where W is the running total of squared norms, which
// gives each row the marginal probability ||A_i||²/||A||_F².
class SamplingSketcher final : public BaselineSketcher {
 public:
  SamplingSketcher(std::size_t ell, std::size_t cols, std::uint64_t seed)
      : BaselineSketcher(BaselineMethod::kSampling, ell, cols) {
    cells_.reserve(ell);
    for (std::size_t j = 0; j < ell; ++j) {
      cells_.push_back(Cell{rng::SplitMix(rng::mix(seed, rng::kStreamSampler, j)),
                            {}, 0.0, 0});
    }
  }

  void append(std::span<const double> row, std::size_t index) override {
    check_row(row);
    double norm_sq = 0.0;
    for (double v : row) norm_sq += v * v;
    total_weight_ += norm_sq;
    if (norm_sq == 0.0 || total_weight_ == 0.0) return;
    const double p = norm_sq / total_weight_;
    for (Cell& cell : cells_) {
      if (cell.rng.next_unit() < p) {
        cell.row.assign(row.begin(), row.end());
        cell.norm_sq = norm_sq;
        cell.key = index;
      }
    }
  }

  Matrix finalize() const override {
    Matrix b(ell_, cols_);
    const double frob = std::sqrt(total_weight_);
    const double inv_sqrt_ell = 1.0 / std::sqrt(static_cast<double>(ell_));
    for (std::size_t j = 0; j < ell_; ++j) {
      const Cell& cell = cells_[j];
      if (cell.row.empty() || cell.norm_sq == 0.0) continue;
      const double scale = inv_sqrt_ell * frob / std::sqrt(cell.norm_sq);
      for (std::size_t k = 0; k < cols_; ++k) b(j, k) = scale * cell.row[k];
    }
    return b;
  }

 private:
  struct Cell {
    rng::SplitMix rng;
    std::vector<double> row;
    double norm_sq;
    std::size_t key;  // stream index of the held row
  };
  std::vector<Cell> cells_;
  double total_weight_ = 0.0;
};

// Feature hashing: accumulator row h(i) += s(i) * row, with h and s derived
// from a 64-bit mix of (seed, stream index).
class HashingSketcher final : public BaselineSketcher {
 public:
  HashingSketcher(std::size_t ell, std::size_t cols, std::uint64_t seed)
      : BaselineSketcher(BaselineMethod::kHashing, ell, cols),
        seed_(seed),
        acc_(ell, cols) {}

  void append(std::span<const double> row, std::size_t index) override {
    check_row(row);
    const std::size_t slot = rng::mix(seed_, rng::kStreamHashSlot, index) % ell_;
    const double sign =
        (rng::mix(seed_, rng::kStreamHashSign, index) & 1u) ? 1.0 : -1.0;
    double* out = acc_.data() + slot * cols_;
    for (std::size_t k = 0; k < cols_; ++k) out[k] += sign * row[k];
  }

  Matrix finalize() const override { return acc_; }

 private:
  std::uint64_t seed_;
  Matrix acc_;
};

// B = RA for a conceptual ell x n sign matrix R with entries ±1/sqrt(ell);
// signs are generated lazily per (sketch row, stream index) so R is never
// materialized.
class RandomProjectionSketcher final : public BaselineSketcher {
 public:
  RandomProjectionSketcher(std::size_t ell, std::size_t cols,
                           std::uint64_t seed)
      : BaselineSketcher(BaselineMethod::kRandomProjection, ell, cols),
        seed_(seed),
        inv_sqrt_ell_(1.0 / std::sqrt(static_cast<double>(ell))),
        acc_(ell, cols) {}

  void append(std::span<const double> row, std::size_t index) override {
    check_row(row);
    for (std::size_t j = 0; j < ell_; ++j) {
      const double sign =
          (rng::mix(seed_, rng::kStreamProjection, j, index) & 1u) ? 1.0 : -1.0;
      const double factor = sign * inv_sqrt_ell_;
      double* out = acc_.data() + j * cols_;
      for (std::size_t k = 0; k < cols_; ++k) out[k] += factor * row[k];
    }
  }

  Matrix finalize() const override { return acc_; }

 private:
  std::uint64_t seed_;
  double inv_sqrt_ell_;
  Matrix acc_;
};

}  // namespace

std::unique_ptr<BaselineSketcher> make_sketcher(BaselineMethod method,
                                                std::size_t ell,
                                                std::size_t cols,
                                                std::uint64_t seed) {
  switch (method) {
    case BaselineMethod::kNaive:
      return std::make_unique<NaiveSketcher>(ell, cols);
    case BaselineMethod::kBruteForce:
      return std::make_unique<BruteForceSketcher>(ell, cols);
    case BaselineMethod::kSampling:
      return std::make_unique<SamplingSketcher>(ell, cols, seed);
    case BaselineMethod::kHashing:
      return std::make_unique<HashingSketcher>(ell, cols, seed);
    case BaselineMethod::kRandomProjection:
      return std::make_unique<RandomProjectionSketcher>(ell, cols, seed);
  }
  throw std::logic_error("unknown baseline method");
}

}  // namespace fdsketch
