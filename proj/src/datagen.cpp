#include "fdsketch/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "fdsketch/rng.hpp"

namespace fdsketch {

namespace {

void check_spec(const GenSpec& spec) {
  if (spec.n == 0 || spec.m == 0) {
    throw std::invalid_argument("GenSpec requires n >= 1 and m >= 1");
  }
  if (spec.d < 1 || spec.d > std::min(spec.n, spec.m)) {
    throw std::invalid_argument("GenSpec requires 1 <= d <= min(n, m)");
  }
  if (!(spec.zeta > 0.0) || !std::isfinite(spec.zeta)) {
    throw std::invalid_argument("GenSpec requires zeta > 0");
  }
}

// d x m matrix with orthonormal rows spanning a uniformly random subspace:
// i.i.d. Gaussian rows orthonormalized by modified Gram-Schmidt (two passes).
Matrix random_orthonormal_rows(std::size_t d, std::size_t m,
                               std::uint64_t seed) {
  Matrix u(d, m);
  std::uint64_t retry = 0;
  for (std::size_t r = 0; r < d; ++r) {
    double* row = u.data() + r * m;
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = rng::indexed_gaussian(seed, rng::kStreamSubspace, r * m + j);
    }
    for (;;) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p < r; ++p) {
          const double* prev = u.data() + p * m;
          double dot = 0.0;
          for (std::size_t j = 0; j < m; ++j) dot += row[j] * prev[j];
          for (std::size_t j = 0; j < m; ++j) row[j] -= dot * prev[j];
        }
      }
      double norm_sq = 0.0;
      for (std::size_t j = 0; j < m; ++j) norm_sq += row[j] * row[j];
      if (norm_sq > 1e-12) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (std::size_t j = 0; j < m; ++j) row[j] *= inv;
        break;
      }
      // Degenerate draw (essentially impossible for Gaussians); redraw
      // deterministically from a side stream.
      ++retry;
      for (std::size_t j = 0; j < m; ++j) {
        row[j] = rng::indexed_gaussian(seed, rng::kStreamSubspaceRetry,
                                       retry * m + j);
      }
    }
  }
  return u;
}

}  // namespace

std::vector<double> diminishing_diagonal(std::size_t d) {
  std::vector<double> diag(d);
  for (std::size_t i = 0; i < d; ++i) {
    diag[i] = 1.0 - static_cast<double>(i) / static_cast<double>(d);
  }
  return diag;
}

GeneratedParts generate_parts(const GenSpec& spec) {
  check_spec(spec);
  GeneratedParts parts;
  parts.subspace = random_orthonormal_rows(spec.d, spec.m, spec.seed);

  // D U: scale each subspace row by its diminishing weight.
  const std::vector<double> diag = diminishing_diagonal(spec.d);
  Matrix du = parts.subspace;
  for (std::size_t i = 0; i < spec.d; ++i) {
    double* row = du.data() + i * spec.m;
    for (std::size_t j = 0; j < spec.m; ++j) row[j] *= diag[i];
  }

  Matrix s(spec.n, spec.d);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.d; ++j) {
      s(i, j) = rng::indexed_gaussian(spec.seed, rng::kStreamSignal,
                                      i * spec.d + j);
    }
  }
  parts.signal = matmul(s, du);

  parts.noise = Matrix(spec.n, spec.m);
  for (std::size_t i = 0; i < spec.n; ++i) {
    for (std::size_t j = 0; j < spec.m; ++j) {
      parts.noise(i, j) = rng::indexed_gaussian(spec.seed, rng::kStreamNoise,
                                                i * spec.m + j);
    }
  }
  return parts;
}

Matrix generate(const GenSpec& spec) {
  GeneratedParts parts = generate_parts(spec);
  Matrix a = std::move(parts.signal);
  const double inv_zeta = 1.0 / spec.zeta;
  double* out = a.data();
  const double* noise = parts.noise.data();
  const std::size_t count = spec.n * spec.m;
  for (std::size_t i = 0; i < count; ++i) out[i] += inv_zeta * noise[i];
  return a;
}

}  // namespace fdsketch
