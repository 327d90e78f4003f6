#pragma once

#include <cstdint>
#include <vector>

#include "fdsketch/matrix.hpp"

namespace fdsketch {

/// Parameters for the synthetic signal-plus-noise generator
/// A = S D U + N / zeta.
struct GenSpec {
  std::size_t n = 0;      // rows
  std::size_t m = 0;      // columns
  std::size_t d = 0;      // signal dimension, 1 <= d <= min(n, m)
  double zeta = 1.0;      // signal-to-noise ratio, > 0
  std::uint64_t seed = 0;
};

struct GeneratedParts {
  Matrix signal;    // S D U, exactly rank d
  Matrix noise;     // N, i.i.d. standard normal
  Matrix subspace;  // U, d x m with orthonormal rows
};

// Diagonal of D: linearly diminishing weights 1 - (i-1)/d for i = 1..d.
std::vector<double> diminishing_diagonal(std::size_t d);

// The generator's pieces, fully deterministic given spec.seed.
GeneratedParts generate_parts(const GenSpec& spec);

// A = signal + noise/zeta.
Matrix generate(const GenSpec& spec);

}  // namespace fdsketch
