#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

#include "fdsketch/matrix.hpp"

namespace fdsketch {

enum class BaselineMethod {
  kNaive,
  kBruteForce,
  kSampling,
  kHashing,
  kRandomProjection,
};

const char* baseline_name(BaselineMethod method);
BaselineMethod baseline_from_name(const std::string& name);

/// Common streaming interface for the competitor sketchers. One writer per
/// instance; sampling/hashing/projection sketches are deterministic functions
/// of (seed, stream).
class BaselineSketcher {
 public:
  virtual ~BaselineSketcher() = default;

  // index is the 0-based stream position of the row; the hashed methods key
  // their sign/slot functions off it.
  virtual void append(std::span<const double> row, std::size_t index) = 0;

  /// The ell x cols sketch for the stream seen so far.
  virtual Matrix finalize() const = 0;

  BaselineMethod method() const { return method_; }
  std::size_t ell() const { return ell_; }
  std::size_t cols() const { return cols_; }

 protected:
  BaselineSketcher(BaselineMethod method, std::size_t ell, std::size_t cols);
  void check_row(std::span<const double> row) const;

  BaselineMethod method_;
  std::size_t ell_;
  std::size_t cols_;
};

std::unique_ptr<BaselineSketcher> make_sketcher(BaselineMethod method,
                                                std::size_t ell,
                                                std::size_t cols,
                                                std::uint64_t seed);

}  // namespace fdsketch
