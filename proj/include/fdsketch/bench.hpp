#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fdsketch/baselines.hpp"
#include "fdsketch/fd.hpp"
#include "fdsketch/matrix.hpp"

namespace fdsketch {

/// One experiment cell: how well method `method` with sketch size `ell`
/// approximated the matrix drawn for (d, zeta, seed, repetition).
struct BenchRecord {
  std::string method;
  std::size_t ell = 0;
  std::size_t d = 0;
  double zeta = 0.0;
  std::uint64_t seed = 0;
  std::size_t repetition = 0;
  double accuracy = 0.0;  // ||AᵀA - BᵀB||
  double seconds = 0.0;   // append + finalize wall-clock time
};

/// Benchmark grid. Defaults are the desk-scale grid.
struct GridConfig {
  std::size_t n = 2000;
  std::size_t m = 200;
  std::vector<std::size_t> ells = {10, 20, 30, 40, 50, 60, 70, 80};
  std::vector<std::size_t> ds = {5, 10, 20};
  std::vector<double> zetas = {1.0, 5.0, 10.0};
  std::vector<std::string> methods = {"fd-fast", "naive",   "brute",
                                      "sample",  "hash",    "project"};
  std::size_t repetitions = 3;
  std::uint64_t base_seed = 1;
  double c = 1.0 / 3.0;     // fast-FD shrink fraction
  std::size_t threads = 0;  // 0 = hardware concurrency

  // Flat key=value text; lists comma-separated; '#' starts a comment.
  static GridConfig from_file(const std::string& path);
};

/// Streams rows through any named method behind one interface.
/// Names: fd, fd-fast, naive, brute, sample, hash, project.
class StreamSketcher {
 public:
  StreamSketcher(const std::string& method, std::size_t ell, std::size_t cols,
                 double c, std::uint64_t seed);

  void append(std::span<const double> row);
  Matrix finalize() const;

  const std::string& method() const { return method_; }

  static bool is_known_method(const std::string& method);

 private:
  std::string method_;
  std::unique_ptr<FdSketch> fd_;
  std::unique_ptr<BaselineSketcher> baseline_;
  std::size_t index_ = 0;
};

// ||a_gram - bᵀb|| by seeded power iteration at tolerance 1e-6.
double measure_accuracy(const Matrix& a_gram, const Matrix& b);

// The guaranteed Frequent-Directions accuracy ceiling ||A||_F² / (c·ell);
// c = 1 for the exact variant.
double fd_error_bound(std::size_t ell, double c, double frob_sq);

// Runs the full grid: per (d, zeta, repetition) generate one matrix, then
// time and score every (ell, method) on it. Cells run in parallel with
// per-cell derived seeds; accuracy values depend only on base_seed. When an
// FD variant is among the methods, companion "fd-bound" records carry the
// guarantee curve. Per-cell failures are reported on stderr and skipped.
std::vector<BenchRecord> run_bench(const GridConfig& config);

// Raw records, header: method,ell,d,zeta,seed,repetition,accuracy,seconds.
void write_records_csv(const std::string& path,
                       const std::vector<BenchRecord>& records);

// Median accuracy and seconds per (method, ell, d, zeta) cell, in first-seen
// order. The repetition field carries the sample count.
std::vector<BenchRecord> median_records(const std::vector<BenchRecord>& records);

// Median records, header: method,ell,d,zeta,accuracy,seconds.
void write_medians_csv(const std::string& path,
                       const std::vector<BenchRecord>& medians);

}  // namespace fdsketch
