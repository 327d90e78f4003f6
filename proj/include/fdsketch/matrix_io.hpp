#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "fdsketch/matrix.hpp"

namespace fdsketch {

// Binary matrix format: magic "FDMX", version u32 = 1, n u64, m u64, then
// n*m IEEE-754 binary64 values, row-major, little-endian.
void write_matrix_fdmx(const std::string& path, const Matrix& a);

// CSV: one row per line, comma-separated decimal floats, no header. Values
// are printed with 17 significant digits so doubles round-trip exactly.
void write_matrix_csv(const std::string& path, const Matrix& a);

// Picks CSV when the path ends in ".csv", FDMX otherwise.
void write_matrix(const std::string& path, const Matrix& a);

// Reads either format, detected by the magic bytes.
Matrix read_matrix(const std::string& path);

/// Streams matrix rows from an FDMX or CSV file without materializing the
/// matrix; holds one row of state.
class RowStream {
 public:
  explicit RowStream(const std::string& path);

  std::size_t cols() const { return cols_; }

  // Fills `row` with the next row; returns false at end of stream.
  bool next(std::vector<double>& row);

 private:
  bool next_binary(std::vector<double>& row);
  bool next_csv(std::vector<double>& row);

  std::ifstream in_;
  std::string path_;
  bool binary_ = false;
  std::size_t cols_ = 0;
  std::uint64_t remaining_rows_ = 0;  // binary only
  std::vector<double> pending_;       // first CSV row, parsed during setup
  bool has_pending_ = false;
};

}  // namespace fdsketch
