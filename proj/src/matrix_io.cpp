#include "fdsketch/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace fdsketch {

namespace {

constexpr char kMagic[4] = {'F', 'D', 'M', 'X'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little ||
                  std::endian::native == std::endian::big,
              "mixed-endian platforms are not supported");

void put_u32(std::ofstream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_u64(std::ofstream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw std::runtime_error("truncated FDMX header");
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw std::runtime_error("truncated FDMX header");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

void write_doubles_le(std::ofstream& out, const double* values,
                      std::size_t count) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(values),
              static_cast<std::streamsize>(count * sizeof(double)));
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const auto bits = std::bit_cast<std::uint64_t>(values[i]);
      char b[8];
      for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
      out.write(b, 8);
    }
  }
}

bool read_doubles_le(std::istream& in, double* values, std::size_t count) {
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(values),
            static_cast<std::streamsize>(count * sizeof(double)));
    return static_cast<std::size_t>(in.gcount()) == count * sizeof(double);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      unsigned char b[8];
      in.read(reinterpret_cast<char*>(b), 8);
      if (static_cast<std::size_t>(in.gcount()) != 8) return false;
      std::uint64_t bits = 0;
      for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(b[k]) << (8 * k);
      values[i] = std::bit_cast<double>(bits);
    }
    return true;
  }
}

std::vector<double> parse_csv_line(const std::string& line,
                                   const std::string& path) {
  std::vector<double> values;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t')) ++p;
    const char* field_end = p;
    while (field_end < end && *field_end != ',') ++field_end;
    const char* num_end = field_end;
    while (num_end > p && (num_end[-1] == ' ' || num_end[-1] == '\t' ||
                           num_end[-1] == '\r')) {
      --num_end;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(p, num_end, v);
    if (ec != std::errc{} || ptr != num_end) {
      throw std::runtime_error("bad CSV value in " + path);
    }
    values.push_back(v);
    p = field_end < end ? field_end + 1 : end;
  }
  return values;
}

// A line is "blank" when it has no content at all (covers trailing newline).
bool blank_line(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

void write_matrix_fdmx(const std::string& path, const Matrix& a) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u64(out, a.rows());
  put_u64(out, a.cols());
  write_doubles_le(out, a.data(), a.rows() * a.cols());
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  char buf[40];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      if (j > 0) out.put(',');
      out << buf;
    }
    out.put('\n');
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_matrix(const std::string& path, const Matrix& a) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    write_matrix_csv(path, a);
  } else {
    write_matrix_fdmx(path, a);
  }
}

Matrix read_matrix(const std::string& path) {
  RowStream stream(path);
  std::vector<double> data;
  std::vector<double> row;
  std::size_t rows = 0;
  while (stream.next(row)) {
    data.insert(data.end(), row.begin(), row.end());
    ++rows;
  }
  return Matrix(rows, stream.cols(), std::move(data));
}

RowStream::RowStream(const std::string& path)
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw std::runtime_error("cannot open " + path);

  char head[4] = {};
  in_.read(head, 4);
  const auto got = in_.gcount();
  if (got == 4 && std::memcmp(head, kMagic, 4) == 0) {
    binary_ = true;
    const std::uint32_t version = get_u32(in_);
    if (version != kVersion) {
      throw std::runtime_error("unsupported FDMX version in " + path);
    }
    remaining_rows_ = get_u64(in_);
    const std::uint64_t m = get_u64(in_);
    if (m == 0) throw std::runtime_error("FDMX with zero columns: " + path);
    cols_ = static_cast<std::size_t>(m);
    return;
  }

  // CSV: rewind and parse the first non-blank line to learn the width.
  in_.clear();
  in_.seekg(0);
  std::string line;
  while (std::getline(in_, line)) {
    if (blank_line(line)) continue;
    pending_ = parse_csv_line(line, path_);
    has_pending_ = true;
    cols_ = pending_.size();
    return;
  }
  throw std::runtime_error("empty matrix file: " + path);
}

bool RowStream::next(std::vector<double>& row) {
  return binary_ ? next_binary(row) : next_csv(row);
}

bool RowStream::next_binary(std::vector<double>& row) {
  if (remaining_rows_ == 0) return false;
  row.resize(cols_);
  if (!read_doubles_le(in_, row.data(), cols_)) {
    throw std::runtime_error("truncated FDMX payload: " + path_);
  }
  --remaining_rows_;
  return true;
}

bool RowStream::next_csv(std::vector<double>& row) {
  if (has_pending_) {
    row = std::move(pending_);
    pending_.clear();
    has_pending_ = false;
    return true;
  }
  std::string line;
  while (std::getline(in_, line)) {
    if (blank_line(line)) continue;
    row = parse_csv_line(line, path_);
    if (row.size() != cols_) {
      throw std::runtime_error("ragged CSV row in " + path_);
    }
    return true;
  }
  return false;
}

}  // namespace fdsketch
