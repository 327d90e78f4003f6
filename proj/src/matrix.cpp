#include "fdsketch/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdsketch {

namespace {

void check_finite(const std::vector<double>& data) {
  for (double v : data) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("Matrix entries must be finite");
    }
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("Matrix data length " +
                                std::to_string(data_.size()) +
                                " does not match " + std::to_string(rows_) +
                                "x" + std::to_string(cols_));
  }
  check_finite(data_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
  rows_ = init.size();
  cols_ = rows_ > 0 ? init.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) {
      throw std::invalid_argument("Matrix initializer rows have ragged lengths");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out_row = out.data() + i * out.cols();
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      const double* b_row = b.data() + k * b.cols();
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out_row[j] += aik * b_row[j];
      }
    }
  }
  return out;
}

Matrix gram(const Matrix& a) {
  const std::size_t m = a.cols();
  Matrix g(m, m);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double* row = a.data() + r * m;
    for (std::size_t i = 0; i < m; ++i) {
      const double ri = row[i];
      if (ri == 0.0) continue;
      double* g_row = g.data() + i * m;
      for (std::size_t j = i; j < m; ++j) {
        g_row[j] += ri * row[j];
      }
    }
  }
  // Mirror the upper triangle.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      g(j, i) = g(i, j);
    }
  }
  return g;
}

double frobenius_sq(const Matrix& a) {
  double sum = 0.0;
  const double* p = a.data();
  const std::size_t count = a.rows() * a.cols();
  for (std::size_t i = 0; i < count; ++i) sum += p[i] * p[i];
  return sum;
}

double frobenius_sq(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return sum;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      t(j, i) = a(i, j);
    }
  }
  return t;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix addition dimension mismatch");
  }
  Matrix out(a.rows(), a.cols());
  const std::size_t count = a.rows() * a.cols();
  for (std::size_t i = 0; i < count; ++i) out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix subtraction dimension mismatch");
  }
  Matrix out(a.rows(), a.cols());
  const std::size_t count = a.rows() * a.cols();
  for (std::size_t i = 0; i < count; ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

}  // namespace fdsketch
