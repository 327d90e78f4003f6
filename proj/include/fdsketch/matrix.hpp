#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fdsketch {

/// Dense row-major matrix of doubles. Constructors taking values reject
/// non-finite entries; dimensions are fixed after construction.
class Matrix {
 public:
  Matrix() = default;

  // Zero-initialized rows x cols.
  Matrix(std::size_t rows, std::size_t cols);

  // Takes ownership of row-major data; data.size() must equal rows*cols and
  // every entry must be finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  Matrix(std::initializer_list<std::initializer_list<double>> init);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a * b with the usual dimension check.
Matrix matmul(const Matrix& a, const Matrix& b);

// AᵀA, computed as the sum of outer products of rows; always symmetric.
Matrix gram(const Matrix& a);

// Sum of squared entries.
double frobenius_sq(const Matrix& a);

double frobenius_sq(std::span<const double> v);

Matrix transpose(const Matrix& a);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);

}  // namespace fdsketch
