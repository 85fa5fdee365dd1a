#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace scall {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    assert(r < rows_ && c < cols_);
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  static Matrix square(std::size_t n, double fill = 0.0) { return Matrix(n, n, fill); }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Dense 3-axis array, indexed [a][b][c] with c fastest.
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t a, std::size_t b, std::size_t c, double fill = 0.0)
      : a_(a), b_(b), c_(c), data_(a * b * c, fill) {}

  std::size_t dim0() const { return a_; }
  std::size_t dim1() const { return b_; }
  std::size_t dim2() const { return c_; }

  double& operator()(std::size_t i, std::size_t j, std::size_t k) {
    assert(i < a_ && j < b_ && k < c_);
    return data_[(i * b_ + j) * c_ + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    assert(i < a_ && j < b_ && k < c_);
    return data_[(i * b_ + j) * c_ + k];
  }

  // The innermost vector at [i][j].
  std::span<const double> fiber(std::size_t i, std::size_t j) const {
    return {data_.data() + (i * b_ + j) * c_, c_};
  }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  void fill(double v) { std::fill(data_.begin(), data_.end(), v); }

  bool operator==(const Tensor3&) const = default;

 private:
  std::size_t a_ = 0;
  std::size_t b_ = 0;
  std::size_t c_ = 0;
  std::vector<double> data_;
};

}  // namespace scall
