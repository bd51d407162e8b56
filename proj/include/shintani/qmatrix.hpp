// Exact dense linear algebra over Q. Rank, determinant, and linear solves
// are all plain Gaussian elimination with deterministic pivot choice (first
// nonzero entry in scan order): dimensions never exceed the field degree,
// so there is nothing to optimize, and exactness is the entire point.

#ifndef SHINTANI_QMATRIX_HPP_
#define SHINTANI_QMATRIX_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "shintani/rational.hpp"

namespace shintani {

class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Rat& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rat& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  size_t rank() const;
  Rat det() const;  // square only

  // Unique solution of A x = b for square nonsingular A; nullopt otherwise.
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

  // Inverse of a square matrix; nullopt when singular.
  std::optional<QMatrix> inverse() const;

  std::vector<Rat> mul_vec(const std::vector<Rat>& v) const;
  QMatrix mul(const QMatrix& other) const;

  static QMatrix from_columns(const std::vector<std::vector<Rat>>& cols);
  static QMatrix identity(size_t n);

 private:
  size_t rows_, cols_;
  std::vector<Rat> a_;
};

}  // namespace shintani

#endif  // SHINTANI_QMATRIX_HPP_
