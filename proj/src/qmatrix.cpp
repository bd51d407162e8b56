#include "shintani/qmatrix.hpp"

#include <cassert>

namespace shintani {

namespace {

// Row-echelon reduction in place. Returns (rank, determinant of the leading
// square part scaled by row swaps). work has r rows and c columns stored
// row-major.
struct Echelon {
  size_t rank;
  Rat det;  // meaningful for square inputs only
};

Echelon echelon(std::vector<Rat>& w, size_t rows, size_t cols) {
  size_t rank = 0;
  Rat det(1);
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rows;
    for (size_t i = rank; i < rows; ++i) {
      if (w[i * cols + col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == rows) {
      det = 0;
      continue;
    }
    if (piv != rank) {
      for (size_t j = 0; j < cols; ++j)
        std::swap(w[piv * cols + j], w[rank * cols + j]);
      det = -det;
    }
    const Rat p = w[rank * cols + col];
    det *= p;
    for (size_t i = rank + 1; i < rows; ++i) {
      Rat f = w[i * cols + col] / p;
      if (f == 0) continue;
      w[i * cols + col] = 0;
      for (size_t j = col + 1; j < cols; ++j)
        w[i * cols + j] -= f * w[rank * cols + j];
    }
    ++rank;
  }
  if (rank < rows) det = 0;
  return {rank, det};
}

}  // namespace

size_t QMatrix::rank() const {
  std::vector<Rat> w = a_;
  return echelon(w, rows_, cols_).rank;
}

Rat QMatrix::det() const {
  assert(rows_ == cols_);
  std::vector<Rat> w = a_;
  return echelon(w, rows_, cols_).det;
}

std::optional<std::vector<Rat>> QMatrix::solve(
    const std::vector<Rat>& b) const {
  assert(rows_ == cols_ && b.size() == rows_);
  const size_t n = rows_;
  // Augmented elimination with back substitution.
  std::vector<Rat> w(n * (n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) w[i * (n + 1) + j] = at(i, j);
    w[i * (n + 1) + n] = b[i];
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t i = col; i < n; ++i) {
      if (w[i * (n + 1) + col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (size_t j = 0; j <= n; ++j)
        std::swap(w[piv * (n + 1) + j], w[col * (n + 1) + j]);
    const Rat p = w[col * (n + 1) + col];
    for (size_t i = col + 1; i < n; ++i) {
      Rat f = w[i * (n + 1) + col] / p;
      if (f == 0) continue;
      for (size_t j = col; j <= n; ++j)
        w[i * (n + 1) + j] -= f * w[col * (n + 1) + j];
    }
  }
  std::vector<Rat> x(n);
  for (size_t i = n; i-- > 0;) {
    Rat acc = w[i * (n + 1) + n];
    for (size_t j = i + 1; j < n; ++j) acc -= w[i * (n + 1) + j] * x[j];
    x[i] = acc / w[i * (n + 1) + i];
  }
  return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
  assert(rows_ == cols_);
  const size_t n = rows_;
  // Gauss-Jordan on [A | I].
  std::vector<Rat> w(n * 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) w[i * 2 * n + j] = at(i, j);
    w[i * 2 * n + n + i] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    for (size_t i = col; i < n; ++i) {
      if (w[i * 2 * n + col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (size_t j = 0; j < 2 * n; ++j)
        std::swap(w[piv * 2 * n + j], w[col * 2 * n + j]);
    const Rat p = w[col * 2 * n + col];
    for (size_t j = 0; j < 2 * n; ++j) w[col * 2 * n + j] /= p;
    for (size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      Rat f = w[i * 2 * n + col];
      if (f == 0) continue;
      for (size_t j = 0; j < 2 * n; ++j)
        w[i * 2 * n + j] -= f * w[col * 2 * n + j];
    }
  }
  QMatrix inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv.at(i, j) = w[i * 2 * n + n + j];
  return inv;
}

std::vector<Rat> QMatrix::mul_vec(const std::vector<Rat>& v) const {
  assert(v.size() == cols_);
  std::vector<Rat> r(rows_, Rat(0));
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

QMatrix QMatrix::mul(const QMatrix& other) const {
  assert(cols_ == other.rows_);
  QMatrix r(rows_, other.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t kk = 0; kk < cols_; ++kk) {
      if (at(i, kk) == 0) continue;
      for (size_t j = 0; j < other.cols_; ++j)
        r.at(i, j) += at(i, kk) * other.at(kk, j);
    }
  return r;
}

QMatrix QMatrix::identity(size_t n) {
  QMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<std::vector<Rat>>& cols) {
  assert(!cols.empty());
  QMatrix m(cols[0].size(), cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    assert(cols[j].size() == m.rows());
    for (size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

}  // namespace shintani
