#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "hklat/numeric.hpp"

namespace hklat {

// Dense matrix over exact rationals. Matrices are values: every operation
// returns a fresh result, inputs are never mutated. Entry access is
// row-major, zero-based.
class ExactMatrix {
 public:
  ExactMatrix() = default;

  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  ExactMatrix(std::initializer_list<std::initializer_list<Rat>> init) {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      entries_.insert(entries_.end(), row.begin(), row.end());
    }
  }

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Rat& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Rat& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }

  bool is_integral() const {
    for (const Rat& e : entries_)
      if (e.get_den() != 1) return false;
    return true;
  }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    for (const Rat& e : entries_)
      if (e != 0) return false;
    return true;
  }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix sum: dimension mismatch");
    ExactMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] = a.entries_[k] + b.entries_[k];
    return r;
  }

  friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("matrix difference: dimension mismatch");
    ExactMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] = a.entries_[k] - b.entries_[k];
    return r;
  }

  friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    ExactMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rat& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend ExactMatrix operator*(const Rat& s, const ExactMatrix& a) {
    ExactMatrix r(a.rows_, a.cols_);
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] = s * a.entries_[k];
    return r;
  }

  bool operator==(const ExactMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const ExactMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m(i, j).get_str();
    }
  }
  return os << "]";
}

// Exact rational Gaussian elimination; the pivot is the first nonzero entry
// of the current column, which is deterministic and exact.
inline Rat determinant(const ExactMatrix& input) {
  if (!input.is_square()) throw std::invalid_argument("determinant: matrix must be square");
  const std::size_t n = input.rows();
  ExactMatrix a = input;
  Rat det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      const Rat f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

inline std::size_t rank(const ExactMatrix& input) {
  ExactMatrix a = input;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && a(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = col; j < cols; ++j) std::swap(a(r, j), a(pivot, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, col) == 0) continue;
      const Rat f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t kernel_dimension(const ExactMatrix& m) { return m.cols() - rank(m); }

inline ExactMatrix block_diag(const std::vector<ExactMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ExactMatrix r(rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) r(ro + i, co + j) = b(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return r;
}

// gcd of the entries of an integer matrix; 0 for the zero matrix.
inline Int content(const ExactMatrix& m) {
  if (!m.is_integral()) throw std::invalid_argument("content: entries must be integers");
  Int g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = int_gcd(g, m(i, j).get_num());
  return g;
}

inline Int common_denominator(const ExactMatrix& m) {
  Int l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) l = int_lcm(l, m(i, j).get_den());
  return l;
}

}  // namespace hklat
