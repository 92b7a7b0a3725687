#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// u * a * v = diag(d) with u, v unimodular, every d[i] >= 0 and d[i] | d[i+1].
// d has length min(rows, cols) and keeps trailing zeros, so the number of
// nonzero entries is the rank.
struct SnfDecomposition {
  std::vector<Int> d;
  ExactMatrix u;
  ExactMatrix v;
};

// Elementary row/column reduction. The pivot is always a smallest nonzero
// entry (by absolute value) of the trailing submatrix, ties broken by lowest
// (row, col); this keeps the run deterministic.
inline SnfDecomposition smith_normal_form(const ExactMatrix& input) {
  if (!input.is_integral())
    throw std::invalid_argument("smith_normal_form: entries must be integers");
  const std::size_t rows = input.rows(), cols = input.cols();

  std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = input(i, j).get_num();
  std::vector<std::vector<Int>> u(rows, std::vector<Int>(rows)), v(cols, std::vector<Int>(cols));
  for (std::size_t i = 0; i < rows; ++i) u[i][i] = 1;
  for (std::size_t j = 0; j < cols; ++j) v[j][j] = 1;

  auto swap_rows = [&](std::size_t r1, std::size_t r2) {
    if (r1 == r2) return;
    std::swap(a[r1], a[r2]);
    std::swap(u[r1], u[r2]);
  };
  auto swap_cols = [&](std::size_t c1, std::size_t c2) {
    if (c1 == c2) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][c1], a[i][c2]);
    for (std::size_t i = 0; i < cols; ++i) std::swap(v[i][c1], v[i][c2]);
  };
  // row r1 += m * row r2, mirrored on u
  auto row_add = [&](std::size_t r1, std::size_t r2, const Int& m) {
    for (std::size_t j = 0; j < cols; ++j) a[r1][j] += m * a[r2][j];
    for (std::size_t j = 0; j < rows; ++j) u[r1][j] += m * u[r2][j];
  };
  // col c1 += m * col c2, mirrored on v
  auto col_add = [&](std::size_t c1, std::size_t c2, const Int& m) {
    for (std::size_t i = 0; i < rows; ++i) a[i][c1] += m * a[i][c2];
    for (std::size_t i = 0; i < cols; ++i) v[i][c1] += m * v[i][c2];
  };

  const std::size_t dim = std::min(rows, cols);
  std::size_t t = 0;
  while (t < dim) {
    // smallest nonzero pivot, ties by lowest (row, col)
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        if (!found || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    bool restart = false;
    for (std::size_t i = t + 1; i < rows && !restart; ++i) {
      if (a[i][t] == 0) continue;
      row_add(i, t, -Int(a[i][t] / a[t][t]));
      if (a[i][t] != 0) restart = true;  // remainder is a smaller pivot
    }
    if (restart) continue;
    for (std::size_t j = t + 1; j < cols && !restart; ++j) {
      if (a[t][j] == 0) continue;
      col_add(j, t, -Int(a[t][j] / a[t][t]));
      if (a[t][j] != 0) restart = true;
    }
    if (restart) continue;
    // the pivot must divide the whole trailing submatrix
    for (std::size_t i = t + 1; i < rows && !restart; ++i)
      for (std::size_t j = t + 1; j < cols && !restart; ++j)
        if (a[i][j] % a[t][t] != 0) {
          row_add(t, i, 1);
          restart = true;
        }
    if (restart) continue;
    ++t;
  }

  for (std::size_t k = 0; k < dim; ++k)
    if (a[k][k] < 0) {
      for (std::size_t j = 0; j < cols; ++j) a[k][j] = -a[k][j];
      for (std::size_t j = 0; j < rows; ++j) u[k][j] = -u[k][j];
    }

  SnfDecomposition result;
  result.d.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) result.d.push_back(a[k][k]);
  result.u = ExactMatrix(rows, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) result.u(i, j) = Rat(u[i][j]);
  result.v = ExactMatrix(cols, cols);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) result.v(i, j) = Rat(v[i][j]);
  return result;
}

}  // namespace hklat
