#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// Picard-Lefschetz transvection on the degree-1 cohomology of a genus p
// curve: the identity plus a single off-diagonal 1 in the first hyperbolic
// pair. Unipotent, so every wedge power has determinant 1.
inline ExactMatrix transvection_matrix(unsigned long genus) {
  if (genus < 1) throw std::invalid_argument("transvection_matrix: genus must be >= 1");
  if (genus > 12) throw std::invalid_argument("transvection_matrix: genus capped at 12");
  ExactMatrix m = ExactMatrix::identity(2 * genus);
  m(0, 1) = 1;
  return m;
}

// All q-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> subsets_lex(std::size_t n, std::size_t q) {
  std::vector<std::vector<std::size_t>> out;
  if (q > n) return out;
  std::vector<std::size_t> cur(q);
  for (std::size_t i = 0; i < q; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    if (q == 0) break;
    // advance to the next combination
    std::size_t i = q;
    while (i > 0 && cur[i - 1] == n - q + (i - 1)) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < q; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Induced action on the q-th exterior power, in the basis of lexicographic
// index tuples e_I = e_{i1} ^ ... ^ e_{iq}, i1 < ... < iq. Entry (I, J) is
// the q x q minor det(m[I, J]); the sorted basis absorbs the insertion
// signs of wedge reordering.
inline ExactMatrix wedge_power(const ExactMatrix& m, std::size_t q) {
  if (!m.is_square()) throw std::invalid_argument("wedge_power: matrix must be square");
  const std::size_t n = m.rows();
  if (q > n) throw std::invalid_argument("wedge_power: q exceeds the dimension");
  const auto basis = subsets_lex(n, q);
  ExactMatrix w(basis.size(), basis.size());
  ExactMatrix minor(q, q);
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j) minor(i, j) = m(basis[a][i], basis[b][j]);
      w(a, b) = determinant(minor);
    }
  return w;
}

// Dimension of the invariants of the transvection acting on the q-th wedge
// power, computed as the kernel of (W^T - 1) on cocycles. The transposed
// and direct actions have equal invariant dimension; tests assert the
// agreement.
inline std::size_t invariant_dimension(unsigned long genus, std::size_t q) {
  const ExactMatrix m = transvection_matrix(genus);
  const ExactMatrix w = wedge_power(m, q);
  const std::size_t dim = w.rows();
  return kernel_dimension(w.transpose() - ExactMatrix::identity(dim));
}

// Closed forms for the first two wedge powers: 2p - 1 invariants in degree
// one and 2p^2 - 3p + 2 in degree two.
inline std::size_t closed_form_invariant_dimension(unsigned long genus, std::size_t q) {
  if (genus < 1) throw std::invalid_argument("closed form: genus must be >= 1");
  const std::size_t p = genus;
  if (q == 1) return 2 * p - 1;
  if (q == 2) return 2 * p * p - 3 * p + 2;
  throw std::invalid_argument("closed form known for q = 1 and q = 2 only");
}

}  // namespace hklat
