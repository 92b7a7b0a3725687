#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"
#include "hklat/smith.hpp"

namespace hklat {

// Finitely generated free abelian group with an integral symmetric bilinear
// form, given by its Gram matrix in a fixed basis.
class Lattice {
 public:
  explicit Lattice(ExactMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_square()) throw std::invalid_argument("lattice: Gram matrix must be square");
    if (!gram_.is_symmetric())
      throw std::invalid_argument("lattice: Gram matrix must be symmetric");
    if (!gram_.is_integral()) throw std::invalid_argument("lattice: Gram matrix must be integral");
  }

  std::size_t rank() const { return gram_.rows(); }
  const ExactMatrix& gram() const { return gram_; }

  bool operator==(const Lattice& other) const = default;

 private:
  ExactMatrix gram_;
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;

  bool operator==(const Signature&) const = default;
};

inline std::string to_string(const Signature& s) {
  std::string out = "(" + std::to_string(s.positive) + "," + std::to_string(s.negative);
  if (s.zero != 0) out += "," + std::to_string(s.zero);
  return out + ")";
}

inline Int discriminant(const Lattice& l) { return determinant(l.gram()).get_num(); }

// Inertia by exact symmetric reduction. A nonzero diagonal entry gives a
// 1x1 pivot; if the diagonal of the active block vanishes entirely, a
// nonzero off-diagonal entry spans a hyperbolic 2x2 block contributing
// (1,1). Pivots are chosen by lowest index, values are never perturbed.
inline Signature signature(const Lattice& l) {
  ExactMatrix w = l.gram();
  std::vector<std::size_t> active(l.rank());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  Signature sig;

  while (!active.empty()) {
    std::size_t pos = active.size();
    for (std::size_t k = 0; k < active.size(); ++k)
      if (w(active[k], active[k]) != 0) {
        pos = k;
        break;
      }
    if (pos != active.size()) {
      const std::size_t i = active[pos];
      const Rat& p = w(i, i);
      (sgn(p) > 0 ? sig.positive : sig.negative) += 1;
      for (std::size_t ak = 0; ak < active.size(); ++ak)
        for (std::size_t al = 0; al < active.size(); ++al) {
          const std::size_t k = active[ak], m = active[al];
          if (k == i || m == i) continue;
          w(k, m) -= w(k, i) * w(i, m) / p;
        }
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(pos));
      continue;
    }
    // zero diagonal: look for a hyperbolic pair
    std::size_t pa = active.size(), pb = active.size();
    for (std::size_t k = 0; k < active.size() && pa == active.size(); ++k)
      for (std::size_t m = k + 1; m < active.size(); ++m)
        if (w(active[k], active[m]) != 0) {
          pa = k;
          pb = m;
          break;
        }
    if (pa == active.size()) {
      sig.zero += active.size();
      break;
    }
    const std::size_t i = active[pa], j = active[pb];
    const Rat b = w(i, j);
    sig.positive += 1;
    sig.negative += 1;
    for (std::size_t ak = 0; ak < active.size(); ++ak)
      for (std::size_t al = 0; al < active.size(); ++al) {
        const std::size_t k = active[ak], m = active[al];
        if (k == i || k == j || m == i || m == j) continue;
        w(k, m) -= (w(k, i) * w(j, m) + w(k, j) * w(i, m)) / b;
      }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pb));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pa));
  }
  return sig;
}

inline bool is_even(const Lattice& l) {
  for (std::size_t i = 0; i < l.rank(); ++i)
    if (l.gram()(i, i).get_num() % 2 != 0) return false;
  return true;
}

// Invariant factors > 1 of coker(gram), in divisibility order. The order of
// the group is |discriminant|.
struct DiscriminantGroup {
  std::vector<Int> factors;

  bool operator==(const DiscriminantGroup&) const = default;
};

inline std::string to_string(const DiscriminantGroup& g) {
  if (g.factors.empty()) return "trivial";
  std::string out;
  for (std::size_t i = 0; i < g.factors.size(); ++i) {
    if (i) out += " x ";
    out += "Z/" + g.factors[i].get_str();
  }
  return out;
}

inline DiscriminantGroup discriminant_group(const Lattice& l) {
  if (discriminant(l) == 0)
    throw std::invalid_argument("discriminant_group: degenerate lattice");
  const SnfDecomposition snf = smith_normal_form(l.gram());
  DiscriminantGroup g;
  for (const Int& d : snf.d)
    if (d > 1) g.factors.push_back(d);
  return g;
}

// `pairing` pairs a candidate basis of a sublattice (rows) against integral
// cycles of the ambient lattice (columns). The span is saturated exactly
// when all invariant factors are 1, so the quotient by it is torsion free.
inline bool is_primitive_sublattice(const ExactMatrix& pairing) {
  if (!pairing.is_integral())
    throw std::invalid_argument("is_primitive_sublattice: pairing must be integral");
  if (pairing.rows() > pairing.cols())
    throw std::invalid_argument("is_primitive_sublattice: more classes than cycles");
  const SnfDecomposition snf = smith_normal_form(pairing);
  for (const Int& d : snf.d)
    if (d != 1) return false;
  return true;
}

}  // namespace hklat
