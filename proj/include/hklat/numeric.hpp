#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace hklat {

// All arithmetic in this library is exact: integers and rationals of
// arbitrary precision, never floating point.
using Int = mpz_class;
using Rat = mpq_class;

// Parses "p" or "p/q" in base 10 with an optional leading sign on p.
// Anything else (in particular any floating point form) is rejected.
inline Rat parse_rational(const std::string& text) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  };
  std::size_t i = 0;
  auto scan_integer = [&](bool allow_sign) {
    const std::size_t start = i;
    if (allow_sign && i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      ++digits;
    }
    if (digits == 0) fail();
    // GMP rejects an explicit plus sign
    const std::size_t from = text[start] == '+' ? start + 1 : start;
    return text.substr(from, i - from);
  };
  if (text.empty()) fail();
  const std::string num = scan_integer(true);
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = scan_integer(false);
  }
  if (i != text.size()) fail();
  const Int d(den);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  Rat q(Int(num), d);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// n!! with the empty products (-1)!! = 0!! = 1.
inline Int double_factorial(long n) {
  if (n <= 0) return 1;
  Int r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int int_gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r = 1;
  for (unsigned long k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace hklat
