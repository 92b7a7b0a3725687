#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hklat/lattice.hpp"
#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// Expression grammar for orthogonal sums of standard blocks:
//
//   expr := term ('+' term)*
//   term := atom ('^' INT)?
//   atom := 'U' | 'H' | '-E8' | 'E8' | 'Lambda' | '(' SIGNED_INT ')'
//         | 'gram[' row (';' row)* ']'
//   row  := SIGNED_INT (',' SIGNED_INT)*
//
// Whitespace between tokens is ignored. 'H' is a synonym of 'U'; the
// canonical printer emits 'U'. '(d)' is the rank-1 form of square d, with
// d = 0 rejected. Powers are positive; '^1' normalizes away at parse time.

struct LatticeExpr {
  enum class Kind { U, E8, NegE8, Lambda, Rank1, Gram, Power, Sum };

  Kind kind = Kind::U;
  Int rank1_square;                 // Kind::Rank1
  ExactMatrix gram_matrix;          // Kind::Gram
  unsigned long exponent = 0;       // Kind::Power
  std::vector<LatticeExpr> children;  // Power: one atom; Sum: two or more terms

  static LatticeExpr u() { return LatticeExpr{Kind::U, 0, {}, 0, {}}; }
  static LatticeExpr e8() { return LatticeExpr{Kind::E8, 0, {}, 0, {}}; }
  static LatticeExpr neg_e8() { return LatticeExpr{Kind::NegE8, 0, {}, 0, {}}; }
  static LatticeExpr lambda() { return LatticeExpr{Kind::Lambda, 0, {}, 0, {}}; }

  static LatticeExpr rank1(Int square) {
    if (square == 0) throw std::invalid_argument("rank-1 block must have nonzero square");
    return LatticeExpr{Kind::Rank1, std::move(square), {}, 0, {}};
  }

  static LatticeExpr gram(ExactMatrix m) {
    return LatticeExpr{Kind::Gram, 0, std::move(m), 0, {}};
  }

  static LatticeExpr power(LatticeExpr base, unsigned long k) {
    if (k == 0) throw std::invalid_argument("power must be positive");
    if (base.kind == Kind::Power || base.kind == Kind::Sum)
      throw std::invalid_argument("power applies to atoms only");
    if (k == 1) return base;
    return LatticeExpr{Kind::Power, 0, {}, k, {std::move(base)}};
  }

  static LatticeExpr sum(std::vector<LatticeExpr> terms) {
    if (terms.empty()) throw std::invalid_argument("empty sum");
    if (terms.size() == 1) return std::move(terms[0]);
    for (const auto& t : terms)
      if (t.kind == Kind::Sum) throw std::invalid_argument("sums do not nest");
    return LatticeExpr{Kind::Sum, 0, {}, 0, std::move(terms)};
  }

  // exponent of a term: k for a power node, 1 otherwise
  unsigned long term_power() const { return kind == Kind::Power ? exponent : 1; }

  const LatticeExpr& term_atom() const { return kind == Kind::Power ? children[0] : *this; }

  bool operator==(const LatticeExpr& other) const {
    if (kind != other.kind || exponent != other.exponent) return false;
    if (rank1_square != other.rank1_square) return false;
    if (!(gram_matrix == other.gram_matrix)) return false;
    return children == other.children;
  }
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, std::size_t byte_offset)
      : std::runtime_error(message + " (byte " + std::to_string(byte_offset) + ")"),
        offset(byte_offset) {}

  std::size_t offset;
};

namespace expr_detail {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  LatticeExpr parse() {
    LatticeExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  LatticeExpr parse_expr() {
    std::vector<LatticeExpr> terms;
    terms.push_back(parse_term());
    while (eat('+')) terms.push_back(parse_term());
    return LatticeExpr::sum(std::move(terms));
  }

  LatticeExpr parse_term() {
    LatticeExpr atom = parse_atom();
    if (!eat('^')) return atom;
    skip_ws();
    const std::size_t at = pos_;
    const std::string digits = scan_digits();
    unsigned long k = 0;
    try {
      k = std::stoul(digits);
    } catch (const std::exception&) {
      throw ParseError("exponent out of range", at);
    }
    if (k == 0) throw ParseError("exponent must be positive", at);
    return LatticeExpr::power(std::move(atom), k);
  }

  LatticeExpr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("expected a lattice atom", pos_);
    const char c = text_[pos_];
    if (c == '-') {
      const std::size_t at = pos_;
      ++pos_;
      if (scan_ident() != "E8") throw ParseError("expected E8 after '-'", at);
      return LatticeExpr::neg_e8();
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      const std::size_t at = pos_;
      const Int d = scan_signed_int();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      if (d == 0) throw ParseError("rank-1 block must have nonzero square", at);
      return LatticeExpr::rank1(d);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      const std::string id = scan_ident();
      if (id == "U" || id == "H") return LatticeExpr::u();
      if (id == "E8") return LatticeExpr::e8();
      if (id == "Lambda") return LatticeExpr::lambda();
      if (id == "gram") return parse_gram(at);
      throw ParseError("unknown lattice atom '" + id + "'", at);
    }
    throw ParseError("expected a lattice atom", pos_);
  }

  LatticeExpr parse_gram(std::size_t at) {
    if (!eat('[')) throw ParseError("expected '[' after gram", pos_);
    std::vector<std::vector<Int>> rows;
    do {
      std::vector<Int> row;
      do {
        skip_ws();
        row.push_back(scan_signed_int());
      } while (eat(','));
      rows.push_back(std::move(row));
    } while (eat(';'));
    if (!eat(']')) throw ParseError("expected ']'", pos_);
    const std::size_t width = rows[0].size();
    for (const auto& row : rows)
      if (row.size() != width) throw ParseError("ragged gram rows", at);
    ExactMatrix m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < width; ++j) m(i, j) = Rat(rows[i][j]);
    return LatticeExpr::gram(std::move(m));
  }

  std::string scan_ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
      ++pos_;
    if (pos_ == start) throw ParseError("expected an identifier", pos_);
    return text_.substr(start, pos_ - start);
  }

  std::string scan_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected digits", pos_);
    return text_.substr(start, pos_ - start);
  }

  Int scan_signed_int() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::string digits = scan_digits();
    const bool neg = text_[start] == '-';
    Int value(digits);
    return neg ? Int(-value) : value;
  }
};

}  // namespace expr_detail

inline LatticeExpr parse_lattice_expr(const std::string& text) {
  return expr_detail::Parser(text).parse();
}

// Canonical form: terms joined by " + ", powers printed only when > 1,
// 'U' for the hyperbolic plane, gram rows joined by ';' without spaces.
// Printing a parsed expression is idempotent.
inline std::string print_lattice_expr(const LatticeExpr& e) {
  switch (e.kind) {
    case LatticeExpr::Kind::U:
      return "U";
    case LatticeExpr::Kind::E8:
      return "E8";
    case LatticeExpr::Kind::NegE8:
      return "-E8";
    case LatticeExpr::Kind::Lambda:
      return "Lambda";
    case LatticeExpr::Kind::Rank1:
      return "(" + e.rank1_square.get_str() + ")";
    case LatticeExpr::Kind::Gram: {
      std::string out = "gram[";
      for (std::size_t i = 0; i < e.gram_matrix.rows(); ++i) {
        if (i) out += ";";
        for (std::size_t j = 0; j < e.gram_matrix.cols(); ++j) {
          if (j) out += ",";
          out += e.gram_matrix(i, j).get_str();
        }
      }
      return out + "]";
    }
    case LatticeExpr::Kind::Power:
      return print_lattice_expr(e.children[0]) + "^" + std::to_string(e.exponent);
    case LatticeExpr::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) out += " + ";
        out += print_lattice_expr(e.children[i]);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

// Cartan matrix of E8 in the Bourbaki node order: the chain 1-3-4-5-6-7-8
// with node 2 attached to node 4. Unimodular, even, positive definite.
inline ExactMatrix e8_gram() {
  ExactMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i) m(i, i) = 2;
  constexpr std::pair<int, int> edges[] = {{1, 3}, {2, 4}, {3, 4}, {4, 5},
                                           {5, 6}, {6, 7}, {7, 8}};
  for (const auto& [a, b] : edges) {
    m(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)) = -1;
    m(static_cast<std::size_t>(b - 1), static_cast<std::size_t>(a - 1)) = -1;
  }
  return m;
}

inline ExactMatrix u_gram() { return ExactMatrix{{0, 1}, {1, 0}}; }

inline ExactMatrix lambda_gram() { return ExactMatrix{{-6, 3}, {3, -2}}; }

namespace expr_detail {

inline void collect_blocks(const LatticeExpr& e, std::vector<ExactMatrix>& out) {
  switch (e.kind) {
    case LatticeExpr::Kind::U:
      out.push_back(u_gram());
      return;
    case LatticeExpr::Kind::E8:
      out.push_back(e8_gram());
      return;
    case LatticeExpr::Kind::NegE8:
      out.push_back(Rat(-1) * e8_gram());
      return;
    case LatticeExpr::Kind::Lambda:
      out.push_back(lambda_gram());
      return;
    case LatticeExpr::Kind::Rank1:
      out.push_back(ExactMatrix{{Rat(e.rank1_square)}});
      return;
    case LatticeExpr::Kind::Gram:
      if (!e.gram_matrix.is_square() || !e.gram_matrix.is_symmetric())
        throw std::invalid_argument("gram block must be square and symmetric");
      out.push_back(e.gram_matrix);
      return;
    case LatticeExpr::Kind::Power:
      for (unsigned long k = 0; k < e.exponent; ++k) collect_blocks(e.children[0], out);
      return;
    case LatticeExpr::Kind::Sum:
      for (const auto& child : e.children) collect_blocks(child, out);
      return;
  }
}

}  // namespace expr_detail

inline Lattice realize(const LatticeExpr& e) {
  std::vector<ExactMatrix> blocks;
  expr_detail::collect_blocks(e, blocks);
  return Lattice(block_diag(blocks));
}

}  // namespace hklat
