#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hklat/beauville.hpp"
#include "hklat/fujiki.hpp"
#include "hklat/lattice_expr.hpp"
#include "hklat/ledger.hpp"
#include "hklat/matrix.hpp"
#include "hklat/numeric.hpp"

namespace hklat {

// JSON input schemas for the command line tools. Exactness is preserved end
// to end: numeric values are JSON integers or strings like "-3/2", never
// floats. Anything malformed raises InputError with a human-readable reason.

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

namespace io_detail {

using Json = nlohmann::json;

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline long integer_field(const Json& j, const char* what) {
  if (!j.is_number_integer())  // also true for unsigned; floats fail
    throw InputError(std::string(what) + " must be a JSON integer");
  return j.get<long>();
}

inline std::string string_field(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace io_detail

// Integers pass through; strings go through the exact scanner. Floats are
// rejected outright: a value that was ever a double is no longer exact.
inline Rat rational_from_json(const io_detail::Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("expected an integer or a rational string, got " + j.dump());
}

inline ExactMatrix matrix_from_json(const io_detail::Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j.at(0).is_array() || j.at(0).empty())
    throw InputError("matrix rows must be non-empty arrays");
  const std::size_t cols = j.at(0).size();
  ExactMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (!row.is_array() || row.size() != cols) throw InputError("matrix rows differ in length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rational_from_json(row.at(k));
  }
  return m;
}

// {
//   "n": 5, "reference": "mu", "exceptional": ["Sigma", "B"],
//   "donaldson": "U^3 + -E8^2",
//   "data": [{"pattern": {"mu": 10}, "value": 945, "unit_power": 5}, ...]
// }
inline SolverInput parse_solver_input(const std::string& text) {
  using io_detail::Json;
  const Json j = io_detail::parse_json(text);

  SolverInput in;
  const long n = io_detail::integer_field(io_detail::require(j, "n"), "'n'");
  if (n < 1) throw InputError("'n' must be >= 1");
  in.n = static_cast<std::size_t>(n);
  in.reference = io_detail::string_field(io_detail::require(j, "reference"), "'reference'");

  const Json& exc = io_detail::require(j, "exceptional");
  if (!exc.is_array()) throw InputError("'exceptional' must be an array of names");
  for (const auto& e : exc)
    in.exceptional.push_back(io_detail::string_field(e, "exceptional name"));

  try {
    in.donaldson_part =
        parse_lattice_expr(io_detail::string_field(io_detail::require(j, "donaldson"), "'donaldson'"));
  } catch (const ParseError& e) {
    throw InputError(std::string("'donaldson': ") + e.what());
  }

  const Json& data = io_detail::require(j, "data");
  if (!data.is_array()) throw InputError("'data' must be an array");
  for (const auto& entry : data) {
    IntersectionDatum datum;
    const Json& pattern = io_detail::require(entry, "pattern");
    if (!pattern.is_object()) throw InputError("'pattern' must map class names to exponents");
    for (const auto& [name, exponent] : pattern.items()) {
      const long e = io_detail::integer_field(exponent, "pattern exponent");
      if (e < 1) throw InputError("pattern exponent must be >= 1");
      datum.pattern[name] = static_cast<std::size_t>(e);
    }
    datum.value = rational_from_json(io_detail::require(entry, "value"));
    datum.unit_power = io_detail::integer_field(io_detail::require(entry, "unit_power"),
                                                "'unit_power'");
    in.data.push_back(std::move(datum));
  }
  return in;
}

// {
//   "terms": [{"name": "A", "dim": 2}, {"name": "B"},
//             {"name": "C", "lo": 1, "hi": 24}, ...],
//   "exact_at": ["B"],
//   "arrows": [{"index": 0, "injective": true}]
// }
inline RankLedger parse_ledger_scenario(const std::string& text) {
  using io_detail::Json;
  const Json j = io_detail::parse_json(text);

  RankLedger ledger;
  const Json& terms = io_detail::require(j, "terms");
  if (!terms.is_array() || terms.size() < 2)
    throw InputError("'terms' must be an array of at least two terms");
  for (const auto& t : terms) {
    const std::string name = io_detail::string_field(io_detail::require(t, "name"), "term name");
    DimBound bound;
    if (t.contains("dim")) {
      bound = DimBound::exactly(io_detail::integer_field(t.at("dim"), "'dim'"));
    } else {
      if (t.contains("lo")) bound.lo = io_detail::integer_field(t.at("lo"), "'lo'");
      if (t.contains("hi")) bound.hi = io_detail::integer_field(t.at("hi"), "'hi'");
    }
    if (bound.lo < 0 || (bound.hi && *bound.hi < bound.lo))
      throw InputError("term '" + name + "' has an empty or negative bound");
    ledger.add_term_bounded(name, bound);
  }

  try {
    if (j.contains("exact_at")) {
      const Json& exact = j.at("exact_at");
      if (!exact.is_array()) throw InputError("'exact_at' must be an array of term names");
      for (const auto& name : exact)
        ledger.mark_exact(io_detail::string_field(name, "exact term name"));
    }
    if (j.contains("arrows")) {
      const Json& arrows = j.at("arrows");
      if (!arrows.is_array()) throw InputError("'arrows' must be an array");
      for (const auto& a : arrows) {
        const long index = io_detail::integer_field(io_detail::require(a, "index"), "'index'");
        if (index < 0) throw InputError("arrow index must be >= 0");
        ArrowFlags flags;
        if (a.contains("injective")) flags.injective = a.at("injective").get<bool>();
        if (a.contains("surjective")) flags.surjective = a.at("surjective").get<bool>();
        if (a.contains("zero")) flags.zero = a.at("zero").get<bool>();
        ledger.annotate_arrow(static_cast<std::size_t>(index), flags);
      }
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return ledger;
}

struct FujikiEvalInput {
  FujikiStructure structure;
  std::vector<std::size_t> classes;
};

// {
//   "n": 5, "c": 945,
//   "gram": "U^5",            // or explicit rows: [[0, 1], [1, 0]]
//   "classes": [0, 1, 0, 1, ...]
// }
inline FujikiEvalInput parse_fujiki_input(const std::string& text) {
  using io_detail::Json;
  const Json j = io_detail::parse_json(text);

  const long n = io_detail::integer_field(io_detail::require(j, "n"), "'n'");
  if (n < 1) throw InputError("'n' must be >= 1");
  const Rat c = rational_from_json(io_detail::require(j, "c"));

  const Json& gram_field = io_detail::require(j, "gram");
  ExactMatrix gram;
  if (gram_field.is_string()) {
    try {
      gram = realize(parse_lattice_expr(gram_field.get<std::string>())).gram();
    } catch (const std::exception& e) {
      throw InputError(std::string("'gram': ") + e.what());
    }
  } else {
    gram = matrix_from_json(gram_field);
  }

  std::vector<std::size_t> classes;
  const Json& cls = io_detail::require(j, "classes");
  if (!cls.is_array()) throw InputError("'classes' must be an array of row indices");
  for (const auto& entry : cls) {
    const long idx = io_detail::integer_field(entry, "class index");
    if (idx < 0) throw InputError("class indices must be >= 0");
    classes.push_back(static_cast<std::size_t>(idx));
  }

  try {
    return FujikiEvalInput{FujikiStructure(static_cast<std::size_t>(n), c, std::move(gram)),
                           std::move(classes)};
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace hklat
