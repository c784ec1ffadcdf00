#pragma once

// Canonical element payloads: an exact integer (residues, rational integers,
// table indices) or a nested tuple (matrix entries row-major, product
// components). Equal ring elements always have identical payloads.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace srank {

using json = nlohmann::json;

class Value {
 public:
  Value() : v_(mpz_class(0)) {}
  explicit Value(mpz_class z) : v_(std::move(z)) {}
  explicit Value(long z) : v_(mpz_class(z)) {}
  explicit Value(std::vector<Value> items) : v_(std::move(items)) {}

  bool is_scalar() const { return v_.index() == 0; }
  const mpz_class& scalar() const {
    if (!is_scalar()) throw std::logic_error("Value: not a scalar payload");
    return std::get<0>(v_);
  }
  const std::vector<Value>& items() const {
    if (is_scalar()) throw std::logic_error("Value: not a tuple payload");
    return std::get<1>(v_);
  }

  friend bool operator==(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (a.is_scalar()) return a.scalar() == b.scalar();
    return std::get<1>(a.v_) == std::get<1>(b.v_);
  }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

  // Total order used for deterministic enumeration and map keys.
  friend bool operator<(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    if (a.is_scalar()) return cmp(a.scalar(), b.scalar()) < 0;
    const auto& x = std::get<1>(a.v_);
    const auto& y = std::get<1>(b.v_);
    if (x.size() != y.size()) return x.size() < y.size();
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] != y[i]) return x[i] < y[i];
    }
    return false;
  }

  std::string str() const {
    if (is_scalar()) return scalar().get_str();
    std::string s = "[";
    const auto& xs = items();
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ",";
      s += xs[i].str();
    }
    return s + "]";
  }

 private:
  std::variant<mpz_class, std::vector<Value>> v_;
};

inline json value_to_json(const Value& v) {
  if (v.is_scalar()) {
    const mpz_class& z = v.scalar();
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
  }
  json arr = json::array();
  for (const auto& x : v.items()) arr.push_back(value_to_json(x));
  return arr;
}

inline Value value_from_json(const json& j) {
  if (j.is_number_integer()) return Value(mpz_class(j.get<long>()));
  if (j.is_string()) return Value(mpz_class(j.get<std::string>()));
  if (j.is_array()) {
    std::vector<Value> items;
    items.reserve(j.size());
    for (const auto& x : j) items.push_back(value_from_json(x));
    return Value(std::move(items));
  }
  throw std::invalid_argument("element literal must be integer, string or array");
}

}  // namespace srank
