#pragma once

// Exact unital rings: Z/m, the integers, matrix rings over a supported ring,
// finite direct products, corner subrings pAp, and explicit finite tables.
// Finite rings enumerate their elements in a fixed deterministic order and,
// when small enough, carry an index-based engine for brute-force sweeps.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "srank/value.hpp"

namespace srank {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Cardinality bound for precomputed multiplication tables.
inline constexpr std::uint64_t kTableCap = 4096;
// Cardinality bound for any index-based enumeration engine.
inline constexpr std::uint64_t kEngineCap = std::uint64_t(1) << 26;

// Index arithmetic on a finite ring; indices agree with Ring::element order.
class FastEngine {
 public:
  virtual ~FastEngine() = default;
  virtual std::uint64_t size() const = 0;
  virtual std::uint64_t zero() const = 0;
  virtual std::uint64_t one() const = 0;
  virtual std::uint64_t add(std::uint64_t a, std::uint64_t b) const = 0;
  virtual std::uint64_t neg(std::uint64_t a) const = 0;
  virtual std::uint64_t mul(std::uint64_t a, std::uint64_t b) const = 0;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }
};

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  enum class Kind { Zmod, Integers, Matrix, Product, Corner, Table };

  virtual ~Ring() = default;

  Kind kind() const { return kind_; }
  bool finite() const { return finite_; }
  const mpz_class& cardinality() const {
    if (!finite_) throw std::logic_error("cardinality of an infinite ring");
    return card_;
  }
  bool enumerable() const { return finite_ && card_.fits_ulong_p() && card_.get_ui() <= kEngineCap; }
  std::uint64_t size() const {
    if (!enumerable()) throw std::logic_error("ring is not enumerable");
    return card_.get_ui();
  }

  virtual Value zero() const = 0;
  virtual Value one() const = 0;
  virtual Value add(const Value& a, const Value& b) const = 0;
  virtual Value neg(const Value& a) const = 0;
  virtual Value mul(const Value& a, const Value& b) const = 0;
  Value sub(const Value& a, const Value& b) const { return add(a, neg(b)); }
  virtual bool contains(const Value& v) const = 0;

  virtual Value element(std::uint64_t i) const = 0;
  virtual std::uint64_t index_of(const Value& v) const = 0;

  const FastEngine* engine() const { return engine_.get(); }

  virtual json spec_json() const = 0;
  std::string name() const { return spec_json().dump(); }

  bool is_idempotent(const Value& v) const { return contains(v) && mul(v, v) == v; }

  // accessors for composite kinds (throw on mismatch)
  virtual RingPtr matrix_base() const { throw std::logic_error("not a matrix ring"); }
  virtual unsigned matrix_n() const { throw std::logic_error("not a matrix ring"); }
  virtual const std::vector<RingPtr>& product_factors() const { throw std::logic_error("not a product ring"); }
  virtual RingPtr corner_ambient() const { throw std::logic_error("not a corner ring"); }
  virtual const Value& corner_p() const { throw std::logic_error("not a corner ring"); }

 protected:
  friend class RingFactory;
  Kind kind_;
  bool finite_ = false;
  mpz_class card_;
  std::shared_ptr<const FastEngine> engine_;
};

// ---------------------------------------------------------------------------
// matrix payload helpers (row-major n*n tuples)

inline const Value& mat_entry(const Value& m, unsigned n, unsigned i, unsigned j) {
  return m.items().at(std::size_t(i) * n + j);
}

inline Value make_mat(std::vector<Value> entries) { return Value(std::move(entries)); }

inline Value block_matrix(unsigned n, const std::function<Value(unsigned, unsigned)>& f) {
  std::vector<Value> e;
  e.reserve(std::size_t(n) * n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) e.push_back(f(i, j));
  return Value(std::move(e));
}

// place an n x n matrix in the upper-left block of an N x N matrix
inline Value embed_matrix(const Value& m, unsigned n, unsigned N, const Value& base_zero) {
  if (N < n) throw std::invalid_argument("embed: target size smaller than source");
  return block_matrix(N, [&](unsigned i, unsigned j) {
    return (i < n && j < n) ? mat_entry(m, n, i, j) : base_zero;
  });
}

inline Value extract_matrix(const Value& m, unsigned N, unsigned n) {
  return block_matrix(n, [&](unsigned i, unsigned j) { return mat_entry(m, N, i, j); });
}

inline Value mat_unit(unsigned n, unsigned i, unsigned j, const Value& payload, const Value& base_zero) {
  return block_matrix(n, [&](unsigned a, unsigned b) { return (a == i && b == j) ? payload : base_zero; });
}

// ---------------------------------------------------------------------------

namespace detail {

class TableEngine : public FastEngine {
 public:
  TableEngine(const Ring& r) {
    n_ = r.size();
    if (n_ > kTableCap) throw std::logic_error("table engine over cap");
    std::map<Value, std::uint64_t> idx;
    std::vector<Value> elems(n_);
    for (std::uint64_t i = 0; i < n_; ++i) {
      elems[i] = r.element(i);
      idx[elems[i]] = i;
    }
    zero_ = idx.at(r.zero());
    one_ = idx.at(r.one());
    add_.resize(n_ * n_);
    mul_.resize(n_ * n_);
    neg_.resize(n_);
    for (std::uint64_t i = 0; i < n_; ++i) {
      neg_[i] = (std::uint16_t)idx.at(r.neg(elems[i]));
      for (std::uint64_t j = 0; j < n_; ++j) {
        add_[i * n_ + j] = (std::uint16_t)idx.at(r.add(elems[i], elems[j]));
        mul_[i * n_ + j] = (std::uint16_t)idx.at(r.mul(elems[i], elems[j]));
      }
    }
  }
  std::uint64_t size() const override { return n_; }
  std::uint64_t zero() const override { return zero_; }
  std::uint64_t one() const override { return one_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const override { return add_[a * n_ + b]; }
  std::uint64_t neg(std::uint64_t a) const override { return neg_[a]; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override { return mul_[a * n_ + b]; }

 private:
  std::uint64_t n_, zero_, one_;
  std::vector<std::uint16_t> add_, mul_, neg_;
};

}  // namespace detail

// On-demand index arithmetic for M_n(base) when base has an engine.
class MatrixEngine : public FastEngine {
 public:
  MatrixEngine(std::shared_ptr<const FastEngine> base, unsigned n, std::uint64_t card)
      : base_(std::move(base)), n_(n), b_(base_->size()), size_(card) {
    k_ = n_ * n_;
    std::vector<std::uint64_t> z(k_, base_->zero()), o(k_, base_->zero());
    for (unsigned i = 0; i < n_; ++i) o[i * n_ + i] = base_->one();
    zero_ = encode(z.data());
    one_ = encode(o.data());
  }
  std::uint64_t size() const override { return size_; }
  std::uint64_t zero() const override { return zero_; }
  std::uint64_t one() const override { return one_; }
  unsigned n() const { return n_; }
  const FastEngine& base() const { return *base_; }

  void decode(std::uint64_t idx, std::uint64_t* out) const {
    for (unsigned k = k_; k-- > 0;) {
      out[k] = idx % b_;
      idx /= b_;
    }
  }
  std::uint64_t encode(const std::uint64_t* d) const {
    std::uint64_t idx = 0;
    for (unsigned k = 0; k < k_; ++k) idx = idx * b_ + d[k];
    return idx;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const override {
    std::uint64_t da[64], db[64];
    decode(a, da);
    decode(b, db);
    for (unsigned k = 0; k < k_; ++k) da[k] = base_->add(da[k], db[k]);
    return encode(da);
  }
  std::uint64_t neg(std::uint64_t a) const override {
    std::uint64_t da[64];
    decode(a, da);
    for (unsigned k = 0; k < k_; ++k) da[k] = base_->neg(da[k]);
    return encode(da);
  }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override {
    std::uint64_t da[64], db[64], dc[64];
    decode(a, da);
    decode(b, db);
    for (unsigned i = 0; i < n_; ++i)
      for (unsigned j = 0; j < n_; ++j) {
        std::uint64_t s = base_->zero();
        for (unsigned t = 0; t < n_; ++t)
          s = base_->add(s, base_->mul(da[i * n_ + t], db[t * n_ + j]));
        dc[i * n_ + j] = s;
      }
    return encode(dc);
  }

 private:
  std::shared_ptr<const FastEngine> base_;
  unsigned n_, k_;
  std::uint64_t b_, size_, zero_, one_;
};

// ---------------------------------------------------------------------------

namespace detail {

class ZmodRing final : public Ring {
 public:
  explicit ZmodRing(unsigned long m) : m_(m) {
    if (m < 2) throw std::invalid_argument("zmod modulus must be >= 2");
    kind_ = Kind::Zmod;
    finite_ = true;
    card_ = m;
  }
  Value zero() const override { return Value(mpz_class(0)); }
  Value one() const override { return Value(mpz_class(1)); }
  Value add(const Value& a, const Value& b) const override {
    mpz_class r = (a.scalar() + b.scalar()) % m_;
    return Value(r);
  }
  Value neg(const Value& a) const override {
    mpz_class r = (m_ - a.scalar()) % m_;
    return Value(r);
  }
  Value mul(const Value& a, const Value& b) const override {
    mpz_class r = (a.scalar() * b.scalar()) % m_;
    return Value(r);
  }
  bool contains(const Value& v) const override {
    return v.is_scalar() && v.scalar() >= 0 && v.scalar() < m_;
  }
  Value element(std::uint64_t i) const override { return Value(mpz_class((unsigned long)i)); }
  std::uint64_t index_of(const Value& v) const override { return v.scalar().get_ui(); }
  json spec_json() const override { return json{{"type", "zmod"}, {"m", m_}}; }

 private:
  unsigned long m_;
};

class IntegerRing final : public Ring {
 public:
  IntegerRing() {
    kind_ = Kind::Integers;
    finite_ = false;
  }
  Value zero() const override { return Value(mpz_class(0)); }
  Value one() const override { return Value(mpz_class(1)); }
  Value add(const Value& a, const Value& b) const override { return Value(mpz_class(a.scalar() + b.scalar())); }
  Value neg(const Value& a) const override { return Value(mpz_class(-a.scalar())); }
  Value mul(const Value& a, const Value& b) const override { return Value(mpz_class(a.scalar() * b.scalar())); }
  bool contains(const Value& v) const override { return v.is_scalar(); }
  Value element(std::uint64_t) const override { throw std::logic_error("integers: not enumerable"); }
  std::uint64_t index_of(const Value&) const override { throw std::logic_error("integers: not enumerable"); }
  json spec_json() const override { return json{{"type", "integers"}}; }
};

class MatrixRing final : public Ring {
 public:
  MatrixRing(RingPtr base, unsigned n) : base_(std::move(base)), n_(n) {
    if (n < 1) throw std::invalid_argument("matrix size must be >= 1");
    kind_ = Kind::Matrix;
    finite_ = base_->finite();
    if (finite_) {
      card_ = 1;
      for (unsigned k = 0; k < n_ * n_; ++k) card_ *= base_->cardinality();
    }
  }
  Value zero() const override {
    return block_matrix(n_, [&](unsigned, unsigned) { return base_->zero(); });
  }
  Value one() const override {
    return block_matrix(n_, [&](unsigned i, unsigned j) { return i == j ? base_->one() : base_->zero(); });
  }
  Value add(const Value& a, const Value& b) const override {
    return block_matrix(n_, [&](unsigned i, unsigned j) {
      return base_->add(mat_entry(a, n_, i, j), mat_entry(b, n_, i, j));
    });
  }
  Value neg(const Value& a) const override {
    return block_matrix(n_, [&](unsigned i, unsigned j) { return base_->neg(mat_entry(a, n_, i, j)); });
  }
  Value mul(const Value& a, const Value& b) const override {
    return block_matrix(n_, [&](unsigned i, unsigned j) {
      Value s = base_->zero();
      for (unsigned t = 0; t < n_; ++t)
        s = base_->add(s, base_->mul(mat_entry(a, n_, i, t), mat_entry(b, n_, t, j)));
      return s;
    });
  }
  bool contains(const Value& v) const override {
    if (v.is_scalar() || v.items().size() != std::size_t(n_) * n_) return false;
    for (const auto& e : v.items())
      if (!base_->contains(e)) return false;
    return true;
  }
  Value element(std::uint64_t i) const override {
    std::uint64_t b = base_->size();
    std::vector<Value> e(std::size_t(n_) * n_);
    for (unsigned k = n_ * n_; k-- > 0;) {
      e[k] = base_->element(i % b);
      i /= b;
    }
    return Value(std::move(e));
  }
  std::uint64_t index_of(const Value& v) const override {
    std::uint64_t b = base_->size(), idx = 0;
    for (unsigned k = 0; k < n_ * n_; ++k) idx = idx * b + base_->index_of(v.items()[k]);
    return idx;
  }
  json spec_json() const override { return json{{"type", "matrix"}, {"n", n_}, {"base", base_->spec_json()}}; }
  RingPtr matrix_base() const override { return base_; }
  unsigned matrix_n() const override { return n_; }

  void init_engine() {
    if (finite_ && base_->engine() && enumerable()) {
      auto be = std::shared_ptr<const FastEngine>(base_, base_->engine());
      engine_ = std::make_shared<MatrixEngine>(be, n_, size());
    }
  }

 private:
  RingPtr base_;
  unsigned n_;
};

class ProductRing final : public Ring {
 public:
  explicit ProductRing(std::vector<RingPtr> fs) : fs_(std::move(fs)) {
    if (fs_.empty()) throw std::invalid_argument("product needs at least one factor");
    kind_ = Kind::Product;
    finite_ = true;
    card_ = 1;
    for (const auto& f : fs_) {
      if (!f->finite()) {
        finite_ = false;
        break;
      }
      card_ *= f->cardinality();
    }
    if (!finite_) card_ = 0;
  }
  Value zero() const override { return map([](const Ring& r) { return r.zero(); }); }
  Value one() const override { return map([](const Ring& r) { return r.one(); }); }
  Value add(const Value& a, const Value& b) const override { return zip(a, b, &Ring::add); }
  Value mul(const Value& a, const Value& b) const override { return zip(a, b, &Ring::mul); }
  Value neg(const Value& a) const override {
    std::vector<Value> e;
    for (size_t k = 0; k < fs_.size(); ++k) e.push_back(fs_[k]->neg(a.items()[k]));
    return Value(std::move(e));
  }
  bool contains(const Value& v) const override {
    if (v.is_scalar() || v.items().size() != fs_.size()) return false;
    for (size_t k = 0; k < fs_.size(); ++k)
      if (!fs_[k]->contains(v.items()[k])) return false;
    return true;
  }
  Value element(std::uint64_t i) const override {
    std::vector<Value> e(fs_.size());
    for (size_t k = fs_.size(); k-- > 0;) {
      std::uint64_t b = fs_[k]->size();
      e[k] = fs_[k]->element(i % b);
      i /= b;
    }
    return Value(std::move(e));
  }
  std::uint64_t index_of(const Value& v) const override {
    std::uint64_t idx = 0;
    for (size_t k = 0; k < fs_.size(); ++k) idx = idx * fs_[k]->size() + fs_[k]->index_of(v.items()[k]);
    return idx;
  }
  json spec_json() const override {
    json fs = json::array();
    for (const auto& f : fs_) fs.push_back(f->spec_json());
    return json{{"type", "product"}, {"factors", fs}};
  }
  const std::vector<RingPtr>& product_factors() const override { return fs_; }

 private:
  std::vector<RingPtr> fs_;
  Value map(const std::function<Value(const Ring&)>& f) const {
    std::vector<Value> e;
    for (const auto& r : fs_) e.push_back(f(*r));
    return Value(std::move(e));
  }
  Value zip(const Value& a, const Value& b, Value (Ring::*op)(const Value&, const Value&) const) const {
    std::vector<Value> e;
    for (size_t k = 0; k < fs_.size(); ++k) e.push_back(((*fs_[k]).*op)(a.items()[k], b.items()[k]));
    return Value(std::move(e));
  }
};

class CornerRing final : public Ring {
 public:
  CornerRing(RingPtr ambient, Value p) : amb_(std::move(ambient)), p_(std::move(p)) {
    if (!amb_->is_idempotent(p_)) throw std::invalid_argument("corner seed is not idempotent");
    kind_ = Kind::Corner;
    finite_ = amb_->finite();
    if (finite_) {
      if (!amb_->enumerable())
        throw std::invalid_argument("corner over a finite ring above the enumeration cap");
      std::uint64_t n = amb_->size();
      for (std::uint64_t i = 0; i < n; ++i) {
        Value v = amb_->mul(p_, amb_->mul(amb_->element(i), p_));
        if (!idx_.count(v)) {
          idx_[v] = reps_.size();
          reps_.push_back(v);
        }
      }
      card_ = (unsigned long)reps_.size();
    }
  }
  Value zero() const override { return amb_->zero(); }
  Value one() const override { return p_; }
  Value add(const Value& a, const Value& b) const override { return amb_->add(a, b); }
  Value neg(const Value& a) const override { return amb_->neg(a); }
  Value mul(const Value& a, const Value& b) const override { return amb_->mul(a, b); }
  bool contains(const Value& v) const override {
    return amb_->contains(v) && amb_->mul(p_, amb_->mul(v, p_)) == v;
  }
  // normalize an arbitrary ambient element into the corner
  Value from_ambient(const Value& v) const { return amb_->mul(p_, amb_->mul(v, p_)); }
  Value element(std::uint64_t i) const override { return reps_.at(i); }
  std::uint64_t index_of(const Value& v) const override { return idx_.at(v); }
  json spec_json() const override {
    return json{{"type", "corner"}, {"ambient", amb_->spec_json()}, {"p", value_to_json(p_)}};
  }
  RingPtr corner_ambient() const override { return amb_; }
  const Value& corner_p() const override { return p_; }

 private:
  RingPtr amb_;
  Value p_;
  std::vector<Value> reps_;
  std::map<Value, std::uint64_t> idx_;
};

class TableRing final : public Ring {
 public:
  TableRing(std::vector<std::vector<unsigned>> add, std::vector<std::vector<unsigned>> mul,
            unsigned zero, unsigned one)
      : add_(std::move(add)), mul_(std::move(mul)), z_(zero), o_(one) {
    kind_ = Kind::Table;
    finite_ = true;
    n_ = add_.size();
    if (n_ < 1 || mul_.size() != n_ || z_ >= n_ || o_ >= n_)
      throw std::invalid_argument("malformed ring table");
    for (const auto& row : add_)
      if (row.size() != n_) throw std::invalid_argument("malformed ring table");
    for (const auto& row : mul_)
      if (row.size() != n_) throw std::invalid_argument("malformed ring table");
    card_ = (unsigned long)n_;
    neg_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      bool found = false;
      for (std::size_t j = 0; j < n_; ++j)
        if (add_[i][j] == z_) {
          neg_[i] = (unsigned)j;
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("table has no additive inverse");
    }
  }
  Value zero() const override { return Value(mpz_class((unsigned long)z_)); }
  Value one() const override { return Value(mpz_class((unsigned long)o_)); }
  Value add(const Value& a, const Value& b) const override {
    return Value(mpz_class((unsigned long)add_[a.scalar().get_ui()][b.scalar().get_ui()]));
  }
  Value neg(const Value& a) const override {
    return Value(mpz_class((unsigned long)neg_[a.scalar().get_ui()]));
  }
  Value mul(const Value& a, const Value& b) const override {
    return Value(mpz_class((unsigned long)mul_[a.scalar().get_ui()][b.scalar().get_ui()]));
  }
  bool contains(const Value& v) const override {
    return v.is_scalar() && v.scalar() >= 0 && v.scalar() < (unsigned long)n_;
  }
  Value element(std::uint64_t i) const override { return Value(mpz_class((unsigned long)i)); }
  std::uint64_t index_of(const Value& v) const override { return v.scalar().get_ui(); }
  json spec_json() const override {
    return json{{"type", "table"}, {"add", add_}, {"mul", mul_}, {"zero", z_}, {"one", o_}};
  }

 private:
  std::vector<std::vector<unsigned>> add_, mul_;
  std::vector<unsigned> neg_;
  std::size_t n_;
  unsigned z_, o_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// factories

class RingFactory {
 public:
  static RingPtr with_table(std::shared_ptr<Ring> r) {
    if (r->finite() && r->enumerable() && r->size() <= kTableCap)
      r->engine_ = std::make_shared<detail::TableEngine>(*r);
    return r;
  }
};

inline RingPtr make_zmod(unsigned long m) {
  return RingFactory::with_table(std::make_shared<detail::ZmodRing>(m));
}
inline RingPtr make_integers() { return std::make_shared<detail::IntegerRing>(); }
inline RingPtr make_matrix(RingPtr base, unsigned n) {
  auto r = std::make_shared<detail::MatrixRing>(std::move(base), n);
  r->init_engine();
  return r;
}
inline RingPtr make_product(std::vector<RingPtr> fs) {
  return RingFactory::with_table(std::make_shared<detail::ProductRing>(std::move(fs)));
}
inline RingPtr make_corner(RingPtr ambient, Value p) {
  return RingFactory::with_table(std::make_shared<detail::CornerRing>(std::move(ambient), std::move(p)));
}
inline RingPtr make_table(std::vector<std::vector<unsigned>> add, std::vector<std::vector<unsigned>> mul,
                          unsigned zero, unsigned one) {
  return RingFactory::with_table(
      std::make_shared<detail::TableRing>(std::move(add), std::move(mul), zero, one));
}

inline RingPtr ring_from_spec(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw std::invalid_argument("ring spec must be an object with a type");
  std::string t = j.at("type").get<std::string>();
  if (t == "zmod") return make_zmod(j.at("m").get<unsigned long>());
  if (t == "integers") return make_integers();
  if (t == "matrix") return make_matrix(ring_from_spec(j.at("base")), j.at("n").get<unsigned>());
  if (t == "product") {
    std::vector<RingPtr> fs;
    for (const auto& f : j.at("factors")) fs.push_back(ring_from_spec(f));
    return make_product(std::move(fs));
  }
  if (t == "corner") {
    auto amb = ring_from_spec(j.at("ambient"));
    Value p = value_from_json(j.at("p"));
    if (!amb->contains(p)) throw std::invalid_argument("corner seed is not an ambient element");
    return make_corner(std::move(amb), std::move(p));
  }
  if (t == "table")
    return make_table(j.at("add").get<std::vector<std::vector<unsigned>>>(),
                      j.at("mul").get<std::vector<std::vector<unsigned>>>(),
                      j.at("zero").get<unsigned>(), j.at("one").get<unsigned>());
  throw std::invalid_argument("unknown ring type: " + t);
}

// non-unital embedding of M_n(base) into the upper-left corner of M_N(base)
inline Value embed(const Ring& mn, const Value& a, unsigned N) {
  unsigned n = mn.matrix_n();
  return embed_matrix(a, n, N, mn.matrix_base()->zero());
}

}  // namespace srank
