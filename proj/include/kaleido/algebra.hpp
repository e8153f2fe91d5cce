#pragma once

// Exact arithmetic in cyclic groups, prime fields, extension fields given by
// an explicit modulus polynomial, and direct products of these.
//
// Every element is addressed by its canonical index in [0, order):
//   cyclic / prime field : the residue itself
//   extension field      : sum c_i * p^(d-1-i), i.e. the constant term is the
//                          most significant digit of the coefficient vector
//   product G x H        : left * |H| + right
// Canonical order is the numeric order of these indices.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kaleido/error.hpp"

namespace kaleido {

struct Element {
  std::uint32_t index = 0;
  friend constexpr auto operator<=>(Element, Element) = default;
};

namespace numth {

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp > 0) {
    if (exp & 1) r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

constexpr std::uint32_t reduce(std::int64_t a, std::uint32_t m) {
  auto r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

/// Returns p if n = p^d for a prime p, nothing otherwise.
inline std::optional<std::uint32_t> root_if_prime_power(std::uint64_t n, unsigned d) {
  if (d == 0) return std::nullopt;
  for (std::uint64_t p = 2; p <= n; ++p) {
    std::uint64_t acc = 1;
    for (unsigned i = 0; i < d && acc <= n; ++i) acc *= p;
    if (acc == n) return is_prime(p) ? std::optional<std::uint32_t>(static_cast<std::uint32_t>(p)) : std::nullopt;
    if (acc > n) break;
  }
  return std::nullopt;
}

}  // namespace numth

// ---------------------------------------------------------------------------
// Descriptors

struct GroupDescriptor;
using DescriptorPtr = std::shared_ptr<const GroupDescriptor>;

struct CyclicGroup {
  std::uint32_t v = 0;
};
struct PrimeField {
  std::uint32_t p = 0;
};
/// Z_p[t]/(f); `modulus` holds the coefficients of f low-to-high, reduced mod p.
struct ExtensionField {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> modulus;
};
struct ProductGroup {
  DescriptorPtr left;
  DescriptorPtr right;
};

struct GroupDescriptor {
  std::variant<CyclicGroup, PrimeField, ExtensionField, ProductGroup> kind;

  static GroupDescriptor cyclic(std::uint32_t v) { return {CyclicGroup{v}}; }
  static GroupDescriptor prime_field(std::uint32_t p) { return {PrimeField{p}}; }
  static GroupDescriptor extension_field(std::uint32_t p, const std::vector<std::int64_t>& modulus) {
    if (p == 0) throw Error(Errc::OrderTooSmall, "characteristic must be positive");
    ExtensionField f{p, {}};
    for (auto c : modulus) f.modulus.push_back(numth::reduce(c, p));
    while (f.modulus.size() > 1 && f.modulus.back() == 0) f.modulus.pop_back();
    return {std::move(f)};
  }
  static GroupDescriptor product(GroupDescriptor left, GroupDescriptor right) {
    return {ProductGroup{std::make_shared<const GroupDescriptor>(std::move(left)),
                         std::make_shared<const GroupDescriptor>(std::move(right))}};
  }

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    if (a.kind.index() != b.kind.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const auto& y = std::get<T>(b.kind);
          if constexpr (std::is_same_v<T, CyclicGroup>) return x.v == y.v;
          else if constexpr (std::is_same_v<T, PrimeField>) return x.p == y.p;
          else if constexpr (std::is_same_v<T, ExtensionField>) return x.p == y.p && x.modulus == y.modulus;
          else return *x.left == *y.left && *x.right == *y.right;
        },
        a.kind);
  }
};

// ---------------------------------------------------------------------------
// Group handle

class Group;
using GroupPtr = std::shared_ptr<const Group>;

GroupPtr make_group(const GroupDescriptor& descriptor);

class Group {
 public:
  enum class Kind { cyclic, prime_field, extension_field, product };

  const GroupDescriptor& descriptor() const { return descriptor_; }
  Kind kind() const { return kind_; }
  std::uint32_t order() const { return order_; }
  bool is_field() const { return kind_ == Kind::prime_field || kind_ == Kind::extension_field; }
  /// Prime p for fields, the residue modulus for cyclic groups.
  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return degree_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }

  Element zero() const { return {0}; }

  Element add(Element a, Element b) const {
    switch (kind_) {
      case Kind::cyclic:
      case Kind::prime_field: {
        auto s = a.index + b.index;
        return {s >= order_ ? s - order_ : s};
      }
      case Kind::extension_field: {
        std::uint32_t r = 0, scale = 1, x = a.index, y = b.index;
        for (unsigned i = 0; i < degree_; ++i) {
          auto s = x % p_ + y % p_;
          r += (s >= p_ ? s - p_ : s) * scale;
          x /= p_;
          y /= p_;
          scale *= p_;
        }
        return {r};
      }
      case Kind::product: {
        auto [al, ar] = split(a);
        auto [bl, br] = split(b);
        return pair(left_->add(al, bl), right_->add(ar, br));
      }
    }
    return {};
  }

  Element neg(Element a) const {
    switch (kind_) {
      case Kind::cyclic:
      case Kind::prime_field:
        return {a.index == 0 ? 0 : order_ - a.index};
      case Kind::extension_field: {
        std::uint32_t r = 0, scale = 1, x = a.index;
        for (unsigned i = 0; i < degree_; ++i) {
          auto c = x % p_;
          r += (c == 0 ? 0 : p_ - c) * scale;
          x /= p_;
          scale *= p_;
        }
        return {r};
      }
      case Kind::product: {
        auto [l, r] = split(a);
        return pair(left_->neg(l), right_->neg(r));
      }
    }
    return {};
  }

  Element sub(Element a, Element b) const { return add(a, neg(b)); }

  /// Integer n embedded as n * 1 (fields) or n mod v (cyclic groups).
  Element from_int(std::int64_t n) const {
    switch (kind_) {
      case Kind::cyclic:
      case Kind::prime_field:
        return {numth::reduce(n, order_)};
      case Kind::extension_field:
        return {numth::reduce(n, p_) * scale_top_};
      case Kind::product:
        return pair(left_->from_int(n), right_->from_int(n));
    }
    return {};
  }

  // -- field operations; calling these on a non-field throws MalformedInput --

  Element one() const {
    require_field("one");
    return from_int(1);
  }

  Element mul(Element a, Element b) const {
    require_field("mul");
    if (a.index == 0 || b.index == 0) return {0};
    if (kind_ == Kind::prime_field)
      return {static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % p_)};
    auto s = log_[a.index] + log_[b.index];
    return exp_[s >= order_ - 1 ? s - (order_ - 1) : s];
  }

  Element inv(Element a) const {
    require_field("inv");
    if (a.index == 0) throw Error(Errc::ZeroElement, "zero has no inverse");
    auto l = log_[a.index];
    return exp_[l == 0 ? 0 : order_ - 1 - l];
  }

  Element pow(Element a, std::int64_t e) const {
    require_field("pow");
    if (a.index == 0) {
      if (e < 0) throw Error(Errc::ZeroElement, "zero has no inverse");
      return e == 0 ? one() : zero();
    }
    const std::int64_t n = order_ - 1;
    auto l = static_cast<std::int64_t>(log_[a.index]);
    auto r = ((l * (e % n)) % n + n) % n;
    return exp_[static_cast<std::size_t>(r)];
  }

  /// The canonically smallest element of multiplicative order q-1.
  Element primitive() const {
    require_field("primitive");
    return primitive_;
  }

  /// Discrete logarithm to the base primitive().
  std::uint32_t log(Element a) const {
    require_field("log");
    if (a.index == 0) throw Error(Errc::ZeroElement, "log of zero");
    return log_[a.index];
  }

  Element exp(std::uint64_t k) const {
    require_field("exp");
    return exp_[k % (order_ - 1)];
  }

  /// Coefficients low-to-high (extension fields); a single residue otherwise.
  std::vector<std::uint32_t> coefficients(Element a) const {
    if (kind_ != Kind::extension_field) return {a.index};
    std::vector<std::uint32_t> c(degree_);
    auto x = a.index;
    for (unsigned i = degree_; i-- > 0;) {
      c[i] = x % p_;
      x /= p_;
    }
    return c;
  }

  Element from_coefficients(const std::vector<std::int64_t>& coeffs) const {
    if (kind_ != Kind::extension_field) {
      if (coeffs.size() != 1) throw Error(Errc::MalformedInput, "expected a single residue");
      return from_int(coeffs[0]);
    }
    if (coeffs.size() > degree_) throw Error(Errc::MalformedInput, "too many coefficients for field degree");
    std::uint32_t r = 0;
    for (unsigned i = 0; i < degree_; ++i) r = r * p_ + (i < coeffs.size() ? numth::reduce(coeffs[i], p_) : 0);
    return {r};
  }

  std::pair<Element, Element> split(Element a) const {
    auto n = right_->order();
    return {Element{a.index / n}, Element{a.index % n}};
  }

  Element pair(Element l, Element r) const { return {l.index * right_->order() + r.index}; }

  std::vector<Element> elements() const {
    std::vector<Element> out(order_);
    for (std::uint32_t i = 0; i < order_; ++i) out[i] = {i};
    return out;
  }

  bool contains(Element a) const { return a.index < order_; }

  /// Human-readable rendering: "7", "4+t", "10+7t+11t^2", "(3,5)".
  std::string format(Element a) const {
    switch (kind_) {
      case Kind::cyclic:
      case Kind::prime_field:
        return std::to_string(a.index);
      case Kind::extension_field: {
        auto c = coefficients(a);
        std::string s;
        for (unsigned i = 0; i < degree_; ++i) {
          if (c[i] == 0) continue;
          if (!s.empty()) s += '+';
          if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
          if (i >= 1) s += 't';
          if (i >= 2) s += '^' + std::to_string(i);
        }
        return s.empty() ? "0" : s;
      }
      case Kind::product: {
        auto [l, r] = split(a);
        return "(" + left_->format(l) + "," + right_->format(r) + ")";
      }
    }
    return {};
  }

  /// Inverse of format(); also accepts negative integers and coefficients.
  Element parse(std::string_view text) const {
    std::string s;
    for (char ch : text)
      if (ch != ' ' && ch != '\t') s += ch;
    if (s.empty()) throw Error(Errc::MalformedInput, "empty element");
    if (kind_ == Kind::product) {
      if (s.front() != '(' || s.back() != ')') throw Error(Errc::MalformedInput, "product element must be (a,b)");
      int depth = 0;
      for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ',' && depth == 0)
          return pair(left_->parse(std::string_view(s).substr(1, i - 1)),
                      right_->parse(std::string_view(s).substr(i + 1, s.size() - i - 2)));
      }
      throw Error(Errc::MalformedInput, "product element must be (a,b): " + s);
    }
    std::vector<std::int64_t> coeffs(kind_ == Kind::extension_field ? degree_ : 1, 0);
    std::size_t pos = 0;
    while (pos < s.size()) {
      bool negative = false;
      if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
      }
      std::int64_t coef = 1;
      bool have_digits = false;
      std::int64_t value = 0;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        value = value * 10 + (s[pos] - '0');
        have_digits = true;
        ++pos;
      }
      if (have_digits) coef = value;
      unsigned power = 0;
      if (pos < s.size() && s[pos] == '*') ++pos;
      if (pos < s.size() && s[pos] == 't') {
        if (kind_ != Kind::extension_field) throw Error(Errc::MalformedInput, "'t' only valid in extension fields");
        ++pos;
        power = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          power = 0;
          bool digits = false;
          while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            power = power * 10 + static_cast<unsigned>(s[pos] - '0');
            digits = true;
            ++pos;
          }
          if (!digits) throw Error(Errc::MalformedInput, "missing exponent in " + s);
        }
      } else if (!have_digits) {
        throw Error(Errc::MalformedInput, "cannot parse element '" + s + "'");
      }
      if (power >= coeffs.size()) throw Error(Errc::MalformedInput, "power of t exceeds field degree in " + s);
      coeffs[power] += negative ? -coef : coef;
    }
    if (kind_ != Kind::extension_field) return from_int(coeffs[0]);
    return from_coefficients(coeffs);
  }

 private:
  friend GroupPtr make_group(const GroupDescriptor& descriptor);

  void require_field(const char* op) const {
    if (!is_field()) throw Error(Errc::MalformedInput, std::string(op) + " requires a field");
  }

  // Polynomial multiplication modulo the monic modulus; used only while
  // building the log tables.
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const {
    if (kind_ == Kind::prime_field) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    auto ca = coefficients({a}), cb = coefficients({b});
    std::vector<std::uint64_t> prod(2 * degree_ - 1, 0);
    for (unsigned i = 0; i < degree_; ++i)
      for (unsigned j = 0; j < degree_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_;
    for (std::size_t k = prod.size(); k-- > degree_;) {
      auto c = prod[k];
      if (c == 0) continue;
      // t^d = -(m_0 + ... + m_{d-1} t^{d-1})
      for (unsigned i = 0; i < degree_; ++i)
        prod[k - degree_ + i] = (prod[k - degree_ + i] + (p_ - modulus_[i]) * c) % p_;
      prod[k] = 0;
    }
    std::vector<std::int64_t> out(prod.begin(), prod.begin() + degree_);
    return from_coefficients(out).index;
  }

  std::uint32_t raw_pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = from_int(1).index;
    while (e > 0) {
      if (e & 1) r = raw_mul(r, a);
      a = raw_mul(a, a);
      e >>= 1;
    }
    return r;
  }

  void build_field_tables() {
    const std::uint64_t n = order_ - 1;
    const auto one_idx = from_int(1).index;
    auto factors = numth::distinct_prime_factors(n);
    for (std::uint32_t g = 1; g < order_; ++g) {
      bool primitive = true;
      for (auto r : factors)
        if (raw_pow(g, n / r) == one_idx) {
          primitive = false;
          break;
        }
      if (primitive || n == 1) {
        primitive_ = {g};
        break;
      }
    }
    exp_.resize(n);
    log_.assign(order_, 0);
    std::uint32_t x = one_idx;
    for (std::uint64_t k = 0; k < n; ++k) {
      exp_[k] = {x};
      log_[x] = static_cast<std::uint32_t>(k);
      x = raw_mul(x, primitive_.index);
    }
  }

  GroupDescriptor descriptor_;
  Kind kind_ = Kind::cyclic;
  std::uint32_t order_ = 0;
  std::uint32_t p_ = 0;
  unsigned degree_ = 1;
  std::uint32_t scale_top_ = 1;  // p^(d-1): index weight of the constant term
  std::vector<std::uint32_t> modulus_;
  GroupPtr left_, right_;
  Element primitive_{};
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

namespace detail {

// Monic polynomial with given low-to-high coefficients over Z_p has a factor
// of degree <= deg/2; exhaustive trial division.
inline bool is_reducible(std::uint32_t p, const std::vector<std::uint32_t>& f) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return false;
  auto divides = [&](const std::vector<std::uint64_t>& g) {
    std::vector<std::uint64_t> r(f.begin(), f.end());
    const std::size_t dg = g.size() - 1;  // g monic
    for (std::size_t k = r.size(); k-- > dg;) {
      auto c = r[k] % p;
      if (c == 0) continue;
      for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] = (r[k - dg + i] + (p - c) * g[i]) % p;
    }
    for (std::size_t i = 0; i < dg; ++i)
      if (r[i] % p != 0) return false;
    return true;
  };
  for (std::size_t dg = 1; dg <= deg / 2; ++dg) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < dg; ++i) count *= p;
    std::vector<std::uint64_t> g(dg + 1, 0);
    g[dg] = 1;
    for (std::uint64_t n = 0; n < count; ++n) {
      auto m = n;
      for (std::size_t i = 0; i < dg; ++i) {
        g[i] = m % p;
        m /= p;
      }
      if (divides(g)) return true;
    }
  }
  return false;
}

}  // namespace detail

inline GroupPtr make_group(const GroupDescriptor& descriptor) {
  auto g = std::shared_ptr<Group>(new Group());
  g->descriptor_ = descriptor;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CyclicGroup>) {
          if (d.v < 2) throw Error(Errc::OrderTooSmall, "cyclic group order must be at least 2");
          g->kind_ = Group::Kind::cyclic;
          g->order_ = d.v;
          g->p_ = d.v;
        } else if constexpr (std::is_same_v<T, PrimeField>) {
          if (d.p < 2) throw Error(Errc::OrderTooSmall, "field order must be at least 2");
          if (!numth::is_prime(d.p)) throw Error(Errc::NonPrimeModulus, std::to_string(d.p) + " is not prime");
          g->kind_ = Group::Kind::prime_field;
          g->order_ = d.p;
          g->p_ = d.p;
          g->modulus_ = {0, 1};
          g->build_field_tables();
        } else if constexpr (std::is_same_v<T, ExtensionField>) {
          if (d.p < 2) throw Error(Errc::OrderTooSmall, "field order must be at least 2");
          if (!numth::is_prime(d.p)) throw Error(Errc::NonPrimeModulus, std::to_string(d.p) + " is not prime");
          if (d.modulus.size() < 2) throw Error(Errc::ReducibleModulus, "modulus must have degree >= 1");
          if (d.modulus.back() != 1) throw Error(Errc::ReducibleModulus, "modulus must be monic");
          if (detail::is_reducible(d.p, d.modulus))
            throw Error(Errc::ReducibleModulus, "modulus is reducible over Z_" + std::to_string(d.p));
          const auto deg = static_cast<unsigned>(d.modulus.size() - 1);
          std::uint64_t q = 1;
          for (unsigned i = 0; i < deg; ++i) q *= d.p;
          if (q > (1ull << 31)) throw Error(Errc::MalformedInput, "field too large");
          g->kind_ = Group::Kind::extension_field;
          g->order_ = static_cast<std::uint32_t>(q);
          g->p_ = d.p;
          g->degree_ = deg;
          g->scale_top_ = static_cast<std::uint32_t>(q / d.p);
          g->modulus_ = d.modulus;
          g->build_field_tables();
        } else {
          g->left_ = make_group(*d.left);
          g->right_ = make_group(*d.right);
          auto q = std::uint64_t{g->left_->order()} * g->right_->order();
          if (q > (1ull << 31)) throw Error(Errc::MalformedInput, "group too large");
          g->kind_ = Group::Kind::product;
          g->order_ = static_cast<std::uint32_t>(q);
        }
      },
      descriptor.kind);
  return g;
}

/// Convenience: the field of order q, with an explicit modulus when q is not prime.
inline GroupPtr make_field(std::uint32_t q, const std::vector<std::int64_t>& modulus = {}) {
  if (modulus.empty()) {
    if (!numth::is_prime(q)) throw Error(Errc::NonPrimeModulus, std::to_string(q) + " is not prime; supply a modulus");
    return make_group(GroupDescriptor::prime_field(q));
  }
  const auto deg = static_cast<unsigned>(modulus.size() - 1);
  auto p = numth::root_if_prime_power(q, deg);
  if (!p) throw Error(Errc::NonPrimeModulus, std::to_string(q) + " is not p^" + std::to_string(deg));
  return make_group(GroupDescriptor::extension_field(*p, modulus));
}

inline Element primitive_element(const Group& field) {
  if (!field.is_field() || field.order() < 3) throw Error(Errc::OrderTooSmall, "need a field with at least 3 elements");
  return field.primitive();
}

// ---------------------------------------------------------------------------
// Cyclotomic classes

class CyclotomicTable {
 public:
  static constexpr std::uint8_t kZero = 0xFF;

  CyclotomicTable(GroupPtr field, unsigned e) : field_(std::move(field)), e_(e) {
    if (!field_->is_field()) throw Error(Errc::MalformedInput, "cyclotomic classes need a field");
    if (e == 0 || (field_->order() - 1) % e != 0)
      throw Error(Errc::BadCongruence, std::to_string(e) + " does not divide q-1 = " + std::to_string(field_->order() - 1));
    classes_.assign(field_->order(), kZero);
    for (std::uint32_t k = 0; k + 1 < field_->order(); ++k) classes_[field_->exp(k).index] = static_cast<std::uint8_t>(k % e);
  }

  const Group& field() const { return *field_; }
  const GroupPtr& field_ptr() const { return field_; }
  unsigned e() const { return e_; }
  Element primitive() const { return field_->primitive(); }
  std::uint32_t class_size() const { return (field_->order() - 1) / e_; }

  unsigned index(Element x) const {
    if (x.index == 0) throw Error(Errc::ZeroElement, "zero lies in no cyclotomic class");
    return classes_[x.index];
  }

  /// kZero for the zero element.
  std::uint8_t class_of(Element x) const { return classes_[x.index]; }

 private:
  GroupPtr field_;
  unsigned e_;
  std::vector<std::uint8_t> classes_;
};

inline unsigned cyclotomic_index(const CyclotomicTable& table, Element x) { return table.index(x); }

enum class TransversalMode { canonical, sixth_powers };

/// Representatives of the cosets of {1,-1} in the group of nonzero cubes.
inline std::vector<Element> transversal(const Group& field, TransversalMode mode) {
  if (!field.is_field()) throw Error(Errc::MalformedInput, "transversal needs a field");
  const auto q = field.order();
  if (q % 6 != 1) throw Error(Errc::BadCongruence, "q = " + std::to_string(q) + " is not 1 mod 6");
  std::vector<Element> out;
  if (mode == TransversalMode::sixth_powers) {
    if (q % 4 != 3) throw Error(Errc::BadCongruence, "sixth powers need q = 3 mod 4");
    for (std::uint32_t k = 0; k + 1 < q; k += 6) out.push_back(field.exp(k));
  } else {
    for (std::uint32_t k = 0; k + 1 < q; k += 3) {
      auto s = field.exp(k);
      if (s < field.neg(s)) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string_view to_string(TransversalMode m) {
  return m == TransversalMode::canonical ? "canonical" : "sixth_powers";
}

}  // namespace kaleido
