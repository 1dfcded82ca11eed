// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace blockset {

/// Field element code. The base-p digits of a code are the polynomial
/// coefficients (digit i is the coefficient of x^i), so 0 is zero and 1 is one.
using Element = std::uint32_t;

/// GF(q), q = p^e, with precomputed operation tables.
///
/// Orders up to 256 keep full addition and multiplication tables. Larger
/// orders (up to 2^16) keep a digit-wise addition path and log/antilog tables
/// built from the smallest primitive element, so memory stays O(q).
class Field {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;
  static constexpr std::uint32_t kFullTableLimit = 256;

  /// Builds GF(q) using the lexicographically smallest monic irreducible
  /// modulus (coefficients listed from the leading term down to the constant).
  static std::shared_ptr<const Field> make(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return e_; }

  /// Monic modulus, coefficient of x^i at position i (so back() == 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Element add(Element a, Element b) const noexcept {
    return full_ ? add_[a * q_ + b] : add_digits(a, b);
  }
  Element sub(Element a, Element b) const noexcept { return add(a, neg_[b]); }
  Element neg(Element a) const noexcept { return neg_[a]; }
  Element mul(Element a, Element b) const noexcept {
    if (full_) return mul_[a * q_ + b];
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  /// Throws DivisionByZero for a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t k) const noexcept;

  /// Human-readable modulus such as "x^2+x+1".
  std::string modulus_string() const;

  /// Exhaustive check of the field axioms on the tables; cost O(q^3).
  bool verify_axioms() const;

 private:
  Field() = default;
  Element add_digits(Element a, Element b) const noexcept;

  std::uint32_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
  bool full_ = false;
  std::vector<std::uint32_t> modulus_;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

namespace poly {

/// Polynomials over GF(p) as coefficient vectors, lowest degree first,
/// with no trailing zeros (the zero polynomial is empty).
using Poly = std::vector<std::uint32_t>;

Poly mul(const Poly& a, const Poly& b, std::uint32_t p);
Poly mod(Poly a, const Poly& m, std::uint32_t p);
bool is_irreducible(const Poly& f, std::uint32_t p);

}  // namespace poly

}  // namespace blockset
