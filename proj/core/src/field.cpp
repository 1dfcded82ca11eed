// SPDX-License-Identifier: Apache-2.0
#include "blockset/field.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <string>

#include "blockset/error.hpp"

namespace blockset {

namespace poly {

namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_prime(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2) mod p.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t k = p - 2; k > 0; k >>= 1) {
    if (k & 1u) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

}  // namespace

Poly mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(out);
  return out;
}

Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod_prime(m.back(), p);
  while (a.size() >= m.size()) {
    const std::size_t shift = a.size() - m.size();
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return deg == 1;
  if (f[0] == 0) return false;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    Poly divisor(d + 1, 0);
    divisor[d] = 1;
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < d; ++i) combos *= p;
    for (std::uint64_t c = 0; c < combos; ++c) {
      std::uint64_t rest = c;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      if (mod(f, divisor, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace poly

namespace {

poly::Poly decode(Element c, std::uint32_t p, std::uint32_t e) {
  poly::Poly out(e, 0);
  for (std::uint32_t i = 0; i < e; ++i) {
    out[i] = c % p;
    c /= p;
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Element encode(const poly::Poly& a, std::uint32_t p) {
  Element c = 0;
  for (std::size_t i = a.size(); i-- > 0;) c = c * p + a[i];
  return c;
}

// Monic irreducible of degree e, smallest when read from the x^(e-1)
// coefficient down to the constant term.
poly::Poly canonical_modulus(std::uint32_t p, std::uint32_t e) {
  std::uint64_t combos = 1;
  for (std::uint32_t i = 0; i < e; ++i) combos *= p;
  poly::Poly f(e + 1, 0);
  f[e] = 1;
  for (std::uint64_t c = 0; c < combos; ++c) {
    // Most significant digit of c drives the x^(e-1) coefficient.
    std::uint64_t rest = c;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (poly::is_irreducible(f, p)) return f;
  }
  throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

}  // namespace

std::shared_ptr<const Field> Field::make(std::uint32_t q) {
  static std::mutex cache_mutex;
  static std::map<std::uint32_t, std::shared_ptr<const Field>> cache;
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(q); it != cache.end()) return it->second;
  }
  if (q > kMaxOrder) {
    throw Error(ErrorKind::TooLarge, "field order " + std::to_string(q) + " exceeds 2^16");
  }
  if (q < 2) {
    throw Error(ErrorKind::NotPrimePower, "field order " + std::to_string(q) + " is not a prime power");
  }
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t rest = q, e = 0;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) {
    throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " has at least two distinct prime factors");
  }

  std::shared_ptr<Field> f(new Field());
  f->q_ = q;
  f->p_ = p;
  f->e_ = e;
  f->full_ = q <= kFullTableLimit;
  f->modulus_ = canonical_modulus(p, e);

  auto slow_mul = [&](Element a, Element b) {
    return encode(poly::mod(poly::mul(decode(a, p, e), decode(b, p, e), p), f->modulus_, p), p);
  };

  f->neg_.resize(q);
  for (Element a = 0; a < q; ++a) {
    poly::Poly d = decode(a, p, e);
    for (auto& c : d) c = (p - c) % p;
    f->neg_[a] = encode(d, p);
  }

  f->inv_.assign(q, 0);
  if (f->full_) {
    f->add_.resize(std::size_t{q} * q);
    f->mul_.resize(std::size_t{q} * q);
    for (Element a = 0; a < q; ++a) {
      for (Element b = 0; b < q; ++b) {
        f->add_[a * q + b] = f->add_digits(a, b);
        f->mul_[a * q + b] = slow_mul(a, b);
      }
    }
    for (Element a = 1; a < q; ++a) {
      for (Element b = 1; b < q; ++b) {
        if (f->mul_[a * q + b] == 1) {
          f->inv_[a] = b;
          break;
        }
      }
    }
  } else {
    // Smallest element of multiplicative order q-1.
    std::vector<Element> powers;
    for (Element g = 2; g < q; ++g) {
      powers.assign(1, 1);
      Element x = g;
      while (x != 1) {
        powers.push_back(x);
        x = slow_mul(x, g);
      }
      if (powers.size() == q - 1) break;
    }
    f->exp_.resize(2 * std::size_t{q});
    f->log_.assign(q, 0);
    for (std::size_t k = 0; k < 2 * std::size_t{q}; ++k) f->exp_[k] = powers[k % (q - 1)];
    for (std::uint32_t k = 0; k < q - 1; ++k) f->log_[powers[k]] = k;
    for (Element a = 1; a < q; ++a) f->inv_[a] = powers[(q - 1 - f->log_[a]) % (q - 1)];
  }
  if (f->full_ && !f->verify_axioms()) {
    throw Error(ErrorKind::InvalidArgument, "operation tables for GF(" + std::to_string(q) + ") violate the field axioms");
  }
  std::lock_guard lock(cache_mutex);
  return cache.emplace(q, std::move(f)).first->second;
}

Element Field::add_digits(Element a, Element b) const noexcept {
  if (p_ == 2) return a ^ b;
  Element out = 0, scale = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

Element Field::inv(Element a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  return inv_[a];
}

Element Field::pow(Element a, std::uint64_t k) const noexcept {
  Element result = 1;
  while (k > 0) {
    if (k & 1u) result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

std::string Field::modulus_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    const auto c = modulus_[i];
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

bool Field::verify_axioms() const {
  for (Element a = 0; a < q_; ++a) {
    if (add(a, 0) != a || mul(a, 1) != a || add(a, neg(a)) != 0) return false;
    if (a != 0 && mul(a, inv_[a]) != 1) return false;
    for (Element b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) return false;
      for (Element c = 0; c < q_; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) return false;
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return false;
      }
    }
  }
  return true;
}

}  // namespace blockset
