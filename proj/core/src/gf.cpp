#include "tsort/gf.hpp"

#include <atomic>
#include <string>
#include <utility>

#include "tsort/error.hpp"

namespace tsort {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;
constexpr std::uint32_t kTableOrder = 256;

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, low first

std::atomic<std::uint32_t> next_tag{1};

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2) mod p.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  trim(r);
  return r;
}

// Quotient and remainder of a / b; b must be non-zero and trimmed.
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  if (a.size() < b.size()) return {{}, a};
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const std::uint32_t coef = static_cast<std::uint32_t>(std::uint64_t{a[i]} * lead_inv % p);
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t sub = std::uint64_t{coef} * b[j] % p;
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - sub) % p);
    }
    if (i == 0) break;
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly digits(std::uint32_t code, std::uint32_t p, std::uint32_t len) {
  Poly d(len, 0);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t encode(const Poly& a, std::uint32_t p) {
  std::uint32_t rep = 0;
  for (std::size_t i = a.size(); i-- > 0;) rep = rep * p + a[i];
  return rep;
}

std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    r *= b;
    if (r > kMaxOrder) return kMaxOrder + 1;
  }
  return static_cast<std::uint32_t>(r);
}

// No monic factor of degree 1..m/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
  const auto m = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= m / 2; ++d) {
    const std::uint32_t count = ipow(p, d);
    for (std::uint32_t code = 0; code < count; ++code) {
      Poly g = digits(code, p, d);
      g.push_back(1);
      if (poly_divmod(f, g, p).second.empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;  // q itself is prime
  std::uint32_t m = 0;
  while (q % p == 0) {
    q /= p;
    ++m;
  }
  if (q != 1) return std::nullopt;
  return PrimePower{static_cast<std::uint32_t>(p), m};
}

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t m) : p_(p), m_(m) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_input, std::to_string(p) + " is not prime");
  if (m == 0) throw Error(ErrorCode::invalid_input, "field degree must be >= 1");
  q_ = ipow(p, m);
  if (q_ > kMaxOrder) {
    throw Error(ErrorCode::unsupported_size, "GF(" + std::to_string(p) + "^" + std::to_string(m) +
                                                 ") exceeds the 2^16 size cap");
  }
  tag_ = next_tag.fetch_add(1, std::memory_order_relaxed);

  for (std::uint32_t code = 0; code < q_; ++code) {
    Poly f = digits(code, p, m);
    f.push_back(1);
    if (is_irreducible(f, p)) {
      modulus_ = std::move(f);
      break;
    }
  }

  if (q_ <= kTableOrder) {
    std::vector<std::uint16_t> add(std::size_t{q_} * q_), mul(std::size_t{q_} * q_), inv(q_, 0);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        add[std::size_t{a} * q_ + b] = static_cast<std::uint16_t>(add_rep(a, b));
        const auto prod = static_cast<std::uint16_t>(mul_rep(a, b));
        mul[std::size_t{a} * q_ + b] = prod;
        if (prod == 1) inv[a] = static_cast<std::uint16_t>(b);
      }
    }
    add_table_ = std::move(add);
    mul_table_ = std::move(mul);
    inv_table_ = std::move(inv);
  }
}

void FieldSpec::check(FieldElem e) const {
  if (e.field != tag_) throw Error(ErrorCode::invalid_input, "element belongs to a different field");
  if (e.rep >= q_) throw Error(ErrorCode::invalid_input, "element representation out of range");
}

FieldElem FieldSpec::phi(std::uint32_t index) const {
  if (index >= q_) {
    throw Error(ErrorCode::invalid_input,
                "index " + std::to_string(index) + " outside [0, " + std::to_string(q_) + ")");
  }
  return {index, tag_};
}

std::uint32_t FieldSpec::phi_inv(FieldElem e) const {
  check(e);
  return e.rep;
}

std::vector<std::uint32_t> FieldSpec::coefficients(FieldElem e) const {
  check(e);
  return digits(e.rep, p_, m_);
}

std::uint32_t FieldSpec::add_rep(std::uint32_t a, std::uint32_t b) const {
  if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
  if (p_ == 2) return a ^ b;
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

std::uint32_t FieldSpec::neg_rep(std::uint32_t a) const {
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < m_; ++i) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

std::uint32_t FieldSpec::mul_rep(std::uint32_t a, std::uint32_t b) const {
  if (!mul_table_.empty()) return mul_table_[std::size_t{a} * q_ + b];
  const Poly prod = poly_mul(digits(a, p_, m_), digits(b, p_, m_), p_);
  return encode(poly_divmod(prod, modulus_, p_).second, p_);
}

std::uint32_t FieldSpec::inv_rep(std::uint32_t a) const {
  if (!inv_table_.empty()) return inv_table_[a];
  // Extended Euclid: keep s with s * a == r (mod modulus).
  Poly r0 = modulus_, r1 = digits(a, p_, m_);
  trim(r1);
  Poly s0{}, s1{1};
  while (!r1.empty()) {
    auto [q, r2] = poly_divmod(r0, r1, p_);
    Poly s2 = poly_sub(s0, poly_mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a non-zero constant; normalise.
  const std::uint32_t c = inv_mod(r0.front(), p_);
  for (auto& coef : s0) coef = static_cast<std::uint32_t>(std::uint64_t{coef} * c % p_);
  return encode(poly_divmod(s0, modulus_, p_).second, p_);
}

FieldElem FieldSpec::add(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  return {add_rep(a.rep, b.rep), tag_};
}

FieldElem FieldSpec::neg(FieldElem a) const {
  check(a);
  return {neg_rep(a.rep), tag_};
}

FieldElem FieldSpec::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldSpec::mul(FieldElem a, FieldElem b) const {
  check(a);
  check(b);
  return {mul_rep(a.rep, b.rep), tag_};
}

FieldElem FieldSpec::inv(FieldElem a) const {
  check(a);
  if (a.rep == 0) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  return {inv_rep(a.rep), tag_};
}

FieldSpec make_field(std::uint32_t p, std::uint32_t m) { return FieldSpec(p, m); }

FieldSpec field_of_order(std::uint32_t q) {
  const auto pp = as_prime_power(q);
  if (!pp) throw Error(ErrorCode::invalid_input, std::to_string(q) + " is not a prime power");
  return FieldSpec(pp->p, pp->m);
}

}  // namespace tsort
