#pragma once

// Arithmetic in GF(p^m), q = p^m <= 2^16.
//
// An element is stored as the base-p number whose digits are its polynomial
// coefficients (digit i = coefficient of x^i). That encoding is also the
// index isomorphism phi: {0..q-1} -> GF(q) used by the shifted-matrix and
// plane constructions, so phi(i).rep == i.

#include <cstdint>
#include <optional>
#include <vector>

namespace tsort {

bool is_prime(std::uint64_t v) noexcept;

struct PrimePower {
  std::uint32_t p = 0;
  std::uint32_t m = 0;
};

/// (p, m) with q = p^m, or nullopt if q is not a prime power (1 is not).
std::optional<PrimePower> as_prime_power(std::uint64_t q) noexcept;

/// A field element. `field` tags the owning FieldSpec; arithmetic refuses
/// to mix elements of different fields.
struct FieldElem {
  std::uint32_t rep = 0;
  std::uint32_t field = 0;

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

class FieldSpec {
 public:
  /// Builds GF(p^m) with the lexicographically smallest monic irreducible
  /// modulus of degree m. Throws invalid_input if p is not prime or m == 0,
  /// unsupported_size if p^m > 2^16.
  FieldSpec(std::uint32_t p, std::uint32_t m);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t tag() const noexcept { return tag_; }

  /// Monic modulus, low coefficient first (size m + 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FieldElem zero() const noexcept { return {0, tag_}; }
  FieldElem one() const noexcept { return {1, tag_}; }

  /// phi: base-p digit encoding of index. Throws invalid_input if index >= q.
  FieldElem phi(std::uint32_t index) const;
  /// phi^-1. Throws invalid_input for a foreign or out-of-range element.
  std::uint32_t phi_inv(FieldElem e) const;

  /// Coefficient vector (length m, low coefficient first).
  std::vector<std::uint32_t> coefficients(FieldElem e) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  /// Throws division_by_zero for a == 0.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

 private:
  void check(FieldElem e) const;
  std::uint32_t add_rep(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_rep(std::uint32_t a) const;
  std::uint32_t mul_rep(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv_rep(std::uint32_t a) const;

  std::uint32_t p_ = 0;
  std::uint32_t m_ = 0;
  std::uint32_t q_ = 0;
  std::uint32_t tag_ = 0;
  std::vector<std::uint32_t> modulus_;
  // Full tables when q <= 256.
  std::vector<std::uint16_t> add_table_;
  std::vector<std::uint16_t> mul_table_;
  std::vector<std::uint16_t> inv_table_;
};

FieldSpec make_field(std::uint32_t p, std::uint32_t m);

/// Field of prime-power order q. Throws invalid_input if q is not one.
FieldSpec field_of_order(std::uint32_t q);

}  // namespace tsort
