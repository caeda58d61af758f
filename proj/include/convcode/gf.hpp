#pragma once

// Arithmetic over GF(p^m) in polynomial-coefficient representation.
//
// Elements of binary fields are bit-packed (coefficient i lives in bit i of
// the word array); elements of odd-characteristic fields keep one residue per
// word. Every element carries the field it belongs to, and mixing elements of
// different fields raises Errc::FieldMismatch.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace convcode::gf {

namespace detail {
struct FieldData;
}

class Element;

class Field {
 public:
  Field() = default;

  /// Builds GF(p^m). Without an explicit modulus the lexicographically first
  /// monic irreducible of degree m is used (lowest coefficient first, scanned
  /// in increasing canonical integer encoding).
  static Field make(std::uint32_t p, unsigned m,
                    std::optional<std::vector<std::uint32_t>> modulus = {});
  /// The field of order q, which must be a prime power.
  static Field with_order(const mpz_class& q);
  /// The field whose order is the smallest prime power >= n.
  static Field smallest_with_order_at_least(const mpz_class& n);

  bool valid() const noexcept { return d_ != nullptr; }
  std::uint32_t characteristic() const;
  unsigned degree() const;
  /// Coefficients of the modulus, lowest degree first, length m+1.
  const std::vector<std::uint32_t>& modulus() const;
  const mpz_class& order() const;
  /// Width in bytes of a serialized symbol: ceil(log2(q) / 8).
  std::size_t symbol_bytes() const;

  Element zero() const;
  Element one() const;
  /// Inverse of the canonical encoding sum coeffs[i] * p^i.
  Element from_integer(const mpz_class& value) const;
  Element from_u64(std::uint64_t value) const;
  Element from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// Smallest element (by canonical encoding) of multiplicative order q-1.
  /// Computed once per field and cached.
  Element primitive_element() const;
  /// Distinct prime factors of q-1, ascending.
  const std::vector<mpz_class>& order_minus_one_factors() const;
  /// Uniform element drawn from raw 64-bit outputs of rng (platform stable).
  Element random(std::mt19937_64& rng) const;

  std::string describe() const;

  friend bool operator==(const Field& a, const Field& b);

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  const detail::FieldData& data() const;

  std::shared_ptr<const detail::FieldData> d_;
  friend class Element;
  friend Element operator*(const Element& a, const Element& b);
};

class Element {
 public:
  Element() = default;

  const Field& field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  Element operator-() const;
  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Element& rhs);
  Element& operator/=(const Element& rhs);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator/(Element a, const Element& b) { return a /= b; }

  Element inv() const;
  /// Negative exponents are allowed for nonzero elements.
  Element pow(std::int64_t e) const;
  Element pow(const mpz_class& e) const;

  mpz_class to_integer() const;
  /// Canonical encoding as uint64; throws Errc::Format if it does not fit.
  std::uint64_t to_u64() const;
  std::vector<std::uint32_t> coeffs() const;
  std::string to_string() const;

  friend bool operator==(const Element& a, const Element& b);

 private:
  Element(Field f, std::vector<std::uint64_t> w)
      : field_(std::move(f)), w_(std::move(w)) {}
  void require_same_field(const Element& other) const;

  Field field_;
  std::vector<std::uint64_t> w_;
  friend class Field;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

/// Multiplicative order of a nonzero element (divisor of q-1).
mpz_class multiplicative_order(const Element& e);

}  // namespace convcode::gf
