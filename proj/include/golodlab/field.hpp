#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "golodlab/error.hpp"

namespace golodlab {

/// Exact rational numbers, always kept in lowest terms by GMP.
class Rationals {
 public:
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }
  Elem from_integer(const mpz_class& v) const { return Elem(v); }
  /// num/den; den must be nonzero.
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const;

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const;
  /// a += c * b
  void add_mul(Elem& a, const Elem& c, const Elem& b) const { a += c * b; }

  std::string to_string(const Elem& a) const { return a.get_str(); }
  unsigned long characteristic() const { return 0; }
  std::string name() const { return "q"; }

  bool operator==(const Rationals&) const = default;
};

/// Z/p for a prime p < 2^31, elements stored as residues in [0, p).
class PrimeField {
 public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t prime() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long v) const;
  Elem from_integer(const mpz_class& v) const;
  Elem from_fraction(const mpz_class& num, const mpz_class& den) const;

  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem mul(Elem a, Elem b) const {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(Elem a) const;
  void add_mul(Elem& a, Elem c, Elem b) const { a = add(a, mul(c, b)); }

  std::string to_string(Elem a) const { return std::to_string(a); }
  unsigned long characteristic() const { return p_; }
  std::string name() const { return "p:" + std::to_string(p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

enum class FieldKind { rationals, prime };

/// Runtime description of the coefficient field, as it appears in input files.
struct FieldSpec {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t prime = 0;

  /// Accepts "q" (or "Q", "QQ") and "p:PRIME".
  static FieldSpec parse(const std::string& text);
  std::string to_string() const;
  bool operator==(const FieldSpec&) const = default;
};

/// Calls fn(Rationals{}) or fn(PrimeField{p}); both calls must return the same type.
template <class Fn>
decltype(auto) dispatch_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldKind::rationals) return std::forward<Fn>(fn)(Rationals{});
  return std::forward<Fn>(fn)(PrimeField(spec.prime));
}

}  // namespace golodlab
