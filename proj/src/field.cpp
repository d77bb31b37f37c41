#include "golodlab/field.hpp"

#include <cctype>

namespace golodlab {

Rationals::Elem Rationals::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw InputError("division by zero in coefficient");
  Elem r(num, den);
  r.canonicalize();
  return r;
}

Rationals::Elem Rationals::inv(const Elem& a) const {
  if (is_zero(a)) throw InternalError("inverse of zero");
  return Elem(1) / a;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31)) throw InputError("prime field characteristic must be below 2^31");
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
}

PrimeField::Elem PrimeField::from_int(long v) const {
  long r = v % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

PrimeField::Elem PrimeField::from_integer(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Elem>(r.get_ui());
}

PrimeField::Elem PrimeField::from_fraction(const mpz_class& num, const mpz_class& den) const {
  Elem d = from_integer(den);
  if (d == 0) throw InputError("coefficient denominator vanishes modulo " + std::to_string(p_));
  return mul(from_integer(num), inv(d));
}

PrimeField::Elem PrimeField::inv(Elem a) const {
  if (a == 0) throw InternalError("inverse of zero");
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

FieldSpec FieldSpec::parse(const std::string& text) {
  if (text == "q" || text == "Q" || text == "QQ") return FieldSpec{};
  if (text.size() > 2 && (text[0] == 'p' || text[0] == 'P') && text[1] == ':') {
    std::string digits = text.substr(2);
    if (digits.empty() || digits.size() > 10) throw InputError("bad field descriptor '" + text + "'");
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw InputError("bad field descriptor '" + text + "'");
      }
    }
    std::uint64_t p = std::stoull(digits);
    if (p >= (1ull << 31)) throw InputError("prime field characteristic must be below 2^31");
    if (!is_prime(p)) throw InputError(digits + " is not prime");
    return FieldSpec{FieldKind::prime, static_cast<std::uint32_t>(p)};
  }
  throw InputError("bad field descriptor '" + text + "' (expected q or p:PRIME)");
}

std::string FieldSpec::to_string() const {
  return kind == FieldKind::rationals ? "q" : "p:" + std::to_string(prime);
}

}  // namespace golodlab
