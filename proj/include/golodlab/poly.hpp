#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "golodlab/field.hpp"

namespace golodlab {

using Exponent = std::int32_t;
using Monomial = std::vector<Exponent>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, requires a | b
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);
std::int64_t weighted_degree(const Monomial& m, const std::vector<int>& weights);

/// All monomials of weighted degree d, in descending weighted grevlex order.
std::vector<Monomial> monomials_of_degree(const std::vector<int>& weights, std::int64_t d);

/// Weighted grevlex: weighted degree first, ties broken by reverse lexicographic order
/// (smaller exponent in the last differing variable wins).
int grevlex_compare(const Monomial& a, const Monomial& b, const std::vector<int>& weights);

bool is_identifier(const std::string& s);

template <class F>
class PolyRing {
 public:
  using Elem = typename F::Elem;

  PolyRing(F field, std::vector<std::string> names, std::vector<int> weights);

  const F& field() const { return field_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }
  std::size_t nvars() const { return names_.size(); }
  std::optional<std::size_t> var_index(const std::string& name) const;
  int max_weight() const;

  std::int64_t degree(const Monomial& m) const { return weighted_degree(m, weights_); }
  int compare(const Monomial& a, const Monomial& b) const { return grevlex_compare(a, b, weights_); }
  std::string monomial_to_string(const Monomial& m) const;

  bool operator==(const PolyRing& o) const {
    return field_ == o.field_ && names_ == o.names_ && weights_ == o.weights_;
  }

 private:
  F field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

template <class F>
using RingPtr = std::shared_ptr<const PolyRing<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const PolyRing<F>>(std::move(field), std::move(names), std::move(weights));
}

struct DegreeInfo {
  enum class Kind { homogeneous, not_homogeneous, zero };
  Kind kind = Kind::zero;
  std::int64_t degree = 0;

  bool is_homogeneous() const { return kind == Kind::homogeneous; }
};

template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using Term = std::pair<Monomial, Elem>;

  explicit Poly(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr<F> ring, const Elem& c);
  static Poly variable(RingPtr<F> ring, std::size_t i);
  static Poly monomial(RingPtr<F> ring, Monomial m, const Elem& c);
  /// Sorts, merges equal monomials and drops zeros.
  static Poly from_terms(RingPtr<F> ring, std::vector<Term> terms);

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  /// Terms in strictly descending monomial order.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Monomial& leading_monomial() const { return terms_.front().first; }
  const Elem& leading_coeff() const { return terms_.front().second; }
  Elem coeff(const Monomial& m) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scale(const Elem& c) const;
  /// c * m * this
  Poly mul_term(const Monomial& m, const Elem& c) const;
  /// this + c * m * o
  Poly add_mul_term(const Elem& c, const Monomial& m, const Poly& o) const;
  Poly pow(std::uint32_t e) const;
  Poly monic() const;
  /// All terms but the leading one.
  Poly tail() const;

  DegreeInfo weighted_degree() const;
  Poly partial_derivative(std::size_t i) const;

  std::string to_string() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  void check_ring(const Poly& o) const;

  RingPtr<F> ring_;
  std::vector<Term> terms_;
};

/// Grammar: sums of products of factors; factors are integer literals, variables and
/// parenthesized expressions, optionally raised to a nonnegative integer power.
/// `a/b` with an integer literal b writes a rational coefficient. Implicit
/// multiplication is rejected. Whitespace is ignored.
template <class F>
Poly<F> parse_poly(const std::string& text, const RingPtr<F>& ring);

template <class F>
class HomogeneousIdeal {
 public:
  /// Drops zero generators; throws InputError on a non-homogeneous generator.
  HomogeneousIdeal(RingPtr<F> ring, std::vector<Poly<F>> generators);

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Poly<F>>& generators() const { return gens_; }
  const std::vector<std::int64_t>& degrees() const { return degrees_; }
  bool is_zero() const { return gens_.empty(); }
  /// True when some generator is a nonzero constant.
  bool has_unit_generator() const;

 private:
  RingPtr<F> ring_;
  std::vector<Poly<F>> gens_;
  std::vector<std::int64_t> degrees_;
};

/// Ideal generated by the partial derivatives of the listed generators.
template <class F>
HomogeneousIdeal<F> derivative_ideal(const HomogeneousIdeal<F>& ideal);

}  // namespace golodlab
