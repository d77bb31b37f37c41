#pragma once

#include <optional>
#include <vector>

#include "golodlab/poly.hpp"

namespace golodlab {

/// Reduced Gröbner basis of a homogeneous ideal for weighted grevlex.
template <class F>
class GroebnerBasis {
 public:
  /// Runs Buchberger degree by degree; deterministic for a fixed generator order.
  explicit GroebnerBasis(const HomogeneousIdeal<F>& ideal);

  const RingPtr<F>& ring() const { return ring_; }
  /// Monic, tail-reduced, sorted by ascending leading monomial.
  const std::vector<Poly<F>>& basis() const { return basis_; }
  const std::vector<Monomial>& leading_monomials() const { return leads_; }

  Poly<F> normal_form(const Poly<F>& p) const;
  bool contains(const Poly<F>& p) const { return normal_form(p).is_zero(); }
  bool is_unit() const;

  bool is_standard(const Monomial& m) const;
  /// Standard monomials of weighted degree d, in descending monomial order.
  std::vector<Monomial> standard_monomials(std::int64_t d) const;

  /// Largest degree with a standard monomial when the quotient is finite-dimensional.
  std::optional<std::int64_t> top_degree() const;
  /// Weighted degree of the lcm of all leading monomials (0 for the zero ideal).
  std::int64_t lcm_degree() const;

  /// Every S-polynomial reduces to zero.
  bool satisfies_buchberger_criterion() const;

 private:
  RingPtr<F> ring_;
  std::vector<Poly<F>> basis_;
  std::vector<Monomial> leads_;
};

template <class F>
GroebnerBasis<F> buchberger(const HomogeneousIdeal<F>& ideal) {
  return GroebnerBasis<F>(ideal);
}

template <class F>
bool ideal_contains(const Poly<F>& p, const HomogeneousIdeal<F>& ideal) {
  return GroebnerBasis<F>(ideal).contains(p);
}

template <class F>
Poly<F> s_polynomial(const Poly<F>& f, const Poly<F>& g);

}  // namespace golodlab
