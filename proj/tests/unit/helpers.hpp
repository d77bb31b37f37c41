#pragma once

#include <random>
#include <string>
#include <vector>

#include "golodlab/groebner.hpp"
#include "golodlab/poly.hpp"

namespace testing_helpers {

using golodlab::PrimeField;
using golodlab::Rationals;

template <class F = Rationals>
golodlab::RingPtr<F> ring(std::vector<std::string> names, std::vector<int> weights = {}, F field = F{}) {
  if (weights.empty()) weights.assign(names.size(), 1);
  return golodlab::make_ring<F>(field, std::move(names), std::move(weights));
}

inline golodlab::RingPtr<PrimeField> ring_p(std::uint32_t p, std::vector<std::string> names,
                                            std::vector<int> weights = {}) {
  return ring<PrimeField>(std::move(names), std::move(weights), PrimeField(p));
}

template <class F>
golodlab::Poly<F> P(const golodlab::RingPtr<F>& r, const std::string& s) {
  return golodlab::parse_poly<F>(s, r);
}

template <class F>
golodlab::HomogeneousIdeal<F> ideal(const golodlab::RingPtr<F>& r, const std::vector<std::string>& gens) {
  std::vector<golodlab::Poly<F>> ps;
  for (const auto& g : gens) ps.push_back(P(r, g));
  return golodlab::HomogeneousIdeal<F>(r, std::move(ps));
}

/// Random weighted-homogeneous polynomial of degree d with small integer coefficients.
template <class F>
golodlab::Poly<F> random_homogeneous(const golodlab::RingPtr<F>& r, std::int64_t d, std::mt19937& rng,
                                     int max_terms = 4) {
  auto monos = golodlab::monomials_of_degree(r->weights(), d);
  std::vector<typename golodlab::Poly<F>::Term> terms;
  if (monos.empty()) return golodlab::Poly<F>(r);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(monos.size()) - 1);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> count(1, max_terms);
  int n = count(rng);
  for (int i = 0; i < n; ++i) terms.emplace_back(monos[pick(rng)], r->field().from_int(coef(rng)));
  return golodlab::Poly<F>::from_terms(r, std::move(terms));
}

}  // namespace testing_helpers
