#include "golodlab/groebner.hpp"

#include <algorithm>
#include <map>

namespace golodlab {

namespace {

template <class F>
Poly<F> reduce_full(const Poly<F>& p, const std::vector<Poly<F>>& basis) {
  const F& k = p.field();
  Poly<F> rest = p;
  std::vector<typename Poly<F>::Term> done;
  while (!rest.is_zero()) {
    const Monomial& lm = rest.leading_monomial();
    const Poly<F>* divisor = nullptr;
    for (const auto& g : basis) {
      if (mono_divides(g.leading_monomial(), lm)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      done.push_back(rest.terms().front());
      rest = rest.tail();
      continue;
    }
    typename F::Elem c = k.neg(k.mul(rest.leading_coeff(), k.inv(divisor->leading_coeff())));
    Monomial q = mono_div(lm, divisor->leading_monomial());
    rest = rest.add_mul_term(c, q, *divisor);
  }
  return Poly<F>::from_terms(p.ring(), std::move(done));
}

}  // namespace

template <class F>
Poly<F> s_polynomial(const Poly<F>& f, const Poly<F>& g) {
  const F& k = f.field();
  Monomial l = mono_lcm(f.leading_monomial(), g.leading_monomial());
  Poly<F> a = f.mul_term(mono_div(l, f.leading_monomial()), k.inv(f.leading_coeff()));
  return a.add_mul_term(k.neg(k.inv(g.leading_coeff())), mono_div(l, g.leading_monomial()), g);
}

template <class F>
GroebnerBasis<F>::GroebnerBasis(const HomogeneousIdeal<F>& ideal) : ring_(ideal.ring()) {
  // pending work keyed by degree: input generators and S-pairs
  std::map<std::int64_t, std::vector<Poly<F>>> inputs;
  for (std::size_t i = 0; i < ideal.generators().size(); ++i) {
    inputs[ideal.degrees()[i]].push_back(ideal.generators()[i]);
  }
  std::map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> pairs;
  std::vector<Poly<F>> g;

  auto add_element = [&](Poly<F> p) {
    p = p.monic();
    std::size_t j = g.size();
    for (std::size_t i = 0; i < j; ++i) {
      if (mono_coprime(g[i].leading_monomial(), p.leading_monomial())) continue;
      std::int64_t d = ring_->degree(mono_lcm(g[i].leading_monomial(), p.leading_monomial()));
      pairs[d].emplace_back(i, j);
    }
    g.push_back(std::move(p));
  };

  while (!inputs.empty() || !pairs.empty()) {
    std::int64_t d_in = inputs.empty() ? INT64_MAX : inputs.begin()->first;
    std::int64_t d_pair = pairs.empty() ? INT64_MAX : pairs.begin()->first;
    std::int64_t d = std::min(d_in, d_pair);
    std::vector<Poly<F>> todo;
    if (d_pair == d) {
      for (auto [i, j] : pairs.begin()->second) todo.push_back(s_polynomial(g[i], g[j]));
      pairs.erase(pairs.begin());
    }
    if (d_in == d) {
      for (auto& p : inputs.begin()->second) todo.push_back(std::move(p));
      inputs.erase(inputs.begin());
    }
    for (const auto& p : todo) {
      Poly<F> r = reduce_full(p, g);
      if (!r.is_zero()) add_element(std::move(r));
    }
  }

  // minimalize then tail-reduce
  std::vector<Poly<F>> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = g[j].leading_monomial();
      const Monomial& b = g[i].leading_monomial();
      if (mono_divides(a, b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Poly<F>& a, const Poly<F>& b) {
    return ring_->compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly<F>> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    Poly<F> lead = Poly<F>::monomial(ring_, minimal[i].leading_monomial(), minimal[i].leading_coeff());
    basis_.push_back((lead + reduce_full(minimal[i].tail(), others)).monic());
  }
  for (const auto& b : basis_) leads_.push_back(b.leading_monomial());
}

template <class F>
Poly<F> GroebnerBasis<F>::normal_form(const Poly<F>& p) const {
  return reduce_full(p, basis_);
}

template <class F>
bool GroebnerBasis<F>::is_unit() const {
  for (const auto& m : leads_) {
    if (ring_->degree(m) == 0) return true;
  }
  return false;
}

template <class F>
bool GroebnerBasis<F>::is_standard(const Monomial& m) const {
  for (const auto& l : leads_) {
    if (mono_divides(l, m)) return false;
  }
  return true;
}

template <class F>
std::vector<Monomial> GroebnerBasis<F>::standard_monomials(std::int64_t d) const {
  std::vector<Monomial> out;
  for (auto& m : monomials_of_degree(ring_->weights(), d)) {
    if (is_standard(m)) out.push_back(std::move(m));
  }
  return out;
}

template <class F>
std::optional<std::int64_t> GroebnerBasis<F>::top_degree() const {
  const std::size_t n = ring_->nvars();
  std::int64_t bound = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Exponent> pure;
    for (const auto& l : leads_) {
      bool is_pure = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && l[j] != 0) is_pure = false;
      }
      if (is_pure && l[i] > 0 && (!pure || l[i] < *pure)) pure = l[i];
    }
    if (!pure) return std::nullopt;
    bound += static_cast<std::int64_t>(*pure - 1) * ring_->weights()[i];
  }
  if (is_unit()) return std::nullopt;
  for (std::int64_t d = bound; d >= 0; --d) {
    if (!standard_monomials(d).empty()) return d;
  }
  return std::nullopt;
}

template <class F>
std::int64_t GroebnerBasis<F>::lcm_degree() const {
  if (leads_.empty()) return 0;
  Monomial l = leads_.front();
  for (const auto& m : leads_) l = mono_lcm(l, m);
  return ring_->degree(l);
}

template <class F>
bool GroebnerBasis<F>::satisfies_buchberger_criterion() const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      if (!normal_form(s_polynomial(basis_[i], basis_[j])).is_zero()) return false;
    }
  }
  return true;
}

template class GroebnerBasis<Rationals>;
template class GroebnerBasis<PrimeField>;
template Poly<Rationals> s_polynomial(const Poly<Rationals>&, const Poly<Rationals>&);
template Poly<PrimeField> s_polynomial(const Poly<PrimeField>&, const Poly<PrimeField>&);

}  // namespace golodlab
