#include "golodlab/algebra.hpp"

#include <algorithm>

namespace golodlab {

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::quotient: return "quotient";
    case AlgebraKind::trivial_extension: return "trivial-extension";
    case AlgebraKind::fibre_product: return "fibre-product";
    case AlgebraKind::iterated_fibre: return "iterated-fibre";
    case AlgebraKind::quotient_of_algebra: return "quotient-of-algebra";
    case AlgebraKind::other: return "other";
  }
  return "other";
}

std::string to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::residue_field: return "residue-field";
    case ModuleKind::regular: return "regular";
    case ModuleKind::free: return "free";
    case ModuleKind::ideal: return "ideal";
    case ModuleKind::submodule: return "submodule";
    case ModuleKind::quotient: return "quotient";
    case ModuleKind::direct_sum: return "direct-sum";
    case ModuleKind::restricted: return "restricted";
  }
  return "module";
}

namespace {

template <class F>
std::string format_vector(const F& field, const std::vector<std::string>& labels, const SparseVector<F>& v) {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : v) {
    std::string cs = field.to_string(c);
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    const std::string& l = labels.at(i);
    if (l == "1") {
      s += cs;
    } else {
      s += cs == "1" ? l : cs + "*" + l;
    }
  }
  return s;
}

template <class F>
const SparseVector<F>& empty_vector() {
  static const SparseVector<F> v;
  return v;
}

template <class F>
SparseVector<F> slice(const SparseVector<F>& v, std::uint32_t begin, std::uint32_t end) {
  SparseVector<F> out;
  for (const auto& [i, c] : v) {
    if (i >= begin && i < end) out.push_back(i - begin, c);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- GradedAlgebra

template <class F>
GradedAlgebra<F>::GradedAlgebra(Data data, const ProductFn& product) : d_(std::move(data)) {
  const int cap = d_.cap;
  if (cap < 0 || d_.dims.size() != static_cast<std::size_t>(cap) + 1) {
    throw InternalError("algebra dimension list does not match its cap");
  }
  if (d_.dims[0] != 1) throw InternalError("algebra is not connected");
  if (d_.labels.size() != d_.dims.size()) {
    d_.labels.assign(d_.dims.size(), {});
    for (int d = 0; d <= cap; ++d) {
      for (std::size_t i = 0; i < d_.dims[d]; ++i) {
        d_.labels[d].push_back(d == 0 ? "1" : "b" + std::to_string(d) + "_" + std::to_string(i));
      }
    }
  }
  table_.resize(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    table_[d].resize(cap - d + 1);
    for (int e = 0; e <= cap - d; ++e) {
      auto& t = table_[d][e];
      const std::size_t nd = d_.dims[d], ne = d_.dims[e];
      t.resize(nd * ne);
      if (known_zero(d + e)) continue;
      for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j < ne; ++j) {
          if (d == 0) {
            t[i * ne + j] = SparseVector<F>::unit(static_cast<std::uint32_t>(j), d_.field);
          } else if (e == 0) {
            t[i * ne + j] = SparseVector<F>::unit(static_cast<std::uint32_t>(i), d_.field);
          } else if (e < d) {
            t[i * ne + j] = table_[e][d][j * nd + i];
          } else {
            t[i * ne + j] = product(d, i, e, j);
          }
        }
      }
    }
  }
}

template <class F>
std::size_t GradedAlgebra<F>::dim(int d) const {
  if (d < 0) return 0;
  if (d <= d_.cap) return d_.dims[d];
  if (known_zero(d)) return 0;
  throw CapError("algebra degree " + std::to_string(d) + " lies beyond the stored window (cap " +
                 std::to_string(d_.cap) + ")");
}

template <class F>
std::size_t GradedAlgebra<F>::total_dim() const {
  std::size_t n = 0;
  for (auto x : d_.dims) n += x;
  return n;
}

template <class F>
std::string GradedAlgebra<F>::format(int d, const SparseVector<F>& v) const {
  if (d > d_.cap) return v.empty() ? "0" : "?";
  return format_vector(d_.field, d_.labels[d], v);
}

template <class F>
const SparseVector<F>& GradedAlgebra<F>::basis_product(int d, std::size_t i, int e, std::size_t j) const {
  if (d + e <= d_.cap) return table_[d][e].at(i * d_.dims[e] + j);
  if (known_zero(d + e)) return empty_vector<F>();
  throw CapError("product lands in degree " + std::to_string(d + e) + " beyond the stored window (cap " +
                 std::to_string(d_.cap) + ")");
}

template <class F>
SparseVector<F> GradedAlgebra<F>::mul_basis(int d, std::size_t i, int e, const SparseVector<F>& b) const {
  if (known_zero(d + e) || b.empty()) return {};
  VectorBuilder<F> acc(d_.field);
  for (const auto& [j, c] : b) acc.add_scaled(c, basis_product(d, i, e, j));
  return acc.build();
}

template <class F>
SparseVector<F> GradedAlgebra<F>::mul(int d, const SparseVector<F>& a, int e, const SparseVector<F>& b) const {
  if (known_zero(d + e) || a.empty() || b.empty()) return {};
  VectorBuilder<F> acc(d_.field);
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) acc.add_scaled(d_.field.mul(x, y), basis_product(d, i, e, j));
  }
  return acc.build();
}

// ---------------------------------------------------------------- AlgebraMap

template <class F>
SparseVector<F> AlgebraMap<F>::apply(int d, const SparseVector<F>& v) const {
  if (v.empty()) return {};
  if (d > max_degree()) {
    if (source->known_zero(d)) return {};
    throw CapError("map is not stored in degree " + std::to_string(d));
  }
  VectorBuilder<F> acc(source->field());
  for (const auto& [i, c] : v) acc.add_scaled(c, images[d].at(i));
  return acc.build();
}

template <class F>
bool AlgebraMap<F>::is_surjective_through(int through) const {
  for (int d = 0; d <= through; ++d) {
    std::size_t target_dim = target->dim(d);
    if (target_dim == 0) continue;
    if (d > max_degree()) {
      if (source->known_zero(d)) return false;
      throw CapError("map is not stored in degree " + std::to_string(d));
    }
    if (rank_of(source->field(), target_dim, images[d]) != target_dim) return false;
  }
  return true;
}

namespace {

/// Surjective in every degree, as far as can be decided from stored data.
template <class F>
bool surjective_everywhere(const AlgebraMap<F>& f) {
  auto top = f.target->top_degree();
  if (!top || *top > f.max_degree()) return false;
  return f.is_surjective_through(*top);
}

}  // namespace

// ---------------------------------------------------------------- GradedModule

template <class F>
GradedModule<F>::GradedModule(Data data, const ActionFn& action) : d_(std::move(data)) {
  const int cap = d_.cap;
  if (cap < 0 || d_.dims.size() != static_cast<std::size_t>(cap) + 1) {
    throw InternalError("module dimension list does not match its cap");
  }
  if (d_.labels.size() != d_.dims.size()) {
    d_.labels.assign(d_.dims.size(), {});
    for (int d = 0; d <= cap; ++d) {
      for (std::size_t i = 0; i < d_.dims[d]; ++i) {
        d_.labels[d].push_back("u" + std::to_string(d) + "_" + std::to_string(i));
      }
    }
  }
  const auto& a = *d_.algebra;
  table_.resize(cap + 1);
  for (int e = 0; e <= cap; ++e) {
    table_[e].resize(cap - e + 1);
    for (int d = 0; d <= cap - e; ++d) {
      const std::size_t nd = d_.dims[d];
      if (nd == 0 || known_zero(d + e) || a.known_zero(e)) continue;
      const std::size_t ne = a.dim(e);
      auto& t = table_[e][d];
      t.resize(ne * nd);
      for (std::size_t i = 0; i < ne; ++i) {
        for (std::size_t m = 0; m < nd; ++m) {
          t[i * nd + m] = e == 0 ? SparseVector<F>::unit(static_cast<std::uint32_t>(m), a.field()) : action(e, i, d, m);
        }
      }
    }
  }
}

template <class F>
std::size_t GradedModule<F>::dim(int d) const {
  if (d < 0) return 0;
  if (d <= d_.cap) return d_.dims[d];
  if (known_zero(d)) return 0;
  throw CapError("module degree " + std::to_string(d) + " lies beyond the stored window (cap " +
                 std::to_string(d_.cap) + ")");
}

template <class F>
std::string GradedModule<F>::format(int d, const SparseVector<F>& v) const {
  if (d > d_.cap) return v.empty() ? "0" : "?";
  return format_vector(field(), d_.labels[d], v);
}

template <class F>
const SparseVector<F>& GradedModule<F>::basis_action(int e, std::size_t a, int d, std::size_t m) const {
  if (known_zero(d + e) || d_.algebra->known_zero(e)) return empty_vector<F>();
  if (d + e <= d_.cap) {
    const auto& t = table_[e][d];
    return t.at(a * d_.dims[d] + m);
  }
  throw CapError("module action lands in degree " + std::to_string(d + e) + " beyond the stored window (cap " +
                 std::to_string(d_.cap) + ")");
}

template <class F>
SparseVector<F> GradedModule<F>::act_basis(int e, std::size_t a, int d, const SparseVector<F>& m) const {
  if (m.empty() || known_zero(d + e)) return {};
  VectorBuilder<F> acc(field());
  for (const auto& [j, c] : m) acc.add_scaled(c, basis_action(e, a, d, j));
  return acc.build();
}

template <class F>
SparseVector<F> GradedModule<F>::act(int e, const SparseVector<F>& a, int d, const SparseVector<F>& m) const {
  if (m.empty() || a.empty() || known_zero(d + e)) return {};
  VectorBuilder<F> acc(field());
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : m) acc.add_scaled(field().mul(x, y), basis_action(e, i, d, j));
  }
  return acc.build();
}

// ---------------------------------------------------------------- quotient rings

template <class F>
SparseVector<F> QuotientPresentation<F>::to_vector(const Poly<F>& p, int d) const {
  Poly<F> nf = gb->normal_form(p);
  std::vector<typename SparseVector<F>::Entry> entries;
  for (const auto& [m, c] : nf.terms()) {
    if (ring->degree(m) != d) throw InternalError("element is not homogeneous of the expected degree");
    if (d >= static_cast<int>(index.size())) throw CapError("degree beyond the stored window");
    entries.emplace_back(index[d].at(m), c);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return SparseVector<F>(std::move(entries));
}

template <class F>
Poly<F> QuotientPresentation<F>::to_poly(int d, const SparseVector<F>& v) const {
  std::vector<typename Poly<F>::Term> terms;
  for (const auto& [i, c] : v) terms.emplace_back(monomials.at(d).at(i), c);
  return Poly<F>::from_terms(ring, std::move(terms));
}

template <class F>
AlgebraPtr<F> quotient_algebra(const HomogeneousIdeal<F>& ideal, int cap) {
  const auto& ring = ideal.ring();
  int w = ring->max_weight();
  if (cap < 2 * w) {
    throw InputError("degree cap " + std::to_string(cap) + " is below twice the largest variable weight (" +
                     std::to_string(2 * w) + ")");
  }
  auto pres = std::make_shared<QuotientPresentation<F>>();
  pres->ring = ring;
  pres->ideal = std::make_shared<const HomogeneousIdeal<F>>(ideal);
  pres->gb = std::make_shared<const GroebnerBasis<F>>(ideal);
  if (pres->gb->is_unit()) throw InputError("the ideal is the unit ideal");

  typename GradedAlgebra<F>::Data data{ring->field()};
  data.cap = cap;
  data.top = pres->gb->top_degree();
  data.gen_bound = w;
  data.kind = AlgebraKind::quotient;
  for (int d = 0; d <= cap; ++d) {
    pres->monomials.push_back(pres->gb->standard_monomials(d));
    std::map<Monomial, std::uint32_t> idx;
    std::vector<std::string> labels;
    for (std::uint32_t i = 0; i < pres->monomials[d].size(); ++i) {
      idx.emplace(pres->monomials[d][i], i);
      labels.push_back(ring->monomial_to_string(pres->monomials[d][i]));
    }
    pres->index.push_back(std::move(idx));
    data.dims.push_back(pres->monomials[d].size());
    data.labels.push_back(std::move(labels));
  }
  data.presentation = pres;

  std::map<Monomial, SparseVector<F>> cache;
  auto product = [&](int d, std::size_t i, int e, std::size_t j) {
    Monomial m = mono_mul(pres->monomials[d][i], pres->monomials[e][j]);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    SparseVector<F> v;
    if (pres->gb->is_standard(m)) {
      v = SparseVector<F>::unit(pres->index[d + e].at(m), ring->field());
    } else {
      v = pres->to_vector(Poly<F>::monomial(ring, m, ring->field().one()), d + e);
    }
    cache.emplace(std::move(m), v);
    return v;
  };
  return std::make_shared<const GradedAlgebra<F>>(std::move(data), product);
}

template <class F>
AlgebraMap<F> identity_map(const AlgebraPtr<F>& a) {
  AlgebraMap<F> f{a, a, {}};
  for (int d = 0; d <= a->cap(); ++d) {
    std::vector<SparseVector<F>> col;
    for (std::size_t i = 0; i < a->dim(d); ++i) col.push_back(SparseVector<F>::unit(static_cast<std::uint32_t>(i), a->field()));
    f.images.push_back(std::move(col));
  }
  return f;
}

template <class F>
AlgebraMap<F> quotient_surjection(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b) {
  const auto* pa = a->presentation();
  const auto* pb = b->presentation();
  if (pa == nullptr || pb == nullptr) throw InputError("natural surjection needs two quotient rings");
  if (!(*pa->ring == *pb->ring)) throw InputError("quotient rings live over different polynomial rings");
  for (const auto& g : pa->ideal->generators()) {
    if (!pb->gb->contains(g)) throw InputError("target ideal does not contain '" + g.to_string() + "'");
  }
  AlgebraMap<F> f{a, b, {}};
  const int through = b->is_finite() ? a->cap() : std::min(a->cap(), b->cap());
  for (int d = 0; d <= through; ++d) {
    std::vector<SparseVector<F>> col;
    for (std::size_t i = 0; i < a->dim(d); ++i) {
      if (b->known_zero(d)) {
        col.emplace_back();
      } else {
        auto m = Poly<F>::monomial(pa->ring, pa->monomials[d][i], a->field().one());
        col.push_back(pb->to_vector(m, d));
      }
    }
    f.images.push_back(std::move(col));
  }
  return f;
}

// ---------------------------------------------------------------- trivial extension

template <class F>
TrivialExtension<F> trivial_extension(const AlgebraPtr<F>& r, const ModulePtr<F>& m) {
  if (m->algebra() != r) throw InputError("trivial extension: module is over a different algebra");
  if (m->dim(0) != 0) {
    throw InputError("trivial extension: module has a degree-0 generator, the result would not be connected graded");
  }
  const int cap = std::min(r->cap(), m->cap());
  typename GradedAlgebra<F>::Data data{r->field()};
  data.cap = cap;
  if (r->top_degree() && m->top_degree()) data.top = std::max(*r->top_degree(), *m->top_degree());
  if (r->gen_degree_bound() && m->gen_degree_bound()) {
    data.gen_bound = std::max(*r->gen_degree_bound(), *m->gen_degree_bound());
  }
  data.kind = AlgebraKind::trivial_extension;
  for (int d = 0; d <= cap; ++d) {
    data.dims.push_back(r->dim(d) + m->dim(d));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < r->dim(d); ++i) labels.push_back(r->label(d, i));
    for (std::size_t i = 0; i < m->dim(d); ++i) labels.push_back("[" + m->label(d, i) + "]");
    data.labels.push_back(std::move(labels));
  }
  auto product = [&](int d, std::size_t i, int e, std::size_t j) -> SparseVector<F> {
    const std::size_t rd = r->dim(d), re = r->dim(e);
    const auto shift = static_cast<std::uint32_t>(r->dim(d + e));
    if (i < rd && j < re) return r->basis_product(d, i, e, j);
    if (i < rd) return shift_indices(m->basis_action(d, i, e, j - re), shift);
    if (j < re) return shift_indices(m->basis_action(e, j, d, i - rd), shift);
    return {};
  };
  TrivialExtension<F> out;
  out.algebra = std::make_shared<const GradedAlgebra<F>>(std::move(data), product);
  out.inclusion = AlgebraMap<F>{r, out.algebra, {}};
  out.projection = AlgebraMap<F>{out.algebra, r, {}};
  for (int d = 0; d <= cap; ++d) {
    std::vector<SparseVector<F>> jd, pd;
    for (std::size_t i = 0; i < r->dim(d); ++i) {
      jd.push_back(SparseVector<F>::unit(static_cast<std::uint32_t>(i), r->field()));
      pd.push_back(SparseVector<F>::unit(static_cast<std::uint32_t>(i), r->field()));
    }
    for (std::size_t i = 0; i < m->dim(d); ++i) pd.emplace_back();
    out.inclusion.images.push_back(std::move(jd));
    out.projection.images.push_back(std::move(pd));
  }
  return out;
}

// ---------------------------------------------------------------- quotients of algebras

template <class F>
AlgebraQuotient<F> quotient_by_ideal(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& gens) {
  for (const auto& g : gens) {
    if (g.degree <= 0 && !g.vec.empty()) throw InputError("ideal generators must have positive degree");
  }
  auto reg = regular_module(r);
  std::vector<Subspace<F>> spans = submodule_spans(*reg, gens);
  typename GradedAlgebra<F>::Data data{r->field()};
  data.cap = r->cap();
  data.top = r->top_degree();
  data.gen_bound = r->gen_degree_bound();
  data.kind = AlgebraKind::quotient_of_algebra;
  for (int d = 0; d <= r->cap(); ++d) {
    data.dims.push_back(spans[d].complement().size());
    std::vector<std::string> labels;
    for (auto c : spans[d].complement()) labels.push_back(r->label(d, c));
    data.labels.push_back(std::move(labels));
  }
  auto product = [&](int d, std::size_t i, int e, std::size_t j) {
    auto v = r->basis_product(d, spans[d].complement()[i], e, spans[e].complement()[j]);
    return spans[d + e].quotient_coordinates(v);
  };
  AlgebraQuotient<F> out;
  out.algebra = std::make_shared<const GradedAlgebra<F>>(std::move(data), product);
  out.projection = AlgebraMap<F>{r, out.algebra, {}};
  for (int d = 0; d <= r->cap(); ++d) {
    std::vector<SparseVector<F>> col;
    for (std::size_t i = 0; i < r->dim(d); ++i) {
      col.push_back(spans[d].quotient_coordinates(SparseVector<F>::unit(static_cast<std::uint32_t>(i), r->field())));
    }
    out.projection.images.push_back(std::move(col));
  }
  out.ideal = std::move(spans);
  return out;
}

// ---------------------------------------------------------------- fibre products

namespace {

/// Subalgebra of the product of the factors cut out degreewise by a linear constraint.
template <class F>
FibreProduct<F> kernel_subalgebra(
    const std::vector<AlgebraPtr<F>>& factors,
    const std::function<std::vector<SparseVector<F>>(int d, const std::vector<std::uint32_t>& offsets,
                                                     std::size_t& target_dim)>& constraint,
    AlgebraKind kind, std::optional<int> gen_bound) {
  const F& field = factors.front()->field();
  int cap = factors.front()->cap();
  std::optional<int> top = factors.front()->top_degree();
  for (const auto& f : factors) {
    cap = std::min(cap, f->cap());
    if (!f->top_degree()) top.reset();
    if (top && f->top_degree()) top = std::max(*top, *f->top_degree());
  }
  std::vector<std::vector<std::uint32_t>> offsets(cap + 1);
  std::vector<Subspace<F>> basis;
  for (int d = 0; d <= cap; ++d) {
    std::uint32_t off = 0;
    for (const auto& f : factors) {
      offsets[d].push_back(off);
      off += static_cast<std::uint32_t>(f->dim(d));
    }
    offsets[d].push_back(off);
    std::size_t target_dim = 0;
    auto images = constraint(d, offsets[d], target_dim);
    LinearMap<F> map(field, target_dim, images);
    basis.emplace_back(field, off, map.kernel());
  }
  if (basis[0].dim() != 1) throw InternalError("fibre product is not connected");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (!field.is_one(basis[0].basis()[0].at(field, offsets[0][k]))) {
      throw InternalError("fibre product degree-0 basis is not the unit");
    }
  }
  auto component = [&](int d, const SparseVector<F>& v, std::size_t k) {
    return slice(v, offsets[d][k], offsets[d][k + 1]);
  };

  typename GradedAlgebra<F>::Data data{field};
  data.cap = cap;
  data.top = top;
  data.gen_bound = gen_bound;
  if (!data.gen_bound && top && *top <= cap) data.gen_bound = *top;
  data.kind = kind;
  for (int d = 0; d <= cap; ++d) {
    data.dims.push_back(basis[d].dim());
    std::vector<std::string> labels;
    for (const auto& v : basis[d].basis()) {
      std::string s = "(";
      for (std::size_t k = 0; k < factors.size(); ++k) {
        if (k > 0) s += ", ";
        s += factors[k]->format(d, component(d, v, k));
      }
      labels.push_back(s + ")");
    }
    data.labels.push_back(std::move(labels));
  }
  auto product = [&](int d, std::size_t i, int e, std::size_t j) -> SparseVector<F> {
    const auto& u = basis[d].basis()[i];
    const auto& v = basis[e].basis()[j];
    VectorBuilder<F> acc(field);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      acc.add_vector(factors[k]->mul(d, component(d, u, k), e, component(e, v, k)), offsets[d + e][k]);
    }
    return basis[d + e].coordinates(acc.build());
  };
  FibreProduct<F> out;
  out.algebra = std::make_shared<const GradedAlgebra<F>>(std::move(data), product);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    AlgebraMap<F> p{out.algebra, factors[k], {}};
    std::vector<Subspace<F>> kernels;
    for (int d = 0; d <= cap; ++d) {
      std::vector<SparseVector<F>> col;
      for (const auto& v : basis[d].basis()) col.push_back(component(d, v, k));
      LinearMap<F> map(field, factors[k]->dim(d), col);
      kernels.emplace_back(field, basis[d].dim(), map.kernel());
      p.images.push_back(std::move(col));
    }
    out.projections.push_back(std::move(p));
    out.kernel_of_projection.push_back(std::move(kernels));
  }
  bool same = std::all_of(factors.begin(), factors.end(), [&](const auto& f) { return f == factors.front(); });
  if (same) {
    AlgebraMap<F> diag{factors.front(), out.algebra, {}};
    for (int d = 0; d <= cap; ++d) {
      std::vector<SparseVector<F>> col;
      for (std::size_t i = 0; i < factors.front()->dim(d); ++i) {
        VectorBuilder<F> acc(field);
        for (std::size_t k = 0; k < factors.size(); ++k) acc.add(offsets[d][k] + static_cast<std::uint32_t>(i), field.one());
        auto v = acc.build();
        // the diagonal lies in the fibre product exactly when both structure maps agree
        if (!basis[d].contains(v)) {
          same = false;
          break;
        }
        col.push_back(basis[d].coordinates(v));
      }
      if (!same) break;
      diag.images.push_back(std::move(col));
    }
    if (same) out.diagonal = std::move(diag);
  }
  return out;
}

}  // namespace

template <class F>
FibreProduct<F> fibre_product(const AlgebraMap<F>& e1, const AlgebraMap<F>& e2) {
  if (e1.target != e2.target) throw InputError("fibre product: structure maps have different targets");
  int through = std::min({e1.source->cap(), e2.source->cap(), e1.max_degree(), e2.max_degree()});
  if (!e1.is_surjective_through(through) || !e2.is_surjective_through(through)) {
    throw InputError("fibre product: structure maps must be surjective");
  }
  const F& field = e1.source->field();
  std::vector<AlgebraPtr<F>> factors{e1.source, e2.source};
  auto constraint = [&](int d, const std::vector<std::uint32_t>&, std::size_t& target_dim) {
    target_dim = e1.target->dim(d);
    std::vector<SparseVector<F>> cols;
    for (const auto& v : e1.images.at(d)) cols.push_back(v);
    for (const auto& v : e2.images.at(d)) cols.push_back(scale(field, field.neg(field.one()), v));
    return cols;
  };
  std::optional<int> bound;
  return kernel_subalgebra<F>(factors, constraint, AlgebraKind::fibre_product, bound);
}

template <class F>
FibreProduct<F> iterated_fibre(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& ideal_gens, int n) {
  if (n < 2) throw InputError("iterated fibre product needs n >= 2 factors");
  auto q = quotient_by_ideal(r, ideal_gens);
  if (q.algebra->dim(0) != 1) throw InputError("iterated fibre product: the ideal must be proper");
  const F& field = r->field();
  std::vector<AlgebraPtr<F>> factors(n, r);
  auto constraint = [&](int d, const std::vector<std::uint32_t>&, std::size_t& target_dim) {
    const std::size_t qd = q.algebra->dim(d);
    target_dim = qd * static_cast<std::size_t>(n - 1);
    std::vector<SparseVector<F>> cols;
    for (int k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < r->dim(d); ++i) {
        const auto& img = q.projection.images[d][i];
        VectorBuilder<F> acc(field);
        if (k == 0) {
          for (int t = 0; t < n - 1; ++t) acc.add_vector(img, static_cast<std::uint32_t>(t * qd));
        } else {
          acc.add_scaled(field.neg(field.one()), img, static_cast<std::uint32_t>((k - 1) * qd));
        }
        cols.push_back(acc.build());
      }
    }
    return cols;
  };
  std::optional<int> bound = r->gen_degree_bound();
  if (bound) {
    for (const auto& g : ideal_gens) bound = std::max(*bound, g.degree);
  }
  return kernel_subalgebra<F>(factors, constraint, n == 2 ? AlgebraKind::fibre_product : AlgebraKind::iterated_fibre,
                              bound);
}

// ---------------------------------------------------------------- generators

template <class F>
std::vector<int> GeneratorData<F>::degrees() const {
  std::vector<int> out;
  for (const auto& g : generators) out.push_back(g.degree);
  return out;
}

template <class F>
GeneratorData<F> min_gens(const AlgebraPtr<F>& a) {
  GeneratorData<F> out;
  int through = a->cap();
  out.exact = false;
  if (a->gen_degree_bound() && *a->gen_degree_bound() <= a->cap()) {
    through = *a->gen_degree_bound();
    out.exact = true;
  } else if (a->is_finite()) {
    through = *a->top_degree();
    out.exact = true;
  }
  const F& field = a->field();
  for (int d = 1; d <= through; ++d) {
    Echelon<F> ech(field, a->dim(d));
    for (int e = 1; e < d; ++e) {
      for (std::size_t i = 0; i < a->dim(e); ++i) {
        for (std::size_t j = 0; j < a->dim(d - e); ++j) ech.insert(a->basis_product(e, i, d - e, j));
      }
    }
    for (std::size_t i = 0; i < a->dim(d); ++i) {
      auto v = SparseVector<F>::unit(static_cast<std::uint32_t>(i), field);
      if (ech.insert(v)) out.generators.push_back({d, v});
    }
  }
  return out;
}

template <class F>
GeneratorData<F> min_gens_module(const GradedModule<F>& m) {
  GeneratorData<F> out;
  int through = m.cap();
  out.exact = false;
  if (m.gen_degree_bound() && *m.gen_degree_bound() <= m.cap()) {
    through = *m.gen_degree_bound();
    out.exact = true;
  } else if (m.is_finite()) {
    through = *m.top_degree();
    out.exact = true;
  }
  const auto& a = *m.algebra();
  for (int d = 0; d <= through; ++d) {
    if (m.dim(d) == 0) continue;
    Echelon<F> ech(m.field(), m.dim(d));
    for (int e = 1; e <= d; ++e) {
      if (a.known_zero(e)) continue;
      for (std::size_t i = 0; i < a.dim(e); ++i) {
        for (std::size_t j = 0; j < m.dim(d - e); ++j) ech.insert(m.basis_action(e, i, d - e, j));
      }
    }
    for (std::size_t i = 0; i < m.dim(d); ++i) {
      auto v = SparseVector<F>::unit(static_cast<std::uint32_t>(i), m.field());
      if (ech.insert(v)) out.generators.push_back({d, v});
    }
  }
  return out;
}

// ---------------------------------------------------------------- modules

template <class F>
ModulePtr<F> residue_field(const AlgebraPtr<F>& a, int shift) {
  if (shift < 0) throw InputError("module degrees must be nonnegative");
  typename GradedModule<F>::Data data{a};
  data.cap = std::max(a->cap(), shift);
  data.top = shift;
  data.gen_bound = shift;
  data.kind = ModuleKind::residue_field;
  data.dims.assign(data.cap + 1, 0);
  data.dims[shift] = 1;
  data.labels.assign(data.cap + 1, {});
  data.labels[shift].push_back("1");
  auto action = [](int, std::size_t, int, std::size_t) { return SparseVector<F>(); };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
ModulePtr<F> regular_module(const AlgebraPtr<F>& a) {
  typename GradedModule<F>::Data data{a};
  data.cap = a->cap();
  data.top = a->top_degree();
  data.gen_bound = 0;
  data.kind = ModuleKind::regular;
  for (int d = 0; d <= a->cap(); ++d) {
    data.dims.push_back(a->dim(d));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < a->dim(d); ++i) labels.push_back(a->label(d, i));
    data.labels.push_back(std::move(labels));
  }
  auto action = [&](int e, std::size_t i, int d, std::size_t m) { return a->basis_product(e, i, d, m); };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
ModulePtr<F> free_module(const AlgebraPtr<F>& a, const std::vector<int>& degrees) {
  for (int g : degrees) {
    if (g < 0) throw InputError("module degrees must be nonnegative");
  }
  typename GradedModule<F>::Data data{a};
  data.cap = a->cap();
  data.kind = ModuleKind::free;
  int maxdeg = 0;
  for (int g : degrees) maxdeg = std::max(maxdeg, g);
  data.gen_bound = maxdeg;
  if (a->top_degree()) data.top = *a->top_degree() + maxdeg;
  // blocks[d] = (generator, offset) pairs
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> blocks(data.cap + 1);
  for (int d = 0; d <= data.cap; ++d) {
    std::uint32_t off = 0;
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      if (degrees[k] > d) continue;
      blocks[d].emplace_back(k, off);
      std::size_t n = a->dim(d - degrees[k]);
      for (std::size_t i = 0; i < n; ++i) {
        const std::string& l = a->label(d - degrees[k], i);
        std::string e = "e" + std::to_string(k + 1);
        labels.push_back(l == "1" ? e : l + "*" + e);
      }
      off += static_cast<std::uint32_t>(n);
    }
    data.dims.push_back(off);
    data.labels.push_back(std::move(labels));
  }
  auto action = [&](int e, std::size_t i, int d, std::size_t m) -> SparseVector<F> {
    for (std::size_t b = blocks[d].size(); b-- > 0;) {
      auto [k, off] = blocks[d][b];
      if (m < off) continue;
      int base = d - degrees[k];
      auto v = a->basis_product(e, i, base, m - off);
      for (const auto& [k2, off2] : blocks[d + e]) {
        if (k2 == k) return shift_indices(v, off2);
      }
      throw InternalError("free module block missing");
    }
    throw InternalError("free module index out of range");
  };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
std::vector<Subspace<F>> submodule_spans(const GradedModule<F>& m, const std::vector<Homogeneous<F>>& gens) {
  const auto& a = *m.algebra();
  std::vector<Subspace<F>> out;
  for (int d = 0; d <= m.cap(); ++d) {
    std::vector<SparseVector<F>> span;
    for (const auto& g : gens) {
      if (g.degree > d || g.vec.empty() || a.known_zero(d - g.degree)) continue;
      for (std::size_t i = 0; i < a.dim(d - g.degree); ++i) span.push_back(m.act_basis(d - g.degree, i, g.degree, g.vec));
    }
    out.emplace_back(m.field(), m.dim(d), span);
  }
  return out;
}

template <class F>
ModulePtr<F> submodule_from_spans(const ModulePtr<F>& m, std::vector<Subspace<F>> spans,
                                  std::optional<int> gen_bound, ModuleKind kind) {
  typename GradedModule<F>::Data data{m->algebra()};
  data.cap = m->cap();
  data.top = m->top_degree();
  data.gen_bound = gen_bound;
  data.kind = kind;
  for (int d = 0; d <= m->cap(); ++d) {
    data.dims.push_back(spans[d].dim());
    std::vector<std::string> labels;
    for (const auto& v : spans[d].basis()) labels.push_back(m->format(d, v));
    data.labels.push_back(std::move(labels));
  }
  auto action = [&](int e, std::size_t i, int d, std::size_t j) {
    auto w = m->act_basis(e, i, d, spans[d].basis()[j]);
    return spans[d + e].coordinates(w);
  };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
ModulePtr<F> submodule(const ModulePtr<F>& m, const std::vector<Homogeneous<F>>& gens, ModuleKind kind) {
  int bound = 0;
  for (const auto& g : gens) {
    if (!g.vec.empty()) bound = std::max(bound, g.degree);
  }
  return submodule_from_spans(m, submodule_spans(*m, gens), bound, kind);
}

template <class F>
ModulePtr<F> quotient_module(const ModulePtr<F>& m, const std::vector<Homogeneous<F>>& gens, ModuleKind kind) {
  auto spans = submodule_spans(*m, gens);
  typename GradedModule<F>::Data data{m->algebra()};
  data.cap = m->cap();
  data.top = m->top_degree();
  data.gen_bound = m->gen_degree_bound();
  data.kind = kind;
  for (int d = 0; d <= m->cap(); ++d) {
    data.dims.push_back(spans[d].complement().size());
    std::vector<std::string> labels;
    for (auto c : spans[d].complement()) labels.push_back(m->label(d, c));
    data.labels.push_back(std::move(labels));
  }
  auto action = [&](int e, std::size_t i, int d, std::size_t j) {
    auto lift = SparseVector<F>::unit(spans[d].complement()[j], m->field());
    return spans[d + e].quotient_coordinates(m->act_basis(e, i, d, lift));
  };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
ModulePtr<F> ideal_as_module(const AlgebraPtr<F>& a, const std::vector<Homogeneous<F>>& gens) {
  return submodule(regular_module(a), gens, ModuleKind::ideal);
}

template <class F>
ModulePtr<F> cokernel_module(const AlgebraPtr<F>& a, const std::vector<int>& degrees,
                             const std::vector<Homogeneous<F>>& relations) {
  return quotient_module(free_module(a, degrees), relations, ModuleKind::quotient);
}

template <class F>
ModulePtr<F> direct_sum(const ModulePtr<F>& m, const ModulePtr<F>& n) {
  if (m->algebra() != n->algebra()) throw InputError("direct sum of modules over different algebras");
  typename GradedModule<F>::Data data{m->algebra()};
  data.cap = std::min(m->cap(), n->cap());
  if (m->top_degree() && n->top_degree()) data.top = std::max(*m->top_degree(), *n->top_degree());
  if (m->gen_degree_bound() && n->gen_degree_bound()) {
    data.gen_bound = std::max(*m->gen_degree_bound(), *n->gen_degree_bound());
  }
  data.kind = ModuleKind::direct_sum;
  for (int d = 0; d <= data.cap; ++d) {
    data.dims.push_back(m->dim(d) + n->dim(d));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m->dim(d); ++i) labels.push_back("(" + m->label(d, i) + ", 0)");
    for (std::size_t i = 0; i < n->dim(d); ++i) labels.push_back("(0, " + n->label(d, i) + ")");
    data.labels.push_back(std::move(labels));
  }
  auto action = [&](int e, std::size_t i, int d, std::size_t j) -> SparseVector<F> {
    const std::size_t md = m->dim(d);
    if (j < md) return m->basis_action(e, i, d, j);
    return shift_indices(n->basis_action(e, i, d, j - md), static_cast<std::uint32_t>(m->dim(d + e)));
  };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
ModulePtr<F> restrict_along(const AlgebraMap<F>& f, const ModulePtr<F>& n) {
  if (f.target != n->algebra()) throw InputError("restriction: module is not over the target of the map");
  typename GradedModule<F>::Data data{f.source};
  data.cap = std::min({f.source->cap(), n->cap(), f.max_degree()});
  data.top = n->top_degree();
  if (surjective_everywhere(f)) data.gen_bound = n->gen_degree_bound();
  data.kind = ModuleKind::restricted;
  for (int d = 0; d <= data.cap; ++d) {
    data.dims.push_back(n->dim(d));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n->dim(d); ++i) labels.push_back(n->label(d, i));
    data.labels.push_back(std::move(labels));
  }
  auto action = [&](int e, std::size_t i, int d, std::size_t j) {
    return n->act(e, f.images[e][i], d, SparseVector<F>::unit(static_cast<std::uint32_t>(j), n->field()));
  };
  return std::make_shared<const GradedModule<F>>(std::move(data), action);
}

template <class F>
std::vector<std::size_t> hilbert_function(const GradedAlgebra<F>& a, int through) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= through; ++d) out.push_back(a.dim(d));
  return out;
}

template <class F>
std::vector<std::size_t> hilbert_function(const GradedModule<F>& m, int through) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= through; ++d) out.push_back(m.dim(d));
  return out;
}

template <class F>
bool check_associative(const GradedAlgebra<F>& a) {
  const int cap = a.cap();
  const F& k = a.field();
  for (int d = 0; d <= cap; ++d) {
    for (std::size_t i = 0; i < a.dim(d); ++i) {
      auto ei = SparseVector<F>::unit(static_cast<std::uint32_t>(i), k);
      auto unit = SparseVector<F>::unit(0, k);
      if (!(a.mul(0, unit, d, ei) == ei)) return false;
      for (int e = 0; d + e <= cap; ++e) {
        for (std::size_t j = 0; j < a.dim(e); ++j) {
          if (!(a.basis_product(d, i, e, j) == a.basis_product(e, j, d, i))) return false;
          for (int f = 0; d + e + f <= cap; ++f) {
            for (std::size_t l = 0; l < a.dim(f); ++l) {
              auto left = a.mul(d + e, a.basis_product(d, i, e, j), f, SparseVector<F>::unit(static_cast<std::uint32_t>(l), k));
              auto right = a.mul_basis(d, i, e + f, a.basis_product(e, j, f, l));
              if (!(left == right)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

template <class F>
bool check_module_axioms(const GradedModule<F>& m) {
  const auto& a = *m.algebra();
  const int cap = m.cap();
  const F& k = m.field();
  for (int d = 0; d <= cap; ++d) {
    for (std::size_t j = 0; j < m.dim(d); ++j) {
      auto mj = SparseVector<F>::unit(static_cast<std::uint32_t>(j), k);
      if (!(m.basis_action(0, 0, d, j) == mj)) return false;
      for (int e = 0; d + e <= cap; ++e) {
        for (std::size_t i = 0; i < a.dim(e); ++i) {
          for (int f = 0; d + e + f <= cap; ++f) {
            for (std::size_t l = 0; l < a.dim(f); ++l) {
              auto left = m.act(f + e, a.basis_product(f, l, e, i), d, mj);
              auto right = m.act_basis(f, l, d + e, m.basis_action(e, i, d, j));
              if (!(left == right)) return false;
            }
          }
        }
      }
    }
  }
  return true;
}

#define GOLODLAB_INSTANTIATE(F)                                                                                 \
  template struct QuotientPresentation<F>;                                                                      \
  template class GradedAlgebra<F>;                                                                              \
  template struct AlgebraMap<F>;                                                                                \
  template class GradedModule<F>;                                                                               \
  template struct GeneratorData<F>;                                                                             \
  template AlgebraPtr<F> quotient_algebra(const HomogeneousIdeal<F>&, int);                                     \
  template TrivialExtension<F> trivial_extension(const AlgebraPtr<F>&, const ModulePtr<F>&);                   \
  template AlgebraQuotient<F> quotient_by_ideal(const AlgebraPtr<F>&, const std::vector<Homogeneous<F>>&);      \
  template FibreProduct<F> fibre_product(const AlgebraMap<F>&, const AlgebraMap<F>&);                           \
  template FibreProduct<F> iterated_fibre(const AlgebraPtr<F>&, const std::vector<Homogeneous<F>>&, int);       \
  template AlgebraMap<F> identity_map(const AlgebraPtr<F>&);                                                    \
  template AlgebraMap<F> quotient_surjection(const AlgebraPtr<F>&, const AlgebraPtr<F>&);                       \
  template GeneratorData<F> min_gens(const AlgebraPtr<F>&);                                                     \
  template GeneratorData<F> min_gens_module(const GradedModule<F>&);                                            \
  template ModulePtr<F> residue_field(const AlgebraPtr<F>&, int);                                               \
  template ModulePtr<F> regular_module(const AlgebraPtr<F>&);                                                   \
  template ModulePtr<F> free_module(const AlgebraPtr<F>&, const std::vector<int>&);                             \
  template std::vector<Subspace<F>> submodule_spans(const GradedModule<F>&, const std::vector<Homogeneous<F>>&); \
  template ModulePtr<F> submodule(const ModulePtr<F>&, const std::vector<Homogeneous<F>>&, ModuleKind);         \
  template ModulePtr<F> submodule_from_spans(const ModulePtr<F>&, std::vector<Subspace<F>>, std::optional<int>, \
                                             ModuleKind);                                                       \
  template ModulePtr<F> quotient_module(const ModulePtr<F>&, const std::vector<Homogeneous<F>>&, ModuleKind);   \
  template ModulePtr<F> ideal_as_module(const AlgebraPtr<F>&, const std::vector<Homogeneous<F>>&);              \
  template ModulePtr<F> cokernel_module(const AlgebraPtr<F>&, const std::vector<int>&,                          \
                                        const std::vector<Homogeneous<F>>&);                                    \
  template ModulePtr<F> direct_sum(const ModulePtr<F>&, const ModulePtr<F>&);                                   \
  template ModulePtr<F> restrict_along(const AlgebraMap<F>&, const ModulePtr<F>&);                              \
  template std::vector<std::size_t> hilbert_function(const GradedAlgebra<F>&, int);                             \
  template std::vector<std::size_t> hilbert_function(const GradedModule<F>&, int);                              \
  template bool check_associative(const GradedAlgebra<F>&);                                                     \
  template bool check_module_axioms(const GradedModule<F>&);

GOLODLAB_INSTANTIATE(Rationals)
GOLODLAB_INSTANTIATE(PrimeField)

}  // namespace golodlab
