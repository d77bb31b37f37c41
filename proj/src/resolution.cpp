#include "golodlab/resolution.hpp"

#include <algorithm>

namespace golodlab {

// ---------------------------------------------------------------- FreeLayout

template <class F>
FreeLayout<F>::FreeLayout(AlgebraPtr<F> algebra, std::vector<int> degrees, int d_cap)
    : algebra_(std::move(algebra)), degrees_(std::move(degrees)), d_cap_(d_cap) {
  blocks_.resize(d_cap + 1);
  dims_.assign(d_cap + 1, 0);
  for (int d = 0; d <= d_cap; ++d) {
    std::uint32_t off = 0;
    for (std::size_t k = 0; k < degrees_.size(); ++k) {
      if (degrees_[k] > d) continue;
      std::size_t n = algebra_->dim(d - degrees_[k]);
      if (n == 0) continue;
      blocks_[d].push_back({k, off, n});
      off += static_cast<std::uint32_t>(n);
    }
    dims_[d] = off;
  }
}

template <class F>
std::size_t FreeLayout<F>::dim(int d) const {
  if (d < 0) return 0;
  if (d > d_cap_) throw CapError("free module degree " + std::to_string(d) + " beyond the window");
  return dims_[d];
}

template <class F>
std::optional<std::uint32_t> FreeLayout<F>::offset(int d, std::size_t k) const {
  for (const auto& b : blocks_.at(d)) {
    if (b.generator == k) return b.offset;
  }
  return std::nullopt;
}

template <class F>
std::uint32_t FreeLayout<F>::index(int d, std::size_t k, std::size_t i) const {
  auto off = offset(d, k);
  if (!off) throw InternalError("free module block is empty");
  return *off + static_cast<std::uint32_t>(i);
}

template <class F>
SparseVector<F> FreeLayout<F>::act_basis(int e, std::size_t a, int d, const SparseVector<F>& v) const {
  if (v.empty() || algebra_->known_zero(e)) return {};
  if (d + e > d_cap_) throw CapError("free module degree " + std::to_string(d + e) + " beyond the window");
  VectorBuilder<F> acc(algebra_->field());
  const auto& src = blocks_[d];
  std::size_t b = 0;
  for (const auto& [idx, c] : v) {
    while (idx >= src[b].offset + src[b].size) ++b;
    const auto& blk = src[b];
    const int base = d - degrees_[blk.generator];
    const auto& prod = algebra_->basis_product(e, a, base, idx - blk.offset);
    if (prod.empty()) continue;
    acc.add_scaled(c, prod, *offset(d + e, blk.generator));
  }
  return acc.build();
}

template <class F>
SparseVector<F> FreeLayout<F>::act(int e, const SparseVector<F>& a, int d, const SparseVector<F>& v) const {
  VectorBuilder<F> acc(algebra_->field());
  for (const auto& [i, c] : a) acc.add_scaled(c, act_basis(e, i, d, v));
  return acc.build();
}

// ---------------------------------------------------------------- Resolution

template <class F>
Resolution<F>::Resolution(ModulePtr<F> module, Options options) : module_(std::move(module)), opt_(options) {
  if (opt_.h_cap < 0 || opt_.d_cap < 0) throw InputError("caps must be nonnegative");
  const auto& a = *algebra();
  for (int d = 0; d <= opt_.d_cap; ++d) {
    a.dim(d);
    module_->dim(d);
  }
  for (int i = 0; i <= opt_.h_cap; ++i) compute_step(i);
}

template <class F>
void Resolution<F>::compute_step(int i) {
  const auto& a = *algebra();
  const F& field = a.field();
  const int cap = opt_.d_cap;

  auto target_dim = [&](int d) { return i == 0 ? module_->dim(d) : layouts_[i - 1].dim(d); };
  auto target_act = [&](int e, std::size_t x, int g, const SparseVector<F>& z) {
    return i == 0 ? module_->act_basis(e, x, g, z) : layouts_[i - 1].act_basis(e, x, g, z);
  };

  std::vector<int> degrees;
  std::vector<SparseVector<F>> images;
  for (int d = 0; d <= cap; ++d) {
    const std::size_t n = target_dim(d);
    if (n == 0) continue;
    std::vector<SparseVector<F>> kernel;
    if (i == 0) {
      for (std::size_t m = 0; m < n; ++m) kernel.push_back(SparseVector<F>::unit(static_cast<std::uint32_t>(m), field));
    } else {
      const std::size_t below = i == 1 ? module_->dim(d) : layouts_[i - 2].dim(d);
      LinearMap<F> map(field, below, differential(i - 1, d), opt_.rule);
      kernel = map.kernel();
    }
    if (kernel.empty()) continue;
    Echelon<F> span(field, n);
    for (std::size_t k = 0; k < degrees.size(); ++k) {
      const int e = d - degrees[k];
      if (a.known_zero(e)) continue;
      for (std::size_t x = 0; x < a.dim(e); ++x) span.insert(target_act(e, x, degrees[k], images[k]));
      if (span.rank() == kernel.size()) break;
    }
    for (const auto& v : kernel) {
      if (span.rank() == kernel.size()) break;
      if (span.insert(v)) {
        degrees.push_back(d);
        images.push_back(v);
      }
    }
  }

  bool complete;
  if (opt_.generator_bound && *opt_.generator_bound <= cap) {
    complete = i == 0 || complete_[i - 1];
  } else if (i == 0) {
    auto gb = module_->gen_degree_bound();
    auto top = module_->top_degree();
    complete = (gb && *gb <= cap) || (top && *top <= cap);
  } else {
    const auto& prev = layouts_[i - 1].degrees();
    complete = complete_[i - 1];
    if (complete && !prev.empty()) {
      int maxgen = *std::max_element(prev.begin(), prev.end());
      complete = a.top_degree() && maxgen + *a.top_degree() <= cap;
    }
  }
  layouts_.emplace_back(algebra(), std::move(degrees), cap);
  images_.push_back(std::move(images));
  complete_.push_back(complete);
}

template <class F>
std::size_t Resolution<F>::betti(int i, int j) const {
  const auto& g = generator_degrees(i);
  return static_cast<std::size_t>(std::count(g.begin(), g.end(), j));
}

template <class F>
std::vector<std::vector<std::size_t>> Resolution<F>::betti_table() const {
  std::vector<std::vector<std::size_t>> out(opt_.h_cap + 1, std::vector<std::size_t>(opt_.d_cap + 1, 0));
  for (int i = 0; i <= opt_.h_cap; ++i) {
    for (int g : generator_degrees(i)) ++out[i][g];
  }
  return out;
}

template <class F>
TruncatedSeries Resolution<F>::poincare() const {
  TruncatedSeries s;
  for (int i = 0; i <= opt_.h_cap; ++i) {
    s.coeffs.push_back(static_cast<std::int64_t>(betti_total(i)));
    s.complete.push_back(complete(i));
  }
  return s;
}

template <class F>
std::vector<SparseVector<F>> Resolution<F>::differential(int i, int d) const {
  const auto& lay = layouts_.at(i);
  std::vector<SparseVector<F>> out;
  out.reserve(lay.dim(d));
  for (const auto& blk : lay.blocks(d)) {
    const int g = lay.degrees()[blk.generator];
    const auto& z = images_[i][blk.generator];
    for (std::size_t x = 0; x < blk.size; ++x) {
      out.push_back(i == 0 ? module_->act_basis(d - g, x, g, z) : layouts_[i - 1].act_basis(d - g, x, g, z));
    }
  }
  return out;
}

template <class F>
SparseVector<F> Resolution<F>::apply_differential(int i, int d, const SparseVector<F>& v) const {
  auto cols = differential(i, d);
  VectorBuilder<F> acc(algebra()->field());
  for (const auto& [k, c] : v) acc.add_scaled(c, cols.at(k));
  return acc.build();
}

template <class F>
bool Resolution<F>::is_minimal() const {
  for (int i = 1; i <= opt_.h_cap; ++i) {
    const auto& lay = layouts_[i];
    const auto& prev = layouts_[i - 1];
    for (std::size_t k = 0; k < lay.rank(); ++k) {
      const int g = lay.degrees()[k];
      for (const auto& blk : prev.blocks(g)) {
        if (prev.degrees()[blk.generator] != g) continue;
        for (const auto& entry : images_[i][k]) {
          if (entry.first >= blk.offset && entry.first < blk.offset + blk.size) return false;
        }
      }
    }
  }
  return true;
}

template <class F>
bool Resolution<F>::is_exact_in_window() const {
  const F& field = algebra()->field();
  for (int d = 0; d <= opt_.d_cap; ++d) {
    if (complete(0) && rank_of(field, module_->dim(d), differential(0, d)) != module_->dim(d)) return false;
    for (int i = 0; i <= opt_.h_cap; ++i) {
      const std::size_t below = i == 0 ? module_->dim(d) : layouts_[i - 1].dim(d);
      auto cols = differential(i, d);
      const std::size_t r = rank_of(field, below, cols);
      if (i >= 1) {
        for (const auto& c : cols) {
          if (!apply_differential(i - 1, d, c).empty()) return false;
        }
      }
      if (i < opt_.h_cap) {
        const std::size_t next = rank_of(field, layouts_[i].dim(d), differential(i + 1, d));
        if (layouts_[i].dim(d) - r != next) return false;
      }
    }
  }
  return true;
}

template <class F>
int default_d_cap(const GradedAlgebra<F>& a, const GradedModule<F>& m, int h_cap) {
  int gen_a = a.gen_degree_bound().value_or(1);
  int gen_m = m.gen_degree_bound().value_or(m.top_degree().value_or(0));
  int cap = h_cap * gen_a + gen_m + 2;
  if (a.top_degree()) cap = std::max(cap, gen_m + h_cap * std::max(*a.top_degree(), 1));
  return cap;
}

// ---------------------------------------------------------------- over the polynomial ring

template <class F>
std::vector<std::size_t> PolyResolution<F>::betti() const {
  std::vector<std::size_t> out;
  for (int i = 0; i <= resolution->h_cap(); ++i) out.push_back(resolution->betti_total(i));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

namespace {

template <class F>
AlgebraPtr<F> polynomial_algebra(const RingPtr<F>& ring, int cap) {
  cap = std::max(cap, 2 * ring->max_weight());
  return quotient_algebra(HomogeneousIdeal<F>(ring, {}), cap);
}

template <class F>
PolyResolution<F> finish(AlgebraPtr<F> s, ModulePtr<F> m, int bound, std::size_t nvars) {
  PolyResolution<F> out;
  out.ring = std::move(s);
  out.module = std::move(m);
  typename Resolution<F>::Options opt;
  opt.h_cap = static_cast<int>(nvars) + 1;
  opt.d_cap = out.ring->cap();
  opt.generator_bound = bound;
  out.resolution.emplace(out.module, opt);
  if (out.resolution->betti_total(opt.h_cap) != 0) {
    throw InternalError("resolution over the polynomial ring is longer than the number of variables");
  }
  return out;
}

}  // namespace

template <class F>
PolyResolution<F> resolution_over_poly_ring(const HomogeneousIdeal<F>& ideal) {
  const auto& ring = ideal.ring();
  GroebnerBasis<F> gb(ideal);
  if (gb.is_unit()) throw InputError("the ideal is the unit ideal");
  const int bound = static_cast<int>(gb.lcm_degree());
  auto s = polynomial_algebra(ring, bound);
  std::vector<Homogeneous<F>> gens;
  for (std::size_t k = 0; k < ideal.generators().size(); ++k) {
    int d = static_cast<int>(ideal.degrees()[k]);
    gens.push_back({d, s->presentation()->to_vector(ideal.generators()[k], d)});
  }
  auto m = quotient_module(regular_module(s), gens);
  return finish(s, m, bound, ring->nvars());
}

template <class F>
PolyResolution<F> resolution_over_poly_ring(const ModulePtr<F>& module) {
  const auto& r = module->algebra();
  const auto* pres = r->presentation();
  if (pres == nullptr) throw InputError("module is not over a quotient of a polynomial ring");
  if (!module->top_degree()) throw InputError("module over the polynomial ring must have finite length");
  int bound = *module->top_degree();
  for (int w : pres->ring->weights()) bound += w;
  auto s = polynomial_algebra(pres->ring, bound);
  auto m = restrict_along(quotient_surjection(s, r), module);
  return finish(s, m, bound, pres->ring->nvars());
}

template <class F>
TruncatedSeries hilbert_series(const GradedAlgebra<F>& a, int through) {
  TruncatedSeries s;
  for (int d = 0; d <= through; ++d) {
    s.coeffs.push_back(static_cast<std::int64_t>(a.dim(d)));
    s.complete.push_back(true);
  }
  return s;
}

template <class F>
TruncatedSeries hilbert_series(const GradedModule<F>& m, int through) {
  TruncatedSeries s;
  for (int d = 0; d <= through; ++d) {
    s.coeffs.push_back(static_cast<std::int64_t>(m.dim(d)));
    s.complete.push_back(true);
  }
  return s;
}

// ---------------------------------------------------------------- Tor comparison

template <class F>
bool TorComparison<F>::surjective_through(int i_max) const {
  for (const auto& e : entries) {
    if (e.i <= i_max && e.rank != e.target_dim) return false;
  }
  return true;
}

template <class F>
std::optional<int> TorComparison<F>::first_failure() const {
  std::optional<int> out;
  for (const auto& e : entries) {
    if (e.rank != e.target_dim && (!out || e.i < *out)) out = e.i;
  }
  return out;
}

template <class F>
TorComparison<F> tor_comparison(const AlgebraMap<F>& f, int h_cap, int d_cap, PivotRule rule) {
  if (f.max_degree() < d_cap && !f.source->known_zero(f.max_degree() + 1)) {
    throw CapError("comparison map is not stored through the degree window");
  }
  if (!f.is_surjective_through(std::min(d_cap, f.max_degree()))) throw InputError("map is not surjective");
  typename Resolution<F>::Options opt;
  opt.h_cap = h_cap;
  opt.d_cap = d_cap;
  Resolution<F> p(residue_field(f.source), opt);
  Resolution<F> q(residue_field(f.target), opt);
  const F& field = f.source->field();

  // phi[i][k]: image of generator k of P_i in Q_i
  std::vector<std::vector<SparseVector<F>>> phi(h_cap + 1);
  TorComparison<F> out;
  for (int i = 0; i <= h_cap; ++i) {
    const auto& pl = p.layout(i);
    const auto& ql = q.layout(i);
    for (std::size_t k = 0; k < pl.rank(); ++k) {
      const int j = pl.degrees()[k];
      SparseVector<F> x;
      if (i == 0) {
        // both F_0 are free on one generator of degree 0 mapping to 1 in k
        x = SparseVector<F>::unit(0, field);
      } else {
        // y = phi_{i-1}(d(e_k))
        const auto& z = p.generator_images(i)[k];
        const auto& prev = p.layout(i - 1);
        VectorBuilder<F> acc(field);
        std::size_t b = 0;
        const auto& blocks = prev.blocks(j);
        for (const auto& [idx, c] : z) {
          while (idx >= blocks[b].offset + blocks[b].size) ++b;
          const auto& blk = blocks[b];
          const int g = prev.degrees()[blk.generator];
          auto fa = f.apply(j - g, SparseVector<F>::unit(idx - blk.offset, field));
          acc.add_scaled(c, q.layout(i - 1).act(j - g, fa, g, phi[i - 1][blk.generator]));
        }
        auto y = acc.build();
        LinearMap<F> d(field, q.layout(i - 1).dim(j), q.differential(i, j), rule);
        auto pre = d.preimage(y);
        if (!pre) throw InternalError("comparison map does not lift");
        x = std::move(*pre);
      }
      phi[i].push_back(std::move(x));
    }
    for (int j = 0; j <= d_cap; ++j) {
      typename TorComparison<F>::Entry e;
      e.i = i;
      e.j = j;
      e.source_dim = p.betti(i, j);
      e.target_dim = q.betti(i, j);
      if (e.source_dim == 0 && e.target_dim == 0) continue;
      // target generators of degree j occupy one coordinate each (the unit of B_0)
      std::vector<std::pair<std::uint32_t, std::uint32_t>> coordinate;  // (offset, row)
      std::uint32_t row = 0;
      for (std::size_t l = 0; l < ql.rank(); ++l) {
        if (ql.degrees()[l] == j) coordinate.emplace_back(*ql.offset(j, l), row++);
      }
      for (std::size_t k = 0; k < pl.rank(); ++k) {
        if (pl.degrees()[k] != j) continue;
        SparseVector<F> col;
        for (auto [off, r] : coordinate) {
          auto c = phi[i][k].at(field, off);
          if (!field.is_zero(c)) col.push_back(r, c);
        }
        e.matrix.push_back(std::move(col));
      }
      e.rank = rank_of(field, e.target_dim, e.matrix);
      out.entries.push_back(std::move(e));
    }
    out.complete.push_back(p.complete(i) && q.complete(i));
  }
  return out;
}

#define GOLODLAB_INSTANTIATE(F)                                                                       \
  template class FreeLayout<F>;                                                                       \
  template class Resolution<F>;                                                                       \
  template struct PolyResolution<F>;                                                                  \
  template struct TorComparison<F>;                                                                   \
  template int default_d_cap(const GradedAlgebra<F>&, const GradedModule<F>&, int);                   \
  template PolyResolution<F> resolution_over_poly_ring(const HomogeneousIdeal<F>&);                   \
  template PolyResolution<F> resolution_over_poly_ring(const ModulePtr<F>&);                          \
  template TruncatedSeries hilbert_series(const GradedAlgebra<F>&, int);                              \
  template TruncatedSeries hilbert_series(const GradedModule<F>&, int);                               \
  template TorComparison<F> tor_comparison(const AlgebraMap<F>&, int, int, PivotRule);

GOLODLAB_INSTANTIATE(Rationals)
GOLODLAB_INSTANTIATE(PrimeField)

}  // namespace golodlab
