#include "golodlab/koszul.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "golodlab/error.hpp"
#include "golodlab/resolution.hpp"

namespace golodlab {

// ---------------------------------------------------------------- homology pieces

template <class F>
HomologyPiece<F>::HomologyPiece(const F& field, std::size_t dim, std::vector<SparseVector<F>> incoming,
                                const std::vector<SparseVector<F>>& outgoing, std::size_t below_dim)
    : field_(field), dim_(dim), frame_(field, dim, true) {
  LinearMap<F> out(field, below_dim, outgoing);
  cycles_dim_ = out.kernel().size();
  for (const auto& b : incoming) {
    frame_.insert(b);
    slot_kind_.push_back(0);
    slot_index_.push_back(static_cast<std::uint32_t>(slot_index_.size()));
  }
  boundaries_dim_ = frame_.rank();
  for (const auto& z : out.kernel()) {
    bool fresh = frame_.insert(z);
    slot_kind_.push_back(fresh ? 1 : -1);
    slot_index_.push_back(static_cast<std::uint32_t>(reps_.size()));
    if (fresh) reps_.push_back(z);
  }
  for (std::uint32_t i = 0; i < dim; ++i) {
    bool fresh = frame_.insert(SparseVector<F>::unit(i, field));
    slot_kind_.push_back(fresh ? 2 : -1);
    slot_index_.push_back(i);
  }
}

template <class F>
SparseVector<F> HomologyPiece<F>::representative(const SparseVector<F>& coords) const {
  VectorBuilder<F> b(field_);
  for (const auto& [r, c] : coords) b.add_scaled(c, reps_.at(r));
  return b.build();
}

template <class F>
typename HomologyPiece<F>::Split HomologyPiece<F>::split(const SparseVector<F>& v) const {
  auto red = frame_.reduce(v);
  if (!red.remainder.empty()) throw InternalError("homology frame does not span the chain space");
  VectorBuilder<F> lift(field_), classes(field_), rest(field_);
  for (const auto& [slot, c] : red.combo) {
    switch (slot_kind_[slot]) {
      case 0: lift.add(slot_index_[slot], c); break;
      case 1: classes.add(slot_index_[slot], c); break;
      case 2: rest.add(slot_index_[slot], c); break;
      default: throw InternalError("dependent slot in homology frame");
    }
  }
  return {lift.build(), classes.build(), rest.build()};
}

template <class F>
bool HomologyPiece<F>::is_boundary(const SparseVector<F>& z) const {
  auto s = split(z);
  return s.classes.empty() && s.rest.empty();
}

template <class F>
SparseVector<F> HomologyPiece<F>::class_of(const SparseVector<F>& z) const {
  auto s = split(z);
  if (!s.rest.empty()) throw InternalError("class requested for a chain that is not a cycle");
  return s.classes;
}

template <class F>
std::optional<SparseVector<F>> HomologyPiece<F>::boundary_preimage(const SparseVector<F>& z) const {
  auto s = split(z);
  if (!s.classes.empty() || !s.rest.empty()) return std::nullopt;
  return s.lift;
}

// ---------------------------------------------------------------- the complex

int wedge_sign(std::uint64_t sigma, std::uint64_t tau) {
  if (sigma & tau) return 0;
  int inversions = 0;
  for (std::uint64_t t = tau; t != 0; t &= t - 1) {
    int bit = std::countr_zero(t);
    inversions += std::popcount(bit >= 63 ? 0 : sigma >> (bit + 1));
  }
  return inversions % 2 == 0 ? 1 : -1;
}

namespace {

void lex_subsets(std::size_t n, std::size_t l, std::size_t start, std::uint64_t acc, std::vector<std::uint64_t>& out) {
  if (l == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = start; i + l <= n; ++i) lex_subsets(n, l - 1, i + 1, acc | (std::uint64_t{1} << i), out);
}

template <class F>
typename F::Elem sign_elem(const F& field, int s) {
  return s > 0 ? field.one() : field.neg(field.one());
}

}  // namespace

template <class F>
KoszulComplex<F>::KoszulComplex(ModulePtr<F> module, std::vector<Homogeneous<F>> gens, int d_cap, bool exact,
                                bool is_ring)
    : module_(std::move(module)), gens_(std::move(gens)), d_cap_(d_cap), exact_(exact), is_ring_(is_ring) {
  const std::size_t n = gens_.size();
  if (n > 60) throw CapError("too many generators for the Koszul complex");
  int total = 0;
  for (const auto& g : gens_) {
    if (g.degree < 1) throw InputError("Koszul generators must have positive degree");
    weights_.push_back(g.degree);
    total += g.degree;
  }
  const auto& m = *module_;
  chains_bounded_ = m.is_finite() && *m.top_degree() + total <= d_cap_;
  subsets_.resize(n + 1);
  subset_index_.resize(n + 1);
  offsets_.resize(n + 1);
  dims_.resize(n + 1);
  for (std::size_t l = 0; l <= n; ++l) {
    lex_subsets(n, l, 0, 0, subsets_[l]);
    for (std::size_t s = 0; s < subsets_[l].size(); ++s) subset_index_[l][subsets_[l][s]] = s;
    offsets_[l].resize(d_cap_ + 1);
    dims_[l].resize(d_cap_ + 1);
    for (int d = 0; d <= d_cap_; ++d) {
      std::uint32_t off = 0;
      for (std::uint64_t sigma : subsets_[l]) {
        offsets_[l][d].push_back(off);
        int e = d - weight(sigma);
        off += static_cast<std::uint32_t>(m.known_zero(e) ? 0 : m.dim(e));
      }
      dims_[l][d] = off;
    }
  }
}

template <class F>
int KoszulComplex<F>::weight(std::uint64_t subset) const {
  int w = 0;
  for (std::uint64_t t = subset; t != 0; t &= t - 1) w += weights_[std::countr_zero(t)];
  return w;
}

template <class F>
std::size_t KoszulComplex<F>::dim(int l, int d) const {
  if (l < 0 || l > static_cast<int>(rank()) || d < 0) return 0;
  if (d > d_cap_) {
    if (chains_bounded_) return 0;
    throw CapError("Koszul chains requested in degree " + std::to_string(d) + " beyond the window " +
                   std::to_string(d_cap_));
  }
  return dims_[l][d];
}

template <class F>
std::pair<std::uint32_t, std::size_t> KoszulComplex<F>::block(int l, int d, std::size_t s) const {
  if (dim(l, d) == 0) return {0, 0};
  const auto& offs = offsets_[l][d];
  std::uint32_t end = s + 1 < offs.size() ? offs[s + 1] : static_cast<std::uint32_t>(dims_[l][d]);
  return {offs[s], end - offs[s]};
}

template <class F>
std::string KoszulComplex<F>::format(int l, int d, const SparseVector<F>& v) const {
  if (v.empty()) return "0";
  std::string out;
  for (std::size_t s = 0; s < subsets_.at(l).size(); ++s) {
    auto [off, size] = block(l, d, s);
    if (size == 0) continue;
    VectorBuilder<F> local(field());
    for (const auto& [i, c] : v) {
      if (i >= off && i < off + size) local.add(i - off, c);
    }
    if (local.empty()) continue;
    std::string e;
    for (std::uint64_t t = subsets_[l][s]; t != 0; t &= t - 1) {
      e += (e.empty() ? "e" : "^e") + std::to_string(std::countr_zero(t) + 1);
    }
    if (!out.empty()) out += " + ";
    out += "(" + module_->format(d - weight(subsets_[l][s]), local.build()) + ")" + (e.empty() ? "" : "*" + e);
  }
  return out;
}

template <class F>
std::vector<SparseVector<F>> KoszulComplex<F>::boundary(int l, int d) const {
  const std::size_t n = dim(l, d);
  std::vector<SparseVector<F>> out(n);
  if (l == 0 || n == 0) return out;
  const F& fd = field();
  for (std::size_t s = 0; s < subsets_[l].size(); ++s) {
    std::uint64_t sigma = subsets_[l][s];
    auto [off, size] = block(l, d, s);
    if (size == 0) continue;
    int e = d - weight(sigma);
    int r = 0;
    for (std::uint64_t t = sigma; t != 0; t &= t - 1, ++r) {
      int i = std::countr_zero(t);
      std::uint64_t face = sigma & ~(std::uint64_t{1} << i);
      auto [foff, fsize] = block(l - 1, d, subset_index_[l - 1].at(face));
      if (fsize == 0) continue;
      auto sign = sign_elem(fd, r % 2 == 0 ? 1 : -1);
      for (std::size_t k = 0; k < size; ++k) {
        auto img = module_->act(gens_[i].degree, gens_[i].vec, e, SparseVector<F>::unit(static_cast<std::uint32_t>(k), fd));
        if (img.empty()) continue;
        VectorBuilder<F> b(fd);
        b.add_vector(out[off + k]);
        b.add_scaled(sign, img, foff);
        out[off + k] = b.build();
      }
    }
  }
  return out;
}

template <class F>
SparseVector<F> KoszulComplex<F>::apply_boundary(int l, int d, const SparseVector<F>& v) const {
  auto images = boundary(l, d);
  VectorBuilder<F> b(field());
  for (const auto& [i, c] : v) b.add_scaled(c, images.at(i));
  return b.build();
}

template <class F>
const HomologyPiece<F>& KoszulComplex<F>::homology(int l, int d) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(l, d);
  auto it = homology_.find(key);
  if (it != homology_.end()) return *it->second;
  std::size_t n = dim(l, d);
  std::vector<SparseVector<F>> incoming = n == 0 ? std::vector<SparseVector<F>>{} : boundary(l + 1, d);
  std::vector<SparseVector<F>> outgoing = boundary(l, d);
  auto piece = std::make_unique<HomologyPiece<F>>(field(), n, std::move(incoming), outgoing, dim(l - 1, d));
  return *homology_.emplace(key, std::move(piece)).first->second;
}

template <class F>
std::size_t KoszulComplex<F>::homology_dim(int l) const {
  std::size_t total = 0;
  for (int d = 0; d <= d_cap_; ++d) total += homology(l, d).dim();
  return total;
}

template <class F>
TruncatedSeries KoszulComplex<F>::kappa() const {
  TruncatedSeries s;
  for (std::size_t l = 0; l <= rank(); ++l) {
    s.coeffs.push_back(static_cast<std::int64_t>(homology_dim(static_cast<int>(l))));
    s.complete.push_back(exact_);
  }
  return s;
}

template <class F>
bool KoszulComplex<F>::check_d_squared() const {
  for (int l = 2; l <= static_cast<int>(rank()); ++l) {
    for (int d = 0; d <= d_cap_; ++d) {
      for (const auto& img : boundary(l, d)) {
        if (!apply_boundary(l - 1, d, img).empty()) return false;
      }
    }
  }
  return true;
}

template <class F>
std::optional<int> koszul_vanishing_bound(const GradedModule<F>& m, const std::vector<Homogeneous<F>>& gens) {
  int total = 0;
  for (const auto& g : gens) total += g.degree;
  if (m.is_finite()) return *m.top_degree() + total;
  const auto& a = *m.algebra();
  if (m.kind() == ModuleKind::regular && a.presentation() != nullptr) {
    return static_cast<int>(a.presentation()->gb->lcm_degree());
  }
  return std::nullopt;
}

namespace {

template <class F>
KoszulPtr<F> make_koszul(const ModulePtr<F>& module, bool is_ring) {
  auto gd = min_gens(module->algebra());
  if (!gd.exact) throw CapError("generators of the maximal ideal are not determined inside the stored window");
  auto bound = koszul_vanishing_bound(*module, gd.generators);
  if (bound) {
    if (!module->is_finite() && *bound > module->cap()) {
      throw CapError("Koszul homology needs the algebra through degree " + std::to_string(*bound) +
                     " but it is stored through " + std::to_string(module->cap()));
    }
    return std::make_shared<const KoszulComplex<F>>(module, gd.generators, *bound, true, is_ring);
  }
  return std::make_shared<const KoszulComplex<F>>(module, gd.generators, module->cap(), false, is_ring);
}

}  // namespace

template <class F>
KoszulPtr<F> KoszulComplex<F>::of_module(const ModulePtr<F>& module) {
  return make_koszul(module, false);
}

template <class F>
KoszulPtr<F> KoszulComplex<F>::of_algebra(const AlgebraPtr<F>& algebra) {
  return make_koszul(regular_module(algebra), true);
}

// ---------------------------------------------------------------- products

namespace {

template <class F>
struct BlockPart {
  std::uint64_t subset;
  int degree;  // module degree
  SparseVector<F> local;
};

template <class F>
std::vector<BlockPart<F>> blocks_of(const KoszulComplex<F>& k, int l, int d, const SparseVector<F>& v) {
  std::vector<BlockPart<F>> out;
  if (v.empty()) return out;
  const auto& subs = k.subsets(l);
  auto it = v.begin();
  for (std::size_t s = 0; s < subs.size() && it != v.end(); ++s) {
    auto [off, size] = k.block(l, d, s);
    if (size == 0) continue;
    SparseVector<F> local;
    while (it != v.end() && it->first < off + size) {
      local.push_back(it->first - off, it->second);
      ++it;
    }
    if (!local.empty()) out.push_back({subs[s], d - k.weight(subs[s]), std::move(local)});
  }
  return out;
}

template <class F>
const KoszulComplex<F>& product_target(const KoszulComplex<F>& p, const KoszulComplex<F>& q) {
  if (p.is_ring()) return q;
  if (q.is_ring()) return p;
  throw InputError("cannot multiply two module Koszul complexes");
}

}  // namespace

template <class F>
SparseVector<F> koszul_product(const KoszulComplex<F>& p, int l1, int d1, const SparseVector<F>& x,
                               const KoszulComplex<F>& q, int l2, int d2, const SparseVector<F>& y) {
  const auto& out = product_target(p, q);
  if (p.rank() != q.rank()) throw InputError("Koszul complexes on different generator sets");
  const int l = l1 + l2, d = d1 + d2;
  if (x.empty() || y.empty() || out.dim(l, d) == 0) return {};
  const F& field = out.field();
  const auto& alg = *out.algebra();
  const auto& mod = *out.module();
  VectorBuilder<F> b(field);
  auto xs = blocks_of(p, l1, d1, x);
  auto ys = blocks_of(q, l2, d2, y);
  for (const auto& bx : xs) {
    for (const auto& by : ys) {
      int sign = wedge_sign(bx.subset, by.subset);
      if (sign == 0) continue;
      SparseVector<F> prod;
      if (p.is_ring() && q.is_ring()) {
        prod = alg.mul(bx.degree, bx.local, by.degree, by.local);
      } else if (p.is_ring()) {
        prod = mod.act(bx.degree, bx.local, by.degree, by.local);
      } else {
        prod = mod.act(by.degree, by.local, bx.degree, bx.local);
      }
      if (prod.empty()) continue;
      auto [off, size] = out.block(l, d, out.subset_index(l, bx.subset | by.subset));
      if (size == 0) continue;
      b.add_scaled(sign_elem(field, sign), prod, off);
    }
  }
  return b.build();
}

template <class F>
std::vector<HomologyClass<F>> homology_basis(const KoszulComplex<F>& k, int l_min) {
  std::vector<HomologyClass<F>> out;
  for (int l = std::max(l_min, 0); l <= static_cast<int>(k.rank()); ++l) {
    for (int d = 0; d <= k.d_cap(); ++d) {
      std::size_t n = k.homology(l, d).dim();
      for (std::size_t r = 0; r < n; ++r) {
        out.push_back({l, d, SparseVector<F>::unit(static_cast<std::uint32_t>(r), k.field())});
      }
    }
  }
  return out;
}

template <class F>
HomologyClass<F> homology_product(const KoszulComplex<F>& ka, const HomologyClass<F>& h, const KoszulComplex<F>& km,
                                  const HomologyClass<F>& v) {
  auto x = ka.homology(h.l, h.d).representative(h.coords);
  auto y = km.homology(v.l, v.d).representative(v.coords);
  auto z = koszul_product(ka, h.l, h.d, x, km, v.l, v.d, y);
  const auto& out = product_target(ka, km);
  HomologyClass<F> c{h.l + v.l, h.d + v.d, {}};
  if (out.dim(c.l, c.d) == 0) return c;
  c.coords = out.homology(c.l, c.d).class_of(z);
  return c;
}

// ---------------------------------------------------------------- Massey products

std::string to_string(MasseyStatus s) {
  switch (s) {
    case MasseyStatus::vanishes: return "vanishes";
    case MasseyStatus::non_vanishing: return "non-vanishing";
    case MasseyStatus::no_defining_system: return "no-defining-system";
    case MasseyStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// A polynomial in the free parameters of the defining systems, with coefficients either in a
// chain space (ParamPoly) or in the field (ScalarPoly). Monomials are sorted parameter lists.
using ParamMono = std::vector<std::uint32_t>;

template <class F>
using ParamPoly = std::map<ParamMono, SparseVector<F>>;

template <class F>
using ScalarPoly = std::map<ParamMono, typename F::Elem>;

ParamMono mono_merge(const ParamMono& a, const ParamMono& b) {
  ParamMono out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class F>
void pp_add(const F& field, ParamPoly<F>& acc, const ParamMono& m, const SparseVector<F>& v) {
  if (v.empty()) return;
  auto [it, fresh] = acc.try_emplace(m, v);
  if (fresh) return;
  it->second = add(field, it->second, v);
  if (it->second.empty()) acc.erase(it);
}

template <class F>
void sp_add(const F& field, ScalarPoly<F>& acc, const ParamMono& m, const typename F::Elem& c) {
  if (field.is_zero(c)) return;
  auto [it, fresh] = acc.try_emplace(m, c);
  if (fresh) return;
  it->second = field.add(it->second, c);
  if (field.is_zero(it->second)) acc.erase(it);
}

template <class F>
ScalarPoly<F> sp_mul(const F& field, const ScalarPoly<F>& a, const ScalarPoly<F>& b) {
  ScalarPoly<F> out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) sp_add(field, out, mono_merge(ma, mb), field.mul(ca, cb));
  }
  return out;
}

template <class F>
ScalarPoly<F> sp_power(const F& field, const ScalarPoly<F>& e, std::size_t k) {
  ScalarPoly<F> out{{ParamMono{}, field.one()}};
  for (std::size_t i = 0; i < k; ++i) out = sp_mul(field, out, e);
  return out;
}

std::pair<std::size_t, ParamMono> strip(const ParamMono& m, std::uint32_t p) {
  ParamMono rest;
  std::size_t k = 0;
  for (auto q : m) {
    if (q == p) {
      ++k;
    } else {
      rest.push_back(q);
    }
  }
  return {k, rest};
}

template <class F>
ParamPoly<F> substitute(const F& field, const ParamPoly<F>& x, std::uint32_t p, const ScalarPoly<F>& e) {
  ParamPoly<F> out;
  for (const auto& [m, v] : x) {
    auto [k, rest] = strip(m, p);
    if (k == 0) {
      pp_add(field, out, m, v);
      continue;
    }
    for (const auto& [m2, c] : sp_power(field, e, k)) pp_add(field, out, mono_merge(rest, m2), scale(field, c, v));
  }
  return out;
}

template <class F>
ScalarPoly<F> substitute(const F& field, const ScalarPoly<F>& x, std::uint32_t p, const ScalarPoly<F>& e) {
  ScalarPoly<F> out;
  for (const auto& [m, c] : x) {
    auto [k, rest] = strip(m, p);
    if (k == 0) {
      sp_add(field, out, m, c);
      continue;
    }
    for (const auto& [m2, c2] : sp_power(field, e, k)) sp_add(field, out, mono_merge(rest, m2), field.mul(c, c2));
  }
  return out;
}

template <class F>
typename F::Elem eval_mono(const F& field, const ParamMono& m, const std::map<std::uint32_t, typename F::Elem>& at) {
  auto v = field.one();
  for (auto p : m) v = field.mul(v, at.at(p));
  return v;
}

template <class F>
SparseVector<F> evaluate(const F& field, const ParamPoly<F>& x, const std::map<std::uint32_t, typename F::Elem>& at) {
  VectorBuilder<F> b(field);
  for (const auto& [m, v] : x) b.add_scaled(eval_mono(field, m, at), v);
  return b.build();
}

template <class F>
typename F::Elem evaluate(const F& field, const ScalarPoly<F>& x, const std::map<std::uint32_t, typename F::Elem>& at) {
  auto s = field.zero();
  for (const auto& [m, c] : x) s = field.add(s, field.mul(c, eval_mono(field, m, at)));
  return s;
}

template <class F>
std::size_t degree_of(const ScalarPoly<F>& x) {
  std::size_t d = 0;
  for (const auto& [m, c] : x) d = std::max(d, m.size());
  return d;
}

template <class F>
struct Slot {
  int l = 0, d = 0;
  const KoszulComplex<F>* complex = nullptr;
  ParamPoly<F> value;
};

struct Stop {
  MasseyStatus status;
  std::string reason;
};

template <class F>
class MasseySolver {
 public:
  MasseySolver(const KoszulComplex<F>& ka, const KoszulComplex<F>* km, const std::vector<HomologyClass<F>>& v,
               std::size_t budget)
      : ka_(ka), km_(km), v_(v), field_(ka.field()), budget_(budget), n_(static_cast<int>(v.size())) {}

  const KoszulComplex<F>& complex_for(int i) const { return (km_ != nullptr && i == 0) ? *km_ : ka_; }

  int hom_degree(int i, int j) const {
    int l = j - i - 1;
    for (int k = i + 1; k <= j; ++k) l += v_[k - 1].l;
    return l;
  }
  int int_degree(int i, int j) const {
    int d = 0;
    for (int k = i + 1; k <= j; ++k) d += v_[k - 1].d;
    return d;
  }

  /// sum_{k=i+1}^{j-1} bar(a_ik) a_kj
  ParamPoly<F> rhs(int i, int j) const {
    ParamPoly<F> out;
    for (int k = i + 1; k < j; ++k) {
      const auto& a = slots_.at({i, k});
      const auto& b = slots_.at({k, j});
      auto bar = (a.l + 1) % 2 == 0 ? field_.one() : field_.neg(field_.one());
      for (const auto& [ma, va] : a.value) {
        for (const auto& [mb, vb] : b.value) {
          auto prod = koszul_product(*a.complex, a.l, a.d, va, *b.complex, b.l, b.d, vb);
          pp_add(field_, out, mono_merge(ma, mb), scale(field_, bar, prod));
          if (out.size() > budget_) throw Stop{MasseyStatus::inconclusive, "parameter budget exceeded"};
        }
      }
    }
    return out;
  }

  /// Splits a chain-valued polynomial in K_{l,d} into its lift, class and non-cycle parts.
  void split(const KoszulComplex<F>& k, int l, int d, const ParamPoly<F>& x, ParamPoly<F>* lift,
             std::vector<ScalarPoly<F>>* classes, std::vector<ScalarPoly<F>>* rest) const {
    if (k.dim(l, d) == 0) return;
    const auto& piece = k.homology(l, d);
    if (classes) classes->assign(piece.dim(), {});
    if (rest) rest->assign(k.dim(l, d), {});
    for (const auto& [m, vec] : x) {
      auto s = piece.split(vec);
      if (lift) pp_add(field_, *lift, m, s.lift);
      if (classes) {
        for (const auto& [r, c] : s.classes) sp_add(field_, (*classes)[r], m, c);
      }
      if (rest) {
        for (const auto& [r, c] : s.rest) sp_add(field_, (*rest)[r], m, c);
      }
    }
  }

  void eliminate(std::uint32_t p, const ScalarPoly<F>& e) {
    for (auto& [key, s] : slots_) s.value = substitute(field_, s.value, p, e);
    for (auto& q : pending_) q = substitute(field_, q, p, e);
  }

  /// Imposes q = 0 for every q, solving affine constraints by elimination.
  void impose(std::vector<ScalarPoly<F>> cons) {
    for (auto& q : pending_) cons.push_back(std::move(q));
    pending_.clear();
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k < cons.size(); ++k) {
        auto& q = cons[k];
        if (q.empty()) continue;
        std::size_t deg = degree_of<F>(q);
        if (deg == 0) throw Stop{MasseyStatus::no_defining_system, "no defining system exists"};
        if (deg > 1) continue;
        std::uint32_t p = 0;
        for (const auto& [m, c] : q) {
          if (m.size() == 1) p = std::max(p, m[0]);
        }
        auto coeff = q.at(ParamMono{p});
        auto inv = field_.neg(field_.inv(coeff));
        ScalarPoly<F> e;
        for (const auto& [m, c] : q) {
          if (m != ParamMono{p}) sp_add(field_, e, m, field_.mul(inv, c));
        }
        eliminate(p, e);
        for (auto& other : cons) other = substitute(field_, other, p, e);
        changed = true;
        break;
      }
    }
    for (auto& q : cons) {
      if (!q.empty()) pending_.push_back(std::move(q));
    }
  }

  MasseyResult<F> run() {
    MasseyResult<F> result;
    try {
      build();
      finish(result);
    } catch (const Stop& s) {
      result.status = s.status;
      result.reason = s.reason;
    } catch (const CapError& e) {
      result.status = MasseyStatus::inconclusive;
      result.reason = e.what();
    }
    return result;
  }

 private:
  void build() {
    for (int i = 1; i <= n_; ++i) {
      const auto& c = complex_for(i - 1);
      const auto& cls = v_[i - 1];
      if (cls.l < 0 || cls.d < 0 || cls.d > c.d_cap()) throw InputError("homology class outside the complex");
      const auto& piece = c.homology(cls.l, cls.d);
      if (!cls.coords.empty() && cls.coords.max_index() >= piece.dim()) throw InputError("class coordinates out of range");
      Slot<F> s{cls.l, cls.d, &c, {}};
      pp_add(field_, s.value, ParamMono{}, piece.representative(cls.coords));
      slots_[{i - 1, i}] = std::move(s);
    }
    for (int len = 2; len <= n_; ++len) {
      for (int i = 0; i + len <= n_; ++i) {
        int j = i + len;
        if (i == 0 && j == n_) continue;
        const auto& c = complex_for(i);
        int l = hom_degree(i, j), d = int_degree(i, j);
        auto r = rhs(i, j);
        ParamPoly<F> lift;
        std::vector<ScalarPoly<F>> classes, rest;
        split(c, l - 1, d, r, &lift, &classes, &rest);
        Slot<F> s{l, d, &c, std::move(lift)};
        if (c.dim(l, d) > 0) {
          const auto& piece = c.homology(l, d);
          for (const auto& rep : piece.representatives()) pp_add(field_, s.value, ParamMono{next_param_++}, rep);
        }
        slots_[{i, j}] = std::move(s);
        classes.insert(classes.end(), rest.begin(), rest.end());
        impose(std::move(classes));
      }
    }
  }

  void finish(MasseyResult<F>& result) {
    const auto& c = complex_for(0);
    int l = hom_degree(0, n_) - 1, d = int_degree(0, n_);
    auto final = rhs(0, n_);
    std::vector<ScalarPoly<F>> classes;
    split(c, l, d, final, nullptr, &classes, nullptr);
    bool zero = std::all_of(classes.begin(), classes.end(), [](const auto& q) { return q.empty(); });
    if (zero) {
      result.status = MasseyStatus::vanishes;
      result.reason = pending_.empty() ? "final element bounds for every defining system"
                                       : "final element bounds for every defining system (nonlinear constraints left unsolved)";
      return;
    }
    std::set<std::uint32_t> params;
    auto collect = [&](const ParamMono& m) { params.insert(m.begin(), m.end()); };
    for (const auto& [key, s] : slots_) {
      for (const auto& [m, v] : s.value) collect(m);
    }
    for (const auto& q : pending_) {
      for (const auto& [m, x] : q) collect(m);
    }
    for (const auto& q : classes) {
      for (const auto& [m, x] : q) collect(m);
    }
    std::vector<std::uint32_t> free(params.begin(), params.end());

    std::vector<typename F::Elem> values;
    long limit = field_.characteristic() == 0 ? 1L << 30 : static_cast<long>(field_.characteristic());
    values.push_back(field_.zero());
    for (long k = 1; 2 * k < limit && values.size() < 64; ++k) {
      values.push_back(field_.from_int(k));
      values.push_back(field_.from_int(-k));
    }
    std::size_t tested = 0;
    std::size_t prev_width = 0;
    for (std::size_t width = 1; width <= values.size() && tested < budget_; width += 2) {
      std::vector<std::size_t> idx(free.size(), 0);
      while (tested < budget_) {
        bool fresh = free.empty() || std::any_of(idx.begin(), idx.end(), [&](std::size_t x) { return x >= prev_width; });
        if (fresh) {
          ++tested;
          std::map<std::uint32_t, typename F::Elem> at;
          for (std::size_t k = 0; k < free.size(); ++k) at[free[k]] = values[idx[k]];
          if (try_point(at, classes, l, d, result)) return;
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == width) idx[k++] = 0;
        if (k == idx.size()) break;
      }
      if (free.empty()) break;
      prev_width = width;
    }
    result.status = MasseyStatus::inconclusive;
    result.reason = "no non-bounding defining system found within the search budget";
  }

  bool try_point(const std::map<std::uint32_t, typename F::Elem>& at, const std::vector<ScalarPoly<F>>& classes, int l,
                 int d, MasseyResult<F>& result) const {
    for (const auto& q : pending_) {
      if (!field_.is_zero(evaluate(field_, q, at))) return false;
    }
    VectorBuilder<F> cls(field_);
    for (std::size_t r = 0; r < classes.size(); ++r) cls.add(static_cast<std::uint32_t>(r), evaluate(field_, classes[r], at));
    if (cls.empty()) return false;
    MasseyResult<F> candidate;
    candidate.status = MasseyStatus::non_vanishing;
    candidate.reason = "defining system with a non-bounding final element";
    for (const auto& [key, s] : slots_) {
      candidate.system.push_back({key.first, key.second, s.l, s.d, !s.complex->is_ring(), evaluate(field_, s.value, at)});
    }
    candidate.product = HomologyClass<F>{l, d, cls.build()};
    if (!verify_massey_witness(ka_, km_, v_, candidate)) return false;
    result = std::move(candidate);
    return true;
  }

  const KoszulComplex<F>& ka_;
  const KoszulComplex<F>* km_;
  const std::vector<HomologyClass<F>>& v_;
  F field_;
  std::size_t budget_;
  int n_;
  std::map<std::pair<int, int>, Slot<F>> slots_;
  std::vector<ScalarPoly<F>> pending_;
  std::uint32_t next_param_ = 0;
};

}  // namespace

template <class F>
MasseyResult<F> massey_product(const KoszulComplex<F>& ka, const KoszulComplex<F>* km,
                               const std::vector<HomologyClass<F>>& v, MasseyOptions options) {
  if (v.size() < 2) throw InputError("a Massey product needs at least two classes");
  if (!ka.is_ring()) throw InputError("the first Koszul complex must be the ring complex");
  if (km != nullptr && km->is_ring()) throw InputError("the module Koszul complex is a ring complex");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].l < 1 && !(i == 0 && km != nullptr)) throw InputError("Massey factors from the ring must have positive homological degree");
  }
  return MasseySolver<F>(ka, km, v, options.budget).run();
}

template <class F>
bool verify_massey_witness(const KoszulComplex<F>& ka, const KoszulComplex<F>* km,
                           const std::vector<HomologyClass<F>>& v, const MasseyResult<F>& result) {
  if (result.status != MasseyStatus::non_vanishing || !result.product) return false;
  const int n = static_cast<int>(v.size());
  const F& field = ka.field();
  std::map<std::pair<int, int>, const MasseyEntry<F>*> at;
  for (const auto& e : result.system) at[{e.i, e.j}] = &e;
  auto cx = [&](int i) -> const KoszulComplex<F>& { return (km != nullptr && i == 0) ? *km : ka; };
  auto sum_products = [&](int i, int j, int l, int d) {
    VectorBuilder<F> b(field);
    for (int k = i + 1; k < j; ++k) {
      const auto& a = *at.at({i, k});
      const auto& c = *at.at({k, j});
      auto bar = (a.l + 1) % 2 == 0 ? field.one() : field.neg(field.one());
      b.add_scaled(bar, koszul_product(cx(i), a.l, a.d, a.value, cx(k), c.l, c.d, c.value));
    }
    (void)l;
    (void)d;
    return b.build();
  };
  try {
    for (int len = 1; len <= n; ++len) {
      for (int i = 0; i + len <= n; ++i) {
        int j = i + len;
        if (i == 0 && j == n) continue;
        auto it = at.find({i, j});
        if (it == at.end()) return false;
        const auto& e = *it->second;
        const auto& c = cx(i);
        int l = j - i - 1, d = 0;
        for (int k = i + 1; k <= j; ++k) {
          l += v[k - 1].l;
          d += v[k - 1].d;
        }
        if (e.l != l || e.d != d) return false;
        if (len == 1) {
          if (c.apply_boundary(l, d, e.value).size() != 0) return false;
          if (!(c.homology(l, d).class_of(e.value) == v[i].coords)) return false;
        } else if (!(c.apply_boundary(l, d, e.value) == sum_products(i, j, l - 1, d))) {
          return false;
        }
      }
    }
    const auto& c = cx(0);
    const auto& p = *result.product;
    auto final = sum_products(0, n, p.l, p.d);
    if (c.dim(p.l, p.d) == 0 || !c.apply_boundary(p.l, p.d, final).empty()) return false;
    auto cls = c.homology(p.l, p.d).class_of(final);
    return !cls.empty() && cls == p.coords;
  } catch (const InternalError&) {
    return false;
  } catch (const std::out_of_range&) {
    return false;
  }
}

// ---------------------------------------------------------------- Jacobian cycles

namespace {

template <class F>
Poly<F> determinant(const RingPtr<F>& ring, const std::vector<std::vector<Poly<F>>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Poly<F> out(ring);
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b];
    }
    Poly<F> term = Poly<F>::constant(ring, ring->field().one());
    for (std::size_t r = 0; r < n && !term.is_zero(); ++r) term = term * m[r][perm[r]];
    out = inversions % 2 == 0 ? out + term : out - term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

template <class F>
HerzogReport<F> herzog_cycles(const AlgebraPtr<F>& r, int l) {
  HerzogReport<F> rep;
  rep.l = l;
  const F& field = r->field();
  if (field.characteristic() != 0) {
    rep.reason = "requires characteristic zero";
    return rep;
  }
  const auto* pres = r->presentation();
  if (pres == nullptr) {
    rep.reason = "algebra is not given as a quotient of a polynomial ring";
    return rep;
  }
  const auto& ring = pres->ring;
  const std::size_t n = ring->nvars();
  if (l < 1 || l > static_cast<int>(n)) throw InputError("homological degree out of range for Jacobian cycles");
  if (min_gens(r).generators.size() != n) {
    rep.reason = "the defining ideal is not inside the square of the maximal ideal";
    return rep;
  }
  const auto& w = ring->weights();
  std::vector<Homogeneous<F>> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back({w[i], pres->to_vector(Poly<F>::variable(ring, i), w[i])});
  auto module = regular_module(r);
  auto bound = koszul_vanishing_bound(*module, gens);
  if (!bound || (!r->is_finite() && *bound > r->cap())) throw CapError("algebra is not stored far enough for its Koszul homology");
  auto k = std::make_shared<const KoszulComplex<F>>(module, gens, *bound, true, true);
  rep.complex = k;
  rep.applicable = true;
  for (int d = 0; d <= k->d_cap(); ++d) rep.homology_dim += k->homology(l, d).dim();

  auto pr = resolution_over_poly_ring(*pres->ideal);
  const auto& res = *pr.resolution;
  const auto* spres = pr.ring->presentation();
  // alpha[s][j][k]: entry of d_s from generator j of F_s to generator k of F_{s-1}
  std::vector<std::vector<std::map<std::size_t, Poly<F>>>> alpha(l + 1);
  for (int s = 1; s <= l; ++s) {
    const auto& degs = res.generator_degrees(s);
    const auto& prev = res.generator_degrees(s - 1);
    for (std::size_t j = 0; j < degs.size(); ++j) {
      std::map<std::size_t, Poly<F>> row;
      const auto& img = res.generator_images(s)[j];
      for (const auto& blk : res.layout(s - 1).blocks(degs[j])) {
        SparseVector<F> local;
        for (const auto& [i, c] : img) {
          if (i >= blk.offset && i < blk.offset + blk.size) local.push_back(i - blk.offset, c);
        }
        if (!local.empty()) row.emplace(blk.generator, spres->to_poly(degs[j] - prev[blk.generator], local));
      }
      alpha[s].push_back(std::move(row));
    }
  }

  const auto& top_degs = res.generator_degrees(l);
  std::map<int, Echelon<F>> chosen;
  std::vector<std::vector<SparseVector<F>>> all_solutions(top_degs.size());
  auto independent = [&](int g, const SparseVector<F>& z, bool commit) {
    auto cls = k->homology(l, g).class_of(z);
    auto it = chosen.try_emplace(g, field, k->homology(l, g).dim()).first;
    if (!commit) return !it->second.contains(cls);
    return it->second.insert(cls);
  };
  for (std::size_t j1 = 0; j1 < top_degs.size(); ++j1) {
    const int g = top_degs[j1];
    std::vector<SparseVector<F>> candidates;
    std::vector<std::size_t> chain{j1};
    std::function<void(int)> walk = [&](int s) {
      if (s == 0) {
        std::vector<Poly<F>> fs;
        for (int t = 0; t < l; ++t) fs.push_back(alpha[l - t].at(chain[t]).at(chain[t + 1]));
        VectorBuilder<F> b(field);
        for (std::size_t si = 0; si < k->subsets(l).size(); ++si) {
          std::uint64_t sigma = k->subsets(l)[si];
          std::vector<std::size_t> vars;
          mpz_class weight_product = 1;
          for (std::uint64_t t = sigma; t != 0; t &= t - 1) {
            vars.push_back(std::countr_zero(t));
            weight_product *= w[vars.back()];
          }
          std::vector<std::vector<Poly<F>>> jac(l);
          for (int a = 0; a < l; ++a) {
            for (auto v : vars) jac[a].push_back(fs[a].partial_derivative(v));
          }
          auto det = determinant(ring, jac);
          int e = g - k->weight(sigma);
          if (det.is_zero() || r->known_zero(e)) continue;
          auto [off, size] = k->block(l, g, si);
          if (size == 0) continue;
          b.add_scaled(field.from_integer(weight_product), pres->to_vector(det, e), off);
        }
        candidates.push_back(b.build());
        return;
      }
      for (const auto& [next, poly] : alpha[s].at(chain.back())) {
        if (poly.is_zero()) continue;
        chain.push_back(next);
        walk(s - 1);
        chain.pop_back();
      }
    };
    walk(l);
    std::vector<SparseVector<F>> images;
    for (const auto& c : candidates) images.push_back(k->apply_boundary(l, g, c));
    LinearMap<F> cycle_map(field, k->dim(l - 1, g), images);
    std::size_t count = 0;
    bool picked = false;
    for (const auto& sol : cycle_map.kernel()) {
      VectorBuilder<F> z(field);
      for (const auto& [idx, c] : sol) z.add_scaled(c, candidates[idx]);
      auto cycle = z.build();
      if (cycle.empty()) continue;
      ++count;
      if (!picked && independent(g, cycle, true)) {
        rep.cycles.push_back({l, g, cycle});
        picked = true;
      } else {
        all_solutions[j1].push_back(std::move(cycle));
      }
    }
    rep.solutions_per_generator.push_back(count);
  }
  for (std::size_t j1 = 0; j1 < top_degs.size(); ++j1) {
    for (const auto& z : all_solutions[j1]) {
      if (independent(top_degs[j1], z, true)) rep.cycles.push_back({l, top_degs[j1], z});
    }
  }
  for (const auto& [g, e] : chosen) rep.span_rank += e.rank();
  rep.spans = rep.span_rank == rep.homology_dim;
  return rep;
}

#define GOLODLAB_INSTANTIATE(F)                                                                                   \
  template class HomologyPiece<F>;                                                                                \
  template class KoszulComplex<F>;                                                                                \
  template std::optional<int> koszul_vanishing_bound(const GradedModule<F>&, const std::vector<Homogeneous<F>>&); \
  template SparseVector<F> koszul_product(const KoszulComplex<F>&, int, int, const SparseVector<F>&,              \
                                          const KoszulComplex<F>&, int, int, const SparseVector<F>&);             \
  template std::vector<HomologyClass<F>> homology_basis(const KoszulComplex<F>&, int);                            \
  template HomologyClass<F> homology_product(const KoszulComplex<F>&, const HomologyClass<F>&,                    \
                                             const KoszulComplex<F>&, const HomologyClass<F>&);                   \
  template MasseyResult<F> massey_product(const KoszulComplex<F>&, const KoszulComplex<F>*,                       \
                                          const std::vector<HomologyClass<F>>&, MasseyOptions);                   \
  template bool verify_massey_witness(const KoszulComplex<F>&, const KoszulComplex<F>*,                           \
                                      const std::vector<HomologyClass<F>>&, const MasseyResult<F>&);              \
  template HerzogReport<F> herzog_cycles(const AlgebraPtr<F>&, int);

GOLODLAB_INSTANTIATE(Rationals)
GOLODLAB_INSTANTIATE(PrimeField)

}  // namespace golodlab
