#include "golodlab/golod.hpp"

#include <algorithm>

#include "golodlab/error.hpp"
#include "golodlab/field.hpp"

namespace golodlab {

Coeffs serre_bound(const Coeffs& kappa_m, const Coeffs& kappa_r, int h) {
  if (kappa_r.empty() || kappa_r[0] != 1) throw InputError("ring Koszul polynomial must have constant term 1");
  Coeffs reduced = kappa_r;
  reduced[0] = 0;
  Coeffs denom = series_sub(Coeffs{1}, series_shift(reduced, h), h);
  return series_div(kappa_m, denom, h);
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::certified_golod: return "CertifiedGolod";
    case VerdictKind::refuted_not_golod: return "RefutedNotGolod";
    case VerdictKind::consistent_up_to: return "ConsistentUpTo";
    case VerdictKind::inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::holds: return "holds";
    case TheoremStatus::violated: return "violated";
    case TheoremStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<std::string> theorem_names() {
  return {"trivial-extension", "fibre-ideal",    "iterated-fibre",   "retract-descent",
          "series-formula",    "koszul-identities", "golod-transfer", "retract-series",
          "large-transfer",    "fibre-over-field",  "golod-module-ring"};
}

namespace {

bool complete_at(const TruncatedSeries& s, int i) {
  if (i < static_cast<int>(s.coeffs.size())) return s.complete_through() >= i;
  return s.all_complete();
}

template <class F>
int window_for(const GradedModule<F>& m, const GolodOptions& opt) {
  return golod_window(m, opt);
}

template <class F>
TruncatedSeries poincare_of(const ModulePtr<F>& m, const GolodOptions& opt) {
  typename Resolution<F>::Options ro;
  ro.h_cap = opt.h_cap;
  ro.d_cap = window_for(*m, opt);
  return Resolution<F>(m, ro).poincare();
}

template <class F>
std::string chain_text(const KoszulComplex<F>& k, const HomologyClass<F>& c) {
  return k.format(c.l, c.d, k.homology(c.l, c.d).representative(c.coords));
}

template <class F>
std::optional<ProductWitness<F>> find_product(const KoszulComplex<F>& ka, const KoszulComplex<F>& km) {
  auto hb = homology_basis(ka, 1);
  auto vb = homology_basis(km, 0);
  auto make = [&](bool ring, const HomologyClass<F>& h, const HomologyClass<F>& v,
                  const KoszulComplex<F>& right) -> std::optional<ProductWitness<F>> {
    HomologyClass<F> p;
    try {
      p = homology_product(ka, h, right, v);
    } catch (const CapError&) {
      return std::nullopt;
    }
    if (p.coords.empty()) return std::nullopt;
    ProductWitness<F> w;
    w.ring_product = ring;
    w.left = h;
    w.right = v;
    w.product = p;
    w.left_text = chain_text(ka, h);
    w.right_text = chain_text(right, v);
    w.product_text = chain_text(right, p);
    return w;
  };
  for (const auto& h : hb) {
    for (const auto& v : vb) {
      if (auto w = make(false, h, v, km)) return w;
    }
  }
  for (std::size_t i = 0; i < hb.size(); ++i) {
    for (std::size_t j = i; j < hb.size(); ++j) {
      if (auto w = make(true, hb[i], hb[j], ka)) return w;
    }
  }
  return std::nullopt;
}

template <class F>
struct MasseySearch {
  std::optional<MasseyWitness<F>> witness;
  std::size_t checked = 0;
  bool truncated = false;
};

template <class F>
MasseySearch<F> search_massey(const KoszulComplex<F>& ka, const KoszulComplex<F>& km, const GolodOptions& opt) {
  MasseySearch<F> out;
  auto hb = homology_basis(ka, 1);
  auto vb = homology_basis(km, 0);
  auto run = [&](bool module_mode, int n) {
    std::vector<std::size_t> sizes(n, hb.size());
    if (module_mode) sizes[0] = vb.size();
    for (auto s : sizes) {
      if (s == 0) return false;
    }
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      if (out.checked >= opt.massey_tuple_limit) {
        out.truncated = true;
        return false;
      }
      std::vector<HomologyClass<F>> v;
      for (int k = 0; k < n; ++k) v.push_back(module_mode && k == 0 ? vb[idx[0]] : hb[idx[k]]);
      ++out.checked;
      const KoszulComplex<F>* kmp = module_mode ? &km : nullptr;
      auto r = massey_product(ka, kmp, v);
      if (r.status == MasseyStatus::non_vanishing && verify_massey_witness(ka, kmp, v, r)) {
        out.witness = MasseyWitness<F>{module_mode, v, r};
        return true;
      }
      int k = n - 1;
      while (k >= 0 && ++idx[k] == sizes[k]) idx[k--] = 0;
      if (k < 0) return false;
    }
  };
  for (int n = 3; n <= opt.massey_order; ++n) {
    if (run(true, n) || run(false, n) || out.truncated) break;
  }
  return out;
}

}  // namespace

template <class F>
int golod_window(const GradedModule<F>& m, const GolodOptions& opt) {
  if (opt.d_cap) return *opt.d_cap;
  const auto& a = *m.algebra();
  int d = default_d_cap(a, m, opt.h_cap);
  if (!a.is_finite()) d = std::min(d, a.cap());
  if (!m.is_finite()) d = std::min(d, m.cap());
  return d;
}

// ---------------------------------------------------------------- certifiers

template <class F>
HunekeCertificate<F> herzog_huneke_certify(const ModulePtr<F>& m) {
  HunekeCertificate<F> c;
  const auto& a = *m->algebra();
  if (a.field().characteristic() != 0) {
    c.reason = "requires characteristic zero";
    return c;
  }
  const auto* pres = a.presentation();
  if (!pres) {
    c.reason = "algebra is not a quotient of a polynomial ring";
    return c;
  }
  auto dideal = derivative_ideal(*pres->ideal);
  const auto& gens = dideal.generators();
  for (const auto& g : gens) c.derivative_generators.push_back(g.to_string());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i; j < gens.size(); ++j) {
      ++c.products_checked;
      if (!pres->gb->contains(gens[i] * gens[j])) {
        c.reason = "(" + gens[i].to_string() + ")*(" + gens[j].to_string() + ") is not in I";
        return c;
      }
    }
  }
  auto mg = min_gens_module(*m);
  if (!mg.exact) {
    c.reason = "module generators are not determined inside the stored window";
    return c;
  }
  for (const auto& g : gens) {
    const int e = static_cast<int>(g.weighted_degree().degree);
    if (a.known_zero(e)) continue;
    if (e > a.cap()) {
      c.reason = "derivative generator " + g.to_string() + " lies above the stored window";
      return c;
    }
    auto gv = pres->to_vector(g, e);
    if (gv.empty()) continue;
    for (const auto& x : mg.generators) {
      ++c.annihilator_checks;
      if (m->known_zero(e + x.degree)) continue;
      if (!m->act(e, gv, x.degree, x.vec).empty()) {
        c.reason = g.to_string() + " does not annihilate M";
        return c;
      }
    }
  }
  c.applicable = true;
  return c;
}

template <class F>
std::optional<CycleCertificate> cycle_precertify(const ModulePtr<F>& m) {
  const auto a = m->algebra();
  auto first = herzog_cycles(a, 1);
  if (!first.applicable || !first.spans) return std::nullopt;
  const auto kx = first.complex;
  std::vector<HomologyClass<F>> xs = first.cycles;
  for (int l = 2; l <= static_cast<int>(kx->rank()); ++l) {
    auto rep = herzog_cycles(a, l);
    if (!rep.applicable || !rep.spans) return std::nullopt;
    xs.insert(xs.end(), rep.cycles.begin(), rep.cycles.end());
  }
  auto bound = koszul_vanishing_bound(*m, kx->generators());
  if (!bound || (!m->is_finite() && *bound > m->cap())) return std::nullopt;
  KoszulComplex<F> ky(m, kx->generators(), *bound, true, false);
  CycleCertificate cert;
  cert.ring_cycles = xs.size();
  try {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i; j < xs.size(); ++j) {
        ++cert.products_checked;
        if (!koszul_product(*kx, xs[i].l, xs[i].d, xs[i].coords, *kx, xs[j].l, xs[j].d, xs[j].coords).empty()) {
          return std::nullopt;
        }
      }
    }
    for (const auto& y : homology_basis(ky, 0)) {
      ++cert.module_cycles;
      auto yrep = ky.homology(y.l, y.d).representative(y.coords);
      for (const auto& x : xs) {
        ++cert.products_checked;
        if (!koszul_product(ky, y.l, y.d, yrep, *kx, x.l, x.d, x.coords).empty()) return std::nullopt;
      }
    }
  } catch (const CapError&) {
    return std::nullopt;
  }
  return cert;
}

template <class F>
bool verify_product_witness(const KoszulComplex<F>& ka, const KoszulComplex<F>& km, const ProductWitness<F>& w) {
  const auto& right = w.ring_product ? ka : km;
  auto x = ka.homology(w.left.l, w.left.d).representative(w.left.coords);
  auto y = right.homology(w.right.l, w.right.d).representative(w.right.coords);
  auto z = koszul_product(ka, w.left.l, w.left.d, x, right, w.right.l, w.right.d, y);
  const auto& target = right.homology(w.left.l + w.right.l, w.left.d + w.right.d);
  if (target.is_boundary(z)) return false;
  return target.class_of(z) == w.product.coords;
}

// ---------------------------------------------------------------- tests

template <class F>
GolodAnalysis<F> golod_module_test(const ModulePtr<F>& m, const GolodOptions& opt) {
  if (opt.h_cap < 0) throw InputError("h_cap must be nonnegative");
  const auto a = m->algebra();
  GolodAnalysis<F> out;
  auto& v = out.verdict;
  const int h = opt.h_cap;

  auto ka = KoszulComplex<F>::of_algebra(a);
  auto km = KoszulComplex<F>::of_module(m);
  out.kappa_module = km->kappa();
  out.kappa_ring = ka->kappa();

  typename Resolution<F>::Options ro;
  ro.h_cap = h;
  ro.d_cap = window_for(*m, opt);
  Resolution<F> res(m, ro);
  out.poincare = res.poincare();
  out.betti = res.betti_table();
  v.h_cap = h;
  v.d_cap = ro.d_cap;

  out.serre_bound.coeffs = serre_bound(out.kappa_module.coeffs, out.kappa_ring.coeffs, h);
  for (int i = 0; i <= h; ++i) {
    out.serre_bound.complete.push_back(complete_at(out.kappa_module, i) && complete_at(out.kappa_ring, i));
  }

  const int p_through = out.poincare.complete_through();
  for (int i = 0; i <= h; ++i) {
    const auto pi = out.poincare.coeffs[i];
    const auto bi = out.serre_bound.coeffs[i];
    if (!out.serre_bound.complete[i]) continue;
    if (pi > bi) {
      throw InternalError("Serre inequality violated: P_" + std::to_string(i) + " = " + std::to_string(pi) +
                          " exceeds the bound " + std::to_string(bi));
    }
    if (!v.mismatch && i <= p_through && pi < bi) v.mismatch = SeriesMismatch{i, pi, bi};
  }

  v.product = find_product(*ka, *km);
  if (v.product && !verify_product_witness(*ka, *km, *v.product)) {
    throw InternalError("product witness does not re-verify");
  }

  if (!v.mismatch && !v.product && opt.massey_order >= 3) {
    auto ms = search_massey(*ka, *km, opt);
    out.massey_checked = ms.checked;
    v.massey = ms.witness;
  }
  const bool refuted = v.mismatch || v.product || v.massey;

  bool certified = false;
  std::string cert_reason;
  if (opt.certify) {
    v.huneke = herzog_huneke_certify(m);
    if (v.huneke->applicable) {
      certified = true;
      cert_reason = "derivative ideal squares into I and annihilates M";
    } else if (!refuted && a->field().characteristic() == 0) {
      v.cycles = cycle_precertify(m);
      if (v.cycles) {
        certified = true;
        cert_reason = "Jacobian cycles and module cycles multiply to zero on the chain level";
      }
    }
  }

  if (certified && refuted) throw InternalError("a Golod certificate coexists with a refutation");

  v.window_consistent = !refuted && out.kappa_module.all_complete() && out.kappa_ring.all_complete() && p_through >= h;
  if (v.mismatch) {
    v.kind = VerdictKind::refuted_not_golod;
    v.reason = "P_" + std::to_string(v.mismatch->i) + " = " + std::to_string(v.mismatch->computed) +
               " is below the bound " + std::to_string(v.mismatch->bound);
  } else if (v.product) {
    v.kind = VerdictKind::refuted_not_golod;
    v.reason = v.product->ring_product ? "nonzero product in H_{>=1} of the ring"
                                       : "nonzero product H_{>=1}(A) * H(M)";
  } else if (v.massey) {
    v.kind = VerdictKind::refuted_not_golod;
    v.reason = "nonvanishing Massey product";
  } else if (certified) {
    v.kind = VerdictKind::certified_golod;
    v.reason = cert_reason;
  } else if (!out.kappa_module.all_complete() || !out.kappa_ring.all_complete()) {
    v.kind = VerdictKind::inconclusive;
    v.reason = "Koszul homology not determined inside the stored window";
  } else if (p_through < h) {
    v.kind = VerdictKind::inconclusive;
    v.reason = "Poincare series complete only through t^" + std::to_string(p_through);
  } else {
    v.kind = VerdictKind::consistent_up_to;
  }
  return out;
}

template <class F>
GolodAnalysis<F> golod_ring_test(const AlgebraPtr<F>& a, const GolodOptions& opt) {
  return golod_module_test(residue_field(a), opt);
}

// ---------------------------------------------------------------- retracts

namespace {

template <class F>
std::optional<int> max_degree_of(const std::vector<Homogeneous<F>>& gens) {
  std::optional<int> out;
  for (const auto& g : gens) out = std::max(out.value_or(g.degree), g.degree);
  return out;
}

template <class F>
ModulePtr<F> kernel_module(const AlgebraPtr<F>& a, const AlgebraMap<F>& inclusion, std::vector<Subspace<F>> spans,
                           std::optional<int> gen_bound) {
  auto sub = submodule_from_spans(regular_module(a), std::move(spans), gen_bound, ModuleKind::ideal);
  return restrict_along(inclusion, sub);
}

}  // namespace

template <class F>
Retract<F> retract_from_trivial_extension(const AlgebraPtr<F>& r, const ModulePtr<F>& m) {
  auto te = trivial_extension(r, m);
  const auto& a = *te.algebra;
  std::vector<Subspace<F>> spans;
  for (int d = 0; d <= a.cap(); ++d) {
    const std::size_t n = a.dim(d);
    const std::size_t base = r->known_zero(d) ? 0 : r->dim(d);
    std::vector<SparseVector<F>> units;
    for (std::size_t i = base; i < n; ++i) units.push_back(SparseVector<F>::unit(static_cast<std::uint32_t>(i), a.field()));
    spans.emplace_back(a.field(), n, units);
  }
  Retract<F> rt;
  rt.kind = "trivial-extension";
  rt.base = r;
  rt.algebra = te.algebra;
  rt.inclusion = te.inclusion;
  rt.sections = {te.projection};
  rt.kernels = {kernel_module(te.algebra, te.inclusion, std::move(spans), m->gen_degree_bound())};
  return rt;
}

template <class F>
Retract<F> retract_from_fibre(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& ideal_gens) {
  auto fp = iterated_fibre(r, ideal_gens, 2);
  if (!fp.diagonal) throw InternalError("fibre product without a diagonal");
  Retract<F> rt;
  rt.kind = "fibre";
  rt.base = r;
  rt.algebra = fp.algebra;
  rt.inclusion = *fp.diagonal;
  rt.sections = fp.projections;
  for (std::size_t k = 0; k < 2; ++k) {
    rt.kernels.push_back(kernel_module(fp.algebra, rt.inclusion, fp.kernel_of_projection[k], max_degree_of(ideal_gens)));
  }
  return rt;
}

// ---------------------------------------------------------------- theorem checks

namespace {

enum class Pol { golod, not_golod, unknown };

struct Side {
  Pol pol = Pol::unknown;
  bool proven = false;
};

template <class F>
Side side_of(const GolodAnalysis<F>& g) {
  switch (g.verdict.kind) {
    case VerdictKind::certified_golod: return {Pol::golod, true};
    case VerdictKind::consistent_up_to: return {Pol::golod, false};
    case VerdictKind::refuted_not_golod: return {Pol::not_golod, true};
    default: return {Pol::unknown, false};
  }
}

Side both(Side a, Side b) {
  if (a.pol == Pol::not_golod) return a;
  if (b.pol == Pol::not_golod) return b;
  if (a.pol == Pol::golod && b.pol == Pol::golod) return {Pol::golod, a.proven && b.proven};
  return {};
}

const char* conflict_note = "evidence conflicts inside the window; a consistent verdict is not a proof";

struct Combiner {
  TheoremReport report;
  bool started = false;

  void apply(TheoremStatus s, const std::string& note = {}) {
    if (!started) {
      report.status = s;
      started = true;
    } else if (s == TheoremStatus::violated || report.status == TheoremStatus::violated) {
      report.status = TheoremStatus::violated;
    } else if (s == TheoremStatus::inconclusive || report.status == TheoremStatus::inconclusive) {
      report.status = TheoremStatus::inconclusive;
    }
    if (!note.empty() && s != TheoremStatus::holds) {
      report.note += (report.note.empty() ? "" : "; ") + note;
    }
  }

  void equivalent(const std::vector<Side>& sides, const std::string& what) {
    bool unknown = false, golod = false, refuted = false, proven_golod = false;
    for (const auto& s : sides) {
      unknown |= s.pol == Pol::unknown;
      golod |= s.pol == Pol::golod;
      refuted |= s.pol == Pol::not_golod;
      proven_golod |= s.pol == Pol::golod && s.proven;
    }
    if (unknown) return apply(TheoremStatus::inconclusive, what + ": a side is inconclusive");
    if (!(golod && refuted)) return apply(TheoremStatus::holds);
    if (proven_golod) return apply(TheoremStatus::violated, what + ": certified side disagrees with a refutation");
    apply(TheoremStatus::inconclusive, what + ": " + conflict_note);
  }

  void implies(Side lhs, Side rhs, const std::string& what) {
    if (lhs.pol == Pol::not_golod) return apply(TheoremStatus::holds);
    if (lhs.pol == Pol::unknown) return apply(TheoremStatus::inconclusive, what + ": hypothesis inconclusive");
    if (rhs.pol == Pol::golod) return apply(TheoremStatus::holds);
    if (rhs.pol == Pol::unknown) return apply(TheoremStatus::inconclusive, what + ": conclusion inconclusive");
    if (lhs.proven) return apply(TheoremStatus::violated, what + ": certified hypothesis but refuted conclusion");
    apply(TheoremStatus::inconclusive, what + ": " + conflict_note);
  }

  void identity(const std::string& label, const Coeffs& lhs, const Coeffs& rhs, int through) {
    report.facts.push_back({label + " lhs", format_series(series_truncate(lhs, std::max(through, 0)))});
    report.facts.push_back({label + " rhs", format_series(series_truncate(rhs, std::max(through, 0)))});
    if (through < 1) return apply(TheoremStatus::inconclusive, label + ": window too small");
    for (int i = 0; i <= through; ++i) {
      const auto l = i < static_cast<int>(lhs.size()) ? lhs[i] : 0;
      const auto r = i < static_cast<int>(rhs.size()) ? rhs[i] : 0;
      if (l != r) {
        return apply(TheoremStatus::violated, label + ": coefficients differ at t^" + std::to_string(i));
      }
    }
    report.facts.push_back({label, "agrees through t^" + std::to_string(through)});
    apply(TheoremStatus::holds);
  }

  void fact(const std::string& k, const std::string& v) { report.facts.push_back({k, v}); }
};

template <class F>
std::string describe(const GolodAnalysis<F>& g) {
  std::string s = to_string(g.verdict.kind);
  if (g.verdict.kind == VerdictKind::consistent_up_to) {
    s += "(" + std::to_string(g.verdict.h_cap) + "," + std::to_string(g.verdict.d_cap) + ")";
  }
  if (!g.verdict.reason.empty()) s += ": " + g.verdict.reason;
  return s;
}

int through_of(std::initializer_list<const TruncatedSeries*> xs) {
  int t = 1 << 20;
  for (const auto* s : xs) t = std::min(t, s->complete_through());
  return t;
}

template <class F>
Coeffs kappa_poly(const KoszulComplex<F>& k) {
  auto s = k.kappa();
  if (!s.all_complete()) throw CapError("Koszul homology is not determined inside the stored window");
  return poly_trim(s.coeffs);
}

template <class F>
GolodAnalysis<F> module_over(const AlgebraMap<F>& f, const ModulePtr<F>& n, const GolodOptions& opt) {
  return golod_module_test(restrict_along(f, n), opt);
}

}  // namespace

template <class F>
TheoremReport verify_trivial_extension(const AlgebraPtr<F>& r, const ModulePtr<F>& m, const GolodOptions& opt) {
  Combiner c;
  c.report.name = "trivial-extension";
  auto te = trivial_extension(r, m);
  auto ga = golod_ring_test(te.algebra, opt);
  auto gm = golod_module_test(m, opt);
  c.fact("trivial extension is a Golod ring", describe(ga));
  c.fact("M is a Golod R-module", describe(gm));
  c.equivalent({side_of(ga), side_of(gm)}, "Golod(R x M) <=> Golod_R(M)");
  return c.report;
}

template <class F>
TheoremReport verify_fibre_ideal(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& gens,
                                 const GolodOptions& opt) {
  Combiner c;
  c.report.name = "fibre-ideal";
  auto fp = iterated_fibre(r, gens, 2);
  const auto& a = *fp.algebra;
  std::vector<Subspace<F>> spans;
  for (int d = 0; d <= a.cap(); ++d) {
    auto basis = fp.kernel_of_projection[0][d].basis();
    const auto& b1 = fp.kernel_of_projection[1][d].basis();
    basis.insert(basis.end(), b1.begin(), b1.end());
    spans.emplace_back(a.field(), a.dim(d), basis);
  }
  auto sum = submodule_from_spans(regular_module(fp.algebra), std::move(spans), max_degree_of(gens), ModuleKind::ideal);
  auto ga = golod_ring_test(fp.algebra, opt);
  auto gi = golod_module_test(ideal_as_module(r, gens), opt);
  auto gs = golod_module_test(sum, opt);
  c.fact("A = R x_{R/I} R is a Golod ring", describe(ga));
  c.fact("I is a Golod R-module", describe(gi));
  c.fact("I + I is a Golod A-module", describe(gs));
  c.equivalent({side_of(ga), side_of(gi), side_of(gs)}, "three-way equivalence");
  return c.report;
}

template <class F>
TheoremReport verify_iterated_fibre(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& gens,
                                    const std::vector<int>& ns, const GolodOptions& opt) {
  Combiner c;
  c.report.name = "iterated-fibre";
  std::vector<Side> sides;
  auto gi = golod_module_test(ideal_as_module(r, gens), opt);
  c.fact("I is a Golod R-module", describe(gi));
  sides.push_back(side_of(gi));
  for (int n : ns) {
    auto g = golod_ring_test(iterated_fibre(r, gens, n).algebra, opt);
    c.fact("A_" + std::to_string(n) + " is a Golod ring", describe(g));
    sides.push_back(side_of(g));
  }
  c.equivalent(sides, "n-independence");
  return c.report;
}

template <class F>
TheoremReport verify_retract_theorem(const std::string& name, const Retract<F>& rt, const ModulePtr<F>& n,
                                     const GolodOptions& opt) {
  if (n->algebra() != rt.base) throw InputError("module must live over the base ring of the retract");
  Combiner c;
  c.report.name = name;
  const int h = opt.h_cap;
  const auto& p = rt.sections.front();
  const auto& q = rt.sections.size() > 1 ? rt.sections[1] : p;
  const auto& ki = rt.kernels.front();
  const auto& kj = rt.kernels.size() > 1 ? rt.kernels[1] : ki;

  if (name == "retract-descent") {
    auto ga = module_over(p, n, opt);
    auto gr = golod_module_test(n, opt);
    c.fact("N is a Golod A-module", describe(ga));
    c.fact("N is a Golod R-module", describe(gr));
    c.implies(side_of(ga), side_of(gr), "Golod_A(N) => Golod_R(N)");
  } else if (name == "series-formula") {
    auto pr = poincare_of(n, opt);
    for (std::size_t k = 0; k < rt.sections.size(); ++k) {
      auto pa = poincare_of(restrict_along(rt.sections[k], n), opt);
      auto pi = poincare_of(rt.kernels[k], opt);
      auto rhs = series_div(pr.coeffs, series_sub(Coeffs{1}, series_shift(pi.coeffs, h), h), h);
      c.identity("P^A_N = P^R_N / (1 - t P^R_I" + std::to_string(k + 1) + ")", pa.coeffs, rhs,
                 through_of({&pa, &pr, &pi}));
    }
    if (rt.sections.size() > 1) {
      auto p1 = poincare_of(ki, opt), p2 = poincare_of(kj, opt);
      c.identity("P^R_I1 = P^R_I2", p1.coeffs, p2.coeffs, through_of({&p1, &p2}));
    }
  } else if (name == "koszul-identities") {
    auto k1 = kappa_poly(*KoszulComplex<F>::of_module(ki));
    auto k2 = kappa_poly(*KoszulComplex<F>::of_module(kj));
    c.identity("kappa_I = kappa_I'", k1, k2, static_cast<int>(std::max(k1.size(), k2.size())));
    auto p1 = poincare_of(ki, opt), p2 = poincare_of(kj, opt);
    c.identity("P^R_I = P^R_I'", p1.coeffs, p2.coeffs, through_of({&p1, &p2}));
    auto mu_a = min_gens(rt.algebra), mu_r = min_gens(rt.base);
    auto mu_i = min_gens_module(*ki), mu_j = min_gens_module(*kj);
    if (!mu_a.exact || !mu_r.exact || !mu_i.exact || !mu_j.exact) {
      c.apply(TheoremStatus::inconclusive, "generator counts not determined inside the window");
    } else {
      const auto a = mu_a.generators.size(), r = mu_r.generators.size();
      const auto i = mu_i.generators.size(), j = mu_j.generators.size();
      c.fact("mu_A(n)", std::to_string(a));
      c.fact("mu_R(m) + mu_R(I)", std::to_string(r + i));
      c.fact("mu_R(m) + mu_R(I')", std::to_string(r + j));
      c.apply(a == r + i && a == r + j ? TheoremStatus::holds : TheoremStatus::violated,
              "generator counts disagree");
    }
    auto ka = kappa_poly(*KoszulComplex<F>::of_module(restrict_along(p, n)));
    auto kr = kappa_poly(*KoszulComplex<F>::of_module(n));
    const int width = static_cast<int>(mu_i.generators.size() + kr.size());
    auto rhs = series_mul(kr, binomial_power(static_cast<int>(mu_i.generators.size())), width);
    c.identity("kappa^A_N = kappa^R_N (1+t)^n", ka, rhs, width);
  } else if (name == "golod-transfer") {
    auto gi = golod_module_test(ki, opt);
    auto gj = golod_module_test(kj, opt);
    auto ga = module_over(p, n, opt);
    auto gb = module_over(q, n, opt);
    auto gr = golod_module_test(n, opt);
    c.fact("I is a Golod R-module", describe(gi));
    c.fact("I' is a Golod R-module", describe(gj));
    c.fact("N is a Golod A-module via p", describe(ga));
    c.fact("N is a Golod A-module via p'", describe(gb));
    c.fact("N is a Golod R-module", describe(gr));
    c.equivalent({side_of(gi), side_of(gj)}, "Golod_R(I) <=> Golod_R(I')");
    c.equivalent({side_of(ga), side_of(gb), both(side_of(gr), side_of(gi))}, "Golod_A(N) <=> Golod_R(N) and Golod_R(I)");
  } else if (name == "retract-series") {
    auto pa = poincare_of(restrict_along(p, n), opt);
    auto par = poincare_of(restrict_along(p, regular_module(rt.base)), opt);
    auto pr = poincare_of(n, opt);
    c.identity("P^A_N = P^A_R P^R_N", pa.coeffs, series_mul(par.coeffs, pr.coeffs, h), through_of({&pa, &par, &pr}));
  } else if (name == "large-transfer") {
    auto kres = residue_field(rt.algebra);
    auto tor = tor_comparison(p, h, window_for(*kres, opt));
    bool complete = std::all_of(tor.complete.begin(), tor.complete.end(), [](bool b) { return b; });
    auto fail = tor.first_failure();
    c.fact("section is large", fail ? "no, fails at i = " + std::to_string(*fail)
                                    : (complete ? "yes through i = " + std::to_string(h) : "yes inside the window"));
    if (fail) {
      c.apply(TheoremStatus::violated, "retract section is not large");
    } else {
      auto ga = module_over(p, n, opt);
      auto gr = golod_module_test(n, opt);
      c.fact("N is a Golod A-module", describe(ga));
      c.fact("N is a Golod R-module", describe(gr));
      c.implies(side_of(ga), side_of(gr), "Golod_A(N) => Golod_R(N)");
    }
  } else {
    throw InputError("unknown retract theorem '" + name + "'");
  }
  return c.report;
}

template <class F>
FibreProduct<F> fibre_over_residue_field(const AlgebraPtr<F>& r1, const AlgebraPtr<F>& r2) {
  const auto* p1 = r1->presentation();
  const auto* p2 = r2->presentation();
  if (!p1 || !p2 || !(*p1->ring == *p2->ring)) {
    throw InputError("fibre over the residue field needs two quotients of the same polynomial ring");
  }
  const auto& ring = p1->ring;
  std::vector<Poly<F>> vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i) vars.push_back(Poly<F>::variable(ring, i));
  auto k = quotient_algebra(HomogeneousIdeal<F>(ring, vars), std::max(2 * ring->max_weight(), 1));
  return fibre_product(quotient_surjection(r1, k), quotient_surjection(r2, k));
}

template <class F>
TheoremReport verify_fibre_over_field(const AlgebraPtr<F>& r1, const AlgebraPtr<F>& r2, const GolodOptions& opt) {
  auto fp = fibre_over_residue_field(r1, r2);

  Combiner c;
  c.report.name = "fibre-over-field";
  auto ga = golod_ring_test(fp.algebra, opt);
  auto g1 = golod_ring_test(r1, opt);
  auto g2 = golod_ring_test(r2, opt);
  c.fact("R1 x_k R2 is a Golod ring", describe(ga));
  c.fact("R1 is a Golod ring", describe(g1));
  c.fact("R2 is a Golod ring", describe(g2));
  c.equivalent({side_of(ga), both(side_of(g1), side_of(g2))}, "Golod(R1 x_k R2) <=> Golod(R1) and Golod(R2)");

  const int h = opt.h_cap;
  const auto& pa = ga.poincare;
  const auto& q1 = g1.poincare;
  const auto& q2 = g2.poincare;
  auto lhs = series_inverse(pa.coeffs, h);
  auto rhs = series_sub(series_add(series_inverse(q1.coeffs, h), series_inverse(q2.coeffs, h), h), Coeffs{1}, h);
  c.identity("1/P^A_k = 1/P^R1_k + 1/P^R2_k - 1", lhs, rhs, through_of({&pa, &q1, &q2}));
  return c.report;
}

template <class F>
TheoremReport verify_golod_module_ring(const ModulePtr<F>& m, const GolodOptions& opt) {
  Combiner c;
  c.report.name = "golod-module-ring";
  auto gm = golod_module_test(m, opt);
  auto gr = golod_ring_test(m->algebra(), opt);
  c.fact("M is a Golod R-module", describe(gm));
  c.fact("R is a Golod ring", describe(gr));
  c.implies(side_of(gm), side_of(gr), "Golod_R(M) => Golod(R)");
  return c.report;
}

#define GOLODLAB_INSTANTIATE(F)                                                                                 \
  template int golod_window(const GradedModule<F>&, const GolodOptions&);                                       \
  template HunekeCertificate<F> herzog_huneke_certify(const ModulePtr<F>&);                                     \
  template std::optional<CycleCertificate> cycle_precertify(const ModulePtr<F>&);                               \
  template bool verify_product_witness(const KoszulComplex<F>&, const KoszulComplex<F>&,                        \
                                       const ProductWitness<F>&);                                               \
  template GolodAnalysis<F> golod_module_test(const ModulePtr<F>&, const GolodOptions&);                        \
  template GolodAnalysis<F> golod_ring_test(const AlgebraPtr<F>&, const GolodOptions&);                         \
  template Retract<F> retract_from_trivial_extension(const AlgebraPtr<F>&, const ModulePtr<F>&);                \
  template Retract<F> retract_from_fibre(const AlgebraPtr<F>&, const std::vector<Homogeneous<F>>&);             \
  template TheoremReport verify_trivial_extension(const AlgebraPtr<F>&, const ModulePtr<F>&,                    \
                                                  const GolodOptions&);                                         \
  template TheoremReport verify_fibre_ideal(const AlgebraPtr<F>&, const std::vector<Homogeneous<F>>&,           \
                                            const GolodOptions&);                                               \
  template TheoremReport verify_iterated_fibre(const AlgebraPtr<F>&, const std::vector<Homogeneous<F>>&,        \
                                               const std::vector<int>&, const GolodOptions&);                   \
  template TheoremReport verify_retract_theorem(const std::string&, const Retract<F>&, const ModulePtr<F>&,     \
                                                const GolodOptions&);                                           \
  template FibreProduct<F> fibre_over_residue_field(const AlgebraPtr<F>&, const AlgebraPtr<F>&);                \
  template TheoremReport verify_fibre_over_field(const AlgebraPtr<F>&, const AlgebraPtr<F>&, const GolodOptions&); \
  template TheoremReport verify_golod_module_ring(const ModulePtr<F>&, const GolodOptions&);

GOLODLAB_INSTANTIATE(Rationals)
GOLODLAB_INSTANTIATE(PrimeField)

}  // namespace golodlab
