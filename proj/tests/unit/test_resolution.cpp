#include <gtest/gtest.h>

#include <random>

#include "golodlab/resolution.hpp"
#include "helpers.hpp"

using namespace golodlab;
using namespace testing_helpers;

namespace {

using Q = Rationals;

template <class F>
AlgebraPtr<F> quot(const RingPtr<F>& r, const std::vector<std::string>& gens, int cap) {
  return quotient_algebra(ideal(r, gens), cap);
}

template <class F>
Resolution<F> resolve(const ModulePtr<F>& m, int h, int d) {
  typename Resolution<F>::Options opt;
  opt.h_cap = h;
  opt.d_cap = d;
  return Resolution<F>(m, opt);
}

Coeffs totals(const TruncatedSeries& s) { return s.coeffs; }

/// sum_i (-1)^i sum_j beta_{i,j} t^j * HS(A) = HS(M) mod t^{D+1}; valid when F_{h+1} has nothing in
/// degrees <= D, which holds when every generator of m has degree >= 1 and h >= D.
template <class F>
bool euler_identity(const Resolution<F>& res) {
  const int D = res.d_cap();
  Coeffs alt(D + 1, 0);
  for (int i = 0; i <= res.h_cap(); ++i) {
    for (int j = 0; j <= D; ++j) alt[j] += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(res.betti(i, j));
  }
  Coeffs ha, hm;
  for (int d = 0; d <= D; ++d) {
    ha.push_back(static_cast<std::int64_t>(res.algebra()->dim(d)));
    hm.push_back(static_cast<std::int64_t>(res.module()->dim(d)));
  }
  return series_mul(alt, ha, D) == hm;
}

}  // namespace

TEST(Series, Arithmetic) {
  EXPECT_EQ(series_inverse({1, -1}, 4), (Coeffs{1, 1, 1, 1, 1}));
  EXPECT_EQ(series_div({1, 1}, {1, 0, -1}, 5), (Coeffs{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(series_mul({1, 2, 1}, {1, 0, -3, -2}, 6), (Coeffs{1, 2, -2, -8, -7, -2, 0}));
  EXPECT_EQ(binomial_power(3), (Coeffs{1, 3, 3, 1}));
  EXPECT_THROW(series_inverse({2, 1}, 3), InputError);
  EXPECT_EQ(format_series({1, 2, 4, 0, -1}), "1 + 2t + 4t^2 - t^4");
  EXPECT_EQ(format_series({0, 1}), "t");
  TruncatedSeries s{{1, 2, 4, 8, 16, 32}, {true, true, true, true, true, false}};
  EXPECT_EQ(format_truncated("P", s), "P(t) = 1 + 2t + 4t^2 + 8t^3 + 16t^4 + 32t^5 + … [complete through t^4]");
  EXPECT_THROW(series_mul({INT64_MAX / 2}, {3}, 0), CapError);
}

TEST(Resolution, HypersurfaceResidueField) {
  auto a = quot(ring({"x"}), {"x^3"}, 12);
  auto res = resolve(residue_field(a), 6, default_d_cap(*a, *residue_field(a), 6));
  EXPECT_EQ(totals(res.poincare()), (Coeffs{1, 1, 1, 1, 1, 1, 1}));
  EXPECT_TRUE(res.poincare().all_complete());
  std::vector<int> degs;
  for (int i = 0; i <= 6; ++i) degs.push_back(res.generator_degrees(i).at(0));
  EXPECT_EQ(degs, (std::vector<int>{0, 1, 3, 4, 6, 7, 9}));
  EXPECT_TRUE(res.is_minimal());
  EXPECT_TRUE(res.is_exact_in_window());
}

TEST(Resolution, ShortRingDoubles) {
  auto a = quot(ring({"x", "y"}), {"x^2", "x*y", "y^2"}, 4);
  auto k = residue_field(a);
  auto res = resolve(k, 6, 6);
  EXPECT_EQ(totals(res.poincare()), (Coeffs{1, 2, 4, 8, 16, 32, 64}));
  EXPECT_TRUE(res.poincare().all_complete());
  EXPECT_TRUE(res.is_minimal());
  EXPECT_TRUE(res.is_exact_in_window());
  EXPECT_TRUE(euler_identity(res));
}

TEST(Resolution, CompleteIntersection) {
  auto a = quot(ring({"x", "y"}), {"x^2", "y^2"}, 8);
  auto res = resolve(residue_field(a), 6, 8);
  EXPECT_EQ(totals(res.poincare()), (Coeffs{1, 2, 3, 4, 5, 6, 7}));
  EXPECT_TRUE(res.is_minimal());
  EXPECT_TRUE(res.is_exact_in_window());
}

TEST(Resolution, IdealIsPeriodic) {
  auto a = quot(ring({"x"}), {"x^3"}, 12);
  auto i = ideal_as_module(a, {{1, SparseVector<Q>::unit(0, a->field())}});
  auto res = resolve(i, 5, 12);
  EXPECT_EQ(totals(res.poincare()), (Coeffs{1, 1, 1, 1, 1, 1}));
  EXPECT_TRUE(res.poincare().all_complete());
}

TEST(Resolution, FreeModule) {
  auto a = quot(ring({"x", "y"}), {"x^2", "y^3"}, 8);
  auto res = resolve(regular_module(a), 4, 8);
  EXPECT_EQ(totals(res.poincare()), (Coeffs{1, 0, 0, 0, 0}));
  EXPECT_TRUE(res.poincare().all_complete());
}

TEST(Resolution, TruncationIsFlagged) {
  auto a = quot(ring({"x"}), {"x^3"}, 12);
  auto res = resolve(residue_field(a), 6, 5);
  auto p = res.poincare();
  // generators live in degrees 0,1,3,4,6,...; step 4 could still have one in degree 6
  EXPECT_EQ(p.coeffs, (Coeffs{1, 1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(p.complete_through(), 3);
  EXPECT_TRUE(res.is_exact_in_window());
}

TEST(Resolution, InfiniteRingWindow) {
  auto a = quot(ring({"x", "y"}), {"x^2"}, 6);
  auto res = resolve(residue_field(a), 4, 6);
  // k over k[x,y]/(x^2): P = (1+t)/(1-t) = 1,2,2,2,2
  EXPECT_EQ(res.poincare().coeffs, (Coeffs{1, 2, 2, 2, 2}));
  EXPECT_EQ(res.poincare().complete_through(), 0);
  EXPECT_TRUE(res.is_minimal());
  EXPECT_TRUE(res.is_exact_in_window());
  EXPECT_THROW(resolve(residue_field(a), 4, 7), CapError);
}

TEST(PolyResolution, Examples) {
  auto s2 = ring({"x", "y"});
  EXPECT_EQ(resolution_over_poly_ring(ideal(s2, {"x^2", "x*y", "y^2"})).betti(), (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_EQ(resolution_over_poly_ring(ideal(ring({"x"}), {"x^3"})).betti(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(resolution_over_poly_ring(ideal(s2, {"x^2", "y^2"})).betti(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(resolution_over_poly_ring(ideal(s2, {"0"})).betti(), (std::vector<std::size_t>{1}));
  auto s3 = ring({"x", "y", "z"});
  EXPECT_EQ(resolution_over_poly_ring(ideal(s3, {"x", "y", "z"})).betti(), (std::vector<std::size_t>{1, 3, 3, 1}));
}

TEST(PolyResolution, FiniteLengthModule) {
  auto r = quot(ring({"x", "y"}), {"x^2", "y^2"}, 6);
  auto k = residue_field(r);
  EXPECT_EQ(resolution_over_poly_ring(k).betti(), (std::vector<std::size_t>{1, 2, 1}));
  auto rr = resolution_over_poly_ring(regular_module(r));
  EXPECT_EQ(rr.betti(), (std::vector<std::size_t>{1, 2, 1}));
  auto i = ideal_as_module(r, {{1, SparseVector<Q>::unit(0, r->field())}});  // (x)
  // (x) = x R ~ S/(x, y^2)(-1)
  EXPECT_EQ(resolution_over_poly_ring(i).betti(), (std::vector<std::size_t>{1, 2, 1}));
}

TEST(Hilbert, Series) {
  auto a = quot(ring({"x", "y"}), {"x^2", "x*y", "y^2"}, 4);
  EXPECT_EQ(hilbert_series(*a, 3).coeffs, (Coeffs{1, 2, 0, 0}));
}

TEST(TorComparison, IdentityIsIdentity) {
  auto a = quot(ring({"x", "y"}), {"x^2", "y^2"}, 8);
  auto cmp = tor_comparison(identity_map(a), 4, 8);
  for (const auto& e : cmp.entries) {
    ASSERT_EQ(e.source_dim, e.target_dim);
    for (std::size_t k = 0; k < e.matrix.size(); ++k) {
      EXPECT_EQ(e.matrix[k], SparseVector<Q>::unit(static_cast<std::uint32_t>(k), a->field()));
    }
  }
  EXPECT_TRUE(cmp.surjective_through(4));
}

TEST(TorComparison, RetractSectionIsLarge) {
  auto r = quot(ring({"x"}), {"x^3"}, 12);
  auto ext = trivial_extension(r, residue_field(r, 1));
  auto cmp = tor_comparison(ext.projection, 4, 12);
  EXPECT_TRUE(cmp.surjective_through(4));
  EXPECT_FALSE(cmp.first_failure().has_value());
  for (bool c : cmp.complete) EXPECT_TRUE(c);
}

TEST(TorComparison, IndependentOfPivotRule) {
  auto a = quot(ring({"x"}), {"x^4"}, 12);
  auto b = quot(ring({"x"}), {"x^2"}, 12);
  auto f = quotient_surjection(a, b);
  auto c1 = tor_comparison(f, 4, 12, PivotRule::first);
  auto c2 = tor_comparison(f, 4, 12, PivotRule::last);
  ASSERT_EQ(c1.entries.size(), c2.entries.size());
  for (std::size_t n = 0; n < c1.entries.size(); ++n) {
    EXPECT_EQ(c1.entries[n].matrix, c2.entries[n].matrix);
    EXPECT_EQ(c1.entries[n].rank, c2.entries[n].rank);
  }
  // x^4 -> x^2: the degree-4 class of Tor_2 over A cannot reach the degree-2 class over B
  EXPECT_EQ(c1.first_failure(), 2);

  auto r = ring({"x", "y"});
  auto ci = quot(r, {"x^2", "y^2"}, 8);
  auto sq = quot(r, {"x^2", "x*y", "y^2"}, 8);
  auto g = quotient_surjection(ci, sq);
  auto d1 = tor_comparison(g, 4, 8, PivotRule::first);
  auto d2 = tor_comparison(g, 4, 8, PivotRule::last);
  ASSERT_EQ(d1.entries.size(), d2.entries.size());
  for (std::size_t n = 0; n < d1.entries.size(); ++n) EXPECT_EQ(d1.entries[n].matrix, d2.entries[n].matrix);
  EXPECT_EQ(d1.first_failure(), 2);
}

// ---------------------------------------------------------------- properties

namespace {

template <class F>
HomogeneousIdeal<F> random_monomial_ideal(const RingPtr<F>& r, std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 4), deg(2, 4);
  std::vector<Poly<F>> gens;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    auto monos = monomials_of_degree(r->weights(), deg(rng));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(monos.size()) - 1);
    gens.push_back(Poly<F>::monomial(r, monos[pick(rng)], r->field().one()));
  }
  return HomogeneousIdeal<F>(r, gens);
}

}  // namespace

TEST(ResolutionProperty, MinimalExactAndEuler) {
  for (unsigned seed = 1; seed <= 8; ++seed) {
    std::mt19937 rng(seed);
    auto r = seed % 2 ? ring({"x", "y", "z"}) : ring({"x", "y"});
    auto I = random_monomial_ideal(r, rng);
    auto a = quotient_algebra(I, 6);
    auto res = resolve(residue_field(a), 6, 6);
    EXPECT_TRUE(res.is_minimal()) << "seed " << seed;
    EXPECT_TRUE(res.is_exact_in_window()) << "seed " << seed;
    EXPECT_TRUE(euler_identity(res)) << "seed " << seed;
  }
}

TEST(ResolutionProperty, PolyRingEulerIdentity) {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    std::mt19937 rng(seed);
    auto r = ring_p(101, {"x", "y", "z"});
    auto I = random_monomial_ideal(r, rng);
    auto pr = resolution_over_poly_ring(I);
    const auto& res = *pr.resolution;
    EXPECT_TRUE(res.is_minimal());
    EXPECT_TRUE(res.is_exact_in_window());
    EXPECT_LE(pr.betti().size(), 4u);
    // HS(S/I) (1-t)^3 = sum (-1)^i beta_{i,j} t^j, checked through the stored window
    const int D = res.d_cap();
    Coeffs h, alt(D + 1, 0);
    for (int d = 0; d <= D; ++d) h.push_back(static_cast<std::int64_t>(res.module()->dim(d)));
    for (int i = 0; i <= res.h_cap(); ++i) {
      for (int j = 0; j <= D; ++j) alt[j] += (i % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(res.betti(i, j));
    }
    EXPECT_EQ(series_mul(h, {1, -3, 3, -1}, D), alt) << "seed " << seed;
  }
}
