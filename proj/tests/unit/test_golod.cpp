#include <gtest/gtest.h>

#include <random>

#include "golodlab/error.hpp"
#include "golodlab/golod.hpp"
#include "helpers.hpp"

using namespace golodlab;
using namespace testing_helpers;

namespace {

using Q = Rationals;

template <class F>
AlgebraPtr<F> quot(const RingPtr<F>& r, const std::vector<std::string>& gens, int cap = 12) {
  return quotient_algebra(ideal(r, gens), cap);
}

template <class F>
Homogeneous<F> elem(const AlgebraPtr<F>& a, const std::string& s, int d) {
  const auto* pres = a->presentation();
  return {d, pres->to_vector(P(pres->ring, s), d)};
}

// b (1 - t(k_R - 1)) = k_M, solved one coefficient at a time
Coeffs bound_oracle(const Coeffs& km, const Coeffs& kr, int h) {
  Coeffs b(h + 1, 0);
  for (int i = 0; i <= h; ++i) {
    std::int64_t v = i < static_cast<int>(km.size()) ? km[i] : 0;
    for (int j = 1; j < static_cast<int>(kr.size()); ++j) {
      if (i - j - 1 >= 0) v += kr[j] * b[i - j - 1];
    }
    b[i] = v;
  }
  return b;
}

GolodOptions window(int h, bool certify = true) {
  GolodOptions o;
  o.h_cap = h;
  o.certify = certify;
  return o;
}

}  // namespace

TEST(SerreBound, Examples) {
  EXPECT_EQ(serre_bound({1, 1}, {1, 1}, 5), (Coeffs{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(serre_bound({1, 2, 1}, {1, 3, 2}, 5), (Coeffs{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(serre_bound({1, 2, 1}, {1, 2, 1}, 4), (Coeffs{1, 2, 3, 5, 8}));
  EXPECT_THROW(serre_bound({1}, {2, 1}, 3), InputError);
}

TEST(SerreBound, MatchesRecurrence) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(0, 4), len(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    Coeffs km, kr{1};
    for (int i = 0, n = len(rng); i < n; ++i) km.push_back(c(rng));
    for (int i = 0, n = len(rng); i < n; ++i) kr.push_back(c(rng));
    EXPECT_EQ(serre_bound(km, kr, 7), bound_oracle(km, kr, 7));
  }
}

TEST(GolodTest, HypersurfaceIsConsistent) {
  auto r = ring({"x"});
  auto g = golod_ring_test(quot(r, {"x^3"}), window(5, false));
  EXPECT_EQ(g.verdict.kind, VerdictKind::consistent_up_to);
  EXPECT_EQ(g.verdict.h_cap, 5);
  EXPECT_EQ(g.poincare.coeffs, (Coeffs{1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(g.serre_bound.coeffs, g.poincare.coeffs);
  EXPECT_EQ(poly_trim(g.kappa_ring.coeffs), (Coeffs{1, 1}));
  EXPECT_GT(g.massey_checked, 0u);
}

TEST(GolodTest, CertifiersUpgradeConsistentVerdicts) {
  auto r = ring({"x", "y"});
  auto g = golod_ring_test(quot(r, {"x^2", "x*y", "y^2"}), window(5));
  EXPECT_EQ(g.verdict.kind, VerdictKind::certified_golod);
  EXPECT_TRUE(g.verdict.window_consistent);
  EXPECT_EQ(g.poincare.coeffs, (Coeffs{1, 2, 4, 8, 16, 32}));
}

TEST(GolodTest, CompleteIntersectionRefuted) {
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^2", "y^2"});
  auto g = golod_ring_test(a, window(4));
  EXPECT_EQ(g.verdict.kind, VerdictKind::refuted_not_golod);
  ASSERT_TRUE(g.verdict.mismatch);
  EXPECT_EQ(g.verdict.mismatch->i, 3);
  EXPECT_EQ(g.verdict.mismatch->computed, 4);
  EXPECT_EQ(g.verdict.mismatch->bound, 5);
  EXPECT_EQ(g.poincare.coeffs, (Coeffs{1, 2, 3, 4, 5}));
  EXPECT_EQ(g.serre_bound.coeffs, (Coeffs{1, 2, 3, 5, 8}));
  // the mismatch is re-derivable from the stored Betti table
  std::int64_t row = 0;
  for (auto b : g.betti[3]) row += static_cast<std::int64_t>(b);
  EXPECT_EQ(row, 4);

  ASSERT_TRUE(g.verdict.product);
  EXPECT_TRUE(g.verdict.product->ring_product);
  EXPECT_EQ(g.verdict.product->left.l, 1);
  EXPECT_EQ(g.verdict.product->right.l, 1);
  auto ka = KoszulComplex<Q>::of_algebra(a);
  auto kk = KoszulComplex<Q>::of_module(residue_field(a));
  EXPECT_TRUE(verify_product_witness(*ka, *kk, *g.verdict.product));

  ASSERT_TRUE(g.verdict.huneke);
  EXPECT_FALSE(g.verdict.huneke->applicable);
  EXPECT_NE(g.verdict.huneke->reason.find("not in I"), std::string::npos);
}

TEST(GolodTest, RegularModuleRefutedByModuleProduct) {
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^2", "x*y", "y^2"});
  auto g = golod_module_test(regular_module(a), window(4));
  EXPECT_EQ(g.verdict.kind, VerdictKind::refuted_not_golod);
  ASSERT_TRUE(g.verdict.product);
  EXPECT_FALSE(g.verdict.product->ring_product);
}

TEST(Huneke, CubeOfMaximalIdeal) {
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^3", "x^2*y", "x*y^2", "y^3"});
  auto c = herzog_huneke_certify(residue_field(a));
  EXPECT_TRUE(c.applicable) << c.reason;
  EXPECT_GT(c.products_checked, 0u);
  auto g = golod_ring_test(a, window(5));
  EXPECT_EQ(g.verdict.kind, VerdictKind::certified_golod);
  EXPECT_EQ(poly_trim(g.kappa_ring.coeffs), (Coeffs{1, 4, 3}));
  EXPECT_EQ(g.poincare.coeffs, g.serre_bound.coeffs);
  EXPECT_EQ(g.serre_bound.coeffs, bound_oracle({1, 2, 1}, {1, 4, 3}, 5));
}

TEST(Huneke, QuotientByPowerOfIdeal) {
  // M = R / I R over R = S / I^2 with I = (x, y)
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^2", "x*y", "y^2"});
  auto m = cokernel_module(a, {0}, {Homogeneous<Q>{1, SparseVector<Q>::unit(0, Q{})},
                                    Homogeneous<Q>{1, SparseVector<Q>::unit(1, Q{})}});
  auto c = herzog_huneke_certify(m);
  EXPECT_TRUE(c.applicable) << c.reason;
  EXPECT_EQ(golod_module_test(m, window(4)).verdict.kind, VerdictKind::certified_golod);
}

TEST(Huneke, NotApplicable) {
  auto r = ring({"x", "y"});
  EXPECT_FALSE(herzog_huneke_certify(residue_field(quot(r, {"x^2", "y^2"}))).applicable);
  // x annihilates nothing in R, so d(I) does not kill the regular module
  auto a = quot(r, {"x^3", "x^2*y", "x*y^2", "y^3"});
  auto c = herzog_huneke_certify(regular_module(a));
  EXPECT_FALSE(c.applicable);
  EXPECT_NE(c.reason.find("annihilate"), std::string::npos);
  auto rp = ring_p(101, {"x", "y"});
  auto cp = herzog_huneke_certify(residue_field(quot(rp, {"x^3", "x^2*y", "x*y^2", "y^3"})));
  EXPECT_FALSE(cp.applicable);
  EXPECT_NE(cp.reason.find("characteristic"), std::string::npos);
}

TEST(CyclePrecertifier, GolodAndNonGolod) {
  auto r = ring({"x", "y"});
  auto cert = cycle_precertify(residue_field(quot(r, {"x^3", "x^2*y", "x*y^2", "y^3"})));
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->ring_cycles, 4u + 3u);
  EXPECT_EQ(cert->module_cycles, 4u);
  EXPECT_FALSE(cycle_precertify(residue_field(quot(r, {"x^2", "y^2"}))));
}

TEST(GolodTest, PrimeFieldUsesWindowOnly) {
  auto r = ring_p(101, {"x", "y"});
  auto g = golod_ring_test(quot(r, {"x^2", "x*y", "y^2"}), window(4));
  EXPECT_EQ(g.verdict.kind, VerdictKind::consistent_up_to);
  EXPECT_EQ(g.poincare.coeffs, (Coeffs{1, 2, 4, 8, 16}));
}

TEST(GolodTest, InfiniteRingIsInconclusive) {
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^2"}, 10);
  auto g = golod_ring_test(a, window(3, false));
  EXPECT_EQ(g.verdict.kind, VerdictKind::inconclusive);
  EXPECT_EQ(g.verdict.d_cap, 5);
  // hypersurface: d(I) = (x) and x^2 lies in I
  EXPECT_EQ(golod_ring_test(a, window(3)).verdict.kind, VerdictKind::certified_golod);
}

// ---------------------------------------------------------------- theorems

TEST(Theorems, TrivialExtensionBothPolarities) {
  auto r = ring({"x"});
  auto a = quot(r, {"x^3"});
  auto rep = verify_trivial_extension(a, residue_field(a, 1), window(5));
  EXPECT_EQ(rep.status, TheoremStatus::holds) << rep.note;

  auto r2 = ring({"x", "y"});
  auto b = quot(r2, {"x^2", "y^2"});
  auto rep2 = verify_trivial_extension(b, residue_field(b, 1), window(4));
  EXPECT_EQ(rep2.status, TheoremStatus::holds) << rep2.note;
  ASSERT_EQ(rep2.facts.size(), 2u);
  EXPECT_NE(rep2.facts[0].second.find("Refuted"), std::string::npos);
  EXPECT_NE(rep2.facts[1].second.find("Refuted"), std::string::npos);
}

TEST(Theorems, FibreSuite) {
  auto r = ring({"x"});
  auto a = quot(r, {"x^3"});
  std::vector<Homogeneous<Q>> gens{elem(a, "x", 1)};
  auto opt = window(4);
  EXPECT_EQ(verify_iterated_fibre(a, gens, {2, 3}, opt).status, TheoremStatus::holds);
  EXPECT_EQ(verify_fibre_ideal(a, gens, opt).status, TheoremStatus::holds);
  auto rt = retract_from_fibre(a, gens);
  auto k = residue_field(a);
  for (const auto& name : {"series-formula", "koszul-identities", "golod-transfer", "retract-series",
                           "retract-descent", "large-transfer"}) {
    auto rep = verify_retract_theorem(name, rt, k, opt);
    EXPECT_EQ(rep.status, TheoremStatus::holds) << name << ": " << rep.note;
  }
  auto ident = verify_retract_theorem("koszul-identities", rt, k, opt);
  bool saw = false;
  for (const auto& [key, value] : ident.facts) {
    if (key == "mu_A(n)") {
      EXPECT_EQ(value, "2");
      saw = true;
    }
  }
  EXPECT_TRUE(saw);
  EXPECT_THROW(verify_retract_theorem("no-such", rt, k, opt), InputError);
}

TEST(Theorems, TrivialExtensionRetract) {
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^2", "x*y", "y^2"});
  auto rt = retract_from_trivial_extension(a, residue_field(a, 1));
  auto k = residue_field(a);
  for (const auto& name : {"series-formula", "retract-series", "koszul-identities", "golod-transfer"}) {
    auto rep = verify_retract_theorem(name, rt, k, window(4));
    EXPECT_EQ(rep.status, TheoremStatus::holds) << name << ": " << rep.note;
  }
}

TEST(Theorems, FibreOverField) {
  auto r = ring({"x", "y"});
  auto r1 = quot(r, {"x^3", "y"});
  auto r2 = quot(r, {"x", "y^3"});
  auto rep = verify_fibre_over_field(r1, r2, window(4));
  EXPECT_EQ(rep.status, TheoremStatus::holds) << rep.note;

  auto c1 = quot(r, {"x^2", "y^2"});
  auto rep2 = verify_fibre_over_field(c1, r2, window(4));
  EXPECT_EQ(rep2.status, TheoremStatus::holds) << rep2.note;
}

TEST(Theorems, GolodModuleForcesGolodRing) {
  auto r = ring({"x", "y"});
  auto a = quot(r, {"x^3", "x^2*y", "x*y^2", "y^3"});
  EXPECT_EQ(verify_golod_module_ring(residue_field(a), window(4)).status, TheoremStatus::holds);
  auto b = quot(r, {"x^2", "y^2"});
  EXPECT_EQ(verify_golod_module_ring(regular_module(b), window(4)).status, TheoremStatus::holds);
}

// ---------------------------------------------------------------- properties

namespace {

template <class F>
void check_invariants(const AlgebraPtr<F>& a, int h) {
  GolodOptions o = window(h);
  o.massey_order = 2;
  auto g = golod_ring_test(a, o);  // throws on a Serre violation or a coexisting refutation
  const int through = g.poincare.complete_through();
  for (int i = 0; i <= h; ++i) {
    std::int64_t row = 0;
    for (auto b : g.betti[i]) row += static_cast<std::int64_t>(b);
    EXPECT_EQ(row, g.poincare.coeffs[i]);
    if (i <= through && g.serre_bound.complete[i]) EXPECT_LE(g.poincare.coeffs[i], g.serre_bound.coeffs[i]);
  }
  if (g.verdict.kind == VerdictKind::certified_golod) {
    EXPECT_FALSE(g.verdict.product);
    for (int i = 0; i <= through; ++i) EXPECT_EQ(g.poincare.coeffs[i], g.serre_bound.coeffs[i]);
  }
  if (g.verdict.mismatch) EXPECT_LE(g.verdict.mismatch->i, through);
}

template <class F>
std::vector<std::string> random_monomial_ideal(const RingPtr<F>& r, std::mt19937& rng) {
  std::vector<std::string> gens;
  std::uniform_int_distribution<int> pw(2, 4), extra(0, 3), e(0, 2);
  const auto& names = r->names();
  for (const auto& v : names) gens.push_back(v + "^" + std::to_string(pw(rng)));
  for (int k = 0, n = extra(rng); k < n; ++k) {
    std::string m;
    int deg = 0;
    for (const auto& v : names) {
      int x = e(rng);
      if (x == 0) continue;
      deg += x;
      m += (m.empty() ? "" : "*") + v + "^" + std::to_string(x);
    }
    if (deg >= 2 && deg <= 4) gens.push_back(m);
  }
  return gens;
}

}  // namespace

TEST(GolodProperty, SerreInequalityOnRandomMonomialIdeals) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> nv(1, 3);
  const std::vector<std::string> all{"x", "y", "z"};
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<std::string> names(all.begin(), all.begin() + nv(rng));
    if (trial % 2 == 0) {
      auto r = ring<Q>(names);
      check_invariants(quot(r, random_monomial_ideal(r, rng)), 3);
    } else {
      auto r = ring_p(101, names);
      check_invariants(quot(r, random_monomial_ideal(r, rng)), 3);
    }
  }
}
