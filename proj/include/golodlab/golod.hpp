#pragma once

#include <optional>
#include <string>
#include <vector>

#include "golodlab/koszul.hpp"
#include "golodlab/resolution.hpp"

namespace golodlab {

/// kappa_m / (1 - t (kappa_r - 1)) through t^h.
Coeffs serre_bound(const Coeffs& kappa_m, const Coeffs& kappa_r, int h);

enum class VerdictKind { certified_golod, refuted_not_golod, consistent_up_to, inconclusive };
std::string to_string(VerdictKind k);

struct SeriesMismatch {
  int i = 0;
  std::int64_t computed = 0;
  std::int64_t bound = 0;
};

/// Nonzero product of Koszul homology classes: h * v with h in H_{>=1}(A) and v in H(M), or
/// h * h' inside H_{>=1}(A) when ring_product is set.
template <class F>
struct ProductWitness {
  bool ring_product = false;
  HomologyClass<F> left, right, product;
  std::string left_text, right_text, product_text;
};

template <class F>
struct MasseyWitness {
  bool module_mode = false;
  std::vector<HomologyClass<F>> classes;
  MasseyResult<F> result;
};

template <class F>
struct HunekeCertificate {
  bool applicable = false;
  std::string reason;
  std::vector<std::string> derivative_generators;
  std::size_t products_checked = 0;
  std::size_t annihilator_checks = 0;
};

/// Jacobian cycles X spanning H_{>=1}(A) and cycles Y spanning H(M) with X*X = 0 and Y*X = 0 on
/// the chain level.
struct CycleCertificate {
  std::size_t ring_cycles = 0;
  std::size_t module_cycles = 0;
  std::size_t products_checked = 0;
};

template <class F>
struct GolodVerdict {
  VerdictKind kind = VerdictKind::inconclusive;
  std::string reason;
  int h_cap = 0, d_cap = 0;
  /// No refutation and every step complete in the window, whether or not a certificate exists.
  bool window_consistent = false;
  std::optional<HunekeCertificate<F>> huneke;
  std::optional<CycleCertificate> cycles;
  std::optional<SeriesMismatch> mismatch;
  std::optional<ProductWitness<F>> product;
  std::optional<MasseyWitness<F>> massey;
};

template <class F>
struct GolodAnalysis {
  TruncatedSeries poincare, kappa_module, kappa_ring, serre_bound;
  std::vector<std::vector<std::size_t>> betti;  // [i][j]
  std::size_t massey_checked = 0;
  GolodVerdict<F> verdict;
};

struct GolodOptions {
  int h_cap = 6;
  std::optional<int> d_cap;
  int massey_order = 3;  // Massey refuter up to this length; below 3 it is off
  std::size_t massey_tuple_limit = 20000;
  bool certify = true;
};

/// Internal-degree window used for resolutions: the override, or the default clamped to the
/// stored window of an infinite algebra or module.
template <class F>
int golod_window(const GradedModule<F>& m, const GolodOptions& opt);

/// Serre-bound comparison, product and Massey refuters, and the exact certifiers.
template <class F>
GolodAnalysis<F> golod_module_test(const ModulePtr<F>& m, const GolodOptions& opt = {});

template <class F>
GolodAnalysis<F> golod_ring_test(const AlgebraPtr<F>& a, const GolodOptions& opt = {});

/// Membership test for d(I)^2 in I and d(I) M = 0, where M lives over S/I. Characteristic zero.
template <class F>
HunekeCertificate<F> herzog_huneke_certify(const ModulePtr<F>& m);

/// nullopt when the Jacobian cycles do not apply or some chain product is nonzero.
template <class F>
std::optional<CycleCertificate> cycle_precertify(const ModulePtr<F>& m);

/// Recomputes the product from class representatives and checks that it does not bound.
template <class F>
bool verify_product_witness(const KoszulComplex<F>& ka, const KoszulComplex<F>& km, const ProductWitness<F>& w);

// ---------------------------------------------------------------- theorem checks

/// R -> A with sections p_k whose kernels multiply to zero.
template <class F>
struct Retract {
  std::string kind;
  AlgebraPtr<F> base;
  AlgebraPtr<F> algebra;
  AlgebraMap<F> inclusion;
  std::vector<AlgebraMap<F>> sections;
  std::vector<ModulePtr<F>> kernels;  // ker p_k as R-modules via the inclusion
};

template <class F>
Retract<F> retract_from_trivial_extension(const AlgebraPtr<F>& r, const ModulePtr<F>& m);

/// A = R x_{R/I} R with both projections as sections.
template <class F>
Retract<F> retract_from_fibre(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& ideal_gens);

enum class TheoremStatus { holds, violated, inconclusive };
std::string to_string(TheoremStatus s);

struct TheoremReport {
  std::string name;
  TheoremStatus status = TheoremStatus::inconclusive;
  std::vector<std::pair<std::string, std::string>> facts;
  std::string note;
};

/// Theorem names: trivial-extension, fibre-ideal, iterated-fibre, retract-descent, series-formula,
/// koszul-identities, golod-transfer, retract-series, large-transfer, fibre-over-field,
/// golod-module-ring.
std::vector<std::string> theorem_names();

template <class F>
TheoremReport verify_trivial_extension(const AlgebraPtr<F>& r, const ModulePtr<F>& m, const GolodOptions& opt);

template <class F>
TheoremReport verify_fibre_ideal(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& gens,
                                 const GolodOptions& opt);

template <class F>
TheoremReport verify_iterated_fibre(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& gens,
                                    const std::vector<int>& ns, const GolodOptions& opt);

/// Checks that need a retract and an R-module N: retract-descent, series-formula,
/// koszul-identities, golod-transfer, retract-series, large-transfer.
template <class F>
TheoremReport verify_retract_theorem(const std::string& name, const Retract<F>& rt, const ModulePtr<F>& n,
                                     const GolodOptions& opt);

/// R1 x_k R2 for two quotients of the same polynomial ring.
template <class F>
FibreProduct<F> fibre_over_residue_field(const AlgebraPtr<F>& r1, const AlgebraPtr<F>& r2);

template <class F>
TheoremReport verify_fibre_over_field(const AlgebraPtr<F>& r1, const AlgebraPtr<F>& r2, const GolodOptions& opt);

/// A Golod module forces a Golod ring.
template <class F>
TheoremReport verify_golod_module_ring(const ModulePtr<F>& m, const GolodOptions& opt);

}  // namespace golodlab
