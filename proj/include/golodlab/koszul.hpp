#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "golodlab/algebra.hpp"
#include "golodlab/series.hpp"

namespace golodlab {

/// Homology of one piece K_{l,d}: cycle representatives of a basis of H_{l,d} and exact tests
/// against the boundary space.
template <class F>
class HomologyPiece {
 public:
  HomologyPiece(const F& field, std::size_t dim, std::vector<SparseVector<F>> incoming,
                const std::vector<SparseVector<F>>& outgoing, std::size_t below_dim);

  std::size_t dim() const { return reps_.size(); }
  std::size_t cycles_dim() const { return cycles_dim_; }
  std::size_t boundaries_dim() const { return boundaries_dim_; }
  const std::vector<SparseVector<F>>& representatives() const { return reps_; }
  SparseVector<F> representative(const SparseVector<F>& coords) const;

  bool is_boundary(const SparseVector<F>& z) const;
  /// Class coordinates of a cycle; throws InternalError when z is not a cycle.
  SparseVector<F> class_of(const SparseVector<F>& z) const;
  /// Some a with d(a) = z, when z is a boundary.
  std::optional<SparseVector<F>> boundary_preimage(const SparseVector<F>& z) const;

  /// Linear decomposition v = d(lift) + sum classes_r rep_r + (non-cycle part). All parts are
  /// linear in v; lift is a preimage of the boundary part.
  struct Split {
    SparseVector<F> lift;
    SparseVector<F> classes;
    SparseVector<F> rest;
  };
  Split split(const SparseVector<F>& v) const;

 private:
  F field_;
  std::size_t dim_ = 0, cycles_dim_ = 0, boundaries_dim_ = 0;
  std::vector<SparseVector<F>> reps_;
  Echelon<F> frame_;             // boundaries, then reps, then unit completions
  std::vector<int> slot_kind_;   // 0 boundary, 1 representative, 2 completion, -1 dependent
  std::vector<std::uint32_t> slot_index_;
};

/// Koszul complex K^M = M ⊗ Λ(e_1..e_n) with d(e_i) = g_i, for generators g_i of the maximal
/// ideal. Basis of K_{l,d}: subsets σ of size l in lexicographic order, each contributing the
/// block M_{d - w_σ} where w_σ is the sum of the generator degrees.
template <class F>
class KoszulComplex {
 public:
  /// exact: homology vanishes above d_cap, so the Koszul polynomial is complete.
  KoszulComplex(ModulePtr<F> module, std::vector<Homogeneous<F>> gens, int d_cap, bool exact, bool is_ring);

  /// On the minimal generators of the maximal ideal, with a degree window outside which the
  /// homology is known to vanish whenever such a bound is available.
  static std::shared_ptr<const KoszulComplex> of_module(const ModulePtr<F>& module);
  static std::shared_ptr<const KoszulComplex> of_algebra(const AlgebraPtr<F>& algebra);

  const ModulePtr<F>& module() const { return module_; }
  const AlgebraPtr<F>& algebra() const { return module_->algebra(); }
  const F& field() const { return module_->field(); }
  const std::vector<Homogeneous<F>>& generators() const { return gens_; }
  std::size_t rank() const { return gens_.size(); }
  int d_cap() const { return d_cap_; }
  bool exact() const { return exact_; }
  bool is_ring() const { return is_ring_; }
  /// Chains vanish above d_cap (finite module and d_cap covers every block).
  bool chains_bounded() const { return chains_bounded_; }
  std::size_t subset_index(int l, std::uint64_t subset) const { return subset_index_.at(l).at(subset); }

  const std::vector<std::uint64_t>& subsets(int l) const { return subsets_.at(l); }
  int weight(std::uint64_t subset) const;
  std::size_t dim(int l, int d) const;
  /// Offset of subset s (index into subsets(l)) within K_{l,d}, and the size of its block.
  std::pair<std::uint32_t, std::size_t> block(int l, int d, std::size_t s) const;
  std::string format(int l, int d, const SparseVector<F>& v) const;

  std::vector<SparseVector<F>> boundary(int l, int d) const;
  SparseVector<F> apply_boundary(int l, int d, const SparseVector<F>& v) const;

  const HomologyPiece<F>& homology(int l, int d) const;
  std::size_t homology_dim(int l) const;
  /// kappa_i = dim H_i; complete only when exact().
  TruncatedSeries kappa() const;
  Coeffs kappa_coeffs() const { return kappa().coeffs; }

  bool check_d_squared() const;

 private:
  ModulePtr<F> module_;
  std::vector<Homogeneous<F>> gens_;
  int d_cap_;
  bool exact_;
  bool is_ring_;
  bool chains_bounded_ = false;
  std::vector<int> weights_;
  std::vector<std::vector<std::uint64_t>> subsets_;
  std::vector<std::map<std::uint64_t, std::size_t>> subset_index_;
  std::vector<std::vector<std::vector<std::uint32_t>>> offsets_;  // [l][d][s]
  std::vector<std::vector<std::size_t>> dims_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<HomologyPiece<F>>> homology_;
};

template <class F>
using KoszulPtr = std::shared_ptr<const KoszulComplex<F>>;

/// Degree-0 bound above which the Koszul homology of M vanishes, when one is known.
template <class F>
std::optional<int> koszul_vanishing_bound(const GradedModule<F>& m, const std::vector<Homogeneous<F>>& gens);

/// Sign of e_σ ∧ e_τ in terms of e_{σ∪τ}; 0 when σ and τ meet.
int wedge_sign(std::uint64_t sigma, std::uint64_t tau);

/// Product x * y of x in K^P_{l1,d1} and y in K^Q_{l2,d2}: ring times ring lands in the ring
/// complex, module times ring (or ring times module) lands in the module complex.
template <class F>
SparseVector<F> koszul_product(const KoszulComplex<F>& p, int l1, int d1, const SparseVector<F>& x,
                               const KoszulComplex<F>& q, int l2, int d2, const SparseVector<F>& y);

template <class F>
struct HomologyClass {
  int l = 0;  // homological degree
  int d = 0;  // internal degree
  SparseVector<F> coords;
};

/// All basis classes of H_l (every internal degree), l in [l_min, rank].
template <class F>
std::vector<HomologyClass<F>> homology_basis(const KoszulComplex<F>& k, int l_min = 0);

/// Class of rep(h) * rep(v) for h in H(A) and v in H of the module complex (or of A).
template <class F>
HomologyClass<F> homology_product(const KoszulComplex<F>& ka, const HomologyClass<F>& h, const KoszulComplex<F>& km,
                                  const HomologyClass<F>& v);

enum class MasseyStatus { vanishes, non_vanishing, no_defining_system, inconclusive };
std::string to_string(MasseyStatus s);

template <class F>
struct MasseyEntry {
  int i = 0, j = 0;
  int l = 0, d = 0;
  bool in_module = false;
  SparseVector<F> value;
};

template <class F>
struct MasseyResult {
  MasseyStatus status = MasseyStatus::inconclusive;
  std::string reason;
  /// For non_vanishing: a defining system and the class of sum_k bar(a_0k) a_kn.
  std::vector<MasseyEntry<F>> system;
  std::optional<HomologyClass<F>> product;
};

struct MasseyOptions {
  std::size_t budget = 10000;  // parameter monomials per entry, and search points
};

/// <v_1, ..., v_n>. Ring mode (km == nullptr): every v_i in H_{>=1}(A). Module mode: v_1 in H(M)
/// from km, v_2..v_n in H_{>=1}(A). Vanishes means the final element is a boundary for every
/// defining system.
template <class F>
MasseyResult<F> massey_product(const KoszulComplex<F>& ka, const KoszulComplex<F>* km,
                               const std::vector<HomologyClass<F>>& v, MasseyOptions options = {});

/// Re-checks a defining system and the non-bounding final element from scratch.
template <class F>
bool verify_massey_witness(const KoszulComplex<F>& ka, const KoszulComplex<F>* km,
                           const std::vector<HomologyClass<F>>& v, const MasseyResult<F>& result);

/// Jacobian cycles of K^R_l for R = S/I, with the scalar family solved for.
template <class F>
struct HerzogReport {
  bool applicable = false;
  std::string reason;
  int l = 0;
  std::vector<HomologyClass<F>> cycles;           // chosen family; coords are chain vectors in K_{l,d}
  std::vector<std::size_t> solutions_per_generator;  // dimension of the solved scalar family
  std::size_t homology_dim = 0;
  std::size_t span_rank = 0;
  bool spans = false;
  KoszulPtr<F> complex;  // on the variables
};

/// Requires characteristic zero, a quotient-ring algebra and I inside (X)^2.
template <class F>
HerzogReport<F> herzog_cycles(const AlgebraPtr<F>& r, int l);

}  // namespace golodlab
