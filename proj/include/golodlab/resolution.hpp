#pragma once

#include <optional>
#include <vector>

#include "golodlab/algebra.hpp"
#include "golodlab/series.hpp"

namespace golodlab {

/// Basis layout of a graded free module on generators of nondecreasing degree. In degree d the
/// basis is, generator by generator, (basis of A_{d - g_k}) * e_k.
template <class F>
class FreeLayout {
 public:
  struct Block {
    std::size_t generator;
    std::uint32_t offset;
    std::size_t size;
  };

  FreeLayout() = default;
  FreeLayout(AlgebraPtr<F> algebra, std::vector<int> degrees, int d_cap);

  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t rank() const { return degrees_.size(); }
  std::size_t dim(int d) const;
  const std::vector<Block>& blocks(int d) const { return blocks_.at(d); }
  /// Offset of generator k's block in degree d, or nullopt when the block is empty.
  std::optional<std::uint32_t> offset(int d, std::size_t k) const;
  /// Coordinates of a * e_k where a is algebra basis element i of degree d - g_k.
  std::uint32_t index(int d, std::size_t k, std::size_t i) const;

  /// (algebra element a of degree e) * (element v of degree d)
  SparseVector<F> act(int e, const SparseVector<F>& a, int d, const SparseVector<F>& v) const;
  SparseVector<F> act_basis(int e, std::size_t a, int d, const SparseVector<F>& v) const;

 private:
  AlgebraPtr<F> algebra_;
  std::vector<int> degrees_;
  int d_cap_ = 0;
  std::vector<std::vector<Block>> blocks_;
  std::vector<std::size_t> dims_;
};

/// Truncated minimal graded free resolution F_H -> ... -> F_0 -> M, computed degreewise through
/// internal degree d_cap. All Betti numbers beta_{i,j} with j <= d_cap are exact; a step is
/// complete when no generator of F_i can lie above d_cap.
template <class F>
class Resolution {
 public:
  struct Options {
    int h_cap = 6;
    int d_cap = 8;
    /// Known bound on the degree of every generator of every F_i (e.g. a regularity bound).
    std::optional<int> generator_bound;
    PivotRule rule = PivotRule::first;
  };

  Resolution(ModulePtr<F> module, Options options);

  const AlgebraPtr<F>& algebra() const { return module_->algebra(); }
  const ModulePtr<F>& module() const { return module_; }
  int h_cap() const { return opt_.h_cap; }
  int d_cap() const { return opt_.d_cap; }

  const FreeLayout<F>& layout(int i) const { return layouts_.at(i); }
  const std::vector<int>& generator_degrees(int i) const { return layouts_.at(i).degrees(); }
  /// Image of the k-th generator of F_i in F_{i-1} (in M for i = 0), in the generator's degree.
  const std::vector<SparseVector<F>>& generator_images(int i) const { return images_.at(i); }
  bool complete(int i) const { return complete_.at(i); }

  std::size_t betti(int i, int j) const;
  std::size_t betti_total(int i) const { return generator_degrees(i).size(); }
  std::vector<std::vector<std::size_t>> betti_table() const;  // [i][j], j <= d_cap
  TruncatedSeries poincare() const;

  /// Images of the basis of F_{i,d} under d_i (into M_d when i = 0).
  std::vector<SparseVector<F>> differential(int i, int d) const;
  SparseVector<F> apply_differential(int i, int d, const SparseVector<F>& v) const;

  /// No generator image has a component on a generator of the same degree.
  bool is_minimal() const;
  /// d_{i-1} d_i = 0, d_0 onto M through the window when step 0 is complete, and
  /// ker d_i = im d_{i+1} in every degree <= d_cap for i < h_cap.
  bool is_exact_in_window() const;

 private:
  void compute_step(int i);

  ModulePtr<F> module_;
  Options opt_;
  std::vector<FreeLayout<F>> layouts_;
  std::vector<std::vector<SparseVector<F>>> images_;
  std::vector<bool> complete_;
};

/// Default internal-degree window for h_cap homological steps.
template <class F>
int default_d_cap(const GradedAlgebra<F>& a, const GradedModule<F>& m, int h_cap);

/// Minimal resolution of S/I over the polynomial ring S, complete by construction: every Betti
/// degree is bounded by the degree of the lcm of the leading monomials of a Gröbner basis.
template <class F>
struct PolyResolution {
  AlgebraPtr<F> ring;  // S stored through the bound
  ModulePtr<F> module;
  std::optional<Resolution<F>> resolution;
  std::vector<std::size_t> betti() const;  // total Betti numbers, trailing zeros dropped
};

template <class F>
PolyResolution<F> resolution_over_poly_ring(const HomogeneousIdeal<F>& ideal);

/// A finite-length module over a quotient ring S/J regarded as an S-module; every Betti degree is
/// bounded by (top degree of M) + (sum of the variable weights).
template <class F>
PolyResolution<F> resolution_over_poly_ring(const ModulePtr<F>& module);

template <class F>
TruncatedSeries hilbert_series(const GradedAlgebra<F>& a, int through);
template <class F>
TruncatedSeries hilbert_series(const GradedModule<F>& m, int through);

/// Maps Tor^A_i(k,k)_j -> Tor^B_i(k,k)_j induced by a surjection f: A -> B. The pivot rule only
/// selects which solution of each lifting system is used; the induced matrices do not depend on it.
template <class F>
struct TorComparison {
  struct Entry {
    int i = 0, j = 0;
    std::size_t source_dim = 0, target_dim = 0, rank = 0;
    std::vector<SparseVector<F>> matrix;  // images of the source generators in target coordinates
  };
  std::vector<Entry> entries;
  std::vector<bool> complete;  // per homological degree: both resolutions complete
  /// Surjective for every (i, j) with i <= i_max.
  bool surjective_through(int i_max) const;
  /// First homological degree where surjectivity fails, if any.
  std::optional<int> first_failure() const;
};

template <class F>
TorComparison<F> tor_comparison(const AlgebraMap<F>& f, int h_cap, int d_cap, PivotRule rule = PivotRule::first);

}  // namespace golodlab
