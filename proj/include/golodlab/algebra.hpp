#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "golodlab/groebner.hpp"
#include "golodlab/linalg.hpp"

namespace golodlab {

/// A homogeneous element: its degree and its coordinates in the stored basis of that degree.
template <class F>
struct Homogeneous {
  int degree = 0;
  SparseVector<F> vec;
};

enum class AlgebraKind { quotient, trivial_extension, fibre_product, iterated_fibre, quotient_of_algebra, other };
enum class ModuleKind { residue_field, regular, free, ideal, submodule, quotient, direct_sum, restricted };

std::string to_string(AlgebraKind kind);
std::string to_string(ModuleKind kind);

/// Standard-monomial description of a quotient S/I.
template <class F>
struct QuotientPresentation {
  RingPtr<F> ring;
  std::shared_ptr<const HomogeneousIdeal<F>> ideal;
  std::shared_ptr<const GroebnerBasis<F>> gb;
  std::vector<std::vector<Monomial>> monomials;
  std::vector<std::map<Monomial, std::uint32_t>> index;

  /// Coordinates of the class of a homogeneous polynomial of degree d <= cap.
  SparseVector<F> to_vector(const Poly<F>& p, int d) const;
  Poly<F> to_poly(int d, const SparseVector<F>& v) const;
};

/// Connected graded algebra stored degreewise through cap(). Degree 0 is spanned by the unit,
/// which is basis vector 0. When top_degree() is known every piece above it is zero.
template <class F>
class GradedAlgebra {
 public:
  using Elem = typename F::Elem;
  using ProductFn = std::function<SparseVector<F>(int d, std::size_t i, int e, std::size_t j)>;

  struct Data {
    F field;
    int cap = 0;
    std::optional<int> top;
    std::optional<int> gen_bound;
    std::vector<std::size_t> dims;
    AlgebraKind kind = AlgebraKind::other;
    std::vector<std::vector<std::string>> labels;
    std::shared_ptr<const QuotientPresentation<F>> presentation;
  };

  GradedAlgebra(Data data, const ProductFn& product);

  const F& field() const { return d_.field; }
  int cap() const { return d_.cap; }
  std::optional<int> top_degree() const { return d_.top; }
  /// True when every nonzero piece is stored.
  bool is_finite() const { return d_.top && *d_.top <= d_.cap; }
  std::optional<int> gen_degree_bound() const { return d_.gen_bound; }
  AlgebraKind kind() const { return d_.kind; }
  const QuotientPresentation<F>* presentation() const { return d_.presentation.get(); }

  bool known_zero(int d) const { return d < 0 || (d_.top && d > *d_.top); }
  /// Throws CapError for an unstored degree that is not known to vanish.
  std::size_t dim(int d) const;
  std::size_t total_dim() const;
  const std::string& label(int d, std::size_t i) const { return d_.labels.at(d).at(i); }
  std::string format(int d, const SparseVector<F>& v) const;

  const SparseVector<F>& basis_product(int d, std::size_t i, int e, std::size_t j) const;
  /// (basis element i of degree d) * b
  SparseVector<F> mul_basis(int d, std::size_t i, int e, const SparseVector<F>& b) const;
  SparseVector<F> mul(int d, const SparseVector<F>& a, int e, const SparseVector<F>& b) const;

 private:
  Data d_;
  // table_[d][e][i * dim(e) + j] for d + e <= cap
  std::vector<std::vector<std::vector<SparseVector<F>>>> table_;
};

template <class F>
using AlgebraPtr = std::shared_ptr<const GradedAlgebra<F>>;

/// Degree-preserving algebra homomorphism given by images of basis vectors.
template <class F>
struct AlgebraMap {
  AlgebraPtr<F> source;
  AlgebraPtr<F> target;
  std::vector<std::vector<SparseVector<F>>> images;  // [d][i], d <= source->cap()

  SparseVector<F> apply(int d, const SparseVector<F>& v) const;
  /// Surjective in every degree d <= through (throws CapError outside the stored window).
  bool is_surjective_through(int through) const;
  int max_degree() const { return static_cast<int>(images.size()) - 1; }
};

template <class F>
class GradedModule {
 public:
  using ActionFn = std::function<SparseVector<F>(int e, std::size_t a, int d, std::size_t m)>;

  struct Data {
    AlgebraPtr<F> algebra;
    int cap = 0;
    std::optional<int> top;
    std::optional<int> gen_bound;
    std::vector<std::size_t> dims;
    ModuleKind kind = ModuleKind::regular;
    std::vector<std::vector<std::string>> labels;
  };

  GradedModule(Data data, const ActionFn& action);

  const AlgebraPtr<F>& algebra() const { return d_.algebra; }
  const F& field() const { return d_.algebra->field(); }
  int cap() const { return d_.cap; }
  std::optional<int> top_degree() const { return d_.top; }
  bool is_finite() const { return d_.top && *d_.top <= d_.cap; }
  /// Upper bound on degrees of minimal generators, when known.
  std::optional<int> gen_degree_bound() const { return d_.gen_bound; }
  ModuleKind kind() const { return d_.kind; }

  bool known_zero(int d) const { return d < 0 || (d_.top && d > *d_.top); }
  std::size_t dim(int d) const;
  const std::string& label(int d, std::size_t i) const { return d_.labels.at(d).at(i); }
  std::string format(int d, const SparseVector<F>& v) const;

  /// (algebra basis element a of degree e) * (module basis element m of degree d)
  const SparseVector<F>& basis_action(int e, std::size_t a, int d, std::size_t m) const;
  SparseVector<F> act_basis(int e, std::size_t a, int d, const SparseVector<F>& m) const;
  SparseVector<F> act(int e, const SparseVector<F>& a, int d, const SparseVector<F>& m) const;

 private:
  Data d_;
  std::vector<std::vector<std::vector<SparseVector<F>>>> table_;  // [e][d][a * dim(d) + m]
};

template <class F>
using ModulePtr = std::shared_ptr<const GradedModule<F>>;

// ---------------------------------------------------------------- constructions

/// S/I stored through degree cap. Requires I proper and cap >= 2 * (max variable weight).
template <class F>
AlgebraPtr<F> quotient_algebra(const HomogeneousIdeal<F>& ideal, int cap);

template <class F>
struct TrivialExtension {
  AlgebraPtr<F> algebra;
  AlgebraMap<F> inclusion;   // j: R -> R ⋉ M
  AlgebraMap<F> projection;  // p: R ⋉ M -> R
};

/// R ⋉ M with basis R_d followed by M_d. M must vanish in degree 0.
template <class F>
TrivialExtension<F> trivial_extension(const AlgebraPtr<F>& r, const ModulePtr<F>& m);

template <class F>
struct AlgebraQuotient {
  AlgebraPtr<F> algebra;
  AlgebraMap<F> projection;
  std::vector<Subspace<F>> ideal;  // J_d inside R_d
};

/// R/J for the ideal J generated by the given homogeneous elements of positive degree.
template <class F>
AlgebraQuotient<F> quotient_by_ideal(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& gens);

template <class F>
struct FibreProduct {
  AlgebraPtr<F> algebra;
  std::vector<AlgebraMap<F>> projections;
  std::optional<AlgebraMap<F>> diagonal;
  /// kernel_of_projection[k]: elements of A whose k-th component vanishes, as subspaces of A_d
  std::vector<std::vector<Subspace<F>>> kernel_of_projection;
};

/// {(r1, r2) : e1(r1) = e2(r2)}. Both maps must be surjective in all stored degrees.
template <class F>
FibreProduct<F> fibre_product(const AlgebraMap<F>& e1, const AlgebraMap<F>& e2);

/// R x_{R/I} ... x_{R/I} R with n >= 2 factors.
template <class F>
FibreProduct<F> iterated_fibre(const AlgebraPtr<F>& r, const std::vector<Homogeneous<F>>& ideal_gens, int n);

template <class F>
AlgebraMap<F> identity_map(const AlgebraPtr<F>& a);

/// The natural surjection S/I -> S/J for quotient algebras over the same ring with I inside J,
/// stored through the smaller cap unless S/J is finite.
template <class F>
AlgebraMap<F> quotient_surjection(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b);

template <class F>
struct GeneratorData {
  std::vector<Homogeneous<F>> generators;
  /// False when generators above the stored window cannot be excluded.
  bool exact = true;
  std::vector<int> degrees() const;
};

/// Minimal generators of the maximal ideal: first basis vectors completing (m^2)_d in each m_d.
template <class F>
GeneratorData<F> min_gens(const AlgebraPtr<F>& a);

/// Minimal module generators: first basis vectors completing (mM)_d in each M_d.
template <class F>
GeneratorData<F> min_gens_module(const GradedModule<F>& m);

template <class F>
ModulePtr<F> residue_field(const AlgebraPtr<F>& a, int shift = 0);

template <class F>
ModulePtr<F> regular_module(const AlgebraPtr<F>& a);

template <class F>
ModulePtr<F> free_module(const AlgebraPtr<F>& a, const std::vector<int>& degrees);

/// Degreewise spans of the submodule generated by gens, through the module's cap.
template <class F>
std::vector<Subspace<F>> submodule_spans(const GradedModule<F>& m, const std::vector<Homogeneous<F>>& gens);

template <class F>
ModulePtr<F> submodule(const ModulePtr<F>& m, const std::vector<Homogeneous<F>>& gens,
                       ModuleKind kind = ModuleKind::submodule);

/// Submodule with the given degreewise spans, which must be closed under the action.
template <class F>
ModulePtr<F> submodule_from_spans(const ModulePtr<F>& m, std::vector<Subspace<F>> spans,
                                  std::optional<int> gen_bound, ModuleKind kind = ModuleKind::submodule);

template <class F>
ModulePtr<F> quotient_module(const ModulePtr<F>& m, const std::vector<Homogeneous<F>>& gens,
                             ModuleKind kind = ModuleKind::quotient);

template <class F>
ModulePtr<F> ideal_as_module(const AlgebraPtr<F>& a, const std::vector<Homogeneous<F>>& gens);

/// coker(F1 -> F0) with F0 free on the given degrees and relations as elements of F0.
template <class F>
ModulePtr<F> cokernel_module(const AlgebraPtr<F>& a, const std::vector<int>& degrees,
                             const std::vector<Homogeneous<F>>& relations);

template <class F>
ModulePtr<F> direct_sum(const ModulePtr<F>& m, const ModulePtr<F>& n);

/// N regarded as an A-module through f: A -> R.
template <class F>
ModulePtr<F> restrict_along(const AlgebraMap<F>& f, const ModulePtr<F>& n);

template <class F>
std::vector<std::size_t> hilbert_function(const GradedAlgebra<F>& a, int through);

template <class F>
std::vector<std::size_t> hilbert_function(const GradedModule<F>& m, int through);

/// Exhaustive associativity and unit check over all stored degree triples.
template <class F>
bool check_associative(const GradedAlgebra<F>& a);

template <class F>
bool check_module_axioms(const GradedModule<F>& m);

}  // namespace golodlab
