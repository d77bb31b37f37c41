#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "golodlab/error.hpp"
#include "golodlab/field.hpp"

namespace golodlab {

/// Sparse vector over F: entries sorted by index, no stored zeros.
template <class F>
class SparseVector {
 public:
  using Elem = typename F::Elem;
  using Entry = std::pair<std::uint32_t, Elem>;

  SparseVector() = default;
  explicit SparseVector(std::vector<Entry> sorted) : entries_(std::move(sorted)) {}

  static SparseVector unit(std::uint32_t i, const F& field) {
    SparseVector v;
    v.entries_.emplace_back(i, field.one());
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Appends an entry; index must exceed every stored index and value must be nonzero.
  void push_back(std::uint32_t index, Elem value) { entries_.emplace_back(index, std::move(value)); }

  Elem at(const F& field, std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return field.zero();
  }

  std::uint32_t max_index() const { return entries_.empty() ? 0 : entries_.back().first; }

  bool operator==(const SparseVector& o) const { return entries_ == o.entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Map-backed accumulator for building a SparseVector from scattered contributions.
template <class F>
class VectorBuilder {
 public:
  using Elem = typename F::Elem;

  explicit VectorBuilder(const F& field) : field_(&field) {}

  void add(std::uint32_t index, const Elem& value) {
    if (field_->is_zero(value)) return;
    auto [it, inserted] = acc_.try_emplace(index, value);
    if (!inserted) {
      it->second = field_->add(it->second, value);
      if (field_->is_zero(it->second)) acc_.erase(it);
    }
  }

  /// this += c * v, with v's indices shifted by offset.
  void add_scaled(const Elem& c, const SparseVector<F>& v, std::uint32_t offset = 0) {
    if (field_->is_zero(c)) return;
    for (const auto& [i, x] : v) add(i + offset, field_->mul(c, x));
  }

  void add_vector(const SparseVector<F>& v, std::uint32_t offset = 0) {
    for (const auto& [i, x] : v) add(i + offset, x);
  }

  SparseVector<F> build() const {
    SparseVector<F> out;
    for (const auto& [i, x] : acc_) out.push_back(i, x);
    return out;
  }

  bool empty() const { return acc_.empty(); }

 private:
  const F* field_;
  std::map<std::uint32_t, Elem> acc_;
};

template <class F>
SparseVector<F> add_scaled(const F& field, const SparseVector<F>& y, const typename F::Elem& a,
                           const SparseVector<F>& x) {
  SparseVector<F> out;
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->first < ix->first)) {
      out.push_back(iy->first, iy->second);
      ++iy;
    } else if (iy == y.end() || ix->first < iy->first) {
      auto v = field.mul(a, ix->second);
      if (!field.is_zero(v)) out.push_back(ix->first, std::move(v));
      ++ix;
    } else {
      auto v = iy->second;
      field.add_mul(v, a, ix->second);
      if (!field.is_zero(v)) out.push_back(ix->first, std::move(v));
      ++ix;
      ++iy;
    }
  }
  return out;
}

template <class F>
SparseVector<F> add(const F& field, const SparseVector<F>& a, const SparseVector<F>& b) {
  return add_scaled(field, a, field.one(), b);
}

template <class F>
SparseVector<F> subtract(const F& field, const SparseVector<F>& a, const SparseVector<F>& b) {
  return add_scaled(field, a, field.neg(field.one()), b);
}

template <class F>
SparseVector<F> scale(const F& field, const typename F::Elem& a, const SparseVector<F>& x) {
  SparseVector<F> out;
  if (field.is_zero(a)) return out;
  for (const auto& [i, v] : x) out.push_back(i, field.mul(a, v));
  return out;
}

template <class F>
SparseVector<F> shift_indices(const SparseVector<F>& x, std::uint32_t offset) {
  SparseVector<F> out;
  for (const auto& [i, v] : x) out.push_back(i + offset, v);
  return out;
}

/// Incremental row-echelon form. Rows are normalized to a leading 1 and never back-reduced.
/// With tracking enabled every row also records how it combines the inserted vectors.
template <class F>
class Echelon {
 public:
  using Elem = typename F::Elem;

  struct Row {
    SparseVector<F> vec;
    SparseVector<F> combo;
  };

  /// v = remainder + sum_k combo[k] * (k-th inserted vector)
  struct Reduction {
    SparseVector<F> remainder;
    SparseVector<F> combo;
  };

  Echelon(F field, std::size_t dim, bool track = false)
      : field_(std::move(field)), dim_(dim), track_(track), pivot_row_(dim, -1) {}

  /// Returns true when v is independent of everything inserted so far. When tracking and v is
  /// dependent, *relation receives c with sum_k c_k inserted_k = 0 and c = 1 at v's own slot.
  bool insert(const SparseVector<F>& v, SparseVector<F>* relation = nullptr) {
    check_bounds(v);
    std::uint32_t slot = static_cast<std::uint32_t>(inserted_++);
    Reduction red = reduce_impl(v);
    if (red.remainder.empty()) {
      if (track_ && relation != nullptr) {
        VectorBuilder<F> b(field_);
        b.add(slot, field_.one());
        b.add_scaled(field_.neg(field_.one()), red.combo);
        *relation = b.build();
      }
      return false;
    }
    Elem lead_inv = field_.inv(red.remainder.entries().front().second);
    Row row;
    row.vec = scale(field_, lead_inv, red.remainder);
    if (track_) {
      VectorBuilder<F> b(field_);
      b.add(slot, field_.one());
      b.add_scaled(field_.neg(field_.one()), red.combo);
      row.combo = scale(field_, lead_inv, b.build());
    }
    pivot_row_[row.vec.entries().front().first] = static_cast<std::int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
  }

  Reduction reduce(const SparseVector<F>& v) const {
    check_bounds(v);
    return reduce_impl(v);
  }

  bool contains(const SparseVector<F>& v) const { return reduce(v).remainder.empty(); }

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }
  std::size_t inserted() const { return inserted_; }
  const std::vector<Row>& rows() const { return rows_; }
  const F& field() const { return field_; }

  std::vector<std::uint32_t> pivots() const {
    std::vector<std::uint32_t> out;
    for (const auto& r : rows_) out.push_back(r.vec.entries().front().first);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void check_bounds(const SparseVector<F>& v) const {
    if (!v.empty() && v.max_index() >= dim_) {
      throw InternalError("vector index out of range in echelon reduction");
    }
  }

  Reduction reduce_impl(const SparseVector<F>& v) const {
    std::map<std::uint32_t, Elem> work;
    for (const auto& [i, x] : v) work.emplace(i, x);
    VectorBuilder<F> combo(field_);
    auto it = work.begin();
    while (it != work.end()) {
      std::int32_t r = pivot_row_[it->first];
      if (r < 0) {
        ++it;
        continue;
      }
      std::uint32_t col = it->first;
      Elem c = it->second;
      const Row& row = rows_[static_cast<std::size_t>(r)];
      for (const auto& [j, x] : row.vec) {
        auto [wit, inserted] = work.try_emplace(j, field_.zero());
        field_.add_mul(wit->second, field_.neg(c), x);
        if (field_.is_zero(wit->second)) work.erase(wit);
      }
      if (track_) combo.add_scaled(c, row.combo);
      it = work.upper_bound(col);
    }
    Reduction out;
    for (auto& [i, x] : work) out.remainder.push_back(i, x);
    out.combo = combo.build();
    return out;
  }

  F field_;
  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_row_;
};

/// A subspace of F^n in reduced row-echelon form. Provides coordinates with respect to the RREF
/// basis and, for quotients, coordinates with respect to the complementary standard basis vectors.
template <class F>
class Subspace {
 public:
  using Elem = typename F::Elem;

  Subspace(F field, std::size_t ambient_dim) : field_(std::move(field)), ambient_(ambient_dim) {
    build({});
  }

  Subspace(F field, std::size_t ambient_dim, const std::vector<SparseVector<F>>& spanning)
      : field_(std::move(field)), ambient_(ambient_dim) {
    build(spanning);
  }

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<SparseVector<F>>& basis() const { return basis_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  /// Standard basis indices not used as pivots, ascending. Their images span F^n / U.
  const std::vector<std::uint32_t>& complement() const { return complement_; }

  /// v minus its projection onto the span, written in ambient coordinates; supported on complement().
  SparseVector<F> reduce(const SparseVector<F>& v) const {
    VectorBuilder<F> b(field_);
    b.add_vector(v);
    for (const auto& [i, x] : v) {
      std::int32_t k = pivot_index_[i];
      if (k >= 0) b.add_scaled(field_.neg(x), basis_[static_cast<std::size_t>(k)]);
    }
    return b.build();
  }

  bool contains(const SparseVector<F>& v) const { return reduce(v).empty(); }

  /// Coordinates of v in the RREF basis; v must lie in the subspace.
  SparseVector<F> coordinates(const SparseVector<F>& v) const {
    SparseVector<F> out;
    std::vector<std::pair<std::uint32_t, Elem>> tmp;
    for (const auto& [i, x] : v) {
      std::int32_t k = pivot_index_[i];
      if (k >= 0) tmp.emplace_back(static_cast<std::uint32_t>(k), x);
    }
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [k, x] : tmp) out.push_back(k, x);
    if (!reduce(v).empty()) throw InternalError("vector expected in subspace lies outside it");
    return out;
  }

  /// Coordinates of the class of v in F^n / U with respect to complement().
  SparseVector<F> quotient_coordinates(const SparseVector<F>& v) const {
    SparseVector<F> r = reduce(v);
    SparseVector<F> out;
    for (const auto& [i, x] : r) out.push_back(static_cast<std::uint32_t>(complement_index_[i]), x);
    return out;
  }

  SparseVector<F> embed(const SparseVector<F>& coords) const {
    VectorBuilder<F> b(field_);
    for (const auto& [k, x] : coords) b.add_scaled(x, basis_[k]);
    return b.build();
  }

 private:
  void build(const std::vector<SparseVector<F>>& spanning) {
    Echelon<F> ech(field_, ambient_);
    for (const auto& v : spanning) ech.insert(v);
    std::vector<SparseVector<F>> rows;
    for (const auto& r : ech.rows()) rows.push_back(r.vec);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.entries().front().first < b.entries().front().first;
    });
    pivot_index_.assign(ambient_, -1);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      pivot_index_[rows[k].entries().front().first] = static_cast<std::int32_t>(k);
    }
    // back-substitution from the last pivot upward
    for (std::size_t kk = rows.size(); kk-- > 0;) {
      VectorBuilder<F> b(field_);
      b.add_vector(rows[kk]);
      std::uint32_t lead = rows[kk].entries().front().first;
      for (const auto& [i, x] : rows[kk]) {
        if (i == lead) continue;
        std::int32_t k = pivot_index_[i];
        if (k >= 0) b.add_scaled(field_.neg(x), rows[static_cast<std::size_t>(k)]);
      }
      rows[kk] = b.build();
    }
    basis_ = std::move(rows);
    pivots_.clear();
    for (const auto& r : basis_) pivots_.push_back(r.entries().front().first);
    complement_.clear();
    complement_index_.assign(ambient_, -1);
    for (std::uint32_t i = 0; i < ambient_; ++i) {
      if (pivot_index_[i] < 0) {
        complement_index_[i] = static_cast<std::int32_t>(complement_.size());
        complement_.push_back(i);
      }
    }
  }

  F field_;
  std::size_t ambient_;
  std::vector<SparseVector<F>> basis_;
  std::vector<std::uint32_t> pivots_;
  std::vector<std::uint32_t> complement_;
  std::vector<std::int32_t> pivot_index_;
  std::vector<std::int32_t> complement_index_;
};

enum class PivotRule { first, last };

/// A linear map F^m -> F^n given by the images of the m source basis vectors.
/// Supports kernel, image membership and a fixed linear choice of preimages.
template <class F>
class LinearMap {
 public:
  using Elem = typename F::Elem;

  LinearMap(F field, std::size_t target_dim, std::vector<SparseVector<F>> images,
            PivotRule rule = PivotRule::first)
      : field_(field), images_(std::move(images)), rule_(rule), echelon_(field, target_dim, true) {
    const std::size_t m = images_.size();
    for (std::size_t s = 0; s < m; ++s) {
      std::size_t k = rule_ == PivotRule::first ? s : m - 1 - s;
      SparseVector<F> rel;
      if (!echelon_.insert(images_[k], &rel)) kernel_.push_back(to_source(rel));
    }
    if (rule_ == PivotRule::last) std::reverse(kernel_.begin(), kernel_.end());
  }

  std::size_t source_dim() const { return images_.size(); }
  std::size_t target_dim() const { return echelon_.dim(); }
  std::size_t rank() const { return echelon_.rank(); }
  const std::vector<SparseVector<F>>& images() const { return images_; }
  const std::vector<SparseVector<F>>& kernel() const { return kernel_; }

  bool in_image(const SparseVector<F>& y) const { return echelon_.contains(y); }

  /// A preimage depending linearly on y, or nullopt when y is not in the image.
  std::optional<SparseVector<F>> preimage(const SparseVector<F>& y) const {
    auto red = echelon_.reduce(y);
    if (!red.remainder.empty()) return std::nullopt;
    return to_source(red.combo);
  }

  SparseVector<F> apply(const SparseVector<F>& x) const {
    VectorBuilder<F> b(field_);
    for (const auto& [i, c] : x) b.add_scaled(c, images_[i]);
    return b.build();
  }

 private:
  SparseVector<F> to_source(const SparseVector<F>& slots) const {
    if (rule_ == PivotRule::first) return slots;
    const std::size_t m = images_.size();
    std::vector<typename SparseVector<F>::Entry> tmp;
    for (const auto& [s, c] : slots) tmp.emplace_back(static_cast<std::uint32_t>(m - 1 - s), c);
    std::sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return SparseVector<F>(std::move(tmp));
  }

  F field_;
  std::vector<SparseVector<F>> images_;
  PivotRule rule_;
  Echelon<F> echelon_;
  std::vector<SparseVector<F>> kernel_;
};

template <class F>
std::size_t rank_of(const F& field, std::size_t dim, const std::vector<SparseVector<F>>& vectors) {
  Echelon<F> e(field, dim);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

}  // namespace golodlab
