#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "khom/algebra.hpp"

namespace khom {

/// Finite-dimensional right module, stored as a representation: a vector
/// space per vertex and a matrix per arrow (columns index the source space).
///
/// Modules are immutable handles; copies share data. A module built by
/// `direct_sum` remembers its summands, and the modules returned by
/// `projective` / `injective` remember which indecomposable they are. That
/// shape information only speeds up Hom computations; equality ignores it.
template <class K>
class Module {
 public:
  using AlgebraPtr = typename Algebra<K>::Ptr;

  Module() = default;
  /// Checks matrix shapes and that every relation acts as zero.
  Module(AlgebraPtr alg, std::vector<Index> dims, std::vector<Mat<K>> action);

  static Module zero(AlgebraPtr alg);

  const AlgebraPtr& algebra() const { return d_->alg; }
  const std::vector<Index>& dims() const { return d_->dims; }
  Index dim(int v) const { return d_->dims[v]; }
  Index total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  const Mat<K>& action(int arrow) const { return d_->action[arrow]; }
  /// Composite action along a path (identity for a trivial path).
  Mat<K> path_action(const Path& p) const;

  const std::vector<Module>& summands() const { return d_->summands; }
  int projective_vertex() const { return d_->proj_vertex; }
  int injective_vertex() const { return d_->inj_vertex; }

  /// Offset of vertex v's block for summand k in this module's basis.
  Index summand_offset(std::size_t k, int v) const;

  bool operator==(const Module& other) const;
  const void* identity() const { return d_.get(); }

  struct Data {
    AlgebraPtr alg;
    std::vector<Index> dims;
    std::vector<Mat<K>> action;
    std::vector<Module> summands;
    int proj_vertex = -1;
    int inj_vertex = -1;
  };
  /// Wraps prepared data without validation.
  static Module from_data(Data d);

 private:
  std::shared_ptr<const Data> d_;
};

/// Λ-linear map given by one matrix per vertex.
template <class K>
class ModuleMap {
 public:
  ModuleMap() = default;
  /// Checks shapes and commutation with every arrow.
  ModuleMap(Module<K> source, Module<K> target, std::vector<Mat<K>> components);
  /// Trusts the caller: no commutation check.
  static ModuleMap unchecked(Module<K> source, Module<K> target, std::vector<Mat<K>> components);

  static ModuleMap zero(const Module<K>& source, const Module<K>& target);
  static ModuleMap identity(const Module<K>& m);

  const Module<K>& source() const { return source_; }
  const Module<K>& target() const { return target_; }
  const Mat<K>& at(int v) const { return comps_[v]; }
  const std::vector<Mat<K>>& components() const { return comps_; }

  bool is_zero() const;
  bool commutes() const;

  ModuleMap operator+(const ModuleMap& o) const;
  ModuleMap operator-(const ModuleMap& o) const;
  ModuleMap operator-() const;
  ModuleMap scaled(const K& c) const;
  /// Composite this ∘ rhs.
  ModuleMap operator*(const ModuleMap& rhs) const;
  bool operator==(const ModuleMap& o) const;

 private:
  Module<K> source_, target_;
  std::vector<Mat<K>> comps_;
};

template <class K>
bool same_algebra(const AlgPtr<K>& a, const AlgPtr<K>& b) {
  return a == b || a->same_as(*b);
}

/// e_iΛ, with basis the paths from i.
template <class K>
Module<K> projective(const AlgPtr<K>& alg, int i);
/// D(e_iΛ^op).
template <class K>
Module<K> injective(const AlgPtr<K>& alg, int i);
template <class K>
Module<K> simple(const AlgPtr<K>& alg, int i);

/// A direct sum together with the parts it was assembled from, in order.
template <class K>
struct DirectSum {
  Module<K> module;
  std::vector<Module<K>> parts;
  /// Offset of part k's block at vertex v.
  Index offset(std::size_t k, int v) const;
};

template <class K>
DirectSum<K> direct_sum(const AlgPtr<K>& alg, const std::vector<Module<K>>& parts);

/// Map between direct sums given blockwise; blocks[r][c] maps source part c to
/// target part r. Missing blocks (std::nullopt) are zero.
template <class K>
ModuleMap<K> block_map(const DirectSum<K>& source, const DirectSum<K>& target,
                       const std::vector<std::vector<std::optional<ModuleMap<K>>>>& blocks);

template <class K>
ModuleMap<K> injection(const DirectSum<K>& sum, std::size_t k);
template <class K>
ModuleMap<K> projection(const DirectSum<K>& sum, std::size_t k);

/// f ⊕ g ⊕ ... between the given sums.
template <class K>
ModuleMap<K> diagonal_map(const DirectSum<K>& source, const DirectSum<K>& target,
                          const std::vector<ModuleMap<K>>& maps);

/// k-dual Hom_k(M, k), a module over the opposite algebra.
template <class K>
Module<K> dual_D(const Module<K>& m);
template <class K>
ModuleMap<K> dual_D(const ModuleMap<K>& f);

/// Vertex matrices stacked column-major into one vector.
template <class K>
Vec<K> flatten(const ModuleMap<K>& f);
template <class K>
Index flat_size(const Module<K>& source, const Module<K>& target);
template <class K>
ModuleMap<K> unflatten(const Module<K>& source, const Module<K>& target, const Vec<K>& v);

}  // namespace khom
