#pragma once

#include <random>
#include <vector>

#include "khom/module.hpp"

namespace khom {

/// Basis of Hom_Λ(M, N).
template <class K>
std::vector<ModuleMap<K>> hom_basis(const Module<K>& m, const Module<K>& n);
template <class K>
Index hom_dim(const Module<K>& m, const Module<K>& n);

/// A module with its structure map: the inclusion for kernels and images,
/// the projection for cokernels.
template <class K>
struct Piece {
  Module<K> module;
  ModuleMap<K> map;
};

template <class K>
Piece<K> kernel(const ModuleMap<K>& f);
template <class K>
Piece<K> cokernel(const ModuleMap<K>& f);
template <class K>
Piece<K> image(const ModuleMap<K>& f);

/// Submodule of M spanned vertexwise by the columns of `spans`, which must be
/// closed under the arrows. Columns need not be independent.
template <class K>
Piece<K> submodule(const Module<K>& m, const std::vector<Mat<K>>& spans);

/// ⊕_k P(gens[k]).
template <class K>
struct FreeModule {
  AlgPtr<K> alg;
  std::vector<int> gens;

  Index rank() const { return static_cast<Index>(gens.size()); }
  const DirectSum<K>& sum() const;
  const Module<K>& module() const { return sum().module; }

  // filled lazily by sum()
  mutable std::shared_ptr<const DirectSum<K>> cache_;
};

template <class K>
FreeModule<K> free_module(const AlgPtr<K>& alg, std::vector<int> gens);

/// Map between free modules. entries[r][c] are the coordinates of the image
/// of the generator c in e_{tgt[r]} Λ e_{src[c]}.
template <class K>
struct FreeMap {
  FreeModule<K> source, target;
  std::vector<std::vector<Vec<K>>> entries;

  ModuleMap<K> to_module() const;
  /// Hom_Λ(-, Λ): a map target* -> source* over the opposite algebra.
  FreeMap dual() const;
  FreeMap operator*(const FreeMap& rhs) const;
};

template <class K>
FreeMap<K> free_map_zero(const FreeModule<K>& source, const FreeModule<K>& target);

/// The map from a free module sending generator c to images[c], an element of
/// the target module at vertex source.gens[c].
template <class K>
FreeMap<K> free_map_from_images(const FreeModule<K>& source, const FreeModule<K>& target,
                                const std::vector<Vec<K>>& images);

/// Maps from a free module into an arbitrary module, same convention.
template <class K>
ModuleMap<K> map_from_free(const FreeModule<K>& source, const Module<K>& target, const std::vector<Vec<K>>& images);

/// P1 -f-> P0 -eps-> M -> 0 with P0 = ⊕_i P(i) ⊗ M_i and P1 = P0(ker eps).
template <class K>
struct Presentation {
  Module<K> m;
  FreeModule<K> p0, p1;
  ModuleMap<K> eps;    // P0 -> M
  Piece<K> ker;        // K -> P0
  ModuleMap<K> eps_k;  // P1 -> K
  FreeMap<K> f;        // P1 -> P0
};

template <class K>
Presentation<K> functorial_presentation(const Module<K>& m);

/// Generator-level map P0(M) -> P0(N) induced by t: M -> N.
template <class K>
FreeMap<K> free_lift(const FreeModule<K>& source, const FreeModule<K>& target, const ModuleMap<K>& t);

/// Lifts (t0, t1) of t: M -> N through the functorial presentations.
template <class K>
struct PresentationLift {
  FreeMap<K> t0, t1;
  ModuleMap<K> tk;  // on the kernels
};

template <class K>
PresentationLift<K> lift(const Presentation<K>& pm, const Presentation<K>& pn, const ModuleMap<K>& t);

/// coker(f*: P0* -> P1*) over the opposite algebra, with its projection.
template <class K>
Piece<K> transpose_piece(const Presentation<K>& pres);
template <class K>
Module<K> transpose(const Module<K>& m);

/// Removes projective (resp. injective) direct summands.
template <class K>
Module<K> strip_projective(const Module<K>& m);
template <class K>
Module<K> strip_injective(const Module<K>& m);

template <class K>
Module<K> tau(const Module<K>& m);
template <class K>
Module<K> tau_minus(const Module<K>& m);

/// Generators of M/rad M: per vertex, vectors completing rad M to M.
template <class K>
std::vector<Mat<K>> top_generators(const Module<K>& m);

/// P(M/rad M) -> M.
template <class K>
struct Cover {
  FreeModule<K> free;
  ModuleMap<K> map;
};
template <class K>
Cover<K> projective_cover(const Module<K>& m);

template <class K>
bool is_projective(const Module<K>& m);
template <class K>
bool is_injective(const Module<K>& m);

/// Random search for an isomorphism; false may in principle be a miss over
/// tiny prime fields but is definitive when hom dimensions differ.
template <class K>
bool is_isomorphic(const Module<K>& m, const Module<K>& n, std::uint64_t seed = 1, int trials = 8);

enum class StableSide { projectives, injectives };

struct StableHom {
  Index hom_dim = 0;
  Index factoring_dim = 0;
  Index dim() const { return hom_dim - factoring_dim; }
};

template <class K>
StableHom stable_hom(const Module<K>& m, const Module<K>& n, StableSide side);

/// 0 -> P_len -> ... -> P_0 -> M with radical differentials.
/// maps[k]: terms[k+1] -> terms[k].
template <class K>
struct ProjResolution {
  std::vector<FreeModule<K>> terms;
  std::vector<FreeMap<K>> maps;
  ModuleMap<K> augmentation;  // terms[0] -> M
  int length() const { return static_cast<int>(terms.size()) - 1; }
};

template <class K>
ProjResolution<K> minimal_proj_resolution(const Module<K>& m);

template <class K>
int global_dimension(const AlgPtr<K>& alg);

/// The injective module ν(P) for a free module P, with ν(P(i)) = I(i).
template <class K>
Module<K> nakayama(const FreeModule<K>& p);
template <class K>
ModuleMap<K> nakayama(const FreeMap<K>& f);

}  // namespace khom
