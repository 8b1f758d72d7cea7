#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "khom/modrep.hpp"

namespace khom {

/// Bounded cochain complex; differentials raise degree.
template <class K>
class Complex {
 public:
  Complex() = default;
  /// terms[k] sits in degree lo + k and diffs[k] maps it to terms[k + 1].
  /// Checks shapes, commutation and d∘d = 0; trims zero terms at both ends.
  Complex(AlgPtr<K> alg, int lo, std::vector<Module<K>> terms, std::vector<ModuleMap<K>> diffs);
  static Complex unchecked(AlgPtr<K> alg, int lo, std::vector<Module<K>> terms, std::vector<ModuleMap<K>> diffs);

  static Complex zero(AlgPtr<K> alg);
  static Complex stalk(const Module<K>& m, int degree);

  const AlgPtr<K>& algebra() const { return alg_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool is_zero() const { return terms_.empty(); }
  Index total_dim() const;

  /// Zero module outside [lo, hi].
  const Module<K>& term(int n) const;
  /// d^n: X^n -> X^{n+1}; zero outside the support.
  ModuleMap<K> d(int n) const;

  bool operator==(const Complex& o) const;

 private:
  void trim();
  AlgPtr<K> alg_;
  int lo_ = 0;
  std::vector<Module<K>> terms_;
  std::vector<ModuleMap<K>> diffs_;
  Module<K> zero_;
};

/// Degreewise maps X^n -> Y^{n + degree}: chain maps have degree 0,
/// homotopies degree -1.
template <class K>
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(Complex<K> source, Complex<K> target, int degree, std::vector<ModuleMap<K>> comps);
  static GradedMap zero(const Complex<K>& source, const Complex<K>& target, int degree = 0);
  static GradedMap identity(const Complex<K>& x);

  const Complex<K>& source() const { return source_; }
  const Complex<K>& target() const { return target_; }
  int degree() const { return degree_; }
  /// Component X^n -> Y^{n + degree}; zero outside the source support.
  ModuleMap<K> at(int n) const;

  bool is_zero() const;
  /// Degree 0 and commuting with differentials.
  bool is_chain_map() const;

  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-(const GradedMap& o) const;
  GradedMap operator-() const;
  GradedMap scaled(const K& c) const;
  /// Composite this ∘ rhs.
  GradedMap operator*(const GradedMap& rhs) const;
  bool operator==(const GradedMap& o) const;

 private:
  Complex<K> source_, target_;
  int degree_ = 0;
  std::vector<ModuleMap<K>> comps_;  // indexed from source.lo()
};

template <class K>
using ChainMap = GradedMap<K>;

/// d_Y h + h d_X for a homotopy h of degree -1.
template <class K>
ChainMap<K> boundary_of(const GradedMap<K>& h);

/// X[n]^m = X^{m+n} with differential (-1)^n d.
template <class K>
Complex<K> shift(const Complex<K>& x, int n);
template <class K>
ChainMap<K> shift(const ChainMap<K>& f, int n);

/// cone(f)^n = X^{n+1} ⊕ Y^n, d = [[-d_X, 0], [f, d_Y]].
template <class K>
Complex<K> cone(const ChainMap<K>& f);

/// X -u-> Y -v-> cone(u) -w-> X[1].
template <class K>
struct Triangle {
  Complex<K> x, y, z;
  ChainMap<K> u, v, w;
};
template <class K>
Triangle<K> canonical_triangle(const ChainMap<K>& f);

template <class K>
Complex<K> direct_sum(const std::vector<Complex<K>>& parts);
/// Inclusion and projection of part k of direct_sum(parts).
template <class K>
ChainMap<K> complex_injection(const std::vector<Complex<K>>& parts, const Complex<K>& sum, std::size_t k);
template <class K>
ChainMap<K> complex_projection(const std::vector<Complex<K>>& parts, const Complex<K>& sum, std::size_t k);

/// Termwise D with negated degrees: (DX)^n = D(X^{-n}), over the opposite algebra.
template <class K>
Complex<K> dual_D(const Complex<K>& x);
template <class K>
ChainMap<K> dual_D(const ChainMap<K>& f);

template <class K>
bool is_acyclic(const Complex<K>& x);
/// Cohomology dimension vectors, one per degree of the support.
template <class K>
std::vector<std::vector<Index>> cohomology_dims(const Complex<K>& x);

/// Some h of degree -1 with d h + h d = f, if one exists.
template <class K>
std::optional<GradedMap<K>> null_homotopy(const ChainMap<K>& f);
/// A contraction of X (d h + h d = id), if X is contractible.
template <class K>
std::optional<GradedMap<K>> is_contractible(const Complex<K>& x);

/// Hom_K(X, Y) as chain maps modulo null-homotopic maps.
template <class K>
class HomSpace {
 public:
  HomSpace(const Complex<K>& x, const Complex<K>& y);

  Index chain_dim() const { return z_.cols(); }
  Index null_dim() const { return null_rank_; }
  Index dim() const { return reps_.cols(); }

  /// Chain maps representing a basis of Hom_K.
  ChainMap<K> rep(Index k) const { return from_coords(reps_.col(k)); }
  std::vector<ChainMap<K>> reps() const;
  /// Basis of all chain maps.
  ChainMap<K> cycle(Index k) const { return from_coords(z_.col(k)); }

  /// Coordinates of a chain map in the degreewise Hom bases.
  Vec<K> coords(const ChainMap<K>& f) const;
  ChainMap<K> from_coords(const Vec<K>& c) const;
  /// Class of f in the basis rep(0..dim-1).
  Vec<K> class_of(const ChainMap<K>& f) const;

  const Complex<K>& source() const { return x_; }
  const Complex<K>& target() const { return y_; }

 private:
  Complex<K> x_, y_;
  int lo_ = 0;
  std::vector<std::vector<ModuleMap<K>>> bases_;  // per degree from lo_
  std::vector<Index> offsets_;
  std::vector<Mat<K>> left_inv_;                  // flattened -> coordinates
  Mat<K> z_, null_, reps_;
  Index null_rank_ = 0;
};

template <class K>
Index hom_K_dim(const Complex<K>& x, const Complex<K>& y);

/// Homotopy equivalence witness: g f - id = d hx + hx d, f g - id = d hy + hy d.
template <class K>
struct Certificate {
  ChainMap<K> f, g;
  GradedMap<K> hx, hy;

  bool verify() const;
  Certificate inverse() const { return {g, f, hy, hx}; }
  /// Certificate for source -> other.target given other: this.target -> ...
  Certificate then(const Certificate& other) const;
  static Certificate identity(const Complex<K>& x);
};

/// Certificate X -> Y from a chain map f and a contraction of cone(f).
template <class K>
Certificate<K> certificate_from_cone(const ChainMap<K>& f, const GradedMap<K>& contraction);

template <class K>
struct Equivalence {
  enum class Status { equivalent, not_equivalent, inconclusive };
  Status status = Status::inconclusive;
  std::optional<Certificate<K>> certificate;
  std::string witness;  // for not_equivalent
};

template <class K>
Equivalence<K> homotopy_equivalent(const Complex<K>& x, const Complex<K>& y, std::uint64_t seed, int trials,
                                   const std::vector<Complex<K>>& probes = {});

template <class K>
struct Minimized {
  Complex<K> complex;
  Certificate<K> certificate;  // original -> complex
};

/// Cancels split pieces of the differentials; best effort.
template <class K>
Minimized<K> minimize(const Complex<K>& x, std::uint64_t seed = 0);

/// Termwise isomorphism replacing projective and injective terms by tagged
/// direct sums of indecomposables.
template <class K>
Minimized<K> retag(const Complex<K>& x);

}  // namespace khom
