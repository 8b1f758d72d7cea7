#pragma once

#include <optional>
#include <string>
#include <vector>

#include "khom/columns.hpp"

namespace khom {

/// Minimal projective resolution as a complex in degrees <= 0, with the map to stalk M.
template <class K>
Resolution<K> min_proj_resolution_complex(const Module<K>& m);
/// Minimal injective resolution in degrees >= 0, with the map from stalk M.
template <class K>
Resolution<K> min_inj_resolution_complex(const Module<K>& m);

/// cone(P_M -> M); M sits in degree 0.
template <class K>
Complex<K> lambda(const Module<K>& m);
/// cone(M -> E_M)[-1]; M sits in degree 0.
template <class K>
Complex<K> lambda_prime(const Module<K>& m);

enum class Side { prj, inj };

template <class K>
Complex<K> quotient_model(const Complex<K>& x, Side side);
/// cone(X -> I_X)[-1].
template <class K>
Complex<K> i_rho(const Complex<K>& x);

/// i_rho(serre_U(X)), minimized. PreconditionError unless X is acyclic.
template <class K>
Complex<K> serre_S(const Complex<K>& x, std::uint64_t seed = 0);

/// End_K(X) in the basis HomSpace(X, X).rep(k).
template <class K>
struct EndAlgebra {
  Index dim = 0;
  std::vector<Mat<K>> mult;  // mult[i](:, j) = coordinates of rep(i) ∘ rep(j)
  Vec<K> unit;
  Mat<K> radical;            // columns span rad End; ℚ only
  bool has_radical = false;

  Vec<K> product(const Vec<K>& a, const Vec<K>& b) const;
  Index top_dim() const { return dim - radical.cols(); }
};

template <class K>
EndAlgebra<K> end_algebra(const HomSpace<K>& h);
template <class K>
EndAlgebra<K> end_algebra(const Complex<K>& x);

template <class K>
struct Indecomposability {
  enum class Verdict { yes, no, inconclusive };
  Verdict verdict = Verdict::inconclusive;
  std::optional<Vec<K>> idempotent;  // for no: coordinates in End_K(X)
  Index corner_dims[2] = {0, 0};     // dim eEe and dim (1-e)E(1-e)
};

template <class K>
Indecomposability<K> is_indecomposable(const Complex<K>& x, std::uint64_t seed = 1);
template <class K>
Indecomposability<K> is_indecomposable(const HomSpace<K>& h, const EndAlgebra<K>& e, std::uint64_t seed = 1);

struct ProbeResult {
  std::string name;
  Index hom_dim = 0;      // hom_K(W, Z)
  Index nonretract = 0;   // dimension of the non-retraction maps
  Index factoring = 0;    // those with w∘t null-homotopic
  bool pass = false;
};

template <class K>
struct ARTriangle {
  Complex<K> z, sz, y;    // y = cone(w)[-1]
  ChainMap<K> w;          // Z -> S Z
  ChainMap<K> g;          // Y -> Z
  Index annihilator_dim = 0;
  bool w_nonzero = false;
  bool ends_indecomposable = false;
  std::vector<ProbeResult> probes;
  bool pass() const;
};

template <class K>
struct Probe {
  std::string name;
  Complex<K> complex;
};

template <class K>
ARTriangle<K> ar_triangle(const Complex<K>& z, const std::vector<Probe<K>>& probes, std::uint64_t seed = 0);

}  // namespace khom
