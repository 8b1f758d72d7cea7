#pragma once

#include "khom/homotopy.hpp"

namespace khom {

/// Which column a module is replaced by before totalizing.
///   projective_resolution  functorial resolution ... -> P0(K0) -> P0(M), degrees <= 0
///   transpose              [P0* -> P1* -> Tr M] in degrees 0..2, contravariant, over the opposite algebra
///   serre                  [τ'M -> νP1 -> νP0] in degrees -2..0
enum class ColumnKind { projective_resolution, transpose, serre };

template <class K>
Complex<K> column(const Module<K>& m, ColumnKind kind);

/// Total complex of the bicomplex whose columns are column(X^p). For the
/// contravariant kind, column(X^{-p}) sits at p.
template <class K>
Complex<K> totalize(const Complex<K>& x, ColumnKind kind);
/// The induced map on totalizations (reversed for the contravariant kind).
template <class K>
ChainMap<K> totalize(const ChainMap<K>& f, ColumnKind kind);

template <class K>
struct Resolution {
  Complex<K> complex;
  ChainMap<K> map;  // P -> X, or X -> I
};

/// Quasi-isomorphism from a bounded complex of projectives.
template <class K>
Resolution<K> proj_resolve_complex(const Complex<K>& x);
/// Quasi-isomorphism into a bounded complex of injectives.
template <class K>
Resolution<K> inj_resolve_complex(const Complex<K>& x);

/// M over the opposite algebra.
template <class K>
Complex<K> transpose_column(const Module<K>& m);

/// X over the opposite algebra; the result lives over its opposite.
template <class K>
Complex<K> phi(const Complex<K>& x);
template <class K>
ChainMap<K> phi(const ChainMap<K>& f);

template <class K>
Complex<K> serre_U(const Complex<K>& x);
template <class K>
ChainMap<K> serre_U(const ChainMap<K>& f);

/// ν(P) for a projective module; PreconditionError otherwise.
template <class K>
Module<K> nakayama(const Module<K>& p);

}  // namespace khom
