#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "khom/scalar.hpp"

namespace khom {

using Index = Eigen::Index;

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

/// Reduced row echelon form together with its pivot columns.
template <class K>
struct Echelon {
  Mat<K> reduced;
  std::vector<Index> pivots;
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

template <class K>
Echelon<K> rref(const Mat<K>& a);

template <class K>
Index rank(const Mat<K>& a);

/// Basis of the right null space, one vector per column.
template <class K>
Mat<K> kernel_basis(const Mat<K>& a);

/// Some x with a*x = b, or nullopt when b is not in the column space.
template <class K>
std::optional<Vec<K>> solve(const Mat<K>& a, const Vec<K>& b);

/// Column-by-column solve of a*X = B.
template <class K>
std::optional<Mat<K>> solve(const Mat<K>& a, const Mat<K>& b);

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& a);

/// Indices of a maximal set of linearly independent columns, greedy from the left.
template <class K>
std::vector<Index> independent_columns(const Mat<K>& a);

/// Columns of `a` selected by `independent_columns`.
template <class K>
Mat<K> column_basis(const Mat<K>& a);

/// L with L*a = identity; `a` must have full column rank.
template <class K>
Mat<K> left_inverse(const Mat<K>& a);

/// Q of full row rank with Q*a = 0 and rows(Q) = rows(a) - rank(a).
template <class K>
Mat<K> cokernel_projection(const Mat<K>& a);

/// Unit vectors completing the independent columns of `sub` to a basis of K^n.
template <class K>
Mat<K> complement_basis(const Mat<K>& sub, Index n);

template <class K>
bool is_zero(const Mat<K>& a);

template <class K>
Mat<K> zeros(Index rows, Index cols) {
  return Mat<K>::Constant(rows, cols, K(0));
}

template <class K>
Mat<K> identity(Index n) {
  Mat<K> m = zeros<K>(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = K(1);
  return m;
}

/// Reusable factorization of a fixed matrix for repeated solves.
template <class K>
class Solver {
 public:
  explicit Solver(const Mat<K>& a);

  Index rank() const { return static_cast<Index>(pivots_.size()); }
  Index cols() const { return cols_; }
  std::optional<Vec<K>> solve(const Vec<K>& b) const;
  bool in_span(const Vec<K>& b) const;

 private:
  Index cols_;
  Mat<K> transform_;  // transform_ * a = rref(a)
  std::vector<Index> pivots_;
};

}  // namespace khom
