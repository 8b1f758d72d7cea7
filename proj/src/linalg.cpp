#include "khom/linalg.hpp"

#include "khom/error.hpp"

namespace khom {

namespace {

template <class K>
using RowMat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Gauss-Jordan elimination in place. Pivots are searched only among the first
// `pivot_cols` columns; row operations act on the full width.
template <class K>
std::vector<Index> eliminate(RowMat<K>& m, Index pivot_cols) {
  std::vector<Index> pivots;
  const Index rows = m.rows();
  const Index width = m.cols();
  std::vector<Index> support;
  Index r = 0;
  for (Index c = 0; c < pivot_cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i) {
      if (!m(i, c).is_zero()) {
        if (p < 0) p = i;
        if (m(i, c).is_one() || (-m(i, c)).is_one()) {
          p = i;
          break;
        }
      }
    }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const K pivot = m(r, c);
    if (!pivot.is_one()) {
      const K inv = pivot.inverse();
      for (Index j = c; j < width; ++j)
        if (!m(r, j).is_zero()) m(r, j) *= inv;
    }
    support.clear();
    for (Index j = c; j < width; ++j)
      if (!m(r, j).is_zero()) support.push_back(j);
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const K f = m(i, c);
      for (Index j : support) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class K>
RowMat<K> augment(const Mat<K>& a, const Mat<K>& b) {
  RowMat<K> m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

}  // namespace

template <class K>
Echelon<K> rref(const Mat<K>& a) {
  RowMat<K> m = a;
  auto pivots = eliminate<K>(m, m.cols());
  return {Mat<K>(m), std::move(pivots)};
}

template <class K>
Index rank(const Mat<K>& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  // Eliminate along the shorter side.
  if (a.rows() < a.cols()) {
    RowMat<K> m = a.transpose();
    return static_cast<Index>(eliminate<K>(m, m.cols()).size());
  }
  RowMat<K> m = a;
  return static_cast<Index>(eliminate<K>(m, m.cols()).size());
}

template <class K>
Mat<K> kernel_basis(const Mat<K>& a) {
  const Index n = a.cols();
  RowMat<K> m = a;
  auto pivots = eliminate<K>(m, n);
  std::vector<bool> is_pivot(n, false);
  for (Index c : pivots) is_pivot[c] = true;
  Mat<K> out = zeros<K>(n, n - static_cast<Index>(pivots.size()));
  Index k = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    out(f, k) = K(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (!m(static_cast<Index>(i), f).is_zero()) out(pivots[i], k) = -m(static_cast<Index>(i), f);
    ++k;
  }
  return out;
}

template <class K>
std::optional<Mat<K>> solve(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows()) throw MathError("solve: dimension mismatch");
  const Index n = a.cols();
  RowMat<K> m = augment<K>(a, b);
  auto pivots = eliminate<K>(m, n);
  const Index r = static_cast<Index>(pivots.size());
  for (Index i = r; i < m.rows(); ++i)
    for (Index j = n; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return std::nullopt;
  Mat<K> x = zeros<K>(n, b.cols());
  for (Index i = 0; i < r; ++i) x.row(pivots[i]) = m.row(i).tail(b.cols());
  return x;
}

template <class K>
std::optional<Vec<K>> solve(const Mat<K>& a, const Vec<K>& b) {
  Mat<K> bm = b;
  auto x = solve<K>(a, bm);
  if (!x) return std::nullopt;
  return Vec<K>(x->col(0));
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw MathError("inverse of non-square matrix");
  const Index n = a.rows();
  RowMat<K> m = augment<K>(a, identity<K>(n));
  auto pivots = eliminate<K>(m, n);
  if (static_cast<Index>(pivots.size()) != n) return std::nullopt;
  return Mat<K>(m.rightCols(n));
}

template <class K>
std::vector<Index> independent_columns(const Mat<K>& a) {
  RowMat<K> m = a;
  return eliminate<K>(m, m.cols());
}

template <class K>
Mat<K> column_basis(const Mat<K>& a) {
  auto cols = independent_columns<K>(a);
  Mat<K> out(a.rows(), static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = a.col(cols[k]);
  return out;
}

template <class K>
Mat<K> left_inverse(const Mat<K>& a) {
  const Index n = a.cols();
  Mat<K> at = a.transpose();
  auto rows = independent_columns<K>(at);
  if (static_cast<Index>(rows.size()) != n) throw MathError("left_inverse: matrix lacks full column rank");
  Mat<K> sub(n, n);
  for (Index k = 0; k < n; ++k) sub.row(k) = a.row(rows[k]);
  auto inv = inverse<K>(sub);
  Mat<K> out = zeros<K>(n, a.rows());
  for (Index k = 0; k < n; ++k) out.col(rows[k]) = inv->col(k);
  return out;
}

template <class K>
Mat<K> cokernel_projection(const Mat<K>& a) {
  Mat<K> at = a.transpose();
  return kernel_basis<K>(at).transpose();
}

template <class K>
Mat<K> complement_basis(const Mat<K>& sub, Index n) {
  if (sub.rows() != n) throw MathError("complement_basis: dimension mismatch");
  RowMat<K> m = augment<K>(sub, identity<K>(n));
  auto pivots = eliminate<K>(m, m.cols());
  std::vector<Index> units;
  for (Index c : pivots)
    if (c >= sub.cols()) units.push_back(c - sub.cols());
  Mat<K> out = zeros<K>(n, static_cast<Index>(units.size()));
  for (std::size_t k = 0; k < units.size(); ++k) out(units[k], static_cast<Index>(k)) = K(1);
  return out;
}

template <class K>
bool is_zero(const Mat<K>& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!a(i, j).is_zero()) return false;
  return true;
}

template <class K>
Solver<K>::Solver(const Mat<K>& a) : cols_(a.cols()) {
  RowMat<K> m = augment<K>(a, identity<K>(a.rows()));
  pivots_ = eliminate<K>(m, a.cols());
  transform_ = m.rightCols(a.rows());
}

template <class K>
std::optional<Vec<K>> Solver<K>::solve(const Vec<K>& b) const {
  if (b.rows() != transform_.cols()) throw MathError("Solver::solve: dimension mismatch");
  Vec<K> y = Vec<K>::Constant(transform_.rows(), K(0));
  for (Index j = 0; j < b.rows(); ++j) {
    if (b(j).is_zero()) continue;
    for (Index i = 0; i < transform_.rows(); ++i)
      if (!transform_(i, j).is_zero()) y(i) += transform_(i, j) * b(j);
  }
  const Index r = rank();
  for (Index i = r; i < y.rows(); ++i)
    if (!y(i).is_zero()) return std::nullopt;
  Vec<K> x = Vec<K>::Constant(cols_, K(0));
  for (Index i = 0; i < r; ++i) x(pivots_[i]) = y(i);
  return x;
}

template <class K>
bool Solver<K>::in_span(const Vec<K>& b) const {
  return solve(b).has_value();
}

#define KHOM_INSTANTIATE_LINALG(K)                                               \
  template Echelon<K> rref<K>(const Mat<K>&);                                    \
  template Index rank<K>(const Mat<K>&);                                         \
  template Mat<K> kernel_basis<K>(const Mat<K>&);                                \
  template std::optional<Vec<K>> solve<K>(const Mat<K>&, const Vec<K>&);         \
  template std::optional<Mat<K>> solve<K>(const Mat<K>&, const Mat<K>&);         \
  template std::optional<Mat<K>> inverse<K>(const Mat<K>&);                      \
  template std::vector<Index> independent_columns<K>(const Mat<K>&);             \
  template Mat<K> column_basis<K>(const Mat<K>&);                                \
  template Mat<K> left_inverse<K>(const Mat<K>&);                                \
  template Mat<K> cokernel_projection<K>(const Mat<K>&);                         \
  template Mat<K> complement_basis<K>(const Mat<K>&, Index);                     \
  template bool is_zero<K>(const Mat<K>&);                                       \
  template class Solver<K>;

KHOM_INSTANTIATE_LINALG(Rational)
KHOM_INSTANTIATE_LINALG(ModP)

}  // namespace khom
