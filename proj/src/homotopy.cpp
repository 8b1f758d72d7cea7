#include "khom/homotopy.hpp"

#include <algorithm>

#include "khom/error.hpp"

namespace khom {

namespace {

template <class K>
bool tagged(const Module<K>& m) {
  if (m.projective_vertex() >= 0 || m.injective_vertex() >= 0) return true;
  if (m.summands().empty()) return m.is_zero();
  return std::all_of(m.summands().begin(), m.summands().end(),
                     [](const Module<K>& s) { return s.projective_vertex() >= 0 || s.injective_vertex() >= 0; });
}

template <class K>
bool same_shape(const Module<K>& a, const Module<K>& b) {
  return a.dims() == b.dims();
}

}  // namespace

template <class K>
Complex<K>::Complex(AlgPtr<K> alg, int lo, std::vector<Module<K>> terms, std::vector<ModuleMap<K>> diffs)
    : alg_(std::move(alg)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  zero_ = Module<K>::zero(alg_);
  const std::size_t expect = terms_.empty() ? 0 : terms_.size() - 1;
  if (diffs_.size() != expect) throw StructureError("complex needs one differential between consecutive terms");
  for (const auto& t : terms_)
    if (!same_algebra<K>(t.algebra(), alg_)) throw PreconditionError("complex term over a different algebra");
  for (std::size_t k = 0; k < diffs_.size(); ++k) {
    const int n = lo_ + static_cast<int>(k);
    const auto& d = diffs_[k];
    if (!same_shape(d.source(), terms_[k]) || !same_shape(d.target(), terms_[k + 1]))
      throw StructureError("differential at degree " + std::to_string(n) + " has the wrong shape");
    for (int v = 0; v < alg_->num_vertices(); ++v)
      if (d.at(v).rows() != terms_[k + 1].dim(v) || d.at(v).cols() != terms_[k].dim(v))
        throw StructureError("differential at degree " + std::to_string(n) + " has the wrong shape");
    if (!d.commutes()) throw StructureError("differential at degree " + std::to_string(n) + " is not Λ-linear");
    if (k > 0 && !(d * diffs_[k - 1]).is_zero())
      throw StructureError("d∘d is not zero at degree " + std::to_string(n - 1));
  }
  trim();
}

template <class K>
Complex<K> Complex<K>::unchecked(AlgPtr<K> alg, int lo, std::vector<Module<K>> terms,
                                 std::vector<ModuleMap<K>> diffs) {
  Complex x;
  x.alg_ = std::move(alg);
  x.zero_ = Module<K>::zero(x.alg_);
  x.lo_ = lo;
  x.terms_ = std::move(terms);
  x.diffs_ = std::move(diffs);
  x.trim();
  return x;
}

template <class K>
void Complex<K>::trim() {
  while (!terms_.empty() && terms_.front().is_zero()) {
    terms_.erase(terms_.begin());
    if (!diffs_.empty()) diffs_.erase(diffs_.begin());
    ++lo_;
  }
  while (!terms_.empty() && terms_.back().is_zero()) {
    terms_.pop_back();
    if (!diffs_.empty()) diffs_.pop_back();
  }
  if (terms_.empty()) lo_ = 0;
}

template <class K>
Complex<K> Complex<K>::zero(AlgPtr<K> alg) {
  return unchecked(std::move(alg), 0, {}, {});
}

template <class K>
Complex<K> Complex<K>::stalk(const Module<K>& m, int degree) {
  return unchecked(m.algebra(), degree, {m}, {});
}

template <class K>
Index Complex<K>::total_dim() const {
  Index n = 0;
  for (const auto& t : terms_) n += t.total_dim();
  return n;
}

template <class K>
const Module<K>& Complex<K>::term(int n) const {
  if (n < lo_ || n > hi()) return zero_;
  return terms_[static_cast<std::size_t>(n - lo_)];
}

template <class K>
ModuleMap<K> Complex<K>::d(int n) const {
  if (n >= lo_ && n < hi()) return diffs_[static_cast<std::size_t>(n - lo_)];
  return ModuleMap<K>::zero(term(n), term(n + 1));
}

template <class K>
bool Complex<K>::operator==(const Complex& o) const {
  if (lo_ != o.lo_ || terms_.size() != o.terms_.size()) return false;
  for (std::size_t k = 0; k < terms_.size(); ++k)
    if (!(terms_[k] == o.terms_[k])) return false;
  for (std::size_t k = 0; k < diffs_.size(); ++k)
    if (!(diffs_[k] == o.diffs_[k])) return false;
  return true;
}

template <class K>
GradedMap<K>::GradedMap(Complex<K> source, Complex<K> target, int degree, std::vector<ModuleMap<K>> comps)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), comps_(std::move(comps)) {
  const std::size_t expect = source_.is_zero() ? 0 : static_cast<std::size_t>(source_.hi() - source_.lo() + 1);
  if (comps_.size() != expect) throw StructureError("graded map has the wrong number of components");
  for (std::size_t k = 0; k < comps_.size(); ++k) {
    const int n = source_.lo() + static_cast<int>(k);
    const auto& c = comps_[k];
    for (int v = 0; v < source_.algebra()->num_vertices(); ++v)
      if (c.at(v).cols() != source_.term(n).dim(v) || c.at(v).rows() != target_.term(n + degree_).dim(v))
        throw StructureError("graded map component at degree " + std::to_string(n) + " has the wrong shape");
  }
}

template <class K>
GradedMap<K> GradedMap<K>::zero(const Complex<K>& source, const Complex<K>& target, int degree) {
  std::vector<ModuleMap<K>> comps;
  if (!source.is_zero())
    for (int n = source.lo(); n <= source.hi(); ++n)
      comps.push_back(ModuleMap<K>::zero(source.term(n), target.term(n + degree)));
  GradedMap g;
  g.source_ = source;
  g.target_ = target;
  g.degree_ = degree;
  g.comps_ = std::move(comps);
  return g;
}

template <class K>
GradedMap<K> GradedMap<K>::identity(const Complex<K>& x) {
  std::vector<ModuleMap<K>> comps;
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back(ModuleMap<K>::identity(x.term(n)));
  GradedMap g;
  g.source_ = x;
  g.target_ = x;
  g.comps_ = std::move(comps);
  return g;
}

template <class K>
ModuleMap<K> GradedMap<K>::at(int n) const {
  if (!source_.is_zero() && n >= source_.lo() && n <= source_.hi())
    return comps_[static_cast<std::size_t>(n - source_.lo())];
  return ModuleMap<K>::zero(source_.term(n), target_.term(n + degree_));
}

template <class K>
bool GradedMap<K>::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const ModuleMap<K>& c) { return c.is_zero(); });
}

template <class K>
bool GradedMap<K>::is_chain_map() const {
  if (degree_ != 0) return false;
  if (source_.is_zero()) return true;
  for (int n = source_.lo() - 1; n <= source_.hi(); ++n) {
    auto lhs = target_.d(n) * at(n);
    auto rhs = at(n + 1) * source_.d(n);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

template <class K>
GradedMap<K> GradedMap<K>::operator+(const GradedMap& o) const {
  GradedMap g = *this;
  for (std::size_t k = 0; k < comps_.size(); ++k) g.comps_[k] = comps_[k] + o.comps_[k];
  return g;
}

template <class K>
GradedMap<K> GradedMap<K>::operator-(const GradedMap& o) const {
  GradedMap g = *this;
  for (std::size_t k = 0; k < comps_.size(); ++k) g.comps_[k] = comps_[k] - o.comps_[k];
  return g;
}

template <class K>
GradedMap<K> GradedMap<K>::operator-() const {
  GradedMap g = *this;
  for (auto& c : g.comps_) c = -c;
  return g;
}

template <class K>
GradedMap<K> GradedMap<K>::scaled(const K& s) const {
  GradedMap g = *this;
  for (auto& c : g.comps_) c = c.scaled(s);
  return g;
}

template <class K>
GradedMap<K> GradedMap<K>::operator*(const GradedMap& rhs) const {
  GradedMap g;
  g.source_ = rhs.source_;
  g.target_ = target_;
  g.degree_ = degree_ + rhs.degree_;
  if (!rhs.source_.is_zero())
    for (int n = rhs.source_.lo(); n <= rhs.source_.hi(); ++n) g.comps_.push_back(at(n + rhs.degree_) * rhs.at(n));
  return g;
}

template <class K>
bool GradedMap<K>::operator==(const GradedMap& o) const {
  if (degree_ != o.degree_) return false;
  const int lo = std::min(source_.is_zero() ? 0 : source_.lo(), o.source_.is_zero() ? 0 : o.source_.lo());
  const int hi = std::max(source_.is_zero() ? 0 : source_.hi(), o.source_.is_zero() ? 0 : o.source_.hi());
  for (int n = lo; n <= hi; ++n) {
    auto a = at(n), b = o.at(n);
    for (int v = 0; v < source_.algebra()->num_vertices(); ++v) {
      if (a.at(v).rows() != b.at(v).rows() || a.at(v).cols() != b.at(v).cols()) return false;
      if (a.at(v) != b.at(v)) return false;
    }
  }
  return true;
}

template <class K>
ChainMap<K> boundary_of(const GradedMap<K>& h) {
  if (h.degree() != -1) throw PreconditionError("boundary_of expects a map of degree -1");
  const auto& x = h.source();
  const auto& y = h.target();
  std::vector<ModuleMap<K>> comps;
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back(y.d(n - 1) * h.at(n) + h.at(n + 1) * x.d(n));
  return ChainMap<K>(x, y, 0, std::move(comps));
}

template <class K>
Complex<K> shift(const Complex<K>& x, int n) {
  if (x.is_zero()) return x;
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  const K sign = (n % 2 == 0) ? K(1) : K(-1);
  for (int m = x.lo(); m <= x.hi(); ++m) {
    terms.push_back(x.term(m));
    if (m < x.hi()) diffs.push_back(x.d(m).scaled(sign));
  }
  return Complex<K>::unchecked(x.algebra(), x.lo() - n, std::move(terms), std::move(diffs));
}

template <class K>
ChainMap<K> shift(const ChainMap<K>& f, int n) {
  auto xs = shift(f.source(), n);
  auto ys = shift(f.target(), n);
  std::vector<ModuleMap<K>> comps;
  if (!xs.is_zero())
    for (int m = xs.lo(); m <= xs.hi(); ++m) comps.push_back(f.at(m + n));
  return GradedMap<K>(xs, ys, f.degree(), std::move(comps));
}

namespace {

template <class K>
struct ConeData {
  Complex<K> cone;
  int lo = 0;
  std::vector<DirectSum<K>> sums;  // per degree from lo
};

template <class K>
ConeData<K> build_cone(const ChainMap<K>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& alg = x.algebra();
  ConeData<K> out;
  if (x.is_zero() && y.is_zero()) {
    out.cone = Complex<K>::zero(alg);
    return out;
  }
  int lo = 0, hi = 0;
  if (x.is_zero()) {
    lo = y.lo();
    hi = y.hi();
  } else if (y.is_zero()) {
    lo = x.lo() - 1;
    hi = x.hi() - 1;
  } else {
    lo = std::min(x.lo() - 1, y.lo());
    hi = std::max(x.hi() - 1, y.hi());
  }
  out.lo = lo;
  for (int n = lo; n <= hi + 1; ++n) out.sums.push_back(direct_sum<K>(alg, {x.term(n + 1), y.term(n)}));
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  for (int n = lo; n <= hi; ++n) {
    const auto& s = out.sums[static_cast<std::size_t>(n - lo)];
    terms.push_back(s.module);
    if (n == hi) break;
    const auto& t = out.sums[static_cast<std::size_t>(n + 1 - lo)];
    std::vector<std::vector<std::optional<ModuleMap<K>>>> blocks(2, std::vector<std::optional<ModuleMap<K>>>(2));
    blocks[0][0] = -x.d(n + 1);
    blocks[1][0] = f.at(n + 1);
    blocks[1][1] = y.d(n);
    diffs.push_back(block_map<K>(s, t, blocks));
  }
  // Keep the degree bookkeeping aligned with the untrimmed window.
  out.cone = Complex<K>::unchecked(alg, lo, std::move(terms), std::move(diffs));
  return out;
}

template <class K>
int sum_index(const ConeData<K>& c, int n) {
  return n - c.lo;
}

}  // namespace

template <class K>
Complex<K> cone(const ChainMap<K>& f) {
  if (f.degree() != 0) throw PreconditionError("cone of a map that is not of degree 0");
  return build_cone(f).cone;
}

template <class K>
Triangle<K> canonical_triangle(const ChainMap<K>& f) {
  auto data = build_cone(f);
  Triangle<K> t;
  t.x = f.source();
  t.y = f.target();
  t.z = data.cone;
  t.u = f;
  auto x1 = shift(t.x, 1);
  std::vector<ModuleMap<K>> v, w;
  if (!t.y.is_zero())
    for (int n = t.y.lo(); n <= t.y.hi(); ++n) {
      const int k = sum_index(data, n);
      if (k < 0 || k >= static_cast<int>(data.sums.size())) {
        v.push_back(ModuleMap<K>::zero(t.y.term(n), t.z.term(n)));
        continue;
      }
      auto inj = injection<K>(data.sums[static_cast<std::size_t>(k)], 1);
      v.push_back(ModuleMap<K>::unchecked(t.y.term(n), t.z.term(n), inj.components()));
    }
  if (!t.z.is_zero())
    for (int n = t.z.lo(); n <= t.z.hi(); ++n) {
      auto pr = projection<K>(data.sums[static_cast<std::size_t>(sum_index(data, n))], 0);
      w.push_back(ModuleMap<K>::unchecked(t.z.term(n), x1.term(n), pr.components()));
    }
  t.v = ChainMap<K>(t.y, t.z, 0, std::move(v));
  t.w = ChainMap<K>(t.z, x1, 0, std::move(w));
  return t;
}

namespace {

template <class K>
std::pair<int, int> union_window(const std::vector<Complex<K>>& parts) {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& p : parts) {
    if (p.is_zero()) continue;
    lo = any ? std::min(lo, p.lo()) : p.lo();
    hi = any ? std::max(hi, p.hi()) : p.hi();
    any = true;
  }
  return {lo, hi};
}

template <class K>
std::vector<DirectSum<K>> termwise_sums(const std::vector<Complex<K>>& parts, const AlgPtr<K>& alg, int lo, int hi) {
  std::vector<DirectSum<K>> sums;
  for (int n = lo; n <= hi + 1; ++n) {
    std::vector<Module<K>> ts;
    for (const auto& p : parts) ts.push_back(p.term(n));
    sums.push_back(direct_sum<K>(alg, ts));
  }
  return sums;
}

}  // namespace

template <class K>
Complex<K> direct_sum(const std::vector<Complex<K>>& parts) {
  if (parts.empty()) throw PreconditionError("direct sum of no complexes");
  const auto& alg = parts.front().algebra();
  auto [lo, hi] = union_window(parts);
  if (hi < lo) return Complex<K>::zero(alg);
  auto sums = termwise_sums(parts, alg, lo, hi);
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  for (int n = lo; n <= hi; ++n) {
    const auto& s = sums[static_cast<std::size_t>(n - lo)];
    terms.push_back(s.module);
    if (n == hi) break;
    std::vector<ModuleMap<K>> ds;
    for (const auto& p : parts) ds.push_back(p.d(n));
    diffs.push_back(diagonal_map<K>(s, sums[static_cast<std::size_t>(n + 1 - lo)], ds));
  }
  return Complex<K>::unchecked(alg, lo, std::move(terms), std::move(diffs));
}

template <class K>
ChainMap<K> complex_injection(const std::vector<Complex<K>>& parts, const Complex<K>& sum, std::size_t k) {
  const auto& alg = sum.algebra();
  auto [lo, hi] = union_window(parts);
  auto sums = termwise_sums(parts, alg, lo, hi);
  const auto& part = parts[k];
  std::vector<ModuleMap<K>> comps;
  if (!part.is_zero())
    for (int n = part.lo(); n <= part.hi(); ++n)
      comps.push_back(ModuleMap<K>::unchecked(part.term(n), sum.term(n),
                                              injection<K>(sums[static_cast<std::size_t>(n - lo)], k).components()));
  return ChainMap<K>(part, sum, 0, std::move(comps));
}

template <class K>
ChainMap<K> complex_projection(const std::vector<Complex<K>>& parts, const Complex<K>& sum, std::size_t k) {
  const auto& alg = sum.algebra();
  auto [lo, hi] = union_window(parts);
  auto sums = termwise_sums(parts, alg, lo, hi);
  const auto& part = parts[k];
  std::vector<ModuleMap<K>> comps;
  if (!sum.is_zero())
    for (int n = sum.lo(); n <= sum.hi(); ++n)
      comps.push_back(ModuleMap<K>::unchecked(sum.term(n), part.term(n),
                                              projection<K>(sums[static_cast<std::size_t>(n - lo)], k).components()));
  return ChainMap<K>(sum, part, 0, std::move(comps));
}

template <class K>
Complex<K> dual_D(const Complex<K>& x) {
  auto op = x.algebra()->opposite();
  if (x.is_zero()) return Complex<K>::zero(op);
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  for (int n = -x.hi(); n <= -x.lo(); ++n) {
    terms.push_back(dual_D(x.term(-n)));
    if (n < -x.lo()) diffs.push_back(dual_D(x.d(-n - 1)));
  }
  // Rebuild the maps on the dual terms so sources and targets match exactly.
  for (std::size_t k = 0; k < diffs.size(); ++k)
    diffs[k] = ModuleMap<K>::unchecked(terms[k], terms[k + 1], diffs[k].components());
  return Complex<K>::unchecked(op, -x.hi(), std::move(terms), std::move(diffs));
}

template <class K>
ChainMap<K> dual_D(const ChainMap<K>& f) {
  auto dx = dual_D(f.source());
  auto dy = dual_D(f.target());
  std::vector<ModuleMap<K>> comps;
  if (!dy.is_zero())
    for (int n = dy.lo(); n <= dy.hi(); ++n)
      comps.push_back(ModuleMap<K>::unchecked(dy.term(n), dx.term(n - f.degree()), dual_D(f.at(-n - f.degree())).components()));
  return GradedMap<K>(dy, dx, f.degree(), std::move(comps));
}

template <class K>
std::vector<std::vector<Index>> cohomology_dims(const Complex<K>& x) {
  std::vector<std::vector<Index>> out;
  if (x.is_zero()) return out;
  const int nv = x.algebra()->num_vertices();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    std::vector<Index> h(nv);
    auto din = x.d(n - 1), dout = x.d(n);
    for (int v = 0; v < nv; ++v) h[v] = x.term(n).dim(v) - rank<K>(dout.at(v)) - rank<K>(din.at(v));
    out.push_back(std::move(h));
  }
  return out;
}

template <class K>
bool is_acyclic(const Complex<K>& x) {
  for (const auto& h : cohomology_dims(x))
    for (Index d : h)
      if (d != 0) return false;
  return true;
}

template <class K>
std::optional<GradedMap<K>> null_homotopy(const ChainMap<K>& f) {
  const auto& x = f.source();
  const auto& y = f.target();
  if (x.is_zero() || y.is_zero()) return GradedMap<K>::zero(x, y, -1);
  const int lo = x.lo(), hi = x.hi();
  // Row blocks: flattened Hom(X^n, Y^n) for n in [lo, hi].
  std::vector<Index> row_off(static_cast<std::size_t>(hi - lo + 2), 0);
  for (int n = lo; n <= hi; ++n)
    row_off[static_cast<std::size_t>(n - lo + 1)] =
        row_off[static_cast<std::size_t>(n - lo)] + flat_size(x.term(n), y.term(n));
  const Index rows = row_off.back();
  Vec<K> rhs(rows);
  for (int n = lo; n <= hi; ++n)
    if (flat_size(x.term(n), y.term(n)) > 0) rhs.segment(row_off[n - lo], flat_size(x.term(n), y.term(n))) = flatten(f.at(n));
  std::vector<std::pair<int, ModuleMap<K>>> unknowns;
  for (int n = lo; n <= hi; ++n)
    for (auto& h : hom_basis(x.term(n), y.term(n - 1))) unknowns.emplace_back(n, std::move(h));
  if (khom::is_zero<K>(Mat<K>(rhs))) return GradedMap<K>::zero(x, y, -1);
  Mat<K> sys = zeros<K>(rows, static_cast<Index>(unknowns.size()));
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    const auto& [n, h] = unknowns[k];
    // h: X^n -> Y^{n-1} enters d_Y^{n-1} h at degree n and h d_X^{n-1} at degree n - 1.
    if (flat_size(x.term(n), y.term(n)) > 0)
      sys.block(row_off[n - lo], static_cast<Index>(k), flat_size(x.term(n), y.term(n)), 1) = flatten(y.d(n - 1) * h);
    if (n - 1 >= lo && flat_size(x.term(n - 1), y.term(n - 1)) > 0)
      sys.block(row_off[n - 1 - lo], static_cast<Index>(k), flat_size(x.term(n - 1), y.term(n - 1)), 1) =
          flatten(h * x.d(n - 1));
  }
  auto sol = solve<K>(sys, rhs);
  if (!sol) return std::nullopt;
  auto out = GradedMap<K>::zero(x, y, -1);
  std::vector<ModuleMap<K>> comps;
  for (int n = lo; n <= hi; ++n) comps.push_back(ModuleMap<K>::zero(x.term(n), y.term(n - 1)));
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    const auto& [n, h] = unknowns[k];
    const K& c = (*sol)(static_cast<Index>(k));
    if (!c.is_zero()) comps[static_cast<std::size_t>(n - lo)] = comps[static_cast<std::size_t>(n - lo)] + h.scaled(c);
  }
  return GradedMap<K>(x, y, -1, std::move(comps));
}

template <class K>
std::optional<GradedMap<K>> is_contractible(const Complex<K>& x) {
  return null_homotopy(ChainMap<K>::identity(x));
}

template <class K>
HomSpace<K>::HomSpace(const Complex<K>& x, const Complex<K>& y) : x_(x), y_(y) {
  if (!same_algebra<K>(x.algebra(), y.algebra())) throw PreconditionError("hom_K between different algebras");
  if (x.is_zero() || y.is_zero() || std::max(x.lo(), y.lo()) > std::min(x.hi(), y.hi())) {
    lo_ = 0;
    offsets_ = {0};
    z_ = Mat<K>(0, 0);
    null_ = Mat<K>(0, 0);
    reps_ = Mat<K>(0, 0);
    return;
  }
  lo_ = std::max(x.lo(), y.lo());
  const int hi = std::min(x.hi(), y.hi());
  offsets_.push_back(0);
  for (int n = lo_; n <= hi; ++n) {
    bases_.push_back(hom_basis(x.term(n), y.term(n)));
    const auto& b = bases_.back();
    Mat<K> flat(flat_size(x.term(n), y.term(n)), static_cast<Index>(b.size()));
    for (std::size_t k = 0; k < b.size(); ++k) flat.col(static_cast<Index>(k)) = flatten(b[k]);
    left_inv_.push_back(left_inverse<K>(flat));
    offsets_.push_back(offsets_.back() + static_cast<Index>(b.size()));
  }
  const Index total = offsets_.back();
  // Chain condition d_Y c_n - c_{n+1} d_X = 0 in Hom(X^n, Y^{n+1}).
  std::vector<Index> row_off{0};
  for (int n = lo_ - 1; n <= hi; ++n) row_off.push_back(row_off.back() + flat_size(x.term(n), y.term(n + 1)));
  Mat<K> sys = zeros<K>(row_off.back(), total);
  for (int n = lo_; n <= hi; ++n) {
    const auto& b = bases_[static_cast<std::size_t>(n - lo_)];
    for (std::size_t k = 0; k < b.size(); ++k) {
      const Index col = offsets_[n - lo_] + static_cast<Index>(k);
      const Index r1 = row_off[n - lo_ + 1], s1 = flat_size(x.term(n), y.term(n + 1));
      if (s1 > 0) sys.block(r1, col, s1, 1) += flatten(y.d(n) * b[k]);
      const Index r0 = row_off[n - lo_], s0 = flat_size(x.term(n - 1), y.term(n));
      if (s0 > 0) sys.block(r0, col, s0, 1) -= flatten(b[k] * x.d(n - 1));
    }
  }
  z_ = sys.rows() == 0 ? identity<K>(total) : kernel_basis<K>(sys);
  // Null-homotopic maps d_Y h + h d_X, h: X^m -> Y^{m-1}.
  std::vector<Vec<K>> cols;
  for (int m = std::max(x.lo(), y.lo() + 1); m <= std::min(x.hi(), y.hi() + 1); ++m) {
    for (const auto& h : hom_basis(x.term(m), y.term(m - 1))) {
      Vec<K> c = Vec<K>::Constant(total, K(0));
      if (m >= lo_ && m <= hi && offsets_[m - lo_ + 1] > offsets_[m - lo_])
        c.segment(offsets_[m - lo_], offsets_[m - lo_ + 1] - offsets_[m - lo_]) =
            left_inv_[static_cast<std::size_t>(m - lo_)] * flatten(y.d(m - 1) * h);
      const int p = m - 1;
      if (p >= lo_ && p <= hi && offsets_[p - lo_ + 1] > offsets_[p - lo_])
        c.segment(offsets_[p - lo_], offsets_[p - lo_ + 1] - offsets_[p - lo_]) +=
            left_inv_[static_cast<std::size_t>(p - lo_)] * flatten(h * x.d(p));
      cols.push_back(std::move(c));
    }
  }
  null_ = Mat<K>(total, static_cast<Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) null_.col(static_cast<Index>(k)) = cols[k];
  null_ = column_basis<K>(null_);
  null_rank_ = null_.cols();
  Mat<K> both(total, null_.cols() + z_.cols());
  both << null_, z_;
  std::vector<Index> chosen;
  for (Index c : independent_columns<K>(both))
    if (c >= null_.cols()) chosen.push_back(c - null_.cols());
  reps_ = Mat<K>(total, static_cast<Index>(chosen.size()));
  for (std::size_t k = 0; k < chosen.size(); ++k) reps_.col(static_cast<Index>(k)) = z_.col(chosen[k]);
}

template <class K>
std::vector<ChainMap<K>> HomSpace<K>::reps() const {
  std::vector<ChainMap<K>> out;
  for (Index k = 0; k < dim(); ++k) out.push_back(rep(k));
  return out;
}

template <class K>
Vec<K> HomSpace<K>::coords(const ChainMap<K>& f) const {
  Vec<K> c = Vec<K>::Constant(offsets_.back(), K(0));
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    const int n = lo_ + static_cast<int>(k);
    if (offsets_[k + 1] > offsets_[k]) c.segment(offsets_[k], offsets_[k + 1] - offsets_[k]) = left_inv_[k] * flatten(f.at(n));
  }
  return c;
}

template <class K>
ChainMap<K> HomSpace<K>::from_coords(const Vec<K>& c) const {
  auto f = ChainMap<K>::zero(x_, y_);
  if (x_.is_zero()) return f;
  std::vector<ModuleMap<K>> comps;
  for (int n = x_.lo(); n <= x_.hi(); ++n) {
    auto m = ModuleMap<K>::zero(x_.term(n), y_.term(n));
    const int k = n - lo_;
    if (k >= 0 && k < static_cast<int>(bases_.size()))
      for (std::size_t j = 0; j < bases_[k].size(); ++j) {
        const K& a = c(offsets_[k] + static_cast<Index>(j));
        if (!a.is_zero()) m = m + bases_[k][j].scaled(a);
      }
    comps.push_back(std::move(m));
  }
  return ChainMap<K>(x_, y_, 0, std::move(comps));
}

template <class K>
Vec<K> HomSpace<K>::class_of(const ChainMap<K>& f) const {
  Mat<K> both(reps_.rows(), reps_.cols() + null_.cols());
  both << reps_, null_;
  auto sol = solve<K>(both, coords(f));
  if (!sol) throw MathError("class_of: not a chain map");
  return sol->head(reps_.cols());
}

template <class K>
Index hom_K_dim(const Complex<K>& x, const Complex<K>& y) {
  return HomSpace<K>(x, y).dim();
}

template <class K>
bool Certificate<K>::verify() const {
  if (!f.is_chain_map() || !g.is_chain_map()) return false;
  if (hx.degree() != -1 || hy.degree() != -1) return false;
  auto lhs_x = g * f - ChainMap<K>::identity(f.source());
  auto lhs_y = f * g - ChainMap<K>::identity(f.target());
  return lhs_x == boundary_of(hx) && lhs_y == boundary_of(hy);
}

template <class K>
Certificate<K> Certificate<K>::then(const Certificate& o) const {
  Certificate c;
  c.f = o.f * f;
  c.g = g * o.g;
  c.hx = g * o.hx * f + hx;
  c.hy = o.f * hy * o.g + o.hy;
  return c;
}

template <class K>
Certificate<K> Certificate<K>::identity(const Complex<K>& x) {
  return {ChainMap<K>::identity(x), ChainMap<K>::identity(x), GradedMap<K>::zero(x, x, -1),
          GradedMap<K>::zero(x, x, -1)};
}

template <class K>
Certificate<K> certificate_from_cone(const ChainMap<K>& f, const GradedMap<K>& s) {
  const auto& x = f.source();
  const auto& y = f.target();
  const auto& c = s.source();
  const int nv = x.algebra()->num_vertices();
  // s^m: X^{m+1} ⊕ Y^m -> X^m ⊕ Y^{m-1}, X-parts first.
  auto block = [&](int m, bool row_x, bool col_x) {
    auto sm = s.at(m);
    const auto& rx = x.term(m);
    const auto& ry = y.term(m - 1);
    const auto& cx = x.term(m + 1);
    const auto& cy = y.term(m);
    std::vector<Mat<K>> comps;
    for (int v = 0; v < nv; ++v) {
      const Index r0 = row_x ? 0 : rx.dim(v), rn = row_x ? rx.dim(v) : ry.dim(v);
      const Index c0 = col_x ? 0 : cx.dim(v), cn = col_x ? cx.dim(v) : cy.dim(v);
      if (sm.at(v).rows() == 0 || sm.at(v).cols() == 0)
        comps.push_back(zeros<K>(rn, cn));
      else
        comps.push_back(sm.at(v).block(r0, c0, rn, cn));
    }
    return ModuleMap<K>::unchecked(col_x ? cx : cy, row_x ? rx : ry, std::move(comps));
  };
  (void)c;
  Certificate<K> cert;
  cert.f = f;
  std::vector<ModuleMap<K>> g, hx, hy;
  if (!y.is_zero())
    for (int m = y.lo(); m <= y.hi(); ++m) {
      g.push_back(block(m, true, false));
      hy.push_back(-block(m, false, false));
    }
  if (!x.is_zero())
    for (int m = x.lo(); m <= x.hi(); ++m) hx.push_back(block(m - 1, true, true));
  cert.g = ChainMap<K>(y, x, 0, std::move(g));
  cert.hx = GradedMap<K>(x, x, -1, std::move(hx));
  cert.hy = GradedMap<K>(y, y, -1, std::move(hy));
  return cert;
}

template <class K>
Equivalence<K> homotopy_equivalent(const Complex<K>& x, const Complex<K>& y, std::uint64_t seed, int trials,
                                   const std::vector<Complex<K>>& probes) {
  Equivalence<K> out;
  auto hx = cohomology_dims(x), hy = cohomology_dims(y);
  auto total = [](const Complex<K>& c, const std::vector<std::vector<Index>>& h, int n) {
    if (c.is_zero() || n < c.lo() || n > c.hi()) return std::vector<Index>(c.algebra()->num_vertices(), 0);
    return h[static_cast<std::size_t>(n - c.lo())];
  };
  const int lo = std::min(x.is_zero() ? 0 : x.lo(), y.is_zero() ? 0 : y.lo());
  const int hi = std::max(x.is_zero() ? 0 : x.hi(), y.is_zero() ? 0 : y.hi());
  for (int n = lo; n <= hi; ++n)
    if (total(x, hx, n) != total(y, hy, n)) {
      out.status = Equivalence<K>::Status::not_equivalent;
      out.witness = "cohomology dimensions differ in degree " + std::to_string(n);
      return out;
    }
  HomSpace<K> space(x, y);
  std::mt19937_64 rng(seed);
  for (int t = 0; t < std::max(trials, 1); ++t) {
    ChainMap<K> f = ChainMap<K>::zero(x, y);
    for (Index k = 0; k < space.dim(); ++k) f = f + space.rep(k).scaled(K::random(rng, 6));
    auto s = is_contractible(cone(f));
    if (s) {
      auto data = certificate_from_cone(f, *s);
      if (data.verify()) {
        out.status = Equivalence<K>::Status::equivalent;
        out.certificate = std::move(data);
        return out;
      }
    }
    if (space.dim() == 0) break;
  }
  std::vector<Complex<K>> battery = probes;
  if (battery.empty()) battery = {x, y};
  for (std::size_t k = 0; k < battery.size(); ++k) {
    const auto& p = battery[k];
    Index a = hom_K_dim(p, x), b = hom_K_dim(p, y);
    if (a != b) {
      out.status = Equivalence<K>::Status::not_equivalent;
      out.witness = "hom_K(probe " + std::to_string(k) + ", -) has dimension " + std::to_string(a) + " vs " +
                    std::to_string(b);
      return out;
    }
    a = hom_K_dim(x, p);
    b = hom_K_dim(y, p);
    if (a != b) {
      out.status = Equivalence<K>::Status::not_equivalent;
      out.witness = "hom_K(-, probe " + std::to_string(k) + ") has dimension " + std::to_string(a) + " vs " +
                    std::to_string(b);
      return out;
    }
  }
  return out;
}

namespace {

template <class K>
Mat<K> power(const Mat<K>& m, Index e) {
  Mat<K> r = identity<K>(m.rows()), b = m;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

template <class K>
Mat<K> hcat(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> m(a.rows(), a.cols() + b.cols());
  m << a, b;
  return m;
}

// One cancellation in d^n using a random u: X^{n+1} -> X^n.
template <class K>
std::optional<Minimized<K>> cancel_step(const Complex<K>& x, int n, std::mt19937_64& rng) {
  const auto d = x.d(n);
  if (d.is_zero()) return std::nullopt;
  const auto& xn = x.term(n);
  const auto& xn1 = x.term(n + 1);
  auto us = hom_basis(xn1, xn);
  if (us.empty()) return std::nullopt;
  auto u = ModuleMap<K>::zero(xn1, xn);
  for (const auto& b : us) u = u + b.scaled(K::random(rng, 6));
  auto e = u * d;
  const int nv = x.algebra()->num_vertices();
  Index big = 1;
  for (int v = 0; v < nv; ++v) big = std::max(big, xn.dim(v));
  std::vector<Mat<K>> a(nv), b(nv), c(nv), dd(nv), s0inv(nv), s1inv(nv);
  bool any = false;
  for (int v = 0; v < nv; ++v) {
    Mat<K> p = power<K>(e.at(v), big);
    a[v] = column_basis<K>(p);
    b[v] = kernel_basis<K>(p);
    if (a[v].cols() > 0) any = true;
  }
  if (!any) return std::nullopt;
  for (int v = 0; v < nv; ++v) {
    c[v] = d.at(v) * a[v];
    s0inv[v] = *inverse<K>(hcat<K>(a[v], b[v]));
    const Index ka = a[v].cols();
    Mat<K> pa = s0inv[v].topRows(ka);
    Mat<K> t = pa * e.at(v) * a[v];
    Mat<K> eps = c[v] * (*inverse<K>(t)) * pa * u.at(v);
    dd[v] = kernel_basis<K>(eps);
    auto inv1 = inverse<K>(hcat<K>(c[v], dd[v]));
    if (!inv1) throw MathError("minimize: splitting of the differential failed");
    s1inv[v] = *inv1;
  }
  auto bmod = submodule<K>(xn, b);
  auto dmod = submodule<K>(xn1, dd);
  std::vector<Mat<K>> pb(nv), pc(nv), pd(nv), beta(nv), delta(nv), gn(nv), prev(nv), next(nv), hmat(nv);
  auto dprev = x.d(n - 1);
  auto dnext = x.d(n + 1);
  for (int v = 0; v < nv; ++v) {
    const Index ka = a[v].cols(), kb = b[v].cols(), kc = c[v].cols(), kd = dd[v].cols();
    pb[v] = s0inv[v].bottomRows(kb);
    pc[v] = s1inv[v].topRows(kc);
    pd[v] = s1inv[v].bottomRows(kd);
    beta[v] = pc[v] * d.at(v) * b[v];
    delta[v] = pd[v] * d.at(v) * b[v];
    gn[v] = b[v] - a[v] * beta[v];
    prev[v] = pb[v] * dprev.at(v);
    next[v] = dnext.at(v) * dd[v];
    hmat[v] = -(a[v] * pc[v]);
    (void)ka;
  }
  const auto& bm = bmod.module;
  const auto& dm = dmod.module;
  // Assemble X' with X'^n = B and X'^{n+1} = D.
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  const int lo = std::min(x.lo(), n), hi = std::max(x.hi(), n + 1);
  auto term_at = [&](int m) -> const Module<K>& { return m == n ? bm : (m == n + 1 ? dm : x.term(m)); };
  for (int m = lo; m <= hi; ++m) {
    terms.push_back(term_at(m));
    if (m == hi) break;
    if (m == n - 1)
      diffs.push_back(ModuleMap<K>::unchecked(x.term(m), bm, prev));
    else if (m == n)
      diffs.push_back(ModuleMap<K>::unchecked(bm, dm, delta));
    else if (m == n + 1)
      diffs.push_back(ModuleMap<K>::unchecked(dm, x.term(m + 1), next));
    else
      diffs.push_back(x.d(m));
  }
  auto y = Complex<K>::unchecked(x.algebra(), lo, std::move(terms), std::move(diffs));
  std::vector<ModuleMap<K>> f, g, hx;
  for (int m = x.lo(); m <= x.hi(); ++m) {
    if (m == n)
      f.push_back(ModuleMap<K>::unchecked(x.term(m), y.term(m), pb));
    else if (m == n + 1)
      f.push_back(ModuleMap<K>::unchecked(x.term(m), y.term(m), pd));
    else
      f.push_back(ModuleMap<K>::unchecked(x.term(m), y.term(m), ModuleMap<K>::identity(x.term(m)).components()));
    if (m == n + 1)
      hx.push_back(ModuleMap<K>::unchecked(x.term(m), x.term(m - 1), hmat));
    else
      hx.push_back(ModuleMap<K>::zero(x.term(m), x.term(m - 1)));
  }
  if (!y.is_zero())
    for (int m = y.lo(); m <= y.hi(); ++m) {
      if (m == n)
        g.push_back(ModuleMap<K>::unchecked(y.term(m), x.term(m), gn));
      else if (m == n + 1)
        g.push_back(ModuleMap<K>::unchecked(y.term(m), x.term(m), dd));
      else
        g.push_back(ModuleMap<K>::unchecked(y.term(m), x.term(m), ModuleMap<K>::identity(x.term(m)).components()));
    }
  Certificate<K> cert;
  cert.f = ChainMap<K>(x, y, 0, std::move(f));
  cert.g = ChainMap<K>(y, x, 0, std::move(g));
  cert.hx = GradedMap<K>(x, x, -1, std::move(hx));
  cert.hy = GradedMap<K>::zero(y, y, -1);
  return Minimized<K>{y, std::move(cert)};
}

}  // namespace

template <class K>
Minimized<K> minimize(const Complex<K>& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Minimized<K> cur{x, Certificate<K>::identity(x)};
  bool progress = true;
  while (progress && !cur.complex.is_zero()) {
    progress = false;
    for (int n = cur.complex.lo(); n < cur.complex.hi(); ++n) {
      for (int attempt = 0; attempt < 2; ++attempt) {
        auto step = cancel_step(cur.complex, n, rng);
        if (!step) continue;
        cur.certificate = cur.certificate.then(step->certificate);
        cur.complex = step->complex;
        progress = true;
        break;
      }
      if (progress) break;
    }
  }
  auto tagged_form = retag(cur.complex);
  cur.certificate = cur.certificate.then(tagged_form.certificate);
  cur.complex = tagged_form.complex;
  return cur;
}

template <class K>
Minimized<K> retag(const Complex<K>& x) {
  if (x.is_zero()) return {x, Certificate<K>::identity(x)};
  const int nv = x.algebra()->num_vertices();
  std::vector<Module<K>> terms;
  std::vector<std::vector<Mat<K>>> to_new, to_old;
  bool changed = false;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const auto& m = x.term(n);
    std::optional<std::pair<Module<K>, ModuleMap<K>>> iso;  // new -> old
    if (!tagged(m)) {
      if (is_projective(m)) {
        auto c = projective_cover(m);
        iso.emplace(c.free.module(), c.map);
      } else if (is_injective(m)) {
        auto c = projective_cover(dual_D(m));
        auto back = dual_D(c.map);  // D D M -> D P
        // D D M has the same matrices as M, so the inverse direction is D P -> M.
        std::vector<Mat<K>> comps;
        for (int v = 0; v < nv; ++v) comps.push_back(*inverse<K>(back.at(v)));
        iso.emplace(back.target(), ModuleMap<K>::unchecked(back.target(), m, std::move(comps)));
      }
    }
    if (iso) {
      changed = true;
      std::vector<Mat<K>> fwd, bwd;
      for (int v = 0; v < nv; ++v) {
        bwd.push_back(iso->second.at(v));
        fwd.push_back(*inverse<K>(iso->second.at(v)));
      }
      terms.push_back(iso->first);
      to_new.push_back(std::move(fwd));
      to_old.push_back(std::move(bwd));
    } else {
      terms.push_back(m);
      to_new.push_back(ModuleMap<K>::identity(m).components());
      to_old.push_back(ModuleMap<K>::identity(m).components());
    }
  }
  if (!changed) return {x, Certificate<K>::identity(x)};
  std::vector<ModuleMap<K>> diffs;
  for (int n = x.lo(); n < x.hi(); ++n) {
    const std::size_t k = static_cast<std::size_t>(n - x.lo());
    std::vector<Mat<K>> comps;
    for (int v = 0; v < nv; ++v) comps.push_back(to_new[k + 1][v] * x.d(n).at(v) * to_old[k][v]);
    diffs.push_back(ModuleMap<K>::unchecked(terms[k], terms[k + 1], std::move(comps)));
  }
  auto y = Complex<K>::unchecked(x.algebra(), x.lo(), terms, std::move(diffs));
  std::vector<ModuleMap<K>> f, g;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    const std::size_t k = static_cast<std::size_t>(n - x.lo());
    f.push_back(ModuleMap<K>::unchecked(x.term(n), terms[k], to_new[k]));
    g.push_back(ModuleMap<K>::unchecked(terms[k], x.term(n), to_old[k]));
  }
  Certificate<K> cert;
  cert.f = ChainMap<K>(x, y, 0, std::move(f));
  cert.g = ChainMap<K>(y, x, 0, std::move(g));
  cert.hx = GradedMap<K>::zero(x, x, -1);
  cert.hy = GradedMap<K>::zero(y, y, -1);
  return {y, std::move(cert)};
}

#define KHOM_INSTANTIATE_HOMOTOPY(K)                                                                        \
  template class Complex<K>;                                                                                \
  template class GradedMap<K>;                                                                              \
  template class HomSpace<K>;                                                                               \
  template struct Certificate<K>;                                                                           \
  template ChainMap<K> boundary_of<K>(const GradedMap<K>&);                                                 \
  template Complex<K> shift<K>(const Complex<K>&, int);                                                     \
  template ChainMap<K> shift<K>(const ChainMap<K>&, int);                                                   \
  template Complex<K> cone<K>(const ChainMap<K>&);                                                          \
  template Triangle<K> canonical_triangle<K>(const ChainMap<K>&);                                           \
  template Complex<K> direct_sum<K>(const std::vector<Complex<K>>&);                                        \
  template ChainMap<K> complex_injection<K>(const std::vector<Complex<K>>&, const Complex<K>&, std::size_t); \
  template ChainMap<K> complex_projection<K>(const std::vector<Complex<K>>&, const Complex<K>&, std::size_t); \
  template Complex<K> dual_D<K>(const Complex<K>&);                                                         \
  template ChainMap<K> dual_D<K>(const ChainMap<K>&);                                                       \
  template bool is_acyclic<K>(const Complex<K>&);                                                           \
  template std::vector<std::vector<Index>> cohomology_dims<K>(const Complex<K>&);                           \
  template std::optional<GradedMap<K>> null_homotopy<K>(const ChainMap<K>&);                                \
  template std::optional<GradedMap<K>> is_contractible<K>(const Complex<K>&);                               \
  template Index hom_K_dim<K>(const Complex<K>&, const Complex<K>&);                                        \
  template Certificate<K> certificate_from_cone<K>(const ChainMap<K>&, const GradedMap<K>&);                \
  template Equivalence<K> homotopy_equivalent<K>(const Complex<K>&, const Complex<K>&, std::uint64_t, int,  \
                                                 const std::vector<Complex<K>>&);                           \
  template Minimized<K> minimize<K>(const Complex<K>&, std::uint64_t);                                      \
  template Minimized<K> retag<K>(const Complex<K>&);

KHOM_INSTANTIATE_HOMOTOPY(Rational)
KHOM_INSTANTIATE_HOMOTOPY(ModP)

}  // namespace khom
