#include "khom/serrear.hpp"

#include <type_traits>

#include "khom/error.hpp"

namespace khom {

namespace {

template <class K>
ModuleMap<K> rewrap(const Module<K>& s, const Module<K>& t, const ModuleMap<K>& f) {
  return ModuleMap<K>::unchecked(s, t, f.components());
}

template <class K>
ChainMap<K> rewrap(const Complex<K>& s, const Complex<K>& t, const ChainMap<K>& f) {
  std::vector<ModuleMap<K>> comps;
  if (!s.is_zero())
    for (int n = s.lo(); n <= s.hi(); ++n) comps.push_back(rewrap(s.term(n), t.term(n + f.degree()), f.at(n)));
  return ChainMap<K>(s, t, f.degree(), std::move(comps));
}

}  // namespace

template <class K>
Resolution<K> min_proj_resolution_complex(const Module<K>& m) {
  auto stalk = Complex<K>::stalk(m, 0);
  if (m.is_zero()) return {stalk, ChainMap<K>::zero(stalk, stalk)};
  auto r = minimal_proj_resolution(m);
  const int len = r.length();
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  for (int j = len; j >= 0; --j) {
    terms.push_back(r.terms[j].module());
    if (j > 0) diffs.push_back(rewrap(r.terms[j].module(), r.terms[j - 1].module(), r.maps[j - 1].to_module()));
  }
  auto p = Complex<K>(m.algebra(), -len, std::move(terms), std::move(diffs));
  std::vector<ModuleMap<K>> comps;
  for (int n = p.lo(); n <= p.hi(); ++n)
    comps.push_back(n == 0 ? rewrap(p.term(0), m, r.augmentation) : ModuleMap<K>::zero(p.term(n), stalk.term(n)));
  return {p, ChainMap<K>(p, stalk, 0, std::move(comps))};
}

template <class K>
Resolution<K> min_inj_resolution_complex(const Module<K>& m) {
  auto stalk = Complex<K>::stalk(m, 0);
  if (m.is_zero()) return {stalk, ChainMap<K>::zero(stalk, stalk)};
  auto r = min_proj_resolution_complex(dual_D(m));
  auto i = dual_D(r.complex);
  return {i, rewrap(stalk, i, dual_D(r.map))};
}

template <class K>
Complex<K> lambda(const Module<K>& m) {
  return cone(min_proj_resolution_complex(m).map);
}

template <class K>
Complex<K> lambda_prime(const Module<K>& m) {
  return shift(cone(min_inj_resolution_complex(m).map), -1);
}

template <class K>
Complex<K> quotient_model(const Complex<K>& x, Side side) {
  if (side == Side::prj) return cone(proj_resolve_complex(x).map);
  return shift(cone(inj_resolve_complex(x).map), -1);
}

template <class K>
Complex<K> i_rho(const Complex<K>& x) {
  return quotient_model(x, Side::inj);
}

template <class K>
Complex<K> serre_S(const Complex<K>& x, std::uint64_t seed) {
  if (!is_acyclic(x)) throw PreconditionError("serre_S: complex is not acyclic");
  auto u = minimize(serre_U(x), seed).complex;
  return minimize(i_rho(u), seed + 1).complex;
}

template <class K>
Vec<K> EndAlgebra<K>::product(const Vec<K>& a, const Vec<K>& b) const {
  Vec<K> out = Vec<K>::Constant(dim, K(0));
  for (Index i = 0; i < dim; ++i)
    if (!a(i).is_zero()) out += (mult[static_cast<std::size_t>(i)] * b) * a(i);
  return out;
}

template <class K>
EndAlgebra<K> end_algebra(const HomSpace<K>& h) {
  EndAlgebra<K> e;
  e.dim = h.dim();
  auto reps = h.reps();
  for (Index i = 0; i < e.dim; ++i) {
    Mat<K> m(e.dim, e.dim);
    for (Index j = 0; j < e.dim; ++j) m.col(j) = h.class_of(reps[i] * reps[j]);
    e.mult.push_back(std::move(m));
  }
  e.unit = e.dim == 0 ? Vec<K>(0) : h.class_of(ChainMap<K>::identity(h.source()));
  if constexpr (std::is_same_v<K, Rational>) {
    // Trace form: rad = {x : tr(L_x L_y) = 0 for all y}, valid in characteristic zero.
    std::vector<K> traces;
    for (const auto& m : e.mult) traces.push_back(m.trace());
    Mat<K> gram = zeros<K>(e.dim, e.dim);
    for (Index i = 0; i < e.dim; ++i)
      for (Index j = 0; j < e.dim; ++j)
        for (Index k = 0; k < e.dim; ++k) gram(i, j) += e.mult[i](k, j) * traces[k];
    e.radical = e.dim == 0 ? Mat<K>(0, 0) : kernel_basis<K>(gram);
    e.has_radical = true;
  } else {
    e.radical = Mat<K>(e.dim, 0);
  }
  return e;
}

template <class K>
EndAlgebra<K> end_algebra(const Complex<K>& x) {
  return end_algebra(HomSpace<K>(x, x));
}

namespace {

template <class K>
Index corner_dim(const EndAlgebra<K>& e, const Vec<K>& idem) {
  Mat<K> span(e.dim, e.dim);
  for (Index k = 0; k < e.dim; ++k) {
    Vec<K> b = Vec<K>::Constant(e.dim, K(0));
    b(k) = K(1);
    span.col(k) = e.product(e.product(idem, b), idem);
  }
  return rank<K>(span);
}

}  // namespace

template <class K>
Indecomposability<K> is_indecomposable(const HomSpace<K>& h, const EndAlgebra<K>& e, std::uint64_t seed) {
  if (h.source().is_zero() || e.dim == 0) throw PreconditionError("is_indecomposable: zero object");
  Indecomposability<K> out;
  if (e.has_radical && e.top_dim() == 1) {
    out.verdict = Indecomposability<K>::Verdict::yes;
    return out;
  }
  std::mt19937_64 rng(seed);
  // basis elements and their unit shifts first, then sparse random elements;
  // dense random elements usually have irreducible minimal polynomials over Q
  const Index tries = 2 * e.dim + 32;
  for (Index trial = 0; trial < tries; ++trial) {
    Vec<K> x = Vec<K>::Constant(e.dim, K(0));
    if (trial < 2 * e.dim) {
      x(trial % e.dim) = K(1);
      if (trial >= e.dim) x -= e.unit;
    } else {
      for (Index k = 0; k < e.dim; ++k) x(k) = K::random(rng, 1);
    }
    Vec<K> y = e.unit;
    for (Index k = 0; k < e.dim; ++k) y = e.product(y, x);
    // powers of y until dependent
    std::vector<Vec<K>> pw{e.unit};
    std::optional<Vec<K>> coeffs;
    while (!coeffs) {
      pw.push_back(e.product(pw.back(), y));
      Mat<K> a(e.dim, static_cast<Index>(pw.size()) - 1);
      for (std::size_t k = 0; k + 1 < pw.size(); ++k) a.col(static_cast<Index>(k)) = pw[k];
      coeffs = solve<K>(a, pw.back());
    }
    // m(t) = t^k - sum c_i t^i
    const Index k = coeffs->size();
    if (!(*coeffs)(0).is_zero()) continue;  // unit
    bool nilpotent = true;
    for (Index i = 0; i < k; ++i) nilpotent = nilpotent && (*coeffs)(i).is_zero();
    if (nilpotent) continue;
    // g(t) = m(t) / t; e = g(y) / g(0)
    std::vector<K> g(static_cast<std::size_t>(k), K(0));
    g[static_cast<std::size_t>(k - 1)] = K(1);
    for (Index i = 1; i < k; ++i) g[static_cast<std::size_t>(i - 1)] -= (*coeffs)(i);
    if (g[0].is_zero()) continue;
    Vec<K> idem = Vec<K>::Constant(e.dim, K(0));
    for (Index i = 0; i < k; ++i) idem += pw[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
    idem *= K(1) / g[0];
    if (e.product(idem, idem) != idem || khom::is_zero<K>(Mat<K>(idem)) || idem == e.unit) continue;
    out.verdict = Indecomposability<K>::Verdict::no;
    out.corner_dims[0] = corner_dim(e, idem);
    out.corner_dims[1] = corner_dim<K>(e, e.unit - idem);
    out.idempotent = std::move(idem);
    return out;
  }
  return out;
}

template <class K>
Indecomposability<K> is_indecomposable(const Complex<K>& x, std::uint64_t seed) {
  if (x.is_zero()) throw PreconditionError("is_indecomposable: zero object");
  HomSpace<K> h(x, x);
  return is_indecomposable(h, end_algebra(h), seed);
}

template <class K>
bool ARTriangle<K>::pass() const {
  if (!w_nonzero || !ends_indecomposable || annihilator_dim == 0) return false;
  for (const auto& p : probes)
    if (!p.pass) return false;
  return true;
}

template <class K>
ARTriangle<K> ar_triangle(const Complex<K>& z, const std::vector<Probe<K>>& probes, std::uint64_t seed) {
  using Verdict = typename Indecomposability<K>::Verdict;
  HomSpace<K> hz(z, z);
  auto end = end_algebra(hz);
  if (!end.has_radical) throw PreconditionError("ar_triangle needs the rationals");
  if (is_indecomposable(hz, end, seed).verdict != Verdict::yes)
    throw PreconditionError("ar_triangle: object is not indecomposable");
  ARTriangle<K> t;
  t.z = z;
  t.sz = serre_S(z, seed);
  HomSpace<K> hs(z, t.sz);
  std::vector<ChainMap<K>> rad;
  for (Index k = 0; k < end.radical.cols(); ++k) {
    auto r = ChainMap<K>::zero(z, z);
    for (Index i = 0; i < end.dim; ++i)
      if (!end.radical(i, k).is_zero()) r = r + hz.rep(i).scaled(end.radical(i, k));
    rad.push_back(std::move(r));
  }
  const Index d = hs.dim();
  Mat<K> cond = zeros<K>(d * static_cast<Index>(rad.size()), d);
  for (std::size_t k = 0; k < rad.size(); ++k)
    for (Index j = 0; j < d; ++j)
      cond.block(static_cast<Index>(k) * d, j, d, 1) = hs.class_of(hs.rep(j) * rad[k]);
  Mat<K> ann = cond.rows() == 0 ? identity<K>(d) : kernel_basis<K>(cond);
  t.annihilator_dim = ann.cols();
  if (ann.cols() == 0) throw MathError("ar_triangle: no map is annihilated by the radical");
  t.w = ChainMap<K>::zero(z, t.sz);
  for (Index j = 0; j < d; ++j)
    if (!ann(j, 0).is_zero()) t.w = t.w + hs.rep(j).scaled(ann(j, 0));
  t.w_nonzero = !null_homotopy(t.w).has_value();
  t.ends_indecomposable = is_indecomposable(t.sz, seed).verdict == Verdict::yes;
  auto tri = canonical_triangle(t.w);
  t.y = shift(tri.z, -1);
  t.g = rewrap(t.y, z, shift(tri.w, -1));

  // Functional on End(Z) that vanishes on the radical and sends 1 to 1.
  Mat<K> basis(end.dim, end.radical.cols() + 1);
  basis << end.radical, end.unit;
  Vec<K> rhs = Vec<K>::Constant(basis.cols(), K(0));
  rhs(rhs.size() - 1) = K(1);
  Mat<K> bt = basis.transpose();
  auto functional = solve<K>(bt, rhs);
  if (!functional) throw MathError("ar_triangle: unit lies in the radical");

  for (const auto& probe : probes) {
    ProbeResult pr;
    pr.name = probe.name;
    HomSpace<K> wz(probe.complex, z);
    pr.hom_dim = wz.dim();
    if (pr.hom_dim == 0) {
      pr.pass = true;
      t.probes.push_back(pr);
      continue;
    }
    HomSpace<K> zw(z, probe.complex);
    auto wreps = wz.reps();
    auto zreps = zw.reps();
    // t is a non-retraction iff t∘s lies in rad End(Z) for every s: Z -> W.
    Mat<K> rows = zeros<K>(static_cast<Index>(zreps.size()), pr.hom_dim);
    for (std::size_t s = 0; s < zreps.size(); ++s)
      for (Index j = 0; j < pr.hom_dim; ++j)
        rows(static_cast<Index>(s), j) = functional->dot(hz.class_of(wreps[j] * zreps[s]));
    Mat<K> nr = rows.rows() == 0 ? identity<K>(pr.hom_dim) : kernel_basis<K>(rows);
    pr.nonretract = nr.cols();
    for (Index c = 0; c < nr.cols(); ++c) {
      auto tm = ChainMap<K>::zero(probe.complex, z);
      for (Index j = 0; j < pr.hom_dim; ++j)
        if (!nr(j, c).is_zero()) tm = tm + wreps[j].scaled(nr(j, c));
      if (null_homotopy(t.w * tm)) ++pr.factoring;
    }
    pr.pass = pr.factoring == pr.nonretract;
    t.probes.push_back(pr);
  }
  return t;
}

#define KHOM_INSTANTIATE_SERREAR(K)                                                                     \
  template Resolution<K> min_proj_resolution_complex<K>(const Module<K>&);                              \
  template Resolution<K> min_inj_resolution_complex<K>(const Module<K>&);                               \
  template Complex<K> lambda<K>(const Module<K>&);                                                      \
  template Complex<K> lambda_prime<K>(const Module<K>&);                                                \
  template Complex<K> quotient_model<K>(const Complex<K>&, Side);                                       \
  template Complex<K> i_rho<K>(const Complex<K>&);                                                      \
  template Complex<K> serre_S<K>(const Complex<K>&, std::uint64_t);                                     \
  template struct EndAlgebra<K>;                                                                        \
  template EndAlgebra<K> end_algebra<K>(const HomSpace<K>&);                                            \
  template EndAlgebra<K> end_algebra<K>(const Complex<K>&);                                             \
  template Indecomposability<K> is_indecomposable<K>(const Complex<K>&, std::uint64_t);                 \
  template Indecomposability<K> is_indecomposable<K>(const HomSpace<K>&, const EndAlgebra<K>&,          \
                                                     std::uint64_t);                                    \
  template struct ARTriangle<K>;                                                                        \
  template ARTriangle<K> ar_triangle<K>(const Complex<K>&, const std::vector<Probe<K>>&, std::uint64_t);

KHOM_INSTANTIATE_SERREAR(Rational)
KHOM_INSTANTIATE_SERREAR(ModP)

}  // namespace khom
