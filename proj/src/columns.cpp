#include "khom/columns.hpp"

#include "khom/error.hpp"

namespace khom {

namespace {

template <class K>
struct ColumnData {
  Complex<K> column;
  std::vector<Presentation<K>> levels;  // projective_resolution: presentation of K_{j-1}
  Presentation<K> pres;                 // transpose, serre
  Piece<K> piece;                       // Tr (cokernel) or τ' (kernel)
};

bool contravariant(ColumnKind kind) { return kind == ColumnKind::transpose; }

template <class K>
ModuleMap<K> rewrap(const Module<K>& s, const Module<K>& t, const ModuleMap<K>& f) {
  return ModuleMap<K>::unchecked(s, t, f.components());
}

// t restricted to submodules, given their inclusions.
template <class K>
ModuleMap<K> restrict_to(const ModuleMap<K>& t, const ModuleMap<K>& in_s, const ModuleMap<K>& in_t) {
  std::vector<Mat<K>> comps;
  for (int v = 0; v < t.source().algebra()->num_vertices(); ++v)
    comps.push_back(left_inverse<K>(in_t.at(v)) * (t.at(v) * in_s.at(v)));
  return ModuleMap<K>::unchecked(in_s.source(), in_t.source(), std::move(comps));
}

// t induced on quotients, given the projections.
template <class K>
ModuleMap<K> induce_on(const ModuleMap<K>& t, const ModuleMap<K>& q_s, const ModuleMap<K>& q_t) {
  std::vector<Mat<K>> comps;
  for (int v = 0; v < t.source().algebra()->num_vertices(); ++v) {
    Mat<K> qt = q_s.at(v).transpose();
    Mat<K> sect = left_inverse<K>(qt).transpose();
    comps.push_back(q_t.at(v) * (t.at(v) * sect));
  }
  return ModuleMap<K>::unchecked(q_s.target(), q_t.target(), std::move(comps));
}

template <class K>
ColumnData<K> build_column(const Module<K>& m, ColumnKind kind) {
  ColumnData<K> c;
  switch (kind) {
    case ColumnKind::projective_resolution: {
      Module<K> cur = m;
      while (!cur.is_zero()) {
        if (c.levels.size() > 64) throw MathError("functorial resolution did not terminate");
        c.levels.push_back(functorial_presentation(cur));
        cur = c.levels.back().ker.module;
      }
      const int len = static_cast<int>(c.levels.size());
      std::vector<Module<K>> terms;
      std::vector<ModuleMap<K>> diffs;
      for (int j = len - 1; j >= 0; --j) {
        terms.push_back(c.levels[j].p0.module());
        if (j > 0) {
          auto d = c.levels[j - 1].ker.map * c.levels[j].eps;
          diffs.push_back(rewrap(c.levels[j].p0.module(), c.levels[j - 1].p0.module(), d));
        }
      }
      c.column = len == 0 ? Complex<K>::zero(m.algebra()) : Complex<K>::unchecked(m.algebra(), 1 - len, terms, diffs);
      break;
    }
    case ColumnKind::transpose: {
      c.pres = functorial_presentation(m);
      auto fstar = c.pres.f.dual().to_module();
      c.piece = cokernel(fstar);
      c.column = Complex<K>(m.algebra()->opposite(), 0, {fstar.source(), fstar.target(), c.piece.module},
                            {fstar, c.piece.map});
      break;
    }
    case ColumnKind::serre: {
      c.pres = functorial_presentation(m);
      auto nf = nakayama(c.pres.f);
      c.piece = kernel(nf);
      c.column = Complex<K>(m.algebra(), -2, {c.piece.module, nf.source(), nf.target()}, {c.piece.map, nf});
      break;
    }
  }
  return c;
}

// Column map for t: M -> N; reversed for the contravariant kind.
template <class K>
ChainMap<K> lift_column(const ColumnData<K>& a, const ColumnData<K>& b, const ModuleMap<K>& t, ColumnKind kind) {
  const auto& sc = contravariant(kind) ? b.column : a.column;
  const auto& tc = contravariant(kind) ? a.column : b.column;
  std::vector<ModuleMap<K>> comps;
  auto put = [&](int n, const ModuleMap<K>& f) {
    if (sc.is_zero() || n < sc.lo() || n > sc.hi()) return;
    comps[static_cast<std::size_t>(n - sc.lo())] = rewrap(sc.term(n), tc.term(n), f);
  };
  if (!sc.is_zero())
    for (int n = sc.lo(); n <= sc.hi(); ++n) comps.push_back(ModuleMap<K>::zero(sc.term(n), tc.term(n)));
  switch (kind) {
    case ColumnKind::projective_resolution: {
      ModuleMap<K> prev = t;
      const std::size_t common = std::min(a.levels.size(), b.levels.size());
      for (std::size_t j = 0; j < common; ++j) {
        auto big = free_lift<K>(a.levels[j].p0, b.levels[j].p0, prev).to_module();
        put(-static_cast<int>(j), big);
        prev = restrict_to(big, a.levels[j].ker.map, b.levels[j].ker.map);
      }
      break;
    }
    case ColumnKind::transpose: {
      auto l = lift(a.pres, b.pres, t);
      auto t1 = l.t1.dual().to_module();
      put(0, l.t0.dual().to_module());
      put(1, t1);
      put(2, induce_on(t1, b.piece.map, a.piece.map));
      break;
    }
    case ColumnKind::serre: {
      auto l = lift(a.pres, b.pres, t);
      auto n1 = nakayama(l.t1);
      put(-2, restrict_to(n1, a.piece.map, b.piece.map));
      put(-1, n1);
      put(0, nakayama(l.t0));
      break;
    }
  }
  return ChainMap<K>(sc, tc, 0, std::move(comps));
}

template <class K>
struct Bicomplex {
  AlgPtr<K> alg;
  int plo = 0;
  std::vector<Complex<K>> cols;
  std::vector<ChainMap<K>> horiz;  // cols[k] -> cols[k+1]

  int phi() const { return plo + static_cast<int>(cols.size()) - 1; }
};

template <class K>
struct Total {
  Complex<K> complex;
  int plo = 0, nlo = 0, nhi = -1;
  std::vector<DirectSum<K>> sums;  // degrees nlo..nhi

  const DirectSum<K>& at(int n) const { return sums[static_cast<std::size_t>(n - nlo)]; }
};

template <class K>
Total<K> total(const Bicomplex<K>& b) {
  Total<K> out;
  out.plo = b.plo;
  bool any = false;
  for (std::size_t k = 0; k < b.cols.size(); ++k) {
    const auto& c = b.cols[k];
    if (c.is_zero()) continue;
    const int p = b.plo + static_cast<int>(k);
    out.nlo = any ? std::min(out.nlo, p + c.lo()) : p + c.lo();
    out.nhi = any ? std::max(out.nhi, p + c.hi()) : p + c.hi();
    any = true;
  }
  if (!any) {
    out.complex = Complex<K>::zero(b.alg);
    return out;
  }
  for (int n = out.nlo; n <= out.nhi; ++n) {
    std::vector<Module<K>> parts;
    for (std::size_t k = 0; k < b.cols.size(); ++k) parts.push_back(b.cols[k].term(n - b.plo - static_cast<int>(k)));
    out.sums.push_back(direct_sum<K>(b.alg, parts));
  }
  std::vector<Module<K>> terms;
  std::vector<ModuleMap<K>> diffs;
  const std::size_t np = b.cols.size();
  for (int n = out.nlo; n <= out.nhi; ++n) {
    terms.push_back(out.at(n).module);
    if (n == out.nhi) break;
    std::vector<std::vector<std::optional<ModuleMap<K>>>> blocks(np, std::vector<std::optional<ModuleMap<K>>>(np));
    for (std::size_t k = 0; k < np; ++k) {
      const int p = b.plo + static_cast<int>(k);
      const int q = n - p;
      const auto& c = b.cols[k];
      if (c.term(q).is_zero()) continue;
      const K sign = (p % 2 == 0) ? K(1) : K(-1);
      if (!c.term(q + 1).is_zero()) blocks[k][k] = c.d(q).scaled(sign);
      if (k + 1 < np && !b.cols[k + 1].term(q).is_zero()) blocks[k + 1][k] = b.horiz[k].at(q);
    }
    diffs.push_back(block_map<K>(out.at(n), out.at(n + 1), blocks));
  }
  // The checked constructor verifies d∘d = 0, which is what strict functoriality buys.
  out.complex = Complex<K>(b.alg, out.nlo, std::move(terms), std::move(diffs));
  return out;
}

template <class K>
ChainMap<K> total_map(const Total<K>& s, const Total<K>& t, const std::vector<int>& ps,
                      const std::vector<ChainMap<K>>& maps) {
  const auto& x = s.complex;
  const auto& y = t.complex;
  std::vector<ModuleMap<K>> comps;
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi(); ++n) {
      if (n < t.nlo || n > t.nhi) {
        comps.push_back(ModuleMap<K>::zero(x.term(n), y.term(n)));
        continue;
      }
      const auto& ss = s.at(n);
      const auto& ts = t.at(n);
      std::vector<std::vector<std::optional<ModuleMap<K>>>> blocks(
          ts.parts.size(), std::vector<std::optional<ModuleMap<K>>>(ss.parts.size()));
      for (std::size_t k = 0; k < ps.size(); ++k) {
        const int p = ps[k];
        const int cs = p - s.plo, ct = p - t.plo;
        if (cs < 0 || cs >= static_cast<int>(ss.parts.size()) || ct < 0 || ct >= static_cast<int>(ts.parts.size()))
          continue;
        if (ss.parts[cs].is_zero() || ts.parts[ct].is_zero()) continue;
        blocks[ct][cs] = maps[k].at(n - p);
      }
      comps.push_back(rewrap(x.term(n), y.term(n), block_map<K>(ss, ts, blocks)));
    }
  return ChainMap<K>(x, y, 0, std::move(comps));
}

template <class K>
struct Columned {
  Bicomplex<K> bi;
  std::vector<ColumnData<K>> data;  // per column
};

template <class K>
Columned<K> columned(const Complex<K>& x, ColumnKind kind) {
  Columned<K> out;
  const bool contra = contravariant(kind);
  out.bi.alg = contra ? x.algebra()->opposite() : x.algebra();
  if (x.is_zero()) return out;
  out.bi.plo = contra ? -x.hi() : x.lo();
  const int count = x.hi() - x.lo() + 1;
  for (int k = 0; k < count; ++k) {
    const int n = contra ? x.hi() - k : x.lo() + k;
    out.data.push_back(build_column(x.term(n), kind));
    out.bi.cols.push_back(out.data.back().column);
  }
  for (int k = 0; k + 1 < count; ++k) {
    if (contra) {
      // column k holds X^{hi-k}; d^{hi-k-1}: X^{hi-k-1} -> X^{hi-k} reverses to column k -> k+1
      const int n = x.hi() - k - 1;
      out.bi.horiz.push_back(lift_column(out.data[k + 1], out.data[k], x.d(n), kind));
    } else {
      const int n = x.lo() + k;
      out.bi.horiz.push_back(lift_column(out.data[k], out.data[k + 1], x.d(n), kind));
    }
  }
  return out;
}

}  // namespace

template <class K>
Complex<K> column(const Module<K>& m, ColumnKind kind) {
  return build_column(m, kind).column;
}

template <class K>
Complex<K> totalize(const Complex<K>& x, ColumnKind kind) {
  return total(columned(x, kind).bi).complex;
}

template <class K>
ChainMap<K> totalize(const ChainMap<K>& f, ColumnKind kind) {
  if (f.degree() != 0) throw PreconditionError("totalize expects a chain map");
  const bool contra = contravariant(kind);
  auto cs = columned(f.source(), kind);
  auto ct = columned(f.target(), kind);
  auto ts = total(cs.bi);
  auto tt = total(ct.bi);
  const auto& x = f.source();
  const auto& y = f.target();
  // columns present in both
  std::vector<int> ps;
  std::vector<ChainMap<K>> maps;
  if (!x.is_zero() && !y.is_zero())
    for (int n = std::max(x.lo(), y.lo()); n <= std::min(x.hi(), y.hi()); ++n) {
      const int p = contra ? -n : n;
      const auto& dx = cs.data[static_cast<std::size_t>(p - cs.bi.plo)];
      const auto& dy = ct.data[static_cast<std::size_t>(p - ct.bi.plo)];
      ps.push_back(p);
      maps.push_back(lift_column(dx, dy, f.at(n), kind));
    }
  return contra ? total_map(tt, ts, ps, maps) : total_map(ts, tt, ps, maps);
}

template <class K>
Resolution<K> proj_resolve_complex(const Complex<K>& x) {
  bool all = true;
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi() && all; ++n) all = is_projective(x.term(n));
  if (all) return {x, ChainMap<K>::identity(x)};
  auto c = columned(x, ColumnKind::projective_resolution);
  auto t = total(c.bi);
  const auto& p = t.complex;
  std::vector<ModuleMap<K>> comps;
  if (!p.is_zero())
    for (int n = p.lo(); n <= p.hi(); ++n) {
      if (n < x.lo() || n > x.hi() || x.term(n).is_zero()) {
        comps.push_back(ModuleMap<K>::zero(p.term(n), x.term(n)));
        continue;
      }
      const std::size_t k = static_cast<std::size_t>(n - x.lo());
      auto pr = projection<K>(t.at(n), k);
      const auto& eps = c.data[k].levels.at(0).eps;
      auto m = rewrap(pr.target(), eps.source(), pr);
      comps.push_back(rewrap(p.term(n), x.term(n), eps * m));
    }
  return {p, ChainMap<K>(p, x, 0, std::move(comps))};
}

template <class K>
Resolution<K> inj_resolve_complex(const Complex<K>& x) {
  bool all = true;
  if (!x.is_zero())
    for (int n = x.lo(); n <= x.hi() && all; ++n) all = is_injective(x.term(n));
  if (all) return {x, ChainMap<K>::identity(x)};
  auto r = proj_resolve_complex(dual_D(x));
  auto i = dual_D(r.complex);
  auto dmap = dual_D(r.map);
  std::vector<ModuleMap<K>> comps;
  for (int n = x.lo(); n <= x.hi(); ++n) comps.push_back(rewrap(x.term(n), i.term(n), dmap.at(n)));
  return {i, ChainMap<K>(x, i, 0, std::move(comps))};
}

template <class K>
Complex<K> transpose_column(const Module<K>& m) {
  return column(m, ColumnKind::transpose);
}

template <class K>
Complex<K> phi(const Complex<K>& x) {
  return totalize(x, ColumnKind::transpose);
}

template <class K>
ChainMap<K> phi(const ChainMap<K>& f) {
  return totalize(f, ColumnKind::transpose);
}

template <class K>
Complex<K> serre_U(const Complex<K>& x) {
  return totalize(x, ColumnKind::serre);
}

template <class K>
ChainMap<K> serre_U(const ChainMap<K>& f) {
  return totalize(f, ColumnKind::serre);
}

template <class K>
Module<K> nakayama(const Module<K>& p) {
  if (p.is_zero()) return p;
  if (!is_projective(p)) throw PreconditionError("nakayama: module is not projective");
  return nakayama(projective_cover(p).free);
}

#define KHOM_INSTANTIATE_COLUMNS(K)                                       \
  template Complex<K> column<K>(const Module<K>&, ColumnKind);            \
  template Complex<K> totalize<K>(const Complex<K>&, ColumnKind);         \
  template ChainMap<K> totalize<K>(const ChainMap<K>&, ColumnKind);       \
  template Resolution<K> proj_resolve_complex<K>(const Complex<K>&);      \
  template Resolution<K> inj_resolve_complex<K>(const Complex<K>&);       \
  template Complex<K> transpose_column<K>(const Module<K>&);              \
  template Complex<K> phi<K>(const Complex<K>&);                          \
  template ChainMap<K> phi<K>(const ChainMap<K>&);                        \
  template Complex<K> serre_U<K>(const Complex<K>&);                      \
  template ChainMap<K> serre_U<K>(const ChainMap<K>&);                    \
  template Module<K> nakayama<K>(const Module<K>&);

KHOM_INSTANTIATE_COLUMNS(Rational)
KHOM_INSTANTIATE_COLUMNS(ModP)

}  // namespace khom
