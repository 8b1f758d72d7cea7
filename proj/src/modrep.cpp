#include "khom/modrep.hpp"

#include "khom/error.hpp"

namespace khom {

namespace {

template <class K>
void require_same(const Module<K>& m, const Module<K>& n) {
  if (!same_algebra<K>(m.algebra(), n.algebra())) throw PreconditionError("modules over different algebras");
}

template <class K>
Vec<K> unit(Index n, Index k) {
  Vec<K> v = Vec<K>::Constant(n, K(0));
  v(k) = K(1);
  return v;
}

// Hom(P(i), N) ≅ N_i: the basis vector b goes to the map p -> N_p b.
template <class K>
std::vector<ModuleMap<K>> hom_from_projective(int i, const Module<K>& m, const Module<K>& n) {
  const auto& alg = *m.algebra();
  std::vector<ModuleMap<K>> out;
  for (Index b = 0; b < n.dim(i); ++b) {
    std::vector<Mat<K>> c;
    for (int j = 0; j < alg.num_vertices(); ++j) {
      const auto& paths = alg.basis(i, j);
      Mat<K> x(n.dim(j), static_cast<Index>(paths.size()));
      for (std::size_t q = 0; q < paths.size(); ++q) x.col(static_cast<Index>(q)) = n.path_action(paths[q]).col(b);
      c.push_back(std::move(x));
    }
    out.push_back(ModuleMap<K>::unchecked(m, n, std::move(c)));
  }
  return out;
}

// Hom(M, I(i)) ≅ D(M_i): the coordinate functional b goes to m -> (p -> (M_p m)_b).
template <class K>
std::vector<ModuleMap<K>> hom_to_injective(int i, const Module<K>& m, const Module<K>& n) {
  const auto& alg = *m.algebra();
  std::vector<ModuleMap<K>> out;
  for (Index b = 0; b < m.dim(i); ++b) {
    std::vector<Mat<K>> c;
    for (int j = 0; j < alg.num_vertices(); ++j) {
      const auto& paths = alg.basis(j, i);
      Mat<K> x(static_cast<Index>(paths.size()), m.dim(j));
      for (std::size_t q = 0; q < paths.size(); ++q) x.row(static_cast<Index>(q)) = m.path_action(paths[q]).row(b);
      c.push_back(std::move(x));
    }
    out.push_back(ModuleMap<K>::unchecked(m, n, std::move(c)));
  }
  return out;
}

template <class K>
std::vector<ModuleMap<K>> hom_general(const Module<K>& m, const Module<K>& n) {
  const auto& q = m.algebra()->quiver();
  const int nv = q.num_vertices();
  std::vector<Index> off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + m.dim(v) * n.dim(v);
  Index rows = 0;
  for (const auto& a : q.arrows) rows += n.dim(a.target) * m.dim(a.source);
  Mat<K> sys = zeros<K>(rows, off[nv]);
  Index row = 0;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const int s = q.arrows[a].source, t = q.arrows[a].target;
    const Mat<K>& na = n.action(a);
    const Mat<K>& ma = m.action(a);
    // (N_a X_s - X_t M_a)(r, c) = 0
    for (Index c = 0; c < m.dim(s); ++c) {
      for (Index r = 0; r < n.dim(t); ++r, ++row) {
        for (Index k = 0; k < n.dim(s); ++k)
          if (!na(r, k).is_zero()) sys(row, off[s] + c * n.dim(s) + k) += na(r, k);
        for (Index k = 0; k < m.dim(t); ++k)
          if (!ma(k, c).is_zero()) sys(row, off[t] + k * n.dim(t) + r) -= ma(k, c);
      }
    }
  }
  Mat<K> ker = kernel_basis<K>(sys);
  std::vector<ModuleMap<K>> out;
  for (Index k = 0; k < ker.cols(); ++k) out.push_back(unflatten<K>(m, n, Vec<K>(ker.col(k))));
  return out;
}

}  // namespace

template <class K>
std::vector<ModuleMap<K>> hom_basis(const Module<K>& m, const Module<K>& n) {
  require_same(m, n);
  if (m.is_zero() || n.is_zero()) return {};
  if (m.projective_vertex() >= 0) return hom_from_projective(m.projective_vertex(), m, n);
  if (n.injective_vertex() >= 0) return hom_to_injective(n.injective_vertex(), m, n);
  const int nv = m.algebra()->num_vertices();
  if (!m.summands().empty()) {
    std::vector<ModuleMap<K>> out;
    for (std::size_t k = 0; k < m.summands().size(); ++k) {
      for (const auto& g : hom_basis(m.summands()[k], n)) {
        std::vector<Mat<K>> c;
        for (int v = 0; v < nv; ++v) {
          Mat<K> x = zeros<K>(n.dim(v), m.dim(v));
          x.middleCols(m.summand_offset(k, v), g.at(v).cols()) = g.at(v);
          c.push_back(std::move(x));
        }
        out.push_back(ModuleMap<K>::unchecked(m, n, std::move(c)));
      }
    }
    return out;
  }
  if (!n.summands().empty()) {
    std::vector<ModuleMap<K>> out;
    for (std::size_t k = 0; k < n.summands().size(); ++k) {
      for (const auto& g : hom_basis(m, n.summands()[k])) {
        std::vector<Mat<K>> c;
        for (int v = 0; v < nv; ++v) {
          Mat<K> x = zeros<K>(n.dim(v), m.dim(v));
          x.middleRows(n.summand_offset(k, v), g.at(v).rows()) = g.at(v);
          c.push_back(std::move(x));
        }
        out.push_back(ModuleMap<K>::unchecked(m, n, std::move(c)));
      }
    }
    return out;
  }
  return hom_general(m, n);
}

template <class K>
Index hom_dim(const Module<K>& m, const Module<K>& n) {
  require_same(m, n);
  if (m.is_zero() || n.is_zero()) return 0;
  if (m.projective_vertex() >= 0) return n.dim(m.projective_vertex());
  if (n.injective_vertex() >= 0) return m.dim(n.injective_vertex());
  Index d = 0;
  if (!m.summands().empty()) {
    for (const auto& s : m.summands()) d += hom_dim(s, n);
    return d;
  }
  if (!n.summands().empty()) {
    for (const auto& s : n.summands()) d += hom_dim(m, s);
    return d;
  }
  return static_cast<Index>(hom_general(m, n).size());
}

template <class K>
Piece<K> submodule(const Module<K>& m, const std::vector<Mat<K>>& spans) {
  const auto& q = m.algebra()->quiver();
  const int nv = q.num_vertices();
  std::vector<Mat<K>> basis(nv), inv(nv);
  std::vector<Index> dims(nv);
  for (int v = 0; v < nv; ++v) {
    basis[v] = column_basis<K>(spans[v]);
    inv[v] = left_inverse<K>(basis[v]);
    dims[v] = basis[v].cols();
  }
  std::vector<Mat<K>> action;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const int s = q.arrows[a].source, t = q.arrows[a].target;
    action.push_back(inv[t] * (m.action(a) * basis[s]));
  }
  typename Module<K>::Data d;
  d.alg = m.algebra();
  d.dims = std::move(dims);
  d.action = std::move(action);
  auto sub = Module<K>::from_data(std::move(d));
  return {sub, ModuleMap<K>::unchecked(sub, m, std::move(basis))};
}

template <class K>
Piece<K> kernel(const ModuleMap<K>& f) {
  std::vector<Mat<K>> spans;
  for (const auto& c : f.components()) spans.push_back(kernel_basis<K>(c));
  return submodule(f.source(), spans);
}

template <class K>
Piece<K> image(const ModuleMap<K>& f) {
  return submodule(f.target(), f.components());
}

template <class K>
Piece<K> cokernel(const ModuleMap<K>& f) {
  const auto& n = f.target();
  const auto& q = n.algebra()->quiver();
  const int nv = q.num_vertices();
  std::vector<Mat<K>> proj(nv), sect(nv);
  std::vector<Index> dims(nv);
  for (int v = 0; v < nv; ++v) {
    proj[v] = cokernel_projection<K>(f.at(v));
    Mat<K> pt = proj[v].transpose();
    sect[v] = left_inverse<K>(pt).transpose();
    dims[v] = proj[v].rows();
  }
  std::vector<Mat<K>> action;
  for (int a = 0; a < q.num_arrows(); ++a) {
    const int s = q.arrows[a].source, t = q.arrows[a].target;
    action.push_back(proj[t] * (n.action(a) * sect[s]));
  }
  typename Module<K>::Data d;
  d.alg = n.algebra();
  d.dims = std::move(dims);
  d.action = std::move(action);
  auto c = Module<K>::from_data(std::move(d));
  return {c, ModuleMap<K>::unchecked(n, c, std::move(proj))};
}

template <class K>
const DirectSum<K>& FreeModule<K>::sum() const {
  if (!cache_) {
    std::vector<Module<K>> parts;
    for (int g : gens) parts.push_back(projective<K>(alg, g));
    cache_ = std::make_shared<const DirectSum<K>>(direct_sum<K>(alg, parts));
  }
  return *cache_;
}

template <class K>
FreeModule<K> free_module(const AlgPtr<K>& alg, std::vector<int> gens) {
  FreeModule<K> p;
  p.alg = alg;
  p.gens = std::move(gens);
  return p;
}

template <class K>
ModuleMap<K> FreeMap<K>::to_module() const {
  const auto& alg = *source.alg;
  const int nv = alg.num_vertices();
  const auto& src = source.sum();
  const auto& tgt = target.sum();
  std::vector<Mat<K>> comps;
  for (int j = 0; j < nv; ++j) {
    Mat<K> x = zeros<K>(tgt.module.dim(j), src.module.dim(j));
    for (std::size_t c = 0; c < source.gens.size(); ++c) {
      const int s = source.gens[c];
      const Index cols = alg.dim(s, j);
      if (cols == 0) continue;
      for (std::size_t r = 0; r < target.gens.size(); ++r) {
        const int t = target.gens[r];
        const Vec<K>& lam = entries[r][c];
        if (khom::is_zero<K>(lam)) continue;
        const Index rows = alg.dim(t, j);
        if (rows == 0) continue;
        for (Index qi = 0; qi < cols; ++qi)
          x.block(tgt.offset(r, j), src.offset(c, j) + qi, rows, 1) = alg.multiply(t, s, j, lam, unit<K>(cols, qi));
      }
    }
    comps.push_back(std::move(x));
  }
  return ModuleMap<K>::unchecked(src.module, tgt.module, std::move(comps));
}

template <class K>
FreeMap<K> FreeMap<K>::dual() const {
  auto op = source.alg->opposite();
  FreeMap d;
  d.source = free_module<K>(op, target.gens);
  d.target = free_module<K>(op, source.gens);
  d.entries.assign(source.gens.size(), std::vector<Vec<K>>(target.gens.size()));
  for (std::size_t r = 0; r < target.gens.size(); ++r)
    for (std::size_t c = 0; c < source.gens.size(); ++c) d.entries[c][r] = entries[r][c];
  return d;
}

template <class K>
FreeMap<K> FreeMap<K>::operator*(const FreeMap& rhs) const {
  const auto& alg = *source.alg;
  FreeMap out = free_map_zero<K>(rhs.source, target);
  for (std::size_t r = 0; r < target.gens.size(); ++r)
    for (std::size_t c = 0; c < rhs.source.gens.size(); ++c)
      for (std::size_t m = 0; m < source.gens.size(); ++m) {
        if (khom::is_zero<K>(entries[r][m]) || khom::is_zero<K>(rhs.entries[m][c])) continue;
        out.entries[r][c] +=
            alg.multiply(target.gens[r], source.gens[m], rhs.source.gens[c], entries[r][m], rhs.entries[m][c]);
      }
  return out;
}

template <class K>
FreeMap<K> free_map_zero(const FreeModule<K>& source, const FreeModule<K>& target) {
  FreeMap<K> f;
  f.source = source;
  f.target = target;
  f.entries.resize(target.gens.size());
  for (std::size_t r = 0; r < target.gens.size(); ++r)
    for (int s : source.gens)
      f.entries[r].push_back(Vec<K>::Constant(source.alg->dim(target.gens[r], s), K(0)));
  return f;
}

template <class K>
FreeMap<K> free_map_from_images(const FreeModule<K>& source, const FreeModule<K>& target,
                                const std::vector<Vec<K>>& images) {
  FreeMap<K> f = free_map_zero<K>(source, target);
  const auto& tgt = target.sum();
  for (std::size_t c = 0; c < source.gens.size(); ++c) {
    const int v = source.gens[c];
    for (std::size_t r = 0; r < target.gens.size(); ++r)
      f.entries[r][c] = images[c].segment(tgt.offset(r, v), source.alg->dim(target.gens[r], v));
  }
  return f;
}

template <class K>
ModuleMap<K> map_from_free(const FreeModule<K>& source, const Module<K>& target, const std::vector<Vec<K>>& images) {
  const auto& alg = *source.alg;
  const auto& src = source.sum();
  std::vector<Mat<K>> comps;
  for (int j = 0; j < alg.num_vertices(); ++j) {
    Mat<K> x = zeros<K>(target.dim(j), src.module.dim(j));
    for (std::size_t c = 0; c < source.gens.size(); ++c) {
      const auto& paths = alg.basis(source.gens[c], j);
      for (std::size_t q = 0; q < paths.size(); ++q)
        x.col(src.offset(c, j) + static_cast<Index>(q)) = target.path_action(paths[q]) * images[c];
    }
    comps.push_back(std::move(x));
  }
  return ModuleMap<K>::unchecked(src.module, target, std::move(comps));
}

namespace {

// Generators of P0(M): one per basis vector of each M_i, vertex-major.
template <class K>
FreeModule<K> p0_of(const Module<K>& m) {
  std::vector<int> gens;
  for (int i = 0; i < m.algebra()->num_vertices(); ++i)
    for (Index b = 0; b < m.dim(i); ++b) gens.push_back(i);
  return free_module<K>(m.algebra(), std::move(gens));
}

template <class K>
std::vector<Vec<K>> units_of(const Module<K>& m) {
  std::vector<Vec<K>> out;
  for (int i = 0; i < m.algebra()->num_vertices(); ++i)
    for (Index b = 0; b < m.dim(i); ++b) out.push_back(unit<K>(m.dim(i), b));
  return out;
}

}  // namespace

template <class K>
Presentation<K> functorial_presentation(const Module<K>& m) {
  Presentation<K> p;
  p.m = m;
  p.p0 = p0_of(m);
  p.eps = map_from_free<K>(p.p0, m, units_of(m));
  p.ker = kernel(p.eps);
  const auto& km = p.ker.module;
  p.p1 = p0_of(km);
  p.eps_k = map_from_free<K>(p.p1, km, units_of(km));
  std::vector<Vec<K>> images;
  for (int i = 0; i < km.algebra()->num_vertices(); ++i)
    for (Index b = 0; b < km.dim(i); ++b) images.push_back(p.ker.map.at(i).col(b));
  p.f = free_map_from_images<K>(p.p1, p.p0, images);
  return p;
}

template <class K>
FreeMap<K> free_lift(const FreeModule<K>& source, const FreeModule<K>& target, const ModuleMap<K>& t) {
  const auto& tgt = target.sum();
  const int nv = source.alg->num_vertices();
  // Generators are vertex-major; first[i] is the first generator at vertex i.
  std::vector<std::size_t> first_s(nv + 1, 0), first_t(nv + 1, 0);
  for (int g : source.gens) ++first_s[g + 1];
  for (int g : target.gens) ++first_t[g + 1];
  for (int i = 0; i < nv; ++i) {
    first_s[i + 1] += first_s[i];
    first_t[i + 1] += first_t[i];
  }
  std::vector<Vec<K>> images;
  for (std::size_t c = 0; c < source.gens.size(); ++c) {
    const int i = source.gens[c];
    const Index b = static_cast<Index>(c - first_s[i]);
    Vec<K> img = Vec<K>::Constant(tgt.module.dim(i), K(0));
    for (Index b2 = 0; b2 < t.at(i).rows(); ++b2)
      img(tgt.offset(first_t[i] + static_cast<std::size_t>(b2), i)) = t.at(i)(b2, b);
    images.push_back(std::move(img));
  }
  return free_map_from_images<K>(source, target, images);
}

template <class K>
PresentationLift<K> lift(const Presentation<K>& pm, const Presentation<K>& pn, const ModuleMap<K>& t) {
  PresentationLift<K> l;
  l.t0 = free_lift<K>(pm.p0, pn.p0, t);
  auto t0m = l.t0.to_module();
  std::vector<Mat<K>> comps;
  for (int v = 0; v < pm.m.algebra()->num_vertices(); ++v)
    comps.push_back(left_inverse<K>(pn.ker.map.at(v)) * (t0m.at(v) * pm.ker.map.at(v)));
  l.tk = ModuleMap<K>::unchecked(pm.ker.module, pn.ker.module, std::move(comps));
  l.t1 = free_lift<K>(pm.p1, pn.p1, l.tk);
  return l;
}

template <class K>
Piece<K> transpose_piece(const Presentation<K>& pres) {
  return cokernel(pres.f.dual().to_module());
}

template <class K>
Module<K> transpose(const Module<K>& m) {
  return transpose_piece(functorial_presentation(m)).module;
}

template <class K>
Module<K> strip_projective(const Module<K>& m) {
  const auto& alg = m.algebra();
  Module<K> cur = m;
  for (int i = 0; i < alg->num_vertices(); ++i) {
    if (cur.dim(i) == 0) continue;
    auto p = projective<K>(alg, i);
    auto vs = hom_basis(cur, p);
    if (vs.empty()) continue;
    // Pairing with Hom(P(i), T) ≅ T_i through e_iΛe_i = k.
    Mat<K> pairing(static_cast<Index>(vs.size()), cur.dim(i));
    for (std::size_t k = 0; k < vs.size(); ++k) pairing.row(static_cast<Index>(k)) = vs[k].at(i).row(0);
    Mat<K> pt = pairing.transpose();
    auto rows = independent_columns<K>(pt);
    if (rows.empty()) continue;
    std::vector<Module<K>> copies(rows.size(), p);
    auto target = direct_sum<K>(alg, copies);
    std::vector<Mat<K>> comps;
    for (int v = 0; v < alg->num_vertices(); ++v) {
      Mat<K> x(target.module.dim(v), cur.dim(v));
      for (std::size_t k = 0; k < rows.size(); ++k)
        x.middleRows(target.offset(k, v), p.dim(v)) = vs[static_cast<std::size_t>(rows[k])].at(v);
      comps.push_back(std::move(x));
    }
    cur = kernel(ModuleMap<K>::unchecked(cur, target.module, std::move(comps))).module;
  }
  return cur;
}

template <class K>
Module<K> strip_injective(const Module<K>& m) {
  return dual_D(strip_projective(dual_D(m)));
}

template <class K>
Module<K> tau(const Module<K>& m) {
  return strip_injective(dual_D(transpose(m)));
}

template <class K>
Module<K> tau_minus(const Module<K>& m) {
  return strip_projective(transpose(dual_D(m)));
}

template <class K>
std::vector<Mat<K>> top_generators(const Module<K>& m) {
  const auto& q = m.algebra()->quiver();
  std::vector<Mat<K>> out;
  for (int i = 0; i < q.num_vertices(); ++i) {
    Index cols = 0;
    for (int a = 0; a < q.num_arrows(); ++a)
      if (q.arrows[a].target == i) cols += m.action(a).cols();
    Mat<K> rad(m.dim(i), cols);
    Index c = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
      if (q.arrows[a].target != i) continue;
      rad.middleCols(c, m.action(a).cols()) = m.action(a);
      c += m.action(a).cols();
    }
    out.push_back(complement_basis<K>(rad, m.dim(i)));
  }
  return out;
}

namespace {

template <class K>
std::pair<FreeModule<K>, std::vector<Vec<K>>> cover(const Module<K>& m) {
  auto tops = top_generators(m);
  std::vector<int> gens;
  std::vector<Vec<K>> images;
  for (int i = 0; i < static_cast<int>(tops.size()); ++i)
    for (Index k = 0; k < tops[i].cols(); ++k) {
      gens.push_back(i);
      images.push_back(tops[i].col(k));
    }
  return {free_module<K>(m.algebra(), std::move(gens)), std::move(images)};
}

}  // namespace

template <class K>
Cover<K> projective_cover(const Module<K>& m) {
  auto [p, images] = cover(m);
  auto map = map_from_free<K>(p, m, images);
  return {std::move(p), std::move(map)};
}

template <class K>
bool is_projective(const Module<K>& m) {
  if (m.projective_vertex() >= 0) return true;
  auto [p, images] = cover(m);
  (void)images;
  const auto& alg = *m.algebra();
  for (int j = 0; j < alg.num_vertices(); ++j) {
    Index d = 0;
    for (int g : p.gens) d += alg.dim(g, j);
    if (d != m.dim(j)) return false;
  }
  return true;
}

template <class K>
bool is_injective(const Module<K>& m) {
  if (m.injective_vertex() >= 0) return true;
  return is_projective(dual_D(m));
}

template <class K>
bool is_isomorphic(const Module<K>& m, const Module<K>& n, std::uint64_t seed, int trials) {
  require_same(m, n);
  if (m.dims() != n.dims()) return false;
  if (m.is_zero()) return true;
  auto basis = hom_basis(m, n);
  if (basis.empty()) return false;
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    auto f = ModuleMap<K>::zero(m, n);
    for (const auto& b : basis) f = f + b.scaled(K::random(rng, 8));
    bool ok = true;
    for (int v = 0; v < m.algebra()->num_vertices() && ok; ++v) ok = rank<K>(f.at(v)) == m.dim(v);
    if (ok) return true;
  }
  return false;
}

template <class K>
StableHom stable_hom(const Module<K>& m, const Module<K>& n, StableSide side) {
  require_same(m, n);
  StableHom out;
  auto basis = hom_basis(m, n);
  out.hom_dim = static_cast<Index>(basis.size());
  if (basis.empty()) return out;
  std::vector<ModuleMap<K>> factoring;
  if (side == StableSide::projectives) {
    // Every map through a projective factors through the epi P0(N) -> N.
    auto pres = functorial_presentation(n);
    for (const auto& g : hom_basis(m, pres.p0.module())) factoring.push_back(pres.eps * g);
  } else {
    // Dually through the mono M -> D P0(D M).
    auto pres = functorial_presentation(dual_D(m));
    auto eta = dual_D(pres.eps);
    for (const auto& g : hom_basis(eta.target(), n)) factoring.push_back(g * eta);
  }
  if (factoring.empty()) return out;
  Mat<K> span(flat_size(m, n), static_cast<Index>(factoring.size()));
  for (std::size_t k = 0; k < factoring.size(); ++k) span.col(static_cast<Index>(k)) = flatten(factoring[k]);
  out.factoring_dim = rank<K>(span);
  return out;
}

template <class K>
ProjResolution<K> minimal_proj_resolution(const Module<K>& m) {
  ProjResolution<K> res;
  auto [p, images] = cover(m);
  res.augmentation = map_from_free<K>(p, m, images);
  res.terms.push_back(p);
  auto ker = kernel(res.augmentation);
  while (!ker.module.is_zero()) {
    auto [next, tops] = cover(ker.module);
    std::vector<Vec<K>> into;
    for (std::size_t c = 0; c < tops.size(); ++c) into.push_back(ker.map.at(next.gens[c]) * tops[c]);
    res.maps.push_back(free_map_from_images<K>(next, res.terms.back(), into));
    auto onto = map_from_free<K>(next, ker.module, tops);
    ker = kernel(onto);
    res.terms.push_back(next);
  }
  return res;
}

template <class K>
int global_dimension(const AlgPtr<K>& alg) {
  int g = 0;
  for (int i = 0; i < alg->num_vertices(); ++i) g = std::max(g, minimal_proj_resolution(simple<K>(alg, i)).length());
  return g;
}

template <class K>
Module<K> nakayama(const FreeModule<K>& p) {
  return dual_D(free_module<K>(p.alg->opposite(), p.gens).module());
}

template <class K>
ModuleMap<K> nakayama(const FreeMap<K>& f) {
  return dual_D(f.dual().to_module());
}

#define KHOM_INSTANTIATE_MODREP(K)                                                                             \
  template std::vector<ModuleMap<K>> hom_basis<K>(const Module<K>&, const Module<K>&);                         \
  template Index hom_dim<K>(const Module<K>&, const Module<K>&);                                               \
  template Piece<K> kernel<K>(const ModuleMap<K>&);                                                            \
  template Piece<K> cokernel<K>(const ModuleMap<K>&);                                                          \
  template Piece<K> image<K>(const ModuleMap<K>&);                                                             \
  template Piece<K> submodule<K>(const Module<K>&, const std::vector<Mat<K>>&);                                \
  template struct FreeModule<K>;                                                                               \
  template struct FreeMap<K>;                                                                                  \
  template FreeModule<K> free_module<K>(const AlgPtr<K>&, std::vector<int>);                                   \
  template FreeMap<K> free_map_zero<K>(const FreeModule<K>&, const FreeModule<K>&);                            \
  template FreeMap<K> free_map_from_images<K>(const FreeModule<K>&, const FreeModule<K>&,                      \
                                              const std::vector<Vec<K>>&);                                     \
  template ModuleMap<K> map_from_free<K>(const FreeModule<K>&, const Module<K>&, const std::vector<Vec<K>>&);  \
  template Presentation<K> functorial_presentation<K>(const Module<K>&);                                       \
  template FreeMap<K> free_lift<K>(const FreeModule<K>&, const FreeModule<K>&, const ModuleMap<K>&);           \
  template PresentationLift<K> lift<K>(const Presentation<K>&, const Presentation<K>&, const ModuleMap<K>&);   \
  template Piece<K> transpose_piece<K>(const Presentation<K>&);                                                \
  template Module<K> transpose<K>(const Module<K>&);                                                           \
  template Module<K> strip_projective<K>(const Module<K>&);                                                    \
  template Module<K> strip_injective<K>(const Module<K>&);                                                     \
  template Module<K> tau<K>(const Module<K>&);                                                                 \
  template Module<K> tau_minus<K>(const Module<K>&);                                                           \
  template std::vector<Mat<K>> top_generators<K>(const Module<K>&);                                            \
  template Cover<K> projective_cover<K>(const Module<K>&);                                                      \
  template bool is_projective<K>(const Module<K>&);                                                            \
  template bool is_injective<K>(const Module<K>&);                                                             \
  template bool is_isomorphic<K>(const Module<K>&, const Module<K>&, std::uint64_t, int);                      \
  template StableHom stable_hom<K>(const Module<K>&, const Module<K>&, StableSide);                            \
  template ProjResolution<K> minimal_proj_resolution<K>(const Module<K>&);                                     \
  template int global_dimension<K>(const AlgPtr<K>&);                                                          \
  template Module<K> nakayama<K>(const FreeModule<K>&);                                                        \
  template ModuleMap<K> nakayama<K>(const FreeMap<K>&);

KHOM_INSTANTIATE_MODREP(Rational)
KHOM_INSTANTIATE_MODREP(ModP)

}  // namespace khom
