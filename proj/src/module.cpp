#include "khom/module.hpp"

#include "khom/error.hpp"

namespace khom {

template <class K>
Module<K>::Module(AlgebraPtr alg, std::vector<Index> dims, std::vector<Mat<K>> action) {
  if (!alg) throw PreconditionError("module without an algebra");
  const auto& q = alg->quiver();
  if (static_cast<int>(dims.size()) != q.num_vertices())
    throw InputError("module has " + std::to_string(dims.size()) + " vertex dimensions, expected " +
                     std::to_string(q.num_vertices()));
  if (static_cast<int>(action.size()) != q.num_arrows())
    throw InputError("module has " + std::to_string(action.size()) + " arrow matrices, expected " +
                     std::to_string(q.num_arrows()));
  for (Index d : dims)
    if (d < 0) throw InputError("negative vertex dimension");
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrows[a];
    if (action[a].rows() != dims[ar.target] || action[a].cols() != dims[ar.source])
      throw InputError("matrix for arrow '" + ar.name + "' has shape " + std::to_string(action[a].rows()) + "x" +
                       std::to_string(action[a].cols()) + ", expected " + std::to_string(dims[ar.target]) + "x" +
                       std::to_string(dims[ar.source]));
  }
  Data d;
  d.alg = std::move(alg);
  d.dims = std::move(dims);
  d.action = std::move(action);
  d_ = std::make_shared<const Data>(std::move(d));
  for (const auto& rel : d_->alg->relations()) {
    const auto& first = rel.front().arrows;
    int s = q.arrows[first.front()].source, t = q.arrows[first.back()].target;
    Mat<K> sum = zeros<K>(d_->dims[t], d_->dims[s]);
    for (const auto& term : rel) sum += term.coeff * path_action(Path{s, t, term.arrows});
    if (!khom::is_zero<K>(sum)) throw InputError("module does not satisfy the relations");
  }
}

template <class K>
Module<K> Module<K>::zero(AlgebraPtr alg) {
  Data d;
  const int n = alg->num_vertices();
  d.dims.assign(n, 0);
  for (const auto& a : alg->quiver().arrows) {
    (void)a;
    d.action.push_back(Mat<K>(0, 0));
  }
  d.alg = std::move(alg);
  return from_data(std::move(d));
}

template <class K>
Module<K> Module<K>::from_data(Data d) {
  Module m;
  m.d_ = std::make_shared<const Data>(std::move(d));
  return m;
}

template <class K>
Index Module<K>::total_dim() const {
  Index n = 0;
  for (Index d : d_->dims) n += d;
  return n;
}

template <class K>
Mat<K> Module<K>::path_action(const Path& p) const {
  Mat<K> m = khom::identity<K>(d_->dims[p.source]);
  for (int a : p.arrows) m = Mat<K>(d_->action[a] * m);
  return m;
}

template <class K>
Index Module<K>::summand_offset(std::size_t k, int v) const {
  Index off = 0;
  for (std::size_t j = 0; j < k; ++j) off += d_->summands[j].dim(v);
  return off;
}

template <class K>
bool Module<K>::operator==(const Module& other) const {
  if (d_ == other.d_) return true;
  if (!same_algebra<K>(d_->alg, other.d_->alg) || d_->dims != other.d_->dims) return false;
  for (std::size_t a = 0; a < d_->action.size(); ++a)
    if (d_->action[a] != other.d_->action[a]) return false;
  return true;
}

template <class K>
ModuleMap<K>::ModuleMap(Module<K> source, Module<K> target, std::vector<Mat<K>> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  if (!same_algebra<K>(source_.algebra(), target_.algebra()))
    throw PreconditionError("module map between modules over different algebras");
  const int n = source_.algebra()->num_vertices();
  if (static_cast<int>(comps_.size()) != n) throw InputError("module map has the wrong number of components");
  for (int v = 0; v < n; ++v)
    if (comps_[v].rows() != target_.dim(v) || comps_[v].cols() != source_.dim(v))
      throw InputError("module map component at vertex " + std::to_string(v) + " has the wrong shape");
  if (!commutes()) throw InputError("module map does not commute with the arrows");
}

template <class K>
ModuleMap<K> ModuleMap<K>::unchecked(Module<K> source, Module<K> target, std::vector<Mat<K>> components) {
  ModuleMap f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.comps_ = std::move(components);
  return f;
}

template <class K>
ModuleMap<K> ModuleMap<K>::zero(const Module<K>& source, const Module<K>& target) {
  std::vector<Mat<K>> c;
  for (int v = 0; v < source.algebra()->num_vertices(); ++v) c.push_back(zeros<K>(target.dim(v), source.dim(v)));
  return unchecked(source, target, std::move(c));
}

template <class K>
ModuleMap<K> ModuleMap<K>::identity(const Module<K>& m) {
  std::vector<Mat<K>> c;
  for (int v = 0; v < m.algebra()->num_vertices(); ++v) c.push_back(khom::identity<K>(m.dim(v)));
  return unchecked(m, m, std::move(c));
}

template <class K>
bool ModuleMap<K>::is_zero() const {
  for (const auto& c : comps_)
    if (!khom::is_zero<K>(c)) return false;
  return true;
}

template <class K>
bool ModuleMap<K>::commutes() const {
  const auto& q = source_.algebra()->quiver();
  for (int a = 0; a < q.num_arrows(); ++a) {
    const auto& ar = q.arrows[a];
    Mat<K> lhs = target_.action(a) * comps_[ar.source];
    Mat<K> rhs = comps_[ar.target] * source_.action(a);
    if (lhs != rhs) return false;
  }
  return true;
}

template <class K>
ModuleMap<K> ModuleMap<K>::operator+(const ModuleMap& o) const {
  auto c = comps_;
  for (std::size_t v = 0; v < c.size(); ++v) c[v] += o.comps_[v];
  return unchecked(source_, target_, std::move(c));
}

template <class K>
ModuleMap<K> ModuleMap<K>::operator-(const ModuleMap& o) const {
  auto c = comps_;
  for (std::size_t v = 0; v < c.size(); ++v) c[v] -= o.comps_[v];
  return unchecked(source_, target_, std::move(c));
}

template <class K>
ModuleMap<K> ModuleMap<K>::operator-() const {
  auto c = comps_;
  for (auto& m : c) m = -m;
  return unchecked(source_, target_, std::move(c));
}

template <class K>
ModuleMap<K> ModuleMap<K>::scaled(const K& s) const {
  auto c = comps_;
  for (auto& m : c) m *= s;
  return unchecked(source_, target_, std::move(c));
}

template <class K>
ModuleMap<K> ModuleMap<K>::operator*(const ModuleMap& rhs) const {
  std::vector<Mat<K>> c;
  c.reserve(comps_.size());
  for (std::size_t v = 0; v < comps_.size(); ++v) {
    if (comps_[v].cols() != rhs.comps_[v].rows()) throw PreconditionError("composition of incompatible maps");
    c.push_back(comps_[v] * rhs.comps_[v]);
  }
  return unchecked(rhs.source_, target_, std::move(c));
}

template <class K>
bool ModuleMap<K>::operator==(const ModuleMap& o) const {
  return comps_ == o.comps_;
}

template <class K>
Module<K> projective(const AlgPtr<K>& alg, int i) {
  typename Module<K>::Data d;
  d.alg = alg;
  for (int j = 0; j < alg->num_vertices(); ++j) d.dims.push_back(alg->dim(i, j));
  for (int a = 0; a < alg->num_arrows(); ++a) d.action.push_back(alg->right_action(i, a));
  d.proj_vertex = i;
  return Module<K>::from_data(std::move(d));
}

template <class K>
Module<K> injective(const AlgPtr<K>& alg, int i) {
  return dual_D(projective<K>(alg->opposite(), i));
}

template <class K>
Module<K> simple(const AlgPtr<K>& alg, int i) {
  typename Module<K>::Data d;
  d.alg = alg;
  d.dims.assign(alg->num_vertices(), 0);
  d.dims[i] = 1;
  for (const auto& a : alg->quiver().arrows) d.action.push_back(zeros<K>(d.dims[a.target], d.dims[a.source]));
  Index out = 0, in = 0;
  for (int j = 0; j < alg->num_vertices(); ++j) {
    out += alg->dim(i, j);
    in += alg->dim(j, i);
  }
  // A simple at a sink is projective, at a source injective.
  if (out == 1) d.proj_vertex = i;
  if (in == 1) d.inj_vertex = i;
  return Module<K>::from_data(std::move(d));
}

template <class K>
Index DirectSum<K>::offset(std::size_t k, int v) const {
  Index off = 0;
  for (std::size_t j = 0; j < k; ++j) off += parts[j].dim(v);
  return off;
}

template <class K>
DirectSum<K> direct_sum(const AlgPtr<K>& alg, const std::vector<Module<K>>& parts) {
  if (parts.size() == 1) return {parts[0], parts};
  const int n = alg->num_vertices();
  const auto& q = alg->quiver();
  typename Module<K>::Data d;
  d.alg = alg;
  d.dims.assign(n, 0);
  for (const auto& p : parts) {
    if (!same_algebra<K>(p.algebra(), alg)) throw PreconditionError("direct sum of modules over different algebras");
    for (int v = 0; v < n; ++v) d.dims[v] += p.dim(v);
    if (p.is_zero()) continue;
    if (!p.summands().empty())
      d.summands.insert(d.summands.end(), p.summands().begin(), p.summands().end());
    else
      d.summands.push_back(p);
  }
  for (int a = 0; a < q.num_arrows(); ++a) {
    const int s = q.arrows[a].source, t = q.arrows[a].target;
    Mat<K> m = zeros<K>(d.dims[t], d.dims[s]);
    Index rs = 0, cs = 0;
    for (const auto& p : parts) {
      m.block(rs, cs, p.dim(t), p.dim(s)) = p.action(a);
      rs += p.dim(t);
      cs += p.dim(s);
    }
    d.action.push_back(std::move(m));
  }
  if (d.summands.size() == 1) {
    const auto& only = d.summands[0];
    d.proj_vertex = only.projective_vertex();
    d.inj_vertex = only.injective_vertex();
    d.summands.clear();
  }
  return {Module<K>::from_data(std::move(d)), parts};
}

template <class K>
ModuleMap<K> block_map(const DirectSum<K>& source, const DirectSum<K>& target,
                       const std::vector<std::vector<std::optional<ModuleMap<K>>>>& blocks) {
  const int n = source.module.algebra()->num_vertices();
  std::vector<Mat<K>> c;
  for (int v = 0; v < n; ++v) c.push_back(zeros<K>(target.module.dim(v), source.module.dim(v)));
  if (blocks.size() != target.parts.size()) throw PreconditionError("block_map: wrong number of block rows");
  for (std::size_t r = 0; r < blocks.size(); ++r) {
    if (blocks[r].size() != source.parts.size()) throw PreconditionError("block_map: wrong number of block columns");
    for (std::size_t col = 0; col < blocks[r].size(); ++col) {
      if (!blocks[r][col]) continue;
      const auto& f = *blocks[r][col];
      for (int v = 0; v < n; ++v) {
        if (f.at(v).rows() != target.parts[r].dim(v) || f.at(v).cols() != source.parts[col].dim(v))
          throw PreconditionError("block_map: block has the wrong shape");
        c[v].block(target.offset(r, v), source.offset(col, v), f.at(v).rows(), f.at(v).cols()) = f.at(v);
      }
    }
  }
  return ModuleMap<K>::unchecked(source.module, target.module, std::move(c));
}

template <class K>
ModuleMap<K> injection(const DirectSum<K>& sum, std::size_t k) {
  const auto& part = sum.parts[k];
  const int n = part.algebra()->num_vertices();
  std::vector<Mat<K>> c;
  for (int v = 0; v < n; ++v) {
    Mat<K> m = zeros<K>(sum.module.dim(v), part.dim(v));
    m.block(sum.offset(k, v), 0, part.dim(v), part.dim(v)) = identity<K>(part.dim(v));
    c.push_back(std::move(m));
  }
  return ModuleMap<K>::unchecked(part, sum.module, std::move(c));
}

template <class K>
ModuleMap<K> projection(const DirectSum<K>& sum, std::size_t k) {
  const auto& part = sum.parts[k];
  const int n = part.algebra()->num_vertices();
  std::vector<Mat<K>> c;
  for (int v = 0; v < n; ++v) {
    Mat<K> m = zeros<K>(part.dim(v), sum.module.dim(v));
    m.block(0, sum.offset(k, v), part.dim(v), part.dim(v)) = identity<K>(part.dim(v));
    c.push_back(std::move(m));
  }
  return ModuleMap<K>::unchecked(sum.module, part, std::move(c));
}

template <class K>
ModuleMap<K> diagonal_map(const DirectSum<K>& source, const DirectSum<K>& target,
                          const std::vector<ModuleMap<K>>& maps) {
  std::vector<std::vector<std::optional<ModuleMap<K>>>> blocks(
      target.parts.size(), std::vector<std::optional<ModuleMap<K>>>(source.parts.size()));
  if (maps.size() != source.parts.size() || maps.size() != target.parts.size())
    throw PreconditionError("diagonal_map: size mismatch");
  for (std::size_t k = 0; k < maps.size(); ++k) blocks[k][k] = maps[k];
  return block_map<K>(source, target, blocks);
}

template <class K>
Module<K> dual_D(const Module<K>& m) {
  typename Module<K>::Data d;
  d.alg = m.algebra()->opposite();
  d.dims = m.dims();
  for (int a = 0; a < m.algebra()->num_arrows(); ++a) d.action.push_back(m.action(a).transpose());
  for (const auto& s : m.summands()) d.summands.push_back(dual_D(s));
  d.proj_vertex = m.injective_vertex();
  d.inj_vertex = m.projective_vertex();
  return Module<K>::from_data(std::move(d));
}

template <class K>
ModuleMap<K> dual_D(const ModuleMap<K>& f) {
  std::vector<Mat<K>> c;
  for (const auto& m : f.components()) c.push_back(m.transpose());
  return ModuleMap<K>::unchecked(dual_D(f.target()), dual_D(f.source()), std::move(c));
}

template <class K>
Index flat_size(const Module<K>& source, const Module<K>& target) {
  Index n = 0;
  for (int v = 0; v < source.algebra()->num_vertices(); ++v) n += source.dim(v) * target.dim(v);
  return n;
}

template <class K>
Vec<K> flatten(const ModuleMap<K>& f) {
  Vec<K> out(flat_size(f.source(), f.target()));
  Index pos = 0;
  for (const auto& m : f.components())
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) out(pos++) = m(i, j);
  return out;
}

template <class K>
ModuleMap<K> unflatten(const Module<K>& source, const Module<K>& target, const Vec<K>& v) {
  if (v.rows() != flat_size(source, target)) throw PreconditionError("unflatten: size mismatch");
  std::vector<Mat<K>> c;
  Index pos = 0;
  for (int x = 0; x < source.algebra()->num_vertices(); ++x) {
    Mat<K> m(target.dim(x), source.dim(x));
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) m(i, j) = v(pos++);
    c.push_back(std::move(m));
  }
  return ModuleMap<K>::unchecked(source, target, std::move(c));
}

#define KHOM_INSTANTIATE_MODULE(K)                                                                      \
  template class Module<K>;                                                                             \
  template class ModuleMap<K>;                                                                          \
  template struct DirectSum<K>;                                                                         \
  template Module<K> projective<K>(const AlgPtr<K>&, int);                                              \
  template Module<K> injective<K>(const AlgPtr<K>&, int);                                               \
  template Module<K> simple<K>(const AlgPtr<K>&, int);                                                  \
  template DirectSum<K> direct_sum<K>(const AlgPtr<K>&, const std::vector<Module<K>>&);                 \
  template ModuleMap<K> block_map<K>(const DirectSum<K>&, const DirectSum<K>&,                          \
                                     const std::vector<std::vector<std::optional<ModuleMap<K>>>>&);     \
  template ModuleMap<K> injection<K>(const DirectSum<K>&, std::size_t);                                 \
  template ModuleMap<K> projection<K>(const DirectSum<K>&, std::size_t);                                \
  template ModuleMap<K> diagonal_map<K>(const DirectSum<K>&, const DirectSum<K>&,                       \
                                        const std::vector<ModuleMap<K>>&);                              \
  template Module<K> dual_D<K>(const Module<K>&);                                                       \
  template ModuleMap<K> dual_D<K>(const ModuleMap<K>&);                                                 \
  template Index flat_size<K>(const Module<K>&, const Module<K>&);                                      \
  template Vec<K> flatten<K>(const ModuleMap<K>&);                                                      \
  template ModuleMap<K> unflatten<K>(const Module<K>&, const Module<K>&, const Vec<K>&);

KHOM_INSTANTIATE_MODULE(Rational)
KHOM_INSTANTIATE_MODULE(ModP)

}  // namespace khom
