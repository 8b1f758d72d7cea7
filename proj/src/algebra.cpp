#include "khom/algebra.hpp"

#include <algorithm>
#include <set>

#include "khom/error.hpp"

namespace khom {

int Quiver::vertex(std::string_view name) const {
  for (int i = 0; i < num_vertices(); ++i)
    if (vertices[i] == name) return i;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

int Quiver::arrow(std::string_view name) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[i].name == name) return i;
  throw InputError("unknown arrow '" + std::string(name) + "'");
}

std::vector<int> Quiver::topological_order() const {
  std::vector<int> indegree(vertices.size(), 0);
  for (const auto& a : arrows) ++indegree[a.target];
  std::vector<int> order, ready;
  for (int v = 0; v < num_vertices(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  while (!ready.empty()) {
    std::sort(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (const auto& a : arrows)
      if (a.source == v && --indegree[a.target] == 0) ready.push_back(a.target);
  }
  if (order.size() != vertices.size()) throw InputError("quiver has an oriented cycle");
  return order;
}

std::vector<Path> paths_from(const Quiver& q, int source) {
  std::vector<Path> out;
  std::vector<Path> stack{Path{source, source, {}}};
  while (!stack.empty()) {
    Path p = std::move(stack.back());
    stack.pop_back();
    for (int a = 0; a < q.num_arrows(); ++a) {
      if (q.arrows[a].source != p.target) continue;
      Path next = p;
      next.arrows.push_back(a);
      next.target = q.arrows[a].target;
      stack.push_back(std::move(next));
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

bool longest_first(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() > b.length();
  return a.arrows < b.arrows;
}

bool shortest_first(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.arrows < b.arrows;
}

Path concat(const Path& a, const Path& b) {
  Path p{a.source, b.target, a.arrows};
  p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
  return p;
}

}  // namespace

template <class K>
typename Algebra<K>::Ptr Algebra<K>::create(std::string name, Quiver quiver, std::vector<Relation<K>> relations) {
  std::set<std::string> names;
  for (const auto& v : quiver.vertices)
    if (!names.insert(v).second) throw InputError("duplicate vertex '" + v + "'");
  names.clear();
  for (const auto& a : quiver.arrows) {
    if (!names.insert(a.name).second) throw InputError("duplicate arrow '" + a.name + "'");
    if (a.source < 0 || a.source >= quiver.num_vertices() || a.target < 0 || a.target >= quiver.num_vertices())
      throw InputError("arrow '" + a.name + "' has an unknown endpoint");
    if (a.source == a.target) throw InputError("oriented cycle detected: loop '" + a.name + "'");
  }
  try {
    quiver.topological_order();
  } catch (const InputError&) {
    throw InputError("oriented cycle detected in quiver");
  }
  for (const auto& rel : relations) {
    if (rel.empty()) throw InputError("relation with no terms");
    int src = -1, tgt = -1;
    for (const auto& term : rel) {
      if (term.arrows.size() < 2) throw InputError("relation not admissible: term of length < 2");
      for (std::size_t k = 0; k < term.arrows.size(); ++k) {
        int a = term.arrows[k];
        if (a < 0 || a >= quiver.num_arrows()) throw InputError("relation uses an unknown arrow");
        if (k > 0 && quiver.arrows[term.arrows[k - 1]].target != quiver.arrows[a].source)
          throw InputError("relation not admissible: path is not composable");
      }
      int s = quiver.arrows[term.arrows.front()].source;
      int t = quiver.arrows[term.arrows.back()].target;
      if (src < 0) {
        src = s;
        tgt = t;
      } else if (s != src || t != tgt) {
        throw InputError("relation not admissible: combines non-parallel paths");
      }
    }
  }
  std::shared_ptr<Algebra> alg(new Algebra());
  alg->name_ = std::move(name);
  alg->quiver_ = std::move(quiver);
  alg->relations_ = std::move(relations);
  alg->compute_pairs();
  alg->compute_right_action();
  return alg;
}

template <class K>
void Algebra<K>::compute_pairs() {
  const int n = num_vertices();
  pairs_.assign(n, std::vector<PairData>(n));
  for (int i = 0; i < n; ++i) {
    for (auto& p : paths_from(quiver_, i)) pairs_[i][p.target].paths.push_back(std::move(p));
    for (int j = 0; j < n; ++j) {
      auto& pd = pairs_[i][j];
      std::sort(pd.paths.begin(), pd.paths.end(), longest_first);
      for (std::size_t k = 0; k < pd.paths.size(); ++k) pd.index[pd.paths[k].arrows] = static_cast<Index>(k);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto& pd = pairs_[i][j];
      const Index np = static_cast<Index>(pd.paths.size());
      // Generators p*r*q of the ideal inside e_i kQ e_j.
      std::vector<Vec<K>> gens;
      for (const auto& rel : relations_) {
        int s = quiver_.arrows[rel.front().arrows.front()].source;
        int t = quiver_.arrows[rel.front().arrows.back()].target;
        for (const auto& left : pairs_[i][s].paths) {
          for (const auto& right : pairs_[t][j].paths) {
            Vec<K> v = Vec<K>::Constant(np, K(0));
            for (const auto& term : rel) {
              std::vector<int> word = left.arrows;
              word.insert(word.end(), term.arrows.begin(), term.arrows.end());
              word.insert(word.end(), right.arrows.begin(), right.arrows.end());
              v(pd.index.at(word)) += term.coeff;
            }
            gens.push_back(std::move(v));
          }
        }
      }
      Mat<K> ideal = zeros<K>(static_cast<Index>(gens.size()), np);
      for (std::size_t r = 0; r < gens.size(); ++r) ideal.row(static_cast<Index>(r)) = gens[r].transpose();
      auto ech = rref<K>(ideal);
      std::vector<bool> pivot(np, false);
      std::vector<Index> pivot_row(np, -1);
      for (Index r = 0; r < ech.rank(); ++r) {
        pivot[ech.pivots[r]] = true;
        pivot_row[ech.pivots[r]] = r;
      }
      std::vector<Index> free_cols;
      for (Index c = 0; c < np; ++c)
        if (!pivot[c]) free_cols.push_back(c);
      std::sort(free_cols.begin(), free_cols.end(),
                [&](Index a, Index b) { return shortest_first(pd.paths[a], pd.paths[b]); });
      std::vector<Index> basis_pos(np, -1);
      for (std::size_t k = 0; k < free_cols.size(); ++k) {
        basis_pos[free_cols[k]] = static_cast<Index>(k);
        pd.basis.push_back(pd.paths[free_cols[k]]);
      }
      const Index nb = static_cast<Index>(free_cols.size());
      pd.nf = zeros<K>(nb, np);
      for (Index c = 0; c < np; ++c) {
        if (!pivot[c]) {
          pd.nf(basis_pos[c], c) = K(1);
          continue;
        }
        Index r = pivot_row[c];
        for (Index f : free_cols)
          if (!ech.reduced(r, f).is_zero()) pd.nf(basis_pos[f], c) = -ech.reduced(r, f);
      }
    }
  }
}

template <class K>
void Algebra<K>::compute_right_action() {
  const int n = num_vertices();
  right_action_.assign(n, std::vector<Mat<K>>(num_arrows()));
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < num_arrows(); ++a) {
      int s = quiver_.arrows[a].source, t = quiver_.arrows[a].target;
      Mat<K> m = zeros<K>(dim(i, t), dim(i, s));
      const auto& src = pairs_[i][s].basis;
      for (std::size_t b = 0; b < src.size(); ++b) {
        Path p = src[b];
        p.arrows.push_back(a);
        p.target = t;
        m.col(static_cast<Index>(b)) = normal_form(p);
      }
      right_action_[i][a] = std::move(m);
    }
  }
}

template <class K>
Index Algebra<K>::dim() const {
  Index d = 0;
  for (const auto& row : pairs_)
    for (const auto& pd : row) d += static_cast<Index>(pd.basis.size());
  return d;
}

template <class K>
Vec<K> Algebra<K>::normal_form(const Path& p) const {
  const auto& pd = pairs_.at(p.source).at(p.target);
  auto it = pd.index.find(p.arrows);
  if (it == pd.index.end()) throw MathError("normal_form: not a path of the quiver");
  return pd.nf.col(it->second);
}

template <class K>
Vec<K> Algebra<K>::multiply(int i, int j, int k, const Vec<K>& x, const Vec<K>& y) const {
  const auto& left = pairs_[i][j].basis;
  const auto& right = pairs_[j][k].basis;
  Vec<K> out = Vec<K>::Constant(dim(i, k), K(0));
  for (std::size_t a = 0; a < left.size(); ++a) {
    if (x(static_cast<Index>(a)).is_zero()) continue;
    for (std::size_t b = 0; b < right.size(); ++b) {
      if (y(static_cast<Index>(b)).is_zero()) continue;
      out += (x(static_cast<Index>(a)) * y(static_cast<Index>(b))) * normal_form(concat(left[a], right[b]));
    }
  }
  return out;
}

template <class K>
typename Algebra<K>::Ptr Algebra<K>::opposite() const {
  std::lock_guard lock(op_mutex_);
  if (auto back = op_weak_.lock()) return back;
  if (op_strong_) return op_strong_;
  std::shared_ptr<Algebra> op(new Algebra());
  const std::string suffix = "^op";
  if (name_.size() >= suffix.size() && name_.compare(name_.size() - suffix.size(), suffix.size(), suffix) == 0)
    op->name_ = name_.substr(0, name_.size() - suffix.size());
  else
    op->name_ = name_ + suffix;
  op->quiver_.vertices = quiver_.vertices;
  for (const auto& a : quiver_.arrows) op->quiver_.arrows.push_back({a.name, a.target, a.source});
  for (const auto& rel : relations_) {
    Relation<K> r;
    for (const auto& term : rel) r.push_back({term.coeff, {term.arrows.rbegin(), term.arrows.rend()}});
    op->relations_.push_back(std::move(r));
  }
  const int n = num_vertices();
  op->pairs_.assign(n, std::vector<PairData>(n));
  auto reverse = [](const Path& p) { return Path{p.target, p.source, {p.arrows.rbegin(), p.arrows.rend()}}; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& src = pairs_[i][j];
      auto& dst = op->pairs_[j][i];
      for (const auto& p : src.paths) dst.paths.push_back(reverse(p));
      for (const auto& p : src.basis) dst.basis.push_back(reverse(p));
      for (std::size_t k = 0; k < dst.paths.size(); ++k) dst.index[dst.paths[k].arrows] = static_cast<Index>(k);
      dst.nf = src.nf;
    }
  }
  op->compute_right_action();
  op->op_weak_ = this->shared_from_this();
  op_strong_ = op;
  return op_strong_;
}

template <class K>
bool Algebra<K>::same_as(const Algebra& other) const {
  return this == &other || (quiver_ == other.quiver_ && relations_ == other.relations_);
}

template <class K>
typename Algebra<K>::Ptr load_algebra(const AlgebraDescription& desc) {
  if (desc.field.kind == FieldSpec::Kind::prime && !is_prime(desc.field.p))
    throw InputError("field modulus " + std::to_string(desc.field.p) + " is not prime");
  if (!(desc.field == K::field()))
    throw InputError("algebra field " + desc.field.str() + " does not match the active field " + K::field().str());
  Quiver q;
  q.vertices = desc.vertices;
  std::set<std::string> seen;
  for (const auto& v : q.vertices)
    if (!seen.insert(v).second) throw InputError("duplicate vertex '" + v + "'");
  for (const auto& a : desc.arrows) q.arrows.push_back({a.name, q.vertex(a.from), q.vertex(a.to)});
  std::vector<Relation<K>> rels;
  for (const auto& rspec : desc.relations) {
    Relation<K> rel;
    for (const auto& t : rspec) {
      RelationTerm<K> term{K::parse(t.coeff), {}};
      for (const auto& name : t.path) term.arrows.push_back(q.arrow(name));
      rel.push_back(std::move(term));
    }
    rels.push_back(std::move(rel));
  }
  return Algebra<K>::create(desc.name, std::move(q), std::move(rels));
}

template class Algebra<Rational>;
template class Algebra<ModP>;
template Algebra<Rational>::Ptr load_algebra<Rational>(const AlgebraDescription&);
template Algebra<ModP>::Ptr load_algebra<ModP>(const AlgebraDescription&);

}  // namespace khom
