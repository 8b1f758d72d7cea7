#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "khom/linalg.hpp"

namespace khom {

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
  bool operator==(const Arrow&) const = default;
};

/// Finite quiver without oriented cycles.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  int vertex(std::string_view name) const;
  int arrow(std::string_view name) const;
  /// Vertices ordered so that every arrow goes forward. Throws on a cycle.
  std::vector<int> topological_order() const;
  bool operator==(const Quiver&) const = default;
};

/// A path written left to right: first arrows[0], then arrows[1], ...
/// A trivial path e_i has no arrows and source == target == i.
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;
  std::size_t length() const { return arrows.size(); }
  auto operator<=>(const Path&) const = default;
};

template <class K>
struct RelationTerm {
  K coeff;
  std::vector<int> arrows;
  bool operator==(const RelationTerm&) const = default;
};

template <class K>
using Relation = std::vector<RelationTerm<K>>;

/// Field-independent description of an algebra as read from input.
struct AlgebraDescription {
  struct ArrowSpec {
    std::string name, from, to;
  };
  struct TermSpec {
    std::string coeff;
    std::vector<std::string> path;
  };
  std::string name;
  FieldSpec field;
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
  std::vector<std::vector<TermSpec>> relations;
};

/// Bound quiver algebra kQ/I with I generated by admissible relations.
///
/// Right modules are representations with maps along arrows; e_i Λ e_j is
/// spanned by the classes of paths from i to j. The basis of each e_i Λ e_j is
/// a set of paths whose classes are independent modulo I.
template <class K>
class Algebra : public std::enable_shared_from_this<Algebra<K>> {
 public:
  using Ptr = std::shared_ptr<const Algebra>;

  /// Validates the quiver and relations and computes the path basis.
  static Ptr create(std::string name, Quiver quiver, std::vector<Relation<K>> relations);

  const std::string& name() const { return name_; }
  const Quiver& quiver() const { return quiver_; }
  const std::vector<Relation<K>>& relations() const { return relations_; }
  FieldSpec field() const { return K::field(); }
  int num_vertices() const { return quiver_.num_vertices(); }
  int num_arrows() const { return quiver_.num_arrows(); }

  Index dim() const;
  Index dim(int i, int j) const { return static_cast<Index>(pairs_[i][j].basis.size()); }
  const std::vector<Path>& basis(int i, int j) const { return pairs_[i][j].basis; }
  const std::vector<Path>& paths(int i, int j) const { return pairs_[i][j].paths; }

  /// Coordinates of the class of a path in basis(source, target).
  Vec<K> normal_form(const Path& p) const;

  /// Right multiplication by an arrow s -> t, as a map e_iΛe_s -> e_iΛe_t.
  const Mat<K>& right_action(int i, int arrow) const { return right_action_[i][arrow]; }

  /// Product x*y of x in e_iΛe_j and y in e_jΛe_k, in coordinates.
  Vec<K> multiply(int i, int j, int k, const Vec<K>& x, const Vec<K>& y) const;

  /// Arrows reversed, relations reversed word by word. Cached; the opposite
  /// of the opposite is this algebra again.
  Ptr opposite() const;

  /// Same quiver, field and relations (names of the algebras are ignored).
  bool same_as(const Algebra& other) const;

 private:
  struct PairData {
    std::vector<Path> paths;  // all paths i -> j, longest first
    std::map<std::vector<int>, Index> index;
    std::vector<Path> basis;  // shortest first
    Mat<K> nf;                // basis coordinates of each path, column per path
  };

  Algebra() = default;
  void compute_pairs();
  void compute_right_action();

  std::string name_;
  Quiver quiver_;
  std::vector<Relation<K>> relations_;
  std::vector<std::vector<PairData>> pairs_;
  std::vector<std::vector<Mat<K>>> right_action_;

  mutable std::mutex op_mutex_;
  mutable Ptr op_strong_;
  mutable std::weak_ptr<const Algebra> op_weak_;
};

template <class K>
using AlgPtr = std::shared_ptr<const Algebra<K>>;

/// Resolves names and coefficients of a description against the field K.
/// Throws InputError on oriented cycles, inadmissible relations, or a field
/// mismatch.
template <class K>
typename Algebra<K>::Ptr load_algebra(const AlgebraDescription& desc);

/// Path enumeration helper: every path starting at `source`.
std::vector<Path> paths_from(const Quiver& q, int source);

}  // namespace khom
