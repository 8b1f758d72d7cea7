#include "khom/catalog.hpp"

#include "khom/error.hpp"

namespace khom {

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"a2", "a3", "n3", "d4"};
  return names;
}

AlgebraDescription catalog_description(const std::string& name, FieldSpec field) {
  AlgebraDescription d;
  d.name = name;
  d.field = field;
  if (name == "a2") {
    d.vertices = {"1", "2"};
    d.arrows = {{"a", "1", "2"}};
  } else if (name == "a3" || name == "n3") {
    d.vertices = {"1", "2", "3"};
    d.arrows = {{"a", "1", "2"}, {"b", "2", "3"}};
    if (name == "n3") d.relations = {{{"1", {"a", "b"}}}};
  } else if (name == "d4") {
    d.vertices = {"1", "2", "3", "4"};
    d.arrows = {{"a", "1", "4"}, {"b", "2", "4"}, {"c", "3", "4"}};
  } else {
    throw InputError("unknown catalog algebra '" + name + "'");
  }
  return d;
}

template <class K>
AlgPtr<K> catalog_algebra(const std::string& ref) {
  const std::string suffix = "^op";
  if (ref.size() > suffix.size() && ref.compare(ref.size() - suffix.size(), suffix.size(), suffix) == 0)
    return catalog_algebra<K>(ref.substr(0, ref.size() - suffix.size()))->opposite();
  // Loaded once per field so that handles compare equal.
  static thread_local std::map<std::pair<std::string, std::string>, AlgPtr<K>> cache;
  auto key = std::make_pair(ref, K::field().str());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto alg = load_algebra<K>(catalog_description(ref, K::field()));
  cache.emplace(key, alg);
  return alg;
}

template AlgPtr<Rational> catalog_algebra<Rational>(const std::string&);
template AlgPtr<ModP> catalog_algebra<ModP>(const std::string&);

}  // namespace khom
