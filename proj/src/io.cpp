#include "khom/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "khom/catalog.hpp"
#include "khom/error.hpp"

namespace khom {

namespace {

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError("scalar must be a string or an integer, got " + v.dump());
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

int degree_key(const std::string& s) {
  try {
    std::size_t used = 0;
    int n = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("bad degree '" + s + "'");
    return n;
  } catch (const std::logic_error&) {
    throw ParseError("bad degree '" + s + "'");
  }
}

}  // namespace

FieldSpec field_from_json(const json& j) {
  const auto kind = member(j, "kind").get<std::string>();
  if (kind == "rationals") return FieldSpec::rationals();
  if (kind == "prime") {
    const auto p = member(j, "p").get<long long>();
    if (p < 2 || p > 2147483647LL || !is_prime(static_cast<std::uint64_t>(p)))
      throw InputError("field modulus " + std::to_string(p) + " is not prime");
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
  }
  throw ParseError("unknown field kind '" + kind + "'");
}

json to_json(const FieldSpec& f) {
  if (f.kind == FieldSpec::Kind::rationals) return {{"kind", "rationals"}};
  return {{"kind", "prime"}, {"p", f.p}};
}

AlgebraDescription description_from_json(const json& j, const std::string& name) {
  try {
    AlgebraDescription d;
    d.name = j.value("name", name);
    d.field = j.contains("field") ? field_from_json(j.at("field")) : FieldSpec::rationals();
    for (const auto& v : member(j, "vertices")) d.vertices.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    for (const auto& a : member(j, "arrows")) {
      auto text = [&](const char* k) {
        const auto& v = member(a, k);
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      d.arrows.push_back({text("name"), text("from"), text("to")});
    }
    if (j.contains("relations"))
      for (const auto& rel : j.at("relations")) {
        std::vector<AlgebraDescription::TermSpec> terms;
        for (const auto& t : rel) {
          AlgebraDescription::TermSpec term;
          term.coeff = scalar_text(member(t, "coeff"));
          for (const auto& a : member(t, "path")) term.path.push_back(a.get<std::string>());
          terms.push_back(std::move(term));
        }
        d.relations.push_back(std::move(terms));
      }
    return d;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed algebra: ") + e.what());
  }
}

json to_json(const AlgebraDescription& d) {
  json j;
  j["field"] = to_json(d.field);
  j["vertices"] = d.vertices;
  j["arrows"] = json::array();
  for (const auto& a : d.arrows) j["arrows"].push_back({{"name", a.name}, {"from", a.from}, {"to", a.to}});
  j["relations"] = json::array();
  for (const auto& rel : d.relations) {
    json r = json::array();
    for (const auto& t : rel) r.push_back({{"coeff", t.coeff}, {"path", t.path}});
    j["relations"].push_back(r);
  }
  return j;
}

template <class K>
AlgebraDescription describe(const Algebra<K>& alg) {
  AlgebraDescription d;
  d.name = alg.name();
  d.field = alg.field();
  const auto& q = alg.quiver();
  d.vertices = q.vertices;
  for (const auto& a : q.arrows) d.arrows.push_back({a.name, q.vertices[a.source], q.vertices[a.target]});
  for (const auto& rel : alg.relations()) {
    std::vector<AlgebraDescription::TermSpec> terms;
    for (const auto& t : rel) {
      AlgebraDescription::TermSpec term;
      term.coeff = t.coeff.str();
      for (int a : t.arrows) term.path.push_back(q.arrows[a].name);
      terms.push_back(std::move(term));
    }
    d.relations.push_back(std::move(terms));
  }
  return d;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("cannot write '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw InputError("cannot write '" + path + "': " + ec.message());
}

AlgebraDescription resolve_algebra_description(const std::string& ref) {
  std::string base = ref;
  const std::string suffix = "^op";
  const bool op = ref.size() > suffix.size() && ref.compare(ref.size() - suffix.size(), suffix.size(), suffix) == 0;
  if (op) base = ref.substr(0, ref.size() - suffix.size());
  for (const auto& n : catalog_names())
    if (n == base) return catalog_description(n);
  if (op) throw InputError("'^op' is only supported on catalog names");
  auto j = read_json_file(ref);
  return description_from_json(j, std::filesystem::path(ref).stem().string());
}

template <class K>
Mat<K> matrix_from_json(const json& j, Index rows, Index cols) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  Mat<K> m = zeros<K>(rows, cols);
  if (rows == 0 || cols == 0) {
    for (const auto& r : j)
      if (!r.is_array() || !r.empty()) throw ParseError("matrix shape mismatch");
    if (!j.empty() && static_cast<Index>(j.size()) != rows) throw ParseError("matrix shape mismatch");
    return m;
  }
  if (static_cast<Index>(j.size()) != rows) throw ParseError("matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("matrix row " + std::to_string(r) + " has the wrong length");
    for (Index c = 0; c < cols; ++c) m(r, c) = K::parse(scalar_text(row[static_cast<std::size_t>(c)]));
  }
  return m;
}

template <class K>
json to_json(const Mat<K>& m) {
  json j = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    j.push_back(row);
  }
  return j;
}

template <class K>
Module<K> module_from_json(const json& j, const AlgPtr<K>& alg) {
  try {
    const auto& q = alg->quiver();
    std::vector<Index> dims(q.num_vertices(), 0);
    if (j.contains("dims"))
      for (const auto& [v, n] : j.at("dims").items()) {
        const long long d = n.template get<long long>();
        if (d < 0) throw ParseError("negative dimension at vertex '" + v + "'");
        dims[q.vertex(v)] = d;
      }
    std::vector<Mat<K>> action;
    for (const auto& a : q.arrows) action.push_back(zeros<K>(dims[a.target], dims[a.source]));
    if (j.contains("arrows"))
      for (const auto& [name, mat] : j.at("arrows").items()) {
        const int a = q.arrow(name);
        action[a] = matrix_from_json<K>(mat, dims[q.arrows[a].target], dims[q.arrows[a].source]);
      }
    return Module<K>(alg, dims, action);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed module: ") + e.what());
  }
}

template <class K>
json to_json(const Module<K>& m, const std::string& algebra_ref) {
  const auto& q = m.algebra()->quiver();
  json j;
  if (!algebra_ref.empty()) j["algebra"] = algebra_ref;
  j["dims"] = json::object();
  for (int v = 0; v < q.num_vertices(); ++v) j["dims"][q.vertices[v]] = m.dim(v);
  j["arrows"] = json::object();
  for (int a = 0; a < q.num_arrows(); ++a) j["arrows"][q.arrows[a].name] = to_json<K>(m.action(a));
  return j;
}

template <class K>
ModuleMap<K> module_map_from_json(const json& j, const Module<K>& source, const Module<K>& target) {
  const auto& q = source.algebra()->quiver();
  std::vector<Mat<K>> comps;
  for (int v = 0; v < q.num_vertices(); ++v) comps.push_back(zeros<K>(target.dim(v), source.dim(v)));
  if (j.contains("vertex_maps"))
    for (const auto& [v, mat] : j.at("vertex_maps").items()) {
      const int i = q.vertex(v);
      comps[i] = matrix_from_json<K>(mat, target.dim(i), source.dim(i));
    }
  return ModuleMap<K>(source, target, std::move(comps));
}

template <class K>
json to_json(const ModuleMap<K>& f) {
  const auto& q = f.source().algebra()->quiver();
  json j;
  j["vertex_maps"] = json::object();
  for (int v = 0; v < q.num_vertices(); ++v) j["vertex_maps"][q.vertices[v]] = to_json<K>(f.at(v));
  return j;
}

template <class K>
Complex<K> complex_from_json(const json& j, const AlgPtr<K>& alg) {
  try {
    std::map<int, Module<K>> terms;
    for (const auto& [deg, m] : member(j, "terms").items()) terms.emplace(degree_key(deg), module_from_json<K>(m, alg));
    if (terms.empty()) return Complex<K>::zero(alg);
    const int lo = terms.begin()->first, hi = terms.rbegin()->first;
    std::vector<Module<K>> ts;
    for (int n = lo; n <= hi; ++n) {
      auto it = terms.find(n);
      ts.push_back(it == terms.end() ? Module<K>::zero(alg) : it->second);
    }
    std::vector<ModuleMap<K>> ds;
    for (int n = lo; n < hi; ++n) ds.push_back(ModuleMap<K>::zero(ts[n - lo], ts[n + 1 - lo]));
    if (j.contains("differentials"))
      for (const auto& [deg, f] : j.at("differentials").items()) {
        const int n = degree_key(deg);
        if (n < lo || n >= hi) throw ParseError("differential at degree " + deg + " leaves the support");
        ds[n - lo] = module_map_from_json<K>(f, ts[n - lo], ts[n + 1 - lo]);
      }
    return Complex<K>(alg, lo, std::move(ts), std::move(ds));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed complex: ") + e.what());
  }
}

template <class K>
json to_json(const Complex<K>& x, const std::string& algebra_ref) {
  json j;
  if (!algebra_ref.empty()) j["algebra"] = algebra_ref;
  j["terms"] = json::object();
  j["differentials"] = json::object();
  if (x.is_zero()) return j;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    j["terms"][std::to_string(n)] = to_json(x.term(n));
    if (n < x.hi()) j["differentials"][std::to_string(n)] = to_json(x.d(n));
  }
  return j;
}

template <class K>
GradedMap<K> graded_map_from_json(const json& j, const Complex<K>& source, const Complex<K>& target) {
  const int degree = j.value("degree", 0);
  std::vector<ModuleMap<K>> comps;
  if (!source.is_zero())
    for (int n = source.lo(); n <= source.hi(); ++n) {
      const auto key = std::to_string(n);
      const auto& s = source.term(n);
      const auto& t = target.term(n + degree);
      if (j.contains("components") && j.at("components").contains(key)) {
        comps.push_back(module_map_from_json<K>(j.at("components").at(key), s, t));
      } else {
        comps.push_back(ModuleMap<K>::zero(s, t));
      }
    }
  return GradedMap<K>(source, target, degree, std::move(comps));
}

template <class K>
json to_json(const GradedMap<K>& f) {
  json j;
  j["degree"] = f.degree();
  j["components"] = json::object();
  const auto& s = f.source();
  if (!s.is_zero())
    for (int n = s.lo(); n <= s.hi(); ++n) {
      auto c = f.at(n);
      if (!c.is_zero()) j["components"][std::to_string(n)] = to_json(c);
    }
  return j;
}

template <class K>
json to_json(const Certificate<K>& c) {
  return {{"f", to_json(c.f)}, {"g", to_json(c.g)}, {"hx", to_json(c.hx)}, {"hy", to_json(c.hy)}};
}

template <class K>
Certificate<K> certificate_from_json(const json& j, const Complex<K>& x, const Complex<K>& y) {
  Certificate<K> c;
  c.f = graded_map_from_json<K>(member(j, "f"), x, y);
  c.g = graded_map_from_json<K>(member(j, "g"), y, x);
  c.hx = graded_map_from_json<K>(member(j, "hx"), x, x);
  c.hy = graded_map_from_json<K>(member(j, "hy"), y, y);
  return c;
}

#define KHOM_INSTANTIATE_IO(K)                                                                    \
  template AlgebraDescription describe<K>(const Algebra<K>&);                                     \
  template Mat<K> matrix_from_json<K>(const json&, Index, Index);                                 \
  template json to_json<K>(const Mat<K>&);                                                        \
  template Module<K> module_from_json<K>(const json&, const AlgPtr<K>&);                          \
  template json to_json<K>(const Module<K>&, const std::string&);                                 \
  template ModuleMap<K> module_map_from_json<K>(const json&, const Module<K>&, const Module<K>&);  \
  template json to_json<K>(const ModuleMap<K>&);                                                  \
  template Complex<K> complex_from_json<K>(const json&, const AlgPtr<K>&);                        \
  template json to_json<K>(const Complex<K>&, const std::string&);                                \
  template GradedMap<K> graded_map_from_json<K>(const json&, const Complex<K>&, const Complex<K>&); \
  template json to_json<K>(const GradedMap<K>&);                                                  \
  template json to_json<K>(const Certificate<K>&);                                                \
  template Certificate<K> certificate_from_json<K>(const json&, const Complex<K>&, const Complex<K>&);

KHOM_INSTANTIATE_IO(Rational)
KHOM_INSTANTIATE_IO(ModP)

}  // namespace khom
