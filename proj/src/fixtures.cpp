#include "khom/fixtures.hpp"

#include <array>

#include "khom/catalog.hpp"
#include "khom/error.hpp"
#include "khom/modrep.hpp"

#ifndef KHOM_DATA_DIR
#define KHOM_DATA_DIR "data"
#endif

namespace khom {

namespace {

using Q = Rational;

Module<Q> representation(const AlgPtr<Q>& alg, const std::vector<Index>& dims, const std::vector<Mat<Q>>& maps) {
  return Module<Q>(alg, dims, maps);
}

// Interval [i, j] (0-based, inclusive) over a linearly oriented quiver.
Module<Q> interval(const AlgPtr<Q>& alg, int i, int j) {
  const auto& q = alg->quiver();
  std::vector<Index> dims(q.num_vertices(), 0);
  for (int v = i; v <= j; ++v) dims[v] = 1;
  std::vector<Mat<Q>> maps;
  for (const auto& a : q.arrows) {
    Mat<Q> m = zeros<Q>(dims[a.target], dims[a.source]);
    if (dims[a.source] == 1 && dims[a.target] == 1) m(0, 0) = Q(1);
    maps.push_back(m);
  }
  return representation(alg, dims, maps);
}

std::string interval_name(int i, int j) {
  if (i == j) return "S" + std::to_string(i + 1);
  return "M" + std::to_string(i + 1) + std::to_string(j + 1);
}

std::vector<FixtureModule<Q>> linear_indecomposables(const AlgPtr<Q>& alg) {
  std::vector<FixtureModule<Q>> out;
  const int n = alg->num_vertices();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // the interval is a module only if no relation lives inside it
      if (alg->dim(i, j) == 0) continue;
      FixtureModule<Q> f;
      f.name = interval_name(i, j);
      f.label = "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
      f.module = interval(alg, i, j);
      out.push_back(std::move(f));
    }
  return out;
}

std::vector<FixtureModule<Q>> d4_indecomposables(const AlgPtr<Q>& alg) {
  // dimension vectors (d1, d2, d3; d4) of the positive roots
  const std::vector<std::array<Index, 4>> roots{{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1},
                                                {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 1},
                                                {1, 1, 1, 2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  std::vector<FixtureModule<Q>> out;
  for (const auto& r : roots) {
    std::vector<Index> dims(r.begin(), r.end());
    std::vector<Mat<Q>> maps;
    for (int a = 0; a < 3; ++a) {
      Mat<Q> m = zeros<Q>(r[3], r[a]);
      if (r[a] == 1 && r[3] == 1) m(0, 0) = Q(1);
      if (r[a] == 1 && r[3] == 2) {
        // three pairwise independent lines in k^2
        m(0, 0) = Q(a == 1 ? 0 : 1);
        m(1, 0) = Q(a == 0 ? 0 : 1);
      }
      maps.push_back(m);
    }
    FixtureModule<Q> f;
    Index total = 0;
    int only = -1;
    for (int v = 0; v < 4; ++v) {
      total += r[v];
      if (r[v] > 0) only = v;
    }
    std::string digits;
    for (auto d : r) digits += std::to_string(d);
    f.name = total == 1 ? "S" + std::to_string(only + 1) : "M" + digits;
    f.label = "(" + std::to_string(r[0]) + "," + std::to_string(r[1]) + "," + std::to_string(r[2]) + ";" +
              std::to_string(r[3]) + ")";
    f.module = representation(alg, dims, maps);
    out.push_back(std::move(f));
  }
  return out;
}

// D Tr from a minimal presentation.
Module<Q> tau_minimal(const Module<Q>& m) {
  auto r = minimal_proj_resolution(m);
  if (r.length() == 0) return Module<Q>::zero(m.algebra());
  auto tr = cokernel(r.maps[0].dual().to_module()).module;
  return dual_D(tr);
}

}  // namespace

template <class K>
const FixtureModule<K>& Fixture<K>::find(const std::string& name) const {
  for (const auto& m : modules)
    if (m.name == name) return m;
  throw InputError("no fixture module '" + name + "' for " + algebra);
}

Fixture<Rational> knit(const std::string& name) {
  auto alg = catalog_algebra<Q>(name);
  Fixture<Q> f;
  f.algebra = name;
  f.gldim = global_dimension(alg);
  if (name == "d4")
    f.modules = d4_indecomposables(alg);
  else
    f.modules = linear_indecomposables(alg);
  for (auto& m : f.modules) {
    if (hom_dim(m.module, m.module) != 1) throw MathError("knitting: " + m.label + " is not a brick");
    m.projective = minimal_proj_resolution(m.module).length() == 0;
    m.injective = minimal_proj_resolution(dual_D(m.module)).length() == 0;
  }
  std::map<std::string, int> hits;
  for (const auto& m : f.modules) {
    if (m.projective) continue;
    auto t = tau_minimal(m.module);
    std::string found;
    for (const auto& c : f.modules)
      if (c.module.dims() == t.dims() && is_isomorphic(c.module, t)) found = c.name;
    if (found.empty()) throw MathError("knitting: τ" + m.label + " is not in the list");
    f.tau[m.name] = found;
    ++hits[found];
  }
  for (const auto& m : f.modules) {
    const int h = hits.count(m.name) ? hits[m.name] : 0;
    if (h != (m.injective ? 0 : 1)) throw MathError("knitting: τ is not a bijection onto the non-injectives");
  }
  return f;
}

std::string fixture_text(const Fixture<Rational>& f) {
  json j;
  j["algebra"] = f.algebra;
  j["gldim"] = f.gldim;
  j["indecomposables"] = json::array();
  for (const auto& m : f.modules)
    j["indecomposables"].push_back({{"name", m.name},
                                    {"label", m.label},
                                    {"projective", m.projective},
                                    {"injective", m.injective},
                                    {"module", to_json(m.module)}});
  j["tau"] = f.tau;
  return j.dump(2) + "\n";
}

std::string default_fixture_dir() { return std::string(KHOM_DATA_DIR) + "/fixtures"; }

std::string fixture_path(const std::string& algebra, const std::string& dir) {
  return dir + "/" + algebra + ".json";
}

template <class K>
Fixture<K> load_fixture(const std::string& algebra, const std::string& dir) {
  auto j = read_json_file(fixture_path(algebra, dir));
  auto alg = catalog_algebra<K>(algebra);
  Fixture<K> f;
  try {
    f.algebra = j.at("algebra").get<std::string>();
    f.gldim = j.at("gldim").get<int>();
    for (const auto& e : j.at("indecomposables")) {
      FixtureModule<K> m;
      m.name = e.at("name").get<std::string>();
      m.label = e.at("label").get<std::string>();
      m.projective = e.at("projective").get<bool>();
      m.injective = e.at("injective").get<bool>();
      m.module = module_from_json<K>(e.at("module"), alg);
      f.modules.push_back(std::move(m));
    }
    f.tau = j.at("tau").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw ParseError("malformed fixture for " + algebra + ": " + e.what());
  }
  return f;
}

template struct Fixture<Rational>;
template struct Fixture<ModP>;
template Fixture<Rational> load_fixture<Rational>(const std::string&, const std::string&);
template Fixture<ModP> load_fixture<ModP>(const std::string&, const std::string&);

}  // namespace khom
