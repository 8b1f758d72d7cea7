#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "khom/catalog.hpp"
#include "khom/error.hpp"
#include "khom/suites.hpp"

using namespace khom;
using Q = Rational;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("algebra descriptions round-trip") {
  for (const auto& n : catalog_names()) {
    auto d = catalog_description(n);
    auto back = description_from_json(to_json(d));
    CHECK(to_json(back) == to_json(d));
    CHECK(load_algebra<Q>(back)->same_as(*catalog_algebra<Q>(n)));
  }
  auto cyclic = json::parse(R"({"vertices": ["1", "2"], "arrows": [
      {"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}]})");
  CHECK_THROWS_AS(load_algebra<Q>(description_from_json(cyclic)), InputError);
  CHECK_THROWS_AS(description_from_json(json::parse(R"({"arrows": []})")), ParseError);
  CHECK_THROWS_AS(field_from_json(json::parse(R"({"kind": "prime", "p": 6})")), InputError);
}

TEST_CASE("modules and complexes round-trip") {
  auto n3 = catalog_algebra<Q>("n3");
  auto m = injective<Q>(n3, 2);
  auto mj = to_json(m, "n3");
  CHECK(module_from_json<Q>(mj, n3) == m);
  CHECK(to_json(module_from_json<Q>(mj, n3), "n3") == mj);

  auto x = lambda(simple<Q>(n3, 0));
  auto xj = to_json(x, "n3");
  auto y = complex_from_json<Q>(xj, n3);
  CHECK(to_json(y, "n3") == xj);
  CHECK(hom_K_dim(x, y) == hom_K_dim(x, x));

  auto c = certified_equivalence(x, y, 3);
  REQUIRE(c);
  auto back = certificate_from_json<Q>(to_json(*c), x, y);
  CHECK(back.verify());
  CHECK(to_json(back) == to_json(*c));
}

TEST_CASE("malformed complexes are rejected") {
  auto a2 = catalog_algebra<Q>("a2");
  auto x = lambda(simple<Q>(a2, 0));
  auto j = to_json(x, "a2");
  auto bad = j;
  bad["differentials"]["-1"]["vertex_maps"]["1"] = json::array({json::array({"1", "1"})});
  CHECK_THROWS_AS(complex_from_json<Q>(bad, a2), InputError);
  auto scalar = j;
  scalar["differentials"]["-2"]["vertex_maps"]["2"] = json::array({json::array({"x"})});
  CHECK_THROWS(complex_from_json<Q>(scalar, a2));
}

TEST_CASE("shipped fixtures match the knitting oracle byte for byte") {
  for (const auto& n : catalog_names()) {
    const auto path = fixture_path(n);
    REQUIRE(std::filesystem::exists(path));
    CHECK(slurp(path) == fixture_text(knit(n)));
  }
}

TEST_CASE("fixture contents") {
  auto a2 = load_fixture<Q>("a2");
  CHECK(a2.gldim == 1);
  CHECK(a2.modules.size() == 3);
  CHECK(a2.tau == std::map<std::string, std::string>{{"S1", "S2"}});
  auto a3 = load_fixture<Q>("a3");
  CHECK(a3.modules.size() == 6);
  CHECK(a3.tau.at("M12") == "M23");
  CHECK(a3.tau.at("S1") == "S2");
  CHECK(a3.tau.at("S2") == "S3");
  auto n3 = load_fixture<Q>("n3");
  CHECK(n3.gldim == 2);
  CHECK(n3.modules.size() == 5);
  CHECK(n3.find("M12").projective);
  CHECK(n3.tau == std::map<std::string, std::string>{{"S1", "S2"}, {"S2", "S3"}});
  auto d4 = load_fixture<Q>("d4");
  CHECK(d4.modules.size() == 12);
  CHECK(d4.tau.size() == 8);
  CHECK_THROWS_AS(knit("cyclic"), InputError);
}

TEST_CASE("fixtures load over a prime field") {
  PrimeScope scope(7);
  auto f = load_fixture<ModP>("d4");
  for (const auto& m : f.modules) CHECK(hom_dim(m.module, m.module) == 1);
}

TEST_CASE("suite reports") {
  auto r = verify_suite("d-duality", "a2", 5, 10);
  CHECK(r.cases.size() == 10);
  CHECK(r.pass());
  auto j = r.to_json();
  CHECK(j["suite"] == "d-duality");
  CHECK(j["seed"] == 5);
  CHECK(j.contains("elapsed_ms"));
  CHECK(j["version"] == kVersion);
  CHECK(verify_suite("d-duality", "a2", 5, 10).to_json()["cases"] == j["cases"]);
  CHECK_THROWS_AS(verify_suite("nope", "a2", 1, 1), InputError);
  CHECK_THROWS_AS(verify_suite("ar-triangles", "a2", 1, 1, 5), InputError);
  CHECK(verify_suite("serre-duality", "a3", 2, 12, 5).pass());
}

TEST_CASE("calibrate_shift picks the first passing shift") {
  CHECK(calibrate_shift([](int s) { return s * s == 4; }) == -2);
  CHECK_FALSE(calibrate_shift([](int) { return false; }));
}
