// Acceptance run: one PASS/FAIL line per criterion. All comparisons are exact
// (dimensions are integers, maps are over Q), so the tolerance is zero.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "khom/catalog.hpp"
#include "khom/error.hpp"
#include "khom/suites.hpp"

using namespace khom;
using Q = Rational;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr int kPairs = 50;

const std::vector<std::string> kAlgebras{"a2", "a3", "n3", "d4"};

struct Tally {
  std::size_t cases = 0, failed = 0;
  std::string first_failure;

  void add(const std::string& where, const std::vector<Case>& cs) {
    for (const auto& c : cs) {
      ++cases;
      if (!c.pass) {
        if (failed++ == 0) first_failure = where + ": " + c.description + " lhs=" + c.lhs.dump() + " rhs=" + c.rhs.dump();
      }
    }
  }
  void check(const std::string& what, bool ok) {
    ++cases;
    if (!ok && failed++ == 0) first_failure = what;
  }
  bool pass() const { return failed == 0 && cases > 0; }
};

int failures = 0;

void report(int n, const Tally& t, const std::string& extra = "") {
  std::cout << "criterion " << n << ": " << (t.pass() ? "PASS" : "FAIL") << " (" << t.cases - t.failed << "/" << t.cases
            << " checks" << (extra.empty() ? "" : ", " + extra) << ")";
  if (!t.pass()) {
    ++failures;
    std::cout << " first failure: " << t.first_failure;
  }
  std::cout << std::endl;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Battery<Q>& battery(const std::string& name) {
  static std::map<std::string, Battery<Q>> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_battery<Q>(name, catalog_algebra<Q>(name))).first;
  return it->second;
}

template <class F>
void guarded(Tally& t, const std::string& where, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    t.check(where + " threw: " + e.what(), false);
  }
}

void criterion1() {
  Tally t;
  guarded(t, "dims", [&] {
    t.check("gldim(a2) = 1", global_dimension(catalog_algebra<Q>("a2")) == 1);
    t.check("gldim(a3) = 1", global_dimension(catalog_algebra<Q>("a3")) == 1);
    t.check("gldim(n3) = 2", global_dimension(catalog_algebra<Q>("n3")) == 2);
    t.check("dim(a2) = 3", catalog_algebra<Q>("a2")->dim() == 3);
    t.check("dim(n3) = 5", catalog_algebra<Q>("n3")->dim() == 5);
    for (const auto& a : kAlgebras) {
      const auto path = fixture_path(a);
      t.check(a + " fixture regenerates byte for byte",
              std::filesystem::exists(path) && slurp(path) == fixture_text(knit(a)));
    }
  });
  report(1, t);
}

template <class F>
void per_algebra(int n, F&& cases_for) {
  Tally t;
  std::string counts;
  for (const auto& a : kAlgebras)
    guarded(t, a, [&] {
      auto cs = cases_for(battery(a));
      counts += (counts.empty() ? "" : " ") + a + "=" + std::to_string(cs.size());
      t.add(a, cs);
    });
  report(n, t, counts);
}

void criterion4() {
  Tally t;
  std::string counts;
  for (const auto& a : kAlgebras)
    guarded(t, a, [&] {
      auto cs = phi_cases(battery(a), kSeed, kPairs);
      std::size_t pairs = 0;
      bool certified = false;
      for (const auto& c : cs) {
        if (c.description.rfind("hom_K(", 0) == 0) ++pairs;
        if (c.description.rfind("phi(stalk of the regular", 0) == 0) certified = c.pass && c.certificate.has_value();
      }
      t.check(a + ": at least 50 pairs", pairs >= 50);
      t.check(a + ": regular module certificate", certified);
      counts += (counts.empty() ? "" : " ") + a + "=" + std::to_string(pairs);
      t.add(a, cs);
    });
  report(4, t, "pairs " + counts);
}

void criterion6() {
  Tally t;
  std::optional<int> t0;
  for (const auto& a : kAlgebras)
    guarded(t, a, [&] {
      std::optional<int> here;
      t.add(a, comm_tr_cases(battery(a), kSeed, here));
      t.check(a + ": t0 found", here.has_value());
      if (here) {
        if (!t0) t0 = here;
        t.check(a + ": t0 constant", *t0 == *here);
      }
    });
  report(6, t, t0 ? "t0=" + std::to_string(*t0) : "t0 not found");
}

void criterion7() {
  Tally t;
  std::optional<int> s0;
  for (const auto& a : kAlgebras)
    guarded(t, a, [&] {
      std::optional<int> here;
      auto cs = final_diagram_cases(battery(a), kSeed, here);
      std::size_t tau_checks = 0;
      for (const auto& c : cs) tau_checks += c.description.rfind("tau(", 0) == 0 ? 1 : 0;
      t.check(a + ": tau cross-checked against fixtures", tau_checks == battery(a).tau.size());
      t.add(a, cs);
      t.check(a + ": s0 found", here.has_value());
      if (here) {
        if (!s0) s0 = here;
        t.check(a + ": s0 constant", *s0 == *here);
      }
    });
  report(7, t, s0 ? "s0=" + std::to_string(*s0) : "s0 not found");
}

void criterion9() {
  Tally t;
  guarded(t, "structure", [&] {
    std::size_t random = 0, contractible = 0;
    for (const auto& a : kAlgebras) {
      const auto& b = battery(a);
      auto pool = object_pool(b, kSeed, 25);
      for (const auto& p : pool) {
        const auto& x = p.complex;
        auto c = cone(ChainMap<Q>::identity(x));
        auto h = is_contractible(c);
        t.check(a + ": cone(id) contractible for " + p.name, h && boundary_of(*h) == ChainMap<Q>::identity(c));
        auto m = minimize(x, kSeed);
        t.check(a + ": minimize certificate for " + p.name, m.certificate.verify());
        t.check(a + ": D D X = X for " + p.name, dual_D(dual_D(x)) == x);
        if (p.name.rfind("random3#", 0) == 0) {
          // every other one is replaced by a shifted cone of c * id, which is contractible
          auto y = x;
          if (random % 2 == 1) {
            const Q c(static_cast<long>(random % 5) + 1);
            y = shift(cone(ChainMap<Q>::identity(x).scaled(c)), static_cast<int>(random % 3) - 1);
          }
          ++random;
          const bool h = is_contractible(y).has_value();
          contractible += h ? 1 : 0;
          t.check(a + ": contractible implies acyclic for " + p.name, !h || is_acyclic(y));
        }
      }
      for (const auto& m : b.modules) {
        t.check(a + ": D D M = M for " + m.name, dual_D(dual_D(m.module)) == m.module);
        auto l = lambda(m.module);
        t.check(a + ": lambda(" + m.name + ") acyclic", is_acyclic(l));
        if (!m.projective) t.check(a + ": lambda(" + m.name + ") not contractible", !is_contractible(l).has_value());
        auto ml = minimize(l, kSeed);
        t.check(a + ": minimize certificate for lambda(" + m.name + ")", ml.certificate.verify());
      }
    }
    t.check("100 random complexes", random == 100);
    std::cout << "  random complexes: " << random << ", contractible among them: " << contractible << std::endl;
  });
  report(9, t);
}

void criterion10() {
  Tally t;
  guarded(t, "a2 controls", [&] {
    auto a2 = catalog_algebra<Q>("a2");
    auto l = lambda(simple<Q>(a2, 0));
    const auto same = hom_K_dim(l, l);
    const auto shifted = hom_K_dim(l, shift(l, 1));
    t.check("hom_K(lambda S1, lambda S1) = 1", same == 1);
    t.check("hom_K(lambda S1, lambda S1[1]) = 0", shifted == 0);
    auto r = homotopy_equivalent(l, shift(l, 1), kSeed, 8);
    t.check("lambda S1 and lambda S1[1] not equivalent with witness",
            r.status == Equivalence<Q>::Status::not_equivalent && !r.witness.empty());
    std::cout << "  witness: " << r.witness << std::endl;
    auto p1 = projective<Q>(a2, 0);
    auto id = ModuleMap<Q>::identity(p1);
    bool rejected = false;
    try {
      Complex<Q>(a2, 0, {p1, p1, p1}, {id, id});
    } catch (const StructureError&) {
      rejected = true;
    }
    t.check("d^2 != 0 rejected at construction", rejected);
  });
  report(10, t);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::cout << "acceptance: seed " << kSeed << ", " << kPairs << " pairs per algebra, exact comparisons (tolerance 0)"
            << std::endl;
  criterion1();
  per_algebra(2, [](const Battery<Q>& b) { return serre_u_cases(b, kSeed, kPairs); });
  per_algebra(3, [](const Battery<Q>& b) { return serre_s_cases(b, kSeed, kPairs); });
  criterion4();
  per_algebra(5, [](const Battery<Q>& b) { return lambda_embedding_cases(b); });
  criterion6();
  criterion7();
  per_algebra(8, [](const Battery<Q>& b) { return ar_cases(b, kSeed); });
  criterion9();
  criterion10();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "acceptance: " << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail")
            << " in " << secs << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
