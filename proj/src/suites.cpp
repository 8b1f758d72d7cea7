#include "khom/suites.hpp"

#include <chrono>
#include <filesystem>
#include <type_traits>

#include "khom/catalog.hpp"
#include "khom/error.hpp"

namespace khom {

bool Report::pass() const {
  for (const auto& c : cases)
    if (!c.pass) return false;
  return true;
}

json Report::to_json() const {
  json j;
  j["suite"] = suite;
  j["algebra"] = algebra;
  j["seed"] = seed;
  j["cases"] = json::array();
  for (const auto& c : cases) {
    json e = {{"description", c.description}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
    if (c.certificate) e["certificate"] = *c.certificate;
    j["cases"].push_back(std::move(e));
  }
  j["constants"] = constants;
  j["elapsed_ms"] = elapsed_ms;
  j["version"] = kVersion;
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"serre-duality", "phi-duality",  "lambda-embedding", "comm-tr",
                                              "final-diagram", "ar-triangles", "d-duality"};
  return names;
}

namespace {

bool is_catalog(const std::string& name) {
  for (const auto& n : catalog_names())
    if (n == name) return true;
  return false;
}

Case dim_case(std::string description, Index lhs, Index rhs) {
  Case c;
  c.description = std::move(description);
  c.lhs = lhs;
  c.rhs = rhs;
  c.pass = lhs == rhs;
  return c;
}

template <class K>
Case equivalence_case(std::string description, const Complex<K>& x, const Complex<K>& y, std::uint64_t seed) {
  Case c;
  c.description = std::move(description);
  auto cert = certified_equivalence(x, y, seed);
  c.lhs = {{"total_dim", x.total_dim()}};
  c.rhs = {{"total_dim", y.total_dim()}};
  c.pass = cert.has_value();
  if (cert) c.certificate = to_json(*cert);
  return c;
}

template <class K>
Complex<K> random_three_term(const Battery<K>& b, std::mt19937_64& rng) {
  auto pick = [&]() -> const Module<K>& {
    return b.modules[std::uniform_int_distribution<std::size_t>(0, b.modules.size() - 1)(rng)].module;
  };
  const auto& a = pick();
  const auto& m = pick();
  const auto& c = pick();
  auto f = ModuleMap<K>::zero(a, m);
  for (const auto& e : hom_basis(a, m)) f = f + e.scaled(K::random(rng, 3));
  auto g = ModuleMap<K>::zero(m, c);
  auto gs = hom_basis(m, c);
  if (!gs.empty()) {
    Mat<K> sys(flat_size(a, c), static_cast<Index>(gs.size()));
    for (std::size_t k = 0; k < gs.size(); ++k) sys.col(static_cast<Index>(k)) = flatten(gs[k] * f);
    Mat<K> ker = sys.rows() == 0 ? identity<K>(static_cast<Index>(gs.size())) : kernel_basis<K>(sys);
    for (Index k = 0; k < ker.cols(); ++k) {
      const K s = K::random(rng, 3);
      for (std::size_t i = 0; i < gs.size(); ++i)
        if (!ker(static_cast<Index>(i), k).is_zero()) g = g + gs[i].scaled(s * ker(static_cast<Index>(i), k));
    }
  }
  const int lo = std::uniform_int_distribution<int>(-1, 1)(rng);
  return Complex<K>(b.alg, lo, {a, m, c}, {f, g});
}

struct Pair {
  std::size_t i, j;
  Index lhs;
};

// Random pairs, with at most half of them having lhs == 0 when the pool allows.
std::vector<Pair> sample_pairs(std::size_t n, int trials, std::uint64_t seed,
                               const std::function<Index(std::size_t, std::size_t)>& lhs) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> d(0, n - 1);
  std::vector<Pair> out, zeros;
  const int zero_quota = trials - trials / 2;
  int zero_taken = 0;
  for (int attempt = 0; attempt < 40 * trials && static_cast<int>(out.size()) < trials; ++attempt) {
    const std::size_t i = d(rng);
    const std::size_t j = d(rng);
    const Index v = lhs(i, j);
    if (v != 0 || zero_taken < zero_quota) {
      zero_taken += v == 0 ? 1 : 0;
      out.push_back({i, j, v});
    } else if (zeros.size() < static_cast<std::size_t>(trials)) {
      zeros.push_back({i, j, v});
    }
  }
  for (std::size_t k = 0; static_cast<int>(out.size()) < trials && k < zeros.size(); ++k) out.push_back(zeros[k]);
  return out;
}

template <class K>
class Lazy {
 public:
  explicit Lazy(std::function<Complex<K>(std::size_t)> make) : make_(std::move(make)) {}
  const Complex<K>& operator()(std::size_t i) {
    auto it = cache_.find(i);
    if (it == cache_.end()) it = cache_.emplace(i, make_(i)).first;
    return it->second;
  }

 private:
  std::function<Complex<K>(std::size_t)> make_;
  std::map<std::size_t, Complex<K>> cache_;
};

template <class K>
const Battery<K>& a2_battery() {
  static thread_local std::map<std::string, Battery<K>> cache;
  const auto key = K::field().str();
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_battery<K>("a2", catalog_algebra<K>("a2"))).first;
  return it->second;
}

}  // namespace

template <class K>
Battery<K> Battery<K>::opposite() const {
  Battery<K> o;
  o.name = name + "^op";
  o.alg = alg->opposite();
  for (const auto& m : modules) {
    FixtureModule<K> d;
    d.name = "D" + m.name;
    d.label = "D" + m.label;
    d.module = dual_D(m.module);
    d.projective = m.injective;
    d.injective = m.projective;
    o.modules.push_back(std::move(d));
  }
  return o;
}

template <class K>
Battery<K> make_battery(const std::string& name, const AlgPtr<K>& alg) {
  Battery<K> b;
  b.name = name;
  b.alg = alg;
  if (is_catalog(name) && std::filesystem::exists(fixture_path(name))) {
    auto f = load_fixture<K>(name);
    b.modules = std::move(f.modules);
    b.tau = std::move(f.tau);
    b.from_fixture = true;
    return b;
  }
  auto add = [&](const std::string& n, const Module<K>& m) {
    for (const auto& e : b.modules)
      if (e.module.dims() == m.dims() && is_isomorphic(e.module, m)) return;
    FixtureModule<K> f;
    f.name = n;
    f.label = n;
    f.module = m;
    f.projective = is_projective(m);
    f.injective = is_injective(m);
    b.modules.push_back(std::move(f));
  };
  for (int i = 0; i < alg->num_vertices(); ++i) {
    const auto v = std::to_string(i + 1);
    add("S" + v, simple<K>(alg, i));
    add("P" + v, projective<K>(alg, i));
    add("I" + v, injective<K>(alg, i));
  }
  return b;
}

template <class K>
std::vector<Probe<K>> object_pool(const Battery<K>& b, std::uint64_t seed, int random_count) {
  std::vector<Probe<K>> pool;
  for (const auto& m : b.modules)
    for (int s = -2; s <= 2; ++s)
      pool.push_back({"stalk(" + m.name + "," + std::to_string(s) + ")", Complex<K>::stalk(m.module, s)});
  for (const auto& m : b.modules) pool.push_back({"lambda(" + m.name + ")", lambda(m.module)});
  std::mt19937_64 rng(seed ^ 0x3a3a3a3aULL);
  for (int k = 0; k < random_count; ++k)
    pool.push_back({"random3#" + std::to_string(k), random_three_term(b, rng)});
  return pool;
}

template <class K>
std::optional<Certificate<K>> certified_equivalence(const Complex<K>& x, const Complex<K>& y, std::uint64_t seed) {
  auto mx = minimize(x, seed);
  auto my = minimize(y, seed + 1);
  auto r = homotopy_equivalent(mx.complex, my.complex, seed, 8);
  if (r.status != Equivalence<K>::Status::equivalent) return std::nullopt;
  auto full = mx.certificate.then(*r.certificate).then(my.certificate.inverse());
  if (!full.verify()) return std::nullopt;
  return full;
}

std::optional<int> calibrate_shift(const std::function<bool(int)>& test) {
  for (int s = -4; s <= 4; ++s)
    if (test(s)) return s;
  return std::nullopt;
}

template <class K>
std::vector<Case> serre_u_cases(const Battery<K>& b, std::uint64_t seed, int trials) {
  auto pool = object_pool(b, seed);
  Lazy<K> su([&](std::size_t i) { return serre_U(pool[i].complex); });
  std::vector<Case> out;
  auto hk = [&](std::size_t i, std::size_t j) { return hom_K_dim(pool[i].complex, pool[j].complex); };
  for (auto [i, j, lhs] : sample_pairs(pool.size(), trials, seed, hk)) {
    const auto& x = pool[i];
    const auto& y = pool[j];
    out.push_back(dim_case("hom_K(" + x.name + ", " + y.name + ") = hom_K(" + y.name + ", serre_U(" + x.name + "))",
                           lhs, hom_K_dim(y.complex, su(i))));
  }
  return out;
}

template <class K>
std::vector<Case> serre_s_cases(const Battery<K>& b, std::uint64_t seed, int trials) {
  std::vector<Probe<K>> pool;
  for (const auto& m : b.modules)
    for (int s = -1; s <= 1; ++s) {
      const auto sh = std::to_string(s);
      pool.push_back({"shift(lambda(" + m.name + ")," + sh + ")", shift(lambda(m.module), s)});
      pool.push_back({"shift(lambda_prime(" + m.name + ")," + sh + ")", shift(lambda_prime(m.module), s)});
    }
  Lazy<K> ss([&](std::size_t i) { return serre_S(pool[i].complex, seed); });
  std::vector<Case> out;
  auto hk = [&](std::size_t i, std::size_t j) { return hom_K_dim(pool[i].complex, pool[j].complex); };
  for (auto [i, j, lhs] : sample_pairs(pool.size(), trials, seed + 17, hk)) {
    const auto& x = pool[i];
    const auto& y = pool[j];
    out.push_back(dim_case("hom_K(" + x.name + ", " + y.name + ") = hom_K(" + y.name + ", serre_S(" + x.name + "))",
                           lhs, hom_K_dim(y.complex, ss(i))));
  }
  return out;
}

template <class K>
std::vector<Case> phi_cases(const Battery<K>& b, std::uint64_t seed, int trials) {
  auto ob = b.opposite();
  auto pool = object_pool(ob, seed);
  Lazy<K> ph([&](std::size_t i) { return phi(pool[i].complex); });
  std::vector<Case> out;
  auto hk = [&](std::size_t i, std::size_t j) { return hom_K_dim(pool[i].complex, pool[j].complex); };
  for (auto [i, j, lhs] : sample_pairs(pool.size(), trials, seed + 29, hk)) {
    const auto& x = pool[i];
    const auto& y = pool[j];
    out.push_back(dim_case("hom_K(" + x.name + ", " + y.name + ") = hom_K(phi(" + y.name + "), phi(" + x.name + "))",
                           lhs, hom_K_dim(ph(j), ph(i))));
  }
  const auto& op = ob.alg;
  std::vector<Module<K>> pop, pa;
  for (int i = 0; i < op->num_vertices(); ++i) {
    pop.push_back(projective<K>(op, i));
    pa.push_back(projective<K>(b.alg, i));
  }
  auto reg_op = direct_sum<K>(op, pop).module;
  auto reg = direct_sum<K>(b.alg, pa).module;
  out.push_back(equivalence_case<K>("phi(stalk of the regular module over the opposite) ~ stalk of the regular module",
                                    phi(Complex<K>::stalk(reg_op, 0)), Complex<K>::stalk(reg, 0), seed));
  for (int i = 0; i < op->num_vertices(); ++i) {
    auto m = minimize(phi(Complex<K>::stalk(pop[static_cast<std::size_t>(i)], 0)), seed);
    bool all = m.certificate.verify();
    if (!m.complex.is_zero())
      for (int n = m.complex.lo(); n <= m.complex.hi(); ++n) all = all && is_projective(m.complex.term(n));
    Case c;
    c.description = "phi(stalk P" + std::to_string(i + 1) + " over the opposite) is a complex of projectives";
    c.lhs = all;
    c.rhs = true;
    c.pass = all;
    out.push_back(std::move(c));
  }
  return out;
}

template <class K>
std::vector<Case> lambda_embedding_cases(const Battery<K>& b) {
  std::vector<Complex<K>> l, lp;
  for (const auto& m : b.modules) {
    l.push_back(lambda(m.module));
    lp.push_back(lambda_prime(m.module));
  }
  std::vector<Case> out;
  for (std::size_t i = 0; i < b.modules.size(); ++i)
    for (std::size_t j = 0; j < b.modules.size(); ++j) {
      const auto& m = b.modules[i];
      const auto& n = b.modules[j];
      out.push_back(dim_case("hom_K(lambda(" + m.name + "), lambda(" + n.name + ")) = stable Hom(" + m.name + ", " +
                                 n.name + ") mod projectives",
                             hom_K_dim(l[i], l[j]), stable_hom(m.module, n.module, StableSide::projectives).dim()));
      out.push_back(dim_case("hom_K(lambda_prime(" + m.name + "), lambda_prime(" + n.name + ")) = stable Hom(" +
                                 m.name + ", " + n.name + ") mod injectives",
                             hom_K_dim(lp[i], lp[j]), stable_hom(m.module, n.module, StableSide::injectives).dim()));
    }
  return out;
}

template <class K>
std::vector<Case> d_duality_cases(const Battery<K>& b, std::uint64_t seed, int trials) {
  auto pool = object_pool(b, seed);
  Lazy<K> dd([&](std::size_t i) { return dual_D(pool[i].complex); });
  std::vector<Case> out;
  auto hk = [&](std::size_t i, std::size_t j) { return hom_K_dim(pool[i].complex, pool[j].complex); };
  for (auto [i, j, lhs] : sample_pairs(pool.size(), trials, seed + 41, hk)) {
    const auto& x = pool[i];
    const auto& y = pool[j];
    out.push_back(dim_case("hom_K(" + x.name + ", " + y.name + ") = hom_K(D " + y.name + ", D " + x.name + ")",
                           lhs, hom_K_dim(dd(j), dd(i))));
  }
  return out;
}

namespace {

template <class K>
Complex<K> comm_tr_lhs(const Module<K>& m, std::uint64_t seed) {
  return minimize(quotient_model(phi(Complex<K>::stalk(m, 0)), Side::prj), seed).complex;
}

template <class K>
Complex<K> final_lhs(const Module<K>& m, std::uint64_t seed) {
  return serre_S(lambda(m), seed);
}

}  // namespace

template <class K>
std::vector<Case> comm_tr_cases(const Battery<K>& b, std::uint64_t seed, std::optional<int>& t0) {
  auto cal = a2_battery<K>().opposite();
  std::vector<std::pair<Complex<K>, Complex<K>>> ref;
  for (const auto& m : cal.modules)
    if (!m.projective) ref.emplace_back(comm_tr_lhs(m.module, seed), lambda(transpose(m.module)));
  t0 = calibrate_shift([&](int t) {
    for (const auto& [x, y] : ref)
      if (!certified_equivalence(x, shift(y, t), seed)) return false;
    return true;
  });
  std::vector<Case> out;
  auto ob = b.opposite();
  for (const auto& m : ob.modules) {
    if (m.projective) continue;
    const std::string d = "quotient_model(phi(stalk " + m.name + "), prj) ~ lambda(transpose(" + m.name + "))[t0]";
    if (!t0) {
      Case c;
      c.description = d + ": no t0 in [-4, 4]";
      out.push_back(std::move(c));
      continue;
    }
    out.push_back(equivalence_case<K>(d, comm_tr_lhs(m.module, seed), shift(lambda(transpose(m.module)), *t0), seed));
  }
  return out;
}

template <class K>
std::vector<Case> final_diagram_cases(const Battery<K>& b, std::uint64_t seed, std::optional<int>& s0) {
  const auto& cal = a2_battery<K>();
  std::vector<std::pair<Complex<K>, Complex<K>>> ref;
  for (const auto& m : cal.modules)
    if (!m.projective) ref.emplace_back(final_lhs(m.module, seed), lambda_prime(tau(m.module)));
  s0 = calibrate_shift([&](int s) {
    for (const auto& [x, y] : ref)
      if (!certified_equivalence(shift(x, s), y, seed)) return false;
    return true;
  });
  std::vector<Case> out;
  for (const auto& m : b.modules) {
    if (m.projective) continue;
    auto t = tau(m.module);
    if (b.from_fixture) {
      Case c;
      c.description = "tau(" + m.name + ") agrees with the knitting fixture";
      auto it = b.tau.find(m.name);
      c.rhs = it == b.tau.end() ? json(nullptr) : json(it->second);
      c.lhs = json(nullptr);
      if (it != b.tau.end()) {
        for (const auto& e : b.modules)
          if (e.name == it->second && e.module.dims() == t.dims() && is_isomorphic(e.module, t)) c.lhs = e.name;
      }
      c.pass = !c.lhs.is_null() && c.lhs == c.rhs;
      out.push_back(std::move(c));
    }
    const std::string d = "serre_S(lambda(" + m.name + "))[s0] ~ lambda_prime(tau(" + m.name + "))";
    if (!s0) {
      Case c;
      c.description = d + ": no s0 in [-4, 4]";
      out.push_back(std::move(c));
      continue;
    }
    out.push_back(equivalence_case<K>(d, shift(final_lhs(m.module, seed), *s0), lambda_prime(t), seed));
  }
  return out;
}

std::vector<Case> ar_cases(const Battery<Rational>& b, std::uint64_t seed) {
  using Q = Rational;
  std::vector<Complex<Q>> lam;
  std::vector<Probe<Q>> probes;
  for (const auto& m : b.modules) {
    lam.push_back(lambda(m.module));
    for (int s = -2; s <= 2; ++s)
      probes.push_back({"shift(lambda(" + m.name + ")," + std::to_string(s) + ")", shift(lam.back(), s)});
  }
  std::vector<Case> out;
  for (std::size_t i = 0; i < b.modules.size(); ++i) {
    const auto& m = b.modules[i];
    if (m.projective) continue;
    Case c;
    c.description = "ar_triangle(lambda(" + m.name + "))";
    try {
      auto t = ar_triangle(lam[i], probes, seed);
      Index passed = 0;
      json failed = json::array();
      for (const auto& p : t.probes) {
        if (p.pass)
          ++passed;
        else
          failed.push_back({{"probe", p.name}, {"nonretractions", p.nonretract}, {"factoring", p.factoring}});
      }
      c.lhs = {{"w_nonzero", t.w_nonzero},
               {"ends_indecomposable", t.ends_indecomposable},
               {"annihilator_dim", t.annihilator_dim},
               {"probes_passed", passed},
               {"failed", failed}};
      c.rhs = {{"probes", t.probes.size()}};
      c.pass = t.pass();
    } catch (const Error& e) {
      c.lhs = {{"error", e.what()}};
      c.rhs = nullptr;
      c.pass = false;
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

template <class K>
Report run(const std::string& suite, const std::string& ref, const AlgebraDescription& desc, std::uint64_t seed,
           int trials) {
  const auto start = std::chrono::steady_clock::now();
  AlgPtr<K> alg;
  std::string base = ref;
  const std::string suffix = "^op";
  if (ref.size() > suffix.size() && ref.compare(ref.size() - suffix.size(), suffix.size(), suffix) == 0)
    base = ref.substr(0, ref.size() - suffix.size());
  if (is_catalog(base))
    alg = catalog_algebra<K>(ref);
  else
    alg = load_algebra<K>(desc);
  auto b = make_battery<K>(ref, alg);
  Report r;
  r.suite = suite;
  r.algebra = ref;
  r.seed = seed;
  auto append = [&](std::vector<Case> cs) {
    for (auto& c : cs) r.cases.push_back(std::move(c));
  };
  if (suite == "serre-duality") {
    append(serre_u_cases(b, seed, trials));
    append(serre_s_cases(b, seed, trials));
  } else if (suite == "phi-duality") {
    append(phi_cases(b, seed, trials));
  } else if (suite == "lambda-embedding") {
    append(lambda_embedding_cases(b));
  } else if (suite == "comm-tr") {
    std::optional<int> t0;
    append(comm_tr_cases(b, seed, t0));
    r.constants["t0"] = t0 ? json(*t0) : json(nullptr);
  } else if (suite == "final-diagram") {
    std::optional<int> s0;
    append(final_diagram_cases(b, seed, s0));
    r.constants["s0"] = s0 ? json(*s0) : json(nullptr);
  } else if (suite == "ar-triangles") {
    if constexpr (std::is_same_v<K, Rational>)
      append(ar_cases(b, seed));
    else
      throw InputError("ar-triangles needs an algebra over the rationals");
  } else if (suite == "d-duality") {
    append(d_duality_cases(b, seed, trials));
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

Report verify_suite(const std::string& suite, const std::string& algebra_ref, std::uint64_t seed, int trials,
                    std::uint32_t prime) {
  bool known = false;
  for (const auto& n : suite_names()) known = known || n == suite;
  if (!known) throw InputError("unknown suite '" + suite + "'");
  if (trials < 0) throw InputError("trials must be non-negative");
  auto desc = resolve_algebra_description(algebra_ref);
  if (prime != 0) {
    if (!is_prime(prime)) throw InputError("field modulus " + std::to_string(prime) + " is not prime");
    desc.field = FieldSpec::prime(prime);
  }
  if (desc.field.kind == FieldSpec::Kind::prime) {
    PrimeScope scope(desc.field.p);
    return run<ModP>(suite, algebra_ref, desc, seed, trials);
  }
  return run<Rational>(suite, algebra_ref, desc, seed, trials);
}

#define KHOM_INSTANTIATE_SUITES(K)                                                                               \
  template struct Battery<K>;                                                                                    \
  template Battery<K> make_battery<K>(const std::string&, const AlgPtr<K>&);                                     \
  template std::vector<Probe<K>> object_pool<K>(const Battery<K>&, std::uint64_t, int);                          \
  template std::optional<Certificate<K>> certified_equivalence<K>(const Complex<K>&, const Complex<K>&,          \
                                                                  std::uint64_t);                                \
  template std::vector<Case> serre_u_cases<K>(const Battery<K>&, std::uint64_t, int);                            \
  template std::vector<Case> serre_s_cases<K>(const Battery<K>&, std::uint64_t, int);                            \
  template std::vector<Case> phi_cases<K>(const Battery<K>&, std::uint64_t, int);                                \
  template std::vector<Case> lambda_embedding_cases<K>(const Battery<K>&);                                       \
  template std::vector<Case> d_duality_cases<K>(const Battery<K>&, std::uint64_t, int);                          \
  template std::vector<Case> comm_tr_cases<K>(const Battery<K>&, std::uint64_t, std::optional<int>&);            \
  template std::vector<Case> final_diagram_cases<K>(const Battery<K>&, std::uint64_t, std::optional<int>&);

KHOM_INSTANTIATE_SUITES(Rational)
KHOM_INSTANTIATE_SUITES(ModP)

}  // namespace khom
