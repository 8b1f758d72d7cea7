#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "khom/fixtures.hpp"
#include "khom/serrear.hpp"

namespace khom {

inline constexpr const char* kVersion = "0.3.0";

struct Case {
  std::string description;
  json lhs, rhs;
  bool pass = false;
  std::optional<json> certificate;
};

struct Report {
  std::string suite, algebra;
  std::uint64_t seed = 0;
  std::vector<Case> cases;
  json constants = json::object();
  double elapsed_ms = 0;

  bool pass() const;
  json to_json() const;
};

const std::vector<std::string>& suite_names();

/// The objects a suite draws from: indecomposable modules with names, and τ
/// when known from the fixtures.
template <class K>
struct Battery {
  std::string name;
  AlgPtr<K> alg;
  std::vector<FixtureModule<K>> modules;
  std::map<std::string, std::string> tau;
  bool from_fixture = false;

  /// Same modules dualized, over the opposite algebra.
  Battery opposite() const;
};

/// Fixture modules for catalog algebras; simples, projectives and
/// injectives otherwise.
template <class K>
Battery<K> make_battery(const std::string& name, const AlgPtr<K>& alg);

/// Stalks in degrees -2..2, λ-images and `random_count` seeded 3-term complexes.
template <class K>
std::vector<Probe<K>> object_pool(const Battery<K>& b, std::uint64_t seed, int random_count = 8);

/// Minimizes both sides, searches for an equivalence and returns the
/// composite certificate X -> Y if it verifies.
template <class K>
std::optional<Certificate<K>> certified_equivalence(const Complex<K>& x, const Complex<K>& y, std::uint64_t seed);

/// Smallest s in [-4, 4] for which every test passes, if any.
std::optional<int> calibrate_shift(const std::function<bool(int)>& test);

template <class K>
std::vector<Case> serre_u_cases(const Battery<K>& b, std::uint64_t seed, int trials);
template <class K>
std::vector<Case> serre_s_cases(const Battery<K>& b, std::uint64_t seed, int trials);
template <class K>
std::vector<Case> phi_cases(const Battery<K>& b, std::uint64_t seed, int trials);
template <class K>
std::vector<Case> lambda_embedding_cases(const Battery<K>& b);
template <class K>
std::vector<Case> d_duality_cases(const Battery<K>& b, std::uint64_t seed, int trials);

/// t0 is calibrated on a2 and then asserted for b.
template <class K>
std::vector<Case> comm_tr_cases(const Battery<K>& b, std::uint64_t seed, std::optional<int>& t0);
/// s0 is calibrated on a2 and then asserted for b.
template <class K>
std::vector<Case> final_diagram_cases(const Battery<K>& b, std::uint64_t seed, std::optional<int>& s0);
std::vector<Case> ar_cases(const Battery<Rational>& b, std::uint64_t seed);

/// Runs a suite over the field of the algebra (or F_p when prime != 0).
/// InputError for an unknown suite.
Report verify_suite(const std::string& suite, const std::string& algebra_ref, std::uint64_t seed, int trials,
                    std::uint32_t prime = 0);

}  // namespace khom
