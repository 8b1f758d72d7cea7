#pragma once

#include <map>
#include <string>
#include <vector>

#include "khom/io.hpp"

namespace khom {

/// Indecomposable module of a bundled algebra, as recorded in the fixtures.
template <class K>
struct FixtureModule {
  std::string name;   // usable in object expressions
  std::string label;  // [i,j] for intervals, (d1,d2,d3;d4) for d4
  Module<K> module;
  bool projective = false;
  bool injective = false;
};

template <class K>
struct Fixture {
  std::string algebra;
  int gldim = 0;
  std::vector<FixtureModule<K>> modules;
  std::map<std::string, std::string> tau;  // non-projective name -> name

  const FixtureModule<K>& find(const std::string& name) const;
};

/// Knitting oracle over ℚ: lists the indecomposables by hand (intervals for
/// linear quivers) and computes τ from minimal presentations.
Fixture<Rational> knit(const std::string& algebra);

/// Deterministic text of the fixture file.
std::string fixture_text(const Fixture<Rational>& f);

std::string default_fixture_dir();
std::string fixture_path(const std::string& algebra, const std::string& dir = default_fixture_dir());

/// Loads a shipped fixture file over the field K.
template <class K>
Fixture<K> load_fixture(const std::string& algebra, const std::string& dir = default_fixture_dir());

}  // namespace khom
