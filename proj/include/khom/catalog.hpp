#pragma once

#include <string>
#include <vector>

#include "khom/algebra.hpp"

namespace khom {

/// Names of the bundled algebras: a2, a3, n3, d4.
const std::vector<std::string>& catalog_names();

/// Throws InputError for an unknown name.
AlgebraDescription catalog_description(const std::string& name, FieldSpec field = FieldSpec::rationals());

/// Algebra reference: a catalog name, optionally suffixed by "^op".
template <class K>
AlgPtr<K> catalog_algebra(const std::string& ref);

}  // namespace khom
