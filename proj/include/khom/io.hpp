#pragma once

#include <string>

#include "json.hpp"
#include "khom/homotopy.hpp"

namespace khom {

using json = nlohmann::json;

FieldSpec field_from_json(const json& j);
json to_json(const FieldSpec& f);

AlgebraDescription description_from_json(const json& j, const std::string& name = "");
json to_json(const AlgebraDescription& d);
template <class K>
AlgebraDescription describe(const Algebra<K>& alg);

/// Reads a JSON file; InputError if it is missing or malformed.
json read_json_file(const std::string& path);
/// Writes through a temporary file and a rename.
void write_text_file(const std::string& path, const std::string& text);

/// A catalog name (with optional "^op") or a path to an algebra JSON file.
AlgebraDescription resolve_algebra_description(const std::string& ref);

template <class K>
Mat<K> matrix_from_json(const json& j, Index rows, Index cols);
template <class K>
json to_json(const Mat<K>& m);

/// {"algebra", "dims": {vertex: n}, "arrows": {name: matrix}}; the algebra
/// key is written only when `algebra_ref` is non-empty.
template <class K>
Module<K> module_from_json(const json& j, const AlgPtr<K>& alg);
template <class K>
json to_json(const Module<K>& m, const std::string& algebra_ref = "");

template <class K>
ModuleMap<K> module_map_from_json(const json& j, const Module<K>& source, const Module<K>& target);
template <class K>
json to_json(const ModuleMap<K>& f);

template <class K>
Complex<K> complex_from_json(const json& j, const AlgPtr<K>& alg);
template <class K>
json to_json(const Complex<K>& x, const std::string& algebra_ref = "");

template <class K>
GradedMap<K> graded_map_from_json(const json& j, const Complex<K>& source, const Complex<K>& target);
template <class K>
json to_json(const GradedMap<K>& f);

template <class K>
json to_json(const Certificate<K>& c);
template <class K>
Certificate<K> certificate_from_json(const json& j, const Complex<K>& x, const Complex<K>& y);

}  // namespace khom
