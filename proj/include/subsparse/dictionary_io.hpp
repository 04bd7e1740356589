#pragma once

#include "subsparse/types.hpp"

#include <string>

namespace subsparse {

/// Parses the dictionary JSON schema:
///   {"D": int, "atoms": [[f64; D]; J],
///    "partition": {"J0": [...], "Jc": [...]}?, "groups": [[...], ...]?}
/// Indices are zero-based. Atoms within 1e-6 of unit norm are re-normalized;
/// anything further off fails the load.
Dictionary parse_dictionary(const std::string& json_text);
Dictionary load_dictionary(const std::string& path);

std::string dictionary_to_json(const Dictionary& dict);
void save_dictionary(const Dictionary& dict, const std::string& path);

}  // namespace subsparse
