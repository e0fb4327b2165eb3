#pragma once

#include <string>

#include "hopflat/algebra.hpp"

namespace hopflat {

/// Reads the algebra file format: explicit structure tensors with complex entries as
/// [re, im] pairs, or a group shortcut {"group": {"cayley", "labels"}, "flavor"}.
/// Throws ParseError for malformed input and NotAGroup for a bad Cayley table.
HopfData parse_algebra(const std::string& json_text);

/// Writes the explicit structure-tensor form; parse_algebra reads it back exactly.
std::string serialize_algebra(const HopfData& data);

/// Resolves a builtin algebra name, or else reads and verifies an algebra file.
AlgebraHandle load_algebra(const std::string& name_or_path);

}  // namespace hopflat
