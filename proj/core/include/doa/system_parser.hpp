#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "doa/poly_field.hpp"

namespace doa {

/// Parses a system-definition document:
///
///     # comment
///     dim 2
///     dx1 = -x1*(4 - (x1 - 1)^2 - x2^2)
///     dx2 = ...
///
/// Expressions use + - * ^ (non-negative integer exponents), parentheses,
/// decimal constants and variables x1..xn. Throws ParseError.
PolyField parse_system(std::string_view text);

/// Reads and parses a file; throws doa::Error when it cannot be opened.
PolyField load_system(const std::filesystem::path& path);

/// Canonical text form of a field; parse_system(serialize_system(f)) == f.
std::string serialize_system(const PolyField& field);

}  // namespace doa
