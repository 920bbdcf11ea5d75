#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "doa/atlas.hpp"
#include "doa/embryo.hpp"
#include "doa/spectral.hpp"

namespace doa {

using Json = nlohmann::json;

/// {n, p, generation, center: [[re, im], ...],
///  coeffs: [{j: [...], re, im}, ...]} with nonzero coefficients in
/// graded-lex order.
Json embryo_to_json(const Embryo& embryo);
Embryo embryo_from_json(const Json& j);

/// Matrices as row-major nested [re, im] pairs.
Json spectrum_to_json(const Spectrum& spectrum);
Spectrum spectrum_from_json(const Json& j);

/// {format, system_id, rule, spectrum, charts: [embryo...], growth_log}.
Json atlas_to_json(const Atlas& atlas);
Atlas atlas_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
/// Pretty-printed with two-space indent and a trailing newline.
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace doa
