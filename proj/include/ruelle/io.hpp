#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ruelle/diagnostics.hpp"
#include "ruelle/potential.hpp"
#include "ruelle/transfer.hpp"

namespace ruelle::io {

using nlohmann::json;

/// [re, im]
json to_json(Scalar z);
Scalar scalar_from_json(const json& j);

/// {"n": N, "rows": [[...], ...]}; "n" is optional.
TransitionStructure matrix_from_json(const json& j);
json matrix_to_json(const TransitionStructure& shift);

/// {"depth": m, "values": {"<word>": [re, im] | re, ...}} covering exactly
/// the admissible words.
TabulatedFunction table_from_json(const TransitionStructure& shift, const json& j);
json table_to_json(const TabulatedFunction& t);

/// {"family": "constant" | "geometric" | "table" | "linear_combination", ...}.
/// Table potentials may point at a file relative to base.
Potential potential_from_json(const TransitionStructure& shift, const json& j,
                              const std::filesystem::path& base = {});

/// "parry" or {"p": [...], "P": [[...]]}.
MarkovMeasure measure_from_json(const TransitionStructure& shift, const json& j);

json spectrum_to_json(const SpectralData& s, int basis_depth);
json report_to_json(const BoundReport& r);

/// Number text exactly as json::dump writes it.
std::string number_text(double x);

json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ruelle::io
