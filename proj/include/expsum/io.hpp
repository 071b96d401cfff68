#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <json.hpp>

#include "expsum/density.hpp"
#include "expsum/strip.hpp"
#include "expsum/zeros.hpp"

namespace expsum::io {

using Json = nlohmann::ordered_json;

/// Problem file: { "terms": [ { "re": , "im": , "freq": }, ... ] }.
/// Terms may come in any order; they are sorted and validated on load.
ExpSum load_problem(const std::filesystem::path& path);
ExpSum problem_from_json(const Json& j);

Json decomposition_to_json(const StripDecomposition& dec);
StripDecomposition decomposition_from_json(const Json& j);

/// Schema plus tiling checks; returns an explanation for the first problem
/// found, or an empty string when the document is valid.
std::string validate_decomposition_json(const Json& j);

std::string zeros_to_csv(std::span<const ZeroRecord> records);
Json zeros_to_json(std::span<const ZeroRecord> records);

Json density_to_json(std::span<const DensityReport> reports, const LangerResult& langer);
std::string density_to_csv(const DensityReport& report);

Json backlund_to_json(const BacklundBound& b);
Json disc_to_json(const DiscExperiment& d);

/// Vertical-band diagram of the decomposition, optionally overlaying zeros
/// found in the window [y_lo, y_hi].
std::string strip_diagram_svg(const StripDecomposition& dec,
                              std::span<const ZeroRecord> zeros = {},
                              double y_lo = -1.0, double y_hi = 1.0);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace expsum::io
