// io.hpp — CSV/JSON rendering of results (regression-diffable: '#' metadata
// lines, one header row, 17 significant digits)

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mpcav/sweep.hpp"

namespace mpcav {

enum class OutputFormat { Csv, Json };

std::optional<OutputFormat> parse_format(const std::string& name);

// Shortest-width decimal rendering with 17 significant digits and '.'
// separator, identical across runs.
std::string format_double(double v);

std::string render_sweep(const SweepResult& result, OutputFormat format,
                         std::uint64_t config_hash);
std::string render_distribution(const DistributionResult& result, OutputFormat format,
                                std::uint64_t config_hash);
std::string render_validate(const ValidateResult& result, OutputFormat format,
                            std::uint64_t config_hash);

void write_text_file(const std::string& path, const std::string& text);

} // namespace mpcav
