#pragma once

#include <string>

#include "json.hpp"

namespace uavnet {

// Deterministic text form: object keys sorted, two-space indent, integers
// verbatim, floating values with exactly six decimals, LF line endings.
std::string canonical_dump(const nlohmann::json& value);

// Fixed six-decimal rendering shared by every text output.
std::string format_fixed(double value);

nlohmann::json parse_json_text(const std::string& text, const std::string& what);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace uavnet
