#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "morrey/family.hpp"

namespace morrey::cli {

using json = nlohmann::json;

inline constexpr const char* kToolName = "morrey-lab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Finite values as JSON numbers; +-inf as the strings "inf"/"-inf", NaN as "nan".
json num(double v);

/// Shortest round-trip decimal form of v ("inf", "-inf", "nan" for non-finite).
std::string format_double(double v);

json to_json(const FunctionalReport& r);

/// RFC 4180: fields quoted when they contain a comma, quote, CR or LF; CRLF line ends.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

/// Writes `content` to `dir/name` (creating dir); throws std::runtime_error on failure.
void write_file(const std::string& dir, const std::string& name, const std::string& content);

/// Pretty JSON with a trailing newline.
std::string dump(const json& j);

}  // namespace morrey::cli
