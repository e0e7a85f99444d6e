#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace cyheight::cli {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };

inline constexpr int kCsvSchemaVersion = 1;

/// A command's output document. table_key names the array of row objects
/// that CSV emits; when empty, CSV emits one row of the top-level scalars.
struct Report {
    std::string kind;
    Json doc = Json::object();
    std::string table_key;
};

void render(const Report& report, Format format, std::ostream& out);

/// Scalar as it appears in text and CSV cells.
std::string cell(const Json& value);

}  // namespace cyheight::cli
