#include "report.hpp"

#include <algorithm>
#include <ostream>
#include <vector>

namespace cyheight::cli {

namespace {

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

bool is_scalar_array(const Json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return is_scalar(x); });
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string joined(const Json& arr, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (i) out += sep;
        out += cell(arr[i]);
    }
    return out;
}

// Column order: keys of the first row, then any new keys in order of appearance.
std::vector<std::string> columns_of(const Json& rows) {
    std::vector<std::string> cols;
    for (const auto& row : rows) {
        for (const auto& [k, _] : row.items()) {
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
        }
    }
    return cols;
}

std::string row_cell(const Json& row, const std::string& key) {
    if (!row.contains(key)) return "";
    const Json& v = row.at(key);
    if (is_scalar_array(v)) return joined(v, " ");
    if (!is_scalar(v)) return v.dump();
    return cell(v);
}

void render_csv(const Report& report, std::ostream& out) {
    out << "# cyheight-csv v" << kCsvSchemaVersion << " kind=" << report.kind << '\n';
    Json rows = Json::array();
    if (!report.table_key.empty() && report.doc.contains(report.table_key)) {
        rows = report.doc.at(report.table_key);
    } else {
        Json row = Json::object();
        for (const auto& [k, v] : report.doc.items()) {
            if (is_scalar(v) || is_scalar_array(v)) row[k] = v;
        }
        rows.push_back(std::move(row));
    }
    const auto cols = columns_of(rows);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_quote(cols[i]);
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_quote(row_cell(row, cols[i]));
        out << '\n';
    }
}

void render_table(const Json& rows, std::ostream& out) {
    const auto cols = columns_of(rows);
    std::vector<std::size_t> width(cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        width[i] = cols[i].size();
        for (const auto& row : rows) width[i] = std::max(width[i], row_cell(row, cols[i]).size());
    }
    auto line = [&](auto&& get) {
        std::string s;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::string c = get(i);
            if (i + 1 < cols.size()) c.resize(width[i], ' ');
            s += "  " + c;
        }
        out << s << '\n';
    };
    line([&](std::size_t i) { return cols[i]; });
    for (const auto& row : rows) line([&](std::size_t i) { return row_cell(row, cols[i]); });
}

void render_text(const Report& report, std::ostream& out) {
    for (const auto& [k, v] : report.doc.items()) {
        if (is_scalar(v)) {
            out << k << ": " << cell(v) << '\n';
        } else if (is_scalar_array(v)) {
            out << k << ": " << joined(v, " ") << '\n';
        } else if (v.is_array()) {
            out << k << ":\n";
            render_table(v, out);
        } else {
            out << k << ": " << v.dump() << '\n';
        }
    }
}

}  // namespace

std::string cell(const Json& value) {
    if (value.is_null()) return "";
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
}

void render(const Report& report, Format format, std::ostream& out) {
    switch (format) {
        case Format::json:
            out << report.doc.dump(2) << '\n';
            break;
        case Format::csv:
            render_csv(report, out);
            break;
        case Format::text:
            render_text(report, out);
            break;
    }
}

}  // namespace cyheight::cli
