#include "morrey/cli/report_io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "morrey/cli/config.hpp"

namespace morrey::cli {

json num(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json to_json(const FunctionalReport& r) {
    json trace = json::array();
    for (double t : r.refine_trace) trace.push_back(num(t));
    return json{{"value", num(r.value)},
                {"argmax", to_json(r.argmax, r.family.dim)},
                {"family", to_json(r.family)},
                {"refine_trace", trace},
                {"diverging", r.diverging},
                {"nonfinite_evaluations", r.nonfinite_evaluations},
                {"evaluations", r.evaluations}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path path = fs::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace morrey::cli
