#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "morrey/family.hpp"
#include "morrey/step_function.hpp"
#include "morrey/weight.hpp"

namespace morrey::cli {

using json = nlohmann::json;

/// Invalid configuration; `path` names the offending field (e.g. "weight.nu").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Parsed experiment file: {"params": ..., "weight": ..., "family": ..., "experiment": ...}.
struct Config {
    json raw;
    MorreyParams params;
    std::optional<Weight> weight;  ///< absent only where the command does not need one
    json weight_spec;              ///< resolved weight section
    json family;                   ///< overrides, possibly empty
    json experiment;               ///< possibly empty
};

/// Parses JSON text. Syntax errors are reported with line and column.
Config parse_config(const std::string& text);
Config load_config(const std::string& file);

/// Field readers. Numbers may be JSON numbers or decimal strings.
double read_number(const json& j, const std::string& path);
int read_int(const json& j, const std::string& path);
bool read_bool(const json& j, const std::string& path);
const json& require(const json& obj, const std::string& key, const std::string& path);
std::optional<double> opt_number(const json& obj, const std::string& key, const std::string& path);
std::optional<int> opt_int(const json& obj, const std::string& key, const std::string& path);
std::vector<double> read_number_list(const json& j, const std::string& path);

Weight parse_weight(const json& j, const std::string& path, int dim);
Point parse_point(const json& j, const std::string& path, int dim);
Ball parse_ball(const json& j, const std::string& path, int dim);
StepFunction parse_step(const json& j, const std::string& path);

/// `base` with the fields present in `overrides` replaced; validated.
BallFamily apply_family(BallFamily base, const json& overrides, const std::string& path);
GridShape parse_shape(const json& j, const std::string& path, GridShape base);

/// Resolved (canonical) JSON forms, embedded in reports.
json to_json(const MorreyParams& p);
json to_json(const Weight& w);
json to_json(const Point& q, int dim);
json to_json(const Ball& b, int dim);
json to_json(const BallFamily& f);
json to_json(const GridShape& s);

}  // namespace morrey::cli
