#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace heatobs {

using Json = nlohmann::ordered_json;

struct FittedConstants {
    double C = 0.0;
    double beta = 0.0;
};

// One inequality check. `pass` is decided by the producing check from lhs,
// the rhs factors, the fitted constants and the tolerance echoed in `meta`.
struct EstimateReport {
    std::string kind;
    double lhs = 0.0;
    std::vector<std::pair<std::string, double>> rhs_factors;
    std::optional<FittedConstants> fitted;
    bool pass = false;
    Json meta = Json::object();

    EstimateReport& factor(const std::string& name, double value);
    // Throws InvalidParameter when the factor is missing.
    double rhs(const std::string& name) const;
};

Json to_json(const EstimateReport& r);
EstimateReport report_from_json(const Json& j);

// nlohmann writes non-finite doubles as null; keep them readable instead.
Json number_or_string(double v);

}  // namespace heatobs
