#include "heatobs/report.hpp"

#include <cmath>
#include <limits>

#include "heatobs/error.hpp"

namespace heatobs {

namespace {

double read_number(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    fail(ErrorKind::FormatError, "expected a number in report JSON");
}

}  // namespace

EstimateReport& EstimateReport::factor(const std::string& name, double value) {
    rhs_factors.emplace_back(name, value);
    return *this;
}

double EstimateReport::rhs(const std::string& name) const {
    for (const auto& [k, v] : rhs_factors)
        if (k == name) return v;
    fail(ErrorKind::InvalidParameter, "report '" + kind + "' has no factor '" + name + "'");
}

Json number_or_string(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

Json to_json(const EstimateReport& r) {
    Json j;
    j["kind"] = r.kind;
    j["lhs"] = number_or_string(r.lhs);
    Json rf = Json::object();
    for (const auto& [k, v] : r.rhs_factors) rf[k] = number_or_string(v);
    j["rhs_factors"] = rf;
    if (r.fitted) j["fitted"] = Json{{"C", number_or_string(r.fitted->C)}, {"beta", number_or_string(r.fitted->beta)}};
    j["pass"] = r.pass;
    j["meta"] = r.meta;
    return j;
}

EstimateReport report_from_json(const Json& j) {
    require(j.is_object() && j.contains("kind") && j.contains("pass"), ErrorKind::FormatError,
            "report JSON needs at least kind and pass");
    EstimateReport r;
    r.kind = j.at("kind").get<std::string>();
    r.lhs = j.contains("lhs") ? read_number(j.at("lhs")) : 0.0;
    if (j.contains("rhs_factors"))
        for (const auto& [k, v] : j.at("rhs_factors").items()) r.rhs_factors.emplace_back(k, read_number(v));
    if (j.contains("fitted"))
        r.fitted = FittedConstants{read_number(j.at("fitted").at("C")), read_number(j.at("fitted").at("beta"))};
    r.pass = j.at("pass").get<bool>();
    if (j.contains("meta")) r.meta = j.at("meta");
    return r;
}

}  // namespace heatobs
