#include <cmath>
#include <limits>

#include "heatobs/dynamics.hpp"
#include "heatobs/error.hpp"
#include "heatobs/stats.hpp"

namespace heatobs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TraceSummary {
    std::vector<double> t;
    std::vector<double> sup;    // ||y(t)||_inf
    std::vector<double> trace;  // weighted and normalized
    double trend_slope = 0.0;
    double exponent_slope = std::numeric_limits<double>::quiet_NaN();
    double window_lo = 0.0;
    double window_hi = 0.0;
};

// weight(t) multiplies ||y(t)||_inf to form the trace; the early trend is
// taken on power_weight(t) ||y(t)||_inf.
template <class Weight, class PowerWeight>
TraceSummary summarize(const Trajectory& traj, Weight weight, PowerWeight power_weight, const SmoothingOptions& opt) {
    TraceSummary s;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        if (t <= 0.0) continue;
        const double sup = lp_norm(traj.fields[k], kInf);
        s.t.push_back(t);
        s.sup.push_back(sup);
        s.trace.push_back(weight(t) * sup);
    }
    require(s.t.size() >= 2, ErrorKind::InsufficientSamples, "smoothing check needs two snapshots with t > 0");

    // growth trend over the smallest decade of sampled t
    std::vector<double> dt, dv;
    for (std::size_t k = 0; k < s.t.size(); ++k)
        if (s.t[k] <= 10.0 * s.t.front() || dt.size() < 2) {
            dt.push_back(s.t[k]);
            dv.push_back(power_weight(s.t[k]) * s.sup[k]);
        }
    bool positive = true;
    for (double v : dv) positive = positive && v > 0.0;
    s.trend_slope = positive ? stats::loglog_slope(dt, dv) : 0.0;

    s.window_lo = opt.exponent_window ? opt.exponent_window->first : s.t.front();
    s.window_hi = opt.exponent_window ? opt.exponent_window->second : s.t.back();
    std::vector<double> wt, ws;
    for (std::size_t k = 0; k < s.t.size(); ++k)
        if (s.t[k] >= s.window_lo * (1.0 - 1e-12) && s.t[k] <= s.window_hi * (1.0 + 1e-12) && s.sup[k] > 0.0) {
            wt.push_back(s.t[k]);
            ws.push_back(s.sup[k]);
        }
    if (wt.size() >= 2) s.exponent_slope = stats::loglog_slope(wt, ws);
    else require(!opt.exponent_window, ErrorKind::EmptyWindow, "exponent window holds fewer than two snapshots");
    return s;
}

double sup_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, x);
    return m;
}

Json trace_meta(const TraceSummary& s, const SmoothingOptions& opt) {
    return Json{{"min_slope", opt.min_slope},
                {"exponent_window", Json::array({s.window_lo, s.window_hi})},
                {"t", s.t},
                {"trace", s.trace}};
}

}  // namespace

EstimateReport smoothing_check(const Trajectory& traj, double q, const SmoothingOptions& opt) {
    require(q >= 1.0, ErrorKind::InvalidParameter, "smoothing check needs q >= 1");
    require(!traj.fields.empty(), ErrorKind::InvalidParameter, "empty trajectory");
    const double norm_q = lp_norm(traj.fields.front(), q);
    require(norm_q > 0.0, ErrorKind::ZeroInitialData, "initial field is identically zero");
    const double n = static_cast<double>(traj.spec.n);
    const double power = n / (2.0 * q);
    const auto w = [&](double t) { return std::pow(t, power) / norm_q; };
    const auto s = summarize(traj, w, w, opt);

    EstimateReport r;
    r.kind = "eq_3_5";
    r.lhs = sup_of(s.trace);
    r.factor("norm_q", norm_q)
        .factor("trend_slope", s.trend_slope)
        .factor("exponent_slope", s.exponent_slope)
        .factor("expected_exponent", -power);
    r.pass = std::isfinite(r.lhs) && s.trend_slope >= opt.min_slope;
    r.meta = trace_meta(s, opt);
    r.meta["q"] = number_or_string(q);
    r.meta["n"] = traj.spec.n;
    r.meta["fspec"] = to_string(traj.fspec.kind);
    r.meta["lambda"] = traj.fspec.lambda;
    r.meta["p"] = traj.fspec.p;
    return r;
}

double smoothing_theta(double sigma, int n) {
    const double nn = static_cast<double>(n);
    require(sigma > nn / 2.0 && sigma >= 1.0, ErrorKind::InvalidParameter,
            "potential exponent sigma must satisfy sigma > n/2 and sigma >= 1");
    return 2.0 * sigma / (2.0 * sigma - nn);
}

EstimateReport potential_smoothing_check(const Trajectory& traj, const Potential& a, double sigma, double gamma,
                                         const SmoothingOptions& opt) {
    require(!traj.fields.empty(), ErrorKind::InvalidParameter, "empty trajectory");
    const double theta = smoothing_theta(sigma, traj.spec.n);
    require(gamma >= 1.0, ErrorKind::InvalidParameter, "gamma must be >= 1");
    const double norm_g = lp_norm(traj.fields.front(), gamma);
    require(norm_g > 0.0, ErrorKind::ZeroInitialData, "initial field is identically zero");
    const double bound = a.sup_norm(sigma);
    const double rate = bound > 0.0 ? std::pow(bound, theta) : 0.0;
    const double power = static_cast<double>(traj.spec.n) / (2.0 * gamma);
    const auto s = summarize(
        traj, [&](double t) { return std::pow(t, power) / (std::exp(rate * t) * norm_g); },
        [&](double t) { return std::pow(t, power) / norm_g; }, opt);

    EstimateReport r;
    r.kind = "eq_2_3a";
    r.lhs = sup_of(s.trace);
    r.factor("norm_gamma", norm_g)
        .factor("potential_bound", bound)
        .factor("theta", theta)
        .factor("trend_slope", s.trend_slope)
        .factor("exponent_slope", s.exponent_slope)
        .factor("expected_exponent", -power);
    r.pass = std::isfinite(r.lhs) && s.trend_slope >= opt.min_slope;
    r.meta = trace_meta(s, opt);
    r.meta["sigma"] = sigma;
    r.meta["gamma"] = number_or_string(gamma);
    r.meta["n"] = traj.spec.n;
    return r;
}

}  // namespace heatobs
