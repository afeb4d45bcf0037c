#include "heatobs/semigroup.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "heatobs/error.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/random.hpp"
#include "heatobs/spectral.hpp"

namespace heatobs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

std::string p_label(double p) { return std::isinf(p) ? "inf" : std::to_string(p); }

}  // namespace

Field heat_propagate(const Field& f, double t) {
    require(t >= 0.0 && std::isfinite(t), ErrorKind::InvalidParameter, "heat propagation time must be >= 0");
    std::optional<double> time = f.time();
    if (time) *time += t;
    if (t == 0.0) return f;
    return spectral::apply_multiplier(f, [t](double xi2) { return std::exp(-xi2 * t); }, time);
}

bool kernel_aliasing_risk(const GridSpec& spec, double t) noexcept { return t > spec.X * spec.X / 16.0; }

Field heat_kernel(const GridSpec& spec, double t, const Point& center) {
    require(t > 0.0, ErrorKind::InvalidParameter, "heat kernel needs t > 0");
    for (int a = 0; a < spec.n; ++a) {
        const double c = center[static_cast<std::size_t>(a)];
        require(c >= -spec.X && c < spec.X, ErrorKind::InvalidParameter, "kernel center outside the box");
    }
    if (kernel_aliasing_risk(spec, t))
        std::clog << "heatobs: warning: heat kernel at t=" << t << " exceeds X^2/16; periodic images are not negligible\n";
    const double norm = std::pow(4.0 * std::numbers::pi * t, -0.5 * spec.n);
    return Field::sample(spec, [&](const Point& x) { return norm * std::exp(-spec.distance_sq(x, center) / (4.0 * t)); });
}

EstimateReport lp_lq_check(const Field& f, double t, double q, double p, double tol) {
    require(t > 0.0, ErrorKind::InvalidParameter, "smoothing check needs t > 0");
    require(q >= 1.0 && p >= 1.0, ErrorKind::InvalidParameter, "exponents must be >= 1");
    require(q <= p, ErrorKind::InvalidParameter, "need q <= p (got q=" + p_label(q) + ", p=" + p_label(p) + ")");
    const double n = static_cast<double>(f.spec().n);
    const Field evolved = heat_propagate(f, t);
    const double lhs = lp_norm(evolved, p);
    const double norm_q = lp_norm(f, q);
    const double exponent = -(n / 2.0) * (inv(q) - inv(p));
    const double constant = std::pow(4.0 * std::numbers::pi * t, exponent);
    const double rhs = constant * norm_q;

    EstimateReport r;
    r.kind = "eq_2_1";
    r.lhs = lhs;
    r.factor("constant", constant).factor("norm_q", norm_q).factor("rhs", rhs);
    r.pass = lhs <= rhs * (1.0 + tol);
    r.meta = Json{{"t", t}, {"q", number_or_string(q)}, {"p", number_or_string(p)}, {"tol", tol},
                  {"n", f.spec().n}, {"m", f.spec().m}, {"X", f.spec().X}};
    return r;
}

std::vector<EstimateReport> lp_lq_suite(const GridSpec& spec, const LpLqSuiteOptions& opt) {
    std::vector<std::pair<double, double>> pq = opt.pq;
    if (pq.empty()) pq = {{kInf, 1.0}, {2.0, 1.0}, {kInf, 2.0}, {2.0, 2.0}};
    const std::size_t kmax = spec.m / 8;
    std::vector<std::vector<EstimateReport>> per_field(opt.fields);
    const auto count = static_cast<std::ptrdiff_t>(opt.fields);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        Rng rng(Rng::derive(opt.seed, static_cast<std::uint64_t>(i)));
        const Field f = init::band_limited(spec, kmax, rng);
        auto& out = per_field[static_cast<std::size_t>(i)];
        for (const auto& [p, q] : pq)
            for (double t : opt.times) {
                auto r = lp_lq_check(f, t, q, p, opt.tol);
                r.meta["field"] = i;
                r.meta["seed"] = opt.seed;
                out.push_back(std::move(r));
            }
    }
    std::vector<EstimateReport> all;
    for (auto& v : per_field)
        for (auto& r : v) all.push_back(std::move(r));
    return all;
}

}  // namespace heatobs
