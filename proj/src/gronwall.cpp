#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "heatobs/error.hpp"
#include "heatobs/estimates.hpp"

namespace heatobs {

namespace odeint = boost::numeric::odeint;

EstimateReport gronwall_superlinear_check(double A, double B, double alpha, double g0, double T, std::size_t samples) {
    require(A > 0.0 && alpha > 0.0 && T > 0.0, ErrorKind::InvalidParameter, "need A, alpha, T > 0");
    require(B >= 0.0 && g0 >= 0.0, ErrorKind::InvalidParameter, "need B, g0 >= 0");
    require(samples >= 1, ErrorKind::InvalidParameter, "need at least one sample time");

    std::vector<double> ts(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double s = samples == 1 ? 1.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
        ts[i] = T * std::pow(10.0, -3.0 * (1.0 - s));
    }
    std::vector<double> times{0.0};
    times.insert(times.end(), ts.begin(), ts.end());

    std::vector<double> g;
    if (g0 == 0.0) {
        g.assign(samples, 0.0);
    } else {
        auto rhs = [&](const double& y, double& dy, double) { dy = B * y - A * std::pow(std::max(y, 0.0), 1.0 + alpha); };
        double y = g0;
        std::vector<double> out;
        try {
            odeint::integrate_times(odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<double>()), rhs,
                                    y, times.begin(), times.end(), T * 1e-9,
                                    [&](const double& v, double) { out.push_back(v); });
        } catch (const std::exception& e) {
            fail(ErrorKind::IntegrationFailure, std::string("ODE integration failed: ") + e.what());
        }
        require(out.size() == times.size(), ErrorKind::IntegrationFailure, "integrator skipped sample times");
        g.assign(out.begin() + 1, out.end());
        for (double v : g) require(std::isfinite(v), ErrorKind::IntegrationFailure, "integrator produced non-finite values");
    }

    std::vector<double> bound(samples);
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        bound[i] = std::pow(1.0 / (alpha * A * ts[i]), 1.0 / alpha) * std::exp(B * ts[i]);
        const double ratio = g[i] / bound[i];
        if (ratio > worst || i == 0) worst = ratio, at = i;
    }

    EstimateReport r;
    r.kind = "lemma_2_2";
    r.lhs = g[at];
    r.factor("bound", bound[at]).factor("t", ts[at]).factor("max_ratio", worst);
    r.factor("g_T", g.back()).factor("bound_T", bound.back());
    r.pass = worst <= 1.0 + 1e-6;
    r.meta = Json{{"A", A}, {"B", B}, {"alpha", alpha}, {"g0", g0}, {"T", T}, {"samples", samples},
                  {"t", ts}, {"g", g}, {"bound", bound}};
    return r;
}

}  // namespace heatobs
