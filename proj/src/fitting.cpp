#include <algorithm>
#include <cmath>
#include <limits>

#include "heatobs/error.hpp"
#include "heatobs/estimates.hpp"

namespace heatobs {

FitResult fit_beta_C(const std::vector<Triple>& triples) {
    FitResult out;
    std::vector<std::array<double, 3>> logs;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        const Triple& t = triples[i];
        require(t.lhs > 0.0 && t.a > 0.0 && t.b >= 0.0 && std::isfinite(t.lhs) && std::isfinite(t.a) &&
                    std::isfinite(t.b),
                ErrorKind::NonPositiveTriple, "triple " + std::to_string(i) + " has a non-positive entry");
        if (t.b == 0.0) {
            out.excluded.push_back(i);
            continue;
        }
        logs.push_back({std::log(t.lhs), std::log(t.a), std::log(t.b)});
    }
    require(logs.size() >= 3, ErrorKind::InsufficientData,
            "fit needs at least 3 usable triples (got " + std::to_string(logs.size()) + ")");
    out.used = logs.size();

    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 99; ++k) {
        const double beta = k / 100.0;
        double worst = -std::numeric_limits<double>::infinity();
        for (const auto& l : logs) worst = std::max(worst, l[0] - (1.0 - beta) * l[1] - beta * l[2]);
        if (worst < best) {
            best = worst;
            out.beta = beta;
        }
    }
    out.C = std::exp(best);
    return out;
}

bool satisfies(const Triple& t, double C, double beta, double tol) {
    if (t.lhs == 0.0) return true;
    if (t.b == 0.0 || t.a == 0.0) return false;
    const double log_rhs = std::log(C) + (1.0 - beta) * std::log(t.a) + beta * std::log(t.b);
    return std::log(t.lhs) <= log_rhs + std::log1p(tol);
}

void apply_fit(std::vector<EstimateReport>& reports, const FitResult& fit) {
    for (auto& r : reports) {
        r.fitted = FittedConstants{fit.C, fit.beta};
        const Triple t{r.lhs, r.rhs("a"), r.rhs("b")};
        const double rhs = fit.C * std::pow(t.a, 1.0 - fit.beta) * std::pow(t.b, fit.beta);
        r.factor("fitted_rhs", rhs);
        r.pass = r.pass && satisfies(t, fit.C, fit.beta);
    }
}

HoldoutResult holdout_fit(const std::vector<Triple>& triples, double test_fraction, double inflate) {
    require(test_fraction > 0.0 && test_fraction < 1.0, ErrorKind::InvalidParameter, "test fraction must lie in (0, 1)");
    require(inflate >= 1.0, ErrorKind::InvalidParameter, "inflation must be >= 1");
    const auto n = triples.size();
    const auto test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
    require(test >= 1 && n - test >= 3, ErrorKind::InsufficientData, "too few triples for a holdout split");
    HoldoutResult out;
    out.train = n - test;
    out.test = test;
    out.inflate = inflate;
    out.fit = fit_beta_C(std::vector<Triple>(triples.begin(), triples.begin() + static_cast<std::ptrdiff_t>(out.train)));
    for (std::size_t i = out.train; i < n; ++i)
        if (!satisfies(triples[i], out.fit.C * inflate, out.fit.beta)) ++out.test_failures;
    return out;
}

}  // namespace heatobs
