#pragma once

// Heat semigroup e^{t Laplacian} as the Fourier multiplier exp(-|xi|^2 t),
// the normalized heat kernel, and the L^q -> L^p smoothing check.

#include <cstdint>
#include <utility>
#include <vector>

#include "heatobs/grid.hpp"
#include "heatobs/report.hpp"

namespace heatobs {

// Exact spectral propagation; t = 0 returns the input unchanged. The time tag
// (if any) advances by t.
Field heat_propagate(const Field& f, double t);

// (4 pi t)^{-n/2} exp(-|x - center|^2 / (4t)) with the periodic minimum-image
// distance. Logs a warning to std::clog when t > X^2/16 (periodic images no
// longer negligible).
Field heat_kernel(const GridSpec& spec, double t, const Point& center);

bool kernel_aliasing_risk(const GridSpec& spec, double t) noexcept;

// ||e^{tL} f||_p <= (4 pi t)^{-(n/2)(1/q - 1/p)} ||f||_q, passing when
// lhs <= rhs * (1 + tol). p or q may be infinity.
EstimateReport lp_lq_check(const Field& f, double t, double q, double p, double tol = 1e-8);

struct LpLqSuiteOptions {
    std::size_t fields = 100;
    std::uint64_t seed = 1;
    std::vector<double> times{0.1, 0.5, 1.0};
    std::vector<std::pair<double, double>> pq;  // (p, q); empty selects the default four pairs
    double tol = 1e-8;
};

// Runs lp_lq_check over seeded band-limited fields x (p, q) pairs x times.
std::vector<EstimateReport> lp_lq_suite(const GridSpec& spec, const LpLqSuiteOptions& opt);

}  // namespace heatobs
