#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace heatobs::stats {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares y = slope*x + intercept. Needs >= 2 distinct x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

// Slope of log y against log x; every entry must be positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

// Average ranks (ties share the mean rank), 1-based.
std::vector<double> ranks(std::span<const double> v);

// Spearman rank correlation; NaN when either input has zero rank variance.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace heatobs::stats
