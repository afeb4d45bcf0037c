#include "heatobs/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace heatobs::kernels {

namespace serial {

double sum(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double sum_sq(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

double sum_abs_pow(std::span<const double> v, double p) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), p);
    return s;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double weighted_sum_sq(std::span<const double> v, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i] * v[i];
    return s;
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * a[i] * b[i];
    return s;
}

double mode_energy(std::span<const std::complex<double>> c, std::span<const double> w) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += w[i] * std::norm(c[i]);
    return s;
}

void scale_modes(std::span<std::complex<double>> c, std::span<const double> mult) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= mult[i];
}

}  // namespace serial

namespace omp {

double sum(std::span<const double> v) {
    return blocked_sum(v.size(), [&](std::size_t i) { return v[i]; });
}

double sum_sq(std::span<const double> v) {
    return blocked_sum(v.size(), [&](std::size_t i) { return v[i] * v[i]; });
}

double sum_abs_pow(std::span<const double> v, double p) {
    return blocked_sum(v.size(), [&](std::size_t i) { return std::pow(std::abs(v[i]), p); });
}

double max_abs(std::span<const double> v) {
    // max is order-independent, so a plain reduction is deterministic
    double m = 0.0;
    const auto n = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for reduction(max : m) schedule(static) if (n >= static_cast<std::ptrdiff_t>(kBlock))
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

double weighted_sum_sq(std::span<const double> v, std::span<const double> w) {
    return blocked_sum(v.size(), [&](std::size_t i) { return w[i] * v[i] * v[i]; });
}

double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w) {
    return blocked_sum(a.size(), [&](std::size_t i) { return w[i] * a[i] * b[i]; });
}

double mode_energy(std::span<const std::complex<double>> c, std::span<const double> w) {
    return blocked_sum(c.size(), [&](std::size_t i) { return w[i] * std::norm(c[i]); });
}

void scale_modes(std::span<std::complex<double>> c, std::span<const double> mult) {
    const auto n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kBlock))
    for (std::ptrdiff_t i = 0; i < n; ++i) c[i] *= mult[i];
}

}  // namespace omp

}  // namespace heatobs::kernels
