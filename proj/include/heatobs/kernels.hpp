#pragma once

// Data-parallel inner loops used throughout the library.
//
// Each kernel exists twice: `serial::` is the plain reference loop kept for
// testing and benchmarking, `omp::` is what the library calls. The OpenMP
// reductions split the index range into fixed-size blocks, sum each block
// serially and combine the partial sums in block order, so their result does
// not depend on the number of threads.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace heatobs::kernels {

inline constexpr std::size_t kBlock = 4096;

namespace serial {

double sum(std::span<const double> v);
double sum_sq(std::span<const double> v);
double sum_abs_pow(std::span<const double> v, double p);
double max_abs(std::span<const double> v);
double weighted_sum_sq(std::span<const double> v, std::span<const double> w);
double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w);
double mode_energy(std::span<const std::complex<double>> c, std::span<const double> w);
void scale_modes(std::span<std::complex<double>> c, std::span<const double> mult);

template <class F>
void transform(std::span<const double> in, std::span<double> out, F f) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
}

}  // namespace serial

namespace omp {

template <class Term>
double blocked_sum(std::size_t count, Term term) {
    const std::size_t blocks = (count + kBlock - 1) / kBlock;
    if (blocks <= 1) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += term(i);
        return s;
    }
    std::vector<double> partial(blocks, 0.0);
    const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = lo + kBlock < count ? lo + kBlock : count;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double sum(std::span<const double> v);
double sum_sq(std::span<const double> v);
double sum_abs_pow(std::span<const double> v, double p);
double max_abs(std::span<const double> v);
double weighted_sum_sq(std::span<const double> v, std::span<const double> w);
double weighted_dot(std::span<const double> a, std::span<const double> b, std::span<const double> w);
double mode_energy(std::span<const std::complex<double>> c, std::span<const double> w);
void scale_modes(std::span<std::complex<double>> c, std::span<const double> mult);

template <class F>
void transform(std::span<const double> in, std::span<double> out, F f) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static) if (n >= static_cast<std::ptrdiff_t>(kBlock))
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = f(in[i]);
}

}  // namespace omp

}  // namespace heatobs::kernels
