#include "heatobs/initial_data.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "heatobs/error.hpp"
#include "heatobs/spectral.hpp"

namespace heatobs::init {

double smootherstep_down(double s) noexcept {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double smootherstep_down_d1(double s) noexcept {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return -30.0 * s * s * (1.0 - s) * (1.0 - s);
}

double smootherstep_down_d2(double s) noexcept {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    return -60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

Field gaussian(const GridSpec& spec, const Point& center, double amplitude, double s) {
    require(s > 0.0, ErrorKind::InvalidParameter, "Gaussian scale must be positive");
    return Field::sample(spec, [&](const Point& x) { return amplitude * std::exp(-spec.distance_sq(x, center) / (4.0 * s)); });
}

Field band_limited(const GridSpec& spec, std::size_t kmax, Rng& rng) {
    require(kmax >= 1 && kmax < spec.m / 2, ErrorKind::InvalidParameter, "band limit must lie in [1, m/2)");
    spectral::Spectrum s{spec, std::vector<std::complex<double>>(spectral::half_size(spec))};
    const std::size_t h = spec.m / 2 + 1;
    const auto kmax_signed = static_cast<long long>(kmax);
    for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
        bool inside = static_cast<long long>(k % h) <= kmax_signed;
        std::size_t rest = k / h;
        for (int a = 0; a < spec.n - 1; ++a) {
            const auto idx = static_cast<long long>(rest % spec.m);
            rest /= spec.m;
            const long long signed_k = idx <= static_cast<long long>(spec.m / 2) ? idx : idx - static_cast<long long>(spec.m);
            if (std::llabs(signed_k) > kmax_signed) inside = false;
        }
        const double re = rng.normal();
        const double im = rng.normal();
        if (inside) s.coeffs[k] = {re, im};
    }
    auto v = spectral::inverse_values(s);
    double top = 0.0;
    for (double x : v) top = std::max(top, std::abs(x));
    if (top > 0.0)
        for (double& x : v) x /= top;
    return Field(spec, std::move(v));
}

Field spike(const GridSpec& spec, double q, double width) {
    require(q >= 1.0 && width > 0.0, ErrorKind::InvalidParameter, "spike needs q >= 1 and width > 0");
    const Point origin{0.0, 0.0, 0.0};
    const double n = static_cast<double>(spec.n);
    if (q == 1.0) {
        const double norm = std::pow(4.0 * std::numbers::pi * width, -n / 2.0);
        return gaussian(spec, origin, norm, width);
    }
    const double inner = spec.X / 4.0, outer = spec.X / 2.0;
    return Field::sample(spec, [&](const Point& x) {
        const double r2 = spec.distance_sq(x, origin);
        const double cut = smootherstep_down((std::sqrt(r2) - inner) / (outer - inner));
        return cut * std::pow(r2 + width, -n / (2.0 * q));
    });
}

Field smooth_bump(const GridSpec& spec, const Point& center, double inner, double outer, double amplitude) {
    require(outer > inner && inner >= 0.0, ErrorKind::InvalidParameter, "bump needs 0 <= inner < outer");
    return Field::sample(spec, [&](const Point& x) {
        const double r = std::sqrt(spec.distance_sq(x, center));
        return amplitude * smootherstep_down((r - inner) / (outer - inner));
    });
}

}  // namespace heatobs::init
