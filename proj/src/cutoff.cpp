#include <cmath>

#include "heatobs/error.hpp"
#include "heatobs/frequency.hpp"
#include "heatobs/initial_data.hpp"

namespace heatobs {

std::string to_string(CutoffKind k) {
    switch (k) {
    case CutoffKind::eta: return "eta";
    case CutoffKind::sigma: return "sigma";
    case CutoffKind::sigma_tilde: return "sigma_tilde";
    }
    return "eta";
}

CutoffFamily make_cutoff(const GridSpec& spec, const Point& center, double R, CutoffKind kind) {
    require(R > 0.0, ErrorKind::InvalidParameter, "cutoff radius scale must be positive");
    CutoffFamily c;
    c.kind = kind;
    c.center = center;
    c.R = R;
    switch (kind) {
    case CutoffKind::eta: c.inner = 2.5 * R; c.outer = 3.0 * R; break;
    case CutoffKind::sigma: c.inner = 4.0 * R; c.outer = 5.0 * R; break;
    case CutoffKind::sigma_tilde: c.inner = 3.0 * R; c.outer = 4.0 * R; break;
    }
    const double width = c.outer - c.inner;
    const double n = static_cast<double>(spec.n);

    std::vector<double> value(spec.size()), lap(spec.size());
    std::vector<std::vector<double>> grad(static_cast<std::size_t>(spec.n), std::vector<double>(spec.size()));
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Point d = spec.min_image(spec.point(i), center);
        double r2 = 0.0;
        for (int a = 0; a < spec.n; ++a) r2 += d[static_cast<std::size_t>(a)] * d[static_cast<std::size_t>(a)];
        const double r = std::sqrt(r2);
        const double s = (r - c.inner) / width;
        value[i] = init::smootherstep_down(s);
        const double d1 = init::smootherstep_down_d1(s) / width;
        const double d2 = init::smootherstep_down_d2(s) / (width * width);
        // d1 vanishes unless r > inner > 0, so dividing by r is safe
        for (int a = 0; a < spec.n; ++a)
            grad[static_cast<std::size_t>(a)][i] = d1 == 0.0 ? 0.0 : d1 * d[static_cast<std::size_t>(a)] / r;
        lap[i] = d1 == 0.0 && d2 == 0.0 ? 0.0 : d2 + (n - 1.0) * d1 / r;
    }
    c.value = Field(spec, std::move(value));
    for (auto& g : grad) c.grad.emplace_back(spec, std::move(g));
    c.lap = Field(spec, std::move(lap));
    // max |d/ds smootherstep| = 30/16 at s = 1/2; max |d2/ds2| = 10/sqrt(3)
    c.grad_bound = 1.875 / width;
    c.lap_bound = 10.0 / std::sqrt(3.0) / (width * width) + (n - 1.0) * c.grad_bound / c.inner;
    return c;
}

CutoffFamily make_cutoff(const ObservationRegion& region, std::size_t j, CutoffKind kind) {
    require(j < region.count(), ErrorKind::IndexOutOfRange, "cube index " + std::to_string(j) + " out of range");
    return make_cutoff(region.spec, region.centers[j], region.R(), kind);
}

Field gaussian_weight(const GridSpec& spec, const Point& xj, double h, double t, double T) {
    require(h > 0.0, ErrorKind::InvalidParameter, "weight offset h must be positive");
    require(t <= T * (1.0 + 1e-12) + 1e-15, ErrorKind::InvalidParameter, "weight needs t <= T");
    const double tau = T - t + h;
    const double scale = std::pow(tau, -0.5 * spec.n);
    return Field::sample(spec, [&](const Point& x) { return scale * std::exp(-spec.distance_sq(x, xj) / (4.0 * tau)); });
}

}  // namespace heatobs
