#include "heatobs/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "heatobs/error.hpp"
#include "heatobs/kernels.hpp"
#include "heatobs/spectral.hpp"

namespace heatobs {

namespace {

bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::span<const double> span_of(const Field& f) { return f.values(); }

}  // namespace

GridSpec GridSpec::make(int n, std::size_t m, double X) {
    GridSpec s{n, m, X};
    validate(s);
    return s;
}

void validate(const GridSpec& spec) {
    require(spec.n >= 1 && spec.n <= 3, ErrorKind::InvalidParameter,
            "grid dimension must be 1, 2 or 3 (got " + std::to_string(spec.n) + ")");
    require(is_power_of_two(spec.m) && spec.m >= 16, ErrorKind::InvalidParameter,
            "points per axis must be a power of two >= 16 (got " + std::to_string(spec.m) + ")");
    require(std::isfinite(spec.X) && spec.X > 0.0, ErrorKind::InvalidParameter, "box half-width must be positive");
}

double GridSpec::cell_volume() const noexcept { return std::pow(dx(), n); }

double GridSpec::box_volume() const noexcept { return std::pow(2.0 * X, n); }

std::size_t GridSpec::size() const noexcept {
    std::size_t s = 1;
    for (int d = 0; d < n; ++d) s *= m;
    return s;
}

std::array<std::size_t, 3> GridSpec::unravel(std::size_t flat) const noexcept {
    std::array<std::size_t, 3> idx{0, 0, 0};
    for (int a = n - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = flat % m;
        flat /= m;
    }
    return idx;
}

Point GridSpec::point(std::size_t flat) const noexcept {
    const auto idx = unravel(flat);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = coord(idx[static_cast<std::size_t>(a)]);
    return p;
}

Point GridSpec::min_image(const Point& x, const Point& c) const noexcept {
    Point d{0.0, 0.0, 0.0};
    const double L = 2.0 * X;
    for (int a = 0; a < n; ++a) {
        const auto k = static_cast<std::size_t>(a);
        double v = x[k] - c[k];
        v -= L * std::floor(v / L + 0.5);
        d[k] = v;
    }
    return d;
}

double GridSpec::distance_sq(const Point& x, const Point& c) const noexcept {
    const Point d = min_image(x, c);
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
}

Field::Field(GridSpec spec, std::vector<double> values, std::optional<double> time)
    : spec_(spec), values_(std::move(values)), time_(time) {
    require(values_.size() == spec_.size(), ErrorKind::GridMismatch,
            "field has " + std::to_string(values_.size()) + " values, grid expects " + std::to_string(spec_.size()));
    require(all_finite(), ErrorKind::NonFinite, "field contains NaN or infinite values");
}

Field Field::zeros(const GridSpec& spec) { return Field(spec, std::vector<double>(spec.size(), 0.0)); }

Field Field::constant(const GridSpec& spec, double c) { return Field(spec, std::vector<double>(spec.size(), c)); }

Field Field::with_time(std::optional<double> t) const {
    Field copy = *this;
    copy.time_ = t;
    return copy;
}

bool Field::all_finite() const noexcept {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_grid(const Field& a, const Field& b) {
    require(a.spec() == b.spec(), ErrorKind::GridMismatch, "fields live on different grids");
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] + b[i];
    return Field(a.spec(), std::move(v), a.time());
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] - b[i];
    return Field(a.spec(), std::move(v), a.time());
}

Field operator*(double s, const Field& a) {
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a[i];
    return Field(a.spec(), std::move(v), a.time());
}

Field hadamard(const Field& a, const Field& b) {
    require_same_grid(a, b);
    std::vector<double> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[i] * b[i];
    return Field(a.spec(), std::move(v), a.time());
}

double lp_norm(const Field& f, double p) {
    require(p >= 1.0, ErrorKind::InvalidParameter, "L^p norm needs p >= 1 (got " + std::to_string(p) + ")");
    if (std::isinf(p)) return kernels::omp::max_abs(span_of(f));
    const double vol = f.spec().cell_volume();
    if (p == 1.0) return vol * kernels::omp::blocked_sum(f.size(), [&](std::size_t i) { return std::abs(f[i]); });
    if (p == 2.0) return std::sqrt(vol * kernels::omp::sum_sq(span_of(f)));
    // scale by the max to keep |v|^p representable
    const double top = kernels::omp::max_abs(span_of(f));
    if (top == 0.0) return 0.0;
    const double s = kernels::omp::blocked_sum(f.size(), [&](std::size_t i) { return std::pow(std::abs(f[i]) / top, p); });
    return top * std::pow(vol * s, 1.0 / p);
}

double sobolev_inner(const Field& a, const Field& b, int s) {
    require_same_grid(a, b);
    require(s >= -1 && s <= 1, ErrorKind::InvalidParameter, "Sobolev index must be -1, 0 or 1");
    const auto sa = spectral::forward(a);
    const auto sb = spectral::forward(b);
    const auto xi2 = spectral::xi_squared(a.spec());
    const auto w = spectral::parseval_weight(a.spec());
    const double acc = kernels::omp::blocked_sum(xi2.size(), [&](std::size_t k) {
        const double mult = s == 0 ? 1.0 : (s > 0 ? 1.0 + xi2[k] : 1.0 / (1.0 + xi2[k]));
        return w[k] * mult * (sa.coeffs[k].real() * sb.coeffs[k].real() + sa.coeffs[k].imag() * sb.coeffs[k].imag());
    });
    return a.spec().box_volume() * acc;
}

double sobolev_norm(const Field& f, int s) {
    require(s >= -1 && s <= 1, ErrorKind::InvalidParameter, "Sobolev index must be -1, 0 or 1");
    const auto sf = spectral::forward(f);
    const auto xi2 = spectral::xi_squared(f.spec());
    const auto w = spectral::parseval_weight(f.spec());
    const double acc = kernels::omp::blocked_sum(xi2.size(), [&](std::size_t k) {
        const double mult = s == 0 ? 1.0 : (s > 0 ? 1.0 + xi2[k] : 1.0 / (1.0 + xi2[k]));
        return w[k] * mult * std::norm(sf.coeffs[k]);
    });
    return std::sqrt(f.spec().box_volume() * acc);
}

std::vector<Field> gradient(const Field& f) {
    const GridSpec& spec = f.spec();
    const auto base = spectral::forward(f);
    std::vector<Field> out;
    out.reserve(static_cast<std::size_t>(spec.n));
    for (int a = 0; a < spec.n; ++a) {
        spectral::Spectrum d = base;
        for (std::size_t k = 0; k < d.coeffs.size(); ++k)
            d.coeffs[k] *= std::complex<double>(0.0, spectral::xi_component(spec, k, a));
        out.push_back(spectral::inverse(d, f.time()));
    }
    return out;
}

Field laplacian(const Field& f) {
    return spectral::apply_multiplier(f, [](double xi2) { return -xi2; }, f.time());
}

double masked_l2(const Field& f, const Field& mask) {
    require_same_grid(f, mask);
    return f.spec().cell_volume() * kernels::omp::weighted_sum_sq(f.values(), mask.values());
}

double weighted_l2(const Field& f, const Field& w) { return masked_l2(f, w); }

double weighted_inner(const Field& a, const Field& b, const Field& w) {
    require_same_grid(a, b);
    require_same_grid(a, w);
    return a.spec().cell_volume() * kernels::omp::weighted_dot(a.values(), b.values(), w.values());
}

double weighted_dirichlet(const std::vector<Field>& grad, const Field& w) {
    double s = 0.0;
    for (const Field& g : grad) s += weighted_l2(g, w);
    return s;
}

double integral(const Field& f) { return f.spec().cell_volume() * kernels::omp::sum(f.values()); }

double mean(const Field& f) { return kernels::omp::sum(f.values()) / static_cast<double>(f.size()); }

double boundary_mass_fraction(const Field& f, std::size_t layers) {
    const GridSpec& spec = f.spec();
    double edge = 0.0, total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto idx = spec.unravel(i);
        bool on_edge = false;
        for (int a = 0; a < spec.n; ++a) {
            const std::size_t k = idx[static_cast<std::size_t>(a)];
            if (k < layers || k + layers >= spec.m) on_edge = true;
        }
        const double v2 = f[i] * f[i];
        total += v2;
        if (on_edge) edge += v2;
    }
    return total == 0.0 ? 0.0 : edge / total;
}

}  // namespace heatobs
