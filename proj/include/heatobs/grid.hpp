#pragma once

// Periodic lattice truncation of R^n and the fields that live on it.
//
// The box is [-X, X)^n sampled at x_i = -X + i*dx, dx = 2X/m, stored
// row-major with axis 0 slowest. All integrals are plain Riemann sums
// dx^n * sum(...), which are spectrally accurate for smooth periodic data.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace heatobs {

// Points always carry three coordinates; entries past the grid dimension are
// ignored (and kept at zero by the library).
using Point = std::array<double, 3>;

struct GridSpec {
    int n = 1;
    std::size_t m = 16;
    double X = 1.0;

    // Validates n in {1,2,3}, m a power of two >= 16, X > 0.
    static GridSpec make(int n, std::size_t m, double X);

    double dx() const noexcept { return 2.0 * X / static_cast<double>(m); }
    double cell_volume() const noexcept;
    double box_volume() const noexcept;
    std::size_t size() const noexcept;
    double coord(std::size_t i) const noexcept { return -X + static_cast<double>(i) * dx(); }

    std::array<std::size_t, 3> unravel(std::size_t flat) const noexcept;
    Point point(std::size_t flat) const noexcept;

    // Shortest periodic displacement x - c (each component in [-X, X)).
    Point min_image(const Point& x, const Point& c) const noexcept;
    double distance_sq(const Point& x, const Point& c) const noexcept;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

void validate(const GridSpec& spec);

class Field {
public:
    Field() = default;
    Field(GridSpec spec, std::vector<double> values, std::optional<double> time = std::nullopt);

    static Field zeros(const GridSpec& spec);
    static Field constant(const GridSpec& spec, double c);

    template <class Fn>
    static Field sample(const GridSpec& spec, Fn&& fn, std::optional<double> time = std::nullopt) {
        std::vector<double> v(spec.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(spec.point(i));
        return Field(spec, std::move(v), time);
    }

    const GridSpec& spec() const noexcept { return spec_; }
    std::span<const double> values() const noexcept { return values_; }
    std::optional<double> time() const noexcept { return time_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    Field with_time(std::optional<double> t) const;
    bool all_finite() const noexcept;
    std::vector<double> release() && { return std::move(values_); }

private:
    GridSpec spec_{};
    std::vector<double> values_;
    std::optional<double> time_;
};

void require_same_grid(const Field& a, const Field& b);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field hadamard(const Field& a, const Field& b);

// Riemann-sum L^p norm; p = infinity gives max |v|. Throws InvalidParameter for p < 1.
double lp_norm(const Field& f, double p);

// Fourier multiplier norm (sum (1+|xi|^2)^s |c_xi|^2 * (2X)^n)^{1/2}, s in {-1, 0, +1}.
double sobolev_norm(const Field& f, int s);

// Inner product with the same multiplier weighting.
double sobolev_inner(const Field& a, const Field& b, int s);

std::vector<Field> gradient(const Field& f);
Field laplacian(const Field& f);

// dx^n * sum(mask * v^2); mask must live on the same grid.
double masked_l2(const Field& f, const Field& mask);

// dx^n * sum(w * v^2) for an arbitrary nonnegative weight field.
double weighted_l2(const Field& f, const Field& w);
double weighted_inner(const Field& a, const Field& b, const Field& w);

// Sum of |grad f|^2 weighted by w, dx^n scaled.
double weighted_dirichlet(const std::vector<Field>& grad, const Field& w);

double integral(const Field& f);
double mean(const Field& f);

// Fraction of total L^2 mass carried by the outermost `layers` cells of the box.
double boundary_mass_fraction(const Field& f, std::size_t layers = 2);

// Binary snapshot file: "HOBS", u32 version=1, u8 n, u64 m, f64 X, f64 time,
// then m^n f64 values, all little-endian.
std::vector<std::uint8_t> encode_snapshot(const Field& f);
Field decode_snapshot(std::span<const std::uint8_t> bytes);
void write_snapshot(const Field& f, const std::string& path);
Field read_snapshot(const std::string& path);

}  // namespace heatobs
