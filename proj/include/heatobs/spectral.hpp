#pragma once

// Real-to-complex lattice transforms over the periodic box.
//
// Coefficients are stored in the half-complex layout (last axis keeps
// indices 0..m/2) and normalized as Fourier coefficients c = DFT(v)/m^n, so
// that the constant field c has c_0 = c. The lattice wavenumber of index k
// is xi = pi*k'/X with k' the signed index in [-m/2, m/2).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "heatobs/grid.hpp"

namespace heatobs::spectral {

struct Spectrum {
    GridSpec spec;
    std::vector<std::complex<double>> coeffs;
};

std::size_t half_size(const GridSpec& spec) noexcept;

Spectrum forward(const Field& f);
std::vector<double> inverse_values(const Spectrum& s);
Field inverse(const Spectrum& s, std::optional<double> time = std::nullopt);

// |xi|^2 per half-layout mode.
std::span<const double> xi_squared(const GridSpec& spec);

// Multiplicity of each half-layout mode in the full spectrum (1 or 2), so that
// (2X)^n * sum(weight * |c|^2) equals the L^2 norm squared.
std::span<const double> parseval_weight(const GridSpec& spec);

// Signed wavenumber of a half-layout mode along one axis; zero on the Nyquist
// index of that axis (odd derivatives of the Nyquist mode are dropped).
double xi_component(const GridSpec& spec, std::size_t mode, int axis) noexcept;

// Multiply every mode by g(|xi|^2) and transform back.
template <class G>
Field apply_multiplier(const Field& f, G g, std::optional<double> time = std::nullopt);

Field apply_multiplier_table(const Field& f, std::span<const double> mult, std::optional<double> time);

}  // namespace heatobs::spectral

namespace heatobs::spectral {

template <class G>
Field apply_multiplier(const Field& f, G g, std::optional<double> time) {
    auto xi2 = xi_squared(f.spec());
    std::vector<double> mult(xi2.size());
    for (std::size_t k = 0; k < xi2.size(); ++k) mult[k] = g(xi2[k]);
    return apply_multiplier_table(f, mult, time);
}

}  // namespace heatobs::spectral
