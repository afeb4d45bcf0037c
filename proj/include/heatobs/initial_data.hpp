#pragma once

// Initial-data families used by the harness and the tests.

#include "heatobs/grid.hpp"
#include "heatobs/random.hpp"

namespace heatobs::init {

// amplitude * exp(-|x - center|^2 / (4 s)); the heat flow maps s to s + t.
Field gaussian(const GridSpec& spec, const Point& center, double amplitude, double s);

// Random trigonometric polynomial with |k_a| <= kmax on every axis, scaled to
// unit sup norm.
Field band_limited(const GridSpec& spec, std::size_t kmax, Rng& rng);

// Data whose heat evolution saturates the L^q -> L^inf rate t^{-n/(2q)} on an
// intermediate window: a narrow normalized Gaussian of variance-scale `width`
// for q = 1, otherwise the regularized profile (|x|^2 + width)^{-n/(2q)} cut
// off smoothly at radius X/2.
Field spike(const GridSpec& spec, double q, double width);

// Radial C^2 bump: 1 on |x - center| <= inner, 0 beyond outer, quintic
// smootherstep in between.
Field smooth_bump(const GridSpec& spec, const Point& center, double inner, double outer, double amplitude = 1.0);

// Quintic smootherstep transition 1 -> 0 on s in [0, 1]; derivatives in s.
double smootherstep_down(double s) noexcept;
double smootherstep_down_d1(double s) noexcept;
double smootherstep_down_d2(double s) noexcept;

}  // namespace heatobs::init
