#pragma once

// Observation sets built from a cube tiling of the box with one open ball
// B_r(x_j) inside each cube I_j; omega is the union of the balls.

#include <cstdint>
#include <string>
#include <vector>

#include "heatobs/grid.hpp"

namespace heatobs {

enum class Placement { centered, jittered };

std::string to_string(Placement p);
Placement placement_from_string(const std::string& s);

struct ObservationRegion {
    GridSpec spec;
    double L = 1.0;
    double r = 0.25;
    Placement placement = Placement::centered;
    std::uint64_t seed = 0;
    std::size_t cubes_per_axis = 0;
    std::vector<Point> centers;
    Field mask;                           // 1 on omega
    std::vector<std::uint32_t> cube_index;  // lattice site -> j

    std::size_t count() const noexcept { return centers.size(); }
    double R() const noexcept;  // sqrt(n) L
};

// Cubes [lo, lo + L) per axis with lo = -X + kL. L must divide 2X and the
// resulting cube count per axis must divide m so cubes hold whole lattice
// cells. Jittered centers are uniform in [lo + r, lo + L - r] per axis.
// A lattice site belongs to a ball iff |x - x_j| < r.
ObservationRegion build_region(const GridSpec& spec, double L, double r, Placement placement,
                               std::uint64_t seed = 0);

// min_j |omega cap I_j| / |I_j| on the lattice.
double thickness(const ObservationRegion& region);

Field cube_mask(const ObservationRegion& region, std::size_t j);

// Open ball of radius rho around x_j, minimum-image metric.
Field ball_mask(const ObservationRegion& region, std::size_t j, double rho);
Field ball_mask(const GridSpec& spec, const Point& center, double rho);

// Throws InvalidGeometry unless 5R <= X, so every ball used by the local
// estimates embeds in the box without touching its own periodic image.
void require_embedded_balls(const ObservationRegion& region);

// Plain text: L, r, placement, seed, then one "center=" line per cube.
std::string region_manifest(const ObservationRegion& region);
void write_region(const ObservationRegion& region, const std::string& dir);

}  // namespace heatobs
