#include "heatobs/obsregion.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heatobs/error.hpp"
#include "heatobs/random.hpp"

namespace heatobs {

std::string to_string(Placement p) { return p == Placement::centered ? "centered" : "jittered"; }

Placement placement_from_string(const std::string& s) {
    if (s == "centered") return Placement::centered;
    if (s == "jittered") return Placement::jittered;
    fail(ErrorKind::InvalidParameter, "unknown placement '" + s + "'");
}

double ObservationRegion::R() const noexcept { return std::sqrt(static_cast<double>(spec.n)) * L; }

ObservationRegion build_region(const GridSpec& spec, double L, double r, Placement placement, std::uint64_t seed) {
    validate(spec);
    require(L > 0.0 && std::isfinite(L), ErrorKind::InvalidGeometry, "cube side must be positive");
    const double ratio = 2.0 * spec.X / L;
    const double k = std::round(ratio);
    require(k >= 1.0 && std::abs(ratio - k) <= 1e-9 * ratio, ErrorKind::InvalidGeometry,
            "cube side L=" + std::to_string(L) + " does not divide the box length 2X");
    const auto per_axis = static_cast<std::size_t>(k);
    require(spec.m % per_axis == 0, ErrorKind::InvalidGeometry, "cube boundaries do not fall on lattice points");
    require(r > 0.0 && r <= L / 2.0, ErrorKind::InvalidGeometry,
            "ball radius r=" + std::to_string(r) + " must lie in (0, L/2]");
    require(r >= 2.0 * spec.dx(), ErrorKind::ResolutionTooCoarse,
            "ball radius r=" + std::to_string(r) + " is below two lattice spacings");

    ObservationRegion region;
    region.spec = spec;
    region.L = L;
    region.r = r;
    region.placement = placement;
    region.seed = seed;
    region.cubes_per_axis = per_axis;

    std::size_t cubes = 1;
    for (int a = 0; a < spec.n; ++a) cubes *= per_axis;
    Rng rng(seed);
    region.centers.resize(cubes, Point{0.0, 0.0, 0.0});
    for (std::size_t j = 0; j < cubes; ++j) {
        std::size_t rest = j;
        std::array<std::size_t, 3> idx{0, 0, 0};
        for (int a = spec.n - 1; a >= 0; --a) {
            idx[static_cast<std::size_t>(a)] = rest % per_axis;
            rest /= per_axis;
        }
        for (int a = 0; a < spec.n; ++a) {
            const double lo = -spec.X + static_cast<double>(idx[static_cast<std::size_t>(a)]) * L;
            region.centers[j][static_cast<std::size_t>(a)] =
                placement == Placement::centered ? lo + L / 2.0 : rng.uniform(lo + r, lo + L - r);
        }
    }

    const std::size_t cells = spec.m / per_axis;
    region.cube_index.resize(spec.size());
    std::vector<double> mask(spec.size(), 0.0);
    const double r2 = r * r;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const auto u = spec.unravel(i);
        std::size_t j = 0;
        for (int a = 0; a < spec.n; ++a) j = j * per_axis + u[static_cast<std::size_t>(a)] / cells;
        region.cube_index[i] = static_cast<std::uint32_t>(j);
        const Point x = spec.point(i);
        double d2 = 0.0;
        for (int a = 0; a < spec.n; ++a) {
            const double d = x[static_cast<std::size_t>(a)] - region.centers[j][static_cast<std::size_t>(a)];
            d2 += d * d;
        }
        if (d2 < r2) mask[i] = 1.0;
    }
    region.mask = Field(spec, std::move(mask));
    return region;
}

double thickness(const ObservationRegion& region) {
    std::vector<double> inside(region.count(), 0.0), total(region.count(), 0.0);
    for (std::size_t i = 0; i < region.cube_index.size(); ++i) {
        total[region.cube_index[i]] += 1.0;
        inside[region.cube_index[i]] += region.mask[i];
    }
    double t = 1.0;
    for (std::size_t j = 0; j < region.count(); ++j) t = std::min(t, inside[j] / total[j]);
    return t;
}

Field cube_mask(const ObservationRegion& region, std::size_t j) {
    require(j < region.count(), ErrorKind::IndexOutOfRange, "cube index " + std::to_string(j) + " out of range");
    std::vector<double> v(region.spec.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (region.cube_index[i] == j) v[i] = 1.0;
    return Field(region.spec, std::move(v));
}

Field ball_mask(const GridSpec& spec, const Point& center, double rho) {
    require(rho > 0.0, ErrorKind::InvalidParameter, "ball radius must be positive");
    const double rho2 = rho * rho;
    return Field::sample(spec, [&](const Point& x) { return spec.distance_sq(x, center) < rho2 ? 1.0 : 0.0; });
}

Field ball_mask(const ObservationRegion& region, std::size_t j, double rho) {
    require(j < region.count(), ErrorKind::IndexOutOfRange, "cube index " + std::to_string(j) + " out of range");
    return ball_mask(region.spec, region.centers[j], rho);
}

void require_embedded_balls(const ObservationRegion& region) {
    require(5.0 * region.R() <= region.spec.X * (1.0 + 1e-12), ErrorKind::InvalidGeometry,
            "need 5R <= X (R=" + std::to_string(region.R()) + ", X=" + std::to_string(region.spec.X) + ")");
}

std::string region_manifest(const ObservationRegion& region) {
    std::ostringstream os;
    os.precision(17);
    os << "L=" << region.L << '\n'
       << "r=" << region.r << '\n'
       << "placement=" << to_string(region.placement) << '\n'
       << "seed=" << region.seed << '\n';
    for (const Point& c : region.centers) {
        os << "center=";
        for (int a = 0; a < region.spec.n; ++a) os << (a ? "," : "") << c[static_cast<std::size_t>(a)];
        os << '\n';
    }
    return os.str();
}

void write_region(const ObservationRegion& region, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / "region.txt");
    require(static_cast<bool>(out), ErrorKind::FormatError, "cannot write region manifest in " + dir);
    out << region_manifest(region);
    write_snapshot(region.mask, (fs::path(dir) / "omega_mask.hobs").string());
}

}  // namespace heatobs
