#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatobs/error.hpp"
#include "heatobs/estimates.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/stats.hpp"

namespace heatobs {

namespace {

double l2sq(const Field& f) {
    const double n = lp_norm(f, 2.0);
    return n * n;
}

}  // namespace

ProbeResult unique_continuation_probe(const Field& y0_base, const std::vector<double>& eps_list,
                                      const NonlinearitySpec& f, const ObservationRegion& region, double T, double dt,
                                      std::size_t stride) {
    require(y0_base.spec() == region.spec, ErrorKind::GridMismatch, "base field and region use different grids");
    require(!eps_list.empty(), ErrorKind::InvalidParameter, "empty epsilon list");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        require(eps_list[i] >= 0.0, ErrorKind::InvalidParameter, "epsilons must be nonnegative");
        if (i > 0) require(eps_list[i] <= eps_list[i - 1], ErrorKind::InvalidParameter, "epsilons must be sorted descending");
    }
    const GridSpec& spec = region.spec;

    ProbeResult out;
    double far = -1.0;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Point x = spec.point(i);
        double d2 = std::numeric_limits<double>::infinity();
        for (const Point& c : region.centers) d2 = std::min(d2, spec.distance_sq(x, c));
        if (d2 > far) far = d2, out.bump_center = x;
    }
    const double gap = std::sqrt(far) - region.r;
    require(gap > 2.0 * spec.dx(), ErrorKind::InvalidGeometry, "no room for a bump outside omega");
    out.bump_radius = 0.9 * gap;
    const Field bump = init::smooth_bump(spec, out.bump_center, 0.5 * out.bump_radius, out.bump_radius);
    require(masked_l2(bump, region.mask) == 0.0, ErrorKind::InvalidGeometry, "probe bump overlaps omega");

    const Trajectory base = solve_semilinear(y0_base, f, T, dt, stride);
    out.rows.resize(eps_list.size());
    const auto count = static_cast<std::ptrdiff_t>(eps_list.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const double eps = eps_list[static_cast<std::size_t>(i)];
        ProbeRow row;
        row.eps = eps;
        if (eps > 0.0) {
            const Field y2 = solve_semilinear(y0_base + eps * bump, f, T, dt, stride).fields.back();
            const Field phiT = base.fields.back() - y2;
            row.omega_mass = masked_l2(phiT, region.mask);
            row.phiT_l2sq = l2sq(phiT);
            row.phi0_l2sq = eps * eps * l2sq(bump);
        }
        out.rows[static_cast<std::size_t>(i)] = row;
    }

    std::vector<double> om, gl;
    for (const auto& r : out.rows) {
        om.push_back(r.omega_mass);
        gl.push_back(r.phiT_l2sq);
    }
    out.rank_correlation = eps_list.size() >= 2 ? stats::spearman(om, gl) : 1.0;

    double spread = 0.0;
    for (auto column : {&ProbeRow::omega_mass, &ProbeRow::phiT_l2sq, &ProbeRow::phi0_l2sq}) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (const auto& r : out.rows) {
            if (r.eps == 0.0) continue;
            const double ratio = r.*column / (r.eps * r.eps);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi > 0.0) spread = std::max(spread, (hi - lo) / hi);
    }
    out.ratio_spread = spread;
    return out;
}

std::string to_csv(const ProbeResult& probe) {
    std::ostringstream os;
    os.precision(17);
    os << "eps,omega_mass,phiT_l2sq,phi0_l2sq\n";
    for (const auto& r : probe.rows) os << r.eps << ',' << r.omega_mass << ',' << r.phiT_l2sq << ',' << r.phi0_l2sq << '\n';
    return os.str();
}

}  // namespace heatobs
