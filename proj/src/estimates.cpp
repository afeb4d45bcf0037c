#include "heatobs/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "heatobs/error.hpp"
#include "heatobs/spectral.hpp"

namespace heatobs {

namespace {

double l2sq(const Field& f) {
    const double n = lp_norm(f, 2.0);
    return n * n;
}

Json pair_meta(const SolutionPair& pair) {
    return Json{{"T", pair.T()},
                {"n", pair.phi.spec.n},
                {"m", pair.phi.spec.m},
                {"X", pair.phi.spec.X},
                {"fspec", to_string(pair.phi.fspec.kind)},
                {"lambda", pair.phi.fspec.lambda},
                {"p", pair.phi.fspec.p},
                {"dt", pair.phi.dt},
                {"M", pair.M},
                {"L_M", pair.L_M}};
}

Json region_meta(const ObservationRegion& region) {
    return Json{{"L", region.L}, {"r", region.r}, {"placement", to_string(region.placement)}, {"seed", region.seed}};
}

}  // namespace

double local_energy_Ej(const SolutionPair& pair, const ObservationRegion& region, std::size_t j) {
    require(pair.phi.spec == region.spec, ErrorKind::GridMismatch, "pair and region use different grids");
    require_embedded_balls(region);
    const Field ball = ball_mask(region, j, 5.0 * region.R());
    const auto& ts = pair.times();
    std::vector<double> mass(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) mass[k] = masked_l2(pair.phi.fields[k], ball);
    double integral = 0.0;
    for (std::size_t k = 1; k < ts.size(); ++k) integral += 0.5 * (ts[k] - ts[k - 1]) * (mass[k] + mass[k - 1]);
    return mass.front() + integral;
}

EstimateReport local_energy_check(const SolutionPair& pair, const ObservationRegion& region, std::size_t j) {
    const double E = local_energy_Ej(pair, region, j);
    require(E > 0.0, ErrorKind::ZeroEnergy, "local energy E_j vanishes for j=" + std::to_string(j));
    const Field ball = ball_mask(region, j, 3.0 * region.R());
    std::vector<double> ts, rho0, rho1;
    for (std::size_t k = 0; k < pair.phi.size(); ++k) {
        const double t = pair.times()[k];
        if (t <= 0.0) continue;
        const Field& phi = pair.phi.fields[k];
        ts.push_back(t);
        rho0.push_back(masked_l2(phi, ball) / E);
        rho1.push_back(weighted_dirichlet(gradient(phi), ball) / ((1.0 + 1.0 / t) * E));
    }
    require(!ts.empty(), ErrorKind::InsufficientSamples, "no snapshots with t > 0");
    const double s0 = *std::max_element(rho0.begin(), rho0.end());
    const double s1 = *std::max_element(rho1.begin(), rho1.end());

    EstimateReport r;
    r.kind = "lemma_4_1";
    r.lhs = s0;
    r.factor("E_j", E).factor("sup_rho0", s0).factor("sup_rho1", s1);
    r.pass = std::isfinite(s0) && std::isfinite(s1);
    r.meta = pair_meta(pair);
    r.meta["region"] = region_meta(region);
    r.meta["j"] = j;
    r.meta["t"] = ts;
    r.meta["rho0"] = rho0;
    r.meta["rho1"] = rho1;
    return r;
}

EstimateReport local_interpolation_check(const SolutionPair& pair, const ObservationRegion& region, std::size_t j,
                                         double beta) {
    require(beta > 0.0 && beta < 1.0, ErrorKind::InvalidParameter, "beta must lie in (0, 1)");
    const Field& phiT = pair.phi.fields.back();
    const double a = masked_l2(phiT, cube_mask(region, j));
    const double b = masked_l2(phiT, ball_mask(region, j, region.r));
    const double e = local_energy_Ej(pair, region, j);

    EstimateReport r;
    r.kind = "eq_r4_3";
    r.meta = pair_meta(pair);
    r.meta["region"] = region_meta(region);
    r.meta["j"] = j;
    r.meta["beta"] = beta;
    r.lhs = a;
    r.factor("a", e).factor("b", b).factor("E_j", e);
    if (a == 0.0) {
        r.factor("prefactor", 0.0);
        r.pass = true;
        r.meta["vacuous"] = true;
        return r;
    }
    require(e > 0.0, ErrorKind::ZeroEnergy, "local energy E_j vanishes while the cube mass does not");
    require(b > 0.0, ErrorKind::ZeroBallMass,
            "difference vanishes on B_r(x_j) at T but not on I_j (j=" + std::to_string(j) + ")");
    const double prefactor = std::exp(std::log(a) - beta * std::log(b) - (1.0 - beta) * std::log(e));
    r.factor("prefactor", prefactor);
    r.pass = std::isfinite(prefactor);
    return r;
}

EstimateReport global_interpolation_check(const SolutionPair& pair, const ObservationRegion& region, double tol) {
    require(pair.phi.spec == region.spec, ErrorKind::GridMismatch, "pair and region use different grids");
    const double a = l2sq(pair.phi.fields.front());
    require(a > 0.0, ErrorKind::ZeroInitialDifference, "initial difference is zero");
    const Field& phiT = pair.phi.fields.back();
    const double lhs = l2sq(phiT);
    const double b = masked_l2(phiT, region.mask);
    const double growth = std::exp(2.0 * pair.L_M * pair.T());

    EstimateReport r;
    r.kind = "eq_1_3";
    r.lhs = lhs;
    r.factor("a", a).factor("b", b).factor("dissipation_bound", a * growth);
    r.pass = lhs <= a * growth * (1.0 + tol);
    r.meta = pair_meta(pair);
    r.meta["region"] = region_meta(region);
    r.meta["tol"] = tol;
    return r;
}

Triple interpolation_triple(const EstimateReport& r) { return Triple{r.lhs, r.rhs("a"), r.rhs("b")}; }

Triple stability_triple(const EstimateReport& r) { return Triple{r.lhs, 1.0, r.rhs("b")}; }

ChiTrace chi_trace(const SolutionPair& pair) {
    ChiTrace out;
    const auto xi2 = spectral::xi_squared(pair.phi.spec);
    const double upper = 1.0 + *std::max_element(xi2.begin(), xi2.end());
    for (std::size_t k = 0; k < pair.phi.size(); ++k) {
        const Field& phi = pair.phi.fields[k];
        const double l2 = l2sq(phi);
        if (l2 == 0.0) {
            out.truncated = true;
            out.zero_time = pair.times()[k];
            break;
        }
        const double hm = sobolev_norm(phi, -1);
        const double chi = l2 / (hm * hm);
        if (chi < 1.0 - 1e-12 || chi > upper * (1.0 + 1e-12)) out.within_bounds = false;
        out.times.push_back(pair.times()[k]);
        out.chi.push_back(chi);
    }
    return out;
}

EstimateReport chi_growth_check(const SolutionPair& pair, double slack) {
    const ChiTrace tr = chi_trace(pair);
    require(!tr.chi.empty(), ErrorKind::ZeroInitialDifference, "initial difference is zero");
    const double chi0 = tr.chi.front();
    const double L2 = pair.L_M * pair.L_M;
    double worst = 0.0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < tr.chi.size(); ++k) {
        const double ratio = tr.chi[k] / (std::exp(0.5 * L2 * tr.times[k]) * chi0);
        if (ratio > worst) worst = ratio, at = k;
    }

    EstimateReport r;
    r.kind = "eq_r5_12";
    r.lhs = tr.chi[at];
    r.factor("chi0", chi0)
        .factor("growth", std::exp(0.5 * L2 * tr.times[at]))
        .factor("t", tr.times[at])
        .factor("max_ratio", worst);
    r.pass = worst <= 1.0 + slack && tr.within_bounds;
    r.meta = pair_meta(pair);
    r.meta["slack"] = slack;
    r.meta["truncated"] = tr.truncated;
    r.meta["within_bounds"] = tr.within_bounds;
    r.meta["t"] = tr.times;
    r.meta["chi"] = tr.chi;
    return r;
}

EstimateReport backward_bound_check(const SolutionPair& pair, double slack) {
    const double a = l2sq(pair.phi.fields.front());
    require(a > 0.0, ErrorKind::ZeroInitialDifference, "initial difference is zero");
    const double hm = sobolev_norm(pair.phi.fields.front(), -1);
    const double chi0 = a / (hm * hm);
    const double T = pair.T();
    const double L = pair.L_M;
    const double log_bound = 2.0 * std::exp(0.5 * L * L * T) * (chi0 + L * std::sqrt(chi0)) * (1.0 + T);
    double worst = 0.0;
    double worst_t = 0.0;
    for (std::size_t k = 0; k < pair.phi.size(); ++k) {
        const double l2 = l2sq(pair.phi.fields[k]);
        require(l2 > 0.0, ErrorKind::ZeroLaterDifference,
                "difference vanishes at t=" + std::to_string(pair.times()[k]) + " although phi(0) != 0");
        const double ratio = a / l2;
        if (ratio > worst) worst = ratio, worst_t = pair.times()[k];
    }

    EstimateReport r;
    r.kind = "eq_r5_14";
    r.lhs = worst;
    r.factor("chi0", chi0).factor("log_bound", log_bound).factor("bound", std::exp(log_bound)).factor("t", worst_t);
    r.pass = std::log(worst) <= log_bound + std::log1p(slack);
    r.meta = pair_meta(pair);
    r.meta["slack"] = slack;
    return r;
}

double solve_observation_constant(double chi0, double target) {
    require(chi0 > 0.0 && std::isfinite(target), ErrorKind::InvalidParameter, "need chi0 > 0 and finite target");
    // g(u) = u + chi0 e^u - target is increasing in u = ln C
    auto g = [&](double u) { return u + chi0 * std::exp(u) - target; };
    double lo = std::min(target, 0.0) - 1.0;
    double hi = std::max(std::log(std::max(target, 1.0) / chi0), 0.0) + 1.0;
    while (g(lo) > 0.0) lo = 2.0 * lo - 1.0;
    while (g(hi) < 0.0) hi = 2.0 * hi + 1.0;
    for (int it = 0; it < 400 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

EstimateReport observation_estimate_check(const SolutionPair& pair, const ObservationRegion& region) {
    require(pair.phi.spec == region.spec, ErrorKind::GridMismatch, "pair and region use different grids");
    const Field& phi0 = pair.phi.fields.front();
    const double a = l2sq(phi0);
    require(a > 0.0, ErrorKind::ZeroInitialDifference, "initial difference is zero");
    const double b = masked_l2(pair.phi.fields.back(), region.mask);
    require(b > 0.0, ErrorKind::ZeroObservation, "difference vanishes on omega at T although phi(0) != 0");
    const double hm = sobolev_norm(phi0, -1);
    const double chi0 = a / (hm * hm);
    const double C = solve_observation_constant(chi0, std::log(a / b));

    EstimateReport r;
    r.kind = "eq_1_4";
    r.lhs = a;
    r.factor("C_req", C).factor("chi0", chi0).factor("b", b);
    r.pass = std::isfinite(C) && C > 0.0;
    r.meta = pair_meta(pair);
    r.meta["region"] = region_meta(region);
    return r;
}

EstimateReport conditional_stability_check(const SolutionPair& pair, const ObservationRegion& region,
                                           std::optional<double> delta) {
    require(pair.phi.spec == region.spec, ErrorKind::GridMismatch, "pair and region use different grids");
    require_subcritical_exponent(pair.phi.fspec, pair.phi.spec.n);
    const double T = pair.T();
    const double d = delta.value_or(0.5 * T);
    require(d > 0.0 && d < T, ErrorKind::InvalidParameter, "delta must lie in (0, T)");
    const auto& ts = pair.times();
    const double spacing = ts.size() > 1 ? ts[1] - ts[0] : T;
    std::size_t k = ts.size();
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (std::abs(ts[i] - d) <= 1e-6 * spacing) k = i;
    require(k < ts.size(), ErrorKind::InvalidParameter, "delta must coincide with a snapshot time");

    const Field& phiT = pair.phi.fields.back();
    const double lhs = l2sq(phiT);
    const double b = masked_l2(phiT, region.mask);
    const double a = l2sq(pair.phi.fields[k]);
    const double bound = std::pow(lp_norm(pair.y1.fields[k], 2.0) + lp_norm(pair.y2.fields[k], 2.0), 2.0);

    EstimateReport r;
    r.kind = "eq_1_5";
    r.lhs = lhs;
    r.factor("a", 1.0).factor("b", b).factor("a_delta", a).factor("a_bound", bound);
    r.pass = lhs == 0.0 || a <= bound * (1.0 + 1e-12);
    r.meta = pair_meta(pair);
    r.meta["region"] = region_meta(region);
    r.meta["delta"] = ts[k];
    if (lhs == 0.0) r.meta["vacuous"] = true;
    return r;
}

}  // namespace heatobs
