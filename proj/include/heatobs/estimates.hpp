#pragma once

// End-to-end inequality checks on solution pairs: local energy and
// interpolation bounds, the global interpolation, observation and
// conditional-stability estimates, chi-function bounds, unique-continuation
// probes, the superlinear Gronwall lemma, and the minimax constant fit.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "heatobs/obsregion.hpp"
#include "heatobs/report.hpp"
#include "heatobs/solution_pair.hpp"

namespace heatobs {

// int_{B_5R(x_j)} |phi(0)|^2 + int_0^T int_{B_5R(x_j)} |phi|^2 (trapezoid in t).
double local_energy_Ej(const SolutionPair& pair, const ObservationRegion& region, std::size_t j);

// rho0(t) = int_{B_3R} |phi(t)|^2 / E_j and rho1(t) = int_{B_3R} |grad phi(t)|^2 / ((1 + 1/t) E_j)
// over every snapshot with t > 0; lhs is sup rho0. Kind lemma_4_1.
EstimateReport local_energy_check(const SolutionPair& pair, const ObservationRegion& region, std::size_t j);

// a = int_{I_j} |phi(T)|^2, b = int_{B_r(x_j)} |phi(T)|^2, e = E_j and the
// prefactor a / (b^beta e^{1-beta}). a = 0 is a vacuous pass. Kind eq_r4_3.
EstimateReport local_interpolation_check(const SolutionPair& pair, const ObservationRegion& region, std::size_t j,
                                         double beta);

// lhs = int |phi(T)|^2 with factors a = int |phi(0)|^2 and b = int_omega |phi(T)|^2.
// Before fitting, pass is the dissipation bound lhs <= a e^{2 L_M T} (1 + tol). Kind eq_1_3.
EstimateReport global_interpolation_check(const SolutionPair& pair, const ObservationRegion& region,
                                          double tol = 1e-8);

struct Triple {
    double lhs = 0.0;
    double a = 0.0;
    double b = 0.0;
};

struct FitResult {
    double beta = 0.0;
    double C = 0.0;
    std::size_t used = 0;
    std::vector<std::size_t> excluded;  // indices of triples with b = 0
};

// Minimizes max_i [log lhs_i - (1-beta) log a_i - beta log b_i] over
// beta = 0.01, 0.02, ..., 0.99 (first minimizer wins ties); C = exp(min).
FitResult fit_beta_C(const std::vector<Triple>& triples);

// lhs <= C a^{1-beta} b^beta (1 + tol), evaluated in logs.
bool satisfies(const Triple& t, double C, double beta, double tol = 1e-12);

// Sets `fitted` and re-decides `pass` for reports carrying factors a and b.
void apply_fit(std::vector<EstimateReport>& reports, const FitResult& fit);

struct HoldoutResult {
    FitResult fit;
    std::size_t train = 0;
    std::size_t test = 0;
    std::size_t test_failures = 0;
    double inflate = 1.5;
};

// Fits on the first (1 - test_fraction) share of the triples and checks the
// rest against C * inflate.
HoldoutResult holdout_fit(const std::vector<Triple>& triples, double test_fraction = 0.2, double inflate = 1.5);

struct ChiTrace {
    std::vector<double> times;
    std::vector<double> chi;
    bool truncated = false;            // phi vanished at some sample
    std::optional<double> zero_time;   // first such sample
    bool within_bounds = true;         // 1 <= chi <= 1 + max |xi|^2 at every sample
};

// chi(t) = ||phi||_2^2 / ||phi||_{H^-1}^2 per snapshot, stopping at the first
// vanishing difference.
ChiTrace chi_trace(const SolutionPair& pair);

// chi(t) <= e^{L_M^2 t / 2} chi(0) (1 + slack) at every sample. Kind eq_r5_12.
EstimateReport chi_growth_check(const SolutionPair& pair, double slack = 0.05);

// ||phi(0)||^2 / ||phi(t)||^2 <= exp(2 e^{L_M^2 T/2} (chi0 + L_M sqrt(chi0)) (1 + T)) (1 + slack),
// compared in logs. Kind eq_r5_14.
EstimateReport backward_bound_check(const SolutionPair& pair, double slack = 0.05);

// C_req solving int |phi(0)|^2 = C exp(C chi(0)) int_omega |phi(T)|^2, by
// bisection in log C. Kind eq_1_4.
EstimateReport observation_estimate_check(const SolutionPair& pair, const ObservationRegion& region);

// Root of ln C + C chi0 = target; exposed for testing.
double solve_observation_constant(double chi0, double target);

// Shifted pair on [delta, T]: lhs = int |phi(T)|^2, b = int_omega |phi(T)|^2,
// a = int |phi(delta)|^2 <= a_bound = (||y1(delta)|| + ||y2(delta)||)^2.
// Fitting uses the triple (lhs, 1, b). delta defaults to T/2 and must be a
// snapshot time. Kind eq_1_5.
EstimateReport conditional_stability_check(const SolutionPair& pair, const ObservationRegion& region,
                                           std::optional<double> delta = std::nullopt);

Triple interpolation_triple(const EstimateReport& r);
Triple stability_triple(const EstimateReport& r);

struct ProbeRow {
    double eps = 0.0;
    double omega_mass = 0.0;  // int_omega |phi(T)|^2
    double phiT_l2sq = 0.0;   // int |phi(T)|^2
    double phi0_l2sq = 0.0;   // int |phi(0)|^2
};

struct ProbeResult {
    std::vector<ProbeRow> rows;
    double rank_correlation = 0.0;  // Spearman of omega_mass vs phiT_l2sq
    double ratio_spread = 0.0;      // max relative spread of each column / eps^2 over eps > 0
    Point bump_center{0.0, 0.0, 0.0};
    double bump_radius = 0.0;
};

// Perturbs y0_base by eps * bump, the bump supported away from omega around
// the lattice point farthest from every ball centre.
ProbeResult unique_continuation_probe(const Field& y0_base, const std::vector<double>& eps_list,
                                      const NonlinearitySpec& f, const ObservationRegion& region, double T, double dt,
                                      std::size_t stride = 1);

std::string to_csv(const ProbeResult& probe);

// Integrates g' = B g - A g^{1+alpha} (Dormand-Prince, tolerance 1e-12) and
// checks g(t) <= (1/(alpha A t))^{1/alpha} e^{Bt} (1 + 1e-6) at `samples`
// log-spaced times in [T/1000, T]. Kind lemma_2_2.
EstimateReport gronwall_superlinear_check(double A, double B, double alpha, double g0, double T,
                                          std::size_t samples = 50);

}  // namespace heatobs
