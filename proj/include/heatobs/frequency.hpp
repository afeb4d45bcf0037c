#pragma once

// Localized frequency function N_{h,j}(t) of a difference trajectory, the
// Gaussian weights G_{h,j}, radial cutoffs, and the logarithmic-convexity
// bookkeeping built on top of them.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "heatobs/grid.hpp"
#include "heatobs/obsregion.hpp"
#include "heatobs/report.hpp"
#include "heatobs/solution_pair.hpp"

namespace heatobs {

// eta: 1 on B_{5R/2}, 0 outside B_{3R}; sigma: 1 on B_{4R}, 0 outside B_{5R};
// sigma_tilde: 1 on B_{3R}, 0 outside B_{4R}.
enum class CutoffKind { eta, sigma, sigma_tilde };

std::string to_string(CutoffKind k);

struct CutoffFamily {
    CutoffKind kind = CutoffKind::eta;
    Point center{0.0, 0.0, 0.0};
    double R = 1.0;
    double inner = 0.0;
    double outer = 0.0;
    Field value;
    std::vector<Field> grad;
    Field lap;
    double grad_bound = 0.0;  // analytic sup |grad|, i.e. C(R)
    double lap_bound = 0.0;   // analytic sup |Laplacian|
};

// Radial quintic smootherstep in the annulus inner < |x - c| < outer; the
// gradient and Laplacian are sampled from their closed forms.
CutoffFamily make_cutoff(const GridSpec& spec, const Point& center, double R, CutoffKind kind);
CutoffFamily make_cutoff(const ObservationRegion& region, std::size_t j, CutoffKind kind);

// (T - t + h)^{-n/2} exp(-|x - x_j|^2 / (4 (T - t + h))), minimum-image distance.
Field gaussian_weight(const GridSpec& spec, const Point& xj, double h, double t, double T);

struct FrequencySample {
    double t = 0.0;
    double N = 0.0;
    double num = 0.0;  // weighted Dirichlet energy of eta*phi
    double den = 0.0;  // weighted mass of eta*phi
};

// Throws ZeroDenominator when eta*phi vanishes on the lattice.
FrequencySample frequency_sample(const Field& phi, const CutoffFamily& eta, double h, double T, double t);
double frequency(const Field& phi, const CutoffFamily& eta, double h, double T, double t);

struct FrequencyTrace {
    std::size_t j = 0;
    double h = 0.0;
    double T = 0.0;
    std::vector<double> times;
    std::vector<double> N;
    std::vector<double> num;
    std::vector<double> den;

    std::size_t size() const noexcept { return times.size(); }
};

// Samples every snapshot with t in [t_lo, T]; snapshots whose weighted mass is
// zero are omitted. Throws EmptyWindow when no snapshot falls in the window.
FrequencyTrace frequency_trace(const Trajectory& phi, const ObservationRegion& region, std::size_t j, double h,
                               double t_lo);

// Columns t, N, num, den, j, h, T.
std::string to_csv(const FrequencyTrace& trace);

// Compares (1/2) m'(t) + N(t) m(t) with int phi_j (d_t phi_j - Lap phi_j) G,
// m the weighted mass, time derivatives by centered differences on the
// neighbouring snapshots. Residual |lhs - rhs| / (|m'/2| + N m + |rhs|);
// kind lemma_2_4_i.
EstimateReport variational_identity_check(const Trajectory& phi, const ObservationRegion& region, std::size_t j,
                                          double h, double t, double tol = 0.05);

// N'(t) <= N/(T - t + h) + int (H_j - eta F)^2 G / int phi_j^2 G at every
// interior trace sample, N' by centered differences. Pass allows `slack`
// relative plus dt^2 |N'''| / 6; kind lemma_2_4_ii.
EstimateReport frequency_derivative_check(const FrequencyTrace& trace, const SolutionPair& pair,
                                          const ObservationRegion& region, double slack = 0.05);

struct ConvexityParams {
    double T = 1.0;
    double h = 1.0;
    double Ctilde = 0.0;
    double Cbar = 0.0;
};

// D = ln((T-t2+h)/(T-t3+h)) / ln((T-t1+h)/(T-t2+h)).
double convexity_D(double t1, double t2, double t3, double T, double h);
double convexity_K(double t1, double t2, double t3, const ConvexityParams& p);

// g(t2)^{1+D} <= g(t3) g(t1)^D e^K, compared in log form; kind lemma_2_5.
EstimateReport log_convexity_check(double g1, double g2, double g3, double t1, double t2, double t3,
                                   const ConvexityParams& p);

// Constants of the differential system estimated from a sampled trace:
// Ctilde = max |g'/2 + N g| / g, Cbar = max (N' - N/(T-t+h))^+, centered
// differences at interior samples, each scaled by `inflate`.
ConvexityParams estimate_convexity_params(const FrequencyTrace& trace, double inflate = 1.1);

// Runs log_convexity_check over every ordered sample triple of g = den;
// summary report with lhs the worst log(lhs/rhs) over the triples.
EstimateReport log_convexity_sweep(const FrequencyTrace& trace, const ConvexityParams& p);

struct ProofConstants {
    double L2 = 1.0;
    double L3 = 1.0;
    double L4 = 1.0;
    double L5 = 1.0;
    double L6 = 1.0;
    std::optional<double> Chat;

    double k() const;  // min{L6 / (2 L2), 1/2}
    // Defaults with L6 = 9R^2/16.
    static ProofConstants for_radius(double R);
};

void validate(const ProofConstants& pc);
Json to_json(const ProofConstants& pc);

// 1/theta = L3 (L4 L_M T + L5 (1 + 1/T) + ln(E_j / mass)), clamped into
// (0, min{1, T/2}]. Diagnostic only.
double theta_estimate(double E_j, double terminal_ball_mass, double T, double L_M, const ProofConstants& pc);

struct EpsilonH {
    double epsilon = 0.0;
    double h = 0.0;
};

// epsilon = k theta, h = mu epsilon with mu in (0, 1).
EpsilonH epsilon_h(double theta, double mu, const ProofConstants& pc);

// Chat = (1 + C1) L1 (1 + L_M^2) (1 + 1/T).
double chat(double C1, double L1, double L_M, double T);

struct Bookkeeping {
    double D_l = 0.0;
    double K_l = 0.0;
};

// D_l = ln(l+1) / ln((2l+1)/(l+1)) and
// K_l = 2 D_l [(Chat+1) l h + 4 Chat (l h)^2] + 2 (Chat+1) l h + 8 Chat l (l+1) h^2 ln(l+1).
Bookkeeping convexity_bookkeeping(double l, double h, double Chat);

}  // namespace heatobs
