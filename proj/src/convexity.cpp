#include <algorithm>
#include <cmath>
#include <limits>

#include "heatobs/error.hpp"
#include "heatobs/frequency.hpp"

namespace heatobs {

namespace {

void require_ordering(double t1, double t2, double t3, double T, double h) {
    require(h > 0.0, ErrorKind::InvalidParameter, "weight offset h must be positive");
    require(0.0 <= t1 && t1 < t2 && t2 < t3 && t3 <= T * (1.0 + 1e-12), ErrorKind::BadOrdering,
            "need 0 <= t1 < t2 < t3 <= T");
}

}  // namespace

double convexity_D(double t1, double t2, double t3, double T, double h) {
    require_ordering(t1, t2, t3, T, h);
    return std::log((T - t2 + h) / (T - t3 + h)) / std::log((T - t1 + h) / (T - t2 + h));
}

double convexity_K(double t1, double t2, double t3, const ConvexityParams& p) {
    const double D = convexity_D(t1, t2, t3, p.T, p.h);
    const double s = p.T - t2 + p.h;
    // int_{t2}^{t3} (T - t2 + h) / (T - t + h) dt
    const double weighted = s * std::log(s / (p.T - t3 + p.h));
    return 2.0 * D * (t2 - t1) * (p.Ctilde + p.Cbar * (t2 - t1)) +
           2.0 * (t3 - t2) * (p.Ctilde + p.Cbar * weighted);
}

EstimateReport log_convexity_check(double g1, double g2, double g3, double t1, double t2, double t3,
                                   const ConvexityParams& p) {
    require_ordering(t1, t2, t3, p.T, p.h);
    require(g1 > 0.0 && g2 > 0.0 && g3 > 0.0, ErrorKind::NonPositiveG, "g must be positive at t1, t2, t3");
    require(p.Ctilde >= 0.0 && p.Cbar >= 0.0, ErrorKind::InvalidParameter, "constants must be nonnegative");
    const double D = convexity_D(t1, t2, t3, p.T, p.h);
    const double K = convexity_K(t1, t2, t3, p);
    const double log_lhs = (1.0 + D) * std::log(g2);
    const double log_rhs = std::log(g3) + D * std::log(g1) + K;

    EstimateReport r;
    r.kind = "lemma_2_5";
    r.lhs = std::exp(log_lhs);
    r.factor("g1", g1).factor("g3", g3).factor("D", D).factor("K", K).factor("rhs", std::exp(log_rhs));
    r.factor("log_lhs", log_lhs).factor("log_rhs", log_rhs);
    r.pass = log_lhs <= log_rhs + std::log1p(1e-10);
    r.meta = Json{{"t1", t1}, {"t2", t2}, {"t3", t3}, {"T", p.T}, {"h", p.h}, {"Ctilde", p.Ctilde}, {"Cbar", p.Cbar}};
    return r;
}

EstimateReport log_convexity_sweep(const FrequencyTrace& trace, const ConvexityParams& p) {
    require(trace.size() >= 3, ErrorKind::InsufficientSamples, "need at least three trace samples");
    const std::size_t n = trace.size();
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t triples = 0, violations = 0;
    std::array<double, 3> at{0.0, 0.0, 0.0};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                const auto r = log_convexity_check(trace.den[a], trace.den[b], trace.den[c], trace.times[a],
                                                   trace.times[b], trace.times[c], p);
                const double gap = r.rhs("log_lhs") - r.rhs("log_rhs");
                ++triples;
                if (!r.pass) ++violations;
                if (gap > worst) {
                    worst = gap;
                    at = {trace.times[a], trace.times[b], trace.times[c]};
                }
            }

    EstimateReport r;
    r.kind = "lemma_2_5";
    r.lhs = worst;
    r.factor("Ctilde", p.Ctilde)
        .factor("Cbar", p.Cbar)
        .factor("triples", static_cast<double>(triples))
        .factor("violations", static_cast<double>(violations));
    r.pass = violations == 0;
    r.meta = Json{{"j", trace.j}, {"h", p.h}, {"T", p.T}, {"worst_triple", at}, {"lhs_is", "max log(lhs/rhs)"}};
    return r;
}

double ProofConstants::k() const { return std::min(L6 / (2.0 * L2), 0.5); }

ProofConstants ProofConstants::for_radius(double R) {
    require(R > 0.0, ErrorKind::InvalidParameter, "R must be positive");
    ProofConstants pc;
    pc.L6 = 9.0 * R * R / 16.0;
    return pc;
}

void validate(const ProofConstants& pc) {
    for (double v : {pc.L2, pc.L3, pc.L4, pc.L5, pc.L6})
        require(v > 0.0 && std::isfinite(v), ErrorKind::InvalidParameter, "proof constants must be positive");
    if (pc.Chat) require(*pc.Chat >= 0.0, ErrorKind::InvalidParameter, "Chat must be nonnegative");
}

Json to_json(const ProofConstants& pc) {
    Json j{{"L2", pc.L2}, {"L3", pc.L3}, {"L4", pc.L4}, {"L5", pc.L5}, {"L6", pc.L6}, {"k", pc.k()}};
    if (pc.Chat) j["Chat"] = *pc.Chat;
    return j;
}

double theta_estimate(double E_j, double terminal_ball_mass, double T, double L_M, const ProofConstants& pc) {
    validate(pc);
    require(terminal_ball_mass > 0.0, ErrorKind::ZeroTerminalMass, "terminal ball mass is zero");
    require(E_j > 0.0 && T > 0.0 && L_M >= 0.0, ErrorKind::InvalidParameter, "need E_j > 0, T > 0, L_M >= 0");
    const double cap = std::min(1.0, T / 2.0);
    const double inv = pc.L3 * (pc.L4 * L_M * T + pc.L5 * (1.0 + 1.0 / T) + std::log(E_j / terminal_ball_mass));
    if (!(inv > 0.0)) return cap;
    return std::min(1.0 / inv, cap);
}

EpsilonH epsilon_h(double theta, double mu, const ProofConstants& pc) {
    validate(pc);
    require(theta > 0.0, ErrorKind::InvalidParameter, "theta must be positive");
    require(mu > 0.0 && mu < 1.0, ErrorKind::InvalidParameter, "mu must lie in (0, 1)");
    const double eps = pc.k() * theta;
    return EpsilonH{eps, mu * eps};
}

double chat(double C1, double L1, double L_M, double T) {
    require(T > 0.0, ErrorKind::InvalidParameter, "T must be positive");
    return (1.0 + C1) * L1 * (1.0 + L_M * L_M) * (1.0 + 1.0 / T);
}

Bookkeeping convexity_bookkeeping(double l, double h, double Chat) {
    require(l >= 1.0 && std::isfinite(l), ErrorKind::InvalidParameter, "need l >= 1");
    require(h > 0.0, ErrorKind::InvalidParameter, "need h > 0");
    require(Chat >= 0.0, ErrorKind::InvalidParameter, "need Chat >= 0");
    const double D = std::log(l + 1.0) / std::log((2.0 * l + 1.0) / (l + 1.0));
    const double lh = l * h;
    const double K = 2.0 * D * ((Chat + 1.0) * lh + 4.0 * Chat * lh * lh) + 2.0 * (Chat + 1.0) * lh +
                     8.0 * Chat * l * (l + 1.0) * h * h * std::log(l + 1.0);
    return Bookkeeping{D, K};
}

}  // namespace heatobs
