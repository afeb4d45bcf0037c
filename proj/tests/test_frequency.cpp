#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "heatobs/frequency.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/random.hpp"
#include "support/expect_error.hpp"

using namespace heatobs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

double rayleigh(const Field& phi, const CutoffFamily& eta) {
    const Field u = hadamard(eta.value, phi);
    double num = 0.0;
    for (const Field& g : gradient(u)) num += integral(hadamard(g, g));
    return num / integral(hadamard(u, u));
}

SolutionPair heat_pair(const GridSpec& spec, double T, double dt, std::size_t stride) {
    const Field a = init::gaussian(spec, Point{0.3, 0, 0}, 1.0, 0.4);
    const Field b = init::gaussian(spec, Point{-0.2, 0, 0}, 0.5, 0.3);
    return solve_pair(a, b, NonlinearitySpec{NonlinearityKind::power_odd, 1.0, 3.0}, T, dt, stride);
}

}  // namespace

TEST(GaussianWeight, PeakAndDecay) {
    const auto spec = GridSpec::make(2, 64, 4.0);
    const double h = 0.3, T = 1.0, t = 0.6, tau = T - t + h;
    const Field G = gaussian_weight(spec, Point{}, h, t, T);
    EXPECT_NEAR(lp_norm(G, kInf), std::pow(tau, -1.0), 1e-14);
    const Field want = Field::sample(spec, [&](const Point& x) {
        const double d = norm(x);
        return std::exp(-d * d / (4.0 * tau)) / tau;
    });
    EXPECT_LT(lp_norm(G - want, kInf), 1e-14);
    const double d1 = 2.0 * std::sqrt(tau);
    EXPECT_NEAR(std::exp(-d1 * d1 / (4.0 * tau)) / tau * tau, std::exp(-1.0), 1e-15);
}

TEST(GaussianWeight, SolvesBackwardHeat) {
    const auto spec = GridSpec::make(1, 256, 8.0);
    const double h = 0.2, T = 1.0, t = 0.7, dt = 1e-4;
    const Field dG = (1.0 / (2.0 * dt)) *
                     (gaussian_weight(spec, Point{}, h, t + dt, T) - gaussian_weight(spec, Point{}, h, t - dt, T));
    const Field G = gaussian_weight(spec, Point{}, h, t, T);
    EXPECT_LT(lp_norm(dG + laplacian(G), kInf) / lp_norm(G, kInf), 1e-6);
}

TEST(Cutoff, PlateauAndSupport) {
    const auto spec = GridSpec::make(1, 512, 8.0);
    const double R = 1.0;
    for (CutoffKind kind : {CutoffKind::eta, CutoffKind::sigma, CutoffKind::sigma_tilde}) {
        const auto c = make_cutoff(spec, Point{}, R, kind);
        const Field dist = Field::sample(spec, [](const Point& x) { return norm(x); });
        for (std::size_t i = 0; i < dist.size(); ++i) {
            if (dist[i] <= c.inner) EXPECT_DOUBLE_EQ(c.value[i], 1.0);
            if (dist[i] >= c.outer) EXPECT_DOUBLE_EQ(c.value[i], 0.0);
        }
        EXPECT_LE(lp_norm(c.grad[0], kInf), c.grad_bound * (1.0 + 1e-12));
        EXPECT_LE(lp_norm(c.lap, kInf), c.lap_bound * (1.0 + 1e-12));
    }
    const auto eta = make_cutoff(spec, Point{}, R, CutoffKind::eta);
    EXPECT_DOUBLE_EQ(eta.inner, 2.5);
    EXPECT_DOUBLE_EQ(eta.outer, 3.0);
}

TEST(Frequency, ZeroFieldHasNoDenominator) {
    const auto spec = GridSpec::make(1, 64, 8.0);
    const auto eta = make_cutoff(spec, Point{}, 1.0, CutoffKind::eta);
    expect_error(ErrorKind::ZeroDenominator, [&] { frequency(Field::zeros(spec), eta, 0.1, 1.0, 0.5); });
}

TEST(Frequency, LargeOffsetIsRayleighQuotient) {
    Rng rng(5);
    const auto spec = GridSpec::make(1, 256, 8.0);
    const auto eta = make_cutoff(spec, Point{}, 1.0, CutoffKind::eta);
    const Field phi = init::band_limited(spec, 12, rng);
    EXPECT_NEAR(frequency(phi, eta, 1e4, 1.0, 0.5) / rayleigh(phi, eta), 1.0, 0.01);
}

TEST(Frequency, RatioOfParts) {
    const auto spec = GridSpec::make(2, 64, 8.0);
    const auto eta = make_cutoff(spec, Point{}, 1.0, CutoffKind::eta);
    const Field phi = init::gaussian(spec, Point{0.4, -0.2, 0}, 1.0, 0.5);
    const auto s = frequency_sample(phi, eta, 0.1, 1.0, 0.3);
    EXPECT_GT(s.num, 0.0);
    EXPECT_DOUBLE_EQ(s.N, s.num / s.den);
}

TEST(Frequency, ScaleAndTranslationInvariantProperty) {
    Rng rng(21);
    const auto spec = GridSpec::make(1, 256, 8.0);
    const double shift = 32 * spec.dx();
    for (int trial = 0; trial < 10; ++trial) {
        const double c = rng.uniform(0.1, 10.0) * (rng.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
        const double x0 = rng.uniform(-1.0, 1.0), s = rng.uniform(0.2, 0.6);
        const Field phi = init::gaussian(spec, Point{x0, 0, 0}, 1.0, s);
        const Field moved = init::gaussian(spec, Point{x0 + shift, 0, 0}, 1.0, s);
        const auto eta = make_cutoff(spec, Point{}, 1.0, CutoffKind::eta);
        const auto eta_moved = make_cutoff(spec, Point{shift, 0, 0}, 1.0, CutoffKind::eta);
        const double N = frequency(phi, eta, 0.1, 1.0, 0.5);
        EXPECT_NEAR(frequency(c * phi, eta, 0.1, 1.0, 0.5), N, 1e-12 * N);
        EXPECT_NEAR(frequency(moved, eta_moved, 0.1, 1.0, 0.5), N, 1e-10 * N);
    }
}

TEST(Frequency, TraceWindowAndEmptyWindow) {
    const auto spec = GridSpec::make(1, 128, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const auto pair = heat_pair(spec, 0.2, 0.01, 2);
    const auto trace = frequency_trace(pair.phi, region, 4, 0.1, 0.1);
    ASSERT_EQ(trace.size(), 6u);
    EXPECT_NEAR(trace.times.front(), 0.1, 1e-12);
    EXPECT_NEAR(trace.T, 0.2, 1e-12);
    expect_error(ErrorKind::EmptyWindow, [&] { frequency_trace(pair.phi, region, 4, 0.1, 0.5); });
    EXPECT_NE(to_csv(trace).find("t,N,num,den,j,h,T"), std::string::npos);
}

TEST(Frequency, VariationalIdentityHolds) {
    const auto spec = GridSpec::make(1, 256, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const auto pair = heat_pair(spec, 0.4, 5e-4, 10);
    const auto r = variational_identity_check(pair.phi, region, 4, 0.1, 0.2);
    EXPECT_EQ(r.kind, "lemma_2_4_i");
    EXPECT_TRUE(r.pass) << to_json(r).dump();
}

TEST(Frequency, DerivativeBoundDetectsInflatedGrowth) {
    const auto spec = GridSpec::make(1, 128, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const auto pair = heat_pair(spec, 0.4, 1e-3, 10);
    auto trace = frequency_trace(pair.phi, region, 4, 0.1, 0.0);
    const auto ok = frequency_derivative_check(trace, pair, region);
    EXPECT_EQ(ok.kind, "lemma_2_4_ii");
    EXPECT_TRUE(ok.pass) << to_json(ok).dump();
    for (std::size_t i = 0; i < trace.size(); ++i) trace.N[i] *= std::exp(200.0 * trace.times[i]);
    EXPECT_FALSE(frequency_derivative_check(trace, pair, region).pass);
}

TEST(Convexity, BookkeepingValues) {
    const auto b = convexity_bookkeeping(1.0, 0.1, 0.0);
    EXPECT_NEAR(b.D_l, 1.709511291351455, 1e-12);
    EXPECT_NEAR(b.K_l, 2.0 * b.D_l * 0.1 + 2.0 * 0.1, 1e-15);
    const auto c = convexity_bookkeeping(3.0, 0.05, 2.0);
    const double D = std::log(4.0) / std::log(7.0 / 4.0), lh = 0.15;
    EXPECT_NEAR(c.D_l, D, 1e-14);
    EXPECT_NEAR(c.K_l, 2 * D * (3 * lh + 8 * lh * lh) + 6 * lh + 16 * 12 * 0.0025 * std::log(4.0), 1e-13);
    expect_error(ErrorKind::InvalidParameter, [] { convexity_bookkeeping(0.5, 0.1, 0.0); });
}

TEST(Convexity, DAndEqualityCase) {
    ConvexityParams p{1.0, 0.1, 0.0, 0.0};
    EXPECT_NEAR(convexity_D(0.2, 0.5, 0.8, 1.0, 0.1), std::log(0.6 / 0.3) / std::log(0.9 / 0.6), 1e-15);
    EXPECT_TRUE(log_convexity_check(1.0, 1.0, 1.0, 0.2, 0.5, 0.8, p).pass);
    EXPECT_FALSE(log_convexity_check(1.0, 10.0, 1.0, 0.2, 0.5, 0.8, p).pass);
    EXPECT_EQ(log_convexity_check(1.0, 1.0, 1.0, 0.2, 0.5, 0.8, p).kind, "lemma_2_5");
    expect_error(ErrorKind::BadOrdering, [&] { log_convexity_check(1, 1, 1, 0.5, 0.2, 0.8, p); });
    expect_error(ErrorKind::NonPositiveG, [&] { log_convexity_check(1, 0, 1, 0.2, 0.5, 0.8, p); });
}

TEST(Convexity, LogConvexTracesPassProperty) {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const double T = 1.0, h = rng.uniform(0.01, 0.5);
        const double a = rng.uniform(-3.0, 3.0), b = rng.uniform(-1.0, 1.0);
        double t[3] = {rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0)};
        std::sort(t, t + 3);
        if (t[1] - t[0] < 1e-3 || t[2] - t[1] < 1e-3) continue;
        auto g = [&](double s) { return std::exp(b + a * std::log(T - s + h)); };
        const ConvexityParams p{T, h, 0.0, 0.0};
        const auto r = log_convexity_check(g(t[0]), g(t[1]), g(t[2]), t[0], t[1], t[2], p);
        EXPECT_LE(r.rhs("log_lhs"), r.rhs("log_rhs") + 1e-9);
    }
}

TEST(ProofConstantsTest, ThetaClampAndValue) {
    ProofConstants pc;
    EXPECT_DOUBLE_EQ(theta_estimate(1.0, 1e6, 1.0, 0.0, pc), 0.5);
    const double E = std::exp(1.0 / 0.3 - 2.0);
    EXPECT_NEAR(theta_estimate(E, 1.0, 1.0, 0.0, pc), 0.3, 1e-12);
    expect_error(ErrorKind::ZeroTerminalMass, [&] { theta_estimate(1.0, 0.0, 1.0, 0.0, pc); });
}

TEST(ProofConstantsTest, EpsilonAndChat) {
    const auto pc = ProofConstants::for_radius(1.0);
    EXPECT_DOUBLE_EQ(pc.k(), 9.0 / 32.0);
    const auto eh = epsilon_h(0.4, 0.5, pc);
    EXPECT_DOUBLE_EQ(eh.epsilon, 0.4 * 9.0 / 32.0);
    EXPECT_DOUBLE_EQ(eh.h, 0.5 * eh.epsilon);
    EXPECT_DOUBLE_EQ(chat(1.0, 2.0, 3.0, 0.5), 2.0 * 2.0 * 10.0 * 3.0);
    expect_error(ErrorKind::InvalidParameter, [&] { epsilon_h(0.4, 1.0, pc); });
}
