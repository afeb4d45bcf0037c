#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "heatobs/estimates.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/random.hpp"
#include "heatobs/semigroup.hpp"
#include "support/expect_error.hpp"

using namespace heatobs;

namespace {

const NonlinearitySpec kZero{};
const NonlinearitySpec kCubic{NonlinearityKind::power_odd, 1.0, 3.0};

std::vector<Triple> synthetic(double C, double beta, std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Triple> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double a = std::exp(rng.uniform(-3.0, 3.0)), b = std::exp(rng.uniform(-3.0, 3.0));
        out.push_back({C * std::pow(a, 1.0 - beta) * std::pow(b, beta), a, b});
    }
    return out;
}

Field mode(const GridSpec& spec, int k) {
    const double xi = k * std::numbers::pi / spec.X;
    return Field::sample(spec, [&](const Point& x) { return std::cos(xi * x[0]); });
}

}  // namespace

TEST(Fit, EqualEntriesGiveUnitConstant) {
    std::vector<Triple> t{{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}, {0.5, 0.5, 0.5}};
    const auto fit = fit_beta_C(t);
    EXPECT_NEAR(fit.C, 1.0, 1e-14);
    EXPECT_EQ(fit.used, 3u);
}

TEST(Fit, RecoversSyntheticConstants) {
    const auto fit = fit_beta_C(synthetic(2.0, 0.3, 40, 3));
    EXPECT_NEAR(fit.beta, 0.3, 1e-12);
    EXPECT_NEAR(fit.C, 2.0, 1e-12);
}

TEST(Fit, ScalingTriplesKeepsConstant) {
    auto t = synthetic(1.5, 0.6, 20, 4);
    const auto fit = fit_beta_C(t);
    for (auto& x : t) x = {4.0 * x.lhs, 4.0 * x.a, 4.0 * x.b};
    const auto scaled = fit_beta_C(t);
    EXPECT_DOUBLE_EQ(scaled.beta, fit.beta);
    EXPECT_NEAR(scaled.C, fit.C, 1e-12 * fit.C);
}

TEST(Fit, SoundnessProperty) {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Triple> t;
        const auto count = 3 + static_cast<std::size_t>(rng.uniform(0.0, 30.0));
        for (std::size_t i = 0; i < count; ++i)
            t.push_back({std::exp(rng.uniform(-5, 5)), std::exp(rng.uniform(-5, 5)), std::exp(rng.uniform(-5, 5))});
        const auto fit = fit_beta_C(t);
        EXPECT_GT(fit.beta, 0.0);
        EXPECT_LT(fit.beta, 1.0);
        for (const auto& x : t) EXPECT_TRUE(satisfies(x, fit.C, fit.beta, 1e-12));
    }
}

TEST(Fit, ExcludesZeroObservationAndValidates) {
    auto t = synthetic(1.0, 0.5, 5, 6);
    t.push_back({1.0, 1.0, 0.0});
    const auto fit = fit_beta_C(t);
    ASSERT_EQ(fit.excluded.size(), 1u);
    EXPECT_EQ(fit.excluded[0], 5u);
    EXPECT_EQ(fit.used, 5u);
    expect_error(ErrorKind::InsufficientData, [] { fit_beta_C(synthetic(1.0, 0.5, 2, 1)); });
    expect_error(ErrorKind::NonPositiveTriple, [] { fit_beta_C({{1, 1, 1}, {1, 1, 1}, {-1, 1, 1}}); });
}

TEST(Fit, HoldoutOnExactData) {
    const auto h = holdout_fit(synthetic(3.0, 0.4, 50, 8));
    EXPECT_EQ(h.train, 40u);
    EXPECT_EQ(h.test, 10u);
    EXPECT_EQ(h.test_failures, 0u);
    expect_error(ErrorKind::InsufficientData, [] { holdout_fit(synthetic(3.0, 0.4, 3, 8)); });
}

TEST(Gronwall, ClosedFormExample) {
    const auto r = gronwall_superlinear_check(1.0, 0.0, 1.0, 10.0, 1.0);
    EXPECT_EQ(r.kind, "lemma_2_2");
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.rhs("g_T"), 10.0 / 11.0, 1e-9);
    EXPECT_NEAR(r.rhs("bound_T"), 1.0, 1e-12);
}

TEST(Gronwall, RandomParametersProperty) {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const double A = rng.uniform(0.1, 5), B = rng.uniform(0, 2), alpha = rng.uniform(0.2, 3);
        const auto r = gronwall_superlinear_check(A, B, alpha, rng.uniform(0, 100), rng.uniform(0.1, 3), 20);
        EXPECT_TRUE(r.pass) << to_json(r).dump();
    }
    expect_error(ErrorKind::InvalidParameter, [] { gronwall_superlinear_check(0.0, 0.0, 1.0, 1.0, 1.0); });
}

TEST(Chi, SingleModeIsConstant) {
    const auto spec = GridSpec::make(1, 128, 4.0);
    const int k = 5;
    const double xi = k * std::numbers::pi / spec.X;
    const auto pair = solve_pair(mode(spec, k), Field::zeros(spec), kZero, 0.2, 0.01, 5);
    const auto tr = chi_trace(pair);
    ASSERT_EQ(tr.chi.size(), pair.phi.size());
    for (double c : tr.chi) EXPECT_NEAR(c, 1.0 + xi * xi, 1e-10);
    EXPECT_TRUE(tr.within_bounds);
    EXPECT_TRUE(chi_growth_check(pair).pass);
}

TEST(Chi, BackwardSingleMode) {
    const auto spec = GridSpec::make(1, 128, 4.0);
    const int k = 3;
    const double xi = k * std::numbers::pi / spec.X, T = 0.2;
    const auto pair = solve_pair(mode(spec, k), Field::zeros(spec), kZero, T, 0.01, 5);
    const auto r = backward_bound_check(pair);
    EXPECT_EQ(r.kind, "eq_r5_14");
    EXPECT_NEAR(r.lhs, std::exp(2.0 * xi * xi * T), 1e-8 * r.lhs);
    EXPECT_TRUE(r.pass);
}

TEST(Chi, IdenticalPairErrors) {
    const auto spec = GridSpec::make(1, 128, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const Field y = init::gaussian(spec, Point{}, 1.0, 0.5);
    const auto pair = solve_pair(y, y, kCubic, 0.1, 0.01, 5);
    expect_error(ErrorKind::ZeroInitialDifference, [&] { chi_growth_check(pair); });
    expect_error(ErrorKind::ZeroInitialDifference, [&] { backward_bound_check(pair); });
    expect_error(ErrorKind::ZeroInitialDifference, [&] { observation_estimate_check(pair, region); });
    expect_error(ErrorKind::ZeroInitialDifference, [&] { global_interpolation_check(pair, region); });
    expect_error(ErrorKind::ZeroEnergy, [&] { local_energy_check(pair, region, 4); });
    const auto li = local_interpolation_check(pair, region, 4, 0.5);
    EXPECT_TRUE(li.pass);
    EXPECT_TRUE(li.meta.value("vacuous", false));
    const auto cs = conditional_stability_check(pair, region);
    EXPECT_TRUE(cs.pass);
    EXPECT_TRUE(cs.meta.value("vacuous", false));
}

TEST(Observation, ConstantSolvesEquation) {
    for (double chi0 : {1.0, 3.5, 40.0})
        for (double target : {-2.0, 0.0, 1.0, 25.0}) {
            const double C = solve_observation_constant(chi0, target);
            EXPECT_NEAR(std::log(C) + C * chi0, target, 1e-9 * (1.0 + std::abs(target)));
        }
    expect_error(ErrorKind::InvalidParameter, [] { solve_observation_constant(0.0, 1.0); });
}

TEST(Observation, ScaleInvariant) {
    const auto spec = GridSpec::make(1, 128, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const Field a = init::gaussian(spec, Point{0.4, 0, 0}, 1.0, 0.3);
    const Field b = init::gaussian(spec, Point{-0.3, 0, 0}, 0.7, 0.5);
    const auto r1 = observation_estimate_check(solve_pair(a, b, kZero, 0.2, 0.01, 5), region);
    const auto r2 = observation_estimate_check(solve_pair(4.0 * a, 4.0 * b, kZero, 0.2, 0.01, 5), region);
    EXPECT_EQ(r1.kind, "eq_1_4");
    EXPECT_TRUE(r1.pass);
    EXPECT_NEAR(r2.rhs("C_req"), r1.rhs("C_req"), 1e-9 * r1.rhs("C_req"));
    EXPECT_NEAR(r2.rhs("chi0"), r1.rhs("chi0"), 1e-12 * r1.rhs("chi0"));
}

TEST(Interpolation, DissipationBoundAndFitApplication) {
    const auto spec = GridSpec::make(1, 128, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    std::vector<EstimateReport> reports;
    for (int i = 0; i < 6; ++i) {
        const Field a = init::gaussian(spec, Point{0.5 * i - 1.5, 0, 0}, 1.0, 0.3);
        const auto pair = solve_pair(a, 0.5 * a, kCubic, 0.2, 0.01, 5);
        reports.push_back(global_interpolation_check(pair, region));
        EXPECT_EQ(reports.back().kind, "eq_1_3");
        EXPECT_TRUE(reports.back().pass);
        EXPECT_LE(reports.back().lhs, reports.back().rhs("a"));
    }
    std::vector<Triple> t;
    for (const auto& r : reports) t.push_back(interpolation_triple(r));
    const auto fit = fit_beta_C(t);
    apply_fit(reports, fit);
    for (const auto& r : reports) {
        EXPECT_TRUE(r.pass);
        ASSERT_TRUE(r.fitted.has_value());
        EXPECT_DOUBLE_EQ(r.fitted->C, fit.C);
    }
}

TEST(Interpolation, LocalEnergyAndLocalBound) {
    const auto spec = GridSpec::make(1, 256, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const Field a = init::gaussian(spec, Point{0.2, 0, 0}, 1.0, 0.4);
    const auto pair = solve_pair(a, Field::zeros(spec), kCubic, 0.2, 0.01, 5);
    const auto e = local_energy_check(pair, region, 4);
    EXPECT_EQ(e.kind, "lemma_4_1");
    EXPECT_TRUE(e.pass);
    EXPECT_GT(local_energy_Ej(pair, region, 4), 0.0);
    EXPECT_LE(e.lhs, 1.0 / 0.2 + 1e-9);
    const auto li = local_interpolation_check(pair, region, 4, 0.5);
    EXPECT_EQ(li.kind, "eq_r4_3");
    EXPECT_TRUE(li.pass);
    EXPECT_GT(li.rhs("prefactor"), 0.0);
}

TEST(Stability, ShiftedPairBound) {
    const auto spec = GridSpec::make(1, 128, 8.0);
    const auto region = build_region(spec, 1.0, 0.25, Placement::centered);
    const Field a = init::gaussian(spec, Point{0.2, 0, 0}, 1.0, 0.4);
    const auto pair = solve_pair(a, -0.5 * a, kCubic, 0.2, 0.01, 5);
    const auto r = conditional_stability_check(pair, region);
    EXPECT_EQ(r.kind, "eq_1_5");
    EXPECT_TRUE(r.pass);
    EXPECT_LE(r.rhs("a_delta"), r.rhs("a_bound") * (1 + 1e-12));
    expect_error(ErrorKind::InvalidParameter, [&] { conditional_stability_check(pair, region, 0.13); });
}

TEST(Probe, LinearResponseScalesQuadratically) {
    const auto spec = GridSpec::make(1, 256, 8.0);
    const auto region = build_region(spec, 2.0, 0.25, Placement::centered);
    const Field base = init::gaussian(spec, Point{}, 1.0, 0.5);
    const auto probe = unique_continuation_probe(base, {1e-1, 1e-2, 1e-3}, kZero, region, 0.1, 0.01, 5);
    ASSERT_EQ(probe.rows.size(), 3u);
    EXPECT_LT(probe.ratio_spread, 1e-8);
    for (const auto& row : probe.rows) EXPECT_GT(row.omega_mass, 0.0);
    expect_error(ErrorKind::InvalidParameter,
                 [&] { unique_continuation_probe(base, {1e-3, 1e-2}, kZero, region, 0.1, 0.01, 5); });
}
