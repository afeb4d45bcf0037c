#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "heatobs/dynamics.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/random.hpp"
#include "heatobs/semigroup.hpp"
#include "support/expect_error.hpp"

using namespace heatobs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const NonlinearitySpec kCubic{NonlinearityKind::power_odd, 1.0, 3.0};
const NonlinearitySpec kSine{NonlinearityKind::bounded_lipschitz, 0.5, 3.0};
const NonlinearitySpec kZero{};

double cubic_ode(double y0, double t) { return y0 / std::sqrt(1.0 + 2.0 * y0 * y0 * t); }

}  // namespace

TEST(Nonlinearity, LipschitzOnBall) {
    EXPECT_DOUBLE_EQ(lipschitz_on_ball(kCubic, 2.0), 12.0);
    EXPECT_DOUBLE_EQ(lipschitz_on_ball(kSine, 5.0), 0.5);
    EXPECT_DOUBLE_EQ(lipschitz_on_ball(kZero, 5.0), 0.0);
}

TEST(Nonlinearity, ValuesAndOddness) {
    EXPECT_DOUBLE_EQ(kCubic(-2.0), -8.0);
    EXPECT_DOUBLE_EQ(kCubic.derivative(-2.0), 12.0);
    EXPECT_DOUBLE_EQ(kSine(0.0), 0.0);
    EXPECT_EQ(nonlinearity_kind_from_string("power_odd"), NonlinearityKind::power_odd);
    expect_error(ErrorKind::InvalidParameter, [] { nonlinearity_kind_from_string("quartic"); });
}

TEST(Nonlinearity, SubcriticalExponent) {
    require_subcritical_exponent(kCubic, 1);
    expect_error(ErrorKind::ExponentOutOfRange,
                 [] { require_subcritical_exponent({NonlinearityKind::power_odd, 1.0, 6.0}, 1); });
    expect_error(ErrorKind::ExponentOutOfRange, [] { require_subcritical_exponent(kCubic, 2); });
    require_subcritical_exponent(kSine, 3);
}

TEST(Solve, ZeroNonlinearityMatchesHeat) {
    Rng rng(3);
    const auto spec = GridSpec::make(1, 128, 4.0);
    const Field y0 = init::band_limited(spec, 12, rng);
    const auto traj = solve_semilinear(y0, kZero, 0.2, 0.01, 5);
    ASSERT_EQ(traj.size(), 5u);
    EXPECT_NEAR(traj.final_time(), 0.2, 1e-12);
    EXPECT_LT(lp_norm(traj.fields.back() - heat_propagate(y0, 0.2), kInf), 1e-12);
    EXPECT_DOUBLE_EQ(traj.snapshot_interval(), 0.05);
}

TEST(Solve, ConstantDataClosedForm) {
    const auto spec = GridSpec::make(2, 16, 1.0);
    const auto traj = solve_semilinear(Field::constant(spec, 1.0), kCubic, 0.5, 0.01, 10);
    for (std::size_t i = 0; i < traj.size(); ++i)
        EXPECT_NEAR(lp_norm(traj.fields[i], kInf), cubic_ode(1.0, traj.times[i]), 1e-12);
    EXPECT_NEAR(sup_norm_bound(traj), 1.0, 1e-15);
}

TEST(Solve, SecondOrderInTime) {
    const auto spec = GridSpec::make(1, 128, 4.0);
    const Field y0 = init::gaussian(spec, Point{}, 1.5, 0.3);
    const Field ref = solve_semilinear(y0, kCubic, 0.2, 0.2 / 1600).fields.back();
    const double e1 = lp_norm(solve_semilinear(y0, kCubic, 0.2, 0.2 / 25).fields.back() - ref, kInf);
    const double e2 = lp_norm(solve_semilinear(y0, kCubic, 0.2, 0.2 / 50).fields.back() - ref, kInf);
    EXPECT_GT(std::log2(e1 / e2), 1.8);
}

TEST(Solve, RejectsBadStepping) {
    const auto spec = GridSpec::make(1, 32, 1.0);
    const Field y0 = Field::constant(spec, 1.0);
    expect_error(ErrorKind::InvalidParameter, [&] { solve_semilinear(y0, kCubic, 0.1, 0.03, 1); });
    expect_error(ErrorKind::InvalidParameter, [&] { solve_semilinear(y0, kCubic, 0.1, -0.01, 1); });
}

TEST(Solve, BlowUpThreshold) {
    const auto spec = GridSpec::make(1, 32, 1.0);
    SolverOptions opt;
    opt.blowup_threshold = 2.0;
    const NonlinearitySpec focusing{NonlinearityKind::power_odd, -1.0, 3.0};
    expect_error(ErrorKind::BlowUp, [&] { solve_semilinear(Field::constant(spec, 1.0), focusing, 1.0, 0.01, 1, opt); });
}

TEST(Picard, ZeroNonlinearityConvergesImmediately) {
    const auto spec = GridSpec::make(1, 64, 4.0);
    const Field y0 = init::gaussian(spec, Point{}, 1.0, 0.3);
    const auto res = picard_solve(y0, kZero, 0.1, 20, 1e-12);
    EXPECT_LE(res.sweeps, 1u);
    EXPECT_LT(lp_norm(res.field - heat_propagate(y0, 0.1), kInf), 1e-14);
}

TEST(Picard, ConstantDataMatchesOde) {
    const auto spec = GridSpec::make(1, 16, 1.0);
    const auto res = picard_solve(Field::constant(spec, 1.0), kCubic, 0.05, 200, 1e-13);
    EXPECT_NEAR(res.field[0], 0.953462589245592, 1e-5);
}

TEST(Picard, LargeDataDoesNotContract) {
    const auto spec = GridSpec::make(1, 64, 4.0);
    const Field y0 = init::gaussian(spec, Point{}, 4.0, 0.3);
    expect_error(ErrorKind::NoContraction, [&] { picard_solve(y0, kCubic, 5.0, 50, 1e-10); });
}

TEST(LinearPotential, ZeroPotentialIsHeat) {
    Rng rng(8);
    const auto spec = GridSpec::make(1, 64, 2.0);
    const Field u0 = init::band_limited(spec, 8, rng);
    const auto traj = solve_linear_potential(u0, Potential::constant(Field::zeros(spec)), 0.1, 0.01);
    EXPECT_LT(lp_norm(traj.fields.back() - heat_propagate(u0, 0.1), kInf), 1e-12);
}

TEST(LinearPotential, ConstantPotentialDecays) {
    Rng rng(9);
    const auto spec = GridSpec::make(1, 64, 2.0);
    const Field u0 = init::band_limited(spec, 8, rng);
    const double c = 1.7, T = 0.3;
    const auto traj = solve_linear_potential(u0, Potential::constant(Field::constant(spec, c)), T, 0.01);
    const Field want = std::exp(-c * T) * heat_propagate(u0, T);
    EXPECT_LT(lp_norm(traj.fields.back() - want, kInf), 1e-12);
}

TEST(LinearPotential, SecondOrderInTime) {
    const auto spec = GridSpec::make(1, 128, 4.0);
    const Field u0 = init::gaussian(spec, Point{}, 1.0, 0.3);
    const Field a0 = init::smooth_bump(spec, Point{}, 0.5, 1.0, 2.0);
    Potential a;
    a.times = {0.0, 0.2};
    a.fields = {a0, 0.5 * a0};
    const Field ref = solve_linear_potential(u0, a, 0.2, 0.2 / 1600).fields.back();
    const double e1 = lp_norm(solve_linear_potential(u0, a, 0.2, 0.2 / 20).fields.back() - ref, kInf);
    const double e2 = lp_norm(solve_linear_potential(u0, a, 0.2, 0.2 / 40).fields.back() - ref, kInf);
    EXPECT_GT(std::log2(e1 / e2), 1.9);
}

TEST(LinearPotential, InterpolatesInTime) {
    const auto spec = GridSpec::make(1, 16, 1.0);
    Potential a;
    a.times = {0.0, 1.0};
    a.fields = {Field::constant(spec, 0.0), Field::constant(spec, 2.0)};
    EXPECT_DOUBLE_EQ(a.at(0.25)[0], 0.5);
    EXPECT_DOUBLE_EQ(a.at(3.0)[0], 2.0);
    EXPECT_DOUBLE_EQ(a.at(-1.0)[0], 0.0);
}

TEST(Smoothing, Theta) {
    EXPECT_DOUBLE_EQ(smoothing_theta(1.0, 1), 2.0);
    EXPECT_DOUBLE_EQ(smoothing_theta(3.0, 3), 2.0);
    EXPECT_DOUBLE_EQ(smoothing_theta(2.0, 1), 4.0 / 3.0);
}

TEST(Smoothing, HeatKernelTraceIsFlat) {
    const auto spec = GridSpec::make(1, 512, 8.0);
    const Field y0 = init::gaussian(spec, Point{}, 1.0, 0.02);
    const auto traj = solve_semilinear(y0, kZero, 0.5, 0.005, 1);
    const auto r = smoothing_check(traj, 1.0);
    EXPECT_EQ(r.kind, "eq_3_5");
    EXPECT_TRUE(r.pass);
}

TEST(TrajectoryIo, Roundtrip) {
    const auto dir = std::filesystem::temp_directory_path() / "heatobs_test_traj";
    std::filesystem::remove_all(dir);
    const auto spec = GridSpec::make(2, 16, 2.0);
    const auto traj = solve_semilinear(init::gaussian(spec, Point{}, 1.0, 0.3), kCubic, 0.04, 0.01, 2);
    write_trajectory(traj, dir.string());
    const auto back = read_trajectory(dir.string());
    EXPECT_EQ(back.spec, traj.spec);
    EXPECT_EQ(back.fspec, traj.fspec);
    EXPECT_EQ(back.times, traj.times);
    EXPECT_EQ(back.stride, traj.stride);
    EXPECT_DOUBLE_EQ(back.dt, traj.dt);
    ASSERT_EQ(back.size(), traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        for (std::size_t j = 0; j < traj.fields[i].size(); ++j) EXPECT_EQ(back.fields[i][j], traj.fields[i][j]);
    std::filesystem::remove_all(dir);
}
