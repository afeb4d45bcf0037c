#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>
#include <omp.h>

#include "heatobs/error.hpp"
#include "heatobs/grid.hpp"
#include "heatobs/initial_data.hpp"
#include "heatobs/kernels.hpp"
#include "heatobs/random.hpp"
#include "heatobs/report.hpp"
#include "heatobs/spectral.hpp"
#include "support/expect_error.hpp"

using namespace heatobs;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Random smooth field: a few random modes with random amplitudes.
Field random_field(const GridSpec& spec, Rng& rng) {
    return init::band_limited(spec, 1 + rng.next() % (spec.m / 4), rng);
}

GridSpec random_spec(Rng& rng) {
    const int n = 1 + static_cast<int>(rng.next() % 2);
    const std::size_t m = n == 1 ? (32u << (rng.next() % 3)) : (16u << (rng.next() % 2));
    return GridSpec::make(n, m, rng.uniform(1.0, 10.0));
}

}  // namespace

TEST(GridSpec, RejectsBadParameters) {
    expect_error(ErrorKind::InvalidParameter, [] { GridSpec::make(0, 64, 1.0); });
    expect_error(ErrorKind::InvalidParameter, [] { GridSpec::make(4, 16, 1.0); });
    expect_error(ErrorKind::InvalidParameter, [] { GridSpec::make(1, 48, 1.0); });
    expect_error(ErrorKind::InvalidParameter, [] { GridSpec::make(1, 8, 1.0); });
    expect_error(ErrorKind::InvalidParameter, [] { GridSpec::make(1, 64, 0.0); });
    expect_error(ErrorKind::InvalidParameter, [] { GridSpec::make(1, 64, -2.0); });
}

TEST(GridSpec, SpacingTilesTheBox) {
    const auto spec = GridSpec::make(2, 64, 3.0);
    EXPECT_DOUBLE_EQ(spec.dx() * 64, 6.0);
    EXPECT_DOUBLE_EQ(spec.coord(0), -3.0);
    EXPECT_EQ(spec.size(), 64u * 64u);
    const auto idx = spec.unravel(5 * 64 + 7);
    EXPECT_EQ(idx[0], 5u);
    EXPECT_EQ(idx[1], 7u);
}

TEST(GridSpec, MinimumImageWraps) {
    const auto spec = GridSpec::make(1, 64, 1.0);
    const Point d = spec.min_image(Point{0.9, 0, 0}, Point{-0.9, 0, 0});
    EXPECT_NEAR(d[0], -0.2, 1e-14);
    EXPECT_NEAR(spec.distance_sq(Point{0.9, 0, 0}, Point{-0.9, 0, 0}), 0.04, 1e-14);
}

TEST(Field, RejectsWrongLengthAndNonFinite) {
    const auto spec = GridSpec::make(1, 16, 1.0);
    expect_error(ErrorKind::GridMismatch, [&] { Field(spec, std::vector<double>(15, 0.0)); });
    std::vector<double> v(16, 0.0);
    v[3] = std::nan("");
    expect_error(ErrorKind::NonFinite, [&] { Field(spec, v); });
}

TEST(Field, ArithmeticNeedsMatchingGrids) {
    const Field a = Field::zeros(GridSpec::make(1, 16, 1.0));
    const Field b = Field::zeros(GridSpec::make(1, 32, 1.0));
    expect_error(ErrorKind::GridMismatch, [&] { (void)(a + b); });
}

TEST(Norms, ConstantField) {
    const auto spec = GridSpec::make(1, 64, 1.0);
    EXPECT_NEAR(lp_norm(Field::constant(spec, 2.0), 2.0), 2.828427124746190, 1e-12);
    EXPECT_DOUBLE_EQ(lp_norm(Field::constant(spec, -2.0), kInf), 2.0);
    EXPECT_EQ(lp_norm(Field::zeros(spec), 1.0), 0.0);
    EXPECT_EQ(lp_norm(Field::zeros(spec), kInf), 0.0);
    expect_error(ErrorKind::InvalidParameter, [&] { lp_norm(Field::zeros(spec), 0.5); });
}

TEST(Norms, GaussianL2) {
    const auto spec = GridSpec::make(1, 256, 10.0);
    const Field f = Field::sample(spec, [](const Point& x) { return std::exp(-x[0] * x[0]); });
    EXPECT_NEAR(lp_norm(f, 2.0), std::pow(std::numbers::pi / 2.0, 0.25), 1e-8);
}

TEST(Norms, SobolevSingleMode) {
    const double X = 2.0;
    const auto spec = GridSpec::make(1, 64, X);
    const double xi = std::numbers::pi / X;
    const Field f = Field::sample(spec, [&](const Point& x) { return std::cos(xi * x[0]); });
    const double l2 = lp_norm(f, 2.0);
    EXPECT_NEAR(std::pow(sobolev_norm(f, 1), 2) / (l2 * l2), 1.0 + xi * xi, 1e-12);
    EXPECT_NEAR(std::pow(sobolev_norm(f, -1), 2) / (l2 * l2), 1.0 / (1.0 + xi * xi), 1e-12);

    const Field c = Field::constant(spec, 3.0);
    EXPECT_NEAR(sobolev_norm(c, -1), 3.0 * std::sqrt(2 * X), 1e-12);
    EXPECT_EQ(sobolev_norm(Field::zeros(spec), 1), 0.0);
    EXPECT_EQ(sobolev_norm(Field::zeros(spec), -1), 0.0);
}

TEST(Norms, ParsevalAndOrderingProperty) {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const GridSpec spec = random_spec(rng);
        const Field f = random_field(spec, rng);
        const auto s = spectral::forward(f);
        const auto w = spectral::parseval_weight(spec);
        double energy = 0.0;
        for (std::size_t k = 0; k < s.coeffs.size(); ++k) energy += w[k] * std::norm(s.coeffs[k]);
        energy *= spec.box_volume();
        const double l2 = lp_norm(f, 2.0);
        EXPECT_LE(std::abs(l2 * l2 - energy), 1e-10 * l2 * l2);
        EXPECT_LE(sobolev_norm(f, -1), l2 * (1 + 1e-12));
        EXPECT_LE(l2, sobolev_norm(f, 1) * (1 + 1e-12));
    }
}

TEST(Derivatives, PureModes) {
    const double X = 3.0;
    const auto spec = GridSpec::make(1, 128, X);
    const double x1 = std::numbers::pi / X, x2 = 5 * std::numbers::pi / X;
    const Field s1 = Field::sample(spec, [&](const Point& x) { return std::sin(x1 * x[0]); });
    const Field s2 = Field::sample(spec, [&](const Point& x) { return std::cos(x2 * x[0]); });
    const Field d1 = Field::sample(spec, [&](const Point& x) { return x1 * std::cos(x1 * x[0]); });
    const Field d2 = Field::sample(spec, [&](const Point& x) { return -x2 * std::sin(x2 * x[0]); });
    EXPECT_LT(lp_norm(gradient(s1)[0] - d1, kInf), 1e-10);
    EXPECT_LT(lp_norm(gradient(s1 + s2)[0] - (d1 + d2), kInf), 1e-10);
    const Field lap = Field::sample(spec, [&](const Point& x) { return -x1 * x1 * std::sin(x1 * x[0]); });
    EXPECT_LT(lp_norm(laplacian(s1) - lap, kInf), 1e-10);
}

TEST(Derivatives, ConstantHasZeroGradient) {
    const auto spec = GridSpec::make(2, 32, 1.0);
    for (const auto& g : gradient(Field::constant(spec, 4.2))) EXPECT_LT(lp_norm(g, kInf), 1e-14);
}

TEST(MaskedL2, FullEmptyHalf) {
    const auto spec = GridSpec::make(1, 64, 1.0);
    const Field one = Field::constant(spec, 1.0);
    const Field half = Field::sample(spec, [](const Point& x) { return x[0] < 0.0 ? 1.0 : 0.0; });
    EXPECT_NEAR(masked_l2(one, half), 1.0, 1e-14);
    EXPECT_NEAR(masked_l2(one, one), std::pow(lp_norm(one, 2.0), 2), 1e-14);
    EXPECT_EQ(masked_l2(one, Field::zeros(spec)), 0.0);
}

TEST(MaskedL2, MonotoneInMaskProperty) {
    Rng rng(7);
    const auto spec = GridSpec::make(1, 64, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const Field f = random_field(spec, rng);
        const double a = rng.uniform(0.1, 1.0), b = a + rng.uniform(0.0, 1.0);
        const Field m1 = Field::sample(spec, [&](const Point& x) { return std::abs(x[0]) < a ? 1.0 : 0.0; });
        const Field m2 = Field::sample(spec, [&](const Point& x) { return std::abs(x[0]) < b ? 1.0 : 0.0; });
        EXPECT_LE(masked_l2(f, m1), masked_l2(f, m2));
    }
}

TEST(BoundaryMass, CentredGaussianIsNegligible) {
    const auto spec = GridSpec::make(1, 256, 8.0);
    EXPECT_LT(boundary_mass_fraction(init::gaussian(spec, Point{}, 1.0, 0.5)), 1e-12);
    EXPECT_GT(boundary_mass_fraction(Field::constant(spec, 1.0)), 0.0);
}

TEST(Snapshot, RoundTripIsBitExact) {
    Rng rng(3);
    const auto spec = GridSpec::make(2, 16, 1.5);
    const Field f = random_field(spec, rng).with_time(0.125);
    const auto bytes = encode_snapshot(f);
    ASSERT_EQ(bytes.size(), 4 + 4 + 1 + 8 + 8 + 8 + 8 * spec.size());
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "HOBS");
    const Field g = decode_snapshot(bytes);
    EXPECT_EQ(g.spec(), spec);
    EXPECT_EQ(*g.time(), 0.125);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f[i], g[i]);
}

TEST(Snapshot, RejectsCorruptInput) {
    const auto spec = GridSpec::make(1, 16, 1.0);
    auto bytes = encode_snapshot(Field::constant(spec, 1.0).with_time(0.0));
    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    expect_error(ErrorKind::FormatError, [&] { decode_snapshot(bad_magic); });
    auto truncated = bytes;
    truncated.resize(bytes.size() - 3);
    expect_error(ErrorKind::FormatError, [&] { decode_snapshot(truncated); });
    auto bad_version = bytes;
    bad_version[4] = 2;
    expect_error(ErrorKind::FormatError, [&] { decode_snapshot(bad_version); });
}

TEST(Kernels, OmpMatchesSerialProperty) {
    namespace hk = kernels;
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 1 + rng.next() % 50000;
        std::vector<double> a(n), b(n), w(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.normal();
            b[i] = rng.normal();
            w[i] = rng.uniform();
        }
        const double tol = 1e-12;
        EXPECT_NEAR(hk::omp::sum(a), hk::serial::sum(a), tol * n);
        EXPECT_NEAR(hk::omp::sum_sq(a), hk::serial::sum_sq(a), tol * hk::serial::sum_sq(a));
        EXPECT_NEAR(hk::omp::sum_abs_pow(a, 3.0), hk::serial::sum_abs_pow(a, 3.0), tol * hk::serial::sum_abs_pow(a, 3.0));
        EXPECT_EQ(hk::omp::max_abs(a), hk::serial::max_abs(a));
        EXPECT_NEAR(hk::omp::weighted_sum_sq(a, w), hk::serial::weighted_sum_sq(a, w), tol * n);
        EXPECT_NEAR(hk::omp::weighted_dot(a, b, w), hk::serial::weighted_dot(a, b, w), tol * n);
    }
}

TEST(Kernels, ReductionsIndependentOfThreadCount) {
    Rng rng(23);
    std::vector<double> a(100003);
    for (auto& v : a) v = rng.normal();
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const double one = kernels::omp::sum_sq(a);
    omp_set_num_threads(4);
    const double four = kernels::omp::sum_sq(a);
    omp_set_num_threads(saved);
    EXPECT_EQ(one, four);
}

TEST(Rng, SeededStreamsAreReproducible) {
    Rng a(99), b(99);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    Rng c(5);
    for (int i = 0; i < 1000; ++i) {
        const double u = c.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
    EXPECT_NE(Rng::derive(1, 0), Rng::derive(1, 1));
    EXPECT_NE(Rng::derive(1, 0), Rng::derive(2, 0));
}

TEST(Report, JsonRoundTripKeepsInfinities) {
    EstimateReport r;
    r.kind = "eq_2_1";
    r.lhs = 0.5;
    r.factor("rhs", kInf).factor("constant", 0.25);
    r.fitted = FittedConstants{2.0, 0.3};
    r.pass = true;
    r.meta["q"] = number_or_string(kInf);
    const Json j = to_json(r);
    EXPECT_EQ(j["rhs_factors"]["rhs"], "inf");
    const EstimateReport back = report_from_json(j);
    EXPECT_EQ(back.kind, "eq_2_1");
    EXPECT_TRUE(std::isinf(back.rhs("rhs")));
    EXPECT_EQ(back.rhs("constant"), 0.25);
    ASSERT_TRUE(back.fitted.has_value());
    EXPECT_EQ(back.fitted->beta, 0.3);
    EXPECT_TRUE(back.pass);
    expect_error(ErrorKind::InvalidParameter, [&] { back.rhs("missing"); });
}
