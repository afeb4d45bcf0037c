#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "heatobs/obsregion.hpp"
#include "support/expect_error.hpp"

using namespace heatobs;

TEST(Region, CenteredCentersOneAxis) {
    const auto region = build_region(GridSpec::make(1, 64, 1.0), 1.0, 0.25, Placement::centered);
    ASSERT_EQ(region.count(), 2u);
    EXPECT_DOUBLE_EQ(region.centers[0][0], -0.5);
    EXPECT_DOUBLE_EQ(region.centers[1][0], 0.5);
    EXPECT_DOUBLE_EQ(region.R(), 1.0);
}

TEST(Region, CubeCountInTwoDimensions) {
    const auto region = build_region(GridSpec::make(2, 64, 1.0), 1.0, 0.25, Placement::centered);
    EXPECT_EQ(region.count(), 4u);
    EXPECT_EQ(region.cubes_per_axis, 2u);
    EXPECT_DOUBLE_EQ(region.R(), std::sqrt(2.0));
}

TEST(Region, CubeMasksPartitionTheBox) {
    const auto region = build_region(GridSpec::make(2, 32, 2.0), 1.0, 0.25, Placement::centered);
    Field total = Field::zeros(region.spec);
    for (std::size_t j = 0; j < region.count(); ++j) total = total + cube_mask(region, j);
    for (std::size_t i = 0; i < total.size(); ++i) ASSERT_EQ(total[i], 1.0);
    expect_error(ErrorKind::IndexOutOfRange, [&] { cube_mask(region, region.count()); });
}

TEST(Region, JitterIsReproducibleAndInside) {
    const auto spec = GridSpec::make(2, 64, 2.0);
    const auto a = build_region(spec, 1.0, 0.2, Placement::jittered, 11);
    const auto b = build_region(spec, 1.0, 0.2, Placement::jittered, 11);
    const auto c = build_region(spec, 1.0, 0.2, Placement::jittered, 12);
    EXPECT_EQ(region_manifest(a), region_manifest(b));
    EXPECT_NE(region_manifest(a), region_manifest(c));
    const auto centered = build_region(spec, 1.0, 0.2, Placement::centered);
    for (std::size_t j = 0; j < a.count(); ++j)
        for (int d = 0; d < 2; ++d) EXPECT_LE(std::abs(a.centers[j][d] - centered.centers[j][d]), 0.3 + 1e-12);
}

TEST(Region, ThicknessOneDimension) {
    const auto region = build_region(GridSpec::make(1, 2048, 2.0), 1.0, 0.25, Placement::centered);
    EXPECT_NEAR(thickness(region), 0.5, 0.02);
}

TEST(Region, ThicknessTwoDimensions) {
    const auto region = build_region(GridSpec::make(2, 512, 2.0), 1.0, 0.25, Placement::centered);
    EXPECT_NEAR(thickness(region), std::numbers::pi / 16.0, 0.02 * std::numbers::pi / 16.0);
}

TEST(Region, BallsNest) {
    const auto region = build_region(GridSpec::make(2, 64, 4.0), 1.0, 0.25, Placement::centered);
    const Field small = ball_mask(region, 3, 0.5);
    const Field large = ball_mask(region, 3, 1.5);
    for (std::size_t i = 0; i < small.size(); ++i) EXPECT_LE(small[i], large[i]);
    for (std::size_t i = 0; i < small.size(); ++i) EXPECT_LE(region.mask[i] * cube_mask(region, 3)[i], small[i]);
}

TEST(Region, GeometryErrors) {
    const auto spec = GridSpec::make(1, 64, 2.0);
    expect_error(ErrorKind::InvalidGeometry, [&] { build_region(spec, 1.0, 0.6, Placement::centered); });
    expect_error(ErrorKind::InvalidGeometry, [&] { build_region(spec, 0.7, 0.2, Placement::centered); });
    expect_error(ErrorKind::InvalidGeometry, [&] { build_region(spec, -1.0, 0.2, Placement::centered); });
    expect_error(ErrorKind::ResolutionTooCoarse, [&] { build_region(spec, 1.0, 0.05, Placement::centered); });
    expect_error(ErrorKind::InvalidParameter, [] { placement_from_string("random"); });
}

TEST(Region, EmbeddedBalls) {
    require_embedded_balls(build_region(GridSpec::make(1, 512, 8.0), 1.0, 0.25, Placement::centered));
    expect_error(ErrorKind::InvalidGeometry, [] {
        require_embedded_balls(build_region(GridSpec::make(1, 512, 4.0), 1.0, 0.25, Placement::centered));
    });
}
