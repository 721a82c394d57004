#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "nestres/medium.hpp"

using namespace nestres;

TEST(Medium, EqualRatioParametrisation) {
    const MediumSpec m = make_medium(1.0, 1.0, 6000.0, 6000.0);
    EXPECT_DOUBLE_EQ(m.delta, 1.0 / 6000.0);
    EXPECT_DOUBLE_EQ(m.tau, 1.0);
    EXPECT_DOUBLE_EQ(m.v, 1.0);
    EXPECT_DOUBLE_EQ(m.v_r, 1.0);
}

TEST(Medium, NoContrast) {
    const MediumSpec m = make_medium(1.0, 1.0, 1.0, 1.0);
    EXPECT_DOUBLE_EQ(m.delta, 1.0);
    EXPECT_DOUBLE_EQ(m.tau, 1.0);
}

TEST(Medium, GeneralQuadruple) {
    const MediumSpec m = make_medium(2.0, 8.0, 1000.0, 500.0);
    EXPECT_DOUBLE_EQ(m.delta, 0.002);
    EXPECT_NEAR(m.tau, std::sqrt(2.0 * 500.0 / (1000.0 * 8.0)), 1e-15);
    EXPECT_NEAR(m.tau, 0.35355, 1e-5);
    EXPECT_DOUBLE_EQ(m.v_r, 2.0);
    EXPECT_NEAR(m.v, std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(m.v, 0.70711, 1e-5);
}

TEST(Medium, RejectsNonPositive) {
    EXPECT_THROW(make_medium(0.0, 1.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(make_medium(1.0, -1.0, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(medium_from_delta(0.0), std::invalid_argument);
}

TEST(Medium, DeltaShorthandKeepsDeltaExact) {
    const MediumSpec m = medium_from_delta(1.0 / 6000.0);
    EXPECT_EQ(m.delta, 1.0 / 6000.0);
    EXPECT_DOUBLE_EQ(m.tau, 1.0);
}

TEST(Wavenumbers, UnitSpeeds) {
    const auto [k, k_r] = wavenumbers(medium_from_delta(1e-3), Complex{0.02, -0.001});
    EXPECT_EQ(k, Complex(0.02, -0.001));
    EXPECT_EQ(k_r, Complex(0.02, -0.001));
}

TEST(Wavenumbers, UnequalSpeeds) {
    // v = 2 (kappa / rho = 4), v_r = 1
    const MediumSpec m = make_medium(1.0, 1.0, 1.0, 4.0);
    const auto [k, k_r] = wavenumbers(m, Complex{1.0, 0.0});
    EXPECT_DOUBLE_EQ(k.real(), 0.5);
    EXPECT_DOUBLE_EQ(k_r.real(), 1.0);
}

TEST(Wavenumbers, FractionalSpeed) {
    const MediumSpec m = make_medium(2.0, 8.0, 1000.0, 500.0);
    const auto [k, k_r] = wavenumbers(m, Complex{0.1, 0.0});
    EXPECT_NEAR(k.real(), 0.1 / std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(k.real(), 0.141422, 1e-6);
    EXPECT_NEAR(k_r.real(), 0.05, 1e-16);
}

TEST(Geometry, Equidistant) {
    const LayeredGeometry g = geometry_equidistant(4);
    ASSERT_EQ(g.n_layers(), 4u);
    EXPECT_EQ(std::vector<double>(g.radii().begin(), g.radii().end()), (std::vector<double>{4, 3, 2, 1}));
    EXPECT_EQ(geometry_equidistant(1).radius(1), 1.0);
    const LayeredGeometry g50 = geometry_equidistant(50);
    EXPECT_EQ(g50.radius(1), 50.0);
    EXPECT_EQ(g50.radius(50), 1.0);
    EXPECT_EQ(g50.n_resonators(), 25u);
}

TEST(Geometry, GeometricSevenLayers) {
    const LayeredGeometry g = geometry_geometric(7, 7.0, 0.8);
    const std::vector<double> expected = {7, 5.6, 4.48, 3.584, 2.8672, 2.29376, 1.835008};
    ASSERT_EQ(g.n_layers(), 7u);
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(g.radius(i + 1), expected[i], 1e-12);
}

TEST(Geometry, GeometricEdgeCases) {
    const LayeredGeometry one = geometry_geometric(1, 5.0, 0.5);
    ASSERT_EQ(one.n_layers(), 1u);
    EXPECT_EQ(one.radius(1), 5.0);
    const LayeredGeometry three = geometry_geometric(3, 1.0, 0.9);
    EXPECT_DOUBLE_EQ(three.radius(2), 0.9);
    EXPECT_DOUBLE_EQ(three.radius(3), 0.9 * 0.9);
    EXPECT_THROW(geometry_geometric(3, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(geometry_geometric(0, 1.0, 0.5), std::invalid_argument);
}

TEST(Geometry, ValidationRejectsBadLists) {
    EXPECT_THROW(LayeredGeometry({}), std::invalid_argument);
    EXPECT_THROW(LayeredGeometry({1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(LayeredGeometry({2.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(LayeredGeometry({2.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(LayeredGeometry({2.0, NAN}), std::invalid_argument);
    EXPECT_NO_THROW(LayeredGeometry({2.0, 1e-6}));
}

TEST(Geometry, LayerBounds) {
    const LayeredGeometry g({4.0, 3.0, 2.0});
    EXPECT_EQ(g.outer_radius(1), 4.0);
    EXPECT_EQ(g.inner_radius(1), 3.0);
    EXPECT_EQ(g.inner_radius(3), 0.0);
}

TEST(LayerMaterial, ParityRule) {
    const MediumSpec m = make_medium(2.0, 3.0, 50.0, 70.0);
    const LayerMaterial outside = layer_material(0, 4, m);
    EXPECT_EQ(outside.phase, Phase::Matrix);
    EXPECT_EQ(outside.density, 50.0);
    const LayerMaterial first = layer_material(1, 4, m);
    EXPECT_EQ(first.phase, Phase::Resonator);
    EXPECT_EQ(first.density, 2.0);
    EXPECT_EQ(first.bulk_modulus, 3.0);
    EXPECT_EQ(layer_material(4, 4, m).phase, Phase::Matrix);
    EXPECT_THROW(layer_material(5, 4, m), std::out_of_range);
}
