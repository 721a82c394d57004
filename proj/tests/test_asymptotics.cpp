#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nestres/asymptotics.hpp"
#include "nestres/rootfind.hpp"

using namespace nestres;

TEST(OmegaSolid, UnitBall) {
    const auto w = omega_solid(1.0, 1.0, 1.0, 1e-4);
    EXPECT_NEAR(w.omega.real(), 0.0173205, 1e-7);
    EXPECT_NEAR(w.omega.imag(), -0.00015, 1e-12);
    EXPECT_DOUBLE_EQ(w.leading, std::sqrt(3.0));
    EXPECT_EQ(w.damping.real(), 0.0);
    EXPECT_LT(w.damping.imag(), 0.0);
}

TEST(OmegaSolid, LeadingCoefficient) {
    EXPECT_DOUBLE_EQ(omega_solid(2.0, 1.0, 1.0, 1e-3).leading, std::sqrt(3.0) / 2.0);
}

TEST(OmegaSolid, VanishesWithContrast) {
    EXPECT_LT(std::abs(omega_solid(1.0, 1.0, 1.0, 1e-14).omega), 1e-6);
}

TEST(OmegaSolid, AgreesWithRootfinder) {
    const auto roots = find_subwavelength_roots(LayeredGeometry({1.0}), medium_from_delta(1e-4), 0, SearchConfig{});
    EXPECT_LT(std::abs(roots.roots.at(0).omega - omega_solid(1.0, 1.0, 1.0, 1e-4).omega), 2e-6);
}

TEST(OmegaShell, TwoOne) {
    const auto w = omega_shell(2.0, 1.0, 1.0, 1.0, 1e-4);
    EXPECT_NEAR(w.leading, std::sqrt(6.0 / 7.0), 1e-15);
    EXPECT_NEAR(w.leading, 0.9258, 1e-4);
    EXPECT_NEAR(w.omega.real(), 0.009258, 1e-6);
    EXPECT_NEAR(w.omega.imag(), -12.0 / 14.0 * 1e-4, 1e-12);
    const auto roots = find_subwavelength_roots(LayeredGeometry({2.0, 1.0}), medium_from_delta(1e-4), 0, SearchConfig{});
    EXPECT_LT(std::abs(roots.roots.at(0).omega - w.omega), 2e-6);
}

TEST(OmegaShell, CoreToZeroRecoversSolid) {
    const auto solid = omega_solid(3.0, 1.0, 1.0, 1e-3);
    const auto shell = omega_shell(3.0, 3e-6, 1.0, 1.0, 1e-3);
    EXPECT_LT(std::abs(shell.omega - solid.omega) / std::abs(solid.omega), 1e-10);
}

TEST(OmegaShell, ThickerCoreRaisesFrequency) {
    double prev = 0.0;
    for (double r2 : {0.1, 0.5, 1.0, 1.5, 1.9}) {
        const double a = omega_shell(2.0, r2, 1.0, 1.0, 1e-3).leading;
        EXPECT_GT(a, prev) << r2;
        prev = a;
    }
}

TEST(OmegaShell, RejectsBadRadii) {
    EXPECT_THROW(omega_shell(1.0, 1.0, 1.0, 1.0, 1e-3), std::invalid_argument);
    EXPECT_THROW(omega_shell(1.0, 0.0, 1.0, 1.0, 1e-3), std::invalid_argument);
}

TEST(OmegaDual3, PositiveBranchesAndOrdering) {
    const auto [w1, w2] = omega_dual3(3.0, 2.0, 1.0, 1.0, 1.0, 1e-4);
    EXPECT_GT(w1.leading * w1.leading, 0.0);
    EXPECT_GT(w2.leading * w2.leading, 0.0);
    EXPECT_LT(w1.omega.real(), w2.omega.real());
    EXPECT_EQ(w1.branch, 1);
    EXPECT_EQ(w2.branch, 2);
    const auto roots = find_subwavelength_roots(geometry_equidistant(3), medium_from_delta(1e-4), 0, SearchConfig{});
    ASSERT_EQ(roots.roots.size(), 2u);
    // remainder O(delta^{3/2}) = 1e-6 with constants below 2
    EXPECT_LT(std::abs(roots.roots[0].omega - w1.omega), 2e-6);
    EXPECT_LT(std::abs(roots.roots[1].omega - w2.omega), 2e-6);
}

TEST(OmegaDual4, FourLayerReferenceValues) {
    const auto [a1, a2] = omega_dual4(4.0, 3.0, 2.0, 1.0, 1.0, 1.0, 1.0 / 6000);
    EXPECT_NEAR(a1.omega.real(), 0.0066805, 1e-7);
    EXPECT_NEAR(a1.omega.imag(), -0.0000875, 1e-7);
    EXPECT_NEAR(a2.omega.real(), 0.0227833, 1e-7);
    EXPECT_NEAR(a2.omega.imag(), -0.0000206, 1e-7);
    const auto [b1, b2] = omega_dual4(4.0, 3.0, 2.0, 1.0, 1.0, 1.0, 1.0 / 100);
    EXPECT_NEAR(b1.omega.real(), 0.0517470, 1e-7);
    EXPECT_NEAR(b1.omega.imag(), -0.0052491, 1e-7);
    EXPECT_NEAR(b2.omega.real(), 0.1764784, 1e-7);
    EXPECT_NEAR(b2.omega.imag(), -0.0012374, 1e-7);
}

TEST(OmegaDual4, DiscriminantPositiveForRandomRadii) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    int tested = 0;
    while (tested < 1000) {
        double r[4] = {u(rng), u(rng), u(rng), u(rng)};
        std::sort(r, r + 4, std::greater<>());
        if (r[0] - r[1] < 1e-6 * r[0] || r[1] - r[2] < 1e-6 * r[0] || r[2] - r[3] < 1e-6 * r[0]) continue;
        ++tested;
        const auto [w1, w2] = omega_dual4(r[0], r[1], r[2], r[3], 1.0, 1.0, 1e-4);
        EXPECT_GT(w1.leading, 0.0);
        EXPECT_GT(w2.leading, w1.leading);
    }
}

TEST(OmegaGeneralSingle, ReproducesBallAndShellExactly) {
    const double r1 = 1.7;
    const double r2 = 0.6;
    const double d = 1e-3;
    const auto ball = omega_general_single(4.0 * std::numbers::pi * r1, 4.0 * std::numbers::pi * r1 * r1 * r1 / 3.0,
                                           1.0, 1.0, d);
    const auto solid = omega_solid(r1, 1.0, 1.0, d);
    EXPECT_NEAR(ball.omega.real(), solid.omega.real(), 4e-16 * solid.omega.real());
    EXPECT_NEAR(ball.omega.imag(), solid.omega.imag(), 4e-16 * std::abs(solid.omega.imag()));
    const auto shell = omega_general_single(sphere_capacity(r1), shell_volume(r1, r2), 1.0, 1.0, d);
    const auto ref = omega_shell(r1, r2, 1.0, 1.0, d);
    EXPECT_NEAR(shell.omega.real(), ref.omega.real(), 4e-16 * ref.omega.real());
    EXPECT_NEAR(shell.omega.imag(), ref.omega.imag(), 4e-16 * std::abs(ref.omega.imag()));
}

TEST(OmegaGeneralSingle, UnitInputs) {
    const auto w = omega_general_single(1.0, 1.0, 1.0, 1.0, 1e-4);
    EXPECT_NEAR(w.omega.real(), 1e-2, 1e-17);
    EXPECT_NEAR(w.omega.imag(), -1e-4 / (8.0 * std::numbers::pi), 1e-18);
}

TEST(Cvr, Values) {
    EXPECT_DOUBLE_EQ(cvr(1.0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(cvr(2.0, 1.0), 2.0 / 7.0);
    EXPECT_DOUBLE_EQ(cvr(4.0, 3.0), 4.0 / 37.0);
    EXPECT_LT(cvr(4.0, 3.0), cvr(2.0, 1.0));
    EXPECT_THROW(cvr(1.0, 1.0), std::invalid_argument);
}

TEST(Hybridization, EquidistantFourLayerOrdering) {
    const auto rep = hybridization_check(4.0, 3.0, 2.0, 1.0, medium_from_delta(1e-4));
    EXPECT_TRUE(rep.precondition_met);
    ASSERT_TRUE(rep.ordering_holds.has_value());
    EXPECT_TRUE(*rep.ordering_holds);
    EXPECT_LT(rep.dual_low.omega.real(), rep.outer_shell.omega.real());
    EXPECT_LE(rep.outer_shell.omega.real(), rep.inner_shell.omega.real());
    EXPECT_LT(rep.inner_shell.omega.real(), rep.dual_high.omega.real());
}

TEST(Hybridization, EqualCvrGivesEqualShellLeading) {
    const double r1 = 4.0, r2 = 3.9, r3 = 2.0;
    // solve r3 / (r3^3 - r4^3) = r1 / (r1^3 - r2^3) for r4
    const double target = r1 / (r1 * r1 * r1 - r2 * r2 * r2);
    const double r4 = std::cbrt(r3 * r3 * r3 - r3 / target);
    const auto rep = hybridization_check(r1, r2, r3, r4, medium_from_delta(1e-4));
    EXPECT_NEAR(rep.outer_shell.leading, rep.inner_shell.leading, 1e-12);
}

TEST(Hybridization, PreconditionViolated) {
    // outer shell thinner than the inner one: cvr_outer > cvr_inner
    const auto rep = hybridization_check(4.0, 3.9, 2.0, 0.5, medium_from_delta(1e-4));
    EXPECT_FALSE(rep.precondition_met);
    EXPECT_FALSE(rep.ordering_holds.has_value());
}

TEST(AsymptoticFrequencies, DispatchAndLimits) {
    const MediumSpec m = medium_from_delta(1e-3);
    EXPECT_EQ(asymptotic_frequencies(geometry_equidistant(1), m).size(), 1u);
    EXPECT_EQ(asymptotic_frequencies(geometry_equidistant(2), m).size(), 1u);
    EXPECT_EQ(asymptotic_frequencies(geometry_equidistant(3), m).size(), 2u);
    EXPECT_EQ(asymptotic_frequencies(geometry_equidistant(4), m).size(), 2u);
    EXPECT_THROW(asymptotic_frequencies(geometry_equidistant(5), m), std::invalid_argument);
}
