#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "nlskdv/grid.hpp"
#include "oracles.hpp"

using namespace nlskdv;

TEST(Grid, SmallGridNodes)
{
    const Grid g = make_grid(10.0, 5);
    const std::vector<double> expected{-10.0, -5.0, 0.0, 5.0, 10.0};
    EXPECT_EQ(g.nodes(), expected);
    EXPECT_EQ(g.center(), 2u);
}

TEST(Grid, DefaultSpacing)
{
    const Grid g = make_grid(40.0, 4097);
    EXPECT_EQ(g.spacing(), 0.01953125);
}

TEST(Grid, NodesMirrorExactly)
{
    for (std::size_t n : {17u, 1025u, 4097u}) {
        const Grid g = make_grid(std::sqrt(1000.0), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(g.x(i), -g.x(n - 1 - i));
        EXPECT_EQ(g.x(g.center()), 0.0);
    }
}

TEST(Grid, RejectsBadArguments)
{
    EXPECT_THROW(make_grid(10.0, 4), std::invalid_argument);
    EXPECT_THROW(make_grid(0.0, 17), std::invalid_argument);
    EXPECT_THROW(make_grid(-1.0, 17), std::invalid_argument);
}

TEST(SecondDerivative, ConstantsAndQuadratics)
{
    const Grid g = make_grid(3.0, 31);
    const RealField ones(g.size(), 1.0);
    RealField quadratic(g.size()), affine(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        quadratic[i] = g.x(i) * g.x(i);
        affine[i] = 2.0 * g.x(i) - 0.5;
    }
    const auto d_ones = second_derivative(ones, g);
    const auto d_quad = second_derivative(quadratic, g);
    const auto d_affine = second_derivative(affine, g);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        EXPECT_NEAR(d_ones[i], 0.0, 1e-12);
        EXPECT_NEAR(d_quad[i], 2.0, 1e-10);
        EXPECT_NEAR(d_affine[i], 0.0, 1e-10);
    }
}

TEST(SecondDerivative, SecondOrderOnSech)
{
    auto max_error = [](std::size_t n) {
        const Grid g = make_grid(40.0, n);
        RealField w(n);
        for (std::size_t i = 0; i < n; ++i) w[i] = oracle::sech(g.x(i));
        const auto d2 = second_derivative(w, g);
        double err = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double s = oracle::sech(g.x(i));
            err = std::max(err, std::abs(d2[i] - (s - 2.0 * s * s * s)));
        }
        return err;
    };
    const double ratio = max_error(2049) / max_error(4097);
    EXPECT_NEAR(ratio, 4.0, 0.05);
}

TEST(Integrate, ConstantOddAndSech)
{
    const Grid g = make_grid(40.0, 4097);
    EXPECT_NEAR(integrate(RealField(g.size(), 1.0), g), 80.0, 1e-12);

    RealField odd(g.size()), bump(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        odd[i] = g.x(i);
        const double s = oracle::sech(0.5 * g.x(i));
        bump[i] = 3.0 * s * s;
    }
    EXPECT_NEAR(integrate(odd, g), 0.0, 1e-12);
    EXPECT_NEAR(integrate(bump, g), 12.0, 1e-8);
}

TEST(Integrate, ExactForPiecewiseLinear)
{
    const Grid g = make_grid(2.0, 9);
    RealField w(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) w[i] = std::abs(g.x(i));  // kink sits on a node
    EXPECT_NEAR(integrate(w, g), 4.0, 1e-14);
}

TEST(Norms, ClosedFormProfiles)
{
    const auto ref = oracle::sech_integrals();
    ASSERT_NEAR(ref.V2_prime_sq, 24.0 / 5.0, 1e-12);
    ASSERT_NEAR(ref.V2_sq, 24.0, 1e-12);
    ASSERT_NEAR(ref.U1_quartic, 16.0 / 3.0, 1e-12);
    ASSERT_NEAR(ref.U1_prime_sq + ref.U1_sq, 16.0 / 3.0, 1e-12);

    const Grid g = make_grid(40.0, 4097);
    RealField v(g.size()), u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        v[i] = oracle::V2(g.x(i));
        u[i] = oracle::U1(g.x(i));
    }
    EXPECT_NEAR(norm_j_sq(v, 1.0, g) / 28.8, 1.0, 1e-4);
    EXPECT_NEAR(inner_j(v, v, 1.0, g) / 28.8, 1.0, 1e-4);
    EXPECT_NEAR(norm_j_sq(u, 1.0, g) / (16.0 / 3.0), 1.0, 1e-4);
    EXPECT_EQ(norm_j_sq(RealField(g.size(), 0.0), 1.0, g), 0.0);
    EXPECT_EQ(inner_j(v, RealField(g.size(), 0.0), 1.0, g), 0.0);
}

TEST(Norms, RejectNonPositiveWeight)
{
    const Grid g = make_grid(5.0, 17);
    const RealField w(g.size(), 1.0);
    EXPECT_THROW(norm_j_sq(w, 0.0, g), std::invalid_argument);
    EXPECT_THROW(inner_j(w, w, -1.0, g), std::invalid_argument);
}

TEST(Norms, RandomFieldProperties)
{
    const Grid g = make_grid(10.0, 257);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 50; ++trial) {
        RealField a(g.size()), b(g.size()), c(g.size()), sq(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            a[i] = normal(rng);
            b[i] = normal(rng);
            c[i] = normal(rng);
            sq[i] = a[i] * a[i];
        }
        const double lambda = 0.1 + trial * 0.05;
        EXPECT_GE(norm_j_sq(a, lambda, g), lambda * integrate(sq, g));
        EXPECT_NEAR(inner_j(a, b, lambda, g), inner_j(b, a, lambda, g), 1e-9);
        EXPECT_NEAR(inner_j(a, a, lambda, g), norm_j_sq(a, lambda, g), 1e-9);
        const double alpha = normal(rng);
        const auto combo = axpy(alpha, b, c);
        EXPECT_NEAR(inner_j(a, combo, lambda, g),
                    alpha * inner_j(a, b, lambda, g) + inner_j(a, c, lambda, g),
                    1e-8 * (1.0 + std::abs(inner_j(a, combo, lambda, g))));
    }
}

TEST(ShiftedLaplacian, InvertsStencil)
{
    const Grid g = make_grid(10.0, 101);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    RealField rhs(g.size());
    for (auto& value : rhs) value = normal(rng);
    const auto y = solve_shifted_laplacian(rhs, 1.5, g);
    const auto d2 = second_derivative(y, g);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(-d2[i] + 1.5 * y[i], rhs[i], 1e-9);
}

TEST(Symmetrize, ProducesExactEvenness)
{
    RealField w{1.0, 2.0, 3.0, 4.5, 0.25};
    symmetrize(w);
    EXPECT_EQ(evenness_defect(w), 0.0);
    EXPECT_EQ(w[2], 3.0);
    EXPECT_EQ(w[0], 0.625);
}
