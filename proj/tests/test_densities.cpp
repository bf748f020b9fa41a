#include <doctest.h>

#include <cmath>

#include "rfskit/densities.hpp"
#include "rfskit/errors.hpp"

using namespace rfskit;

namespace {

Eigen::VectorXd vec1(double x) {
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

Eigen::VectorXd vec2(double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return v;
}

} // namespace

TEST_CASE("standard normal log-density and L2 mass") {
    GaussianDensity g(vec1(0.0), Eigen::MatrixXd::Identity(1, 1));
    CHECK(g.log_pdf(vec1(0.0)) == doctest::Approx(-0.91893853320467274178).epsilon(1e-15));
    CHECK(g.log_pdf(vec1(1.0)) == doctest::Approx(-1.4189385332046727418).epsilon(1e-15));
    // integral of N(x)^2 dx = 1/(2 sqrt(pi))
    CHECK(g.l2_norm_sq() == doctest::Approx(0.28209479177387814347).epsilon(1e-15));
}

TEST_CASE("2-D identity Gaussian L2 mass is 1/(4 pi)") {
    GaussianDensity g(vec2(0.0, 0.0), Eigen::MatrixXd::Identity(2, 2));
    CHECK(g.l2_norm_sq() == doctest::Approx(0.079577471545947667884).epsilon(1e-15));
}

TEST_CASE("correlated Gaussian log-density matches the direct formula") {
    Eigen::MatrixXd cov(2, 2);
    cov << 2.0, 0.7, 0.7, 1.5;
    Eigen::VectorXd mu = vec2(1.0, -2.0);
    GaussianDensity g(mu, cov);
    Eigen::VectorXd x = vec2(0.3, -1.1);
    double det = cov.determinant();
    Eigen::VectorXd c = x - mu;
    double quad = c.dot(cov.inverse() * c);
    double expect = -std::log(2.0 * M_PI) - 0.5 * std::log(det) - 0.5 * quad;
    CHECK(g.log_pdf(x) == doctest::Approx(expect).epsilon(1e-12));
    // closed-form L2 mass: (4 pi)^(-1) det^(-1/2)
    CHECK(g.l2_norm_sq() ==
          doctest::Approx(1.0 / (4.0 * M_PI) / std::sqrt(det)).epsilon(1e-12));
}

TEST_CASE("gaussian construction rejects bad covariances") {
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.2, 0.3, 1.0;
    CHECK_THROWS_AS(GaussianDensity(vec2(0, 0), asym), ValidationError);

    Eigen::MatrixXd negdef(2, 2);
    negdef << 1.0, 2.0, 2.0, 1.0; // eigenvalues 3, -1
    CHECK_THROWS_AS(GaussianDensity(vec2(0, 0), negdef), NumericError);

    Eigen::MatrixXd singular(2, 2);
    singular << 1.0, 1.0, 1.0, 1.0;
    CHECK_THROWS_AS(GaussianDensity(vec2(0, 0), singular), NumericError);

    Eigen::MatrixXd nearsing = Eigen::MatrixXd::Identity(2, 2);
    nearsing(1, 1) = 1e-14; // condition number 1e14
    CHECK_THROWS_AS(GaussianDensity(vec2(0, 0), nearsing), NumericError);

    CHECK_THROWS_AS(GaussianDensity(vec2(0, 0), Eigen::MatrixXd::Identity(3, 3)),
                    ValidationError);
}

TEST_CASE("gaussian sampling hits the requested moments") {
    Eigen::MatrixXd cov(2, 2);
    cov << 0.06, 0.01, 0.01, 0.04;
    GaussianDensity g(vec2(1.0, -1.0), cov);
    Rng rng(9);
    const int n = 20000;
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    Eigen::Matrix2d sq = Eigen::Matrix2d::Zero();
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x = g.sample(rng);
        sum += x;
        sq += x * x.transpose();
    }
    Eigen::Vector2d mean = sum / n;
    Eigen::Matrix2d second = sq / n - mean * mean.transpose();
    CHECK(std::abs(mean[0] - 1.0) < 4.0 * std::sqrt(0.06 / n));
    CHECK(std::abs(mean[1] + 1.0) < 4.0 * std::sqrt(0.04 / n));
    // covariance entries converge at ~sqrt(2)*var/sqrt(n) scale
    CHECK(std::abs(second(0, 0) - 0.06) < 4.0 * 0.06 * std::sqrt(2.0 / n));
    CHECK(std::abs(second(0, 1) - 0.01) < 4.0 * std::sqrt(2.0 * 0.06 * 0.04 / n));
}

TEST_CASE("piecewise-constant density evaluates per bin") {
    // Triangular-ish density on [-1.5, 1.5]: masses 0.2, 0.6, 0.2.
    PiecewiseConstantDensity f({-1.5, -0.5, 0.5, 1.5}, {0.2, 0.6, 0.2});
    CHECK(std::exp(f.log_pdf(vec1(0.8))) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(std::exp(f.log_pdf(vec1(0.4))) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::exp(f.log_pdf(vec1(-0.4))) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(f.log_pdf(vec1(2.0)) == -std::numeric_limits<double>::infinity());
    CHECK(f.log_pdf(vec1(-5.0)) == -std::numeric_limits<double>::infinity());
    CHECK(f.l2_norm_sq() == doctest::Approx(0.44).epsilon(1e-15));
}

TEST_CASE("piecewise density rescales like a change of units") {
    PiecewiseConstantDensity meters({-1.5, -0.5, 0.5, 1.5}, {0.2, 0.6, 0.2});
    PiecewiseConstantDensity cm = meters.rescaled(100.0);
    CHECK(std::exp(cm.log_pdf(vec1(80.0))) == doctest::Approx(0.002).epsilon(1e-15));
    CHECK(std::exp(cm.log_pdf(vec1(40.0))) == doctest::Approx(0.006).epsilon(1e-15));
    CHECK(cm.l2_norm_sq() == doctest::Approx(0.0044).epsilon(1e-12));
}

TEST_CASE("piecewise construction validates edges and total mass") {
    CHECK_THROWS_AS(PiecewiseConstantDensity({0.0, 1.0}, {0.5}), ValidationError); // mass 0.5
    CHECK_THROWS_AS(PiecewiseConstantDensity({1.0, 0.0}, {1.0}), ValidationError); // bad edges
    CHECK_THROWS_AS(PiecewiseConstantDensity({0.0, 1.0, 1.0}, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(PiecewiseConstantDensity({0.0, 1.0}, {-1.0}), ValidationError);
    CHECK_THROWS_AS(PiecewiseConstantDensity({0.0}, {}), ValidationError);
}

TEST_CASE("piecewise sampling reproduces bin masses") {
    PiecewiseConstantDensity f({-1.5, -0.5, 0.5, 1.5}, {0.2, 0.6, 0.2});
    Rng rng(11);
    const int n = 50000;
    int mid = 0;
    for (int i = 0; i < n; ++i) {
        double x = f.sample(rng)[0];
        REQUIRE(x >= -1.5);
        REQUIRE(x < 1.5);
        if (x >= -0.5 && x < 0.5) ++mid;
    }
    CHECK(std::abs(static_cast<double>(mid) / n - 0.6) < 4.0 * std::sqrt(0.6 * 0.4 / n));
}
