#include <catch2/catch_amalgamated.hpp>

#include "hlog/quadrature.hpp"

using namespace hlog;

TEST_CASE("radial log integral closed forms") {
    // antiderivative (alpha-1)^{-1} (-log r)^{1-alpha}
    CHECK(radial_log_integral(2.0, std::exp(-4.0), std::exp(-2.0)) == Catch::Approx(0.25));
    // alpha = 1 branch: -log(-log r)
    CHECK(radial_log_integral(1.0, std::exp(-std::exp(2.0)), std::exp(-std::exp(1.0))) ==
          Catch::Approx(1.0));
    CHECK(radial_log_integral(2.0, 0.25, 0.25) == 0.0);
    CHECK_THROWS_AS(radial_log_integral(2.0, 0.0, 0.5), param_error);
    CHECK_THROWS_AS(radial_log_integral(2.0, 0.5, 1.5), param_error);
}

TEST_CASE("log-radial rule reproduces the closed forms") {
    // engine calibration: relative error <= 1e-6 across exponents and bounds
    QuadConfig quad;
    for (double alpha : {1.0, 1.5, 2.0, 3.0}) {
        for (auto [r1, r2] : {std::pair{std::exp(-4.0), std::exp(-2.0)},
                              {1e-6, 1e-2},
                              {std::exp(-20.0), std::exp(-1.0)}}) {
            double exact = radial_log_integral(alpha, r1, r2);
            RadialRule rule = log_radial_rule(r1, r2, quad.radial_nodes_per_decade);
            double num = 0;
            for (size_t i = 0; i < rule.r.size(); ++i)
                num += rule.w[i] * std::pow(-std::log(rule.r[i]), -alpha);
            INFO("alpha=" << alpha << " r1=" << r1 << " r2=" << r2);
            CHECK(num == Catch::Approx(exact).epsilon(1e-6));
        }
    }
}

TEST_CASE("angular rules") {
    SECTION("weights sum to the sphere area") {
        AngularRule c = angular_rule(2, 26);
        double sum = 0;
        for (double w : c.w) sum += w;
        CHECK(sum == Catch::Approx(2.0 * kPi));
        AngularRule s = angular_rule(3, 26);
        sum = 0;
        for (double w : s.w) sum += w;
        CHECK(sum == Catch::Approx(4.0 * kPi));
    }
    SECTION("mean of d1^2 over the sphere is area / n") {
        for (int n : {2, 3}) {
            AngularRule rule = angular_rule(n, 26);
            double acc = 0;
            for (size_t a = 0; a < rule.dirs.size(); ++a)
                acc += rule.w[a] * rule.dirs[a][0] * rule.dirs[a][0];
            CHECK(acc == Catch::Approx(rule.area / n).epsilon(1e-12));
        }
    }
    SECTION("odd symbols integrate to zero") {
        AngularRule rule = angular_rule(3, 26);
        double acc = 0;
        for (size_t a = 0; a < rule.dirs.size(); ++a)
            acc += rule.w[a] * rule.dirs[a][0] * rule.dirs[a][1];
        CHECK(std::fabs(acc) < 1e-14);
    }
    SECTION("unsupported dimension") {
        CHECK_THROWS_AS(angular_rule(4, 26), dimension_error);
    }
}

TEST_CASE("gauss-legendre sanity") {
    const auto& gl = gauss_legendre(8);
    double sum = 0, sum_x2 = 0;
    for (const auto& [x, w] : gl) {
        sum += w;
        sum_x2 += w * x * x;
    }
    CHECK(sum == Catch::Approx(2.0));
    CHECK(sum_x2 == Catch::Approx(2.0 / 3.0));
}
