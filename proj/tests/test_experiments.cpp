#include <catch2/catch_amalgamated.hpp>

#include "hlog/experiments.hpp"
#include "hlog/report.hpp"

using namespace hlog;

TEST_CASE("optimality experiment, alpha = 1") {
    OptimalityReport rep = optimality_experiment(1.0);
    // one-unit loss: pure second derivatives and the forcing carry exponent
    // alpha + 1, the mixed entries only alpha
    CHECK(rep.fit_mixed.alpha_hat == Catch::Approx(1.0).margin(0.15));
    CHECK(rep.fit_pure.alpha_hat == Catch::Approx(2.0).margin(0.15));
    CHECK(rep.fit_forcing.alpha_hat == Catch::Approx(2.0).margin(0.15));
    CHECK(rep.fit_mixed.r2 > 0.99);
    SECTION("restricted seminorm at beta > alpha diverges across delta0") {
        CHECK(rep.beta == Catch::Approx(1.5));
        CHECK(rep.divergence_monotone);
        REQUIRE(rep.divergence.size() == 4);
        for (size_t k = 0; k + 1 < rep.divergence.size(); ++k)
            CHECK(rep.divergence[k + 1].second > rep.divergence[k].second);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(optimality_experiment(-1.0), param_error);
    }
}

TEST_CASE("optimality experiment tracks alpha") {
    OptimalityReport rep = optimality_experiment(1.5);
    CHECK(rep.fit_mixed.alpha_hat == Catch::Approx(1.5).margin(0.15));
    CHECK(rep.fit_pure.alpha_hat == Catch::Approx(2.5).margin(0.15));
}

TEST_CASE("klg measurement") {
    KlgConfig cfg;
    SECTION("plateau field: convolution vanishes at the center, small ratio") {
        ScalarField zeta = build_cutoff({0.2}, 2);
        KlgRow row = klg_measure(singular_kernel("harmonic-2"), zeta, 2.0, cfg);
        CHECK(row.norm_phi >= 1.0);
        CHECK(row.ratio < 1.0);
        CHECK(std::fabs(pv_convolve(singular_kernel("harmonic-2"), zeta, Vec::zero(2),
                                    cfg.quad)
                            .value) < 1e-10);
    }
    SECTION("matched forcing field carries a solid ratio") {
        KlgRow row =
            klg_measure(singular_kernel("harmonic-mixed"), corpus("forcing-hlog-2"), 2.0, cfg);
        CHECK(row.norm_phi > 1.0);
        CHECK(row.sup_K > 2.0);   // the matched harmonic drives a solid response
        CHECK(row.semi_K > 1.0);
        CHECK(row.ratio > 0.5);
        CHECK(row.convolutions > 20);
    }
    SECTION("alpha guard") {
        CHECK_THROWS_AS(
            klg_measure(singular_kernel("harmonic-2"), corpus("forcing-hlog-2"), 1.0, cfg),
            param_error);
    }
}

TEST_CASE("interior estimate experiment") {
    SECTION("quadratic field: seminorm part vanishes, inequality trivial") {
        InteriorReport rep = interior_estimate_experiment(
            EllipticOperator::laplacian(2), corpus("quadratic"), 2.0, {});
        for (const InteriorRow& row : rep.rows) {
            // grad^2 u is constant: the H-log part of the LHS is zero
            CHECK(row.lhs == Catch::Approx(1.0).epsilon(1e-9));
            CHECK(row.holds);
            CHECK(row.zeta_bounded);
            CHECK(row.commutator_residual < 1e-10);
        }
        CHECK(rep.slope_bound == Catch::Approx(-4.0).margin(0.2));
    }
    SECTION("counterexample with alpha = alpha0 + 1") {
        ScalarField u = counterexample_field(1.0, 2);
        InteriorReport rep =
            interior_estimate_experiment(EllipticOperator::laplacian(2), u, 2.0, {});
        for (const InteriorRow& row : rep.rows) {
            CHECK(row.lhs > 0);
            CHECK(row.holds);
            CHECK(row.zeta_bounded);
            CHECK(row.commutator_residual < 1e-9);
        }
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(interior_estimate_experiment(EllipticOperator::laplacian(2),
                                                     corpus("quadratic"), 0.5, {}),
                        param_error);
        InteriorConfig bad;
        bad.R_values = {0.6};
        CHECK_THROWS_AS(interior_estimate_experiment(EllipticOperator::laplacian(2),
                                                     corpus("quadratic"), 2.0, bad),
                        param_error);
        CHECK_THROWS_AS(interior_estimate_experiment(EllipticOperator::laplacian(2),
                                                     corpus("abs-x"), 2.0, {}),
                        precondition_error);
    }
}

TEST_CASE("report serialization is deterministic") {
    OptimalityReport rep = optimality_experiment(1.0);
    std::string a = to_json(rep).dump(2);
    std::string b = to_json(optimality_experiment(1.0)).dump(2);
    CHECK(a == b);
    CsvTable t = to_csv(rep);
    CHECK(t.to_string() == to_csv(optimality_experiment(1.0)).to_string());
    CHECK(t.header.size() == 4);
}
