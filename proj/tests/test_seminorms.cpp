#include <catch2/catch_amalgamated.hpp>

#include "hlog/corpus.hpp"
#include "hlog/quadrature.hpp"
#include "hlog/seminorms.hpp"

using namespace hlog;

namespace {

Modulus synthetic_modulus(const std::vector<double>& radii,
                          const std::function<double(double)>& omega) {
    Modulus m;
    m.radii = radii;
    for (double r : radii) m.values.push_back(omega(r));
    return m;
}

}  // namespace

TEST_CASE("hlog seminorm basics") {
    SECTION("constant field gives zero") {
        Modulus m = estimate_modulus(corpus("const-5"), dyadic_ladder(1, 20), 32, 3);
        HlogSeminorm h = hlog_seminorm(m, 2.0, 1.0 / 9.0, 5.0);
        CHECK(h.restricted == 0.0);
        CHECK(h.upper_bound == Catch::Approx(2.0 * std::pow(std::log(9.0), 2.0) * 5.0));
    }
    SECTION("synthetic omega = (-log r)^{-2} has ratio identically one") {
        Modulus m = synthetic_modulus(dyadic_ladder(2, 30), [](double r) {
            return std::pow(-std::log(r), -2.0);
        });
        HlogSeminorm h = hlog_seminorm(m, 2.0, 0.2, 0.0);
        CHECK(h.restricted == Catch::Approx(1.0).epsilon(1e-12));
    }
    SECTION("f = |x|, alpha = 1, delta0 = 1/9: closed-form maximum") {
        // sup_{r < 1/9} r (-log r) = (1/9) log 9, attained at the endpoint
        std::vector<double> ladder = delta0_ladder(1.0 / 9.0, 30);
        Modulus m = estimate_modulus(corpus("abs-x"), ladder, 64, 3);
        HlogSeminorm h = hlog_seminorm(m, 1.0, 1.0 / 9.0, 1.0);
        double exact = std::log(9.0) / 9.0;  // 0.24413606...
        CHECK(h.restricted <= exact * (1.0 + 1e-12));
        CHECK(h.restricted >= 0.98 * exact);
        CHECK(h.restricted == Catch::Approx(exact).epsilon(1e-9));
    }
    SECTION("coverage error when the ladder stops above delta0") {
        Modulus m = synthetic_modulus({0.5, 0.25}, [](double r) { return r; });
        CHECK_THROWS_AS(hlog_seminorm(m, 1.0, 0.1, 0.0), coverage_error);
    }
}

TEST_CASE("sandwich inequality is exact on shared samples") {
    for (const std::string& name : corpus_names()) {
        ScalarField f = corpus(name);
        std::vector<double> ladder = dyadic_ladder(1, 30);
        for (double r : delta0_ladder(1.0 / 9.0, 16)) ladder.push_back(r);
        PairGeometry geom = sample_pair_geometry(f.domain, f.singular_points, ladder, 64, 9);
        PairSet ps = evaluate_pairs(f, geom);
        double alpha = 2.0, delta0 = 1.0 / 9.0;
        double restricted = hlog_from_pairs(ps, alpha, delta0);
        double full = hlog_from_pairs(ps, alpha, 1.0);
        INFO("field " << name);
        CHECK(restricted <= full * (1.0 + 1e-12));
        CHECK(full <= restricted + 2.0 * hlog_weight(delta0, alpha) * ps.sup_abs + 1e-12);
    }
}

TEST_CASE("interpolation inequality is exact on shared samples") {
    // [f]_beta <= [f]_alpha^{beta/alpha} (2||f||)^{1-beta/alpha}, 0 < beta < alpha
    double alpha = 2.0, beta = 1.0;
    for (const std::string& name : corpus_names()) {
        ScalarField f = corpus(name);
        PairGeometry geom =
            sample_pair_geometry(f.domain, f.singular_points, dyadic_ladder(1, 30), 64, 9);
        PairSet ps = evaluate_pairs(f, geom);
        double fa = hlog_from_pairs(ps, alpha, 1.0);
        double fb = hlog_from_pairs(ps, beta, 1.0);
        INFO("field " << name);
        CHECK(fb <= interpolation_bound(fa, ps.sup_abs, alpha, beta) * (1.0 + 1e-12));
    }
}

TEST_CASE("seminorm axioms at the estimator level") {
    ScalarField f = corpus("hlog-alpha-2");
    ScalarField g = corpus("abs-x");
    g.domain = f.domain;  // evaluate both on the smaller ball
    std::vector<double> ladder = dyadic_ladder(2, 24);
    PairGeometry geom = sample_pair_geometry(f.domain, f.singular_points, ladder, 64, 13);
    PairSet pf = evaluate_pairs(f, geom);
    PairSet pg = evaluate_pairs(g, geom);
    PairSet pfg = evaluate_pairs(field_sum(f, g), geom);
    PairSet p3 = evaluate_pairs(field_scale(f, -3.0), geom);
    double alpha = 2.0;
    CHECK(hlog_from_pairs(p3, alpha) ==
          Catch::Approx(3.0 * hlog_from_pairs(pf, alpha)).epsilon(1e-12));
    CHECK(hlog_from_pairs(pfg, alpha) <=
          hlog_from_pairs(pf, alpha) + hlog_from_pairs(pg, alpha) + 1e-12);
}

TEST_CASE("dini seminorm") {
    SECTION("omega = r integrates to delta") {
        Modulus m = synthetic_modulus(geometric_ladder(1.0 / 9.0, 1e-16, 256),
                                      [](double r) { return r; });
        DiniResult d = dini_seminorm(m, 1.0 / 9.0);
        CHECK(d.value == Catch::Approx(1.0 / 9.0).epsilon(1e-4));
    }
    SECTION("omega = 0 integrates to zero") {
        Modulus m = synthetic_modulus(dyadic_ladder(1, 30), [](double) { return 0.0; });
        CHECK(dini_seminorm(m, 0.25).value == 0.0);
    }
    SECTION("omega = (-log r)^{-2} integrates to 1/log 9 over (0, 1/9)") {
        Modulus m = synthetic_modulus(geometric_ladder(1.0 / 9.0, 1e-30, 256), [](double r) {
            return std::pow(-std::log(r), -2.0);
        });
        DiniResult d = dini_seminorm(m, 1.0 / 9.0);
        // antiderivative identity: (alpha-1)^{-1} (-log delta)^{1-alpha}
        CHECK(d.value + 1.0 / (-std::log(1e-30)) == Catch::Approx(1.0 / std::log(9.0)).epsilon(1e-4));
        CHECK(d.value <= 1.0 / std::log(9.0));
        CHECK(d.tail_bound > 0.0);
    }
}

TEST_CASE("dini vs hlog bound") {
    // [f]_{*,d0} <= (alpha-1)^{-1} (-log d0)^{-(alpha-1)} [f]_{alpha;d0}
    double delta0 = 1.0 / 9.0;
    for (double alpha : {1.5, 2.0}) {
        for (const std::string name : {"hlog-alpha-2", "hlog-alpha-3", "abs-x", "linear-x1"}) {
            ScalarField f = corpus(name);
            std::vector<double> ladder = geometric_ladder(delta0, 1e-12, 16);
            Modulus m = estimate_modulus(f, ladder, 64, 17);
            DiniResult d = dini_seminorm(m, delta0);
            HlogSeminorm h = hlog_seminorm(m, alpha, delta0, 0.0);
            double bound =
                std::pow(-std::log(delta0), -(alpha - 1.0)) / (alpha - 1.0) * h.restricted;
            INFO("field " << name << " alpha " << alpha);
            CHECK(d.value <= bound + 1e-3);
        }
    }
}

TEST_CASE("holder seminorm") {
    SECTION("linear field at lambda = 1") {
        Modulus m = estimate_modulus(corpus("linear-x1"), dyadic_ladder(1, 20), 64, 3);
        HolderResult h = holder_seminorm(m, 1.0);
        CHECK(h.value == Catch::Approx(1.0));
        CHECK_FALSE(h.divergent);
    }
    SECTION("constant field gives zero") {
        Modulus m = estimate_modulus(corpus("const-5"), dyadic_ladder(1, 20), 32, 3);
        CHECK(holder_seminorm(m, 0.5).value == 0.0);
    }
    SECTION("hlog field diverges at lambda = 1/2") {
        Modulus m = estimate_modulus(corpus("hlog-alpha-2"), dyadic_ladder(1, 40), 64, 3);
        HolderResult h = holder_seminorm(m, 0.5);
        CHECK(h.divergent);
    }
}

TEST_CASE("log exponent fit") {
    SECTION("exact power laws are recovered exactly") {
        Modulus m = synthetic_modulus(geometric_ladder(1e-2, 1e-8, 4), [](double r) {
            return std::pow(-std::log(r), -2.0);
        });
        LogFit fit = fit_log_exponent(m, 1e-8, 1e-2);
        CHECK(fit.alpha_hat == Catch::Approx(2.0).margin(1e-12));
        CHECK(fit.r2 == Catch::Approx(1.0));
        Modulus m2 = synthetic_modulus(geometric_ladder(1e-2, 1e-8, 4), [](double r) {
            return 3.0 * std::pow(-std::log(r), -1.5);
        });
        LogFit fit2 = fit_log_exponent(m2, 1e-8, 1e-2);
        CHECK(fit2.alpha_hat == Catch::Approx(1.5).margin(1e-12));
        CHECK(fit2.intercept == Catch::Approx(std::log(3.0)).margin(1e-12));
    }
    SECTION("mixed derivative of the counterexample at alpha = 1.5") {
        ScalarField u = counterexample_field(1.5, 2);
        ScalarField mixed = hessian_entry_field(u, 0, 1);
        Modulus m = estimate_modulus_anchored(mixed, Vec::zero(2),
                                              geometric_ladder(1e-3, 1e-8, 2), 16, 3);
        LogFit fit = fit_log_exponent(m, 1e-8, 1e-3);
        CHECK(fit.alpha_hat == Catch::Approx(1.5).margin(0.15));
    }
    SECTION("error paths") {
        Modulus m = synthetic_modulus({0.5, 0.25, 0.125}, [](double r) { return r; });
        CHECK_THROWS_AS(fit_log_exponent(m, 0.1, 0.6), precondition_error);  // < 5 points
        Modulus z = synthetic_modulus(dyadic_ladder(1, 10), [](double) { return 0.0; });
        CHECK_THROWS_AS(fit_log_exponent(z, 0.01, 0.5), precondition_error);  // zero values
    }
}

TEST_CASE("integral seminorm") {
    SECTION("constant field gives zero") {
        double v = integral_seminorm(corpus("const-5"), 2.0, 1.0, {Vec::zero(2)}, {0.25});
        CHECK(v <= 1e-8);
    }
    SECTION("linear field against the polar-grid oracle") {
        // center 0, rho = 1/4: mean = 0 and the weighted integral reduces to
        // (-log rho) * pi rho^2 / 2; frozen: sqrt(log 4 * pi / 32)
        double v = integral_seminorm(corpus("linear-x1"), 2.0, 1.0, {Vec::zero(2)}, {0.25});
        CHECK(v == Catch::Approx(0.3689161566589015).epsilon(1e-3));
    }
    SECTION("controlled by the hlog seminorm (alpha = (1+lambda)/p)") {
        double p = 2.0, lambda = 1.0, alpha = (1.0 + lambda) / p;
        for (const std::string name : {"abs-x", "holder-05", "hlog-alpha-2"}) {
            ScalarField f = corpus(name);
            double ints = integral_seminorm(f, p, lambda, {Vec::zero(2)}, {0.25, 0.125});
            Modulus m = estimate_modulus(f, dyadic_ladder(1, 40), 64, 3);
            double ha = hlog_seminorm(m, alpha, 0.999, 0.0).restricted;
            INFO("field " << name);
            // c collects the angular area and the truncated-floor log factor
            CHECK(ints <= 16.0 * ha);
        }
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(integral_seminorm(corpus("abs-x"), 0.5, 1.0, {Vec::zero(2)}, {0.25}),
                        param_error);
    }
}

TEST_CASE("extension operator") {
    SECTION("constant extends to constant") {
        ScalarField t = extend_field(corpus("const-5"), 0.5);
        CHECK(t({1.3, 0.0}) == 5.0);
        CHECK(t({0.3, 0.1}) == 5.0);
    }
    SECTION("projection to the sphere") {
        ScalarField t = extend_field(corpus("linear-x1"), 0.6);
        CHECK(t({1.5, 0.0}) == Catch::Approx(1.0));
        CHECK(t({0.0, 1.2}) == Catch::Approx(0.0).margin(1e-15));
        CHECK(t({0.5, 0.0}) == Catch::Approx(0.5));
    }
    SECTION("domain and parameter validation") {
        CHECK_THROWS_AS(extend_field(corpus("hlog-alpha-2"), 0.5), unsupported_domain_error);
        CHECK_THROWS_AS(extend_field(corpus("linear-x1"), 1.5), param_error);
    }
    SECTION("seminorm bound [Tf]_{a;d0} <= 2^a [f]_{a;2d0} on shared samples") {
        double alpha = 2.0, delta0 = 1.0 / 9.0, rho = 0.5;
        for (const std::string& name : corpus_unit_ball_names()) {
            ScalarField f = corpus(name);
            ScalarField tf = extend_field(f, rho);
            PairGeometry geom = sample_pair_geometry(
                tf.domain, tf.singular_points, delta0_ladder(delta0, 20), 96, 23);
            PairSet ps_t = evaluate_pairs(tf, geom);
            // project the same pairs into the ball and measure f on them
            PairSet ps_f;
            for (const GeomPair& gp : geom.pairs) {
                Vec px = project_to_unit_ball(gp.x), py = project_to_unit_ball(gp.y);
                double d = dist(px, py);
                if (d < 1e-15) continue;
                ps_f.pairs.push_back({d, std::fabs(f(px) - f(py))});
            }
            std::sort(ps_f.pairs.begin(), ps_f.pairs.end(),
                      [](const EvalPair& a, const EvalPair& b) { return a.d < b.d; });
            double lhs = hlog_from_pairs(ps_t, alpha, delta0);
            double rhs = hlog_from_pairs(ps_f, alpha, 2.0 * delta0);
            INFO("field " << name);
            CHECK(lhs <= std::pow(2.0, alpha) * rhs * (1.0 + 1e-12));
        }
    }
    SECTION("modulus dilation omega_Tf(r) <= omega_f(2r)") {
        ScalarField f = corpus("abs-x");
        ScalarField tf = extend_field(f, 0.5);
        Modulus mt = estimate_modulus(tf, dyadic_ladder(2, 20), 64, 29);
        auto info = corpus_modulus_info("abs-x");
        for (size_t k = 0; k < mt.radii.size(); ++k)
            CHECK(mt.values[k] <= info->omega(2.0 * mt.radii[k]) * (1.0 + 1e-9));
    }
}

TEST_CASE("seminorm report") {
    SeminormReportOptions opt;
    opt.integral_p = 2.0;
    SeminormReport rep = make_seminorm_report(corpus("hlog-alpha-2"), opt);
    CHECK(rep.sup_norm == Catch::Approx(std::pow(std::log(2.0), -2.0)).epsilon(1e-9));
    REQUIRE(rep.hlog.size() == 2);
    CHECK(rep.hlog[1].alpha == 2.0);
    CHECK(rep.hlog[1].restricted > 0.9);  // ratio 1 at origin-anchored pairs
    CHECK(rep.hlog[1].restricted <= rep.hlog[1].upper_bound);
    SeminormReport repc = make_seminorm_report(corpus("const-5"), {});
    for (const auto& h : repc.hlog) CHECK(h.restricted == 0.0);
}
