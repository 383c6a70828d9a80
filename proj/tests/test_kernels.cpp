#include <catch2/catch_amalgamated.hpp>

#include "hlog/corpus.hpp"
#include "hlog/kernel.hpp"

using namespace hlog;

TEST_CASE("kernel validation") {
    SECTION("registered kernels are mean-zero with clean annuli") {
        for (const std::string& name : kernel_names()) {
            SingularKernel k = singular_kernel(name);
            KernelValidation v = validate_kernel(k, 1e-8);
            INFO("kernel " << name);
            CHECK(std::fabs(v.sphere_mean) <= 1e-10);
            CHECK(v.sup_sigma > 0);
            CHECK(v.triple_norm >= v.sup_sigma);
            for (const AnnulusRow& row : v.annuli) CHECK(std::fabs(row.integral) <= 1e-8);
        }
    }
    SECTION("sigma = d1 d2 in n = 3") {
        SingularKernel k;
        k.dim = 3;
        k.name = "d1d2";
        k.sigma = [](const Vec& d) { return d[0] * d[1]; };
        KernelValidation v = validate_kernel(k, 1e-8);
        CHECK(std::fabs(v.sphere_mean) <= 1e-10);
    }
    SECTION("sigma = 1 is rejected with the measured mean") {
        SingularKernel k;
        k.dim = 2;
        k.name = "one";
        k.sigma = [](const Vec&) { return 1.0; };
        try {
            validate_kernel(k, 1e-8);
            FAIL("expected invalid_kernel_error");
        } catch (const invalid_kernel_error& e) {
            CHECK(e.measured_mean == Catch::Approx(2.0 * kPi));
        }
    }
    SECTION("sigma = 1 - n d1^2 is mean-zero (mean of d1^2 is 1/n)") {
        SingularKernel k;
        k.dim = 2;
        k.name = "lap2-pure";
        k.sigma = [](const Vec& d) { return 1.0 - 2.0 * d[0] * d[0]; };
        CHECK(std::fabs(validate_kernel(k, 1e-8).sphere_mean) <= 1e-12);
        CHECK(std::fabs(validate_kernel(singular_kernel("laplace3-pure"), 1e-8).sphere_mean) <=
              1e-12);
    }
    SECTION("unknown kernel name") {
        CHECK_THROWS_AS(singular_kernel("nope"), lookup_error);
    }
}

TEST_CASE("kernel gradient formula matches finite differences") {
    for (const std::string name : {"harmonic-2", "harmonic-mixed", "laplace3-pure"}) {
        SingularKernel k = singular_kernel(name);
        Vec x = Vec::zero(k.dim);
        x[0] = 0.21;
        x[1] = -0.13;
        Vec g = kernel_gradient(k, x);
        const double h = 1e-6;
        for (int i = 0; i < k.dim; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            double fd = (k.K(xp) - k.K(xm)) / (2.0 * h);
            INFO("kernel " << name << " component " << i);
            CHECK(g[i] == Catch::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("pv convolution") {
    SECTION("radial plateau field cancels at the center") {
        ScalarField zeta = build_cutoff({0.2}, 2);
        SingularKernel k = singular_kernel("harmonic-2");
        PvResult r = pv_convolve(k, zeta, Vec::zero(2));
        CHECK(std::fabs(r.value) <= 1e-10);
    }
    SECTION("zero symbol gives zero everywhere") {
        SingularKernel k;
        k.dim = 2;
        k.name = "zero";
        k.sigma = [](const Vec&) { return 0.0; };
        ScalarField phi = corpus("forcing-hlog-2");
        CHECK(pv_convolve(k, phi, {0.05, 0.02}).value == 0.0);
    }
    SECTION("linear in phi; exact scaling in sigma") {
        SingularKernel k = singular_kernel("harmonic-mixed");
        ScalarField a = corpus("forcing-hlog-2");
        ScalarField b = corpus("hlog-2-bump");
        Vec x{0.03, -0.01};
        double va = pv_convolve(k, a, x).value;
        double vb = pv_convolve(k, b, x).value;
        double vsum = pv_convolve(k, field_sum(field_scale(a, 2.0), field_scale(b, -0.5)), x).value;
        CHECK(vsum == Catch::Approx(2.0 * va - 0.5 * vb).margin(1e-12));
        SingularKernel k3 = k;
        k3.sigma = [](const Vec& d) { return 3.0 * 2.0 * d[0] * d[1]; };
        CHECK(pv_convolve(k3, a, x).value == Catch::Approx(3.0 * va).epsilon(1e-14));
    }
    SECTION("refinement self-convergence on a smooth field") {
        SingularKernel k = singular_kernel("harmonic-2");
        ScalarField phi = corpus("bump");
        Vec x{0.1, 0.07};
        QuadConfig coarse{4, 6, 1e-10};
        double v0 = pv_convolve(k, phi, x, coarse).value;
        double v1 = pv_convolve(k, phi, x, coarse.refine(1)).value;
        double v2 = pv_convolve(k, phi, x, coarse.refine(2)).value;
        CHECK(std::fabs(v2 - v1) <= std::fabs(v1 - v0) + 1e-14);
    }
    SECTION("tail bound reporting") {
        SingularKernel k = singular_kernel("harmonic-mixed");
        ScalarField phi = corpus("forcing-hlog-2");
        PvResult r = pv_convolve(k, phi, Vec::zero(2), {}, HlogHint{2.0, 1.0});
        CHECK(r.tail_bound > 0);
        CHECK(r.tail_bound < 1.0);  // (a-1)^{-1} (-log 1e-14)^{-1} * |sigma|_1
        PvResult r1 = pv_convolve(k, phi, Vec::zero(2), {}, HlogHint{1.0, 1.0});
        CHECK(std::isinf(r1.tail_bound));
        CHECK(r1.accuracy_warning);
    }
    SECTION("preconditions") {
        SingularKernel k = singular_kernel("harmonic-2");
        CHECK_THROWS_AS(pv_convolve(k, corpus("hlog-alpha-2"), Vec::zero(2)),
                        precondition_error);  // not compactly supported
        CHECK_THROWS_AS(pv_convolve(k, corpus("forcing-hlog-2"), {0.9, 0.0}),
                        unsupported_domain_error);  // x outside I(R)
        CHECK_THROWS_AS(pv_convolve(singular_kernel("laplace3-pure"), corpus("forcing-hlog-2"),
                                    Vec::zero(2)),
                        dimension_error);
    }
}

TEST_CASE("dezer decay test") {
    SECTION("frozen oracle ratios (independent adaptive quadrature)") {
        DezerReport r2 = dezer_check(2.0, {1e-4, 1e-6, 1e-8, 1e-12});
        CHECK(r2.rows[0].ratio == Catch::Approx(0.9948367684).epsilon(1e-4));
        CHECK(r2.rows[1].ratio == Catch::Approx(0.7191214938).epsilon(1e-4));
        CHECK(r2.rows[2].ratio == Catch::Approx(0.6459014107).epsilon(1e-4));
        CHECK(r2.rows[3].ratio == Catch::Approx(0.5886303433).epsilon(1e-4));
        DezerReport r15 = dezer_check(1.5, {1e-4, 1e-8});
        CHECK(r15.rows[0].ratio == Catch::Approx(0.7965495640).epsilon(1e-4));
        CHECK(r15.rows[1].ratio == Catch::Approx(0.6045941111).epsilon(1e-4));
    }
    SECTION("inequality holds below the reported delta0") {
        DezerReport r = dezer_check(2.0, {1e-2, 1e-4, 1e-6, 1e-8});
        CHECK(r.delta0 > 0);
        CHECK(r.delta0 <= 1e-4 * (1 + 1e-12));  // ratio > 1 at delta = 1e-2
        for (const DezerRow& row : r.rows)
            if (row.delta <= r.delta0) CHECK(row.holds);
    }
    SECTION("ratios approach 1/2 monotonically (from above)") {
        DezerReport r = dezer_check(2.0, {1e-4, 1e-6, 1e-8, 1e-10, 1e-12});
        for (size_t k = 0; k + 1 < r.rows.size(); ++k) {
            CHECK(r.rows[k].ratio > r.rows[k + 1].ratio);
            CHECK(r.rows[k + 1].ratio > 0.5);
        }
    }
    SECTION("single-delta ladder gives a single row") {
        DezerReport r = dezer_check(2.0, {1e-6});
        CHECK(r.rows.size() == 1);
        CHECK(r.rows[0].ratio > 0);
        CHECK(r.rows[0].ratio < 1);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(dezer_check(1.0, {1e-6}), param_error);
        CHECK_THROWS_AS(dezer_check(2.0, {0.2}), param_error);
        CHECK_THROWS_AS(dezer_check(2.0, {}), param_error);
    }
}

TEST_CASE("kernel displacement bound") {
    SECTION("laplacian-type kernel satisfies the bound on random triples") {
        GradBoundReport rep =
            kernel_gradient_bound_check(singular_kernel("laplace3-pure"), 10000, 99);
        CHECK(rep.triples == 10000);
        CHECK(rep.c_max > 0);
        CHECK(rep.c_max < 1e3);
        CHECK(rep.comparability_violations == 0);
    }
    SECTION("zero symbol gives zero left side") {
        SingularKernel k;
        k.dim = 2;
        k.name = "zero";
        k.sigma = [](const Vec&) { return 0.0; };
        k.sigma_grad = [](const Vec& d) { return Vec::zero(d.n); };
        GradBoundReport rep = kernel_gradient_bound_check(k, 100, 1);
        CHECK(rep.c_max == 0.0);
    }
    SECTION("triple with y on the segment axis at 2.5 delta") {
        SingularKernel k = singular_kernel("harmonic-2");
        double delta = 1e-3;
        Vec x0{0.1, 0.05}, dir{1.0, 0.0};
        Vec x1 = x0 + delta * dir;
        Vec y = x0 + 2.5 * delta * dir;
        KernelValidation v = validate_kernel(k);
        double lhs = std::fabs(k.K(x0 - y) - k.K(x1 - y));
        GradBoundReport rep = kernel_gradient_bound_check(k, 10000, 7);
        double c = rep.c_max * 1.5;  // sampled constant with headroom
        CHECK(lhs <= c * v.triple_norm * delta / std::pow(norm(y - x0), 3.0));
    }
}
