#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hlog/common.hpp"
#include "hlog/field.hpp"
#include "hlog/quadrature.hpp"

namespace hlog {

// Singular kernel K(x) = sigma(x/|x|) / |x|^n with a degree-0 homogeneous,
// mean-zero symbol. Homogeneity is structural: sigma is only ever evaluated
// on normalized directions.
struct SingularKernel {
    int dim = 2;
    std::string name;
    std::function<double(const Vec&)> sigma;
    std::function<Vec(const Vec&)> sigma_grad;  // gradient of the 0-homogeneous
                                                // extension; optional

    double K(const Vec& x) const {
        double s = norm(x);
        return sigma((1.0 / s) * x) / std::pow(s, dim);
    }
};

// Gradient of the 0-homogeneous extension of sigma at a unit direction,
// analytic when provided, otherwise centered finite differences.
inline Vec sigma_gradient(const SingularKernel& k, const Vec& d) {
    if (k.sigma_grad) return k.sigma_grad(d);
    const double h = 1e-6;
    Vec g = Vec::zero(d.n);
    for (int i = 0; i < d.n; ++i) {
        Vec dp = d, dm = d;
        dp[i] += h;
        dm[i] -= h;
        g[i] = (k.sigma(normalized(dp)) - k.sigma(normalized(dm))) / (2.0 * h);
    }
    return g;
}

// grad K(x) = |x|^{-(n+1)} [ (grad sigma)(x/|x|) - n (x/|x|) sigma(x/|x|) ].
inline Vec kernel_gradient(const SingularKernel& k, const Vec& x) {
    double s = norm(x);
    Vec d = (1.0 / s) * x;
    Vec gs = sigma_gradient(k, d);
    double sg = k.sigma(d);
    Vec out = Vec::zero(x.n);
    double c = std::pow(s, -(k.dim + 1.0));
    for (int i = 0; i < x.n; ++i) out[i] = c * (gs[i] - k.dim * d[i] * sg);
    return out;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline std::vector<std::string> kernel_names() {
    return {"harmonic-2", "harmonic-mixed", "harmonic-4", "laplace3-pure", "laplace3-mixed"};
}

inline SingularKernel singular_kernel(const std::string& name) {
    SingularKernel k;
    k.name = name;
    if (name == "harmonic-2") {  // cos 2phi
        k.dim = 2;
        k.sigma = [](const Vec& d) { return d[0] * d[0] - d[1] * d[1]; };
        k.sigma_grad = [](const Vec& d) {
            double s = d[0] * d[0] - d[1] * d[1];
            return Vec{2.0 * d[0] * (1.0 - s), -2.0 * d[1] * (1.0 + s)};
        };
        return k;
    }
    if (name == "harmonic-mixed") {  // sin 2phi
        k.dim = 2;
        k.sigma = [](const Vec& d) { return 2.0 * d[0] * d[1]; };
        k.sigma_grad = [](const Vec& d) {
            return Vec{2.0 * d[1] * (1.0 - 2.0 * d[0] * d[0]),
                       2.0 * d[0] * (1.0 - 2.0 * d[1] * d[1])};
        };
        return k;
    }
    if (name == "harmonic-4") {  // cos 4phi
        k.dim = 2;
        k.sigma = [](const Vec& d) {
            double c2 = d[0] * d[0] - d[1] * d[1];
            double s2 = 2.0 * d[0] * d[1];
            return c2 * c2 - s2 * s2;
        };
        return k;
    }
    if (name == "laplace3-pure") {  // shape of a pure second-derivative symbol
        k.dim = 3;
        k.sigma = [](const Vec& d) { return 1.0 - 3.0 * d[0] * d[0]; };
        k.sigma_grad = [](const Vec& d) {
            double q = d[0] * d[0];
            return Vec{-6.0 * d[0] * (1.0 - q), 6.0 * d[1] * q, 6.0 * d[2] * q};
        };
        return k;
    }
    if (name == "laplace3-mixed") {
        k.dim = 3;
        k.sigma = [](const Vec& d) { return 3.0 * d[0] * d[1]; };
        return k;
    }
    throw lookup_error("singular_kernel: unknown kernel '" + name + "'");
}

// ---------------------------------------------------------------------------
// Validation: sphere mean, annulus cancellation, symbol norms.
// ---------------------------------------------------------------------------

struct AnnulusRow {
    double r1, r2, integral;
};

struct KernelValidation {
    double sphere_mean = 0;
    double sup_sigma = 0;
    double sup_grad_sigma = 0;
    double triple_norm = 0;  // ||sigma|| + ||grad sigma||
    std::vector<AnnulusRow> annuli;
};

inline KernelValidation validate_kernel(const SingularKernel& k, double tol = 1e-8,
                                        const QuadConfig& quad = {}) {
    AngularRule ang = angular_rule(k.dim, quad.angular_order);
    KernelValidation v;
    for (size_t a = 0; a < ang.dirs.size(); ++a) {
        double s = k.sigma(ang.dirs[a]);
        v.sphere_mean += ang.w[a] * s;
        v.sup_sigma = std::max(v.sup_sigma, std::fabs(s));
        v.sup_grad_sigma = std::max(v.sup_grad_sigma, norm(sigma_gradient(k, ang.dirs[a])));
    }
    v.triple_norm = v.sup_sigma + v.sup_grad_sigma;
    for (auto [r1, r2] : {std::pair{0.01, 0.1}, {0.1, 0.5}, {0.5, 1.0}}) {
        RadialRule rad = log_radial_rule(r1, r2, quad.radial_nodes_per_decade);
        double integral = 0.0;
        for (size_t i = 0; i < rad.r.size(); ++i) {
            double shell = 0.0;
            for (size_t a = 0; a < ang.dirs.size(); ++a) shell += ang.w[a] * k.sigma(ang.dirs[a]);
            integral += rad.w[i] * shell;
        }
        v.annuli.push_back({r1, r2, integral});
    }
    if (std::fabs(v.sphere_mean) > tol)
        throw invalid_kernel_error("validate_kernel: symbol '" + k.name +
                                       "' violates the mean-zero requirement (mean = " +
                                       fmt_g(v.sphere_mean) + ")",
                                   v.sphere_mean);
    return v;
}

// ---------------------------------------------------------------------------
// Principal-value convolution
//
// (K * phi)(x) = int (phi(y) - phi(x)) K(x - y) dy, integrated over
// |y - x| <= |x| + R_supp (outer full annuli vanish by cancellation).
// The region below the radial floor is not integrated; its size is bounded
// through the H-log modulus of phi when a hint is supplied, and reported as
// an error bar.
// ---------------------------------------------------------------------------

struct HlogHint {
    double alpha;
    double seminorm;
};

struct PvResult {
    double value = 0.0;
    double tail_bound = std::numeric_limits<double>::quiet_NaN();
    bool accuracy_warning = false;
    int radial_nodes = 0;
    int angular_nodes = 0;
};

inline PvResult pv_convolve(const SingularKernel& k, const ScalarField& phi, const Vec& x,
                            const QuadConfig& quad = {},
                            std::optional<HlogHint> hint = std::nullopt) {
    if (!phi.compactly_supported())
        throw precondition_error("pv_convolve: phi must be compactly supported");
    if (k.dim != phi.domain.dim) throw dimension_error("pv_convolve: dimension mismatch");
    double R = phi.support_radius;
    if (norm(x) > R * (1.0 + 1e-12))
        throw unsupported_domain_error("pv_convolve: evaluation point outside I(R)");
    double r_max = norm(x) + R;
    AngularRule ang = angular_rule(k.dim, quad.angular_order);
    RadialRule rad = log_radial_rule(quad.r_floor, r_max, quad.radial_nodes_per_decade);
    // K(x - y) with y = x + r d gives the symbol at -d
    std::vector<double> sg(ang.dirs.size());
    double sum_abs_sigma = 0.0;
    for (size_t a = 0; a < ang.dirs.size(); ++a) {
        sg[a] = k.sigma(-1.0 * ang.dirs[a]);
        sum_abs_sigma += ang.w[a] * std::fabs(sg[a]);
    }
    double fx = phi(x);
    PvResult out;
    out.radial_nodes = static_cast<int>(rad.r.size());
    out.angular_nodes = static_cast<int>(ang.dirs.size());
    double acc = 0.0;
    for (size_t i = 0; i < rad.r.size(); ++i) {
        double shell = 0.0;
        for (size_t a = 0; a < ang.dirs.size(); ++a) {
            Vec y = x + rad.r[i] * ang.dirs[a];
            shell += ang.w[a] * sg[a] * (phi(y) - fx);
        }
        acc += rad.w[i] * shell;
    }
    out.value = acc;
    if (hint) {
        double a = hint->alpha;
        if (a > 1.0) {
            double tailint = std::pow(-std::log(quad.r_floor), 1.0 - a) / (a - 1.0);
            out.tail_bound = hint->seminorm * tailint * sum_abs_sigma;
            out.accuracy_warning = out.tail_bound > 1e-3 * std::max(1.0, std::fabs(out.value));
        } else {
            out.tail_bound = std::numeric_limits<double>::infinity();
            out.accuracy_warning = true;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decay test: LHS(d) = d * int_{2d}^{1/2} (-log(3r/2))^{-alpha} r^{-2} dr
// against (-log d)^{-alpha}. The ratio tends to 1/2.
// ---------------------------------------------------------------------------

struct DezerRow {
    double delta = 0;
    double lhs = 0;
    double bound = 0;
    double ratio = 0;
    bool holds = false;
};

struct DezerReport {
    double alpha = 0;
    std::vector<DezerRow> rows;      // sorted by decreasing delta
    double delta0 = 0;               // largest ladder delta from which on the
                                     // inequality holds (0 if none)
};

inline DezerReport dezer_check(double alpha, std::vector<double> deltas,
                               const QuadConfig& quad = {}) {
    if (alpha <= 1.0) throw param_error("dezer_check: alpha must exceed 1");
    if (deltas.empty()) throw param_error("dezer_check: empty delta ladder");
    for (double d : deltas)
        if (!(d > 0 && d < 1.0 / 9.0)) throw param_error("dezer_check: deltas in (0, 1/9)");
    std::sort(deltas.begin(), deltas.end(), std::greater<double>());
    DezerReport rep;
    rep.alpha = alpha;
    for (double d : deltas) {
        RadialRule rad = log_radial_rule(2.0 * d, 0.5, quad.radial_nodes_per_decade);
        // integrand against dr/r: (-log(3r/2))^{-alpha} / r
        double I = 0.0;
        for (size_t i = 0; i < rad.r.size(); ++i)
            I += rad.w[i] * std::pow(-std::log(1.5 * rad.r[i]), -alpha) / rad.r[i];
        DezerRow row;
        row.delta = d;
        row.lhs = d * I;
        row.bound = std::pow(-std::log(d), -alpha);
        row.ratio = row.lhs / row.bound;
        row.holds = row.lhs <= row.bound;
        rep.rows.push_back(row);
    }
    for (size_t k = 0; k < rep.rows.size(); ++k) {
        bool all = true;
        for (size_t j = k; j < rep.rows.size(); ++j) all = all && rep.rows[j].holds;
        if (all) {
            rep.delta0 = rep.rows[k].delta;
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Displacement bound  |K(x0-y) - K(x1-y)| <= c |||sigma||| delta / |y-x0|^{n+1}
// on sampled admissible triples, plus the midpoint comparability
// |x0-y| <= 2 |x2-y| <= 4 |x0-y|.
// ---------------------------------------------------------------------------

struct GradBoundReport {
    double c_max = 0.0;        // smallest admissible constant over the sample
    int triples = 0;
    int comparability_violations = 0;
    double triple_norm = 0.0;
};

inline GradBoundReport kernel_gradient_bound_check(const SingularKernel& k, int n_triples,
                                                   uint64_t seed, const QuadConfig& quad = {}) {
    AngularRule ang = angular_rule(k.dim, quad.angular_order);
    double sup_sigma = 0, sup_grad = 0;
    for (const Vec& d : ang.dirs) {
        sup_sigma = std::max(sup_sigma, std::fabs(k.sigma(d)));
        sup_grad = std::max(sup_grad, norm(sigma_gradient(k, d)));
    }
    GradBoundReport rep;
    rep.triple_norm = sup_sigma + sup_grad;
    if (rep.triple_norm == 0.0) {
        rep.triples = n_triples;
        return rep;
    }
    SplitMix64 g(derive_seed(seed, 0x7472));
    for (int t = 0; t < n_triples; ++t) {
        Vec x0 = 0.3 * random_unit_vector(g, k.dim);
        double delta = std::pow(10.0, -4.0 + 3.0 * g.uniform());  // 1e-4 .. 1e-1
        Vec x1 = x0 + delta * random_unit_vector(g, k.dim);
        double rho = delta * (2.0 + 20.0 * g.uniform());          // > 2 delta
        Vec y = x0 + rho * random_unit_vector(g, k.dim);
        double lhs = std::fabs(k.K(x0 - y) - k.K(x1 - y));
        double c_req = lhs * std::pow(norm(y - x0), k.dim + 1.0) / (delta * rep.triple_norm);
        rep.c_max = std::max(rep.c_max, c_req);
        Vec x2 = x0 + (0.5 * g.uniform() + 0.25) * (x1 - x0);  // interior of the segment
        double a = norm(x0 - y), b = norm(x2 - y);
        if (!(a <= 2.0 * b * (1.0 + 1e-12) && 2.0 * b <= 4.0 * a * (1.0 + 1e-12)))
            ++rep.comparability_violations;
        ++rep.triples;
    }
    return rep;
}

}  // namespace hlog
