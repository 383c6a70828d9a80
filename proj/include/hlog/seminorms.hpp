#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hlog/common.hpp"
#include "hlog/corpus.hpp"
#include "hlog/modulus.hpp"
#include "hlog/quadrature.hpp"

namespace hlog {

// ---------------------------------------------------------------------------
// H-log seminorm  [f]_alpha = sup_r omega(r) (-log r)^alpha, restricted to
// r < delta0, plus the upper extension of the equivalence sandwich
// [f]_alpha <= [f]_{alpha;delta0} + 2 (-log delta0)^alpha ||f||.
// ---------------------------------------------------------------------------

struct HlogSeminorm {
    double restricted = 0.0;   // [f]_{alpha; delta0}
    double upper_bound = 0.0;  // bound for the unrestricted [f]_alpha
};

inline double hlog_weight(double r, double alpha) { return std::pow(-std::log(r), alpha); }

inline HlogSeminorm hlog_seminorm(const Modulus& m, double alpha, double delta0,
                                  double sup_norm) {
    if (alpha <= 0) throw param_error("hlog_seminorm: alpha must be positive");
    if (!(delta0 > 0 && delta0 < 1)) throw param_error("hlog_seminorm: delta0 in (0,1)");
    if (m.smallest_radius() > delta0)
        throw coverage_error("hlog_seminorm: modulus ladder does not reach below delta0");
    HlogSeminorm out;
    for (size_t k = 0; k < m.radii.size(); ++k) {
        double r = m.radii[k];
        if (r > delta0 * (1.0 + 1e-12)) continue;
        out.restricted = std::max(out.restricted, m.values[k] * hlog_weight(r, alpha));
    }
    out.upper_bound = out.restricted + 2.0 * hlog_weight(delta0, alpha) * sup_norm;
    return out;
}

// Same-sample evaluation straight from a pair set (pair distances keep their
// exact weights; this is what makes the sandwich and interpolation
// inequalities identities rather than approximations).
inline double hlog_from_pairs(const PairSet& ps, double alpha, double delta0 = 1.0) {
    if (alpha <= 0) throw param_error("hlog_from_pairs: alpha must be positive");
    double best = 0.0;
    for (const EvalPair& p : ps.pairs) {
        if (p.d >= 1.0 || p.d > delta0 * (1.0 + 1e-12)) continue;
        best = std::max(best, p.absdiff * hlog_weight(p.d, alpha));
    }
    return best;
}

// Interpolation bound from the same samples:
// [f]_beta <= [f]_alpha^{beta/alpha} (2 ||f||)^{1 - beta/alpha},  0 < beta < alpha.
inline double interpolation_bound(double hlog_alpha, double sup_norm, double alpha,
                                  double beta) {
    if (!(beta > 0 && beta < alpha)) throw param_error("interpolation_bound: 0 < beta < alpha");
    return std::pow(hlog_alpha, beta / alpha) * std::pow(2.0 * sup_norm, 1.0 - beta / alpha);
}

// ---------------------------------------------------------------------------
// Dini seminorm  [f]_{*,delta} = int_0^delta omega(r) dr / r, by trapezoid in
// t = -log r over the tabulated ladder. The (0, r_min) remainder cannot be
// integrated from the table; it is reported as a separate bound, valid when
// omega decays at least like (-log r)^{-2} below the floor.
// ---------------------------------------------------------------------------

struct DiniResult {
    double value = 0.0;       // quadrature over [r_min, delta]
    double tail_bound = 0.0;  // bound for the (0, r_min) remainder
    double r_min = 0.0;
};

inline DiniResult dini_seminorm(const Modulus& m, double delta) {
    if (!(delta > 0 && delta < 1)) throw param_error("dini_seminorm: delta in (0,1)");
    if (m.smallest_radius() > delta)
        throw coverage_error("dini_seminorm: ladder does not reach below delta");
    // ascending t = -log r over rungs with r <= delta
    std::vector<double> ts, om;
    for (size_t k = 0; k < m.radii.size(); ++k) {
        if (m.radii[k] > delta * (1.0 + 1e-12)) continue;
        ts.push_back(-std::log(m.radii[k]));
        om.push_back(m.values[k]);
    }
    DiniResult out;
    for (size_t k = 0; k + 1 < ts.size(); ++k)
        out.value += 0.5 * (om[k] + om[k + 1]) * (ts[k + 1] - ts[k]);
    out.r_min = m.smallest_radius();
    double omega_floor = m.values.back();
    out.tail_bound = omega_floor * (-std::log(out.r_min));
    return out;
}

// ---------------------------------------------------------------------------
// Hoelder seminorm  [f]_{H(lambda)} = sup omega(r) / r^lambda. Reported with
// a divergence flag when the rung ratios keep growing toward the floor.
// ---------------------------------------------------------------------------

struct HolderResult {
    double value = 0.0;
    bool divergent = false;
};

inline HolderResult holder_seminorm(const Modulus& m, double lambda) {
    if (!(lambda > 0 && lambda <= 1)) throw param_error("holder_seminorm: lambda in (0,1]");
    HolderResult out;
    std::vector<double> ratios;  // ascending in k = descending in r
    for (size_t k = 0; k < m.radii.size(); ++k) {
        double q = m.values[k] / std::pow(m.radii[k], lambda);
        out.value = std::max(out.value, q);
        if (m.values[k] > 0) ratios.push_back(q);
    }
    int grow = 0, span = 0;
    for (size_t k = ratios.size() >= 6 ? ratios.size() - 6 : 0; k + 1 < ratios.size(); ++k) {
        ++span;
        if (ratios[k + 1] > ratios[k] * (1.0 + 1e-9)) ++grow;
    }
    out.divergent = span >= 3 && grow == span;
    return out;
}

// ---------------------------------------------------------------------------
// Log-exponent fit: least squares of log omega against log(-log r); returns
// alpha_hat = -slope.
// ---------------------------------------------------------------------------

struct LogFit {
    double alpha_hat = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
};

inline LogFit fit_log_exponent(const Modulus& m, double r_lo, double r_hi) {
    std::vector<double> X, Y;
    for (size_t k = 0; k < m.radii.size(); ++k) {
        double r = m.radii[k];
        if (r < r_lo * (1.0 - 1e-12) || r > r_hi * (1.0 + 1e-12)) continue;
        if (m.values[k] <= 0.0)
            throw precondition_error("fit_log_exponent: zero modulus value in window");
        X.push_back(std::log(-std::log(r)));
        Y.push_back(std::log(m.values[k]));
    }
    if (X.size() < 5) throw precondition_error("fit_log_exponent: need >= 5 points in window");
    double n = static_cast<double>(X.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        sx += X[i];
        sy += Y[i];
        sxx += X[i] * X[i];
        sxy += X[i] * Y[i];
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icpt = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0, ybar = sy / n;
    for (size_t i = 0; i < X.size(); ++i) {
        double e = Y[i] - (slope * X[i] + icpt);
        ss_res += e * e;
        ss_tot += (Y[i] - ybar) * (Y[i] - ybar);
    }
    LogFit fit;
    fit.alpha_hat = -slope;
    fit.intercept = icpt;
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.points = static_cast<int>(X.size());
    return fit;
}

// ---------------------------------------------------------------------------
// Integral seminorm
// [f]_{p,lambda}^p = sup_{x0, rho} (-log rho)^lambda *
//      int_{Omega(x0,rho)} |u(x) - mean|^p |x - x0|^{-n} dx.
// Log-radial quadrature with the engine's floor; the mean is a volume mean
// over Omega(x0, rho) computed on the same angular grid.
// ---------------------------------------------------------------------------

inline double integral_seminorm(const ScalarField& f, double p, double lambda,
                                const std::vector<Vec>& centers,
                                const std::vector<double>& rho_ladder,
                                const QuadConfig& quad = {}) {
    if (p < 1.0) throw param_error("integral_seminorm: p must be >= 1");
    if (lambda <= 0) throw param_error("integral_seminorm: lambda must be positive");
    check_ladder(rho_ladder);
    const int n = f.domain.dim;
    AngularRule ang = angular_rule(n, quad.angular_order);
    double best = 0.0;
    for (const Vec& x0 : centers) {
        for (double rho : rho_ladder) {
            // volume mean over Omega(x0, rho): plain Gauss in r against r^{n-1}
            const auto& gl = gauss_legendre(32);
            double vol = 0.0, mean_acc = 0.0;
            for (const auto& [xi, wi] : gl) {
                double r = 0.5 * rho * (xi + 1.0);
                double wr = 0.5 * rho * wi * std::pow(r, n - 1);
                for (size_t a = 0; a < ang.dirs.size(); ++a) {
                    Vec x = x0 + r * ang.dirs[a];
                    if (!f.domain.contains(x)) continue;
                    vol += wr * ang.w[a];
                    mean_acc += wr * ang.w[a] * f(x);
                }
            }
            if (vol <= 0) continue;
            double mean = mean_acc / vol;
            RadialRule rad = log_radial_rule(quad.r_floor, rho, quad.radial_nodes_per_decade);
            double integral = 0.0;
            for (size_t k = 0; k < rad.r.size(); ++k) {
                double shell = 0.0;
                for (size_t a = 0; a < ang.dirs.size(); ++a) {
                    Vec x = x0 + rad.r[k] * ang.dirs[a];
                    if (!f.domain.contains(x)) continue;
                    shell += ang.w[a] * std::pow(std::fabs(f(x) - mean), p);
                }
                integral += rad.w[k] * shell;
            }
            best = std::max(best, hlog_weight(rho, lambda) * integral);
        }
    }
    return std::pow(best, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Extension operator on the unit ball: Tf(x) = f(x) inside, f(x/|x|) in the
// band 1 < |x| <= 1 + rho. The radial projection is 1-Lipschitz outside and
// dist(x, ball) <= |x - y| for mixed pairs, so omega_{Tf}(r) <= omega_f(2 r).
// ---------------------------------------------------------------------------

inline ScalarField extend_field(const ScalarField& f, double rho) {
    bool unit_ball = (f.domain.kind == DomainKind::UnitBall) ||
                     (f.domain.kind == DomainKind::Ball && std::fabs(f.domain.radius - 1.0) < 1e-12);
    if (!unit_ball)
        throw unsupported_domain_error("extend_field: only the unit ball is supported");
    if (!(rho > 0 && rho < 1)) throw param_error("extend_field: rho in (0,1)");
    ScalarField g;
    g.domain = DomainSpec::ball(f.domain.dim, 1.0 + rho);
    g.label = "extend(" + f.label + ")";
    auto ev = f.evaluate;
    g.evaluate = [ev](const Vec& x) {
        double s = norm(x);
        if (s <= 1.0) return ev(x);
        return ev((1.0 / s) * x);
    };
    g.singular_points = f.singular_points;
    return g;
}

// Projection of a point of the extended ball onto the closed unit ball.
inline Vec project_to_unit_ball(const Vec& x) {
    double s = norm(x);
    if (s <= 1.0) return x;
    return (1.0 / s) * x;
}

// ---------------------------------------------------------------------------
// Full seminorm report
// ---------------------------------------------------------------------------

struct SeminormReportOptions {
    std::vector<double> alphas = {1.0, 2.0};
    std::vector<double> lambdas = {0.5, 1.0};
    double delta0 = 1.0 / 9.0;
    double dini_delta = 1.0 / 9.0;
    std::optional<double> integral_p;       // enables the integral seminorm
    double integral_lambda = 1.0;
    int budget = 128;
    uint64_t seed = 1;
};

struct SeminormEntry {
    double alpha = 0;
    double restricted = 0;
    double upper_bound = 0;
    double full_norm = 0;  // restricted + sup
};

struct SeminormReport {
    std::string field;
    double sup_norm = 0;
    std::vector<SeminormEntry> hlog;
    std::vector<std::pair<double, HolderResult>> holder;
    DiniResult dini;
    double integral = 0;
    bool has_integral = false;
    // derivative norms, when analytic derivatives are present
    bool has_grad = false, has_hess = false;
    double sup_grad = 0, sup_hess = 0;
    double grad_hlog = 0, hess_hlog = 0;  // max component seminorm at alphas[0]
    Modulus modulus;
};

// Vector/matrix norms are taken component-wise with a max reduction.
inline SeminormReport make_seminorm_report(const ScalarField& f,
                                           const SeminormReportOptions& opt = {}) {
    std::vector<double> ladder = dyadic_ladder(1, 40);
    for (double r : delta0_ladder(opt.delta0, 24)) ladder.push_back(r);
    PairGeometry geom =
        sample_pair_geometry(f.domain, f.singular_points, ladder, opt.budget, opt.seed);
    PairSet ps = evaluate_pairs(f, geom);
    Modulus m = modulus_from_pairs(ps, ladder);
    m.meta = {opt.budget, opt.seed, f.label};

    SeminormReport rep;
    rep.field = f.label;
    rep.sup_norm = ps.sup_abs;
    rep.modulus = m;
    for (double a : opt.alphas) {
        HlogSeminorm h = hlog_seminorm(m, a, opt.delta0, ps.sup_abs);
        rep.hlog.push_back({a, h.restricted, h.upper_bound, h.restricted + ps.sup_abs});
    }
    for (double l : opt.lambdas) rep.holder.push_back({l, holder_seminorm(m, l)});
    rep.dini = dini_seminorm(m, opt.dini_delta);
    if (opt.integral_p) {
        std::vector<Vec> centers = {f.domain.center()};
        rep.integral = integral_seminorm(f, *opt.integral_p, opt.integral_lambda, centers,
                                         {0.25, 0.125, 1.0 / 16.0});
        rep.has_integral = true;
    }
    double alpha0 = opt.alphas.front();
    if (f.has_gradient()) {
        rep.has_grad = true;
        for (int i = 0; i < f.domain.dim; ++i) {
            ScalarField gi = gradient_entry_field(f, i);
            PairSet pg = evaluate_pairs(gi, geom);
            rep.sup_grad = std::max(rep.sup_grad, pg.sup_abs);
            rep.grad_hlog = std::max(rep.grad_hlog, hlog_from_pairs(pg, alpha0, opt.delta0));
        }
    }
    if (f.has_hessian()) {
        rep.has_hess = true;
        for (int i = 0; i < f.domain.dim; ++i)
            for (int j = i; j < f.domain.dim; ++j) {
                ScalarField hij = hessian_entry_field(f, i, j);
                PairSet ph = evaluate_pairs(hij, geom);
                rep.sup_hess = std::max(rep.sup_hess, ph.sup_abs);
                rep.hess_hlog = std::max(rep.hess_hlog, hlog_from_pairs(ph, alpha0, opt.delta0));
            }
    }
    return rep;
}

}  // namespace hlog
