#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hlog/common.hpp"
#include "hlog/corpus.hpp"
#include "hlog/elliptic.hpp"
#include "hlog/kernel.hpp"
#include "hlog/modulus.hpp"
#include "hlog/seminorms.hpp"

namespace hlog {

// ---------------------------------------------------------------------------
// Optimality probe: the counterexample's second derivatives lose exactly one
// H-log order on the mixed entries. Origin-anchored moduli, log-log exponent
// fits, and a divergence ladder for the restricted seminorm at beta > alpha.
// ---------------------------------------------------------------------------

struct OptimalityConfig {
    double window_lo = 1e-8;
    double window_hi = 1e-3;
    int per_decade = 2;
    int random_dirs = 16;
    double beta_offset = 0.5;
    std::vector<double> divergence_delta0s = {1e-2, 1e-4, 1e-6, 1e-8};
    int divergence_depth = 8;
    int dim = 2;
    uint64_t seed = 1;
};

struct OptimalityReport {
    double alpha = 0;
    LogFit fit_forcing, fit_pure, fit_mixed;
    double beta = 0;
    std::vector<std::pair<double, double>> divergence;  // (delta0, [mixed]_{beta;delta0})
    bool divergence_monotone = false;
    Modulus modulus_mixed, modulus_pure, modulus_forcing;
};

inline OptimalityReport optimality_experiment(double alpha, const OptimalityConfig& cfg = {}) {
    if (alpha <= 0) throw param_error("optimality_experiment: alpha must be positive");
    ScalarField u = counterexample_field(alpha, cfg.dim);
    ScalarField forcing = apply_operator(EllipticOperator::laplacian(cfg.dim), u);
    ScalarField pure = hessian_entry_field(u, 0, 0);
    ScalarField mixed = hessian_entry_field(u, 0, 1);
    Vec origin = Vec::zero(cfg.dim);
    std::vector<double> ladder =
        geometric_ladder(cfg.window_hi, cfg.window_lo, cfg.per_decade);

    OptimalityReport rep;
    rep.alpha = alpha;
    rep.modulus_forcing =
        estimate_modulus_anchored(forcing, origin, ladder, cfg.random_dirs, cfg.seed);
    rep.modulus_pure = estimate_modulus_anchored(pure, origin, ladder, cfg.random_dirs, cfg.seed);
    rep.modulus_mixed =
        estimate_modulus_anchored(mixed, origin, ladder, cfg.random_dirs, cfg.seed);
    rep.fit_forcing = fit_log_exponent(rep.modulus_forcing, cfg.window_lo, cfg.window_hi);
    rep.fit_pure = fit_log_exponent(rep.modulus_pure, cfg.window_lo, cfg.window_hi);
    rep.fit_mixed = fit_log_exponent(rep.modulus_mixed, cfg.window_lo, cfg.window_hi);

    rep.beta = alpha + cfg.beta_offset;
    rep.divergence_monotone = true;
    double prev = -1;
    for (double d0 : cfg.divergence_delta0s) {
        // per-delta0 ladder whose floor scales with delta0, so the restricted
        // seminorm estimate tracks the scale
        Modulus m = estimate_modulus_anchored(mixed, origin, delta0_ladder(d0, cfg.divergence_depth),
                                              cfg.random_dirs, cfg.seed);
        double semi = hlog_seminorm(m, rep.beta, d0, 0.0).restricted;
        if (prev >= 0 && semi <= prev) rep.divergence_monotone = false;
        rep.divergence.push_back({d0, semi});
        prev = semi;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Operator norm probe for the convolution bound: measures
// ||K*phi||_{alpha-1;delta0} / ||phi||_{alpha;delta0} per field, and the
// trend of the ratio across alpha for the matched forcing-type family.
// ---------------------------------------------------------------------------

struct KlgConfig {
    double delta0 = 1.0 / 9.0;
    int shell_lo = 4, shell_hi = 13;  // pair distances 2^-k
    int pair_budget = 96;             // budget for the phi-norm pair sampling
    QuadConfig quad;
    uint64_t seed = 1;
};

struct KlgRow {
    std::string kernel, field;
    double alpha = 0;
    int refine_level = 0;
    double semi_K = 0, sup_K = 0;
    double norm_K = 0, norm_phi = 0;
    double ratio = 0;
    int convolutions = 0;
};

inline KlgRow klg_measure(const SingularKernel& k, const ScalarField& phi, double alpha,
                          const KlgConfig& cfg, int refine_level = 0) {
    if (alpha <= 1.0) throw param_error("klg: alpha must exceed 1");
    QuadConfig quad = cfg.quad.refine(refine_level);
    KlgRow row;
    row.kernel = k.name;
    row.field = phi.label;
    row.alpha = alpha;
    row.refine_level = refine_level;

    // ||phi||_{alpha;delta0} on the field itself
    std::vector<double> ladder = delta0_ladder(cfg.delta0, 20);
    PairGeometry pg =
        sample_pair_geometry(phi.domain, phi.singular_points, ladder, cfg.pair_budget, cfg.seed);
    PairSet ps = evaluate_pairs(phi, pg);
    row.norm_phi = hlog_from_pairs(ps, alpha, cfg.delta0) + ps.sup_abs;

    // K*phi on origin-anchored shells plus a generic anchor
    const int n = phi.domain.dim;
    std::vector<Vec> dirs = {Vec::axis(n, 0), Vec::axis(n, 1)};
    {
        Vec diag = Vec::zero(n);
        for (int i = 0; i < n; ++i) diag[i] = 1.0;
        dirs.push_back(normalized(diag));
    }
    Vec anchor2 = Vec::zero(n);
    anchor2[0] = 0.11;
    anchor2[1] = 0.06;

    auto conv = [&](const Vec& x) {
        ++row.convolutions;
        return pv_convolve(k, phi, x, quad).value;
    };
    double base0 = conv(Vec::zero(n));
    double base2 = conv(anchor2);
    row.sup_K = std::max(std::fabs(base0), std::fabs(base2));
    for (int s = cfg.shell_lo; s <= cfg.shell_hi; ++s) {
        double delta = std::ldexp(1.0, -s);
        double w = hlog_weight(delta, alpha - 1.0);
        for (size_t di = 0; di < dirs.size(); ++di) {
            double v = conv(Vec::zero(n) + delta * dirs[di]);
            row.sup_K = std::max(row.sup_K, std::fabs(v));
            row.semi_K = std::max(row.semi_K, std::fabs(v - base0) * w);
            if (di == 0 && s <= cfg.shell_lo + 5) {
                double v2 = conv(anchor2 + delta * dirs[di]);
                row.sup_K = std::max(row.sup_K, std::fabs(v2));
                row.semi_K = std::max(row.semi_K, std::fabs(v2 - base2) * w);
            }
        }
    }
    row.norm_K = row.semi_K + row.sup_K;
    row.ratio = row.norm_K / row.norm_phi;
    return row;
}

struct KlgReport {
    std::vector<KlgRow> rows;
};

// Stability across refinement levels for fixed (kernel, field, alpha), and
// the alpha sweep on the matched forcing family.
inline KlgReport klg_experiment(const std::vector<std::string>& kernels,
                                const std::vector<std::string>& fields, double alpha,
                                const std::vector<int>& refine_levels,
                                const std::vector<double>& alpha_sweep, const KlgConfig& cfg = {}) {
    KlgReport rep;
    for (const std::string& kn : kernels) {
        SingularKernel k = singular_kernel(kn);
        for (const std::string& fn : fields) {
            ScalarField phi = corpus(fn);
            for (int lvl : refine_levels) rep.rows.push_back(klg_measure(k, phi, alpha, cfg, lvl));
        }
    }
    if (!alpha_sweep.empty()) {
        SingularKernel k = singular_kernel("harmonic-mixed");
        for (double a : alpha_sweep) {
            ScalarField phi = forcing_hlog_family(a);
            rep.rows.push_back(klg_measure(k, phi, a, cfg, 0));
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Interior estimate probe:
//   || grad^2 u ||_{alpha-1; R} <= C_theta(R) (|| L u ||_{alpha; 2R}
//                                              + C || u ||_{1, alpha; 2R}).
// All norms are sampled; C_theta(R) is the committed cutoff bound. The
// commutator N = L(zeta u) - zeta L u is assembled from the cutoff
// derivatives and audited against the product-rule hessian.
// ---------------------------------------------------------------------------

struct InteriorRow {
    double R = 0;
    double lhs = 0;                  // || grad^2 u ||_{alpha-1; R}
    double norm_Lu = 0;              // || L u ||_{alpha; 2R}
    double norm_u_1a = 0;            // || u ||_{1, alpha; 2R}
    double rhs = 0;
    double ratio = 0;                // lhs / rhs
    double c_theta = 0;              // committed bound C_theta(R)
    double zeta_norm = 0;            // sampled || zeta ||_{2, alpha; 2R}
    double norm_N = 0;               // || N ||_{alpha; 2R}
    double commutator_residual = 0;  // max |L(zeta u) - zeta L u - N|
    bool holds = false;
    bool zeta_bounded = false;       // zeta_norm <= c_theta
};

struct InteriorReport {
    double alpha = 0;
    std::string field;
    std::vector<InteriorRow> rows;
    double slope_bound = 0;     // d log C_theta(R) / d log R
    double slope_measured = 0;  // d log zeta_norm / d log R
};

namespace detail {

inline ScalarField restrict_to_ball(const ScalarField& f, double R) {
    ScalarField g = f;
    g.domain = DomainSpec::ball(f.domain.dim, R);
    return g;
}

// sup + H-log seminorm of a scalar field over a ball, shared pair geometry
struct SampledNorm {
    double sup = 0, semi = 0;
};

inline SampledNorm sampled_hlog_norm(const ScalarField& f, double alpha, double delta_cap,
                                     const PairGeometry& geom) {
    PairSet ps = evaluate_pairs(f, geom);
    return {ps.sup_abs, hlog_from_pairs(ps, alpha, delta_cap)};
}

inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

struct InteriorConfig {
    std::vector<double> R_values = {0.05, 0.1, 0.2};
    int budget = 96;
    int ladder_depth = 22;
    uint64_t seed = 1;
};

inline InteriorReport interior_estimate_experiment(const EllipticOperator& op,
                                                   const ScalarField& u, double alpha,
                                                   const InteriorConfig& cfg = {}) {
    if (alpha <= 1.0) throw param_error("interior_estimate_experiment: alpha must exceed 1");
    if (!u.has_hessian())
        throw precondition_error("interior_estimate_experiment: field lacks hessian");
    for (double R : cfg.R_values)
        if (!(R > 0 && 2.0 * R < 1.0))
            throw param_error("interior_estimate_experiment: need 0 < 2R < 1");
    InteriorReport rep;
    rep.alpha = alpha;
    rep.field = u.label;
    ScalarField Lu = apply_operator(op, u);

    std::vector<double> Rs = cfg.R_values;
    std::sort(Rs.begin(), Rs.end());
    std::vector<double> ctheta_list, zeta_list;
    for (double R : Rs) {
        InteriorRow row;
        row.R = R;
        const int n = u.domain.dim;
        DomainSpec ball_R = DomainSpec::ball(n, R);
        DomainSpec ball_2R = DomainSpec::ball(n, 2.0 * R);
        std::vector<double> lad_R, lad_2R;
        for (int j = 0; j < cfg.ladder_depth; ++j) {
            lad_R.push_back(2.0 * R * std::ldexp(1.0, -j - 1));
            lad_2R.push_back(4.0 * R * std::ldexp(1.0, -j - 1));
        }
        PairGeometry geom_R =
            sample_pair_geometry(ball_R, u.singular_points, lad_R, cfg.budget, cfg.seed);
        PairGeometry geom_2R =
            sample_pair_geometry(ball_2R, u.singular_points, lad_2R, cfg.budget, cfg.seed);

        // LHS: max over hessian components of sup + seminorm at alpha-1
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto nm = detail::sampled_hlog_norm(hessian_entry_field(u, i, j), alpha - 1.0,
                                                    1.0, geom_R);
                row.lhs = std::max(row.lhs, nm.sup + nm.semi);
            }
        {
            auto nm = detail::sampled_hlog_norm(Lu, alpha, 1.0, geom_2R);
            row.norm_Lu = nm.sup + nm.semi;
        }
        {
            auto n0 = detail::sampled_hlog_norm(u, alpha, 1.0, geom_2R);
            double sup_grad = 0, semi_grad = 0;
            for (int i = 0; i < n; ++i) {
                auto ng = detail::sampled_hlog_norm(gradient_entry_field(u, i), alpha, 1.0,
                                                    geom_2R);
                sup_grad = std::max(sup_grad, ng.sup);
                semi_grad = std::max(semi_grad, ng.semi);
            }
            row.norm_u_1a = n0.sup + sup_grad + semi_grad;
        }
        row.c_theta = cutoff_norm_bound(R, alpha);
        row.rhs = row.c_theta * (row.norm_Lu + row.norm_u_1a);
        row.ratio = row.rhs > 0 ? row.lhs / row.rhs : 0.0;
        row.holds = row.lhs <= row.rhs;

        // direct cutoff norm || zeta ||_{2,alpha;2R}
        ScalarField zeta = build_cutoff({R}, n);
        PairGeometry geom_z =
            sample_pair_geometry(ball_2R, zeta.singular_points, lad_2R, cfg.budget, cfg.seed);
        double sup2 = 0, semi2 = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto nz = detail::sampled_hlog_norm(hessian_entry_field(zeta, i, j), alpha, 1.0,
                                                    geom_z);
                sup2 = std::max(sup2, nz.sup);
                semi2 = std::max(semi2, nz.semi);
            }
        double sup1 = 0;
        for (int i = 0; i < n; ++i)
            sup1 = std::max(sup1,
                            detail::sampled_hlog_norm(gradient_entry_field(zeta, i), alpha, 1.0,
                                                      geom_z)
                                .sup);
        row.zeta_norm = 1.0 + sup1 + sup2 + semi2;  // sup zeta = 1
        row.zeta_bounded = row.zeta_norm <= row.c_theta;

        // commutator N = u L zeta + 2 sum a_ij d_i zeta d_j u, audited against
        // L(zeta u) - zeta L u from the assembled product hessian
        EllipticOperator opc = op;
        auto u_eval = u.evaluate;
        auto u_grad = u.gradient;
        auto z_eval = zeta.evaluate;
        auto z_grad = zeta.gradient;
        auto z_hess = zeta.hessian;
        ScalarField N;
        N.domain = ball_2R;
        N.label = "commutator";
        N.evaluate = [=](const Vec& x) {
            double cross = 0;
            Vec gu = u_grad(x), gz = z_grad(x);
            for (int i = 0; i < opc.dim; ++i)
                for (int j = 0; j < opc.dim; ++j) cross += opc.a(i, j) * gz[i] * gu[j];
            return u_eval(x) * opc.apply(z_hess(x)) + 2.0 * cross;
        };
        N.singular_points = u.singular_points;
        {
            auto nn = detail::sampled_hlog_norm(N, alpha, 1.0, geom_z);
            row.norm_N = nn.sup + nn.semi;
        }
        ScalarField phi = field_product(zeta, detail::restrict_to_ball(u, 2.0 * R));
        ScalarField Lphi = apply_operator(op, phi);
        double resid = 0;
        for (int t = 0; t < 24; ++t) {
            Vec x = ball_2R.interior_point(static_cast<uint64_t>(t));
            resid = std::max(resid,
                             std::fabs(Lphi(x) - z_eval(x) * opc.apply(u.hessian(x)) - N(x)));
        }
        row.commutator_residual = resid;

        ctheta_list.push_back(row.c_theta);
        zeta_list.push_back(row.zeta_norm);
        rep.rows.push_back(row);
    }
    rep.slope_bound = detail::loglog_slope(Rs, ctheta_list);
    rep.slope_measured = detail::loglog_slope(Rs, zeta_list);
    return rep;
}

}  // namespace hlog
