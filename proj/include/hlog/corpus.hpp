#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hlog/common.hpp"
#include "hlog/field.hpp"

namespace hlog {

// ---------------------------------------------------------------------------
// Committed transition profile
//
// h(u) = g(u)/(g(u)+g(1-u)) with g(t) = exp(-1/t); the standard C-infinity
// step 0 -> 1 on [0,1], with first and second derivatives in closed form.
// ---------------------------------------------------------------------------

struct SmoothStep {
    double value = 0, d1 = 0, d2 = 0;

    static SmoothStep at(double u) {
        SmoothStep s;
        if (u <= 1e-8) return s;
        if (u >= 1.0 - 1e-8) {
            s.value = 1.0;
            return s;
        }
        double w = 1.0 - u;
        double A = std::exp(-1.0 / u), B = std::exp(-1.0 / w);
        double Ap = A / (u * u);              // dA/du
        double Bp = -B / (w * w);             // dB/du
        double App = A * (1.0 / (u * u * u * u) - 2.0 / (u * u * u));
        double Bpp = B * (1.0 / (w * w * w * w) - 2.0 / (w * w * w));
        double D = A + B;
        double N1 = Ap * B - A * Bp;          // always >= 0
        s.value = A / D;
        s.d1 = N1 / (D * D);
        double N1p = App * B - A * Bpp;
        double Dp = Ap + Bp;
        s.d2 = (N1p * D - 2.0 * N1 * Dp) / (D * D * D);
        return s;
    }
};

// theta(t): 1 on [0,1/3], 0 on [2/3,1], h(2-3t) in between. Norm constants
// below were frozen from a dense scan of the closed-form derivatives
// (sup|h'|=2, sup|h''|=9.842, sup|h'''|=110.57) and rounded up.
struct ThetaProfile {
    static constexpr double sup_value = 1.0;
    static constexpr double sup_d1 = 6.0;
    static constexpr double sup_d2 = 88.6;
    static constexpr double lip_d2 = 2990.0;  // = sup|theta'''|

    static SmoothStep at(double t) {
        SmoothStep s;
        if (t <= 1.0 / 3.0) {
            s.value = 1.0;
            return s;
        }
        if (t >= 2.0 / 3.0) return s;
        SmoothStep h = SmoothStep::at(2.0 - 3.0 * t);
        s.value = h.value;
        s.d1 = -3.0 * h.d1;
        s.d2 = 9.0 * h.d2;
        return s;
    }

    static double value(double t) { return at(t).value; }

    // Surrogate Hoelder-2 norm used in cutoff bounds. For lambda <= 1 this is
    // the interpolated [theta'']_{H(lambda)}; for lambda > 1 it is the
    // constant that closes the chain through the saturation scale
    // delta* = 2 c2 / c3 (see cutoff_norm_bound). Components use the n-d
    // chain-rule bounds c2 = sup|th''|+2sup|th'|, c3 = sup|th'''|+3sup|th''|+3sup|th'|.
    static double hnorm2(double lambda) {
        double c2 = sup_d2 + 2.0 * sup_d1;
        double c3 = lip_d2 + 3.0 * sup_d2 + 3.0 * sup_d1;
        double k;
        if (lambda <= 1.0)
            k = std::pow(c3, lambda) * std::pow(2.0 * c2, 1.0 - lambda);
        else
            k = 2.0 * c2 * std::pow(c3 / (2.0 * c2), lambda);
        return sup_value + sup_d1 + c2 + k;
    }
};

// C_theta(R): committed bound for || zeta ||_{2,alpha; 2R}.
inline double cutoff_norm_bound(double R, double alpha) {
    if (R <= 0 || 2.0 * R >= 1.0) throw param_error("cutoff_norm_bound: need 0 < 2R < 1");
    double c = ThetaProfile::hnorm2(alpha);
    return c * (1.0 + 1.0 / R + 1.0 / (R * R) + std::pow(R, -(2.0 + alpha)));
}

// ---------------------------------------------------------------------------
// Cutoff field
// ---------------------------------------------------------------------------

struct CutoffSpec {
    double R = 0.2;  // zeta = 1 on |x| <= R, 0 on |x| >= 2R; requires 2R < 1
};

inline ScalarField build_cutoff(const CutoffSpec& spec, int n) {
    double R = spec.R;
    if (!(R > 0 && 2.0 * R < 1.0)) throw param_error("build_cutoff: R must satisfy 0 < 2R < 1");
    ScalarField f;
    f.domain = DomainSpec::ball(n, 2.0 * R);
    f.label = "cutoff-R" + fmt_g(R);
    f.support_radius = 2.0 * R;
    f.evaluate = [R](const Vec& x) {
        double s = norm(x);
        if (s <= R) return 1.0;
        if (s >= 2.0 * R) return 0.0;
        return ThetaProfile::value((s - R) / R);
    };
    f.gradient = [R](const Vec& x) {
        double s = norm(x);
        Vec g = Vec::zero(x.n);
        if (s <= R || s >= 2.0 * R) return g;
        SmoothStep th = ThetaProfile::at((s - R) / R);
        double c = th.d1 / (R * s);
        for (int i = 0; i < x.n; ++i) g[i] = c * x[i];
        return g;
    };
    f.hessian = [R](const Vec& x) {
        double s = norm(x);
        Mat m = Mat::zero(x.n);
        if (s <= R || s >= 2.0 * R) return m;
        SmoothStep th = ThetaProfile::at((s - R) / R);
        double a = th.d2 / (R * R * s * s);
        double b = th.d1 / (R * s);
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) {
                m(i, j) = a * x[i] * x[j] - b * x[i] * x[j] / (s * s);
                if (i == j) m(i, j) += b;
            }
        return m;
    };
    // anchor hints: the transition band carries all the variation
    for (double rr : {R, 1.5 * R, 2.0 * R}) f.singular_points.push_back(Vec::axis(n, 0, rr));
    return f;
}

// ---------------------------------------------------------------------------
// Counterexample field  u(x) = (-log|x|)^{-alpha} * q(x),
// q(x) = sum_{i != j} x_i x_j = (sum x_i)^2 - |x|^2.
// Value and all derivatives extend continuously by 0 at the origin.
// ---------------------------------------------------------------------------

inline ScalarField counterexample_field(double alpha, int n) {
    if (alpha <= 0) throw param_error("counterexample_field: alpha must be positive");
    if (n < 2) throw param_error("counterexample_field: need n >= 2");
    ScalarField f;
    f.domain = DomainSpec::ball(n, 0.9);
    f.label = "counterexample-a" + fmt_g(alpha) + "-n" + std::to_string(n);
    f.singular_points.push_back(Vec::zero(n));
    const double a = alpha;
    f.evaluate = [a](const Vec& x) {
        double s = norm(x);
        if (s < 1e-300) return 0.0;
        double T = 0;
        for (int i = 0; i < x.n; ++i) T += x[i];
        double q = T * T - s * s;
        return std::pow(-std::log(s), -a) * q;
    };
    f.gradient = [a](const Vec& x) {
        Vec g = Vec::zero(x.n);
        double s = norm(x);
        if (s < 1e-300) return g;
        double L = -std::log(s);
        double T = 0;
        for (int i = 0; i < x.n; ++i) T += x[i];
        double q = T * T - s * s;
        double La = std::pow(L, -a), La1 = std::pow(L, -a - 1.0);
        for (int i = 0; i < x.n; ++i)
            g[i] = a * La1 * x[i] * q / (s * s) + La * 2.0 * (T - x[i]);
        return g;
    };
    f.hessian = [a](const Vec& x) {
        Mat m = Mat::zero(x.n);
        double s = norm(x);
        if (s < 1e-300) return m;
        double L = -std::log(s);
        double T = 0;
        for (int i = 0; i < x.n; ++i) T += x[i];
        double q = T * T - s * s;
        double s2 = s * s, s4 = s2 * s2;
        double La = std::pow(L, -a), La1 = std::pow(L, -a - 1.0), La2 = std::pow(L, -a - 2.0);
        for (int i = 0; i < x.n; ++i) {
            double qi = 2.0 * (T - x[i]);
            for (int j = i; j < x.n; ++j) {
                double qj = 2.0 * (T - x[j]);
                double v = a * (a + 1.0) * La2 * x[i] * x[j] * q / s4 +
                           a * La1 * ((i == j ? q / s2 : 0.0) + (x[i] * qj + x[j] * qi) / s2 -
                                      2.0 * x[i] * x[j] * q / s4) +
                           (i == j ? 0.0 : 2.0 * La);
                m(i, j) = v;
                m(j, i) = v;
            }
        }
        return m;
    };
    return f;
}

// ---------------------------------------------------------------------------
// Test corpus
// ---------------------------------------------------------------------------

namespace detail {

inline ScalarField radial_bump(int n, double Rb, const std::string& label) {
    ScalarField f;
    f.domain = DomainSpec::unit_ball(n);
    f.label = label;
    f.support_radius = Rb;
    auto parts = [Rb](const Vec& x, double& b, double& bv, double& bvv) {
        double v = dot(x, x) / (Rb * Rb);
        double w = 1.0 - v;
        if (w <= 1e-8) {
            b = bv = bvv = 0.0;
            return;
        }
        b = std::exp(1.0 - 1.0 / w);
        bv = -b / (w * w);
        bvv = b * (1.0 - 2.0 * w) / (w * w * w * w);
    };
    f.evaluate = [parts](const Vec& x) {
        double b, bv, bvv;
        parts(x, b, bv, bvv);
        return b;
    };
    f.gradient = [parts, Rb](const Vec& x) {
        double b, bv, bvv;
        parts(x, b, bv, bvv);
        Vec g = Vec::zero(x.n);
        for (int i = 0; i < x.n; ++i) g[i] = bv * 2.0 * x[i] / (Rb * Rb);
        return g;
    };
    f.hessian = [parts, Rb](const Vec& x) {
        double b, bv, bvv;
        parts(x, b, bv, bvv);
        double R2 = Rb * Rb;
        Mat m = Mat::zero(x.n);
        for (int i = 0; i < x.n; ++i)
            for (int j = 0; j < x.n; ++j) {
                m(i, j) = bvv * 4.0 * x[i] * x[j] / (R2 * R2);
                if (i == j) m(i, j) += bv * 2.0 / R2;
            }
        return m;
    };
    return f;
}

// (-log|x|)^{-alpha} on the ball of radius 1/2, 0 at the origin.
inline ScalarField hlog_radial(int n, double alpha) {
    ScalarField f;
    f.domain = DomainSpec::ball(n, 0.5);
    f.label = "hlog-alpha-" + fmt_g(alpha);
    f.singular_points.push_back(Vec::zero(n));
    f.evaluate = [alpha](const Vec& x) {
        double s = norm(x);
        if (s < 1e-300) return 0.0;
        return std::pow(-std::log(s), -alpha);
    };
    return f;
}

// q-harmonic H-log field with cutoff: the angular structure of the
// counterexample forcing. Compactly supported, valid convolution input.
inline ScalarField forcing_hlog(int n, double alpha, double Rc) {
    ScalarField f;
    f.domain = DomainSpec::ball(n, 0.5);
    f.label = "forcing-hlog-" + fmt_g(alpha);
    f.support_radius = 2.0 * Rc;
    f.singular_points.push_back(Vec::zero(n));
    f.evaluate = [alpha, Rc](const Vec& x) {
        double s = norm(x);
        if (s < 1e-300 || s >= 2.0 * Rc) return 0.0;
        double cut = s <= Rc ? 1.0 : ThetaProfile::value((s - Rc) / Rc);
        double T = 0;
        for (int i = 0; i < x.n; ++i) T += x[i];
        double q = (T * T - s * s) / (s * s);  // degree-0 homogeneous
        return std::pow(-std::log(s), -alpha) * q * cut;
    };
    return f;
}

}  // namespace detail

struct CorpusModulusInfo {
    std::function<double(double)> omega;  // exact value or documented lower bound
    bool exact = false;
    std::string note;
};

inline ScalarField corpus(const std::string& name);

inline std::vector<std::string> corpus_names() {
    return {"const-5",      "linear-x1", "abs-x",        "holder-05",   "hlog-alpha-1",
            "hlog-alpha-2", "hlog-alpha-3", "bump",      "quadratic",   "forcing-hlog-2",
            "hlog-2-bump",  "counterexample-1", "bump-3d"};
}

// Names of corpus entries defined on the closed unit ball (extension inputs).
inline std::vector<std::string> corpus_unit_ball_names() {
    return {"const-5", "linear-x1", "abs-x", "holder-05", "bump", "quadratic"};
}

// Exact modulus of continuity (or documented lower bound) where known.
inline std::optional<CorpusModulusInfo> corpus_modulus_info(const std::string& name) {
    if (name == "const-5")
        return CorpusModulusInfo{[](double) { return 0.0; }, true, "constant field"};
    if (name == "linear-x1")
        return CorpusModulusInfo{[](double r) { return std::min(r, 2.0); }, true,
                                 "unit-gradient linear field, aligned pairs"};
    if (name == "abs-x")
        return CorpusModulusInfo{[](double r) { return std::min(r, 1.0); }, true,
                                 "1-Lipschitz, attained on radial pairs through 0"};
    if (name == "holder-05")
        return CorpusModulusInfo{[](double r) { return std::sqrt(std::min(r, 1.0)); }, true,
                                 "concave radial profile, attained at the origin"};
    if (name == "hlog-alpha-1" || name == "hlog-alpha-2" || name == "hlog-alpha-3") {
        double alpha = name.back() - '0';
        auto prof = [alpha](double s) {
            return s < 1e-300 ? 0.0 : std::pow(-std::log(s), -alpha);
        };
        return CorpusModulusInfo{
            [prof](double r) {
                // radial monotone profile: sup difference is anchored either at
                // the origin or against the outer boundary s = 1/2
                double rr = std::min(r, 0.5);
                return std::max(prof(rr), prof(0.5) - prof(0.5 - rr));
            },
            true, "two-branch closed form (origin / boundary anchored)"};
    }
    if (name == "forcing-hlog-2")
        return CorpusModulusInfo{
            [](double r) {
                double rr = std::min(r, 0.2);
                return rr < 1e-300 ? 0.0 : std::pow(-std::log(rr), -2.0);
            },
            false, "lower bound from the diagonal origin-anchored pair"};
    return std::nullopt;
}

inline ScalarField corpus(const std::string& name) {
    if (name == "const-5") {
        ScalarField f;
        f.domain = DomainSpec::unit_ball(2);
        f.label = name;
        f.evaluate = [](const Vec&) { return 5.0; };
        f.gradient = [](const Vec& x) { return Vec::zero(x.n); };
        f.hessian = [](const Vec& x) { return Mat::zero(x.n); };
        return f;
    }
    if (name == "linear-x1") {
        ScalarField f;
        f.domain = DomainSpec::unit_ball(2);
        f.label = name;
        f.evaluate = [](const Vec& x) { return x[0]; };
        f.gradient = [](const Vec& x) { return Vec::axis(x.n, 0); };
        f.hessian = [](const Vec& x) { return Mat::zero(x.n); };
        return f;
    }
    if (name == "abs-x") {
        ScalarField f;
        f.domain = DomainSpec::unit_ball(2);
        f.label = name;
        f.singular_points.push_back(Vec::zero(2));
        f.evaluate = [](const Vec& x) { return norm(x); };
        f.gradient = [](const Vec& x) {
            double s = norm(x);
            if (s < 1e-300) return Vec::zero(x.n);
            return (1.0 / s) * x;
        };
        return f;
    }
    if (name == "holder-05") {
        ScalarField f;
        f.domain = DomainSpec::unit_ball(2);
        f.label = name;
        f.singular_points.push_back(Vec::zero(2));
        f.evaluate = [](const Vec& x) { return std::sqrt(norm(x)); };
        return f;
    }
    if (name == "hlog-alpha-1") return detail::hlog_radial(2, 1.0);
    if (name == "hlog-alpha-2") return detail::hlog_radial(2, 2.0);
    if (name == "hlog-alpha-3") return detail::hlog_radial(2, 3.0);
    if (name == "bump") return detail::radial_bump(2, 0.5, name);
    if (name == "bump-3d") return detail::radial_bump(3, 0.5, name);
    if (name == "quadratic") {
        ScalarField f;
        f.domain = DomainSpec::unit_ball(2);
        f.label = name;
        f.evaluate = [](const Vec& x) { return 0.5 * x[0] * x[0] + x[0] * x[1]; };
        f.gradient = [](const Vec& x) {
            Vec g = Vec::zero(x.n);
            g[0] = x[0] + x[1];
            g[1] = x[0];
            return g;
        };
        f.hessian = [](const Vec& x) {
            Mat m = Mat::zero(x.n);
            m(0, 0) = 1.0;
            m(0, 1) = m(1, 0) = 1.0;
            return m;
        };
        return f;
    }
    if (name == "forcing-hlog-2") return detail::forcing_hlog(2, 2.0, 0.2);
    if (name == "hlog-2-bump") {
        // radial H-log profile times cutoff; compactly supported
        ScalarField f;
        f.domain = DomainSpec::ball(2, 0.5);
        f.label = name;
        f.support_radius = 0.4;
        f.singular_points.push_back(Vec::zero(2));
        f.evaluate = [](const Vec& x) {
            double s = norm(x);
            if (s < 1e-300 || s >= 0.4) return 0.0;
            double cut = s <= 0.2 ? 1.0 : ThetaProfile::value((s - 0.2) / 0.2);
            return std::pow(-std::log(s), -2.0) * cut;
        };
        return f;
    }
    if (name == "counterexample-1") return counterexample_field(1.0, 2);
    throw lookup_error("corpus: unknown field name '" + name + "'");
}

// Parameterized family used by operator-norm sweeps.
inline ScalarField forcing_hlog_family(double alpha, int n = 2) {
    if (alpha <= 0) throw param_error("forcing_hlog_family: alpha must be positive");
    return detail::forcing_hlog(n, alpha, 0.2);
}

}  // namespace hlog
