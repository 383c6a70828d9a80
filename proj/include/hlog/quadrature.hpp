#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "hlog/common.hpp"

namespace hlog {

inline constexpr double kPi = 3.14159265358979323846;

// Knobs of the singular-integral engine. `radial_nodes_per_decade` controls
// the density of the log-radial rule, `angular_order` the polynomial order of
// the sphere/circle rule, `r_floor` the inner truncation radius.
struct QuadConfig {
    int radial_nodes_per_decade = 128;
    int angular_order = 26;
    double r_floor = 1e-14;

    QuadConfig refine(int level) const {
        QuadConfig q = *this;
        for (int i = 0; i < level; ++i) {
            q.radial_nodes_per_decade *= 2;
            q.angular_order *= 2;
        }
        return q;
    }
};

// ---------------------------------------------------------------------------
// Gauss-Legendre panels
// ---------------------------------------------------------------------------

// Nodes/weights on [-1,1], computed once by Newton iteration on P_n. The
// cache is node-based so returned references stay valid across later calls.
inline const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    static thread_local std::map<int, std::vector<std::pair<double, double>>> cache;
    if (n < 1) throw param_error("gauss_legendre: order must be >= 1");
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> nw(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nw[static_cast<size_t>(n - 1 - i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return cache.emplace(n, std::move(nw)).first->second;
}

// ---------------------------------------------------------------------------
// Log-radial rule
//
// Integrals of the form  int_{r_lo}^{r_hi} g(r) dr / r  are evaluated after
// the substitution t = -log r as  int g(e^{-t}) dt, by composite Gauss-
// Legendre panels uniform in t. Node count per unit t follows the per-decade
// knob. The weights returned here absorb the substitution: sum w_i g(r_i)
// approximates the integral against dr/r.
// ---------------------------------------------------------------------------

struct RadialRule {
    std::vector<double> r;
    std::vector<double> w;
};

inline RadialRule log_radial_rule(double r_lo, double r_hi, int nodes_per_decade) {
    if (!(r_lo > 0 && r_lo < r_hi)) throw param_error("log_radial_rule: need 0 < r_lo < r_hi");
    if (nodes_per_decade < 1) throw param_error("log_radial_rule: nodes_per_decade >= 1");
    const int order = 8;
    double t_lo = -std::log(r_hi), t_hi = -std::log(r_lo);
    double panel_width = order * std::log(10.0) / nodes_per_decade;
    int n_pan = std::max(2, static_cast<int>(std::ceil((t_hi - t_lo) / panel_width)));
    const auto& gl = gauss_legendre(order);
    RadialRule rule;
    rule.r.reserve(static_cast<size_t>(n_pan * order));
    rule.w.reserve(static_cast<size_t>(n_pan * order));
    double h = (t_hi - t_lo) / n_pan;
    for (int p = 0; p < n_pan; ++p) {
        double c = t_lo + (p + 0.5) * h;
        for (const auto& [xi, wi] : gl) {
            double t = c + 0.5 * h * xi;
            rule.r.push_back(std::exp(-t));
            rule.w.push_back(0.5 * h * wi);
        }
    }
    return rule;
}

// Closed form of int_{r1}^{r2} (-log r)^{-alpha} dr / r  (0 < r1 < r2 < 1):
// the antiderivative is (alpha-1)^{-1} (-log r)^{1-alpha}, replaced by
// -log(-log r) at alpha = 1.
inline double radial_log_integral(double alpha, double r1, double r2) {
    if (!(r1 > 0 && r1 < 1 && r2 > 0 && r2 < 1))
        throw param_error("radial_log_integral: bounds must lie in (0,1)");
    if (r1 > r2) throw param_error("radial_log_integral: need r1 <= r2");
    if (r1 == r2) return 0.0;
    double t1 = -std::log(r1), t2 = -std::log(r2);  // t1 > t2
    if (std::fabs(alpha - 1.0) < 1e-14) return std::log(t1) - std::log(t2);
    return (std::pow(t2, 1.0 - alpha) - std::pow(t1, 1.0 - alpha)) / (alpha - 1.0);
}

// ---------------------------------------------------------------------------
// Angular rules
//
// n=2: midpoint rule on the circle (trapezoid-equivalent, spectral for smooth
//      periodic integrands). n=3: product of Gauss-Legendre in cos(theta)
//      and a uniform azimuthal grid. Weights sum to the sphere area.
// ---------------------------------------------------------------------------

struct AngularRule {
    std::vector<Vec> dirs;
    std::vector<double> w;
    double area = 0;
};

inline double sphere_area(int n) {
    // 2 pi^{n/2} / Gamma(n/2)
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

inline AngularRule angular_rule(int dim, int order) {
    if (order < 2) throw param_error("angular_rule: order must be >= 2");
    AngularRule rule;
    rule.area = sphere_area(dim);
    if (dim == 2) {
        int m = std::max(16, 2 * order + 12);
        rule.dirs.reserve(static_cast<size_t>(m));
        for (int k = 0; k < m; ++k) {
            double phi = 2.0 * kPi * (k + 0.5) / m;
            rule.dirs.push_back({std::cos(phi), std::sin(phi)});
            rule.w.push_back(2.0 * kPi / m);
        }
        return rule;
    }
    if (dim == 3) {
        int m = order / 2 + 1;
        int mphi = 2 * m + 2;
        const auto& gl = gauss_legendre(m);
        for (const auto& [ct, wt] : gl) {
            double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int k = 0; k < mphi; ++k) {
                double phi = 2.0 * kPi * (k + 0.5) / mphi;
                rule.dirs.push_back({st * std::cos(phi), st * std::sin(phi), ct});
                rule.w.push_back(wt * 2.0 * kPi / mphi);
            }
        }
        return rule;
    }
    throw dimension_error("angular_rule: only n = 2 and n = 3 are supported");
}

}  // namespace hlog
