#pragma once

#include <vector>

#include "hlog/common.hpp"

namespace hlog {

enum class DomainKind { UnitBall, Ball, Box, Annulus };

inline const char* to_string(DomainKind k) {
    switch (k) {
        case DomainKind::UnitBall: return "unit-ball";
        case DomainKind::Ball: return "ball";
        case DomainKind::Box: return "box";
        case DomainKind::Annulus: return "annulus";
    }
    return "?";
}

// Closed domain in R^n. Balls and boxes are centered at the origin; `radius`
// is the outer radius (box half-width), `inner` the annulus inner radius.
struct DomainSpec {
    DomainKind kind = DomainKind::UnitBall;
    int dim = 2;
    double radius = 1.0;
    double inner = 0.0;

    static DomainSpec unit_ball(int n) { return make(DomainKind::UnitBall, n, 1.0, 0.0); }
    static DomainSpec ball(int n, double R) { return make(DomainKind::Ball, n, R, 0.0); }
    static DomainSpec box(int n, double half_width) {
        return make(DomainKind::Box, n, half_width, 0.0);
    }
    static DomainSpec annulus(int n, double r_in, double r_out) {
        return make(DomainKind::Annulus, n, r_out, r_in);
    }

    bool contains(const Vec& x) const {
        constexpr double eps = 1e-12;
        switch (kind) {
            case DomainKind::UnitBall:
            case DomainKind::Ball:
                return norm(x) <= radius * (1.0 + eps);
            case DomainKind::Box: {
                for (int i = 0; i < dim; ++i)
                    if (std::fabs(x[i]) > radius * (1.0 + eps)) return false;
                return true;
            }
            case DomainKind::Annulus: {
                double s = norm(x);
                return s >= inner * (1.0 - eps) && s <= radius * (1.0 + eps);
            }
        }
        return false;
    }

    double diameter() const {
        if (kind == DomainKind::Box) return 2.0 * radius * std::sqrt(static_cast<double>(dim));
        return 2.0 * radius;
    }

    Vec center() const {
        Vec c = Vec::zero(dim);
        if (kind == DomainKind::Annulus) c[0] = 0.5 * (inner + radius);
        return c;
    }

    // Deterministic interior sample points (Halton, rejection for balls).
    Vec interior_point(uint64_t index) const {
        for (uint64_t k = 0;; ++k) {
            Vec u = halton(1 + index * 7 + k, dim);
            Vec x = Vec::zero(dim);
            for (int i = 0; i < dim; ++i) x[i] = (2.0 * u[i] - 1.0) * radius;
            if (kind == DomainKind::Box) return x;
            double s = norm(x);
            if (s <= radius && (kind != DomainKind::Annulus || s >= inner)) return x;
        }
    }

    // Points on (or at) the outer boundary along the coordinate axes. The
    // extremal pairs of monotone radial fields sit against the boundary, so
    // estimators seed anchors here.
    std::vector<Vec> boundary_anchors() const {
        std::vector<Vec> pts;
        for (int i = 0; i < dim; ++i) {
            pts.push_back(Vec::axis(dim, i, radius));
            pts.push_back(Vec::axis(dim, i, -radius));
        }
        if (kind == DomainKind::Annulus)
            for (int i = 0; i < dim; ++i) pts.push_back(Vec::axis(dim, i, inner));
        return pts;
    }

  private:
    static DomainSpec make(DomainKind k, int n, double R, double r_in) {
        if (n < 2 || n > kMaxDim) throw param_error("DomainSpec: dimension must be in [2, 6]");
        if (R <= 0) throw param_error("DomainSpec: radius must be positive");
        if (k == DomainKind::Annulus && (r_in <= 0 || r_in >= R))
            throw param_error("DomainSpec: annulus requires 0 < inner < outer");
        DomainSpec d;
        d.kind = k;
        d.dim = n;
        d.radius = R;
        d.inner = r_in;
        return d;
    }
};

}  // namespace hlog
