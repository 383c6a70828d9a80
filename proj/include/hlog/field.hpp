#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hlog/common.hpp"
#include "hlog/domain.hpp"

namespace hlog {

// A scalar field on a simple domain. Fields are immutable after construction
// and safe to evaluate concurrently. Gradient and hessian are optional;
// operations that need them must check has_gradient()/has_hessian().
struct ScalarField {
    DomainSpec domain;
    std::string label;
    std::function<double(const Vec&)> evaluate;
    std::function<Vec(const Vec&)> gradient;   // may be empty
    std::function<Mat(const Vec&)> hessian;    // may be empty
    std::vector<Vec> singular_points;          // estimator anchor hints
    double support_radius = -1.0;              // >0: vanishes for |x| >= value

    bool has_gradient() const { return static_cast<bool>(gradient); }
    bool has_hessian() const { return static_cast<bool>(hessian); }
    bool compactly_supported() const { return support_radius > 0.0; }

    double operator()(const Vec& x) const { return evaluate(x); }
};

// ---------------------------------------------------------------------------
// Finite differences (centered, O(h^2)); the independent check for analytic
// derivatives.
// ---------------------------------------------------------------------------

inline Vec fd_gradient(const ScalarField& f, const Vec& x, double h) {
    Vec g = Vec::zero(x.n);
    for (int i = 0; i < x.n; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

inline Mat fd_hessian(const ScalarField& f, const Vec& x, double h) {
    Mat m = Mat::zero(x.n);
    double fx = f(x);
    for (int i = 0; i < x.n; ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        m(i, i) = (f(xp) - 2.0 * fx + f(xm)) / (h * h);
    }
    for (int i = 0; i < x.n; ++i)
        for (int j = i + 1; j < x.n; ++j) {
            Vec xpp = x, xpm = x, xmp = x, xmm = x;
            xpp[i] += h; xpp[j] += h;
            xpm[i] += h; xpm[j] -= h;
            xmp[i] -= h; xmp[j] += h;
            xmm[i] -= h; xmm[j] -= h;
            double v = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h * h);
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

// ---------------------------------------------------------------------------
// Derived fields
// ---------------------------------------------------------------------------

inline ScalarField hessian_entry_field(const ScalarField& f, int i, int j) {
    if (!f.has_hessian()) throw precondition_error("hessian_entry_field: field lacks hessian");
    ScalarField g;
    g.domain = f.domain;
    g.label = f.label + ".d2_" + std::to_string(i) + std::to_string(j);
    auto hess = f.hessian;
    g.evaluate = [hess, i, j](const Vec& x) { return hess(x)(i, j); };
    g.singular_points = f.singular_points;
    g.support_radius = f.support_radius;
    return g;
}

inline ScalarField gradient_entry_field(const ScalarField& f, int i) {
    if (!f.has_gradient()) throw precondition_error("gradient_entry_field: field lacks gradient");
    ScalarField g;
    g.domain = f.domain;
    g.label = f.label + ".d_" + std::to_string(i);
    auto grad = f.gradient;
    g.evaluate = [grad, i](const Vec& x) { return grad(x)[i]; };
    g.singular_points = f.singular_points;
    g.support_radius = f.support_radius;
    return g;
}

inline ScalarField field_scale(const ScalarField& f, double s) {
    ScalarField g = f;
    g.label = f.label + "*" + fmt_g(s);
    auto ev = f.evaluate;
    g.evaluate = [ev, s](const Vec& x) { return s * ev(x); };
    if (f.has_gradient()) {
        auto gr = f.gradient;
        g.gradient = [gr, s](const Vec& x) { return s * gr(x); };
    }
    if (f.has_hessian()) {
        auto he = f.hessian;
        g.hessian = [he, s](const Vec& x) {
            Mat m = he(x);
            for (int i = 0; i < m.n; ++i)
                for (int j = 0; j < m.n; ++j) m(i, j) *= s;
            return m;
        };
    }
    return g;
}

inline ScalarField field_sum(const ScalarField& f, const ScalarField& g) {
    ScalarField r;
    r.domain = f.domain;
    r.label = f.label + "+" + g.label;
    auto ef = f.evaluate, eg = g.evaluate;
    r.evaluate = [ef, eg](const Vec& x) { return ef(x) + eg(x); };
    if (f.has_gradient() && g.has_gradient()) {
        auto gf = f.gradient, gg = g.gradient;
        r.gradient = [gf, gg](const Vec& x) { return gf(x) + gg(x); };
    }
    if (f.has_hessian() && g.has_hessian()) {
        auto hf = f.hessian, hg = g.hessian;
        r.hessian = [hf, hg](const Vec& x) {
            Mat a = hf(x), b = hg(x);
            for (int i = 0; i < a.n; ++i)
                for (int j = 0; j < a.n; ++j) a(i, j) += b(i, j);
            return a;
        };
    }
    r.singular_points = f.singular_points;
    for (const Vec& p : g.singular_points) r.singular_points.push_back(p);
    double sf = f.support_radius, sg = g.support_radius;
    if (sf > 0 && sg > 0) r.support_radius = std::max(sf, sg);
    return r;
}

// Product with full derivative assembly (Leibniz); both factors need the
// requested derivative order.
inline ScalarField field_product(const ScalarField& f, const ScalarField& g) {
    ScalarField r;
    r.domain = f.domain;
    r.label = f.label + "*" + g.label;
    auto ef = f.evaluate, eg = g.evaluate;
    r.evaluate = [ef, eg](const Vec& x) { return ef(x) * eg(x); };
    if (f.has_gradient() && g.has_gradient()) {
        auto gf = f.gradient, gg = g.gradient;
        r.gradient = [ef, eg, gf, gg](const Vec& x) {
            return eg(x) * gf(x) + ef(x) * gg(x);
        };
        if (f.has_hessian() && g.has_hessian()) {
            auto hf = f.hessian, hg = g.hessian;
            r.hessian = [ef, eg, gf, gg, hf, hg](const Vec& x) {
                double fv = ef(x), gv = eg(x);
                Vec fg = gf(x), gg2 = gg(x);
                Mat a = hf(x), b = hg(x);
                Mat m = Mat::zero(x.n);
                for (int i = 0; i < x.n; ++i)
                    for (int j = 0; j < x.n; ++j)
                        m(i, j) = gv * a(i, j) + fv * b(i, j) + fg[i] * gg2[j] + fg[j] * gg2[i];
                return m;
            };
        }
    }
    r.singular_points = f.singular_points;
    for (const Vec& p : g.singular_points) r.singular_points.push_back(p);
    double sf = f.support_radius, sg = g.support_radius;
    if (sf > 0 || sg > 0)
        r.support_radius = (sf > 0 && sg > 0) ? std::min(sf, sg) : std::max(sf, sg);
    return r;
}

}  // namespace hlog
