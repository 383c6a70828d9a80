#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "hlog/common.hpp"
#include "hlog/field.hpp"

namespace hlog {

// ---------------------------------------------------------------------------
// Radius ladders (decreasing)
// ---------------------------------------------------------------------------

inline std::vector<double> dyadic_ladder(int k_min = 1, int k_max = 52) {
    if (k_min < 1 || k_max < k_min) throw param_error("dyadic_ladder: bad range");
    std::vector<double> r;
    for (int k = k_min; k <= k_max; ++k) r.push_back(std::ldexp(1.0, -k));
    return r;
}

inline std::vector<double> geometric_ladder(double r_hi, double r_lo, int per_decade) {
    if (!(r_lo > 0 && r_lo < r_hi)) throw param_error("geometric_ladder: need 0 < r_lo < r_hi");
    std::vector<double> r;
    double step = std::pow(10.0, -1.0 / per_decade);
    for (double x = r_hi; x >= r_lo * (1.0 - 1e-12); x *= step) r.push_back(x);
    return r;
}

// Geometric ladder hanging from delta0: {delta0 * 2^-j}. Restricted-seminorm
// estimates built on these ladders have a floor that scales with delta0,
// which is what divergence probes need.
inline std::vector<double> delta0_ladder(double delta0, int depth) {
    if (!(delta0 > 0 && delta0 < 1)) throw param_error("delta0_ladder: delta0 in (0,1)");
    std::vector<double> r;
    for (int j = 0; j < depth; ++j) r.push_back(delta0 * std::ldexp(1.0, -j));
    return r;
}

inline void check_ladder(const std::vector<double>& ladder) {
    if (ladder.empty()) throw param_error("ladder must not be empty");
    for (double r : ladder)
        if (!(r > 0 && r < 1)) throw param_error("ladder values must lie in (0,1)");
}

// ---------------------------------------------------------------------------
// Pair sampling
//
// Pairs are drawn at exact distance r for every ladder radius r. Anchors
// enumerate, in order: domain center, the field's singular points, the
// domain's boundary axis points, then Halton interior points. Directions per
// anchor are the coordinate axes first, then seeded random unit vectors. The
// enumeration is a fixed infinite sequence cut at `budget`, so a larger
// budget reproduces every sample of a smaller one (estimates can only grow).
// ---------------------------------------------------------------------------

struct GeomPair {
    Vec x, y;
    double d;
};

struct PairGeometry {
    std::vector<GeomPair> pairs;
    std::vector<Vec> points;  // anchor points used (for sup-norm sampling)
};

inline PairGeometry sample_pair_geometry(const DomainSpec& domain,
                                         const std::vector<Vec>& anchor_hints,
                                         const std::vector<double>& ladder, int budget,
                                         uint64_t seed) {
    check_ladder(ladder);
    if (budget < 1) throw param_error("sample_pair_geometry: budget >= 1");
    const int n = domain.dim;
    std::vector<Vec> fixed;
    fixed.push_back(domain.center());
    for (const Vec& p : anchor_hints)
        if (p.n == n && domain.contains(p)) fixed.push_back(p);
    for (const Vec& p : domain.boundary_anchors()) fixed.push_back(p);

    const int dirs_per_anchor = 2 * n + 4;
    PairGeometry geom;
    geom.points = fixed;
    for (size_t k = 0; k < ladder.size(); ++k) {
        double r = ladder[k];
        for (int item = 0; item < budget; ++item) {
            int a = item / dirs_per_anchor;
            int j = item % dirs_per_anchor;
            Vec x = (static_cast<size_t>(a) < fixed.size())
                        ? fixed[static_cast<size_t>(a)]
                        : domain.interior_point(static_cast<uint64_t>(a) - fixed.size());
            Vec dir;
            if (j < 2 * n) {
                dir = Vec::axis(n, j / 2, j % 2 == 0 ? 1.0 : -1.0);
            } else {
                SplitMix64 g(derive_seed(seed, k, static_cast<uint64_t>(a),
                                         static_cast<uint64_t>(j)));
                dir = random_unit_vector(g, n);
            }
            Vec y = x + r * dir;
            if (!domain.contains(y)) {
                y = x - r * dir;
                if (!domain.contains(y)) continue;
            }
            geom.pairs.push_back({x, y, r});
        }
    }
    return geom;
}

// Pair geometry with one endpoint pinned to `anchor`; used by origin-anchored
// modulus ladders, where the extremal pairs for log-type moduli live.
inline PairGeometry anchored_pair_geometry(const DomainSpec& domain, const Vec& anchor,
                                           const std::vector<double>& ladder, int n_random_dirs,
                                           uint64_t seed) {
    check_ladder(ladder);
    const int n = domain.dim;
    std::vector<Vec> dirs;
    for (int i = 0; i < n; ++i) {
        dirs.push_back(Vec::axis(n, i, 1.0));
        dirs.push_back(Vec::axis(n, i, -1.0));
    }
    // diagonals, where cross terms peak
    if (n == 2) {
        double s = std::sqrt(0.5);
        dirs.push_back({s, s});
        dirs.push_back({s, -s});
        dirs.push_back({-s, s});
        dirs.push_back({-s, -s});
    } else if (n == 3) {
        double s = std::sqrt(1.0 / 3.0);
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1}) dirs.push_back({sx * s, sy * s, sz * s});
    }
    PairGeometry geom;
    geom.points.push_back(anchor);
    for (size_t k = 0; k < ladder.size(); ++k) {
        double r = ladder[k];
        SplitMix64 g(derive_seed(seed, k, 0x616e63));
        std::vector<Vec> all = dirs;
        for (int j = 0; j < n_random_dirs; ++j) all.push_back(random_unit_vector(g, n));
        for (const Vec& d : all) {
            Vec y = anchor + r * d;
            if (domain.contains(y)) geom.pairs.push_back({anchor, y, r});
        }
    }
    return geom;
}

// ---------------------------------------------------------------------------
// Evaluated pairs and the modulus table
// ---------------------------------------------------------------------------

struct EvalPair {
    double d;        // pair distance
    double absdiff;  // |f(x) - f(y)|
};

struct PairSet {
    std::vector<EvalPair> pairs;  // sorted by distance
    double sup_abs = 0.0;         // max |f| over all sampled points
};

inline PairSet evaluate_pairs(const ScalarField& f, const PairGeometry& geom) {
    PairSet ps;
    ps.pairs.reserve(geom.pairs.size());
    for (const GeomPair& gp : geom.pairs) {
        double fx = f(gp.x), fy = f(gp.y);
        ps.pairs.push_back({gp.d, std::fabs(fx - fy)});
        ps.sup_abs = std::max({ps.sup_abs, std::fabs(fx), std::fabs(fy)});
    }
    for (const Vec& p : geom.points) ps.sup_abs = std::max(ps.sup_abs, std::fabs(f(p)));
    std::sort(ps.pairs.begin(), ps.pairs.end(),
              [](const EvalPair& a, const EvalPair& b) { return a.d < b.d; });
    return ps;
}

struct EstimatorMeta {
    int budget = 0;
    uint64_t seed = 0;
    std::string field_label;
};

// Tabulated lower-bound estimate of omega_f on a decreasing radius ladder.
// Values are nondecreasing in r by a running cumulative max.
struct Modulus {
    std::vector<double> radii;   // decreasing
    std::vector<double> values;  // values[k] = estimate of omega(radii[k])
    EstimatorMeta meta;

    double smallest_radius() const { return radii.back(); }
    double largest_radius() const { return radii.front(); }

    // Lower-bound read-out: value at the largest tabulated radius <= r.
    double value_at(double r) const {
        if (radii.empty()) throw coverage_error("Modulus: empty table");
        if (r < radii.back() * (1.0 - 1e-12))
            throw coverage_error("Modulus: radius below table floor");
        for (size_t k = 0; k < radii.size(); ++k)
            if (radii[k] <= r * (1.0 + 1e-12)) return values[k];
        return values.back();
    }
};

inline Modulus modulus_from_pairs(const PairSet& ps, const std::vector<double>& ladder) {
    check_ladder(ladder);
    std::vector<double> radii = ladder;
    std::sort(radii.begin(), radii.end(), std::greater<double>());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    Modulus m;
    m.radii = radii;
    m.values.assign(radii.size(), 0.0);
    // prefix max of |diff| over pairs sorted by ascending distance
    size_t idx = 0;
    double running = 0.0;
    std::vector<double> asc(radii.rbegin(), radii.rend());
    std::vector<double> vals_asc(asc.size(), 0.0);
    for (size_t k = 0; k < asc.size(); ++k) {
        while (idx < ps.pairs.size() && ps.pairs[idx].d <= asc[k] * (1.0 + 1e-12)) {
            running = std::max(running, ps.pairs[idx].absdiff);
            ++idx;
        }
        vals_asc[k] = running;
    }
    for (size_t k = 0; k < radii.size(); ++k) m.values[k] = vals_asc[asc.size() - 1 - k];
    return m;
}

inline Modulus estimate_modulus(const ScalarField& f, const std::vector<double>& ladder,
                                int budget, uint64_t seed) {
    PairGeometry geom = sample_pair_geometry(f.domain, f.singular_points, ladder, budget, seed);
    PairSet ps = evaluate_pairs(f, geom);
    Modulus m = modulus_from_pairs(ps, ladder);
    m.meta = {budget, seed, f.label};
    return m;
}

// Origin- (or point-) anchored modulus: omega(r) = max_dirs |f(a + r d) - f(a)|.
inline Modulus estimate_modulus_anchored(const ScalarField& f, const Vec& anchor,
                                         const std::vector<double>& ladder, int n_random_dirs,
                                         uint64_t seed) {
    PairGeometry geom = anchored_pair_geometry(f.domain, anchor, ladder, n_random_dirs, seed);
    PairSet ps = evaluate_pairs(f, geom);
    Modulus m = modulus_from_pairs(ps, ladder);
    m.meta = {n_random_dirs, seed, f.label + "@anchored"};
    return m;
}

// Subadditivity audit on rung sums that land exactly on a tabulated rung:
// omega(ri + rj) <= omega(ri) + omega(rj) + tol. Returns the worst violation
// (<= 0 when the property holds).
inline double subadditivity_violation(const Modulus& m, double tol = 0.0) {
    double worst = -1e300;
    for (size_t i = 0; i < m.radii.size(); ++i)
        for (size_t j = i; j < m.radii.size(); ++j) {
            double sum = m.radii[i] + m.radii[j];
            for (size_t k = 0; k < m.radii.size(); ++k) {
                if (std::fabs(m.radii[k] - sum) < 1e-12 * sum) {
                    worst = std::max(worst,
                                     m.values[k] - (m.values[i] + m.values[j] + tol));
                    break;
                }
            }
        }
    return worst;
}

}  // namespace hlog
