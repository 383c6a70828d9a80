#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlog/common.hpp"
#include "hlog/experiments.hpp"
#include "hlog/kernel.hpp"
#include "hlog/modulus.hpp"
#include "hlog/seminorms.hpp"
#include "hlog/version.hpp"

namespace hlog {

using json = nlohmann::json;

// CSV table with fixed %.17g formatting; identical inputs render
// byte-identically, which is what the determinism contract needs.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& vals) {
        std::vector<std::string> r;
        for (double v : vals) r.push_back(fmt_g17(v));
        rows.push_back(r);
    }
    void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }

    std::string to_string() const {
        std::string out;
        for (size_t i = 0; i < header.size(); ++i)
            out += header[i] + (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (size_t i = 0; i < row.size(); ++i)
                out += row[i] + (i + 1 < row.size() ? "," : "\n");
        return out;
    }
};

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << body;
}

// ---------------------------------------------------------------------------
// JSON views  (keys are sorted by nlohmann::json; output is deterministic)
// ---------------------------------------------------------------------------

inline json to_json(const Modulus& m) {
    json j;
    j["radii"] = m.radii;
    j["omega"] = m.values;
    j["budget"] = m.meta.budget;
    j["seed"] = m.meta.seed;
    j["field"] = m.meta.field_label;
    return j;
}

inline CsvTable to_csv(const Modulus& m) {
    CsvTable t;
    t.header = {"r", "omega"};
    for (size_t k = 0; k < m.radii.size(); ++k) t.add_row({m.radii[k], m.values[k]});
    return t;
}

inline json to_json(const SeminormReport& r) {
    json j;
    j["field"] = r.field;
    j["sup_norm"] = r.sup_norm;
    json hs = json::array();
    for (const auto& h : r.hlog)
        hs.push_back({{"alpha", h.alpha},
                      {"restricted", h.restricted},
                      {"upper_bound", h.upper_bound},
                      {"full_norm", h.full_norm}});
    j["hlog"] = hs;
    json ho = json::array();
    for (const auto& [lam, res] : r.holder)
        ho.push_back({{"lambda", lam}, {"value", res.value}, {"divergent", res.divergent}});
    j["holder"] = ho;
    j["dini"] = {{"value", r.dini.value},
                 {"tail_bound", r.dini.tail_bound},
                 {"r_min", r.dini.r_min}};
    if (r.has_integral) j["integral"] = r.integral;
    if (r.has_grad) j["grad"] = {{"sup", r.sup_grad}, {"hlog", r.grad_hlog}};
    if (r.has_hess) j["hess"] = {{"sup", r.sup_hess}, {"hlog", r.hess_hlog}};
    return j;
}

inline json to_json(const LogFit& f) {
    return {{"alpha_hat", f.alpha_hat}, {"intercept", f.intercept}, {"r2", f.r2},
            {"points", f.points}};
}

inline json to_json(const KernelValidation& v) {
    json j;
    j["sphere_mean"] = v.sphere_mean;
    j["sup_sigma"] = v.sup_sigma;
    j["sup_grad_sigma"] = v.sup_grad_sigma;
    j["triple_norm"] = v.triple_norm;
    json a = json::array();
    for (const auto& row : v.annuli)
        a.push_back({{"r1", row.r1}, {"r2", row.r2}, {"integral", row.integral}});
    j["annuli"] = a;
    return j;
}

inline json to_json(const DezerReport& r) {
    json j;
    j["alpha"] = r.alpha;
    j["delta0"] = r.delta0;
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"delta", row.delta},
                        {"lhs", row.lhs},
                        {"bound", row.bound},
                        {"ratio", row.ratio},
                        {"holds", row.holds}});
    j["rows"] = rows;
    return j;
}

inline CsvTable to_csv(const DezerReport& r) {
    CsvTable t;
    t.header = {"delta", "lhs", "bound", "ratio", "holds"};
    for (const auto& row : r.rows)
        t.add_row({fmt_g17(row.delta), fmt_g17(row.lhs), fmt_g17(row.bound), fmt_g17(row.ratio),
                   row.holds ? "1" : "0"});
    return t;
}

inline json to_json(const OptimalityReport& r) {
    json j;
    j["alpha"] = r.alpha;
    j["beta"] = r.beta;
    j["fit_forcing"] = to_json(r.fit_forcing);
    j["fit_pure"] = to_json(r.fit_pure);
    j["fit_mixed"] = to_json(r.fit_mixed);
    json d = json::array();
    for (const auto& [d0, v] : r.divergence) d.push_back({{"delta0", d0}, {"seminorm", v}});
    j["divergence"] = d;
    j["divergence_monotone"] = r.divergence_monotone;
    return j;
}

inline CsvTable to_csv(const OptimalityReport& r) {
    CsvTable t;
    t.header = {"r", "omega_forcing", "omega_pure", "omega_mixed"};
    for (size_t k = 0; k < r.modulus_mixed.radii.size(); ++k)
        t.add_row({r.modulus_mixed.radii[k], r.modulus_forcing.values[k],
                   r.modulus_pure.values[k], r.modulus_mixed.values[k]});
    return t;
}

inline json to_json(const KlgRow& row) {
    return {{"kernel", row.kernel},   {"field", row.field},
            {"alpha", row.alpha},     {"refine_level", row.refine_level},
            {"semi_K", row.semi_K},   {"sup_K", row.sup_K},
            {"norm_K", row.norm_K},   {"norm_phi", row.norm_phi},
            {"ratio", row.ratio},
            // trend diagnostic against the (alpha-1)^{-1} prediction
            {"ratio_times_alpha_minus_1", row.ratio * (row.alpha - 1.0)},
            {"convolutions", row.convolutions}};
}

inline json to_json(const KlgReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    return {{"rows", rows}};
}

inline CsvTable to_csv(const KlgReport& r) {
    CsvTable t;
    t.header = {"kernel", "field", "alpha", "refine_level", "semi_K", "sup_K", "norm_phi",
                "ratio"};
    for (const auto& row : r.rows)
        t.add_row({row.kernel, row.field, fmt_g17(row.alpha), std::to_string(row.refine_level),
                   fmt_g17(row.semi_K), fmt_g17(row.sup_K), fmt_g17(row.norm_phi),
                   fmt_g17(row.ratio)});
    return t;
}

inline json to_json(const InteriorReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"R", row.R},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"ratio", row.ratio},
                        {"norm_Lu", row.norm_Lu},
                        {"norm_u_1a", row.norm_u_1a},
                        {"c_theta", row.c_theta},
                        {"zeta_norm", row.zeta_norm},
                        {"norm_N", row.norm_N},
                        {"commutator_residual", row.commutator_residual},
                        {"holds", row.holds},
                        {"zeta_bounded", row.zeta_bounded}});
    return {{"alpha", r.alpha},
            {"field", r.field},
            {"rows", rows},
            {"slope_bound", r.slope_bound},
            {"slope_measured", r.slope_measured}};
}

inline CsvTable to_csv(const InteriorReport& r) {
    CsvTable t;
    t.header = {"R", "lhs", "rhs", "ratio", "c_theta", "zeta_norm", "norm_N", "holds"};
    for (const auto& row : r.rows)
        t.add_row({fmt_g17(row.R), fmt_g17(row.lhs), fmt_g17(row.rhs), fmt_g17(row.ratio),
                   fmt_g17(row.c_theta), fmt_g17(row.zeta_norm), fmt_g17(row.norm_N),
                   row.holds ? "1" : "0"});
    return t;
}

inline json to_json(const RoundtripReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        std::vector<double> x(row.x.c.begin(), row.x.c.begin() + row.x.n);
        rows.push_back({{"x", x}, {"phi", row.phi}, {"s_lphi", row.s_lphi}});
    }
    return {{"rows", rows},
            {"max_abs_error", r.max_abs_error},
            {"max_rel_error", r.max_rel_error}};
}

inline json field_descriptor(const ScalarField& f) {
    json j;
    j["label"] = f.label;
    j["kind"] = to_string(f.domain.kind);
    j["parameters"] = {{"dim", f.domain.dim},
                       {"radius", f.domain.radius},
                       {"inner", f.domain.inner},
                       {"support_radius", f.support_radius}};
    return j;
}

}  // namespace hlog
