// Command-line harness: every estimator and experiment as a subcommand, with
// JSON config files, CSV/JSON reports, and deterministic seeded output.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlog/report.hpp"

namespace fs = std::filesystem;
using hlog::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitAssert = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    uint64_t seed = 1;
    bool assert_mode = false;
    bool dry_run = false;
    int refine = 0;
    json config;  // raw config file body

    void load_config() {
        if (config_path.empty()) return;
        std::ifstream f(config_path);
        if (!f) throw hlog::param_error("cannot read config file " + config_path);
        f >> config;
    }
    // config value unless the flag was set on the command line
    template <typename T>
    T pick(const CLI::Option* opt, T cli_value, const std::string& key, T fallback) const {
        if (opt->count() > 0) return cli_value;
        if (config.contains(key)) return config.at(key).get<T>();
        if (opt->count() == 0 && !config.contains(key)) return fallback;
        return cli_value;
    }
};

hlog::QuadConfig quad_from(const CommonOpts& c) {
    hlog::QuadConfig q;
    if (c.config.contains("quad")) {
        const json& j = c.config.at("quad");
        q.radial_nodes_per_decade = j.value("radial_nodes_per_decade", q.radial_nodes_per_decade);
        q.angular_order = j.value("angular_order", q.angular_order);
        q.r_floor = j.value("r_floor", q.r_floor);
    }
    return q.refine(c.refine);
}

json resolved_header(const std::string& experiment, const CommonOpts& c, json params) {
    json j;
    j["version"] = hlog::kVersion;
    j["experiment"] = experiment;
    j["seed"] = c.seed;
    j["refine"] = c.refine;
    j["params"] = std::move(params);
    hlog::QuadConfig q = quad_from(c);
    j["quad"] = {{"radial_nodes_per_decade", q.radial_nodes_per_decade},
                 {"angular_order", q.angular_order},
                 {"r_floor", q.r_floor}};
    return j;
}

void emit(const CommonOpts& c, const json& report, const hlog::CsvTable& table) {
    fs::create_directories(c.out_dir);
    hlog::write_file(c.out_dir + "/report.json", report.dump(2) + "\n");
    hlog::write_file(c.out_dir + "/table.csv", table.to_string());
}

int finish(const CommonOpts& c, const json& header, const json& body, const hlog::CsvTable& table,
           bool assertions_ok, const std::string& summary) {
    json report = header;
    report["result"] = body;
    emit(c, report, table);
    std::cout << summary;
    std::cout << "reports: " << c.out_dir << "/report.json, " << c.out_dir << "/table.csv\n";
    if (c.assert_mode && !assertions_ok) {
        std::cout << "ASSERTION FAILED\n";
        return kExitAssert;
    }
    return kExitOk;
}

bool dry(const CommonOpts& c, const std::string& experiment, const json& params) {
    if (!c.dry_run) return false;
    json plan = resolved_header(experiment, c, params);
    plan["plan_only"] = true;
    std::cout << plan.dump(2) << "\n";
    return true;
}

std::vector<double> get_list(const CommonOpts& c, const CLI::Option* opt,
                             std::vector<double> cli_value, const std::string& key,
                             std::vector<double> fallback) {
    if (opt->count() > 0) return cli_value;
    if (c.config.contains(key)) return c.config.at(key).get<std::vector<double>>();
    return fallback;
}

hlog::Vec parse_point(const std::string& s) {
    hlog::Vec v;
    std::string cur;
    std::vector<double> xs;
    for (char ch : s + ",") {
        if (ch == ',') {
            if (!cur.empty()) xs.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (xs.size() < 2 || xs.size() > hlog::kMaxDim)
        throw hlog::param_error("point must have 2..6 comma-separated coordinates");
    v.n = static_cast<int>(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) v[static_cast<int>(i)] = xs[i];
    return v;
}

hlog::EllipticOperator operator_by_name(const std::string& name, int dim) {
    if (name == "laplacian") return hlog::EllipticOperator::laplacian(dim);
    if (name == "diag-1-1-4") return hlog::EllipticOperator::diagonal({1.0, 1.0, 4.0});
    if (name == "diag-2-1-3") return hlog::EllipticOperator::diagonal({2.0, 1.0, 3.0});
    throw hlog::lookup_error("unknown operator '" + name +
                             "' (laplacian, diag-1-1-4, diag-2-1-3)");
}

// ---------------------------------------------------------------------------

int run_seminorm(const CommonOpts& c, const std::string& field, double alpha, double delta0) {
    json params = {{"field", field}, {"alpha", alpha}, {"delta0", delta0}};
    hlog::ScalarField f = hlog::corpus(field);
    if (alpha <= 0) throw hlog::param_error("seminorm: alpha must be positive");
    if (!(delta0 > 0 && delta0 < 1)) throw hlog::param_error("seminorm: delta0 in (0,1)");
    if (dry(c, "seminorm", params)) return kExitOk;
    hlog::SeminormReportOptions opt;
    opt.alphas = {alpha, alpha + 1.0};
    opt.delta0 = delta0;
    opt.dini_delta = delta0;
    opt.seed = c.seed;
    opt.integral_p = 2.0;
    hlog::SeminormReport rep = hlog::make_seminorm_report(f, opt);
    json body = hlog::to_json(rep);
    body["descriptor"] = hlog::field_descriptor(f);
    bool ok = true;
    for (const auto& h : rep.hlog) ok = ok && h.restricted <= h.upper_bound + 1e-12;
    char line[256];
    std::snprintf(line, sizeof(line),
                  "seminorm %s: sup=%.6g  [f]_{%.3g;d0}=%.6g  dini=%.6g\n", field.c_str(),
                  rep.sup_norm, alpha, rep.hlog[0].restricted, rep.dini.value);
    return finish(c, resolved_header("seminorm", c, params), body, hlog::to_csv(rep.modulus), ok,
                  line);
}

int run_modulus(const CommonOpts& c, const std::string& field, int budget, int kmax) {
    json params = {{"field", field}, {"budget", budget}, {"kmax", kmax}};
    hlog::ScalarField f = hlog::corpus(field);
    if (budget < 1 || kmax < 1) throw hlog::param_error("modulus: budget and kmax must be >= 1");
    if (dry(c, "modulus", params)) return kExitOk;
    hlog::Modulus m = hlog::estimate_modulus(f, hlog::dyadic_ladder(1, kmax), budget, c.seed);
    bool monotone = true;
    for (size_t k = 0; k + 1 < m.values.size(); ++k)
        monotone = monotone && m.values[k] >= m.values[k + 1];
    bool ok = monotone && hlog::subadditivity_violation(m, 1e-9) <= 0.0;
    char line[160];
    std::snprintf(line, sizeof(line), "modulus %s: %zu rungs, omega(1/2)=%.6g\n", field.c_str(),
                  m.radii.size(), m.values.front());
    return finish(c, resolved_header("modulus", c, params), hlog::to_json(m), hlog::to_csv(m), ok,
                  line);
}

int run_convolve(const CommonOpts& c, const std::string& kernel, const std::string& field,
                 const std::string& point) {
    json params = {{"kernel", kernel}, {"field", field}, {"point", point}};
    hlog::SingularKernel k = hlog::singular_kernel(kernel);
    hlog::ScalarField phi = hlog::corpus(field);
    hlog::Vec x = parse_point(point);
    if (dry(c, "convolve", params)) return kExitOk;
    hlog::PvResult r = hlog::pv_convolve(k, phi, x, quad_from(c));
    json body = {{"value", r.value},
                 {"radial_nodes", r.radial_nodes},
                 {"angular_nodes", r.angular_nodes}};
    hlog::CsvTable t;
    t.header = {"value", "radial_nodes", "angular_nodes"};
    t.add_row({hlog::fmt_g17(r.value), std::to_string(r.radial_nodes),
               std::to_string(r.angular_nodes)});
    char line[160];
    std::snprintf(line, sizeof(line), "(K*phi)(%s) = %.12g\n", point.c_str(), r.value);
    return finish(c, resolved_header("convolve", c, params), body, t, true, line);
}

int run_kernel_validate(const CommonOpts& c, const std::string& kernel, double tol) {
    json params = {{"kernel", kernel}, {"tol", tol}};
    hlog::SingularKernel k = hlog::singular_kernel(kernel);
    if (tol <= 0) throw hlog::param_error("kernel-validate: tol must be positive");
    if (dry(c, "kernel-validate", params)) return kExitOk;
    hlog::KernelValidation v = hlog::validate_kernel(k, tol, quad_from(c));
    hlog::CsvTable t;
    t.header = {"r1", "r2", "integral"};
    for (const auto& row : v.annuli) t.add_row({row.r1, row.r2, row.integral});
    bool ok = std::fabs(v.sphere_mean) <= tol;
    for (const auto& row : v.annuli) ok = ok && std::fabs(row.integral) <= tol;
    char line[200];
    std::snprintf(line, sizeof(line), "kernel %s: mean=%.3g  |sigma|=%.6g  |grad sigma|=%.6g\n",
                  kernel.c_str(), v.sphere_mean, v.sup_sigma, v.sup_grad_sigma);
    return finish(c, resolved_header("kernel-validate", c, params), hlog::to_json(v), t, ok, line);
}

int run_klg(const CommonOpts& c, double alpha, std::vector<std::string> kernels,
            std::vector<std::string> fields, std::vector<double> sweep, int levels) {
    json params = {{"alpha", alpha},
                   {"kernels", kernels},
                   {"fields", fields},
                   {"alpha_sweep", sweep},
                   {"levels", levels}};
    if (alpha <= 1.0) throw hlog::param_error("klg: alpha must exceed 1");
    for (double a : sweep)
        if (a <= 1.0) throw hlog::param_error("klg: sweep alphas must exceed 1");
    if (levels < 1) throw hlog::param_error("klg: levels must be >= 1");
    for (const std::string& kn : kernels) hlog::singular_kernel(kn);
    for (const std::string& fn : fields) hlog::corpus(fn);
    if (dry(c, "klg", params)) return kExitOk;
    hlog::KlgConfig cfg;
    cfg.quad = quad_from(c);
    cfg.seed = c.seed;
    std::vector<int> lv;
    for (int l = 0; l < levels; ++l) lv.push_back(l);
    hlog::KlgReport rep = hlog::klg_experiment(kernels, fields, alpha, lv, sweep, cfg);
    // assertions: stability across the two finest levels, monotone sweep
    bool ok = true;
    if (levels >= 2) {
        for (const std::string& kn : kernels)
            for (const std::string& fn : fields) {
                double r_prev = 0, r_last = 0;
                for (const auto& row : rep.rows)
                    if (row.kernel == kn && row.field == fn && row.alpha == alpha) {
                        if (row.refine_level == levels - 2) r_prev = row.ratio;
                        if (row.refine_level == levels - 1) r_last = row.ratio;
                    }
                if (r_prev > 0) ok = ok && std::fabs(r_last - r_prev) <= 0.10 * r_prev;
            }
    }
    if (sweep.size() >= 2) {
        // sweep rows are appended after the grid, in sweep order
        std::vector<double> ratios;
        size_t base = rep.rows.size() - sweep.size();
        for (size_t i = base; i < rep.rows.size(); ++i) ratios.push_back(rep.rows[i].ratio);
        for (size_t i = 0; i + 1 < ratios.size(); ++i) ok = ok && ratios[i + 1] < ratios[i];
    }
    std::string line = "klg: " + std::to_string(rep.rows.size()) + " rows\n";
    return finish(c, resolved_header("klg", c, params), hlog::to_json(rep), hlog::to_csv(rep), ok,
                  line);
}

int run_roundtrip(const CommonOpts& c, const std::string& op_name, const std::string& field,
                  double threshold) {
    json params = {{"operator", op_name}, {"field", field}, {"threshold", threshold}};
    hlog::ScalarField phi = hlog::corpus(field);
    hlog::EllipticOperator op = operator_by_name(op_name, phi.domain.dim);
    if (dry(c, "roundtrip", params)) return kExitOk;
    hlog::QuadConfig quad = quad_from(c);
    hlog::FundamentalSolution fs = hlog::fundamental_solution(op);
    hlog::RoundtripReport rep =
        hlog::potential_roundtrip(fs, phi, hlog::default_roundtrip_points(op.dim), quad);
    json body = hlog::to_json(rep);
    body["c_norm"] = fs.c_norm;
    hlog::CsvTable t;
    t.header = {"phi", "s_lphi", "abs_error"};
    for (const auto& row : rep.rows)
        t.add_row({row.phi, row.s_lphi, std::fabs(row.phi - row.s_lphi)});
    char line[160];
    std::snprintf(line, sizeof(line), "roundtrip %s/%s: max rel error %.3g (c_norm=%.8g)\n",
                  op_name.c_str(), field.c_str(), rep.max_rel_error, fs.c_norm);
    return finish(c, resolved_header("roundtrip", c, params), body, t,
                  rep.max_rel_error <= threshold, line);
}

int run_interior(const CommonOpts& c, const std::string& field, double alpha,
                 std::vector<double> Rs) {
    json params = {{"field", field}, {"alpha", alpha}, {"R", Rs}};
    hlog::ScalarField u =
        field == "counterexample-1" ? hlog::counterexample_field(1.0, 2) : hlog::corpus(field);
    if (alpha <= 1.0) throw hlog::param_error("interior: alpha must exceed 1");
    for (double R : Rs)
        if (!(R > 0 && 2.0 * R < 1.0)) throw hlog::param_error("interior: need 0 < 2R < 1");
    if (dry(c, "interior", params)) return kExitOk;
    hlog::InteriorConfig cfg;
    cfg.R_values = Rs;
    cfg.seed = c.seed;
    hlog::InteriorReport rep =
        hlog::interior_estimate_experiment(hlog::EllipticOperator::laplacian(2), u, alpha, cfg);
    bool ok = true;
    for (const auto& row : rep.rows) ok = ok && row.holds && row.zeta_bounded;
    ok = ok && std::fabs(rep.slope_bound + (2.0 + alpha)) <= 0.2;
    char line[200];
    std::snprintf(line, sizeof(line),
                  "interior %s alpha=%.3g: %zu radii, slope(C_theta)=%.3f, slope(zeta)=%.3f\n",
                  field.c_str(), alpha, rep.rows.size(), rep.slope_bound, rep.slope_measured);
    return finish(c, resolved_header("interior", c, params), hlog::to_json(rep), hlog::to_csv(rep),
                  ok, line);
}

int run_optimality(const CommonOpts& c, double alpha, double band) {
    json params = {{"alpha", alpha}, {"band", band}};
    if (alpha <= 0) throw hlog::param_error("optimality: alpha must be positive");
    if (dry(c, "optimality", params)) return kExitOk;
    hlog::OptimalityConfig cfg;
    cfg.seed = c.seed;
    hlog::OptimalityReport rep = hlog::optimality_experiment(alpha, cfg);
    json conclusions = {
        {"forcing_in_band", std::fabs(rep.fit_forcing.alpha_hat - (alpha + 1.0)) <= band},
        {"pure_in_band", std::fabs(rep.fit_pure.alpha_hat - (alpha + 1.0)) <= band},
        {"mixed_in_band", std::fabs(rep.fit_mixed.alpha_hat - alpha) <= band},
        {"mixed_escapes_beta", rep.divergence_monotone}};
    bool ok = std::fabs(rep.fit_mixed.alpha_hat - alpha) <= band &&
              std::fabs(rep.fit_pure.alpha_hat - (alpha + 1.0)) <= band &&
              std::fabs(rep.fit_forcing.alpha_hat - (alpha + 1.0)) <= band &&
              rep.divergence_monotone;
    char line[200];
    std::snprintf(line, sizeof(line),
                  "optimality alpha=%.3g: mixed=%.3f pure=%.3f forcing=%.3f divergence=%s\n",
                  alpha, rep.fit_mixed.alpha_hat, rep.fit_pure.alpha_hat,
                  rep.fit_forcing.alpha_hat, rep.divergence_monotone ? "monotone" : "flat");
    json body = hlog::to_json(rep);
    body["conclusions"] = conclusions;
    return finish(c, resolved_header("optimality", c, params), body, hlog::to_csv(rep), ok,
                  line);
}

int run_dezer(const CommonOpts& c, double alpha, std::vector<double> deltas) {
    json params = {{"alpha", alpha}, {"deltas", deltas}};
    if (alpha <= 1.0) throw hlog::param_error("dezer: alpha must exceed 1");
    for (double d : deltas)
        if (!(d > 0 && d < 1.0 / 9.0)) throw hlog::param_error("dezer: deltas in (0, 1/9)");
    if (dry(c, "dezer", params)) return kExitOk;
    hlog::DezerReport rep = hlog::dezer_check(alpha, deltas, quad_from(c));
    bool ok = true;
    for (const auto& row : rep.rows)
        if (row.delta <= 1e-4) ok = ok && row.holds;
    for (size_t k = 0; k + 1 < rep.rows.size(); ++k)
        ok = ok && std::fabs(rep.rows[k + 1].ratio - 0.5) < std::fabs(rep.rows[k].ratio - 0.5);
    char line[160];
    std::snprintf(line, sizeof(line), "dezer alpha=%.3g: delta0=%.3g, ratio(last)=%.6f\n", alpha,
                  rep.delta0, rep.rows.back().ratio);
    return finish(c, resolved_header("dezer", c, params), hlog::to_json(rep), hlog::to_csv(rep),
                  ok, line);
}

int run_extend(const CommonOpts& c, const std::string& field, double rho, double alpha,
               double delta0) {
    json params = {{"field", field}, {"rho", rho}, {"alpha", alpha}, {"delta0", delta0}};
    hlog::ScalarField f = hlog::corpus(field);
    hlog::ScalarField tf = hlog::extend_field(f, rho);
    if (dry(c, "extend", params)) return kExitOk;
    hlog::PairGeometry geom = hlog::sample_pair_geometry(
        tf.domain, tf.singular_points, hlog::delta0_ladder(delta0, 20), 96, c.seed);
    hlog::PairSet ps_t = hlog::evaluate_pairs(tf, geom);
    hlog::PairSet ps_f;
    for (const hlog::GeomPair& gp : geom.pairs) {
        hlog::Vec px = hlog::project_to_unit_ball(gp.x), py = hlog::project_to_unit_ball(gp.y);
        double d = hlog::dist(px, py);
        if (d < 1e-15) continue;
        ps_f.pairs.push_back({d, std::fabs(f(px) - f(py))});
    }
    std::sort(ps_f.pairs.begin(), ps_f.pairs.end(),
              [](const hlog::EvalPair& a, const hlog::EvalPair& b) { return a.d < b.d; });
    double lhs = hlog::hlog_from_pairs(ps_t, alpha, delta0);
    double rhs = hlog::hlog_from_pairs(ps_f, alpha, 2.0 * delta0);
    bool ok = lhs <= std::pow(2.0, alpha) * rhs * (1.0 + 1e-12);
    json body = {{"descriptor", hlog::field_descriptor(tf)},
                 {"seminorm_Tf", lhs},
                 {"seminorm_f_2delta0", rhs},
                 {"bound_factor", std::pow(2.0, alpha)},
                 {"holds", ok}};
    hlog::CsvTable t;
    t.header = {"seminorm_Tf", "seminorm_f_2delta0", "bound"};
    t.add_row({lhs, rhs, std::pow(2.0, alpha) * rhs});
    char line[160];
    std::snprintf(line, sizeof(line), "extend %s: [Tf]=%.6g <= 2^a [f]=%.6g : %s\n",
                  field.c_str(), lhs, std::pow(2.0, alpha) * rhs, ok ? "yes" : "NO");
    return finish(c, resolved_header("extend", c, params), body, t, ok, line);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"H-log function space laboratory"};
    app.require_subcommand(1);

    CommonOpts c;
    std::string field = "hlog-alpha-2", kernel = "harmonic-2", point = "0.0,0.0";
    std::string op_name = "laplacian";
    double alpha = 2.0, delta0 = 1.0 / 9.0, rho = 0.5, tol = 1e-8, threshold = 1e-2;
    double band = 0.15;
    int budget = 128, kmax = 40, levels = 1;
    std::vector<double> deltas, Rs, sweep;
    std::vector<std::string> kernels, fields;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", c.config_path, "JSON config file");
        sub->add_option("--seed", c.seed, "RNG seed");
        sub->add_option("--out", c.out_dir, "output directory");
        sub->add_flag("--assert", c.assert_mode, "nonzero exit on violated inequalities");
        sub->add_option("--refine", c.refine, "quadrature refinement level");
        sub->add_flag("--dry-run", c.dry_run, "validate and print the resolved plan");
    };

    CLI::App* s_sem = app.add_subcommand("seminorm", "seminorm report for a corpus field");
    auto* o_sf = s_sem->add_option("--field", field);
    auto* o_sa = s_sem->add_option("--alpha", alpha);
    auto* o_sd = s_sem->add_option("--delta0", delta0);
    add_common(s_sem);

    CLI::App* s_mod = app.add_subcommand("modulus", "modulus-of-continuity table");
    auto* o_mf = s_mod->add_option("--field", field);
    auto* o_mb = s_mod->add_option("--budget", budget);
    auto* o_mk = s_mod->add_option("--kmax", kmax);
    add_common(s_mod);

    CLI::App* s_conv = app.add_subcommand("convolve", "principal-value convolution at a point");
    auto* o_ck = s_conv->add_option("--kernel", kernel);
    auto* o_cf = s_conv->add_option("--field", field);
    auto* o_cp = s_conv->add_option("--point", point);
    add_common(s_conv);

    CLI::App* s_kv = app.add_subcommand("kernel-validate", "mean-zero and cancellation audit");
    auto* o_kk = s_kv->add_option("--kernel", kernel);
    auto* o_kt = s_kv->add_option("--tol", tol);
    add_common(s_kv);

    CLI::App* s_klg = app.add_subcommand("klg", "convolution operator-norm experiment");
    auto* o_ga = s_klg->add_option("--alpha", alpha);
    auto* o_gk = s_klg->add_option("--kernels", kernels)->delimiter(',');
    auto* o_gf = s_klg->add_option("--fields", fields)->delimiter(',');
    auto* o_gs = s_klg->add_option("--alpha-sweep", sweep)->delimiter(',');
    auto* o_gl = s_klg->add_option("--levels", levels);
    add_common(s_klg);

    CLI::App* s_rt = app.add_subcommand("roundtrip", "phi = S(L phi) audit");
    auto* o_ro = s_rt->add_option("--operator", op_name);
    auto* o_rf = s_rt->add_option("--field", field);
    auto* o_rt = s_rt->add_option("--threshold", threshold);
    add_common(s_rt);

    CLI::App* s_int = app.add_subcommand("interior", "interior estimate experiment");
    auto* o_if = s_int->add_option("--field", field);
    auto* o_ia = s_int->add_option("--alpha", alpha);
    auto* o_ir = s_int->add_option("--R", Rs)->delimiter(',');
    add_common(s_int);

    CLI::App* s_opt = app.add_subcommand("optimality", "regularity-loss exponent fits");
    auto* o_oa = s_opt->add_option("--alpha", alpha);
    auto* o_ob = s_opt->add_option("--band", band);
    add_common(s_opt);

    CLI::App* s_dz = app.add_subcommand("dezer", "decay inequality audit");
    auto* o_da = s_dz->add_option("--alpha", alpha);
    auto* o_dd = s_dz->add_option("--deltas", deltas)->delimiter(',');
    add_common(s_dz);

    CLI::App* s_ext = app.add_subcommand("extend", "extension operator seminorm bound");
    auto* o_ef = s_ext->add_option("--field", field);
    auto* o_er = s_ext->add_option("--rho", rho);
    auto* o_ea = s_ext->add_option("--alpha", alpha);
    auto* o_ed = s_ext->add_option("--delta0", delta0);
    add_common(s_ext);

    CLI11_PARSE(app, argc, argv);

    try {
        c.load_config();
        if (s_sem->parsed())
            return run_seminorm(c, c.pick(o_sf, field, "field", field),
                                c.pick(o_sa, alpha, "alpha", alpha),
                                c.pick(o_sd, delta0, "delta0", delta0));
        if (s_mod->parsed())
            return run_modulus(c, c.pick(o_mf, field, "field", field),
                               c.pick(o_mb, budget, "budget", budget),
                               c.pick(o_mk, kmax, "kmax", kmax));
        if (s_conv->parsed())
            return run_convolve(c, c.pick(o_ck, kernel, "kernel", kernel),
                                c.pick(o_cf, field, "field", field),
                                c.pick(o_cp, point, "point", point));
        if (s_kv->parsed())
            return run_kernel_validate(c, c.pick(o_kk, kernel, "kernel", kernel),
                                       c.pick(o_kt, tol, "tol", tol));
        if (s_klg->parsed()) {
            if (o_gk->count() == 0 && c.config.contains("kernels"))
                kernels = c.config.at("kernels").get<std::vector<std::string>>();
            if (kernels.empty()) kernels = {"harmonic-mixed"};
            if (o_gf->count() == 0 && c.config.contains("fields"))
                fields = c.config.at("fields").get<std::vector<std::string>>();
            if (fields.empty()) fields = {"forcing-hlog-2"};
            sweep = get_list(c, o_gs, sweep, "alpha_sweep", sweep);
            return run_klg(c, c.pick(o_ga, alpha, "alpha", alpha), kernels, fields, sweep,
                           c.pick(o_gl, levels, "levels", levels));
        }
        if (s_rt->parsed())
            return run_roundtrip(c, c.pick(o_ro, op_name, "operator", op_name),
                                 c.pick(o_rf, field, "field", std::string("bump-3d")),
                                 c.pick(o_rt, threshold, "threshold", threshold));
        if (s_int->parsed()) {
            Rs = get_list(c, o_ir, Rs, "R", {0.05, 0.1, 0.2});
            return run_interior(c, c.pick(o_if, field, "field", std::string("counterexample-1")),
                                c.pick(o_ia, alpha, "alpha", alpha), Rs);
        }
        if (s_opt->parsed())
            return run_optimality(c, c.pick(o_oa, alpha, "alpha", 1.0),
                                  c.pick(o_ob, band, "band", band));
        if (s_dz->parsed()) {
            deltas = get_list(c, o_dd, deltas, "deltas", {1e-4, 1e-6, 1e-8});
            return run_dezer(c, c.pick(o_da, alpha, "alpha", alpha), deltas);
        }
        if (s_ext->parsed())
            return run_extend(c, c.pick(o_ef, field, "field", std::string("abs-x")),
                              c.pick(o_er, rho, "rho", rho), c.pick(o_ea, alpha, "alpha", alpha),
                              c.pick(o_ed, delta0, "delta0", delta0));
    } catch (const hlog::param_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hlog::lookup_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const hlog::invalid_kernel_error& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitConfig;
}
