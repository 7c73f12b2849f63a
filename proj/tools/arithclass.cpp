// arithclass: batch front-end for approximation profiles, class membership,
// lattice flows, and measure verification. One JSON config per run; CSV,
// JSON and SVG outputs. Exit codes: 0 ok, 2 bound/membership violation,
// 3 budget exhausted, 4 config error.

#include "arith/classes.hpp"
#include "arith/config.hpp"
#include "arith/errors.hpp"
#include "arith/lattice.hpp"
#include "arith/maps.hpp"
#include "arith/measure.hpp"
#include "arith/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using nlohmann::json;
using namespace arith;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir;
    long long seed = -1; // overrides config when >= 0
    int threads = 0;     // overrides config when > 0
};

json load_config(const Common& c) {
    std::ifstream f(c.config_path);
    if (!f) throw ConfigError("cannot open config: " + c.config_path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return j;
}

std::string out_path(const Common& c, const json& cfg, const std::string& name) {
    std::string dir = c.out_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("ARITH_OUT_DIR")) dir = env;
    }
    if (dir.empty() && cfg.contains("out_dir")) dir = cfg.at("out_dir").get<std::string>();
    if (dir.empty()) dir = ".";
    return dir + "/" + name;
}

uint64_t effective_seed(const Common& c, const json& cfg, bool required) {
    if (c.seed >= 0) return static_cast<uint64_t>(c.seed);
    if (cfg.contains("seed")) return cfg.at("seed").get<uint64_t>();
    if (required) throw ConfigError("a seed is mandatory for Monte-Carlo commands");
    return 0;
}

int effective_threads(const Common& c, const json& cfg) {
    if (c.threads > 0) return c.threads;
    if (cfg.contains("threads")) return std::max(1, cfg.at("threads").get<int>());
    return 1;
}

VolumeMethod parse_method(const json& cfg, const char* key = "method") {
    if (!cfg.contains(key)) return VolumeMethod::MonteCarlo;
    std::string m = cfg.at(key).get<std::string>();
    if (m == "grid") return VolumeMethod::Grid;
    if (m == "montecarlo") return VolumeMethod::MonteCarlo;
    throw ConfigError("unknown method: " + m);
}

int cmd_sigma(const Common& c) {
    json cfg = load_config(c);
    auto alpha = parse_vector(cfg.at("alpha"));
    int K = cfg.at("k_max").get<int>();
    SigmaOptions opts;
    if (cfg.contains("node_budget")) opts.node_budget = cfg.at("node_budget").get<long long>();
    auto profile = sigma_profile(alpha, K, opts);
    write_file(out_path(c, cfg, "sigma.csv"), sigma_profile_csv(profile));
    write_file(out_path(c, cfg, "sigma.json"), sigma_profile_json(alpha, profile));
    std::cout << sigma_profile_csv(profile);
    return 0;
}

int cmd_member(const Common& c) {
    json cfg = load_config(c);
    auto alpha = parse_vector(cfg.at("alpha"));
    auto seq = parse_sequence(cfg.at("sequence"));
    int K = cfg.at("K").get<int>();
    auto verdict = membership(alpha, seq, K);
    auto doc = verdict_json(verdict);
    write_file(out_path(c, cfg, "member.json"), doc);
    std::cout << doc << "\n";
    return verdict.in_class() ? 0 : 2;
}

int cmd_density(const Common& c) {
    json cfg = load_config(c);
    auto f = parse_map(cfg.at("map"));
    auto seq = parse_sequence(cfg.at("sequence"));
    DensityParams p;
    p.n = f.codomain_dim;
    p.d = f.domain_dim;
    p.l = f.curvature_order;
    for (const auto& r : cfg.at("radii")) p.radii.push_back(r.get<double>());
    p.K_cutoff = cfg.at("K_cutoff").get<int>();
    p.samples = cfg.at("samples").get<long long>();
    p.seed = effective_seed(c, cfg, true);
    p.threads = effective_threads(c, cfg);
    if (cfg.contains("tail_constant")) p.tail_constant = cfg.at("tail_constant").get<double>();

    auto curve = density_curve(f, seq, p);
    if (!curve.precondition.in_class()) {
        auto doc = verdict_json(curve.precondition);
        write_file(out_path(c, cfg, "density_precondition.json"), doc);
        std::cerr << "density: f(0) violates the class; verdict written\n" << doc << "\n";
        return 2;
    }
    write_file(out_path(c, cfg, "density.csv"), density_csv(curve));
    write_file(out_path(c, cfg, "density.svg"), density_svg(curve));
    if (f.codomain_dim == 2 && !p.radii.empty()) {
        // companion picture: the image ball at the coarsest radius with the
        // candidate bands that can reach it
        double r0 = p.radii.front();
        double kr = lipschitz_bound(f, r0) * r0;
        auto rho = rho_sequence(seq, p.n, p.d, p.l);
        auto alpha = TargetVector::of(f.value_at_origin());
        try {
            auto bands = candidate_bands(2, seq, rho.seq, kr, std::min(p.K_cutoff, 6), 20'000);
            write_file(out_path(c, cfg, "density_bands.svg"), bands_svg(alpha.shadow, kr, bands));
        } catch (const BudgetExceeded&) {
            // too many bands to draw is not an error for the curve itself
        }
    }
    std::cout << density_csv(curve);
    if (cfg.contains("require_density_lb")) {
        double target = cfg.at("require_density_lb").get<double>();
        for (const auto& pt : curve.points)
            if (pt.density_lb < target) return 2;
    }
    return 0;
}

int cmd_flow(const Common& c) {
    json cfg = load_config(c);
    auto alpha = parse_vector(cfg.at("alpha"));
    int n = alpha.dim();
    auto emb = schmidt_embedding(alpha);

    std::vector<double> ts;
    const auto& tg = cfg.at("t_grid");
    if (tg.is_array()) {
        for (const auto& t : tg) ts.push_back(t.get<double>());
    } else {
        double from = tg.at("from").get<double>(), to = tg.at("to").get<double>(),
               step = tg.at("step").get<double>();
        if (step <= 0) throw ConfigError("t_grid.step must be positive");
        for (double t = from; t <= to + 1e-12; t += step) ts.push_back(t);
    }

    std::vector<FlowPoint> traj;
    for (double t : ts) {
        FlowPoint pt;
        pt.t = t;
        pt.delta = delta(g_flow(t, n).apply(emb));
        traj.push_back(pt);
    }
    write_file(out_path(c, cfg, "flow.csv"), flow_csv(traj));
    std::cout << flow_csv(traj);

    int rc = 0;
    if (cfg.contains("sigma_K")) {
        int K = cfg.at("sigma_K").get<int>();
        auto profile = sigma_profile(alpha, K);
        std::vector<LemmaCheckRow> rows;
        for (const auto& e : profile) {
            if (e.value == 0) continue; // the lemma needs a != 0
            LemmaCheckRow row;
            row.k = e.k;
            row.i = e.witness;
            row.a = Interval::up(e.value.get_d()); // round up so a >= |(alpha,i)|
            if (norm2(e.witness) < Rat(row.a) * Rat(row.a))
                continue; // the lemma needs a <= |i|
            row.pair = lemma_eps_t(row.a, row.i, n);
            row.delta = delta(g_flow(row.pair.t, n).apply(emb));
            row.satisfied = row.delta.hi <= row.pair.eps * (1 + 1e-9);
            if (!row.satisfied) rc = 2;
            rows.push_back(row);
        }
        write_file(out_path(c, cfg, "lemma.csv"), lemma_csv(rows));
    }
    return rc;
}

int cmd_verify(const Common& c) {
    json cfg = load_config(c);
    uint64_t seed = effective_seed(c, cfg, true);
    int threads = effective_threads(c, cfg);

    json out;
    out["schema"] = "arithclass.verify.v1";
    out["checks"] = json::array();
    int pass = 0, fail = 0, skipped = 0;
    std::vector<BoundReport> all_reports;

    auto record = [&](const std::string& id, const BoundReport& r) {
        json jc;
        jc["id"] = id;
        jc["status"] = r.status == BoundReport::Status::Satisfied
                           ? "satisfied"
                           : (r.status == BoundReport::Status::Violated ? "violated" : "skipped");
        jc["lhs"] = r.lhs;
        jc["lhs_err"] = r.lhs_err;
        jc["rhs"] = r.rhs;
        jc["margin"] = r.margin;
        out["checks"].push_back(jc);
        if (r.status == BoundReport::Status::Satisfied) ++pass;
        else if (r.status == BoundReport::Status::Violated) ++fail;
        else ++skipped;
        all_reports.push_back(r);
        all_reports.back().id = id;
    };

    int idx = 0;
    for (const auto& chk : cfg.at("checks")) {
        std::string type = chk.at("type").get<std::string>();
        std::string base = "check" + std::to_string(idx++) + ":" + type;
        if (type == "ctau") {
            auto f = parse_map(chk.at("map"));
            if (f.codomain_dim != 1) throw ConfigError("ctau: scalar map required");
            Box box;
            for (const auto& v : chk.at("box_lo")) box.lo.push_back(v.get<double>());
            for (const auto& v : chk.at("box_hi")) box.hi.push_back(v.get<double>());
            Region K = Region::of_box(box);
            double C, tau;
            if (chk.contains("C") && !chk.at("C").is_string()) {
                C = chk.at("C").get<double>();
                tau = chk.at("tau").get<double>();
            } else {
                // certified constants from the derivative bounds
                auto db = derivative_bounds(f, box, f.curvature_order);
                C = km_constant(f.domain_dim, f.curvature_order, db.m, db.M);
                tau = 1.0 / double(f.domain_dim * f.curvature_order);
            }
            std::vector<double> grid;
            for (const auto& e : chk.at("eps_grid")) grid.push_back(e.get<double>());
            long long budget = chk.value("budget", 100'000ll);
            auto reps = ctau_check(f.comps[0], K, C, tau, grid, parse_method(chk), budget,
                                   seed, threads);
            for (size_t j = 0; j < reps.size(); ++j)
                record(base + ":eps" + std::to_string(j), reps[j]);
        } else if (type == "km_bound") {
            auto f = parse_map(chk.at("map"));
            IntVec i;
            for (const auto& e : chk.at("i")) i.push_back(Int(e.get<long>()));
            double a = chk.at("a").get<double>();
            double r = chk.at("r").get<double>();
            double C = chk.at("C").get<double>();
            double A = chk.at("A").get<double>();
            long long budget = chk.value("budget", 100'000ll);
            record(base, km_bound_check(f, i, a, r, C, A, parse_method(chk), budget, seed,
                                        threads));
        } else if (type == "shell_tail") {
            int n = chk.at("n").get<int>();
            int K = chk.at("K").get<int>();
            BoundReport r;
            r.status = BoundReport::Status::Satisfied;
            for (int k = 1; k <= K; ++k) {
                long long cnt = shell_count(n, k);
                Rat bound = pow2(static_cast<long>(k + 1) * n);
                if (Rat(static_cast<long>(cnt)) > bound) r.status = BoundReport::Status::Violated;
            }
            Rat ts = tail_sum(n, K);
            r.lhs = ts.get_d();
            r.rhs = pow2(n + 1).get_d();
            r.margin = r.rhs - r.lhs;
            if (ts > pow2(n + 1)) r.status = BoundReport::Status::Violated;
            record(base, r);
        } else if (type == "rho_half") {
            auto seq = parse_sequence(chk.at("sequence"));
            int n = chk.at("n").get<int>(), d = chk.at("d").get<int>(), l = chk.at("l").get<int>();
            long kmax = chk.value("k_max", 16l);
            auto rho = rho_sequence(seq, n, d, l);
            BoundReport r;
            r.status = BoundReport::Status::Satisfied;
            if (!rho.N) {
                r.status = BoundReport::Status::Violated;
            } else {
                for (long k = *rho.N; k <= std::min(kmax, rho.seq.k_max()); ++k)
                    if (!(rho.seq.at(k) < Rat(1, 2))) r.status = BoundReport::Status::Violated;
                r.lhs = rho.N ? double(*rho.N) : -1.0;
            }
            record(base, r);
        } else {
            throw ConfigError("unknown check type: " + type);
        }
    }
    out["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skipped}};
    write_file(out_path(c, cfg, "verify.json"), out.dump(2) + "\n");
    write_file(out_path(c, cfg, "verify.csv"), bounds_csv(all_reports));
    std::cout << out["summary"].dump() << "\n";
    return fail == 0 ? 0 : 2;
}

int cmd_plot_bands(const Common& c) {
    json cfg = load_config(c);
    auto alpha = parse_vector(cfg.at("alpha"));
    if (alpha.dim() != 2) throw ConfigError("plot-bands: alpha must be 2-dimensional");
    auto seq = parse_sequence(cfg.at("sequence"));
    int n = 2;
    int d = cfg.at("d").get<int>(), l = cfg.at("l").get<int>();
    double r = cfg.at("r").get<double>();
    int K = cfg.at("K").get<int>();
    auto rho = rho_sequence(seq, n, d, l);
    auto bands = candidate_bands(n, seq, rho.seq, r, K, 100'000);
    auto svg = bands_svg(alpha.shadow, r, bands);
    write_file(out_path(c, cfg, "bands.svg"), svg);
    std::cout << "bands: " << bands.size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"arithclass: approximation profiles, arithmetic classes, lattice flows,\n"
                 "and measure verification"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config_path, "JSON run configuration")->required();
        sub->add_option("--out", common.out_dir, "output directory (default: ARITH_OUT_DIR or .)");
        sub->add_option("--seed", common.seed, "override the config seed");
        sub->add_option("--threads", common.threads, "override the config worker count");
    };

    auto* s_sigma = app.add_subcommand("sigma", "approximation profile sigma(alpha)_k");
    auto* s_member = app.add_subcommand("member", "class membership verdict");
    auto* s_density = app.add_subcommand("density", "density lower-bound curve");
    auto* s_flow = app.add_subcommand("flow", "delta(g_t[alpha]) trajectory and lemma checks");
    auto* s_verify = app.add_subcommand("verify", "bound-check bundle");
    auto* s_plot = app.add_subcommand("plot-bands", "ball-and-bands picture");
    for (auto* s : {s_sigma, s_member, s_density, s_flow, s_verify, s_plot}) add_common(s);

    CLI11_PARSE(app, argc, argv);

    try {
        if (s_sigma->parsed()) return cmd_sigma(common);
        if (s_member->parsed()) return cmd_member(common);
        if (s_density->parsed()) return cmd_density(common);
        if (s_flow->parsed()) return cmd_flow(common);
        if (s_verify->parsed()) return cmd_verify(common);
        if (s_plot->parsed()) return cmd_plot_bands(common);
    } catch (const BudgetExceeded& e) {
        std::cerr << "{\"schema\":\"arithclass.error.v1\",\"kind\":\"budget\",\"error\":\""
                  << e.what() << "\"}\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "{\"schema\":\"arithclass.error.v1\",\"kind\":\"config\",\"error\":\""
                  << e.what() << "\"}\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "{\"schema\":\"arithclass.error.v1\",\"kind\":\"config\",\"error\":\""
                  << e.what() << "\"}\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "{\"schema\":\"arithclass.error.v1\",\"kind\":\"config\",\"error\":\""
                  << e.what() << "\"}\n";
        return 4;
    }
    return 0;
}
